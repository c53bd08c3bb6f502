//! Reducibility statistics, nearest-neighbor accuracies under `δ` and `δ~`,
//! aggregate statistics over many datasets, and CSV/JSON output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datasets::DatasetSplit;
use crate::error::{Error, Result};
use crate::mining::nearest_prepared;
use crate::semimetric::Distance;
use crate::sequence::TimeSeries;
use crate::stats;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StdDevMode {
    #[default]
    Population,
    Sample,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatsScope {
    #[default]
    TrainAndTest,
    TrainOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondensationStats {
    pub dataset: String,
    pub length: usize,
    pub n: usize,
    pub reducible: usize,
    /// Percentage of reducible series.
    pub p_red: f64,
    /// Mean number of deleted elements over reducible series (0 if none).
    pub mu_del: f64,
    /// Standard deviation of deleted elements in the selected mode.
    pub sigma_del: f64,
    pub sigma_del_population: f64,
    pub sigma_del_sample: f64,
    pub elements_before: usize,
    pub elements_after: usize,
}

impl CondensationStats {
    /// `elements_before / elements_after`.
    pub fn length_ratio(&self) -> f64 {
        self.elements_before as f64 / self.elements_after as f64
    }
}

pub fn condensation_stats(
    split: &DatasetSplit,
    mode: StdDevMode,
    scope: StatsScope,
) -> CondensationStats {
    let rows: Vec<&TimeSeries> = match scope {
        StatsScope::TrainAndTest => split.all().map(|r| &r.series).collect(),
        StatsScope::TrainOnly => split.train.iter().map(|r| &r.series).collect(),
    };
    let deleted: Vec<usize> = rows.iter().map(|s| s.redundancy()).collect();
    let positive: Vec<f64> = deleted
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| d as f64)
        .collect();
    let n = rows.len();
    let elements_before: usize = rows.iter().map(|s| s.len()).sum();
    let elements_after = elements_before - deleted.iter().sum::<usize>();

    let mu_del = stats::mean(&positive).unwrap_or(0.0);
    let sigma_pop = stats::std_dev(&positive, false).unwrap_or(0.0);
    let sigma_sample = stats::std_dev(&positive, true).unwrap_or(0.0);
    CondensationStats {
        dataset: split.name.clone(),
        length: split.series_length,
        n,
        reducible: positive.len(),
        p_red: 100.0 * positive.len() as f64 / n as f64,
        mu_del,
        sigma_del: match mode {
            StdDevMode::Population => sigma_pop,
            StdDevMode::Sample => sigma_sample,
        },
        sigma_del_population: sigma_pop,
        sigma_del_sample: sigma_sample,
        elements_before,
        elements_after,
    }
}

/// Predicted training index for every test series (1-NN, lowest index wins ties).
///
/// Under [`Distance::DtwStar`] every series is condensed once before any
/// distance is computed.
pub fn nn_predict(split: &DatasetSplit, dist: Distance) -> Vec<usize> {
    let train: Vec<TimeSeries> = split
        .train
        .iter()
        .map(|r| dist.prepare(&r.series))
        .collect();
    let test: Vec<TimeSeries> = split.test.iter().map(|r| dist.prepare(&r.series)).collect();
    test.par_iter()
        .map(|z| nearest_prepared(z.as_slice(), &train).0)
        .collect()
}

/// Percentage of test series whose nearest training series has the same label.
pub fn nn_accuracy(split: &DatasetSplit, dist: Distance) -> f64 {
    let predictions = nn_predict(split, dist);
    let correct = predictions
        .iter()
        .zip(&split.test)
        .filter(|(&p, t)| split.train[p].label == t.label)
        .count();
    100.0 * correct as f64 / split.test.len() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NnResult {
    pub dataset: String,
    /// Accuracy of the `δ` 1-NN classifier, in percent.
    pub acc: f64,
    /// Accuracy of the `δ*` 1-NN classifier, in percent.
    pub acc_star: f64,
    /// `100 (acc - acc_star) / acc`; absent when `acc == 0`.
    pub err: Option<f64>,
}

pub fn nn_evaluate(split: &DatasetSplit) -> NnResult {
    let acc = nn_accuracy(split, Distance::Dtw);
    let acc_star = nn_accuracy(split, Distance::DtwStar);
    NnResult {
        dataset: split.name.clone(),
        acc,
        acc_star,
        err: error_percentage(acc, acc_star),
    }
}

pub fn error_percentage(acc: f64, acc_star: f64) -> Option<f64> {
    (acc > 0.0).then(|| 100.0 * (acc - acc_star) / acc)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightedAverages {
    pub length: f64,
    pub n: f64,
    pub p_red: f64,
    pub mu_del: f64,
    pub sigma_del: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReducibilitySummary {
    pub datasets: usize,
    pub weighted: WeightedAverages,
    /// Pearson correlation between series length and `p_red`.
    pub pearson: Option<f64>,
    pub pearson_p: Option<f64>,
    /// Spearman rank correlation between series length and `p_red`.
    pub spearman: Option<f64>,
    pub spearman_p: Option<f64>,
    pub without_reducible: usize,
    pub at_most_one_percent: usize,
    pub at_least_99_percent: usize,
    /// Average length reduction of reducible series, in percent, weighted by
    /// the number of reducible series per dataset.
    pub mean_shortening: Option<f64>,
    /// `1 / (1 - mean_shortening / 100)`.
    pub speedup: Option<f64>,
    /// Total elements before over total elements after condensation.
    pub length_ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassificationSummary {
    pub datasets: usize,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
    /// `100 (wins + ties / 2) / datasets`, from the `δ*` point of view.
    pub winning_percentage: f64,
    pub mean_err: Option<f64>,
    pub wilcoxon: Option<stats::WilcoxonResult>,
}

/// Aggregate reducibility statistics; averages are weighted by dataset size.
pub fn reducibility_summary(all: &[CondensationStats]) -> ReducibilitySummary {
    let total_n: usize = all.iter().map(|s| s.n).sum();
    let w = |f: fn(&CondensationStats) -> f64| -> f64 {
        if total_n == 0 {
            return 0.0;
        }
        all.iter().map(|s| s.n as f64 * f(s)).sum::<f64>() / total_n as f64
    };
    let lengths: Vec<f64> = all.iter().map(|s| s.length as f64).collect();
    let p_red: Vec<f64> = all.iter().map(|s| s.p_red).collect();
    let pearson = stats::pearson(&lengths, &p_red);
    let spearman = stats::spearman(&lengths, &p_red);

    let n_red: Vec<f64> = all.iter().map(|s| s.reducible as f64).collect();
    let p_del: Vec<f64> = all
        .iter()
        .map(|s| 100.0 * s.mu_del / s.length as f64)
        .collect();
    let red_total: f64 = n_red.iter().sum();
    let mean_shortening = (red_total > 0.0)
        .then(|| n_red.iter().zip(&p_del).map(|(a, b)| a * b).sum::<f64>() / red_total);
    let before: usize = all.iter().map(|s| s.elements_before).sum();
    let after: usize = all.iter().map(|s| s.elements_after).sum();

    ReducibilitySummary {
        datasets: all.len(),
        weighted: WeightedAverages {
            length: w(|s| s.length as f64),
            n: w(|s| s.n as f64),
            p_red: w(|s| s.p_red),
            mu_del: w(|s| s.mu_del),
            sigma_del: w(|s| s.sigma_del),
        },
        pearson: pearson.map(|c| c.coefficient),
        pearson_p: pearson.and_then(|c| c.p_value),
        spearman: spearman.map(|c| c.coefficient),
        spearman_p: spearman.and_then(|c| c.p_value),
        without_reducible: all.iter().filter(|s| s.reducible == 0).count(),
        at_most_one_percent: all.iter().filter(|s| s.p_red <= 1.0).count(),
        at_least_99_percent: all.iter().filter(|s| s.p_red >= 99.0).count(),
        mean_shortening,
        speedup: mean_shortening.map(|s| 1.0 / (1.0 - s / 100.0)),
        length_ratio: if after > 0 {
            before as f64 / after as f64
        } else {
            1.0
        },
    }
}

/// Win/tie/loss record, winning percentage, mean error percentage and the
/// Wilcoxon signed-rank test on `acc - acc_star`.
pub fn classification_summary(all: &[NnResult]) -> ClassificationSummary {
    let wins = all.iter().filter(|r| r.acc_star > r.acc).count();
    let ties = all.iter().filter(|r| r.acc_star == r.acc).count();
    let losses = all.len() - wins - ties;
    let errs: Vec<f64> = all.iter().filter_map(|r| r.err).collect();
    let diffs: Vec<f64> = all.iter().map(|r| r.acc - r.acc_star).collect();
    ClassificationSummary {
        datasets: all.len(),
        wins,
        ties,
        losses,
        winning_percentage: if all.is_empty() {
            0.0
        } else {
            100.0 * (wins as f64 + 0.5 * ties as f64) / all.len() as f64
        },
        mean_err: stats::mean(&errs),
        wilcoxon: stats::wilcoxon_signed_rank(&diffs),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub stddev: StdDevMode,
    pub scope: StatsScope,
    pub normalize: bool,
    pub quantize_decimals: Option<u32>,
    /// Run the nearest-neighbor experiment in addition to condensation stats.
    pub classify: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            stddev: StdDevMode::Population,
            scope: StatsScope::TrainAndTest,
            normalize: false,
            quantize_decimals: None,
            classify: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub condensation: Vec<CondensationStats>,
    pub classification: Vec<NnResult>,
    pub reducibility_summary: ReducibilitySummary,
    pub classification_summary: Option<ClassificationSummary>,
}

/// Applies the configured preprocessing. Normalization runs before
/// quantization.
pub fn preprocess(split: &DatasetSplit, config: &BenchConfig) -> DatasetSplit {
    let mut out = if config.normalize {
        split.z_normalized()
    } else {
        split.clone()
    };
    if let Some(d) = config.quantize_decimals {
        out = out.quantized(d);
    }
    out
}

pub fn run_benchmark(splits: &[DatasetSplit], config: &BenchConfig) -> BenchReport {
    let mut condensation = Vec::with_capacity(splits.len());
    let mut classification = Vec::new();
    for split in splits {
        let split = preprocess(split, config);
        log::info!(
            "{}: {} series of length {}",
            split.name,
            split.len(),
            split.series_length
        );
        condensation.push(condensation_stats(&split, config.stddev, config.scope));
        if config.classify {
            classification.push(nn_evaluate(&split));
        }
    }
    BenchReport {
        config: config.clone(),
        reducibility_summary: reducibility_summary(&condensation),
        classification_summary: config
            .classify
            .then(|| classification_summary(&classification)),
        condensation,
        classification,
    }
}

pub fn condensation_table_csv(rows: &[CondensationStats]) -> String {
    let mut out = String::from("dataset,length,n,p_red,mu_del,sigma_del\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.1},{:.1},{:.1}",
            r.dataset, r.length, r.n, r.p_red, r.mu_del, r.sigma_del
        );
    }
    out
}

pub fn classification_table_csv(rows: &[NnResult]) -> String {
    let mut out = String::from("dataset,acc,acc_star,err\n");
    for r in rows {
        let err = r.err.map(|e| format!("{e:.2}")).unwrap_or_default();
        let _ = writeln!(out, "{},{:.1},{:.1},{}", r.dataset, r.acc, r.acc_star, err);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Cdf,
    Histogram,
    Scatter,
}

/// Bin width of [`histogram_csv`], in percentage points.
pub const HISTOGRAM_BIN_WIDTH: f64 = 5.0;

/// Empirical CDF: one row per distinct value with the fraction of values `<=` it.
pub fn cdf_csv(values: &[f64]) -> String {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut out = String::from("value,cdf\n");
    for (i, v) in sorted.iter().enumerate() {
        if sorted.get(i + 1) == Some(v) {
            continue;
        }
        let _ = writeln!(out, "{v},{}", (i + 1) as f64 / n);
    }
    out
}

/// Counts of percentages in bins `[0,5), [5,10), …, [95,100]`.
pub fn histogram_csv(values: &[f64]) -> String {
    let bins = (100.0 / HISTOGRAM_BIN_WIDTH) as usize;
    let mut counts = vec![0usize; bins];
    for &v in values {
        let b = ((v / HISTOGRAM_BIN_WIDTH).floor().max(0.0) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let mut out = String::from("bin_start,bin_end,count\n");
    for (b, c) in counts.iter().enumerate() {
        let lo = b as f64 * HISTOGRAM_BIN_WIDTH;
        let _ = writeln!(out, "{lo},{},{c}", lo + HISTOGRAM_BIN_WIDTH);
    }
    out
}

pub fn scatter_csv(rows: &[NnResult]) -> String {
    let mut out = String::from("dataset,acc,acc_star\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.dataset, r.acc, r.acc_star);
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes plot data of the given kind. `values` feeds cdf/histogram, `rows`
/// feeds scatter.
pub fn emit_plot_data(
    kind: PlotKind,
    values: &[f64],
    rows: &[NnResult],
    path: &Path,
) -> Result<()> {
    let csv = match kind {
        PlotKind::Cdf => cdf_csv(values),
        PlotKind::Histogram => histogram_csv(values),
        PlotKind::Scatter => scatter_csv(rows),
    };
    write_file(path, &csv)
}

/// Writes every table, plot file and the JSON summary into `dir`.
pub fn write_report(report: &BenchReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_file(
        &dir.join("condensation.csv"),
        &condensation_table_csv(&report.condensation),
    )?;
    let p_red: Vec<f64> = report.condensation.iter().map(|s| s.p_red).collect();
    emit_plot_data(PlotKind::Cdf, &p_red, &[], &dir.join("p_red_cdf.csv"))?;
    emit_plot_data(
        PlotKind::Histogram,
        &p_red,
        &[],
        &dir.join("p_red_histogram.csv"),
    )?;
    if report.config.classify {
        write_file(
            &dir.join("classification.csv"),
            &classification_table_csv(&report.classification),
        )?;
        let errs: Vec<f64> = report.classification.iter().filter_map(|r| r.err).collect();
        emit_plot_data(PlotKind::Cdf, &errs, &[], &dir.join("err_cdf.csv"))?;
        emit_plot_data(
            PlotKind::Scatter,
            &[],
            &report.classification,
            &dir.join("accuracy_scatter.csv"),
        )?;
    }
    let json = serde_json::to_string_pretty(report)?;
    write_file(&dir.join("summary.json"), &json)
}
