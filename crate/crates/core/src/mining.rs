//! Fréchet function, DBA sample means, nearest-prototype rule and k-means
//! over dtw, plus the cohesion and separation cluster scores.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dtw::{dtw_with_path, squared_dtw_unchecked};
use crate::error::{Error, Result};
use crate::semimetric::Distance;
use crate::sequence::TimeSeries;

/// A non-empty collection of time series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    series: Vec<TimeSeries>,
}

impl Sample {
    pub fn new(series: Vec<TimeSeries>) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::invalid("sample must contain at least one series"));
        }
        Ok(Self { series })
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `F(z) = Σ_i δ(x_i, z)²`.
pub fn frechet(sample: &Sample, z: &TimeSeries) -> f64 {
    frechet_slices(&sample.series, z.as_slice())
}

fn frechet_slices(series: &[TimeSeries], z: &[f64]) -> f64 {
    series
        .iter()
        .map(|x| squared_dtw_unchecked(x.as_slice(), z))
        .sum()
}

/// Index of the series minimizing the sum of squared distances to the rest.
pub fn medoid(sample: &Sample, dist: Distance) -> usize {
    let prepared: Vec<TimeSeries> = sample.series.iter().map(|x| dist.prepare(x)).collect();
    let scores: Vec<f64> = prepared
        .par_iter()
        .map(|z| frechet_slices(&prepared, z.as_slice()))
        .collect();
    argmin(&scores)
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DbaOutcome {
    pub mean: TimeSeries,
    /// Fréchet value of the initialization followed by each accepted iterate.
    pub frechet_trace: Vec<f64>,
    pub iterations: usize,
    /// `false` when `max_iter` ran out before the decrease fell below `tol`.
    pub converged: bool,
}

impl DbaOutcome {
    pub fn frechet(&self) -> f64 {
        *self
            .frechet_trace
            .last()
            .expect("trace holds the initial value")
    }
}

/// DTW barycenter averaging: a majorize-minimize scheme for a sample mean
/// of fixed length `init.len()`.
///
/// Each round aligns the current candidate to every sample series along an
/// optimal warping path and replaces each candidate element by the average
/// of the sample values aligned to it. Iteration stops when the Fréchet
/// value drops by less than `tol` or after `max_iter` rounds. A round that
/// would increase the Fréchet value is discarded.
pub fn dba_mean(sample: &Sample, init: &TimeSeries, max_iter: usize, tol: f64) -> DbaOutcome {
    let mut current = init.clone();
    let mut f_current = frechet(sample, &current);
    let mut trace = vec![f_current];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < max_iter {
        iterations += 1;
        let candidate = dba_step(&sample.series, current.as_slice());
        let f_candidate = frechet(sample, &candidate);
        if f_candidate > f_current {
            converged = true;
            break;
        }
        let decrease = f_current - f_candidate;
        current = candidate;
        f_current = f_candidate;
        trace.push(f_current);
        if decrease < tol {
            converged = true;
            break;
        }
    }

    DbaOutcome {
        mean: current,
        frechet_trace: trace,
        iterations,
        converged,
    }
}

fn dba_step(series: &[TimeSeries], center: &[f64]) -> TimeSeries {
    let mut sums = vec![0.0f64; center.len()];
    let mut counts = vec![0usize; center.len()];
    for x in series {
        let xs = x.as_slice();
        let (_, path) = dtw_with_path(center, xs);
        for &(i, j) in crate::warping::Alignment::points(&path) {
            sums[i] += xs[j];
            counts[i] += 1;
        }
    }
    let values = sums
        .into_iter()
        .zip(counts)
        .map(|(s, c)| s / c as f64)
        .collect();
    TimeSeries::new(values).expect("averages of finite values are finite")
}

/// Index of the closest prototype; ties go to the lowest index.
pub fn nearest_prototype(z: &TimeSeries, prototypes: &[TimeSeries], dist: Distance) -> usize {
    assert!(
        !prototypes.is_empty(),
        "nearest_prototype needs at least one prototype"
    );
    let z = dist.prepare(z);
    let prepared: Vec<TimeSeries> = prototypes.iter().map(|p| dist.prepare(p)).collect();
    nearest_prepared(z.as_slice(), &prepared).0
}

/// Nearest neighbor among already prepared prototypes, with its squared cost.
pub(crate) fn nearest_prepared(z: &[f64], prototypes: &[TimeSeries]) -> (usize, f64) {
    let mut best = (0, squared_dtw_unchecked(z, prototypes[0].as_slice()));
    for (i, p) in prototypes.iter().enumerate().skip(1) {
        let d = squared_dtw_unchecked(z, p.as_slice());
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

/// `k` disjoint non-empty index sets covering a sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    clusters: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups sample indices by cluster label; every label in `0..k` must occur.
    pub fn from_assignment(assignment: &[usize], k: usize) -> Result<Self> {
        let mut clusters = vec![Vec::new(); k];
        for (i, &c) in assignment.iter().enumerate() {
            if c >= k {
                return Err(Error::invalid(format!(
                    "label {c} out of range for k = {k}"
                )));
            }
            clusters[c].push(i);
        }
        if let Some(empty) = clusters.iter().position(Vec::is_empty) {
            return Err(Error::invalid(format!("cluster {empty} is empty")));
        }
        Ok(Self { clusters })
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn k(&self) -> usize {
        self.clusters.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KMeansConfig {
    pub max_iter: usize,
    /// Stop when `J` decreases by less than this fraction of its last value.
    pub rel_tol: f64,
    pub dba_max_iter: usize,
    pub dba_tol: f64,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        Self {
            max_iter: 50,
            rel_tol: 1e-9,
            dba_max_iter: 30,
            dba_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KMeansState {
    pub partition: Partition,
    pub assignment: Vec<usize>,
    pub centroids: Vec<TimeSeries>,
    /// `Σ_i Σ_{x ∈ C_i} d(x, μ_i)²` for the final partition and centroids.
    pub cost: f64,
    pub iterations: usize,
    /// Assignment produced by every assignment step, in order.
    pub history: Vec<Vec<usize>>,
    /// `J` after every update step.
    pub cost_trace: Vec<f64>,
    pub reseeds: usize,
}

/// Lloyd-style k-means: assign to the nearest centroid, recompute centroids
/// with DBA started from the previous centroid, repeat.
///
/// Under [`Distance::DtwStar`] both sample and centroids live in condensed
/// form, so an initial centroid and any expansion of it behave identically.
/// An empty cluster takes over the point farthest from its own centroid.
pub fn kmeans(
    sample: &Sample,
    k: usize,
    init_centroids: &[TimeSeries],
    dist: Distance,
    config: &KMeansConfig,
) -> Result<KMeansState> {
    if k == 0 || k > sample.len() {
        return Err(Error::invalid(format!(
            "k = {k} must lie in 1..={}",
            sample.len()
        )));
    }
    if init_centroids.len() != k {
        return Err(Error::invalid(format!(
            "expected {k} initial centroids, got {}",
            init_centroids.len()
        )));
    }

    let members: Vec<TimeSeries> = sample.series.iter().map(|x| dist.prepare(x)).collect();
    let mut centroids: Vec<TimeSeries> = init_centroids.iter().map(|c| dist.prepare(c)).collect();
    let mut history: Vec<Vec<usize>> = Vec::new();
    let mut cost_trace = Vec::new();
    let mut reseeds = 0;
    let mut previous: Option<Vec<usize>> = None;
    let mut iterations = 0;

    let assignment = loop {
        iterations += 1;
        let mut assignment = assign(&members, &centroids);
        reseeds += reseed_empty(&members, &centroids, &mut assignment, k);
        history.push(assignment.clone());

        if previous.as_ref() == Some(&assignment) || iterations > config.max_iter {
            break assignment;
        }

        centroids = update(&members, &centroids, &assignment, dist, config);
        let cost = cost_of(&members, &centroids, &assignment);
        let last = cost_trace.last().copied();
        cost_trace.push(cost);
        if let Some(last) = last {
            if last - cost <= config.rel_tol * last {
                break assignment;
            }
        }
        previous = Some(assignment);
    };

    let cost = cost_of(&members, &centroids, &assignment);
    Ok(KMeansState {
        partition: Partition::from_assignment(&assignment, k)?,
        assignment,
        centroids,
        cost,
        iterations,
        history,
        cost_trace,
        reseeds,
    })
}

fn assign(members: &[TimeSeries], centroids: &[TimeSeries]) -> Vec<usize> {
    members
        .par_iter()
        .map(|x| nearest_prepared(x.as_slice(), centroids).0)
        .collect()
}

fn reseed_empty(
    members: &[TimeSeries],
    centroids: &[TimeSeries],
    assignment: &mut [usize],
    k: usize,
) -> usize {
    let mut reseeds = 0;
    loop {
        let mut sizes = vec![0usize; k];
        for &c in assignment.iter() {
            sizes[c] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return reseeds;
        };
        let mut far: Option<(usize, f64)> = None;
        for (i, x) in members.iter().enumerate() {
            if sizes[assignment[i]] < 2 {
                continue;
            }
            let d = squared_dtw_unchecked(x.as_slice(), centroids[assignment[i]].as_slice());
            if far.is_none_or(|(_, b)| d > b) {
                far = Some((i, d));
            }
        }
        let (point, _) = far.expect("k <= sample size leaves a cluster with two members");
        log::warn!("cluster {empty} is empty; reseeding it with sample {point}");
        assignment[point] = empty;
        reseeds += 1;
    }
}

fn update(
    members: &[TimeSeries],
    centroids: &[TimeSeries],
    assignment: &[usize],
    dist: Distance,
    config: &KMeansConfig,
) -> Vec<TimeSeries> {
    (0..centroids.len())
        .into_par_iter()
        .map(|c| {
            let cluster: Vec<TimeSeries> = members
                .iter()
                .zip(assignment)
                .filter(|(_, &a)| a == c)
                .map(|(x, _)| x.clone())
                .collect();
            let cluster = Sample::new(cluster).expect("clusters are non-empty after reseeding");
            let out = dba_mean(&cluster, &centroids[c], config.dba_max_iter, config.dba_tol);
            dist.prepare(&out.mean)
        })
        .collect()
}

fn cost_of(members: &[TimeSeries], centroids: &[TimeSeries], assignment: &[usize]) -> f64 {
    members
        .iter()
        .zip(assignment)
        .map(|(x, &c)| squared_dtw_unchecked(x.as_slice(), centroids[c].as_slice()))
        .sum()
}

/// `Σ_i F_i(μ_i)`: total within-cluster Fréchet variation.
pub fn cohesion(clusters: &[Sample], centroids: &[TimeSeries]) -> Result<f64> {
    if clusters.len() != centroids.len() {
        return Err(Error::invalid(format!(
            "{} clusters but {} centroids",
            clusters.len(),
            centroids.len()
        )));
    }
    Ok(clusters
        .iter()
        .zip(centroids)
        .map(|(c, mu)| frechet(c, mu))
        .sum())
}

/// `δ(μ1, μ2)²`.
pub fn separation(mu1: &TimeSeries, mu2: &TimeSeries) -> f64 {
    squared_dtw_unchecked(mu1.as_slice(), mu2.as_slice())
}
