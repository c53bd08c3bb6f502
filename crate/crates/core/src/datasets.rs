//! UCR-format dataset loading and synthetic corpora.
//!
//! One record per line: the class label, then the values, separated by
//! commas or tabs. Labels are kept verbatim as strings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{CondensedForm, TimeSeries};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Delimiter {
    /// Tab if the first line has one, else comma if it has one, else whitespace.
    #[default]
    Auto,
    Comma,
    Tab,
    Whitespace,
}

impl Delimiter {
    fn resolve(self, first_line: &str) -> Delimiter {
        match self {
            Delimiter::Auto if first_line.contains('\t') => Delimiter::Tab,
            Delimiter::Auto if first_line.contains(',') => Delimiter::Comma,
            Delimiter::Auto => Delimiter::Whitespace,
            other => other,
        }
    }

    fn split<'a>(self, line: &'a str) -> Box<dyn Iterator<Item = &'a str> + 'a> {
        match self {
            Delimiter::Comma => Box::new(line.split(',').map(str::trim)),
            Delimiter::Tab => Box::new(line.split('\t').map(str::trim)),
            Delimiter::Whitespace | Delimiter::Auto => Box::new(line.split_whitespace()),
        }
    }

    fn as_char(self) -> char {
        match self {
            Delimiter::Tab => '\t',
            Delimiter::Whitespace => ' ',
            Delimiter::Comma | Delimiter::Auto => ',',
        }
    }
}

impl FromStr for Delimiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Delimiter::Auto),
            "comma" => Ok(Delimiter::Comma),
            "tab" => Ok(Delimiter::Tab),
            "whitespace" => Ok(Delimiter::Whitespace),
            other => Err(Error::invalid(format!("unknown delimiter {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSeries {
    pub label: String,
    pub series: TimeSeries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSplit {
    pub name: String,
    pub train: Vec<LabeledSeries>,
    pub test: Vec<LabeledSeries>,
    pub series_length: usize,
}

impl DatasetSplit {
    /// Checks that both parts are non-empty and share one series length.
    pub fn new(
        name: impl Into<String>,
        train: Vec<LabeledSeries>,
        test: Vec<LabeledSeries>,
    ) -> Result<Self> {
        let name = name.into();
        if train.is_empty() || test.is_empty() {
            return Err(Error::InvalidInput(format!(
                "dataset {name}: train and test must both be non-empty"
            )));
        }
        let series_length = train[0].series.len();
        let mismatch = train
            .iter()
            .chain(&test)
            .position(|r| r.series.len() != series_length);
        if let Some(pos) = mismatch {
            return Err(Error::InvalidInput(format!(
                "dataset {name}: record {pos} has length {} but expected {series_length}",
                train
                    .iter()
                    .chain(&test)
                    .nth(pos)
                    .map_or(0, |r| r.series.len())
            )));
        }
        Ok(Self {
            name,
            train,
            test,
            series_length,
        })
    }

    pub fn len(&self) -> usize {
        self.train.len() + self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn all(&self) -> impl Iterator<Item = &LabeledSeries> {
        self.train.iter().chain(&self.test)
    }

    /// Per-series z-normalization (zero mean, unit population variance).
    /// Constant series become all zeros.
    pub fn z_normalized(&self) -> DatasetSplit {
        let norm = |rows: &[LabeledSeries]| -> Vec<LabeledSeries> {
            rows.iter()
                .map(|r| LabeledSeries {
                    label: r.label.clone(),
                    series: z_normalize(&r.series),
                })
                .collect()
        };
        DatasetSplit {
            name: self.name.clone(),
            train: norm(&self.train),
            test: norm(&self.test),
            series_length: self.series_length,
        }
    }

    /// Rounds every value to `decimals` places.
    pub fn quantized(&self, decimals: u32) -> DatasetSplit {
        let q = |rows: &[LabeledSeries]| -> Vec<LabeledSeries> {
            rows.iter()
                .map(|r| LabeledSeries {
                    label: r.label.clone(),
                    series: r.series.quantize(decimals),
                })
                .collect()
        };
        DatasetSplit {
            name: self.name.clone(),
            train: q(&self.train),
            test: q(&self.test),
            series_length: self.series_length,
        }
    }
}

pub fn z_normalize(x: &TimeSeries) -> TimeSeries {
    let v = x.as_slice();
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / n;
    let sd = var.sqrt();
    let values = if sd > 0.0 {
        v.iter().map(|a| (a - mean) / sd).collect()
    } else {
        vec![0.0; v.len()]
    };
    TimeSeries::new(values).expect("normalized values are finite")
}

/// Parses UCR records from `text`; `path` is only used in error messages.
pub fn parse_records(text: &str, delimiter: Delimiter, path: &Path) -> Result<Vec<LabeledSeries>> {
    let mut lines: Vec<&str> = text.lines().collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(Error::InvalidInput(format!("{} is empty", path.display())));
    }
    let delimiter = delimiter.resolve(lines[0]);
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut records = Vec::with_capacity(lines.len());
    let mut expected_len: Option<usize> = None;
    for (idx, line) in lines.iter().enumerate() {
        let lineno = idx + 1;
        let mut fields = delimiter.split(line);
        let label = match fields.next() {
            Some(l) if !l.is_empty() => l.to_string(),
            _ => return Err(parse_err(lineno, "missing class label".into())),
        };
        let mut values = Vec::new();
        for (col, field) in fields.enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                parse_err(
                    lineno,
                    format!("value {} ({field:?}) is not a number", col + 1),
                )
            })?;
            values.push(v);
        }
        match expected_len {
            None => expected_len = Some(values.len()),
            Some(n) if n != values.len() => {
                return Err(parse_err(
                    lineno,
                    format!("expected {n} values, found {}", values.len()),
                ))
            }
            _ => {}
        }
        let series = TimeSeries::new(values).map_err(|e| parse_err(lineno, e.to_string()))?;
        records.push(LabeledSeries { label, series });
    }
    Ok(records)
}

pub fn read_records(path: &Path, delimiter: Delimiter) -> Result<Vec<LabeledSeries>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_records(&text, delimiter, path)
}

/// Reads unlabeled series, one per line.
pub fn parse_series(text: &str, delimiter: Delimiter, path: &Path) -> Result<Vec<TimeSeries>> {
    let mut lines: Vec<&str> = text.lines().collect();
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err(Error::InvalidInput(format!("{} is empty", path.display())));
    }
    let delimiter = delimiter.resolve(lines[0]);
    lines
        .iter()
        .enumerate()
        .map(|(idx, line)| {
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let values = delimiter
                .split(line)
                .enumerate()
                .map(|(col, field)| {
                    field.parse::<f64>().map_err(|_| {
                        parse_err(format!("value {} ({field:?}) is not a number", col + 1))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            TimeSeries::new(values).map_err(|e| parse_err(e.to_string()))
        })
        .collect()
}

pub fn read_series(path: &Path, delimiter: Delimiter) -> Result<Vec<TimeSeries>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_series(&text, delimiter, path)
}

/// Loads a train/test pair. The dataset name is the train file stem with a
/// trailing `_TRAIN` removed.
pub fn load_ucr(train_path: &Path, test_path: &Path, delimiter: Delimiter) -> Result<DatasetSplit> {
    let train = read_records(train_path, delimiter)?;
    let test = read_records(test_path, delimiter)?;
    let stem = train_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = stem.strip_suffix("_TRAIN").unwrap_or(&stem).to_string();
    DatasetSplit::new(name, train, test)
}

/// Locates `<name>_TRAIN` / `<name>_TEST` files under `root` or `root/<name>`,
/// trying the extensions `.tsv`, `.txt`, `.csv` and none.
pub fn find_ucr_files(root: &Path, name: &str) -> Option<(PathBuf, PathBuf)> {
    for dir in [root.join(name), root.to_path_buf()] {
        for ext in [".tsv", ".txt", ".csv", ""] {
            let train = dir.join(format!("{name}_TRAIN{ext}"));
            let test = dir.join(format!("{name}_TEST{ext}"));
            if train.is_file() && test.is_file() {
                return Some((train, test));
            }
        }
    }
    None
}

pub fn load_ucr_by_name(root: &Path, name: &str, delimiter: Delimiter) -> Result<DatasetSplit> {
    let (train, test) = find_ucr_files(root, name).ok_or_else(|| {
        Error::InvalidInput(format!(
            "no {name}_TRAIN/{name}_TEST files under {}",
            root.display()
        ))
    })?;
    let mut split = load_ucr(&train, &test, delimiter)?;
    split.name = name.to_string();
    Ok(split)
}

/// Renders records in UCR layout. Values use the shortest representation
/// that parses back to the same `f64`.
pub fn format_records(records: &[LabeledSeries], delimiter: Delimiter) -> String {
    let sep = delimiter.as_char();
    let mut out = String::new();
    for r in records {
        out.push_str(&r.label);
        for v in r.series.as_slice() {
            let _ = write!(out, "{sep}{v}");
        }
        out.push('\n');
    }
    out
}

pub fn write_records(path: &Path, records: &[LabeledSeries], delimiter: Delimiter) -> Result<()> {
    fs::write(path, format_records(records, delimiter)).map_err(|e| Error::io(path, e))
}

/// A synthetic series together with the condensed form it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthSeries {
    pub series: TimeSeries,
    pub base: CondensedForm,
}

fn irreducible_base(rng: &mut ChaCha8Rng, len: usize, offset: f64) -> Vec<f64> {
    let mut v: Vec<f64> = Vec::with_capacity(len);
    while v.len() < len {
        // quarter steps keep values exactly representable
        let a = offset + f64::from(rng.gen_range(-8i32..=8)) * 0.25;
        if v.last() != Some(&a) {
            v.push(a);
        }
    }
    v
}

/// Random irreducible bases of length `base_len`, each expanded with
/// multiplicities drawn uniformly from `1..=max_mult`.
pub fn synth_expansion_corpus(
    seed: u64,
    count: usize,
    base_len: usize,
    max_mult: usize,
) -> Result<Vec<SynthSeries>> {
    if base_len == 0 || max_mult == 0 {
        return Err(Error::invalid("base_len and max_mult must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let base = TimeSeries::new(irreducible_base(&mut rng, base_len, 0.0))?;
            let mult: Vec<usize> = (0..base_len).map(|_| rng.gen_range(1..=max_mult)).collect();
            let series = base.expand(&mult)?;
            Ok(SynthSeries {
                series,
                base: CondensedForm::new(base)?,
            })
        })
        .collect()
}

/// A labeled split of fixed-length series in which record `i` of each part
/// loses exactly `deletions[i]` elements when condensed.
///
/// Labels cycle through `classes`; each class draws its base around its own
/// offset so that nearest-neighbor classification is non-trivial but not
/// perfect.
pub fn synth_split(
    seed: u64,
    name: &str,
    series_length: usize,
    classes: usize,
    train_deletions: &[usize],
    test_deletions: &[usize],
) -> Result<DatasetSplit> {
    if classes == 0 || series_length == 0 {
        return Err(Error::invalid("classes and series_length must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut make = |deletions: &[usize]| -> Result<Vec<LabeledSeries>> {
        deletions
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if d >= series_length {
                    return Err(Error::invalid(format!(
                        "cannot delete {d} of {series_length} elements"
                    )));
                }
                let class = i % classes;
                let base_len = series_length - d;
                let base = irreducible_base(&mut rng, base_len, class as f64 * 0.5);
                let mut mult = vec![1usize; base_len];
                for _ in 0..d {
                    let at = rng.gen_range(0..base_len);
                    mult[at] += 1;
                }
                Ok(LabeledSeries {
                    label: class.to_string(),
                    series: TimeSeries::new(base)?.expand(&mult)?,
                })
            })
            .collect()
    };
    let train = make(train_deletions)?;
    let test = make(test_deletions)?;
    DatasetSplit::new(name, train, test)
}

/// A reproducible stand-in benchmark of `count` small datasets for use when
/// no archive is at hand. Deletion counts are drawn per record; roughly a
/// third of the records are irreducible.
pub fn synth_benchmark(seed: u64, count: usize) -> Result<Vec<DatasetSplit>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let series_length = rng.gen_range(16..=48);
            let classes = rng.gen_range(2..=4);
            let deletions = |rng: &mut ChaCha8Rng, n: usize| -> Vec<usize> {
                (0..n)
                    .map(|_| {
                        if rng.gen_bool(1.0 / 3.0) {
                            0
                        } else {
                            rng.gen_range(1..series_length / 2)
                        }
                    })
                    .collect()
            };
            let n_train = rng.gen_range(10..=30);
            let train = deletions(&mut rng, n_train);
            let n_test = rng.gen_range(10..=30);
            let test = deletions(&mut rng, n_test);
            synth_split(
                seed.wrapping_add(k as u64 + 1),
                &format!("Synth{:02}", k + 1),
                series_length,
                classes,
                &train,
                &test,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("mem")
    }

    #[test]
    fn parses_comma_and_tab_identically() {
        let a = parse_records("1,0.0,1.0\n2,0.0,2.0", Delimiter::Auto, p()).unwrap();
        let b = parse_records("1\t0.0\t1.0\n2\t0.0\t2.0\n", Delimiter::Auto, p()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].label, "1");
        assert_eq!(a[1].series.as_slice(), &[0.0, 2.0]);
        let c = parse_records("1 0.0 1.0\n2  0.0 2.0\n", Delimiter::Auto, p()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn explicit_delimiter() {
        let a = parse_records("1,0.5,1.0\n", Delimiter::Comma, p()).unwrap();
        assert_eq!(a[0].series.as_slice(), &[0.5, 1.0]);
        assert!(parse_records("1,0.5,1.0\n", Delimiter::Tab, p()).is_err());
    }

    #[test]
    fn ragged_row_reports_line() {
        let err = parse_records("1,0,1\n2,0,2\n3,5\n", Delimiter::Auto, p()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_value_is_error() {
        let err = parse_records("1,0,abc\n", Delimiter::Auto, p()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_records("1,0,NaN\n", Delimiter::Auto, p()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_input_is_error() {
        assert!(matches!(
            parse_records("", Delimiter::Auto, p()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            parse_records("\n\n", Delimiter::Auto, p()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn blank_line_in_middle_is_not_dropped() {
        assert!(parse_records("1,0\n\n2,1\n", Delimiter::Comma, p()).is_err());
    }

    #[test]
    fn unlabeled_series() {
        let s = parse_series("0,1\n", Delimiter::Auto, p()).unwrap();
        assert_eq!(s[0].as_slice(), &[0.0, 1.0]);
        assert!(parse_series("0,x\n", Delimiter::Auto, p()).is_err());
        assert!(parse_series("", Delimiter::Auto, p()).is_err());
    }

    #[test]
    fn labels_are_raw_strings() {
        let a = parse_records("1.0000000e+00,3\n01,4\n", Delimiter::Auto, p()).unwrap();
        assert_eq!(a[0].label, "1.0000000e+00");
        assert_eq!(a[1].label, "01");
    }

    #[test]
    fn split_requires_uniform_length() {
        let rec = |v: &[f64]| LabeledSeries {
            label: "a".into(),
            series: TimeSeries::new(v.to_vec()).unwrap(),
        };
        assert!(DatasetSplit::new("d", vec![rec(&[1.0])], vec![rec(&[1.0, 2.0])]).is_err());
        assert!(DatasetSplit::new("d", vec![], vec![rec(&[1.0])]).is_err());
        let s = DatasetSplit::new("d", vec![rec(&[1.0])], vec![rec(&[2.0])]).unwrap();
        assert_eq!(s.series_length, 1);
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let recs = vec![
            LabeledSeries {
                label: "x".into(),
                series: TimeSeries::new(vec![0.1, -0.0, 1e-300, 123456.789, -2.5e17]).unwrap(),
            },
            LabeledSeries {
                label: "y".into(),
                series: TimeSeries::new(vec![f64::MIN_POSITIVE, 1.0 / 3.0, 7.0, 0.0, -1.0])
                    .unwrap(),
            },
        ];
        for d in [Delimiter::Comma, Delimiter::Tab] {
            let text = format_records(&recs, d);
            let back = parse_records(&text, d, p()).unwrap();
            for (a, b) in recs.iter().zip(&back) {
                let bits_a: Vec<u64> = a.series.as_slice().iter().map(|v| v.to_bits()).collect();
                let bits_b: Vec<u64> = b.series.as_slice().iter().map(|v| v.to_bits()).collect();
                assert_eq!(bits_a, bits_b);
                assert_eq!(a.label, b.label);
            }
        }
    }

    #[test]
    fn z_normalize_basic() {
        let z = z_normalize(&TimeSeries::new(vec![1.0, 3.0]).unwrap());
        assert_eq!(z.as_slice(), &[-1.0, 1.0]);
        let z = z_normalize(&TimeSeries::new(vec![2.0, 2.0]).unwrap());
        assert_eq!(z.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn synth_corpus_examples() {
        assert!(synth_expansion_corpus(1, 0, 3, 2).unwrap().is_empty());
        for s in synth_expansion_corpus(2, 50, 5, 1).unwrap() {
            assert!(s.series.is_irreducible());
        }
        let a = synth_expansion_corpus(3, 40, 6, 4).unwrap();
        for s in &a {
            assert_eq!(s.series.condense(), s.base);
        }
        assert_eq!(a, synth_expansion_corpus(3, 40, 6, 4).unwrap());
        assert!(synth_expansion_corpus(3, 1, 0, 4).is_err());
    }

    #[test]
    fn synth_split_has_planned_deletions() {
        let s = synth_split(5, "s", 12, 2, &[0, 3, 1], &[2, 0]).unwrap();
        let got: Vec<usize> = s.all().map(|r| r.series.redundancy()).collect();
        assert_eq!(got, vec![0, 3, 1, 2, 0]);
        assert_eq!(s.series_length, 12);
        assert!(synth_split(5, "s", 4, 2, &[4], &[0]).is_err());
    }
}
