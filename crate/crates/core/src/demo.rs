//! Reproduction of the two-cluster k-means example: four short series, the
//! unique mean of the first cluster and a family of means of the second
//! cluster that differ only in how often their last value is repeated.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::mining::{cohesion, frechet, separation, Sample};
use crate::sequence::TimeSeries;

fn ts(v: &[f64]) -> TimeSeries {
    TimeSeries::new(v.to_vec()).expect("literal series are valid")
}

/// `x1 = (-1,0,0)`, `x2 = (-1,0,2)`, `x3 = (0,2,3)`, `x4 = (1,2,3)`.
pub fn example_series() -> [TimeSeries; 4] {
    [
        ts(&[-1.0, 0.0, 0.0]),
        ts(&[-1.0, 0.0, 2.0]),
        ts(&[0.0, 2.0, 3.0]),
        ts(&[1.0, 2.0, 3.0]),
    ]
}

/// Mean `(-1, 0, 1)` of the first cluster.
pub fn first_mean() -> TimeSeries {
    ts(&[-1.0, 0.0, 1.0])
}

/// `(0.5, 2, 3, …, 3)` with `r` trailing threes; `r >= 1`.
pub fn second_mean(r: usize) -> TimeSeries {
    assert!(r >= 1, "at least one replicate");
    let mut v = vec![0.5, 2.0];
    v.extend(std::iter::repeat_n(3.0, r));
    ts(&v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationRow {
    pub r: usize,
    pub separation: f64,
    pub cohesion: f64,
    /// Fréchet value of the second cluster at its `r`-th mean.
    pub frechet_second: f64,
}

pub fn separation_table(max_r: usize) -> Vec<SeparationRow> {
    let [x1, x2, x3, x4] = example_series();
    let c1 = Sample::new(vec![x1, x2]).expect("non-empty");
    let c2 = Sample::new(vec![x3, x4]).expect("non-empty");
    let mu1 = first_mean();
    (1..=max_r)
        .map(|r| {
            let mu2 = second_mean(r);
            SeparationRow {
                r,
                separation: separation(&mu1, &mu2),
                cohesion: cohesion(&[c1.clone(), c2.clone()], &[mu1.clone(), mu2.clone()])
                    .expect("two clusters, two centroids"),
                frechet_second: frechet(&c2, &mu2),
            }
        })
        .collect()
}

pub fn separation_table_csv(rows: &[SeparationRow]) -> String {
    let mut out = String::from("r,separation,cohesion,frechet_second\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.r, row.separation, row.cohesion, row.frechet_second
        );
    }
    out
}
