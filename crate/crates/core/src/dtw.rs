//! The dtw-distance: squared-cost dynamic program, optimal path recovery and
//! a brute-force reference over all warping paths.
//!
//! Costs are accumulated as sums of squared differences; the square root is
//! taken once on the final value. No normalization by path length is applied.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::TimeSeries;
use crate::warping::{self, Alignment, WarpingPath};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DtwResult {
    /// `sqrt(squared_cost)`.
    pub distance: f64,
    pub squared_cost: f64,
    pub path: Option<WarpingPath>,
}

impl DtwResult {
    fn from_squared(squared_cost: f64, path: Option<WarpingPath>) -> Self {
        Self {
            distance: squared_cost.sqrt(),
            squared_cost,
            path,
        }
    }
}

#[inline]
fn sq(a: f64, b: f64) -> f64 {
    let d = a - b;
    d * d
}

/// Sum of `(x_i - y_j)^2` over the points of `alignment`, in path order.
pub fn cost_along<A: Alignment + ?Sized>(alignment: &A, x: &[f64], y: &[f64]) -> Result<f64> {
    let (m, n) = alignment.order();
    if (m, n) != (x.len(), y.len()) {
        return Err(Error::invalid(format!(
            "alignment has order {m}x{n} but series have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(alignment
        .points()
        .iter()
        .fold(0.0, |acc, &(i, j)| acc + sq(x[i], y[j])))
}

/// Squared dtw cost of two non-empty slices using two rolling rows.
pub fn squared_dtw(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::invalid("dtw requires non-empty series"));
    }
    Ok(squared_dtw_unchecked(x, y))
}

pub(crate) fn squared_dtw_unchecked(x: &[f64], y: &[f64]) -> f64 {
    // cell values do not depend on traversal order, so iterate along the
    // longer series and keep rows the size of the shorter one
    let (outer, inner) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let n = inner.len();
    let mut prev = vec![0.0f64; n];
    let mut curr = vec![0.0f64; n];

    let a0 = outer[0];
    prev[0] = sq(a0, inner[0]);
    for j in 1..n {
        prev[j] = sq(a0, inner[j]) + prev[j - 1];
    }
    for &a in &outer[1..] {
        curr[0] = sq(a, inner[0]) + prev[0];
        for j in 1..n {
            let best = prev[j - 1].min(prev[j]).min(curr[j - 1]);
            curr[j] = sq(a, inner[j]) + best;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[n - 1]
}

/// The dtw-distance `δ(x, y)`.
pub fn dtw_distance(x: &TimeSeries, y: &TimeSeries) -> f64 {
    squared_dtw_unchecked(x.as_slice(), y.as_slice()).sqrt()
}

/// Computes `δ(x, y)` and, on request, an optimal warping path.
///
/// Path recovery backtracks through the full cost matrix. When several
/// predecessors tie, the diagonal is preferred, then `(i-1, j)`, then
/// `(i, j-1)`.
pub fn dtw(x: &TimeSeries, y: &TimeSeries, recover_path: bool) -> DtwResult {
    if !recover_path {
        return DtwResult::from_squared(squared_dtw_unchecked(x.as_slice(), y.as_slice()), None);
    }
    let (cost, path) = dtw_with_path(x.as_slice(), y.as_slice());
    DtwResult::from_squared(cost, Some(path))
}

pub(crate) fn dtw_with_path(x: &[f64], y: &[f64]) -> (f64, WarpingPath) {
    let (m, n) = (x.len(), y.len());
    let mut d = vec![0.0f64; m * n];
    let at = |i: usize, j: usize| i * n + j;

    for i in 0..m {
        for j in 0..n {
            let c = sq(x[i], y[j]);
            d[at(i, j)] = match (i, j) {
                (0, 0) => c,
                (0, _) => c + d[at(0, j - 1)],
                (_, 0) => c + d[at(i - 1, 0)],
                _ => {
                    c + d[at(i - 1, j - 1)]
                        .min(d[at(i - 1, j)])
                        .min(d[at(i, j - 1)])
                }
            };
        }
    }

    let mut points = Vec::with_capacity(m + n - 1);
    let (mut i, mut j) = (m - 1, n - 1);
    points.push((i, j));
    while (i, j) != (0, 0) {
        let mut best: Option<((usize, usize), f64)> = None;
        for cand in [
            (i > 0 && j > 0).then(|| (i - 1, j - 1)),
            (i > 0).then(|| (i - 1, j)),
            (j > 0).then(|| (i, j - 1)),
        ]
        .into_iter()
        .flatten()
        {
            let v = d[at(cand.0, cand.1)];
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((cand, v));
            }
        }
        (i, j) = best.expect("a predecessor exists off the origin").0;
        points.push((i, j));
    }
    points.reverse();
    (
        d[at(m - 1, n - 1)],
        WarpingPath::from_points_unchecked(points, (m, n)),
    )
}

/// Exact minimum over every warping path, by enumeration.
///
/// Only for tiny inputs: `|x| * |y|` is capped at
/// [`warping::DEFAULT_ENUMERATION_CAP`].
pub fn dtw_bruteforce(x: &TimeSeries, y: &TimeSeries) -> Result<DtwResult> {
    let paths = warping::enumerate_paths(x.len(), y.len())?;
    let mut best: Option<(f64, WarpingPath)> = None;
    for p in paths {
        let c = cost_along(&p, x.as_slice(), y.as_slice())?;
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, p));
        }
    }
    let (cost, path) = best.expect("at least one warping path exists");
    Ok(DtwResult::from_squared(cost, Some(path)))
}
