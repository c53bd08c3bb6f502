//! Warping functions, warping matrices, warping walks and warping paths.
//!
//! All indices are 0-based: a warping function `[ℓ] → [n]` is stored as a
//! vector of length `ℓ` with values in `0..n`, and a walk of order `m × n`
//! runs from `(0, 0)` to `(m - 1, n - 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{self, TimeSeries};

/// Upper bound on `m * n` accepted by [`enumerate_paths`].
pub const DEFAULT_ENUMERATION_CAP: usize = 25;

/// A surjective, monotonically increasing map `[ℓ] → [n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WarpingFunction {
    values: Vec<usize>,
    codomain: usize,
}

impl WarpingFunction {
    /// Validates `values` as a warping function onto `0..codomain`.
    pub fn new(values: Vec<usize>, codomain: usize) -> Result<Self> {
        if values.is_empty() || codomain == 0 {
            return Err(Error::invalid(
                "warping function needs a non-empty domain and codomain",
            ));
        }
        if values[0] != 0 {
            return Err(Error::invalid("warping function must start at 0"));
        }
        if values[values.len() - 1] != codomain - 1 {
            return Err(Error::invalid(format!(
                "warping function must end at {} (codomain size {codomain})",
                codomain - 1
            )));
        }
        // surjective + monotone on integers means unit or zero steps
        if let Some(l) = values
            .windows(2)
            .position(|w| w[1] < w[0] || w[1] - w[0] > 1)
        {
            return Err(Error::invalid(format!(
                "step {} -> {} at position {l} is not in {{0, 1}}",
                values[l],
                values[l + 1]
            )));
        }
        Ok(Self { values, codomain })
    }

    /// Infers the codomain from the last value.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let codomain = values.last().map_or(0, |&v| v + 1);
        Self::new(values, codomain)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity warping function needs n > 0");
        Self {
            values: (0..n).collect(),
            codomain: n,
        }
    }

    /// Builds the function that repeats index `i` exactly `multiplicities[i]` times.
    pub fn from_multiplicities(multiplicities: &[usize]) -> Result<Self> {
        let idx: Vec<usize> = (0..multiplicities.len()).collect();
        let values = sequence::expand(&idx, multiplicities)?;
        Self::new(values, multiplicities.len())
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, l: usize) -> usize {
        self.values[l]
    }

    /// Size of each fiber `φ⁻¹(i)`, for `i` in `0..n`.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        sequence::prime_factorize(&self.values)
            .factors()
            .iter()
            .map(|f| f.multiplicity)
            .collect()
    }

    /// First index of each fiber.
    fn fiber_starts(&self) -> Vec<usize> {
        let mut starts = Vec::with_capacity(self.codomain);
        starts.push(0);
        for (l, w) in self.values.windows(2).enumerate() {
            if w[0] != w[1] {
                starts.push(l + 1);
            }
        }
        starts
    }

    pub fn matrix(&self) -> WarpingMatrix {
        WarpingMatrix { map: self.clone() }
    }
}

/// `l ↦ outer(inner(l))`.
pub fn compose(outer: &WarpingFunction, inner: &WarpingFunction) -> Result<WarpingFunction> {
    if inner.codomain != outer.domain_size() {
        return Err(Error::invalid(format!(
            "cannot compose: inner maps onto {} indices, outer is defined on {}",
            inner.codomain,
            outer.domain_size()
        )));
    }
    let values = inner.values.iter().map(|&l| outer.values[l]).collect();
    Ok(WarpingFunction {
        values,
        codomain: outer.codomain,
    })
}

/// Finds `θ`, `θ'` with `φ ∘ θ = φ' ∘ θ'` by walking the pullback of the two
/// maps fiber by fiber.
///
/// Inside the fiber of `i` the indices of both preimages are paired off in
/// order; the shorter side keeps repeating its last index. Fibers are
/// visited in increasing `i`, which yields the lexicographic order.
pub fn equalize(
    phi: &WarpingFunction,
    phi_prime: &WarpingFunction,
) -> Result<(WarpingFunction, WarpingFunction)> {
    if phi.codomain != phi_prime.codomain {
        return Err(Error::invalid(format!(
            "codomain mismatch: {} vs {}",
            phi.codomain, phi_prime.codomain
        )));
    }
    let (a_starts, a_sizes) = (phi.fiber_starts(), phi.fiber_sizes());
    let (b_starts, b_sizes) = (phi_prime.fiber_starts(), phi_prime.fiber_sizes());
    let cap = phi.domain_size() + phi_prime.domain_size();
    let mut theta = Vec::with_capacity(cap);
    let mut theta_prime = Vec::with_capacity(cap);
    for i in 0..phi.codomain {
        let (k, l) = (a_sizes[i] - 1, b_sizes[i] - 1);
        for r in 0..=k.max(l) {
            theta.push(a_starts[i] + r.min(k));
            theta_prime.push(b_starts[i] + r.min(l));
        }
    }
    Ok((
        WarpingFunction::new(theta, phi.domain_size())?,
        WarpingFunction::new(theta_prime, phi_prime.domain_size())?,
    ))
}

/// A 0/1 matrix with exactly one 1 per row, stored as its row map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WarpingMatrix {
    map: WarpingFunction,
}

impl WarpingMatrix {
    pub fn identity(n: usize) -> Self {
        WarpingFunction::identity(n).matrix()
    }

    pub fn rows(&self) -> usize {
        self.map.domain_size()
    }

    pub fn cols(&self) -> usize {
        self.map.codomain()
    }

    pub fn row_map(&self) -> &WarpingFunction {
        &self.map
    }

    /// Column holding the 1 in row `l`.
    pub fn column_of(&self, l: usize) -> usize {
        self.map.apply(l)
    }

    /// Computes `Φx`.
    pub fn apply(&self, x: &TimeSeries) -> Result<TimeSeries> {
        if x.len() != self.cols() {
            return Err(Error::invalid(format!(
                "matrix has {} columns but series has length {}",
                self.cols(),
                x.len()
            )));
        }
        let xs = x.as_slice();
        TimeSeries::new(self.map.values.iter().map(|&j| xs[j]).collect())
    }

    /// Matrix product `self · rhs`.
    pub fn product(&self, rhs: &WarpingMatrix) -> Result<WarpingMatrix> {
        compose(&rhs.map, &self.map).map(|map| WarpingMatrix { map })
    }

    /// The matrix `Φ` with `x = Φy`, when `x` is an expansion of `y`.
    pub fn from_expansion(x: &TimeSeries, y: &TimeSeries) -> Option<WarpingMatrix> {
        let alpha = sequence::expansion_multiplicities(x.as_slice(), y.as_slice())?;
        WarpingFunction::from_multiplicities(&alpha)
            .ok()
            .map(|map| WarpingMatrix { map })
    }
}

/// Anything that aligns an `m`-series with an `n`-series through index pairs.
pub trait Alignment {
    fn points(&self) -> &[(usize, usize)];

    /// `(m, n)`.
    fn order(&self) -> (usize, usize);

    fn len(&self) -> usize {
        self.points().len()
    }

    fn is_empty(&self) -> bool {
        self.points().is_empty()
    }
}

fn check_boundary(points: &[(usize, usize)]) -> Result<(usize, usize)> {
    let (first, last) = match (points.first(), points.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(Error::invalid("alignment must contain at least one point")),
    };
    if first != (0, 0) {
        return Err(Error::invalid(format!(
            "alignment starts at {first:?}, not (0, 0)"
        )));
    }
    Ok((last.0 + 1, last.1 + 1))
}

fn check_steps(points: &[(usize, usize)], allow_zero: bool) -> Result<()> {
    for (l, w) in points.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let ok = b.0 >= a.0 && b.1 >= a.1 && b.0 - a.0 <= 1 && b.1 - a.1 <= 1;
        if !ok || (!allow_zero && a == b) {
            return Err(Error::invalid(format!(
                "invalid step {a:?} -> {b:?} at position {l}"
            )));
        }
    }
    Ok(())
}

/// Index pairs from `(0, 0)` to `(m-1, n-1)` with steps in `{0,1}×{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WarpingWalk {
    points: Vec<(usize, usize)>,
    order: (usize, usize),
}

impl WarpingWalk {
    /// The order `m × n` is read off the last point.
    pub fn new(points: Vec<(usize, usize)>) -> Result<Self> {
        let order = check_boundary(&points)?;
        check_steps(&points, true)?;
        Ok(Self { points, order })
    }

    pub fn from_function_pair(phi: &WarpingFunction, psi: &WarpingFunction) -> Result<Self> {
        if phi.domain_size() != psi.domain_size() {
            return Err(Error::invalid(format!(
                "warping functions have different lengths {} and {}",
                phi.domain_size(),
                psi.domain_size()
            )));
        }
        let points = phi
            .values
            .iter()
            .copied()
            .zip(psi.values.iter().copied())
            .collect();
        Self::new(points)
    }

    /// Splits the walk into its row and column warping functions.
    pub fn to_function_pair(&self) -> (WarpingFunction, WarpingFunction) {
        let (m, n) = self.order;
        let phi = self.points.iter().map(|p| p.0).collect();
        let psi = self.points.iter().map(|p| p.1).collect();
        (
            WarpingFunction {
                values: phi,
                codomain: m,
            },
            WarpingFunction {
                values: psi,
                codomain: n,
            },
        )
    }

    /// Drops repeated consecutive points.
    pub fn condense(&self) -> WarpingPath {
        WarpingPath {
            points: sequence::condense(&self.points),
            order: self.order,
        }
    }

    pub fn into_points(self) -> Vec<(usize, usize)> {
        self.points
    }
}

impl Alignment for WarpingWalk {
    fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    fn order(&self) -> (usize, usize) {
        self.order
    }
}

/// A warping walk without zero steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WarpingPath {
    points: Vec<(usize, usize)>,
    order: (usize, usize),
}

impl WarpingPath {
    pub fn new(points: Vec<(usize, usize)>) -> Result<Self> {
        let order = check_boundary(&points)?;
        check_steps(&points, false)?;
        Ok(Self { points, order })
    }

    /// Points are trusted to form a valid path.
    pub(crate) fn from_points_unchecked(
        points: Vec<(usize, usize)>,
        order: (usize, usize),
    ) -> Self {
        debug_assert!(Self::new(points.clone()).is_ok());
        Self { points, order }
    }

    /// `(0,0), (1,1), …, (n-1,n-1)`.
    pub fn diagonal(n: usize) -> Self {
        assert!(n > 0, "diagonal path needs n > 0");
        Self {
            points: (0..n).map(|i| (i, i)).collect(),
            order: (n, n),
        }
    }

    pub fn into_walk(self) -> WarpingWalk {
        WarpingWalk {
            points: self.points,
            order: self.order,
        }
    }

    pub fn into_points(self) -> Vec<(usize, usize)> {
        self.points
    }
}

impl Alignment for WarpingPath {
    fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    fn order(&self) -> (usize, usize) {
        self.order
    }
}

/// All warping paths of order `m × n`, with `m * n` capped at
/// [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_paths(m: usize, n: usize) -> Result<Vec<WarpingPath>> {
    enumerate_paths_capped(m, n, DEFAULT_ENUMERATION_CAP)
}

/// Depth-first enumeration; steps are tried in the order `(1,0)`, `(0,1)`, `(1,1)`.
pub fn enumerate_paths_capped(m: usize, n: usize, cap: usize) -> Result<Vec<WarpingPath>> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("path order must be positive"));
    }
    let cells = m.saturating_mul(n);
    if cells > cap {
        return Err(Error::ResourceLimit {
            what: "path enumeration cells",
            requested: cells,
            limit: cap,
        });
    }

    fn dfs(m: usize, n: usize, current: &mut Vec<(usize, usize)>, out: &mut Vec<WarpingPath>) {
        let (i, j) = *current.last().expect("path is never empty");
        if (i, j) == (m - 1, n - 1) {
            out.push(WarpingPath {
                points: current.clone(),
                order: (m, n),
            });
            return;
        }
        for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
            let next = (i + di, j + dj);
            if next.0 < m && next.1 < n {
                current.push(next);
                dfs(m, n, current, out);
                current.pop();
            }
        }
    }

    let mut out = Vec::new();
    dfs(m, n, &mut vec![(0, 0)], &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;

    fn wf(values: &[usize], codomain: usize) -> WarpingFunction {
        WarpingFunction::new(values.to_vec(), codomain).unwrap()
    }

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    /// Dense 0/1 matrix for a row map; used as an independent product oracle.
    fn dense(f: &WarpingFunction) -> Vec<Vec<u32>> {
        (0..f.domain_size())
            .map(|l| {
                (0..f.codomain())
                    .map(|j| u32::from(f.apply(l) == j))
                    .collect()
            })
            .collect()
    }

    fn dense_mul(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let inner = b.len();
        let cols = b[0].len();
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn function_validation() {
        assert!(WarpingFunction::new(vec![0, 1, 1], 2).is_ok());
        assert!(WarpingFunction::new(vec![0, 2], 3).is_err());
        assert!(WarpingFunction::new(vec![1, 1], 2).is_err());
        assert!(WarpingFunction::new(vec![0, 1, 0, 1], 2).is_err());
        assert!(WarpingFunction::new(vec![0, 0], 2).is_err());
        assert!(WarpingFunction::new(vec![], 0).is_err());
    }

    #[test]
    fn walk_to_function_pair_examples() {
        let w = WarpingWalk::new(vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        let (phi, psi) = w.to_function_pair();
        assert_eq!(phi.values(), &[0, 1, 1]);
        assert_eq!(psi.values(), &[0, 0, 1]);

        let w = WarpingWalk::new(vec![(0, 0)]).unwrap();
        let (phi, psi) = w.to_function_pair();
        assert_eq!((phi.values(), psi.values()), (&[0][..], &[0][..]));

        let w = WarpingWalk::new(vec![(0, 0), (0, 0), (1, 1)]).unwrap();
        let (phi, psi) = w.to_function_pair();
        assert_eq!(phi.values(), &[0, 0, 1]);
        assert_eq!(psi.values(), &[0, 0, 1]);
        assert_eq!(WarpingWalk::from_function_pair(&phi, &psi).unwrap(), w);
    }

    #[test]
    fn walk_and_path_validation() {
        assert!(WarpingWalk::new(vec![(0, 1), (1, 1)]).is_err());
        assert!(WarpingWalk::new(vec![(0, 0), (2, 1)]).is_err());
        assert!(WarpingWalk::new(vec![(0, 0), (1, 1), (0, 1)]).is_err());
        assert!(WarpingPath::new(vec![(0, 0), (0, 0), (1, 1)]).is_err());
        assert!(WarpingPath::new(vec![(0, 0), (1, 1)]).is_ok());
    }

    #[test]
    fn apply_warping_examples() {
        let phi = wf(&[0, 1, 1], 2);
        assert_eq!(
            phi.matrix().apply(&ts(&[0.0, 1.0])).unwrap(),
            ts(&[0.0, 1.0, 1.0])
        );
        let x = ts(&[3.0, -1.0, 2.5]);
        assert_eq!(WarpingMatrix::identity(3).apply(&x).unwrap(), x);
        let phi = wf(&[0, 0, 1], 2);
        assert_eq!(
            phi.matrix().apply(&ts(&[4.0, 5.0])).unwrap(),
            ts(&[4.0, 4.0, 5.0])
        );
        assert!(phi.matrix().apply(&x).is_err());
    }

    #[test]
    fn compose_examples() {
        let phi = wf(&[0, 0, 1], 2);
        assert_eq!(compose(&WarpingFunction::identity(2), &phi).unwrap(), phi);
        assert_eq!(compose(&wf(&[0, 1], 2), &phi).unwrap(), phi);
        let inner = wf(&[0, 1, 1], 2);
        let outer = wf(&[0, 0], 1);
        assert_eq!(compose(&outer, &inner).unwrap().values(), &[0, 0, 0]);
        assert!(compose(&inner, &outer).is_err());
    }

    #[test]
    fn equalize_examples() {
        let id = WarpingFunction::identity(4);
        let (t, tp) = equalize(&id, &id).unwrap();
        assert_eq!((t.clone(), tp), (id.clone(), id));

        let phi = wf(&[0, 1], 2);
        let phi_p = wf(&[0, 0, 1], 2);
        let (t, tp) = equalize(&phi, &phi_p).unwrap();
        assert_eq!(t.values(), &[0, 0, 1]);
        assert_eq!(tp.values(), &[0, 1, 2]);
        assert_eq!(
            compose(&phi, &t).unwrap().values(),
            compose(&phi_p, &tp).unwrap().values()
        );
        assert_eq!(compose(&phi, &t).unwrap().values(), &[0, 0, 1]);

        assert!(equalize(&phi, &wf(&[0, 1, 2], 3)).is_err());
    }

    #[test]
    fn condense_walk_examples() {
        let w = WarpingWalk::new(vec![(0, 0), (0, 0), (1, 1)]).unwrap();
        assert_eq!(w.condense().points(), &[(0, 0), (1, 1)]);
        let w = WarpingWalk::new(vec![(0, 0), (1, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(w.condense().points(), &[(0, 0), (1, 0), (1, 1)]);
        for p in enumerate_paths(3, 3).unwrap() {
            assert_eq!(p.clone().into_walk().condense(), p);
        }
    }

    fn delannoy(m: usize, n: usize) -> usize {
        // paths from (0,0) to (m-1,n-1)
        let mut d = vec![vec![0usize; n]; m];
        for i in 0..m {
            for j in 0..n {
                d[i][j] = if i == 0 || j == 0 {
                    1
                } else {
                    d[i - 1][j] + d[i][j - 1] + d[i - 1][j - 1]
                };
            }
        }
        d[m - 1][n - 1]
    }

    #[test]
    fn enumerate_paths_examples() {
        let one = enumerate_paths(1, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].points(), &[(0, 0)]);
        assert_eq!(enumerate_paths(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_paths(3, 3).unwrap().len(), 13);
        assert_eq!(delannoy(3, 3), 13);
    }

    #[test]
    fn enumerate_paths_is_complete_and_ordered() {
        for m in 1..=4 {
            for n in 1..=4 {
                let paths = enumerate_paths(m, n).unwrap();
                assert_eq!(paths.len(), delannoy(m, n));
                let unique: HashSet<_> = paths.iter().collect();
                assert_eq!(unique.len(), paths.len());
                for p in &paths {
                    assert_eq!(p.order(), (m, n));
                    assert!(WarpingPath::new(p.points().to_vec()).is_ok());
                    assert!(p.len() >= m.max(n) && p.len() < m + n);
                }
            }
        }
        // first path goes down the first column
        let first = &enumerate_paths(2, 2).unwrap()[0];
        assert_eq!(first.points(), &[(0, 0), (1, 0), (1, 1)]);
    }

    #[test]
    fn enumerate_paths_cap() {
        assert!(matches!(
            enumerate_paths(5, 6),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(enumerate_paths_capped(5, 6, 30).is_ok());
    }

    #[test]
    fn expansion_realized_by_matrix() {
        let y = ts(&[1.0, 2.0, 2.0, 3.0]);
        let x = ts(&[1.0, 1.0, 2.0, 2.0, 2.0, 3.0]);
        let phi = WarpingMatrix::from_expansion(&x, &y).unwrap();
        assert_eq!(phi.apply(&y).unwrap(), x);
        assert!(WarpingMatrix::from_expansion(&y, &x).is_none());
    }

    fn warping_fn(max_codomain: usize, max_len: usize) -> impl Strategy<Value = WarpingFunction> {
        (1..=max_codomain).prop_flat_map(move |n| {
            prop::collection::vec(1usize..=(max_len / n).max(1), n)
                .prop_map(|mult| WarpingFunction::from_multiplicities(&mult).unwrap())
        })
    }

    fn same_codomain_pair() -> impl Strategy<Value = (WarpingFunction, WarpingFunction)> {
        (1usize..=8).prop_flat_map(|n| {
            let mults = prop::collection::vec(1usize..=(16 / n).max(1), n);
            (mults.clone(), mults).prop_map(|(a, b)| {
                (
                    WarpingFunction::from_multiplicities(&a).unwrap(),
                    WarpingFunction::from_multiplicities(&b).unwrap(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn walk_function_pair_round_trip(
            (phi, psi) in (1usize..6, 1usize..6, 0usize..6).prop_flat_map(|(m, n, extra)| {
                // random walk built from a random path plus zero steps
                let paths = enumerate_paths_capped(m, n, 36).unwrap();
                (prop::sample::select(paths), prop::collection::vec(0usize..3, extra))
            }).prop_map(|(p, dups)| {
                let mut pts = p.into_points();
                for d in dups {
                    let at = d % pts.len();
                    pts.insert(at, pts[at]);
                }
                WarpingWalk::new(pts).unwrap().to_function_pair()
            })
        ) {
            let walk = WarpingWalk::from_function_pair(&phi, &psi).unwrap();
            let (phi2, psi2) = walk.to_function_pair();
            prop_assert_eq!(phi2, phi);
            prop_assert_eq!(psi2, psi);
            let path = walk.condense();
            prop_assert!(WarpingPath::new(path.points().to_vec()).is_ok());
        }

        #[test]
        fn equalize_commutes((phi, phi_p) in same_codomain_pair()) {
            let (t, tp) = equalize(&phi, &phi_p).unwrap();
            prop_assert_eq!(compose(&phi, &t).unwrap(), compose(&phi_p, &tp).unwrap());
            prop_assert!(t.domain_size() >= phi.domain_size().max(phi_p.domain_size()));
        }

        #[test]
        fn compose_is_contravariant(
            inner in warping_fn(5, 10),
            steps in prop::collection::vec(0usize..2, 5),
        ) {
            // outer: [m] → [k] with m = inner.codomain(), built from 0/1 steps
            let mut outer_idx = vec![0usize];
            for &s in &steps[..inner.codomain() - 1] {
                outer_idx.push(outer_idx[outer_idx.len() - 1] + s);
            }
            let outer = WarpingFunction::from_values(outer_idx).unwrap();
            let composed = compose(&outer, &inner).unwrap();
            let expected = dense_mul(&dense(&inner), &dense(&outer));
            prop_assert_eq!(dense(&composed), expected);
            prop_assert_eq!(inner.matrix().product(&outer.matrix()).unwrap(), composed.matrix());
        }

        #[test]
        fn apply_gives_expansion_and_back(
            x in prop::collection::vec(-3i8..3, 1..8),
            mult in prop::collection::vec(1usize..4, 8),
        ) {
            let x = TimeSeries::new(x.into_iter().map(f64::from).collect()).unwrap();
            let phi = WarpingFunction::from_multiplicities(&mult[..x.len()]).unwrap();
            let y = phi.matrix().apply(&x).unwrap();
            prop_assert!(y.is_expansion_of(&x));
            let recovered = WarpingMatrix::from_expansion(&y, &x).unwrap();
            prop_assert_eq!(recovered.apply(&x).unwrap(), y);
        }
    }
}
