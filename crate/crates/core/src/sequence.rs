//! Word algebra: prime factorization, condensation, expansion and compression.
//!
//! Everything here is generic over the alphabet, so the same routines serve
//! real-valued time series and the index pairs of warping walks. Symbols are
//! compared with `==` and nothing else; there is no tolerance anywhere.
//!
//! Terminology used throughout the crate:
//!
//! * a *prime factor* is a maximal run `a^k` of one repeated symbol;
//! * `x` is an *expansion* of `y` (and `y` a *compression* of `x`) when `x`
//!   is obtained by repeating each symbol of `y` one or more times;
//! * the *condensed form* of `x` collapses every run to a single symbol and
//!   is the unique shortest compression of `x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, possibly empty, sequence over an alphabet `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word<A> {
    elements: Vec<A>,
}

/// A single prime factor `value^multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor<A> {
    pub value: A,
    pub multiplicity: usize,
}

/// Run-length decomposition of a word into maximal constant blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PrimeFactorization<A> {
    factors: Vec<Factor<A>>,
}

impl<A> Word<A> {
    pub fn new(elements: Vec<A>) -> Self {
        Self { elements }
    }

    pub fn empty() -> Self {
        Self {
            elements: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[A] {
        &self.elements
    }

    pub fn into_vec(self) -> Vec<A> {
        self.elements
    }
}

impl<A> From<Vec<A>> for Word<A> {
    fn from(elements: Vec<A>) -> Self {
        Self::new(elements)
    }
}

impl<A: Clone> From<&[A]> for Word<A> {
    fn from(elements: &[A]) -> Self {
        Self::new(elements.to_vec())
    }
}

impl<A: Clone + PartialEq> Word<A> {
    pub fn prime_factorize(&self) -> PrimeFactorization<A> {
        prime_factorize(&self.elements)
    }

    pub fn condense(&self) -> Word<A> {
        Word::new(condense(&self.elements))
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.elements)
    }

    /// `true` iff `self` is an expansion of `other`.
    pub fn is_expansion_of(&self, other: &Word<A>) -> bool {
        is_expansion(&self.elements, &other.elements)
    }

    pub fn expand(&self, multiplicities: &[usize]) -> Result<Word<A>> {
        expand(&self.elements, multiplicities).map(Word::new)
    }

    pub fn common_compression(&self, other: &Word<A>) -> Option<Word<A>> {
        common_compression(&self.elements, &other.elements).map(Word::new)
    }
}

impl<A> PrimeFactorization<A> {
    pub fn factors(&self) -> &[Factor<A>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Length of the factorized word.
    pub fn word_len(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }
}

impl<A: Clone> PrimeFactorization<A> {
    /// Concatenates `value^multiplicity` over all factors.
    pub fn to_word(&self) -> Word<A> {
        let mut out = Vec::with_capacity(self.word_len());
        for f in &self.factors {
            out.extend(std::iter::repeat_n(f.value.clone(), f.multiplicity));
        }
        Word::new(out)
    }

    pub fn values(&self) -> Vec<A> {
        self.factors.iter().map(|f| f.value.clone()).collect()
    }
}

/// Splits `word` into maximal runs of equal symbols.
pub fn prime_factorize<A: Clone + PartialEq>(word: &[A]) -> PrimeFactorization<A> {
    let mut factors: Vec<Factor<A>> = Vec::new();
    for a in word {
        match factors.last_mut() {
            Some(last) if last.value == *a => last.multiplicity += 1,
            _ => factors.push(Factor {
                value: a.clone(),
                multiplicity: 1,
            }),
        }
    }
    PrimeFactorization { factors }
}

/// Collapses every run of equal consecutive symbols to its first occurrence.
pub fn condense<A: Clone + PartialEq>(word: &[A]) -> Vec<A> {
    let mut out: Vec<A> = Vec::with_capacity(word.len());
    for a in word {
        if out.last() != Some(a) {
            out.push(a.clone());
        }
    }
    out
}

pub fn is_irreducible<A: PartialEq>(word: &[A]) -> bool {
    word.windows(2).all(|w| w[0] != w[1])
}

/// Decides whether `x` is an expansion of `y`.
///
/// Factor-wise criterion: both words have the same number of prime factors
/// with the same values, and each multiplicity in `x` is at least the one
/// in `y`.
pub fn is_expansion<A: Clone + PartialEq>(x: &[A], y: &[A]) -> bool {
    expansion_multiplicities(x, y).is_some()
}

/// Recovers multiplicities `α` with `expand(y, α) == x`, if `x` expands `y`.
///
/// Within a prime factor `a^k` of `x` matched against `a^j` of `y` the
/// surplus `k - j` is given to the last symbol of the block.
pub fn expansion_multiplicities<A: Clone + PartialEq>(x: &[A], y: &[A]) -> Option<Vec<usize>> {
    if x.len() < y.len() {
        return None;
    }
    let px = prime_factorize(x);
    let py = prime_factorize(y);
    if px.len() != py.len() {
        return None;
    }
    let mut alpha = Vec::with_capacity(y.len());
    for (fx, fy) in px.factors.iter().zip(&py.factors) {
        if fx.value != fy.value || fx.multiplicity < fy.multiplicity {
            return None;
        }
        alpha.extend(std::iter::repeat_n(1, fy.multiplicity - 1));
        alpha.push(1 + fx.multiplicity - fy.multiplicity);
    }
    Some(alpha)
}

/// Builds `x_1^{α_1} ⋯ x_n^{α_n}`.
pub fn expand<A: Clone>(x: &[A], multiplicities: &[usize]) -> Result<Vec<A>> {
    if multiplicities.len() != x.len() {
        return Err(Error::invalid(format!(
            "expected {} multiplicities, got {}",
            x.len(),
            multiplicities.len()
        )));
    }
    if let Some(pos) = multiplicities.iter().position(|&a| a == 0) {
        return Err(Error::invalid(format!(
            "multiplicity at index {pos} is zero"
        )));
    }
    let mut out = Vec::with_capacity(multiplicities.iter().sum());
    for (a, &k) in x.iter().zip(multiplicities) {
        out.extend(std::iter::repeat_n(a.clone(), k));
    }
    Ok(out)
}

/// The minimal common compression of `x` and `y`, if any.
///
/// Any common compression forces equal condensed forms, so the condensed
/// form is returned when the two agree.
pub fn common_compression<A: Clone + PartialEq>(x: &[A], y: &[A]) -> Option<Vec<A>> {
    let cx = condense(x);
    if is_irreducible_match(&cx, y) {
        Some(cx)
    } else {
        None
    }
}

// condense(y) == cx without allocating
fn is_irreducible_match<A: PartialEq>(cx: &[A], y: &[A]) -> bool {
    let mut it = cx.iter();
    let mut current: Option<&A> = None;
    for a in y {
        if current == Some(a) {
            continue;
        }
        match it.next() {
            Some(c) if c == a => current = Some(c),
            _ => return false,
        }
    }
    it.next().is_none()
}

/// A non-empty sequence of finite reals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("time series must be non-empty"));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite value {} at index {pos}",
                values[pos]
            )));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always `false`; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    pub fn prime_factorize(&self) -> PrimeFactorization<f64> {
        prime_factorize(&self.values)
    }

    pub fn condense(&self) -> CondensedForm {
        CondensedForm(TimeSeries {
            values: condense(&self.values),
        })
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.values)
    }

    pub fn is_expansion_of(&self, other: &TimeSeries) -> bool {
        is_expansion(&self.values, &other.values)
    }

    pub fn expand(&self, multiplicities: &[usize]) -> Result<TimeSeries> {
        Ok(TimeSeries {
            values: expand(&self.values, multiplicities)?,
        })
    }

    /// Number of elements removed by condensation.
    pub fn redundancy(&self) -> usize {
        self.len() - prime_factorize(&self.values).len()
    }

    /// Rounds every value to `decimals` places.
    ///
    /// This is an explicit preprocessing step: condensation itself never
    /// rounds.
    pub fn quantize(&self, decimals: u32) -> TimeSeries {
        let scale = 10f64.powi(decimals as i32);
        let values = self
            .values
            .iter()
            .map(|&v| {
                let q = (v * scale).round() / scale;
                if q.is_finite() {
                    q
                } else {
                    v
                }
            })
            .collect();
        TimeSeries { values }
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

impl From<TimeSeries> for Vec<f64> {
    fn from(ts: TimeSeries) -> Self {
        ts.values
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

impl fmt::Display for TimeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// An irreducible time series: no two consecutive values are equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondensedForm(TimeSeries);

impl CondensedForm {
    /// Wraps `series` if it is already irreducible.
    pub fn new(series: TimeSeries) -> Result<Self> {
        if series.is_irreducible() {
            Ok(Self(series))
        } else {
            Err(Error::invalid("series is reducible"))
        }
    }

    pub fn series(&self) -> &TimeSeries {
        &self.0
    }

    pub fn into_series(self) -> TimeSeries {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }
}

impl AsRef<[f64]> for CondensedForm {
    fn as_ref(&self) -> &[f64] {
        self.0.as_slice()
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn f(pairs: &[(i32, usize)]) -> Vec<Factor<i32>> {
        pairs
            .iter()
            .map(|&(value, multiplicity)| Factor {
                value,
                multiplicity,
            })
            .collect()
    }

    #[test]
    fn factorize_examples() {
        let p = prime_factorize(&[1, 1, 2, 2, 2, 1]);
        assert_eq!(p.factors(), f(&[(1, 2), (2, 3), (1, 1)]).as_slice());
        assert!(prime_factorize::<i32>(&[]).is_empty());
        assert_eq!(prime_factorize(&[5]).factors(), f(&[(5, 1)]).as_slice());
    }

    #[test]
    fn condense_examples() {
        assert_eq!(condense(&[0, 1, 1]), vec![0, 1]);
        assert_eq!(condense::<i32>(&[]), Vec::<i32>::new());
        assert_eq!(condense(&[3, 3, 3]), vec![3]);
    }

    #[test]
    fn expansion_examples() {
        assert!(is_expansion(&[0, 1, 1], &[0, 1]));
        assert!(!is_expansion(&[0, 1], &[0, 1, 1]));
        assert!(is_expansion(&[7, 2], &[7, 2]));
        assert!(is_expansion::<i32>(&[], &[]));
        assert!(!is_expansion(&[0, 1, 0], &[0, 1]));
        // same length, values differ
        assert!(!is_expansion(&[0, 0, 1], &[0, 1, 1]));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&[0, 1], &[1, 2]).unwrap(), vec![0, 1, 1]);
        assert_eq!(expand(&[0, 1], &[1, 1]).unwrap(), vec![0, 1]);
        assert_eq!(expand(&[4, 5], &[3, 1]).unwrap(), vec![4, 4, 4, 5]);
    }

    #[test]
    fn expand_rejects_bad_multiplicities() {
        assert!(matches!(
            expand(&[0, 1], &[1]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            expand(&[0, 1], &[1, 0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn common_compression_examples() {
        assert_eq!(common_compression(&[0, 1, 1], &[0, 0, 1]), Some(vec![0, 1]));
        assert_eq!(common_compression(&[0, 1], &[0, 2]), None);
        assert_eq!(common_compression(&[2], &[2]), Some(vec![2]));
        assert_eq!(common_compression(&[0, 1], &[0, 1, 0]), None);
        assert_eq!(common_compression(&[0, 1, 0], &[0, 1]), None);
    }

    #[test]
    fn word_wrapper_matches_free_functions() {
        let w = Word::new(vec![1, 1, 2]);
        assert_eq!(w.condense(), Word::new(vec![1, 2]));
        assert!(w.is_expansion_of(&Word::new(vec![1, 2])));
        assert_eq!(w.prime_factorize().to_word(), w);
        assert!(Word::<i32>::empty().condense().is_empty());
    }

    #[test]
    fn time_series_rejects_empty_and_non_finite() {
        assert!(TimeSeries::new(vec![]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::new(vec![f64::INFINITY]).is_err());
        assert!(TimeSeries::new(vec![f64::NEG_INFINITY, 0.0]).is_err());
    }

    #[test]
    fn signed_zero_condenses() {
        let ts = TimeSeries::new(vec![0.0, -0.0, 1.0]).unwrap();
        assert_eq!(ts.condense().len(), 2);
    }

    #[test]
    fn quantize_is_explicit() {
        let ts = TimeSeries::new(vec![1.0, 1.0000001, 2.0]).unwrap();
        assert_eq!(ts.condense().len(), 3);
        assert_eq!(ts.quantize(3).condense().len(), 2);
    }

    #[test]
    fn condensed_form_rejects_reducible() {
        let ts = TimeSeries::new(vec![1.0, 1.0]).unwrap();
        assert!(CondensedForm::new(ts.clone()).is_err());
        let c = ts.condense();
        assert_eq!(c.series().condense(), c);
    }

    /// Every decomposition of `w` into blocks (value, multiplicity) that
    /// satisfies the partition and maximality conditions.
    fn all_valid_decompositions(w: &[u8]) -> Vec<Vec<(u8, usize)>> {
        fn rec(w: &[u8], acc: &mut Vec<(u8, usize)>, out: &mut Vec<Vec<(u8, usize)>>) {
            if w.is_empty() {
                if acc.windows(2).all(|p| p[0].0 != p[1].0) {
                    out.push(acc.clone());
                }
                return;
            }
            for k in 1..=w.len() {
                if w[..k].iter().all(|&a| a == w[0]) {
                    acc.push((w[0], k));
                    rec(&w[k..], acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(w, &mut Vec::new(), &mut out);
        out
    }

    /// All compressions of `w` by brute force: every way of shrinking each
    /// block of a (not necessarily maximal) run decomposition.
    fn all_compressions(w: &[u8]) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let n = w.len();
        // choose a subset of positions to keep such that the result expands
        // back to w; test every subsequence of w
        for mask in 0u32..(1 << n) {
            let y: Vec<u8> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| w[i])
                .collect();
            if is_expansion(w, &y) && !out.contains(&y) {
                out.push(y);
            }
        }
        out
    }

    fn word() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..4, 0..=12)
    }

    fn short_word() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..4, 0..=6)
    }

    proptest! {
        #[test]
        fn factorization_conditions(w in word()) {
            let p = prime_factorize(&w);
            prop_assert_eq!(p.to_word().into_vec(), w.clone());
            for pair in p.factors().windows(2) {
                prop_assert_ne!(pair[0].value, pair[1].value);
            }
            prop_assert!(p.factors().iter().all(|f| f.multiplicity >= 1));
        }

        #[test]
        fn factorization_is_unique(w in short_word()) {
            let p: Vec<(u8, usize)> = prime_factorize(&w)
                .factors()
                .iter()
                .map(|f| (f.value, f.multiplicity))
                .collect();
            let all = all_valid_decompositions(&w);
            prop_assert_eq!(all, vec![p]);
        }

        #[test]
        fn condense_idempotent(w in word()) {
            let c = condense(&w);
            prop_assert!(is_irreducible(&c));
            prop_assert_eq!(condense(&c), c);
        }

        #[test]
        fn expansion_is_transitive(
            z in prop::collection::vec(0u8..4, 0..=6),
            seed_a in prop::collection::vec(1usize..4, 6),
            seed_b in prop::collection::vec(1usize..4, 18),
        ) {
            let y = expand(&z, &seed_a[..z.len()]).unwrap();
            let x = expand(&y, &seed_b[..y.len()]).unwrap();
            prop_assert!(is_expansion(&y, &z));
            prop_assert!(is_expansion(&x, &y));
            prop_assert!(is_expansion(&x, &z));
        }

        #[test]
        fn compressions_expand_condensed_form(w in short_word()) {
            let c = condense(&w);
            for y in all_compressions(&w) {
                prop_assert!(is_expansion(&y, &c));
                if y != c {
                    prop_assert!(c.len() < y.len());
                }
            }
        }

        #[test]
        fn multiplicities_round_trip(
            y in prop::collection::vec(0u8..4, 0..=8),
            alpha in prop::collection::vec(1usize..5, 8),
        ) {
            let x = expand(&y, &alpha[..y.len()]).unwrap();
            prop_assert!(is_expansion(&x, &y));
            let recovered = expansion_multiplicities(&x, &y).unwrap();
            prop_assert_eq!(expand(&y, &recovered).unwrap(), x);
        }

        #[test]
        fn co_ex_composition_keeps_common_compression(
            w in prop::collection::vec(0u8..3, 1..=8),
            a1 in prop::collection::vec(1usize..4, 8),
            a2 in prop::collection::vec(1usize..4, 8),
        ) {
            // f(w) = expand(condense(w)), g = same shape again; g∘f must still
            // share a common compression with w
            let c1 = condense(&w);
            let fw = expand(&c1, &a1[..c1.len()]).unwrap();
            let c2 = condense(&fw);
            let gfw = expand(&c2, &a2[..c2.len()]).unwrap();
            prop_assert!(common_compression(&w, &gfw).is_some());
        }
    }
}
