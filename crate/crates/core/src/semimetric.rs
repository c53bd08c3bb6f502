//! Warping identification and the quotient semi-metric.
//!
//! Two series are warping identical when their dtw-distance is zero, which
//! happens exactly when they share a condensed form. Each equivalence class
//! is therefore represented by that condensed form, and the quotient
//! distance between classes is plain dtw between representatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dtw::squared_dtw_unchecked;
use crate::error::Error;
use crate::sequence::{self, CondensedForm, TimeSeries};

/// Canonical representative `x*` of a warping-identification class `[x]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceClassRep {
    condensed: CondensedForm,
}

impl EquivalenceClassRep {
    pub fn condensed(&self) -> &CondensedForm {
        &self.condensed
    }

    /// `true` iff `x` belongs to this class.
    pub fn contains(&self, x: &TimeSeries) -> bool {
        sequence::is_expansion(x.as_slice(), self.condensed.as_slice())
    }
}

impl From<CondensedForm> for EquivalenceClassRep {
    fn from(condensed: CondensedForm) -> Self {
        Self { condensed }
    }
}

pub fn class_of(x: &TimeSeries) -> EquivalenceClassRep {
    EquivalenceClassRep {
        condensed: x.condense(),
    }
}

/// `x ∼ y`, decided by comparing condensed forms.
pub fn warping_identical(x: &TimeSeries, y: &TimeSeries) -> bool {
    sequence::common_compression(x.as_slice(), y.as_slice()).is_some()
}

/// Quotient distance `δ*([x], [y]) = δ(x*, y*)`.
pub fn dtw_star(a: &EquivalenceClassRep, b: &EquivalenceClassRep) -> f64 {
    squared_dtw_unchecked(a.condensed.as_slice(), b.condensed.as_slice()).sqrt()
}

/// Canonical extension `δ~(x, y) = δ*([x], [y])`.
pub fn dtw_tilde(x: &TimeSeries, y: &TimeSeries) -> f64 {
    dtw_star(&class_of(x), &class_of(y))
}

/// Selects the distance used by nearest-neighbor and clustering routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distance {
    /// Plain dtw `δ`.
    Dtw,
    /// Canonical extension `δ~` of the quotient semi-metric.
    DtwStar,
}

impl Distance {
    pub fn eval(self, x: &TimeSeries, y: &TimeSeries) -> f64 {
        self.eval_squared(x, y).sqrt()
    }

    pub fn eval_squared(self, x: &TimeSeries, y: &TimeSeries) -> f64 {
        match self {
            Distance::Dtw => squared_dtw_unchecked(x.as_slice(), y.as_slice()),
            Distance::DtwStar => squared_dtw_unchecked(
                &sequence::condense(x.as_slice()),
                &sequence::condense(y.as_slice()),
            ),
        }
    }

    /// Brings a series into the form this distance compares directly:
    /// unchanged for `δ`, condensed for `δ~`.
    pub fn prepare(self, x: &TimeSeries) -> TimeSeries {
        match self {
            Distance::Dtw => x.clone(),
            Distance::DtwStar => x.condense().into_series(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Distance::Dtw => "dtw",
            Distance::DtwStar => "dtw-star",
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dtw" => Ok(Distance::Dtw),
            "dtw-star" | "dtw*" => Ok(Distance::DtwStar),
            other => Err(Error::invalid(format!("unknown distance {other:?}"))),
        }
    }
}

/// Condensed forms of a fixed collection, computed once and then read-only.
///
/// Entries are addressed by the position of the series in the collection
/// the cache was built from.
#[derive(Clone, Debug, Default)]
pub struct CondensationCache {
    entries: Vec<CondensedForm>,
}

impl CondensationCache {
    pub fn build<'a, I>(series: I) -> Self
    where
        I: IntoIterator<Item = &'a TimeSeries>,
    {
        Self {
            entries: series.into_iter().map(TimeSeries::condense).collect(),
        }
    }

    pub fn get(&self, index: usize) -> Option<&CondensedForm> {
        self.entries.get(index)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CondensedForm> {
        self.entries.iter()
    }

    /// `δ*` between two cached entries.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        squared_dtw_unchecked(self.entries[a].as_slice(), self.entries[b].as_slice()).sqrt()
    }
}
