//! Dynamic time warping, the warping-invariant quotient semi-metric built on
//! it, and a harness for reducibility and nearest-neighbor experiments on
//! UCR-format datasets.
//!
//! Module map:
//!
//! * [`sequence`]: words, prime factorizations, condensation, expansions;
//!   the [`TimeSeries`] type.
//! * [`warping`]: warping functions, matrices, walks and paths.
//! * [`dtw`]: the dtw-distance and a brute-force reference.
//! * [`semimetric`]: warping identification, `δ*` and `δ~`.
//! * [`mining`]: Fréchet function, DBA, nearest-prototype rule, k-means.
//! * [`datasets`]: UCR loading and synthetic corpora.
//! * [`bench`]: reducibility and classification experiments.

pub mod bench;
pub mod datasets;
pub mod demo;
pub mod dtw;
mod error;
pub mod mining;
pub mod semimetric;
pub mod sequence;
pub mod stats;
pub mod warping;

pub use dtw::{dtw, dtw_bruteforce, dtw_distance, DtwResult};
pub use error::{Error, Result};
pub use semimetric::{
    class_of, dtw_star, dtw_tilde, warping_identical, Distance, EquivalenceClassRep,
};
pub use sequence::{CondensedForm, TimeSeries, Word};
