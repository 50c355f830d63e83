//! Exact q-series arithmetic for colored partition congruences.
//!
//! - [`series`]: truncated power series over unbounded integers (plus a
//!   modular-coefficient variant).
//! - [`etaq`]: `f_k = (q^k; q^k)_inf`, eta-quotient expressions with a text
//!   grammar, and four theta-type sums.
//! - [`partitions`]: counting and listing oracles for the colored families.
//! - [`congruence`]: congruence claims, dissection identity checks, proof
//!   replay, and scanning.

pub mod congruence;
pub mod etaq;
pub mod fixtures;
pub mod partitions;
pub mod series;

pub use etaq::{eval_eta, parse_eta, pochhammer_f, theta_series, EtaExpression, EtaTerm, ThetaFamilyId};
pub use partitions::{ColoredFamilySpec, Family};
pub use series::{ModSeries, Modulus, SeriesError, TruncatedSeries};
