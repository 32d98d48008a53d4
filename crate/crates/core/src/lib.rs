//! Exact generating-function machinery for degenerate Daehee, Bernoulli and
//! Stirling families over ℚ[λ, x], plus a harness that checks the identities
//! relating them on finite parameter grids.
//!
//! Layers, bottom up: [`exactnum`] (rationals), [`polyring`] (ℚ[λ, x]),
//! [`series`] (truncated power series in t), [`sequences`] (families and
//! Stirling tables), [`identities`] (the checks).

pub mod exactnum;
pub mod exec;
pub mod identities;
pub mod polyring;
pub mod sequences;
pub mod series;

pub use exactnum::{Rational, RationalError};
pub use exec::Exec;
pub use identities::{CheckReport, IdentityId, RunConfig, Status};
pub use polyring::BiPoly;
pub use sequences::{Argument, SeqFamily, StirlingKind, StirlingTable};
pub use series::{SeqConvention, TruncSeries};
