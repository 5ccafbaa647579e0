//! Uniform Airy-type asymptotic expansions with computable error bounds,
//! checked on the Bessel-function case.

pub mod error;
pub mod exec;
pub mod mpnum;
pub mod oracle;
pub mod airylg;
pub mod besselmap;
pub mod seqcoeff;
pub mod lgbounds;
pub mod tploop;
pub mod suites;

pub use error::{Error, Result};
pub use mpnum::PrecisionContext;
