//! Quadratic permutation polynomial interleavers for turbo codes.

pub mod arith;
pub mod bounds;
pub mod convcode;
pub mod dataset;
pub mod dmin;
pub mod error;
pub mod patterns;
pub mod permpoly;
pub mod search;
pub mod turbo;

pub use convcode::{ConstituentSpec, Event, TerminationMode};
pub use error::{Error, Result};
pub use permpoly::{factorize, Factorization, PermPoly, Qpp};
pub use turbo::{turbo_encode, DualConstraints, InterleaverDirection, TurboCode, TurboCodeword};
pub use dmin::{estimate_dmin, exact_dmin, DminResult, EstimateConfig, ExactConfig};
