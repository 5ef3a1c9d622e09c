//! Double-coset decompositions of character rings of semisimple Hopf
//! algebras, with Clifford-style restriction/induction and conjugation checks
//! and a brute-force finite-group oracle.
//!
//! Everything is exact integer arithmetic over fusion data, except the
//! group oracle's character tables, which are computed in floating point and
//! gated by orthogonality and integrality checks before any multiplicity
//! leaves them.

pub mod bundled;
pub mod clifford;
pub mod commands;
pub mod conjugation;
pub mod cosets;
pub mod error;
pub mod fusion;
pub mod group;
pub mod instance;
pub mod report;
pub mod subalgebra;

pub use error::{Error, Result};
pub use fusion::{CharVec, FusionData};
pub use instance::Instance;
pub use report::{Report, Status, Verdict};
pub use subalgebra::Subalgebra;
