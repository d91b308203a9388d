//! Library for playing classical N-player two-strategy games in quantum
//! settings under the reproducibility criteria.
//!
//! The crate simulates the quantization protocol (a referee distributes an
//! entangled state, players apply local SU(2) operators, the referee measures
//! projectively), checks the strong and weak criteria of reproducibility for
//! given states and operator assignments, detects structural contradictions
//! symbolically, and confirms verdicts with a numerical feasibility search
//! over products of local unitaries.

pub mod criteria;
pub mod error;
pub mod games;
pub mod kernel;
pub mod referee;
pub mod report;
pub mod search;
pub mod states;
pub mod witnesses;

pub use error::{Error, Result};
pub use kernel::{inner, su2_from_angles, tensor_apply, LocalOp, StateVector};
