//! Exact pseudopolynomial Subset Sum.
//!
//! * [`solver`]: randomized near-linear algorithm (color-coding over layers).
//! * [`unbounded`]: deterministic near-linear algorithm for the unbounded variant.
//! * [`polyspace`]: low-space evaluation of the randomized algorithm as an
//!   arithmetic circuit, one output entry at a time, in the Fourier domain
//!   over `Z_p`.
//! * [`oracle`]: textbook dynamic programs used as ground truth.

pub mod convolve;
pub mod instance;
pub mod oracle;
pub mod polyspace;
pub mod preprocess;
pub mod rng;
pub mod solver;
pub mod unbounded;

pub use convolve::{capped_sumset, raw_convolve, union, SumSet};
pub use instance::{Instance, ParseError};
pub use rng::Rng;
