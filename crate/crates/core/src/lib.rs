//! Exact computations in the loop-augmented Brauer algebra `A_n(x)` and its
//! loopless subalgebra `L_n(x)`: diagram arithmetic, cell modules, branching
//! checks and semisimplicity probes.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals or
//! Laurent polynomials in `x`, and kernels are computed by fraction-free
//! elimination. With the default `parallel` feature, table generation and
//! action-matrix construction fan out over rayon.

pub mod algebra;
pub mod analysis;
pub mod cellmod;
pub mod diagrams;
pub mod error;
pub mod matrix;
pub mod par;
pub mod perm;
pub mod report;
pub mod scalars;
pub mod symgroup;

pub use error::{Error, Result};
