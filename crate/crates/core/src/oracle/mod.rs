//! Independent reference implementations used to check the solvers.
//!
//! Everything here is deliberately naive: exhaustive search and dense
//! simulation, sharing no code with the optimized paths.

pub mod brute;
pub mod random;
pub mod sim;


pub use sim::{branch_matrix, circuit_matrix};
pub use brute::{brute_fvs, brute_width};
