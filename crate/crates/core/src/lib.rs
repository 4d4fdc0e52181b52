//! Qubit-count optimization for Clifford+T circuits and ZX-diagrams.
//!
//! Two independent routes are provided. The circuit route turns internal
//! Hadamard gates into measurement gadgets and then removes as many of the
//! resulting ancillas as a feedback vertex set allows. The diagram route
//! reads a ZX-diagram as a graph and lays it out along a vertex ordering of
//! small cutwidth or pathwidth.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is on.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod angle;
pub mod budget;
pub mod circuit;
pub mod degadget;
pub mod error;
pub mod fvs;
pub mod gadget;
pub mod layout;
pub mod linalg;
pub mod oracle;
pub mod parity;
pub mod zx;

pub use angle::Angle;
pub use budget::Budget;
pub use circuit::{Circuit, Gate};
pub use error::CoreError;
