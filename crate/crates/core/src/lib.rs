//! Topological invariants of complex line arrangements, computed exactly.

pub mod arrangement;
pub mod boundary;
pub mod braid;
pub mod error;
pub mod jump;
pub mod milnor;
pub mod multinet;
pub mod os;
pub mod scalar;

pub use error::{Error, Result};
