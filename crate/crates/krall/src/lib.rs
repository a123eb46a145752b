//! Exact construction and verification of Krall dual Hahn orthogonal polynomial families.

pub mod classical;
pub mod error;
pub mod exact;
pub mod measures;
pub mod wpoly;
pub mod constructors;
pub mod verify;
pub mod cli;

pub use error::{KrallError, Result};
