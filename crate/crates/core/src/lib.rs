//! Exact computation of the integrable system on the minimal nilpotent orbit
//! of a complex simple Lie algebra.

pub mod chevalley;
pub mod error;
pub mod hamiltonian;
pub mod heisenberg;
pub mod linalg;
pub mod polyring;
pub mod quantize;
pub mod rational;
pub mod repbuild;
pub mod rootsys;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
