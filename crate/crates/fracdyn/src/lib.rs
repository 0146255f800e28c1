//! Numerical fractional calculus for dynamical systems.

pub mod cli;
pub mod error;
pub mod grid;
pub mod impulsive;
pub mod io;
pub mod mellin;
pub mod operators;
pub mod periodicity;
pub mod quadrature;
pub mod solver;
pub mod special;
pub mod systems;

pub use error::{Error, Result};
