//! Symbolic Riemann–Lagrange geometry of quadratic multi-time Lagrangians on
//! the 1-jet space `J¹(T, M)`.

pub mod cli;
pub mod exec;
pub mod geometry;
pub mod linalg;
pub mod model;
pub mod report;
pub mod symkernel;
pub mod tensor;
pub mod verify;
