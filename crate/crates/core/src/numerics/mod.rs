//! Small numerical building blocks: quadrature, scalar root finding, a
//! Nelder–Mead simplex and dense linear solves.

pub mod linalg;
pub mod quadrature;
pub mod roots;
pub mod simplex;
