//! Planar shape functionals around the quantitative isoperimetric
//! inequality: the isoperimetric deficit, the barycentric and Fraenkel
//! asymmetries, explicit extremal families, the linearized variational
//! problem near the disk and the curvature optimality condition for convex
//! minimizers.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! `*64` / `*32` aliases fix the scalar.

// `!(x > 0)` style guards are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod families;
pub mod functionals;
pub mod geometry;
pub mod numerics;
pub mod optimality;
pub mod output;
pub mod real;
pub mod rearrangement;
pub mod variational;

pub use error::{Error, Result};
pub use families::ScanRecord;
pub use functionals::{evaluate, FunctionalsReport};
pub use geometry::{Composite, Disk, FourierSeries, Point2, Polygon, RadialShape, Segment, Shape, Stadium};
pub use optimality::{CirclePartition, OptimalityReport};
pub use real::Real;
pub use variational::{FourierProfile, VariationalSolution};

pub type Point64 = Point2<f64>;
pub type Point32 = Point2<f32>;
pub type Shape64 = Shape<f64>;
pub type Shape32 = Shape<f32>;
pub type Report64 = FunctionalsReport<f64>;
pub type Solution64 = VariationalSolution<f64>;
