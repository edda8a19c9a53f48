//! Shape classes and the primitive measures on them.

pub mod clip;
pub mod composite;
pub mod hausdorff;
pub mod hull;
pub mod minkowski;
pub mod point;
pub mod polygon;
pub mod radial;
pub mod shape;
pub mod stadium;

pub use composite::{Composite, Disk, Segment};
pub use hausdorff::hausdorff_distance;
pub use minkowski::{perimeter_epsilon_estimate, RasterOptions};
pub use point::{BBox, Point2};
pub use polygon::Polygon;
pub use radial::{FourierSeries, RadialShape};
pub use shape::Shape;
pub use stadium::Stadium;
