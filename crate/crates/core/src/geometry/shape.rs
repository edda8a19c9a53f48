use serde::{Deserialize, Serialize};

use super::clip::{disk_overlap, Edge};
use super::composite::Composite;
use super::hull::diameter_of_points;
use super::point::{BBox, Point2};
use super::polygon::Polygon;
use super::radial::RadialShape;
use super::stadium::Stadium;
use crate::{Error, Real, Result};

/// Every shape class the functionals accept. Serialized with a `"type"`
/// tag: `polygon`, `radial`, `stadium` or `composite`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", bound = "T: Real")]
pub enum Shape<T> {
    Polygon(Polygon<T>),
    Radial(RadialShape<T>),
    Stadium(Stadium<T>),
    Composite(Composite<T>),
}

impl<T: Real> From<Polygon<T>> for Shape<T> {
    fn from(p: Polygon<T>) -> Self {
        Shape::Polygon(p)
    }
}
impl<T: Real> From<RadialShape<T>> for Shape<T> {
    fn from(p: RadialShape<T>) -> Self {
        Shape::Radial(p)
    }
}
impl<T: Real> From<Stadium<T>> for Shape<T> {
    fn from(p: Stadium<T>) -> Self {
        Shape::Stadium(p)
    }
}
impl<T: Real> From<Composite<T>> for Shape<T> {
    fn from(p: Composite<T>) -> Self {
        Shape::Composite(p)
    }
}

impl<T: Real> Shape<T> {
    pub fn disk(center: Point2<T>, radius: T) -> Result<Self> {
        Composite::disk(center, radius).map(Shape::Composite)
    }

    pub fn unit_disk() -> Self {
        Shape::disk(Point2::origin(), T::one()).expect("unit disk is valid")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Polygon(_) => "polygon",
            Shape::Radial(_) => "radial",
            Shape::Stadium(_) => "stadium",
            Shape::Composite(_) => "composite",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Shape::Polygon(p) => p.validate(),
            Shape::Radial(r) => r.validate(),
            Shape::Stadium(s) => s.validate(),
            Shape::Composite(c) => c.validate(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("shapes serialize")
    }

    /// Lebesgue measure; segments contribute nothing.
    pub fn area(&self) -> T {
        match self {
            Shape::Polygon(p) => p.area(),
            Shape::Radial(r) => r.area(),
            Shape::Stadium(s) => s.area(),
            Shape::Composite(c) => c.area(),
        }
    }

    pub fn barycenter(&self) -> Result<Point2<T>> {
        if !(self.area() > T::zero()) {
            return Err(Error::Degenerate("zero area has no barycenter".into()));
        }
        Ok(match self {
            Shape::Polygon(p) => p.centroid(),
            Shape::Radial(r) => r.barycenter(),
            Shape::Stadium(_) => Point2::origin(),
            Shape::Composite(c) => c.barycenter(),
        })
    }

    /// Minkowski perimeter (segments counted twice).
    pub fn perimeter_minkowski(&self) -> T {
        match self {
            Shape::Polygon(p) => p.perimeter(),
            Shape::Radial(r) => r.perimeter(),
            Shape::Stadium(s) => s.perimeter(),
            Shape::Composite(c) => c.perimeter(),
        }
    }

    pub fn diameter(&self) -> T {
        match self {
            Shape::Polygon(p) => diameter_of_points(p.vertices()),
            Shape::Radial(r) => diameter_of_points(r.polygon().vertices()),
            Shape::Stadium(s) => s.diameter(),
            Shape::Composite(c) => c.diameter(),
        }
    }

    pub fn bbox(&self) -> BBox<T> {
        match self {
            Shape::Polygon(p) => BBox::from_points(p.vertices().iter().copied()),
            Shape::Radial(r) => BBox::from_points(r.polygon().vertices().iter().copied()),
            Shape::Stadium(s) => {
                let (r, l) = (s.radius(), s.half_length());
                BBox { min: Point2::new(-l - r, -r), max: Point2::new(l + r, r) }
            }
            Shape::Composite(c) => {
                let disks = c.disks().iter().map(|d| BBox {
                    min: d.center - Point2::new(d.radius, d.radius),
                    max: d.center + Point2::new(d.radius, d.radius),
                });
                let segs = c.segments().iter().map(|s| BBox::from_points([s.0, s.1]));
                disks.chain(segs).reduce(BBox::union).expect("composite has a disk")
            }
        }
    }

    fn tol(&self) -> T {
        let b = self.bbox();
        T::lit(1e2) * T::geom_eps() * (b.width() + b.height()).max(T::one())
    }

    /// Closed membership test.
    pub fn contains(&self, p: Point2<T>) -> bool {
        self.contains_within(p, self.tol())
    }

    /// [`Shape::contains`] with the tolerance fixed once, for repeated
    /// queries.
    pub fn membership(&self) -> impl Fn(Point2<T>) -> bool + Sync + '_ {
        let tol = self.tol();
        move |p| self.contains_within(p, tol)
    }

    fn contains_within(&self, p: Point2<T>, tol: T) -> bool {
        match self {
            Shape::Polygon(poly) => poly.contains(p, tol),
            Shape::Radial(r) => r.contains(p, tol),
            Shape::Stadium(s) => s.contains(p, tol),
            Shape::Composite(c) => c.contains(p, tol),
        }
    }

    /// Euclidean distance from `p` to the (closed) set.
    pub fn distance_to(&self, p: Point2<T>) -> T {
        match self {
            Shape::Polygon(poly) => {
                if poly.contains(p, T::zero()) {
                    T::zero()
                } else {
                    poly.boundary_distance(p)
                }
            }
            Shape::Radial(r) => {
                let poly = r.polygon();
                if poly.contains(p, T::zero()) {
                    T::zero()
                } else {
                    poly.boundary_distance(p)
                }
            }
            Shape::Stadium(s) => s.distance_to(p),
            Shape::Composite(c) => c.distance_to(p),
        }
    }

    /// Exact `|self ∩ B(c, ρ)|` by boundary clipping (lens formulas for
    /// composites). Radial shapes are clipped through their inscribed sample
    /// polygon.
    pub fn overlap_with_disk(&self, c: Point2<T>, rho: T) -> T {
        let tol = self.tol();
        match self {
            Shape::Polygon(p) => disk_overlap(&p.edges(), |q| p.contains(q, tol), c, rho),
            Shape::Radial(r) => {
                let p = r.polygon();
                disk_overlap(&p.edges(), |q| p.contains(q, tol), c, rho)
            }
            Shape::Stadium(s) => disk_overlap(&s.edges(), |q| s.contains(q, tol), c, rho),
            Shape::Composite(comp) => comp.overlap_with_disk(c, rho),
        }
    }

    /// Boundary as polylines with consecutive points at most `step` apart.
    /// Closed loops repeat their first point at the end.
    pub fn boundary_polylines(&self, step: T) -> Vec<Vec<Point2<T>>> {
        let sample_edges = |edges: &[Edge<T>]| {
            let mut pts = Vec::new();
            for e in edges {
                let n = (e.length() / step).ceil().to_usize().unwrap_or(1).max(1);
                for i in 0..n {
                    pts.push(e.point_at(T::usz(i) / T::usz(n)));
                }
            }
            if let Some(&first) = pts.first() {
                pts.push(first);
            }
            pts
        };
        match self {
            Shape::Polygon(p) => vec![sample_edges(&p.edges())],
            Shape::Radial(r) => vec![sample_edges(&r.polygon().edges())],
            Shape::Stadium(s) => vec![sample_edges(&s.edges())],
            Shape::Composite(c) => {
                let mut out: Vec<Vec<Point2<T>>> = c
                    .disks()
                    .iter()
                    .map(|d| {
                        sample_edges(&[Edge::Arc {
                            center: d.center,
                            radius: d.radius,
                            start: T::zero(),
                            sweep: T::TAU(),
                        }])
                    })
                    .collect();
                for s in c.segments() {
                    out.push(sample_edges(&[Edge::Line { a: s.0, b: s.1 }]));
                }
                out
            }
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            Shape::Polygon(p) => p.is_convex(),
            Shape::Radial(r) => r.is_convex(),
            Shape::Stadium(_) => true,
            Shape::Composite(c) => c.disks().len() == 1 && c.segments().is_empty(),
        }
    }

    pub fn is_connected(&self) -> bool {
        match self {
            Shape::Composite(c) => c.is_connected(),
            _ => true,
        }
    }

    /// Scales by `k` about `fixed`, then translates by `shift`.
    pub fn similarity(&self, k: T, fixed: Point2<T>, shift: Point2<T>) -> Result<Self> {
        if !(k > T::zero()) || !k.is_finite() {
            return Err(Error::Domain(format!("scale factor must be positive, got {k}")));
        }
        let f = |p: Point2<T>| fixed + (p - fixed) * k + shift;
        Ok(match self {
            Shape::Polygon(p) => Shape::Polygon(p.map(f)),
            Shape::Radial(r) => Shape::Radial(r.scaled_about(k, fixed).translated(shift)),
            Shape::Stadium(s) => {
                if (k - T::one()).abs() > T::geom_eps() || shift.norm() > T::geom_eps() {
                    return Err(Error::Unsupported("stadia are fixed at area π centred at the origin".into()));
                }
                Shape::Stadium(*s)
            }
            Shape::Composite(c) => Shape::Composite(c.map(f, k)),
        })
    }

    /// Scales to area π and moves the barycenter to the origin.
    pub fn normalize(&self) -> Result<Self> {
        let a = self.area();
        if !(a > T::zero()) {
            return Err(Error::Degenerate("cannot normalize a shape of zero area".into()));
        }
        if let Shape::Stadium(s) = self {
            return Ok(Shape::Stadium(*s));
        }
        let g = self.barycenter()?;
        let k = (T::PI() / a).sqrt();
        self.similarity(k, g, -g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::composite::{Disk, Segment};
    use std::f64::consts::PI;

    fn square() -> Shape<f64> {
        Polygon::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)])
            .unwrap()
            .into()
    }

    #[test]
    fn measures_of_simple_shapes() {
        let sq = square();
        assert_eq!(sq.area(), 1.0);
        assert!((sq.diameter() - 2f64.sqrt()).abs() < 1e-15);
        let d = Shape::<f64>::unit_disk();
        assert!((d.perimeter_minkowski() - 2.0 * PI).abs() < 1e-15);
        assert_eq!(d.diameter(), 2.0);
        let off = Shape::disk(Point2::new(3.0, -1.0), 1.0).unwrap();
        assert_eq!(off.barycenter().unwrap(), Point2::new(3.0, -1.0));
    }

    #[test]
    fn normalize_examples() {
        let n = square().normalize().unwrap();
        assert!((n.area() - PI).abs() < 1e-14);
        assert!(n.barycenter().unwrap().norm() < 1e-15);
        if let Shape::Polygon(p) = &n {
            let side = p.vertices()[0].dist(p.vertices()[1]);
            assert!((side - PI.sqrt()).abs() < 1e-14);
        }
        let d = Shape::disk(Point2::new(1.0, 1.0), 2.0).unwrap().normalize().unwrap();
        assert_eq!(d, Shape::<f64>::unit_disk());
        let st: Shape<f64> = Stadium::new(0.575).unwrap().into();
        assert_eq!(st.normalize().unwrap(), st);
    }

    #[test]
    fn json_round_trip_and_tag() {
        let c: Shape<f64> = Composite::new(
            vec![
                Disk { center: Point2::new(-2.0, 0.0), radius: 1.0 },
                Disk { center: Point2::new(2.0, 0.0), radius: 1.0 },
            ],
            vec![Segment(Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0))],
        )
        .unwrap()
        .into();
        let text = c.to_json();
        assert!(text.contains("\"type\": \"composite\""));
        assert_eq!(Shape::from_json(&text).unwrap(), c);
        let st = Shape::<f64>::from_json(r#"{"type":"stadium","theta":0.575}"#).unwrap();
        assert!(matches!(st, Shape::Stadium(_)));
        assert!(Shape::<f64>::from_json(r#"{"type":"stadium","theta":2.0}"#).is_err());
        assert!(Shape::<f64>::from_json(r#"{"type":"blob"}"#).is_err());
    }
}
