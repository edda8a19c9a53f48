use serde::{Deserialize, Serialize};

use super::clip::lens_area;
use super::point::{point_segment_distance, Point2};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Disk<T> {
    pub center: Point2<T>,
    pub radius: T,
}

/// A one-dimensional "hair": zero area, counted twice by the Minkowski
/// perimeter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Segment<T>(pub Point2<T>, pub Point2<T>);

impl<T: Real> Segment<T> {
    pub fn length(&self) -> T {
        self.0.dist(self.1)
    }
}

/// Disjoint disks joined (or not) by segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Composite<T> {
    pub(crate) disks: Vec<Disk<T>>,
    #[serde(default)]
    pub(crate) segments: Vec<Segment<T>>,
}

impl<T: Real> Composite<T> {
    pub fn new(disks: Vec<Disk<T>>, segments: Vec<Segment<T>>) -> Result<Self> {
        let c = Self { disks, segments };
        c.validate()?;
        Ok(c)
    }

    pub fn disk(center: Point2<T>, radius: T) -> Result<Self> {
        Self::new(vec![Disk { center, radius }], Vec::new())
    }

    pub fn disks(&self) -> &[Disk<T>] {
        &self.disks
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    fn tol(&self) -> T {
        let scale = self.disks.iter().fold(T::one(), |a, d| a.max(d.center.norm() + d.radius));
        T::lit(1e3) * T::geom_eps() * scale
    }

    pub fn validate(&self) -> Result<()> {
        if self.disks.is_empty() {
            return Err(Error::InvalidShape("composite needs at least one disk".into()));
        }
        for (i, d) in self.disks.iter().enumerate() {
            if !d.center.is_finite() || !(d.radius > T::zero()) || !d.radius.is_finite() {
                return Err(Error::InvalidShape(format!("disk {i} has a bad center or radius")));
            }
        }
        let tol = self.tol();
        for i in 0..self.disks.len() {
            for j in i + 1..self.disks.len() {
                let (a, b) = (self.disks[i], self.disks[j]);
                if a.center.dist(b.center) < a.radius + b.radius - tol {
                    return Err(Error::InvalidShape(format!("disks {i} and {j} overlap")));
                }
            }
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !s.0.is_finite() || !s.1.is_finite() || s.length() <= tol {
                return Err(Error::InvalidShape(format!("segment {i} is degenerate")));
            }
            for p in [s.0, s.1] {
                let on_disk = self.disks.iter().any(|d| (p.dist(d.center) - d.radius).abs() <= tol);
                let on_seg =
                    self.segments.iter().enumerate().any(|(j, t)| j != i && point_segment_distance(p, t.0, t.1) <= tol);
                if !on_disk && !on_seg {
                    return Err(Error::InvalidShape(format!(
                        "segment {i} endpoint is neither on a disk boundary nor on another segment"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether the union of disks and segments is connected.
    pub fn is_connected(&self) -> bool {
        let nd = self.disks.len();
        let n = nd + self.segments.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut i = i;
            while p[i] != r {
                let next = p[i];
                p[i] = r;
                i = next;
            }
            r
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        let tol = self.tol();
        for i in 0..nd {
            for j in i + 1..nd {
                let (a, b) = (self.disks[i], self.disks[j]);
                if a.center.dist(b.center) <= a.radius + b.radius + tol {
                    union(&mut parent, i, j);
                }
            }
        }
        for (k, s) in self.segments.iter().enumerate() {
            for (i, d) in self.disks.iter().enumerate() {
                if point_segment_distance(d.center, s.0, s.1) <= d.radius + tol {
                    union(&mut parent, nd + k, i);
                }
            }
            for (j, t) in self.segments.iter().enumerate() {
                if j != k
                    && (point_segment_distance(s.0, t.0, t.1) <= tol || point_segment_distance(s.1, t.0, t.1) <= tol)
                {
                    union(&mut parent, nd + k, nd + j);
                }
            }
        }
        let root = find(&mut parent, 0);
        (1..n).all(|i| find(&mut parent, i) == root)
    }

    pub fn area(&self) -> T {
        self.disks.iter().map(|d| T::PI() * d.radius * d.radius).sum()
    }

    pub fn barycenter(&self) -> Point2<T> {
        let a = self.area();
        let sum = self.disks.iter().fold(Point2::origin(), |acc, d| acc + d.center * (T::PI() * d.radius * d.radius));
        sum * (T::one() / a)
    }

    /// Circumferences plus twice the segment lengths.
    pub fn perimeter(&self) -> T {
        let circles: T = self.disks.iter().map(|d| T::TAU() * d.radius).sum();
        let hairs: T = self.segments.iter().map(|s| s.length()).sum();
        circles + T::two() * hairs
    }

    pub fn diameter(&self) -> T {
        let mut atoms: Vec<(Point2<T>, T)> = self.disks.iter().map(|d| (d.center, d.radius)).collect();
        for s in &self.segments {
            atoms.push((s.0, T::zero()));
            atoms.push((s.1, T::zero()));
        }
        let mut best = T::zero();
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i..] {
                best = best.max(a.0.dist(b.0) + a.1 + b.1);
            }
        }
        best
    }

    pub fn contains(&self, p: Point2<T>, tol: T) -> bool {
        self.disks.iter().any(|d| p.dist(d.center) <= d.radius + tol)
            || self.segments.iter().any(|s| point_segment_distance(p, s.0, s.1) <= tol)
    }

    pub fn distance_to(&self, p: Point2<T>) -> T {
        let disks = self.disks.iter().map(|d| (p.dist(d.center) - d.radius).max(T::zero()));
        let segs = self.segments.iter().map(|s| point_segment_distance(p, s.0, s.1));
        disks.chain(segs).fold(T::infinity(), T::min)
    }

    /// `|self ∩ B(c, ρ)|` as a sum of lens areas.
    pub fn overlap_with_disk(&self, c: Point2<T>, rho: T) -> T {
        self.disks.iter().map(|d| lens_area(d.center, d.radius, c, rho)).sum()
    }

    pub fn map(&self, f: impl Fn(Point2<T>) -> Point2<T>, scale: T) -> Self {
        Self {
            disks: self.disks.iter().map(|d| Disk { center: f(d.center), radius: d.radius * scale }).collect(),
            segments: self.segments.iter().map(|s| Segment(f(s.0), f(s.1))).collect(),
        }
    }
}
