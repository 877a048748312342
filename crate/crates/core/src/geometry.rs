//! Points, headings, unit disks and the arc/segment primitives everything
//! else is built from.
//!
//! All circles in this crate have radius exactly one. Angles are radians,
//! measured counterclockwise from the positive x axis.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ReachError, Result};

/// Largest coordinate magnitude accepted from callers.
pub const COORD_LIMIT: f64 = 1e6;

/// Numeric tolerances used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Lengths below this are zero; near-tangencies within it snap to tangency.
    pub len: f64,
    /// Angular snapping tolerance.
    pub angle: f64,
    /// Width of the "boundary band" used when classifying points.
    pub band: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { len: 1e-9, angle: 1e-9, band: 1e-6 }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        if self.len > 0.0 && self.angle > 0.0 && self.band > 0.0 {
            Ok(())
        } else {
            Err(ReachError::InvalidTolerance)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(v: [f64; 2]) -> Self {
        Point::new(v[0], v[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `theta`.
    pub fn polar(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by +90 degrees.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Point, t: f64) -> Self {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Reflection across the x axis.
    pub fn mirrored(self) -> Self {
        Self::new(self.x, -self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A unit heading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub ux: f64,
    pub uy: f64,
}

impl Direction {
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { ux: c, uy: s }
    }

    /// Normalizes `v`; fails on (near) zero or non-finite vectors.
    pub fn from_vector(v: Point) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || n < 1e-12 {
            return Err(ReachError::InvalidDirection);
        }
        Ok(Self { ux: v.x / n, uy: v.y / n })
    }

    /// Accepts components that are already unit length within `tol`.
    pub fn new(ux: f64, uy: f64, tol: f64) -> Result<Self> {
        if !(ux.is_finite() && uy.is_finite()) || ((ux * ux + uy * uy) - 1.0).abs() > tol {
            return Err(ReachError::InvalidDirection);
        }
        Ok(Self { ux, uy })
    }

    pub fn vector(self) -> Point {
        Point::new(self.ux, self.uy)
    }

    pub fn angle(self) -> f64 {
        self.uy.atan2(self.ux)
    }

    pub fn reversed(self) -> Self {
        Self { ux: -self.ux, uy: -self.uy }
    }

    pub fn mirrored(self) -> Self {
        Self { ux: self.ux, uy: -self.uy }
    }
}

/// A location together with a direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub point: Point,
    pub dir: Direction,
}

impl Configuration {
    pub fn new(point: Point, dir: Direction) -> Self {
        Self { point, dir }
    }

    pub fn from_angle(point: Point, heading: f64) -> Self {
        Self { point, dir: Direction::from_angle(heading) }
    }

    pub fn heading(&self) -> f64 {
        self.dir.angle()
    }

    pub fn mirrored(&self) -> Self {
        Self { point: self.point.mirrored(), dir: self.dir.mirrored() }
    }
}

/// The unit disk touching `c` on the left of its heading.
pub fn left_disk(c: &Configuration) -> UnitDisk {
    UnitDisk::new(c.point + c.dir.vector().perp())
}

/// The unit disk touching `c` on the right of its heading.
pub fn right_disk(c: &Configuration) -> UnitDisk {
    UnitDisk::new(c.point - c.dir.vector().perp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitDisk {
    pub center: Point,
}

impl UnitDisk {
    pub const fn new(center: Point) -> Self {
        Self { center }
    }

    pub fn point_at(&self, theta: f64) -> Point {
        self.center + Point::polar(theta)
    }

    pub fn angle_of(&self, p: Point) -> f64 {
        (p - self.center).angle()
    }

    /// Closed-disk membership with slack `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.center.dist(p) <= 1.0 + tol
    }

    /// Open-disk membership, shrunk by `tol`.
    pub fn contains_strictly(&self, p: Point, tol: f64) -> bool {
        self.center.dist(p) < 1.0 - tol
    }

    pub fn mirrored(&self) -> Self {
        Self::new(self.center.mirrored())
    }
}

/// An arc of a unit circle.
///
/// `to_angle` is not normalized: the arc sweeps `to_angle - from_angle`
/// when counterclockwise and `from_angle - to_angle` otherwise, and that
/// sweep lies in `(0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcElement {
    pub center: Point,
    pub from_angle: f64,
    pub to_angle: f64,
    pub ccw: bool,
}

impl ArcElement {
    /// Arc starting at angle `from` with unsigned sweep `sweep`.
    pub fn with_sweep(center: Point, from: f64, sweep: f64, ccw: bool) -> Self {
        let from = normalize_angle(from);
        let to = if ccw { from + sweep } else { from - sweep };
        Self { center, from_angle: from, to_angle: to, ccw }
    }

    pub fn full_circle(center: Point, ccw: bool) -> Self {
        Self::with_sweep(center, 0.0, TAU, ccw)
    }

    pub fn sweep(&self) -> f64 {
        if self.ccw {
            self.to_angle - self.from_angle
        } else {
            self.from_angle - self.to_angle
        }
    }

    /// Sweep with the sign of the rotation sense.
    pub fn signed_sweep(&self) -> f64 {
        self.to_angle - self.from_angle
    }

    pub fn length(&self) -> f64 {
        self.sweep()
    }

    pub fn start(&self) -> Point {
        self.center + Point::polar(self.from_angle)
    }

    pub fn end(&self) -> Point {
        self.center + Point::polar(self.to_angle)
    }

    /// Angle of the point at unsigned offset `s` along the arc.
    pub fn angle_at(&self, s: f64) -> f64 {
        if self.ccw {
            self.from_angle + s
        } else {
            self.from_angle - s
        }
    }

    pub fn point_at(&self, s: f64) -> Point {
        self.center + Point::polar(self.angle_at(s))
    }

    /// Unit tangent in the direction of travel at offset `s`.
    pub fn tangent_at(&self, s: f64) -> Point {
        let r = Point::polar(self.angle_at(s)).perp();
        if self.ccw {
            r
        } else {
            -r
        }
    }

    /// Offset along the arc of the direction `theta`, if it lies on the arc.
    pub fn offset_of_angle(&self, theta: f64, tol: f64) -> Option<f64> {
        let rel = if self.ccw {
            mod_tau(theta - self.from_angle)
        } else {
            mod_tau(self.from_angle - theta)
        };
        let sw = self.sweep();
        if rel <= sw + tol {
            Some(rel.min(sw))
        } else if rel >= TAU - tol {
            Some(0.0)
        } else {
            None
        }
    }

    pub fn reversed(&self) -> Self {
        Self { center: self.center, from_angle: self.to_angle, to_angle: self.from_angle, ccw: !self.ccw }
    }

    pub fn mirrored(&self) -> Self {
        Self { center: self.center.mirrored(), from_angle: -self.from_angle, to_angle: -self.to_angle, ccw: !self.ccw }
    }

    /// Distance from `p` to the arc.
    pub fn distance(&self, p: Point) -> f64 {
        let v = p - self.center;
        if v.norm() > 1e-15 && self.offset_of_angle(v.angle(), 0.0).is_some() {
            (v.norm() - 1.0).abs()
        } else {
            p.dist(self.start()).min(p.dist(self.end()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentElement {
    pub a: Point,
    pub b: Point,
}

impl SegmentElement {
    pub const fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.a.lerp(self.b, t)
    }

    pub fn direction(&self) -> Point {
        let d = self.b - self.a;
        d * (1.0 / d.norm())
    }

    /// Parameter of the closest point of the supporting line.
    pub fn project(&self, p: Point) -> f64 {
        let d = self.b - self.a;
        (p - self.a).dot(d) / d.norm_sq()
    }

    pub fn distance(&self, p: Point) -> f64 {
        let t = self.project(p).clamp(0.0, 1.0);
        p.dist(self.point_at(t))
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.b, self.a)
    }

    pub fn mirrored(&self) -> Self {
        Self::new(self.a.mirrored(), self.b.mirrored())
    }
}

/// Intersections of the unit circle around `d` with `seg`.
///
/// A supporting line within `tol` of tangency yields the single touch point.
pub fn intersect_circle_segment(d: &UnitDisk, seg: &SegmentElement, tol: f64) -> Vec<Point> {
    let len = seg.length();
    if len <= tol {
        return if (d.center.dist(seg.a) - 1.0).abs() <= tol { vec![seg.a] } else { vec![] };
    }
    let u = (seg.b - seg.a) * (1.0 / len);
    let w = d.center - seg.a;
    let along = w.dot(u);
    let off = w.cross(u);
    let gap = off.abs() - 1.0;
    let mut params = Vec::with_capacity(2);
    if gap > tol {
        return vec![];
    } else if gap.abs() <= tol {
        params.push(along);
    } else {
        let h = (1.0 - off * off).max(0.0).sqrt();
        params.push(along - h);
        params.push(along + h);
    }
    params
        .into_iter()
        .filter(|&t| t >= -tol && t <= len + tol)
        .map(|t| seg.a + u * t.clamp(0.0, len))
        .collect()
}

/// Intersections of two unit circles; tangency within `tol` yields one point.
pub fn intersect_circles(d1: &UnitDisk, d2: &UnitDisk, tol: f64) -> Result<Vec<Point>> {
    let v = d2.center - d1.center;
    let dist = v.norm();
    if dist < tol {
        return Err(ReachError::CoincidentCircles);
    }
    if dist > 2.0 + tol {
        return Ok(vec![]);
    }
    let mid = d1.center + v * 0.5;
    if (dist - 2.0).abs() <= tol {
        return Ok(vec![mid]);
    }
    let h = (1.0 - dist * dist / 4.0).max(0.0).sqrt();
    let n = v.perp() * (h / dist);
    Ok(vec![mid + n, mid - n])
}

/// The configuration on the boundary of `d` at angle `theta`, heading along
/// the circle in the given rotational sense.
pub fn tangent_ray_from_disk(d: &UnitDisk, theta: f64, ccw: bool) -> Configuration {
    let r = Point::polar(theta);
    let dir = if ccw { r.perp() } else { -r.perp() };
    Configuration { point: d.center + r, dir: Direction { ux: dir.x, uy: dir.y } }
}

/// Angle normalized to `(-π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut a = theta % TAU;
    if a <= -PI {
        a += TAU;
    } else if a > PI {
        a -= TAU;
    }
    a
}

/// Angle reduced to `[0, 2π)`.
pub fn mod_tau(theta: f64) -> f64 {
    let a = theta.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Signed turning from direction `a` to direction `b`, in `(-π, π]`.
pub fn turn_between(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}
