//! Convex polygons, boundary configurations, forward chains and the medial
//! axis of a convex polygon.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{ReachError, Result};
use crate::geometry::{
    mod_tau, turn_between, Configuration, Direction, Point, SegmentElement, Tolerance, COORD_LIMIT,
};

/// Where a point sits relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointLocation {
    Inside,
    Boundary,
    Outside,
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    // unit edge directions and inward normals, indexed like the edges
    dirs: Vec<Point>,
    normals: Vec<Point>,
    lengths: Vec<f64>,
    tol: Tolerance,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        Self::with_tolerance(vertices, Tolerance::default())
    }

    /// Validates `vertices` as a strictly convex counterclockwise polygon.
    pub fn with_tolerance(vertices: Vec<Point>, tol: Tolerance) -> Result<Self> {
        tol.validate()?;
        let n = vertices.len();
        if n < 3 {
            return Err(ReachError::TooFewVertices(n));
        }
        if vertices.iter().any(|p| !p.is_finite() || p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT) {
            return Err(ReachError::CoordinateOutOfRange);
        }
        for i in 0..n {
            if vertices[i].dist(vertices[(i + 1) % n]) <= tol.len {
                return Err(ReachError::DuplicateVertex((i + 1) % n));
            }
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cr = (b - a).cross(c - b);
            let scale = (b - a).norm() * (c - b).norm();
            if cr.abs() <= tol.len * scale.max(1.0) {
                return Err(ReachError::CollinearVertices((i + 1) % n));
            }
            if cr < 0.0 {
                return Err(ReachError::NotConvex((i + 1) % n));
            }
        }
        // Locally left-turning everywhere is not enough: the boundary must wind once.
        let winding: f64 = (0..n)
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                turn_between(b - a, c - b)
            })
            .sum();
        if (winding - TAU).abs() > 1e-6 {
            return Err(ReachError::NotConvex(0));
        }
        let mut dirs = Vec::with_capacity(n);
        let mut normals = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        for i in 0..n {
            let d = vertices[(i + 1) % n] - vertices[i];
            let len = d.norm();
            let u = d * (1.0 / len);
            dirs.push(u);
            normals.push(u.perp());
            lengths.push(len);
        }
        Ok(Self { vertices, dirs, normals, lengths, tol })
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.len()]
    }

    pub fn edge(&self, i: usize) -> SegmentElement {
        let n = self.len();
        SegmentElement::new(self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = SegmentElement> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    /// Counterclockwise unit direction of edge `i`.
    pub fn edge_dir(&self, i: usize) -> Point {
        self.dirs[i % self.len()]
    }

    /// Inward unit normal of edge `i`.
    pub fn inward_normal(&self, i: usize) -> Point {
        self.normals[i % self.len()]
    }

    pub fn edge_len(&self, i: usize) -> f64 {
        self.lengths[i % self.len()]
    }

    pub fn perimeter(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// Signed distance from the supporting line of edge `i`, positive inside.
    pub fn edge_distance(&self, i: usize, p: Point) -> f64 {
        (p - self.vertices[i]).dot(self.normals[i])
    }

    /// Minimum signed edge distance: the clearance for interior points,
    /// negative outside.
    pub fn depth(&self, p: Point) -> f64 {
        (0..self.len()).map(|i| self.edge_distance(i, p)).fold(f64::INFINITY, f64::min)
    }

    pub fn area(&self) -> f64 {
        let n = self.len();
        0.5 * (0..n).map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n])).sum::<f64>()
    }

    /// Classification against the tolerance band of this polygon.
    pub fn contains(&self, p: Point) -> PointLocation {
        self.locate(p, self.tol.band)
    }

    pub fn locate(&self, p: Point, band: f64) -> PointLocation {
        let d = self.depth(p);
        if d > band {
            PointLocation::Inside
        } else if d >= -band {
            PointLocation::Boundary
        } else {
            PointLocation::Outside
        }
    }

    /// Closed containment with a tiny numerical slack.
    pub fn contains_point(&self, p: Point) -> bool {
        self.depth(p) >= -self.tol.len
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Reflection across the x axis, re-ordered to stay counterclockwise.
    /// Edge `i` of the result is edge [`Self::mirrored_edge`]`(i)` reversed.
    pub fn mirrored(&self) -> Self {
        let verts: Vec<Point> = self.vertices.iter().rev().map(|p| p.mirrored()).collect();
        Self::with_tolerance(verts, self.tol).expect("mirror of a valid polygon is valid")
    }

    /// Index correspondence between edges of `self` and of `self.mirrored()`;
    /// the map is an involution.
    pub fn mirrored_edge(&self, i: usize) -> usize {
        let n = self.len() as isize;
        (((n - 2 - i as isize) % n + n) % n) as usize
    }

    pub fn boundary_configuration(&self, edge: usize, offset: f64, ccw: bool) -> BoundaryConfiguration {
        let edge = edge % self.len();
        let u = self.dirs[edge];
        let dir = if ccw { u } else { -u };
        BoundaryConfiguration {
            edge_index: edge,
            offset,
            point: self.vertices[edge] + u * offset,
            dir: Direction { ux: dir.x, uy: dir.y },
            ccw,
        }
    }

    /// Recognizes `c` as a configuration on the boundary: on an edge (within
    /// the band) and heading along it.
    pub fn boundary_configuration_of(&self, c: &Configuration) -> Result<BoundaryConfiguration> {
        let band = self.tol.band;
        let n = self.len();
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            let d = self.edge_distance(i, c.point).abs();
            let t = (c.point - self.vertices[i]).dot(self.dirs[i]);
            if d <= band && t >= -band && t <= self.lengths[i] + band && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        let (edge, _) = best.ok_or(ReachError::NotOnBoundary)?;
        let offset = (c.point - self.vertices[edge]).dot(self.dirs[edge]);
        if offset <= band || offset >= self.lengths[edge] - band {
            return Err(ReachError::VertexStart);
        }
        let along = c.dir.vector().dot(self.dirs[edge]);
        if (along.abs() - 1.0).abs() > 1e-6 {
            return Err(ReachError::NotOnBoundary);
        }
        Ok(self.boundary_configuration(edge, offset, along > 0.0))
    }

    /// Longest counterclockwise boundary chain from `s` turning by at most π.
    pub fn forward_chain(&self, s: &BoundaryConfiguration) -> ForwardChain {
        debug_assert!(s.ccw, "forward chains start from counterclockwise configurations");
        let n = self.len();
        let i = s.edge_index;
        let mut elements = vec![SegmentElement::new(s.point, self.vertex(i + 1))];
        let mut edges = vec![i];
        let mut total = 0.0;
        for k in 1..n {
            let prev = (i + k - 1) % n;
            let cur = (i + k) % n;
            let ext = turn_between(self.dirs[prev], self.dirs[cur]);
            if total + ext > PI + self.tol.angle {
                break;
            }
            total += ext;
            elements.push(self.edge(cur));
            edges.push(cur);
        }
        ForwardChain { start: *s, elements, edges, total_turn: total }
    }

    /// Arc length a unit circle around `center` can be followed from angle
    /// `start` in the given sense before leaving the polygon; `None` when the
    /// whole circle is inside.
    pub fn arc_exit_sweep(&self, center: Point, start: f64, ccw: bool) -> Option<f64> {
        let tol = self.tol.len;
        let mut best: Option<f64> = None;
        for i in 0..self.len() {
            let h = self.edge_distance(i, center);
            if h >= 1.0 - tol {
                continue;
            }
            if h <= -1.0 {
                return Some(0.0);
            }
            // Angles strictly outside this edge form an open interval around -normal.
            let half = h.acos();
            let mid = (-self.normals[i]).angle();
            let (a, m) = if ccw { (start, mid) } else { (-start, -mid) };
            let rel = mod_tau(a - (m - half));
            let entry = if rel <= self.tol.angle || (rel < 2.0 * half - self.tol.angle) {
                0.0
            } else {
                TAU - rel
            };
            best = Some(best.map_or(entry, |b: f64| b.min(entry)));
        }
        best
    }

    pub fn medial_axis(&self) -> MedialAxis {
        convex_medial_axis(self)
    }
}

/// A configuration on the polygon boundary heading along its edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConfiguration {
    pub edge_index: usize,
    /// Distance from the edge's first vertex.
    pub offset: f64,
    pub point: Point,
    pub dir: Direction,
    /// Heading along the counterclockwise orientation of the edge.
    pub ccw: bool,
}

impl BoundaryConfiguration {
    pub fn configuration(&self) -> Configuration {
        Configuration::new(self.point, self.dir)
    }

    /// The same physical configuration expressed against `poly.mirrored()`.
    pub fn mirrored(&self, poly: &ConvexPolygon) -> BoundaryConfiguration {
        let e = poly.mirrored_edge(self.edge_index);
        BoundaryConfiguration {
            edge_index: e,
            offset: poly.edge_len(self.edge_index) - self.offset,
            point: self.point.mirrored(),
            dir: self.dir.mirrored(),
            ccw: !self.ccw,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForwardChain {
    pub start: BoundaryConfiguration,
    /// First element runs from the start point to the end of its edge.
    pub elements: Vec<SegmentElement>,
    /// Polygon edge index of each element.
    pub edges: Vec<usize>,
    pub total_turn: f64,
}

/// One straight edge of the medial axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisEdge {
    pub segment: SegmentElement,
    /// Distance to the boundary at `segment.a` and `segment.b`.
    pub clearance: (f64, f64),
    /// The two polygon edges this piece is equidistant from.
    pub sources: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MedialAxis {
    pub edges: Vec<AxisEdge>,
}

impl MedialAxis {
    /// Largest clearance over all axis vertices.
    pub fn max_clearance(&self) -> f64 {
        self.edges.iter().map(|e| e.clearance.0.max(e.clearance.1)).fold(0.0, f64::max)
    }

    /// Clearance of the axis point nearest `p`, if within `tol` of the axis.
    pub fn clearance_at(&self, p: Point, tol: f64) -> Option<f64> {
        self.edges
            .iter()
            .filter(|e| e.segment.distance(p) <= tol)
            .map(|e| {
                let t = if e.segment.length() > 0.0 { e.segment.project(p).clamp(0.0, 1.0) } else { 0.0 };
                e.clearance.0 + (e.clearance.1 - e.clearance.0) * t
            })
            .next()
    }
}

/// Medial axis of a convex polygon by clipping every pairwise edge bisector
/// against the remaining edges.
pub fn convex_medial_axis(poly: &ConvexPolygon) -> MedialAxis {
    let n = poly.len();
    let scale = {
        let (lo, hi) = poly.bounding_box();
        (hi - lo).norm().max(1.0)
    };
    let eps = 1e-12 * scale;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let ni = poly.inward_normal(i);
            let nj = poly.inward_normal(j);
            let w = ni - nj;
            let wn = w.norm();
            if wn < 1e-12 {
                continue;
            }
            let k = ni.dot(poly.vertex(i)) - nj.dot(poly.vertex(j));
            let p0 = w * (k / (wn * wn));
            let dir = w.perp() * (1.0 / wn);
            // dist_i along the line: a + b t
            let a = poly.edge_distance(i, p0);
            let b = ni.dot(dir);
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            let mut clip = |c0: f64, c1: f64| {
                // keep c0 + c1 t >= 0
                if c1.abs() < 1e-15 {
                    if c0 < -eps {
                        lo = f64::INFINITY;
                    }
                } else if c1 > 0.0 {
                    lo = lo.max(-c0 / c1);
                } else {
                    hi = hi.min(-c0 / c1);
                }
            };
            clip(a, b);
            for m in 0..n {
                if m == i || m == j {
                    continue;
                }
                let nm = poly.inward_normal(m);
                clip(poly.edge_distance(m, p0) - a + eps, nm.dot(dir) - b);
            }
            if !(lo.is_finite() && hi.is_finite()) || hi - lo <= 1e-9 * scale {
                continue;
            }
            let pa = p0 + dir * lo;
            let pb = p0 + dir * hi;
            edges.push(AxisEdge {
                segment: SegmentElement::new(pa, pb),
                clearance: (a + b * lo, a + b * hi),
                sources: (i, j),
            });
        }
    }
    MedialAxis { edges }
}
