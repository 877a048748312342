//! The filling of a convex polygon: all unit disks it contains, the pockets
//! they leave uncovered, and the common intersection of the extreme disks.

use std::f64::consts::{PI, TAU};

use crate::arrangement;
use crate::geometry::{turn_between, ArcElement, Point, SegmentElement, UnitDisk};
use crate::polygon::ConvexPolygon;
use crate::region::{ArcGon, Element};

/// The set of centers of unit disks inside the polygon.
#[derive(Debug, Clone, PartialEq)]
pub enum CenterHull {
    Empty,
    Point(Point),
    Segment(Point, Point),
    /// Counterclockwise vertices, at least three, no collinear triples.
    Polygon(Vec<Point>),
}

impl CenterHull {
    pub fn vertices(&self) -> Vec<Point> {
        match self {
            CenterHull::Empty => vec![],
            CenterHull::Point(p) => vec![*p],
            CenterHull::Segment(a, b) => vec![*a, *b],
            CenterHull::Polygon(v) => v.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CenterHull::Empty)
    }

    /// Euclidean distance from `p` to the hull (zero inside).
    pub fn distance(&self, p: Point) -> f64 {
        match self {
            CenterHull::Empty => f64::INFINITY,
            CenterHull::Point(c) => p.dist(*c),
            CenterHull::Segment(a, b) => SegmentElement::new(*a, *b).distance(p),
            CenterHull::Polygon(v) => {
                let n = v.len();
                let inside = (0..n).all(|i| (v[(i + 1) % n] - v[i]).cross(p - v[i]) >= 0.0);
                if inside {
                    0.0
                } else {
                    (0..n)
                        .map(|i| SegmentElement::new(v[i], v[(i + 1) % n]).distance(p))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Filling {
    pub extreme_disks: Vec<UnitDisk>,
    pub center_hull: CenterHull,
    pub fil_region: ArcGon,
}

impl Filling {
    pub fn is_empty(&self) -> bool {
        self.center_hull.is_empty()
    }

    /// Whether the unit disk around `center` belongs to the filling.
    pub fn contains_disk(&self, center: Point, tol: f64) -> bool {
        self.center_hull.distance(center) <= tol
    }

    /// Whether `p` is covered by some disk of the filling.
    pub fn covers(&self, p: Point, tol: f64) -> bool {
        self.center_hull.distance(p) <= 1.0 + tol
    }
}

/// A connected component of the polygon minus its filling.
#[derive(Debug, Clone, PartialEq)]
pub struct Pocket {
    pub bounding_disk: UnitDisk,
    /// Counterclockwise arc from the first mouth point to the second.
    pub arc: ArcElement,
    /// Boundary of the polygon from the first mouth point to the second.
    pub chain: Vec<SegmentElement>,
    pub mouth_points: (Point, Point),
}

impl Pocket {
    pub fn region(&self) -> ArcGon {
        let mut cycle: Vec<Element> = self.chain.iter().copied().map(Element::Segment).collect();
        cycle.push(Element::Arc(self.arc.reversed()));
        ArcGon { cycles: vec![cycle] }
    }

    /// Angle at the polygon between the two mouth edges' supporting lines.
    pub fn mouth_angle(&self) -> f64 {
        PI - self.arc.sweep()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Core {
    centers: Vec<Point>,
    pub region: Option<ArcGon>,
}

impl Core {
    /// Open-interior membership.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.region.is_some() && self.centers.iter().all(|c| c.dist(p) < 1.0 - tol)
    }

    pub fn area(&self) -> f64 {
        self.region.as_ref().map_or(0.0, |r| r.area())
    }
}

pub fn compute_filling(poly: &ConvexPolygon) -> Filling {
    let tol = poly.tolerance().len;
    let mut pts: Vec<Point> = poly.vertices().to_vec();
    for i in 0..poly.len() {
        pts = clip(&pts, |c| poly.edge_distance(i, c) - 1.0, tol);
        if pts.is_empty() {
            break;
        }
    }
    let center_hull = classify_hull(pts, tol);
    let extreme_disks = center_hull.vertices().into_iter().map(UnitDisk::new).collect();
    let fil_region = fil_boundary(&center_hull);
    Filling { extreme_disks, center_hull, fil_region }
}

/// Sutherland-Hodgman clip against `f >= -tol`.
fn clip(pts: &[Point], f: impl Fn(Point) -> f64, tol: f64) -> Vec<Point> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let (fa, fb) = (f(a), f(b));
        let (ia, ib) = (fa >= -tol, fb >= -tol);
        if ia {
            out.push(a);
        }
        if ia != ib {
            let t = fa / (fa - fb);
            out.push(a.lerp(b, t));
        }
    }
    out
}

fn classify_hull(mut pts: Vec<Point>, tol: f64) -> CenterHull {
    if pts.is_empty() {
        return CenterHull::Empty;
    }
    let eps = tol.max(1e-12) * 10.0;
    pts.dedup_by(|b, a| a.dist(*b) <= eps);
    while pts.len() > 1 && pts[0].dist(pts[pts.len() - 1]) <= eps {
        pts.pop();
    }
    let (mut i0, mut j0, mut best) = (0, 0, 0.0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].dist(pts[j]);
            if d > best {
                (i0, j0, best) = (i, j, d);
            }
        }
    }
    if best <= eps {
        return CenterHull::Point(pts[0]);
    }
    let (a, b) = (pts[i0], pts[j0]);
    let u = (b - a) * (1.0 / best);
    if pts.iter().all(|&p| u.cross(p - a).abs() <= eps) {
        return CenterHull::Segment(a, b);
    }
    // drop vertices that are collinear with their neighbours
    loop {
        let n = pts.len();
        let k = (0..n).find(|&k| {
            let (p, q, r) = (pts[(k + n - 1) % n], pts[k], pts[(k + 1) % n]);
            (q - p).cross(r - q) <= eps * (q - p).norm().max((r - q).norm()).max(1.0)
        });
        match k {
            Some(k) if n > 3 => {
                pts.remove(k);
            }
            _ => break,
        }
    }
    CenterHull::Polygon(pts)
}

/// Outward normal (right perpendicular) of the direction `a -> b`.
fn outward(a: Point, b: Point) -> Point {
    let d = b - a;
    Point::new(d.y, -d.x) * (1.0 / d.norm())
}

fn fil_boundary(hull: &CenterHull) -> ArcGon {
    let v = match hull {
        CenterHull::Empty => return ArcGon::empty(),
        CenterHull::Point(c) => return ArcGon::disk(*c),
        CenterHull::Segment(a, b) => vec![*a, *b],
        CenterHull::Polygon(v) => v.clone(),
    };
    let n = v.len();
    let mut cycle = Vec::with_capacity(2 * n);
    for i in 0..n {
        let prev = v[(i + n - 1) % n];
        let (cur, next) = (v[i], v[(i + 1) % n]);
        let n_in = outward(prev, cur);
        let n_out = outward(cur, next);
        let mut sweep = turn_between(n_in, n_out);
        if n == 2 {
            sweep = PI;
        }
        if sweep > 1e-12 {
            cycle.push(Element::Arc(ArcElement::with_sweep(cur, n_in.angle(), sweep, true)));
        }
        cycle.push(Element::Segment(SegmentElement::new(cur + n_out, next + n_out)));
    }
    ArcGon { cycles: vec![cycle] }
}

pub fn compute_pockets(poly: &ConvexPolygon, fil: &Filling) -> Vec<Pocket> {
    let tol = poly.tolerance().len;
    let n = poly.len();
    let hull = fil.center_hull.vertices();
    let mut pockets = Vec::new();
    for &h in &hull {
        let touching: Vec<usize> = (0..n).filter(|&j| poly.edge_distance(j, h) <= 1.0 + 1e3 * tol).collect();
        let m = touching.len();
        if m < 2 {
            continue;
        }
        for k in 0..m {
            let (j1, j2) = (touching[k], touching[(k + 1) % m]);
            let steps = (j2 + n - j1) % n;
            if steps == 0 {
                continue;
            }
            let sweep: f64 = (1..=steps)
                .map(|s| turn_between(poly.edge_dir((j1 + s - 1) % n), poly.edge_dir((j1 + s) % n)))
                .sum();
            if sweep <= 1e-9 || sweep >= TAU - 1e-9 {
                continue;
            }
            let from = (-poly.inward_normal(j1)).angle();
            let mid = Point::polar(from + 0.5 * sweep);
            if hull.iter().any(|&w| (w - h).dot(mid) > 1e3 * tol) {
                continue;
            }
            let t1 = h - poly.inward_normal(j1);
            let t2 = h - poly.inward_normal(j2);
            let mut chain = vec![SegmentElement::new(t1, poly.vertex(j1 + 1))];
            for s in 1..steps {
                chain.push(poly.edge((j1 + s) % n));
            }
            chain.push(SegmentElement::new(poly.vertex(j2), t2));
            chain.retain(|s| s.length() > tol);
            pockets.push(Pocket {
                bounding_disk: UnitDisk::new(h),
                arc: ArcElement::with_sweep(h, from, sweep, true),
                chain,
                mouth_points: (t1, t2),
            });
        }
    }
    pockets
}

pub fn core_intersection(fil: &Filling) -> Core {
    let centers: Vec<Point> = fil.extreme_disks.iter().map(|d| d.center).collect();
    let region = match centers.len() {
        0 => None,
        1 => Some(ArcGon::disk(centers[0])),
        _ => {
            let far = centers.iter().enumerate().any(|(i, a)| centers[i + 1..].iter().any(|b| a.dist(*b) >= 2.0));
            if far {
                None
            } else {
                let elements: Vec<Element> =
                    centers.iter().map(|&c| Element::Arc(ArcElement::full_circle(c, true))).collect();
                let g = arrangement::boundary(&elements, |p| centers.iter().all(|c| c.dist(p) < 1.0));
                if g.is_empty() || g.area() <= 0.0 {
                    None
                } else {
                    Some(g)
                }
            }
        }
    };
    Core { centers, region }
}
