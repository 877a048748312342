//! Regions bounded by line segments and unit-circle arcs.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::arrangement;
use crate::geometry::{mod_tau, ArcElement, Point, SegmentElement};
use crate::polygon::ConvexPolygon;

/// One boundary piece of an [`ArcGon`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Element {
    Segment(SegmentElement),
    Arc(ArcElement),
}

impl Element {
    pub fn start(&self) -> Point {
        match self {
            Element::Segment(s) => s.a,
            Element::Arc(a) => a.start(),
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Element::Segment(s) => s.b,
            Element::Arc(a) => a.end(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Element::Segment(s) => s.length(),
            Element::Arc(a) => a.sweep(),
        }
    }

    /// Point at arclength `s` from the start.
    pub fn point_at(&self, s: f64) -> Point {
        match self {
            Element::Segment(seg) => {
                let len = seg.length();
                if len > 0.0 {
                    seg.point_at(s / len)
                } else {
                    seg.a
                }
            }
            Element::Arc(a) => a.point_at(s),
        }
    }

    /// Unit tangent at arclength `s`.
    pub fn tangent_at(&self, s: f64) -> Point {
        match self {
            Element::Segment(seg) => seg.direction(),
            Element::Arc(a) => a.tangent_at(s),
        }
    }

    pub fn distance(&self, p: Point) -> f64 {
        match self {
            Element::Segment(s) => s.distance(p),
            Element::Arc(a) => a.distance(p),
        }
    }

    pub fn reversed(&self) -> Element {
        match self {
            Element::Segment(s) => Element::Segment(s.reversed()),
            Element::Arc(a) => Element::Arc(a.reversed()),
        }
    }

    pub fn mirrored(&self) -> Element {
        match self {
            Element::Segment(s) => Element::Segment(s.mirrored()),
            Element::Arc(a) => Element::Arc(a.mirrored()),
        }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self, Element::Arc(_))
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (Point, Point) {
        match self {
            Element::Segment(s) => (
                Point::new(s.a.x.min(s.b.x), s.a.y.min(s.b.y)),
                Point::new(s.a.x.max(s.b.x), s.a.y.max(s.b.y)),
            ),
            Element::Arc(a) => {
                let (p, q) = (a.start(), a.end());
                let mut lo = Point::new(p.x.min(q.x), p.y.min(q.y));
                let mut hi = Point::new(p.x.max(q.x), p.y.max(q.y));
                for k in 0..4 {
                    let th = k as f64 * FRAC_PI_2;
                    if a.offset_of_angle(th, 0.0).is_some() {
                        let e = a.center + Point::polar(th);
                        lo = Point::new(lo.x.min(e.x), lo.y.min(e.y));
                        hi = Point::new(hi.x.max(e.x), hi.y.max(e.y));
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Twice the signed area contribution `∫ x dy - y dx`.
    fn area_term(&self) -> f64 {
        match self {
            Element::Segment(s) => s.a.cross(s.b),
            Element::Arc(a) => {
                let (t0, t1) = (a.from_angle, a.to_angle);
                a.center.x * (t1.sin() - t0.sin()) - a.center.y * (t1.cos() - t0.cos()) + (t1 - t0)
            }
        }
    }

    /// Signed crossings of the ray from `p` towards +x (half-open rule).
    fn crossings(&self, p: Point) -> i32 {
        match self {
            Element::Segment(s) => {
                let (a, b) = (s.a, s.b);
                if a.y <= p.y && p.y < b.y {
                    if (b - a).cross(p - a) > 0.0 {
                        return 1;
                    }
                } else if b.y <= p.y && p.y < a.y && (b - a).cross(p - a) < 0.0 {
                    return -1;
                }
                0
            }
            Element::Arc(a) => {
                // split into y-monotone pieces and apply the half-open rule
                let (from, to) = (a.from_angle, a.to_angle);
                let mut cuts = vec![from];
                let lo = from.min(to);
                let hi = from.max(to);
                let mut k = ((lo - FRAC_PI_2) / PI).floor() + 1.0;
                while FRAC_PI_2 + k * PI < hi {
                    cuts.push(FRAC_PI_2 + k * PI);
                    k += 1.0;
                }
                if !a.ccw {
                    cuts[1..].reverse();
                }
                cuts.push(to);
                let y_at = |i: usize| -> f64 {
                    if i == 0 {
                        a.start().y
                    } else if i == cuts.len() - 1 {
                        a.end().y
                    } else {
                        a.center.y + cuts[i].sin().round()
                    }
                };
                let mut w = 0;
                for i in 0..cuts.len() - 1 {
                    let (ys, ye) = (y_at(i), y_at(i + 1));
                    let mid = 0.5 * (cuts[i] + cuts[i + 1]);
                    let up = if ys <= p.y && p.y < ye {
                        true
                    } else if ye <= p.y && p.y < ys {
                        false
                    } else {
                        continue;
                    };
                    let dy = (p.y - a.center.y).clamp(-1.0, 1.0);
                    let half = (1.0 - dy * dy).sqrt();
                    let x = if mid.cos() >= 0.0 { a.center.x + half } else { a.center.x - half };
                    if x > p.x {
                        w += if up { 1 } else { -1 };
                    }
                }
                w
            }
        }
    }
}

/// Result of classifying a point against a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Inside,
    Outside,
    BoundaryBand,
}

/// A region bounded by closed cycles of segments and unit arcs. Outer
/// cycles run counterclockwise, holes clockwise.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ArcGon {
    pub cycles: Vec<Vec<Element>>,
}

impl ArcGon {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_polygon(poly: &ConvexPolygon) -> Self {
        Self { cycles: vec![poly.edges().map(Element::Segment).collect()] }
    }

    pub fn disk(center: Point) -> Self {
        Self { cycles: vec![vec![Element::Arc(ArcElement::full_circle(center, true))]] }
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.iter().all(|c| c.is_empty())
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.cycles.iter().flatten()
    }

    pub fn winding_number(&self, p: Point) -> i32 {
        self.elements().map(|e| e.crossings(p)).sum()
    }

    /// Point-in-region test without any tolerance band.
    pub fn contains_point(&self, p: Point) -> bool {
        self.winding_number(p) != 0
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.elements().map(|e| e.distance(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: Point, band: f64) -> Membership {
        if self.boundary_distance(p) < band {
            Membership::BoundaryBand
        } else if self.contains_point(p) {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }

    pub fn area(&self) -> f64 {
        0.5 * self.elements().map(|e| e.area_term()).sum::<f64>()
    }

    pub fn mirrored(&self) -> Self {
        Self {
            cycles: self
                .cycles
                .iter()
                .map(|c| c.iter().rev().map(|e| e.mirrored().reversed()).collect())
                .collect(),
        }
    }

    /// Largest gap between consecutive element endpoints, wrap-around included.
    pub fn max_closure_gap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.cycles {
            for (i, e) in c.iter().enumerate() {
                let next = &c[(i + 1) % c.len()];
                worst = worst.max(e.end().dist(next.start()));
            }
        }
        worst
    }

    pub fn arc_count(&self) -> usize {
        self.elements().filter(|e| e.is_arc()).count()
    }

    /// Number of angularly maximal boundary arcs on each distinct unit circle,
    /// keyed by circle center. Arcs of one circle that meet end to end (for
    /// instance at a tangential pinch point) count as one.
    pub fn arcs_per_circle(&self, tol: f64) -> Vec<(Point, usize)> {
        let mut circles: Vec<(Point, Vec<(f64, f64)>)> = Vec::new();
        for e in self.elements() {
            if let Element::Arc(a) = e {
                // counterclockwise angular interval
                let (lo, sw) = if a.ccw { (a.from_angle, a.sweep()) } else { (a.to_angle, a.sweep()) };
                match circles.iter_mut().find(|(c, _)| c.dist(a.center) <= tol) {
                    Some((_, iv)) => iv.push((mod_tau(lo), sw)),
                    None => circles.push((a.center, vec![(mod_tau(lo), sw)])),
                }
            }
        }
        circles
            .into_iter()
            .map(|(c, iv)| (c, count_angular_components(iv, 1e-7)))
            .collect()
    }

    /// Merges consecutive collinear segments and contiguous co-circular arcs
    /// and drops zero-length elements.
    pub fn normalized(&self, tol: f64) -> Self {
        let cycles = self
            .cycles
            .iter()
            .map(|c| normalize_cycle(c, tol))
            .filter(|c| !c.is_empty())
            .collect();
        Self { cycles }
    }
}

fn count_angular_components(mut iv: Vec<(f64, f64)>, tol: f64) -> usize {
    if iv.iter().any(|&(_, sw)| sw >= TAU - tol) {
        return 1;
    }
    iv.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // merge on the unrolled line, then check the wrap-around join
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, sw) in iv {
        let hi = lo + sw;
        match merged.last_mut() {
            Some(last) if lo <= last.1 + tol => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    if merged.len() > 1 {
        let first = merged[0];
        let last = merged[merged.len() - 1];
        if last.1 >= first.0 + TAU - tol {
            return merged.len() - 1;
        }
    }
    merged.len()
}

fn try_merge(a: &Element, b: &Element, tol: f64) -> Option<Element> {
    if a.end().dist(b.start()) > tol * 10.0 {
        return None;
    }
    match (a, b) {
        (Element::Segment(s), Element::Segment(t)) => {
            let d1 = s.b - s.a;
            let d2 = t.b - t.a;
            let (l1, l2) = (d1.norm(), d2.norm());
            if d1.dot(d2) > 0.0 && d1.cross(d2).abs() <= tol * l1 * l2.max(1.0) {
                Some(Element::Segment(SegmentElement::new(s.a, t.b)))
            } else {
                None
            }
        }
        (Element::Arc(p), Element::Arc(q)) => {
            if p.ccw == q.ccw && p.center.dist(q.center) <= tol {
                let sw = p.sweep() + q.sweep();
                if sw <= TAU + 1e-9 {
                    return Some(Element::Arc(ArcElement::with_sweep(p.center, p.from_angle, sw.min(TAU), p.ccw)));
                }
            }
            None
        }
        _ => None,
    }
}

fn normalize_cycle(c: &[Element], tol: f64) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::with_capacity(c.len());
    for e in c.iter().filter(|e| e.length() > tol) {
        if let Some(last) = out.last() {
            if let Some(m) = try_merge(last, e, tol) {
                *out.last_mut().unwrap() = m;
                continue;
            }
        }
        out.push(*e);
    }
    while out.len() > 1 {
        let last = out[out.len() - 1];
        match try_merge(&last, &out[0], tol) {
            Some(m) => {
                out[0] = m;
                out.pop();
            }
            None => break,
        }
    }
    out
}

/// Point-set union of `parts`, computed on the arrangement of all their
/// boundary elements.
pub fn union(parts: &[ArcGon]) -> ArcGon {
    let parts: Vec<&ArcGon> = parts.iter().filter(|p| !p.is_empty()).collect();
    match parts.len() {
        0 => return ArcGon::empty(),
        1 => return parts[0].normalized(1e-9),
        _ => {}
    }
    let elements: Vec<Element> = parts.iter().flat_map(|p| p.elements().copied()).collect();
    arrangement::boundary(&elements, |q| parts.iter().any(|p| p.contains_point(q)))
}
