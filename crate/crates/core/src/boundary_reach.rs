//! Reachability from a configuration on the polygon boundary.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::arrangement;
use crate::error::{ReachError, Result};
use crate::filling::{compute_filling, core_intersection, Core, Filling};
use crate::geometry::{
    intersect_circle_segment, left_disk, mod_tau, normalize_angle, right_disk, ArcElement, Configuration, Point,
    SegmentElement, UnitDisk,
};
use crate::polygon::{BoundaryConfiguration, ConvexPolygon};
use crate::region::{ArcGon, Element, Membership};

/// Angular slack used when comparing arcs of the same circle.
const ARC_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Polygon together with its filling and core, computed once and shared by
/// every reach query on it.
#[derive(Debug, Clone)]
pub struct ReachContext {
    pub poly: ConvexPolygon,
    pub filling: Filling,
    pub core: Core,
}

impl ReachContext {
    pub fn new(poly: &ConvexPolygon) -> Self {
        let filling = compute_filling(poly);
        let core = core_intersection(&filling);
        Self { poly: poly.clone(), filling, core }
    }

    pub fn mirrored(&self) -> Self {
        Self::new(&self.poly.mirrored())
    }
}

/// Points reachable by one arc on a side disk followed by one segment.
#[derive(Debug, Clone, PartialEq)]
pub struct LdaRegion {
    pub source: Configuration,
    pub side: Side,
    pub region: ArcGon,
    /// Angle on the side disk where the arc leaves the polygon, or the start
    /// angle plus a full turn when it never does.
    pub exit_arc_end: f64,
    center: Point,
    start_angle: f64,
    sweep: Option<f64>,
    poly: ConvexPolygon,
}

impl LdaRegion {
    pub fn center(&self) -> Point {
        self.center
    }

    pub fn start_angle(&self) -> f64 {
        self.start_angle
    }

    /// Usable arc sweep; `None` when the whole circle lies in the polygon.
    pub fn sweep(&self) -> Option<f64> {
        self.sweep
    }

    /// Angle on the side disk where a path to `t` leaves the circle, if `t`
    /// is directly accessible this way.
    pub fn departure_angle(&self, t: Point) -> Option<f64> {
        let v = t - self.center;
        let r = v.norm();
        if r < 1.0 - 1e-12 {
            return None;
        }
        let a = (1.0 / r).min(1.0).acos();
        let (theta, rel) = match self.side {
            Side::Left => {
                let th = v.angle() - a;
                (th, mod_tau(th - self.start_angle))
            }
            Side::Right => {
                let th = v.angle() + a;
                (th, mod_tau(self.start_angle - th))
            }
        };
        match self.sweep {
            None => Some(theta),
            Some(phi) if rel <= phi + ARC_SLACK => Some(theta),
            Some(_) if rel >= TAU - ARC_SLACK => Some(self.start_angle),
            Some(_) => None,
        }
    }

    /// Analytic closed membership, assuming `t` is already known to be in
    /// the polygon.
    pub(crate) fn contains_in_polygon(&self, t: Point) -> bool {
        self.departure_angle(t).is_some()
    }

    pub fn contains_point(&self, t: Point) -> bool {
        self.poly.contains_point(t) && self.contains_in_polygon(t)
    }

    pub fn contains(&self, t: Point, band: f64) -> Membership {
        self.region.contains(t, band)
    }

    /// Boundary elements that do not lie on the polygon boundary.
    pub(crate) fn interior_elements(&self) -> Vec<Element> {
        let tol = self.poly.tolerance().len;
        self.region
            .elements()
            .filter(|e| match e {
                Element::Arc(_) => true,
                Element::Segment(s) => self.poly.depth(s.point_at(0.5)) > 10.0 * tol,
            })
            .copied()
            .collect()
    }
}

pub fn lda(poly: &ConvexPolygon, c: &Configuration, side: Side) -> Result<LdaRegion> {
    if !poly.contains_point(c.point) {
        return Err(ReachError::StartOutsidePolygon);
    }
    let (disk, ccw) = match side {
        Side::Left => (left_disk(c), true),
        Side::Right => (right_disk(c), false),
    };
    let start_angle = disk.angle_of(c.point);
    let sweep = poly.arc_exit_sweep(disk.center, start_angle, ccw);
    let region = match side {
        Side::Left => left_region(poly, c, start_angle, sweep),
        Side::Right => {
            let m = poly.mirrored();
            let mc = c.mirrored();
            left_region(&m, &mc, -start_angle, sweep).mirrored()
        }
    };
    let span = sweep.unwrap_or(TAU);
    let exit_arc_end = if ccw { start_angle + span } else { start_angle - span };
    Ok(LdaRegion {
        source: *c,
        side,
        region,
        exit_arc_end,
        center: disk.center,
        start_angle,
        sweep,
        poly: poly.clone(),
    })
}

/// First boundary point hit by the ray from `p` along `d`, with its edge.
pub(crate) fn ray_exit(poly: &ConvexPolygon, p: Point, d: Point) -> (Point, usize) {
    let mut best = (f64::INFINITY, 0);
    for g in 0..poly.len() {
        let dn = d.dot(poly.inward_normal(g));
        if dn < -1e-15 {
            let t = poly.edge_distance(g, p).max(0.0) / -dn;
            if t < best.0 {
                best = (t, g);
            }
        }
    }
    (p + d * best.0, best.1)
}

/// Counterclockwise boundary path from `a` on edge `ia` to `b` on edge `ib`.
pub(crate) fn boundary_walk(poly: &ConvexPolygon, a: Point, ia: usize, b: Point, ib: usize) -> Vec<SegmentElement> {
    let n = poly.len();
    let tol = poly.tolerance().len;
    if a.dist(b) <= tol {
        return vec![];
    }
    if ia == ib && (b - a).dot(poly.edge_dir(ia)) >= 0.0 {
        return vec![SegmentElement::new(a, b)];
    }
    let mut out = vec![SegmentElement::new(a, poly.vertex(ia + 1))];
    let mut k = (ia + 1) % n;
    while k != ib {
        out.push(poly.edge(k));
        k = (k + 1) % n;
    }
    out.push(SegmentElement::new(poly.vertex(ib), b));
    out.retain(|s| s.length() > tol);
    out
}

fn left_region(poly: &ConvexPolygon, c: &Configuration, theta0: f64, sweep: Option<f64>) -> ArcGon {
    let o = left_disk(c).center;
    let Some(phi) = sweep else {
        let mut g = ArcGon::from_polygon(poly);
        g.cycles.push(vec![Element::Arc(ArcElement::full_circle(o, false))]);
        return g;
    };
    if phi <= poly.tolerance().angle {
        return ArcGon::empty();
    }
    let theta_e = theta0 + phi;
    let qe = o + Point::polar(theta_e);
    let de = Point::polar(theta_e).perp();
    let (x0, i0) = ray_exit(poly, c.point, c.dir.vector());
    let (xe, ie) = ray_exit(poly, qe, de);
    let mut cycle = vec![
        Element::Arc(ArcElement { center: o, from_angle: theta_e, to_angle: theta0, ccw: false }),
        Element::Segment(SegmentElement::new(c.point, x0)),
    ];
    cycle.extend(boundary_walk(poly, x0, i0, xe, ie).into_iter().map(Element::Segment));
    cycle.push(Element::Segment(SegmentElement::new(xe, qe)));
    ArcGon { cycles: vec![cycle] }.normalized(poly.tolerance().len)
}

/// Whether the unit disk around `c` lies in `P ∪ D`, `D` the unit disk
/// around `os`.
pub(crate) fn disk_within(poly: &ConvexPolygon, c: Point, os: Point) -> bool {
    let tol = poly.tolerance().len;
    let d = c.dist(os);
    if d <= tol {
        return true;
    }
    let lens = if d < 2.0 { Some(((d / 2.0).acos(), (os - c).angle())) } else { None };
    for g in 0..poly.len() {
        let h = poly.edge_distance(g, c);
        if h >= 1.0 - tol {
            continue;
        }
        if h <= -1.0 {
            return false;
        }
        let Some((lhw, lmid)) = lens else { return false };
        let chw = h.acos();
        let cmid = (-poly.inward_normal(g)).angle();
        if normalize_angle(cmid - lmid).abs() + chw > lhw + ARC_SLACK {
            return false;
        }
    }
    true
}

/// Roots of `|w + u e|² = r²` for unit `e`.
fn circle_line_params(w: Point, e: Point, r: f64) -> Vec<f64> {
    let b = w.dot(e);
    let disc = b * b - (w.norm_sq() - r * r);
    if disc < 0.0 {
        return vec![];
    }
    let s = disc.sqrt();
    vec![-b - s, -b + s]
}

/// Center of the left disk of the counterclockwise configuration at
/// `offset` on edge `f`.
fn center_on(poly: &ConvexPolygon, f: usize, u: f64) -> Point {
    poly.vertex(f) + poly.edge_dir(f) * u + poly.inward_normal(f)
}

/// Edges of the forward chain that follow edge `f`.
fn chain_after(poly: &ConvexPolygon, f: usize) -> Vec<usize> {
    let c = poly.forward_chain(&poly.boundary_configuration(f, 0.0, true));
    c.edges[1..].to_vec()
}

/// Result of [`blocking_config`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocking {
    pub config: BoundaryConfiguration,
    /// False when no blocking configuration exists on the edge and `config`
    /// is its far endpoint.
    pub found: bool,
}

pub fn blocking_config(poly: &ConvexPolygon, s1: &BoundaryConfiguration) -> Blocking {
    debug_assert!(s1.ccw);
    let f = s1.edge_index;
    let len = poly.edge_len(f);
    let tol = poly.tolerance().len;
    let e = poly.edge_dir(f);
    let c0 = center_on(poly, f, 0.0);
    let u1 = s1.offset;
    let reach = 1.0;
    let mut best = f64::INFINITY;
    let mut consider = |lo: f64, hi: f64| {
        if hi >= u1 - 1e-12 && lo <= hi {
            best = best.min(lo.max(u1));
        }
    };
    for g in chain_after(poly, f) {
        let seg = poly.edge(g);
        for p in [seg.a, seg.b] {
            let r = circle_line_params(c0 - p, e, reach);
            if r.len() == 2 {
                consider(r[0], r[1]);
            }
        }
        // strip: |distance to line g| <= reach and projection within the edge
        let n = poly.inward_normal(g);
        let dg = poly.edge_dir(g);
        let glen = poly.edge_len(g);
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut clip = |a: f64, b: f64, lower: f64, upper: f64| {
            // lower <= a + b u <= upper
            if b.abs() < 1e-15 {
                if a < lower || a > upper {
                    lo = f64::INFINITY;
                }
            } else {
                let (x, y) = ((lower - a) / b, (upper - a) / b);
                lo = lo.max(x.min(y));
                hi = hi.min(x.max(y));
            }
        };
        clip(poly.edge_distance(g, c0), e.dot(n), -reach, reach);
        clip((c0 - seg.a).dot(dg), e.dot(dg), 0.0, glen);
        consider(lo, hi);
    }
    if best <= len + tol {
        Blocking { config: poly.boundary_configuration(f, best.min(len), true), found: true }
    } else {
        Blocking { config: poly.boundary_configuration(f, len, true), found: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    TwoEdgeTangent,
    OneEdgeThroughD,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateConfiguration {
    pub config: BoundaryConfiguration,
    pub disk: UnitDisk,
    pub kind: CandidateKind,
}

/// Maximal closed offset intervals on edge `f`, within `[lo, len]`, whose
/// left disks lie in `P ∪ D`, `D` the unit disk around `os`.
pub(crate) fn feasible_intervals(poly: &ConvexPolygon, f: usize, lo: f64, os: Point) -> Vec<(f64, f64)> {
    let hi = poly.edge_len(f);
    let e = poly.edge_dir(f);
    let c0 = center_on(poly, f, 0.0);
    let mut crit = vec![lo, hi];
    let ds = UnitDisk::new(os);
    crit.extend(circle_line_params(c0 - os, e, 2.0));
    for g in 0..poly.len() {
        if g == f {
            continue;
        }
        let a = poly.edge_distance(g, c0);
        let b = e.dot(poly.inward_normal(g));
        if (a + b * lo).min(a + b * hi) >= 1.0 {
            continue;
        }
        if b.abs() > 1e-15 {
            crit.push((1.0 - a) / b);
            crit.push((-1.0 - a) / b);
        }
        // points where the boundary of D meets the line of g
        let seg = poly.edge(g);
        let dir = poly.edge_dir(g);
        let far = SegmentElement::new(seg.a - dir * 4.0, seg.a + dir * (poly.edge_len(g) + 4.0));
        for q in intersect_circle_segment(&ds, &far, 1e-12) {
            crit.extend(circle_line_params(c0 - q, e, 1.0));
        }
    }
    crit.retain(|u| u.is_finite() && *u >= lo && *u <= hi);
    crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
    crit.dedup_by(|b, a| (*b - *a).abs() < 1e-12);

    let ok = |u: f64| disk_within(poly, center_on(poly, f, u), os);
    let mut out: Vec<(f64, f64)> = Vec::new();
    let push = |a: f64, b: f64, out: &mut Vec<(f64, f64)>| match out.last_mut() {
        Some(last) if a <= last.1 + 1e-12 => last.1 = last.1.max(b),
        _ => out.push((a, b)),
    };
    for (k, &u) in crit.iter().enumerate() {
        if ok(u) {
            push(u, u, &mut out);
        }
        if let Some(&v) = crit.get(k + 1) {
            if ok(0.5 * (u + v)) {
                push(u, v, &mut out);
            }
        }
    }
    out
}

/// First point of the boundary after `s`, counterclockwise, that lies in
/// the closed left disk of `s`.
pub fn first_disk_point(poly: &ConvexPolygon, s: &BoundaryConfiguration) -> Point {
    let n = poly.len();
    let disk = left_disk(&s.configuration());
    let tol = poly.tolerance().len;
    for k in 1..n {
        let seg = poly.edge(s.edge_index + k);
        let mut hits = intersect_circle_segment(&disk, &seg, tol);
        hits.sort_by(|a, b| a.dist(seg.a).partial_cmp(&b.dist(seg.a)).unwrap());
        if let Some(p) = hits.first() {
            return *p;
        }
    }
    s.point
}

fn pocket_case(poly: &ConvexPolygon, s: &BoundaryConfiguration) -> bool {
    let o = left_disk(&s.configuration()).center;
    let tol = poly.tolerance().len;
    poly.forward_chain(s).elements.iter().any(|e| e.distance(o) < 1.0 - tol)
}

pub fn candidate_configurations(poly: &ConvexPolygon, s: &BoundaryConfiguration) -> Result<Vec<CandidateConfiguration>> {
    if !s.ccw {
        return Err(ReachError::PreconditionViolated("start must be counterclockwise"));
    }
    if pocket_case(poly, s) {
        return Err(ReachError::PreconditionViolated("forward chain meets the open left disk"));
    }
    let tol = poly.tolerance().len;
    let os = left_disk(&s.configuration()).center;
    let d = first_disk_point(poly, s);
    let chain = poly.forward_chain(s);
    let mut out = Vec::new();
    for &f in &chain.edges {
        let lo = if f == s.edge_index { s.offset } else { 0.0 };
        let others: Vec<usize> = chain.edges.iter().copied().filter(|&g| g != f).collect();
        for (a, b) in feasible_intervals(poly, f, lo, os) {
            for u in [a, b] {
                let c = center_on(poly, f, u);
                let kind = if others.iter().any(|&g| (poly.edge_distance(g, c) - 1.0).abs() <= 1e3 * tol) {
                    CandidateKind::TwoEdgeTangent
                } else if (c.dist(d) - 1.0).abs() <= 1e3 * tol {
                    CandidateKind::OneEdgeThroughD
                } else {
                    continue;
                };
                let cand = CandidateConfiguration {
                    config: poly.boundary_configuration(f, u, true),
                    disk: UnitDisk::new(c),
                    kind,
                };
                if !out.iter().any(|o: &CandidateConfiguration| {
                    o.config.edge_index == f && (o.config.offset - u).abs() <= 1e3 * tol
                }) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.config.edge_index, a.config.offset).partial_cmp(&(b.config.edge_index, b.config.offset)).unwrap()
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCase {
    /// The forward chain enters the open left disk; reach is LDA(s).
    Pocket,
    /// The left disk belongs to the filling.
    InFilling,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BfilRole {
    Start,
    Filling,
    FirstOnEdge,
    Blocking,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BfilEntry {
    pub disk: UnitDisk,
    /// Generating configuration; `None` for disks of the filling, whose
    /// accessible region is the polygon minus the open disk.
    pub config: Option<BoundaryConfiguration>,
    pub role: BfilRole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bfil {
    pub case: BoundaryCase,
    pub entries: Vec<BfilEntry>,
}

impl Bfil {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn bfil(poly: &ConvexPolygon, s: &BoundaryConfiguration) -> Bfil {
    bfil_in(&ReachContext::new(poly), s)
}

pub fn bfil_in(ctx: &ReachContext, s: &BoundaryConfiguration) -> Bfil {
    let poly = &ctx.poly;
    let tol = poly.tolerance().len;
    let start_disk = left_disk(&s.configuration());
    if pocket_case(poly, s) {
        return Bfil {
            case: BoundaryCase::Pocket,
            entries: vec![BfilEntry { disk: start_disk, config: Some(*s), role: BfilRole::Start }],
        };
    }
    let mut entries: Vec<BfilEntry> = ctx
        .filling
        .extreme_disks
        .iter()
        .map(|&disk| BfilEntry { disk, config: None, role: BfilRole::Filling })
        .collect();
    if ctx.filling.contains_disk(start_disk.center, 1e3 * tol) {
        return Bfil { case: BoundaryCase::InFilling, entries };
    }
    let os = start_disk.center;
    for &f in &poly.forward_chain(s).edges {
        let lo = if f == s.edge_index { s.offset } else { 0.0 };
        let Some(&(u1, _)) = feasible_intervals(poly, f, lo, os).first() else { continue };
        let s1 = if f == s.edge_index && u1 <= lo { *s } else { poly.boundary_configuration(f, u1, true) };
        let role = if s1 == *s { BfilRole::Start } else { BfilRole::FirstOnEdge };
        entries.push(BfilEntry { disk: left_disk(&s1.configuration()), config: Some(s1), role });
        let h1 = blocking_config(poly, &s1).config;
        if (h1.offset - s1.offset).abs() > 1e3 * tol {
            entries.push(BfilEntry { disk: left_disk(&h1.configuration()), config: Some(h1), role: BfilRole::Blocking });
        }
    }
    Bfil { case: BoundaryCase::General, entries }
}

/// One constituent of a reachable region.
#[derive(Debug, Clone, PartialEq)]
pub enum ReachPart {
    Lda(LdaRegion),
    /// The polygon minus the open core of the filling.
    OutsideCore,
}

impl ReachPart {
    pub(crate) fn contains_in_polygon(&self, core: &Core, p: Point) -> bool {
        match self {
            ReachPart::Lda(l) => l.contains_in_polygon(p),
            ReachPart::OutsideCore => !core.contains(p, 0.0),
        }
    }
}

/// Reach from a boundary configuration broken into its parts.
#[derive(Debug, Clone)]
pub struct BoundaryReach {
    pub start: BoundaryConfiguration,
    pub bfil: Bfil,
    pub parts: Vec<ReachPart>,
}

pub fn boundary_reach_parts(ctx: &ReachContext, s: &BoundaryConfiguration) -> BoundaryReach {
    if !s.ccw {
        let m = ctx.mirrored();
        let r = boundary_reach_parts(&m, &s.mirrored(&ctx.poly));
        return BoundaryReach {
            start: *s,
            bfil: mirror_bfil(&r.bfil, &m.poly),
            parts: r.parts.iter().map(|p| mirror_part(p, &ctx.poly)).collect(),
        };
    }
    let poly = &ctx.poly;
    let b = bfil_in(ctx, s);
    let mut parts = Vec::new();
    if b.entries.iter().any(|e| e.role == BfilRole::Filling) {
        parts.push(ReachPart::OutsideCore);
    }
    for e in &b.entries {
        if let Some(c) = e.config {
            let l = lda(poly, &c.configuration(), Side::Left).expect("boundary configurations lie in the polygon");
            parts.push(ReachPart::Lda(l));
        }
    }
    BoundaryReach { start: *s, bfil: b, parts }
}

fn mirror_bfil(b: &Bfil, mpoly: &ConvexPolygon) -> Bfil {
    Bfil {
        case: b.case,
        entries: b
            .entries
            .iter()
            .map(|e| BfilEntry { disk: e.disk.mirrored(), config: e.config.map(|c| c.mirrored(mpoly)), role: e.role })
            .collect(),
    }
}

pub(crate) fn mirror_part(p: &ReachPart, original: &ConvexPolygon) -> ReachPart {
    match p {
        ReachPart::OutsideCore => ReachPart::OutsideCore,
        ReachPart::Lda(l) => ReachPart::Lda(LdaRegion {
            source: l.source.mirrored(),
            side: match l.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
            region: l.region.mirrored(),
            exit_arc_end: -l.exit_arc_end,
            center: l.center.mirrored(),
            start_angle: -l.start_angle,
            sweep: l.sweep,
            poly: original.clone(),
        }),
    }
}

/// Region covered by `parts`, as an arrangement over their boundaries.
pub(crate) fn assemble(ctx: &ReachContext, parts: &[ReachPart]) -> ArcGon {
    let tol = ctx.poly.tolerance().len;
    if let [ReachPart::Lda(l)] = parts {
        return l.region.normalized(tol);
    }
    if parts.is_empty() {
        return ArcGon::empty();
    }
    let mut elements: Vec<Element> = ctx.poly.edges().map(Element::Segment).collect();
    let mut with_core = false;
    for p in parts {
        match p {
            ReachPart::Lda(l) => elements.extend(l.interior_elements()),
            ReachPart::OutsideCore => with_core = true,
        }
    }
    if with_core {
        if let Some(r) = &ctx.core.region {
            elements.extend(r.elements().copied());
        }
    }
    let poly = &ctx.poly;
    arrangement::boundary(&elements, |p| {
        poly.contains_point(p) && parts.iter().any(|q| q.contains_in_polygon(&ctx.core, p))
    })
}

pub fn reach_from_boundary(poly: &ConvexPolygon, s: &BoundaryConfiguration) -> ArcGon {
    let ctx = ReachContext::new(poly);
    let r = boundary_reach_parts(&ctx, s);
    assemble(&ctx, &r.parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rect(w: f64, h: f64) -> ConvexPolygon {
        ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, h), Point::new(0.0, h)])
            .unwrap()
    }

    #[test]
    fn lda_with_disk_inside() {
        let p = rect(10.0, 10.0);
        for pt in [Point::new(5.0, 0.0), Point::new(5.0, 5.0)] {
            let l = lda(&p, &Configuration::from_angle(pt, 0.0), Side::Left).unwrap();
            assert!(l.sweep().is_none());
            assert!((l.region.area() - (100.0 - PI)).abs() < 1e-9);
            assert!(!l.contains_point(pt + Point::new(0.0, 1.0)));
            assert!(l.contains_point(Point::new(1.0, 9.0)));
        }
    }

    #[test]
    fn lda_in_thin_rectangle() {
        let p = rect(10.0, 1.5);
        let l = lda(&p, &Configuration::from_angle(Point::new(1.0, 0.0), 0.0), Side::Left).unwrap();
        let phi = l.sweep().unwrap();
        assert!((phi - 2.0 * PI / 3.0).abs() < 1e-9, "{phi}");
        assert!(l.region.max_closure_gap() < 1e-9);
        // analytic membership and the boundary cycle agree on a grid
        for i in 0..100 {
            for j in 0..15 {
                let t = Point::new(0.05 + 0.1 * i as f64, 0.05 + 0.1 * j as f64);
                if l.region.boundary_distance(t) > 1e-6 {
                    assert_eq!(l.contains_point(t), l.region.contains_point(t), "{t:?}");
                }
            }
        }
    }

    #[test]
    fn right_side_mirrors_left() {
        let p = rect(10.0, 1.5);
        let l = lda(&p, &Configuration::from_angle(Point::new(9.0, 1.5), PI), Side::Left).unwrap();
        let r = lda(&p, &Configuration::from_angle(Point::new(9.0, 0.0), PI), Side::Right).unwrap();
        assert!((l.region.area() - r.region.area()).abs() < 1e-9);
        assert!(r.contains_point(Point::new(5.0, 1.4)));
        assert!(r.region.contains_point(Point::new(5.0, 1.4)));
    }

    #[test]
    fn blocking_examples() {
        let thin = rect(10.0, 1.5);
        let s1 = thin.boundary_configuration(0, 0.5, true);
        assert_eq!(blocking_config(&thin, &s1).config.offset, 0.5);
        let sq = rect(10.0, 10.0);
        let b = blocking_config(&sq, &sq.boundary_configuration(0, 5.0, true));
        assert!(b.found && (b.config.offset - 9.0).abs() < 1e-9);
        let b = blocking_config(&sq, &sq.boundary_configuration(0, 9.5, true));
        assert!((b.config.offset - 9.5).abs() < 1e-12);
    }

    #[test]
    fn square_candidates() {
        let sq = rect(10.0, 10.0);
        let c = candidate_configurations(&sq, &sq.boundary_configuration(0, 5.0, true)).unwrap();
        let centers: Vec<Point> = c.iter().map(|c| c.disk.center).collect();
        for want in [Point::new(9.0, 1.0), Point::new(9.0, 9.0)] {
            assert!(centers.iter().any(|p| p.dist(want) < 1e-9), "{centers:?}");
        }
        let thin = rect(10.0, 1.5);
        assert!(matches!(
            candidate_configurations(&thin, &thin.boundary_configuration(0, 0.5, true)),
            Err(ReachError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bfil_cases() {
        let thin = rect(10.0, 1.5);
        let b = bfil(&thin, &thin.boundary_configuration(0, 0.5, true));
        assert_eq!((b.case, b.len()), (BoundaryCase::Pocket, 1));
        let sq = rect(10.0, 10.0);
        let b = bfil(&sq, &sq.boundary_configuration(0, 5.0, true));
        assert_eq!((b.case, b.len()), (BoundaryCase::InFilling, 4));
        let sq3 = rect(3.0, 3.0);
        let b = bfil(&sq3, &sq3.boundary_configuration(0, 1.5, true));
        assert_eq!((b.case, b.len()), (BoundaryCase::InFilling, 4));
    }

    #[test]
    fn square_reach_excludes_core() {
        let sq3 = rect(3.0, 3.0);
        let r = reach_from_boundary(&sq3, &sq3.boundary_configuration(0, 1.5, true));
        let core = core_intersection(&compute_filling(&sq3));
        assert!((r.area() - (9.0 - core.area())).abs() < 1e-7, "{}", r.area());
        assert!(!r.contains_point(Point::new(1.5, 1.5)));
        let sq4 = rect(4.0, 4.0);
        let r = reach_from_boundary(&sq4, &sq4.boundary_configuration(0, 2.0, true));
        assert!((r.area() - 16.0).abs() < 1e-9);
        assert_eq!(r.arc_count(), 0);
    }

    #[test]
    fn pocket_case_is_exactly_lda() {
        let thin = rect(10.0, 1.5);
        let s = thin.boundary_configuration(0, 0.5, true);
        let r = reach_from_boundary(&thin, &s);
        let l = lda(&thin, &s.configuration(), Side::Left).unwrap();
        assert_eq!(r, l.region);
    }

    #[test]
    fn clockwise_start_is_mirrored() {
        let p = rect(10.0, 1.5);
        let s = p.boundary_configuration(2, 9.5, true);
        let cw = p.boundary_configuration(0, 0.5, false);
        let a = reach_from_boundary(&p, &s).area();
        let b = reach_from_boundary(&p, &cw).area();
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }
}
