//! Unit-curvature paths: shortest free-plane paths and witness paths that
//! certify a point as reachable inside the polygon.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::boundary_reach::{lda, BfilEntry, BfilRole, ReachContext, Side};
use crate::canonical::{reach_in, ReachResult};
use crate::error::{ReachError, Result};
use crate::geometry::{left_disk, mod_tau, right_disk, ArcElement, Configuration, Direction, Point};
use crate::polygon::{BoundaryConfiguration, ConvexPolygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn sign(self) -> f64 {
        match self {
            Turn::L => 1.0,
            Turn::R => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Turn::L => Turn::R,
            Turn::R => Turn::L,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Primitive {
    /// Unit-radius arc; `angle` is the unsigned turning angle.
    Arc { turn: Turn, angle: f64 },
    Straight { length: f64 },
}

impl Primitive {
    pub fn length(&self) -> f64 {
        match *self {
            Primitive::Arc { angle, .. } => angle,
            Primitive::Straight { length } => length,
        }
    }

    fn letter(&self) -> char {
        match self {
            Primitive::Arc { .. } => 'C',
            Primitive::Straight { .. } => 'S',
        }
    }

    /// Pose after travelling `s` along this primitive from `c`.
    fn advance(&self, c: &Configuration, s: f64) -> Configuration {
        let d = c.dir.vector();
        match *self {
            Primitive::Straight { .. } => Configuration::new(c.point + d * s, c.dir),
            Primitive::Arc { turn, .. } => {
                let k = turn.sign();
                let center = c.point + d.perp() * k;
                let nd = d.rotate(k * s);
                Configuration::new(center - nd.perp() * k, Direction { ux: nd.x, uy: nd.y })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvaturePath {
    pub start: Configuration,
    pub primitives: Vec<Primitive>,
}

impl CurvaturePath {
    pub fn length(&self) -> f64 {
        self.primitives.iter().map(Primitive::length).sum()
    }

    /// Poses at the joints, starting with `start` and ending with the final
    /// pose.
    pub fn joints(&self) -> Vec<Configuration> {
        let mut out = vec![self.start];
        for p in &self.primitives {
            let c = *out.last().expect("nonempty");
            out.push(p.advance(&c, p.length()));
        }
        out
    }

    pub fn end(&self) -> Configuration {
        *self.joints().last().expect("nonempty")
    }

    pub fn point_at(&self, s: f64) -> Point {
        let mut c = self.start;
        let mut rest = s.max(0.0);
        for p in &self.primitives {
            let l = p.length();
            if rest <= l {
                return p.advance(&c, rest).point;
            }
            c = p.advance(&c, l);
            rest -= l;
        }
        c.point
    }

    /// Sequence of primitive letters, e.g. `"CCSCS"`.
    pub fn schema(&self) -> String {
        self.primitives.iter().map(Primitive::letter).collect()
    }

    /// Copy without zero-length primitives.
    pub fn normalized(&self, tol: f64) -> Self {
        Self { start: self.start, primitives: self.primitives.iter().copied().filter(|p| p.length() > tol).collect() }
    }

    pub fn mirrored(&self) -> Self {
        Self {
            start: self.start.mirrored(),
            primitives: self
                .primitives
                .iter()
                .map(|p| match *p {
                    Primitive::Arc { turn, angle } => Primitive::Arc { turn: turn.flipped(), angle },
                    s => s,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathValidation {
    pub max_curvature_violation: f64,
    /// Largest distance by which a sample leaves the polygon.
    pub max_polygon_violation: f64,
    pub endpoint_error: f64,
}

impl PathValidation {
    pub fn within(&self, tol: f64) -> bool {
        self.max_curvature_violation <= tol && self.max_polygon_violation <= tol && self.endpoint_error <= tol
    }
}

const SAMPLE_STEP: f64 = 1e-3;

/// Sampled validation; the endpoint error is zero since no target is given.
pub fn validate_path(poly: &ConvexPolygon, path: &CurvaturePath) -> PathValidation {
    validate_path_to(poly, path, path.end().point)
}

pub fn validate_path_to(poly: &ConvexPolygon, path: &CurvaturePath, target: Point) -> PathValidation {
    let bad = path.primitives.iter().any(|p| !(p.length().is_finite() && p.length() >= 0.0));
    let mut worst = 0.0f64;
    let mut c = path.start;
    worst = worst.max(-poly.depth(c.point));
    for p in &path.primitives {
        let l = p.length();
        let n = (l / SAMPLE_STEP).ceil().max(1.0) as usize;
        for k in 1..=n {
            worst = worst.max(-poly.depth(p.advance(&c, l * k as f64 / n as f64).point));
        }
        c = p.advance(&c, l);
    }
    PathValidation {
        max_curvature_violation: if bad { f64::INFINITY } else { 0.0 },
        max_polygon_violation: worst,
        endpoint_error: c.point.dist(target),
    }
}

/// Exact largest excursion of the path outside the polygon.
fn exact_violation(poly: &ConvexPolygon, path: &CurvaturePath) -> f64 {
    let mut worst = -poly.depth(path.start.point);
    let mut c = path.start;
    for p in &path.primitives {
        let e = p.advance(&c, p.length());
        worst = worst.max(-poly.depth(e.point));
        if let Primitive::Arc { turn, angle } = *p {
            let k = turn.sign();
            let center = c.point + c.dir.vector().perp() * k;
            // counterclockwise angular range covered by the arc
            let a0 = (c.point - center).angle();
            let lo = if k > 0.0 { a0 } else { a0 - angle };
            for i in 0..poly.len() {
                let n = poly.inward_normal(i);
                if mod_tau((-n).angle() - lo) <= angle {
                    worst = worst.max(1.0 - poly.edge_distance(i, center));
                }
            }
        }
        c = e;
    }
    worst.max(0.0)
}

/// Arc of `turn` on the circle at `center`, from position angle `from` to
/// `to`.
fn arc_between(turn: Turn, from: f64, to: f64) -> Primitive {
    let angle = match turn {
        Turn::L => mod_tau(to - from),
        Turn::R => mod_tau(from - to),
    };
    Primitive::Arc { turn, angle: if angle > TAU - 1e-9 { 0.0 } else { angle } }
}

fn arc_of(a: &ArcElement) -> Primitive {
    Primitive::Arc { turn: if a.ccw { Turn::L } else { Turn::R }, angle: a.sweep() }
}

fn turn_center(c: &Configuration, turn: Turn) -> Point {
    match turn {
        Turn::L => left_disk(c).center,
        Turn::R => right_disk(c).center,
    }
}

/// Candidate in one of the six families; `None` if it does not exist.
pub fn dubins_family(a: &Configuration, b: &Configuration, family: [char; 3]) -> Option<CurvaturePath> {
    let turn = |ch: char| if ch == 'L' { Turn::L } else { Turn::R };
    let t1 = turn(family[0]);
    let t3 = turn(family[2]);
    let c1 = turn_center(a, t1);
    let c3 = turn_center(b, t3);
    let pa = (a.point - c1).angle();
    let pb = (b.point - c3).angle();
    let d = c3 - c1;
    let dist = d.norm();
    let primitives = if family[1] == 'S' {
        let (len, heading) = if t1 == t3 {
            (dist, d.angle())
        } else {
            if dist < 2.0 {
                return None;
            }
            let len = (dist * dist - 4.0).max(0.0).sqrt();
            let off = 2f64.atan2(len);
            (len, if t1 == Turn::L { d.angle() + off } else { d.angle() - off })
        };
        // position angle on a circle where the heading equals `heading`
        let at = |t: Turn| heading - t.sign() * FRAC_PI_2;
        vec![arc_between(t1, pa, at(t1)), Primitive::Straight { length: len }, arc_between(t3, at(t3), pb)]
    } else {
        if t1 != t3 || dist > 4.0 || dist < 1e-12 {
            return None;
        }
        let h = (4.0 - dist * dist / 4.0).max(0.0).sqrt();
        let mid = c1 + d * 0.5;
        let side = d.perp() * (1.0 / dist);
        let t2 = t1.flipped();
        let mut best: Option<Vec<Primitive>> = None;
        for sgn in [1.0, -1.0] {
            let cm = mid + side * (sgn * h);
            let q1 = (c1 + cm) * 0.5;
            let q2 = (cm + c3) * 0.5;
            let prims = vec![
                arc_between(t1, pa, (q1 - c1).angle()),
                arc_between(t2, (q1 - cm).angle(), (q2 - cm).angle()),
                arc_between(t3, (q2 - c3).angle(), pb),
            ];
            if prims[1].length() <= PI {
                continue;
            }
            let total: f64 = prims.iter().map(Primitive::length).sum();
            if best.as_ref().map_or(true, |b| total < b.iter().map(Primitive::length).sum()) {
                best = Some(prims);
            }
        }
        best?
    };
    Some(CurvaturePath { start: *a, primitives })
}

pub const DUBINS_FAMILIES: [[char; 3]; 6] =
    [['L', 'S', 'L'], ['R', 'S', 'R'], ['L', 'S', 'R'], ['R', 'S', 'L'], ['L', 'R', 'L'], ['R', 'L', 'R']];

/// Shortest path between two configurations in the obstacle-free plane.
pub fn dubins_shortest(a: &Configuration, b: &Configuration) -> CurvaturePath {
    DUBINS_FAMILIES
        .iter()
        .filter_map(|f| dubins_family(a, b, *f))
        .min_by(|x, y| x.length().total_cmp(&y.length()))
        .expect("the CSC families with equal turns always exist")
}

pub fn witness_path(poly: &ConvexPolygon, s: &Configuration, t: Point) -> Result<Option<CurvaturePath>> {
    let ctx = ReachContext::new(poly);
    let r = reach_in(&ctx, s)?;
    witness_from(&r, t)
}

/// Witness for `t` using an already computed reach result.
pub fn witness_from(r: &ReachResult, t: Point) -> Result<Option<CurvaturePath>> {
    let poly = r.polygon();
    if !poly.contains_point(t) {
        return Err(ReachError::TargetOutsidePolygon);
    }
    if !r.contains_point(t) {
        return Ok(None);
    }
    let tol = poly.tolerance().band;
    let accept = |path: CurvaturePath| -> Option<CurvaturePath> {
        let ok = exact_violation(poly, &path) <= tol && path.end().point.dist(t) <= tol;
        (ok && validate_path_to(poly, &path, t).within(tol)).then_some(path)
    };
    if let Some(da) = &r.da {
        for (l, turn) in [(&da.left, Turn::L), (&da.right, Turn::R)] {
            if let Some(path) = departure_path(l.center(), l.start_angle(), l.departure_angle(t), turn, r.start, t) {
                if let Some(p) = accept(path) {
                    return Ok(Some(p));
                }
            }
        }
    }
    let mpoly = poly.mirrored();
    for e in &r.entries {
        let prefix: Vec<Primitive> =
            e.prefix.map(|c| vec![arc_of(&c.first_arc), arc_of(&c.second_arc)]).unwrap_or_default();
        let found = if e.end.ccw {
            entry_paths(poly, r.start, &prefix, &e.end, &e.bfil.entries, t).into_iter().find_map(&accept)
        } else {
            let bm = e.end.mirrored(poly);
            let entries: Vec<BfilEntry> = e
                .bfil
                .entries
                .iter()
                .map(|x| BfilEntry { disk: x.disk.mirrored(), config: x.config.map(|c| c.mirrored(poly)), role: x.role })
                .collect();
            let pm = CurvaturePath { start: r.start, primitives: prefix }.mirrored();
            entry_paths(&mpoly, pm.start, &pm.primitives, &bm, &entries, t.mirrored())
                .into_iter()
                .map(|p| p.mirrored())
                .find_map(&accept)
        };
        if found.is_some() {
            return Ok(found);
        }
    }
    Err(ReachError::NoWitnessFound)
}

/// Arc on a side disk to the departure angle, then a straight segment.
fn departure_path(
    center: Point,
    start_angle: f64,
    departure: Option<f64>,
    turn: Turn,
    start: Configuration,
    t: Point,
) -> Option<CurvaturePath> {
    let theta = departure?;
    let arc = arc_between(turn, start_angle, theta);
    let len = tangent_len(center, t);
    Some(CurvaturePath { start, primitives: vec![arc, Primitive::Straight { length: len }] })
}

/// Length of the tangent from `t` to the unit circle at `center`.
fn tangent_len(center: Point, t: Point) -> f64 {
    ((t - center).norm_sq() - 1.0).max(0.0).sqrt()
}

/// Arc on the `turn` disk of `c`, then the common tangent to the unit
/// circle at `center` with the same turning sense. The path ends on that
/// circle, heading along it.
pub fn tangent_approach(c: &Configuration, turn: Turn, center: Point) -> CurvaturePath {
    if turn == Turn::R {
        return tangent_approach(&c.mirrored(), Turn::L, center.mirrored()).mirrored();
    }
    let o = left_disk(c).center;
    let v = center - o;
    let primitives = if v.norm() < 1e-9 {
        vec![Primitive::Arc { turn, angle: 0.0 }, Primitive::Straight { length: 0.0 }]
    } else {
        let phi = v.angle() - FRAC_PI_2;
        vec![arc_between(Turn::L, (c.point - o).angle(), phi), Primitive::Straight { length: v.norm() }]
    };
    CurvaturePath { start: *c, primitives }
}

/// Counterclockwise path from `c` ending tangent to the unit circle at
/// `target`: either straight from the left disk of `c` (CS) or through one
/// intermediate circle of `via` (CSCS), whichever first stays in `poly`.
pub fn approach_disk(poly: &ConvexPolygon, c: &Configuration, target: Point, via: &[Point]) -> Option<CurvaturePath> {
    let tol = poly.tolerance().band;
    let direct = tangent_approach(c, Turn::L, target);
    if exact_violation(poly, &direct) <= tol {
        return Some(direct);
    }
    via.iter().find_map(|&g| {
        let first = tangent_approach(c, Turn::L, g);
        if exact_violation(poly, &first) > tol {
            return None;
        }
        let mut path = first.clone();
        path.primitives.extend(tangent_approach(&first.end(), Turn::L, target).primitives);
        (exact_violation(poly, &path) <= tol).then_some(path)
    })
}

/// Candidate paths through the counterclockwise boundary configuration `b`:
/// along its left disk, a common tangent to a disk of `entries`, around that
/// disk, then straight to `t`.
fn entry_paths(
    poly: &ConvexPolygon,
    start: Configuration,
    prefix: &[Primitive],
    b: &BoundaryConfiguration,
    entries: &[BfilEntry],
    t: Point,
) -> Vec<CurvaturePath> {
    let own = BfilEntry { disk: left_disk(&b.configuration()), config: Some(*b), role: BfilRole::Start };
    let mut out = Vec::new();
    for e in std::iter::once(&own).chain(entries) {
        let f = e.disk.center;
        let departure = match e.config {
            Some(c) => match lda(poly, &c.configuration(), Side::Left) {
                Ok(l) => l.departure_angle(t),
                Err(_) => None,
            },
            None => {
                let v = t - f;
                (v.norm() >= 1.0 - 1e-9).then(|| v.angle() - (1.0 / v.norm()).min(1.0).acos())
            }
        };
        let Some(theta) = departure else { continue };
        let approach = tangent_approach(&b.configuration(), Turn::L, f);
        let arrive = (approach.end().point - f).angle();
        let mut prims = prefix.to_vec();
        let mut rest = approach.primitives.into_iter();
        match (prims.last_mut(), rest.next()) {
            (Some(Primitive::Arc { turn: Turn::L, angle }), Some(ext)) => *angle += ext.length(),
            (_, Some(ext)) => prims.push(ext),
            _ => {}
        }
        prims.extend(rest);
        prims.push(arc_between(Turn::L, arrive, theta));
        prims.push(Primitive::Straight { length: tangent_len(f, t) });
        out.push(CurvaturePath { start, primitives: prims });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(w: f64, h: f64) -> ConvexPolygon {
        ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, h), Point::new(0.0, h)])
            .unwrap()
    }

    fn cfg(x: f64, y: f64, h: f64) -> Configuration {
        Configuration::from_angle(Point::new(x, y), h)
    }

    #[test]
    fn dubins_trivial_cases() {
        let p = dubins_shortest(&cfg(0.0, 0.0, 0.0), &cfg(4.0, 0.0, 0.0));
        assert!((p.length() - 4.0).abs() < 1e-12);
        assert_eq!(p.normalized(1e-12).schema(), "S");
        let p = dubins_shortest(&cfg(0.0, 0.0, 0.0), &cfg(0.0, 0.0, 0.0));
        assert!(p.length() < 1e-12);
    }

    #[test]
    fn dubins_families_end_at_target() {
        let a = cfg(0.3, -0.2, 0.4);
        for b in [cfg(0.0, 4.0, 0.0), cfg(1.0, 0.5, 2.5), cfg(-3.0, 2.0, -1.0), cfg(0.5, 0.1, PI)] {
            for f in DUBINS_FAMILIES {
                if let Some(p) = dubins_family(&a, &b, f) {
                    let e = p.end();
                    assert!(e.point.dist(b.point) < 1e-9, "{f:?}");
                    assert!(mod_tau(e.heading() - b.heading() + 1e-12) < 1e-9, "{f:?}");
                }
            }
        }
    }

    #[test]
    fn straight_path_in_square() {
        let p = rect(10.0, 10.0);
        let w = witness_path(&p, &cfg(5.0, 5.0, 0.0), Point::new(8.0, 5.0)).unwrap().unwrap();
        let n = w.normalized(1e-12);
        assert_eq!(n.primitives, vec![Primitive::Straight { length: 3.0 }]);
    }

    #[test]
    fn validation_examples() {
        let p = rect(10.0, 10.0);
        let v = validate_path(&p, &CurvaturePath { start: cfg(5.0, 5.0, 0.0), primitives: vec![Primitive::Straight { length: 3.0 }] });
        assert_eq!(v.max_polygon_violation, 0.0);
        let lp = |x: f64| CurvaturePath {
            start: cfg(x, 4.0, 0.0),
            primitives: vec![Primitive::Arc { turn: Turn::L, angle: TAU }],
        };
        assert_eq!(validate_path(&p, &lp(5.0)).max_polygon_violation, 0.0);
        let v = validate_path(&p, &lp(0.5));
        assert!((v.max_polygon_violation - 0.5).abs() < 1e-6);
        assert!(validate_path(&p, &lp(0.5)).endpoint_error < 1e-12);
        assert!((exact_violation(&p, &lp(0.5)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn point_behind_start_needs_canonical_prefix() {
        let p = rect(4.0, 3.0);
        let s = cfg(2.0, 1.2, 0.0);
        let t = Point::new(1.0, 1.2);
        let r = crate::canonical::reach(&p, &s).unwrap();
        assert!(!r.da.as_ref().unwrap().contains_point(t));
        let w = witness_from(&r, t).unwrap().expect("reachable");
        assert!(validate_path_to(&p, &w, t).within(1e-6));
        assert_eq!(w.schema(), "CCSCS");
    }

    #[test]
    fn center_of_small_square_only_reaches_direct_access() {
        // both side disks leave the square almost at once
        let p = rect(3.0, 3.0);
        let s = cfg(1.5, 1.5, 0.0);
        assert_eq!(witness_path(&p, &s, Point::new(0.2, 0.2)).unwrap(), None);
        assert_eq!(witness_path(&p, &s, Point::new(1.3, 1.5)).unwrap(), None);
        let w = witness_path(&p, &s, Point::new(2.9, 1.6)).unwrap().expect("straight ahead");
        assert_eq!(w.schema(), "CS");
    }

    #[test]
    fn errors() {
        let p = rect(3.0, 3.0);
        assert_eq!(witness_path(&p, &cfg(5.0, 1.0, 0.0), Point::new(1.0, 1.0)), Err(ReachError::StartOutsidePolygon));
        assert_eq!(witness_path(&p, &cfg(1.0, 1.0, 0.0), Point::new(4.0, 1.0)), Err(ReachError::TargetOutsidePolygon));
    }
}
