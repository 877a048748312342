//! Boundary extraction from an arrangement of segments and unit arcs.
//!
//! Every input element is split at all mutual intersections, each piece is
//! kept when exactly one of its sides lies in the region, and the kept pieces
//! are linked into cycles with the region on their left.

use std::collections::HashMap;
use std::f64::consts::TAU;

use crate::geometry::{intersect_circle_segment, intersect_circles, normalize_angle, ArcElement, Point, SegmentElement, UnitDisk};
use crate::region::{ArcGon, Element};

const SNAP: f64 = 1e-7;
const ON_ELEMENT: f64 = 1e-8;
const MEET: f64 = 1e-9;
const SIDE_STEP: f64 = 1e-7;
const COINCIDENT: f64 = 1e-12;
const CHORD: f64 = 1e-4;

struct VertexGrid {
    points: Vec<Point>,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl VertexGrid {
    fn new() -> Self {
        Self { points: Vec::new(), cells: HashMap::new() }
    }

    fn cell(p: Point) -> (i64, i64) {
        ((p.x / SNAP).floor() as i64, (p.y / SNAP).floor() as i64)
    }

    fn snap(&mut self, p: Point) -> usize {
        let (cx, cy) = Self::cell(p);
        let mut best: Option<(f64, usize)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) {
                    for &id in ids {
                        let d = self.points[id].dist(p);
                        if d <= SNAP && best.map_or(true, |(bd, _)| d < bd) {
                            best = Some((d, id));
                        }
                    }
                }
            }
        }
        if let Some((_, id)) = best {
            return id;
        }
        let id = self.points.len();
        self.points.push(p);
        self.cells.entry((cx, cy)).or_default().push(id);
        id
    }
}

/// Arclength parameter of a point assumed to lie on `e`.
fn param_of(e: &Element, p: Point) -> f64 {
    match e {
        Element::Segment(s) => s.project(p).clamp(0.0, 1.0) * s.length(),
        Element::Arc(a) => {
            let sw = a.sweep();
            match a.offset_of_angle((p - a.center).angle(), 1e-6) {
                Some(o) => o.clamp(0.0, sw),
                None => 0.0,
            }
        }
    }
}

fn on_element(e: &Element, p: Point) -> bool {
    e.distance(p) <= ON_ELEMENT
}

fn overlaps(a: &(Point, Point), b: &(Point, Point)) -> bool {
    let m = 1e-6;
    a.0.x <= b.1.x + m && b.0.x <= a.1.x + m && a.0.y <= b.1.y + m && b.0.y <= a.1.y + m
}

fn crossing_points(e: &Element, f: &Element) -> Vec<Point> {
    let mut out = Vec::new();
    match (e, f) {
        (Element::Segment(s), Element::Segment(t)) => {
            let d1 = s.b - s.a;
            let d2 = t.b - t.a;
            let den = d1.cross(d2);
            if den.abs() > 1e-12 * d1.norm() * d2.norm() {
                let w = t.a - s.a;
                let u = w.cross(d2) / den;
                let v = w.cross(d1) / den;
                let (eu, ev) = (MEET / d1.norm(), MEET / d2.norm());
                if (-eu..=1.0 + eu).contains(&u) && (-ev..=1.0 + ev).contains(&v) {
                    out.push(s.a + d1 * u.clamp(0.0, 1.0));
                }
            }
        }
        (Element::Segment(s), Element::Arc(a)) | (Element::Arc(a), Element::Segment(s)) => {
            for p in intersect_circle_segment(&UnitDisk::new(a.center), s, MEET) {
                if a.offset_of_angle((p - a.center).angle(), 1e-9).is_some() {
                    out.push(p);
                }
            }
        }
        (Element::Arc(a), Element::Arc(b)) => {
            if let Ok(ps) = intersect_circles(&UnitDisk::new(a.center), &UnitDisk::new(b.center), MEET) {
                for p in ps {
                    if a.offset_of_angle((p - a.center).angle(), 1e-9).is_some()
                        && b.offset_of_angle((p - b.center).angle(), 1e-9).is_some()
                    {
                        out.push(p);
                    }
                }
            }
        }
    }
    for (x, y) in [(e, f), (f, e)] {
        for p in [x.start(), x.end()] {
            if on_element(y, p) {
                out.push(p);
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Piece {
    elem: Element,
    from: usize,
    to: usize,
}

impl Piece {
    fn reversed(&self) -> Self {
        Self { elem: self.elem.reversed(), from: self.to, to: self.from }
    }

    /// Direction leaving the start vertex, from a short chord.
    fn out_dir(&self) -> Point {
        let s = CHORD.min(0.5 * self.elem.length());
        self.elem.point_at(s) - self.elem.start()
    }

    /// Direction from the end vertex back into the piece.
    fn back_dir(&self) -> Point {
        let len = self.elem.length();
        let s = CHORD.min(0.5 * len);
        self.elem.point_at(len - s) - self.elem.end()
    }
}

fn sub_element(e: &Element, s0: f64, s1: f64, p0: Point, p1: Point) -> Element {
    match e {
        Element::Segment(_) => Element::Segment(SegmentElement::new(p0, p1)),
        Element::Arc(a) => {
            let from = (p0 - a.center).angle();
            let raw = (p1 - a.center).angle();
            let nominal = s1 - s0;
            let dir = if a.ccw { raw - from } else { from - raw };
            let sweep = nominal + normalize_angle(dir - nominal);
            let sweep = if sweep <= 0.0 { nominal } else { sweep.min(TAU) };
            Element::Arc(ArcElement::with_sweep(a.center, from, sweep, a.ccw))
        }
    }
}

/// Boundary of `{p : inside(p)}`, assuming that boundary is contained in the
/// union of `elements`.
pub(crate) fn boundary<F: Fn(Point) -> bool>(elements: &[Element], inside: F) -> ArcGon {
    let elements: Vec<Element> = elements.iter().copied().filter(|e| e.length() > MEET).collect();
    let boxes: Vec<(Point, Point)> = elements.iter().map(|e| e.bbox()).collect();
    let mut grid = VertexGrid::new();
    let mut cuts: Vec<Vec<(f64, usize)>> = elements
        .iter()
        .map(|e| {
            let a = grid.snap(e.start());
            let b = grid.snap(e.end());
            vec![(0.0, a), (e.length(), b)]
        })
        .collect();

    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if !overlaps(&boxes[i], &boxes[j]) {
                continue;
            }
            for p in crossing_points(&elements[i], &elements[j]) {
                let id = grid.snap(p);
                cuts[i].push((param_of(&elements[i], p), id));
                cuts[j].push((param_of(&elements[j], p), id));
            }
        }
    }

    // split into pieces, dropping duplicates shared by several inputs
    let mut pieces: Vec<Piece> = Vec::new();
    let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (e, cut) in elements.iter().zip(cuts.iter_mut()) {
        cut.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        cut.dedup_by(|b, a| a.1 == b.1 && (b.0 - a.0) < 1e-6);
        for w in cut.windows(2) {
            let ((s0, v0), (s1, v1)) = (w[0], w[1]);
            if v0 == v1 && s1 - s0 < 1e-6 {
                continue;
            }
            let elem = sub_element(e, s0, s1, grid.points[v0], grid.points[v1]);
            let mid = elem.point_at(0.5 * elem.length());
            let key = (v0.min(v1), v0.max(v1));
            let dup = by_ends.get(&key).map_or(false, |ids| {
                ids.iter().any(|&k| {
                    let q = &pieces[k].elem;
                    q.point_at(0.5 * q.length()).dist(mid) < 1e-6
                })
            });
            if dup {
                continue;
            }
            by_ends.entry(key).or_default().push(pieces.len());
            pieces.push(Piece { elem, from: v0, to: v1 });
        }
    }

    // classify
    let mut kept: Vec<Piece> = Vec::new();
    for p in &pieces {
        let len = p.elem.length();
        let m = p.elem.point_at(0.5 * len);
        let n = p.elem.tangent_at(0.5 * len).perp();
        // stay closer to this piece than to any other element
        let clearance = elements
            .iter()
            .zip(&boxes)
            .filter(|(_, (lo, hi))| {
                m.x >= lo.x - SIDE_STEP && m.x <= hi.x + SIDE_STEP && m.y >= lo.y - SIDE_STEP && m.y <= hi.y + SIDE_STEP
            })
            .map(|(e, _)| e.distance(m))
            .filter(|&d| d > COINCIDENT)
            .fold(f64::INFINITY, f64::min);
        let eps = SIDE_STEP.min(0.25 * len).min(0.5 * clearance);
        let left = inside(m + n * eps);
        let right = inside(m - n * eps);
        match (left, right) {
            (true, false) => kept.push(*p),
            (false, true) => kept.push(p.reversed()),
            _ => {}
        }
    }

    // link
    let mut outgoing: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, p) in kept.iter().enumerate() {
        outgoing.entry(p.from).or_default().push(k);
    }
    let mut used = vec![false; kept.len()];
    let mut cycles = Vec::new();
    for first in 0..kept.len() {
        if used[first] {
            continue;
        }
        used[first] = true;
        let mut cycle = vec![first];
        let mut cur = first;
        let closed = loop {
            let back = kept[cur].back_dir();
            let next = outgoing
                .get(&kept[cur].to)
                .into_iter()
                .flatten()
                .copied()
                .filter(|&k| !used[k] || k == first)
                .min_by(|&a, &b| {
                    cw_angle(back, kept[a].out_dir()).partial_cmp(&cw_angle(back, kept[b].out_dir())).unwrap()
                });
            match next {
                Some(k) if k == first => break true,
                Some(k) => {
                    used[k] = true;
                    cycle.push(k);
                    cur = k;
                }
                None => break false,
            }
        };
        if closed {
            cycles.push(close_cycle(cycle.iter().map(|&k| kept[k].elem).collect()));
        }
    }
    ArcGon { cycles }.normalized(1e-9)
}

/// Clockwise angle from `a` to `b`, in `(0, 2π]`.
fn cw_angle(a: Point, b: Point) -> f64 {
    let t = -a.cross(b).atan2(a.dot(b));
    if t <= 0.0 {
        t + TAU
    } else {
        t
    }
}

/// Removes residual joint gaps left by vertex snapping.
fn close_cycle(mut c: Vec<Element>) -> Vec<Element> {
    let n = c.len();
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (c[i], c[j]);
        match (a, b) {
            (_, Element::Segment(mut s)) => {
                s.a = a.end();
                c[j] = Element::Segment(s);
            }
            (Element::Segment(mut s), Element::Arc(_)) => {
                s.b = b.start();
                c[i] = Element::Segment(s);
            }
            (Element::Arc(_), Element::Arc(mut q)) => {
                let from = (a.end() - q.center).angle();
                let sweep = q.sweep();
                let end = q.to_angle;
                q.from_angle = from;
                let sw = if q.ccw { end - from } else { from - end };
                let sw = sweep + normalize_angle(sw - sweep);
                q.to_angle = if q.ccw { from + sw } else { from - sw };
                c[j] = Element::Arc(q);
            }
        }
    }
    c
}
