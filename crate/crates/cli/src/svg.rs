//! Deterministic SVG rendering of a reach result.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use dubreach::geometry::ArcElement;
use dubreach::{ArcGon, CurvaturePath, Element, Point, Primitive, ReachResult};

const MARGIN: f64 = 0.5;

/// Fixed six-decimal formatting with negative zero folded to zero.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.strip_prefix('-').is_some_and(|r| r.bytes().all(|b| b == b'0' || b == b'.')) {
        s[1..].to_string()
    } else {
        s
    }
}

fn pt(p: Point) -> String {
    format!("{} {}", num(p.x), num(p.y))
}

/// Arc command(s) from the current point, which must be `a.start()`.
fn arc_commands(a: &ArcElement, d: &mut String) {
    let sweep = a.sweep();
    let pieces = if sweep > PI + 1e-9 { 2 } else { 1 };
    let step = sweep / pieces as f64;
    let flag = if a.ccw { 1 } else { 0 };
    for i in 1..=pieces {
        let theta = if a.ccw { a.from_angle + step * i as f64 } else { a.from_angle - step * i as f64 };
        let end = if i == pieces { a.end() } else { a.center + Point::polar(theta) };
        let _ = write!(d, " A 1 1 0 0 {flag} {}", pt(end));
    }
}

/// Path data of one closed cycle.
pub fn cycle_path(cycle: &[Element]) -> String {
    let mut d = String::new();
    let Some(first) = cycle.first() else { return d };
    let _ = write!(d, "M {}", pt(first.start()));
    for e in cycle {
        match e {
            Element::Segment(s) => {
                let _ = write!(d, " L {}", pt(s.b));
            }
            Element::Arc(a) => arc_commands(a, &mut d),
        }
    }
    d.push_str(" Z");
    d
}

/// Path data of a curvature-bounded path.
pub fn curvature_path_data(path: &CurvaturePath) -> String {
    let joints = path.joints();
    let mut d = format!("M {}", pt(path.start.point));
    for (p, c) in path.primitives.iter().zip(&joints) {
        match *p {
            Primitive::Straight { length } => {
                let _ = write!(d, " L {}", pt(c.point + c.dir.vector() * length));
            }
            Primitive::Arc { turn, angle } => {
                let k = turn.sign();
                let center = c.point + c.dir.vector().perp() * k;
                let from = (c.point - center).angle();
                let a = ArcElement::with_sweep(center, from, angle.min(TAU), k > 0.0);
                if angle > 0.0 {
                    arc_commands(&a, &mut d);
                }
            }
        }
    }
    d
}

fn signed_area(cycle: &[Element]) -> f64 {
    ArcGon { cycles: vec![cycle.to_vec()] }.area()
}

pub fn render(r: &ReachResult, witness: Option<&CurvaturePath>) -> String {
    let poly = r.polygon();
    let (lo, hi) = poly.bounding_box();
    let (x0, y0) = (lo.x - MARGIN, lo.y - MARGIN);
    let (w, h) = (hi.x - lo.x + 2.0 * MARGIN, hi.y - lo.y + 2.0 * MARGIN);
    let stroke = 0.004 * w.max(h);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(x0),
        num(-(y0 + h)),
        num(w),
        num(h),
        num(600.0 * w / w.max(h)),
        num(600.0 * h / w.max(h)),
    );
    let _ = writeln!(
        out,
        r#"<style>.polygon{{fill:none;stroke:#222;stroke-width:{s}}}.reach{{fill:#8fbcdb;fill-opacity:0.6;stroke:#1f5f8b;stroke-width:{s}}}.reach.hole{{fill:#fff;fill-opacity:1}}.core{{fill:#e8a0a0;fill-opacity:0.5;stroke:none}}.bfil{{fill:none;stroke:#777;stroke-width:{s};stroke-dasharray:{dash} {dash}}}.start{{fill:#000;stroke:#000;stroke-width:{s}}}.witness{{fill:none;stroke:#d2691e;stroke-width:{w2}}}</style>"#,
        s = num(stroke),
        dash = num(4.0 * stroke),
        w2 = num(2.0 * stroke),
    );
    let _ = writeln!(out, r#"<g transform="scale(1 -1)">"#);

    for cycle in &r.region.cycles {
        let class = if signed_area(cycle) < 0.0 { "reach hole" } else { "reach" };
        let _ = writeln!(out, r#"<path class="{class}" d="{}"/>"#, cycle_path(cycle));
    }
    if let Some(core) = &r.core().region {
        for cycle in &core.cycles {
            let _ = writeln!(out, r#"<path class="core" d="{}"/>"#, cycle_path(cycle));
        }
    }

    let mut centers: Vec<Point> = Vec::new();
    for e in r.entries.iter().flat_map(|e| &e.bfil.entries) {
        let c = e.disk.center;
        if !centers.iter().any(|q| q.dist(c) < 1e-9) {
            centers.push(c);
        }
    }
    for c in centers {
        let _ = writeln!(out, r#"<circle class="bfil" cx="{}" cy="{}" r="1"/>"#, num(c.x), num(c.y));
    }

    let outline: Vec<String> = poly.vertices().iter().map(|&v| pt(v)).collect();
    let _ = writeln!(out, r#"<path class="polygon" d="M {} Z"/>"#, outline.join(" L "));

    let s = r.start;
    let d = s.dir.vector();
    let n = d.perp();
    let size = 0.05 * w.max(h);
    let tip = s.point + d * (3.0 * size);
    let _ = writeln!(
        out,
        r#"<path class="start" d="M {} L {} M {} L {} L {} Z"/>"#,
        pt(s.point),
        pt(tip),
        pt(tip + d * size),
        pt(tip + n * (0.5 * size)),
        pt(tip - n * (0.5 * size)),
    );

    if let Some(path) = witness {
        let _ = writeln!(out, r#"<path class="witness" d="{}"/>"#, curvature_path_data(path));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dubreach::{Configuration, ConvexPolygon};

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(1.5), "1.500000");
        assert_eq!(num(-2.25), "-2.250000");
    }

    #[test]
    fn full_circle_is_split() {
        let d = cycle_path(&[Element::Arc(ArcElement::full_circle(Point::new(0.0, 0.0), true))]);
        assert_eq!(d.matches(" A ").count(), 2);
        assert!(d.starts_with("M 1.000000 0.000000"));
        assert!(d.contains("A 1 1 0 0 1 -1.000000 0.000000"));
    }

    #[test]
    fn clockwise_arc_uses_zero_sweep_flag() {
        let a = ArcElement::with_sweep(Point::new(0.0, 0.0), 0.0, 0.5, false);
        let d = cycle_path(&[Element::Arc(a)]);
        assert!(d.contains(" A 1 1 0 0 0 "), "{d}");
    }

    #[test]
    fn witness_path_data() {
        let path = CurvaturePath {
            start: Configuration::from_angle(Point::new(0.0, 0.0), 0.0),
            primitives: vec![
                Primitive::Arc { turn: dubreach::Turn::L, angle: PI / 2.0 },
                Primitive::Straight { length: 2.0 },
            ],
        };
        let d = curvature_path_data(&path);
        assert_eq!(d, "M 0.000000 0.000000 A 1 1 0 0 1 1.000000 1.000000 L 1.000000 3.000000");
    }

    #[test]
    fn square_render_has_one_path_per_cycle() {
        let poly = ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(3.0, 3.0),
            Point::new(0.0, 3.0),
        ])
        .unwrap();
        let r = dubreach::reach(&poly, &Configuration::from_angle(Point::new(1.5, 1.5), 0.0)).unwrap();
        let svg = render(&r, None);
        assert_eq!(svg.matches(r#"class="reach"#).count(), r.region.cycles.len());
        assert_eq!(svg.matches(r#"class="polygon""#).count(), 1);
        assert_eq!(svg.matches(r#"class="start""#).count(), 1);
    }
}
