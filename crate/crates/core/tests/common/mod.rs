#![allow(dead_code)]

use std::f64::consts::TAU;

use dubreach::{Configuration, ConvexPolygon, Point};
use rand::Rng;

pub fn rect(w: f64, h: f64) -> ConvexPolygon {
    ConvexPolygon::new(vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, h), Point::new(0.0, h)]).unwrap()
}

pub fn regular(k: usize, r: f64) -> ConvexPolygon {
    ConvexPolygon::new((0..k).map(|i| Point::polar(i as f64 * TAU / k as f64) * r).collect()).unwrap()
}

/// Random convex polygon with vertices on an axis-aligned ellipse.
pub fn random_poly(rng: &mut impl Rng, n: usize, radii: std::ops::Range<f64>) -> ConvexPolygon {
    loop {
        let rx = rng.gen_range(radii.clone());
        let ry = rng.gen_range(radii.clone());
        let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        a.sort_by(|x, y| x.total_cmp(y));
        let v: Vec<Point> = a.iter().map(|t| Point::new(rx * t.cos(), ry * t.sin())).collect();
        if let Ok(p) = ConvexPolygon::new(v) {
            return p;
        }
    }
}

pub fn random_point_in(rng: &mut impl Rng, p: &ConvexPolygon, min_depth: f64) -> Point {
    let (lo, hi) = p.bounding_box();
    loop {
        let t = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if p.depth(t) >= min_depth {
            return t;
        }
    }
}

pub fn random_interior_start(rng: &mut impl Rng, p: &ConvexPolygon) -> Configuration {
    Configuration::from_angle(random_point_in(rng, p, 0.05), rng.gen_range(0.0..TAU))
}

pub fn random_boundary_start(rng: &mut impl Rng, p: &ConvexPolygon) -> Configuration {
    let e = rng.gen_range(0..p.len());
    let a = p.vertex(e);
    let b = p.vertex((e + 1) % p.len());
    let q = a.lerp(b, rng.gen_range(0.1..0.9));
    let dir = if rng.gen_bool(0.5) { b - a } else { a - b };
    Configuration::from_angle(q, dir.angle())
}
