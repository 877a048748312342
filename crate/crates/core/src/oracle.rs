//! Brute-force reachability on a discretized configuration space.
//!
//! States are expanded breadth first with three motion primitives (full
//! left, straight, full right) of fixed arclength. Each (x, y, heading) cell
//! keeps the continuous state that reached it first.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{ReachError, Result};
use crate::geometry::{Configuration, Point};
use crate::polygon::ConvexPolygon;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dx: f64,
    pub dtheta: f64,
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { dx: 0.02, dtheta: TAU / 360.0, step: 0.02 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.dx, self.dtheta, self.step].iter().all(|v| v.is_finite() && *v > 0.0) && self.step <= self.dx;
        if ok {
            Ok(())
        } else {
            Err(ReachError::DegenerateInput("grid spacing must be positive with step <= dx"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleAnswer {
    Reachable,
    Unreachable,
    Uncertain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReachGrid {
    pub spec: GridSpec,
    pub origin: Point,
    pub nx: usize,
    pub ny: usize,
    pub ntheta: usize,
    occupancy: Vec<u64>,
    mask: Vec<bool>,
    /// Cells whose center lies in the polygon.
    inside: Vec<bool>,
}

impl ReachGrid {
    fn cell_xy(&self, p: Point) -> Option<(usize, usize)> {
        let fx = ((p.x - self.origin.x) / self.spec.dx).floor();
        let fy = ((p.y - self.origin.y) / self.spec.dx).floor();
        if fx < 0.0 || fy < 0.0 || fx >= self.nx as f64 || fy >= self.ny as f64 {
            None
        } else {
            Some((fx as usize, fy as usize))
        }
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> Point {
        Point::new(
            self.origin.x + (ix as f64 + 0.5) * self.spec.dx,
            self.origin.y + (iy as f64 + 0.5) * self.spec.dx,
        )
    }

    pub fn occupied(&self, ix: usize, iy: usize, itheta: usize) -> bool {
        let k = (iy * self.nx + ix) * self.ntheta + itheta;
        self.occupancy[k / 64] >> (k % 64) & 1 == 1
    }

    /// Projection of the occupancy to the plane.
    pub fn xy_occupied(&self, ix: usize, iy: usize) -> bool {
        self.mask[iy * self.nx + ix]
    }

    /// Centers of the cells of the projected mask.
    pub fn occupied_centers(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.ny)
            .flat_map(move |iy| (0..self.nx).map(move |ix| (ix, iy)))
            .filter(|&(ix, iy)| self.xy_occupied(ix, iy))
            .map(|(ix, iy)| self.cell_center(ix, iy))
    }

    pub fn occupied_cells(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn area(&self) -> f64 {
        self.occupied_cells() as f64 * self.spec.dx * self.spec.dx
    }

    fn neighbourhood(&self, ix: usize, iy: usize, r: isize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        (-r..=r).flat_map(move |dy| (-r..=r).map(move |dx| (ix as isize + dx, iy as isize + dy))).filter_map(
            move |(x, y)| (x >= 0 && y >= 0 && x < nx && y < ny).then_some((x as usize, y as usize)),
        )
    }

    pub fn query(&self, t: Point) -> OracleAnswer {
        let Some((ix, iy)) = self.cell_xy(t) else { return OracleAnswer::Unreachable };
        let mut occ = false;
        let mut free = false;
        for (x, y) in self.neighbourhood(ix, iy, 2) {
            let k = y * self.nx + x;
            if self.mask[k] {
                occ = true;
            } else if self.inside[k] {
                free = true;
            }
        }
        if occ && free {
            return OracleAnswer::Uncertain;
        }
        if self.neighbourhood(ix, iy, 1).any(|(x, y)| self.mask[y * self.nx + x]) {
            OracleAnswer::Reachable
        } else {
            OracleAnswer::Unreachable
        }
    }

    /// Plain-text export: a header followed by one run-length encoded row
    /// per line, bottom row first, runs alternating free/occupied starting
    /// with free.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "REACHGRID 1");
        let _ = writeln!(s, "width {} height {}", self.nx, self.ny);
        let _ = writeln!(s, "origin {} {}", self.origin.x, self.origin.y);
        let _ = writeln!(s, "dx {}", self.spec.dx);
        for iy in 0..self.ny {
            let row = &self.mask[iy * self.nx..(iy + 1) * self.nx];
            let mut runs = Vec::new();
            let mut cur = false;
            let mut len = 0usize;
            for &b in row {
                if b == cur {
                    len += 1;
                } else {
                    runs.push(len.to_string());
                    cur = b;
                    len = 1;
                }
            }
            runs.push(len.to_string());
            let _ = writeln!(s, "{}", runs.join(" "));
        }
        s
    }
}

#[derive(Clone, Copy)]
struct State {
    x: f64,
    y: f64,
    theta: f64,
}

pub fn oracle_reach(poly: &ConvexPolygon, s: &Configuration, g: &GridSpec) -> Result<ReachGrid> {
    g.validate()?;
    if !poly.contains_point(s.point) {
        return Err(ReachError::StartOutsidePolygon);
    }
    let (lo, hi) = poly.bounding_box();
    let dx = g.dx;
    let origin = Point::new(lo.x - dx, lo.y - dx);
    let nx = ((hi.x - origin.x) / dx).ceil() as usize + 1;
    let ny = ((hi.y - origin.y) / dx).ceil() as usize + 1;
    let ntheta = (TAU / g.dtheta).round().max(1.0) as usize;
    let cells = nx * ny * ntheta;
    let mut grid = ReachGrid {
        spec: *g,
        origin,
        nx,
        ny,
        ntheta,
        occupancy: vec![0; cells.div_ceil(64)],
        mask: vec![false; nx * ny],
        inside: vec![false; nx * ny],
    };
    // cells deep enough that any primitive from them stays inside
    let margin = dx * std::f64::consts::SQRT_2 + g.step;
    let mut deep = vec![false; nx * ny];
    for iy in 0..ny {
        for ix in 0..nx {
            let d = poly.depth(grid.cell_center(ix, iy));
            grid.inside[iy * nx + ix] = d >= 0.0;
            deep[iy * nx + ix] = d > margin;
        }
    }
    let tol = 1e-9;
    let inside = |p: Point| (0..poly.len()).all(|i| poly.edge_distance(i, p) >= -tol);

    let dth = g.dtheta;
    let key = |grid: &ReachGrid, st: &State| -> Option<(usize, usize)> {
        let (ix, iy) = grid.cell_xy(Point::new(st.x, st.y))?;
        let it = ((st.theta.rem_euclid(TAU) / dth) as usize).min(ntheta - 1);
        Some((iy * nx + ix, (iy * nx + ix) * ntheta + it))
    };
    let mark = |grid: &mut ReachGrid, st: &State| -> bool {
        let Some((xy, k)) = key(grid, st) else { return false };
        let w = &mut grid.occupancy[k / 64];
        if *w >> (k % 64) & 1 == 1 {
            return false;
        }
        *w |= 1 << (k % 64);
        grid.mask[xy] = true;
        true
    };

    let start = State { x: s.point.x, y: s.point.y, theta: s.heading() };
    mark(&mut grid, &start);
    let mut frontier = vec![start];
    let mut next = Vec::new();
    let h = g.step;
    let (sh, ch) = h.sin_cos();
    let (sh2, ch2) = (0.5 * h).sin_cos();
    while !frontier.is_empty() {
        for st in &frontier {
            let (sn, cs) = st.theta.sin_cos();
            let is_deep = grid.cell_xy(Point::new(st.x, st.y)).is_some_and(|(ix, iy)| deep[iy * nx + ix]);
            // left arc, straight, right arc; curvature sign k
            for k in [1.0, 0.0, -1.0] {
                let (end, mid, theta) = if k == 0.0 {
                    (
                        Point::new(st.x + h * cs, st.y + h * sn),
                        Point::new(st.x + 0.5 * h * cs, st.y + 0.5 * h * sn),
                        st.theta,
                    )
                } else {
                    // rotate the heading by k*h; displacement is the chord of the unit arc
                    let arc = |s2: f64, c2: f64| {
                        let (s1, c1) = (sn * c2 + k * cs * s2, cs * c2 - k * sn * s2);
                        Point::new(st.x + k * (s1 - sn), st.y - k * (c1 - cs))
                    };
                    (arc(sh, ch), arc(sh2, ch2), st.theta + k * h)
                };
                if !is_deep && !(inside(end) && inside(mid)) {
                    continue;
                }
                let ns = State { x: end.x, y: end.y, theta };
                if mark(&mut grid, &ns) {
                    next.push(ns);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    Ok(grid)
}

pub fn oracle_query(poly: &ConvexPolygon, s: &Configuration, t: Point, g: &GridSpec) -> Result<OracleAnswer> {
    Ok(oracle_reach(poly, s, g)?.query(t))
}
