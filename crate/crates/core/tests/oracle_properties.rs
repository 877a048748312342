mod common;

use common::*;
use dubreach::boundary_reach::{lda, Side};
use dubreach::filling::{compute_filling, core_intersection};
use dubreach::oracle::{oracle_query, oracle_reach, GridSpec, OracleAnswer};
use dubreach::{reach, Configuration, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(x: f64, y: f64, h: f64) -> Configuration {
    Configuration::from_angle(Point::new(x, y), h)
}

#[test]
fn large_square_is_covered() {
    let p = rect(10.0, 10.0);
    let g = GridSpec::default();
    let grid = oracle_reach(&p, &cfg(5.0, 5.0, 0.0), &g).unwrap();
    let mut total = 0;
    let mut hit = 0;
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            if p.depth(grid.cell_center(ix, iy)) >= g.dx {
                total += 1;
                hit += grid.xy_occupied(ix, iy) as usize;
            }
        }
    }
    assert!(hit as f64 >= 0.99 * total as f64, "{hit}/{total}");
    assert_eq!(oracle_query(&p, &cfg(5.0, 5.0, 0.0), Point::new(1.0, 1.0), &g).unwrap(), OracleAnswer::Reachable);
}

#[test]
fn near_boundary_start_in_thin_rectangle_matches_lda() {
    let p = rect(10.0, 1.5);
    let s = cfg(0.5, 0.02, 0.0);
    let grid = oracle_reach(&p, &s, &GridSpec::default()).unwrap();
    let l = lda(&p, &s, Side::Left).unwrap().region.area();
    assert!((grid.area() - l).abs() <= 0.02 * l, "{} {}", grid.area(), l);
}

#[test]
fn boundary_start_never_enters_the_core() {
    let p = rect(3.0, 3.0);
    let core = core_intersection(&compute_filling(&p));
    let g = GridSpec::default();
    let grid = oracle_reach(&p, &cfg(1.5, 0.0, 0.0), &g).unwrap();
    assert!(grid.occupied_centers().all(|c| !core.contains(c, 2.0 * g.dx)));
}

#[test]
fn behind_the_center_of_a_small_square_is_unreachable() {
    let p = rect(3.0, 3.0);
    let s = cfg(1.5, 1.5, 0.0);
    let g = GridSpec::default();
    assert_eq!(oracle_query(&p, &s, Point::new(1.3, 1.5), &g).unwrap(), OracleAnswer::Unreachable);
}

#[test]
fn refinement_keeps_coarse_cells() {
    let p = rect(3.0, 3.0);
    let s = cfg(1.5, 0.0, 0.0);
    let coarse = GridSpec { dx: 0.04, dtheta: std::f64::consts::TAU / 180.0, step: 0.04 };
    let a = oracle_reach(&p, &s, &coarse).unwrap();
    let b = oracle_reach(&p, &s, &GridSpec::default()).unwrap();
    let fine: Vec<Point> = b.occupied_centers().collect();
    for c in a.occupied_centers() {
        assert!(fine.iter().any(|f| (f.x - c.x).abs() <= coarse.dx && (f.y - c.y).abs() <= coarse.dx), "{c:?}");
    }
}

#[test]
fn occupied_cells_are_analytically_reachable() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let g = GridSpec::default();
    for i in 0..6 {
        let p = random_poly(&mut rng, 3 + i, 1.5..3.0);
        let s = if i % 2 == 0 { random_interior_start(&mut rng, &p) } else { random_boundary_start(&mut rng, &p) };
        let r = reach(&p, &s).unwrap();
        let grid = oracle_reach(&p, &s, &g).unwrap();
        let bad = grid
            .occupied_centers()
            .filter(|&c| p.contains_point(c) && !r.contains_point(c) && r.region.boundary_distance(c) > g.dx + 1e-6)
            .count();
        assert_eq!(bad, 0, "fixture {i}");
    }
}
