mod common;

use common::*;
use dubreach::boundary_reach::{bfil, blocking_config, lda, reach_from_boundary, BfilRole, BoundaryCase, Side};
use dubreach::filling::{compute_filling, core_intersection};
use dubreach::witness::{approach_disk, validate_path};
use dubreach::{ConvexPolygon, Membership, Point};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BAND: f64 = 1e-6;

fn ccw_start(rng: &mut ChaCha8Rng, p: &ConvexPolygon) -> dubreach::BoundaryConfiguration {
    let e = rng.gen_range(0..p.len());
    p.boundary_configuration(e, rng.gen_range(0.1..0.9) * p.edge_len(e), true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pocket_start_reach_is_its_lda(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 1.0..4.0);
        let s = ccw_start(&mut rng, &p);
        if bfil(&p, &s).case == BoundaryCase::Pocket {
            let l = lda(&p, &s.configuration(), Side::Left).unwrap();
            prop_assert_eq!(reach_from_boundary(&p, &s), l.region);
        }
    }

    #[test]
    fn two_configurations_cover_the_edge(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 1.2..4.0);
        let s = ccw_start(&mut rng, &p);
        for e in bfil(&p, &s).entries.iter().filter(|e| e.role == BfilRole::FirstOnEdge) {
            let s1 = e.config.unwrap();
            let h1 = blocking_config(&p, &s1).config;
            let l1 = lda(&p, &s1.configuration(), Side::Left).unwrap();
            let lh = lda(&p, &h1.configuration(), Side::Left).unwrap();
            let off = rng.gen_range(s1.offset..=h1.offset.max(s1.offset));
            let s2 = p.boundary_configuration(s1.edge_index, off, true);
            let l2 = lda(&p, &s2.configuration(), Side::Left).unwrap();
            for _ in 0..300 {
                let t = random_point_in(&mut rng, &p, 0.0);
                if l2.contains_point(t) {
                    prop_assert!(
                        l1.contains(t, BAND) != Membership::Outside || lh.contains(t, BAND) != Membership::Outside,
                        "{:?}", t
                    );
                }
            }
        }
    }

    #[test]
    fn core_is_never_reached_from_the_filling_boundary(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, fil, core) = loop {
            let p = random_poly(&mut rng, n, 1.1..2.2);
            let fil = compute_filling(&p);
            let core = core_intersection(&fil);
            if core.region.is_some() {
                break (p, fil, core);
            }
        };
        // starts where an extreme disk touches an edge lie on the boundary of the filling
        for d in &fil.extreme_disks {
            for e in (0..p.len()).filter(|&e| (p.edge_distance(e, d.center) - 1.0).abs() < 1e-9) {
                let foot = d.center - p.inward_normal(e);
                let off = foot.dist(p.vertex(e));
                if off < 1e-6 || off > p.edge_len(e) - 1e-6 {
                    continue;
                }
                let s = p.boundary_configuration(e, off, true);
                let r = reach_from_boundary(&p, &s);
                for _ in 0..300 {
                    let t = random_point_in(&mut rng, &p, 0.0);
                    if core.contains(t, BAND) {
                        prop_assert!(!r.contains_point(t), "{:?} {:?}", s, t);
                    }
                }
            }
        }
    }

    #[test]
    fn every_bfil_disk_is_reached_tangentially(seed in any::<u64>(), n in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 1.0..4.0);
        let s = ccw_start(&mut rng, &p);
        let b = bfil(&p, &s);
        let centers: Vec<Point> = b.entries.iter().map(|e| e.disk.center).collect();
        for e in &b.entries {
            let path = approach_disk(&p, &s.configuration(), e.disk.center, &centers);
            prop_assert!(path.is_some(), "{:?}", e);
            let path = path.unwrap();
            prop_assert!(validate_path(&p, &path).max_polygon_violation <= BAND, "{:?}", e);
            prop_assert!((path.end().point.dist(e.disk.center) - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn larger_square_reaches_at_least_as_much() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let small = rect(4.0, 4.0);
    let big = rect(5.0, 4.5);
    for _ in 0..10 {
        let s = random_interior_start(&mut rng, &small);
        let a = dubreach::reach(&small, &s).unwrap();
        let b = dubreach::reach(&big, &s).unwrap();
        for _ in 0..300 {
            let t = random_point_in(&mut rng, &small, 0.0);
            if a.contains(t, BAND) == Membership::Inside {
                assert!(b.contains_point(t), "{s:?} {t:?}");
            }
        }
    }
}

#[test]
fn bfil_case_examples() {
    let _ = Point::new(0.0, 0.0);
    let thin = rect(10.0, 1.5);
    let s = thin.boundary_configuration(0, 0.5, true);
    assert_eq!(bfil(&thin, &s).case, BoundaryCase::Pocket);
    let sq = rect(10.0, 10.0);
    let s = sq.boundary_configuration(0, 5.0, true);
    assert_eq!(bfil(&sq, &s).case, BoundaryCase::InFilling);
}
