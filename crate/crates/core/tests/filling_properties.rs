mod common;

use common::*;
use dubreach::filling::{compute_filling, compute_pockets, core_intersection, CenterHull};
use dubreach::Point;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hull_samples(rng: &mut ChaCha8Rng, hull: &CenterHull, n: usize) -> Vec<Point> {
    let v = hull.vertices();
    (0..n)
        .map(|_| {
            // random convex combination of the hull vertices
            let w: Vec<f64> = v.iter().map(|_| rng.gen_range(0.0..1.0f64)).collect();
            let sum: f64 = w.iter().sum();
            v.iter().zip(&w).fold(Point::new(0.0, 0.0), |acc, (p, wi)| acc + *p * (wi / sum))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn core_is_intersection_of_hull_vertex_disks(seed in any::<u64>(), n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 1.2..3.0);
        let fil = compute_filling(&p);
        prop_assume!(!fil.is_empty());
        let core = core_intersection(&fil);
        let verts = fil.center_hull.vertices();
        let inner = hull_samples(&mut rng, &fil.center_hull, 50);
        let (lo, hi) = p.bounding_box();
        for _ in 0..2000 {
            let t = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if verts.iter().any(|v| (v.dist(t) - 1.0).abs() < 1e-7) {
                continue;
            }
            let by_vertices = verts.iter().all(|v| v.dist(t) < 1.0);
            prop_assert_eq!(core.contains(t, 0.0), by_vertices, "{:?}", t);
            if by_vertices {
                prop_assert!(inner.iter().all(|c| c.dist(t) < 1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn mouth_points_lie_on_their_disk(seed in any::<u64>(), n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 1.2..4.0);
        let fil = compute_filling(&p);
        for pocket in compute_pockets(&p, &fil) {
            let c = pocket.bounding_disk.center;
            prop_assert!(fil.extreme_disks.iter().any(|d| d.center.dist(c) < 1e-9));
            for m in [pocket.mouth_points.0, pocket.mouth_points.1] {
                prop_assert!((m.dist(c) - 1.0).abs() <= 1e-9);
                prop_assert!(p.depth(m).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn filling_lies_in_polygon(seed in any::<u64>(), n in 3usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_poly(&mut rng, n, 1.2..4.0);
        let fil = compute_filling(&p);
        let (lo, hi) = p.bounding_box();
        for _ in 0..2000 {
            let t = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if fil.fil_region.contains_point(t) {
                prop_assert!(p.depth(t) >= -1e-6);
                prop_assert!(fil.covers(t, 1e-9));
            }
        }
    }
}
