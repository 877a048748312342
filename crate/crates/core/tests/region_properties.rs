mod common;

use common::*;
use dubreach::{union, ArcGon, Point};
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_parts(rng: &mut ChaCha8Rng) -> Vec<ArcGon> {
    let mut parts: Vec<ArcGon> =
        (0..rng.gen_range(1..5)).map(|_| ArcGon::disk(Point::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))).collect();
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(3..7);
        parts.push(ArcGon::from_polygon(&random_poly(rng, n, 0.5..2.0)));
    }
    parts
}

fn sample(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn union_is_order_independent_and_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = random_parts(&mut rng);
        let a = union(&parts);
        let mut shuffled = parts.clone();
        shuffled.shuffle(&mut rng);
        let b = union(&shuffled);
        let twice = union(&[a.clone(), a.clone()]);
        for _ in 0..1000 {
            let t = sample(&mut rng);
            if a.boundary_distance(t) < 1e-6 {
                continue;
            }
            let truth = parts.iter().any(|p| p.contains_point(t));
            prop_assert_eq!(a.contains_point(t), truth);
            prop_assert_eq!(b.contains_point(t), truth);
            prop_assert_eq!(twice.contains_point(t), truth);
        }
    }

    #[test]
    fn union_cycles_are_closed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = union(&random_parts(&mut rng));
        prop_assert!(u.max_closure_gap() <= 1e-9);
    }

    #[test]
    fn inclusion_exclusion_of_areas(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ArcGon::disk(Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let n = rng.gen_range(3..7);
        let b = ArcGon::from_polygon(&random_poly(&mut rng, n, 0.5..2.0));
        let u = union(&[a.clone(), b.clone()]);
        let n = 40_000;
        let both = (0..n).filter(|_| { let t = sample(&mut rng); a.contains_point(t) && b.contains_point(t) }).count();
        let inter = 36.0 * both as f64 / n as f64;
        // binomial standard error of the estimate is below 0.09 here
        prop_assert!((u.area() + inter - a.area() - b.area()).abs() < 0.3);
    }
}
