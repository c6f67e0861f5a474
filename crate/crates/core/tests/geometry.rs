use levelpeaks_core::geom::{canonicalize, event_abscissas, intersect, is_simple, level_of, Interval, Line, LineSpec, Point};
use levelpeaks_core::oracle::ArrangementSweep;
use levelpeaks_core::random::{random_lines, random_rational, seeded_rng};
use levelpeaks_core::rational::{int, Rational};
use levelpeaks_core::{build_tree, Halfplane};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn events_match_pair_enumeration() {
    let mut rng = seeded_rng(101);
    for _ in 0..25 {
        let lines = random_lines(&mut rng, 10);
        let range = Interval::new(random_rational(&mut rng, 20, 3), int(25)).unwrap();
        let mut expected: Vec<Rational> = Vec::new();
        for i in 0..lines.len() {
            for j in 0..lines.len() {
                if let Some(p) = (i != j).then(|| intersect(&lines[i], &lines[j])).flatten() {
                    if range.contains(&p.x) && !expected.contains(&p.x) {
                        expected.push(p.x);
                    }
                }
            }
        }
        expected.sort();
        assert_eq!(event_abscissas(&lines, &range), expected);
    }
}

#[test]
fn level_of_matches_dual_halfplane_count() {
    let mut rng = seeded_rng(102);
    for _ in 0..30 {
        let lines = random_lines(&mut rng, 20);
        let duals: Vec<Point> = lines.iter().map(Line::dual).collect();
        let tree = build_tree(&duals).unwrap();
        for _ in 0..20 {
            let p = Point::new(random_rational(&mut rng, 10, 4), random_rational(&mut rng, 200, 4));
            assert_eq!(tree.halfplane_count(&Halfplane::lines_at_or_below(&p), false), level_of(&lines, &p));
        }
        // Points on a line count it.
        let p = Point::new(int(3), lines[0].eval(&int(3)));
        assert_eq!(tree.halfplane_count(&Halfplane::lines_at_or_below(&p), false), level_of(&lines, &p));
    }
}

#[test]
fn separating_duplicates_moves_levels_by_perturbation_scale_only() {
    let mut rng = seeded_rng(103);
    for _ in 0..20 {
        let mut specs: Vec<LineSpec> =
            (0..3).map(|_| LineSpec::sloped(random_rational(&mut rng, 9, 3), random_rational(&mut rng, 9, 3))).collect();
        specs.push(specs[0].clone());
        specs.push(specs[2].clone());
        let raw: Vec<Line> = specs
            .iter()
            .enumerate()
            .map(|(id, s)| match s {
                LineSpec::Sloped { a, b } => Line::new(id, a.clone(), b.clone()),
                LineSpec::Vertical { .. } => unreachable!(),
            })
            .collect();
        assert!(!is_simple(&raw));
        let canon = canonicalize(&specs).unwrap();
        assert!(is_simple(&canon.lines));
        let eps = canon.perturbation.clone().expect("duplicates force a perturbation");
        assert_ne!(canon.lines[0], canon.lines[3]);
        assert_ne!(canon.lines[2], canon.lines[4]);

        let range = Interval::new(int(-10), int(10)).unwrap();
        let before = ArrangementSweep::new(&raw, &range);
        let after = ArrangementSweep::new(&canon.lines, &range);
        let n = int(specs.len() as i64);
        for k in 1..=specs.len() {
            let (t0, t1) = (before.level(k), after.level(k));
            for _ in 0..10 {
                let x = Rational::new(rng.gen_range(-1000..=1000).into(), 100.into());
                let drift = (t0.trajectory.value_at(&x).unwrap() - t1.trajectory.value_at(&x).unwrap()).abs();
                let bound = &n * &eps * x.abs() + &n * &n * &eps * &eps;
                assert!(drift <= bound, "level {k} moved by {drift} at {x}, bound {bound}");
            }
        }
    }
}

fn arb_lines(max: usize) -> impl Strategy<Value = Vec<Line>> {
    (any::<u64>(), 1..=max).prop_map(|(seed, n)| random_lines(&mut seeded_rng(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_slopes_are_nonzero_and_lines_distinct(lines in arb_lines(12)) {
        prop_assert!(lines.iter().all(|l| !l.a.is_zero()));
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                prop_assert!(l1.a != l2.a || l1.b != l2.b);
            }
        }
    }

    #[test]
    fn events_are_strictly_ascending_and_order_free(lines in arb_lines(12), shift in 0usize..12) {
        let range = Interval::new(int(-30), int(30)).unwrap();
        let xs = event_abscissas(&lines, &range);
        prop_assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let mut rotated = lines.clone();
        rotated.rotate_left(shift % lines.len());
        rotated.reverse();
        prop_assert_eq!(event_abscissas(&rotated, &range), xs);
    }
}
