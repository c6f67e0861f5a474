use levelpeaks_core::geom::{gap_sample, Interval, Point};
use levelpeaks_core::oracle::{mst_at, sbe_trajectory, threshold_at, threshold_extrema};
use levelpeaks_core::peak::PeakKind;
use levelpeaks_core::pmst::{
    d_bound, sbe_all_peaks, sbe_bounded, sbe_decision, sbe_extrema, sbe_one_shot, sbe_one_shot_c, two_shot_forest,
    ParamGraph, SbeDecision, UnionFind,
};
use levelpeaks_core::random::{random_graph, random_rational, seeded_rng};
use levelpeaks_core::rational::{int, Rational};
use proptest::prelude::*;
use rand::Rng;

fn graph<R: Rng>(rng: &mut R, max_k: usize, max_n: usize) -> ParamGraph {
    let k = rng.gen_range(3..=max_k);
    let n = rng.gen_range(k - 1..=max_n.min(k * (k + 1) / 2));
    random_graph(rng, k, n).unwrap()
}

fn range<R: Rng>(rng: &mut R) -> Interval {
    let a = random_rational(rng, 30, 4);
    let b = random_rational(rng, 30, 4);
    if a <= b { Interval::new(a, b).unwrap() } else { Interval::new(b, a).unwrap() }
}

#[test]
fn one_shot_matches_kruskal() {
    let mut rng = seeded_rng(301);
    for _ in 0..60 {
        let g = graph(&mut rng, 12, 40);
        for _ in 0..10 {
            let x = random_rational(&mut rng, 40, 9);
            let fast = sbe_one_shot(&g, &x).unwrap();
            let slow = mst_at(g.nodes(), g.edges(), &x).unwrap();
            assert_eq!((fast.edge.id, &fast.weight), (slow.bottleneck, &slow.weight));
            assert_eq!(fast.edge.weight(&x), fast.weight);
        }
        // Integer abscissas hit ties more often.
        for x in -3..=3 {
            let fast = sbe_one_shot(&g, &int(x)).unwrap();
            assert_eq!(fast.edge.id, mst_at(g.nodes(), g.edges(), &int(x)).unwrap().bottleneck);
        }
    }
}

#[test]
fn truncated_one_shot_matches_threshold() {
    let mut rng = seeded_rng(302);
    for _ in 0..40 {
        let g = graph(&mut rng, 10, 30);
        for c in 1..g.nodes() {
            let x = random_rational(&mut rng, 20, 5);
            assert_eq!(sbe_one_shot_c(&g, &x, c).unwrap().weight, threshold_at(g.nodes(), g.edges(), &x, c).unwrap());
        }
    }
}

#[test]
fn two_shot_matches_brute_filter() {
    let mut rng = seeded_rng(303);
    for _ in 0..60 {
        let g = graph(&mut rng, 12, 40);
        for _ in 0..10 {
            let x0 = random_rational(&mut rng, 20, 3);
            let x1 = &x0 + int(rng.gen_range(1..10));
            let p0 = Point::new(x0, random_rational(&mut rng, 60, 3));
            let p1 = Point::new(x1, random_rational(&mut rng, 60, 3));
            let mut forest = two_shot_forest(&g, &p0, &p1);
            let mut uf = UnionFind::new(g.nodes());
            for e in g.edges() {
                if e.weight(&p0.x) <= p0.y && e.weight(&p1.x) <= p1.y {
                    uf.union(e.u, e.v);
                }
            }
            assert_eq!(forest.component_labels(), uf.labels());
            assert_eq!(forest.edges.len() + forest.components(), g.nodes());
        }
    }
}

#[test]
fn decision_matches_trajectory_minimum() {
    let mut rng = seeded_rng(304);
    for _ in 0..40 {
        let g = graph(&mut rng, 10, 30);
        let r = range(&mut rng);
        let trajectory = sbe_trajectory(g.nodes(), g.edges(), &r).unwrap().trajectory;
        let (min, _) = trajectory.min();
        let (max, _) = trajectory.max();
        for y0 in [min.clone(), &min - Rational::new(1.into(), 1000.into()), max.clone(), random_rational(&mut rng, 60, 3)] {
            let exists = trajectory.values.iter().any(|v| v <= &y0);
            match sbe_decision(&g, &y0, &r, 1).unwrap() {
                SbeDecision::Infeasible => assert!(!exists),
                SbeDecision::Feasible { witness } => {
                    assert!(exists);
                    assert!(r.contains(&witness));
                    assert!(sbe_one_shot(&g, &witness).unwrap().weight <= y0);
                }
            }
            assert_eq!(sbe_bounded(&g, &y0, &r, 1).unwrap(), max <= y0);
        }
    }
}

#[test]
fn extrema_match_brute_enumeration() {
    let mut rng = seeded_rng(305);
    for _ in 0..40 {
        let g = graph(&mut rng, 9, 25);
        let r = range(&mut rng);
        for c in [1, g.nodes() - 1] {
            let fast = sbe_extrema(&g, &r, c).unwrap();
            let ((max, argmax), (min, argmin)) = threshold_extrema(g.nodes(), g.edges(), &r, c).unwrap();
            assert_eq!((&fast.max, &fast.argmax, &fast.min, &fast.argmin), (&max, &argmax, &min, &argmin));
            assert_eq!(sbe_one_shot_c(&g, &fast.argmax, c).unwrap().weight, fast.max);
        }
    }
}

#[test]
fn all_peaks_match_trajectory() {
    let mut rng = seeded_rng(306);
    for _ in 0..40 {
        let g = graph(&mut rng, 10, 30);
        let r = range(&mut rng);
        let trace = sbe_trajectory(g.nodes(), g.edges(), &r).unwrap();
        let found = sbe_all_peaks(&g, &r).unwrap();
        assert_eq!(found.peaks, trace.peaks);
    }
}

#[test]
fn d_bound_dominates_maximal_peaks() {
    let mut rng = seeded_rng(307);
    for _ in 0..60 {
        let g = graph(&mut rng, 10, 30);
        let r = range(&mut rng);
        let trace = sbe_trajectory(g.nodes(), g.edges(), &r).unwrap();
        assert!(d_bound(&g, &r) >= trace.count_kind(PeakKind::Maximal));
    }
}

#[test]
fn d_bound_sums_stay_below_node_count() {
    let mut rng = seeded_rng(308);
    for _ in 0..40 {
        let g = graph(&mut rng, 10, 30);
        let events = levelpeaks_core::geom::event_abscissas(&g.weight_lines(), &Interval::new(int(-1000), int(1000)).unwrap());
        let mut cuts: Vec<usize> = (0..8).map(|_| rng.gen_range(0..=events.len())).collect();
        cuts.sort();
        cuts.dedup();
        let total: usize = cuts
            .chunks(2)
            .filter(|c| c.len() == 2)
            .map(|c| d_bound(&g, &Interval::new(gap_sample(&events, c[0]), gap_sample(&events, c[1])).unwrap()))
            .sum();
        assert!(total <= g.nodes());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decision_is_monotone(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = graph(&mut rng, 8, 20);
        let r = range(&mut rng);
        let mut ys: Vec<Rational> = (0..10).map(|_| random_rational(&mut rng, 60, 4)).collect();
        ys.sort();
        let feasible: Vec<bool> = ys.iter().map(|y| sbe_decision(&g, y, &r, 1).unwrap().is_feasible()).collect();
        prop_assert!(feasible.windows(2).all(|w| !w[0] || w[1]));
    }

    #[test]
    fn bottleneck_edge_is_constant_between_crossings(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = graph(&mut rng, 8, 20);
        let events = levelpeaks_core::geom::event_abscissas(&g.weight_lines(), &Interval::new(int(-1000), int(1000)).unwrap());
        let gap = rng.gen_range(1..events.len().max(2));
        let (lo, hi) = match (events.get(gap - 1), events.get(gap)) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => (int(-1), int(1)),
        };
        let quarter = (&hi - &lo) / int(4);
        let e1 = sbe_one_shot(&g, &(&lo + &quarter)).unwrap().edge.id;
        let e2 = sbe_one_shot(&g, &(&hi - &quarter)).unwrap().edge.id;
        prop_assert_eq!(e1, e2);
    }
}
