use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use levelpeaks_core::random::{random_graph, random_lines, random_rational, seeded_rng};
use levelpeaks_core::rational::int;
use levelpeaks_core::{build_tree, sbe_one_shot, Halfplane, Interval, LevelInstance, Line, Point};

fn halfplane_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("halfplane_count");
    for exp in [8u32, 10, 12] {
        let n = 1usize << exp;
        let mut rng = seeded_rng(u64::from(exp));
        let duals: Vec<Point> = random_lines(&mut rng, n).iter().map(Line::dual).collect();
        let tree = build_tree(&duals).unwrap();
        let queries: Vec<Halfplane> = (0..64)
            .map(|_| Halfplane::lines_at_or_below(&Point::new(random_rational(&mut rng, 10, 3), random_rational(&mut rng, 40, 3))))
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &queries, |b, qs| {
            b.iter(|| qs.iter().map(|h| tree.halfplane_count(h, true)).sum::<usize>())
        });
    }
    group.finish();
}

fn all_peaks(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_peaks");
    group.sample_size(10);
    for n in [16usize, 32, 48] {
        let lines = random_lines(&mut seeded_rng(n as u64), n);
        let range = Interval::new(int(-50), int(50)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &lines, |b, lines| {
            b.iter(|| LevelInstance::new(lines.clone(), n / 4).unwrap().all_peaks(&range).len())
        });
    }
    group.finish();
}

fn sbe_query(c: &mut Criterion) {
    let mut group = c.benchmark_group("sbe_one_shot");
    for k in [6usize, 12, 24] {
        let mut rng = seeded_rng(k as u64);
        let g = random_graph(&mut rng, k, k * (k + 1) / 2).unwrap();
        let xs: Vec<_> = (0..16).map(|_| random_rational(&mut rng, 10, 7)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(k), &xs, |b, xs| {
            b.iter(|| xs.iter().map(|x| sbe_one_shot(&g, x).unwrap().edge.id).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, halfplane_count, all_peaks, sbe_query);
criterion_main!(benches);
