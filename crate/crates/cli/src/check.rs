//! Fast path against brute force, on one instance or a seeded corpus.

use levelpeaks_core::geom::{event_abscissas, gap_sample, Interval, Line};
use levelpeaks_core::klevel::LevelInstance;
use levelpeaks_core::oracle::{klevel_sweep, mst_at, sbe_trajectory, threshold_extrema, ArrangementSweep};
use levelpeaks_core::peak::{by_height_asc, by_height_desc, Peak, PeakKind};
use levelpeaks_core::pmst::{sbe_all_peaks, sbe_extrema, sbe_one_shot, ParamGraph};
use levelpeaks_core::random::{random_graph, random_lines, seeded_rng};
use levelpeaks_core::rational::format_rational;
use rand::Rng;

#[derive(Debug, Default)]
pub struct Report {
    pub instances: usize,
    pub comparisons: usize,
    pub mismatches: Vec<String>,
}

impl Report {
    fn compare<T: PartialEq + std::fmt::Debug>(&mut self, what: impl FnOnce() -> String, fast: T, slow: T) {
        self.comparisons += 1;
        if fast != slow {
            self.mismatches.push(format!("{}: fast {fast:?} != oracle {slow:?}", what()));
        }
    }
}

pub fn corpus_lines(seed: u64, count: usize, n: usize) -> Vec<Vec<Line>> {
    (0..count).map(|i| random_lines(&mut seeded_rng(seed.wrapping_add(i as u64)), n)).collect()
}

pub fn corpus_graphs(seed: u64, count: usize) -> Vec<ParamGraph> {
    (0..count)
        .map(|i| {
            let mut rng = seeded_rng(seed.wrapping_add(i as u64));
            let k = rng.gen_range(3..=8);
            let n = rng.gen_range(k - 1..=k * (k + 1) / 2);
            random_graph(&mut rng, k, n).expect("generated graphs are connected")
        })
        .collect()
}

fn levels(lines: &[Line], k: Option<usize>) -> Vec<usize> {
    match k {
        Some(k) => vec![k],
        None => (1..=lines.len()).collect(),
    }
}

pub fn peaks(report: &mut Report, lines: &[Line], k: Option<usize>, range: &Interval) {
    report.instances += 1;
    let sweep = ArrangementSweep::new(lines, range);
    let base = LevelInstance::new(lines.to_vec(), 1).expect("canonical lines");
    for k in levels(lines, k) {
        let inst = base.at_level(k).expect("level in range");
        report.compare(|| format!("all_peaks k={k}"), inst.all_peaks(range), sweep.level(k).peaks);
    }
}

pub fn counts(report: &mut Report, lines: &[Line], k: Option<usize>, range: &Interval, seed: u64) {
    report.instances += 1;
    let events = event_abscissas(lines, range);
    let mut rng = seeded_rng(seed);
    let base = LevelInstance::new(lines.to_vec(), 1).expect("canonical lines");
    for k in levels(lines, k) {
        let inst = base.at_level(k).expect("level in range");
        let trace = klevel_sweep(lines, k, range);
        for _ in 0..5 {
            let a = rng.gen_range(0..=events.len());
            let b = rng.gen_range(a..=events.len());
            let lo = if a == 0 { range.lo.clone() } else { gap_sample(&events, a) };
            let hi = if b == events.len() { range.hi.clone() } else { gap_sample(&events, b) };
            let j = Interval::new(lo, hi).expect("ordered");
            let inside: Vec<&Peak> = trace.peaks.iter().filter(|p| j.contains(&p.at.x)).collect();
            let maximal = inside.iter().filter(|p| p.kind == PeakKind::Maximal).count();
            let label = || format!("k={k} J=[{}, {}]", format_rational(&j.lo), format_rational(&j.hi));
            report.compare(|| format!("count_max_peaks {}", label()), inst.count_max_peaks(&j), maximal);
            report.compare(|| format!("count_peaks {}", label()), inst.count_peaks(&j), inside.len());
        }
    }
}

pub fn selection(report: &mut Report, lines: &[Line], k: Option<usize>, range: &Interval) {
    report.instances += 1;
    let sweep = ArrangementSweep::new(lines, range);
    let base = LevelInstance::new(lines.to_vec(), 1).expect("canonical lines");
    for k in levels(lines, k) {
        let inst = base.at_level(k).expect("level in range");
        let peaks = sweep.level(k).peaks;
        let mut maxima: Vec<Peak> = peaks.iter().filter(|p| p.kind == PeakKind::Maximal).cloned().collect();
        maxima.sort_by(by_height_desc);
        let mut minima: Vec<Peak> = peaks.iter().filter(|p| p.kind == PeakKind::Minimal).cloned().collect();
        minima.sort_by(by_height_asc);
        for tau in [1, 2, 5] {
            let top = inst.top_peaks(range, tau).expect("tau >= 1");
            report.compare(|| format!("top_peaks k={k} tau={tau}"), top, maxima.iter().take(tau).cloned().collect());
            let bottom = inst.bottom_peaks(range, tau).expect("tau >= 1");
            report.compare(|| format!("bottom_peaks k={k} tau={tau}"), bottom, minima.iter().take(tau).cloned().collect());
        }
    }
}

pub fn sbe(report: &mut Report, g: &ParamGraph, range: &Interval, seed: u64) {
    report.instances += 1;
    let mut rng = seeded_rng(seed);
    let events = event_abscissas(&g.weight_lines(), range);
    for _ in 0..10 {
        let x = gap_sample(&events, rng.gen_range(0..=events.len()));
        let fast = sbe_one_shot(g, &x).map(|r| (r.edge.id, r.weight));
        let slow = mst_at(g.nodes(), g.edges(), &x).map(|m| (m.bottleneck, m.weight));
        report.compare(|| format!("sbe_one_shot x={}", format_rational(&x)), fast, slow);
    }
    let fast = sbe_extrema(g, range, 1).map(|e| ((e.max, e.argmax), (e.min, e.argmin)));
    report.compare(|| "sbe_extrema".to_string(), fast, threshold_extrema(g.nodes(), g.edges(), range, 1));
    let fast = sbe_all_peaks(g, range).map(|p| p.peaks);
    report.compare(|| "sbe_all_peaks".to_string(), fast, sbe_trajectory(g.nodes(), g.edges(), range).map(|t| t.peaks));
}
