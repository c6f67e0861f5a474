//! Parametric minimum spanning trees.
//!
//! Every edge weight is a line `w_e(x) = a*x + b`. The spanning bottleneck
//! weight `w_SBE(x)` is the heaviest edge of a minimum spanning tree at `x`,
//! equivalently the least threshold whose sub-threshold subgraph is
//! connected. The truncated variant asks for at most `c` components instead.

mod forest;
mod graph;

use std::collections::HashMap;

use num_traits::Signed;

pub use forest::{Forest, UnionFind};
pub use graph::{GraphError, ParamEdge, ParamGraph};

use crate::geom::{event_ordinates, gap_sample, Interval, Point};
use crate::peak::{classify_vertex, Peak, PeakKind};
use crate::range_search::{Coverage, Halfplane};
use crate::rational::Rational;

/// Bottleneck edge at a parameter value and its weight there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbeResult {
    pub edge: ParamEdge,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SbeDecision {
    /// `witness` is the leftmost abscissa meeting the bound.
    Feasible { witness: Rational },
    Infeasible,
}

impl SbeDecision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SbeDecision::Feasible { .. })
    }
}

/// Extreme values of the threshold trajectory with their leftmost arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbeExtrema {
    pub max: Rational,
    pub argmax: Rational,
    pub min: Rational,
    pub argmin: Rational,
}

/// Trajectory value at an end of the queried interval that is higher
/// (`Maximal`) or lower (`Minimal`) than its interior neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryExtremum {
    pub at: Point,
    pub kind: PeakKind,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbePeaks {
    /// Local peaks, by abscissa.
    pub peaks: Vec<Peak>,
    pub boundary: Vec<BoundaryExtremum>,
}

/// Spanning forest of the edges weighing at most `t` at `x0`. Classes whose
/// whole weight range is below `t` contribute their stored forest.
fn threshold_forest(g: &ParamGraph, x0: &Rational, t: &Rational, ranges: &[(Rational, Rational)]) -> Forest {
    let mut forest = Forest::empty(g.nodes());
    for (i, (class, (lo, hi))) in g.partition().classes.iter().zip(ranges).enumerate() {
        if hi <= t {
            for &e in g.class_forest(i) {
                let edge = g.edge(e);
                forest.insert(e, edge.u, edge.v);
            }
        } else if lo <= t {
            for &e in &class.members {
                let edge = g.edge(e);
                if &edge.weight(x0) <= t {
                    forest.insert(e, edge.u, edge.v);
                }
            }
        }
    }
    forest
}

/// Bottleneck edge of a minimum spanning tree at `x0`; among equal weights
/// the smallest edge id wins.
pub fn sbe_one_shot(g: &ParamGraph, x0: &Rational) -> Result<SbeResult, GraphError> {
    sbe_one_shot_c(g, x0, 1)
}

/// Edge fixing the least threshold at `x0` whose sub-threshold subgraph has
/// at most `c` components.
///
/// Binary search over the class weight-range ends brackets the threshold
/// between two consecutive candidates; only edges of classes straddling the
/// bracket are then inserted one by one.
pub fn sbe_one_shot_c(g: &ParamGraph, x0: &Rational, c: usize) -> Result<SbeResult, GraphError> {
    g.check_target(c)?;
    let ranges: Vec<(Rational, Rational)> = g.partition().classes.iter().map(|cl| cl.cell.weight_range(x0)).collect();
    let mut candidates: Vec<Rational> = ranges.iter().flat_map(|(lo, hi)| [lo.clone(), hi.clone()]).collect();
    candidates.sort();
    candidates.dedup();
    let idx = candidates.partition_point(|t| threshold_forest(g, x0, t, &ranges).components() > c);
    let upper = candidates.get(idx).ok_or(GraphError::Disconnected)?;
    let lower = idx.checked_sub(1).map(|i| &candidates[i]);

    let mut forest = match lower {
        Some(t) => threshold_forest(g, x0, t, &ranges),
        None => Forest::empty(g.nodes()),
    };
    let mut pending: Vec<(Rational, usize)> = Vec::new();
    for (class, (lo, hi)) in g.partition().classes.iter().zip(&ranges) {
        if lo > upper || lower.is_some_and(|t| hi <= t) {
            continue;
        }
        for &e in &class.members {
            let w = g.edge(e).weight(x0);
            if &w <= upper && lower.is_none_or(|t| &w > t) {
                pending.push((w, e));
            }
        }
    }
    pending.sort();

    let mut group: Option<(&Rational, Option<usize>)> = None;
    for (w, e) in &pending {
        if group.is_none_or(|(gw, _)| gw != w) {
            group = Some((w, None));
        }
        let edge = g.edge(*e);
        if forest.insert(*e, edge.u, edge.v) {
            let first = *group.as_mut().unwrap().1.get_or_insert(*e);
            if forest.components() <= c {
                return Ok(SbeResult { edge: g.edge(first).clone(), weight: w.clone() });
            }
        }
    }
    Err(GraphError::Disconnected)
}

/// Spanning forest of the edges whose weight lines pass on or below both
/// `p0` and `p1`.
pub fn two_shot_forest(g: &ParamGraph, p0: &Point, p1: &Point) -> Forest {
    let h0 = Halfplane::lines_at_or_below(p0);
    let h1 = Halfplane::lines_at_or_below(p1);
    let mut forest = Forest::empty(g.nodes());
    for (i, class) in g.partition().classes.iter().enumerate() {
        match (h0.classify(&class.cell), h1.classify(&class.cell)) {
            (Coverage::Outside, _) | (_, Coverage::Outside) => {}
            (Coverage::Inside, Coverage::Inside) => {
                for &e in g.class_forest(i) {
                    let edge = g.edge(e);
                    forest.insert(e, edge.u, edge.v);
                }
            }
            _ => {
                for &e in &class.members {
                    let edge = g.edge(e);
                    if edge.weight(&p0.x) <= p0.y && edge.weight(&p1.x) <= p1.y {
                        forest.insert(e, edge.u, edge.v);
                    }
                }
            }
        }
    }
    forest
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quantifier {
    /// Looking for an abscissa where the bound holds.
    Exists,
    /// Looking for an abscissa where the bound fails.
    ForAll,
}

/// Sweeps `y = y0` over `range` in chunks of about `sqrt(n*k)` weight-line
/// crossings. Edges below `y0` across a whole chunk are found by a two-shot
/// query and contracted; only the few edges crossing `y0` inside the chunk
/// are replayed at each sample point.
fn sweep_threshold(g: &ParamGraph, y0: &Rational, range: &Interval, c: usize, q: Quantifier) -> Option<Rational> {
    let mut crossing: Vec<(Rational, usize)> = g
        .edges()
        .iter()
        .map(|e| ((y0 - &e.b) / &e.a, e.id))
        .filter(|(x, _)| range.contains(x))
        .collect();
    crossing.sort();
    let mut points: Vec<Rational> = crossing.iter().map(|(x, _)| x.clone()).collect();
    points.push(range.lo.clone());
    points.push(range.hi.clone());
    points.sort();
    points.dedup();

    let chunk_size = ((g.edges().len() * g.nodes()) as f64).sqrt().ceil() as usize;
    let last = points.len() - 1;
    let mut a = 0;
    loop {
        let mut b = a;
        let mut taken = 0;
        while b < last && taken < chunk_size {
            b += 1;
            taken += crossing.iter().filter(|(x, _)| x == &points[b]).count();
        }
        if let Some(x) = check_chunk(g, y0, c, q, &points, &crossing, a, b, last) {
            return Some(x);
        }
        if b == last {
            return None;
        }
        a = b;
    }
}

#[allow(clippy::too_many_arguments)]
fn check_chunk(
    g: &ParamGraph,
    y0: &Rational,
    c: usize,
    q: Quantifier,
    points: &[Rational],
    crossing: &[(Rational, usize)],
    a: usize,
    b: usize,
    last: usize,
) -> Option<Rational> {
    let (xa, xb) = (&points[a], &points[b]);
    let mut base = two_shot_forest(g, &Point::new(xa.clone(), y0.clone()), &Point::new(xb.clone(), y0.clone()));
    let base_components = base.components();
    let below = |e: &ParamEdge, x: &Rational| &e.weight(x) <= y0;
    let changing: Vec<&ParamEdge> = crossing
        .iter()
        .filter(|(x, _)| x >= xa && x <= xb)
        .map(|(_, e)| g.edge(*e))
        .filter(|e| below(e, xa) != below(e, xb))
        .collect();
    match q {
        Quantifier::Exists if base_components.saturating_sub(changing.len()) > c => return None,
        Quantifier::ForAll if base_components <= c => return None,
        _ => {}
    }

    // Sub-threshold subgraphs only grow at crossing points, so existence is
    // witnessed at a point and failure inside an open gap or at an end.
    let samples: Vec<Rational> = match q {
        Quantifier::Exists => points[a..=b].to_vec(),
        Quantifier::ForAll => {
            let mut s = Vec::new();
            if a == 0 {
                s.push(points[0].clone());
            }
            s.extend(points[a..=b].windows(2).map(|w| crate::rational::midpoint(&w[0], &w[1])));
            if b == last {
                s.push(points[last].clone());
            }
            s
        }
    };

    let labels = base.component_labels();
    let mut compact = HashMap::new();
    for &l in &labels {
        let next = compact.len();
        compact.entry(l).or_insert(next);
    }
    for x in samples {
        let mut uf = UnionFind::new(base_components);
        let merged = changing
            .iter()
            .filter(|e| below(e, &x))
            .filter(|e| uf.union(compact[&labels[e.u]], compact[&labels[e.v]]))
            .count();
        let components = base_components - merged;
        let hit = match q {
            Quantifier::Exists => components <= c,
            Quantifier::ForAll => components > c,
        };
        if hit {
            return Some(x);
        }
    }
    None
}

/// Whether some abscissa in `range` has its at-most-`y0` subgraph split into
/// at most `c` components, i.e. the threshold trajectory dips to `y0`.
pub fn sbe_decision(g: &ParamGraph, y0: &Rational, range: &Interval, c: usize) -> Result<SbeDecision, GraphError> {
    g.check_target(c)?;
    Ok(match sweep_threshold(g, y0, range, c, Quantifier::Exists) {
        Some(witness) => SbeDecision::Feasible { witness },
        None => SbeDecision::Infeasible,
    })
}

/// Whether the threshold trajectory stays at or below `y0` over all of
/// `range`; `Infeasible` when some abscissa exceeds it.
pub fn sbe_bounded(g: &ParamGraph, y0: &Rational, range: &Interval, c: usize) -> Result<bool, GraphError> {
    g.check_target(c)?;
    Ok(sweep_threshold(g, y0, range, c, Quantifier::ForAll).is_none())
}

/// Maximum and minimum of the `c`-component threshold over `range`.
///
/// Both extremes sit at a vertex of the trajectory or at an end of the
/// range, so each is found by binary search over crossing ordinates and
/// end values.
pub fn sbe_extrema(g: &ParamGraph, range: &Interval, c: usize) -> Result<SbeExtrema, GraphError> {
    g.check_target(c)?;
    let mut ys = event_ordinates(&g.weight_lines(), range);
    for e in g.edges() {
        ys.push(e.weight(&range.lo));
        ys.push(e.weight(&range.hi));
    }
    ys.sort();
    ys.dedup();

    let max_idx = ys.partition_point(|y| sweep_threshold(g, y, range, c, Quantifier::ForAll).is_some());
    let min_idx = ys.partition_point(|y| sweep_threshold(g, y, range, c, Quantifier::Exists).is_none());
    let max = ys.get(max_idx).cloned().ok_or(GraphError::Disconnected)?;
    let min = ys.get(min_idx).cloned().ok_or(GraphError::Disconnected)?;
    let argmax = leftmost_with_value(g, range, c, &max)?;
    let argmin = leftmost_with_value(g, range, c, &min)?;
    Ok(SbeExtrema { max, argmax, min, argmin })
}

/// Leftmost abscissa in `range` where the threshold equals `value`. Such a
/// point lies on some weight line at height `value`.
fn leftmost_with_value(g: &ParamGraph, range: &Interval, c: usize, value: &Rational) -> Result<Rational, GraphError> {
    let mut xs: Vec<Rational> = g.edges().iter().map(|e| (value - &e.b) / &e.a).filter(|x| range.contains(x)).collect();
    xs.push(range.lo.clone());
    xs.push(range.hi.clone());
    xs.sort();
    xs.dedup();
    for x in xs {
        if &sbe_one_shot_c(g, &x, c)?.weight == value {
            return Ok(x);
        }
    }
    Err(GraphError::Disconnected)
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Positive-slope edges in the minimum spanning tree just left or just
/// right of `x`.
fn positive_tree_edges(g: &ParamGraph, x: &Rational, side: Side) -> usize {
    let weights: Vec<Rational> = g.edges().iter().map(|e| e.weight(x)).collect();
    let mut order: Vec<usize> = (0..g.edges().len()).collect();
    order.sort_by(|&i, &j| {
        let (ei, ej) = (&g.edges()[i], &g.edges()[j]);
        weights[i].cmp(&weights[j]).then_with(|| match side {
            Side::Left => ej.a.cmp(&ei.a),
            Side::Right => ei.a.cmp(&ej.a),
        })
    });
    let mut uf = UnionFind::new(g.nodes());
    order
        .into_iter()
        .filter(|&i| {
            let e = &g.edges()[i];
            uf.union(e.u, e.v) && e.has_positive_slope()
        })
        .count()
}

/// Drop in the number of positive-slope minimum spanning tree edges across
/// `range`, an upper bound on the maximal peaks of `w_SBE` inside it.
pub fn d_bound(g: &ParamGraph, range: &Interval) -> usize {
    let left = positive_tree_edges(g, &range.lo, Side::Left);
    let right = positive_tree_edges(g, &range.hi, Side::Right);
    debug_assert!(left >= right, "positive tree edges increased across the range");
    left.saturating_sub(right)
}

#[derive(Debug, Clone)]
struct GapState {
    bottleneck: ParamEdge,
    positive: usize,
}

/// Every local peak of `w_SBE` in `range`, plus the range ends where the
/// trajectory is extreme.
///
/// Recursively halves the list of crossing abscissas, dropping any stretch
/// where `d` rules out maximal peaks and the end slopes rule out a minimum.
pub fn sbe_all_peaks(g: &ParamGraph, range: &Interval) -> Result<SbePeaks, GraphError> {
    let lines = g.weight_lines();
    let mut events = Vec::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if l1.a != l2.a {
                events.push((&l2.b - &l1.b) / (&l1.a - &l2.a));
            }
        }
    }
    events.sort();
    events.dedup();

    let mut cache: HashMap<usize, GapState> = HashMap::new();
    let mut state = |gap: usize| -> Result<GapState, GraphError> {
        if let Some(s) = cache.get(&gap) {
            return Ok(s.clone());
        }
        let x = gap_sample(&events, gap);
        let s = GapState { bottleneck: sbe_one_shot(g, &x)?.edge, positive: positive_tree_edges(g, &x, Side::Right) };
        cache.insert(gap, s.clone());
        Ok(s)
    };

    let start = events.partition_point(|x| x < &range.lo);
    let end = events.partition_point(|x| x <= &range.hi);
    let mut peaks = Vec::new();
    let mut stack = vec![(start, end)];
    while let Some((i, j)) = stack.pop() {
        if i == j {
            continue;
        }
        let (left, right) = (state(i)?, state(j)?);
        let d = left.positive.saturating_sub(right.positive);
        let dip = left.bottleneck.a.is_negative() && right.bottleneck.a.is_positive();
        if d == 0 && !dip {
            continue;
        }
        if j - i > 1 {
            let mid = i + (j - i) / 2;
            stack.push((mid, j));
            stack.push((i, mid));
            continue;
        }
        let x = &events[i];
        let after = state(i + 1)?;
        let (le, re) = (&left.bottleneck, &after.bottleneck);
        if le.id == re.id {
            continue;
        }
        if let Some(kind) = classify_vertex(&le.a, &re.a) {
            peaks.push(Peak {
                at: Point::new(x.clone(), le.weight(x)),
                kind,
                left: le.id,
                right: re.id,
                on_boundary: range.is_endpoint(x),
            });
        }
    }
    peaks.sort_by(|p, q| p.at.x.cmp(&q.at.x));

    let mut boundary = Vec::new();
    if range.lo < range.hi {
        let after_lo = state(events.partition_point(|x| x <= &range.lo))?.bottleneck;
        let kind = if after_lo.a.is_negative() { PeakKind::Maximal } else { PeakKind::Minimal };
        boundary.push(BoundaryExtremum { at: Point::new(range.lo.clone(), after_lo.weight(&range.lo)), kind, edge: after_lo.id });
        let before_hi = state(events.partition_point(|x| x < &range.hi))?.bottleneck;
        let kind = if before_hi.a.is_positive() { PeakKind::Maximal } else { PeakKind::Minimal };
        boundary.push(BoundaryExtremum { at: Point::new(range.hi.clone(), before_hi.weight(&range.hi)), kind, edge: before_hi.id });
    }
    Ok(SbePeaks { peaks, boundary })
}
