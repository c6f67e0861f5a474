//! Brute-force reference implementations.
//!
//! Nothing here touches the range-search structures or the peak-search
//! recursions; these are the ground truth the fast paths are tested against.

use crate::geom::{cmp_near, event_abscissas, gap_sample, Interval, Line, Point};
use crate::peak::{classify_vertex, Peak};
use crate::pmst::{GraphError, ParamEdge, UnionFind};
use crate::rational::Rational;

/// Exact piecewise-linear function on a closed interval.
///
/// `owners[i]` is the line or edge id defining the piece between
/// `breakpoints[i]` and `breakpoints[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectorySample {
    pub breakpoints: Vec<Rational>,
    pub values: Vec<Rational>,
    pub owners: Vec<usize>,
}

impl TrajectorySample {
    fn segments(&self) -> impl Iterator<Item = ((&Rational, &Rational), (&Rational, &Rational))> {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| ((&x[0], &x[1]), (&v[0], &v[1])))
    }

    /// Value at `x`, `None` outside the sampled interval.
    pub fn value_at(&self, x: &Rational) -> Option<Rational> {
        let first = self.breakpoints.first()?;
        let last = self.breakpoints.last()?;
        if x < first || x > last {
            return None;
        }
        if self.breakpoints.len() == 1 {
            return Some(self.values[0].clone());
        }
        let i = self.breakpoints.partition_point(|b| b <= x).saturating_sub(1).min(self.breakpoints.len() - 2);
        let (x0, x1) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
        let (v0, v1) = (&self.values[i], &self.values[i + 1]);
        Some(v0 + (v1 - v0) * (x - x0) / (x1 - x0))
    }

    /// Largest value and its smallest argument.
    pub fn max(&self) -> (Rational, Rational) {
        let mut best = (self.values[0].clone(), self.breakpoints[0].clone());
        for (v, x) in self.values.iter().zip(&self.breakpoints) {
            if v > &best.0 {
                best = (v.clone(), x.clone());
            }
        }
        best
    }

    /// Smallest value and its smallest argument.
    pub fn min(&self) -> (Rational, Rational) {
        let mut best = (self.values[0].clone(), self.breakpoints[0].clone());
        for (v, x) in self.values.iter().zip(&self.breakpoints) {
            if v < &best.0 {
                best = (v.clone(), x.clone());
            }
        }
        best
    }

    /// Leftmost argument where the value reaches `alpha`.
    pub fn first_at_least(&self, alpha: &Rational) -> Option<Rational> {
        if self.breakpoints.len() == 1 {
            return (&self.values[0] >= alpha).then(|| self.breakpoints[0].clone());
        }
        for ((x0, x1), (v0, v1)) in self.segments() {
            if v0 >= alpha {
                return Some(x0.clone());
            }
            if v1 >= alpha {
                return Some(x0 + (alpha - v0) * (x1 - x0) / (v1 - v0));
            }
        }
        None
    }

    /// Closures of the maximal pieces of the domain where the value exceeds `y0`.
    pub fn intervals_above(&self, y0: &Rational) -> Vec<Interval> {
        let mut out: Vec<Interval> = Vec::new();
        if self.breakpoints.len() == 1 {
            if &self.values[0] > y0 {
                out.push(Interval { lo: self.breakpoints[0].clone(), hi: self.breakpoints[0].clone() });
            }
            return out;
        }
        for ((x0, x1), (v0, v1)) in self.segments() {
            let cross = || x0 + (y0 - v0) * (x1 - x0) / (v1 - v0);
            let piece = match (v0 > y0, v1 > y0) {
                (true, true) => Some((x0.clone(), x1.clone())),
                (true, false) => Some((x0.clone(), cross())),
                (false, true) => Some((cross(), x1.clone())),
                (false, false) => None,
            };
            let Some((lo, hi)) = piece else { continue };
            match out.last_mut() {
                // Pieces touching at a breakpoint above `y0` belong together.
                Some(prev) if prev.hi == lo && v0 > y0 => prev.hi = hi,
                _ => out.push(Interval { lo, hi }),
            }
        }
        out
    }
}

/// A trajectory together with its local peaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub trajectory: TrajectorySample,
    pub peaks: Vec<Peak>,
}

impl Trace {
    pub fn count_kind(&self, kind: crate::peak::PeakKind) -> usize {
        self.peaks.iter().filter(|p| p.kind == kind).count()
    }
}

#[derive(Debug, Clone)]
struct SwapRun {
    start: usize,
    /// Line positions in bottom-to-top order just left of the event.
    before: Vec<usize>,
    y: Rational,
}

#[derive(Debug, Clone)]
struct SweepEvent {
    x: Rational,
    runs: Vec<SwapRun>,
}

/// Left-to-right sweep of a line arrangement over an interval, recording at
/// every crossing abscissa which blocks of lines swap order. One sweep serves
/// every level.
#[derive(Debug, Clone)]
pub struct ArrangementSweep {
    lines: Vec<Line>,
    range: Interval,
    initial: Vec<usize>,
    events: Vec<SweepEvent>,
}

impl ArrangementSweep {
    pub fn new(lines: &[Line], range: &Interval) -> Self {
        let mut order: Vec<usize> = (0..lines.len()).collect();
        let left_of_lo = cmp_near(&range.lo, false);
        order.sort_by(|&i, &j| left_of_lo(&lines[i], &lines[j]));
        let initial = order.clone();

        let mut events = Vec::new();
        for x in event_abscissas(lines, range) {
            let values: Vec<Rational> = order.iter().map(|&i| lines[i].eval(&x)).collect();
            let mut runs = Vec::new();
            let mut start = 0;
            while start < order.len() {
                let mut end = start + 1;
                while end < order.len() && values[end] == values[start] {
                    end += 1;
                }
                if end - start > 1 {
                    runs.push(SwapRun { start, before: order[start..end].to_vec(), y: values[start].clone() });
                    order[start..end].reverse();
                }
                start = end;
            }
            events.push(SweepEvent { x, runs });
        }
        ArrangementSweep { lines: lines.to_vec(), range: range.clone(), initial, events }
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// The `k`-level (1-based: `k`-th lowest line) over the sweep interval.
    pub fn level(&self, k: usize) -> Trace {
        assert!(k >= 1 && k <= self.lines.len(), "level {k} outside 1..={}", self.lines.len());
        let (lo, hi) = (&self.range.lo, &self.range.hi);
        let pos = k - 1;
        let mut current = self.initial[pos];
        let mut segment_owner = current;
        let mut breakpoints = vec![lo.clone()];
        let mut values = vec![self.lines[current].eval(lo)];
        let mut owners = Vec::new();
        let mut peaks = Vec::new();

        for ev in &self.events {
            let Some(run) = ev.runs.iter().find(|r| r.start <= pos && pos < r.start + r.before.len()) else {
                continue;
            };
            let offset = pos - run.start;
            let left = run.before[offset];
            let right = run.before[run.before.len() - 1 - offset];
            debug_assert_eq!(left, current);
            current = right;
            if left == right {
                continue;
            }
            let (l, r) = (&self.lines[left], &self.lines[right]);
            if let Some(kind) = classify_vertex(&l.a, &r.a) {
                peaks.push(Peak {
                    at: Point::new(ev.x.clone(), run.y.clone()),
                    kind,
                    left: l.id,
                    right: r.id,
                    on_boundary: self.range.is_endpoint(&ev.x),
                });
            }
            if &ev.x == lo {
                segment_owner = right;
            } else if &ev.x < hi {
                owners.push(self.lines[segment_owner].id);
                breakpoints.push(ev.x.clone());
                values.push(run.y.clone());
                segment_owner = right;
            }
        }
        if hi > lo {
            owners.push(self.lines[segment_owner].id);
            breakpoints.push(hi.clone());
            values.push(self.lines[segment_owner].eval(hi));
        }
        Trace { trajectory: TrajectorySample { breakpoints, values, owners }, peaks }
    }
}

/// The `k`-level of `lines` over `range`, with its peaks.
pub fn klevel_sweep(lines: &[Line], k: usize, range: &Interval) -> Trace {
    ArrangementSweep::new(lines, range).level(k)
}

/// Minimum spanning tree at a fixed parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MstAt {
    /// Tree edge ids in insertion order.
    pub edges: Vec<usize>,
    /// Heaviest tree edge, smallest id among equals.
    pub bottleneck: usize,
    pub weight: Rational,
}

/// Kruskal on the exact weights at `x0`, ties broken by edge id.
pub fn mst_at(nodes: usize, edges: &[ParamEdge], x0: &Rational) -> Result<MstAt, GraphError> {
    let weights: Vec<Rational> = edges.iter().map(|e| e.weight(x0)).collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&i, &j| weights[i].cmp(&weights[j]).then(edges[i].id.cmp(&edges[j].id)));
    let mut uf = UnionFind::new(nodes);
    let mut tree = Vec::new();
    for i in order {
        if uf.union(edges[i].u, edges[i].v) {
            tree.push(i);
        }
    }
    if uf.components() != 1 {
        return Err(GraphError::Disconnected);
    }
    let heaviest = tree.iter().map(|&i| &weights[i]).max().cloned().ok_or(GraphError::NoEdges)?;
    let bottleneck = tree.iter().filter(|&&i| weights[i] == heaviest).map(|&i| edges[i].id).min().unwrap();
    Ok(MstAt { edges: tree.iter().map(|&i| edges[i].id).collect(), bottleneck, weight: heaviest })
}

/// Least threshold `w` such that the edges of weight at most `w` at `x0`
/// leave at most `c` components.
pub fn threshold_at(nodes: usize, edges: &[ParamEdge], x0: &Rational, c: usize) -> Result<Rational, GraphError> {
    if c == 0 || c >= nodes {
        return Err(GraphError::InvalidComponentTarget { c, nodes });
    }
    let mut weighted: Vec<(Rational, &ParamEdge)> = edges.iter().map(|e| (e.weight(x0), e)).collect();
    weighted.sort_by(|p, q| p.0.cmp(&q.0));
    let mut uf = UnionFind::new(nodes);
    for (w, e) in weighted {
        if uf.union(e.u, e.v) && uf.components() <= c {
            return Ok(w);
        }
    }
    Err(GraphError::Disconnected)
}

/// The bottleneck-weight trajectory `x -> w_SBE(x)` over `range`, stitched
/// from Kruskal runs between consecutive weight-line crossings.
pub fn sbe_trajectory(nodes: usize, edges: &[ParamEdge], range: &Interval) -> Result<Trace, GraphError> {
    let lines: Vec<Line> = edges.iter().map(ParamEdge::line).collect();
    let everywhere = all_crossings(&lines);
    let sample = |g: usize| gap_sample(&everywhere, g);
    let by_id = |id: usize| edges.iter().find(|e| e.id == id).expect("edge id");
    let mut cache: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut bottleneck_in_gap = |g: usize| -> Result<usize, GraphError> {
        if let Some(&id) = cache.get(&g) {
            return Ok(id);
        }
        let id = mst_at(nodes, edges, &sample(g))?.bottleneck;
        cache.insert(g, id);
        Ok(id)
    };

    let (lo, hi) = (&range.lo, &range.hi);
    let first_gap = everywhere.partition_point(|x| x <= lo);
    let mut segment_owner = bottleneck_in_gap(first_gap)?;
    let mut breakpoints = vec![lo.clone()];
    let mut values = vec![by_id(segment_owner).weight(lo)];
    let mut owners = Vec::new();
    let mut peaks = Vec::new();

    let start = everywhere.partition_point(|x| x < lo);
    for (g, x) in everywhere.iter().enumerate().skip(start) {
        if x > hi {
            break;
        }
        let left = bottleneck_in_gap(g)?;
        let right = bottleneck_in_gap(g + 1)?;
        if left == right {
            continue;
        }
        let (le, re) = (by_id(left), by_id(right));
        let y = le.weight(x);
        if let Some(kind) = classify_vertex(&le.a, &re.a) {
            peaks.push(Peak {
                at: Point::new(x.clone(), y.clone()),
                kind,
                left,
                right,
                on_boundary: range.is_endpoint(x),
            });
        }
        if x > lo && x < hi {
            owners.push(segment_owner);
            breakpoints.push(x.clone());
            values.push(y);
            segment_owner = right;
        }
    }
    if hi > lo {
        owners.push(segment_owner);
        breakpoints.push(hi.clone());
        values.push(by_id(segment_owner).weight(hi));
    }
    Ok(Trace { trajectory: TrajectorySample { breakpoints, values, owners }, peaks })
}

/// A value and the smallest abscissa attaining it.
pub type Extremum = (Rational, Rational);

/// Maximum and minimum of the `c`-component threshold over `range`,
/// each with its smallest argument, by evaluating every candidate abscissa.
pub fn threshold_extrema(
    nodes: usize,
    edges: &[ParamEdge],
    range: &Interval,
    c: usize,
) -> Result<(Extremum, Extremum), GraphError> {
    let lines: Vec<Line> = edges.iter().map(ParamEdge::line).collect();
    let mut xs = event_abscissas(&lines, range);
    xs.push(range.lo.clone());
    xs.push(range.hi.clone());
    xs.sort();
    xs.dedup();
    let mut max: Option<(Rational, Rational)> = None;
    let mut min: Option<(Rational, Rational)> = None;
    for x in xs {
        let w = threshold_at(nodes, edges, &x, c)?;
        if max.as_ref().is_none_or(|(m, _)| &w > m) {
            max = Some((w.clone(), x.clone()));
        }
        if min.as_ref().is_none_or(|(m, _)| &w < m) {
            min = Some((w, x));
        }
    }
    Ok((max.unwrap(), min.unwrap()))
}

fn all_crossings(lines: &[Line]) -> Vec<Rational> {
    let mut xs = Vec::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if l1.a != l2.a {
                xs.push((&l2.b - &l1.b) / (&l1.a - &l2.a));
            }
        }
    }
    xs.sort();
    xs.dedup();
    xs
}
