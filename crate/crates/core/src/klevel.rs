//! Queries on the `k`-level of a line arrangement: the `k`-th lowest line
//! value as a function of `x`, and its local peaks.
//!
//! All peak searches reduce to one fact. Let `f(x)` be the number of
//! positive-slope lines among the `k` lowest at a non-vertex abscissa `x`.
//! Moving right, `f` drops by one exactly at each maximal peak and is
//! unchanged elsewhere, so maximal peaks on an interval are counted by two
//! halfplane queries.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Signed;
use thiserror::Error;

use crate::geom::{event_ordinates, gap_sample, is_simple, GeomError, Interval, Line, Point};
use crate::peak::{by_height_desc, classify_vertex, Peak, PeakKind};
use crate::range_search::{build_tree, Halfplane, PartitionTree, RangeError};
use crate::rational::{cmp_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("level k = {k} outside 1..={n}")]
    LevelOutOfRange { k: usize, n: usize },
    #[error("lines do not form a simple arrangement; canonicalize them first")]
    NotSimple,
    #[error("tau must be at least 1")]
    ZeroTau,
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

/// The point of `L_k` above `x0` with the lines of the level just left and
/// just right of it. The two lines differ exactly at vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPoint {
    pub p: Point,
    pub left_line: Line,
    pub right_line: Line,
}

impl LevelPoint {
    pub fn is_vertex(&self) -> bool {
        self.left_line.id != self.right_line.id
    }
}

/// Outcome of asking whether `L_k` reaches a height somewhere on an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelDecision {
    Below,
    /// `witness` is the leftmost abscissa where the level is at or above the height.
    AtOrAbove { witness: Rational },
}

/// Portions of a horizontal line lying strictly below `L_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiActive {
    /// Closures of the maximal open pieces, left to right.
    pub intervals: Vec<Interval>,
    /// Local peaks of the level inside those pieces.
    pub peaks: usize,
    /// How many of them are maximal.
    pub maximal: usize,
}

/// State of the level on one open gap between consecutive crossings.
#[derive(Debug, Clone)]
struct Snapshot {
    line: Line,
    f: usize,
}

/// A simple line arrangement prepared for `k`-level queries.
#[derive(Debug)]
pub struct LevelInstance {
    lines: Vec<Line>,
    k: usize,
    tree: PartitionTree,
    /// Every pairwise crossing abscissa, ascending.
    events: Vec<Rational>,
    snapshots: Mutex<HashMap<usize, Snapshot>>,
}

impl Clone for LevelInstance {
    fn clone(&self) -> Self {
        LevelInstance {
            lines: self.lines.clone(),
            k: self.k,
            tree: self.tree.clone(),
            events: self.events.clone(),
            snapshots: Mutex::new(HashMap::new()),
        }
    }
}

impl LevelInstance {
    pub fn new(lines: Vec<Line>, k: usize) -> Result<Self, LevelError> {
        if lines.is_empty() {
            return Err(GeomError::EmptyInput.into());
        }
        if k == 0 || k > lines.len() {
            return Err(LevelError::LevelOutOfRange { k, n: lines.len() });
        }
        if !is_simple(&lines) {
            return Err(LevelError::NotSimple);
        }
        let duals: Vec<Point> = lines.iter().map(Line::dual).collect();
        let tree = build_tree(&duals)?;
        let mut events = Vec::new();
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                if l1.a != l2.a {
                    events.push((&l2.b - &l1.b) / (&l1.a - &l2.a));
                }
            }
        }
        events.sort_by(cmp_rational);
        events.dedup();
        Ok(LevelInstance { lines, k, tree, events, snapshots: Mutex::new(HashMap::new()) })
    }

    /// Same arrangement, different level.
    pub fn at_level(&self, k: usize) -> Result<Self, LevelError> {
        if k == 0 || k > self.lines.len() {
            return Err(LevelError::LevelOutOfRange { k, n: self.lines.len() });
        }
        let mut inst = self.clone();
        inst.k = k;
        Ok(inst)
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tree(&self) -> &PartitionTree {
        &self.tree
    }

    /// All crossing abscissas of the arrangement, ascending.
    pub fn events(&self) -> &[Rational] {
        &self.events
    }

    fn events_in(&self, range: &Interval) -> (usize, usize) {
        let start = self.events.partition_point(|x| x < &range.lo);
        let end = self.events.partition_point(|x| x <= &range.hi);
        (start, end)
    }

    /// The point of `L_k` at `x0`.
    pub fn one_shot(&self, x0: &Rational) -> LevelPoint {
        let values: Vec<Rational> = self.lines.iter().map(|l| l.eval_unreduced(x0)).collect();
        let mut sorted = values.clone();
        sorted.sort_by(cmp_rational);
        sorted.dedup_by(|p, q| cmp_rational(p, q) == Ordering::Equal);
        let at = |y: &Rational| Point::new(x0.clone(), y.clone());
        // Smallest line value with at least k lines on or below it.
        let idx = sorted.partition_point(|y| self.tree.halfplane_count(&Halfplane::lines_at_or_below(&at(y)), false) < self.k);
        let y = &sorted[idx];
        let below = self.tree.halfplane_count(&Halfplane::lines_strictly_below(&at(y)), false);

        let mut through: Vec<&Line> = self
            .lines
            .iter()
            .zip(&values)
            .filter(|(_, v)| cmp_rational(v, y) == Ordering::Equal)
            .map(|(l, _)| l)
            .collect();
        let rank = self.k - 1 - below;
        through.sort_by(|p, q| p.a.cmp(&q.a));
        let right_line = through[rank].clone();
        through.reverse();
        let left_line = through[rank].clone();
        let y = Rational::new(y.numer().clone(), y.denom().clone());
        LevelPoint { p: at(&y), left_line, right_line }
    }

    fn snapshot(&self, g: usize) -> Snapshot {
        if let Some(s) = self.snapshots.lock().unwrap().get(&g) {
            return s.clone();
        }
        let lp = self.one_shot(&gap_sample(&self.events, g));
        let f = self.tree.halfplane_count(&Halfplane::lines_at_or_below(&lp.p), true);
        let snap = Snapshot { line: lp.left_line, f };
        self.snapshots.lock().unwrap().insert(g, snap.clone());
        snap
    }

    /// Maximal and minimal peak counts over events `i..j`, from the gaps
    /// just outside them.
    fn kappa(&self, i: usize, j: usize) -> (usize, usize) {
        let (left, right) = (self.snapshot(i), self.snapshot(j));
        let maximal = left.f - right.f;
        let minimal = maximal + usize::from(right.line.a.is_positive()) - usize::from(left.line.a.is_positive());
        (maximal, minimal)
    }

    /// Number of maximal peaks of `L_k` in the closed interval `J`.
    pub fn count_max_peaks(&self, j: &Interval) -> usize {
        let (s, e) = self.events_in(j);
        if s == e {
            return 0;
        }
        self.kappa(s, e).0
    }

    /// Number of local peaks of `L_k` in the closed interval `J`.
    pub fn count_peaks(&self, j: &Interval) -> usize {
        let (s, e) = self.events_in(j);
        if s == e {
            return 0;
        }
        let (m, n) = self.kappa(s, e);
        m + n
    }

    /// Every local peak of `L_k` in `range`, by abscissa.
    pub fn all_peaks(&self, range: &Interval) -> Vec<Peak> {
        let (s, e) = self.events_in(range);
        let mut out = Vec::new();
        let mut stack = vec![(s, e)];
        while let Some((i, j)) = stack.pop() {
            if i == j {
                continue;
            }
            let (m, n) = self.kappa(i, j);
            if m + n == 0 {
                continue;
            }
            if j - i == 1 {
                let (left, right) = (self.snapshot(i).line, self.snapshot(i + 1).line);
                let x = &self.events[i];
                if let Some(kind) = classify_vertex(&left.a, &right.a) {
                    out.push(Peak {
                        at: Point::new(x.clone(), left.eval(x)),
                        kind,
                        left: left.id,
                        right: right.id,
                        on_boundary: range.is_endpoint(x),
                    });
                }
                continue;
            }
            let mid = i + (j - i) / 2;
            stack.push((mid, j));
            stack.push((i, mid));
        }
        out.sort_by(|p, q| p.at.x.cmp(&q.at.x));
        out
    }

    /// Whether `L_k` reaches height `alpha` somewhere in `range`.
    ///
    /// Sweeps the horizontal line `y = alpha` across its crossings with the
    /// arrangement, tracking how many lines lie strictly below it.
    pub fn decide_level_max(&self, alpha: &Rational, range: &Interval) -> LevelDecision {
        let mut below = self.lines.iter().filter(|l| &l.eval(&range.lo) < alpha).count();
        if below < self.k {
            return LevelDecision::AtOrAbove { witness: range.lo.clone() };
        }
        for (x, rising, falling) in self.crossings_with(alpha, range) {
            if x > range.lo {
                below -= rising;
                if below < self.k {
                    return LevelDecision::AtOrAbove { witness: x };
                }
            }
            below += falling;
        }
        LevelDecision::Below
    }

    /// Abscissas in `range` where lines cross `y = alpha`, with the number of
    /// rising and falling lines at each.
    fn crossings_with(&self, alpha: &Rational, range: &Interval) -> Vec<(Rational, usize, usize)> {
        let mut hits: Vec<(Rational, bool)> = self
            .lines
            .iter()
            .map(|l| ((alpha - &l.b) / &l.a, l.a.is_positive()))
            .filter(|(x, _)| range.contains(x))
            .collect();
        hits.sort();
        let mut out: Vec<(Rational, usize, usize)> = Vec::new();
        for (x, rising) in hits {
            if out.last().is_none_or(|(last, _, _)| last != &x) {
                out.push((x, 0, 0));
            }
            let slot = out.last_mut().unwrap();
            if rising {
                slot.1 += 1;
            } else {
                slot.2 += 1;
            }
        }
        out
    }

    /// Pieces of `y = y0` inside `range` lying strictly below `L_k`, with the
    /// number of level peaks above them.
    pub fn semi_active(&self, y0: &Rational, range: &Interval) -> SemiActive {
        // A point is strictly below L_k iff fewer than k lines pass on or below it.
        let mut at_or_below = self.lines.iter().filter(|l| &l.eval(&range.lo) <= y0).count();
        let mut open: Option<Rational> = (at_or_below < self.k).then(|| range.lo.clone());
        let mut intervals = Vec::new();
        for (x, rising, falling) in self.crossings_with(y0, range) {
            if x == range.lo {
                at_or_below -= rising;
            } else {
                let at = at_or_below + falling;
                if at >= self.k {
                    if let Some(start) = open.take() {
                        intervals.push(Interval { lo: start, hi: x.clone() });
                    }
                }
                at_or_below = at - rising;
            }
            if open.is_none() && at_or_below < self.k && x < range.hi {
                open = Some(x);
            }
        }
        if let Some(start) = open {
            intervals.push(Interval { lo: start, hi: range.hi.clone() });
        }

        let mut peaks = 0;
        let mut maximal = 0;
        for piece in &intervals {
            maximal += self.count_max_peaks(piece);
            peaks += self.count_peaks(piece);
            // A minimal peak of height y0 on a closure end is outside the piece.
            for end in [&piece.lo, &piece.hi] {
                let lp = self.one_shot(end);
                if &lp.p.y == y0 && classify_vertex(&lp.left_line.a, &lp.right_line.a) == Some(PeakKind::Minimal) {
                    peaks -= 1;
                }
            }
        }
        SemiActive { intervals, peaks, maximal }
    }

    /// The `tau` highest maximal peaks in `range`, highest first; ties go to
    /// the smaller abscissa.
    pub fn top_peaks(&self, range: &Interval, tau: usize) -> Result<Vec<Peak>, LevelError> {
        if tau == 0 {
            return Err(LevelError::ZeroTau);
        }
        let mut candidates = event_ordinates(&self.lines, range);
        candidates.sort();
        candidates.dedup();
        let Some(lowest) = candidates.first().cloned() else {
            return Ok(Vec::new());
        };
        candidates.insert(0, lowest - int(1));

        // Largest height with at least tau maximal peaks strictly above it.
        let enough = |y: &Rational| self.semi_active(y, range).maximal >= tau;
        let mut peaks = if !enough(&candidates[0]) {
            self.all_peaks(range)
        } else {
            let idx = candidates.partition_point(|y| enough(y)) - 1;
            let y0 = &candidates[idx];
            let mut found = Vec::new();
            for piece in self.semi_active(y0, range).intervals {
                found.extend(self.all_peaks(&piece).into_iter().filter(|p| &p.at.y > y0).map(|mut p| {
                    p.on_boundary = range.is_endpoint(&p.at.x);
                    p
                }));
            }
            found
        };
        peaks.retain(|p| p.kind == PeakKind::Maximal);
        peaks.sort_by(by_height_desc);
        peaks.dedup();
        peaks.truncate(tau);
        Ok(peaks)
    }

    /// The `tau` lowest minimal peaks in `range`, lowest first; ties go to
    /// the smaller abscissa.
    pub fn bottom_peaks(&self, range: &Interval, tau: usize) -> Result<Vec<Peak>, LevelError> {
        let mirrored = LevelInstance::new(self.lines.iter().map(Line::reflected).collect(), self.lines.len() + 1 - self.k)?;
        Ok(mirrored
            .top_peaks(range, tau)?
            .into_iter()
            .map(|p| Peak { at: Point::new(p.at.x, -p.at.y), kind: p.kind.flipped(), ..p })
            .collect())
    }
}
