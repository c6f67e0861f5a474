//! Primal/dual primitives over exact rationals: lines, points, intervals,
//! arrangement events and the general-position canonicalization that every
//! downstream algorithm relies on.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{int, midpoint, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("empty input: at least one line is required")]
    EmptyInput,
    #[error("line {index} is vertical and cannot be written as y = a*x + b")]
    VerticalLineUnrepresentable { index: usize },
    #[error("interval lower end exceeds its upper end")]
    InvalidInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

/// The non-vertical line `y = a*x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub id: usize,
    pub a: Rational,
    pub b: Rational,
}

impl Line {
    pub fn new(id: usize, a: Rational, b: Rational) -> Self {
        Line { id, a, b }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.a * x + &self.b
    }

    /// `eval` without reducing the fraction; compare results with
    /// [`cmp_rational`](crate::rational::cmp_rational), not `==` or `Ord`.
    pub(crate) fn eval_unreduced(&self, x: &Rational) -> Rational {
        let ax_den = self.a.denom() * x.denom();
        let numer = self.a.numer() * x.numer() * self.b.denom() + self.b.numer() * &ax_den;
        Rational::new_raw(numer, ax_den * self.b.denom())
    }

    /// Dual point `(a, -b)`: the line passes at or below the primal point
    /// `(x0, y0)` exactly when its dual lies on or above `Y = x0*X - y0`.
    pub fn dual(&self) -> Point {
        Point::new(self.a.clone(), -&self.b)
    }

    pub fn has_positive_slope(&self) -> bool {
        self.a.is_positive()
    }

    /// The line `y = -a*x - b`, mirror image through the x-axis.
    pub fn reflected(&self) -> Line {
        Line::new(self.id, -&self.a, -&self.b)
    }
}

/// Closed interval `[lo, hi]` of abscissas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, GeomError> {
        if lo > hi {
            return Err(GeomError::InvalidInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_endpoint(&self, x: &Rational) -> bool {
        x == &self.lo || x == &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

/// A line as supplied by a caller, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineSpec {
    Sloped { a: Rational, b: Rational },
    Vertical { x: Rational },
}

impl LineSpec {
    pub fn sloped(a: Rational, b: Rational) -> Self {
        LineSpec::Sloped { a, b }
    }
}

impl From<&Line> for LineSpec {
    fn from(l: &Line) -> Self {
        LineSpec::sloped(l.a.clone(), l.b.clone())
    }
}

/// Lines in general position, with the perturbation (if any) that was
/// needed to get there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub lines: Vec<Line>,
    /// `Some(eps)` when line `i` was replaced by
    /// `y = (a + (i+1)*eps) x + (b + (i+1)^2 * eps^2)`.
    pub perturbation: Option<Rational>,
}

/// Validates the input and, when it is degenerate, perturbs it into a
/// simple arrangement.
///
/// An arrangement is simple here when no line is horizontal, no two lines
/// coincide and no three lines pass through a common point. Parallel lines
/// are allowed. Simple input is returned untouched; otherwise every line is
/// shifted by an explicit `eps` chosen below the smallest positive gap
/// between slopes (and zero) and between intercepts, halving `eps` until the
/// result is simple. Line ids are the input positions.
pub fn canonicalize(specs: &[LineSpec]) -> Result<Canonical, GeomError> {
    if specs.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let mut lines = Vec::with_capacity(specs.len());
    for (index, spec) in specs.iter().enumerate() {
        match spec {
            LineSpec::Sloped { a, b } => lines.push(Line::new(index, a.clone(), b.clone())),
            LineSpec::Vertical { .. } => {
                return Err(GeomError::VerticalLineUnrepresentable { index })
            }
        }
    }
    if is_simple(&lines) {
        return Ok(Canonical { lines, perturbation: None });
    }

    let n = lines.len();
    let mut slopes: Vec<Rational> = lines.iter().map(|l| l.a.clone()).collect();
    slopes.push(Rational::zero());
    let intercepts: Vec<Rational> = lines.iter().map(|l| l.b.clone()).collect();
    let gap = [min_positive_gap(slopes), min_positive_gap(intercepts)]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or_else(|| int(1));
    let scale = int(2 * (n as i64 + 1) * (n as i64 + 1));
    let mut eps = gap / scale;
    loop {
        let perturbed: Vec<Line> = lines
            .iter()
            .map(|l| {
                let s = int(l.id as i64 + 1);
                let a = &l.a + &s * &eps;
                let b = &l.b + &s * &s * &eps * &eps;
                Line::new(l.id, a, b)
            })
            .collect();
        if is_simple(&perturbed) {
            return Ok(Canonical { lines: perturbed, perturbation: Some(eps) });
        }
        eps /= int(2);
    }
}

fn min_positive_gap(mut values: Vec<Rational>) -> Option<Rational> {
    values.sort();
    values.dedup();
    values.windows(2).map(|w| &w[1] - &w[0]).min()
}

/// No horizontal lines, no duplicates, no three concurrent lines.
pub fn is_simple(lines: &[Line]) -> bool {
    if lines.iter().any(|l| l.a.is_zero()) {
        return false;
    }
    for (i, l1) in lines.iter().enumerate() {
        let mut xs = Vec::with_capacity(lines.len());
        for (j, l2) in lines.iter().enumerate() {
            if i == j {
                continue;
            }
            if l1.a == l2.a {
                if l1.b == l2.b {
                    return false;
                }
                continue;
            }
            xs.push((&l2.b - &l1.b) / (&l1.a - &l2.a));
        }
        xs.sort();
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// Unique crossing point of two lines, `None` when they are parallel.
pub fn intersect(l1: &Line, l2: &Line) -> Option<Point> {
    if l1.a == l2.a {
        return None;
    }
    let x = (&l2.b - &l1.b) / (&l1.a - &l2.a);
    let y = l1.eval(&x);
    Some(Point::new(x, y))
}

/// Sorted, deduplicated abscissas of all pairwise crossings inside `range`.
pub fn event_abscissas(lines: &[Line], range: &Interval) -> Vec<Rational> {
    let mut xs = Vec::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if l1.a == l2.a {
                continue;
            }
            let x = (&l2.b - &l1.b) / (&l1.a - &l2.a);
            if range.contains(&x) {
                xs.push(x);
            }
        }
    }
    xs.sort();
    xs.dedup();
    xs
}

/// Ordinates of all pairwise crossings whose abscissa lies in `range`,
/// sorted and deduplicated.
pub fn event_ordinates(lines: &[Line], range: &Interval) -> Vec<Rational> {
    let mut ys = Vec::new();
    for (i, l1) in lines.iter().enumerate() {
        for l2 in &lines[i + 1..] {
            if let Some(p) = intersect(l1, l2) {
                if range.contains(&p.x) {
                    ys.push(p.y);
                }
            }
        }
    }
    ys.sort();
    ys.dedup();
    ys
}

/// An abscissa strictly inside gap `g` of the ascending list `events`, the
/// open stretch between `events[g - 1]` and `events[g]`.
pub fn gap_sample(events: &[Rational], g: usize) -> Rational {
    match (g.checked_sub(1).map(|i| &events[i]), events.get(g)) {
        (Some(a), Some(b)) => midpoint(a, b),
        (Some(a), None) => a + int(1),
        (None, Some(b)) => b - int(1),
        (None, None) => int(0),
    }
}

/// Number of lines passing on or below `p`.
pub fn level_of(lines: &[Line], p: &Point) -> usize {
    lines.iter().filter(|l| l.eval(&p.x) <= p.y).count()
}

/// Order of lines just to the right of `x` (`ascending_slope = true`) or just
/// to the left of it (`false`): by value at `x`, ties broken by slope.
pub fn cmp_near(x: &Rational, ascending_slope: bool) -> impl Fn(&Line, &Line) -> Ordering + '_ {
    move |l1, l2| {
        l1.eval(x).cmp(&l2.eval(x)).then_with(|| {
            if ascending_slope {
                l1.a.cmp(&l2.a)
            } else {
                l2.a.cmp(&l1.a)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn line(id: usize, a: i64, b: i64) -> Line {
        Line::new(id, int(a), int(b))
    }

    fn specs(pairs: &[(i64, i64)]) -> Vec<LineSpec> {
        pairs.iter().map(|&(a, b)| LineSpec::sloped(int(a), int(b))).collect()
    }

    #[test]
    fn simple_input_is_unchanged() {
        let c = canonicalize(&specs(&[(1, 0), (-1, 0)])).unwrap();
        assert_eq!(c.perturbation, None);
        assert_eq!(c.lines, vec![line(0, 1, 0), line(1, -1, 0)]);
    }

    #[test]
    fn parallel_lines_are_not_perturbed() {
        let c = canonicalize(&specs(&[(1, 0), (1, 1)])).unwrap();
        assert_eq!(c.perturbation, None);
    }

    #[test]
    fn horizontal_line_gets_small_positive_slope() {
        let c = canonicalize(&specs(&[(0, 1), (1, 0)])).unwrap();
        let eps = c.perturbation.clone().expect("perturbed");
        let a0 = &c.lines[0].a;
        assert!(a0.is_positive());
        assert!(a0 < &int(1), "below the minimum gap of 1");
        assert!(eps.is_positive());
        assert!(is_simple(&c.lines));
    }

    #[test]
    fn concurrent_triple_is_broken() {
        // y = x, 2x, 3x share the origin and their duals are collinear in the
        // id-weighted sense; the quadratic intercept shift must still separate them.
        let c = canonicalize(&specs(&[(1, 0), (2, 0), (3, 0)])).unwrap();
        assert!(c.perturbation.is_some());
        assert!(is_simple(&c.lines));
    }

    #[test]
    fn rejects_vertical_and_empty() {
        assert_eq!(canonicalize(&[]), Err(GeomError::EmptyInput));
        let input = vec![LineSpec::sloped(int(1), int(0)), LineSpec::Vertical { x: int(3) }];
        assert_eq!(canonicalize(&input), Err(GeomError::VerticalLineUnrepresentable { index: 1 }));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect(&line(0, 1, 0), &line(1, -1, 0)), Some(Point::new(int(0), int(0))));
        assert_eq!(intersect(&line(0, 1, 0), &line(1, 1, 1)), None);
        assert_eq!(intersect(&line(0, 2, -3), &line(1, -1, 0)), Some(Point::new(int(1), int(-1))));
    }

    #[test]
    fn event_examples() {
        let unit = Interval::new(int(-1), int(1)).unwrap();
        assert_eq!(event_abscissas(&[line(0, 1, 0), line(1, -1, 0)], &unit), vec![int(0)]);
        assert!(event_abscissas(&[line(0, 1, 0), line(1, 1, 1)], &unit).is_empty());
    }

    #[test]
    fn level_examples() {
        let ls = [line(0, 1, 0), line(1, -1, 0)];
        assert_eq!(level_of(&ls, &Point::new(int(2), int(-2))), 1);
        assert_eq!(level_of(&ls, &Point::new(int(0), int(5))), 2);
    }

    #[test]
    fn interval_rejects_reversed_bounds() {
        assert_eq!(Interval::new(int(1), int(0)), Err(GeomError::InvalidInterval));
        assert!(Interval::new(rat(1, 2), rat(1, 2)).unwrap().is_degenerate());
    }

    fn arb_lines(max: usize) -> impl Strategy<Value = Vec<Line>> {
        prop::collection::vec((-20i64..20, 1i64..6, -20i64..20, 1i64..6), 2..max).prop_map(|v| {
            v.into_iter()
                .enumerate()
                .map(|(i, (an, ad, bn, bd))| Line::new(i, rat(an, ad), rat(bn, bd)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn intersect_is_symmetric_and_exact(ls in arb_lines(3)) {
            let (l1, l2) = (&ls[0], &ls[1]);
            let p = intersect(l1, l2);
            prop_assert_eq!(&p, &intersect(l2, l1));
            if let Some(p) = p {
                prop_assert_eq!(l1.eval(&p.x), p.y.clone());
                prop_assert_eq!(l2.eval(&p.x), p.y);
            }
        }

        #[test]
        fn events_sorted_and_order_free(mut ls in arb_lines(9), seed in any::<u64>()) {
            let range = Interval::new(int(-10), int(10)).unwrap();
            let xs = event_abscissas(&ls, &range);
            prop_assert!(xs.windows(2).all(|w| w[0] < w[1]));
            let rot = (seed as usize) % ls.len();
            ls.rotate_left(rot);
            ls.reverse();
            prop_assert_eq!(xs, event_abscissas(&ls, &range));
        }

        #[test]
        fn canonical_output_is_simple(ls in arb_lines(8)) {
            let specs: Vec<LineSpec> = ls.iter().map(LineSpec::from).collect();
            let c = canonicalize(&specs).unwrap();
            prop_assert!(is_simple(&c.lines));
            prop_assert!(c.lines.iter().all(|l| !l.a.is_zero()));
        }
    }
}
