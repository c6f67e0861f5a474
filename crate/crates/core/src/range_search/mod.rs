//! Halfplane range searching over dual points.
//!
//! A [`SimplicialPartition`] splits a point set into `r` classes, each with
//! a bounding cell, such that any line cuts few cells; a [`PartitionTree`]
//! applies the split recursively and answers halfplane and wedge counting
//! and reporting queries by descending only into cells cut by a boundary.

mod partition;
mod tree;

pub use partition::{build_partition, PartitionClass, SimplicialPartition};
pub use tree::{build_tree, PartitionTree, QueryStats, LEAF_SIZE};

use std::cmp::Ordering;

use num_traits::Signed;
use thiserror::Error;

use crate::geom::Point;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("cannot build a range structure over zero points")]
    EmptyInput,
    #[error("requested {r} classes for only {n} points")]
    RTooLarge { r: usize, n: usize },
    #[error("a partition needs at least one class")]
    ZeroClasses,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// Halfplane bounded by the non-vertical line `Y = slope*X + intercept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfplane {
    pub slope: Rational,
    pub intercept: Rational,
    pub side: Side,
    /// Whether points on the boundary belong to the halfplane.
    pub closed: bool,
}

/// How a cell sits relative to a halfplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Coverage {
    Inside,
    Outside,
    Cut,
}

impl Halfplane {
    pub fn new(slope: Rational, intercept: Rational, side: Side, closed: bool) -> Self {
        Halfplane { slope, intercept, side, closed }
    }

    /// Dual points of the lines passing on or below the primal point `p`:
    /// the closed upper side of `Y = p.x*X - p.y`.
    pub fn lines_at_or_below(p: &Point) -> Self {
        Halfplane::new(p.x.clone(), -&p.y, Side::Upper, true)
    }

    /// Dual points of the lines passing strictly below `p`.
    pub fn lines_strictly_below(p: &Point) -> Self {
        Halfplane::new(p.x.clone(), -&p.y, Side::Upper, false)
    }

    pub fn complement(&self) -> Self {
        let side = match self.side {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        };
        Halfplane::new(self.slope.clone(), self.intercept.clone(), side, !self.closed)
    }

    /// Sign of the vertical offset of `(x, y)` above the boundary.
    fn offset_sign(&self, x: &Rational, y: &Rational) -> Ordering {
        offset_sign(y, &self.slope, x, &self.intercept)
    }

    fn accepts(&self, sign: Ordering) -> bool {
        match (self.side, self.closed) {
            (Side::Upper, true) => sign != Ordering::Less,
            (Side::Upper, false) => sign == Ordering::Greater,
            (Side::Lower, true) => sign != Ordering::Greater,
            (Side::Lower, false) => sign == Ordering::Less,
        }
    }

    pub fn contains(&self, q: &Point) -> bool {
        self.accepts(self.offset_sign(&q.x, &q.y))
    }

    pub(crate) fn classify(&self, cell: &Cell) -> Coverage {
        let ((x_lo, y_lo), (x_hi, y_hi)) = cell.offset_extremes(&self.slope);
        let lo = self.offset_sign(x_lo, y_lo);
        let hi = self.offset_sign(x_hi, y_hi);
        let (worst, best) = match self.side {
            Side::Upper => (lo, hi),
            Side::Lower => (hi, lo),
        };
        if self.accepts(worst) {
            Coverage::Inside
        } else if !self.accepts(best) {
            Coverage::Outside
        } else {
            Coverage::Cut
        }
    }
}

/// Sign of `y - slope*x - intercept`, by cross-multiplying over the
/// (positive) denominators instead of normalizing intermediate fractions.
fn offset_sign(y: &Rational, slope: &Rational, x: &Rational, intercept: &Rational) -> Ordering {
    let sx_den = slope.denom() * x.denom();
    let left = intercept.denom() * (y.numer() * &sx_den - slope.numer() * x.numer() * y.denom());
    let right = intercept.numer() * y.denom() * &sx_den;
    left.cmp(&right)
}

/// Axis-aligned bounding box of a class; stands in for the enclosing
/// triangle pair of the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl Cell {
    pub(crate) fn bounding<'a>(mut pts: impl Iterator<Item = &'a Point>) -> Self {
        let first = pts.next().expect("cell of an empty class");
        let mut c = Cell {
            xmin: first.x.clone(),
            xmax: first.x.clone(),
            ymin: first.y.clone(),
            ymax: first.y.clone(),
        };
        for p in pts {
            if p.x < c.xmin {
                c.xmin = p.x.clone();
            }
            if p.x > c.xmax {
                c.xmax = p.x.clone();
            }
            if p.y < c.ymin {
                c.ymin = p.y.clone();
            }
            if p.y > c.ymax {
                c.ymax = p.y.clone();
            }
        }
        c
    }

    /// Corners where `Y - slope*X` is smallest and largest.
    fn offset_extremes(&self, slope: &Rational) -> ((&Rational, &Rational), (&Rational, &Rational)) {
        if slope.is_negative() {
            ((&self.xmin, &self.ymin), (&self.xmax, &self.ymax))
        } else {
            ((&self.xmax, &self.ymin), (&self.xmin, &self.ymax))
        }
    }

    /// Range of `Y - slope*X - intercept` over the cell.
    pub fn offset_range(&self, slope: &Rational, intercept: &Rational) -> (Rational, Rational) {
        let ((x_lo, y_lo), (x_hi, y_hi)) = self.offset_extremes(slope);
        let lo = y_lo - slope * x_lo - intercept;
        let hi = y_hi - slope * x_hi - intercept;
        (lo, hi)
    }

    /// True when the line `Y = slope*X + intercept` has cell points strictly
    /// on both of its sides.
    pub fn is_cut_by(&self, slope: &Rational, intercept: &Rational) -> bool {
        let ((x_lo, y_lo), (x_hi, y_hi)) = self.offset_extremes(slope);
        offset_sign(y_lo, slope, x_lo, intercept) == Ordering::Less
            && offset_sign(y_hi, slope, x_hi, intercept) == Ordering::Greater
    }

    /// Range of `X*x0 - Y` over the cell: the weights at `x0` of the
    /// primal lines whose duals lie in the cell.
    pub fn weight_range(&self, x0: &Rational) -> (Rational, Rational) {
        let (lo, hi) = self.offset_range(x0, &Rational::from_integer(0.into()));
        (-hi, -lo)
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin.clone(), self.ymin.clone()),
            Point::new(self.xmin.clone(), self.ymax.clone()),
            Point::new(self.xmax.clone(), self.ymin.clone()),
            Point::new(self.xmax.clone(), self.ymax.clone()),
        ]
    }
}
