use num_traits::Signed;

use crate::geom::Point;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PeakKind {
    Maximal,
    Minimal,
}

impl PeakKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PeakKind::Maximal => "maximal",
            PeakKind::Minimal => "minimal",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            PeakKind::Maximal => PeakKind::Minimal,
            PeakKind::Minimal => PeakKind::Maximal,
        }
    }
}

/// A local extremum of a piecewise-linear trajectory.
///
/// `left` and `right` identify the pieces (line ids or edge ids) meeting at
/// the vertex. `on_boundary` is set when the vertex sits exactly on an end
/// of the queried interval; such peaks are counted as inside the interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Peak {
    pub at: Point,
    pub kind: PeakKind,
    pub left: usize,
    pub right: usize,
    pub on_boundary: bool,
}

/// Kind of vertex where a piece of slope `left` meets one of slope `right`.
pub fn classify_vertex(left: &Rational, right: &Rational) -> Option<PeakKind> {
    if left.is_positive() && right.is_negative() {
        Some(PeakKind::Maximal)
    } else if left.is_negative() && right.is_positive() {
        Some(PeakKind::Minimal)
    } else {
        None
    }
}

/// Orders maximal peaks highest first, ties by smaller abscissa.
pub fn by_height_desc(p: &Peak, q: &Peak) -> std::cmp::Ordering {
    q.at.y.cmp(&p.at.y).then_with(|| p.at.x.cmp(&q.at.x))
}

/// Orders minimal peaks lowest first, ties by smaller abscissa.
pub fn by_height_asc(p: &Peak, q: &Peak) -> std::cmp::Ordering {
    p.at.y.cmp(&q.at.y).then_with(|| p.at.x.cmp(&q.at.x))
}
