//! Local peaks of `k`-levels in line arrangements and of bottleneck
//! trajectories in parametric minimum spanning trees, in exact rational
//! arithmetic.
//!
//! The fast algorithms live in [`klevel`] and [`pmst`] and run on the
//! halfplane range-searching structures of [`range_search`]. Every one of
//! them has a brute-force counterpart in [`oracle`].

pub mod geom;
pub mod klevel;
pub mod oracle;
pub mod peak;
pub mod pmst;
pub mod random;
pub mod range_search;
pub mod rational;

pub use geom::{canonicalize, event_abscissas, intersect, level_of, Canonical, GeomError, Interval, Line, LineSpec, Point};
pub use klevel::{LevelDecision, LevelError, LevelInstance, LevelPoint, SemiActive};
pub use peak::{Peak, PeakKind};
pub use pmst::{
    d_bound, sbe_all_peaks, sbe_bounded, sbe_decision, sbe_extrema, sbe_one_shot, sbe_one_shot_c, two_shot_forest,
    BoundaryExtremum, Forest, GraphError, ParamEdge, ParamGraph, SbeDecision, SbeExtrema, SbePeaks, SbeResult,
};
pub use range_search::{build_partition, build_tree, Halfplane, PartitionTree, RangeError, Side, SimplicialPartition};
pub use rational::{format_rational, parse_rational, Rational};
