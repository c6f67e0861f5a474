use num_traits::Signed;

use super::partition::split_indices;
use super::{Cell, Coverage, Halfplane, RangeError};
use crate::geom::Point;

/// Maximum number of points stored in a leaf.
pub const LEAF_SIZE: usize = 8;

/// Work done by one traced query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub nodes_visited: usize,
    /// Points tested one by one inside leaves whose cell the boundary cut.
    pub leaf_points_tested: usize,
}

#[derive(Debug, Clone)]
struct Node {
    cell: Cell,
    count: usize,
    positive: usize,
    body: Body,
}

#[derive(Debug, Clone)]
enum Body {
    Leaf(Vec<usize>),
    Inner(Vec<Node>),
}

/// Recursive simplicial partition of a point set. A node with `m` points has
/// `max(4, ceil(sqrt(m)))` children; leaves hold at most [`LEAF_SIZE`] points.
///
/// Each node also counts its points with positive X coordinate; for dual
/// points those are the lines of positive slope.
#[derive(Debug, Clone)]
pub struct PartitionTree {
    points: Vec<Point>,
    root: Node,
}

pub fn build_tree(points: &[Point]) -> Result<PartitionTree, RangeError> {
    if points.is_empty() {
        return Err(RangeError::EmptyInput);
    }
    let idx: Vec<usize> = (0..points.len()).collect();
    let root = build_node(points, idx);
    Ok(PartitionTree { points: points.to_vec(), root })
}

fn ceil_sqrt(m: usize) -> usize {
    let mut s = (m as f64).sqrt() as usize;
    while s * s < m {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= m {
        s -= 1;
    }
    s
}

fn build_node(points: &[Point], idx: Vec<usize>) -> Node {
    let cell = Cell::bounding(idx.iter().map(|&i| &points[i]));
    let positive = idx.iter().filter(|&&i| points[i].x.is_positive()).count();
    let count = idx.len();
    if count <= LEAF_SIZE {
        let mut idx = idx;
        idx.sort_unstable();
        return Node { cell, count, positive, body: Body::Leaf(idx) };
    }
    let r = ceil_sqrt(count).max(4).min(count);
    let children = split_indices(points, idx, r).into_iter().map(|g| build_node(points, g)).collect();
    Node { cell, count, positive, body: Body::Inner(children) }
}

impl PartitionTree {
    pub fn len(&self) -> usize {
        self.root.count
    }

    pub fn is_empty(&self) -> bool {
        self.root.count == 0
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Number of points in `h`, or with `positive_only` the number of those
    /// with positive X coordinate.
    pub fn halfplane_count(&self, h: &Halfplane, positive_only: bool) -> usize {
        self.halfplane_count_traced(h, positive_only).0
    }

    pub fn halfplane_count_traced(&self, h: &Halfplane, positive_only: bool) -> (usize, QueryStats) {
        let mut stats = QueryStats::default();
        let count = self.count_node(&self.root, h, positive_only, &mut stats);
        (count, stats)
    }

    fn count_node(&self, node: &Node, h: &Halfplane, positive_only: bool, stats: &mut QueryStats) -> usize {
        stats.nodes_visited += 1;
        match h.classify(&node.cell) {
            Coverage::Inside => {
                if positive_only {
                    node.positive
                } else {
                    node.count
                }
            }
            Coverage::Outside => 0,
            Coverage::Cut => match &node.body {
                Body::Leaf(members) => {
                    stats.leaf_points_tested += members.len();
                    members
                        .iter()
                        .map(|&i| &self.points[i])
                        .filter(|p| (!positive_only || p.x.is_positive()) && h.contains(p))
                        .count()
                }
                Body::Inner(children) => {
                    children.iter().map(|c| self.count_node(c, h, positive_only, stats)).sum()
                }
            },
        }
    }

    /// Indices of the points in `h`, ascending.
    pub fn halfplane_report(&self, h: &Halfplane) -> Vec<usize> {
        let mut out = Vec::new();
        self.report_node(&self.root, h, &mut out);
        out.sort_unstable();
        out
    }

    fn report_node(&self, node: &Node, h: &Halfplane, out: &mut Vec<usize>) {
        match h.classify(&node.cell) {
            Coverage::Inside => collect(node, out),
            Coverage::Outside => {}
            Coverage::Cut => match &node.body {
                Body::Leaf(members) => out.extend(members.iter().copied().filter(|&i| h.contains(&self.points[i]))),
                Body::Inner(children) => children.iter().for_each(|c| self.report_node(c, h, out)),
            },
        }
    }

    /// Number of points in `h1 ∩ h2`.
    pub fn wedge_count(&self, h1: &Halfplane, h2: &Halfplane) -> usize {
        self.wedge_node(&self.root, h1, h2)
    }

    fn wedge_node(&self, node: &Node, h1: &Halfplane, h2: &Halfplane) -> usize {
        let c1 = h1.classify(&node.cell);
        let c2 = h2.classify(&node.cell);
        match (c1, c2) {
            (Coverage::Outside, _) | (_, Coverage::Outside) => 0,
            (Coverage::Inside, Coverage::Inside) => node.count,
            _ => match &node.body {
                Body::Leaf(members) => members
                    .iter()
                    .map(|&i| &self.points[i])
                    .filter(|p| h1.contains(p) && h2.contains(p))
                    .count(),
                Body::Inner(children) => children.iter().map(|c| self.wedge_node(c, h1, h2)).sum(),
            },
        }
    }

    /// Checks every node's stored counts against a recount of its subtree.
    pub fn counts_consistent(&self) -> bool {
        fn check(tree: &PartitionTree, node: &Node) -> Option<(usize, usize)> {
            let (count, positive) = match &node.body {
                Body::Leaf(members) => {
                    if members.len() > LEAF_SIZE {
                        return None;
                    }
                    let pos = members.iter().filter(|&&i| tree.points[i].x.is_positive()).count();
                    (members.len(), pos)
                }
                Body::Inner(children) => {
                    let mut acc = (0, 0);
                    for c in children {
                        let (n, p) = check(tree, c)?;
                        acc = (acc.0 + n, acc.1 + p);
                    }
                    acc
                }
            };
            (count == node.count && positive == node.positive).then_some((count, positive))
        }
        check(self, &self.root) == Some((self.points.len(), self.points.iter().filter(|p| p.x.is_positive()).count()))
    }

    pub fn depth(&self) -> usize {
        fn depth(node: &Node) -> usize {
            match &node.body {
                Body::Leaf(_) => 1,
                Body::Inner(children) => 1 + children.iter().map(depth).max().unwrap_or(0),
            }
        }
        depth(&self.root)
    }
}

fn collect(node: &Node, out: &mut Vec<usize>) {
    match &node.body {
        Body::Leaf(members) => out.extend_from_slice(members),
        Body::Inner(children) => children.iter().for_each(|c| collect(c, out)),
    }
}
