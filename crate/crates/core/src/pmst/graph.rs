use num_traits::Signed;
use thiserror::Error;

use super::forest::UnionFind;
use crate::geom::{canonicalize, GeomError, Line, LineSpec, Point};
use crate::range_search::{build_partition, RangeError, SimplicialPartition};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph needs at least two nodes, got {0}")]
    TooFewNodes(usize),
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge {edge} is a self-loop on node {node}")]
    SelfLoop { edge: usize, node: usize },
    #[error("edge {edge} references node {node} but the graph has {nodes} nodes")]
    NodeOutOfRange { edge: usize, node: usize, nodes: usize },
    #[error("{edges} edges exceed the k(k+1)/2 = {limit} bound for {nodes} nodes")]
    TooManyEdges { edges: usize, nodes: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("component target c = {c} must lie in 1..{nodes}")]
    InvalidComponentTarget { c: usize, nodes: usize },
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

/// Edge `u - v` whose weight at parameter `x` is `a*x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamEdge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub a: Rational,
    pub b: Rational,
}

impl ParamEdge {
    pub fn new(id: usize, u: usize, v: usize, a: Rational, b: Rational) -> Self {
        ParamEdge { id, u, v, a, b }
    }

    pub fn weight(&self, x: &Rational) -> Rational {
        &self.a * x + &self.b
    }

    pub fn has_positive_slope(&self) -> bool {
        self.a.is_positive()
    }

    pub fn line(&self) -> Line {
        Line::new(self.id, self.a.clone(), self.b.clone())
    }
}

/// A connected graph with linear parametric weights, preprocessed for
/// bottleneck queries.
///
/// The weight lines are canonicalized into a simple arrangement. Their dual
/// points are split into classes; for each class a weight-independent
/// spanning forest of its edges is stored.
#[derive(Debug, Clone)]
pub struct ParamGraph {
    nodes: usize,
    edges: Vec<ParamEdge>,
    partition: SimplicialPartition,
    class_forests: Vec<Vec<usize>>,
    perturbation: Option<Rational>,
}

impl ParamGraph {
    /// Builds the graph from `(u, v, a, b)` edge tuples; edge ids are the
    /// tuple positions.
    pub fn new(nodes: usize, edges: &[(usize, usize, Rational, Rational)]) -> Result<Self, GraphError> {
        if nodes < 2 {
            return Err(GraphError::TooFewNodes(nodes));
        }
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let limit = nodes * (nodes + 1) / 2;
        if edges.len() > limit {
            return Err(GraphError::TooManyEdges { edges: edges.len(), nodes, limit });
        }
        let mut uf = UnionFind::new(nodes);
        for (edge, (u, v, _, _)) in edges.iter().enumerate() {
            for &node in [u, v] {
                if node >= nodes {
                    return Err(GraphError::NodeOutOfRange { edge, node, nodes });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { edge, node: *u });
            }
            uf.union(*u, *v);
        }
        if uf.components() != 1 {
            return Err(GraphError::Disconnected);
        }

        let specs: Vec<LineSpec> = edges.iter().map(|(_, _, a, b)| LineSpec::sloped(a.clone(), b.clone())).collect();
        let canonical = canonicalize(&specs)?;
        let edges: Vec<ParamEdge> = edges
            .iter()
            .zip(&canonical.lines)
            .map(|((u, v, _, _), l)| ParamEdge::new(l.id, *u, *v, l.a.clone(), l.b.clone()))
            .collect();

        let duals: Vec<Point> = edges.iter().map(|e| e.line().dual()).collect();
        let partition = build_partition(&duals, class_count(edges.len(), nodes))?;
        let class_forests = partition
            .classes
            .iter()
            .map(|class| {
                let mut uf = UnionFind::new(nodes);
                class.members.iter().copied().filter(|&e| uf.union(edges[e].u, edges[e].v)).collect()
            })
            .collect();

        Ok(ParamGraph { nodes, edges, partition, class_forests, perturbation: canonical.perturbation })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[ParamEdge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &ParamEdge {
        &self.edges[id]
    }

    pub fn partition(&self) -> &SimplicialPartition {
        &self.partition
    }

    /// Spanning forest (edge ids) of the edges in partition class `i`.
    pub fn class_forest(&self, i: usize) -> &[usize] {
        &self.class_forests[i]
    }

    pub fn perturbation(&self) -> Option<&Rational> {
        self.perturbation.as_ref()
    }

    pub fn weight_lines(&self) -> Vec<Line> {
        self.edges.iter().map(ParamEdge::line).collect()
    }

    pub(crate) fn check_target(&self, c: usize) -> Result<(), GraphError> {
        if c == 0 || c >= self.nodes {
            return Err(GraphError::InvalidComponentTarget { c, nodes: self.nodes });
        }
        Ok(())
    }
}

/// Class count `ceil((n/k)^(2/3))`, at least 2 and at most `n`.
fn class_count(n: usize, k: usize) -> usize {
    let r = ((n as f64 / k as f64).powf(2.0 / 3.0)).ceil() as usize;
    r.max(2).min(n)
}
