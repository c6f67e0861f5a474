//! Seeded generators for random instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{canonicalize, Line, LineSpec};
use crate::pmst::{GraphError, ParamGraph};
use crate::rational::{rat, Rational};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform `p/q` with `|p| <= magnitude` and `1 <= q <= max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, magnitude: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-magnitude..=magnitude), rng.gen_range(1..=max_den))
}

/// `n` random lines, canonicalized into a simple arrangement.
pub fn random_lines<R: Rng>(rng: &mut R, n: usize) -> Vec<Line> {
    let specs: Vec<LineSpec> =
        (0..n).map(|_| LineSpec::sloped(random_rational(rng, 40, 7), random_rational(rng, 40, 7))).collect();
    canonicalize(&specs).expect("nonempty sloped input").lines
}

/// Edge tuples `(u, v, a, b)` of a random connected multigraph on `k`
/// nodes with `n` edges: a random spanning tree plus `n - k + 1` random
/// extra edges. Requires `k - 1 <= n <= k(k+1)/2`.
pub fn random_graph_edges<R: Rng>(rng: &mut R, k: usize, n: usize) -> Vec<(usize, usize, Rational, Rational)> {
    assert!(k >= 2 && n + 1 >= k && n <= k * (k + 1) / 2, "edge count {n} invalid for {k} nodes");
    let mut pairs = Vec::with_capacity(n);
    for v in 1..k {
        pairs.push((rng.gen_range(0..v), v));
    }
    while pairs.len() < n {
        let u = rng.gen_range(0..k);
        let v = rng.gen_range(0..k);
        if u != v {
            pairs.push((u, v));
        }
    }
    pairs
        .into_iter()
        .map(|(u, v)| (u, v, random_rational(rng, 20, 5), random_rational(rng, 40, 5)))
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, k: usize, n: usize) -> Result<ParamGraph, GraphError> {
    ParamGraph::new(k, &random_graph_edges(rng, k, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::is_simple;

    #[test]
    fn generators_are_deterministic() {
        let a = random_lines(&mut seeded_rng(5), 12);
        let b = random_lines(&mut seeded_rng(5), 12);
        assert_eq!(a, b);
        assert!(is_simple(&a));
    }

    #[test]
    fn graphs_are_connected_with_requested_size() {
        let mut rng = seeded_rng(6);
        for k in 2..10 {
            for n in [k - 1, k * (k + 1) / 2] {
                let g = random_graph(&mut rng, k, n).unwrap();
                assert_eq!(g.edges().len(), n);
                assert_eq!(g.nodes(), k);
            }
        }
    }
}
