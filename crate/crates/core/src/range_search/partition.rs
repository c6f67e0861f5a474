use std::cmp::Ordering;

use super::{Cell, RangeError};
use crate::geom::Point;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    /// Indices into the point slice the partition was built from, ascending.
    pub members: Vec<usize>,
    pub cell: Cell,
}

/// `r` disjoint classes covering the input, each at most `2n/r` points and
/// enclosed in a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPartition {
    pub classes: Vec<PartitionClass>,
    pub r: usize,
    pub n: usize,
}

/// Splits `points` into exactly `r` classes by recursive median cuts that
/// alternate between the x and y axes. The two halves of every cut receive
/// point counts proportional to the class counts they still have to produce.
pub fn build_partition(points: &[Point], r: usize) -> Result<SimplicialPartition, RangeError> {
    let n = points.len();
    if r == 0 {
        return Err(RangeError::ZeroClasses);
    }
    if r > n {
        return Err(RangeError::RTooLarge { r, n });
    }
    let idx: Vec<usize> = (0..n).collect();
    let groups = split_indices(points, idx, r);
    Ok(SimplicialPartition::from_groups(points, groups, n))
}

pub(crate) fn split_indices(points: &[Point], idx: Vec<usize>, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(r);
    split_rec(points, idx, r, 0, &mut out);
    out
}

fn split_rec(points: &[Point], mut idx: Vec<usize>, r: usize, depth: usize, out: &mut Vec<Vec<usize>>) {
    debug_assert!(idx.len() >= r);
    if r == 1 {
        idx.sort_unstable();
        out.push(idx);
        return;
    }
    let by_x = depth.is_multiple_of(2);
    idx.sort_by(|&i, &j| axis_cmp(&points[i], &points[j], by_x).then(i.cmp(&j)));
    let left_classes = r / 2;
    let cut = idx.len() * left_classes / r;
    let right = idx.split_off(cut);
    split_rec(points, idx, left_classes, depth + 1, out);
    split_rec(points, right, r - left_classes, depth + 1, out);
}

fn axis_cmp(p: &Point, q: &Point, by_x: bool) -> Ordering {
    if by_x {
        p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y))
    } else {
        p.y.cmp(&q.y).then_with(|| p.x.cmp(&q.x))
    }
}

impl SimplicialPartition {
    pub(crate) fn from_groups(points: &[Point], groups: Vec<Vec<usize>>, n: usize) -> Self {
        let classes: Vec<PartitionClass> = groups
            .into_iter()
            .map(|members| {
                let cell = Cell::bounding(members.iter().map(|&i| &points[i]));
                PartitionClass { members, cell }
            })
            .collect();
        let r = classes.len();
        SimplicialPartition { classes, r, n }
    }

    /// Number of class cells the line `Y = slope*X + intercept` cuts.
    pub fn crossings(&self, slope: &Rational, intercept: &Rational) -> usize {
        self.classes.iter().filter(|c| c.cell.is_cut_by(slope, intercept)).count()
    }

    pub fn max_crossings(&self, probes: &[(Rational, Rational)]) -> usize {
        probes.iter().map(|(m, q)| self.crossings(m, q)).max().unwrap_or(0)
    }

    /// Measured crossing constant `max_crossings / sqrt(r)` over `probes`.
    pub fn crossing_constant(&self, probes: &[(Rational, Rational)]) -> f64 {
        self.max_crossings(probes) as f64 / (self.r as f64).sqrt()
    }

    /// Disjoint cover of `0..n` with every class of size at most `2n/r`.
    pub fn is_balanced_cover(&self) -> bool {
        let mut seen = vec![false; self.n];
        for class in &self.classes {
            if class.members.is_empty() || class.members.len() * self.r > 2 * self.n {
                return false;
            }
            for &i in &class.members {
                if i >= self.n || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        self.classes.len() == self.r && seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Point::new(rat(rng.gen_range(-1000..1000), 7), rat(rng.gen_range(-1000..1000), 3)))
            .collect()
    }

    fn random_probes(points: &[Point], count: usize, seed: u64) -> Vec<(Rational, Rational)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let p = &points[rng.gen_range(0..points.len())];
                let m = rat(rng.gen_range(-400..400), rng.gen_range(1..50));
                let q = &p.y - &m * &p.x + rat(rng.gen_range(-5..5), 11);
                (m, q)
            })
            .collect()
    }

    #[test]
    fn single_class_holds_everything() {
        let pts = random_points(16, 1);
        let part = build_partition(&pts, 1).unwrap();
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.classes[0].members.len(), 16);
        assert!(part.max_crossings(&random_probes(&pts, 100, 2)) <= 1);
    }

    #[test]
    fn r_equal_n_gives_singletons() {
        let pts = random_points(16, 3);
        let part = build_partition(&pts, 16).unwrap();
        assert!(part.classes.iter().all(|c| c.members.len() == 1));
        assert!(part.is_balanced_cover());
    }

    #[test]
    fn r_larger_than_n_is_rejected() {
        let pts = random_points(4, 4);
        assert_eq!(build_partition(&pts, 5), Err(RangeError::RTooLarge { r: 5, n: 4 }));
        assert_eq!(build_partition(&pts, 0), Err(RangeError::ZeroClasses));
    }

    #[test]
    fn random_partition_meets_size_and_crossing_bounds() {
        let pts = random_points(256, 5);
        let part = build_partition(&pts, 16).unwrap();
        assert!(part.is_balanced_cover());
        assert!(part.classes.iter().all(|c| c.members.len() <= 32));
        let probes = random_probes(&pts, 500, 6);
        // Exhaustive recount per probe line, independent of `crossings`.
        let worst = probes
            .iter()
            .map(|(m, q)| {
                part.classes
                    .iter()
                    .filter(|c| {
                        let sides: Vec<_> = c.cell.corners().iter().map(|p| (&p.y - m * &p.x - q).cmp(&int(0))).collect();
                        sides.contains(&Ordering::Less) && sides.contains(&Ordering::Greater)
                    })
                    .count()
            })
            .max()
            .unwrap();
        assert_eq!(worst, part.max_crossings(&probes));
        assert!(worst <= 8 * 4, "max crossings {worst}");
    }

    #[test]
    fn odd_class_counts_stay_balanced() {
        let pts = random_points(101, 7);
        for r in [3, 5, 7, 10, 33, 100] {
            let part = build_partition(&pts, r).unwrap();
            assert!(part.is_balanced_cover(), "r = {r}");
        }
    }
}
