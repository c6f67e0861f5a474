/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n], components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Canonical component label per element: the smallest member.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut smallest = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            smallest[r] = smallest[r].min(i);
        }
        (0..n).map(|i| smallest[self.find(i)]).collect()
    }
}

/// Acyclic edge set over the graph's nodes.
#[derive(Debug, Clone)]
pub struct Forest {
    pub edges: Vec<usize>,
    uf: UnionFind,
}

impl Forest {
    pub fn empty(nodes: usize) -> Self {
        Forest { edges: Vec::new(), uf: UnionFind::new(nodes) }
    }

    /// Adds edge `id` joining `u` and `v` unless that would close a cycle.
    pub fn insert(&mut self, id: usize, u: usize, v: usize) -> bool {
        let joined = self.uf.union(u, v);
        if joined {
            self.edges.push(id);
        }
        joined
    }

    pub fn components(&self) -> usize {
        self.uf.components()
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.uf.components() == 1
    }

    pub fn find(&mut self, node: usize) -> usize {
        self.uf.find(node)
    }

    pub fn component_labels(&mut self) -> Vec<usize> {
        self.uf.labels()
    }
}
