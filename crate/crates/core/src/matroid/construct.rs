use crate::algebra::ExactMatrix;

use super::{k_subsets, Matroid, MatroidError, Subset};

/// The column matroid `M[X]`: ground set indexes columns, bases are the
/// column sets of size `rank(X)` that are independent.
pub fn matroid_from_matrix(x: &ExactMatrix) -> Result<Matroid, MatroidError> {
    let n = x.cols();
    let r = x.rank();
    let bases = k_subsets(n, r)
        .into_iter()
        .filter(|s| {
            let cols: Vec<usize> = s.iter().map(|e| e - 1).collect();
            x.select_columns(&cols).rank() == r
        })
        .collect();
    Matroid::from_bases(n, bases)
}

/// An undirected multigraph on vertices `1..=n_vertices`; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph, MatroidError> {
        for &(u, v) in &edges {
            for w in [u, v] {
                if w == 0 || w > n_vertices {
                    return Err(MatroidError::VertexOutOfRange {
                        vertex: w,
                        n_vertices,
                    });
                }
            }
        }
        Ok(Graph { n_vertices, edges })
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        Graph {
            n_vertices: n,
            edges,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n_vertices);
        for &(u, v) in &self.edges {
            uf.union(u - 1, v - 1);
        }
        (0..self.n_vertices).filter(|&v| uf.find(v) == v).count()
    }

    /// Whether the edges in `s` (1-indexed) form a forest.
    fn is_forest(&self, s: Subset) -> bool {
        let mut uf = UnionFind::new(self.n_vertices);
        s.iter().all(|e| {
            let (u, v) = self.edges[e - 1];
            uf.union(u - 1, v - 1)
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Graphic matroid: ground set indexes edges in input order, bases are
/// spanning forests.
pub fn matroid_from_graph(graph: &Graph) -> Result<Matroid, MatroidError> {
    let m = graph.edges.len();
    let rank = graph.n_vertices - graph.connected_components();
    let bases = k_subsets(m, rank)
        .into_iter()
        .filter(|&s| graph.is_forest(s))
        .collect();
    Matroid::from_bases(m, bases)
}
