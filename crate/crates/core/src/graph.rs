//! 1-skeleta as adjacency bitmasks.

use crate::complex::SimplicialComplex;
use crate::vertex_set::{VertexSet, MAX_LABEL};

/// A simple graph on a set of labels, adjacency stored per label.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    vertices: VertexSet,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(vertices: VertexSet) -> Self {
        Graph {
            vertices,
            adj: vec![VertexSet::EMPTY; MAX_LABEL + 1],
        }
    }

    /// `sk¹(K)` on the geometric vertices of `K`.
    pub fn skeleton_of(k: &SimplicialComplex) -> Self {
        let mut g = Graph::new(k.vertices());
        for f in k.facets() {
            for v in f.iter() {
                g.adj[v] = g.adj[v].union(f.without(v));
            }
        }
        g
    }

    pub fn from_edges(vertices: VertexSet, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(vertices);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        assert!(self.vertices.contains(a) && self.vertices.contains(b));
        self.adj[a] = self.adj[a].with(b);
        self.adj[b] = self.adj[b].with(a);
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .iter()
            .map(|v| self.adj[v].len())
            .sum::<usize>()
            / 2
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Induced subgraph on `s ∩ V`.
    pub fn induced(&self, s: VertexSet) -> Self {
        let keep = s.intersection(self.vertices);
        let mut g = Graph::new(keep);
        for v in keep {
            g.adj[v] = self.adj[v].intersection(keep);
        }
        g
    }

    /// Connected components, each as a vertex set, ordered by smallest label.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices;
        let mut out = Vec::new();
        while let Some(start) = left.min() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.union(self.adj[v]);
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Shortest path from `a` to `b` using only vertices in `allowed`
    /// (both endpoints must be in `allowed`). Returned path includes both ends.
    pub fn shortest_path(&self, a: usize, b: usize, allowed: VertexSet) -> Option<Vec<usize>> {
        let mut parent = vec![0usize; MAX_LABEL + 1];
        let mut seen = VertexSet::singleton(a);
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.adj[v].intersection(allowed).difference(seen) {
                seen = seen.with(w);
                parent[w] = v;
                queue.push_back(w);
            }
        }
        None
    }
}
