//! Exact vertex coloring by DSATUR branch and bound.

use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_LABEL};

/// Greedy clique: grow from each start vertex, always adding the candidate
/// with the most neighbours among the remaining candidates.
pub fn greedy_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    for start in g.vertices() {
        let mut clique = VertexSet::singleton(start);
        let mut cand = g.neighbors(start);
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (g.neighbors(v).intersection(cand).len(), usize::MAX - v))
        {
            clique = clique.with(v);
            cand = cand.intersection(g.neighbors(v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

struct State<'a> {
    g: &'a Graph,
    color: Vec<Option<usize>>,
    best: usize,
    best_assignment: Vec<Option<usize>>,
    lower: usize,
}

impl State<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen = 0u64;
        for w in self.g.neighbors(v) {
            if let Some(c) = self.color[w] {
                seen |= 1 << c;
            }
        }
        seen.count_ones() as usize
    }

    fn pick(&self, uncolored: VertexSet) -> usize {
        uncolored
            .iter()
            .max_by_key(|&v| {
                let deg = self.g.neighbors(v).intersection(uncolored).len();
                (self.saturation(v), deg, usize::MAX - v)
            })
            .expect("nonempty")
    }

    fn search(&mut self, uncolored: VertexSet, used: usize) {
        if self.best == self.lower {
            return;
        }
        if uncolored.is_empty() {
            if used < self.best {
                self.best = used;
                self.best_assignment = self.color.clone();
            }
            return;
        }
        let v = self.pick(uncolored);
        let mut forbidden = 0u64;
        for w in self.g.neighbors(v) {
            if let Some(c) = self.color[w] {
                forbidden |= 1 << c;
            }
        }
        let rest = uncolored.without(v);
        for c in 0..used {
            if forbidden & (1 << c) == 0 {
                self.color[v] = Some(c);
                self.search(rest, used);
                self.color[v] = None;
                if self.best == self.lower {
                    return;
                }
            }
        }
        if used + 1 < self.best {
            self.color[v] = Some(used);
            self.search(rest, used + 1);
            self.color[v] = None;
        }
    }
}

/// Minimum number of colors and an optimal assignment (indexed by label).
///
/// Vertices are processed in DSATUR order with ties broken by label, so the
/// witness is reproducible.
pub fn color_exact(g: &Graph) -> (usize, Vec<Option<usize>>) {
    if g.order() == 0 {
        return (0, vec![None; MAX_LABEL + 1]);
    }
    let lower = greedy_clique(g).len();
    let mut state = State {
        g,
        color: vec![None; MAX_LABEL + 1],
        best: g.order() + 1,
        best_assignment: Vec::new(),
        lower,
    };
    state.search(g.vertices(), 0);
    (state.best, state.best_assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Graph::from_edges(VertexSet::range(n), &edges)
    }

    #[test]
    fn cycles() {
        for n in 3..=12 {
            let (c, _) = color_exact(&cycle(n));
            assert_eq!(c, if n % 2 == 0 { 2 } else { 3 }, "n={n}");
        }
    }

    #[test]
    fn complete_graph_and_empty() {
        let mut g = Graph::new(VertexSet::range(6));
        for a in 1..=6 {
            for b in a + 1..=6 {
                g.add_edge(a, b);
            }
        }
        assert_eq!(color_exact(&g).0, 6);
        assert_eq!(color_exact(&Graph::new(VertexSet::range(4))).0, 1);
        assert_eq!(color_exact(&Graph::new(VertexSet::EMPTY)).0, 0);
    }

    #[test]
    fn grotzsch_graph_needs_four() {
        // Triangle-free, chromatic number 4: the clique bound is loose here.
        let edges = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (6, 2),
            (6, 5),
            (7, 1),
            (7, 3),
            (8, 2),
            (8, 4),
            (9, 3),
            (9, 5),
            (10, 1),
            (10, 4),
            (11, 6),
            (11, 7),
            (11, 8),
            (11, 9),
            (11, 10),
        ];
        let g = Graph::from_edges(VertexSet::range(11), &edges);
        assert_eq!(greedy_clique(&g).len(), 2);
        assert_eq!(color_exact(&g).0, 4);
    }
}
