//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Hop distance; `Infinite` between vertices in different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Immutable simple graph. Adjacency is kept both as bitrows (for set
/// algebra) and as sorted neighbor lists (for traversals on sparse input).
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
    nbrs: Vec<Vec<usize>>,
}

/// Two-coloring of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub x: VertexSet,
    pub y: VertexSet,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<VertexSet>) -> Graph {
        let nbrs: Vec<Vec<usize>> = adj.iter().map(VertexSet::to_vec).collect();
        let m = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            n: adj.len(),
            m,
            adj,
            nbrs,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_edges(n, &[]).expect("n >= 1")
    }

    pub fn complete(n: usize) -> Graph {
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = VertexSet::full(n);
            row.remove(v);
            adj.push(row);
        }
        assert!(n >= 1);
        Self::from_adjacency(adj)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::with_capacity(a * b);
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Self::from_edges(a + b, &edges).expect("valid biclique")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Open neighborhood of `v` as a bitrow.
    #[inline]
    pub fn adj(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, it: I) -> VertexSet {
        VertexSet::from_vertices(self.n, it)
    }

    /// `N[v]`.
    pub fn closed_nbhd(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// `N(S)`: vertices with at least one neighbor in `s`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> VertexSet {
        assert_eq!(s.universe(), self.n);
        let mut out = VertexSet::new(self.n);
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// `N[S] = N(S) ∪ S`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.open_neighborhood(s);
        out.union_with(s);
        out
    }

    pub fn complement(&self) -> Graph {
        let adj = (0..self.n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Self::from_adjacency(adj)
    }

    pub fn is_complete(&self) -> bool {
        2 * self.m == self.n * (self.n - 1)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    /// BFS distances from `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        dist[src] = Distance::Finite(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].finite().unwrap_or(0);
            for &w in &self.nbrs[u] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<Distance>> {
        (0..self.n).map(|v| self.distances_from(v)).collect()
    }

    /// Largest distance; `Infinite` iff the graph is disconnected.
    pub fn diameter(&self) -> Distance {
        (0..self.n)
            .flat_map(|v| self.distances_from(v))
            .max()
            .unwrap_or(Distance::Finite(0))
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// their smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut comps = Vec::new();
        for root in within {
            if seen.contains(root) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![root];
            seen.insert(root);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.nbrs[u] {
                    if within.contains(w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// A proper two-coloring, or `None` if the graph has an odd cycle.
    /// Each component's smallest vertex goes to `x`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for root in 0..self.n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("colored");
                for &w in &self.nbrs[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let x = VertexSet::from_vertices(self.n, (0..self.n).filter(|&v| side[v] == Some(false)));
        let y = x.complement();
        Some(Bipartition { x, y })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_co_bipartite(&self) -> bool {
        self.complement().is_bipartite()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(u, v)| !self.adj[u].intersects(&self.adj[v]))
    }

    /// Subgraph induced by `s`, relabeled to `0..|s|` in ascending order.
    /// Returns the graph and the map from new to old indices.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = s.to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let k = old.len();
        let adj = old
            .iter()
            .map(|&v| {
                VertexSet::from_vertices(k, self.adj[v].intersection(s).iter().map(|w| new_of[w]))
            })
            .collect();
        (Self::from_adjacency(adj), old)
    }

    /// This graph plus `extra_vertices` new vertices `n..n+extra` and the
    /// given additional edges.
    pub(crate) fn with_added(&self, extra_vertices: usize, edges: &[(usize, usize)]) -> Graph {
        let n = self.n + extra_vertices;
        let mut all: Vec<(usize, usize)> = self.edges().collect();
        all.extend_from_slice(edges);
        Graph::from_edges(n, &all).expect("gadget edges are simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p4() -> Graph {
        Graph::path(4)
    }

    #[test]
    fn closed_neighborhood_examples() {
        let g = p4();
        assert_eq!(g.closed_neighborhood(&g.set([0])).to_vec(), vec![0, 1]);
        assert!(g.closed_neighborhood(&g.empty_set()).is_empty());
        let c4 = Graph::cycle(4);
        assert_eq!(c4.closed_neighborhood(&c4.set([0])).to_vec(), vec![0, 1, 3]);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement().m(), 0);
        let edges: Vec<_> = p4().complement().edges().collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (1, 3)]);
        let edges: Vec<_> = Graph::cycle(4).complement().edges().collect();
        assert_eq!(edges, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn diameters() {
        assert_eq!(p4().diameter(), Distance::Finite(3));
        assert_eq!(Graph::cycle(4).diameter(), Distance::Finite(2));
        let two_k2 = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(two_k2.diameter(), Distance::Infinite);
        assert_eq!(Graph::empty(1).diameter(), Distance::Finite(0));
    }

    #[test]
    fn bipartition_and_co_bipartite() {
        let bip = Graph::cycle(4).bipartition().unwrap();
        assert_eq!(bip.x.to_vec(), vec![0, 2]);
        assert_eq!(bip.y.to_vec(), vec![1, 3]);
        let c5 = Graph::cycle(5);
        assert!(c5.bipartition().is_none());
        // C5 is self-complementary: its complement is the 5-cycle 0-2-4-1-3.
        let comp = c5.complement();
        assert!(comp
            .edges()
            .all(|(u, v)| (v - u) % 5 == 2 || (v - u) % 5 == 3));
        assert_eq!(comp.m(), 5);
        assert!(!c5.is_co_bipartite());
        assert!(Graph::complete(3).is_co_bipartite());
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph));
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 0))
        );
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(5);
        let (h, map) = g.induced_subgraph(&g.set([0, 1, 3]));
        assert_eq!(map, vec![0, 1, 3]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn complement_is_an_involution(g in arb_graph()) {
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn closed_neighborhood_is_extensive_and_monotone(g in arb_graph(), a in any::<u64>(), b in any::<u64>()) {
            let n = g.n();
            let s = VertexSet::from_mask(n, a);
            let t = s.union(&VertexSet::from_mask(n, b));
            let ns = g.closed_neighborhood(&s);
            prop_assert!(s.is_subset(&ns));
            prop_assert!(ns.is_subset(&g.closed_neighborhood(&t)));
        }

        #[test]
        fn diameter_at_least_three_iff_far_pair(g in arb_graph()) {
            let d = g.distance_matrix();
            let n = g.n();
            let far_pair = (0..n).any(|u| (0..n).any(|v| {
                u != v && !g.has_edge(u, v)
                    && !g.adj(u).intersects(g.adj(v))
                    && d[u][v].finite().is_some_and(|x| x >= 3)
            }));
            let diam_ge3 = g.is_connected() && g.diameter().finite().unwrap() >= 3;
            let has_far = far_pair && g.is_connected();
            prop_assert_eq!(diam_ge3, has_far);
        }

        #[test]
        fn bipartition_is_proper(g in arb_graph()) {
            if let Some(b) = g.bipartition() {
                prop_assert!(b.x.is_disjoint(&b.y));
                prop_assert!(b.x.union(&b.y).is_full());
                prop_assert!(g.is_independent(&b.x));
                prop_assert!(g.is_independent(&b.y));
            } else {
                let n = g.n();
                let two_colorable = (0u32..1 << n).any(|c| {
                    g.edges().all(|(u, v)| (c >> u & 1) != (c >> v & 1))
                });
                prop_assert!(!two_colorable);
            }
        }
    }
}
