//! Graph families for exhaustive and randomized checking.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

/// Graph whose edges are the pairs selected by the bits of `code`, pairs
/// taken in lexicographic order.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).expect("pairs are simple")
}

/// Every labeled graph on `n` vertices (`2^(n choose 2)` of them).
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let bits = n * n.saturating_sub(1) / 2;
    assert!(bits < 40, "too many labeled graphs on {n} vertices");
    (0u64..1 << bits).map(move |code| graph_from_code(n, code))
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).expect("pairs are simple")
}

/// Random connected graph with `n` vertices and `m >= n - 1` edges: a random
/// recursive tree plus uniformly chosen extra edges.
pub fn random_connected_sparse<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Graph {
    assert!(m >= n - 1 && m <= n * (n - 1) / 2);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut add = |u: usize, v: usize, edges: &mut Vec<(usize, usize)>| {
        let key = (u.min(v), u.max(v));
        if u != v && present.insert(key) {
            edges.push(key);
            true
        } else {
            false
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        add(order[i], order[j], &mut edges);
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        add(u, v, &mut edges);
    }
    Graph::from_edges(n, &edges).expect("deduplicated edges")
}

/// Random connected bipartite graph: random side assignment and edge
/// density, resampled until connected.
pub fn random_connected_bipartite<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2);
    loop {
        let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let p = rng.gen_range(0.2..0.8);
        let edges: Vec<_> = pairs(n)
            .into_iter()
            .filter(|&(u, v)| side[u] != side[v] && rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, &edges).expect("pairs are simple");
        if g.is_connected() {
            return g;
        }
    }
}

/// A split graph with its clique `k` and independent set `s`.
#[derive(Clone, Debug)]
pub struct SplitInstance {
    pub graph: Graph,
    pub clique: VertexSet,
    pub independent: VertexSet,
}

/// Split graphs on `n` vertices with clique `0..k` and independent set
/// `k..n`, where every independent vertex has at least `min_degree`
/// neighbors. Independent vertices are interchangeable, so their
/// neighborhoods are generated as a nondecreasing sequence; every split
/// graph with that degree condition appears up to isomorphism.
pub fn split_graphs(n: usize, min_degree: usize) -> Vec<SplitInstance> {
    let mut out = Vec::new();
    for k in 0..=n {
        let s = n - k;
        let nbhds: Vec<u64> = (0u64..1 << k)
            .filter(|m| m.count_ones() as usize >= min_degree)
            .collect();
        if s > 0 && nbhds.is_empty() {
            continue;
        }
        let mut choice = vec![0usize; s];
        loop {
            let mut edges = pairs(k);
            for (i, &c) in choice.iter().enumerate() {
                let m = nbhds[c];
                edges.extend((0..k).filter(|&j| m >> j & 1 == 1).map(|j| (j, k + i)));
            }
            let graph = Graph::from_edges(n, &edges).expect("simple");
            out.push(SplitInstance {
                clique: VertexSet::from_vertices(n, 0..k),
                independent: VertexSet::from_vertices(n, k..n),
                graph,
            });
            if !next_nondecreasing(&mut choice, nbhds.len()) {
                break;
            }
        }
    }
    out
}

fn next_nondecreasing(choice: &mut [usize], base: usize) -> bool {
    for i in (0..choice.len()).rev() {
        if choice[i] + 1 < base {
            choice[i] += 1;
            let c = choice[i];
            choice[i + 1..].fill(c);
            return true;
        }
    }
    false
}

/// Canonical adjacency code of a graph on at most 11 vertices: the minimum,
/// over vertex orders compatible with iterated degree refinement, of the
/// upper-triangle adjacency bits. Isomorphic graphs get equal codes.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let cells = refined_cells(g);
    let mut order: Vec<usize> = cells.iter().flatten().copied().collect();
    let bounds: Vec<(usize, usize)> = {
        let mut start = 0;
        cells
            .iter()
            .map(|c| {
                let b = (start, start + c.len());
                start += c.len();
                b
            })
            .collect()
    };
    let mut best = u64::MAX;
    permute_cells(g, &mut order, &bounds, 0, &mut best);
    best
}

fn code_of(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn permute_cells(
    g: &Graph,
    order: &mut Vec<usize>,
    bounds: &[(usize, usize)],
    cell: usize,
    best: &mut u64,
) {
    if cell == bounds.len() {
        *best = (*best).min(code_of(g, order));
        return;
    }
    let (lo, hi) = bounds[cell];
    permute_range(g, order, bounds, cell, lo, hi, best);
}

fn permute_range(
    g: &Graph,
    order: &mut Vec<usize>,
    bounds: &[(usize, usize)],
    cell: usize,
    pos: usize,
    hi: usize,
    best: &mut u64,
) {
    if pos + 1 >= hi {
        permute_cells(g, order, bounds, cell + 1, best);
        return;
    }
    for i in pos..hi {
        order.swap(pos, i);
        permute_range(g, order, bounds, cell, pos + 1, hi, best);
        order.swap(pos, i);
    }
}

/// Ordered vertex cells from color refinement, starting from degrees.
fn refined_cells(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut count = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                nc.sort_unstable();
                (color[v], nc)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        color = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        if distinct.len() == count {
            break;
        }
        count = distinct.len();
    }
    let mut cells = vec![Vec::new(); count];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// built by adding a vertex to every class on `n - 1` vertices in every
/// possible way. Sorted by canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=10).contains(&n));
    let mut level: Vec<u64> = vec![0];
    for k in 2..=n {
        let mut next: HashSet<u64> = HashSet::new();
        for &code in &level {
            let base = graph_from_code(k - 1, code);
            let base_edges: Vec<_> = base.edges().collect();
            for mask in 0u64..1 << (k - 1) {
                let mut edges = base_edges.clone();
                edges.extend(
                    (0..k - 1)
                        .filter(|&j| mask >> j & 1 == 1)
                        .map(|j| (j, k - 1)),
                );
                let g = Graph::from_edges(k, &edges).expect("simple");
                next.insert(canonical_code(&g));
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    level.into_iter().map(|c| graph_from_code(n, c)).collect()
}
