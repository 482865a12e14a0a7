//! Digital convexity: witness sets, covers via total domination of the
//! complement, and 2-partitions of bipartite graphs.

use crate::convexity::{ConvexFamily, ConvexityKind, CoverMode};
use crate::error::{Error, Result};
use crate::exact::Limits;
use crate::graph::{Distance, Graph};
use crate::vertex_set::VertexSet;

/// A set `W` whose closed neighborhood complement `V \ N[W]` is the
/// d-convex set it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DConvexWitness {
    pub w: VertexSet,
}

/// `V \ N[W]`, which is always d-convex.
pub fn dconvex_from_witness(g: &Graph, w: &VertexSet) -> VertexSet {
    g.closed_neighborhood(w).complement()
}

/// Returns `W = V \ N[S]` when `S` is d-convex, i.e. when `S = V \ N[W]`.
pub fn dconvex_witness(g: &Graph, s: &VertexSet) -> Option<DConvexWitness> {
    let w = g.closed_neighborhood(s).complement();
    (dconvex_from_witness(g, &w) == *s).then_some(DConvexWitness { w })
}

/// Minimum total dominating set: every vertex needs a neighbor in the set.
/// `None` iff some vertex is isolated.
pub fn min_total_dominating_set(g: &Graph) -> Result<Option<VertexSet>> {
    min_total_dominating_set_with(g, &Limits::default())
}

pub fn min_total_dominating_set_with(g: &Graph, limits: &Limits) -> Result<Option<VertexSet>> {
    limits.check(g.n(), limits.search_n, "total domination")?;
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return Ok(None);
    }
    let max_deg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(1);
    let lower = g.n().div_ceil(max_deg);
    let upper = greedy_tds(g).len();
    let mut search = TdsSearch {
        g,
        max_deg,
        chosen: Vec::new(),
    };
    for k in lower..=upper {
        if search.run(&g.empty_set(), k) {
            return Ok(Some(g.set(search.chosen.iter().copied())));
        }
    }
    unreachable!("the greedy set bounds the search")
}

fn greedy_tds(g: &Graph) -> VertexSet {
    let mut dominated = g.empty_set();
    let mut chosen = g.empty_set();
    while !dominated.is_full() {
        let undominated = dominated.complement();
        let best = (0..g.n())
            .max_by_key(|&v| {
                (
                    g.adj(v).intersection_len(&undominated),
                    std::cmp::Reverse(v),
                )
            })
            .expect("nonempty graph");
        chosen.insert(best);
        dominated.union_with(g.adj(best));
    }
    chosen
}

struct TdsSearch<'a> {
    g: &'a Graph,
    max_deg: usize,
    chosen: Vec<usize>,
}

impl TdsSearch<'_> {
    /// Can `dominated` be completed with at most `budget` more vertices?
    fn run(&mut self, dominated: &VertexSet, budget: usize) -> bool {
        let undominated = dominated.complement();
        let Some(target) = undominated.first() else {
            return true;
        };
        if budget == 0 || undominated.len() > budget * self.max_deg {
            return false;
        }
        // Some neighbor of the lowest undominated vertex must be chosen.
        for &x in self.g.neighbors(target) {
            if self.chosen.contains(&x) {
                continue;
            }
            self.chosen.push(x);
            if self.run(&dominated.union(self.g.adj(x)), budget - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// A d-convex cover with at most `p` classes, built from a minimum total
/// dominating set `{w_1..w_k}` of the complement as `V \ N[w_i]`.
pub fn dconvex_cover(g: &Graph, p: usize) -> Result<Option<ConvexFamily>> {
    dconvex_cover_with(g, p, &Limits::default())
}

pub fn dconvex_cover_with(g: &Graph, p: usize, limits: &Limits) -> Result<Option<ConvexFamily>> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be positive".into()));
    }
    let Some(tds) = min_total_dominating_set_with(&g.complement(), limits)? else {
        return Ok(None);
    };
    if tds.len() > p {
        return Ok(None);
    }
    let mut classes: Vec<VertexSet> = Vec::new();
    for w in tds.iter() {
        let class = g.closed_nbhd(w).complement();
        if !classes.contains(&class) {
            classes.push(class);
        }
    }
    Ok(Some(ConvexFamily::new(
        ConvexityKind::Digital,
        CoverMode::Cover,
        classes,
    )))
}

/// d-convex 2-partition of a bipartite graph, which exists iff the graph is
/// disconnected or has diameter at least 3.
///
/// For a connected graph, a pair `u, v` at distance 3 gives
/// `V1 = N[u] ∪ {x ∈ X : N(x) ⊆ N[u]}`. The side `X` is taken as the one
/// containing `u` first; every candidate is validated before it is returned.
pub fn bipartite_dconvex_2partition(g: &Graph) -> Result<Option<ConvexFamily>> {
    let bip = g
        .bipartition()
        .ok_or_else(|| Error::InvalidInput("graph is not bipartite".into()))?;
    let family = |a: VertexSet| {
        let b = a.complement();
        ConvexFamily::new(ConvexityKind::Digital, CoverMode::Partition, vec![a, b])
    };
    let comps = g.connected_components();
    if comps.len() > 1 {
        return Ok(Some(family(comps[0].clone())));
    }
    let dist = g.distance_matrix();
    for (u, row) in dist.iter().enumerate() {
        if !row.contains(&Distance::Finite(3)) {
            continue;
        }
        let nu = g.closed_nbhd(u);
        let (own, other) = if bip.x.contains(u) {
            (&bip.x, &bip.y)
        } else {
            (&bip.y, &bip.x)
        };
        for side in [own, other] {
            let mut v1 = nu.clone();
            for x in side.iter() {
                if g.adj(x).is_subset(&nu) {
                    v1.insert(x);
                }
            }
            let fam = family(v1);
            if fam.validate(g).is_ok() {
                return Ok(Some(fam));
            }
        }
    }
    if g.diameter() >= Distance::Finite(3) {
        return Err(Error::InvalidCertificate(
            "no pair at distance 3 produced a valid d-convex 2-partition".into(),
        ));
    }
    Ok(None)
}
