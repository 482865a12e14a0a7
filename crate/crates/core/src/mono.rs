//! Monophonic convexity: clique separators, hulls of vertex pairs, the
//! polynomial 2-cover decision, and the two-apex gadget relating convex
//! partitions to clique partitions.

use std::collections::HashSet;

use crate::convexity::{ConvexFamily, Convexity, ConvexityKind, CoverMode};
use crate::error::{Error, Result};
use crate::exact::{exact_partition_with, Limits};
use crate::graph::{Bipartition, Graph};
use crate::p3::GadgetResult;
use crate::vertex_set::VertexSet;

/// Minimal elimination ordering by maximum cardinality search (MCS-M).
///
/// Returns the elimination order (first eliminated first) and, for every
/// vertex `x`, `madj(x)`: its neighbors in the computed minimal
/// triangulation that are eliminated after `x`.
pub fn mcs_m(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = vec![usize::MAX; n];
    let mut madj: Vec<Vec<usize>> = vec![Vec::new(); n];
    // key[u] + 1 = smallest possible maximum weight of an inner vertex on a
    // path from the chosen vertex to u through unnumbered vertices; 0 for
    // direct neighbors.
    let mut key = vec![usize::MAX; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    let mut touched: Vec<usize> = Vec::new();
    for step in (0..n).rev() {
        let v = (0..n)
            .filter(|&u| !numbered[u])
            .max_by_key(|&u| (weight[u], std::cmp::Reverse(u)))
            .expect("an unnumbered vertex remains");
        numbered[v] = true;
        order[step] = v;

        for &u in g.neighbors(v) {
            if !numbered[u] && key[u] != 0 {
                key[u] = 0;
                buckets[0].push(u);
                touched.push(u);
            }
        }
        for b in 0..buckets.len() {
            while let Some(x) = buckets[b].pop() {
                if key[x] != b {
                    continue;
                }
                let through = b.max(weight[x] + 1);
                for &y in g.neighbors(x) {
                    if numbered[y] || key[y] <= through {
                        continue;
                    }
                    if key[y] == usize::MAX {
                        touched.push(y);
                    }
                    key[y] = through;
                    buckets[through].push(y);
                }
            }
        }
        let mut raised = Vec::new();
        for &u in &touched {
            // path inner weights all < weight[u]  <=>  key[u] <= weight[u]
            if key[u] <= weight[u] {
                raised.push(u);
            }
        }
        for u in raised {
            weight[u] += 1;
            madj[u].push(v);
        }
        for &u in &touched {
            key[u] = usize::MAX;
        }
        touched.clear();
    }
    (order, madj)
}

/// Does removing `c` disconnect the graph (leaving at least two components)?
pub fn separates(g: &Graph, c: &VertexSet) -> bool {
    g.components_within(&c.complement()).len() >= 2
}

pub fn is_clique_separator(g: &Graph, c: &VertexSet) -> bool {
    g.is_clique(c) && separates(g, c)
}

/// `s` is a minimal separator iff `g - s` has two full components, whose
/// neighborhoods are all of `s`.
pub fn is_minimal_separator(g: &Graph, s: &VertexSet) -> bool {
    g.components_within(&s.complement())
        .iter()
        .filter(|c| s.is_subset(&g.open_neighborhood(c)))
        .count()
        >= 2
}

/// Clique minimal separators, read off the minimal triangulation from
/// MCS-M, sorted by vertex list.
pub fn clique_minimal_separators(g: &Graph) -> Result<Vec<VertexSet>> {
    if !g.is_connected() {
        return Err(Error::InvalidInput(
            "clique separators need a connected graph".into(),
        ));
    }
    let (order, madj) = mcs_m(g);
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut out = Vec::new();
    for &x in &order {
        if madj[x].is_empty() {
            continue;
        }
        let s = g.set(madj[x].iter().copied());
        if seen.insert(s.clone()) && is_clique_separator(g, &s) && is_minimal_separator(g, &s) {
            out.push(s);
        }
    }
    out.sort_by_key(VertexSet::to_vec);
    Ok(out)
}

/// A clique whose removal disconnects `g`; the lexicographically smallest
/// clique minimal separator is returned.
pub fn find_clique_separator(g: &Graph) -> Result<Option<VertexSet>> {
    Ok(clique_minimal_separators(g)?.into_iter().next())
}

/// Every clique (including the empty one) of a small graph, in
/// lexicographic order of vertex lists.
pub fn all_cliques(g: &Graph) -> Vec<VertexSet> {
    fn grow(g: &Graph, cur: &mut Vec<usize>, cand: &VertexSet, out: &mut Vec<VertexSet>) {
        out.push(g.set(cur.iter().copied()));
        for v in cand.iter() {
            let mut next = cand.intersection(g.adj(v));
            for w in 0..=v {
                next.remove(w);
            }
            cur.push(v);
            grow(g, cur, &next, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(g, &mut Vec::new(), &g.vertices(), &mut out);
    out
}

/// Slow reference: every clique separator of a small connected graph, by
/// enumerating all cliques.
pub fn all_clique_separators(g: &Graph) -> Result<Vec<VertexSet>> {
    Limits::default().check(g.n(), 16, "clique enumeration")?;
    if !g.is_connected() {
        return Err(Error::InvalidInput(
            "clique separators need a connected graph".into(),
        ));
    }
    Ok(all_cliques(g)
        .into_iter()
        .filter(|c| separates(g, c))
        .collect())
}

/// `(∪ comps) ∪ c` for a clique separator `c` and a nonempty proper subset
/// of the components of `g - c`. Such a set is always m-convex.
pub fn mconvex_from_separator(g: &Graph, c: &VertexSet, comps: &[VertexSet]) -> Result<VertexSet> {
    if !g.is_connected() || !is_clique_separator(g, c) {
        return Err(Error::InvalidInput(
            "not a clique separator of a connected graph".into(),
        ));
    }
    let all = g.components_within(&c.complement());
    if comps.is_empty() || comps.len() >= all.len() {
        return Err(Error::InvalidInput(
            "need a nonempty proper subset of the components".into(),
        ));
    }
    let mut out = c.clone();
    for (i, comp) in comps.iter().enumerate() {
        if !all.contains(comp) || comps[..i].contains(comp) {
            return Err(Error::InvalidInput(format!(
                "{comp} is not a separate component"
            )));
        }
        out.union_with(comp);
    }
    Ok(out)
}

/// Why an m-convex 2-cover exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoCoverWitness {
    Disconnected,
    CliqueSeparator(VertexSet),
    /// Two cliques covering the vertices (a bipartition of the complement).
    CoBipartite(Bipartition),
}

/// Decides whether `g` has an m-convex 2-cover in `O(nm)` time.
pub fn mconvex_2cover(g: &Graph) -> Result<Option<ConvexFamily>> {
    Ok(mconvex_2cover_with_witness(g)?.map(|(f, _)| f))
}

pub fn mconvex_2cover_with_witness(g: &Graph) -> Result<Option<(ConvexFamily, TwoCoverWitness)>> {
    let fam = |a: VertexSet, b: VertexSet| {
        ConvexFamily::new(ConvexityKind::Monophonic, CoverMode::Cover, vec![a, b])
    };
    let comps = g.connected_components();
    if comps.len() > 1 {
        let rest = comps[0].complement();
        return Ok(Some((
            fam(comps[0].clone(), rest),
            TwoCoverWitness::Disconnected,
        )));
    }
    if let Some(c) = find_clique_separator(g)? {
        let first = g
            .components_within(&c.complement())
            .into_iter()
            .next()
            .expect("a separator leaves components");
        let a = first.union(&c);
        let b = first.complement();
        return Ok(Some((fam(a, b), TwoCoverWitness::CliqueSeparator(c))));
    }
    let Some(bip) = co_bipartition(g) else {
        return Ok(None);
    };
    if bip.x.is_empty() || bip.y.is_empty() {
        return Ok(None);
    }
    let f = fam(bip.x.clone(), bip.y.clone());
    Ok(Some((f, TwoCoverWitness::CoBipartite(bip))))
}

/// Two cliques covering `g` with both sides nonempty whenever `n >= 2`.
fn co_bipartition(g: &Graph) -> Option<Bipartition> {
    let comp = g.complement();
    let mut bip = comp.bipartition()?;
    if bip.y.is_empty() && g.n() >= 2 {
        // The complement is edgeless on every component here; flip the
        // component of the largest vertex.
        let last = comp.connected_components().pop().expect("nonempty graph");
        bip.x.difference_with(&last);
        bip.y.union_with(&last);
    }
    Some(bip)
}

/// Monophonic hull of `{u, v}`.
pub fn mhull_pair(g: &Graph, u: usize, v: usize) -> VertexSet {
    assert!(u != v, "mhull_pair needs two distinct vertices");
    Convexity::new(g, ConvexityKind::Monophonic).hull(&g.set([u, v]))
}

/// `g` plus two nonadjacent apexes `n` and `n + 1`, each adjacent to every
/// source vertex.
pub fn build_gadget_mono(g: &Graph) -> Result<GadgetResult> {
    if g.n() < 2 || g.is_complete() {
        return Err(Error::InvalidInput(
            "the apex gadget needs at least two vertices and a non-complete graph".into(),
        ));
    }
    let n = g.n();
    let (u, v) = (n, n + 1);
    let edges: Vec<_> = (0..n).flat_map(|x| [(u, x), (v, x)]).collect();
    let gprime = g.with_added(2, &edges);
    Ok(GadgetResult {
        source: g.clone(),
        gprime,
        embed: (0..n).collect(),
        extra: VertexSet::from_vertices(n + 2, [u, v]),
        r: None,
        p: None,
    })
}

/// Partition into exactly `l` nonempty cliques, or `None`. Equivalent to
/// a proper `l`-coloring of the complement using every color; returns the
/// lexicographically least labeling.
pub fn clique_partition(g: &Graph, l: usize) -> Result<Option<Vec<VertexSet>>> {
    clique_partition_with(g, l, &Limits::default())
}

pub fn clique_partition_with(
    g: &Graph,
    l: usize,
    limits: &Limits,
) -> Result<Option<Vec<VertexSet>>> {
    if l == 0 {
        return Err(Error::InvalidInput("l must be positive".into()));
    }
    limits.check(g.n(), limits.search_n, "clique partition")?;
    if l > g.n() {
        return Ok(None);
    }
    let mut classes: Vec<VertexSet> = Vec::new();
    Ok(color_complement(g, l, 0, &mut classes).then_some(classes))
}

fn color_complement(g: &Graph, l: usize, v: usize, classes: &mut Vec<VertexSet>) -> bool {
    let n = g.n();
    if classes.len() + (n - v) < l {
        return false;
    }
    if v == n {
        return classes.len() == l;
    }
    for c in 0..classes.len() {
        if classes[c].is_subset(g.adj(v)) {
            classes[c].insert(v);
            if color_complement(g, l, v + 1, classes) {
                return true;
            }
            classes[c].remove(v);
        }
    }
    if classes.len() < l {
        classes.push(VertexSet::singleton(n, v));
        if color_complement(g, l, v + 1, classes) {
            return true;
        }
        classes.pop();
    }
    false
}

/// Both sides of the apex-gadget equivalence, computed independently.
#[derive(Clone, Debug)]
pub struct MonoEquivReport {
    pub p: usize,
    /// An m-convex `p`-partition of the gadget exists (exhaustive search).
    pub gadget_partition_exists: bool,
    /// Smallest `l` in `[p - 2, p]` admitting an `l`-clique partition.
    pub clique_l: Option<usize>,
    /// Gadget partition padded from the clique partition, when one exists.
    pub padded: Option<ConvexFamily>,
    pub gadget: GadgetResult,
}

impl MonoEquivReport {
    pub fn agrees(&self) -> bool {
        self.gadget_partition_exists == self.clique_l.is_some()
    }
}

/// Checks "the gadget has an m-convex `p`-partition iff `g` has an
/// `l`-clique partition for some `p - 2 <= l <= p`" on one instance.
///
/// Padding: for `l = p - 2` add `{u}` and `{v}`; for `l = p - 1` put `u`
/// into the first clique and add `{v}`; for `l = p` put `u` into the first
/// clique and `v` into the second.
pub fn mono_partition_equiv(g: &Graph, p: usize) -> Result<MonoEquivReport> {
    mono_partition_equiv_with(g, p, &Limits::default())
}

pub fn mono_partition_equiv_with(g: &Graph, p: usize, limits: &Limits) -> Result<MonoEquivReport> {
    if p < 3 {
        return Err(Error::InvalidInput(
            "the apex gadget equivalence needs p >= 3".into(),
        ));
    }
    let gadget = build_gadget_mono(g)?;
    let gadget_partition_exists =
        exact_partition_with(&gadget.gprime, ConvexityKind::Monophonic, p, limits)?.is_some();
    let mut clique_l = None;
    let mut padded = None;
    for l in (p - 2).max(1)..=p {
        if let Some(cliques) = clique_partition_with(g, l, limits)? {
            clique_l = Some(l);
            let fam = pad_clique_partition(&gadget, &cliques, p);
            fam.validate(&gadget.gprime)
                .map_err(|v| Error::InvalidCertificate(format!("padded partition: {v}")))?;
            padded = Some(fam);
            break;
        }
    }
    Ok(MonoEquivReport {
        p,
        gadget_partition_exists,
        clique_l,
        padded,
        gadget,
    })
}

fn pad_clique_partition(gr: &GadgetResult, cliques: &[VertexSet], p: usize) -> ConvexFamily {
    let n2 = gr.gprime.n();
    let (u, v) = (n2 - 2, n2 - 1);
    let mut classes: Vec<VertexSet> = cliques.iter().map(|c| c.map_into(n2, &gr.embed)).collect();
    match p - cliques.len() {
        2 => {
            classes.push(VertexSet::singleton(n2, u));
            classes.push(VertexSet::singleton(n2, v));
        }
        1 => {
            classes[0].insert(u);
            classes.push(VertexSet::singleton(n2, v));
        }
        0 => {
            classes[0].insert(u);
            classes[1].insert(v);
        }
        _ => unreachable!("l is within [p - 2, p]"),
    }
    ConvexFamily::new(ConvexityKind::Monophonic, CoverMode::Partition, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::is_convex;
    use crate::exact::exact_cover;

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    /// 2K2 with edges 01 and 23.
    fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn clique_separator_examples() {
        assert_eq!(
            find_clique_separator(&Graph::path(4))
                .unwrap()
                .unwrap()
                .to_vec(),
            vec![1]
        );
        for g in [Graph::cycle(4), Graph::cycle(5), Graph::complete(5)] {
            assert_eq!(find_clique_separator(&g).unwrap(), None);
            assert!(all_clique_separators(&g).unwrap().is_empty());
        }
        assert_eq!(
            find_clique_separator(&bowtie()).unwrap().unwrap().to_vec(),
            vec![2]
        );
        assert!(find_clique_separator(&two_k2()).is_err());
    }

    #[test]
    fn mcs_m_matches_clique_enumeration() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(21);
        for _ in 0..400 {
            let g = crate::enumerate::random_graph(&mut rng, 9, 0.35);
            if !g.is_connected() {
                continue;
            }
            let fast = clique_minimal_separators(&g).unwrap();
            let slow = all_clique_separators(&g).unwrap();
            assert_eq!(fast.is_empty(), slow.is_empty(), "{g:?}");
            let mut minimal: Vec<_> = slow
                .into_iter()
                .filter(|s| is_minimal_separator(&g, s))
                .collect();
            minimal.sort_by_key(VertexSet::to_vec);
            assert_eq!(fast, minimal, "{g:?}");
        }
    }

    #[test]
    fn separator_sets_examples() {
        let p4 = Graph::path(4);
        let c = p4.set([1]);
        assert_eq!(
            mconvex_from_separator(&p4, &c, &[p4.set([0])])
                .unwrap()
                .to_vec(),
            vec![0, 1]
        );
        assert_eq!(
            mconvex_from_separator(&p4, &c, &[p4.set([2, 3])])
                .unwrap()
                .to_vec(),
            vec![1, 2, 3]
        );
        let b = bowtie();
        let tri = mconvex_from_separator(&b, &b.set([2]), &[b.set([0, 1])]).unwrap();
        assert_eq!(tri.to_vec(), vec![0, 1, 2]);
        assert!(is_convex(&b, ConvexityKind::Monophonic, &tri));
        assert!(mconvex_from_separator(&p4, &c, &[p4.set([0]), p4.set([2, 3])]).is_err());
        assert!(mconvex_from_separator(&p4, &p4.set([0]), &[p4.set([1])]).is_err());
    }

    #[test]
    fn two_cover_examples() {
        let p3 = Graph::path(3);
        let f = mconvex_2cover(&p3).unwrap().unwrap();
        assert_eq!(f.class_lists(), vec![vec![0, 1], vec![1, 2]]);
        let c4 = Graph::cycle(4);
        let f = mconvex_2cover(&c4).unwrap().unwrap();
        assert_eq!(f.class_lists(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(mconvex_2cover(&Graph::cycle(5)).unwrap(), None);
        assert_eq!(
            exact_cover(&Graph::cycle(5), ConvexityKind::Monophonic, 2).unwrap(),
            None
        );
        let k4 = Graph::complete(4);
        assert_eq!(mconvex_2cover(&k4).unwrap().unwrap().validate(&k4), Ok(()));
        assert_eq!(mconvex_2cover(&Graph::empty(1)).unwrap(), None);
    }

    #[test]
    fn mhull_examples() {
        let c5 = Graph::cycle(5);
        assert!(mhull_pair(&c5, 0, 2).is_full());
        let p4 = Graph::path(4);
        assert_eq!(mhull_pair(&p4, 0, 1).to_vec(), vec![0, 1]);
        assert_eq!(mhull_pair(&p4, 0, 2).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn apex_gadget_shape() {
        let g = two_k2();
        let gr = build_gadget_mono(&g).unwrap();
        assert_eq!(gr.gprime.n(), 6);
        assert!(!gr.gprime.has_edge(4, 5));
        assert_eq!((gr.gprime.degree(4), gr.gprime.degree(5)), (4, 4));
        assert_eq!(gr.gprime.m(), g.m() + 2 * g.n());
        assert!(!is_convex(&gr.gprime, ConvexityKind::Monophonic, &gr.extra));
        assert!(build_gadget_mono(&Graph::complete(3)).is_err());
        assert!(build_gadget_mono(&Graph::empty(1)).is_err());
    }

    #[test]
    fn clique_partition_examples() {
        let cp = clique_partition(&two_k2(), 2).unwrap().unwrap();
        assert_eq!(
            cp.iter().map(VertexSet::to_vec).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(clique_partition(&Graph::cycle(5), 2).unwrap(), None);
        let cp = clique_partition(&Graph::complete(4), 1).unwrap().unwrap();
        assert!(cp[0].is_full());
        let cp = clique_partition(&Graph::cycle(5), 3).unwrap().unwrap();
        assert_eq!(
            cp.iter().map(VertexSet::to_vec).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![2, 3], vec![4]]
        );
    }

    #[test]
    fn equivalence_examples() {
        let rep = mono_partition_equiv(&two_k2(), 3).unwrap();
        assert_eq!(rep.clique_l, Some(2));
        assert!(rep.agrees());
        let pad = rep.padded.unwrap();
        assert_eq!(pad.class_lists(), vec![vec![0, 1, 4], vec![2, 3], vec![5]]);

        let rep = mono_partition_equiv(&Graph::cycle(5), 3).unwrap();
        assert_eq!(rep.clique_l, Some(3));
        assert!(rep.agrees());
        assert_eq!(
            rep.padded.unwrap().class_lists(),
            vec![vec![0, 1, 5], vec![2, 3, 6], vec![4]]
        );
    }

    #[test]
    fn large_sparse_two_cover_is_fast() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(4);
        let g = crate::enumerate::random_connected_sparse(&mut rng, 600, 1800);
        let start = std::time::Instant::now();
        assert!(mconvex_2cover(&g).unwrap().is_some());
        assert!(start.elapsed().as_secs() < 10);
    }
}
