//! Exhaustive convex p-cover and p-partition solvers.
//!
//! These are convexity-agnostic and only rely on the interval operator, so
//! they serve as ground truth for the specialized constructions elsewhere in
//! the crate. Output is deterministic: the partition search returns the
//! lexicographically least vertex labeling (classes numbered by first use),
//! the cover search branches on the lowest uncovered vertex.

use std::collections::HashSet;

use crate::convexity::{ConvexFamily, Convexity, ConvexityKind, CoverMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Instance size caps for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Exact cover/partition under monophonic convexity.
    pub mono_n: usize,
    /// Exact cover/partition under the other convexities.
    pub other_n: usize,
    /// Branching searches (total domination, matching cut, clique partition).
    pub search_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mono_n: 16,
            other_n: 20,
            search_n: 64,
        }
    }
}

pub const MAX_N_ENV: &str = "CONVEXKIT_MAX_N";

impl Limits {
    /// Defaults, with every cap replaced by `CONVEXKIT_MAX_N` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_N_ENV) {
            Ok(raw) => {
                let cap: usize = raw.trim().parse().map_err(|_| {
                    Error::InvalidInput(format!("{MAX_N_ENV}={raw} is not a number"))
                })?;
                Ok(Limits::uniform(cap))
            }
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn uniform(cap: usize) -> Self {
        Limits {
            mono_n: cap,
            other_n: cap,
            search_n: cap,
        }
    }

    pub fn for_kind(&self, kind: ConvexityKind) -> usize {
        match kind {
            ConvexityKind::Monophonic => self.mono_n,
            _ => self.other_n,
        }
    }

    pub fn check(&self, n: usize, cap: usize, what: &'static str) -> Result<()> {
        if n > cap {
            Err(Error::SizeCap { n, cap, what })
        } else {
            Ok(())
        }
    }
}

/// A partition into exactly `p` nonempty proper convex classes.
pub fn exact_partition(g: &Graph, kind: ConvexityKind, p: usize) -> Result<Option<ConvexFamily>> {
    exact_partition_with(g, kind, p, &Limits::default())
}

pub fn exact_partition_with(
    g: &Graph,
    kind: ConvexityKind,
    p: usize,
    limits: &Limits,
) -> Result<Option<ConvexFamily>> {
    if p < 2 {
        return Err(Error::InvalidInput("partitions need p >= 2".into()));
    }
    limits.check(g.n(), limits.for_kind(kind), "exact partition")?;
    if p > g.n() {
        return Ok(None);
    }
    let cx = Convexity::new(g, kind);
    let search = PartitionSearch { cx: &cx, p };
    let state = State {
        label: vec![None; g.n()],
        classes: Vec::new(),
    };
    Ok(search
        .run(state)
        .map(|classes| ConvexFamily::new(kind, CoverMode::Partition, classes)))
}

#[derive(Clone)]
struct State {
    label: Vec<Option<usize>>,
    classes: Vec<VertexSet>,
}

struct PartitionSearch<'a, 'g> {
    cx: &'a Convexity<'g>,
    p: usize,
}

impl PartitionSearch<'_, '_> {
    /// Closes every class under the hull, pulling unassigned vertices into
    /// the class that forces them. Fails if a hull reaches a vertex of
    /// another class or the whole vertex set.
    fn propagate(&self, st: &mut State) -> bool {
        loop {
            let mut changed = false;
            for i in 0..st.classes.len() {
                let h = self.cx.hull(&st.classes[i]);
                if h.is_full() {
                    return false;
                }
                for v in h.difference(&st.classes[i]).iter() {
                    match st.label[v] {
                        Some(_) => return false,
                        None => {
                            st.label[v] = Some(i);
                            changed = true;
                        }
                    }
                }
                st.classes[i] = h;
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&self, mut st: State) -> Option<Vec<VertexSet>> {
        if !self.propagate(&mut st) {
            return None;
        }
        let unassigned = st.label.iter().filter(|l| l.is_none()).count();
        let used = st.classes.len();
        if used + unassigned < self.p {
            return None;
        }
        let Some(v) = st.label.iter().position(Option::is_none) else {
            return (used == self.p).then_some(st.classes);
        };
        let n = st.label.len();
        for c in 0..=used.min(self.p - 1) {
            let mut next = st.clone();
            next.label[v] = Some(c);
            if c == used {
                next.classes.push(VertexSet::singleton(n, v));
            } else {
                next.classes[c].insert(v);
            }
            if let Some(found) = self.run(next) {
                return Some(found);
            }
        }
        None
    }
}

/// A cover by at most `p` distinct proper convex classes.
pub fn exact_cover(g: &Graph, kind: ConvexityKind, p: usize) -> Result<Option<ConvexFamily>> {
    exact_cover_with(g, kind, p, &Limits::default())
}

pub fn exact_cover_with(
    g: &Graph,
    kind: ConvexityKind,
    p: usize,
    limits: &Limits,
) -> Result<Option<ConvexFamily>> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be positive".into()));
    }
    let maximal = enumerate_maximal_proper_convex_with(g, kind, limits)?;
    let mut chosen = Vec::new();
    if cover_search(&maximal, &g.empty_set(), p, &mut chosen) {
        let classes = chosen.into_iter().map(|i| maximal[i].clone()).collect();
        Ok(Some(ConvexFamily::new(kind, CoverMode::Cover, classes)))
    } else {
        Ok(None)
    }
}

fn cover_search(
    sets: &[VertexSet],
    covered: &VertexSet,
    budget: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(v) = covered.complement().first() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for (i, s) in sets.iter().enumerate() {
        if !s.contains(v) {
            continue;
        }
        chosen.push(i);
        if cover_search(sets, &covered.union(s), budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// All inclusion-maximal convex sets other than `V`, sorted by their vertex
/// lists.
pub fn enumerate_maximal_proper_convex(g: &Graph, kind: ConvexityKind) -> Result<Vec<VertexSet>> {
    enumerate_maximal_proper_convex_with(g, kind, &Limits::default())
}

pub fn enumerate_maximal_proper_convex_with(
    g: &Graph,
    kind: ConvexityKind,
    limits: &Limits,
) -> Result<Vec<VertexSet>> {
    limits.check(g.n(), limits.for_kind(kind), "convex set enumeration")?;
    let cx = Convexity::new(g, kind);
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut stack: Vec<VertexSet> = Vec::new();
    for v in 0..g.n() {
        let h = cx.hull(&g.set([v]));
        if !h.is_full() && seen.insert(h.clone()) {
            stack.push(h);
        }
    }
    let mut maximal = Vec::new();
    while let Some(c) = stack.pop() {
        let mut is_max = true;
        for v in c.complement().iter() {
            let mut grown = c.clone();
            grown.insert(v);
            let h = cx.hull(&grown);
            if h.is_full() {
                continue;
            }
            is_max = false;
            if seen.insert(h.clone()) {
                stack.push(h);
            }
        }
        if is_max {
            maximal.push(c);
        }
    }
    maximal.sort_by_key(VertexSet::to_vec);
    Ok(maximal)
}

/// Every proper convex set (including the empty set), sorted. Exhaustive
/// over all subsets, so only for small graphs.
pub fn all_proper_convex_sets(g: &Graph, kind: ConvexityKind) -> Result<Vec<VertexSet>> {
    Limits::default().check(g.n(), 20, "subset enumeration")?;
    let cx = Convexity::new(g, kind);
    let n = g.n();
    let mut out: Vec<VertexSet> = (0u64..(1u64 << n) - 1)
        .map(|m| VertexSet::from_mask(n, m))
        .filter(|s| cx.is_convex(s))
        .collect();
    out.sort_by_key(VertexSet::to_vec);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConvexityKind::*;

    #[test]
    fn partition_examples() {
        let p4 = Graph::path(4);
        let fam = exact_partition(&p4, P3, 2).unwrap().unwrap();
        assert_eq!(fam.validate(&p4), Ok(()));
        // lexicographically least labeling 0,0,0,1
        assert_eq!(fam.class_lists(), vec![vec![0, 1, 2], vec![3]]);
        let halves = ConvexFamily::new(
            P3,
            CoverMode::Partition,
            vec![p4.set([0, 1]), p4.set([2, 3])],
        );
        assert_eq!(halves.validate(&p4), Ok(()));
        assert_eq!(exact_partition(&Graph::complete(4), P3, 2).unwrap(), None);
        assert_eq!(exact_partition(&Graph::cycle(4), Digital, 2).unwrap(), None);
    }

    #[test]
    fn cover_examples() {
        let c4 = Graph::cycle(4);
        let fam = exact_cover(&c4, Digital, 4).unwrap().unwrap();
        assert_eq!(fam.class_lists(), vec![vec![0], vec![1], vec![2], vec![3]]);
        let fam = exact_cover(&c4, Monophonic, 2).unwrap().unwrap();
        assert_eq!(fam.class_lists(), vec![vec![0, 1], vec![2, 3]]);
        for p in 1..5 {
            assert_eq!(exact_cover(&Graph::complete(3), Digital, p).unwrap(), None);
        }
    }

    #[test]
    fn maximal_set_examples() {
        let c4 = Graph::cycle(4);
        let got: Vec<_> = enumerate_maximal_proper_convex(&c4, Digital)
            .unwrap()
            .iter()
            .map(VertexSet::to_vec)
            .collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2], vec![3]]);

        let c5 = Graph::cycle(5);
        let got: Vec<_> = enumerate_maximal_proper_convex(&c5, Monophonic)
            .unwrap()
            .iter()
            .map(VertexSet::to_vec)
            .collect();
        assert_eq!(
            got,
            vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]
        );

        let k4 = Graph::complete(4);
        let got = enumerate_maximal_proper_convex(&k4, Monophonic).unwrap();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|s| s.len() == 3));
    }

    #[test]
    fn maximal_sets_agree_with_subset_scan() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(11);
        for _ in 0..60 {
            let g = crate::enumerate::random_graph(&mut rng, 6, 0.45);
            for kind in ConvexityKind::ALL {
                let all = all_proper_convex_sets(&g, kind).unwrap();
                let brute: Vec<_> = all
                    .iter()
                    .filter(|s| !s.is_empty() && !all.iter().any(|t| t != *s && s.is_subset(t)))
                    .cloned()
                    .collect();
                assert_eq!(
                    enumerate_maximal_proper_convex(&g, kind).unwrap(),
                    brute,
                    "{kind} {g:?}"
                );
            }
        }
    }

    #[test]
    fn partitions_are_covers_and_validate() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..40 {
            let g = crate::enumerate::random_graph(&mut rng, 6, 0.4);
            for kind in ConvexityKind::ALL {
                for p in 2..=4 {
                    let part = exact_partition(&g, kind, p).unwrap();
                    if let Some(f) = &part {
                        assert_eq!(f.validate(&g), Ok(()));
                        assert_eq!(f.len(), p);
                        assert!(exact_cover(&g, kind, p).unwrap().is_some());
                    }
                    if let Some(f) = exact_cover(&g, kind, p).unwrap() {
                        assert_eq!(f.validate(&g), Ok(()));
                        assert!(f.len() <= p);
                    }
                    assert_eq!(part, exact_partition(&g, kind, p).unwrap());
                }
            }
        }
    }

    /// Partition existence by trying all labelings, no pruning.
    fn brute_partition_exists(g: &Graph, kind: ConvexityKind, p: usize) -> bool {
        let n = g.n();
        let cx = Convexity::new(g, kind);
        let total = p.pow(n as u32);
        (0..total).any(|mut code| {
            let mut classes = vec![g.empty_set(); p];
            for v in 0..n {
                classes[code % p].insert(v);
                code /= p;
            }
            classes
                .iter()
                .all(|c| !c.is_empty() && !c.is_full() && cx.is_convex(c))
        })
    }

    #[test]
    fn partition_search_matches_unpruned_enumeration() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(3);
        for _ in 0..40 {
            let g = crate::enumerate::random_graph(&mut rng, 6, 0.35);
            for kind in ConvexityKind::ALL {
                for p in 2..=3 {
                    assert_eq!(
                        exact_partition(&g, kind, p).unwrap().is_some(),
                        brute_partition_exists(&g, kind, p),
                        "{kind} p={p} {g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn size_caps_are_enforced() {
        let g = Graph::path(17);
        assert!(matches!(
            exact_partition(&g, Monophonic, 2),
            Err(Error::SizeCap { .. })
        ));
        assert!(exact_partition(&g, P3, 2).is_ok());
        let tight = Limits::uniform(10);
        assert!(matches!(
            exact_cover_with(&g, P3, 2, &tight),
            Err(Error::SizeCap { .. })
        ));
    }
}
