//! P3-convexity: matching cuts, the biclique gadget that lifts partitions
//! from `p` to `p + 1` classes, and covers versus partitions on split graphs.

use crate::convexity::{ConvexFamily, ConvexityKind, CoverMode};
use crate::error::{Error, Result};
use crate::exact::Limits;
use crate::graph::{Bipartition, Graph};
use crate::vertex_set::VertexSet;

/// A partition of the vertex set into two nonempty sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Cut {
    pub fn crossing_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .filter(|&(u, v)| self.a.contains(u) != self.a.contains(v))
            .collect()
    }

    fn is_well_formed(&self, g: &Graph) -> bool {
        self.a.universe() == g.n()
            && self.b.universe() == g.n()
            && !self.a.is_empty()
            && !self.b.is_empty()
            && self.a.is_disjoint(&self.b)
            && self.a.union(&self.b).is_full()
    }

    /// True when the sides are valid and no vertex has two neighbors across.
    pub fn is_matching_cut(&self, g: &Graph) -> bool {
        self.is_well_formed(g)
            && (0..g.n()).all(|v| {
                let other = if self.a.contains(v) { &self.b } else { &self.a };
                g.adj(v).intersection_len(other) <= 1
            })
    }
}

/// A matching cut, preferring the most balanced one and, among those, the
/// lexicographically least side labeling with vertex 0 on side `a`.
pub fn find_matching_cut(g: &Graph) -> Result<Option<Cut>> {
    find_matching_cut_with(g, &Limits::default())
}

pub fn find_matching_cut_with(g: &Graph, limits: &Limits) -> Result<Option<Cut>> {
    limits.check(g.n(), limits.search_n, "matching cut")?;
    let n = g.n();
    if n < 2 {
        return Ok(None);
    }
    let mut search = CutSearch {
        g,
        side: vec![None; n],
        cross: vec![0; n],
        counts: [0, 0],
        best_value: 0,
        best: None,
    };
    search.assign(0, false);
    search.run(1);
    Ok(search.best.map(|side| {
        let a = g.set((0..n).filter(|&v| !side[v]));
        let b = a.complement();
        Cut { a, b }
    }))
}

struct CutSearch<'a> {
    g: &'a Graph,
    side: Vec<Option<bool>>,
    /// Number of labeled neighbors on the opposite side.
    cross: Vec<usize>,
    counts: [usize; 2],
    best_value: usize,
    best: Option<Vec<bool>>,
}

impl CutSearch<'_> {
    /// Labels `v`; returns false (leaving the labeling applied) when some
    /// vertex now has two neighbors across.
    fn assign(&mut self, v: usize, s: bool) -> bool {
        self.side[v] = Some(s);
        self.counts[s as usize] += 1;
        let mut ok = true;
        for &w in self.g.neighbors(v) {
            if let Some(sw) = self.side[w] {
                if sw != s {
                    self.cross[w] += 1;
                    self.cross[v] += 1;
                    ok &= self.cross[w] <= 1;
                }
            }
        }
        ok && self.cross[v] <= 1
    }

    fn unassign(&mut self, v: usize) {
        let s = self.side[v].take().expect("labeled");
        self.counts[s as usize] -= 1;
        for &w in self.g.neighbors(v) {
            if let Some(sw) = self.side[w] {
                if sw != s {
                    self.cross[w] -= 1;
                }
            }
        }
        self.cross[v] = 0;
    }

    fn run(&mut self, v: usize) {
        let n = self.g.n();
        if self.best_value == n / 2 {
            return;
        }
        let left = n - v;
        let bound = (self.counts[0] + left)
            .min(self.counts[1] + left)
            .min(n / 2);
        if bound <= self.best_value {
            return;
        }
        if v == n {
            self.best_value = self.counts[0].min(self.counts[1]);
            self.best = Some(self.side.iter().map(|s| s.expect("complete")).collect());
            return;
        }
        for s in [false, true] {
            if self.assign(v, s) {
                self.run(v + 1);
            }
            self.unassign(v);
        }
    }
}

/// The two sides of a matching cut as a P3-convex 2-partition.
pub fn p3_partition_from_cut(g: &Graph, cut: &Cut) -> Result<ConvexFamily> {
    if !cut.is_matching_cut(g) {
        return Err(Error::InvalidCertificate("not a matching cut".into()));
    }
    let fam = ConvexFamily::new(
        ConvexityKind::P3,
        CoverMode::Partition,
        vec![cut.a.clone(), cut.b.clone()],
    );
    checked(g, fam)
}

/// The cut induced by a P3-convex 2-partition; its edge cut is a matching.
pub fn cut_from_p3_partition(g: &Graph, fam: &ConvexFamily) -> Result<Cut> {
    if fam.kind != ConvexityKind::P3 || fam.mode != CoverMode::Partition || fam.len() != 2 {
        return Err(Error::InvalidCertificate(
            "expected a P3-convex 2-partition".into(),
        ));
    }
    fam.validate(g)
        .map_err(|v| Error::InvalidCertificate(v.to_string()))?;
    let cut = Cut {
        a: fam.classes[0].clone(),
        b: fam.classes[1].clone(),
    };
    if !cut.is_matching_cut(g) {
        return Err(Error::InvalidCertificate(
            "partition does not induce a matching cut".into(),
        ));
    }
    Ok(cut)
}

fn checked(g: &Graph, fam: ConvexFamily) -> Result<ConvexFamily> {
    fam.validate(g)
        .map_err(|v| Error::InvalidCertificate(v.to_string()))?;
    Ok(fam)
}

/// A hardness gadget together with the embedding of its source graph.
#[derive(Clone, Debug)]
pub struct GadgetResult {
    pub source: Graph,
    pub gprime: Graph,
    /// `embed[v]` is the gadget vertex standing for source vertex `v`.
    pub embed: Vec<usize>,
    /// Gadget vertices outside the image of `embed`.
    pub extra: VertexSet,
    /// Biclique side size, for the P3 gadget.
    pub r: Option<usize>,
    pub p: Option<usize>,
}

impl GadgetResult {
    /// Source vertex for a gadget vertex in the image of `embed`.
    pub fn preimage(&self, x: usize) -> Option<usize> {
        self.embed.iter().position(|&y| y == x)
    }
}

/// Copy of a bipartite `g` plus `K_{r,r}` with `r = max(p + 2, |X|, |Y|)`.
///
/// Layout: source vertices keep their indices, the biclique side `A` is
/// `n..n+r` and side `B` is `n+r..n+2r`. The `i`-th vertex of `X` (in
/// ascending order) gets one edge to `A[i]`, the `i`-th vertex of `Y` one
/// edge to `B[i]`.
pub fn build_gadget_p3(g: &Graph, bip: &Bipartition, p: usize) -> Result<GadgetResult> {
    if p < 2 {
        return Err(Error::InvalidInput(
            "the biclique gadget needs p >= 2".into(),
        ));
    }
    let valid = bip.x.universe() == g.n()
        && bip.y.universe() == g.n()
        && bip.x.is_disjoint(&bip.y)
        && bip.x.union(&bip.y).is_full()
        && g.is_independent(&bip.x)
        && g.is_independent(&bip.y);
    if !valid {
        return Err(Error::InvalidInput("not a bipartition of the graph".into()));
    }
    let n = g.n();
    let r = (p + 2).max(bip.x.len()).max(bip.y.len());
    let a = |i: usize| n + i;
    let b = |i: usize| n + r + i;
    let mut edges = Vec::with_capacity(r * r + n);
    for i in 0..r {
        for j in 0..r {
            edges.push((a(i), b(j)));
        }
    }
    for (i, x) in bip.x.iter().enumerate() {
        edges.push((x, a(i)));
    }
    for (i, y) in bip.y.iter().enumerate() {
        edges.push((y, b(i)));
    }
    let gprime = g.with_added(2 * r, &edges);
    let total = n + 2 * r;
    Ok(GadgetResult {
        source: g.clone(),
        gprime,
        embed: (0..n).collect(),
        extra: VertexSet::from_vertices(total, n..total),
        r: Some(r),
        p: Some(p),
    })
}

/// Extends a P3-convex `p`-partition of the source to a `(p + 1)`-partition
/// of the gadget by adding the biclique as its own class.
pub fn lift_p3_partition(gr: &GadgetResult, fam: &ConvexFamily) -> Result<ConvexFamily> {
    if fam.kind != ConvexityKind::P3 || fam.mode != CoverMode::Partition {
        return Err(Error::InvalidCertificate(
            "expected a P3-convex partition".into(),
        ));
    }
    fam.validate(&gr.source)
        .map_err(|v| Error::InvalidCertificate(format!("source partition: {v}")))?;
    if gr.p.is_some_and(|p| p != fam.len()) {
        return Err(Error::InvalidCertificate(format!(
            "gadget built for p = {}, partition has {} classes",
            gr.p.unwrap_or(0),
            fam.len()
        )));
    }
    let n2 = gr.gprime.n();
    let mut classes: Vec<VertexSet> = fam
        .classes
        .iter()
        .map(|c| c.map_into(n2, &gr.embed))
        .collect();
    classes.push(gr.extra.clone());
    checked(
        &gr.gprime,
        ConvexFamily::new(ConvexityKind::P3, CoverMode::Partition, classes),
    )
}

/// Recovers a `p`-partition of the source from a `(p + 1)`-partition of the
/// gadget. The biclique must form one class on its own; anything else means
/// the input was not a valid partition of this gadget.
pub fn project_p3_partition(gr: &GadgetResult, fam: &ConvexFamily) -> Result<ConvexFamily> {
    if fam.kind != ConvexityKind::P3 || fam.mode != CoverMode::Partition {
        return Err(Error::InvalidCertificate(
            "expected a P3-convex partition".into(),
        ));
    }
    fam.validate(&gr.gprime)
        .map_err(|v| Error::InvalidCertificate(format!("gadget partition: {v}")))?;
    let touching: Vec<usize> = (0..fam.len())
        .filter(|&i| fam.classes[i].intersects(&gr.extra))
        .collect();
    let [k] = touching[..] else {
        return Err(Error::InvalidCertificate(format!(
            "biclique vertices spread over {} classes",
            touching.len()
        )));
    };
    if fam.classes[k] != gr.extra {
        let stray: Vec<usize> = fam.classes[k].difference(&gr.extra).to_vec();
        return Err(Error::InvalidCertificate(format!(
            "biclique class also holds source vertices {stray:?}"
        )));
    }
    let n = gr.source.n();
    let classes = fam
        .classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, c)| {
            VertexSet::from_vertices(n, c.iter().map(|x| gr.preimage(x).expect("source vertex")))
        })
        .collect();
    checked(
        &gr.source,
        ConvexFamily::new(ConvexityKind::P3, CoverMode::Partition, classes),
    )
}

/// Clique `k` and independent set `s` partitioning the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPartition {
    pub k: VertexSet,
    pub s: VertexSet,
}

impl SplitPartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.k.universe() == g.n()
            && self.s.universe() == g.n()
            && self.k.is_disjoint(&self.s)
            && self.k.union(&self.s).is_full()
            && g.is_clique(&self.k)
            && g.is_independent(&self.s)
    }
}

/// Split recognition from the degree sequence: with degrees sorted
/// decreasingly and `m = max{i : d_i >= i - 1}`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the `m` highest
/// degree vertices form the clique.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (1..=n).filter(|&i| deg[i - 1] + 1 >= i).max().unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    if head != m * (m.saturating_sub(1)) + tail {
        return None;
    }
    let k = g.set(order[..m].iter().copied());
    let sp = SplitPartition {
        s: k.complement(),
        k,
    };
    sp.is_valid(g).then_some(sp)
}

/// `V'_1 = V_1`, `V'_i = V_i \ (V_1 ∪ ... ∪ V_{i-1})`, empty results dropped.
pub fn sequential_difference(classes: &[VertexSet]) -> Vec<VertexSet> {
    let Some(first) = classes.first() else {
        return Vec::new();
    };
    let mut seen = VertexSet::new(first.universe());
    let mut out = Vec::new();
    for c in classes {
        let rest = c.difference(&seen);
        seen.union_with(c);
        if !rest.is_empty() {
            out.push(rest);
        }
    }
    out
}

/// Turns a P3-convex cover of a split graph whose independent vertices all
/// have degree at least two into a P3-convex partition with exactly `p`
/// classes (`p` at least the number of cover classes).
///
/// Every cover class is independent on such graphs, so the sequential
/// differences stay convex, and any class with two or more vertices can be
/// split further. Splitting moves the largest vertex of the first class of
/// size at least two into a new trailing singleton.
pub fn cover_to_partition_split(
    g: &Graph,
    sp: &SplitPartition,
    fam: &ConvexFamily,
    p: usize,
) -> Result<ConvexFamily> {
    if !sp.is_valid(g) {
        return Err(Error::InvalidInput(
            "not a split partition of the graph".into(),
        ));
    }
    if let Some(s) = sp.s.iter().find(|&s| g.degree(s) < 2) {
        return Err(Error::InvalidInput(format!(
            "independent vertex {s} has degree {} < 2",
            g.degree(s)
        )));
    }
    if fam.kind != ConvexityKind::P3 {
        return Err(Error::InvalidCertificate(
            "expected a P3-convex cover".into(),
        ));
    }
    fam.validate(g)
        .map_err(|v| Error::InvalidCertificate(v.to_string()))?;
    if fam.len() > p {
        return Err(Error::InvalidInput(format!(
            "cover has {} classes, more than p = {p}",
            fam.len()
        )));
    }
    let mut classes = sequential_difference(&fam.classes);
    while classes.len() < p {
        let Some(i) = classes.iter().position(|c| c.len() >= 2) else {
            return Err(Error::InvalidInput(format!(
                "no {p}-partition derivable from this cover: only {} vertices",
                classes.len()
            )));
        };
        let v = classes[i].iter().last().expect("nonempty");
        classes[i].remove(v);
        classes.push(VertexSet::singleton(g.n(), v));
    }
    checked(
        g,
        ConvexFamily::new(ConvexityKind::P3, CoverMode::Partition, classes),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_cover, exact_partition};

    fn cut(g: &Graph, a: &[usize]) -> Cut {
        let a = g.set(a.iter().copied());
        Cut {
            b: a.complement(),
            a,
        }
    }

    #[test]
    fn matching_cut_examples() {
        let p4 = Graph::path(4);
        let c = find_matching_cut(&p4).unwrap().unwrap();
        assert_eq!((c.a.to_vec(), c.b.to_vec()), (vec![0, 1], vec![2, 3]));
        assert_eq!(c.crossing_edges(&p4), vec![(1, 2)]);

        let c4 = Graph::cycle(4);
        let c = find_matching_cut(&c4).unwrap().unwrap();
        assert_eq!((c.a.to_vec(), c.b.to_vec()), (vec![0, 1], vec![2, 3]));
        assert_eq!(c.crossing_edges(&c4), vec![(0, 3), (1, 2)]);

        assert_eq!(find_matching_cut(&Graph::complete(4)).unwrap(), None);
        assert_eq!(find_matching_cut(&Graph::empty(1)).unwrap(), None);
    }

    #[test]
    fn k4_has_no_matching_cut_by_enumeration() {
        let k4 = Graph::complete(4);
        for mask in 1u64..15 {
            let a = VertexSet::from_mask(4, mask);
            let c = Cut {
                b: a.complement(),
                a,
            };
            assert!(!c.is_matching_cut(&k4));
        }
    }

    #[test]
    fn cut_partition_translations() {
        let p4 = Graph::path(4);
        let fam = p3_partition_from_cut(&p4, &cut(&p4, &[0, 1])).unwrap();
        assert_eq!(fam.class_lists(), vec![vec![0, 1], vec![2, 3]]);

        let c4 = Graph::cycle(4);
        let fam = ConvexFamily::new(
            ConvexityKind::P3,
            CoverMode::Partition,
            vec![c4.set([0, 1]), c4.set([2, 3])],
        );
        let c = cut_from_p3_partition(&c4, &fam).unwrap();
        assert_eq!(c.crossing_edges(&c4), vec![(0, 3), (1, 2)]);

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(p3_partition_from_cut(&star, &cut(&star, &[0])).is_err());
    }

    #[test]
    fn gadget_shape() {
        let p4 = Graph::path(4);
        let bip = p4.bipartition().unwrap();
        let gr = build_gadget_p3(&p4, &bip, 2).unwrap();
        assert_eq!(gr.r, Some(4));
        assert_eq!(gr.gprime.n(), 12);
        assert!(gr.gprime.is_bipartite());

        let k2 = Graph::path(2);
        let gr = build_gadget_p3(&k2, &k2.bipartition().unwrap(), 2).unwrap();
        assert_eq!(gr.gprime.n(), 10);

        let g = Graph::complete_bipartite(2, 5);
        let gr = build_gadget_p3(&g, &g.bipartition().unwrap(), 3).unwrap();
        let r = gr.r.unwrap();
        assert_eq!(r, 5);
        assert_eq!(gr.gprime.n(), g.n() + 2 * r);
        for x in gr.extra.iter() {
            let toward_source = gr
                .gprime
                .neighbors(x)
                .iter()
                .filter(|&&y| y < g.n())
                .count();
            assert!(toward_source <= 1);
        }
        for v in 0..g.n() {
            assert_eq!(gr.gprime.adj(v).intersection_len(&gr.extra), 1);
        }
    }

    #[test]
    fn gadget_rejects_bad_bipartition() {
        let c4 = Graph::cycle(4);
        let bad = Bipartition {
            x: c4.set([0, 1]),
            y: c4.set([2, 3]),
        };
        assert!(build_gadget_p3(&c4, &bad, 2).is_err());
    }

    #[test]
    fn lift_and_project() {
        let p4 = Graph::path(4);
        let gr = build_gadget_p3(&p4, &p4.bipartition().unwrap(), 2).unwrap();
        let fam = ConvexFamily::new(
            ConvexityKind::P3,
            CoverMode::Partition,
            vec![p4.set([0, 1]), p4.set([2, 3])],
        );
        let lifted = lift_p3_partition(&gr, &fam).unwrap();
        assert_eq!(lifted.len(), 3);
        assert_eq!(lifted.classes[2].len(), 8);
        assert_eq!(project_p3_partition(&gr, &lifted).unwrap(), fam);

        // the solver's own 3-partition of the gadget projects as well
        let found = exact_partition(&gr.gprime, ConvexityKind::P3, 3)
            .unwrap()
            .unwrap();
        let back = project_p3_partition(&gr, &found).unwrap();
        assert_eq!(back.validate(&p4), Ok(()));
    }

    #[test]
    fn project_reports_stray_source_vertices() {
        let p4 = Graph::path(4);
        let gr = build_gadget_p3(&p4, &p4.bipartition().unwrap(), 2).unwrap();
        let n2 = gr.gprime.n();
        // not P3-convex: validation rejects it before the biclique check
        let mut big = gr.extra.clone();
        big.insert(0);
        let rest = big.complement();
        let fam = ConvexFamily::new(
            ConvexityKind::P3,
            CoverMode::Partition,
            vec![
                VertexSet::from_vertices(n2, [1]),
                rest.difference(&VertexSet::from_vertices(n2, [1])),
                big,
            ],
        );
        assert!(project_p3_partition(&gr, &fam).is_err());
    }

    #[test]
    fn split_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let sp = split_partition(&g).unwrap();
        assert_eq!((sp.k.to_vec(), sp.s.to_vec()), (vec![0, 1, 2], vec![3]));
        assert_eq!(split_partition(&Graph::cycle(4)), None);
        let k5 = Graph::complete(5);
        let sp = split_partition(&k5).unwrap();
        assert!(sp.k.is_full() && sp.s.is_empty());
    }

    #[test]
    fn split_recognition_matches_brute_force() {
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(2);
        for _ in 0..300 {
            let g = crate::enumerate::random_graph(&mut rng, 6, 0.5);
            let brute = (0u64..64).any(|m| {
                let k = VertexSet::from_mask(6, m);
                g.is_clique(&k) && g.is_independent(&k.complement())
            });
            assert_eq!(split_partition(&g).is_some(), brute, "{g:?}");
        }
    }

    #[test]
    fn cover_transform_examples() {
        // K = {0, 1}, S = {2} adjacent to both
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let sp = SplitPartition {
            k: g.set([0, 1]),
            s: g.set([2]),
        };
        let fam = ConvexFamily::new(
            ConvexityKind::P3,
            CoverMode::Cover,
            vec![g.set([2]), g.set([0]), g.set([1])],
        );
        let out = cover_to_partition_split(&g, &sp, &fam, 3).unwrap();
        assert_eq!(out.classes, fam.classes);

        // K = {0..3}, S = {4, 5}; 4 ~ 0,1 and 5 ~ 2,3
        let mut edges: Vec<_> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .collect();
        edges.extend([(0, 4), (1, 4), (2, 5), (3, 5)]);
        let g = Graph::from_edges(6, &edges).unwrap();
        let sp = SplitPartition {
            k: g.set(0..4),
            s: g.set([4, 5]),
        };
        let classes = vec![
            g.set([4, 5]),
            g.set([4]),
            g.set([0]),
            g.set([1]),
            g.set([2]),
            g.set([3]),
        ];
        assert_eq!(sequential_difference(&classes).len(), 5);
        let fam = ConvexFamily::new(ConvexityKind::P3, CoverMode::Cover, classes);
        assert_eq!(fam.validate(&g), Ok(()));
        let out = cover_to_partition_split(&g, &sp, &fam, 6).unwrap();
        assert_eq!(out.len(), 6);
        assert_eq!(out.classes[0].to_vec(), vec![4]);
        assert_eq!(out.classes[5].to_vec(), vec![5]);
    }

    #[test]
    fn cover_transform_rejects_low_degree_independent_vertex() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let sp = SplitPartition {
            k: g.set([0, 1]),
            s: g.set([2]),
        };
        let fam = ConvexFamily::new(
            ConvexityKind::P3,
            CoverMode::Cover,
            vec![g.set([1, 2]), g.set([0])],
        );
        assert!(cover_to_partition_split(&g, &sp, &fam, 2).is_err());
    }

    #[test]
    fn convex_sets_on_split_graphs_are_independent() {
        use crate::exact::all_proper_convex_sets;
        for n in 3..=6 {
            for inst in crate::enumerate::split_graphs(n, 2) {
                let g = &inst.graph;
                for c in all_proper_convex_sets(g, ConvexityKind::P3).unwrap() {
                    assert!(g.is_independent(&c), "{c} in {g:?}");
                }
                for p in 2..=n {
                    if let Some(fam) = exact_cover(g, ConvexityKind::P3, p).unwrap() {
                        assert!(fam.classes.iter().all(|c| g.is_independent(c)));
                    }
                }
            }
        }
    }
}
