//! Interval operators, convexity tests and hulls for the four convexities.
//!
//! All kinds share one shape: a monotone, extensive one-step operator
//! `interval` whose fixed points are exactly the convex sets. The hull is
//! obtained by iterating it.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvexityKind {
    /// `S` is convex when every `v` with `N[v] ⊆ N[S]` lies in `S`.
    Digital,
    /// Closed under paths on three vertices.
    P3,
    /// Closed under induced paths on three vertices.
    P3Star,
    /// Closed under induced paths of any length.
    Monophonic,
}

impl ConvexityKind {
    pub const ALL: [ConvexityKind; 4] = [
        ConvexityKind::Digital,
        ConvexityKind::P3,
        ConvexityKind::P3Star,
        ConvexityKind::Monophonic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConvexityKind::Digital => "digital",
            ConvexityKind::P3 => "p3",
            ConvexityKind::P3Star => "p3star",
            ConvexityKind::Monophonic => "monophonic",
        }
    }
}

impl fmt::Display for ConvexityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConvexityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "digital" | "d" => Ok(ConvexityKind::Digital),
            "p3" => Ok(ConvexityKind::P3),
            "p3star" | "p3*" => Ok(ConvexityKind::P3Star),
            "monophonic" | "mono" | "m" => Ok(ConvexityKind::Monophonic),
            other => Err(Error::InvalidInput(format!("unknown convexity '{other}'"))),
        }
    }
}

/// Whether a family is a cover (classes may overlap, at most `p` of them)
/// or a partition (pairwise disjoint, exactly `p` of them).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMode {
    Cover,
    Partition,
}

impl fmt::Display for CoverMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverMode::Cover => "cover",
            CoverMode::Partition => "partition",
        })
    }
}

/// Certificate for a convex cover or partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexFamily {
    pub kind: ConvexityKind,
    pub mode: CoverMode,
    pub classes: Vec<VertexSet>,
}

impl ConvexFamily {
    pub fn new(kind: ConvexityKind, mode: CoverMode, classes: Vec<VertexSet>) -> Self {
        ConvexFamily {
            kind,
            mode,
            classes,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_lists(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(VertexSet::to_vec).collect()
    }

    /// First invariant violation, if any.
    pub fn validate(&self, g: &Graph) -> Result<(), FamilyViolation> {
        validate_family(g, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    WrongUniverse { class: usize },
    EmptyClass { class: usize },
    WholeVertexSet { class: usize },
    DuplicateClass { first: usize, second: usize },
    Overlap { first: usize, second: usize },
    Uncovered { vertex: usize },
    NotConvex { class: usize, forced: usize },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::WrongUniverse { class } => {
                write!(f, "class {class} is not a subset of this graph's vertices")
            }
            FamilyViolation::EmptyClass { class } => write!(f, "class {class} is empty"),
            FamilyViolation::WholeVertexSet { class } => {
                write!(f, "class {class} is the whole vertex set")
            }
            FamilyViolation::DuplicateClass { first, second } => {
                write!(f, "classes {first} and {second} are equal")
            }
            FamilyViolation::Overlap { first, second } => {
                write!(f, "partition classes {first} and {second} intersect")
            }
            FamilyViolation::Uncovered { vertex } => write!(f, "vertex {vertex} is not covered"),
            FamilyViolation::NotConvex { class, forced } => {
                write!(
                    f,
                    "class {class} is not convex: vertex {forced} is forced in"
                )
            }
        }
    }
}

/// Checks every family invariant in a fixed order and reports the first
/// failure: universe, nonempty, proper, distinct, disjoint (partitions),
/// covering, convex.
pub fn validate_family(g: &Graph, fam: &ConvexFamily) -> Result<(), FamilyViolation> {
    let n = g.n();
    for (i, c) in fam.classes.iter().enumerate() {
        if c.universe() != n {
            return Err(FamilyViolation::WrongUniverse { class: i });
        }
        if c.is_empty() {
            return Err(FamilyViolation::EmptyClass { class: i });
        }
        if c.is_full() {
            return Err(FamilyViolation::WholeVertexSet { class: i });
        }
    }
    for i in 0..fam.classes.len() {
        for j in i + 1..fam.classes.len() {
            if fam.classes[i] == fam.classes[j] {
                return Err(FamilyViolation::DuplicateClass {
                    first: i,
                    second: j,
                });
            }
            if fam.mode == CoverMode::Partition && fam.classes[i].intersects(&fam.classes[j]) {
                return Err(FamilyViolation::Overlap {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let mut covered = g.empty_set();
    for c in &fam.classes {
        covered.union_with(c);
    }
    if let Some(vertex) = covered.complement().first() {
        return Err(FamilyViolation::Uncovered { vertex });
    }
    let cx = Convexity::new(g, fam.kind);
    for (i, c) in fam.classes.iter().enumerate() {
        let grown = cx.interval(c).difference(c);
        if let Some(forced) = grown.first() {
            return Err(FamilyViolation::NotConvex { class: i, forced });
        }
    }
    Ok(())
}

/// A convexity bound to one graph. Monophonic pair intervals are memoized
/// inside, so reuse one instance for many queries on the same graph.
pub struct Convexity<'g> {
    g: &'g Graph,
    kind: ConvexityKind,
    pair_intervals: RefCell<HashMap<(usize, usize), VertexSet>>,
}

impl<'g> Convexity<'g> {
    pub fn new(g: &'g Graph, kind: ConvexityKind) -> Self {
        Convexity {
            g,
            kind,
            pair_intervals: RefCell::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn kind(&self) -> ConvexityKind {
        self.kind
    }

    /// `s` plus every vertex forced in by one application of the rule.
    pub fn interval(&self, s: &VertexSet) -> VertexSet {
        let g = self.g;
        assert_eq!(s.universe(), g.n(), "set not bound to this graph");
        match self.kind {
            ConvexityKind::Digital => {
                let ns = g.closed_neighborhood(s);
                let mut out = s.clone();
                for v in ns.iter() {
                    if !out.contains(v) && g.adj(v).is_subset(&ns) {
                        out.insert(v);
                    }
                }
                out
            }
            ConvexityKind::P3 => {
                let mut out = s.clone();
                for w in s.complement().iter() {
                    if g.adj(w).intersection_len(s) >= 2 {
                        out.insert(w);
                    }
                }
                out
            }
            ConvexityKind::P3Star => {
                let mut out = s.clone();
                for w in s.complement().iter() {
                    let inside = g.adj(w).intersection(s);
                    if inside.len() >= 2 && !g.is_clique(&inside) {
                        out.insert(w);
                    }
                }
                out
            }
            ConvexityKind::Monophonic => {
                let mut out = s.clone();
                let members = s.to_vec();
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        if !g.has_edge(u, v) {
                            out.union_with(&self.pair_interval(u, v));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn is_convex(&self, s: &VertexSet) -> bool {
        self.interval(s) == *s
    }

    /// Least convex superset of `s`.
    pub fn hull(&self, s: &VertexSet) -> VertexSet {
        let mut cur = s.clone();
        loop {
            let next = self.interval(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Vertices lying on some induced `u`–`v` path (both endpoints included).
    pub fn pair_interval(&self, u: usize, v: usize) -> VertexSet {
        let key = (u.min(v), u.max(v));
        if let Some(j) = self.pair_intervals.borrow().get(&key) {
            return j.clone();
        }
        let j = monophonic_pair_interval(self.g, key.0, key.1);
        self.pair_intervals.borrow_mut().insert(key, j.clone());
        j
    }
}

pub fn interval(g: &Graph, kind: ConvexityKind, s: &VertexSet) -> VertexSet {
    Convexity::new(g, kind).interval(s)
}

pub fn is_convex(g: &Graph, kind: ConvexityKind, s: &VertexSet) -> bool {
    Convexity::new(g, kind).is_convex(s)
}

pub fn hull(g: &Graph, kind: ConvexityKind, s: &VertexSet) -> VertexSet {
    Convexity::new(g, kind).hull(s)
}

/// True iff some induced `u`–`v` path passes through `w`.
pub fn on_induced_path(g: &Graph, u: usize, v: usize, w: usize) -> bool {
    assert!(
        u != v && u != w && v != w,
        "on_induced_path needs three distinct vertices"
    );
    induced_path_through(g, u, v, w).is_some()
}

fn monophonic_pair_interval(g: &Graph, u: usize, v: usize) -> VertexSet {
    let mut out = g.set([u, v]);
    if u == v || g.has_edge(u, v) {
        return out;
    }
    let comp = reachable_from(g, u, &g.vertices());
    if !comp.contains(v) {
        return out;
    }
    for w in comp.iter() {
        if out.contains(w) {
            continue;
        }
        if let Some(path) = induced_path_through(g, u, v, w) {
            for x in path {
                out.insert(x);
            }
        }
    }
    out
}

/// An induced `u`–`v` path through `w`, found by depth-first extension.
///
/// A partial path `u = p0, ..., pk` may grow by `x` only if `x ~ pk` and `x`
/// is outside `N[p0..pk-1]`. The rest of the search depends only on the last
/// vertex, the blocked set and whether `w` was visited, so dead states are
/// memoized on that triple.
pub fn induced_path_through(g: &Graph, u: usize, v: usize, w: usize) -> Option<Vec<usize>> {
    let mut search = PathSearch {
        g,
        target: v,
        via: w,
        dead: HashSet::new(),
        path: vec![u],
    };
    let blocked = g.set([u]);
    if search.extend(&blocked, u == w) {
        Some(search.path)
    } else {
        None
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    target: usize,
    via: usize,
    dead: HashSet<(usize, VertexSet, bool)>,
    path: Vec<usize>,
}

impl PathSearch<'_> {
    /// `blocked` = path vertices plus neighbors of all path vertices except
    /// the last one.
    fn extend(&mut self, blocked: &VertexSet, seen_via: bool) -> bool {
        let g = self.g;
        let last = *self.path.last().expect("nonempty path");
        if g.has_edge(last, self.target) {
            // Any other step would put the target in the blocked set.
            if seen_via {
                self.path.push(self.target);
                return true;
            }
            return false;
        }
        let free = blocked.complement();
        let key = (last, blocked.clone(), seen_via);
        if self.dead.contains(&key) {
            return false;
        }
        let reach = reachable_from(g, last, &free);
        if !reach.contains(self.target) || (!seen_via && !reach.contains(self.via)) {
            self.dead.insert(key);
            return false;
        }
        if seen_via {
            // Any shortest path inside the free region keeps the path induced.
            if let Some(tail) = shortest_path(g, last, self.target, &free) {
                self.path.extend_from_slice(&tail[1..]);
                return true;
            }
        }
        let mut next_blocked = blocked.clone();
        next_blocked.union_with(g.adj(last));
        for &x in g.neighbors(last) {
            if blocked.contains(x) || x == self.target {
                continue;
            }
            let mut nb = next_blocked.clone();
            nb.insert(x);
            self.path.push(x);
            if self.extend(&nb, seen_via || x == self.via) {
                return true;
            }
            self.path.pop();
        }
        self.dead.insert(key);
        false
    }
}

/// Vertices reachable from `src` through vertices of `free` (`src` itself
/// need not be free).
fn reachable_from(g: &Graph, src: usize, free: &VertexSet) -> VertexSet {
    let mut seen = g.set([src]);
    let mut stack = vec![src];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if free.contains(y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

fn shortest_path(g: &Graph, src: usize, dst: usize, free: &VertexSet) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[src] = src;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        if x == dst {
            let mut path = vec![dst];
            let mut cur = dst;
            while cur != src {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if free.contains(y) && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}
