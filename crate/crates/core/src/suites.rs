//! Named property suites checking the specialized algorithms against the
//! exhaustive solvers. Shared by `convexkit verify` and the acceptance tests.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::convexity::{is_convex, ConvexityKind};
use crate::digital::{
    bipartite_dconvex_2partition, dconvex_cover, dconvex_witness, min_total_dominating_set,
};
use crate::enumerate::{
    all_labeled_graphs, nonisomorphic_graphs, random_connected_bipartite, random_connected_sparse,
    random_graph, split_graphs,
};
use crate::error::Result;
use crate::exact::{all_proper_convex_sets, exact_cover, exact_partition};
use crate::graph::{Distance, Graph};
use crate::mono::{
    all_clique_separators, all_cliques, find_clique_separator, mconvex_2cover,
    mconvex_from_separator, mhull_pair, mono_partition_equiv,
};
use crate::p3::{
    build_gadget_p3, cover_to_partition_split, cut_from_p3_partition, find_matching_cut,
    lift_p3_partition, p3_partition_from_cut, project_p3_partition, SplitPartition,
};
use crate::vertex_set::VertexSet;

use ConvexityKind::*;

const MAX_SAMPLES: usize = 10;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: u64,
    /// The first few failure descriptions.
    pub samples: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks > 0 && self.failures == 0 && self.elapsed <= self.limit
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checks, {} failures, {:.2}s (limit {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failures,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )?;
        for s in &self.samples {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub limit: Duration,
    run: fn(&mut Checker),
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "dconvex-witness",
        about: "d-convex sets are exactly the sets V \\ N[W] (all graphs on 5 vertices, all subsets)",
        limit: Duration::from_secs(60),
        run: dconvex_witness_suite,
    },
    Suite {
        name: "dconvex-cover-tds",
        about: "d-convex p-covers exist iff the complement has a total dominating set of size <= p",
        limit: Duration::from_secs(300),
        run: dconvex_cover_suite,
    },
    Suite {
        name: "bipartite-dpartition",
        about: "connected bipartite graphs: d-convex 2-partition iff diameter >= 3",
        limit: Duration::from_secs(300),
        run: bipartite_dpartition_suite,
    },
    Suite {
        name: "matching-cut",
        about: "P3-convex 2-partitions correspond to matching cuts",
        limit: Duration::from_secs(300),
        run: matching_cut_suite,
    },
    Suite {
        name: "p3-gadget-lift",
        about: "bipartite g has a P3-convex 2-partition iff the biclique gadget has a 3-partition",
        limit: Duration::from_secs(600),
        run: p3_gadget_suite,
    },
    Suite {
        name: "triangle-free",
        about: "P3 and P3* convexity coincide on triangle-free graphs",
        limit: Duration::from_secs(120),
        run: triangle_free_suite,
    },
    Suite {
        name: "split-cover-partition",
        about: "split graphs with independent degrees >= 2: P3-convex p-cover iff p-partition",
        limit: Duration::from_secs(300),
        run: split_suite,
    },
    Suite {
        name: "mono-structure",
        about: "cliques, clique-separator unions and hulls under monophonic convexity",
        limit: Duration::from_secs(600),
        run: mono_structure_suite,
    },
    Suite {
        name: "mono-2cover",
        about: "the polynomial m-convex 2-cover decision agrees with exhaustive search",
        limit: Duration::from_secs(600),
        run: mono_2cover_suite,
    },
    Suite {
        name: "mono-gadget",
        about: "the apex gadget has an m-convex p-partition iff g has an l-clique partition, p-2 <= l <= p",
        limit: Duration::from_secs(900),
        run: mono_gadget_suite,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

impl Suite {
    pub fn run(&self) -> SuiteReport {
        let start = Instant::now();
        let mut c = Checker::default();
        (self.run)(&mut c);
        SuiteReport {
            name: self.name,
            checks: c.checks,
            failures: c.failures,
            samples: c.samples,
            elapsed: start.elapsed(),
            limit: self.limit,
        }
    }
}

#[derive(Default)]
struct Checker {
    checks: u64,
    failures: u64,
    samples: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.samples.len() < MAX_SAMPLES {
            self.samples.push(msg);
        }
    }

    /// Unwraps a library result, recording an error as a failure.
    fn ok<T>(&mut self, r: Result<T>, g: &Graph, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{what} on {g:?}: {e}"));
                None
            }
        }
    }
}

fn labeled_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(all_labeled_graphs)
}

fn random_sample(rng: &mut StdRng, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.2..0.8);
    random_graph(rng, n, p)
}

fn random_connected(rng: &mut StdRng, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
    random_connected_sparse(rng, n, m)
}

fn dconvex_witness_suite(c: &mut Checker) {
    for g in all_labeled_graphs(5) {
        for mask in 0u64..32 {
            let s = VertexSet::from_mask(5, mask);
            let by_def = is_convex(&g, Digital, &s);
            let by_witness = dconvex_witness(&g, &s).is_some();
            c.check(by_def == by_witness, || {
                format!("{g:?} {s}: definition {by_def}, witness {by_witness}")
            });
        }
    }
}

fn dconvex_cover_case(c: &mut Checker, g: &Graph, ps: std::ops::RangeInclusive<usize>) {
    let Some(tds) = c.ok(
        min_total_dominating_set(&g.complement()),
        g,
        "total domination",
    ) else {
        return;
    };
    for p in ps {
        let Some(exact) = c.ok(exact_cover(g, Digital, p), g, "exact cover") else {
            continue;
        };
        let by_tds = tds.as_ref().is_some_and(|t| t.len() <= p);
        c.check(exact.is_some() == by_tds, || {
            format!("{g:?} p={p}: exact {}, tds {tds:?}", exact.is_some())
        });
        if let Some(built) = c.ok(dconvex_cover(g, p), g, "d-convex cover") {
            c.check(built.is_some() == by_tds, || {
                format!("{g:?} p={p}: constructed cover {built:?}")
            });
            if let Some(f) = built {
                c.check(f.len() <= p && f.validate(g).is_ok(), || {
                    format!("{g:?} p={p}: invalid {f:?}")
                });
            }
        }
    }
}

fn dconvex_cover_suite(c: &mut Checker) {
    for g in all_labeled_graphs(5) {
        dconvex_cover_case(c, &g, 1..=5);
    }
    let mut rng = StdRng::seed_from_u64(0xd1);
    for _ in 0..300 {
        let g = random_sample(&mut rng, 6, 8);
        dconvex_cover_case(c, &g, 1..=g.n());
    }
}

fn bipartite_dpartition_case(c: &mut Checker, g: &Graph) {
    let Some(built) = c.ok(bipartite_dconvex_2partition(g), g, "bipartite 2-partition") else {
        return;
    };
    let Some(exact) = c.ok(exact_partition(g, Digital, 2), g, "exact partition") else {
        return;
    };
    let far = g.diameter() >= Distance::Finite(3);
    c.check(built.is_some() == far && far == exact.is_some(), || {
        format!(
            "{g:?}: constructed {}, diameter>=3 {far}, exact {}",
            built.is_some(),
            exact.is_some()
        )
    });
    if let Some(f) = built {
        c.check(f.validate(g).is_ok(), || format!("{g:?}: invalid {f:?}"));
    }
}

fn bipartite_dpartition_suite(c: &mut Checker) {
    for g in labeled_up_to(6).filter(|g| g.is_connected() && g.is_bipartite()) {
        bipartite_dpartition_case(c, &g);
    }
    let mut rng = StdRng::seed_from_u64(0xb1);
    for _ in 0..300 {
        let n = rng.gen_range(7..=8);
        bipartite_dpartition_case(c, &random_connected_bipartite(&mut rng, n));
    }
}

fn matching_cut_case(c: &mut Checker, g: &Graph) {
    let Some(cut) = c.ok(find_matching_cut(g), g, "matching cut") else {
        return;
    };
    let Some(exact) = c.ok(exact_partition(g, P3, 2), g, "exact partition") else {
        return;
    };
    c.check(cut.is_some() == exact.is_some(), || {
        format!("{g:?}: matching cut {cut:?}, exact {exact:?}")
    });
    if let Some(cut) = cut {
        c.check(cut.is_matching_cut(g), || {
            format!("{g:?}: not a matching cut {cut:?}")
        });
        let fam = p3_partition_from_cut(g, &cut);
        c.check(fam.is_ok(), || {
            format!("{g:?}: cut {cut:?} does not give a P3-convex partition")
        });
    }
    if let Some(fam) = exact {
        let back = cut_from_p3_partition(g, &fam);
        c.check(back.as_ref().is_ok_and(|b| b.is_matching_cut(g)), || {
            format!("{g:?}: partition {fam:?} does not give a matching cut")
        });
    }
}

fn matching_cut_suite(c: &mut Checker) {
    for g in labeled_up_to(5) {
        matching_cut_case(c, &g);
    }
    let mut rng = StdRng::seed_from_u64(0x3c);
    for _ in 0..300 {
        let g = random_sample(&mut rng, 6, 8);
        matching_cut_case(c, &g);
    }
}

fn p3_gadget_suite(c: &mut Checker) {
    for g in labeled_up_to(5).filter(|g| g.is_connected() && g.is_bipartite()) {
        let bip = g.bipartition().expect("bipartite");
        let Some(gr) = c.ok(build_gadget_p3(&g, &bip, 2), &g, "gadget") else {
            continue;
        };
        let Some(src) = c.ok(exact_partition(&g, P3, 2), &g, "exact partition") else {
            continue;
        };
        let Some(big) = c.ok(
            exact_partition(&gr.gprime, P3, 3),
            &gr.gprime,
            "exact gadget partition",
        ) else {
            continue;
        };
        c.check(src.is_some() == big.is_some(), || {
            format!("{g:?}: source {}, gadget {}", src.is_some(), big.is_some())
        });
        if let Some(src) = src {
            let round = lift_p3_partition(&gr, &src).and_then(|up| project_p3_partition(&gr, &up));
            c.check(
                round.as_ref().is_ok_and(|r| r.classes == src.classes),
                || format!("{g:?}: lift/project of {src:?} gave {round:?}"),
            );
        }
        if let Some(big) = big {
            let round =
                project_p3_partition(&gr, &big).and_then(|down| lift_p3_partition(&gr, &down));
            c.check(round.is_ok(), || {
                format!("{g:?}: project/lift of {big:?} gave {round:?}")
            });
        }
    }
}

fn triangle_free_suite(c: &mut Checker) {
    for g in labeled_up_to(6).filter(Graph::is_triangle_free) {
        let n = g.n();
        for mask in 0u64..1 << n {
            let s = VertexSet::from_mask(n, mask);
            let a = is_convex(&g, P3, &s);
            let b = is_convex(&g, P3Star, &s);
            c.check(a == b, || format!("{g:?} {s}: P3 {a}, P3* {b}"));
        }
    }
}

fn split_suite(c: &mut Checker) {
    for n in 1..=7 {
        for inst in split_graphs(n, 2) {
            let g = &inst.graph;
            let sp = SplitPartition {
                k: inst.clique.clone(),
                s: inst.independent.clone(),
            };
            for p in 1..=n {
                let Some(cover) = c.ok(exact_cover(g, P3, p), g, "exact cover") else {
                    continue;
                };
                let part = if p >= 2 {
                    let Some(part) = c.ok(exact_partition(g, P3, p), g, "exact partition") else {
                        continue;
                    };
                    part
                } else {
                    None
                };
                c.check(cover.is_some() == part.is_some(), || {
                    format!(
                        "{g:?} p={p}: cover {}, partition {}",
                        cover.is_some(),
                        part.is_some()
                    )
                });
                if let Some(cover) = cover {
                    let out = cover_to_partition_split(g, &sp, &cover, p);
                    c.check(
                        out.as_ref()
                            .is_ok_and(|f| f.len() == p && f.validate(g).is_ok()),
                        || format!("{g:?} p={p}: cover {cover:?} transformed to {out:?}"),
                    );
                }
            }
        }
    }
}

fn mono_structure_suite(c: &mut Checker) {
    for g in labeled_up_to(6) {
        for k in all_cliques(&g) {
            c.check(is_convex(&g, Monophonic, &k), || {
                format!("{g:?}: clique {k} not m-convex")
            });
        }
    }
    for n in 1..=7 {
        for g in nonisomorphic_graphs(n)
            .into_iter()
            .filter(Graph::is_connected)
        {
            let Some(seps) = c.ok(all_clique_separators(&g), &g, "clique separators") else {
                continue;
            };
            for sep in seps {
                let comps = g.components_within(&sep.complement());
                for mask in 1u64..(1 << comps.len()) - 1 {
                    let chosen: Vec<VertexSet> = (0..comps.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| comps[i].clone())
                        .collect();
                    let out = mconvex_from_separator(&g, &sep, &chosen);
                    c.check(
                        out.as_ref().is_ok_and(|s| is_convex(&g, Monophonic, s)),
                        || format!("{g:?}: separator {sep} with {chosen:?} gave {out:?}"),
                    );
                }
            }
        }
    }
    for n in 2..=8 {
        for g in nonisomorphic_graphs(n)
            .into_iter()
            .filter(Graph::is_connected)
        {
            let Some(sep) = c.ok(find_clique_separator(&g), &g, "clique separator") else {
                continue;
            };
            if sep.is_some() {
                continue;
            }
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let h = mhull_pair(&g, u, v);
                        c.check(h.is_full(), || format!("{g:?}: hull of {u},{v} is {h}"));
                    }
                }
            }
            if let Some(sets) = c.ok(all_proper_convex_sets(&g, Monophonic), &g, "convex sets") {
                for s in sets {
                    c.check(g.is_clique(&s), || {
                        format!("{g:?}: proper m-convex {s} is not a clique")
                    });
                }
            }
            if let Some(cover) = c.ok(exact_cover(&g, Monophonic, 2), &g, "exact cover") {
                let cob = g.is_co_bipartite();
                c.check(cover.is_some() == cob, || {
                    format!("{g:?}: 2-cover {}, co-bipartite {cob}", cover.is_some())
                });
            }
        }
    }
}

fn mono_2cover_case(c: &mut Checker, g: &Graph) {
    let Some(fast) = c.ok(mconvex_2cover(g), g, "2-cover decision") else {
        return;
    };
    let Some(exact) = c.ok(exact_cover(g, Monophonic, 2), g, "exact cover") else {
        return;
    };
    c.check(fast.is_some() == exact.is_some(), || {
        format!("{g:?}: decision {fast:?}, exact {}", exact.is_some())
    });
    if let Some(f) = fast {
        c.check(f.validate(g).is_ok(), || format!("{g:?}: invalid {f:?}"));
    }
}

/// Size of the large instance timed by the 2-cover suite.
pub const LARGE_2COVER: (usize, usize) = (2000, 6000);
pub const LARGE_2COVER_LIMIT: Duration = Duration::from_secs(10);

fn mono_2cover_suite(c: &mut Checker) {
    for g in labeled_up_to(6).filter(Graph::is_connected) {
        mono_2cover_case(c, &g);
    }
    let mut rng = StdRng::seed_from_u64(0x2c);
    for _ in 0..300 {
        let g = random_connected(&mut rng, 7, 9);
        mono_2cover_case(c, &g);
    }
    let (n, m) = LARGE_2COVER;
    let g = random_connected_sparse(&mut rng, n, m);
    let start = Instant::now();
    let answer = mconvex_2cover(&g);
    let took = start.elapsed();
    c.check(answer.is_ok() && took <= LARGE_2COVER_LIMIT, || {
        format!(
            "n={n} m={m}: {:.2}s, ok={}",
            took.as_secs_f64(),
            answer.is_ok()
        )
    });
}

fn mono_gadget_suite(c: &mut Checker) {
    for g in (2..=5)
        .flat_map(all_labeled_graphs)
        .filter(|g| !g.is_complete())
    {
        for p in [3, 4] {
            let Some(rep) = c.ok(mono_partition_equiv(&g, p), &g, "gadget equivalence") else {
                continue;
            };
            c.check(rep.agrees(), || {
                format!(
                    "{g:?} p={p}: gadget {}, clique l {:?}",
                    rep.gadget_partition_exists, rep.clique_l
                )
            });
            if let Some(f) = &rep.padded {
                c.check(
                    f.len() == p && f.validate(&rep.gadget.gprime).is_ok(),
                    || format!("{g:?} p={p}: padded {f:?} invalid"),
                );
            }
        }
    }
}
