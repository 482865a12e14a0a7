//! Cover and partition dispatch: specialized algorithms where one applies,
//! exhaustive search otherwise.

use convexkit::digital::{
    bipartite_dconvex_2partition, dconvex_cover_with, min_total_dominating_set_with,
};
use convexkit::exact::{exact_cover_with, exact_partition_with, Limits};
use convexkit::mono::{mconvex_2cover_with_witness, TwoCoverWitness};
use convexkit::p3::{find_matching_cut_with, p3_partition_from_cut};
use convexkit::{ConvexFamily, ConvexityKind, CoverMode, Error, Graph, Result};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Specialized algorithm when one applies, exhaustive search otherwise.
    Auto,
    /// Specialized constructive algorithm only.
    Paper,
    /// Exhaustive search.
    Oracle,
}

pub struct Solved {
    pub family: Option<ConvexFamily>,
    pub witness: Option<Value>,
    pub method: &'static str,
}

pub fn solve(
    g: &Graph,
    kind: ConvexityKind,
    mode: CoverMode,
    p: usize,
    method: Method,
    limits: &Limits,
) -> Result<Solved> {
    if method != Method::Oracle {
        if let Some(s) = specialized(g, kind, mode, p, limits)? {
            return Ok(s);
        }
        if method == Method::Paper {
            return Err(Error::InvalidInput(format!(
                "no specialized algorithm for a {kind} {mode} with p = {p} on this graph; use --method oracle"
            )));
        }
    }
    let family = match mode {
        CoverMode::Cover => exact_cover_with(g, kind, p, limits)?,
        CoverMode::Partition => exact_partition_with(g, kind, p, limits)?,
    };
    Ok(Solved {
        family,
        witness: None,
        method: "oracle",
    })
}

fn specialized(
    g: &Graph,
    kind: ConvexityKind,
    mode: CoverMode,
    p: usize,
    limits: &Limits,
) -> Result<Option<Solved>> {
    use ConvexityKind::*;
    let solved = |family, witness| Solved {
        family,
        witness: Some(witness),
        method: "paper",
    };
    Ok(Some(match (kind, mode, p) {
        (Digital, CoverMode::Cover, p) if p > 0 => {
            let tds = min_total_dominating_set_with(&g.complement(), limits)?;
            let fam = dconvex_cover_with(g, p, limits)?;
            let w = json!({ "complement_total_dominating_set": tds.map(|t| t.to_vec()) });
            solved(fam, w)
        }
        (Digital, CoverMode::Partition, 2) if g.is_bipartite() => {
            let fam = bipartite_dconvex_2partition(g)?;
            let w = json!({ "connected": g.is_connected(), "diameter": g.diameter().to_string() });
            solved(fam, w)
        }
        (P3, CoverMode::Partition, 2) => match find_matching_cut_with(g, limits)? {
            Some(cut) => {
                let fam = p3_partition_from_cut(g, &cut)?;
                solved(
                    Some(fam),
                    json!({ "matching_cut": [cut.a.to_vec(), cut.b.to_vec()] }),
                )
            }
            None => solved(None, json!({ "matching_cut": null })),
        },
        (Monophonic, CoverMode::Cover, 2) => match mconvex_2cover_with_witness(g)? {
            Some((fam, why)) => {
                let w = match why {
                    TwoCoverWitness::Disconnected => json!({ "reason": "disconnected" }),
                    TwoCoverWitness::CliqueSeparator(c) => {
                        json!({ "reason": "clique_separator", "separator": c.to_vec() })
                    }
                    TwoCoverWitness::CoBipartite(_) => json!({ "reason": "co_bipartite" }),
                };
                solved(Some(fam), w)
            }
            None => solved(
                None,
                json!({ "reason": "no clique separator and not co-bipartite" }),
            ),
        },
        _ => return Ok(None),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use convexkit::enumerate::all_labeled_graphs;

    #[test]
    fn specialized_and_exhaustive_answers_agree() {
        let limits = Limits::default();
        let cases = [
            (ConvexityKind::Digital, CoverMode::Cover, 1..=5),
            (ConvexityKind::Digital, CoverMode::Partition, 2..=2),
            (ConvexityKind::P3, CoverMode::Partition, 2..=2),
            (ConvexityKind::Monophonic, CoverMode::Cover, 2..=2),
        ];
        let mut compared = 0;
        for g in (1..=5).flat_map(all_labeled_graphs) {
            for (kind, mode, ps) in cases.clone() {
                for p in ps {
                    let fast = match solve(&g, kind, mode, p, Method::Paper, &limits) {
                        Ok(s) => s,
                        Err(Error::InvalidInput(_)) => continue,
                        Err(e) => panic!("{e}"),
                    };
                    let slow = solve(&g, kind, mode, p, Method::Oracle, &limits).unwrap();
                    assert_eq!(fast.method, "paper");
                    assert_eq!(
                        fast.family.is_some(),
                        slow.family.is_some(),
                        "{kind} {mode} p={p} {g:?}"
                    );
                    if let Some(f) = fast.family {
                        assert_eq!(f.validate(&g), Ok(()));
                    }
                    compared += 1;
                }
            }
        }
        assert!(compared > 2000);
    }

    #[test]
    fn auto_falls_back_to_search() {
        let g = Graph::cycle(5);
        let s = solve(
            &g,
            ConvexityKind::P3Star,
            CoverMode::Cover,
            3,
            Method::Auto,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(s.method, "oracle");
        assert!(solve(
            &g,
            ConvexityKind::P3Star,
            CoverMode::Cover,
            3,
            Method::Paper,
            &Limits::default()
        )
        .is_err());
    }
}
