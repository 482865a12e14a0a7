//! The JSON certificate every command prints, and its text rendering.

use std::fmt::Write as _;

use convexkit::{ConvexFamily, ConvexityKind, CoverMode, Graph, VertexSet};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> convexkit::Result<Graph> {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(self.n, &edges)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: String,
    pub convexity: Option<String>,
    pub p: Option<usize>,
    pub found: bool,
    pub classes: Option<Vec<Vec<usize>>>,
    pub witness: Option<Value>,
    pub method: Option<String>,
    pub graph: GraphJson,
}

impl Certificate {
    pub fn new(problem: &str, g: &Graph) -> Self {
        Certificate {
            problem: problem.to_string(),
            convexity: None,
            p: None,
            found: false,
            classes: None,
            witness: None,
            method: None,
            graph: GraphJson::from_graph(g),
        }
    }

    pub fn convexity(mut self, kind: ConvexityKind) -> Self {
        self.convexity = Some(kind.name().to_string());
        self
    }

    pub fn sets(mut self, sets: &[VertexSet]) -> Self {
        self.found = true;
        self.classes = Some(sets.iter().map(VertexSet::to_vec).collect());
        self
    }

    pub fn family(self, fam: Option<&ConvexFamily>) -> Self {
        match fam {
            Some(f) => self.sets(&f.classes),
            None => self,
        }
    }

    /// Re-validates a cover or partition certificate against its own graph.
    pub fn validate(&self) -> Result<(), String> {
        let mode = match self.problem.as_str() {
            "cover" => CoverMode::Cover,
            "partition" => CoverMode::Partition,
            other => return Err(format!("cannot validate a '{other}' certificate")),
        };
        let kind: ConvexityKind = self
            .convexity
            .as_deref()
            .ok_or("certificate has no convexity")?
            .parse()
            .map_err(|e: convexkit::Error| e.to_string())?;
        let g = self.graph.to_graph().map_err(|e| e.to_string())?;
        let Some(classes) = &self.classes else {
            return if self.found {
                Err("found is true but classes are missing".into())
            } else {
                Ok(())
            };
        };
        if !self.found {
            return Err("found is false but classes are present".into());
        }
        for c in classes.iter().flatten() {
            if *c >= g.n() {
                return Err(format!("vertex {c} out of range"));
            }
        }
        let sets = classes.iter().map(|c| g.set(c.iter().copied())).collect();
        let fam = ConvexFamily::new(kind, mode, sets);
        fam.validate(&g).map_err(|v| v.to_string())?;
        if let Some(p) = self.p {
            let ok = match mode {
                CoverMode::Cover => fam.len() <= p,
                CoverMode::Partition => fam.len() == p,
            };
            if !ok {
                return Err(format!(
                    "{} classes do not fit a {mode} with p = {p}",
                    fam.len()
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.problem.clone();
        let mut params = Vec::new();
        if let Some(k) = &self.convexity {
            params.push(k.clone());
        }
        if let Some(p) = self.p {
            params.push(format!("p = {p}"));
        }
        if let Some(m) = &self.method {
            params.push(format!("method {m}"));
        }
        if !params.is_empty() {
            let _ = write!(out, " ({})", params.join(", "));
        }
        let _ = writeln!(out, ": {}", if self.found { "yes" } else { "no" });
        if let Some(classes) = &self.classes {
            let shown: Vec<String> = classes.iter().map(|c| braces(c)).collect();
            let _ = writeln!(out, "  {}", shown.join(" "));
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness: {w}");
        }
        out
    }
}

pub fn braces(c: &[usize]) -> String {
    let inner: Vec<String> = c.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}
