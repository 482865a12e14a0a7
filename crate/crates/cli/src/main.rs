mod cert;
mod solve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use convexkit::convexity::Convexity;
use convexkit::exact::Limits;
use convexkit::io::{parse_graph, parse_vertex_list, write_graph};
use convexkit::mono::{build_gadget_mono, find_clique_separator};
use convexkit::p3::{build_gadget_p3, find_matching_cut_with};
use convexkit::suites::{find_suite, SuiteReport, SUITES};
use convexkit::{ConvexityKind, CoverMode, Error, Graph, VertexSet};
use serde_json::json;

use cert::{braces, Certificate};
use solve::{solve, Method};

#[derive(Parser)]
#[command(
    name = "convexkit",
    version,
    about = "Convex covers and partitions of graphs"
)]
struct Cli {
    /// Output format; JSON is the stable one.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Is a vertex set convex? With --certificate, re-validate a JSON
    /// cover or partition certificate instead.
    Check {
        #[arg(long)]
        convexity: Option<ConvexityKind>,
        /// Vertex list such as "0,2,5".
        #[arg(long)]
        set: Option<String>,
        #[arg(long, conflicts_with_all = ["convexity", "set", "file"])]
        certificate: Option<PathBuf>,
        file: Option<PathBuf>,
    },
    /// Convex hull of a vertex set.
    Hull {
        #[arg(long)]
        convexity: ConvexityKind,
        #[arg(long)]
        set: String,
        file: PathBuf,
    },
    /// Convex cover with at most p proper classes.
    Cover(SolveArgs),
    /// Convex partition into exactly p proper classes.
    Partition(SolveArgs),
    /// Build a hardness gadget.
    Gadget {
        #[command(subcommand)]
        kind: GadgetKind,
    },
    /// Minimum total dominating set.
    Tds { file: PathBuf },
    /// Most balanced matching cut.
    MatchingCut { file: PathBuf },
    /// A clique whose removal disconnects a connected graph.
    CliqueSeparator { file: PathBuf },
    /// Run a named property suite, or "all".
    Verify { suite: String },
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    convexity: ConvexityKind,
    #[arg(short)]
    p: usize,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    file: PathBuf,
}

#[derive(Subcommand)]
enum GadgetKind {
    /// Bipartite graph plus a K_{r,r}, for P3-convex partitions.
    P3 {
        #[arg(short)]
        p: usize,
        file: PathBuf,
    },
    /// Graph plus two nonadjacent universal apexes, for m-convex partitions.
    Mono { file: PathBuf },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::SizeCap { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse_graph(&text).map_err(|e| Failure {
        code: 2,
        msg: format!("{}: {e}", path.display()),
    })
}

fn read_set(g: &Graph, text: &str) -> Result<VertexSet, Failure> {
    let list = parse_vertex_list(text).map_err(|e| usage(e.to_string()))?;
    if let Some(&v) = list.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        }
        .into());
    }
    Ok(g.set(list))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("convexkit: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, c: &Certificate) {
    match cli.format {
        Format::Json => println!("{}", c.to_json()),
        Format::Text => print!("{}", c.to_text()),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let limits = Limits::from_env()?;
    match &cli.cmd {
        Command::Check {
            convexity,
            set,
            certificate,
            file,
        } => {
            if let Some(path) = certificate {
                return check_certificate(cli, path);
            }
            let (Some(kind), Some(set), Some(file)) = (convexity, set, file) else {
                return Err(usage(
                    "check needs --convexity, --set and FILE, or --certificate",
                ));
            };
            let g = read_graph(file)?;
            let s = read_set(&g, set)?;
            let h = Convexity::new(&g, *kind).hull(&s);
            let mut c = Certificate::new("check", &g)
                .convexity(*kind)
                .sets(std::slice::from_ref(&s));
            c.found = h == s;
            if !c.found {
                c.witness = Some(json!({ "hull": h.to_vec() }));
            }
            c.method = Some("definition".into());
            emit(cli, &c);
        }
        Command::Hull {
            convexity,
            set,
            file,
        } => {
            let g = read_graph(file)?;
            let s = read_set(&g, set)?;
            let h = Convexity::new(&g, *convexity).hull(&s);
            let mut c = Certificate::new("hull", &g)
                .convexity(*convexity)
                .sets(&[h]);
            c.witness = Some(json!({ "set": s.to_vec() }));
            emit(cli, &c);
        }
        Command::Cover(a) | Command::Partition(a) => {
            let mode = if matches!(cli.cmd, Command::Cover(_)) {
                CoverMode::Cover
            } else {
                CoverMode::Partition
            };
            let g = read_graph(&a.file)?;
            let out = solve(&g, a.convexity, mode, a.p, a.method, &limits)?;
            let mut c = Certificate::new(&mode.to_string(), &g)
                .convexity(a.convexity)
                .family(out.family.as_ref());
            c.p = Some(a.p);
            c.witness = out.witness;
            c.method = Some(out.method.into());
            emit(cli, &c);
        }
        Command::Gadget { kind } => {
            let (name, gr) = match kind {
                GadgetKind::P3 { p, file } => {
                    let g = read_graph(file)?;
                    let bip = g.bipartition().ok_or_else(|| {
                        Failure::from(Error::InvalidInput("graph is not bipartite".into()))
                    })?;
                    ("gadget-p3", build_gadget_p3(&g, &bip, *p)?)
                }
                GadgetKind::Mono { file } => {
                    ("gadget-mono", build_gadget_mono(&read_graph(file)?)?)
                }
            };
            match cli.format {
                Format::Text => {
                    print!("{}", write_graph(&gr.gprime));
                    println!("# embed {}", braces(&gr.embed));
                    println!("# extra {}", braces(&gr.extra.to_vec()));
                }
                Format::Json => {
                    let mut c = Certificate::new(name, &gr.gprime);
                    c.found = true;
                    c.p = gr.p;
                    c.witness = Some(json!({
                        "embed": gr.embed,
                        "extra": gr.extra.to_vec(),
                        "r": gr.r,
                        "source_n": gr.source.n(),
                    }));
                    emit(cli, &c);
                }
            }
        }
        Command::Tds { file } => {
            let g = read_graph(file)?;
            let tds = convexkit::digital::min_total_dominating_set_with(&g, &limits)?;
            let mut c = Certificate::new("tds", &g);
            if let Some(t) = tds {
                c = c.sets(&[t]);
            }
            emit(cli, &c);
        }
        Command::MatchingCut { file } => {
            let g = read_graph(file)?;
            let mut c = Certificate::new("matching-cut", &g);
            if let Some(cut) = find_matching_cut_with(&g, &limits)? {
                let crossing: Vec<[usize; 2]> = cut
                    .crossing_edges(&g)
                    .into_iter()
                    .map(|(u, v)| [u, v])
                    .collect();
                c = c.sets(&[cut.a, cut.b]);
                c.witness = Some(json!({ "crossing_edges": crossing }));
            }
            emit(cli, &c);
        }
        Command::CliqueSeparator { file } => {
            let g = read_graph(file)?;
            let mut c = Certificate::new("clique-separator", &g);
            if let Some(sep) = find_clique_separator(&g)? {
                let comps: Vec<Vec<usize>> = g
                    .components_within(&sep.complement())
                    .iter()
                    .map(VertexSet::to_vec)
                    .collect();
                c = c.sets(&[sep]);
                c.witness = Some(json!({ "components": comps }));
            }
            c.method = Some("mcs-m".into());
            emit(cli, &c);
        }
        Command::Verify { suite } => return verify(cli, suite),
    }
    Ok(0)
}

fn check_certificate(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        msg: format!("{}: {e}", path.display()),
    })?;
    let cert: Certificate =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let g = cert.graph.to_graph()?;
    let verdict = cert.validate();
    let mut c = Certificate::new("check-certificate", &g);
    c.convexity = cert.convexity.clone();
    c.p = cert.p;
    c.found = verdict.is_ok();
    c.classes = cert.classes.clone();
    c.witness = Some(json!({
        "problem": cert.problem,
        "error": verdict.err(),
    }));
    emit(cli, &c);
    Ok(0)
}

fn verify(cli: &Cli, name: &str) -> Result<u8, Failure> {
    let suites: Vec<_> = if name == "all" {
        SUITES.iter().collect()
    } else {
        let s = find_suite(name).ok_or_else(|| {
            let names: Vec<_> = SUITES.iter().map(|s| s.name).collect();
            usage(format!(
                "unknown suite '{name}'; known: all, {}",
                names.join(", ")
            ))
        })?;
        vec![s]
    };
    let reports: Vec<SuiteReport> = suites
        .iter()
        .map(|s| {
            let r = s.run();
            if cli.format == Format::Text {
                println!("{r}");
            }
            r
        })
        .collect();
    if cli.format == Format::Json {
        let out: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "suite": r.name,
                    "passed": r.passed(),
                    "checks": r.checks,
                    "failures": r.failures,
                    "elapsed_s": r.elapsed.as_secs_f64(),
                    "limit_s": r.limit.as_secs(),
                    "samples": r.samples,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    }
    Ok(if reports.iter().all(SuiteReport::passed) {
        0
    } else {
        1
    })
}
