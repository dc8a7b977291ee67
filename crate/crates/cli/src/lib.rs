//! Command-line front end: reads a graph file, runs one computation and
//! emits canonical JSON (sorted keys, rationals as `"p/q"`).

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use troproots::divpl::coset_representatives;
use troproots::graph::{fmt_q, GraphJson};
use troproots::monoid::{build_gamma_over_r, build_xsr};
use troproots::pixton::{assemble_p, subdivided_degree, LineBundleSpec, SamplingPolicy};
use troproots::tropjac::{compact_type, torsion_points};
use troproots::verify::{run_all, VerifyConfig};
use troproots::{Cycle, DecoratedGraph, Error};

pub const GRAPH_SCHEMA: &str = "\
GRAPH FILE
  {
    \"vertices\":  [{\"id\": 0, \"genus\": 0}, ...],
    \"legs\":      [{\"i\": 1, \"vertex\": 0, \"twist\": 0}, ...],
    \"edges\":     [{\"id\": 0, \"from\": 0, \"to\": 1, \"length\": [\"1\", \"0\"]}, ...],
    \"base_rank\": 2,
    \"root_index\": 1
  }
  Lengths are points of N^base_rank written as integer or \"p/q\" strings;
  denominators must divide root_index (default 1). Every edge length must be
  nonzero and the graph connected. `genus`, `legs`, `twist` and `root_index`
  may be omitted. Unknown fields are rejected.

EXIT STATUS
  0 success, 1 input or structural error, 2 contract violation,
  3 `verify` finished with failing suites.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Homology basis, pairing matrix and spanning tree.
    Homology,
    /// r-torsion classes of the tropical jacobian with their charts.
    Torsion,
    /// One saturated monoid extension.
    Monoid,
    /// Coset representatives of the r-th roots of L.
    Cosets,
    /// Piecewise polynomial of the spin double ramification cycle.
    SpinDr,
    /// Run the property suites on the graph.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MonoidChoice {
    /// Roots of the pairing with a single cycle (needs --gamma).
    Gamma,
    /// Roots of the full pairing.
    Xsr,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "troproots", version, about = "Exact computations on decorated tropical curves", after_help = GRAPH_SCHEMA)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph file (JSON, see below).
    #[arg(long)]
    pub graph: PathBuf,
    /// Root order.
    #[arg(long, default_value_t = 2)]
    pub r: i64,
    /// Chart units for `torsion` and `monoid`: 1 or r.
    #[arg(long)]
    pub root_index: Option<i64>,
    /// Power of the canonical bundle.
    #[arg(long, default_value_t = 1, conflicts_with = "degl")]
    pub k: i64,
    /// Comma-separated twists in leg order; defaults to the legs' `twist`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "degl"
    )]
    pub twists: Option<Vec<i64>>,
    /// Explicit multidegree of L, one value per vertex in file order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub degl: Option<Vec<i64>>,
    /// Truncation degree; defaults to the total genus.
    #[arg(long)]
    pub trunc: Option<usize>,
    /// First s-sample of the fit; defaults to trunc·r + 2.
    #[arg(long)]
    pub s0: Option<i64>,
    /// Samples beyond the fit used as a check.
    #[arg(long, default_value_t = 2)]
    pub extra_samples: usize,
    #[arg(long, value_enum, default_value_t = MonoidChoice::Xsr)]
    pub kind: MonoidChoice,
    /// Comma-separated coordinates of the cycle in the homology basis.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<i64>>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for randomized `verify` suites.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Validated arguments.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub graph: PathBuf,
    pub r: i64,
    pub root_index: i64,
    pub line_bundle: LineBundleArg,
    pub trunc: Option<usize>,
    pub policy: SamplingPolicy,
    pub monoid: MonoidChoice,
    pub gamma: Option<Vec<i64>>,
    pub threads: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub enum LineBundleArg {
    OmegaTwist { k: i64, twists: Option<Vec<i64>> },
    Multidegree(Vec<i64>),
}

impl RunConfig {
    pub fn from_cli(c: &Cli) -> Result<Self, Error> {
        if c.r < 1 {
            return Err(Error::input("r", "must be positive"));
        }
        let root_index = c.root_index.unwrap_or(1);
        if root_index != 1 && root_index != c.r {
            return Err(Error::input("root_index", "must be 1 or r"));
        }
        if c.s0.is_some_and(|s| s < 1) {
            return Err(Error::input("s0", "must be positive"));
        }
        if c.threads == Some(0) {
            return Err(Error::input("threads", "must be positive"));
        }
        if c.command == Command::Monoid && c.kind == MonoidChoice::Gamma && c.gamma.is_none() {
            return Err(Error::input("gamma", "required with --kind gamma"));
        }
        let line_bundle = match &c.degl {
            Some(d) => LineBundleArg::Multidegree(d.clone()),
            None => LineBundleArg::OmegaTwist {
                k: c.k,
                twists: c.twists.clone(),
            },
        };
        Ok(RunConfig {
            command: c.command,
            graph: c.graph.clone(),
            r: c.r,
            root_index,
            line_bundle,
            trunc: c.trunc,
            policy: SamplingPolicy {
                s0: c.s0,
                extra_samples: c.extra_samples,
            },
            monoid: c.kind,
            gamma: c.gamma.clone(),
            threads: c.threads,
            seed: c.seed,
        })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Contract(_) => 2,
        _ => 1,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({
        "error": {
            "kind": e.kind(),
            "path": e.path(),
            "message": e.to_string(),
        }
    })
}

pub fn load_graph(text: &str) -> Result<DecoratedGraph, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let parsed: GraphJson = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::input(
            if path == "." { "graph".into() } else { path },
            e.inner().to_string(),
        )
    })?;
    parsed.into_graph()
}

fn echo(g: &DecoratedGraph) -> Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("graph serializes")
}

fn line_bundle(g: &DecoratedGraph, arg: &LineBundleArg) -> LineBundleSpec {
    match arg {
        LineBundleArg::Multidegree(d) => LineBundleSpec::Multidegree(d.clone()),
        LineBundleArg::OmegaTwist { k, twists } => LineBundleSpec::OmegaTwist {
            k: *k,
            twists: twists
                .clone()
                .unwrap_or_else(|| g.legs.iter().map(|l| l.twist).collect()),
        },
    }
}

fn homology(g: &DecoratedGraph) -> Result<Value, Error> {
    let basis = g.homology_basis()?;
    let mut pairing = Vec::new();
    for a in &basis {
        let mut row = Vec::new();
        for b in &basis {
            row.push(g.intersection_pairing(a, b)?.to_strings());
        }
        pairing.push(row);
    }
    let tree = g.spanning_tree()?;
    let non_tree: Vec<u32> = tree
        .non_tree_edges()
        .iter()
        .map(|&e| g.edges[e].id)
        .collect();
    Ok(json!({
        "h1": g.h1(),
        "genus": g.total_genus(),
        "compact_type": compact_type(g),
        "basis": basis.iter().map(|c| c.coeffs.clone()).collect::<Vec<_>>(),
        "pairing": pairing,
        "non_tree_edges": non_tree,
    }))
}

fn compute(cfg: &RunConfig, g: &DecoratedGraph) -> Result<(Value, bool), Error> {
    let r = cfg.r;
    let mut ok = true;
    let mut out = match cfg.command {
        Command::Homology => homology(g)?,
        Command::Torsion => {
            let pts = torsion_points(g, r, cfg.root_index)?;
            json!({
                "r": r,
                "root_index": cfg.root_index,
                "divisible_count": pts.iter().filter(|p| p.divisible).count(),
                "classes": pts.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            })
        }
        Command::Monoid => {
            let gr = g.with_root_index(cfg.root_index)?;
            let ext = match cfg.monoid {
                MonoidChoice::Xsr => build_xsr(&gr, r)?,
                MonoidChoice::Gamma => {
                    let coords = cfg.gamma.as_deref().unwrap_or_default();
                    let basis = gr.homology_basis()?;
                    if coords.len() != basis.len() {
                        return Err(Error::input(
                            "gamma",
                            format!("expected {} coordinates", basis.len()),
                        ));
                    }
                    build_gamma_over_r(&gr, &Cycle::combine(&basis, coords, gr.n_edges()), r)?
                }
            };
            let hilbert: Vec<Vec<String>> = ext
                .hilbert_basis
                .iter()
                .map(|v| v.iter().map(fmt_q).collect())
                .collect();
            json!({ "monoid": ext.to_json(), "hilbert_basis": hilbert })
        }
        Command::Cosets => {
            let (g_r, deg_l) = subdivided_degree(g, &line_bundle(g, &cfg.line_bundle), r)?;
            let reps = coset_representatives(&g_r, &deg_l, r)?;
            json!({
                "r": r,
                "subdivided": echo(&g_r),
                "degL": deg_l.to_json(&g_r),
                "classes": reps.iter().map(|c| c.to_json(&g_r)).collect::<Vec<_>>(),
            })
        }
        Command::SpinDr => {
            let a = assemble_p(
                g,
                &line_bundle(g, &cfg.line_bundle),
                r,
                cfg.trunc,
                cfg.policy,
            )?;
            a.to_json()
        }
        Command::Verify => {
            let vc = VerifyConfig {
                r,
                seed: cfg.seed,
                policy: cfg.policy,
                ..VerifyConfig::default()
            };
            let reports = run_all(g, &vc)?;
            ok = reports.iter().all(|s| s.passed());
            json!({
                "r": r,
                "seed": cfg.seed,
                "passed": ok,
                "suites": reports.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            })
        }
    };
    out["graph"] = echo(g);
    Ok((out, ok))
}

/// Exit status and the JSON document to emit.
pub fn run(cfg: &RunConfig) -> (i32, Value) {
    let result = std::fs::read_to_string(&cfg.graph)
        .map_err(|e| Error::input("graph", format!("cannot read {}: {e}", cfg.graph.display())))
        .and_then(|text| load_graph(&text))
        .and_then(|g| match cfg.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::input("threads", e.to_string()))?
                .install(|| compute(cfg, &g)),
            None => compute(cfg, &g),
        });
    match result {
        Ok((v, true)) => (0, v),
        Ok((v, false)) => (3, v),
        Err(e) => (exit_code(&e), error_json(&e)),
    }
}

/// Pretty JSON with a trailing newline; keys come out sorted because
/// `serde_json` maps are ordered.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}
