//! `turex`: command-line front end for turex-core.
//!
//! Exit codes: 0 success, 1 a check failed (details on stdout), 2 bad input.

mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use turex_core::embeddings::{amp_count, ext_count, inj, packing_number, PartialAssignment};
use turex_core::exponent::{
    check_condition_1, check_condition_2, coverage_report, params_from_rational, CoverageRow,
    ExponentQuery,
};
use turex_core::obstructions::{
    master_constants, obstruction_family_t, verify_obstruction_family, ObstructionFamily,
    VerifyOptions,
};
use turex_core::rooted::{density, first_unbalanced_subset, is_balanced, power};
use turex_core::sweep::{amp_sweep, drc_path_pattern, drc_sweep, kst_sweep};
use turex_core::toolkit::{
    degree_sandwich_check, drc_check, find_sequential_sunflower, kst_check,
    sequential_sunflower_bound, validate_sequential_sunflower, BipartiteGraph, SequenceSystem,
};
use turex_core::turan::{
    fit_exponent, parse_points, turan_exact, turan_series, TuranCache, TuranOptions, TuranRecord,
    DEFAULT_CAP,
};
use turex_core::{Error, Graph, Rational};

#[derive(Parser)]
#[command(
    name = "turex",
    version,
    about = "Balanced rooted trees and exact Turán numbers"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// CSV output, for commands with tabular results.
    #[arg(long, global = true)]
    csv: bool,
    /// JSONL file memoizing Turán results.
    #[arg(long, global = true, env = "TURAN_CACHE")]
    cache: Option<String>,
    /// Largest n the Turán solver accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for the Turán solver.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

/// Where a rooted graph comes from.
#[derive(Args)]
struct TreeSource {
    /// JSON file (`-` for stdin) with `n`, `edges` and `roots`.
    file: Option<String>,
    /// Build `T(s,t,s')` instead, given as `s,t,s'`.
    #[arg(long = "t", conflicts_with_all = ["file", "catalog"])]
    t: Option<String>,
    /// Build a catalogue tree: `k:s,t`, `p:t`, `q:s,t` or `s:s,t,t'`.
    #[arg(long, conflicts_with = "file")]
    catalog: Option<String>,
}

impl TreeSource {
    fn load(&self) -> Result<turex_core::RootedGraph, Failure> {
        input::rooted(
            self.file.as_deref(),
            self.t.as_deref(),
            self.catalog.as_deref(),
        )
    }
}

/// The forbidden graph of a Turán query.
#[derive(Args)]
struct Forbidden {
    /// Built-in name: `k3`, `c4`, `k13`, `k2,3`, `path4`, `star3`, ...
    #[arg(long = "h", required_unless_present = "h_file")]
    h: Option<String>,
    /// JSON graph file.
    #[arg(long = "h-file", conflicts_with = "h")]
    h_file: Option<String>,
}

impl Forbidden {
    fn load(&self) -> Result<Graph, Failure> {
        match (&self.h, &self.h_file) {
            (Some(name), _) => Graph::named(name)
                .ok_or_else(|| Failure::input(format!("unknown built-in graph {name:?}"))),
            (None, Some(path)) => Ok(Graph::from_json_str(&input::read_source(path)?)?),
            (None, None) => Err(Failure::input("pass --h or --h-file")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Density e / (v - |R|) of a rooted graph.
    Density(TreeSource),
    /// Whether a rooted graph is balanced.
    Balanced(TreeSource),
    /// The p-th power: p copies glued along the roots.
    Power {
        #[command(flatten)]
        tree: TreeSource,
        #[arg(long, short)]
        p: usize,
    },
    /// Emit T(s,t,s') or a catalogue tree as JSON.
    MakeTree(TreeSource),
    /// Emit the obstruction family of T(s,t,s').
    Obstructions { s: u64, t: u64, s_prime: u64 },
    /// Check an obstruction family for a leaf-rooted tree.
    VerifyObstructions {
        #[command(flatten)]
        tree: TreeSource,
        /// Family JSON; defaults to the family of `--t`.
        #[arg(long)]
        family: Option<String>,
        /// Also report removable members.
        #[arg(long)]
        minimality: bool,
        /// Require members as rooted subgraphs.
        #[arg(long)]
        rooted: bool,
    },
    /// Tree parameters for the exponent 2 - a/b, with conditions (1) and (2).
    Params {
        a: u64,
        b: u64,
        /// Keep a/b as given instead of reducing it.
        #[arg(long)]
        unreduced: bool,
    },
    /// Which densities m + s/a are covered, for each s < a.
    Coverage {
        a: u64,
        #[arg(long)]
        max_m: Option<u64>,
    },
    /// Constants for T(s,t,s') with p copies.
    Constants {
        s: u64,
        t: u64,
        s_prime: u64,
        #[arg(long, short, default_value_t = 1)]
        p: u64,
    },
    /// Count embeddings, optionally pinned by `--sigma v:w,...`.
    Inj {
        /// Pattern: rooted JSON file or built-in name.
        #[arg(long)]
        f: String,
        /// Host: built-in name or JSON file.
        #[arg(long)]
        g: String,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Count C-ample embeddings; with `--sigma`, report the packing number.
    Amp {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, short)]
        c: usize,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Count embeddings of F2 extending a C-ample embedding of F1.
    Ext {
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        g: String,
        #[arg(long, short)]
        c: usize,
    },
    /// Look for a sequential sunflower in a sequence system (JSON).
    Sunflower {
        file: Option<String>,
        #[arg(long, short)]
        c: usize,
    },
    /// The K_{s,t}-free edge bound on a bipartite graph (JSON).
    Kst {
        file: Option<String>,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Embedding search plus the degree-moment bound.
    Drc {
        /// Pattern bipartite graph; defaults to the path u0-w0-u1-w1.
        #[arg(long)]
        f: Option<String>,
        /// Host bipartite graph.
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Whether every degree lies in [c n^alpha, 5^(4/alpha) c n^alpha].
    Sandwich {
        /// Built-in name or JSON file.
        graph: String,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        alpha: String,
    },
    /// Exact ex(n, H) with a witness.
    Turan {
        n: usize,
        #[command(flatten)]
        h: Forbidden,
    },
    /// ex(n, H) for every n in lo..=hi.
    TuranSeries {
        lo: usize,
        hi: usize,
        #[command(flatten)]
        h: Forbidden,
    },
    /// Least-squares slope of log ex against log n.
    Fit {
        /// JSON `[[n, ex], ...]` or CSV `n,ex` lines; stdin by default.
        file: Option<String>,
    },
    /// Rewrite the cache file keeping one valid line per record.
    CacheCompact,
    /// Exhaustive or seeded random property sweeps.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        /// Largest part size (kst, drc) or host size (amp).
        #[arg(long, default_value_t = 4)]
        max: usize,
        /// Random pairs for the amp sweep.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Kst,
    Drc,
    Amp,
}

pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// What a command produced. `failed` maps to exit code 1.
struct Report {
    json: Value,
    csv: Option<String>,
    failed: bool,
}

impl Report {
    fn ok(json: Value) -> Self {
        Report {
            json,
            csv: None,
            failed: false,
        }
    }

    fn check(json: Value, passed: bool) -> Self {
        Report {
            json,
            csv: None,
            failed: !passed,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn solver_options(g: &Global) -> TuranOptions {
    TuranOptions {
        cap: g.cap,
        threads: g.threads.max(1),
    }
}

fn open_cache(g: &Global) -> Result<Option<TuranCache>, Failure> {
    g.cache
        .as_deref()
        .map(TuranCache::open)
        .transpose()
        .map_err(Failure::from)
}

fn record_json(rec: &TuranRecord) -> Value {
    json!({
        "n": rec.n,
        "h": rec.h_canonical,
        "ex": rec.ex_value,
        "witness_edges": rec.witness_edges,
        "solver_version": rec.solver_version,
    })
}

fn sigma(spec: &str) -> Result<PartialAssignment, Failure> {
    Ok(PartialAssignment::from_pairs(input::pairs(spec)?)?)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Density(src) => {
            let f = src.load()?;
            let d = density(&f)?;
            Report::ok(json!({
                "density": d,
                "edges": f.edge_count(),
                "non_roots": f.non_root_count(),
            }))
            .with_csv(format!(
                "density,edges,non_roots\n{d},{},{}\n",
                f.edge_count(),
                f.non_root_count()
            ))
        }
        Command::Balanced(src) => {
            let f = src.load()?;
            let b = is_balanced(&f)?;
            let witness = first_unbalanced_subset(&f)?;
            Report::ok(json!({
                "balanced": b,
                "density": density(&f)?,
                "witness_subset": witness,
            }))
        }
        Command::Power { tree, p } => Report::ok(power(&tree.load()?, *p)?.to_json()),
        Command::MakeTree(src) => Report::ok(src.load()?.to_json()),
        Command::Obstructions { s, t, s_prime } => {
            let fam = obstruction_family_t(turex_core::FamilyParams::new(*s, *t, *s_prime)?)?;
            Report::ok(to_json(&fam))
        }
        Command::VerifyObstructions {
            tree,
            family,
            minimality,
            rooted,
        } => {
            let f = tree.load()?;
            let fam = match (family, &tree.t) {
                (Some(path), _) => ObstructionFamily::from_json_str(&input::read_source(path)?)?,
                (None, Some(t)) => obstruction_family_t(input::parse_params(t)?)?,
                (None, None) => {
                    return Err(Failure::input(
                        "pass --family, or --t for the built-in family",
                    ))
                }
            };
            let opts = VerifyOptions {
                check_minimality: *minimality,
                rooted_subtrees: *rooted,
            };
            let v = verify_obstruction_family(&f, &fam, opts)?;
            let ok = v.is_ok();
            Report::check(to_json(&v), ok)
        }
        Command::Params { a, b, unreduced } => {
            let q = if *unreduced {
                ExponentQuery::unreduced(*a, *b)?
            } else {
                ExponentQuery::new(*a, *b)?
            };
            let cond1 = check_condition_1(q)?;
            match params_from_rational(q) {
                Ok(p) => {
                    let cond2 = check_condition_2(p);
                    let csv = format!(
                        "a,b,s,t,sprime,rho,cond1,cond2\n{},{},{},{},{},{},{cond1},{cond2}\n",
                        q.a(),
                        q.b(),
                        p.s,
                        p.t,
                        p.s_prime,
                        q.rho()
                    );
                    Report::ok(json!({
                        "s": p.s,
                        "t": p.t,
                        "sprime": p.s_prime,
                        "rho": q.rho(),
                        "cond1": cond1,
                        "cond2": cond2,
                    }))
                    .with_csv(csv)
                }
                Err(Error::ConditionOneFails { .. }) => Report::check(
                    json!({ "a": q.a(), "b": q.b(), "rho": q.rho(), "cond1": false }),
                    false,
                ),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Coverage { a, max_m } => {
            let rows = coverage_report(*a, *max_m)?;
            let mut csv = format!("{}\n", CoverageRow::CSV_HEADER);
            for r in &rows {
                csv.push_str(&r.to_csv());
                csv.push('\n');
            }
            Report::ok(to_json(&rows)).with_csv(csv)
        }
        Command::Constants { s, t, s_prime, p } => {
            let params = turex_core::FamilyParams::new(*s, *t, *s_prime)?;
            Report::ok(to_json(&master_constants(params, *p)?))
        }
        Command::Inj {
            f,
            g: host,
            sigma: s,
        } => {
            let f = input::pattern(f)?;
            let host = input::graph(host)?;
            let s = s.as_deref().map(sigma).transpose()?;
            Report::ok(json!({ "inj": inj(&f, &host, s.as_ref())? }))
        }
        Command::Amp {
            f,
            g: host,
            c,
            sigma: s,
        } => {
            let f = input::pattern(f)?;
            let host = input::graph(host)?;
            match s {
                Some(s) => {
                    let packing = packing_number(&f, &host, &sigma(s)?)?;
                    Report::ok(json!({ "packing": packing, "ample": packing >= *c }))
                }
                None => Report::ok(
                    json!({ "amp": amp_count(&f, &host, *c)?, "inj": inj(&f, &host, None)? }),
                ),
            }
        }
        Command::Ext { f1, f2, g: host, c } => {
            let (f1, f2) = (input::pattern(f1)?, input::pattern(f2)?);
            let host = input::graph(host)?;
            Report::ok(json!({
                "ext": ext_count(&f1, &f2, &host, *c)?,
                "inj_f2": inj(&f2, &host, None)?,
            }))
        }
        Command::Sunflower { file, c } => {
            let w = SequenceSystem::from_json_str(&input::read_source(
                file.as_deref().unwrap_or("-"),
            )?)?;
            let bound = sequential_sunflower_bound(w.k() as u32, *c as u64);
            let above = num_bigint::BigUint::from(w.len()) > bound;
            match find_sequential_sunflower(&w, *c) {
                Some(cert) => {
                    let valid = validate_sequential_sunflower(&w, &cert, *c);
                    Report::check(
                        json!({
                            "found": true,
                            "certificate": cert,
                            "valid": valid.is_ok(),
                            "bound": bound.to_string(),
                        }),
                        valid.is_ok(),
                    )
                }
                // above the bound a certificate is guaranteed
                None => Report::check(
                    json!({ "found": false, "bound": bound.to_string() }),
                    !above,
                ),
            }
        }
        Command::Kst { file, s, t } => {
            let h = BipartiteGraph::from_json_str(&input::read_source(
                file.as_deref().unwrap_or("-"),
            )?)?;
            let r = kst_check(&h, *s, *t)?;
            let ok = !r.guarantee_applies() || r.inequality_holds;
            Report::check(to_json(&r), ok)
        }
        Command::Drc { f, g: host, k, r } => {
            let f = match f {
                Some(path) => BipartiteGraph::from_json_str(&input::read_source(path)?)?,
                None => drc_path_pattern(),
            };
            let host = BipartiteGraph::from_json_str(&input::read_source(host)?)?;
            let rep = drc_check(&f, &host, *k, *r)?;
            let ok = rep.embedding_found || rep.inequality_holds;
            Report::check(to_json(&rep), ok)
        }
        Command::Sandwich { graph, c, alpha } => {
            let host = input::graph(graph)?;
            let alpha: Rational = alpha.parse()?;
            let ok = degree_sandwich_check(&host, *c, alpha)?;
            Report::check(json!({ "sandwiched": ok }), ok)
        }
        Command::Turan { n, h } => {
            let h = h.load()?;
            let mut cache = open_cache(g)?;
            let rec = turan_exact(*n, &h, cache.as_mut(), solver_options(g))?;
            let csv = format!("n,ex\n{},{}\n", rec.n, rec.ex_value);
            Report::ok(record_json(&rec)).with_csv(csv)
        }
        Command::TuranSeries { lo, hi, h } => {
            if lo > hi {
                return Err(Failure::input(format!("empty range {lo}..={hi}")));
            }
            let h = h.load()?;
            let mut cache = open_cache(g)?;
            let recs = turan_series(*lo..=*hi, &h, cache.as_mut(), solver_options(g))?;
            let mut csv = String::from("n,ex\n");
            for r in &recs {
                csv.push_str(&format!("{},{}\n", r.n, r.ex_value));
            }
            Report::ok(Value::Array(recs.iter().map(record_json).collect())).with_csv(csv)
        }
        Command::Fit { file } => {
            let points = parse_points(&input::read_source(file.as_deref().unwrap_or("-"))?)?;
            let fit = fit_exponent(&points)?;
            let csv = format!(
                "slope,intercept,residual\n{},{},{}\n",
                fit.slope, fit.intercept, fit.residual
            );
            Report::ok(to_json(&fit)).with_csv(csv)
        }
        Command::CacheCompact => {
            let Some(mut cache) = open_cache(g)? else {
                return Err(Failure::input("pass --cache or set TURAN_CACHE"));
            };
            let skipped = cache.skipped();
            let kept = cache.compact()?;
            Report::ok(json!({ "records": kept, "dropped_lines": skipped }))
        }
        Command::Sweep { kind, max, pairs } => {
            let (checked, bad) = match kind {
                SweepKind::Kst => kst_sweep(*max, 2, 2)?,
                SweepKind::Drc => {
                    let f = drc_path_pattern();
                    let mut total = 0;
                    let mut bad = Vec::new();
                    for (k, r) in [(1, 2), (1, 3), (2, 3)] {
                        let (n, b) = drc_sweep(&f, *max, k, r)?;
                        total += n;
                        bad.extend(b);
                    }
                    (total, bad)
                }
                SweepKind::Amp => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    (*pairs, amp_sweep(&mut rng, *pairs, (*max).max(2))?)
                }
            };
            let clean = bad.is_empty();
            Report::check(json!({ "checked": checked, "counterexamples": bad }), clean)
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let csv = cli.global.csv;
    match run(&cli) {
        Ok(report) => {
            if csv {
                match &report.csv {
                    Some(text) => print!("{text}"),
                    None => {
                        eprintln!("error: this command has no CSV output; use --json");
                        return ExitCode::from(2);
                    }
                }
            } else {
                println!("{}", report.json);
            }
            ExitCode::from(if report.failed { 1 } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
