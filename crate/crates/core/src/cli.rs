//! Command-line front end. Every subcommand reads JSON inputs, writes its
//! machine-readable outputs plus `manifest.json` into `--out`, and prints a
//! short summary.
//!
//! Exit codes: `0` success, `1` validation failure, `2` budget exhausted
//! (partial results are still written).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::verify_cyclic;
use crate::census::{census, fingerprint, sew, CensusOptions, Store, STORE_ENV};
use crate::constructions::split_hexagon;
use crate::enumeration::{
    enumerate_all_oracle_with, enumerate_regular_with, generic_shared_witness, json_lines,
    regular_subset, t_sweep, EnumOptions, SplitPair,
};
use crate::error::{Error, Result};
use crate::kernel::{ConfigJson, PointConfiguration};
use crate::lifting::{auto_epsilons, contraction, default_apex, lex_lift, LiftSpec};
use crate::rational::{format_rational, parse_rational};
use crate::triangulation::{
    is_regular, placing_triangulation, pulling_triangulation, regular_subdivision, LiftingVector,
    Regularity, TriangulationJson,
};
use crate::Label;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(name = "trisweep", version, about = "Regular triangulations, lexicographic liftings and neighborly polytope census")]
pub struct Cli {
    /// Directory for output files and the run manifest.
    #[arg(long, global = true, default_value = "trisweep-out")]
    pub out: PathBuf,
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumeration and census. Outputs do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Placing,
    Pulling,
    Heights,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Cyclic,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Positive lexicographic lifting (epsilons found automatically unless given).
    Lift {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated strictly decreasing chain, e.g. `1/2,1/4,1/8`.
        #[arg(long, value_delimiter = ',')]
        epsilons: Option<Vec<String>>,
        /// Comma-separated apex coordinates; last one positive.
        #[arg(long, value_delimiter = ',')]
        apex: Option<Vec<String>>,
    },
    /// Contraction (vertex figure) at one point, or two in sequence.
    Contract {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "at", required = true, num_args = 1..=2, value_delimiter = ',')]
        at: Vec<Label>,
    },
    /// Placing, pulling, or height-induced triangulation.
    Triangulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "placing")]
        method: Method,
        /// Insertion order for placing, by label.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<Label>>,
        /// Lifting vector JSON `{"heights": {"1": "0", ...}}`.
        #[arg(long)]
        heights: Option<PathBuf>,
    },
    /// Regularity certificate: a lifting vector or an infeasibility combination.
    Regular {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        triangulation: PathBuf,
    },
    /// All regular triangulations by flips, or all triangulations with `--oracle`.
    Enumerate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// The t-sweep for a split point `p`, `p'`.
    Sweep {
        /// Use the built-in split hexagon instead of `--config`.
        #[arg(long)]
        split_hexagon: bool,
        #[arg(long, required_unless_present = "split_hexagon")]
        config: Option<PathBuf>,
        #[arg(long, required_unless_present = "split_hexagon")]
        p: Option<Label>,
        #[arg(long, required_unless_present = "split_hexagon")]
        p_prime: Option<Label>,
        /// Triangulation of the configuration without `p'`.
        #[arg(long, required_unless_present = "split_hexagon")]
        triangulation: Option<PathBuf>,
        /// Shared lifting vector; computed from the seed if absent.
        #[arg(long)]
        heights: Option<PathBuf>,
    },
    /// Gale sewing of a neighborly `d`-polytope with `n` vertices.
    Sew {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Permutation for one stage, e.g. `--perm 2,1,4,3`; repeat per stage.
        #[arg(long = "perm")]
        perms: Vec<String>,
    },
    /// Count labeled types of double lifts of a sewn base.
    Census {
        /// Points of the base configuration.
        #[arg(long)]
        n: usize,
        /// Target (even) dimension.
        #[arg(long)]
        d: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Store file; defaults to the TRISWEEP_STORE variable, then `<out>/types.store`.
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long)]
        verify_recovery: bool,
    },
    /// Compare a closed-form lower bound with the enumerated count.
    VerifyBounds {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lift { .. } => "lift",
            Command::Contract { .. } => "contract",
            Command::Triangulate { .. } => "triangulate",
            Command::Regular { .. } => "regular",
            Command::Enumerate { .. } => "enumerate",
            Command::Sweep { .. } => "sweep",
            Command::Sew { .. } => "sew",
            Command::Census { .. } => "census",
            Command::VerifyBounds { .. } => "verify-bounds",
        }
    }
}

/// Everything needed to repeat a run: rerunning `argv` reproduces the
/// listed outputs byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub parameters: Value,
    pub seed: u64,
    pub jobs: usize,
    /// sha256 of every input file.
    pub input_digests: BTreeMap<String, String>,
    /// sha256 of every output file.
    pub outputs: BTreeMap<String, String>,
    pub tool_version: String,
    pub wall_clock_ms: u128,
    pub exit_code: i32,
}

struct Run<'a> {
    out: &'a Path,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
    summary: Vec<String>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

impl Run<'_> {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.inputs.insert(path.display().to_string(), digest(&bytes));
        Ok(bytes)
    }

    fn json<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T> {
        let bytes = self.read(path)?;
        serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    fn config(&mut self, path: &Path) -> Result<PointConfiguration> {
        PointConfiguration::from_json(&self.json::<ConfigJson>(path)?)
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        fs::write(self.out.join(name), contents).map_err(io)?;
        self.outputs.insert(name.to_string(), digest(contents.as_bytes()));
        Ok(())
    }

    fn say(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }
}

fn parse_list(items: &[String]) -> Result<Vec<crate::Rational>> {
    items.iter().map(|s| parse_rational(s.trim())).collect()
}

fn parse_perm(s: &str) -> Result<Vec<Label>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad label {x:?} in permutation"))))
        .collect()
}

fn regularity_json(r: &Regularity) -> Value {
    match r {
        Regularity::Regular(w) => json!({ "regular": true, "witness": w }),
        Regularity::NonRegular(c) => json!({
            "regular": false,
            "certificate": c.terms.iter().map(|t| json!({
                "weight": format_rational(&t.weight),
                "cell": t.inequality.cell,
                "point": t.inequality.point,
                "coefficients": t.inequality.coefficients.iter()
                    .map(|(l, v)| json!([l, format_rational(v)]))
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "verified": c.verify(),
        }),
    }
}

fn execute(cli: &Cli, run: &mut Run) -> Result<i32> {
    match &cli.command {
        Command::Lift { config, epsilons, apex } => {
            let base = run.config(config)?;
            let apex = match apex {
                Some(a) => parse_list(a)?,
                None => default_apex(base.dim()),
            };
            let spec = match epsilons {
                Some(e) => LiftSpec::new(apex, parse_list(e)?)?,
                None => auto_epsilons(&base, &apex)?,
            };
            let lifted = lex_lift(&base, &spec)?;
            run.write("lifted.json", &pretty(&json!({
                "config": lifted.lifted.to_json(),
                "spec": lifted.spec,
                "apex_label": lifted.apex_label(),
            })))?;
            run.say(format!("lifted {} points to dimension {}", base.len(), lifted.lifted.dim()));
        }
        Command::Contract { config, at } => {
            let mut c = run.config(config)?;
            for &p in at {
                c = contraction(&c, p)?;
            }
            run.write("contraction.json", &pretty(&c.to_json()))?;
            run.say(format!("contraction has {} points in dimension {}", c.len(), c.dim()));
        }
        Command::Triangulate { config, method, order, heights } => {
            let c = run.config(config)?;
            let t = match method {
                Method::Placing => {
                    let order = order.clone().unwrap_or_else(|| c.labels().to_vec());
                    placing_triangulation(&c, &order)?
                }
                Method::Pulling => pulling_triangulation(&c)?,
                Method::Heights => {
                    let path = heights
                        .as_ref()
                        .ok_or_else(|| Error::Precondition("--heights is required".into()))?;
                    let w: LiftingVector = run.json(path)?;
                    let sub = regular_subdivision(&c, &w)?;
                    match sub.to_triangulation() {
                        Some(t) => t,
                        None => {
                            run.write("subdivision.json", &pretty(&json!({ "cells": sub.cells })))?;
                            run.say(format!("heights induce a non-simplicial subdivision with {} cells", sub.cells.len()));
                            return Ok(EXIT_INVALID);
                        }
                    }
                }
            };
            run.write("triangulation.json", &pretty(&t.to_json(Some(&c))))?;
            run.say(format!("{} cells", t.len()));
        }
        Command::Regular { config, triangulation } => {
            let c = run.config(config)?;
            let t = run.json::<TriangulationJson>(triangulation)?.triangulation();
            let r = is_regular(&t, &c)?;
            run.write("regularity.json", &pretty(&regularity_json(&r)))?;
            run.say(if r.is_regular() { "regular" } else { "not regular" });
        }
        Command::Enumerate { config, oracle, budget } => {
            let c = run.config(config)?;
            let opts = EnumOptions { budget: *budget, jobs: cli.jobs };
            let (e, regular) = if *oracle {
                let e = enumerate_all_oracle_with(&c, *budget)?;
                let r = regular_subset(&c, &e.triangulations)?;
                (e, Some(r))
            } else {
                (enumerate_regular_with(&c, &opts)?, None)
            };
            let lines = json_lines(
                e.triangulations.iter().map(|t| (t, regular.as_ref().map_or(true, |r| r.contains(t)))),
                e.budget_hit,
            );
            run.write("triangulations.jsonl", &lines)?;
            run.say(format!(
                "{} triangulations{}{}",
                e.count(),
                regular.map(|r| format!(", {} regular", r.len())).unwrap_or_default(),
                if e.budget_hit { " (budget exhausted, partial)" } else { "" }
            ));
            if e.budget_hit {
                return Ok(EXIT_BUDGET);
            }
        }
        Command::Sweep { split_hexagon: fixture, config, p, p_prime, triangulation, heights } => {
            let (pair, t) = if *fixture {
                split_hexagon()
            } else {
                let c = run.config(config.as_ref().expect("required by clap"))?;
                let t = run
                    .json::<TriangulationJson>(triangulation.as_ref().expect("required by clap"))?
                    .triangulation();
                let pair = SplitPair {
                    config: c,
                    p: p.expect("required by clap"),
                    p_prime: p_prime.expect("required by clap"),
                    epsilon: crate::rational::int(0),
                };
                (pair, t)
            };
            let w = match heights {
                Some(path) => run.json::<LiftingVector>(path)?,
                None => generic_shared_witness(&pair.config, pair.p, pair.p_prime, &t, cli.seed)?
                    .ok_or_else(|| Error::Precondition("no lifting vector induces T on both sides".into()))?,
            };
            let trace = t_sweep(&pair, &t, &w)?;
            let mut lines = String::new();
            let mut push = |v: Value| {
                lines.push_str(&serde_json::to_string(&v).expect("serializable"));
                lines.push('\n');
            };
            push(json!({ "kind": "witness", "heights": trace.base_w, "link": trace.link }));
            for b in &trace.breakpoints {
                push(json!({ "kind": "breakpoint", "t": format_rational(&b.t), "cell": b.cell }));
            }
            for s in &trace.snapshots {
                push(json!({ "kind": "snapshot", "snapshot": s }));
            }
            push(json!({
                "kind": "summary",
                "breakpoints": trace.breakpoints.len(),
                "distinct_triangulations": trace.distinct_triangulations().len(),
            }));
            run.write("sweep.jsonl", &lines)?;
            run.say(format!(
                "{} breakpoints, {} distinct triangulations",
                trace.breakpoints.len(),
                trace.distinct_triangulations().len()
            ));
        }
        Command::Sew { n, d, perms } => {
            let perms: Vec<Vec<Label>> = perms.iter().map(|s| parse_perm(s)).collect::<Result<_>>()?;
            let r = sew(*n, *d, &perms, cli.seed)?;
            let fp = fingerprint(r.result())?;
            run.write("sewn.json", &pretty(&json!({
                "config": r.result().to_json(),
                "run": r,
                "fingerprint": fp.digest(),
                "facets": fp.facets(),
            })))?;
            run.say(format!("neighborly {d}-polytope with {n} vertices, {} facets", fp.facets().len()));
        }
        Command::Census { n, d, exhaustive, budget, store, verify_recovery } => {
            let mut s = match store {
                Some(p) => Store::open(p)?,
                None => match std::env::var_os(STORE_ENV) {
                    Some(p) if !p.is_empty() => Store::open(p)?,
                    _ => Store::open(run.out.join("types.store"))?,
                },
            };
            let opts = CensusOptions {
                n: *n,
                d: *d,
                exhaustive: *exhaustive,
                budget: *budget,
                seed: cli.seed,
                jobs: cli.jobs,
                verify_recovery: *verify_recovery,
            };
            let report = census(&opts, &mut s)?;
            run.write("census.json", &pretty(&report))?;
            run.say(format!(
                "{} distinct labeled types from {} permutations (bound {}), store holds {}",
                report.distinct, report.attempted, report.bound, report.store_size
            ));
            if report.recovered.is_some_and(|k| k != report.attempted) {
                return Ok(EXIT_INVALID);
            }
            if report.budget_hit {
                return Ok(EXIT_BUDGET);
            }
        }
        Command::VerifyBounds { construction: Construction::Cyclic, d, n, budget } => {
            let opts = EnumOptions { budget: *budget, jobs: cli.jobs };
            let r = verify_cyclic(*d, *n, &opts)?;
            run.write("bounds.json", &pretty(&r))?;
            run.write(
                "bounds.csv",
                &format!(
                    "construction,d,n,k,bound,count,budget_hit,status\n{},{},{},{},{},{},{},{}\n",
                    r.construction, r.d, r.n, r.k, r.bound, r.count, r.budget_hit, r.status
                ),
            )?;
            run.say(format!("bound {} vs count {}: {}", r.bound, r.count, r.status));
            if r.budget_hit {
                return Ok(EXIT_BUDGET);
            }
            if r.status != "PASS" {
                return Ok(EXIT_INVALID);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Messages go to stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    if let Err(e) = fs::create_dir_all(&cli.out) {
        eprintln!("error[io]: {}: {e}", cli.out.display());
        return EXIT_INVALID;
    }
    let started = Instant::now();
    let mut r = Run {
        out: &cli.out,
        inputs: BTreeMap::new(),
        outputs: BTreeMap::new(),
        summary: Vec::new(),
    };
    let code = match execute(&cli, &mut r) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            if matches!(e, Error::BudgetExceeded { .. }) {
                EXIT_BUDGET
            } else {
                EXIT_INVALID
            }
        }
    };
    for line in &r.summary {
        println!("{line}");
    }
    let manifest = RunManifest {
        command: cli.command.name().to_string(),
        argv,
        parameters: serde_json::to_value(&cli.command).expect("serializable"),
        seed: cli.seed,
        jobs: cli.jobs,
        input_digests: r.inputs,
        outputs: r.outputs,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_clock_ms: started.elapsed().as_millis(),
        exit_code: code,
    };
    if let Err(e) = fs::write(cli.out.join("manifest.json"), pretty(&manifest)) {
        eprintln!("error[io]: manifest: {e}");
        return EXIT_INVALID;
    }
    code
}

/// Reads a manifest written by [`run`].
pub fn read_manifest(path: impl AsRef<Path>) -> Result<RunManifest> {
    let bytes = fs::read(path).map_err(io)?;
    serde_json::from_slice(&bytes).map_err(|e| Error::Parse(e.to_string()))
}
