//! `ncgraph`: build, transform, solve and verify non-commutative graphs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 solver
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncgraph::graph::{alpha_brute, Graph};
use ncgraph::independence::{alpha_lower_search, bounds, verify_independent_set, verify_kl_projector, SearchOptions};
use ncgraph::io::{
    bounds_report_to_json, independent_set_to_json, number, render, sig9, theta_result_to_json, Artifact,
};
use ncgraph::sdp::SolveOptions;
use ncgraph::suite::{render_table, run as run_suite, suite_to_json, SuiteConfig};
use ncgraph::theta::{
    capacity_report, intersection_experiment, theta_classical, theta_tilde, theta_tilde_dual, theta_tilde_primal,
    ThetaResult,
};
use ncgraph::{Error, OperatorSpace};

#[derive(Parser)]
#[command(name = "ncgraph", version, about = "Non-commutative graphs of quantum channels and the quantum Lovász function")]
struct Cli {
    /// Solver gap and feasibility tolerance, also the verification tolerance.
    #[arg(long, global = true, default_value_t = 1e-8, allow_negative_numbers = true)]
    tol: f64,
    /// Interior-point iteration limit.
    #[arg(long = "max-iter", global = true, default_value_t = 500)]
    max_iter: usize,
    /// Seed for randomized searches and suite instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lovász ϑ of a classical graph.
    Theta {
        #[arg(long, short)]
        input: PathBuf,
        /// Write the optimality certificate to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Quantum ϑ̃ of a graph, operator space or channel.
    ThetaTilde {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, conflicts_with = "dual_only")]
        primal_only: bool,
        #[arg(long)]
        dual_only: bool,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Independence number: exact for graphs, a bracket for spaces.
    Alpha {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = AlphaMode::Brute)]
        mode: AlphaMode,
        /// Also search for an independent set of this size (bracket mode).
        #[arg(long)]
        target: Option<usize>,
    },
    /// Zero-error capacity bounds in bits.
    Capacity {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Graph and space operations; writes an artifact.
    Op(OpArgs),
    /// Verify independent sets, codes and channels.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Reproduce the acceptance table.
    PaperSuite {
        /// Criterion id or name fragment.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Exploratory computations; results are reported, never asserted.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaMode {
    Brute,
    Bracket,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    /// Strong product of graphs, tensor product of spaces.
    Product,
    /// Disjoint union.
    Dsum,
    /// Complete union (join for graphs).
    Cunion,
    /// Complement graph, or span{𝟙} + S⊥ for spaces.
    Complement,
    /// Distance graph S^t.
    Distance,
    /// Induced subgraph U†SU.
    Induced,
}

#[derive(Args)]
struct OpArgs {
    #[arg(value_enum)]
    op: OpKind,
    #[arg(short = 'a', long = "a")]
    a: PathBuf,
    #[arg(short = 'b', long = "b")]
    b: Option<PathBuf>,
    #[arg(long = "t")]
    t: Option<usize>,
    #[arg(long)]
    isometry: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Orthonormal vectors with |φ_m⟩⟨φ_m'| ∈ S⊥ for m ≠ m'.
    Indep {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        vectors: PathBuf,
    },
    /// Knill-Laflamme condition PFP = λ_F P.
    Kl {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        projector: PathBuf,
    },
    /// Trace preservation of a Kraus representation.
    Channel {
        #[arg(long, short)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Compares ϑ̃(S₁∩S₂) with ϑ̃(S₁)ϑ̃(S₂).
    Intersection {
        #[arg(short = 'a', long = "a")]
        a: PathBuf,
        #[arg(short = 'b', long = "b")]
        b: PathBuf,
    },
}

/// A failed command: exit code plus message.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Solver { .. } | Error::GapTooLarge { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

struct Ctx {
    solve: SolveOptions,
    search: SearchOptions,
    seed: u64,
    tol: f64,
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code)
}

fn execute(cli: Cli) -> CmdResult {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(input_error("--tol must be positive"));
    }
    if cli.max_iter == 0 {
        return Err(input_error("--max-iter must be at least 1"));
    }
    let ctx = Ctx {
        solve: SolveOptions { gap_tol: cli.tol, feas_tol: cli.tol, max_iter: cli.max_iter },
        search: SearchOptions { seed: cli.seed, ..SearchOptions::default() },
        seed: cli.seed,
        tol: cli.tol,
        json: cli.json,
    };
    match cli.command {
        Command::Theta { input, witness } => {
            let g = load(&input)?.to_graph()?;
            let r = theta_classical(&g, &ctx.solve)?;
            emit_theta(&ctx, &r, witness.as_deref())
        }
        Command::ThetaTilde { input, primal_only, dual_only, witness } => {
            let s = load(&input)?.to_space()?;
            let r = if primal_only {
                theta_tilde_primal(&s, &ctx.solve)?
            } else if dual_only {
                theta_tilde_dual(&s, &ctx.solve)?
            } else {
                theta_tilde(&s, &ctx.solve)?
            };
            emit_theta(&ctx, &r, witness.as_deref())
        }
        Command::Alpha { input, mode, target } => alpha(&ctx, &load(&input)?, mode, target),
        Command::Capacity { input } => {
            let s = load(&input)?.to_space()?;
            let r = capacity_report(&s, &ctx.solve)?;
            let v = json!({
                "kind": "capacity_report",
                "note": "all capacities are bounds, not values",
                "theta_tilde": number(r.theta_tilde),
                "c0e_upper_bits": number(r.c0e_upper),
                "c0_upper_bits": number(r.c0_upper),
                "alpha_lower": r.alpha_lower,
                "c0_lower_bits": number(r.c0_lower),
                "log2_one_plus_dim_perp": number(r.log_one_plus_perp),
            });
            print_value(&ctx, &v);
            Ok(0)
        }
        Command::Op(args) => op(&args),
        Command::Check(c) => check(&ctx, c),
        Command::PaperSuite { filter } => {
            let cfg = SuiteConfig { solve: ctx.solve, search: ctx.search, seed: ctx.seed };
            let reports = run_suite(filter.as_deref(), &cfg);
            if reports.is_empty() {
                return Err(input_error("filter matches no criterion"));
            }
            if ctx.json {
                print!("{}", render(&suite_to_json(&reports)));
            } else {
                print!("{}", render_table(&reports));
            }
            Ok(if reports.iter().all(|r| r.pass()) { 0 } else { 1 })
        }
        Command::Experiment(ExperimentCommand::Intersection { a, b }) => {
            let (s1, s2) = (load(&a)?.to_space()?, load(&b)?.to_space()?);
            let (t1, t2, t12) = intersection_experiment(&s1, &s2, &ctx.solve)?;
            let v = json!({
                "kind": "intersection_experiment",
                "theta_tilde_a": number(t1),
                "theta_tilde_b": number(t2),
                "theta_tilde_intersection": number(t12),
                "product": number(t1 * t2),
                "intersection_at_most_product": t12 <= t1 * t2 + 1e-6,
            });
            print_value(&ctx, &v);
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Artifact, Failure> {
    Ok(Artifact::parse(&read(path)?)?)
}

fn write(path: &Path, v: &Value) -> Result<(), Failure> {
    fs::write(path, render(v)).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// JSON with --json, otherwise one `key: value` line per top-level field.
fn print_value(ctx: &Ctx, v: &Value) {
    if ctx.json {
        print!("{}", render(v));
        return;
    }
    if let Value::Object(map) = v {
        for (k, val) in map {
            match val {
                Value::Object(_) | Value::Array(_) => println!("{k}: {}", serde_json::to_string(val).unwrap_or_default()),
                Value::String(s) => println!("{k}: {s}"),
                other => println!("{k}: {other}"),
            }
        }
    }
}

fn emit_theta(ctx: &Ctx, r: &ThetaResult, witness: Option<&Path>) -> CmdResult {
    if let Some(path) = witness {
        let full = theta_result_to_json(r, true);
        write(path, &full["witness"])?;
    }
    print_value(ctx, &theta_result_to_json(r, false));
    Ok(0)
}

fn alpha(ctx: &Ctx, input: &Artifact, mode: AlphaMode, target: Option<usize>) -> CmdResult {
    match mode {
        AlphaMode::Brute => {
            let g = input.to_graph()?;
            let (a, set) = alpha_brute(&g)?;
            print_value(ctx, &json!({"kind": "alpha", "value": a, "independent_set": set}));
            Ok(0)
        }
        AlphaMode::Bracket => {
            let s = input.to_space()?;
            let mut report = bounds(&s, &ctx.solve, &ctx.search)?;
            let mut target_json = Value::Null;
            if let Some(n) = target {
                let found = alpha_lower_search(&s, n, &ctx.search)?;
                if let Some(c) = &found {
                    if n > report.alpha_lower {
                        report.alpha_lower = n;
                        report.witness = c.vectors.clone();
                    }
                }
                target_json = json!({"size": n, "found": found.is_some()});
            }
            let mut v = bounds_report_to_json(&report);
            v["bracket"] = json!([report.alpha_lower, report.alpha_upper]);
            v["target"] = target_json;
            print_value(ctx, &v);
            Ok(0)
        }
    }
}

/// Two graphs stay graphs; anything else is lifted to operator spaces.
enum Operands {
    Graphs(Graph, Option<Graph>),
    Spaces(OperatorSpace, Option<OperatorSpace>),
}

fn operands(a: &Artifact, b: Option<&Artifact>) -> Result<Operands, Failure> {
    match (a, b) {
        (Artifact::Graph(g), None) => Ok(Operands::Graphs(g.clone(), None)),
        (Artifact::Graph(g), Some(Artifact::Graph(h))) => Ok(Operands::Graphs(g.clone(), Some(h.clone()))),
        (a, b) => Ok(Operands::Spaces(a.to_space()?, b.map(|b| b.to_space()).transpose()?)),
    }
}

fn op(args: &OpArgs) -> CmdResult {
    let a = load(&args.a)?;
    let b = args.b.as_deref().map(load).transpose()?;
    let needs_b = matches!(args.op, OpKind::Product | OpKind::Dsum | OpKind::Cunion);
    if needs_b && b.is_none() {
        return Err(input_error("this operation needs -b"));
    }
    let result = match (args.op, operands(&a, b.as_ref())?) {
        (OpKind::Product, Operands::Graphs(g, Some(h))) => Artifact::Graph(g.strong_product(&h)?),
        (OpKind::Product, Operands::Spaces(s, Some(t))) => Artifact::Space(s.tensor(&t)?),
        (OpKind::Dsum, Operands::Graphs(g, Some(h))) => Artifact::Graph(g.disjoint_union(&h)),
        (OpKind::Dsum, Operands::Spaces(s, Some(t))) => Artifact::Space(s.direct_sum(&t)),
        (OpKind::Cunion, Operands::Graphs(g, Some(h))) => Artifact::Graph(g.join(&h)),
        (OpKind::Cunion, Operands::Spaces(s, Some(t))) => Artifact::Space(s.complete_union(&t)),
        (OpKind::Complement, Operands::Graphs(g, _)) => Artifact::Graph(g.complement()),
        (OpKind::Complement, Operands::Spaces(s, _)) => Artifact::Space(s.nc_complement()?),
        (OpKind::Distance, ops) => {
            let t = args.t.ok_or_else(|| input_error("distance needs --t"))?;
            if t == 0 {
                return Err(input_error("--t must be at least 1"));
            }
            match ops {
                Operands::Graphs(g, _) => Artifact::Graph(g.power(t)),
                Operands::Spaces(s, _) => Artifact::Space(s.distance_graph(t)?),
            }
        }
        (OpKind::Induced, ops) => {
            let path = args.isometry.as_deref().ok_or_else(|| input_error("induced needs --isometry"))?;
            let u = match load(path)? {
                Artifact::Matrix(u) => u,
                other => return Err(input_error(format!("--isometry must be a matrix, found {}", other.kind()))),
            };
            let s = match ops {
                Operands::Graphs(g, _) => g.to_operator_space(),
                Operands::Spaces(s, _) => s,
            };
            Artifact::Space(s.induced_subgraph(&u)?)
        }
        _ => return Err(input_error("operands do not fit this operation")),
    };
    let v = result.to_json();
    match &args.output {
        Some(path) => write(path, &v)?,
        None => print!("{}", render(&v)),
    }
    Ok(0)
}

fn verdict(ctx: &Ctx, ok: bool, v: Value) -> CmdResult {
    let mut v = v;
    v["ok"] = json!(ok);
    print_value(ctx, &v);
    Ok(if ok { 0 } else { 1 })
}

fn check(ctx: &Ctx, c: CheckCommand) -> CmdResult {
    match c {
        CheckCommand::Indep { space, vectors } => {
            let s = load(&space)?.to_space()?;
            let vs = match load(&vectors)? {
                Artifact::IndependentSet(vs) => vs,
                other => return Err(input_error(format!("--vectors must be an independent_set, found {}", other.kind()))),
            };
            let r = verify_independent_set(&s, &vs, ctx.tol)?;
            let v = json!({
                "kind": "independence_check",
                "vectors": independent_set_to_json(&vs)["vectors"],
                "residual": sig9(r.residual),
                "orthonormality": sig9(r.orthonormality),
                "tol": ctx.tol,
            });
            verdict(ctx, r.ok, v)
        }
        CheckCommand::Kl { space, projector } => {
            let s = load(&space)?.to_space()?;
            let p = match load(&projector)? {
                Artifact::Matrix(p) => p,
                other => return Err(input_error(format!("--projector must be a matrix, found {}", other.kind()))),
            };
            let r = verify_kl_projector(&s, &p, ctx.tol)?;
            let v = json!({"kind": "kl_check", "code_dim": r.code_dim, "residual": sig9(r.residual), "tol": ctx.tol});
            verdict(ctx, r.ok, v)
        }
        CheckCommand::Channel { input } => match Artifact::parse(&read(&input)?) {
            Ok(Artifact::Channel(ch)) => {
                let v = json!({
                    "kind": "channel_check",
                    "dim_in": ch.dim_in(),
                    "dim_out": ch.dim_out(),
                    "kraus_count": ch.kraus().len(),
                    "tp_residual": sig9(ch.tp_residual()),
                });
                verdict(ctx, true, v)
            }
            Ok(Artifact::ClassicalChannel(ch)) => {
                let v = json!({"kind": "channel_check", "n_in": ch.n_in(), "n_out": ch.n_out()});
                verdict(ctx, true, v)
            }
            Ok(other) => Err(input_error(format!("expected a channel, found {}", other.kind()))),
            Err(Error::NotTracePreserving { residual }) => {
                let v = json!({"kind": "channel_check", "error": "NotTracePreserving", "tp_residual": sig9(residual)});
                verdict(ctx, false, v)
            }
            Err(e) => Err(e.into()),
        },
    }
}
