mod checkpoint;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use g2lift::engine::Kind;
use g2lift::lifting::{LiftContext, ReferenceRelation};
use g2lift::rootdata::{BraidingConfig, Root, ROOTS};
use g2lift::scalars::Param;
use g2lift::structure::Case;
use g2lift::verify::{self, data, Outcome, Scope, VerifyError};

#[derive(Parser, Debug)]
#[command(name = "g2lift", version, about = "Exact verification tasks for Cartan G2 Nichols algebras and their liftings")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Order of q.
    #[arg(long = "N", global = true)]
    n: Option<i64>,
    /// Exponent with q_12 = q^a.
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<i64>,
    /// JSON file {"N": .., "a": ..}; --N and --a override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    PreNichols,
    Nichols,
    CleftLambda,
    LiftLambda,
}

impl KindArg {
    fn kind(self) -> Kind {
        match self {
            KindArg::PreNichols => Kind::PreNichols,
            KindArg::Nichols => Kind::Nichols,
            KindArg::CleftLambda => Kind::CleftLambda,
            KindArg::LiftLambda => Kind::LiftLambda,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum CaseArg {
    Coprime,
    Divisible,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum LiftCase {
    Generic,
    Degenerate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive a bracket table and compare it with the reference table.
    VerifyBrackets {
        #[arg(long, value_enum, default_value = "pre-nichols")]
        kind: KindArg,
        /// Active deformation parameters, e.g. l1,l2 (default: all admissible).
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
    },
    /// Compare the coproducts of the root vectors with the reference formulas.
    VerifyCoproducts,
    /// Extract the scalar table from the power coproducts and compare with the closed forms.
    VerifyScalars {
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
    },
    /// Check that coproduct supports lie in the predicted sets.
    Support,
    /// Check twist transport of the power coproducts between two braidings of the same order.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Predict the power coproducts from fitted structure constants.
    LieCheck,
    /// Resolve all overlap ambiguities of a presentation.
    Confluence {
        #[arg(long, value_enum, default_value = "pre-nichols")]
        kind: KindArg,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
    },
    /// Dimensions of graded pieces up to a bound.
    Hilbert {
        #[arg(long, value_enum, default_value = "nichols")]
        kind: KindArg,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
        /// Componentwise degree bound d1,d2.
        #[arg(long, value_parser = parse_bound, default_value = "6,4")]
        bound: [i64; 2],
    },
    /// Solve the cleft-object sections and emit the cleft relations.
    Cleft {
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
        /// Reference relation list, or `builtin` for the shipped one.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Compute the lifted power relations.
    Lift {
        #[arg(long = "case", value_enum)]
        lift_case: Option<LiftCase>,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
        /// Roots to report (default: all).
        #[arg(long, value_delimiter = ',')]
        root: Option<Vec<String>>,
        /// Compare the beta relation term by term instead of on the named terms.
        #[arg(long)]
        long: bool,
        /// Reference relation list, or `builtin` for the shipped one.
        #[arg(long)]
        compare: Option<String>,
        /// Directory for resumable partial results.
        #[arg(long, default_value = ".g2lift-checkpoints")]
        checkpoint_dir: PathBuf,
    },
    /// Emit a certified rewrite system as JSON.
    EmitPresentation {
        #[arg(long, value_enum, default_value = "pre-nichols")]
        kind: KindArg,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<String>>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyBrackets { .. } => "verify-brackets",
            Command::VerifyCoproducts => "verify-coproducts",
            Command::VerifyScalars { .. } => "verify-scalars",
            Command::Support => "support",
            Command::Twist { .. } => "twist",
            Command::LieCheck => "lie-check",
            Command::Confluence { .. } => "confluence",
            Command::Hilbert { .. } => "hilbert",
            Command::Cleft { .. } => "cleft",
            Command::Lift { .. } => "lift",
            Command::EmitPresentation { .. } => "emit-presentation",
        }
    }
}

#[derive(Deserialize)]
struct ConfigFile {
    #[serde(rename = "N")]
    n: i64,
    a: i64,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: e.into() }
}

fn internal(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 3, error: e.into() }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        if e.is_usage() {
            usage(e)
        } else {
            internal(e)
        }
    }
}

fn resolve_config(c: &Common) -> Result<BraidingConfig, Failure> {
    let file = match &c.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())).map_err(usage)?;
            Some(serde_json::from_str::<ConfigFile>(&text).with_context(|| format!("parsing {}", p.display())).map_err(usage)?)
        }
        None => None,
    };
    let n = c.n.or(file.as_ref().map(|f| f.n)).ok_or_else(|| usage(anyhow::anyhow!("--N is required")))?;
    let a = c.a.or(file.as_ref().map(|f| f.a)).unwrap_or(0);
    BraidingConfig::new(n, a).map_err(usage)
}

fn parse_params(tokens: &Option<Vec<String>>, default: Vec<Param>, config: BraidingConfig) -> Result<Vec<Param>, Failure> {
    let Some(tokens) = tokens else {
        return Ok(default);
    };
    let mut out = Vec::new();
    for t in tokens.iter().filter(|t| !t.is_empty()) {
        let p = Param::from_token(t).ok_or_else(|| usage(anyhow::anyhow!("unknown parameter {t}")))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    config.check_params(&out).map_err(usage)?;
    Ok(out)
}

fn lambda_default(kind: Kind, config: BraidingConfig) -> Vec<Param> {
    match kind {
        Kind::CleftLambda | Kind::LiftLambda => verify::admissible_lambda(config),
        _ => Vec::new(),
    }
}

fn load_reference(arg: &Option<String>, builtin: Option<&'static str>) -> Result<Option<Vec<ReferenceRelation>>, Failure> {
    let text = match arg.as_deref() {
        None => return Ok(None),
        Some("builtin") => builtin.ok_or_else(|| usage(anyhow::anyhow!("no shipped reference for this configuration")))?.to_string(),
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")).map_err(usage)?,
    };
    Ok(Some(verify::load_reference(&text).map_err(usage)?))
}

fn parse_roots(tokens: &Option<Vec<String>>) -> Result<Vec<Root>, Failure> {
    match tokens {
        None => Ok(ROOTS.to_vec()),
        Some(ts) => ts.iter().map(|t| Root::from_name(t).ok_or_else(|| usage(anyhow::anyhow!("unknown root {t}")))).collect(),
    }
}

fn parse_bound(s: &str) -> Result<[i64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => Ok([x.parse().map_err(|e| format!("{x}: {e}"))?, y.parse().map_err(|e| format!("{y}: {e}"))?]),
        _ => Err(format!("expected d1,d2, got {s}")),
    }
}

fn tokens(ps: &[Param]) -> Vec<&'static str> {
    ps.iter().map(|p| p.token()).collect()
}

/// Runs one task; returns the outcome and the parameters it ran with.
fn dispatch(command: &Command, config: BraidingConfig) -> Result<(Outcome, Value), Failure> {
    match command {
        Command::VerifyBrackets { kind, params } => {
            let k = kind.kind();
            let ps = parse_params(params, lambda_default(k, config), config)?;
            Ok((verify::brackets(k, config, &ps)?, json!({ "kind": kind, "params": tokens(&ps) })))
        }
        Command::VerifyCoproducts => Ok((verify::coproducts(config)?, json!({}))),
        Command::VerifyScalars { case } => {
            let actual = Case::of(config);
            if let Some(c) = case {
                let wanted = match c {
                    CaseArg::Coprime => Case::Coprime,
                    CaseArg::Divisible => Case::Divisible,
                };
                if wanted != actual {
                    return Err(usage(anyhow::anyhow!("N = {} is in the {:?} case", config.n, actual)));
                }
            }
            Ok((verify::scalars(config)?, json!({ "case": actual })))
        }
        Command::Support => Ok((verify::support(config)?, json!({}))),
        Command::Twist { from, to } => {
            let s = BraidingConfig::new(config.n as i64, *from).map_err(usage)?;
            let t = BraidingConfig::new(config.n as i64, *to).map_err(usage)?;
            Ok((verify::twist(s, t)?, json!({ "from": s.a, "to": t.a })))
        }
        Command::LieCheck => Ok((verify::lie(config)?, json!({}))),
        Command::Confluence { kind, params } => {
            let k = kind.kind();
            let ps = parse_params(params, lambda_default(k, config), config)?;
            Ok((verify::confluence(k, config, &ps)?, json!({ "kind": kind, "params": tokens(&ps) })))
        }
        Command::Hilbert { kind, params, bound } => {
            let k = kind.kind();
            let ps = parse_params(params, lambda_default(k, config), config)?;
            let b = *bound;
            Ok((verify::hilbert(k, config, &ps, b)?, json!({ "kind": kind, "params": tokens(&ps), "bound": b })))
        }
        Command::EmitPresentation { kind, params } => {
            let k = kind.kind();
            let ps = parse_params(params, lambda_default(k, config), config)?;
            Ok((verify::emit_presentation(k, config, &ps)?, json!({ "kind": kind, "params": tokens(&ps) })))
        }
        Command::Cleft { params, compare } => {
            let lambda = parse_params(params, verify::admissible_lambda(config), config)?;
            let builtin = (config.is_degenerate() && lambda.len() == 2).then_some(data::CLEFT_N7);
            let reference = load_reference(compare, builtin)?;
            let ctx = LiftContext::new(config, &lambda).map_err(|e| Failure::from(VerifyError::from(e)))?;
            let (outcome, _) = verify::cleft(&ctx, reference.as_deref())?;
            Ok((outcome, json!({ "params": tokens(&ctx.params()) })))
        }
        Command::Lift { lift_case, params, root, long, compare, checkpoint_dir } => {
            let case = lift_case.unwrap_or(if config.is_degenerate() { LiftCase::Degenerate } else { LiftCase::Generic });
            let roots = parse_roots(root)?;
            match case {
                LiftCase::Generic => {
                    if params.is_some() {
                        return Err(usage(anyhow::anyhow!("the generic case has no lambda parameters")));
                    }
                    let reference = load_reference(compare, data::generic(config.n))?;
                    let (outcome, _) = verify::generic(config, reference.as_deref())?;
                    Ok((outcome, json!({ "case": case, "params": tokens(&verify::admissible_mu(config)) })))
                }
                LiftCase::Degenerate => {
                    if !config.is_degenerate() {
                        return Err(usage(anyhow::anyhow!("the degenerate case needs N = 7, a = 3")));
                    }
                    let lambda = parse_params(params, verify::admissible_lambda(config), config)?;
                    let builtin = (lambda.len() == 2).then_some(data::LIFT_N7);
                    let reference = load_reference(compare, builtin)?;
                    let ctx = LiftContext::new(config, &lambda).map_err(|e| Failure::from(VerifyError::from(e)))?;
                    let store = checkpoint::Store::open(checkpoint_dir, &json!({ "task": "lift", "config": config, "params": tokens(&ctx.params()) }))
                        .map_err(internal)?;
                    let scope = if *long { Scope::Full } else { Scope::Spot };
                    let mut save_error = None;
                    let (outcome, _) = verify::lift(
                        &ctx,
                        &roots,
                        reference.as_deref(),
                        scope,
                        |r| store.restore(r, config),
                        |rel| {
                            if let Err(e) = store.save(rel) {
                                save_error.get_or_insert(e);
                            }
                        },
                    )?;
                    if let Some(e) = save_error {
                        return Err(internal(e));
                    }
                    let extra = json!({ "case": case, "params": tokens(&ctx.params()), "roots": roots.iter().map(|r| r.name()).collect::<Vec<_>>(),
                        "scope": scope, "checkpoint": store.path().display().to_string() });
                    Ok((outcome, extra))
                }
            }
        }
    }
}

fn write_report(path: &Path, report: &Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command, &cli.common) {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: &Command, common: &Common) -> Result<bool, Failure> {
    let config = resolve_config(common)?;
    if let Some(j) = common.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().map_err(internal)?;
    }
    let start = Instant::now();
    let (outcome, task) = dispatch(command, config)?;
    let secs = start.elapsed().as_secs_f64();
    let report = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "config": config,
        "task": task,
        "passed": outcome.passed,
        "wall_time_s": secs,
        "report": outcome.report,
    });
    if let Some(p) = &common.out {
        write_report(p, &report).map_err(internal)?;
    }
    println!("{} N={} a={}: {} ({secs:.2}s)", command.name(), config.n, config.a, if outcome.passed { "PASS" } else { "FAIL" });
    Ok(outcome.passed)
}
