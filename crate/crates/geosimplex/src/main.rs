//! Command-line entry point: simplex runs, assumption audits, series
//! decompositions, the disc-section demo, and brute-force oracle checks.
//!
//! Exit codes: 0 success, 2 configuration error, 3 precondition or
//! degeneracy error (including audit-gate refusals), 4 combinatorial budget
//! exceeded, 5 oracle mismatch. Failures print one machine-parsable line on
//! stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use geosimplex::audit::{self, SampleSpec, VerdictKind};
use geosimplex::error::Error;
use geosimplex::geometry::{self, NormPolicy};
use geosimplex::instances;
use geosimplex::io;
use geosimplex::oracle;
use geosimplex::scalar::{Scalar, Tolerances};
use geosimplex::simplex::{self, Limits};
use geosimplex::system::{Coeffs, ConstraintSystem, Objective, Point, SystemKind};

#[derive(Parser)]
#[command(
    name = "geosimplex",
    version,
    about = "Geometric simplex runs, audits, and oracle checks over truncated half-space systems"
)]
struct Cli {
    /// Arithmetic mode.
    #[arg(long, global = true, default_value = "float", value_parser = ["float", "rational"])]
    arithmetic: String,

    /// Override the active-slack tolerance.
    #[arg(long, global = true, env = "GEOSIMPLEX_TOL_ACTIVE")]
    tol_active: Option<String>,

    /// Override the rank / null-space tolerance.
    #[arg(long, global = true, env = "GEOSIMPLEX_TOL_ZERO")]
    tol_zero: Option<String>,

    /// Override the stopping tolerance on the descent rate.
    #[arg(long, global = true, env = "GEOSIMPLEX_TOL_OPT")]
    tol_opt: Option<String>,

    /// Worker threads for oracle vertex enumeration.
    #[arg(long, global = true, default_value_t = 1, env = "GEOSIMPLEX_THREADS")]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the steepest-descent simplex loop from an extreme point.
    Solve(SolveArgs),
    /// Audit the structural assumptions on an instance.
    Audit(AuditArgs),
    /// Decompose a feasible point over the edges out of an extreme point.
    Decompose(DecomposeArgs),
    /// Sample the rational disc section of the cube.
    Section(SectionArgs),
    /// Compare the simplex result against brute-force vertex enumeration.
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance: preset `name(args)` or `@path` to an instance file.
    /// Presets: hilbert-cube(delta,N), cube(n), simplex(n),
    /// random-lp(n,m,seed), disc-section(ndir).
    #[arg(long)]
    instance: String,

    /// Objective: `riesz:h`, `exposing:x1,x2,...`, or
    /// `coeffs:j=v,...[;const=c][;tail=t]`. Defaults to the objective
    /// embedded in the instance, when present.
    #[arg(long)]
    objective: Option<String>,

    #[arg(long, default_value = "unit-edge", value_parser = ["unit-edge", "ambient"])]
    policy: String,

    /// Starting extreme point: `origin` or a coordinate list `x1,x2,...`.
    #[arg(long, default_value = "origin", allow_hyphen_values = true)]
    start: String,

    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,

    /// Write the JSONL trace here.
    #[arg(long)]
    trace_out: Option<PathBuf>,

    /// Write `n,value,gamma` plot data here.
    #[arg(long)]
    plot_out: Option<PathBuf>,

    /// Include iterate coordinates in the trace even above dimension 32.
    #[arg(long)]
    emit_points: bool,

    /// Audit first and refuse to run when any assumption fails.
    #[arg(long)]
    audit_gate: bool,

    /// Seed for audit sampling (with --audit-gate on truncated instances).
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    instance: String,

    #[arg(long)]
    objective: Option<String>,

    #[arg(long, default_value = "unit-edge", value_parser = ["unit-edge", "ambient"])]
    policy: String,

    /// `exhaustive` or `random:COUNT`. Defaults to exhaustive for finite
    /// instances and random:256 for truncated ones.
    #[arg(long)]
    sample: Option<String>,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Write the structured-text report here.
    #[arg(long)]
    report_out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    instance: String,

    /// Base extreme point: `origin` or a coordinate list.
    #[arg(long, default_value = "origin", allow_hyphen_values = true)]
    base: String,

    /// Feasible target point to decompose, as a coordinate list.
    #[arg(long, allow_hyphen_values = true)]
    target: String,

    /// Write `k,leaving_id,theta,residual_sq` rows here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SectionArgs {
    /// Number of rational circle directions.
    #[arg(long, default_value_t = 200)]
    directions: usize,

    /// Angular samples over the full turn.
    #[arg(long, default_value_t = 360)]
    angles: usize,

    /// Radial samples as `start:stop:step`.
    #[arg(long, default_value = "0.1:1.2:0.1")]
    radii: String,

    /// Write `alpha,beta,accepted` rows here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[arg(long)]
    instance: String,

    #[arg(long)]
    objective: Option<String>,

    #[arg(long, default_value = "unit-edge", value_parser = ["unit-edge", "ambient"])]
    policy: String,

    #[arg(long, default_value = "origin", allow_hyphen_values = true)]
    start: String,

    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,

    /// Also require the engine's adjacency to match the oracle graph at
    /// every vertex.
    #[arg(long)]
    check_adjacency: bool,

    /// Reference optimum to compare against (exit 5 on mismatch).
    #[arg(long, allow_hyphen_values = true)]
    expect_value: Option<String>,
}

enum CliError {
    Config(String),
    Gate(String),
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Gate(_) => 3,
            CliError::Lib(e) => match e {
                Error::Parse(_) | Error::Spec(_) | Error::IndexOutOfRange { .. } => 2,
                Error::Budget { .. } => 4,
                _ => 3,
            },
            CliError::Mismatch(_) => 5,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Gate(_) => "audit-gate",
            CliError::Mismatch(_) => "oracle-mismatch",
            CliError::Lib(e) => match e {
                Error::Parse(_) | Error::Spec(_) | Error::IndexOutOfRange { .. } => "config",
                Error::Budget { .. } => "budget",
                Error::Degenerate { .. } | Error::EdgeConstruction { .. } => "degeneracy",
                Error::Unbounded { .. } => "unbounded",
                Error::Infeasible { .. } => "infeasible",
                Error::AtIteration { .. } => "iteration",
                _ => "precondition",
            },
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Config(msg) | CliError::Gate(msg) | CliError::Mismatch(msg) => msg.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!(
                "geosimplex-error code={} kind={} detail=\"{}\"",
                err.code(),
                err.kind(),
                err.detail()
            );
            ExitCode::from(err.code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.arithmetic.as_str() {
        "float" => run_typed::<f64>(&cli),
        "rational" => run_typed::<BigRational>(&cli),
        other => Err(CliError::Config(format!("unknown arithmetic {other:?}"))),
    }
}

fn run_typed<S: Scalar>(cli: &Cli) -> Result<(), CliError> {
    let tol = build_tolerances::<S>(cli)?;
    match &cli.command {
        Command::Solve(args) => run_solve::<S>(args, &tol),
        Command::Audit(args) => run_audit::<S>(args, &tol),
        Command::Decompose(args) => run_decompose::<S>(args, &tol),
        Command::Section(args) => run_section(args),
        Command::OracleCheck(args) => run_oracle_check::<S>(args, &tol, cli.threads),
    }
}

fn build_tolerances<S: Scalar>(cli: &Cli) -> Result<Tolerances<S>, CliError> {
    let mut tol = Tolerances::<S>::default();
    if let Some(v) = &cli.tol_active {
        tol.active = S::parse_literal(v)?;
    }
    if let Some(v) = &cli.tol_zero {
        tol.zero = S::parse_literal(v)?;
    }
    if let Some(v) = &cli.tol_opt {
        tol.opt = S::parse_literal(v)?;
    }
    Ok(tol)
}

struct Instance<S> {
    system: ConstraintSystem<S>,
    objective: Option<Objective<S>>,
    start: Option<Point<S>>,
}

fn parse_preset(spec: &str) -> Result<(String, Vec<String>), CliError> {
    let (name, rest) = spec.split_once('(').ok_or_else(|| {
        CliError::Config(format!("expected preset name(args) or @path, got {spec:?}"))
    })?;
    let args = rest
        .strip_suffix(')')
        .ok_or_else(|| CliError::Config(format!("unterminated preset arguments in {spec:?}")))?;
    let args = if args.trim().is_empty() {
        Vec::new()
    } else {
        args.split(',').map(|a| a.trim().to_string()).collect()
    };
    Ok((name.trim().to_string(), args))
}

fn expect_args(name: &str, args: &[String], n: usize) -> Result<(), CliError> {
    if args.len() != n {
        return Err(CliError::Config(format!(
            "{name} expects {n} argument(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

fn parse_usize(name: &str, text: &str) -> Result<usize, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Config(format!("{name}: bad integer {text:?}")))
}

fn build_instance<S: Scalar>(spec: &str, tol: &Tolerances<S>) -> Result<Instance<S>, CliError> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {path:?}: {e}")))?;
        let parsed = io::parse_instance::<S>(&text)?;
        return Ok(Instance {
            system: parsed.system,
            objective: parsed.objective,
            start: None,
        });
    }
    let (name, args) = parse_preset(spec)?;
    match name.as_str() {
        "hilbert-cube" => {
            expect_args("hilbert-cube", &args, 2)?;
            let delta = S::parse_literal(&args[0])?;
            let n = parse_usize("hilbert-cube", &args[1])?;
            Ok(Instance {
                system: instances::hilbert_cube(&delta, n)?,
                objective: None,
                start: None,
            })
        }
        "cube" => {
            expect_args("cube", &args, 1)?;
            Ok(Instance {
                system: instances::cube(parse_usize("cube", &args[0])?)?,
                objective: None,
                start: None,
            })
        }
        "simplex" => {
            expect_args("simplex", &args, 1)?;
            Ok(Instance {
                system: instances::simplex_system(parse_usize("simplex", &args[0])?)?,
                objective: None,
                start: None,
            })
        }
        "random-lp" => {
            expect_args("random-lp", &args, 3)?;
            let n = parse_usize("random-lp", &args[0])?;
            let m = parse_usize("random-lp", &args[1])?;
            let seed: u64 = args[2]
                .parse()
                .map_err(|_| CliError::Config(format!("random-lp: bad seed {:?}", args[2])))?;
            if m < 2 * n {
                return Err(CliError::Config(format!(
                    "random-lp needs at least {} constraints for the box, got {m}",
                    2 * n
                )));
            }
            let lp = instances::random_lp(n, m - 2 * n, seed, tol)?;
            Ok(Instance {
                system: lp.system,
                objective: Some(lp.objective),
                start: Some(lp.start),
            })
        }
        "disc-section" => {
            expect_args("disc-section", &args, 1)?;
            let disc = instances::disc_section::<S>(parse_usize("disc-section", &args[0])?)?;
            Ok(Instance {
                system: disc.as_constraint_system()?,
                objective: None,
                start: None,
            })
        }
        other => Err(CliError::Config(format!("unknown preset {other:?}"))),
    }
}

fn parse_point<S: Scalar>(text: &str, truncation: usize) -> Result<Point<S>, CliError> {
    if text == "origin" || text == "origin-vertex" {
        return Ok(Point::zeros(truncation));
    }
    let coords: Result<Vec<S>, Error> = text.split(',').map(S::parse_literal).collect();
    let coords = coords?;
    if coords.len() != truncation {
        return Err(CliError::Config(format!(
            "point has {} coordinates, instance is truncated at {truncation}",
            coords.len()
        )));
    }
    Ok(Point::new(coords))
}

fn build_objective<S: Scalar>(
    spec: &str,
    sys: &ConstraintSystem<S>,
    tol: &Tolerances<S>,
) -> Result<Objective<S>, CliError> {
    if let Some(h) = spec.strip_prefix("riesz:") {
        return Ok(instances::riesz_objective(sys, &S::parse_literal(h)?)?);
    }
    if let Some(target) = spec.strip_prefix("exposing:") {
        let e = parse_point(target, sys.truncation())?;
        return Ok(instances::exposing_objective(sys, &e, tol)?);
    }
    if let Some(body) = spec.strip_prefix("coeffs:") {
        let mut pairs: Vec<(usize, S)> = Vec::new();
        let mut constant = S::zero();
        let mut tail: Option<S> = None;
        for (i, section) in body.split(';').enumerate() {
            let section = section.trim();
            if i == 0 {
                for item in section.split(',') {
                    let item = item.trim();
                    if item.is_empty() {
                        continue;
                    }
                    let (j, v) = item.split_once('=').ok_or_else(|| {
                        CliError::Config(format!("expected j=value, got {item:?}"))
                    })?;
                    pairs.push((parse_usize("coefficient index", j)?, S::parse_literal(v)?));
                }
            } else if let Some(v) = section.strip_prefix("const=") {
                constant = S::parse_literal(v)?;
            } else if let Some(v) = section.strip_prefix("tail=") {
                tail = Some(S::parse_literal(v)?);
            } else {
                return Err(CliError::Config(format!(
                    "unknown objective section {section:?}"
                )));
            }
        }
        let linear = Coeffs::from_pairs(&pairs, sys.truncation())?;
        return Ok(Objective::new(linear, constant, tail)?);
    }
    Err(CliError::Config(format!(
        "objective must start with riesz:, exposing:, or coeffs:, got {spec:?}"
    )))
}

fn resolve_objective<S: Scalar>(
    flag: &Option<String>,
    instance: &Instance<S>,
    tol: &Tolerances<S>,
) -> Result<Objective<S>, CliError> {
    match flag {
        Some(spec) => build_objective(spec, &instance.system, tol),
        None => instance.objective.clone().ok_or_else(|| {
            CliError::Config("no objective given and none embedded in the instance".into())
        }),
    }
}

fn resolve_start<S: Scalar>(flag: &str, instance: &Instance<S>) -> Result<Point<S>, CliError> {
    if flag == "origin" || flag == "origin-vertex" {
        if let Some(start) = &instance.start {
            return Ok(start.clone());
        }
    }
    parse_point(flag, instance.system.truncation())
}

fn parse_policy(text: &str) -> Result<NormPolicy, CliError> {
    match text {
        "unit-edge" => Ok(NormPolicy::UnitEdge),
        "ambient" => Ok(NormPolicy::Ambient),
        other => Err(CliError::Config(format!("unknown policy {other:?}"))),
    }
}

fn default_sample(kind: SystemKind, seed: u64) -> SampleSpec {
    match kind {
        SystemKind::Finite => SampleSpec::Exhaustive,
        SystemKind::Truncated => SampleSpec::RandomBinary { seed, count: 256 },
    }
}

fn parse_sample(text: &str, seed: u64) -> Result<SampleSpec, CliError> {
    if text == "exhaustive" {
        return Ok(SampleSpec::Exhaustive);
    }
    if let Some(count) = text.strip_prefix("random:") {
        return Ok(SampleSpec::RandomBinary {
            seed,
            count: parse_usize("sample count", count)?,
        });
    }
    Err(CliError::Config(format!(
        "sample must be exhaustive or random:COUNT, got {text:?}"
    )))
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Config(format!("bad output path {path:?}")))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)
        .map_err(|e| CliError::Config(format!("cannot write {tmp:?}: {e}")))?;
    fs::rename(&tmp, path)
        .map_err(|e| CliError::Config(format!("cannot rename {tmp:?} to {path:?}: {e}")))?;
    Ok(())
}

fn run_solve<S: Scalar>(args: &SolveArgs, tol: &Tolerances<S>) -> Result<(), CliError> {
    let instance = build_instance::<S>(&args.instance, tol)?;
    let objective = resolve_objective(&args.objective, &instance, tol)?;
    let start = resolve_start(&args.start, &instance)?;
    let policy = parse_policy(&args.policy)?;

    if args.audit_gate {
        let sample = default_sample(instance.system.kind(), args.seed);
        let report = audit::audit(&instance.system, Some(&objective), policy, &sample, tol)?;
        let failures: Vec<String> = report
            .verdicts
            .iter()
            .filter(|(_, f)| f.verdict == VerdictKind::Fail)
            .map(|(id, f)| format!("{} ({})", id.as_str(), f.detail))
            .collect();
        if !failures.is_empty() {
            return Err(CliError::Gate(format!(
                "audit flagged {}",
                failures.join("; ")
            )));
        }
    }

    let limits = Limits {
        max_iter: args.max_iter,
        tol: tol.clone(),
    };
    let trace = simplex::simplex_run(&instance.system, &objective, &start, policy, &limits)?;

    let emit_points = args.emit_points || instance.system.truncation() <= 32;
    if let Some(path) = &args.trace_out {
        write_atomic(path, &simplex::trace_to_jsonl(&trace, emit_points))?;
    }
    if let Some(path) = &args.plot_out {
        write_atomic(path, &simplex::trace_to_csv(&trace))?;
    }
    println!(
        "stop={} pivots={} final-value={} truncation={} policy={}",
        trace.stop.as_str(),
        trace.pivots.len(),
        trace.final_value().literal(),
        trace.truncation,
        trace.policy.as_str()
    );
    Ok(())
}

fn run_audit<S: Scalar>(args: &AuditArgs, tol: &Tolerances<S>) -> Result<(), CliError> {
    let instance = build_instance::<S>(&args.instance, tol)?;
    let objective = match &args.objective {
        Some(spec) => Some(build_objective(spec, &instance.system, tol)?),
        None => instance.objective.clone(),
    };
    let policy = parse_policy(&args.policy)?;
    let sample = match &args.sample {
        Some(text) => parse_sample(text, args.seed)?,
        None => default_sample(instance.system.kind(), args.seed),
    };
    let report = audit::audit(&instance.system, objective.as_ref(), policy, &sample, tol)?;
    let text = audit::report_to_text(&report);
    if let Some(path) = &args.report_out {
        write_atomic(path, &text)?;
    }
    print!("{text}");
    Ok(())
}

fn run_decompose<S: Scalar>(args: &DecomposeArgs, tol: &Tolerances<S>) -> Result<(), CliError> {
    let instance = build_instance::<S>(&args.instance, tol)?;
    let base = parse_point::<S>(&args.base, instance.system.truncation())?;
    let target = parse_point::<S>(&args.target, instance.system.truncation())?;
    let dec = geometry::schauder_decompose(&instance.system, &base, &target, tol)?;

    let mut csv = String::from("k,leaving_id,theta,residual_sq\n");
    let _ = writeln!(csv, "0,,,{}", dec.residual_sqs()[0].literal());
    for (k, (id, theta)) in dec.coefficients().iter().enumerate() {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            k + 1,
            id,
            theta.literal(),
            dec.residual_sqs()[k + 1].literal()
        );
    }
    if let Some(path) = &args.out {
        write_atomic(path, &csv)?;
    }
    println!(
        "coefficients={} final-residual-sq={}",
        dec.coefficients().len(),
        dec.residual_sqs().last().expect("nonempty").literal()
    );
    Ok(())
}

fn run_section(args: &SectionArgs) -> Result<(), CliError> {
    let disc = instances::disc_section::<f64>(args.directions)?;
    let parts: Vec<&str> = args.radii.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "radii must be start:stop:step, got {:?}",
            args.radii
        )));
    }
    let parse = |t: &str| -> Result<f64, CliError> {
        t.parse()
            .map_err(|_| CliError::Config(format!("bad radius {t:?}")))
    };
    let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if step <= 0.0 || stop < start || args.angles == 0 {
        return Err(CliError::Config("degenerate section sampling grid".into()));
    }

    let mut csv = String::from("alpha,beta,accepted\n");
    let mut max_accepted: f64 = 0.0;
    for a in 0..args.angles {
        let theta = std::f64::consts::TAU * a as f64 / args.angles as f64;
        let mut radius = start;
        while radius <= stop + 1e-12 {
            let alpha = radius * theta.cos();
            let beta = radius * theta.sin();
            let accepted = disc.contains(&alpha, &beta);
            if accepted && radius > max_accepted {
                max_accepted = radius;
            }
            let _ = writeln!(csv, "{alpha},{beta},{}", u8::from(accepted));
            radius += step;
        }
    }
    if let Some(path) = &args.out {
        write_atomic(path, &csv)?;
    }
    println!(
        "directions={} angles={} max-accepted-radius={max_accepted}",
        args.directions, args.angles
    );
    Ok(())
}

fn run_oracle_check<S: Scalar>(
    args: &OracleCheckArgs,
    tol: &Tolerances<S>,
    threads: usize,
) -> Result<(), CliError> {
    let instance = build_instance::<S>(&args.instance, tol)?;
    let objective = resolve_objective(&args.objective, &instance, tol)?;
    let start = resolve_start(&args.start, &instance)?;
    let policy = parse_policy(&args.policy)?;

    let vs = oracle::enumerate_vertices_threaded(&instance.system, tol, threads)?;
    let (brute_value, _) = oracle::brute_optimum(&vs, &objective)?;

    let limits = Limits {
        max_iter: args.max_iter,
        tol: tol.clone(),
    };
    let trace = simplex::simplex_run(&instance.system, &objective, &start, policy, &limits)?;
    let engine_value = trace.final_value().clone();

    let agree = |a: &S, b: &S| -> bool {
        if S::EXACT {
            a == b
        } else {
            (a.clone() - b.clone()).abs() <= S::from_ratio(1, 1_000_000_000)
        }
    };
    if !agree(&engine_value, &brute_value) {
        return Err(CliError::Mismatch(format!(
            "engine value {} vs brute-force optimum {}",
            engine_value.literal(),
            brute_value.literal()
        )));
    }
    if let Some(expected) = &args.expect_value {
        let expected = S::parse_literal(expected)?;
        if !agree(&brute_value, &expected) {
            return Err(CliError::Mismatch(format!(
                "brute-force optimum {} vs expected {}",
                brute_value.literal(),
                expected.literal()
            )));
        }
    }
    if args.check_adjacency {
        for (i, v) in vs.vertices.iter().enumerate() {
            let edges = geometry::adjacent_extreme_points(&instance.system, v, policy, None, tol)?;
            let mut reached: Vec<usize> = Vec::new();
            for e in &edges {
                match vs.find(&e.adjacent) {
                    Some(j) => reached.push(j),
                    None => {
                        return Err(CliError::Mismatch(format!(
                            "edge endpoint off the oracle vertex list at vertex {i}"
                        )))
                    }
                }
            }
            reached.sort_unstable();
            reached.dedup();
            if reached != vs.neighbors(i) {
                return Err(CliError::Mismatch(format!(
                    "adjacency mismatch at vertex {i}"
                )));
            }
        }
    }
    println!(
        "optimum agrees value={} vertices={} pivots={}",
        brute_value.literal(),
        vs.vertices.len(),
        trace.pivots.len()
    );
    Ok(())
}
