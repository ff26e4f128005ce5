//! The `starconf` command line.
//!
//! Every subcommand builds a [`Report`] holding a JSON value and a text
//! rendering of the same data. JSON output contains no timing, so identical
//! invocations print identical bytes. Exit codes: 0 success, 2 invalid input,
//! 3 failed verification, 4 budget exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ara::{
    arrangement_bounds, gsc_bounds, stci_certificate, sv_generators, verify_sv_conditions,
    verify_zero_locus_match, BoundReport, SVSystem,
};
use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::coding::{
    component_subcodes, generator_matrix, maximal_subcodes_of_support_at_most, min_distance,
    minimal_codewords_upto, minimum_weight_classes, CodewordClass, GeneratorMatrix, Subcode,
};
use crate::error::{Error, Result};
use crate::exactalg::modp::choose_good_prime;
use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::forms::{default_variables, validate_arrangement, Arrangement, FormList, LinearSpan};
use crate::gsc::{classify, minimal_primes, EqualityReport, Gsc, MinimalPrimeSet};
use crate::interpolate::{interpolate, verify_pigeonhole, InterpolationResult};
use crate::planar::{planar_interpolate, poincare_crosscheck, PlanarInterpolation, ProjPoint};
use crate::sampling::{random_arrangement, rng, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "starconf",
    version,
    about = "Generalized star configurations and subspace arrangements"
)]
pub struct Cli {
    /// Working field: `rational` or `fp:<p>`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    /// Prime for finite-field cross-checks (repeatable; default 101 and 103).
    #[arg(long = "verify-prime", global = true)]
    pub verify_prime: Vec<u32>,
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub subset_budget: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub scan_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal primes, height and type of I_a(Λ).
    Gsc {
        lambda: PathBuf,
        #[arg(long)]
        a: usize,
    },
    /// Build (Λ, a) whose radical is the ideal of an arrangement.
    Interpolate { arrangement: PathBuf },
    /// Connecting-line construction for points of the projective plane.
    Planar { points: PathBuf },
    /// The linear code with the forms of Λ as generator columns.
    Code {
        lambda: PathBuf,
        /// Compare maximal subcodes of support at most a-1 with the minimal primes.
        #[arg(long)]
        a: Option<usize>,
        /// Weight bound for minimal codewords (default: the minimum distance).
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Generators up to radical, arithmetic rank bounds and s.t.c.i. status.
    /// Accepts a lambda file (with --a) or an arrangement file.
    Ara {
        input: PathBuf,
        #[arg(long)]
        a: Option<usize>,
        /// Exponent for one generator, as `i1,…,ia=e` with 1-based indices.
        #[arg(long = "exponent")]
        exponents: Vec<String>,
    },
    /// Reproduce a worked example.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// Two skew lines in P^3 from six forms with a = 4.
    #[value(name = "hartshorne")]
    SkewLines,
    /// A plane and a line in P^3 meeting in a point.
    #[value(name = "example22")]
    PlaneLine,
    /// Five points of the plane, three of them collinear.
    #[value(name = "example24")]
    FivePoints,
    /// The three coordinate points of the plane.
    Triangle,
    /// A random arrangement drawn with `--seed`.
    Random,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub verify_primes: Vec<u32>,
    pub budget: Budget,
    pub output: Output,
    pub seed: u64,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.subset_budget == 0 || cli.scan_budget == 0 {
            return Err(Error::Invalid("budgets must be positive".into()));
        }
        let verify_primes = if cli.verify_prime.is_empty() {
            vec![101, 103]
        } else {
            cli.verify_prime.clone()
        };
        for &p in &verify_primes {
            FieldSpec::prime(u64::from(p))?;
        }
        Ok(RunConfig {
            field: FieldSpec::parse(&cli.field)?,
            verify_primes,
            budget: Budget {
                subsets: cli.subset_budget,
                scan: cli.scan_budget,
            },
            output: cli.output,
            seed: cli.seed,
        })
    }
}

/// One report section: the JSON value plus its text rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Names of checks that failed.
    pub failed: Vec<String>,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            failed: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        if !ok {
            self.failed.push(name.to_string());
        }
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Verification(_) | Error::BadReduction(_) => EXIT_VERIFICATION,
        _ => EXIT_VALIDATION,
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    let out = run(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let result =
        RunConfig::from_cli(cli).and_then(|cfg| dispatch(&cli.command, &cfg).map(|r| (r, cfg)));
    match result {
        Ok((report, cfg)) => {
            let code = if report.failed.is_empty() {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            };
            let mut stderr = String::new();
            if !report.failed.is_empty() {
                let _ = writeln!(stderr, "failed checks: {}", report.failed.join(", "));
            }
            let stdout = match cfg.output {
                Output::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("plain JSON");
                    s.push('\n');
                    s
                }
                Output::Text => {
                    let _ = writeln!(stderr, "elapsed: {:.3} s", start.elapsed().as_secs_f64());
                    report.text
                }
            };
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if cli.output == Output::Json {
                let v = json!({ "error": e.to_string(), "exit_code": code });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&v).expect("plain JSON")
                )
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    let mut report = match cmd {
        Command::Gsc { lambda, a } => {
            let (vars, lambda) = read_lambda(lambda, cfg.field)?;
            gsc_report(&Gsc::new(lambda, *a)?, &vars, &cfg.budget)?
        }
        Command::Interpolate { arrangement } => {
            let (vars, arr) = read_arrangement(arrangement, cfg.field)?;
            interpolate_report(&arr, &vars, &cfg.budget)?
        }
        Command::Planar { points } => {
            if cfg.field != FieldSpec::Rational {
                return Err(Error::Invalid("planar works over the rationals".into()));
            }
            planar_report(&read_points(points)?, &cfg.budget)?
        }
        Command::Code {
            lambda,
            a,
            max_weight,
        } => {
            let (vars, lambda) = read_lambda(lambda, cfg.field)?;
            code_report(
                &lambda,
                *a,
                *max_weight,
                &vars,
                &cfg.verify_primes,
                &cfg.budget,
            )?
        }
        Command::Ara {
            input,
            a,
            exponents,
        } => {
            let exps = parse_exponents(exponents)?;
            let text = read_json(input)?;
            if text.get("components").is_some() {
                let (vars, arr) = arrangement_from_json(&text, cfg.field)?;
                let interp = interpolate(&arr, &cfg.budget)?;
                let mut r = ara_report(
                    &interp.lambda,
                    interp.a,
                    &exps,
                    &vars,
                    &cfg.verify_primes,
                    &cfg.budget,
                )?;
                let b = arrangement_bounds(&arr);
                r.json["arrangement_bounds"] = bounds_json(&b);
                r.text
                    .push_str(&format!("arrangement bounds: {}\n", bounds_text(&b)));
                r
            } else {
                let a =
                    a.ok_or_else(|| Error::Invalid("--a is required for a lambda file".into()))?;
                let (vars, lambda) = lambda_from_json(&text, cfg.field)?;
                ara_report(&lambda, a, &exps, &vars, &cfg.verify_primes, &cfg.budget)?
            }
        }
        Command::Demo { name } => demo(*name, cfg)?,
    };
    let command = match cmd {
        Command::Gsc { .. } => "gsc".to_string(),
        Command::Interpolate { .. } => "interpolate".to_string(),
        Command::Planar { .. } => "planar".to_string(),
        Command::Code { .. } => "code".to_string(),
        Command::Ara { .. } => "ara".to_string(),
        Command::Demo { name } => format!("demo {}", demo_name(*name)),
    };
    let failed = report.failed.clone();
    report.json = json!({
        "command": command,
        "field": cfg.field.to_string(),
        "result": report.json,
        "failed_checks": failed,
    });
    report.text = format!("command: {command}\nfield: {}\n{}", cfg.field, report.text);
    Ok(report)
}

fn demo_name(d: Demo) -> &'static str {
    match d {
        Demo::SkewLines => "hartshorne",
        Demo::PlaneLine => "example22",
        Demo::FivePoints => "example24",
        Demo::Triangle => "triangle",
        Demo::Random => "random",
    }
}

// ---- input ----

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn parse_coeff(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| field.from_int(i))
            .ok_or_else(|| Error::Invalid(format!("coefficient {n} is not an integer"))),
        Value::String(s) => field.parse_scalar(s),
        other => Err(Error::Invalid(format!(
            "coefficient {other} is not a number"
        ))),
    }
}

fn parse_vector(field: FieldSpec, v: &Value, k: usize) -> Result<Vec<Scalar>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("{v} is not a coefficient list")))?;
    if items.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: items.len(),
        });
    }
    items.iter().map(|c| parse_coeff(field, c)).collect()
}

fn parse_variables(v: &Value) -> Result<Vec<String>> {
    let vars = v
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("missing \"variables\" list".into()))?;
    let names: Vec<String> = vars
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Invalid(format!("variable name {x} is not a string")))
        })
        .collect::<Result<_>>()?;
    if names.is_empty() {
        return Err(Error::Invalid("no variables declared".into()));
    }
    Ok(names)
}

fn lambda_from_json(v: &Value, field: FieldSpec) -> Result<(Vec<String>, FormList)> {
    let vars = parse_variables(v)?;
    let rows = v
        .get("forms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("missing \"forms\" list".into()))?;
    let forms = rows
        .iter()
        .map(|r| crate::forms::LinearForm::new(parse_vector(field, r, vars.len())?))
        .collect::<Result<Vec<_>>>()?;
    Ok((vars.clone(), FormList::new(field, vars.len(), forms)?))
}

fn read_lambda(path: &Path, field: FieldSpec) -> Result<(Vec<String>, FormList)> {
    lambda_from_json(&read_json(path)?, field)
}

fn arrangement_from_json(v: &Value, field: FieldSpec) -> Result<(Vec<String>, Arrangement)> {
    let vars = parse_variables(v)?;
    let k = vars.len();
    let comps = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("missing \"components\" list".into()))?;
    let gens = comps
        .iter()
        .map(|c| {
            let rows = c
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Invalid("component without \"generators\"".into()))?;
            let rows = rows
                .iter()
                .map(|r| parse_vector(field, r, k))
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(field, k, rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let report = validate_arrangement(field, k, &gens);
    match report.arrangement {
        Some(arr) => Ok((vars, arr)),
        None => Err(Error::InvalidArrangement(report.failures)),
    }
}

fn read_arrangement(path: &Path, field: FieldSpec) -> Result<(Vec<String>, Arrangement)> {
    arrangement_from_json(&read_json(path)?, field)
}

fn read_points(path: &Path) -> Result<Vec<ProjPoint>> {
    let v = read_json(path)?;
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("missing \"points\" list".into()))?;
    pts.iter()
        .map(|p| ProjPoint::from_scalars(&parse_vector(FieldSpec::Rational, p, 3)?))
        .collect()
}

fn parse_exponents(specs: &[String]) -> Result<BTreeMap<Vec<usize>, u32>> {
    let mut out = BTreeMap::new();
    for s in specs {
        let bad = || Error::Invalid(format!("exponent spec {s:?} is not of the form i1,…,ia=e"));
        let (lhs, rhs) = s.split_once('=').ok_or_else(bad)?;
        let e: u32 = rhs.trim().parse().map_err(|_| bad())?;
        let mut idx = lhs
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        out.insert(idx, e);
    }
    Ok(out)
}

// ---- rendering helpers ----

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn set_text(idx: &[usize]) -> String {
    let v: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn span_json(s: &LinearSpan, vars: &[String]) -> Value {
    let gens: Vec<String> = s.generators().iter().map(|g| g.render(vars)).collect();
    json!({ "generators": gens, "codim": s.codim() })
}

fn spans_json(spans: &[LinearSpan], vars: &[String]) -> Value {
    Value::Array(spans.iter().map(|s| span_json(s, vars)).collect())
}

fn equality_json(r: &EqualityReport, vars: &[String]) -> Value {
    json!({
        "equal": r.equal,
        "missing": spans_json(&r.missing, vars),
        "extra": spans_json(&r.extra, vars),
    })
}

fn bounds_json(b: &BoundReport) -> Value {
    json!({
        "sv_bound": b.sv_bound,
        "ee_bound": b.ee_bound,
        "height": b.height,
        "min": b.min,
        "stci_certified": b.stci_certified,
    })
}

fn bounds_text(b: &BoundReport) -> String {
    let ee = b.ee_bound.map_or("n/a".to_string(), |e| e.to_string());
    format!(
        "sv_bound {}, ee_bound {ee}, height {}, min {}, stci_certified {}",
        b.sv_bound, b.height, b.min, b.stci_certified
    )
}

fn lambda_json(lambda: &FormList, vars: &[String]) -> Value {
    json!({
        "variables": vars,
        "forms": lambda.render(vars),
    })
}

fn lambda_text(lambda: &FormList, vars: &[String]) -> String {
    format!(
        "Λ (n={}, k={}): {}\n",
        lambda.len(),
        lambda.ambient(),
        lambda.render(vars).join(", ")
    )
}

fn primes_section(mp: &MinimalPrimeSet, vars: &[String]) -> (Value, String) {
    let list: Vec<Value> = mp
        .primes
        .iter()
        .map(|p| {
            let mut v = span_json(&p.span, vars);
            v["witness"] = json!(one_based(&p.witness));
            v
        })
        .collect();
    let mut text = format!("minimal primes ({}):\n", mp.primes.len());
    for p in &mp.primes {
        let _ = writeln!(
            text,
            "  {}  codim {}  witness {}",
            p.span.render(vars),
            p.span.codim(),
            set_text(&p.witness)
        );
    }
    (Value::Array(list), text)
}

// ---- sections ----

pub fn gsc_report(g: &Gsc, vars: &[String], budget: &Budget) -> Result<Report> {
    let mp = minimal_primes(g, budget)?;
    let class = classify(g, budget)?;
    let (primes, primes_text) = primes_section(&mp, vars);
    let json = json!({
        "lambda": lambda_json(g.lambda(), vars),
        "a": g.a(),
        "minimal_primes": primes,
        "height": mp.height,
        "empty_variety": mp.is_empty_variety(),
        "usual_star": class.usual_star,
        "distinct_spans": mp.distinct_spans,
    });
    let mut text = lambda_text(g.lambda(), vars);
    let _ = writeln!(text, "a: {}", g.a());
    text.push_str(&primes_text);
    let _ = writeln!(text, "height: {}", mp.height);
    let _ = writeln!(text, "empty variety: {}", mp.is_empty_variety());
    let _ = writeln!(text, "usual star configuration: {}", class.usual_star);
    Ok(Report::new(json, text))
}

pub fn interpolate_report(arr: &Arrangement, vars: &[String], budget: &Budget) -> Result<Report> {
    let r = interpolate(arr, budget)?;
    let pig = verify_pigeonhole(&r, budget)?;
    let mut report = Report::new(interpolation_json(&r, vars), interpolation_text(&r, vars));
    report.json["pigeonhole"] = json!({
        "holds": pig.holds,
        "subsets_checked": pig.subsets_checked.to_string(),
        "counterexample": pig.counterexample.as_deref().map(one_based),
    });
    let _ = writeln!(
        report.text,
        "pigeonhole: {} ({} subsets)",
        if pig.holds { "holds" } else { "fails" },
        pig.subsets_checked
    );
    report.check("radical_equals_arrangement", r.verification.equal);
    report.check("pigeonhole", pig.holds);
    Ok(report)
}

fn interpolation_json(r: &InterpolationResult, vars: &[String]) -> Value {
    let frames: Vec<Value> = r
        .frames
        .iter()
        .zip(&r.frame_positions)
        .zip(&r.components)
        .map(|((f, pos), c)| {
            json!({
                "component": span_json(c, vars),
                "forms": f.render(vars),
                "positions": one_based(pos),
            })
        })
        .collect();
    let dedup: Vec<Value> = r
        .dedup_log
        .iter()
        .map(|d| json!({ "form": d.form.render(vars), "components": one_based(&d.components) }))
        .collect();
    json!({
        "lambda": lambda_json(&r.lambda, vars),
        "n": r.lambda.len(),
        "a": r.a,
        "aleph": r.aleph,
        "frames": frames,
        "dedup_log": dedup,
        "verification": equality_json(&r.verification, vars),
    })
}

fn interpolation_text(r: &InterpolationResult, vars: &[String]) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "aleph: {}", r.aleph);
    for (i, (f, c)) in r.frames.iter().zip(&r.components).enumerate() {
        let _ = writeln!(
            t,
            "frame {} for {}: {}",
            i + 1,
            c.render(vars),
            f.render(vars).join(", ")
        );
    }
    for d in &r.dedup_log {
        let _ = writeln!(
            t,
            "shared form {} in components {}",
            d.form.render(vars),
            set_text(&d.components)
        );
    }
    t.push_str(&lambda_text(&r.lambda, vars));
    let _ = writeln!(t, "a: {}", r.a);
    let _ = writeln!(t, "radical equals arrangement: {}", r.verification.equal);
    t
}

pub fn planar_report(points: &[ProjPoint], budget: &Budget) -> Result<Report> {
    let r = planar_interpolate(points, budget)?;
    let pc = poincare_crosscheck(&r.points)?;
    let mut report = Report::new(planar_json(&r), planar_text(&r));
    report.json["poincare"] = json!({
        "sum_mu": pc.sum_mu,
        "lambda_size": pc.lambda_size,
        "matches": pc.matches,
    });
    let _ = writeln!(
        report.text,
        "rank-2 Möbius sum: {} (|Λ_X| = {}), {}",
        pc.sum_mu,
        pc.lambda_size,
        if pc.matches { "match" } else { "MISMATCH" }
    );
    report.check("singularity_profile", r.profile.profile_ok);
    report.check("radical_equals_points", r.verification.equal);
    report.check("poincare", pc.matches);
    Ok(report)
}

fn planar_json(r: &PlanarInterpolation) -> Value {
    let vars = default_variables(3);
    let lines: Vec<Value> = r
        .lines
        .iter()
        .map(|l| {
            json!({
                "line": l.form.render(&vars),
                "points": one_based(&l.points_on),
                "multiplicity": l.multiplicity,
            })
        })
        .collect();
    let table: Vec<Value> = r
        .profile
        .table
        .iter()
        .map(|s| {
            json!({
                "point": s.point.to_string(),
                "nu": s.nu,
                "lines": s.lines,
                "in_x": s.in_x,
            })
        })
        .collect();
    json!({
        "points": r.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "lines": lines,
        "lambda": lambda_json(&r.lambda, &vars),
        "n": r.lambda.len(),
        "a": r.a,
        "singularities": table,
        "profile_ok": r.profile.profile_ok,
        "verification": equality_json(&r.verification, &vars),
    })
}

fn planar_text(r: &PlanarInterpolation) -> String {
    let vars = default_variables(3);
    let mut t = String::new();
    let pts: Vec<String> = r.points.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(t, "X ({} points): {}", pts.len(), pts.join(" "));
    for l in &r.lines {
        let _ = writeln!(
            t,
            "line {} through {} multiplicity {}",
            l.form.render(&vars),
            set_text(&l.points_on),
            l.multiplicity
        );
    }
    t.push_str(&lambda_text(&r.lambda, &vars));
    let _ = writeln!(t, "a: {}", r.a);
    let _ = writeln!(t, "singular points:");
    for s in &r.profile.table {
        let _ = writeln!(
            t,
            "  {:<14} nu {}  lines {}  {}",
            s.point.to_string(),
            s.nu,
            s.lines,
            if s.in_x { "in X" } else { "" }
        );
    }
    let _ = writeln!(t, "profile ok: {}", r.profile.profile_ok);
    let _ = writeln!(t, "radical equals ideal of X: {}", r.verification.equal);
    t
}

fn subcode_json(d: &Subcode) -> Value {
    json!({
        "dim": d.dim(),
        "support": one_based(&d.support),
        "preimage": d.preimage.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn class_json(c: &CodewordClass) -> Value {
    json!({
        "message": c.message,
        "codeword": c.codeword,
        "weight": c.weight(),
    })
}

pub fn code_report(
    lambda: &FormList,
    a: Option<usize>,
    max_weight: Option<usize>,
    vars: &[String],
    primes: &[u32],
    budget: &Budget,
) -> Result<Report> {
    let g = generator_matrix(lambda)?;
    let (p, _) = choose_good_prime(&lambda.matrix(), primes, budget)?;
    let d = min_distance(&g, p, budget)?;
    let minimum = minimum_weight_classes(&g, p, budget)?;
    let w = max_weight.unwrap_or(d);
    let minimal = minimal_codewords_upto(&g, w, p, budget)?;
    let mut json = json!({
        "lambda": lambda_json(lambda, vars),
        "n": g.n(),
        "k": g.k(),
        "prime": p,
        "min_distance": d,
        "minimum_weight_classes": minimum.iter().map(class_json).collect::<Vec<_>>(),
        "minimal_codeword_bound": w,
        "minimal_codewords": minimal.iter().map(class_json).collect::<Vec<_>>(),
    });
    let mut text = lambda_text(lambda, vars);
    let _ = writeln!(text, "code: n={}, k={}, scanned over F_{p}", g.n(), g.k());
    let _ = writeln!(text, "minimum distance: {d}");
    let _ = writeln!(text, "minimum-weight classes ({}):", minimum.len());
    for c in &minimum {
        let _ = writeln!(
            text,
            "  message {:?} support {}",
            c.message,
            set_text(&c.support)
        );
    }
    let _ = writeln!(
        text,
        "minimal codewords of weight <= {w}: {}",
        minimal.len()
    );
    let mut report = Report::new(Value::Null, String::new());
    if let Some(a) = a {
        let (table, ok) = subcode_table(&g, a, vars, budget)?;
        json["subcodes"] = table.0;
        text.push_str(&table.1);
        report.check("maximal_subcodes_match_components", ok);
    }
    report.json = json;
    report.text = text;
    Ok(report)
}

/// Maximal subcodes of support at most `a - 1` against the images of the
/// minimal primes of `I_a(Λ)`.
fn subcode_table(
    g: &GeneratorMatrix,
    a: usize,
    vars: &[String],
    budget: &Budget,
) -> Result<((Value, String), bool)> {
    let gsc = Gsc::new(g.lambda().clone(), a)?;
    let mp = minimal_primes(&gsc, budget)?;
    let mut comps = component_subcodes(g, &mp.spans())?;
    let max = maximal_subcodes_of_support_at_most(g, a - 1, budget)?;
    let supports_ok = comps.iter().all(|d| d.support_size() < a);
    let pairs: Vec<Value> = mp
        .primes
        .iter()
        .zip(&comps)
        .map(|(p, d)| json!({ "component": span_json(&p.span, vars), "subcode": subcode_json(d) }))
        .collect();
    let mut text = format!("maximal subcodes of support <= {}: {}\n", a - 1, max.len());
    for (p, d) in mp.primes.iter().zip(&comps) {
        let _ = writeln!(
            text,
            "  component {} -> subcode of dim {} support {}",
            p.span.render(vars),
            d.dim(),
            set_text(&d.support)
        );
    }
    comps.sort();
    let matches = comps == max;
    let _ = writeln!(text, "maximal subcodes equal component subcodes: {matches}");
    let json = json!({
        "support_bound": a - 1,
        "components": pairs,
        "maximal": max.iter().map(subcode_json).collect::<Vec<_>>(),
        "matches_components": matches,
    });
    Ok(((json, text), matches && supports_ok))
}

fn good_primes(lambda: &FormList, primes: &[u32], budget: &Budget) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for &p in primes {
        let (q, _) = choose_good_prime(&lambda.matrix(), &[p], budget)?;
        if !out.contains(&q) {
            out.push(q);
        }
    }
    Ok(out)
}

pub fn ara_report(
    lambda: &FormList,
    a: usize,
    exponents: &BTreeMap<Vec<usize>, u32>,
    vars: &[String],
    primes: &[u32],
    budget: &Budget,
) -> Result<Report> {
    let g = Gsc::new(lambda.clone(), a)?;
    let sys = sv_generators(lambda, a, exponents, budget)?;
    let check = verify_sv_conditions(&sys.partition, budget)?;
    let primes = good_primes(lambda, primes, budget)?;
    let locus = verify_zero_locus_match(&sys, &primes, budget)?;
    let cert = stci_certificate(&g, budget)?;
    let bounds = gsc_bounds(&g, budget)?;
    let mut report = Report::new(Value::Null, String::new());
    report.json = json!({
        "lambda": lambda_json(lambda, vars),
        "a": a,
        "partition_sizes": sys.partition.sizes(),
        "generators": system_json(&sys, vars),
        "conditions": {
            "holds": check.holds,
            "pairs_checked": check.pairs_checked,
            "violation": check.violation,
        },
        "locus": locus,
        "bounds": bounds_json(&bounds),
        "stci_certified": cert.stci_certified,
    });
    let mut t = lambda_text(lambda, vars);
    let _ = writeln!(t, "a: {a}");
    let _ = writeln!(t, "partition sizes: {:?}", sys.partition.sizes());
    for (l, q) in sys.q.iter().enumerate() {
        let _ = writeln!(t, "q_{l} = {}", q.render(vars));
    }
    let _ = writeln!(
        t,
        "conditions (i)-(iii): {}",
        match &check.violation {
            None => "hold".to_string(),
            Some(v) => format!("fail {v}"),
        }
    );
    let _ = writeln!(
        t,
        "generators vanish on every minimal prime: {}",
        locus.symbolic
    );
    for row in &locus.primes {
        let _ = writeln!(
            t,
            "F_{}: {} points on V(q), {} points on V(I_a), {}",
            row.p,
            row.system_points,
            row.product_points,
            if row.matches { "match" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(t, "bounds: {}", bounds_text(&bounds));
    let _ = writeln!(t, "s.t.c.i. certified: {}", cert.stci_certified);
    report.text = t;
    report.check("sv_conditions", check.holds);
    report.check("zero_locus_match", locus.all_match);
    Ok(report)
}

fn system_json(sys: &SVSystem, vars: &[String]) -> Value {
    Value::Array(
        sys.partition
            .families
            .iter()
            .zip(&sys.q)
            .map(|(fam, q)| {
                json!({
                    "products": fam.iter().map(|s| one_based(s)).collect::<Vec<_>>(),
                    "polynomial": q.render(vars),
                })
            })
            .collect(),
    )
}

// ---- demos ----

fn q_forms(rows: &[&[i64]]) -> FormList {
    FormList::from_int_rows(FieldSpec::Rational, rows).expect("demo data is valid")
}

fn q_span(rows: &[&[i64]]) -> LinearSpan {
    LinearSpan::from_matrix(
        &Matrix::from_ints(FieldSpec::Rational, rows).expect("demo data is valid"),
    )
}

fn vars_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn points(list: &[[i64; 3]]) -> Vec<ProjPoint> {
    list.iter()
        .map(|&c| ProjPoint::from_ints(c).expect("demo data is valid"))
        .collect()
}

fn merge(into: &mut Report, key: &str, title: &str, part: Report) {
    into.json[key] = part.json;
    let _ = writeln!(into.text, "== {title} ==");
    into.text.push_str(&part.text);
    into.failed
        .extend(part.failed.into_iter().map(|f| format!("{key}.{f}")));
}

pub fn skew_lines_lambda() -> FormList {
    q_forms(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[1, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[0, 0, 1, 1],
    ])
}

pub fn plane_line_lambda() -> FormList {
    // variables x, y, z, w
    q_forms(&[
        &[1, 0, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[1, 0, 1, 1],
        &[0, 1, 0, 0],
        &[1, 1, 0, 0],
        &[1, -1, 0, 0],
    ])
}

pub fn five_points() -> Vec<ProjPoint> {
    points(&[[0, 0, 1], [0, 1, 1], [0, 2, 1], [1, 0, 1], [1, 1, 1]])
}

fn demo(name: Demo, cfg: &RunConfig) -> Result<Report> {
    let budget = &cfg.budget;
    let mut r = Report::new(json!({}), String::new());
    match name {
        Demo::SkewLines => {
            let vars = default_variables(4);
            let lambda = skew_lines_lambda();
            let g = Gsc::new(lambda.clone(), 4)?;
            let part = gsc_report(&g, &vars, budget)?;
            let spans = minimal_primes(&g, budget)?.spans();
            let want = vec![
                q_span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
                q_span(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]),
            ];
            r.check("minimal_primes", spans == want);
            merge(&mut r, "gsc", "radical", part);
            let ara = ara_report(&lambda, 4, &BTreeMap::new(), &vars, &[5, 7], budget)?;
            merge(&mut r, "ara", "generators up to radical", ara);
            let cert = stci_certificate(&g, budget)?;
            r.check("not_stci", !cert.stci_certified);
            let code = code_report(&lambda, Some(4), None, &vars, &[5], budget)?;
            r.check("min_distance", code.json["min_distance"] == json!(2));
            merge(&mut r, "code", "code", code);
        }
        Demo::PlaneLine => {
            let vars = vars_of(&["x", "y", "z", "w"]);
            let g = Gsc::new(plane_line_lambda(), 4)?;
            let xzw = q_span(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
            let xy = q_span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
            let mut spans = minimal_primes(&g, budget)?.spans();
            spans.sort();
            let mut want = vec![xzw.clone(), xy.clone()];
            want.sort();
            r.check("minimal_primes", spans == want);
            merge(&mut r, "gsc", "radical", gsc_report(&g, &vars, budget)?);
            let arr = Arrangement::from_spans(vec![xzw, xy])?;
            let interp = interpolate_report(&arr, &vars, budget)?;
            r.check("aleph", interp.json["aleph"] == json!(4));
            merge(&mut r, "interpolate", "interpolation", interp);
            let b = arrangement_bounds(&arr);
            r.check("bounds", b.sv_bound == 4 && b.ee_bound == Some(3));
            r.json["bounds"] = bounds_json(&b);
            let _ = writeln!(r.text, "== bounds ==\n{}", bounds_text(&b));
        }
        Demo::FivePoints => {
            let pts = five_points();
            let planar = planar_report(&pts, budget)?;
            r.check(
                "shape",
                planar.json["n"] == json!(9) && planar.json["a"] == json!(6),
            );
            merge(&mut r, "planar", "connecting lines", planar);
            let interp = planar_interpolate(&pts, budget)?;
            let vars = default_variables(3);
            let code = code_report(&interp.lambda, Some(interp.a), None, &vars, &[101], budget)?;
            r.check(
                "min_distance",
                code.json["min_distance"] == json!(interp.a - 1),
            );
            r.check(
                "minimum_weight_classes",
                code.json["minimum_weight_classes"].as_array().map(Vec::len) == Some(pts.len()),
            );
            merge(&mut r, "code", "code", code);
        }
        Demo::Triangle => {
            let pts = points(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
            let planar = planar_report(&pts, budget)?;
            r.check("a", planar.json["a"] == json!(2));
            merge(&mut r, "planar", "connecting lines", planar);
        }
        Demo::Random => {
            let arr = random_arrangement(&mut rng(cfg.seed), 5, 3);
            let vars = default_variables(arr.ambient());
            r.json["seed"] = json!(cfg.seed);
            let _ = writeln!(r.text, "seed: {}", cfg.seed);
            let comps = spans_json(arr.components(), &vars);
            r.json["arrangement"] = comps;
            merge(
                &mut r,
                "interpolate",
                "interpolation",
                interpolate_report(&arr, &vars, budget)?,
            );
        }
    }
    Ok(r)
}
