//! Command-line front end: compute, verify and export.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::eigen::{
    check_m_independence, eigenbasis, is_admissible_at, minimal_mbar, solve_eigenfunction, super_jack_series,
    verify_action, Action, Eigenfunction, ACTIONS,
};
use crate::error::{Error, Result};
use crate::fbasis::{direct_series_oracle, f_polynomial};
use crate::jack::{jack_polynomial, super_jack, super_schur};
use crate::operators::{verify_adjointness, verify_identity, verify_stanley, IdentityKind, OperatorSpec, Report};
use crate::partition::{HookShape, IntVector, Partition};
use crate::poly::{variable_names, MultiPoly, VarSpace};
use crate::scalar::{parse_rational, Rational, Rf};

/// Version tag of every JSON document written by the tool.
pub const SCHEMA: &str = "cms-eigenbasis/1";

#[derive(Parser, Debug)]
#[command(name = "cms", version, about = "Exact eigenfunctions of deformed CMS operators over Q(θ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Evaluate results at θ = p/q after the symbolic computation.
    #[arg(long, global = true, value_name = "p/q", allow_hyphen_values = true)]
    theta: Option<String>,
    /// Write the output to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Space {
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    nt: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct Labels {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    mt: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Preset name (trig, hermite, laguerre, jacobi, bessel) or raw
    /// coefficients such as "a2=1,b1=-1/2".
    #[arg(long, default_value = "trig")]
    spec: String,
    /// Preset parameter a.
    #[arg(long = "pa", allow_hyphen_values = true)]
    param_a: Option<String>,
    /// Preset parameter b.
    #[arg(long = "pb", allow_hyphen_values = true)]
    param_b: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jack polynomial P_λ in n variables.
    Jack {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: usize,
    },
    /// Super Jack polynomial SP_λ(x, x̃).
    Superjack {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        space: Space,
    },
    /// Super Schur polynomial S_λ(x, x̃).
    Superschur {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        space: Space,
    },
    /// f_a^{(m̄)} on the space n̄.
    Fpoly {
        /// Comma-separated integer vector.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        mt: usize,
        #[command(flatten)]
        space: Space,
        /// Also compute the direct generating-function coefficient and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Eigenfunction P_λ^{(m̄)} of ℒ.
    Eigenfunction {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Explicit super Jack series b_λ SP_λ = Σ u(a) f_{φ(λ)−a}.
    SuperjackSeries {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        labels: Labels,
    },
    /// Structural checks.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Writes one JSON table of eigenfunctions per degree.
    Batch {
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        spec: SpecArgs,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Kernel function identity for E^ℓ, D^k or ℒ.
    Identity {
        /// EId, DId or LId.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        labels: Labels,
        #[arg(long)]
        deg: u32,
    },
    /// ⟨ℒf, g⟩ = ⟨f, ℒg⟩ on all super Jack pairs up to a degree.
    Adjoint {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        deg: usize,
    },
    /// Closed-form action of E^ℓ, D^k on f_a against direct application.
    Action {
        /// E0, E1, D0, D1, D2 or all.
        #[arg(long, default_value = "all")]
        op: String,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        labels: Labels,
        /// Largest |a|.
        #[arg(long)]
        deg: i64,
        /// Largest |a_i|.
        #[arg(long, default_value_t = 4)]
        max_entry: i64,
    },
    /// Truncated Cauchy kernel against Σ b_λ P_λ(x) P_λ(y).
    Stanley {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        deg: u32,
    },
    /// P_λ^{(m̄)} = P_λ^{(k̄)} for two label shapes.
    MIndependence {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        labels: Labels,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kt: usize,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn failed(stdout: String) -> Self {
        Outcome { code: 1, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidArgument(_) => 2,
            _ => 1,
        };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    };
    deliver(&cli, outcome)
}

fn deliver(cli: &Cli, outcome: Outcome) -> Outcome {
    let Some(path) = &cli.output else { return outcome };
    match std::fs::write(path, &outcome.stdout) {
        Ok(()) => Outcome { stdout: String::new(), ..outcome },
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let theta = cli.theta.as_deref().map(parse_rational).transpose()?;
    if theta.is_some() && matches!(cli.command, Command::Verify { .. } | Command::Batch { .. }) {
        return Err(Error::InvalidArgument("--theta applies to computations only".into()));
    }
    match &cli.command {
        Command::Jack { lambda, n } => {
            let lambda: Partition = lambda.parse()?;
            let p = jack_polynomial(&lambda, *n)?.value;
            poly_output(cli, "jack", &p, VarSpace::new(*n, 0), theta.as_ref())
        }
        Command::Superjack { lambda, space } => {
            let lambda: Partition = lambda.parse()?;
            let s = shape(space);
            let p = super_jack(&lambda, s)?;
            poly_output(cli, "superjack", &p, s, theta.as_ref())
        }
        Command::Superschur { lambda, space } => {
            let lambda: Partition = lambda.parse()?;
            let s = shape(space);
            poly_output(cli, "superschur", &super_schur(&lambda, s), s, theta.as_ref())
        }
        Command::Fpoly { a, m, mt, space, oracle } => {
            let mbar = HookShape::new(*m, *mt);
            let a = parse_vector(a, mbar)?;
            let s = shape(space);
            let f = f_polynomial(&a, s, mbar)?;
            if !oracle {
                return poly_output(cli, "fpoly", &f.value, s, theta.as_ref());
            }
            let direct = direct_series_oracle(&a, s, mbar, oracle_bound(&a))?;
            let agree = direct == f.value;
            let out = if cli.json {
                let mut v = envelope("fpoly", &json!({ "polynomial": f.value, "oracle": direct, "agree": agree }))?;
                v["a"] = serde_json::to_value(&a).map_err(json_error)?;
                pretty(&v)?
            } else {
                format!(
                    "{}\noracle: {}\n",
                    f.value.render(&variable_names(s)),
                    if agree { "agree" } else { "DISAGREE" }
                )
            };
            Ok(if agree { Outcome::ok(out) } else { Outcome::failed(out) })
        }
        Command::Eigenfunction { lambda, space, labels, spec } => {
            let lambda: Partition = lambda.parse()?;
            let spec = parse_spec(spec)?;
            let (s, mbar) = (shape(space), label_shape(labels, &lambda));
            let e = solve_eigenfunction(&lambda, &spec, s, mbar)?;
            eigen_output(cli, "eigenfunction", e, theta.as_ref())
        }
        Command::SuperjackSeries { lambda, space, labels } => {
            let lambda: Partition = lambda.parse()?;
            let (s, mbar) = (shape(space), label_shape(labels, &lambda));
            let e = super_jack_series(&lambda, s, mbar)?;
            eigen_output(cli, "superjack-series", e, theta.as_ref())
        }
        Command::Verify { check } => verify(cli, check),
        Command::Batch { deg, space, labels, spec, out } => {
            let spec = parse_spec(spec)?;
            let s = shape(space);
            let mbar = HookShape::new(labels.m.unwrap_or(s.n), labels.mt.unwrap_or(s.nt));
            let files = batch_tables(*deg, s, mbar, &spec, out)?;
            let listing: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
            let text = if cli.json {
                pretty(&envelope("batch", &json!({ "files": listing }))?)?
            } else {
                listing.join("\n") + "\n"
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn verify(cli: &Cli, check: &Check) -> Result<Outcome> {
    let (name, report) = match check {
        Check::Identity { kind, l, k, spec, space, labels, deg } => {
            let s = shape(space);
            let mbar = HookShape::new(labels.m.unwrap_or(0), labels.mt.unwrap_or(0));
            let kind = match kind.as_str() {
                "EId" => IdentityKind::E(required(*l, "--l")?),
                "DId" => IdentityKind::D(required(*k, "--k")?),
                "LId" => IdentityKind::L(parse_spec(spec)?),
                other => return Err(Error::InvalidArgument(format!("unknown identity {other:?}"))),
            };
            ("verify identity", verify_identity(&kind, s, mbar, *deg)?)
        }
        Check::Adjoint { spec, space, deg } => {
            ("verify adjoint", verify_adjointness(&parse_spec(spec)?, shape(space), *deg)?)
        }
        Check::Action { op, space, labels, deg, max_entry } => {
            let ops: Vec<Action> = if op == "all" { ACTIONS.to_vec() } else { vec![op.parse()?] };
            let mbar = HookShape::new(labels.m.unwrap_or(0), labels.mt.unwrap_or(0));
            ("verify action", verify_action(&ops, shape(space), mbar, *deg, *max_entry)?)
        }
        Check::Stanley { n, m, deg } => ("verify stanley", verify_stanley(*n, *m, *deg)?),
        Check::MIndependence { lambda, spec, space, labels, k, kt } => {
            let lambda: Partition = lambda.parse()?;
            let mbar = label_shape(labels, &lambda);
            let r = check_m_independence(&lambda, &parse_spec(spec)?, shape(space), mbar, HookShape::new(*k, *kt))?;
            ("verify m-independence", r)
        }
    };
    report_output(cli, name, &report)
}

fn report_output(cli: &Cli, name: &str, report: &Report) -> Result<Outcome> {
    let text = if cli.json {
        pretty(&envelope(name, report)?)?
    } else {
        let mut t = format!("{} checked={}\n", if report.pass { "PASS" } else { "FAIL" }, report.checked);
        for f in &report.failures {
            let _ = writeln!(t, "  {f}");
        }
        t
    };
    Ok(if report.pass { Outcome::ok(text) } else { Outcome::failed(text) })
}

fn poly_output(cli: &Cli, name: &str, p: &MultiPoly, space: VarSpace, theta: Option<&Rational>) -> Result<Outcome> {
    let p = match theta {
        Some(t) => p.eval_theta(t)?,
        None => p.clone(),
    };
    let text = if cli.json { pretty(&envelope(name, &p)?)? } else { p.render(&variable_names(space)) + "\n" };
    Ok(Outcome::ok(text))
}

fn eigen_output(cli: &Cli, name: &str, e: Eigenfunction, theta: Option<&Rational>) -> Result<Outcome> {
    let e = match theta {
        Some(t) => evaluate_eigenfunction(e, t)?,
        None => e,
    };
    let text = if cli.json {
        pretty(&envelope(name, &e)?)?
    } else {
        let mut t = String::new();
        let _ = writeln!(t, "lambda: {}", e.lambda);
        let _ = writeln!(t, "nbar: {}  mbar: {}", e.nbar, e.mbar);
        let _ = writeln!(t, "spec: {}", e.spec);
        let _ = writeln!(t, "eigenvalue: {}", e.eigenvalue);
        for (a, u) in &e.coefficients {
            let _ = writeln!(t, "u{a} = {u}");
        }
        let _ = writeln!(t, "P = {}", e.value.render(&variable_names(e.nbar)));
        t
    };
    Ok(Outcome::ok(text))
}

/// Specialises a symbolic eigenfunction at θ after re-checking that the
/// eigenvalue ladder stays non-degenerate there.
fn evaluate_eigenfunction(e: Eigenfunction, theta: &Rational) -> Result<Eigenfunction> {
    if !is_admissible_at(&e.lambda, &e.spec, e.nbar, e.mbar, theta)? {
        return Err(Error::Degenerate(format!("{} at θ = {theta}", e.lambda)));
    }
    let at = |r: &Rf| r.eval(theta).map(Rf::from_rational);
    let coefficients = e.coefficients.iter().map(|(a, u)| Ok((a.clone(), at(u)?))).collect::<Result<_>>()?;
    let spec = OperatorSpec {
        alpha: [at(&e.spec.alpha[0])?, at(&e.spec.alpha[1])?, at(&e.spec.alpha[2])?],
        beta: [at(&e.spec.beta[0])?, at(&e.spec.beta[1])?],
    };
    Ok(Eigenfunction { eigenvalue: at(&e.eigenvalue)?, value: e.value.eval_theta(theta)?, coefficients, spec, ..e })
}

/// Writes `degree-k.json` for k = 0..=d into `dir` and returns the paths.
///
/// Each entry carries the eigenfunction, its eigenvalue, the u-coefficients
/// and the eigen-equation residual, which must be the zero polynomial.
pub fn batch_tables(
    d: usize,
    nbar: HookShape,
    mbar: HookShape,
    spec: &OperatorSpec,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
    let basis = eigenbasis(spec, nbar, mbar, d)?;
    let mut files = Vec::new();
    for k in 0..=d {
        let mut entries = Vec::new();
        for e in basis.iter().filter(|e| e.lambda.weight() == k) {
            let residual = e.residual()?;
            if !residual.is_zero() {
                return Err(Error::InvalidArgument(format!("nonzero residual for {}", e.lambda)));
            }
            let mut v = serde_json::to_value(e).map_err(json_error)?;
            v["residual"] = serde_json::to_value(&residual).map_err(json_error)?;
            entries.push(v);
        }
        let table = json!({
            "schema": SCHEMA,
            "command": "batch",
            "degree": k,
            "nbar": [nbar.n, nbar.nt],
            "mbar": [mbar.n, mbar.nt],
            "spec": spec,
            "entries": entries,
        });
        let path = dir.join(format!("degree-{k}.json"));
        std::fs::write(&path, pretty(&table)?)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        files.push(path);
    }
    Ok(files)
}

/// Wraps a serialisable result with the schema tag and command name.
pub fn envelope<T: Serialize + ?Sized>(command: &str, value: &T) -> Result<Value> {
    let v = serde_json::to_value(value).map_err(json_error)?;
    let mut out = json!({ "schema": SCHEMA, "command": command });
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                out[k] = x;
            }
        }
        other => out["result"] = other,
    }
    Ok(out)
}

fn pretty(v: &Value) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(json_error)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::InvalidArgument(format!("json: {e}"))
}

fn shape(s: &Space) -> HookShape {
    HookShape::new(s.n, s.nt)
}

fn label_shape(l: &Labels, lambda: &Partition) -> HookShape {
    match (l.m, l.mt) {
        (None, None) => minimal_mbar(lambda),
        (m, mt) => HookShape::new(m.unwrap_or(0), mt.unwrap_or(0)),
    }
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{flag} is required")))
}

fn parse_spec(s: &SpecArgs) -> Result<OperatorSpec> {
    let a = s.param_a.as_deref().map(parse_rational).transpose()?;
    let b = s.param_b.as_deref().map(parse_rational).transpose()?;
    OperatorSpec::resolve(&s.spec, a.as_ref(), b.as_ref())
}

fn parse_vector(s: &str, mbar: HookShape) -> Result<IntVector> {
    let entries = s
        .split(',')
        .map(|e| e.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer vector {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != mbar.total() {
        return Err(Error::InvalidArgument(format!("vector {s:?} needs {} entries for m̄ = {mbar}", mbar.total())));
    }
    IntVector::new(entries, mbar.n)
}

/// Cross orders beyond the largest suffix sum cannot contribute.
fn oracle_bound(a: &IntVector) -> u32 {
    a.suffix_sums().into_iter().max().unwrap_or(0).max(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cms(args: &[&str]) -> Outcome {
        run(std::iter::once("cms").chain(args.iter().copied()))
    }

    #[test]
    fn superjack_text() {
        let o = cms(&["superjack", "--lambda", "1", "--n", "1", "--nt", "1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), "x1 - (1/θ)·xt1");
    }

    #[test]
    fn fpoly_below_zero_is_zero() {
        let o = cms(&["fpoly", "--a", "-1", "--m", "1", "--mt", "0", "--n", "1", "--nt", "0"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), "0");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(cms(&["nonsense"]).code, 2);
        assert_eq!(cms(&["superjack", "--lambda", "x", "--n", "1"]).code, 2);
        assert_eq!(cms(&["--help"]).code, 0);
    }

    #[test]
    fn json_envelope() {
        let o = cms(&["superjack", "--lambda", "2", "--n", "1", "--nt", "1", "--json"]);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        let back: MultiPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, *super_jack(&"2".parse().unwrap(), HookShape::new(1, 1)).unwrap());
    }

    #[test]
    fn spec_presets() {
        let s = SpecArgs { spec: "jacobi".into(), param_a: None, param_b: Some("2".into()) };
        let (a, _) = OperatorSpec::default_params();
        assert_eq!(parse_spec(&s).unwrap(), OperatorSpec::jacobi(&a, &Rational::from_integer(2.into())));
        let s = SpecArgs { spec: "a2=1,b1=-1/2".into(), param_a: None, param_b: None };
        assert_eq!(parse_spec(&s).unwrap().to_string(), "a2=1,b1=-1/2");
    }
}
