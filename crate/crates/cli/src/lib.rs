//! Command-line front end. [`run`] parses arguments, dispatches to
//! `wittid-core` and returns the process exit code: 0 for pass or true, 1 for
//! fail or false, 2 for usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wittid_core::freealg::parse_polynomial;
use wittid_core::models::{basis_substitutions, evaluate, satisfies_multilinear, seeded_substitution};
use wittid_core::tideal::{monomial_is_identity, monomial_normal_form, NormalForm};
use wittid_core::verify::{
    char_contrast, independence_check, minimality_sweep, no_finite_basis_demo, recheck_space_witness, recheck_witness,
    variable_independence_check, verify_basis_theorem, MinimalityReport, SeparationCertificate,
};
use wittid_core::{
    BasisFamily, FieldSpec, GradedLiePolynomial, GradedModel, ModelSpec, SweepConfig, VerificationReport, W1Range,
    WittAlgebra,
};

#[derive(Debug, Parser)]
#[command(
    name = "wittid",
    version,
    about = "Graded identities of U1 and W1 in characteristic two"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    /// Brackets of degrees ≥ -1.
    Thm12,
    /// Brackets of degrees ≥ 0.
    Thm45,
}

impl From<RangeArg> for W1Range {
    fn from(r: RangeArg) -> Self {
        match r {
            RangeArg::Thm12 => W1Range::Full,
            RangeArg::Thm45 => W1Range::NonNegative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    U1,
    W1,
}

impl From<AlgebraArg> for WittAlgebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::U1 => WittAlgebra::U1,
            AlgebraArg::W1 => WittAlgebra::W1,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value = "gf2")]
    pub field: FieldSpec,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a monomial modulo the U1 family.
    NormalForm {
        monomial: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a polynomial is a graded identity of a model.
    IsIdentity {
        #[arg(long)]
        model: ModelSpec,
        polynomial: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a polynomial at basis tuples, or at a seeded random substitution.
    Evaluate {
        #[arg(long)]
        model: ModelSpec,
        polynomial: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare identities with family consequences on every canonical space.
    VerifyBasis {
        #[arg(long)]
        model: ModelSpec,
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 4)]
        dmax: i64,
        /// Bracket range of the W1 family.
        #[arg(long, value_enum, default_value = "thm12")]
        range: RangeArg,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Per-space time cap in milliseconds.
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Extra degree tuple to check, e.g. `--probe=-1,1`.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        probe: Vec<i64>,
        #[arg(long)]
        timings: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Separation certificates by finite models.
    #[command(group(ArgGroup::new("mode").required(true).args(["r", "variable", "demo"])))]
    Independence {
        #[arg(long, requires = "s", allow_hyphen_values = true)]
        r: Option<i64>,
        #[arg(long, requires = "r", allow_hyphen_values = true)]
        s: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        variable: Option<i64>,
        #[arg(long)]
        demo: Option<usize>,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Independence of each family member within a bound.
    Minimality {
        #[arg(long, value_enum)]
        model: AlgebraArg,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Which brackets f(a,b) are identities of U1 over GF(p).
    Contrast {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-validate a saved verification report and re-check its witnesses.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Exit codes.
pub const PASS: i32 = 0;
pub const FAIL: i32 = 1;
pub const USAGE: i32 = 2;

struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(USAGE, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return PASS;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::NormalForm { monomial, common } => normal_form(&monomial, common, out),
        Command::IsIdentity {
            model,
            polynomial,
            common,
        } => is_identity(model, &polynomial, common, out),
        Command::Evaluate {
            model,
            polynomial,
            seed,
            common,
        } => evaluate_cmd(model, &polynomial, seed, common, out),
        Command::VerifyBasis {
            model,
            nmin,
            nmax,
            dmax,
            range,
            threads,
            budget_ms,
            probe,
            timings,
            out: path,
            common,
        } => {
            let family = match model {
                ModelSpec::W1 => BasisFamily::w1(range.into()),
                _ => BasisFamily::u1(),
            };
            let config = SweepConfig {
                model,
                family,
                n_min: nmin,
                n_max: nmax,
                degree_bound: dmax,
                field: common.field,
                threads,
                budget_ms,
                extra_tuples: if probe.is_empty() { Vec::new() } else { vec![probe] },
                record_timings: timings,
            };
            verify_basis(&config, path, common.format, out)
        }
        Command::Independence {
            r,
            s,
            variable,
            demo,
            bound,
            format,
        } => independence(r.zip(s), variable, demo, bound, format, out),
        Command::Minimality {
            model,
            bound,
            out: path,
            format,
        } => minimality(model.into(), bound, path, format, out),
        Command::Contrast { p, bound, format } => contrast(p, bound, format, out),
        Command::Report { path, format } => report(&path, format, out),
    }
}

fn emit(out: &mut dyn Write, format: Format, value: &Value, text: &str) -> Result<(), Failure> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Text => write!(out, "{text}")?,
    }
    Ok(())
}

fn verdict(ok: bool) -> i32 {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn parse(text: &str, field: FieldSpec) -> Result<GradedLiePolynomial, Failure> {
    parse_polynomial(text, field)
        .map_err(|e| Failure(USAGE, format!("{e}\n  {text}\n  {:>width$}", "^", width = e.offset + 1)))
}

fn normal_form(text: &str, common: Common, out: &mut dyn Write) -> Outcome {
    let f = parse(text, common.field)?;
    let mut terms = f.terms();
    let (Some((m, _)), None) = (terms.next(), terms.next()) else {
        return Err(Failure(USAGE, "normal-form expects a single monomial".into()));
    };
    let nf = monomial_normal_form(m);
    let rendered = nf.to_polynomial(common.field).to_string();
    let coefficient = match &nf {
        NormalForm::Zero => Value::Null,
        NormalForm::Monomial { coefficient, .. } => json!(coefficient),
    };
    let value = json!({
        "input": m.to_string(),
        "field": common.field,
        "zero": nf.is_zero(),
        "coefficient": coefficient,
        "normalForm": rendered,
    });
    emit(out, common.format, &value, &format!("{rendered}\n"))?;
    Ok(PASS)
}

fn is_identity(model: ModelSpec, text: &str, common: Common, out: &mut dyn Write) -> Outcome {
    let f = parse(text, common.field)?;
    let m = GradedModel::from_spec(model, common.field)?;
    let (identity, method) = if f.is_multilinear() {
        (satisfies_multilinear(&m, &f)?, "evaluation")
    } else {
        let algebra = m.witt_algebra().filter(|_| common.field.characteristic() == 2);
        let mut monomials = f.monomials();
        match (algebra, monomials.next(), monomials.next()) {
            (Some(a), Some(mono), None) => (monomial_is_identity(mono, a), "parity rule"),
            _ => {
                return Err(Failure(
                    USAGE,
                    "only multilinear polynomials, or single monomials of u1/w1 in characteristic 2, are decided"
                        .into(),
                ))
            }
        }
    };
    let value = json!({
        "model": model,
        "field": common.field,
        "polynomial": f.to_string(),
        "identity": identity,
        "method": method,
    });
    let text = format!(
        "{} {} a graded identity of {} over {} ({method})\n",
        f,
        if identity { "is" } else { "is not" },
        model,
        common.field
    );
    emit(out, common.format, &value, &text)?;
    Ok(verdict(identity))
}

fn evaluate_cmd(model: ModelSpec, text: &str, seed: Option<u64>, common: Common, out: &mut dyn Write) -> Outcome {
    let f = parse(text, common.field)?;
    let m = GradedModel::from_spec(model, common.field)?;
    let vars: Vec<_> = f.variables().into_iter().collect();
    let subs = match seed {
        Some(seed) => vec![seeded_substitution(&m, &vars, seed)],
        None => basis_substitutions(&m, &vars),
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    for sub in &subs {
        let value = m.format_element(&evaluate(&f, sub, &m)?);
        let assignment: Vec<(String, String)> = sub.iter().map(|(v, x)| (v.to_string(), m.format_element(x))).collect();
        let shown: Vec<String> = assignment.iter().map(|(v, x)| format!("{v} -> {x}")).collect();
        text.push_str(&format!("{} : {value}\n", shown.join(", ")));
        let assignment: serde_json::Map<String, Value> =
            assignment.into_iter().map(|(v, x)| (v, Value::String(x))).collect();
        rows.push(json!({ "assignment": assignment, "value": value }));
    }
    if subs.is_empty() {
        text.push_str("no admissible nonzero substitution: some component is zero\n");
    }
    let value = json!({ "model": model, "field": common.field, "polynomial": f.to_string(), "seed": seed, "evaluations": rows });
    emit(out, common.format, &value, &text)?;
    Ok(PASS)
}

fn write_json(path: &PathBuf, value: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

fn verify_basis(config: &SweepConfig, path: Option<PathBuf>, format: Format, out: &mut dyn Write) -> Outcome {
    let report = verify_basis_theorem(config)?;
    let json = serde_json::to_value(&report)?;
    if let Some(path) = &path {
        write_json(path, &json)?;
    }
    let mut text = format!(
        "{} against {} over {}: {} passed, {} failed, {} skipped\n",
        config.model, config.family, config.field, report.summary.passed, report.summary.failed, report.summary.skipped
    );
    for s in report.failures() {
        let w = s.witness.as_ref().expect("failures carry witnesses");
        text.push_str(&format!(
            "  {:?}: identities {} consequences {} sound={} witness {}\n",
            s.degrees, s.dim_identity, s.dim_consequence, s.sound, w.polynomial
        ));
    }
    for note in &report.notes {
        text.push_str(&format!("  note: {note}\n"));
    }
    emit(out, format, &json, &text)?;
    Ok(verdict(report.all_passed()))
}

fn certificate_line(c: &SeparationCertificate) -> String {
    format!(
        "{} separated by {}: fails target={}, satisfies {}/{} others{}{}\n",
        c.target,
        c.model,
        c.fails_target,
        c.others_checked - c.violated_others.len(),
        c.others_checked,
        if c.collision_merged { " (merged grading)" } else { "" },
        if c.valid { "" } else { " INVALID" },
    )
}

fn independence(
    pair: Option<(i64, i64)>,
    variable: Option<i64>,
    demo: Option<usize>,
    bound: i64,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    if let Some(count) = demo {
        let d = no_finite_basis_demo(count)?;
        let text: String = d.rows.iter().map(certificate_line).collect();
        emit(out, format, &serde_json::to_value(&d)?, &text)?;
        return Ok(verdict(d.all_valid));
    }
    let c = match (pair, variable) {
        (Some((r, s)), _) => independence_check(r, s, bound)?,
        (None, Some(d)) => variable_independence_check(d, bound)?,
        (None, None) => unreachable!("clap requires a mode"),
    };
    emit(out, format, &serde_json::to_value(&c)?, &certificate_line(&c))?;
    Ok(verdict(c.valid))
}

/// Witnesses in the probe spaces all re-check.
fn minimality_witnesses_valid(report: &MinimalityReport) -> Result<bool, Failure> {
    for v in &report.variants {
        for s in &v.probes {
            if !recheck_space_witness(report.algebra.into(), &v.family, FieldSpec::GF2, s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn minimality(algebra: WittAlgebra, bound: i64, path: Option<PathBuf>, format: Format, out: &mut dyn Write) -> Outcome {
    let report = minimality_sweep(algebra, bound)?;
    let json = serde_json::to_value(&report)?;
    if let Some(path) = &path {
        write_json(path, &json)?;
    }
    let mut text = String::new();
    for v in &report.variants {
        let independent = v.members.len() - v.redundant.len();
        text.push_str(&format!(
            "{}: {independent}/{} members independent\n",
            v.family,
            v.members.len()
        ));
        for m in &v.redundant {
            text.push_str(&format!("  redundant: {m}\n"));
        }
        for s in v.probes.iter().filter(|s| !s.passed()) {
            text.push_str(&format!(
                "  {:?}: identities {} consequences {}\n",
                s.degrees, s.dim_identity, s.dim_consequence
            ));
        }
    }
    emit(out, format, &json, &text)?;
    let ok = minimality_witnesses_valid(&report)?
        && (algebra == WittAlgebra::W1 || report.variants.iter().all(|v| v.redundant.is_empty()));
    Ok(verdict(ok))
}

fn contrast(p: u64, bound: i64, format: Format, out: &mut dyn Write) -> Outcome {
    let report = char_contrast(p, bound)?;
    let mut text = format!("U1 over GF({p}), |a|,|b| <= {bound}\n");
    for r in &report.rows {
        let nf = r
            .normal_form_coefficient
            .map(|c| format!("  normal form coefficient {c}"))
            .unwrap_or_default();
        text.push_str(&format!(
            "  f({},{}) {} [e{}, e{}] = {}{nf}\n",
            r.a,
            r.b,
            if r.holds { "holds" } else { "fails" },
            r.a,
            r.b,
            r.value
        ));
    }
    emit(out, format, &serde_json::to_value(&report)?, &text)?;
    Ok(PASS)
}

fn report(path: &PathBuf, format: Format, out: &mut dyn Write) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?;
    let report: VerificationReport =
        serde_json::from_str(&text).map_err(|e| Failure(FAIL, format!("not a verification report: {e}")))?;
    let mut problems = report.consistency_problems();
    for s in report.spaces.iter().filter(|s| s.witness.is_some()) {
        if !recheck_witness(&report.config, s)? {
            problems.push(format!("space {:?}: witness does not re-check", s.degrees));
        }
    }
    let value = json!({
        "valid": problems.is_empty(),
        "problems": problems,
        "summary": report.summary,
        "allPassed": report.all_passed(),
    });
    let mut text = format!(
        "{}: {} passed, {} failed, {} skipped\n",
        path.display(),
        report.summary.passed,
        report.summary.failed,
        report.summary.skipped
    );
    for p in &problems {
        text.push_str(&format!("  problem: {p}\n"));
    }
    text.push_str(if problems.is_empty() {
        "report is valid\n"
    } else {
        "report is NOT valid\n"
    });
    emit(out, format, &value, &text)?;
    Ok(verdict(problems.is_empty()))
}
