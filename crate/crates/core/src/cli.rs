//! Command-line front end: argument parsing, dispatch and rendering.
//!
//! Exit codes: 0 when every certificate passed, 1 for usage or input errors,
//! 2 when a certificate is falsified.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{self, csv_field, to_json, Format};
use crate::series::OrderCertificate;
use crate::siegel::siegel_pade_solve;
use crate::tame::{certify_tame_minors, tame_solve, TameProblem};
use crate::vandermonde::{certify_case_a_factor, certify_case_b_factor, BlockSpec, PolySequence};
use crate::wild::{
    certify_common_factor, certify_specialization, minor_gcd_report, rank_check, twin_solve,
    Convention, WildProblem,
};
use crate::{Error, IntegerPoint, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "padexp",
    version,
    about = "Exact Hermite-Pade approximants to exp: solutions, minor factorizations and bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Explicit denominator with free numerator degrees (orders L0 + 1).
    Tame(TameArgs),
    /// Twin approximant (nu = l) with Table-1 style output.
    Twin(TwinArgs),
    /// Gcd of all maximal minors and the quotients.
    GcdMinors(GcdArgs),
    /// Small integer solution at a point, with Mahler and fg bounds.
    Siegel(SiegelArgs),
    /// Run one family of certificates.
    Certify(CertifyArgs),
    /// Regenerate a reference table.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
pub struct TameArgs {
    #[arg(long)]
    pub l0: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    /// Integer values for a1..am; symbolic when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<i64>>,
    /// text | json | csv
    #[arg(long, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TwinArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    /// text | json | csv
    #[arg(long, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GcdArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    /// Defaults to `l` (twin case).
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<usize>>,
    /// binomial | falling
    #[arg(long, default_value = "binomial")]
    pub convention: Convention,
    /// text | json | csv
    #[arg(long, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SiegelArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub a: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub nu: Vec<usize>,
    /// text | json
    #[arg(long, default_value = "json")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertifyKind {
    /// The twin common factor divides every minor; solution orders hold.
    TwinDivisibility,
    /// The claimed factor divides all (or sampled) maximal minors.
    CommonFactor,
    /// The claimed integer divides the minor gcd at a point.
    Specialization,
    /// Full row rank and nonzero rightmost minor.
    Rank,
    /// Tame minors equal their closed-form factorization.
    TameMinors,
    /// Confluent Vandermonde case A divisibility on random sequences.
    CaseA,
    /// Confluent Vandermonde case B divisibility on random sequences.
    CaseB,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub kind: CertifyKind,
    #[arg(long)]
    pub l0: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub l: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<i64>>,
    /// Block sizes for case-a / case-b.
    #[arg(long, value_delimiter = ',')]
    pub blocks: Option<Vec<usize>>,
    /// binomial | falling
    #[arg(long, default_value = "binomial")]
    pub convention: Convention,
    /// Sampled minors or random sequences.
    #[arg(long, default_value_t = 16)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// text | json
    #[arg(long, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// 1, 2 or 3.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,
    /// binomial | falling (tables 2 and 3)
    #[arg(long, default_value = "binomial")]
    pub convention: Convention,
    /// text | json | csv
    #[arg(long, default_value = "text")]
    pub format: Format,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IdentityFalsified(_)
        | Error::DivisibilityFalsified(_)
        | Error::NotDivisible
        | Error::NonConstantQuotient(_)
        | Error::CoefficientNonZero { .. } => EXIT_FALSIFIED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn parse_and_run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match run(&cli.command) {
        Ok(Outcome { report, passed }) => {
            let _ = out.write_all(report.as_bytes());
            if passed {
                EXIT_OK
            } else {
                EXIT_FALSIFIED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Rendered report and whether every certificate in it passed.
pub struct Outcome {
    pub report: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome {
            report,
            passed: true,
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Tame(a) => run_tame(a),
        Command::Twin(a) => run_twin(a),
        Command::GcdMinors(a) => {
            let nu = a.nu.clone().unwrap_or_else(|| a.l.clone());
            let p = WildProblem::new(a.l.clone(), nu, a.convention)?;
            Ok(Outcome::ok(report::render_gcd_report(
                &minor_gcd_report(&p)?,
                a.format,
            )))
        }
        Command::Siegel(a) => run_siegel(a),
        Command::Certify(a) => run_certify(a),
        Command::Tables(a) => Ok(Outcome::ok(match a.which {
            1 => report::render_table1(&report::table1()?, a.format),
            n => report::render_minor_table(&report::minor_table(n, a.convention)?, a.format),
        })),
    }
}

fn tuple<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn orders_text(out: &mut String, certificates: &[OrderCertificate]) {
    for (j, c) in certificates.iter().enumerate() {
        let _ = writeln!(out, "  j = {}: {}", j + 1, c.describe());
    }
}

fn coefficients_text<T: std::fmt::Display>(out: &mut String, name: &str, coeffs: &[T]) {
    let _ = writeln!(out, "{name}:");
    for (i, c) in coeffs.iter().enumerate() {
        let _ = writeln!(out, "  t^{i}: {c}");
    }
}

fn no_csv(what: &str) -> Error {
    Error::InvalidProblem(format!("{what} has no csv form"))
}

fn run_tame(a: &TameArgs) -> Result<Outcome> {
    let p = TameProblem::new(a.l0, a.l.clone())?;
    let point = a.a.as_deref().map(IntegerPoint::from_i64).transpose()?;
    let s = tame_solve(&p, point.as_ref())?;
    let report = match a.format {
        Format::Json => to_json(&json!({ "schema": 1, "solution": s })),
        Format::Csv => {
            let mut out = String::from("i,b\n");
            for (i, b) in s.normalized.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", csv_field(&b.to_string()));
            }
            out
        }
        Format::Text => {
            let mut out = format!("l0 = {}, l = {}", p.l0(), tuple(p.l()));
            if let Some(pt) = &point {
                let _ = write!(out, ", a = {pt}");
            }
            out.push('\n');
            coefficients_text(&mut out, "A0 (normalized)", &s.normalized);
            for (j, num) in s.numerators.iter().enumerate() {
                coefficients_text(&mut out, &format!("A{}", j + 1), num);
            }
            out.push_str("remainder orders:\n");
            orders_text(&mut out, &s.certificates);
            out
        }
    };
    Ok(Outcome::ok(report))
}

fn run_twin(a: &TwinArgs) -> Result<Outcome> {
    let table = report::twin_table(&a.l)?;
    let report = match a.format {
        Format::Csv => report::render_table1(&table, Format::Csv),
        Format::Json => {
            let s = twin_solve(&WildProblem::twin(a.l.clone(), Convention::Binomial)?)?;
            to_json(&json!({
                "schema": 1,
                "l": table.l,
                "b": table.b,
                "twin": table.twin,
                "solution": s,
            }))
        }
        Format::Text => {
            let s = twin_solve(&WildProblem::twin(a.l.clone(), Convention::Binomial)?)?;
            let mut out = report::render_table1(&table, Format::Text);
            let _ = writeln!(out, "common factor = {}", s.common_factor.factored_string());
            out.push_str("remainder orders:\n");
            orders_text(&mut out, &s.certificates);
            out
        }
    };
    Ok(Outcome::ok(report))
}

fn run_siegel(a: &SiegelArgs) -> Result<Outcome> {
    let p = WildProblem::new(a.l.clone(), a.nu.clone(), Convention::Binomial)?;
    let point = IntegerPoint::from_i64(&a.a)?;
    let r = siegel_pade_solve(&p, &point)?;
    let report = match a.format {
        Format::Json => to_json(&r),
        Format::Csv => return Err(no_csv("siegel")),
        Format::Text => {
            let mut out = format!(
                "l = {}, nu = {}, a = {point}\n",
                tuple(p.l()),
                tuple(p.nu())
            );
            let _ = writeln!(out, "solution = {}", tuple(&r.solution));
            let _ = writeln!(out, "norm = {}", r.norm);
            let _ = writeln!(out, "mahler bound = {}", r.mahler_bound);
            let _ = writeln!(out, "fg bound = {} (f = {}, g = {})", r.fg_bound, r.f, r.g);
            if let Some(bv) = &r.bv_bound {
                let _ = writeln!(out, "bv bound = {bv}");
            }
            let _ = writeln!(
                out,
                "D = {} (claimed factor {})",
                r.d, r.claimed_factor_value
            );
            coefficients_text(&mut out, "B0", &r.denominator);
            out.push_str("remainder orders:\n");
            orders_text(&mut out, &r.certificates);
            out
        }
    };
    Ok(Outcome::ok(report))
}

fn required<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::InvalidProblem(format!("--{flag} is required for this certificate")))
}

fn wild_problem(a: &CertifyArgs) -> Result<WildProblem> {
    let l = required(&a.l, "l")?.clone();
    let nu = a.nu.clone().unwrap_or_else(|| l.clone());
    WildProblem::new(l, nu, a.convention)
}

fn point_for(a: &CertifyArgs, m: usize, rng: &mut ChaCha8Rng) -> Result<IntegerPoint> {
    match &a.a {
        Some(v) => IntegerPoint::from_i64(v),
        None => IntegerPoint::random(m, 4.max(m as i64), rng),
    }
}

/// One line per check in text form; the json form carries the details.
fn run_certify(a: &CertifyArgs) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut lines: Vec<String> = Vec::new();
    let mut passed = true;
    let details = match a.kind {
        CertifyKind::TwinDivisibility => {
            let p = wild_problem(a)?;
            let cert = certify_common_factor(&p, usize::MAX, a.seed)?;
            let s = twin_solve(&p)?;
            lines.push(format!(
                "{} divides all {} minors",
                cert.claimed_factor.factored_string(),
                cert.total_minors
            ));
            for (j, c) in s.certificates.iter().enumerate() {
                lines.push(format!("twin order j = {}: {}", j + 1, c.describe()));
            }
            json!({ "divisibility": cert, "orders": s.certificates })
        }
        CertifyKind::CommonFactor => {
            let p = wild_problem(a)?;
            let cert = certify_common_factor(&p, a.trials, a.seed)?;
            lines.push(format!(
                "{} divides {} of {} maximal minors",
                cert.claimed_factor.factored_string(),
                cert.checked.len(),
                cert.total_minors
            ));
            json!(cert)
        }
        CertifyKind::Specialization => {
            let p = wild_problem(a)?;
            let point = point_for(a, p.m(), &mut rng)?;
            let c = certify_specialization(&p, &point)?;
            lines.push(format!(
                "at a = {point}: {} divides D = {}",
                c.claimed_value, c.d
            ));
            json!(c)
        }
        CertifyKind::Rank => {
            let p = wild_problem(a)?;
            let point = a.a.as_deref().map(IntegerPoint::from_i64).transpose()?;
            let r = rank_check(&p, point.as_ref())?;
            passed = r.rank == r.rows && r.rightmost_minor_nonzero;
            lines.push(format!(
                "rank {} of {} rows, rightmost minor {}",
                r.rank,
                r.rows,
                if r.rightmost_minor_nonzero {
                    "nonzero"
                } else {
                    "zero"
                }
            ));
            json!(r)
        }
        CertifyKind::TameMinors => {
            let p = TameProblem::new(*required(&a.l0, "l0")?, required(&a.l, "l")?.clone())?;
            passed = certify_tame_minors(&p)?;
            lines.push(format!(
                "tame minors for l0 = {}, l = {} {} the closed form",
                p.l0(),
                tuple(p.l()),
                if passed { "match" } else { "differ from" }
            ));
            json!({ "l0": p.l0(), "l": p.l(), "equal": passed })
        }
        CertifyKind::CaseA | CertifyKind::CaseB => {
            let spec = BlockSpec::new(required(&a.blocks, "blocks")?.clone())?;
            let mut quotients = Vec::with_capacity(a.trials);
            for _ in 0..a.trials {
                let seq = PolySequence::random_staircase(spec.total(), 3, &mut rng);
                let q = if a.kind == CertifyKind::CaseA {
                    certify_case_a_factor(&seq, &spec)?
                } else {
                    certify_case_b_factor(&seq, &spec)?
                };
                quotients.push(q);
            }
            lines.push(format!(
                "block sizes {}: factor divides {} random determinants",
                tuple(spec.sizes()),
                quotients.len()
            ));
            json!({ "blocks": spec.sizes(), "quotients": quotients })
        }
    };
    let status = if passed { "PASS" } else { "FAIL" };
    let report = match a.format {
        Format::Json => to_json(&json!({
            "schema": 1,
            "kind": format!("{:?}", a.kind),
            "passed": passed,
            "seed": a.seed,
            "details": details,
        })),
        Format::Csv => return Err(no_csv("certify")),
        Format::Text => lines.iter().map(|l| format!("{status} {l}\n")).collect(),
    };
    Ok(Outcome { report, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("padexp").chain(args.iter().copied());
        let code = parse_and_run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_and_usage_codes() {
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
        assert_eq!(run_args(&["--version"]).0, EXIT_OK);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["tables", "4"]).0, EXIT_USAGE);
        let (code, _, err) = run_args(&["gcd-minors", "--l", "1,1", "--nu", "2,1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("invalid problem"));
    }

    #[test]
    fn negative_point_values() {
        let (code, out, _) = run_args(&["tame", "--l0", "1", "--l", "1", "--a", "-1"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("a = (-1)"));
    }

    #[test]
    fn certify_text_lines() {
        let (code, out, _) = run_args(&["certify", "rank", "--l", "2,1", "--nu", "1,1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "PASS rank 2 of 2 rows, rightmost minor nonzero\n");
    }

    #[test]
    fn falsified_exit_code() {
        assert_eq!(
            exit_code(&Error::DivisibilityFalsified(String::new())),
            EXIT_FALSIFIED
        );
        assert_eq!(
            exit_code(&Error::CoefficientNonZero { index: 1 }),
            EXIT_FALSIFIED
        );
        assert_eq!(exit_code(&Error::Parse(String::new())), EXIT_USAGE);
    }
}
