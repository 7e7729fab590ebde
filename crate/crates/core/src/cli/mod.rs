//! The `curvemin` command line: argument parsing, commands, and rendering.
//!
//! Exit codes: 0 on success, 2 for malformed or degenerate input, 3 for a
//! singular curve.

pub mod document;

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::Zero;

use crate::arith::{factorize, Integer};
use crate::batch;
use crate::elliptic::{laska_minimize, WeierstrassEquation};
use crate::error::Error;
use crate::forms::BinaryForm;
use crate::superelliptic::{certify, SuperellipticCurve};

pub use document::{
    BatchLine, CertificateEntry, CurveDocument, DecimalInt, DecimalRational, DiscriminantDoc,
    ErrorDoc, IdealDoc, Order, ResultDocument, TransformationDoc, TransvectantDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: if e.is_singular() {
                EXIT_SINGULAR
            } else {
                EXIT_MALFORMED
            },
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::malformed(format!("malformed document: {e}"))
    }
}

impl From<CliError> for ErrorDoc {
    fn from(e: CliError) -> Self {
        ErrorDoc {
            code: e.code,
            message: e.message,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "curvemin", version, about = "Minimal-discriminant models of curves over Q")]
pub struct Cli {
    /// Emit machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Include the per-prime minimality status of the output model.
    #[arg(long, global = true)]
    pub certificate: bool,

    /// Process FILE as one JSON document per line.
    #[arg(long, global = true, value_name = "FILE")]
    pub batch: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal model of a long Weierstrass equation.
    EllipticMinimize { input: Option<PathBuf> },
    /// Scaling reduction of y^n = f(x).
    SuperMinimize { input: Option<PathBuf> },
    /// Dispatches on the document kind.
    Minimize { input: Option<PathBuf> },
    /// Exact discriminant and its factorization.
    Discriminant {
        input: Option<PathBuf>,
        /// Coefficients of f(x, 1), constant term first, comma separated.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        coeffs: Option<String>,
    },
    /// The r-th transvectant of two forms (coefficients constant term first).
    Transvectant {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(short, long)]
        r: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Elliptic,
    Superelliptic,
    Any,
}

fn weierstrass_from(doc: &CurveDocument) -> CliResult<WeierstrassEquation> {
    match doc {
        CurveDocument::Elliptic { a } => Ok(WeierstrassEquation::new(a.clone().map(|c| c.0))?),
        _ => Err(CliError::malformed("expected an elliptic document")),
    }
}

fn superelliptic_from(doc: &CurveDocument) -> CliResult<SuperellipticCurve> {
    match doc {
        CurveDocument::Superelliptic { n, .. } => {
            let coeffs = doc.ascending_coeffs().expect("superelliptic document");
            Ok(SuperellipticCurve::new(*n, coeffs)?)
        }
        _ => Err(CliError::malformed("expected a superelliptic document")),
    }
}

fn certificate_doc(delta: &Integer, weight: u32) -> Vec<CertificateEntry> {
    let fac = factorize(delta).expect("nonzero discriminant");
    certify(&fac, weight)
        .into_iter()
        .map(|(p, status)| CertificateEntry {
            p: DecimalInt(p),
            status: status.into(),
        })
        .collect()
}

pub fn elliptic_minimize(doc: &CurveDocument, certificate: bool) -> CliResult<ResultDocument> {
    let e = weierstrass_from(doc)?;
    let (model, t) = laska_minimize(&e)?;
    let before = e.discriminant();
    let after = model.discriminant();
    let ideal = factorize(&after)?;
    Ok(ResultDocument {
        minimal_model: CurveDocument::elliptic(model.coeffs()),
        transformation: (&t).into(),
        discriminant_before: DecimalInt(before),
        discriminant_after: DecimalInt(after.clone()),
        factored_minimal_discriminant: (&ideal).into(),
        certificate: certificate.then(|| certificate_doc(&after, 12)),
        point: None,
    })
}

pub fn super_minimize(doc: &CurveDocument, certificate: bool) -> CliResult<ResultDocument> {
    let c = superelliptic_from(doc)?;
    let (reduced, scaling) = c.reduce();
    let ideal = factorize(reduced.discriminant())?;
    let point = match doc {
        CurveDocument::Superelliptic { point, .. } => point.clone(),
        _ => None,
    };
    Ok(ResultDocument {
        minimal_model: CurveDocument::superelliptic(reduced.n(), reduced.coeffs()),
        transformation: TransformationDoc::scaling(scaling.u),
        discriminant_before: DecimalInt(scaling.old_delta),
        discriminant_after: DecimalInt(scaling.new_delta),
        factored_minimal_discriminant: (&ideal).into(),
        certificate: certificate
            .then(|| certificate_doc(reduced.discriminant(), reduced.scaling_weight())),
        point,
    })
}

pub fn minimize(doc: &CurveDocument, mode: Mode, certificate: bool) -> CliResult<ResultDocument> {
    match (mode, doc) {
        (Mode::Elliptic | Mode::Any, CurveDocument::Elliptic { .. }) => {
            elliptic_minimize(doc, certificate)
        }
        (Mode::Superelliptic | Mode::Any, CurveDocument::Superelliptic { .. }) => {
            super_minimize(doc, certificate)
        }
        (Mode::Elliptic, _) => Err(CliError::malformed("expected an elliptic document")),
        (Mode::Superelliptic, _) => Err(CliError::malformed("expected a superelliptic document")),
        (Mode::Any, _) => Err(CliError::malformed("bare forms have no minimal model")),
    }
}

/// Discriminant of a curve or form; zero is reported without a factorization.
pub fn discriminant(doc: &CurveDocument) -> CliResult<DiscriminantDoc> {
    let delta = match doc {
        CurveDocument::Elliptic { a } => {
            WeierstrassEquation::from_coeffs(a.clone().map(|c| c.0)).discriminant()
        }
        _ => {
            let coeffs = doc.ascending_coeffs().expect("form-like document");
            let form = BinaryForm::from_ascending(coeffs)?;
            form.discriminant()?.to_integer()
        }
    };
    let factorization = if delta.is_zero() {
        None
    } else {
        Some(IdealDoc::from(&factorize(&delta)?))
    };
    Ok(DiscriminantDoc {
        discriminant: DecimalInt(delta),
        factorization,
    })
}

pub fn transvectant(f: &[Integer], g: &[Integer], r: usize) -> CliResult<TransvectantDoc> {
    let f = BinaryForm::from_ascending(f.iter().cloned())?;
    let g = BinaryForm::from_ascending(g.iter().cloned())?;
    let t = f.transvectant(&g, r)?;
    Ok(TransvectantDoc {
        order: Order::Ascending,
        coefficients: t.ascending().into_iter().map(DecimalRational).collect(),
    })
}

pub fn parse_coeff_list(s: &str) -> CliResult<Vec<Integer>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',')
        .map(|c| document::parse_decimal(c.trim()).map_err(CliError::malformed))
        .collect()
}

pub fn parse_document(src: &str) -> CliResult<CurveDocument> {
    Ok(serde_json::from_str(src.trim())?)
}

pub fn render_result(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let model = match &doc.minimal_model {
        CurveDocument::Elliptic { a } => {
            let a: Vec<String> = a.iter().map(ToString::to_string).collect();
            format!("[a1, a2, a3, a4, a6] = [{}]", a.join(", "))
        }
        CurveDocument::Superelliptic { .. } => {
            match superelliptic_from(&doc.minimal_model) {
                Ok(c) => c.to_string(),
                Err(_) => "?".to_string(),
            }
        }
        CurveDocument::Form { .. } => String::new(),
    };
    let t = &doc.transformation;
    let mut transformation = format!("u = {}", t.u);
    for (name, v) in [("r", &t.r), ("s", &t.s), ("t", &t.t)] {
        if let Some(v) = v {
            let _ = write!(transformation, ", {name} = {v}");
        }
    }
    let rows = [
        ("minimal model", model),
        ("transformation", transformation),
        ("discriminant before", doc.discriminant_before.to_string()),
        ("discriminant after", doc.discriminant_after.to_string()),
        ("minimal ideal", doc.factored_minimal_discriminant.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<20} {v}");
    }
    if let Some(cert) = &doc.certificate {
        for entry in cert {
            let status = match entry.status {
                document::Status::CertifiedMinimal => "certified minimal",
                document::Status::Inconclusive => "inconclusive",
            };
            let _ = writeln!(out, "{:<20} {status}", format!("  p = {}", entry.p));
        }
    }
    if let Some(point) = &doc.point {
        let _ = writeln!(out, "{:<20} {point}", "marked point");
    }
    out
}

fn render_discriminant(doc: &DiscriminantDoc) -> String {
    match &doc.factorization {
        Some(f) => format!("{} = {}\n", doc.discriminant, f),
        None => format!("{}\n", doc.discriminant),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents always serialize")
}

/// One batch line, with failures folded into the output.
fn run_line(command: &Command, line: &str, certificate: bool) -> (i32, BatchLine) {
    let outcome = parse_document(line).and_then(|doc| match command {
        Command::EllipticMinimize { .. } => {
            minimize(&doc, Mode::Elliptic, certificate).map(|r| BatchLine::Result(Box::new(r)))
        }
        Command::SuperMinimize { .. } => {
            minimize(&doc, Mode::Superelliptic, certificate).map(|r| BatchLine::Result(Box::new(r)))
        }
        Command::Minimize { .. } => {
            minimize(&doc, Mode::Any, certificate).map(|r| BatchLine::Result(Box::new(r)))
        }
        Command::Discriminant { .. } => discriminant(&doc).map(BatchLine::Discriminant),
        Command::Transvectant { .. } => Err(CliError::malformed("transvectant has no batch mode")),
    });
    match outcome {
        Ok(line) => (EXIT_OK, line),
        Err(e) => (e.code, BatchLine::Error { error: e.into() }),
    }
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> CliResult<String> {
    let mut buf = String::new();
    match path {
        Some(p) => {
            buf = std::fs::read_to_string(p)
                .map_err(|e| CliError::malformed(format!("{}: {e}", p.display())))?;
        }
        None => {
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| CliError::malformed(format!("stdin: {e}")))?;
        }
    }
    Ok(buf)
}

fn run_batch(cli: &Cli, path: &PathBuf, out: &mut dyn Write) -> CliResult<i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let results = batch::map(&lines, |line| run_line(&cli.command, line, cli.certificate));
    let mut code = EXIT_OK;
    for (line_code, line) in results {
        code = code.max(line_code);
        let text = if cli.json {
            to_json(&line) + "\n"
        } else {
            match &line {
                BatchLine::Result(r) => render_result(r),
                BatchLine::Discriminant(d) => render_discriminant(d),
                BatchLine::Error { error } => format!("error ({}): {}\n", error.code, error.message),
            }
        };
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::malformed(e.to_string()))?;
        if !cli.json {
            let _ = out.write_all(b"\n");
        }
    }
    Ok(code)
}

fn run_single(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<()> {
    let text = match &cli.command {
        Command::EllipticMinimize { input }
        | Command::SuperMinimize { input }
        | Command::Minimize { input } => {
            let mode = match &cli.command {
                Command::EllipticMinimize { .. } => Mode::Elliptic,
                Command::SuperMinimize { .. } => Mode::Superelliptic,
                _ => Mode::Any,
            };
            let doc = parse_document(&read_input(input.as_ref(), stdin)?)?;
            let result = minimize(&doc, mode, cli.certificate)?;
            if cli.json {
                to_json(&result) + "\n"
            } else {
                render_result(&result)
            }
        }
        Command::Discriminant { input, coeffs } => {
            let doc = match coeffs {
                Some(list) => CurveDocument::Form {
                    order: Order::Ascending,
                    f: parse_coeff_list(list)?.into_iter().map(DecimalInt).collect(),
                },
                None => parse_document(&read_input(input.as_ref(), stdin)?)?,
            };
            let d = discriminant(&doc)?;
            if cli.json {
                to_json(&d) + "\n"
            } else {
                render_discriminant(&d)
            }
        }
        Command::Transvectant { f, g, r } => {
            let t = transvectant(&parse_coeff_list(f)?, &parse_coeff_list(g)?, *r)?;
            if cli.json {
                to_json(&t) + "\n"
            } else {
                let coeffs: Vec<String> = t.coefficients.iter().map(|c| c.0.to_string()).collect();
                format!("[{}]\n", coeffs.join(", "))
            }
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::malformed(e.to_string()))
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match &cli.batch {
        Some(path) => run_batch(cli, path, out),
        None => run_single(cli, stdin, out).map(|()| EXIT_OK),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    run(
        &cli,
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}
