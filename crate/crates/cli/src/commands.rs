use std::fmt::Write as _;

use formorbits::catalog::{self, CaseCounts, Catalog, Classification};
use formorbits::matrix::parse_matrix;
use formorbits::orbit::{fingerprint, hodge_dual, inverse_hodge_dual, orbit_tangent_rank, OrbitFingerprint, Special};
use formorbits::selfcheck::{self, SuiteResult};
use formorbits::{format_with, parse_expr, BladeStyle, Error, GlElement, KForm, KVector, VolumeForm};
use serde::Serialize;

use crate::{Cli, Command};

const OK: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const UNSUPPORTED: u8 = 3;

/// A command failure with its exit status.
struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InfiniteFamily { .. } | Error::UnsupportedCase { .. } | Error::UnsupportedDimension(_) => {
                UNSUPPORTED
            }
            Error::CountMismatch { .. } | Error::Catalog(_) => VERIFY_FAILED,
            _ => INPUT_ERROR,
        };
        Failure { status, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { status: INPUT_ERROR, message: message.into() }
}

/// Echo of the invocation in JSON reports.
#[derive(Debug, Default, Serialize)]
struct Input {
    #[serde(skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog: Option<String>,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    input: &'a Input,
    status: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Payload of a successful command: JSON value plus text rendering.
struct Output<T: Serialize> {
    status: u8,
    result: T,
    text: String,
}

impl<T: Serialize> Output<T> {
    fn ok(result: T, text: String) -> Self {
        Output { status: OK, result, text }
    }
}

pub fn run(cli: &Cli) -> u8 {
    let g = &cli.global;
    let mut input = Input { n: g.n, k: g.k, catalog: g.catalog.clone(), ..Input::default() };
    match &cli.command {
        Command::Analyze { expr } => {
            input.expr = Some(expr.clone());
            emit(cli, "analyze", &input, analyze(cli, expr))
        }
        Command::Classify { expr } => {
            input.expr = Some(expr.clone());
            emit(cli, "classify", &input, classify(cli, expr))
        }
        Command::Dual { expr, inverse } => {
            input.expr = Some(expr.clone());
            emit(cli, "dual", &input, dual(cli, expr, *inverse))
        }
        Command::Act { matrix, multivector, args } => {
            let (m, e) = match (matrix, args.as_slice()) {
                (Some(m), [e]) => (m.clone(), e.clone()),
                (None, [m, e]) => (m.clone(), e.clone()),
                _ => {
                    let f: Result<Output<()>, _> = Err(input_error("act takes a matrix and one expression"));
                    return emit(cli, "act", &input, f);
                }
            };
            input.matrix = Some(m.clone());
            input.expr = Some(e.clone());
            emit(cli, "act", &input, act(cli, &m, &e, *multivector))
        }
        Command::Table { verify } => emit(cli, "table", &input, table(*verify)),
        Command::Selfcheck { trials } => {
            input.seed = Some(g.seed);
            input.trials = Some(*trials);
            emit(cli, "selfcheck", &input, selfcheck_cmd(g.seed, *trials))
        }
        Command::Sample { id } => {
            input.id = Some(id.clone());
            input.seed = Some(g.seed);
            emit(cli, "sample", &input, sample(cli, id))
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, command: &str, input: &Input, out: Result<Output<T>, Failure>) -> u8 {
    let (status, result, text, error) = match out {
        Ok(o) => (o.status, Some(o.result), o.text, None),
        Err(f) => (f.status, None, String::new(), Some(f.message)),
    };
    if cli.global.json {
        let report = Report { command, input, status, result, error };
        println!("{}", serde_json::to_string(&report).expect("plain data"));
    } else {
        print!("{text}");
        if let Some(e) = error {
            eprintln!("error: {e}");
        }
    }
    status
}

fn require_n(cli: &Cli) -> Result<usize, Failure> {
    cli.global.n.ok_or_else(|| input_error("--n is required: a form does not determine its ambient dimension"))
}

fn parse_form(cli: &Cli, text: &str) -> Result<(KForm, BladeStyle), Failure> {
    let n = require_n(cli)?;
    let parsed = parse_expr(text)?;
    Ok((parsed.build(n, cli.global.k)?, parsed.style()))
}

fn parse_multivector(cli: &Cli, n: usize, text: &str) -> Result<(KVector, BladeStyle), Failure> {
    let parsed = parse_expr(text)?;
    Ok((parsed.build(n, cli.global.k)?, parsed.style()))
}

fn load_catalog(path: &str) -> Result<Catalog, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}")))?;
    if let Err(e) = serde_json::from_str::<serde_json::Value>(&text) {
        return Err(input_error(format!("{path} is not JSON: {e}")));
    }
    Ok(Catalog::from_json(&text)?)
}

/// The catalog for `(n, k)`: the override file when it covers this case,
/// the builtin one otherwise.
fn catalog_for(cli: &Cli, n: usize, k: usize) -> Result<std::sync::Arc<Catalog>, Failure> {
    if let Some(path) = &cli.global.catalog {
        let c = load_catalog(path)?;
        if (c.n(), c.k()) == (n, k) {
            return Ok(std::sync::Arc::new(c));
        }
    }
    Ok(catalog::builtin_catalog(n, k)?)
}

#[derive(Serialize)]
struct Analysis {
    form: String,
    n: usize,
    k: usize,
    nondegenerate: bool,
    annihilator_dim: usize,
    stable: bool,
    orbit_tangent_rank: usize,
    stabilizer_dim: usize,
    fingerprint: OrbitFingerprint,
}

fn analyze(cli: &Cli, expr: &str) -> Result<Output<Analysis>, Failure> {
    let (alpha, style) = parse_form(cli, expr)?;
    let f = fingerprint(&alpha)?;
    let a = Analysis {
        form: format_with(&alpha, style),
        n: alpha.dim(),
        k: alpha.grade(),
        nondegenerate: f.kernel_dim == 0,
        annihilator_dim: f.kernel_dim,
        stable: f.stable,
        orbit_tangent_rank: orbit_tangent_rank(&alpha),
        stabilizer_dim: f.stabilizer_dim,
        fingerprint: f,
    };
    let mut text = String::new();
    writeln!(text, "form: {}", a.form).ok();
    writeln!(text, "n = {}, k = {}", a.n, a.k).ok();
    writeln!(text, "nondegenerate: {}", a.nondegenerate).ok();
    writeln!(text, "annihilator dim: {}", a.annihilator_dim).ok();
    writeln!(text, "stable: {}", a.stable).ok();
    writeln!(text, "orbit tangent rank: {}", a.orbit_tangent_rank).ok();
    writeln!(text, "stabilizer dim: {}", a.stabilizer_dim).ok();
    if let Some(s) = &a.fingerprint.special {
        writeln!(text, "{}", describe_special(s)).ok();
    }
    writeln!(text, "fingerprint: {}", a.fingerprint.to_json()).ok();
    Ok(Output::ok(a, text))
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

fn describe_special(s: &Special) -> String {
    match s {
        Special::TwoFormRank { rank } => format!("rank: {rank}"),
        Special::HitchinSign { sign } => format!("hitchin sign: {}", sign_char(*sign)),
        Special::BSignature { signature } => format!("B signature: {signature}"),
        Special::DualThreeVector { b_signature, support_hitchin_sign } => match support_hitchin_sign {
            Some(h) => format!("dual B signature: {b_signature}, support hitchin sign: {}", sign_char(*h)),
            None => format!("dual B signature: {b_signature}"),
        },
        Special::DualTwoVector { rank, pfaffian_sign } => match pfaffian_sign {
            Some(p) => format!("dual 2-vector rank: {rank}, pfaffian sign: {}", sign_char(*p)),
            None => format!("dual 2-vector rank: {rank}"),
        },
        Special::StabilizerProfile { profile } => format!(
            "stabilizer: dim {}, trace form {}, derived dim {}",
            profile.dim, profile.trace_form, profile.derived_dim
        ),
        Special::DualStabilizerProfile { profile } => format!(
            "dual stabilizer: dim {}, trace form {}, derived dim {}",
            profile.dim, profile.trace_form, profile.derived_dim
        ),
    }
}

#[derive(Serialize)]
struct ClassifyResult {
    #[serde(flatten)]
    classification: Classification,
    representative: String,
    notes: String,
}

fn classify(cli: &Cli, expr: &str) -> Result<Output<ClassifyResult>, Failure> {
    let (alpha, _) = parse_form(cli, expr)?;
    let c = catalog_for(cli, alpha.dim(), alpha.grade())?;
    let classification = c.classify(&alpha)?;
    let entry = c.get(&classification.id).expect("classified ids exist");
    let certainty = serde_json::to_value(classification.certainty).expect("plain data");
    let certainty = certainty.as_str().unwrap_or_default().replace('_', "-");
    let mut text = if classification.candidates.len() > 1 {
        format!("ambiguous: {}\n", classification.candidates.join(", "))
    } else {
        format!("{} ({certainty})\n", classification.id)
    };
    writeln!(text, "representative: {}", entry.rep).ok();
    if !entry.notes.is_empty() {
        writeln!(text, "notes: {}", entry.notes).ok();
    }
    let result = ClassifyResult { representative: entry.rep.to_string(), notes: entry.notes.clone(), classification };
    Ok(Output::ok(result, text))
}

#[derive(Serialize)]
struct Rendered {
    result: String,
}

fn dual(cli: &Cli, expr: &str, inverse: bool) -> Result<Output<Rendered>, Failure> {
    let n = require_n(cli)?;
    let omega = VolumeForm::standard(n)?;
    let result = if inverse {
        let (rho, style) = parse_form(cli, expr)?;
        format_with(&inverse_hodge_dual(&rho, &omega)?, style)
    } else {
        let (xi, style) = parse_multivector(cli, n, expr)?;
        format_with(&hodge_dual(&xi, &omega)?, style)
    };
    let text = format!("{result}\n");
    Ok(Output::ok(Rendered { result }, text))
}

fn act(cli: &Cli, matrix: &str, expr: &str, multivector: bool) -> Result<Output<Rendered>, Failure> {
    let g = GlElement::new(parse_matrix(matrix)?)?;
    let n = g.dim();
    if cli.global.n.is_some_and(|m| m != n) {
        return Err(input_error(format!("matrix is {n}x{n} but --n is {}", cli.global.n.unwrap_or(0))));
    }
    let parsed = parse_expr(expr)?;
    let result = if multivector {
        let xi: KVector = parsed.build(n, cli.global.k)?;
        format_with(&xi.act(&g)?, parsed.style())
    } else {
        let alpha: KForm = parsed.build(n, cli.global.k)?;
        format_with(&alpha.act(&g)?, parsed.style())
    };
    let text = format!("{result}\n");
    Ok(Output::ok(Rendered { result }, text))
}

#[derive(Serialize)]
struct Mismatch {
    n: usize,
    k: usize,
    column: &'static str,
    computed: String,
    expected: String,
}

#[derive(Serialize)]
struct TableResult {
    cells: Vec<CaseCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatches: Option<Vec<Mismatch>>,
}

fn table(verify: bool) -> Result<Output<TableResult>, Failure> {
    let cells = catalog::theorem_table(selfcheck::MAX_DIM)?;
    let mut text = String::new();
    write!(text, "{:>4}", "n\\k").ok();
    for k in 1..=selfcheck::MAX_DIM {
        write!(text, "{k:>10}").ok();
    }
    text.push('\n');
    for n in 2..=selfcheck::MAX_DIM {
        write!(text, "{n:>4}").ok();
        for c in cells.iter().filter(|c| c.n == n) {
            write!(text, "{:>10}", c.to_string()).ok();
        }
        text.push('\n');
    }
    let mut status = OK;
    let mismatches = verify.then(|| {
        let found: Vec<Mismatch> = catalog::verify_table(&cells)
            .into_iter()
            .map(|m| Mismatch { n: m.n, k: m.k, column: m.column, computed: m.computed, expected: m.expected })
            .collect();
        for m in &found {
            writeln!(
                text,
                "MISMATCH ({}, {}) {}: computed {}, expected {}",
                m.n, m.k, m.column, m.computed, m.expected
            )
            .ok();
        }
        if found.is_empty() {
            writeln!(text, "verified: all {} cells match", cells.len()).ok();
        } else {
            status = VERIFY_FAILED;
        }
        found
    });
    Ok(Output { status, result: TableResult { cells, mismatches }, text })
}

fn selfcheck_cmd(seed: u64, trials: usize) -> Result<Output<Vec<SuiteResult>>, Failure> {
    let suites = selfcheck::run(seed, trials)?;
    let mut text = String::new();
    for s in &suites {
        let verdict = if s.passed { "PASS" } else { "FAIL" };
        writeln!(text, "{verdict} {} ({} checks)", s.name, s.checks).ok();
        for f in &s.failures {
            writeln!(text, "  {f}").ok();
        }
    }
    let status = if suites.iter().all(|s| s.passed) { OK } else { VERIFY_FAILED };
    Ok(Output { status, result: suites, text })
}

#[derive(Serialize)]
struct SampleResult {
    id: String,
    form: String,
}

fn sample(cli: &Cli, id: &str) -> Result<Output<SampleResult>, Failure> {
    let form = match &cli.global.catalog {
        Some(path) => {
            let c = load_catalog(path)?;
            if c.get(id).is_some() {
                c.sample(id, cli.global.seed)?
            } else {
                catalog::sample_orbit(id, cli.global.seed)?
            }
        }
        None => catalog::sample_orbit(id, cli.global.seed)?,
    };
    let form = form.to_string();
    let text = format!("{form}\n");
    Ok(Output::ok(SampleResult { id: id.to_string(), form }, text))
}
