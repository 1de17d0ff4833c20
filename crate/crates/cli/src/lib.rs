//! Command dispatch and report rendering for the `padic-welch` binary.
//!
//! Exit codes are fixed: 0 when the verdict is positive (or the bound holds),
//! 1 when it is negative (a violated bound means an implementation bug), 2
//! when a precondition is not met (not tight, wrong shape, search budget) and
//! 3 on input errors.

mod search_file;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use padic_welch::classical::{classical_secondary_bounds, classical_welch, Field};
use padic_welch::format::{parse_config, ConfigError};
use padic_welch::linalg::{check_tight, frame_operator};
use padic_welch::search::{run_search, SearchResult};
use padic_welch::sym::{check_sym_tight_with_cap, enumerate_multi_indices, sym_dim, DEFAULT_SYM_DIM_CAP};
use padic_welch::welch::{
    equiangular_check, q1_check, q2_check, welch_general, welch_unit, zauner_check_with_target, Failure,
    TargetReading, WelchReport, ZaunerReport,
};
use padic_welch::{AbsValue, Error, FrameConfig, Rational};
use serde::Serialize;
use serde_json::{json, Value};

pub use search_file::{parse_search_spec, SearchOverrides};

pub const TOOL_NAME: &str = "padic-welch";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Bound,
    Tensor,
    Zauner,
    Equiangular,
    Search,
    Classical,
    Question,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    Negative,
    PreconditionNotMet,
    InputError,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::PreconditionNotMet => 2,
            Verdict::InputError => 3,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRequest {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub m: u32,
    pub strong: bool,
    /// `bound` only: use the unit-self-pairing form.
    pub unit: bool,
    pub format: OutputFormat,
    pub search: SearchOverrides,
    pub workers: usize,
    /// `equiangular` only.
    pub a: Option<String>,
    pub gamma: Option<String>,
    /// `zauner` only: read the off-diagonal target as `|n|` for this n.
    pub target_n: Option<u64>,
    /// `classical` only.
    pub d: Option<u64>,
    pub n: Option<u64>,
    pub field: Option<Field>,
    /// `tensor` only: cap on `dim Sym^m`.
    pub cap: Option<usize>,
}

impl RunRequest {
    pub fn new(command: Command) -> Self {
        RunRequest {
            command,
            input: None,
            m: 1,
            strong: false,
            unit: false,
            format: OutputFormat::Text,
            search: SearchOverrides::default(),
            workers: 0,
            a: None,
            gamma: None,
            target_n: None,
            d: None,
            n: None,
            field: None,
            cap: None,
        }
    }

    /// Checks that the command's required parameters are present.
    pub fn validate(&self) -> Result<(), String> {
        if self.m == 0 {
            return Err("--m must be at least 1".into());
        }
        match self.command {
            Command::Classical => {
                if self.d.is_none() || self.n.is_none() {
                    return Err("classical needs --d and --n".into());
                }
            }
            Command::Search => {
                if self.input.is_none() {
                    return Err("search needs --input with a search spec".into());
                }
            }
            Command::Equiangular => {
                if self.input.is_none() || self.a.is_none() || self.gamma.is_none() {
                    return Err("equiangular needs --input, --a and --gamma".into());
                }
            }
            _ => {
                if self.input.is_none() {
                    return Err(format!("{} needs --input", command_name(self.command)));
                }
            }
        }
        Ok(())
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Verify => "verify",
        Command::Bound => "bound",
        Command::Tensor => "tensor",
        Command::Zauner => "zauner",
        Command::Equiangular => "equiangular",
        Command::Search => "search",
        Command::Classical => "classical",
        Command::Question => "question",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

/// Everything a run produces. `result` holds exact quantities as strings:
/// rationals as `a/b`, absolute values as `p^e` or `0`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub verdict: Verdict,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
    pub flags: Vec<String>,
    pub echo: RunRequest,
    #[serde(skip)]
    text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.exit_code
    }

    pub fn render(&self) -> String {
        match self.echo.format {
            OutputFormat::Machine => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            OutputFormat::Text => self.text.clone(),
        }
    }
}

struct Outcome {
    verdict: Verdict,
    p: Option<u64>,
    result: Value,
    flags: Vec<String>,
    text: String,
}

struct Failed {
    verdict: Verdict,
    p: Option<u64>,
    error: ErrorBody,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let (verdict, kind, detail) = match &e {
            Error::NotTight(report) => {
                (Verdict::PreconditionNotMet, "not_tight", Some(serde_json::to_value(report).expect("serializes")))
            }
            Error::NonUnitInner { index, value } => (
                Verdict::PreconditionNotMet,
                "non_unit_inner",
                Some(json!({ "index": index, "value": value })),
            ),
            Error::ZaunerShape { .. } => (Verdict::PreconditionNotMet, "wrong_shape", None),
            Error::BudgetExceeded { .. } => (Verdict::PreconditionNotMet, "budget_exceeded", None),
            _ => (Verdict::InputError, "input", None),
        };
        Failed { verdict, p: None, error: ErrorBody { kind: kind.into(), message: e.to_string(), detail } }
    }
}

impl From<ConfigError> for Failed {
    fn from(e: ConfigError) -> Self {
        Failed {
            verdict: Verdict::InputError,
            p: None,
            error: ErrorBody {
                kind: "config".into(),
                message: e.to_string(),
                detail: Some(json!({ "field": e.field, "line": e.line, "column": e.column })),
            },
        }
    }
}

fn input_error(message: impl Into<String>) -> Failed {
    Failed { verdict: Verdict::InputError, p: None, error: ErrorBody { kind: "input".into(), message: message.into(), detail: None } }
}

/// Executes one request. Never panics on bad input; every failure is mapped
/// to a verdict and an exit code.
pub fn run(request: &RunRequest) -> Report {
    let outcome = request.validate().map_err(input_error).and_then(|()| dispatch(request));
    let (verdict, p, result, error, flags, text) = match outcome {
        Ok(o) => (o.verdict, o.p, o.result, None, o.flags, o.text),
        Err(f) => {
            let text = format!("error ({}): {}\n", f.error.kind, f.error.message)
                + &f.error.detail.as_ref().map(|d| format!("detail: {d}\n")).unwrap_or_default();
            (f.verdict, f.p, Value::Null, Some(f.error), Vec::new(), text)
        }
    };
    let text = format!("{text}verdict: {} (exit {})\n", verdict_word(verdict), verdict.exit_code());
    Report {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        command: request.command,
        verdict,
        exit_code: verdict.exit_code(),
        p,
        result,
        error,
        flags,
        echo: request.clone(),
        text,
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Positive => "positive",
        Verdict::Negative => "negative",
        Verdict::PreconditionNotMet => "precondition not met",
        Verdict::InputError => "input error",
    }
}

fn read_input(request: &RunRequest) -> Result<String, Failed> {
    let path = request.input.as_ref().ok_or_else(|| input_error("missing --input"))?;
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn load_config(request: &RunRequest) -> Result<FrameConfig, Failed> {
    Ok(parse_config(&read_input(request)?)?)
}

fn with_prime(config: &FrameConfig) -> impl Fn(Failed) -> Failed + '_ {
    move |mut f| {
        f.p = Some(config.prime().get());
        f
    }
}

fn dispatch(request: &RunRequest) -> Result<Outcome, Failed> {
    match request.command {
        Command::Classical => classical(request),
        Command::Search => search(request),
        _ => {
            let config = load_config(request)?;
            let p = Some(config.prime().get());
            let mut outcome = match request.command {
                Command::Verify => verify(&config),
                Command::Bound => bound(request, &config),
                Command::Tensor => tensor(request, &config),
                Command::Zauner => zauner(request, &config),
                Command::Equiangular => equiangular(request, &config),
                Command::Question => question(request, &config),
                Command::Classical | Command::Search => unreachable!(),
            }
            .map_err(with_prime(&config))?;
            outcome.p = p;
            Ok(outcome)
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn outcome(verdict: Verdict, result: Value, flags: Vec<String>, text: String) -> Outcome {
    Outcome { verdict, p: None, result, flags, text }
}

fn describe_failure(f: &Failure) -> String {
    match f {
        Failure::NonUnitInner { index, value } => format!("<tau_{index}, tau_{index}> = {value}, not 1"),
        Failure::NotTight(w) => {
            format!("frame operator entry ({}, {}) is {}, expected {}", w.row, w.col, w.found, w.expected)
        }
        Failure::NoEquality { lhs, rhs } => format!("bound is strict: lhs = {lhs} > rhs = {rhs}"),
        Failure::OffDiagonal { j, k, found, expected } => {
            format!("|<tau_{j}, tau_{k}>|^2 = {found}, expected {expected}")
        }
        Failure::NormNotOne { index, norm } => format!("||tau_{index}|| = {norm}, not 1"),
        Failure::Diagonal { index, found, expected } => {
            format!("<tau_{index}, tau_{index}> = {found}, expected {expected}")
        }
    }
}

fn verify(config: &FrameConfig) -> Result<Outcome, Failed> {
    let report = check_tight(config);
    let s = frame_operator(config);
    let mut text = String::new();
    match (&report.b, &report.witness) {
        (Some(b), _) => writeln!(text, "tight: S = {b} * I").unwrap(),
        (None, Some(w)) => writeln!(
            text,
            "not tight: S[{}][{}] = {}, expected {}",
            w.row, w.col, w.found, w.expected
        )
        .unwrap(),
        (None, None) => unreachable!("non-tight reports carry a witness"),
    }
    let mut flags = Vec::new();
    if report.is_degenerate() {
        flags.push("b = 0: frame operator vanishes".to_string());
    }
    let result = json!({ "tightness": report, "frame_operator": s.to_rows() });
    Ok(outcome(Verdict::from_bool(report.is_tight), result, flags, text))
}

fn welch_flags(report: &WelchReport) -> Vec<String> {
    let mut flags = Vec::new();
    if report.degenerate_b() {
        flags.push("b = 0: degenerate tight configuration".into());
    }
    if report.rhs.is_zero() {
        flags.push("rhs is zero: bound holds trivially".into());
    }
    if report.max_offdiag.is_none() {
        flags.push("n = 1: off-diagonal maximum ranges over the empty set".into());
    }
    flags
}

fn welch_text(report: &WelchReport) -> String {
    let mut text = String::new();
    writeln!(text, "order m = {} ({:?} form)", report.m, report.form).unwrap();
    writeln!(text, "tight with b = {}", report.precondition.b.as_ref().expect("tight")).unwrap();
    writeln!(text, "diagonal term = {}", report.diag_term).unwrap();
    match &report.max_offdiag {
        Some(off) => writeln!(text, "max off-diagonal = {} at ({}, {})", off.value, off.pair.0, off.pair.1).unwrap(),
        None => writeln!(text, "max off-diagonal: empty (n = 1)").unwrap(),
    }
    writeln!(text, "lhs = {}", report.lhs).unwrap();
    writeln!(text, "rhs = {}", report.rhs).unwrap();
    writeln!(text, "holds = {}, equality = {}", report.holds, report.equality).unwrap();
    text
}

fn bound(request: &RunRequest, config: &FrameConfig) -> Result<Outcome, Failed> {
    let report = if request.unit { welch_unit(config, request.m)? } else { welch_general(config, request.m)? };
    let unit = if !request.unit && report.unit_inner { Some(welch_unit(config, request.m)?) } else { None };
    let mut text = welch_text(&report);
    if let Some(u) = &unit {
        writeln!(text, "unit form: lhs = {}, rhs = {}, equality = {}", u.lhs, u.rhs, u.equality).unwrap();
    }
    let mut flags = welch_flags(&report);
    if !report.holds {
        flags.push("bound violated on a tight configuration: this indicates an implementation bug".into());
    }
    let result = json!({ "bound": report, "unit_bound": unit });
    Ok(outcome(Verdict::from_bool(report.holds), result, flags, text))
}

fn tensor(request: &RunRequest, config: &FrameConfig) -> Result<Outcome, Failed> {
    let m = request.m;
    let d = config.dim();
    let cap = request.cap.unwrap_or(DEFAULT_SYM_DIM_CAP);
    let dim = sym_dim(d, m);
    let report = check_sym_tight_with_cap(config, m, cap)?;
    let basis: Vec<String> = enumerate_multi_indices(d, m).iter().map(ToString::to_string).collect();
    let mut text = format!("dim Sym^{m}(Q_p^{d}) = {dim}\n");
    match (&report.b, &report.witness) {
        (Some(b), _) => writeln!(text, "lifted configuration is tight with b = {b}").unwrap(),
        (None, Some(w)) => writeln!(
            text,
            "lifted configuration is not tight: entry ({}, {}) = {}, expected {}",
            basis[w.row], basis[w.col], w.found, w.expected
        )
        .unwrap(),
        (None, None) => unreachable!(),
    }
    let result = json!({ "m": m, "d": d, "sym_dim": dim.to_string(), "basis": basis, "tightness": report });
    Ok(outcome(Verdict::from_bool(report.is_tight), result, Vec::new(), text))
}

fn zauner_flags(report: &ZaunerReport) -> Vec<String> {
    let mut flags = vec![match report.target_reading {
        TargetReading::DimensionSquared => "target |n| read as |d^2|_p".to_string(),
        TargetReading::Override(n) => format!("target |n| overridden with n = {n}"),
    }];
    if report.offdiag_vacuous {
        flags.push("(iii) vacuous: a single vector has no off-diagonal pairs".into());
    }
    if report.degenerate_b() {
        flags.push("b = 0: degenerate tight configuration".into());
    }
    flags
}

fn zauner(request: &RunRequest, config: &FrameConfig) -> Result<Outcome, Failed> {
    let report = zauner_check_with_target(config, request.strong, request.target_n)?;
    let mut text = String::new();
    writeln!(text, "(i) unit inner products: {}", report.unit_inner).unwrap();
    writeln!(text, "(ii) tight: {}", report.tight.is_tight).unwrap();
    writeln!(text, "(iii) |<tau_j, tau_k>|^2 = {} for j != k: {}", report.target, report.equiangular).unwrap();
    if let Some(norm) = report.norm_one {
        writeln!(text, "(iv) max-norm one: {norm}").unwrap();
    }
    for f in &report.failures {
        writeln!(text, "failure: {}", describe_failure(f)).unwrap();
    }
    let flags = zauner_flags(&report);
    for f in &flags {
        writeln!(text, "note: {f}").unwrap();
    }
    Ok(outcome(Verdict::from_bool(report.verdict), to_value(&report), flags, text))
}

fn equiangular(request: &RunRequest, config: &FrameConfig) -> Result<Outcome, Failed> {
    let a: Rational = request.a.as_deref().unwrap_or_default().parse()?;
    let gamma = AbsValue::parse(request.gamma.as_deref().unwrap_or_default(), config.prime())?;
    let report = equiangular_check(config, &a, &gamma)?;
    let mut text = format!("<tau_j, tau_j> = {a} and |<tau_j, tau_k>|^2 = {gamma}: {}\n", report.holds);
    if let Some(f) = &report.failure {
        writeln!(text, "failure: {}", describe_failure(f)).unwrap();
    }
    Ok(outcome(Verdict::from_bool(report.holds), to_value(&report), Vec::new(), text))
}

fn question(request: &RunRequest, config: &FrameConfig) -> Result<Outcome, Failed> {
    let report = if request.strong { q2_check(config) } else { q1_check(config) };
    let mut text = String::new();
    writeln!(text, "(i) unit inner products: {}", report.unit_inner).unwrap();
    writeln!(text, "(ii) tight: {}", report.tight.is_tight).unwrap();
    match report.equality {
        Some(eq) => writeln!(text, "(iii) equality in the first-order bound: {eq}").unwrap(),
        None => writeln!(text, "(iii) equality: not evaluated").unwrap(),
    }
    if let Some(norm) = report.norm_one {
        writeln!(text, "(iv) max-norm one: {norm}").unwrap();
    }
    for f in &report.failures {
        writeln!(text, "failure: {}", describe_failure(f)).unwrap();
    }
    Ok(outcome(Verdict::from_bool(report.verdict), to_value(&report), Vec::new(), text))
}

fn classical(request: &RunRequest) -> Result<Outcome, Failed> {
    let (d, n) = (request.d.unwrap_or_default(), request.n.unwrap_or_default());
    let field = request.field.unwrap_or(Field::Complex);
    let bounds = classical_secondary_bounds(d, n, field)?;
    let welch = classical_welch(d, n, request.m).ok();
    let mut text = format!("Gerzon bound Z({d}, {field:?}) = {}\n", bounds.gerzon);
    match &welch {
        Some(w) => writeln!(
            text,
            "Welch (m = {}): sum >= {:.15}, max >= {:.15}",
            w.m, w.sum_bound, w.max_bound
        )
        .unwrap(),
        None => writeln!(text, "Welch (m = {}): not applicable (needs n > d)", request.m).unwrap(),
    }
    for (name, b) in [
        ("Bukh-Cox", bounds.bukh_cox),
        ("orthoplex", bounds.orthoplex),
        ("Levenstein", bounds.levenstein),
        ("exponential", bounds.exponential),
    ] {
        match b.value {
            Some(v) => writeln!(text, "{name}: {v:.15}").unwrap(),
            None => writeln!(text, "{name}: not applicable").unwrap(),
        }
    }
    let flags = vec!["approximate: classical bounds are floating point".to_string()];
    let result = json!({ "approximate": true, "bounds": bounds, "welch": welch });
    Ok(outcome(Verdict::Positive, result, flags, text))
}

fn search(request: &RunRequest) -> Result<Outcome, Failed> {
    let spec = parse_search_spec(&read_input(request)?, &request.search)?;
    let p = spec.p.get();
    let result: SearchResult = run_search(&spec, request.workers).map_err(|e| {
        let mut f = Failed::from(e);
        f.p = Some(p);
        f
    })?;
    let mut text = format!(
        "entries: {} values, {} admissible vectors, {} configurations in space, {} checked\n",
        result.entries.len(),
        result.admissible_vectors,
        result.space_size,
        result.configs_checked
    );
    for (i, hit) in result.hits.iter().enumerate() {
        let rows: Vec<String> = hit
            .config
            .vectors()
            .iter()
            .map(|v| format!("({})", v.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        writeln!(text, "hit {}: {}", i + 1, rows.join(" ")).unwrap();
    }
    writeln!(text, "{} hit(s)", result.hits.len()).unwrap();
    let flags = vec!["entry set is a heuristic search space; absence of hits is not a proof of non-existence".into()];
    let mut out = outcome(Verdict::from_bool(!result.hits.is_empty()), to_value(&result), flags, text);
    out.p = Some(p);
    Ok(out)
}
