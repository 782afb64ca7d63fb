//! Command-line front end.
//!
//! Exit codes: 0 success or PASS, 1 claim-check FAIL, 2 usage error,
//! 3 numerical failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::analytic::FunctionSpec;
use crate::characters::{catalog_self_dual, enumerate_characters, DirichletCharacter, Parity};
use crate::deformation::{
    catalog_character, dh_construct, pair_zeros, theorem4_harness, DeformationFamily,
    PairingReport, DEFAULT_TAU_STEPS, FIGURE_TAUS, MIN_TAU_STEPS,
};
use crate::error::Error;
use crate::funceq::{grid, residual_sweep, FunctionalEquation};
use crate::zerofind::{
    count_zeros_box, scan_line_zeros, verify_on_line, Rect, Verdict, ZeroRecord, MAX_HEIGHT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const CSV_HEADER: &str = "# deform-zeros v1";
const MAX_QMAX: u64 = 2000;

#[derive(Debug, Parser)]
#[command(
    name = "deform-zeros",
    version,
    about = "Zeros of Dirichlet-type L-functions sharing one functional equation"
)]
pub struct Cli {
    /// key=value file supplying defaults for the command's flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Real characters whose L-functions have root number 1
    Chars(CharsArgs),
    /// Functional-equation residuals on a grid
    VerifyFe(VerifyFeArgs),
    /// Critical-line zeros and box counts
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Zero trajectories of the deformation family
    Track(TrackArgs),
    /// Full claim-check report for one modulus
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionKind {
    Zeta,
    F0,
    L,
    Dh,
    Hurwitz,
}

#[derive(Debug, Args)]
pub struct CharsArgs {
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    #[arg(long, default_value_t = 21)]
    pub qmax: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Which function to work on.
#[derive(Debug, Args, Clone)]
pub struct FunctionArgs {
    /// Deformation family `qN`: f0 for modulus N deformed into L(s, χ)
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long = "f", value_enum)]
    pub function: Option<FunctionKind>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    /// Character label, comma-separated generator exponents (e.g. `2` or `0,1`)
    #[arg(long)]
    pub chi: Option<String>,
    /// Hurwitz parameter
    #[arg(long)]
    pub a: Option<f64>,
    /// Equation: `zeta`, `qN`, `qN:odd`, `inverted:qN` or `char`
    #[arg(long)]
    pub fe: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyFeArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value = "-1:2", allow_hyphen_values = true)]
    pub sigma: String,
    #[arg(long, default_value = "1:30", allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ZerosCommand {
    /// Sign changes of the Hardy signal on the critical line
    Scan(ScanArgs),
    /// Argument-principle count in a rectangle
    Count(BoxArgs),
    /// Box count versus line count
    Verify(BoxArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, default_value_t = crate::zerofind::DEFAULT_STEP)]
    pub step: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoxArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// `sigma1:sigma2:t1:t2`
    #[arg(long = "box", allow_hyphen_values = true)]
    pub rect: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrackArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    #[arg(long, default_value = "0:30", allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, default_value_t = DEFAULT_TAU_STEPS)]
    pub steps: usize,
    /// Comma-separated τ values for the per-τ zero files
    #[arg(long, default_value = "0,0.25,0.5,0.75,1")]
    pub taus: String,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    #[arg(long)]
    pub chi: Option<String>,
    #[arg(long, default_value_t = 30.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = DEFAULT_TAU_STEPS)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            _ => EXIT_NUMERICAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Number with 12 significant digits, shortest form.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded != 0.0 && (rounded.abs() < 1e-4 || rounded.abs() >= 1e15) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) =
                serde_json::Number::from_f64(num(x).parse().expect("formatted float parses"))
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report serializes");
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

pub fn zeros_csv(zeros: &[ZeroRecord]) -> String {
    let mut s = format!("{CSV_HEADER}\nt,sigma,kind,residual\n");
    for z in zeros {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            num(z.t),
            num(z.sigma),
            z.kind.as_str(),
            num(z.residual)
        );
    }
    s
}

pub fn trajectory_csv(report: &PairingReport) -> String {
    let mut s = format!("{CSV_HEADER}\ntrajectory_id,tau,t,abs_phi\n");
    for tr in report.paired_trajectories() {
        for p in &tr.samples {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                tr.id,
                num(p.tau),
                num(p.t),
                num(p.abs_phi)
            );
        }
    }
    s
}

fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_floats(s: &str, n: usize, what: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != n {
        return Err(CliError::usage(format!(
            "{what} expects {n} numbers separated by ':', got {s:?}"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::usage(format!("bad number {p:?} in {what}")))
        })
        .collect()
}

fn parse_t_range(s: &str) -> CliResult<(f64, f64)> {
    let v = parse_floats(s, 2, "t range")?;
    if !(v[1] > v[0]) {
        return Err(CliError::usage(format!("empty t range {s}")));
    }
    if v[0].abs().max(v[1].abs()) > MAX_HEIGHT {
        return Err(CliError::usage(format!(
            "t range must stay within |t| <= {MAX_HEIGHT}"
        )));
    }
    Ok((v[0], v[1]))
}

fn parse_rect(s: &str) -> CliResult<Rect> {
    let v = parse_floats(s, 4, "box")?;
    if v[2].abs().max(v[3].abs()) > MAX_HEIGHT {
        return Err(CliError::usage(format!(
            "box must stay within |t| <= {MAX_HEIGHT}"
        )));
    }
    Ok(Rect::new(v[0], v[1], v[2], v[3])?)
}

fn parse_family(s: &str) -> CliResult<u64> {
    s.strip_prefix('q')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| CliError::usage(format!("family must look like q5, got {s:?}")))
}

fn check_tau(tau: f64) -> CliResult<f64> {
    if (0.0..=1.0).contains(&tau) {
        Ok(tau)
    } else {
        Err(CliError::usage(format!("τ must lie in [0, 1], got {tau}")))
    }
}

fn select_character(q: u64, parity: Parity, label: Option<&str>) -> CliResult<DirichletCharacter> {
    let Some(label) = label else {
        return Ok(catalog_character(q, parity)?);
    };
    let wanted: Vec<u64> = label
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad character label {label:?}")))
        })
        .collect::<CliResult<_>>()?;
    enumerate_characters(q)?
        .into_iter()
        .find(|c| c.label() == wanted.as_slice())
        .ok_or_else(|| CliError::usage(format!("no character with label {label:?} mod {q}")))
}

fn require_q(q: Option<u64>, what: &str) -> CliResult<u64> {
    q.filter(|&q| q >= 1)
        .ok_or_else(|| CliError::usage(format!("{what} needs --q")))
}

fn parse_fe(s: &str, chi: Option<&DirichletCharacter>) -> CliResult<FunctionalEquation> {
    let bad = || CliError::usage(format!("unknown equation {s:?}"));
    let modulus = |t: &str| {
        t.strip_prefix('q')
            .and_then(|n| n.parse::<u64>().ok())
            .filter(|&q| q >= 1)
    };
    match s {
        "zeta" => Ok(FunctionalEquation::zeta()),
        "char" => match chi {
            Some(c) => Ok(FunctionalEquation::for_character(c)?),
            None => Err(CliError::usage("--fe char needs a character function")),
        },
        _ => {
            if let Some(rest) = s.strip_prefix("inverted:") {
                return Ok(FunctionalEquation::inverted_power(
                    modulus(rest).ok_or_else(bad)?,
                ));
            }
            let (head, parity) = match s.split_once(':') {
                Some((h, "odd")) => (h, Parity::Odd),
                Some((h, "even")) => (h, Parity::Even),
                Some(_) => return Err(bad()),
                None => (s, Parity::Even),
            };
            Ok(FunctionalEquation::shared(
                modulus(head).ok_or_else(bad)?,
                parity,
            ))
        }
    }
}

/// The function and the equation it is checked against.
fn resolve(args: &FunctionArgs) -> CliResult<(FunctionSpec, FunctionalEquation)> {
    let parity: Parity = args.parity.into();
    let mut chi_used = None;
    let (f, default_fe) = match (&args.family, args.function) {
        (Some(_), Some(_)) => return Err(CliError::usage("use either --family or --f")),
        (None, None) => return Err(CliError::usage("choose a function with --family or --f")),
        (Some(fam), None) => {
            let q = parse_family(fam)?;
            let chi = select_character(q, parity, args.chi.as_deref())?;
            let family = DeformationFamily::for_character(&chi)?;
            let tau = check_tau(args.tau.unwrap_or(0.5))?;
            chi_used = Some(chi);
            (family.phi(tau)?, family.shared_fe)
        }
        (None, Some(kind)) => {
            if args.tau.is_some() {
                return Err(CliError::usage("--tau applies to --family only"));
            }
            match kind {
                FunctionKind::Zeta => (FunctionSpec::Zeta, FunctionalEquation::zeta()),
                FunctionKind::Hurwitz => {
                    let a = args.a.filter(|a| *a > 0.0 && *a <= 1.0);
                    let a = a.ok_or_else(|| CliError::usage("hurwitz needs --a in (0, 1]"))?;
                    (FunctionSpec::HurwitzZeta(a), FunctionalEquation::zeta())
                }
                FunctionKind::F0 => {
                    let q = require_q(args.q, "f0")?;
                    (
                        FunctionSpec::ScaledZeta(q),
                        FunctionalEquation::scaled_zeta(q),
                    )
                }
                FunctionKind::L => {
                    let q = require_q(args.q, "L")?;
                    let chi = select_character(q, parity, args.chi.as_deref())?;
                    let fe = FunctionalEquation::shared(q, chi.parity());
                    chi_used = Some(chi.clone());
                    (FunctionSpec::dirichlet_l(chi), fe)
                }
                FunctionKind::Dh => {
                    let q = require_q(args.q, "dh")?;
                    let chi = match args.chi.as_deref() {
                        Some(label) => select_character(q, parity, Some(label))?,
                        None => enumerate_characters(q)?
                            .into_iter()
                            .find(|c| !c.is_real() && c.parity() == parity && c.conductor() == q)
                            .ok_or_else(|| {
                                CliError::usage(format!(
                                    "no complex primitive {parity} character mod {q}"
                                ))
                            })?,
                    };
                    let fe = FunctionalEquation::shared(q, chi.parity());
                    let spec = dh_construct(&chi)?.spec;
                    chi_used = Some(chi);
                    (spec, fe)
                }
            }
        }
    };
    let fe = match &args.fe {
        Some(s) => parse_fe(s, chi_used.as_ref())?,
        None => default_fe,
    };
    Ok((f, fe))
}

#[derive(Serialize)]
struct FeReport {
    function: String,
    equation: FunctionalEquation,
    tolerance: f64,
    points: usize,
    skipped: Vec<(f64, f64)>,
    max_residual: f64,
    verdict: Verdict,
}

fn cmd_chars(args: &CharsArgs) -> CliResult<i32> {
    if args.qmax == 0 || args.qmax > MAX_QMAX {
        return Err(CliError::usage(format!(
            "--qmax must lie in [1, {MAX_QMAX}]"
        )));
    }
    let records: Vec<_> = catalog_self_dual(args.qmax, args.parity.into())
        .iter()
        .map(|e| e.record())
        .collect();
    let content = match args.format {
        Format::Json => to_json(&records),
        Format::Csv => {
            let mut s = format!(
                "{CSV_HEADER}\nq,label,parity,conductor,primitive,epsilon_re,epsilon_im,epsilon_mod_q_re,epsilon_mod_q_im\n"
            );
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},\"{}\",{},{},{},{},{},{},{}",
                    r.q,
                    r.label,
                    r.parity,
                    r.conductor,
                    r.primitive,
                    num(r.epsilon_re),
                    num(r.epsilon_im),
                    num(r.epsilon_mod_q_re),
                    num(r.epsilon_mod_q_im)
                );
            }
            s
        }
    };
    emit(args.out.as_deref(), &content)?;
    Ok(EXIT_OK)
}

fn cmd_verify_fe(args: &VerifyFeArgs) -> CliResult<i32> {
    if !(args.tol > 0.0) {
        return Err(CliError::usage("--tol must be positive"));
    }
    if args.n < 1 {
        return Err(CliError::usage("--n must be positive"));
    }
    let (f, fe) = resolve(&args.function)?;
    let sigma = parse_floats(&args.sigma, 2, "sigma range")?;
    let t = parse_t_range(&args.t)?;
    let points = grid((sigma[0], sigma[1]), t, args.n, args.n);
    let sweep = residual_sweep(&f, &fe, &points)?;
    let verdict = if sweep.max_residual < args.tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let report = FeReport {
        function: f.label(),
        equation: fe,
        tolerance: args.tol,
        points: points.len(),
        skipped: sweep.skipped,
        max_residual: sweep.max_residual,
        verdict,
    };
    emit(args.out.as_deref(), &to_json(&report))?;
    Ok(if verdict == Verdict::Pass {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAIL
    })
}

fn cmd_zeros(cmd: &ZerosCommand) -> CliResult<i32> {
    match cmd {
        ZerosCommand::Scan(args) => {
            if !(args.step > 0.0) {
                return Err(CliError::usage("--step must be positive"));
            }
            let (f, fe) = resolve(&args.function)?;
            let zeros = scan_line_zeros(&f, &fe, parse_t_range(&args.t)?, args.step)?;
            let content = match args.format {
                Format::Csv => zeros_csv(&zeros),
                Format::Json => to_json(&zeros),
            };
            emit(args.out.as_deref(), &content)?;
            Ok(EXIT_OK)
        }
        ZerosCommand::Count(args) => {
            let (f, fe) = resolve(&args.function)?;
            let report = count_zeros_box(&f, parse_rect(&args.rect)?, Some(&fe))?;
            emit(args.out.as_deref(), &to_json(&report))?;
            Ok(EXIT_OK)
        }
        ZerosCommand::Verify(args) => {
            let (f, fe) = resolve(&args.function)?;
            let v = verify_on_line(&f, &fe, parse_rect(&args.rect)?)?;
            emit(args.out.as_deref(), &to_json(&v))?;
            Ok(if v.verdict == Verdict::Pass {
                EXIT_OK
            } else {
                EXIT_CLAIM_FAIL
            })
        }
    }
}

/// File name of the zero list for one τ.
pub fn tau_file_name(tau: f64) -> String {
    format!("zeros_tau_{tau:.2}.csv")
}

pub const TRAJECTORY_FILE: &str = "trajectories.csv";
pub const PAIRING_FILE: &str = "pairing.json";

#[derive(Serialize)]
struct TrackSummary {
    family: String,
    interval: (f64, f64),
    extended: (f64, f64),
    counts: (usize, usize),
    trajectories: usize,
    merged: usize,
    lost: usize,
    verdict: Verdict,
    files: Vec<String>,
}

fn cmd_track(args: &TrackArgs) -> CliResult<i32> {
    let q = parse_family(&args.family)?;
    if args.steps < MIN_TAU_STEPS {
        return Err(CliError::usage(format!(
            "--steps must be at least {MIN_TAU_STEPS}"
        )));
    }
    let interval = parse_t_range(&args.t)?;
    if interval.0 < 0.0 {
        return Err(CliError::usage("track needs t >= 0"));
    }
    let taus: Vec<f64> = if args.taus.trim().is_empty() {
        FIGURE_TAUS.to_vec()
    } else {
        args.taus
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::usage(format!("bad τ value {p:?}")))
                    .and_then(check_tau)
            })
            .collect::<CliResult<_>>()?
    };
    let fam = DeformationFamily::for_modulus(q, args.parity.into())?;
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::usage(format!("cannot create {}: {e}", args.out_dir.display())))?;

    let mut files = Vec::new();
    for &tau in &taus {
        let phi = fam.phi(tau)?;
        let zeros = scan_line_zeros(
            &phi,
            &fam.shared_fe,
            interval,
            crate::zerofind::DEFAULT_STEP,
        )?;
        let name = tau_file_name(tau);
        emit(Some(&args.out_dir.join(&name)), &zeros_csv(&zeros))?;
        files.push(name);
    }
    let pairing = pair_zeros(&fam, interval, args.steps)?;
    emit(
        Some(&args.out_dir.join(TRAJECTORY_FILE)),
        &trajectory_csv(&pairing),
    )?;
    files.push(TRAJECTORY_FILE.to_string());
    emit(Some(&args.out_dir.join(PAIRING_FILE)), &to_json(&pairing))?;
    files.push(PAIRING_FILE.to_string());

    let summary = TrackSummary {
        family: fam.label(),
        interval: pairing.interval,
        extended: pairing.extended,
        counts: pairing.counts,
        trajectories: pairing.paired_trajectories().count(),
        merged: pairing.merged,
        lost: pairing.lost,
        verdict: pairing.verdict,
        files,
    };
    emit(None, &to_json(&summary))?;
    Ok(if pairing.verdict == Verdict::Pass {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAIL
    })
}

fn cmd_report(args: &ReportArgs) -> CliResult<i32> {
    if args.q < 3 {
        return Err(CliError::usage(format!(
            "no non-principal real character mod {}",
            args.q
        )));
    }
    if args.steps < MIN_TAU_STEPS {
        return Err(CliError::usage(format!(
            "--steps must be at least {MIN_TAU_STEPS}"
        )));
    }
    if !(args.tmax > 1.0 && args.tmax <= MAX_HEIGHT) {
        return Err(CliError::usage(format!(
            "--tmax must lie in (1, {MAX_HEIGHT}]"
        )));
    }
    let chi = select_character(args.q, args.parity.into(), args.chi.as_deref())?;
    let report = theorem4_harness(&chi, args.tmax, args.steps)?;
    emit(args.out.as_deref(), &to_json(&report))?;
    Ok(if report.verdict == Verdict::Pass {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAIL
    })
}

pub fn execute(cli: &Cli) -> CliResult<i32> {
    match &cli.command {
        Command::Chars(a) => cmd_chars(a),
        Command::VerifyFe(a) => cmd_verify_fe(a),
        Command::Zeros(z) => cmd_zeros(z),
        Command::Track(a) => cmd_track(a),
        Command::Report(a) => cmd_report(a),
    }
}

const COMMANDS: [&str; 5] = ["chars", "verify-fe", "zeros", "track", "report"];

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("config line {}: expected key = value", i + 1))
        })?;
        let k = k.trim().trim_start_matches("--").to_string();
        if k.is_empty() {
            return Err(CliError::usage(format!("config line {}: empty key", i + 1)));
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

/// Splice config entries into `argv` after the subcommand, skipping flags
/// already given on the command line. A `command` key supplies the
/// subcommand when none is given.
pub fn apply_config(argv: Vec<OsString>, entries: &[(String, String)]) -> CliResult<Vec<OsString>> {
    let mut args: Vec<String> = argv
        .into_iter()
        .map(|a| {
            a.into_string()
                .map_err(|_| CliError::usage("non-UTF-8 argument"))
        })
        .collect::<CliResult<_>>()?;
    let has_command = args.iter().skip(1).any(|a| COMMANDS.contains(&a.as_str()));
    if !has_command {
        if let Some((_, cmd)) = entries.iter().find(|(k, _)| k == "command") {
            args.extend(cmd.split_whitespace().map(str::to_string));
        }
    }
    let Some(pos) = args.iter().position(|a| COMMANDS.contains(&a.as_str())) else {
        return Ok(args.into_iter().map(OsString::from).collect());
    };
    let insert_at = if args[pos] == "zeros" {
        (pos + 2).min(args.len())
    } else {
        pos + 1
    };
    let given = |key: &str| {
        let flag = format!("--{key}");
        args.iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
    };
    let extra: Vec<String> = entries
        .iter()
        .filter(|(k, _)| k != "command" && k != "config" && !given(k))
        .map(|(k, v)| format!("--{k}={v}"))
        .collect();
    args.splice(insert_at..insert_at, extra);
    Ok(args.into_iter().map(OsString::from).collect())
}

fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_str()?;
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Parse `argv` (config file included) and run; returns the exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let argv = match config_path(&argv) {
        None => argv,
        Some(path) => {
            let spliced = std::fs::read_to_string(&path)
                .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))
                .and_then(|text| parse_config(&text))
                .and_then(|entries| apply_config(argv, &entries));
            match spliced {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {}", e.message);
                    return e.code;
                }
            }
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(14.134725141734694), "14.1347251417");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(-2.5), "-2.5");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(4.524548076221e-12), "4.52454807622e-12");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_t_range("1:30").unwrap(), (1.0, 30.0));
        assert!(parse_t_range("30:1").is_err());
        assert!(parse_t_range("0:61").is_err());
        let r = parse_rect("-1:2:1:30").unwrap();
        assert_eq!((r.sigma1, r.t2), (-1.0, 30.0));
        assert!(parse_rect("-1:2:5").is_err());
        assert_eq!(parse_family("q5").unwrap(), 5);
        assert!(parse_family("5").is_err());
    }

    #[test]
    fn equations() {
        assert_eq!(parse_fe("q8", None).unwrap().modulus, 8);
        assert_eq!(parse_fe("q7:odd", None).unwrap().kappa(), 1);
        assert!(parse_fe("q8:weird", None).is_err());
        assert!(parse_fe("char", None).is_err());
        assert!(parse_fe("inverted:q5", None).is_ok());
    }

    #[test]
    fn config_splicing() {
        let entries = parse_config("# defaults\nqmax = 13\nparity=odd\n").unwrap();
        let argv: Vec<OsString> = ["deform-zeros", "chars", "--parity", "even"]
            .iter()
            .map(OsString::from)
            .collect();
        let out: Vec<String> = apply_config(argv, &entries)
            .unwrap()
            .into_iter()
            .map(|a| a.into_string().unwrap())
            .collect();
        assert_eq!(
            out,
            ["deform-zeros", "chars", "--qmax=13", "--parity", "even"]
        );
        let entries = parse_config("command = zeros scan\nf = zeta\nt = 1:30").unwrap();
        let out = apply_config(vec![OsString::from("deform-zeros")], &entries).unwrap();
        assert_eq!(out.len(), 5);
        assert!(parse_config("novalue").is_err());
    }
}
