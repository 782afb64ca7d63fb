//! Critical-line zeros and argument-principle counts.
//!
//! Line zeros come from sign changes of the Hardy-type signal, refined by
//! bisection. Zeros anywhere in a rectangle are counted by accumulating the
//! argument of `f` around its boundary. Comparing the two counts is the
//! desk-scale check that every zero in the box sits on `Re s = 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::FunctionSpec;
use crate::error::{Error, Result};
use crate::funceq::{hardy_signal, FunctionalEquation, HardySignal};

/// Default scan step in `t`.
pub const DEFAULT_STEP: f64 = 0.05;
/// Bisection stops once the bracket half-width is below this.
pub const BRACKET_HALF_WIDTH: f64 = 1e-11;
/// Scanned zeros within this distance of a closed-form trivial ordinate are tagged trivial.
pub const TRIVIAL_MATCH_TOL: f64 = 1e-6;
/// Working box limit on `|Im s|`.
pub const MAX_HEIGHT: f64 = 60.0;
/// A boundary sample below this modulus counts as a zero on the contour.
pub const BOUNDARY_MIN_MODULUS: f64 = 1e-6;
/// Outward shift applied to a rectangle whose boundary hits a zero.
pub const BOUNDARY_PERTURBATION: f64 = 1e-4;
pub const BOUNDARY_RETRIES: usize = 3;
/// Localization stops once a sub-box is shorter than this.
pub const LOCALIZE_HEIGHT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    TrivialFactor,
    Nontrivial,
    Unclassified,
}

impl ZeroKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroKind::TrivialFactor => "trivial_factor",
            ZeroKind::Nontrivial => "nontrivial",
            ZeroKind::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub t: f64,
    pub sigma: f64,
    pub source: String,
    /// `|f|` at the reported point.
    pub residual: f64,
    pub half_width: f64,
    pub kind: ZeroKind,
}

impl ZeroRecord {
    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

/// Closed-form line zeros `t = (2k+1)π / ln q` of `1 + q^{1/2-s}` in `[t1, t2]`.
pub fn trivial_zeros(q: u64, t_range: (f64, f64)) -> Result<Vec<ZeroRecord>> {
    if q < 2 {
        return Err(Error::domain("trivial factor needs q >= 2"));
    }
    let (t1, t2) = t_range;
    let spacing = PI / (q as f64).ln();
    let mut out = Vec::new();
    // negative ordinates are the conjugates of positive ones
    let k_min = ((t1 / spacing - 1.0) / 2.0).ceil() as i64;
    let mut k = k_min;
    loop {
        let t = (2 * k + 1) as f64 * spacing;
        if t > t2 {
            break;
        }
        if t >= t1 {
            out.push(ZeroRecord {
                t,
                sigma: 0.5,
                source: format!("1+{q}^(1/2-s)"),
                residual: 0.0,
                half_width: 0.0,
                kind: ZeroKind::TrivialFactor,
            });
        }
        k += 1;
    }
    Ok(out)
}

/// Modulus of the `1 + q^{1/2-s}` factor carried by `f`, if any.
pub fn trivial_factor_modulus(f: &FunctionSpec) -> Option<u64> {
    match f {
        FunctionSpec::ScaledZeta(q) if *q >= 2 => Some(*q),
        FunctionSpec::Deformation { f0, f1, .. } => {
            trivial_factor_modulus(f0).or_else(|| trivial_factor_modulus(f1))
        }
        _ => None,
    }
}

fn default_kind(f: &FunctionSpec) -> ZeroKind {
    match f {
        FunctionSpec::PeriodicL(_)
        | FunctionSpec::DhCombination { .. }
        | FunctionSpec::HurwitzZeta(_) => ZeroKind::Unclassified,
        _ => ZeroKind::Nontrivial,
    }
}

/// Bisection on a sign-changing bracket of `z`.
pub(crate) fn bisect(
    z: &impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    mut za: f64,
) -> Result<(f64, f64)> {
    while 0.5 * (b - a) > BRACKET_HALF_WIDTH {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let zm = z(m)?;
        if zm == 0.0 {
            return Ok((m, 0.0));
        }
        if (zm < 0.0) == (za < 0.0) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    Ok((0.5 * (a + b), 0.5 * (b - a)))
}

fn classified_record(
    f: &FunctionSpec,
    t: f64,
    half_width: f64,
    trivial: &[ZeroRecord],
    base_kind: ZeroKind,
) -> Result<ZeroRecord> {
    let residual = f.eval(Complex64::new(0.5, t))?.norm();
    let kind = if trivial.iter().any(|r| (r.t - t).abs() <= TRIVIAL_MATCH_TOL) {
        ZeroKind::TrivialFactor
    } else {
        base_kind
    };
    Ok(ZeroRecord {
        t,
        sigma: 0.5,
        source: f.label(),
        residual,
        half_width,
        kind,
    })
}

/// Record for a line zero of `f` at `t`, tagged like [`scan_line_zeros`] does.
pub fn line_zero_record(f: &FunctionSpec, t: f64, half_width: f64) -> Result<ZeroRecord> {
    let trivial = match trivial_factor_modulus(f) {
        Some(q) => trivial_zeros(q, (t - 1.0, t + 1.0))?,
        None => Vec::new(),
    };
    classified_record(f, t, half_width, &trivial, default_kind(f))
}

/// Every sign change of the Hardy signal on `[t1, t2]`, refined by bisection.
pub fn scan_line_zeros(
    f: &FunctionSpec,
    fe: &FunctionalEquation,
    t_range: (f64, f64),
    step: f64,
) -> Result<Vec<ZeroRecord>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::domain("scan step must be positive"));
    }
    let (t1, t2) = t_range;
    if !(t2 > t1) {
        return Err(Error::domain("empty t range"));
    }
    if t1.abs().max(t2.abs()) > MAX_HEIGHT {
        return Err(Error::domain(format!(
            "t range exceeds |t| <= {MAX_HEIGHT}"
        )));
    }
    let n = ((t2 - t1) / step).ceil() as usize + 1;
    let samples = hardy_signal(f, fe, t_range, n.max(2))?;
    let signal = HardySignal::new(f, fe);
    let z = |t: f64| signal.z(t);
    let trivial = match trivial_factor_modulus(f) {
        Some(q) => trivial_zeros(q, (t1 - 1.0, t2 + 1.0))?,
        None => Vec::new(),
    };
    let base_kind = default_kind(f);

    let mut out = Vec::new();
    for pair in samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let hit = if a.z == 0.0 {
            Some((a.t, 0.0))
        } else if a.z * b.z < 0.0 {
            Some(bisect(&z, a.t, b.t, a.z)?)
        } else {
            None
        };
        let Some((t, half_width)) = hit else { continue };
        out.push(classified_record(f, t, half_width, &trivial, base_kind)?);
    }
    if let Some(last) = samples.last() {
        if last.z == 0.0 {
            out.push(ZeroRecord {
                t: last.t,
                sigma: 0.5,
                source: f.label(),
                residual: 0.0,
                half_width: 0.0,
                kind: base_kind,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub sigma1: f64,
    pub sigma2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl Rect {
    pub fn new(sigma1: f64, sigma2: f64, t1: f64, t2: f64) -> Result<Self> {
        let all_finite = [sigma1, sigma2, t1, t2].iter().all(|x| x.is_finite());
        if !all_finite || !(sigma2 > sigma1) || !(t2 > t1) {
            return Err(Error::domain(format!(
                "degenerate rectangle [{sigma1}, {sigma2}] x [{t1}, {t2}]"
            )));
        }
        Ok(Rect {
            sigma1,
            sigma2,
            t1,
            t2,
        })
    }

    pub fn crosses_critical_line(&self) -> bool {
        self.sigma1 < 0.5 && self.sigma2 > 0.5
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.sigma1 && s.re < self.sigma2 && s.im > self.t1 && s.im < self.t2
    }

    fn expanded(&self, by: f64) -> Rect {
        Rect {
            sigma1: self.sigma1 - by,
            sigma2: self.sigma2 + by,
            t1: self.t1 - by,
            t2: self.t2 + by,
        }
    }

    /// Counter-clockwise corners.
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma1, self.t1),
            Complex64::new(self.sigma2, self.t1),
            Complex64::new(self.sigma2, self.t2),
            Complex64::new(self.sigma1, self.t2),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxCountReport {
    /// The rectangle actually integrated over (after any perturbation).
    pub rect: Rect,
    /// Number of zeros inside, pole at `s = 1` already compensated.
    pub winding_count: i64,
    /// Line zeros of the Hardy signal inside, when the box crosses the line
    /// and an equation is supplied.
    pub line_count: Option<usize>,
    pub boundary_min_modulus: f64,
    pub poles_inside: i64,
    pub raw_winding: f64,
}

const BASE_STEP: f64 = 0.05;
const MAX_DEPTH: u32 = 24;
const MAX_ARG_JUMP: f64 = PI / 2.0;

struct Winding {
    total: f64,
    min_modulus: f64,
    unresolved: bool,
}

fn accumulate_segment(
    f: &FunctionSpec,
    a: Complex64,
    fa: Complex64,
    b: Complex64,
    fb: Complex64,
    depth: u32,
    acc: &mut Winding,
) -> Result<()> {
    let jump = (fb / fa).arg();
    if jump.abs() < MAX_ARG_JUMP {
        acc.total += jump;
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        acc.unresolved = true;
        acc.total += jump;
        return Ok(());
    }
    let m = 0.5 * (a + b);
    let fm = f.eval(m)?;
    acc.min_modulus = acc.min_modulus.min(fm.norm());
    if fm.norm() == 0.0 {
        return Ok(());
    }
    accumulate_segment(f, a, fa, m, fm, depth + 1, acc)?;
    accumulate_segment(f, m, fm, b, fb, depth + 1, acc)
}

fn winding_once(f: &FunctionSpec, rect: &Rect) -> Result<Winding> {
    let corners = rect.corners();
    let mut acc = Winding {
        total: 0.0,
        min_modulus: f64::INFINITY,
        unresolved: false,
    };
    for i in 0..4 {
        let (p, q) = (corners[i], corners[(i + 1) % 4]);
        let n = ((q - p).norm() / BASE_STEP).ceil().max(1.0) as usize;
        let mut prev_s = p;
        let mut prev_f = f.eval(p)?;
        acc.min_modulus = acc.min_modulus.min(prev_f.norm());
        for k in 1..=n {
            let s = if k == n {
                q
            } else {
                p + (q - p) * (k as f64 / n as f64)
            };
            let fs = f.eval(s)?;
            acc.min_modulus = acc.min_modulus.min(fs.norm());
            if acc.min_modulus < BOUNDARY_MIN_MODULUS {
                return Ok(acc);
            }
            accumulate_segment(f, prev_s, prev_f, s, fs, 0, &mut acc)?;
            prev_s = s;
            prev_f = fs;
        }
    }
    Ok(acc)
}

/// Zeros of `f` inside `rect` by the argument principle.
pub fn count_zeros_box(
    f: &FunctionSpec,
    rect: Rect,
    fe: Option<&FunctionalEquation>,
) -> Result<BoxCountReport> {
    let mut current = rect;
    for attempt in 0..=BOUNDARY_RETRIES {
        if attempt > 0 {
            current = rect.expanded(BOUNDARY_PERTURBATION * attempt as f64);
        }
        let pole = Complex64::new(1.0, 0.0);
        let pole_on_boundary = f.has_pole()
            && current.t1 <= 0.0
            && current.t2 >= 0.0
            && (current.sigma1 == 1.0
                || current.sigma2 == 1.0
                || current.t1 == 0.0
                || current.t2 == 0.0)
            && current.sigma1 <= 1.0
            && current.sigma2 >= 1.0;
        if pole_on_boundary {
            continue;
        }
        let w = match winding_once(f, &current) {
            Ok(w) => w,
            Err(Error::Pole { .. }) => continue,
            Err(e) => return Err(e),
        };
        if w.min_modulus < BOUNDARY_MIN_MODULUS {
            continue;
        }
        let raw = w.total / (2.0 * PI);
        let rounded = raw.round();
        if w.unresolved || (raw - rounded).abs() > 0.1 {
            return Err(Error::Precision(format!(
                "winding {raw:.6} is not an integer after refinement"
            )));
        }
        let poles_inside = i64::from(f.has_pole() && current.contains(pole));
        let line_count = match fe {
            Some(fe) if current.crosses_critical_line() => {
                Some(scan_line_zeros(f, fe, (current.t1, current.t2), DEFAULT_STEP)?.len())
            }
            _ => None,
        };
        return Ok(BoxCountReport {
            rect: current,
            winding_count: rounded as i64 + poles_inside,
            line_count,
            boundary_min_modulus: w.min_modulus,
            poles_inside,
            raw_winding: raw,
        });
    }
    Err(Error::Boundary(format!(
        "zero on the boundary of [{}, {}] x [{}, {}] after {BOUNDARY_RETRIES} perturbations",
        rect.sigma1, rect.sigma2, rect.t1, rect.t2
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineVerification {
    pub rect: Rect,
    pub winding: i64,
    pub line_count: usize,
    pub verdict: Verdict,
    /// Smallest sub-box found with mismatched counts, on failure. Shorter than
    /// [`LOCALIZE_HEIGHT`] unless the mismatch only shows on the whole box.
    pub localized: Option<BoxCountReport>,
}

/// PASS iff every zero counted in `rect` is found on the critical line.
pub fn verify_on_line(
    f: &FunctionSpec,
    fe: &FunctionalEquation,
    rect: Rect,
) -> Result<LineVerification> {
    let rect = Rect::new(rect.sigma1, rect.sigma2, rect.t1, rect.t2)?;
    if !rect.crosses_critical_line() {
        return Err(Error::domain("rectangle must straddle Re s = 1/2"));
    }
    let report = count_zeros_box(f, rect, Some(fe))?;
    let line_count = report.line_count.unwrap_or(0);
    if report.winding_count == line_count as i64 {
        return Ok(LineVerification {
            rect: report.rect,
            winding: report.winding_count,
            line_count,
            verdict: Verdict::Pass,
            localized: None,
        });
    }
    let localized = localize(f, fe, report.clone())?;
    Ok(LineVerification {
        rect: report.rect,
        winding: report.winding_count,
        line_count,
        verdict: Verdict::Fail,
        localized,
    })
}

/// Halve in `t`, following the half whose box and line counts disagree.
fn localize(
    f: &FunctionSpec,
    fe: &FunctionalEquation,
    mut report: BoxCountReport,
) -> Result<Option<BoxCountReport>> {
    while report.rect.t2 - report.rect.t1 >= LOCALIZE_HEIGHT {
        let r = report.rect;
        let mid = 0.5 * (r.t1 + r.t2);
        let lower = count_zeros_box(f, Rect::new(r.sigma1, r.sigma2, r.t1, mid)?, Some(fe))?;
        let upper = count_zeros_box(f, Rect::new(r.sigma1, r.sigma2, mid, r.t2)?, Some(fe))?;
        let excess = |b: &BoxCountReport| b.winding_count - b.line_count.unwrap_or(0) as i64;
        report = if excess(&lower) != 0 {
            lower
        } else if excess(&upper) != 0 {
            upper
        } else {
            return Ok(Some(report));
        };
    }
    Ok(Some(report))
}
