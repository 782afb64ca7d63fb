//! The convex deformation `φ_τ = (1 - τ) f0 + τ f1` between two solutions of
//! one functional equation, and the tracking of its line zeros in `τ`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{FunctionSpec, QuadInt};
use crate::characters::{
    catalog_self_dual, enumerate_characters, root_number, DirichletCharacter, Parity,
};
use crate::error::{Error, Result};
use crate::funceq::{residual_sweep, standard_grid, FunctionalEquation, HardySignal};
use crate::zerofind::{
    bisect, line_zero_record, scan_line_zeros, trivial_zeros, verify_on_line, LineVerification,
    Rect, Verdict, ZeroKind, ZeroRecord, DEFAULT_STEP, MAX_HEIGHT,
};

pub const DEFAULT_TAU_STEPS: usize = 64;
pub const MIN_TAU_STEPS: usize = 10;
/// τ values of the published figure.
pub const FIGURE_TAUS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
/// Tolerance on `fe_residual` for a family's endpoints.
pub const FE_TOL: f64 = 1e-8;
/// Window doublings before a sub-step is halved.
const WINDOW_DOUBLINGS: u32 = 3;
/// Halvings of one base τ step before the trajectory is declared lost.
const MAX_HALVINGS: u32 = 10;
/// Samples per correction window.
const WINDOW_SAMPLES: usize = 24;
/// Trajectories closer than this at a common τ are treated as one zero.
const MERGE_TOL: f64 = 1e-7;
/// Margin scanned beyond the requested interval when pairing.
const PAIRING_MARGIN: f64 = 4.0;
/// Grid spacing used to locate gap ordinates.
const GAP_GRID: f64 = 0.01;
/// Steps below this are bisection noise for continuity and reversal counts.
pub const T_RESOLUTION: f64 = 1e-9;

/// Two endpoint functions and the equation both are meant to satisfy.
#[derive(Debug, Clone)]
pub struct DeformationFamily {
    pub f0: Arc<FunctionSpec>,
    pub f1: Arc<FunctionSpec>,
    pub shared_fe: FunctionalEquation,
    /// Set when `f0` came from a real character, so the construction collapses.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EndpointResiduals {
    pub f0_max: f64,
    pub f1_max: f64,
    pub passed: bool,
}

impl DeformationFamily {
    pub fn new(f0: FunctionSpec, f1: FunctionSpec, shared_fe: FunctionalEquation) -> Self {
        DeformationFamily {
            f0: Arc::new(f0),
            f1: Arc::new(f1),
            shared_fe,
            degenerate: false,
        }
    }

    /// `f0` of the matching kind deformed into `L(s, χ)`.
    ///
    /// Even χ start from `(1 + q^{1/2-s}) ζ(s)`. Odd χ start from the
    /// combination of a complex odd primitive character mod `q` and its
    /// conjugate; when there is none the combination of χ itself is used and
    /// the family is flagged degenerate.
    pub fn for_character(chi: &DirichletCharacter) -> Result<Self> {
        if chi.is_principal() {
            return Err(Error::domain(
                "principal character has no deformation family",
            ));
        }
        let q = chi.modulus();
        let (f0, degenerate) = match chi.parity() {
            Parity::Even => (FunctionSpec::ScaledZeta(q), false),
            Parity::Odd => {
                let partner = enumerate_characters(q)?
                    .into_iter()
                    .find(|c| !c.is_real() && c.parity() == Parity::Odd && c.conductor() == q);
                match partner {
                    Some(c) => (dh_construct(&c)?.spec, false),
                    None => (dh_construct(&chi.primitive_inducing())?.spec, true),
                }
            }
        };
        Ok(DeformationFamily {
            f0: Arc::new(f0),
            f1: Arc::new(FunctionSpec::dirichlet_l(chi.clone())),
            shared_fe: FunctionalEquation::shared(q, chi.parity()),
            degenerate,
        })
    }

    /// Family for the first cataloged real character mod `q` of the given parity,
    /// primitive ones first.
    pub fn for_modulus(q: u64, parity: Parity) -> Result<Self> {
        Self::for_character(&catalog_character(q, parity)?)
    }

    pub fn phi(&self, tau: f64) -> Result<FunctionSpec> {
        FunctionSpec::deformation(tau, self.f0.clone(), self.f1.clone())
    }

    pub fn endpoint_residuals(&self) -> Result<EndpointResiduals> {
        let grid = standard_grid();
        let f0_max = residual_sweep(&self.f0, &self.shared_fe, &grid)?.max_residual;
        let f1_max = residual_sweep(&self.f1, &self.shared_fe, &grid)?.max_residual;
        Ok(EndpointResiduals {
            f0_max,
            f1_max,
            passed: f0_max < FE_TOL && f1_max < FE_TOL,
        })
    }

    pub fn label(&self) -> String {
        format!("{} -> {}", self.f0, self.f1)
    }
}

/// Real non-principal character mod `q` with root number 1, primitive ones first.
pub fn catalog_character(q: u64, parity: Parity) -> Result<DirichletCharacter> {
    if q < 3 {
        return Err(Error::domain(format!(
            "no non-principal real character mod {q}"
        )));
    }
    let mut entries: Vec<_> = catalog_self_dual(q, parity)
        .into_iter()
        .filter(|e| e.q == q)
        .collect();
    entries.sort_by_key(|e| !e.classification.is_primitive);
    entries
        .into_iter()
        .next()
        .map(|e| e.character)
        .ok_or_else(|| Error::domain(format!("no {parity} real character mod {q} with ε = 1")))
}

/// `φ_τ(s)`; exact endpoints at `τ = 0, 1`.
pub fn phi_tau(s: Complex64, tau: f64, fam: &DeformationFamily) -> Result<Complex64> {
    fam.phi(tau)?.eval(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryStatus {
    Completed,
    Merged,
    Lost,
}

impl TrajectoryStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TrajectoryStatus::Completed => "completed",
            TrajectoryStatus::Merged => "merged",
            TrajectoryStatus::Lost => "lost",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub tau: f64,
    pub t: f64,
    pub abs_phi: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub id: usize,
    pub samples: Vec<TrajectorySample>,
    pub start_zero: ZeroRecord,
    pub end_zero: Option<ZeroRecord>,
    pub status: TrajectoryStatus,
    pub tau_steps: usize,
    /// Sign changes of `Δt` along the path.
    pub direction_reversals: usize,
    pub halvings: usize,
    /// Largest `|t - t_start|` over the path.
    pub max_displacement: f64,
    /// Last τ reached before the zero could no longer be followed on the line.
    pub lost_at_tau: Option<f64>,
    #[serde(skip)]
    grid_t: Vec<f64>,
}

impl Trajectory {
    pub fn end_t(&self) -> Option<f64> {
        self.end_zero.as_ref().map(|z| z.t)
    }

    /// Largest `|Δt|` between consecutive samples.
    pub fn max_step(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[1].t - w[0].t).abs())
            .fold(0.0, f64::max)
    }

    /// `max |Δt| <= 5 × (t range spanned) / τ_steps`, up to [`T_RESOLUTION`].
    pub fn is_continuous(&self) -> bool {
        let lo = self
            .samples
            .iter()
            .map(|s| s.t)
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .samples
            .iter()
            .map(|s| s.t)
            .fold(f64::NEG_INFINITY, f64::max);
        self.max_step() <= continuity_bound(hi - lo, self.tau_steps)
    }
}

struct Tracker<'a> {
    fam: &'a DeformationFamily,
    budget: f64,
}

impl Tracker<'_> {
    fn z_at(&self, tau: f64) -> Result<impl Fn(f64) -> Result<f64> + '_> {
        let phi = self.fam.phi(tau)?;
        let fe = &self.fam.shared_fe;
        Ok(move |t: f64| HardySignal::new(&phi, fe).z(t))
    }

    /// Zero of `φ_τ` nearest `predicted`, searched in growing windows.
    fn correct(&self, tau: f64, predicted: f64, half_width: f64) -> Result<Option<f64>> {
        let z = self.z_at(tau)?;
        let mut w = half_width;
        for _ in 0..=WINDOW_DOUBLINGS {
            let lo = (predicted - w).max(0.0);
            let hi = (predicted + w).min(MAX_HEIGHT);
            let n = WINDOW_SAMPLES;
            let ts: Vec<f64> = (0..=n)
                .map(|k| lo + (hi - lo) * k as f64 / n as f64)
                .collect();
            let zs = ts.iter().map(|&t| z(t)).collect::<Result<Vec<f64>>>()?;
            let mut best: Option<(f64, usize)> = None;
            for k in 0..n {
                if zs[k] == 0.0 || zs[k] * zs[k + 1] < 0.0 {
                    let mid = 0.5 * (ts[k] + ts[k + 1]);
                    let d = (mid - predicted).abs();
                    if best.is_none_or(|(bd, _)| d < bd) {
                        best = Some((d, k));
                    }
                }
            }
            if let Some((_, k)) = best {
                if zs[k] == 0.0 {
                    return Ok(Some(ts[k]));
                }
                return Ok(Some(bisect(&z, ts[k], ts[k + 1], zs[k])?.0));
            }
            w *= 2.0;
        }
        Ok(None)
    }

    /// Advance from `(tau_a, t_a)` to `tau_b`, halving on failure.
    #[allow(clippy::too_many_arguments)]
    fn advance(
        &self,
        tau_a: f64,
        t_a: f64,
        slope: f64,
        last_dt: f64,
        tau_b: f64,
        depth: u32,
        out: &mut Vec<(f64, f64)>,
        halvings: &mut usize,
    ) -> Result<bool> {
        let dtau = tau_b - tau_a;
        let predicted = t_a + slope * dtau;
        let budget = self.budget * dtau * DEFAULT_TAU_STEPS as f64;
        let half_width = 3.0 * (last_dt.abs() + budget);
        if let Some(t_b) = self.correct(tau_b, predicted, half_width)? {
            // a jump beyond the window scale is refined before being accepted
            if (t_b - t_a).abs() <= half_width || depth >= MAX_HALVINGS {
                out.push((tau_b, t_b));
                return Ok(true);
            }
        }
        if depth >= MAX_HALVINGS {
            return Ok(false);
        }
        *halvings += 1;
        let tau_m = 0.5 * (tau_a + tau_b);
        let before = out.len();
        if !self.advance(
            tau_a,
            t_a,
            slope,
            0.5 * last_dt,
            tau_m,
            depth + 1,
            out,
            halvings,
        )? {
            return Ok(false);
        }
        let (_, t_m) = out[out.len() - 1];
        let new_slope = if out.len() > before {
            (t_m - t_a) / (tau_m - tau_a)
        } else {
            slope
        };
        self.advance(
            tau_m,
            t_m,
            new_slope,
            t_m - t_a,
            tau_b,
            depth + 1,
            out,
            halvings,
        )
    }
}

const MAX_REFINEMENT_POINTS: usize = 4096;

fn continuity_bound(range: f64, tau_steps: usize) -> f64 {
    (5.0 * range / tau_steps as f64).max(T_RESOLUTION)
}

/// Insert intermediate τ samples wherever `|Δt|` exceeds `5 × range / τ_steps`.
fn refine_continuity(
    tracker: &Tracker<'_>,
    points: &mut Vec<(f64, f64)>,
    tau_steps: usize,
) -> Result<()> {
    let mut inserted = 0;
    loop {
        let lo = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let bound = continuity_bound(hi - lo, tau_steps);
        let Some(i) = points
            .windows(2)
            .position(|w| (w[1].1 - w[0].1).abs() > bound)
        else {
            return Ok(());
        };
        if inserted >= MAX_REFINEMENT_POINTS {
            return Ok(());
        }
        let ((ta, xa), (tb, xb)) = (points[i], points[i + 1]);
        let tau_m = 0.5 * (ta + tb);
        if tau_m <= ta || tau_m >= tb {
            return Ok(());
        }
        let Some(x) = tracker.correct(tau_m, 0.5 * (xa + xb), (xb - xa).abs())? else {
            return Ok(());
        };
        points.insert(i + 1, (tau_m, x));
        inserted += 1;
    }
}

/// Follow the line zero `z0` of `f0` through `φ_τ` up to `τ = 1`.
pub fn track_zero(
    z0: &ZeroRecord,
    fam: &DeformationFamily,
    tau_steps: usize,
) -> Result<Trajectory> {
    track_with_id(0, z0, fam, tau_steps)
}

fn track_with_id(
    id: usize,
    z0: &ZeroRecord,
    fam: &DeformationFamily,
    tau_steps: usize,
) -> Result<Trajectory> {
    if tau_steps < MIN_TAU_STEPS {
        return Err(Error::domain(format!(
            "τ steps must be at least {MIN_TAU_STEPS}"
        )));
    }
    // per-step t budget, scaled to the default grid
    let tracker = Tracker {
        fam,
        budget: 4.0 / DEFAULT_TAU_STEPS as f64,
    };
    let mut points = vec![(0.0, z0.t)];
    let mut grid_t = vec![z0.t];
    let mut halvings = 0;
    let mut status = TrajectoryStatus::Completed;
    let (mut slope, mut last_dt) = (0.0, 0.0);
    for k in 0..tau_steps {
        let tau_a = k as f64 / tau_steps as f64;
        let tau_b = (k + 1) as f64 / tau_steps as f64;
        let (_, t_a) = *points.last().expect("non-empty");
        let mut step = Vec::new();
        if !tracker.advance(
            tau_a,
            t_a,
            slope,
            last_dt,
            tau_b,
            0,
            &mut step,
            &mut halvings,
        )? {
            status = TrajectoryStatus::Lost;
            points.extend(step);
            break;
        }
        let (_, t_b) = *step.last().expect("advance pushes on success");
        points.extend(step);
        last_dt = t_b - t_a;
        slope = last_dt / (tau_b - tau_a);
        grid_t.push(t_b);
    }

    refine_continuity(&tracker, &mut points, tau_steps)?;
    let mut samples = Vec::with_capacity(points.len());
    for &(tau, t) in &points {
        let abs_phi = phi_tau(Complex64::new(0.5, t), tau, fam)?.norm();
        samples.push(TrajectorySample { tau, t, abs_phi });
    }
    let end_zero = match status {
        TrajectoryStatus::Completed => Some(line_zero_record(
            &fam.f1,
            samples[samples.len() - 1].t,
            0.0,
        )?),
        _ => None,
    };
    let mut reversals = 0;
    let mut last_sign = 0.0;
    for w in samples.windows(2) {
        let d = w[1].t - w[0].t;
        if d.abs() > T_RESOLUTION {
            if last_sign != 0.0 && d.signum() != last_sign {
                reversals += 1;
            }
            last_sign = d.signum();
        }
    }
    let max_displacement = samples
        .iter()
        .map(|s| (s.t - z0.t).abs())
        .fold(0.0, f64::max);
    let lost_at_tau = (status == TrajectoryStatus::Lost).then(|| samples[samples.len() - 1].tau);
    Ok(Trajectory {
        id,
        samples,
        start_zero: z0.clone(),
        end_zero,
        status,
        tau_steps,
        direction_reversals: reversals,
        halvings,
        max_displacement,
        lost_at_tau,
        grid_t,
    })
}

/// Track every zero in `zeros`, in order, marking trajectories that coincide.
pub fn track_all(
    zeros: &[ZeroRecord],
    fam: &DeformationFamily,
    tau_steps: usize,
) -> Result<Vec<Trajectory>> {
    let mut out = std::thread::scope(|scope| {
        let handles: Vec<_> = zeros
            .iter()
            .enumerate()
            .map(|(i, z)| scope.spawn(move || track_with_id(i, z, fam, tau_steps)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("tracking thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let n = out.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&out[i].grid_t, &out[j].grid_t);
            let meet = a
                .iter()
                .zip(b)
                .skip(1)
                .any(|(x, y)| (x - y).abs() < MERGE_TOL);
            if meet {
                for k in [i, j] {
                    if out[k].status == TrajectoryStatus::Completed {
                        out[k].status = TrajectoryStatus::Merged;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub interval: (f64, f64),
    pub extended: (f64, f64),
    /// `(t of f0 zero, t of f1 zero)`; the second is absent for unfinished trajectories.
    pub pairs: Vec<(f64, Option<f64>)>,
    pub counts: (usize, usize),
    pub count_difference: i64,
    /// f1 zeros in the extended interval no trajectory reached.
    pub unpaired_f1: Vec<f64>,
    pub merged: usize,
    pub lost: usize,
    /// Some trajectory crosses each candidate boundary, or some tracking failed.
    pub partial: bool,
    pub verdict: Verdict,
    pub trajectories: Vec<Trajectory>,
    #[serde(skip)]
    pub f0_zeros: Vec<ZeroRecord>,
    #[serde(skip)]
    pub f1_zeros: Vec<ZeroRecord>,
}

impl PairingReport {
    pub fn in_extended(&self, t: f64) -> bool {
        t >= self.extended.0 && t <= self.extended.1
    }

    /// Trajectories that start inside the extended interval.
    pub fn paired_trajectories(&self) -> impl Iterator<Item = &Trajectory> {
        self.trajectories
            .iter()
            .filter(|tr| self.in_extended(tr.start_zero.t))
    }
}

/// Local maxima of `min(|Z_f0|, |Z_f1|)` on `[lo, hi]`.
fn gap_ordinates(fam: &DeformationFamily, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let z0 = HardySignal::new(&fam.f0, &fam.shared_fe);
    let z1 = HardySignal::new(&fam.f1, &fam.shared_fe);
    let n = ((hi - lo) / GAP_GRID).ceil() as usize;
    let mut m = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = lo + (hi - lo) * k as f64 / n as f64;
        m.push((t, z0.z(t)?.abs().min(z1.z(t)?.abs())));
    }
    Ok(m.windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 >= w[2].1)
        .map(|w| w[1].0)
        .collect())
}

fn crossed(trajectories: &[Trajectory], f1_zeros: &[ZeroRecord], b: f64) -> bool {
    let near_zero = f1_zeros.iter().any(|z| (z.t - b).abs() < 1e-6);
    near_zero
        || trajectories.iter().any(|tr| {
            let s = tr.start_zero.t;
            (s - b).abs() < 1e-6 || tr.end_t().is_some_and(|e| (s < b) != (e < b))
        })
}

/// Track the f0 zeros around `interval` and pair them with f1 zeros over an
/// extension `I′` whose ends no trajectory crosses.
///
/// Each end of `I` is kept if nothing crosses it; otherwise it moves outward to
/// the nearest gap ordinate, a local maximum of `min(|Z_f0|, |Z_f1|)`, that
/// nothing crosses.
pub fn pair_zeros(
    fam: &DeformationFamily,
    interval: (f64, f64),
    tau_steps: usize,
) -> Result<PairingReport> {
    let (t1, t2) = interval;
    if !(t2 > t1) || t1 < 0.0 || t2 > MAX_HEIGHT {
        return Err(Error::domain(format!(
            "interval ({t1}, {t2}) outside [0, {MAX_HEIGHT}]"
        )));
    }
    let lo = (t1 - PAIRING_MARGIN).max(0.0);
    let hi = (t2 + PAIRING_MARGIN).min(MAX_HEIGHT);
    let f0_zeros = scan_line_zeros(&fam.f0, &fam.shared_fe, (lo, hi), DEFAULT_STEP)?;
    let f1_zeros = scan_line_zeros(&fam.f1, &fam.shared_fe, (lo, hi), DEFAULT_STEP)?;
    let trajectories = track_all(&f0_zeros, fam, tau_steps)?;

    let gaps = gap_ordinates(fam, lo, hi)?;
    let mut partial = false;
    let lower_candidates = std::iter::once(t1)
        .chain(gaps.iter().rev().copied().filter(|&g| g < t1))
        .chain((lo == 0.0).then_some(0.0));
    let lower = lower_candidates
        .clone()
        .find(|&b| b == 0.0 || !crossed(&trajectories, &f1_zeros, b));
    let lower = lower.unwrap_or_else(|| {
        partial = true;
        lower_candidates.last().unwrap_or(t1)
    });
    let upper_candidates = std::iter::once(t2).chain(gaps.iter().copied().filter(|&g| g > t2));
    let upper = upper_candidates
        .clone()
        .find(|&b| !crossed(&trajectories, &f1_zeros, b));
    let upper = upper.unwrap_or_else(|| {
        partial = true;
        upper_candidates.last().unwrap_or(t2)
    });

    let inside = |t: f64| t >= lower && t <= upper;
    let n0 = f0_zeros.iter().filter(|z| inside(z.t)).count();
    let n1 = f1_zeros.iter().filter(|z| inside(z.t)).count();
    let mut pairs = Vec::new();
    let (mut merged, mut lost) = (0, 0);
    for tr in trajectories.iter().filter(|tr| inside(tr.start_zero.t)) {
        match tr.status {
            TrajectoryStatus::Merged => merged += 1,
            TrajectoryStatus::Lost => lost += 1,
            TrajectoryStatus::Completed => {}
        }
        let end = match tr.status {
            TrajectoryStatus::Completed => tr.end_t(),
            _ => None,
        };
        pairs.push((tr.start_zero.t, end));
    }
    let reached: Vec<f64> = pairs.iter().filter_map(|p| p.1).collect();
    let unpaired_f1: Vec<f64> = f1_zeros
        .iter()
        .filter(|z| inside(z.t) && !reached.iter().any(|r| (r - z.t).abs() < 1e-6))
        .map(|z| z.t)
        .collect();
    partial |= merged + lost > 0;
    let diff = n0 as i64 - n1 as i64;
    Ok(PairingReport {
        interval,
        extended: (lower, upper),
        pairs,
        counts: (n0, n1),
        count_difference: diff,
        unpaired_f1,
        merged,
        lost,
        partial,
        verdict: if diff.abs() <= 1 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        trajectories,
        f0_zeros,
        f1_zeros,
    })
}

/// Coefficients `b_1, …, b_N` of `Σ c_n n^{-s} / (1 + √q q^{-s})` in `Z[√q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientStream {
    pub q: u64,
    /// `coefficients[n - 1] = b_n`.
    pub coefficients: Vec<QuadInt>,
}

impl CoefficientStream {
    pub fn coefficient(&self, n: u64) -> QuadInt {
        self.coefficients[(n - 1) as usize]
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `(1 + √q q^{-s}) Σ b_n n^{-s}` back as `d_1, …, d_N`.
    pub fn multiply_back(&self) -> Vec<QuadInt> {
        let root = QuadInt::root(self.q);
        (1..=self.len() as u64)
            .map(|n| {
                let b = self.coefficient(n);
                if n % self.q == 0 {
                    b + root * self.coefficient(n / self.q)
                } else {
                    b
                }
            })
            .collect()
    }

    /// Truncated direct sum, only for `Re s >= 2`.
    pub fn eval_direct(&self, s: Complex64) -> Result<Complex64> {
        if s.re < 2.0 {
            return Err(Error::domain(
                "direct summation of the quotient series needs Re s >= 2",
            ));
        }
        Ok(self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .map(|(i, b)| b.to_f64() * (-s * ((i + 1) as f64).ln()).exp())
            .sum())
    }

    /// `max_{n <= N} |b_1 + … + b_n|` at each `N` in `checkpoints`.
    pub fn partial_sum_maxima(&self, checkpoints: &[usize]) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        let (mut sum, mut max) = (0.0f64, 0.0f64);
        let mut next = checkpoints.iter().peekable();
        for (i, b) in self.coefficients.iter().enumerate() {
            sum += b.to_f64();
            max = max.max(sum.abs());
            while next.peek().is_some_and(|&&c| c == i + 1) {
                out.push((i + 1, max));
                next.next();
            }
        }
        out
    }
}

/// `b_n = c_n - √q b_{n/q}`, exact in `Z[√q]`, for `n <= n_max`.
///
/// `c_of(n)` supplies the numerator coefficients in the same ring.
pub fn divide_by_trivial_factor(
    c_of: impl Fn(u64) -> QuadInt,
    q: u64,
    n_max: usize,
) -> Result<CoefficientStream> {
    if q < 2 {
        return Err(Error::domain("trivial factor needs q >= 2"));
    }
    let root = QuadInt::root(q);
    let mut b: Vec<QuadInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max as u64 {
        let c = c_of(n);
        if c.d != q && c.b != 0 {
            return Err(Error::domain(format!("coefficient {c} is not in Z[√{q}]")));
        }
        let c = QuadInt::new(c.a, c.b, q);
        let v = if n % q == 0 {
            c - root * b[(n / q - 1) as usize]
        } else {
            c
        };
        b.push(v);
    }
    Ok(CoefficientStream { q, coefficients: b })
}

/// Quotient of the series of a real character by `1 + √q q^{-s}`.
pub fn divide_character_series(
    chi: &DirichletCharacter,
    n_max: usize,
) -> Result<CoefficientStream> {
    if !chi.is_real() {
        return Err(Error::domain("exact division needs integer coefficients"));
    }
    let q = chi.modulus();
    divide_by_trivial_factor(
        |n| QuadInt::integer(chi.value(n as i64).re.round() as i64, q),
        q,
        n_max,
    )
}

#[derive(Debug, Clone)]
pub struct DhConstruction {
    pub spec: FunctionSpec,
    pub theta: f64,
    /// χ real, so the combination is `L(s, χ)` itself.
    pub degenerate: bool,
}

/// `w L(s, χ) + conj(w) L(s, χ̄)` with `w = (1 - i tan θ)/2`, `θ = arg ε(χ) / 2`.
pub fn dh_construct(chi: &DirichletCharacter) -> Result<DhConstruction> {
    if chi.conductor() != chi.modulus() {
        return Err(Error::domain(format!(
            "{} is not primitive",
            chi.label_string()
        )));
    }
    let eps = root_number(chi).epsilon;
    let degenerate = chi.is_real();
    // real χ has ε = 1 exactly; rounding in the Gauss sum is not carried into θ
    let theta = if degenerate { 0.0 } else { 0.5 * eps.arg() };
    if theta.cos().abs() < 1e-12 {
        return Err(Error::domain("ε(χ) = -1 makes tan θ infinite"));
    }
    Ok(DhConstruction {
        spec: FunctionSpec::DhCombination {
            chi: Arc::new(chi.clone()),
            conjugate: Arc::new(chi.conjugate()),
            theta,
        },
        theta,
        degenerate,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TauCheck {
    pub tau: f64,
    pub fe_max_residual: f64,
    pub line_check: Option<LineVerification>,
    pub line_check_error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialZeroValue {
    pub k: u64,
    pub t: f64,
    pub abs_l: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisionSummary {
    pub first_coefficients: Vec<String>,
    pub round_trip_terms: usize,
    pub round_trip_exact: bool,
    /// `(N, max_{n<=N} |partial sum|)`.
    pub partial_sum_maxima: Vec<(usize, f64)>,
    /// Slope of `log max|partial sum|` against `log N` over the last two checkpoints.
    pub growth_exponent: f64,
    /// Abscissa of convergence of the undivided periodic series.
    pub undivided_abscissa: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialTrajectory {
    pub start_t: f64,
    pub end_t: Option<f64>,
    pub max_displacement: f64,
    pub stays_fixed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub q: u64,
    pub parity: Parity,
    pub character: String,
    pub primitive: bool,
    pub f0: String,
    pub f1: String,
    pub degenerate_f0: bool,
    pub t_max: f64,
    pub tau_steps: usize,
    pub endpoint_residuals: EndpointResiduals,
    pub tau_checks: Vec<TauCheck>,
    pub fe_verdict: Verdict,
    pub line_verdict: Verdict,
    pub pairing: PairingReport,
    pub count_verdict: Verdict,
    /// `|L(1/2 + i(2k+1)π/ln q, χ)|` at the zeros of `1 + q^{1/2-s}` up to `t_max`.
    pub trivial_zero_values: Vec<TrivialZeroValue>,
    pub trivial_zeros_preserved_verdict: Verdict,
    pub trivial_trajectories: Vec<TrivialTrajectory>,
    pub division: DivisionSummary,
    pub verdict: Verdict,
}

/// A zero of `1 + q^{1/2-s}` counts as a zero of `L` below this modulus.
pub const TRIVIAL_ZERO_TOL: f64 = 1e-8;
/// A trivial-factor trajectory counts as fixed within this displacement.
pub const FIXED_TOL: f64 = 1e-6;
const DIVISION_TERMS: usize = 10_000;

fn and(a: Verdict, b: Verdict) -> Verdict {
    if a == Verdict::Pass && b == Verdict::Pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Every claim check for the family ending in `L(s, χ)`, over `t ∈ (1, t_max)`.
pub fn theorem4_harness(
    chi: &DirichletCharacter,
    t_max: f64,
    tau_steps: usize,
) -> Result<HarnessReport> {
    if !(t_max > 1.0) || t_max > MAX_HEIGHT {
        return Err(Error::domain(format!(
            "t_max must lie in (1, {MAX_HEIGHT}]"
        )));
    }
    let fam = DeformationFamily::for_character(chi)?;
    let q = chi.modulus();
    let grid = standard_grid();
    let endpoint_residuals = fam.endpoint_residuals()?;

    let mut tau_checks = Vec::new();
    let rect = Rect::new(-1.0, 2.0, 1.0, t_max)?;
    for &tau in &FIGURE_TAUS {
        let phi = fam.phi(tau)?;
        let fe_max_residual = residual_sweep(&phi, &fam.shared_fe, &grid)?.max_residual;
        let (line_check, line_check_error) = match verify_on_line(&phi, &fam.shared_fe, rect) {
            Ok(v) => (Some(v), None),
            Err(e @ (Error::Boundary(_) | Error::Precision(_) | Error::Refinement(_))) => {
                (None, Some(e.to_string()))
            }
            Err(e) => return Err(e),
        };
        tau_checks.push(TauCheck {
            tau,
            fe_max_residual,
            line_check,
            line_check_error,
        });
    }
    let fe_ok = endpoint_residuals.passed && tau_checks.iter().all(|c| c.fe_max_residual < FE_TOL);
    let line_ok = tau_checks.iter().all(|c| {
        c.line_check
            .as_ref()
            .is_some_and(|v| v.verdict == Verdict::Pass)
    });

    let pairing = pair_zeros(&fam, (1.0, t_max), tau_steps)?;
    let count_verdict = pairing.verdict;

    let l = FunctionSpec::dirichlet_l(chi.clone());
    let spacing = PI / (q as f64).ln();
    let mut trivial_zero_values = Vec::new();
    for z in trivial_zeros(q, (0.0, t_max))? {
        let k = ((z.t / spacing - 1.0) / 2.0).round() as u64;
        let abs_l = l.eval(z.s())?.norm();
        trivial_zero_values.push(TrivialZeroValue { k, t: z.t, abs_l });
    }
    let preserved = trivial_zero_values
        .iter()
        .all(|v| v.abs_l < TRIVIAL_ZERO_TOL);

    let trivial_trajectories: Vec<TrivialTrajectory> = pairing
        .trajectories
        .iter()
        .filter(|tr| tr.start_zero.kind == ZeroKind::TrivialFactor && tr.start_zero.t <= t_max)
        .map(|tr| TrivialTrajectory {
            start_t: tr.start_zero.t,
            end_t: tr.end_t(),
            max_displacement: tr.max_displacement,
            stays_fixed: tr.max_displacement <= FIXED_TOL,
        })
        .collect();

    let division = if chi.is_real() {
        let stream = divide_character_series(chi, DIVISION_TERMS * 10)?;
        let back = stream.multiply_back();
        let round_trip_exact = (1..=DIVISION_TERMS as u64).all(|n| {
            back[(n - 1) as usize] == QuadInt::integer(chi.value(n as i64).re.round() as i64, q)
        });
        let checkpoints = [100, 1_000, 10_000, 100_000];
        let maxima = stream.partial_sum_maxima(&checkpoints);
        let growth_exponent = match maxima.as_slice() {
            [.., (n_a, m_a), (n_b, m_b)] => (m_b / m_a).ln() / (*n_b as f64 / *n_a as f64).ln(),
            _ => f64::NAN,
        };
        DivisionSummary {
            first_coefficients: (1..=10)
                .map(|n| stream.coefficient(n).to_string())
                .collect(),
            round_trip_terms: DIVISION_TERMS,
            round_trip_exact,
            partial_sum_maxima: maxima,
            growth_exponent,
            undivided_abscissa: if chi.is_principal() { 1.0 } else { 0.0 },
        }
    } else {
        return Err(Error::domain("harness expects a real character"));
    };

    let trivial_zeros_preserved_verdict = if preserved {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let fe_verdict = if fe_ok { Verdict::Pass } else { Verdict::Fail };
    let line_verdict = if line_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let verdict = [line_verdict, count_verdict, trivial_zeros_preserved_verdict]
        .into_iter()
        .fold(fe_verdict, and);
    Ok(HarnessReport {
        q,
        parity: chi.parity(),
        character: chi.label_string(),
        primitive: chi.conductor() == q,
        f0: fam.f0.label(),
        f1: fam.f1.label(),
        degenerate_f0: fam.degenerate,
        t_max,
        tau_steps,
        endpoint_residuals,
        tau_checks,
        fe_verdict,
        line_verdict,
        pairing,
        count_verdict,
        trivial_zero_values,
        trivial_zeros_preserved_verdict,
        trivial_trajectories,
        division,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::real_characters;

    fn chi5() -> DirichletCharacter {
        real_characters(5)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap()
    }

    fn q5() -> DeformationFamily {
        DeformationFamily::for_modulus(5, Parity::Even).unwrap()
    }

    #[test]
    fn phi_identity() {
        let fam = q5();
        let s = Complex64::new(0.7, 9.0);
        let a = phi_tau(s, 0.2, &fam).unwrap();
        let b = phi_tau(s, 0.7, &fam).unwrap();
        let diff = fam.f0.eval(s).unwrap() - fam.f1.eval(s).unwrap();
        assert!(((a - b).norm() - 0.5 * diff.norm()).abs() < 1e-12);
        assert_eq!(phi_tau(s, 0.0, &fam).unwrap(), fam.f0.eval(s).unwrap());
        assert_eq!(phi_tau(s, 1.0, &fam).unwrap(), fam.f1.eval(s).unwrap());
        assert!(matches!(
            phi_tau(Complex64::new(1.0, 0.0), 0.5, &fam),
            Err(Error::Pole { .. })
        ));
        assert!(phi_tau(s, -0.1, &fam).is_err());
    }

    #[test]
    fn family_endpoints_satisfy_shared_equation() {
        let r = q5().endpoint_residuals().unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn division_prefix_and_round_trip() {
        let b = divide_character_series(&chi5(), 30).unwrap();
        let r5 = QuadInt::root(5);
        let one = QuadInt::integer(1, 5);
        let expect = [one, -one, -one, one, -r5, one, -one, -one, one, r5];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(b.coefficient(n as u64 + 1), *e, "b_{}", n + 1);
        }
        assert_eq!(b.coefficient(25), QuadInt::integer(5, 5));
    }

    #[test]
    fn division_round_trip() {
        let chi = chi5();
        let b = divide_character_series(&chi, 10_000).unwrap();
        for (i, d) in b.multiply_back().iter().enumerate() {
            assert_eq!(*d, QuadInt::integer(chi.value(i as i64 + 1).re as i64, 5));
        }
    }

    #[test]
    fn division_direct_sum() {
        let chi = chi5();
        let b = divide_character_series(&chi, 200_000).unwrap();
        let s = Complex64::new(2.0, 3.0);
        let quotient = b.eval_direct(s).unwrap();
        let factor = 1.0 + 5f64.sqrt() * (-s * 5f64.ln()).exp();
        let l = crate::analytic::dirichlet_l(s, &chi).unwrap();
        assert!((quotient * factor - l).norm() < 1e-8);
        assert!(b.eval_direct(Complex64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn dh_real_is_degenerate() {
        let c = dh_construct(&chi5()).unwrap();
        assert!(c.degenerate);
        let s = Complex64::new(0.3, 7.0);
        let l = crate::analytic::dirichlet_l(s, &chi5()).unwrap();
        assert!((c.spec.eval(s).unwrap() - l).norm() < 1e-13);
    }

    #[test]
    fn dh_complex_mod5_satisfies_equation() {
        let chi = enumerate_characters(5)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_real())
            .unwrap();
        let c = dh_construct(&chi).unwrap();
        let fe = FunctionalEquation::shared(5, chi.parity());
        let sweep = residual_sweep(&c.spec, &fe, &standard_grid()).unwrap();
        assert!(sweep.max_residual < 1e-8, "{}", sweep.max_residual);
        assert!((c.spec.eval(Complex64::new(10.0, 0.0)).unwrap() - 1.0).norm() < 1e-3);
    }

    #[test]
    fn dh_rejects_imprimitive() {
        let chi = real_characters(10)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap();
        assert!(dh_construct(&chi).is_err());
    }

    #[test]
    fn track_first_zeta_zero() {
        let fam = q5();
        let z0 = line_zero_record(&fam.f0, 14.134_725_141_734_694, 0.0).unwrap();
        let tr = track_zero(&z0, &fam, DEFAULT_TAU_STEPS).unwrap();
        assert_eq!(tr.status, TrajectoryStatus::Completed);
        let end = tr.end_zero.unwrap();
        assert!(end.residual < 1e-7);
        let coarse = track_zero(&z0, &fam, 10).unwrap();
        let fine = track_zero(&z0, &fam, 100).unwrap();
        assert!((coarse.end_t().unwrap() - fine.end_t().unwrap()).abs() < 1e-6);
        assert!(track_zero(&z0, &fam, 9).is_err());
    }

    #[test]
    fn empty_interval_pairs_nothing() {
        let r = pair_zeros(&q5(), (0.0, 0.5), DEFAULT_TAU_STEPS).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.extended, (0.0, 0.5));
        assert_eq!(r.counts, (0, 0));
    }

    #[test]
    fn continuity_bound_holds() {
        let fam = q5();
        let grid = crate::funceq::grid((-1.0, 2.0), (1.0, 30.0), 5, 10);
        let mut m = 0.0f64;
        let mut vals = Vec::new();
        for &s in &grid {
            let (a, b) = (fam.f0.eval(s).unwrap(), fam.f1.eval(s).unwrap());
            m = m.max(a.norm()).max(b.norm());
            vals.push((a, b));
        }
        for &ta in &FIGURE_TAUS {
            for &tb in &FIGURE_TAUS {
                for &(a, b) in &vals {
                    let pa = (1.0 - ta) * a + ta * b;
                    let pb = (1.0 - tb) * a + tb * b;
                    assert!((pa - pb).norm() <= 2.0 * m * (ta - tb).abs() + 1e-12);
                }
            }
        }
    }
}
