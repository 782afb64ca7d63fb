//! Riemann-type functional equations `f(s) = ε W(s) conj(f(1 - conj s))`,
//! the residual checker, and the real-valued Hardy-type signal on the
//! critical line.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{ln_cos, ln_sin, log_gamma, FunctionSpec};
use crate::characters::{root_number, DirichletCharacter, Parity};
use crate::error::{Error, Result};

/// Which printed shape of `W` is used. All shapes share
/// `2(2π)^{s-1} Γ(1-s) sin(π(s+κ)/2)`; they differ in the power of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FeKind {
    /// `q^{1/2-s} 2(2π)^{s-1} Γ(1-s) sin(π(s+κ)/2)`.
    ZetaType,
    /// `2^s q^{1/2-s} π^{s-1} Γ(1-s) sin(π(s+κ)/2)`, algebraically the same.
    DirichletType,
    /// `q^{s-1/2} 2(2π)^{s-1} Γ(1-s) sin(πs/2)`: the exponent sign as
    /// sometimes printed for the scaled-zeta equation. Kept as a negative
    /// control; no function in this crate satisfies it for `q > 1`.
    InvertedPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalEquation {
    pub modulus: u64,
    pub parity: Parity,
    pub epsilon: Complex64Ser,
    pub kind: FeKind,
}

/// `Complex64` wrapper with a `{re, im}` JSON shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex64Ser {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Ser {
    fn from(z: Complex64) -> Self {
        Complex64Ser { re: z.re, im: z.im }
    }
}

impl From<Complex64Ser> for Complex64 {
    fn from(z: Complex64Ser) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl FunctionalEquation {
    pub fn new(modulus: u64, parity: Parity, epsilon: Complex64, kind: FeKind) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        if (epsilon.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "|ε| must be 1, got {}",
                epsilon.norm()
            )));
        }
        Ok(FunctionalEquation {
            modulus,
            parity,
            epsilon: epsilon.into(),
            kind,
        })
    }

    /// ζ's own equation.
    pub fn zeta() -> Self {
        Self::scaled_zeta(1)
    }

    /// The equation shared by `(1 + q^{1/2-s})ζ(s)` and the even
    /// characters mod `q` with root number 1.
    pub fn scaled_zeta(q: u64) -> Self {
        Self::shared(q, Parity::Even)
    }

    /// `ε = 1` equation for modulus `q` and the given parity.
    pub fn shared(q: u64, parity: Parity) -> Self {
        let kind = match parity {
            Parity::Even => FeKind::ZetaType,
            Parity::Odd => FeKind::DirichletType,
        };
        Self::new(q, parity, Complex64::new(1.0, 0.0), kind).expect("q >= 1, |ε| = 1")
    }

    /// The equation `L(s, χ) = ε(χ) W(s) L(1 - s, χ̄)` at χ's own modulus.
    pub fn for_character(chi: &DirichletCharacter) -> Result<Self> {
        let root = root_number(chi);
        Self::new(
            chi.modulus(),
            chi.parity(),
            root.epsilon,
            FeKind::DirichletType,
        )
    }

    pub fn inverted_power(q: u64) -> Self {
        Self::new(
            q,
            Parity::Even,
            Complex64::new(1.0, 0.0),
            FeKind::InvertedPower,
        )
        .expect("q >= 1, |ε| = 1")
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon.into()
    }

    pub fn kappa(&self) -> u32 {
        self.parity.kappa()
    }

    /// log W(s). The imaginary part is continuous along `Re s = 1/2`.
    pub fn log_w(&self, s: Complex64) -> Result<Complex64> {
        let ln_q = (self.modulus as f64).ln();
        let power = match self.kind {
            FeKind::ZetaType | FeKind::DirichletType => (0.5 - s) * ln_q,
            FeKind::InvertedPower => (s - 0.5) * ln_q,
        };
        if is_nonpositive_integer(s) {
            return Ok(self.direct_w(s)?.ln());
        }
        // Γ(1-s) sin(π(s+κ)/2) = π / (2 Γ(s) T(πs/2)), T = cos (κ = 0) or sin (κ = 1)
        let half = s * (PI / 2.0);
        // Γ(1-s) poles at positive integers not cancelled by the trig factor
        if s.im == 0.0 && s.re >= 1.0 && s.re.fract() == 0.0 {
            let odd = s.re as u64 % 2 == 1;
            if odd == (self.trig_parity() == Parity::Even) {
                return Err(Error::pole(s));
            }
        }
        let ln_trig = match self.trig_parity() {
            Parity::Even => ln_cos(half),
            Parity::Odd => ln_sin(half),
        };
        Ok(power + s * (2.0 * PI).ln() - std::f64::consts::LN_2 - log_gamma(s)? - ln_trig)
    }

    fn trig_parity(&self) -> Parity {
        match self.kind {
            FeKind::InvertedPower => Parity::Even,
            _ => self.parity,
        }
    }

    /// Textbook product form; used only at `s = 0, -1, -2, …` where `1/Γ(s)` vanishes.
    fn direct_w(&self, s: Complex64) -> Result<Complex64> {
        let q = self.modulus as f64;
        let power = match self.kind {
            FeKind::InvertedPower => (s - 0.5) * q.ln(),
            _ => (0.5 - s) * q.ln(),
        };
        let kappa = self.trig_parity().kappa() as f64;
        let gamma = log_gamma(1.0 - s)?.exp();
        let trig = ((s + kappa) * (PI / 2.0)).sin();
        Ok(2.0 * ((s - 1.0) * (2.0 * PI).ln() + power).exp() * gamma * trig)
    }

    /// W(s), without ε.
    pub fn w_factor(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::domain("non-finite argument"));
        }
        self.log_w(s).map(|l| l.exp())
    }

    /// ε W(s).
    pub fn factor(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.epsilon() * self.w_factor(s)?)
    }
}

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// `|f(s) - ε W(s) conj(f(1 - conj s))| / (1 + |f(s)|)`.
pub fn fe_residual(f: &FunctionSpec, fe: &FunctionalEquation, s: Complex64) -> Result<f64> {
    let lhs = f.eval(s)?;
    let reflected = f.eval(1.0 - s.conj())?.conj();
    let rhs = fe.factor(s)? * reflected;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

/// `n_sigma × n_t` grid over `[σ1, σ2] × [t1, t2]`, row-major in `t`.
pub fn grid(sigma: (f64, f64), t: (f64, f64), n_sigma: usize, n_t: usize) -> Vec<Complex64> {
    let lin = |(a, b): (f64, f64), n: usize, i: usize| {
        if n <= 1 {
            a
        } else {
            a + (b - a) * i as f64 / (n - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(n_sigma * n_t);
    for j in 0..n_t {
        for i in 0..n_sigma {
            out.push(Complex64::new(lin(sigma, n_sigma, i), lin(t, n_t, j)));
        }
    }
    out
}

/// 20 × 20 points over `[-1, 2] × [1, 30]`.
pub fn standard_grid() -> Vec<Complex64> {
    grid((-1.0, 2.0), (1.0, 30.0), 20, 20)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualPoint {
    pub re_s: f64,
    pub im_s: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSweep {
    pub points: Vec<ResidualPoint>,
    /// Grid points skipped because of a pole of `f` or `W`.
    pub skipped: Vec<(f64, f64)>,
    pub max_residual: f64,
}

/// Residual at every grid point; pole errors skip the point, other errors propagate.
pub fn residual_sweep(
    f: &FunctionSpec,
    fe: &FunctionalEquation,
    points: &[Complex64],
) -> Result<ResidualSweep> {
    let mut out = Vec::with_capacity(points.len());
    let mut skipped = Vec::new();
    let mut max_residual: f64 = 0.0;
    for &s in points {
        match fe_residual(f, fe, s) {
            Ok(r) => {
                max_residual = max_residual.max(r);
                out.push(ResidualPoint {
                    re_s: s.re,
                    im_s: s.im,
                    residual: r,
                });
            }
            Err(Error::Pole { .. }) => skipped.push((s.re, s.im)),
            Err(e) => return Err(e),
        }
    }
    Ok(ResidualSweep {
        points: out,
        skipped,
        max_residual,
    })
}

/// One sample of the Hardy-type signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardySample {
    pub t: f64,
    /// Real part of `f(1/2 + it) / ω(t)`.
    pub z: f64,
    /// Imaginary part; zero up to rounding when `f` satisfies the equation.
    pub z_im: f64,
    pub est_err: f64,
}

/// `Z(t) = f(1/2 + it) / ω(t)` with `ω(t)² = ε W(1/2 + it)`.
///
/// The branch of `ω` follows the continuous phase of `log W` along the line,
/// so pointwise evaluation (for bisection) and sampling agree.
#[derive(Debug, Clone)]
pub struct HardySignal<'a> {
    pub f: &'a FunctionSpec,
    pub fe: &'a FunctionalEquation,
}

impl<'a> HardySignal<'a> {
    pub fn new(f: &'a FunctionSpec, fe: &'a FunctionalEquation) -> Self {
        HardySignal { f, fe }
    }

    /// Half the argument of `ε W(1/2 + it)`, continuous in `t`.
    pub fn phase(&self, t: f64) -> Result<f64> {
        let s = Complex64::new(0.5, t);
        Ok(0.5 * (self.fe.log_w(s)?.im + self.fe.epsilon().arg()))
    }

    fn omega(&self, t: f64) -> Result<Complex64> {
        let s = Complex64::new(0.5, t);
        let log_w = self.fe.log_w(s)?;
        Ok(Complex64::from_polar(
            (0.5 * log_w.re).exp(),
            self.phase(t)?,
        ))
    }

    pub fn sample(&self, t: f64) -> Result<HardySample> {
        let e = self.f.evaluate(Complex64::new(0.5, t))?;
        let omega = self.omega(t)?;
        let z = e.value / omega;
        Ok(HardySample {
            t,
            z: z.re,
            z_im: z.im,
            est_err: e.est_err / omega.norm(),
        })
    }

    pub fn z(&self, t: f64) -> Result<f64> {
        self.sample(t).map(|s| s.z)
    }
}

/// Max phase increment of `ω` allowed between consecutive samples.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

/// Uniform samples of `Z` on `[t1, t2]`.
///
/// Fails with a refinement error if the phase of `ω` moves by more than
/// [`MAX_PHASE_STEP`] between neighbouring samples.
pub fn hardy_signal(
    f: &FunctionSpec,
    fe: &FunctionalEquation,
    t_range: (f64, f64),
    n_points: usize,
) -> Result<Vec<HardySample>> {
    let (t1, t2) = t_range;
    if n_points < 2 || !(t2 > t1) {
        return Err(Error::domain("need t2 > t1 and at least two points"));
    }
    let signal = HardySignal::new(f, fe);
    let step = (t2 - t1) / (n_points - 1) as f64;
    let mut out = Vec::with_capacity(n_points);
    let mut last_phase: Option<f64> = None;
    for k in 0..n_points {
        let t = if k + 1 == n_points {
            t2
        } else {
            t1 + step * k as f64
        };
        let phase = signal.phase(t)?;
        if let Some(prev) = last_phase {
            if (phase - prev).abs() > MAX_PHASE_STEP {
                return Err(Error::Refinement(format!(
                    "phase of ω moved {:.3} rad between t = {:.6} and t = {:.6}; use a smaller step",
                    (phase - prev).abs(),
                    t - step,
                    t
                )));
            }
        }
        last_phase = Some(phase);
        out.push(signal.sample(t)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{gamma, riemann_zeta};
    use crate::characters::{enumerate_characters, real_characters};
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_nonprincipal(q: u64) -> DirichletCharacter {
        real_characters(q)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap()
    }

    #[test]
    fn w_real_on_real_axis() {
        let fe = FunctionalEquation::scaled_zeta(5);
        let w = fe.w_factor(c(0.3, 0.0)).unwrap();
        assert!(w.im.abs() < 1e-12);
    }

    #[test]
    fn w_unimodular_on_critical_line() {
        let fe = FunctionalEquation::scaled_zeta(5);
        let w = fe.w_factor(c(0.5, 10.0)).unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-10);
        // cross-check against the textbook product with Γ evaluated directly
        let s = c(0.5, 10.0);
        let direct = (0.5 - s).expf(5.0)
            * 2.0
            * (s - 1.0).expf(2.0 * PI)
            * gamma(1.0 - s).unwrap()
            * (s * PI / 2.0).sin();
        assert!((direct - w).norm() < 1e-12);
    }

    #[test]
    fn odd_even_ratio() {
        let s = c(0.5, 5.0);
        let even = FunctionalEquation::shared(7, Parity::Even)
            .w_factor(s)
            .unwrap();
        let odd = FunctionalEquation::shared(7, Parity::Odd)
            .w_factor(s)
            .unwrap();
        let ratio = ((s + 1.0) * PI / 2.0).sin() / (s * PI / 2.0).sin();
        assert!((odd / even - ratio).norm() < 1e-12);
    }

    #[test]
    fn w_at_nonpositive_integers_and_poles() {
        let fe = FunctionalEquation::zeta();
        // ζ(-1) = W(-1) ζ(2): W(-1) = 2 (2π)^{-2} Γ(2) sin(-π/2)
        let w = fe.w_factor(c(-1.0, 0.0)).unwrap();
        assert!((w - c(-2.0 / (4.0 * PI * PI), 0.0)).norm() < 1e-14);
        assert!(matches!(fe.w_factor(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(fe.w_factor(c(2.0, 0.0)).is_ok());
    }

    #[test]
    fn zeta_residual_and_negative_control() {
        let s = c(0.3, 7.0);
        assert!(fe_residual(&FunctionSpec::Zeta, &FunctionalEquation::zeta(), s).unwrap() < 1e-10);
        let f0 = FunctionSpec::ScaledZeta(5);
        assert!(fe_residual(&f0, &FunctionalEquation::scaled_zeta(5), s).unwrap() < 1e-10);
        assert!(fe_residual(&f0, &FunctionalEquation::scaled_zeta(8), s).unwrap() > 0.01);
        assert!(fe_residual(&f0, &FunctionalEquation::inverted_power(5), s).unwrap() > 0.01);
    }

    #[test]
    fn phi_half_residuals() {
        let f0 = Arc::new(FunctionSpec::ScaledZeta(5));
        let f1 = Arc::new(FunctionSpec::dirichlet_l(real_nonprincipal(5)));
        let phi = FunctionSpec::deformation(0.5, f0, f1).unwrap();
        let fe = FunctionalEquation::scaled_zeta(5);
        let sweep = residual_sweep(&phi, &fe, &grid((-1.0, 2.0), (1.0, 30.0), 4, 5)).unwrap();
        assert_eq!(sweep.points.len(), 20);
        assert!(sweep.max_residual < 1e-8, "{}", sweep.max_residual);
    }

    #[test]
    fn complex_character_equation() {
        for chi in enumerate_characters(7)
            .unwrap()
            .iter()
            .filter(|c| !c.is_principal())
        {
            let fe = FunctionalEquation::for_character(chi).unwrap();
            let f = FunctionSpec::dirichlet_l(chi.clone());
            for s in [c(0.2, 3.0), c(-0.7, 22.0), c(1.6, 11.0)] {
                let r = fe_residual(&f, &fe, s).unwrap();
                assert!(r < 1e-10, "{} at {s}: {r}", chi.label_string());
            }
        }
    }

    #[test]
    fn involution() {
        for fe in [
            FunctionalEquation::zeta(),
            FunctionalEquation::scaled_zeta(5),
            FunctionalEquation::shared(7, Parity::Odd),
        ] {
            for s in [c(-0.5, 3.0), c(1.7, 44.0), c(0.1, 1.5)] {
                let a = fe.factor(s).unwrap();
                let b = fe.factor(1.0 - s.conj()).unwrap().conj();
                assert!((a * b - 1.0).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn hardy_zeta_is_real_and_changes_sign() {
        let fe = FunctionalEquation::zeta();
        let samples = hardy_signal(&FunctionSpec::Zeta, &fe, (1.0, 30.0), 500).unwrap();
        for s in &samples {
            assert!(s.z_im.abs() < 1e-9, "{s:?}");
        }
        let sig = HardySignal::new(&FunctionSpec::Zeta, &fe);
        assert!(sig.z(14.0).unwrap() * sig.z(14.2).unwrap() < 0.0);
        // |Z| = |ζ| on the line
        let t = 17.3;
        assert!((sig.z(t).unwrap().abs() - riemann_zeta(c(0.5, t)).unwrap().norm()).abs() < 1e-12);
    }

    #[test]
    fn hardy_f0_trivial_sign_change() {
        let fe = FunctionalEquation::scaled_zeta(5);
        let f0 = FunctionSpec::ScaledZeta(5);
        let sig = HardySignal::new(&f0, &fe);
        let t0 = PI / 5f64.ln();
        assert!(sig.z(t0 - 0.01).unwrap() * sig.z(t0 + 0.01).unwrap() < 0.0);
    }

    #[test]
    fn coarse_sampling_is_rejected() {
        let fe = FunctionalEquation::zeta();
        let r = hardy_signal(&FunctionSpec::Zeta, &fe, (1.0, 50.0), 3);
        assert!(matches!(r, Err(Error::Refinement(_))));
    }
}
