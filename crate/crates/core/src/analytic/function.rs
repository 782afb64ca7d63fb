use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::hurwitz::{hurwitz_zeta_eval, Evaluation};
use super::series::{periodic_sum, PeriodicSeries, POLE_EXCLUSION};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// An evaluable analytic function of `s`.
#[derive(Debug, Clone)]
pub enum FunctionSpec {
    Zeta,
    HurwitzZeta(f64),
    DirichletL(Arc<DirichletCharacter>),
    PeriodicL(Arc<PeriodicSeries>),
    /// `(1 + q^{1/2 - s}) ζ(s)`.
    ScaledZeta(u64),
    /// `(1 - τ) f0 + τ f1`.
    Deformation {
        tau: f64,
        f0: Arc<FunctionSpec>,
        f1: Arc<FunctionSpec>,
    },
    /// `w L(s, χ) + conj(w) L(s, χ̄)` with `w = (1 - i tan θ)/2`.
    DhCombination {
        chi: Arc<DirichletCharacter>,
        conjugate: Arc<DirichletCharacter>,
        theta: f64,
    },
}

impl FunctionSpec {
    pub fn dirichlet_l(chi: DirichletCharacter) -> Self {
        FunctionSpec::DirichletL(Arc::new(chi))
    }

    pub fn periodic(c: PeriodicSeries) -> Self {
        FunctionSpec::PeriodicL(Arc::new(c))
    }

    pub fn deformation(tau: f64, f0: Arc<FunctionSpec>, f1: Arc<FunctionSpec>) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::domain(format!("τ must lie in [0, 1], got {tau}")));
        }
        Ok(FunctionSpec::Deformation { tau, f0, f1 })
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        self.evaluate(s).map(|e| e.value)
    }

    /// Value with its truncation-error estimate.
    pub fn evaluate(&self, s: Complex64) -> Result<Evaluation> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::domain("non-finite argument"));
        }
        match self {
            FunctionSpec::Zeta => zeta_guarded(s, 1.0),
            FunctionSpec::HurwitzZeta(a) => zeta_guarded(s, *a),
            FunctionSpec::DirichletL(chi) => dirichlet_l_eval(s, chi),
            FunctionSpec::PeriodicL(c) => periodic_sum(s, c.rendered()),
            FunctionSpec::ScaledZeta(q) => {
                let z = zeta_guarded(s, 1.0)?;
                let factor = 1.0 + ((0.5 - s) * (*q as f64).ln()).exp();
                Ok(Evaluation::new(factor * z.value, factor.norm() * z.est_err))
            }
            FunctionSpec::Deformation { tau, f0, f1 } => {
                let tau = *tau;
                // the endpoints are skipped exactly so φ_0 = f0 and φ_1 = f1
                if tau == 0.0 {
                    return f0.evaluate(s);
                }
                if tau == 1.0 {
                    return f1.evaluate(s);
                }
                let a = f0.evaluate(s)?;
                let b = f1.evaluate(s)?;
                Ok(Evaluation::new(
                    (1.0 - tau) * a.value + tau * b.value,
                    (1.0 - tau) * a.est_err + tau * b.est_err,
                ))
            }
            FunctionSpec::DhCombination {
                chi,
                conjugate,
                theta,
            } => {
                let w = Complex64::new(0.5, -0.5 * theta.tan());
                let l = dirichlet_l_eval(s, chi)?;
                let lbar = dirichlet_l_eval(s, conjugate)?;
                Ok(Evaluation::new(
                    w * l.value + w.conj() * lbar.value,
                    w.norm() * (l.est_err + lbar.est_err),
                ))
            }
        }
    }

    /// Whether the function has a pole at `s = 1`.
    pub fn has_pole(&self) -> bool {
        match self {
            FunctionSpec::Zeta | FunctionSpec::HurwitzZeta(_) | FunctionSpec::ScaledZeta(_) => true,
            FunctionSpec::DirichletL(chi) => chi.is_principal(),
            FunctionSpec::PeriodicL(c) => c.has_pole(),
            FunctionSpec::Deformation { tau, f0, f1 } => {
                (*tau < 1.0 && f0.has_pole()) || (*tau > 0.0 && f1.has_pole())
            }
            FunctionSpec::DhCombination { chi, .. } => chi.is_principal(),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Zeta => write!(f, "zeta"),
            FunctionSpec::HurwitzZeta(a) => write!(f, "hurwitz({a})"),
            FunctionSpec::DirichletL(chi) => write!(f, "L({})", chi.label_string()),
            FunctionSpec::PeriodicL(c) => {
                let parts: Vec<String> = c.coefficients().iter().map(|x| x.to_string()).collect();
                write!(f, "periodic[{}]", parts.join(","))
            }
            FunctionSpec::ScaledZeta(q) => write!(f, "f0(q={q})"),
            FunctionSpec::Deformation { tau, f0, f1 } => write!(f, "phi(tau={tau}; {f0} -> {f1})"),
            FunctionSpec::DhCombination { chi, theta, .. } => {
                write!(f, "dh({}, theta={theta})", chi.label_string())
            }
        }
    }
}

fn zeta_guarded(s: Complex64, a: f64) -> Result<Evaluation> {
    if (s - 1.0).norm() < POLE_EXCLUSION {
        return Err(Error::pole(s));
    }
    hurwitz_zeta_eval(s, a)
}

fn dirichlet_l_eval(s: Complex64, chi: &DirichletCharacter) -> Result<Evaluation> {
    let q = chi.modulus() as usize;
    // values() is indexed by n mod q; periodic_sum wants n ≡ 1..=q
    let coeffs: Vec<Complex64> = (1..=q).map(|n| chi.values()[n % q]).collect();
    periodic_sum(s, &coeffs)
}

/// L(s, χ) = q^{-s} Σ_a χ(a) ζ(s, a/q).
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("non-finite argument"));
    }
    dirichlet_l_eval(s, chi).map(|e| e.value)
}

/// f0(s) = (1 + q^{1/2 - s}) ζ(s).
pub fn eval_f0(s: Complex64, q: u64) -> Result<Complex64> {
    FunctionSpec::ScaledZeta(q).eval(s)
}
