//! Hurwitz zeta by Euler–Maclaurin summation.
//!
//! The evaluator works with the regular part `ζ(s, a) - 1/(s - 1)`, which is
//! entire in `s`. Periodic Dirichlet series with zero coefficient mean are
//! then finite at `s = 1` with no cancellation between pole terms.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2k} for k = 1..=13.
const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
    8_553_103.0 / 6.0,
];

/// Number of Bernoulli correction terms.
pub const CORRECTION_TERMS: usize = 12;

/// A value together with its truncation-error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub est_err: f64,
}

impl Evaluation {
    pub fn new(value: Complex64, est_err: f64) -> Self {
        Evaluation { value, est_err }
    }
}

/// `(e^z - 1) / z`, accurate near `z = 0`.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..30 {
            term *= z / k as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

fn check_parameter(s: Complex64, a: f64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("non-finite argument"));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!(
            "Hurwitz parameter must lie in (0, 1], got {a}"
        )));
    }
    Ok(())
}

/// Regular part `ζ(s, a) - 1/(s - 1)` with its error estimate.
///
/// The shift `N` is chosen so that `N + a >= max(10, |Im s|) + max(0, -Re s)`.
pub fn hurwitz_regular(s: Complex64, a: f64) -> Result<Evaluation> {
    check_parameter(s, a)?;
    let floor = 10f64.max(s.im.abs()) + (-s.re).max(0.0);
    let n = (floor - a).ceil().max(1.0) as usize;

    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let x = n as f64 + a;
    let ln_x = x.ln();
    let x_pow = (-s * ln_x).exp(); // x^{-s}
                                   // ((x^{1-s}) - 1)/(s - 1) = -ln x · exprel((1 - s) ln x)
    sum += -ln_x * exprel((1.0 - s) * ln_x);
    sum += 0.5 * x_pow;

    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k-2) · x^{-s-2k+1}
    let mut rising = s; // s(s+1)…(s+2k-2) for k = 1
    let mut power = x_pow / x; // x^{-s-1}
    let inv_x2 = 1.0 / (x * x);
    let mut fact = 2.0; // (2k)!
    let mut last = 0.0;
    for k in 1..=CORRECTION_TERMS + 1 {
        let term = rising * power * (BERNOULLI_EVEN[k - 1] / fact);
        if k <= CORRECTION_TERMS {
            sum += term;
        } else {
            last = term.norm();
        }
        let j = 2 * k as u32;
        rising *= (s + (j - 1) as f64) * (s + j as f64);
        power *= inv_x2;
        fact *= ((j + 1) * (j + 2)) as f64;
    }
    Ok(Evaluation::new(sum, last + 4.0 * f64::EPSILON * sum.norm()))
}

/// ζ(s, a) for `0 < a <= 1`, `s != 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_eval(s, a).map(|e| e.value)
}

pub fn hurwitz_zeta_eval(s: Complex64, a: f64) -> Result<Evaluation> {
    check_parameter(s, a)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole(s));
    }
    let reg = hurwitz_regular(s, a)?;
    Ok(Evaluation::new(reg.value + 1.0 / (s - 1.0), reg.est_err))
}

/// ζ(s) = ζ(s, 1).
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        let z2 = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!((z2 - c(PI * PI / 6.0, 0.0)).norm() < 1e-12);
        let z0 = riemann_zeta(c(0.0, 0.0)).unwrap();
        assert!((z0 - c(-0.5, 0.0)).norm() < 1e-12);
        // ζ(-1) = -1/12
        let zm1 = riemann_zeta(c(-1.0, 0.0)).unwrap();
        assert!((zm1 - c(-1.0 / 12.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn duplication_identity() {
        let z3 = riemann_zeta(c(3.0, 0.0)).unwrap();
        let h = hurwitz_zeta(c(3.0, 0.0), 0.5).unwrap();
        assert!((h - 7.0 * z3).norm() < 1e-12);
        for s in [c(0.5, 14.0), c(-1.0, 40.0), c(2.5, -3.0)] {
            let lhs = hurwitz_zeta(s, 0.5).unwrap();
            let rhs = ((s * 2f64.ln()).exp() - 1.0) * riemann_zeta(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "{s}");
        }
    }

    #[test]
    fn value_at_zero() {
        for a in [0.25, 0.5, 0.75] {
            let v = hurwitz_zeta(c(0.0, 0.0), a).unwrap();
            assert!((v - c(0.5 - a, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn first_zeta_zero() {
        let v = riemann_zeta(c(0.5, 14.134_725)).unwrap();
        assert!(v.norm() < 1e-5);
    }

    #[test]
    fn reference_values() {
        // frozen from mpmath.zeta(s, a) at 30 digits
        let cases = [
            (
                c(0.5, 20.0),
                1.0,
                c(0.429_913_860_437_843_37, -1.064_291_443_080_589_1),
            ),
            (
                c(-1.0, 55.0),
                0.2,
                c(-12.944_505_842_331_458, -25.790_550_976_229_08),
            ),
            (
                c(2.0, 60.0),
                0.75,
                c(-0.338_622_035_318_905_8, -1.816_964_576_213_883_4),
            ),
            (
                c(0.5, 59.5),
                0.4,
                c(0.558_609_601_233_808, -2.994_180_607_653_930_2),
            ),
        ];
        for (s, a, expect) in cases {
            let got = hurwitz_zeta(s, a).unwrap();
            assert!(
                (got - expect).norm() < 1e-12 * expect.norm().max(1.0),
                "{s} {a}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn pole_and_domain() {
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(
            hurwitz_zeta(c(2.0, 0.0), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            hurwitz_zeta(c(2.0, 0.0), 1.5),
            Err(Error::Domain(_))
        ));
        // the regular part is finite at s = 1: ζ(s,a) - 1/(s-1) → -ψ(a)
        let r = hurwitz_regular(c(1.0, 0.0), 1.0).unwrap();
        assert!((r.value - c(0.577_215_664_901_532_9, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn error_estimate_is_small_in_working_box() {
        for s in [c(-2.0, 0.0), c(-2.0, 60.0), c(4.0, 60.0), c(0.5, 1.0)] {
            let e = hurwitz_regular(s, 0.1).unwrap();
            assert!(
                e.est_err < 1e-12 * e.value.norm().max(1.0),
                "{s}: {}",
                e.est_err
            );
        }
    }
}
