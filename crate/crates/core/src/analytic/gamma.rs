//! Complex log-Gamma and the trigonometric logs used by the W factors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling-series coefficients B_{2k} / (2k (2k-1)), k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Principal branch of log Γ(s), analytic off the non-positive real axis.
///
/// Shifts the argument to `Re z >= 15` with the recurrence and applies the
/// Stirling series there.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("non-finite argument"));
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(Error::pole(s));
    }
    let shift = (15.0 - s.re).ceil().max(0.0) as usize;
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        correction += (s + k as f64).ln();
    }
    Ok(stirling(s + shift as f64) - correction)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// Γ(s) via `exp(log_gamma)`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    log_gamma(s).map(|l| l.exp())
}

/// Principal log of cos(z), computed without overflow for large |Im z|.
pub(crate) fn ln_cos(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return z.cos().ln();
    }
    let i = Complex64::i();
    let raw = if z.im > 0.0 {
        -i * z - std::f64::consts::LN_2 + (1.0 + (2.0 * i * z).exp()).ln()
    } else {
        i * z - std::f64::consts::LN_2 + (1.0 + (-2.0 * i * z).exp()).ln()
    };
    principal(raw)
}

/// Principal log of sin(z).
pub(crate) fn ln_sin(z: Complex64) -> Complex64 {
    ln_cos(z - PI / 2.0)
}

fn principal(z: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    let mut im = z.im % two_pi;
    if im > PI {
        im -= two_pi;
    } else if im <= -PI {
        im += two_pi;
    }
    Complex64::new(z.re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half - c(PI.sqrt().ln(), 0.0)).norm() < 1e-14);
        let g = gamma(c(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt()).abs() < 1e-13);
        // Γ(5) = 24
        assert!((gamma(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-11);
    }

    #[test]
    fn recurrence_oracle() {
        for s in [
            c(2.0, 3.0),
            c(-3.7, 0.4),
            c(0.3, -25.0),
            c(40.0, 60.0),
            c(-60.5, 10.0),
        ] {
            let lhs = log_gamma(s + 1.0).unwrap();
            let rhs = log_gamma(s).unwrap() + s.ln();
            // principal branches may differ by 2πi across the negative axis only
            let d = lhs - rhs;
            assert!(d.re.abs() < 1e-12 * lhs.norm().max(1.0), "{s}: {d}");
            let k = (d.im / (2.0 * PI)).round();
            assert!(
                (d.im - 2.0 * PI * k).abs() < 1e-11 * lhs.norm().max(1.0),
                "{s}: {d}"
            );
        }
    }

    #[test]
    fn reference_values() {
        // frozen from an independent 30-digit evaluation (mpmath.loggamma)
        let cases = [
            (
                c(2.0, 3.0),
                c(-2.092_851_753_092_733, 2.302_396_543_466_867_6),
            ),
            (
                c(0.5, 14.134_725),
                c(-21.283_835_577_051_32, 23.305_944_472_665_73),
            ),
            (
                c(-2.5, 0.5),
                c(-0.935_085_621_298_277_5, -8.870_962_885_247_46),
            ),
        ];
        for (s, expect) in cases {
            let got = log_gamma(s).unwrap();
            assert!(
                (got - expect).norm() < 1e-12 * expect.norm().max(1.0),
                "{s}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn poles_rejected() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn ln_cos_matches_direct() {
        for z in [
            c(0.3, 2.0),
            c(0.25 * PI, 19.0),
            c(1.0, -5.0),
            c(0.7, 21.0),
            c(0.7, -30.0),
        ] {
            let direct = z.cos();
            let got = ln_cos(z).exp();
            assert!((got - direct).norm() < 1e-12 * direct.norm(), "{z}");
        }
        let z = c(0.25 * PI, 40.0);
        let l = ln_cos(z);
        assert!(l.im > -PI / 2.0 && l.im < 0.0);
    }
}
