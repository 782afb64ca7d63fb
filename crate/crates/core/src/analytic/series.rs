//! Periodic Dirichlet series with coefficients in `Z[√d]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::hurwitz::{hurwitz_regular, Evaluation};
use crate::error::{Error, Result};

/// Distance from `s = 1` inside which series with a pole are not evaluated.
pub const POLE_EXCLUSION: f64 = 1e-8;

/// Exact element `a + b√d` of `Z[√d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
    pub d: u64,
}

impl QuadInt {
    pub fn new(a: i64, b: i64, d: u64) -> Self {
        QuadInt { a, b, d }
    }

    pub fn integer(a: i64, d: u64) -> Self {
        QuadInt { a, b: 0, d }
    }

    /// `√d` itself.
    pub fn root(d: u64) -> Self {
        QuadInt { a: 0, b: 1, d }
    }

    pub fn zero(d: u64) -> Self {
        QuadInt { a: 0, b: 0, d }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * (self.d as f64).sqrt()
    }

    fn same_ring(self, other: QuadInt) -> u64 {
        assert_eq!(self.d, other.d, "mixed radicands in Z[√d] arithmetic");
        self.d
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        let d = self.same_ring(o);
        QuadInt::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        let d = self.same_ring(o);
        QuadInt::new(self.a - o.a, self.b - o.b, d)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b, self.d)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        let d = self.same_ring(o);
        QuadInt::new(
            self.a * o.a + self.b * o.b * d as i64,
            self.a * o.b + self.b * o.a,
            d,
        )
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d;
        let root = |b: i64| {
            if b.abs() == 1 {
                format!("√{d}")
            } else {
                format!("{}√{d}", b.abs())
            }
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) if b < 0 => write!(f, "-{}", root(b)),
            (0, b) => write!(f, "{}", root(b)),
            (a, b) if b < 0 => write!(f, "{a}-{}", root(b)),
            (a, b) => write!(f, "{a}+{}", root(b)),
        }
    }
}

/// Coefficients `c_1, …, c_q` of a `q`-periodic Dirichlet series
/// `Σ c_{n mod q} n^{-s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSeries {
    radicand: u64,
    coefficients: Vec<QuadInt>,
    rendered: Vec<Complex64>,
}

impl PeriodicSeries {
    /// `coefficients[i]` is the coefficient of `n ≡ i + 1 (mod q)`.
    pub fn new(coefficients: Vec<QuadInt>) -> Result<Self> {
        let Some(first) = coefficients.first() else {
            return Err(Error::domain("period must be positive"));
        };
        let radicand = first.d;
        if coefficients.iter().any(|c| c.d != radicand) {
            return Err(Error::domain("coefficients from different rings"));
        }
        if coefficients.iter().all(QuadInt::is_zero) {
            return Err(Error::domain("coefficient vector is identically zero"));
        }
        let rendered = coefficients
            .iter()
            .map(|c| Complex64::new(c.to_f64(), 0.0))
            .collect();
        Ok(PeriodicSeries {
            radicand,
            coefficients,
            rendered,
        })
    }

    /// Integer coefficients, radicand 1.
    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&a| QuadInt::integer(a, 1))
                .collect(),
        )
    }

    pub fn period(&self) -> u64 {
        self.coefficients.len() as u64
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn coefficients(&self) -> &[QuadInt] {
        &self.coefficients
    }

    /// Coefficient of `n^{-s}`, `n >= 1`.
    pub fn coefficient(&self, n: u64) -> QuadInt {
        let q = self.period();
        self.coefficients[((n + q - 1) % q) as usize]
    }

    pub fn rendered(&self) -> &[Complex64] {
        &self.rendered
    }

    /// Exact coefficient sum; the mean is this over the period.
    pub fn coefficient_sum(&self) -> QuadInt {
        self.coefficients
            .iter()
            .fold(QuadInt::zero(self.radicand), |acc, &c| acc + c)
    }

    pub fn mean(&self) -> f64 {
        self.coefficient_sum().to_f64() / self.period() as f64
    }

    pub fn has_pole(&self) -> bool {
        !self.coefficient_sum().is_zero()
    }

    /// `αc + βd` over a common period; zero results are rejected.
    pub fn linear_combination(
        &self,
        alpha: i64,
        other: &PeriodicSeries,
        beta: i64,
    ) -> Result<Self> {
        if self.radicand != other.radicand {
            return Err(Error::domain("series over different rings"));
        }
        let q = lcm(self.period(), other.period());
        let d = self.radicand;
        let coeffs = (1..=q)
            .map(|n| {
                QuadInt::integer(alpha, d) * self.coefficient(n)
                    + QuadInt::integer(beta, d) * other.coefficient(n)
            })
            .collect();
        Self::new(coeffs)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Continuation of `Σ c_n n^{-s}` for a `q`-periodic coefficient vector
/// (`coeffs[i]` ↔ `n ≡ i + 1`), as `q^{-s} Σ_a c_a ζ(s, a/q)`.
pub fn periodic_sum(s: Complex64, coeffs: &[Complex64]) -> Result<Evaluation> {
    let q = coeffs.len();
    if q == 0 {
        return Err(Error::domain("empty coefficient vector"));
    }
    let total: Complex64 = coeffs.iter().sum();
    let has_pole = total.norm() > 1e-12 * coeffs.iter().map(|c| c.norm()).sum::<f64>();
    if has_pole && (s - 1.0).norm() < POLE_EXCLUSION {
        return Err(Error::pole(s));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        if c.norm() == 0.0 {
            continue;
        }
        let e = hurwitz_regular(s, (i + 1) as f64 / q as f64)?;
        acc += c * e.value;
        err += c.norm() * e.est_err;
    }
    if has_pole {
        acc += total / (s - 1.0);
    }
    let scale = (-s * (q as f64).ln()).exp();
    Ok(Evaluation::new(acc * scale, err * scale.norm()))
}

pub fn periodic_l(s: Complex64, c: &PeriodicSeries) -> Result<Complex64> {
    periodic_sum(s, c.rendered()).map(|e| e.value)
}

/// 0 for zero-mean coefficients (bounded partial sums), 1 otherwise.
pub fn abscissa_of_convergence(c: &PeriodicSeries) -> f64 {
    if c.has_pole() {
        1.0
    } else {
        0.0
    }
}

/// Direct truncated summation `Σ_{n<=terms} c_n n^{-s}`; test oracle for `Re s > 1`.
pub fn direct_sum(s: Complex64, coeff: impl Fn(u64) -> Complex64, terms: u64) -> Complex64 {
    // summed from the tail so small terms are accumulated first
    (1..=terms)
        .rev()
        .map(|n| coeff(n) * (-s * (n as f64).ln()).exp())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::hurwitz::riemann_zeta;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f1_series() -> PeriodicSeries {
        PeriodicSeries::new(
            [1, -1, -1, 1, 0]
                .iter()
                .map(|&a| QuadInt::integer(a, 5))
                .collect(),
        )
        .unwrap()
    }

    fn f0_series() -> PeriodicSeries {
        let mut v: Vec<QuadInt> = (0..4).map(|_| QuadInt::integer(1, 5)).collect();
        v.push(QuadInt::new(1, 1, 5));
        PeriodicSeries::new(v).unwrap()
    }

    #[test]
    fn quad_arithmetic() {
        let r5 = QuadInt::root(5);
        assert_eq!(r5 * r5, QuadInt::integer(5, 5));
        assert_eq!(
            (QuadInt::new(1, 1, 5) * QuadInt::new(1, -1, 5)),
            QuadInt::integer(-4, 5)
        );
        assert_eq!(format!("{}", QuadInt::new(1, -2, 5)), "1-2√5");
        assert_eq!(QuadInt::new(0, -1, 5).to_string(), "-√5");
        assert_eq!(QuadInt::root(5).to_string(), "√5");
    }

    #[test]
    fn f1_is_finite_at_one() {
        let v = periodic_l(c(1.0, 0.0), &f1_series()).unwrap();
        // L(1, χ_5) = 2 ln(φ)/√5 with φ the golden ratio
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let expect = 2.0 * golden.ln() / 5f64.sqrt();
        assert!((v - c(expect, 0.0)).norm() < 1e-12, "{v}");
        assert!((v.re - 0.4304).abs() < 1e-4);
        // direct alternating-in-blocks sum converges slowly; block sums of 10^6 terms
        let direct = direct_sum(
            c(1.0, 0.0),
            |n| f1_series().coefficient(n).to_f64().into(),
            1_000_000,
        );
        assert!((direct - v).norm() < 1e-5);
    }

    #[test]
    fn f0_series_factorizes() {
        let v = periodic_l(c(2.0, 0.0), &f0_series()).unwrap();
        let expect = (1.0 + 5f64.powf(-1.5)) * PI * PI / 6.0;
        assert!((v - c(expect, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn period_one_is_zeta() {
        let one = PeriodicSeries::from_integers(&[1]).unwrap();
        for s in [c(0.5, 14.0), c(3.0, 0.0), c(-1.0, 7.0)] {
            let got = periodic_l(s, &one).unwrap();
            assert!((got - riemann_zeta(s).unwrap()).norm() < 1e-12 * got.norm().max(1.0));
        }
    }

    #[test]
    fn abscissa_rule() {
        assert_eq!(abscissa_of_convergence(&f1_series()), 0.0);
        assert_eq!(abscissa_of_convergence(&f0_series()), 1.0);
        assert_eq!(
            abscissa_of_convergence(&PeriodicSeries::from_integers(&[1]).unwrap()),
            1.0
        );
    }

    #[test]
    fn pole_exclusion() {
        let f0 = f0_series();
        assert!(matches!(
            periodic_l(c(1.0 + 1e-9, 0.0), &f0),
            Err(Error::Pole { .. })
        ));
        assert!(periodic_l(c(1.0 + 1e-6, 0.0), &f0).is_ok());
        assert!(periodic_l(c(1.0, 0.0), &f1_series()).is_ok());
    }

    #[test]
    fn zero_series_rejected() {
        assert!(PeriodicSeries::from_integers(&[0, 0]).is_err());
        assert!(PeriodicSeries::from_integers(&[]).is_err());
    }

    #[test]
    fn linear_combination_matches_values() {
        let f0 = f0_series();
        let f1 = f1_series();
        let comb = f0.linear_combination(3, &f1, -2).unwrap();
        for s in [c(0.3, 7.0), c(2.0, 25.0), c(-0.5, 1.0)] {
            let lhs = periodic_l(s, &comb).unwrap();
            let rhs = 3.0 * periodic_l(s, &f0).unwrap() - 2.0 * periodic_l(s, &f1).unwrap();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
        }
    }
}
