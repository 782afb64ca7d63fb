//! Dirichlet characters modulo `q`.
//!
//! Characters are built from a fixed generator set of `(Z/q)*`: the CRT
//! decomposition into prime-power components, the smallest primitive root
//! for odd prime powers, and `{-1, 5}` for `2^e` with `e >= 3`. A character
//! is labelled by its exponent vector on those generators; enumeration
//! order is lexicographic in that vector, so the principal character is
//! always first.
//!
//! Values are kept exactly as root-of-unity exponents `k` in `e^{2πik/L}`
//! (with `L` the exponent of the group) and rendered to `Complex64` once.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for accepting `ε(χ) = 1` in the self-dual catalog.
pub const CATALOG_EPSILON_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// κ: 0 for even, 1 for odd.
    pub fn kappa(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_kappa(kappa: u32) -> Result<Self> {
        match kappa {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            k => Err(Error::domain(format!("parity must be 0 or 1, got {k}"))),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Generator data for the unit group of `Z/qZ`.
#[derive(Debug, Clone)]
struct UnitGroup {
    modulus: u64,
    /// `(generator mod q, order)`.
    generators: Vec<(u64, u64)>,
    /// Exponent of the group: lcm of generator orders.
    exponent: u64,
    /// Discrete-log vector for each residue, `None` off the units.
    dlog: Vec<Option<Vec<u64>>>,
}

impl UnitGroup {
    fn new(q: u64) -> Self {
        let mut generators = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            let rest = q / pe;
            let local: Vec<(u64, u64)> = if p == 2 {
                match e {
                    1 => vec![],
                    2 => vec![(3, 2)],
                    _ => vec![(pe - 1, 2), (5, pe / 4)],
                }
            } else {
                let phi = pe / p * (p - 1);
                let g = (2..pe)
                    .find(|&g| g % p != 0 && multiplicative_order(g, pe) == phi)
                    .expect("odd prime powers are cyclic");
                vec![(g, phi)]
            };
            for (g, ord) in local {
                generators.push((crt_lift(g, pe, rest), ord));
            }
        }
        let exponent = generators.iter().fold(1, |acc, &(_, m)| lcm(acc, m));

        let mut dlog = vec![None; q as usize];
        let mut counter = vec![0u64; generators.len()];
        loop {
            let n = generators
                .iter()
                .zip(&counter)
                .fold(1 % q, |acc, (&(g, _), &e)| {
                    mul_mod(acc, pow_mod(g, e, q), q)
                });
            dlog[n as usize] = Some(counter.clone());
            if !advance(&mut counter, generators.iter().map(|&(_, m)| m)) {
                break;
            }
        }
        UnitGroup {
            modulus: q,
            generators,
            exponent,
            dlog,
        }
    }

    fn character(&self, label: Vec<u64>) -> DirichletCharacter {
        let l = self.exponent;
        let exponents: Vec<Option<u64>> = self
            .dlog
            .iter()
            .map(|entry| {
                entry.as_ref().map(|logs| {
                    logs.iter()
                        .zip(&label)
                        .zip(&self.generators)
                        .fold(0u64, |acc, ((&e, &a), &(_, m))| {
                            (acc + e * a % m * (l / m)) % l
                        })
                })
            })
            .collect();
        DirichletCharacter::from_exponents(self.modulus, l, exponents, label, self.orders())
    }

    fn orders(&self) -> Vec<u64> {
        self.generators.iter().map(|&(_, m)| m).collect()
    }
}

/// A Dirichlet character χ mod q.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exponents: Vec<Option<u64>>,
    values: Vec<Complex64>,
    label: Vec<u64>,
    generator_orders: Vec<u64>,
}

impl DirichletCharacter {
    fn from_exponents(
        modulus: u64,
        order: u64,
        exponents: Vec<Option<u64>>,
        label: Vec<u64>,
        generator_orders: Vec<u64>,
    ) -> Self {
        let values = exponents
            .iter()
            .map(|k| match k {
                Some(k) => root_of_unity(*k, order),
                None => Complex64::new(0.0, 0.0),
            })
            .collect();
        DirichletCharacter {
            modulus,
            order,
            exponents,
            values,
            label,
            generator_orders,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Value vector indexed by `n mod q`, `n = 0..q`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// Exact value as `(k, L)` meaning `e^{2πik/L}`; `None` when `gcd(n, q) > 1`.
    pub fn exponent(&self, n: i64) -> Option<(u64, u64)> {
        self.exponents[n.rem_euclid(self.modulus as i64) as usize].map(|k| (k, self.order))
    }

    /// Exponent vector on the canonical generators.
    pub fn label(&self) -> &[u64] {
        &self.label
    }

    pub fn label_string(&self) -> String {
        let parts: Vec<String> = self.label.iter().map(u64::to_string).collect();
        format!("{}:[{}]", self.modulus, parts.join(","))
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().flatten().all(|&k| k == 0)
    }

    pub fn is_real(&self) -> bool {
        self.exponents
            .iter()
            .flatten()
            .all(|&k| 2 * k % self.order == 0)
    }

    pub fn parity(&self) -> Parity {
        match self.exponent(-1) {
            Some((0, _)) => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Complex conjugate character, same modulus.
    pub fn conjugate(&self) -> DirichletCharacter {
        let l = self.order;
        let exponents = self
            .exponents
            .iter()
            .map(|k| k.map(|k| (l - k) % l))
            .collect();
        let label = self
            .label
            .iter()
            .zip(&self.generator_orders)
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        DirichletCharacter::from_exponents(
            self.modulus,
            l,
            exponents,
            label,
            self.generator_orders.clone(),
        )
    }

    /// Smallest `d | q` such that χ is trivial on units `n ≡ 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        let q = self.modulus;
        divisors(q)
            .into_iter()
            .find(|&d| {
                (0..q)
                    .filter(|n| n % d == 1 % d)
                    .all(|n| matches!(self.exponents[n as usize], Some(0) | None))
            })
            .unwrap_or(q)
    }

    /// The primitive character mod the conductor that induces this one.
    pub fn primitive_inducing(&self) -> DirichletCharacter {
        let d = self.conductor();
        if d == self.modulus {
            return self.clone();
        }
        let q = self.modulus;
        enumerate_characters(d)
            .expect("conductor is positive")
            .into_iter()
            .find(|psi| {
                (0..q).all(
                    |n| match (self.exponent(n as i64), psi.exponent(n as i64)) {
                        (Some((k, l)), Some((kp, lp))) => {
                            (k as u128) * (lp as u128) == (kp as u128) * (l as u128)
                        }
                        (None, _) => true,
                        (Some(_), None) => false,
                    },
                )
            })
            .expect("every character is induced by one mod its conductor")
    }
}

/// Parity, conductor and related flags of a character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharacterClassification {
    pub parity: Parity,
    pub conductor: u64,
    pub is_primitive: bool,
    pub is_real: bool,
    pub is_principal: bool,
}

impl CharacterClassification {
    pub fn kappa(&self) -> u32 {
        self.parity.kappa()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootNumberData {
    pub gauss_sum: Complex64,
    pub epsilon: Complex64,
    /// Set when the input was not primitive; `|epsilon| = 1` is then not guaranteed.
    pub non_primitive: bool,
}

/// All `φ(q)` characters mod `q` in canonical order.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let group = UnitGroup::new(q);
    let orders = group.orders();
    let mut label = vec![0u64; orders.len()];
    let mut out = Vec::new();
    loop {
        out.push(group.character(label.clone()));
        if !advance(&mut label, orders.iter().copied()) {
            break;
        }
    }
    Ok(out)
}

/// Real characters mod `q` only, in the same canonical order as
/// [`enumerate_characters`].
pub fn real_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let group = UnitGroup::new(q);
    // exponent choices per generator: 0 and, for even order, m/2
    let choices: Vec<Vec<u64>> = group
        .orders()
        .iter()
        .map(|&m| if m % 2 == 0 { vec![0, m / 2] } else { vec![0] })
        .collect();
    let mut idx = vec![0u64; choices.len()];
    let mut out = Vec::new();
    loop {
        let label = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i as usize])
            .collect();
        out.push(group.character(label));
        if !advance(&mut idx, choices.iter().map(|c| c.len() as u64)) {
            break;
        }
    }
    Ok(out)
}

pub fn classify(chi: &DirichletCharacter) -> CharacterClassification {
    let conductor = chi.conductor();
    CharacterClassification {
        parity: chi.parity(),
        conductor,
        is_primitive: conductor == chi.modulus(),
        is_real: chi.is_real(),
        is_principal: chi.is_principal(),
    }
}

/// τ(χ) = Σ_{k=1}^{q} χ(k) e^{2πik/q}.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus() as u128;
    (1..=chi.modulus())
        .filter_map(|k| {
            chi.exponent(k as i64).map(|(e, l)| {
                let l = l as u128;
                let num = (e as u128 * q + (k as u128 % q) * l) % (l * q);
                root_of_unity_u128(num, l * q)
            })
        })
        .sum()
}

/// ε(χ) = τ(χ) / (i^κ √q).
pub fn root_number(chi: &DirichletCharacter) -> RootNumberData {
    let tau = gauss_sum(chi);
    let ik = match chi.parity() {
        Parity::Even => Complex64::new(1.0, 0.0),
        Parity::Odd => Complex64::new(0.0, 1.0),
    };
    RootNumberData {
        gauss_sum: tau,
        epsilon: tau / (ik * (chi.modulus() as f64).sqrt()),
        non_primitive: chi.conductor() != chi.modulus(),
    }
}

/// One row of the self-dual catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub q: u64,
    pub character: DirichletCharacter,
    pub classification: CharacterClassification,
    /// Root number of the L-function, taken from the primitive character
    /// inducing χ. Equal to `root_mod_q` when χ is primitive.
    pub root: RootNumberData,
    /// `τ(χ)/(i^κ √q)` computed at modulus `q` itself.
    pub root_mod_q: RootNumberData,
}

/// Flat serializable form of a [`CatalogEntry`].
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CatalogRecord {
    pub q: u64,
    pub label: String,
    pub parity: u32,
    pub conductor: u64,
    pub primitive: bool,
    pub epsilon_re: f64,
    pub epsilon_im: f64,
    pub epsilon_mod_q_re: f64,
    pub epsilon_mod_q_im: f64,
}

impl CatalogEntry {
    pub fn record(&self) -> CatalogRecord {
        CatalogRecord {
            q: self.q,
            label: self.character.label_string(),
            parity: self.classification.kappa(),
            conductor: self.classification.conductor,
            primitive: self.classification.is_primitive,
            epsilon_re: self.root.epsilon.re,
            epsilon_im: self.root.epsilon.im,
            epsilon_mod_q_re: self.root_mod_q.epsilon.re,
            epsilon_mod_q_im: self.root_mod_q.epsilon.im,
        }
    }
}

/// Real non-principal characters of the given parity, `q <= q_max`, whose
/// L-function has root number 1 (within [`CATALOG_EPSILON_TOL`]).
///
/// For an imprimitive χ the L-function's equation is that of its primitive
/// inducing character, so `ε` is read from there; the literal mod-`q` ratio
/// is kept alongside in `root_mod_q`.
pub fn catalog_self_dual(q_max: u64, parity: Parity) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for q in 3..=q_max {
        for chi in real_characters(q).expect("q >= 3") {
            if chi.is_principal() || chi.parity() != parity {
                continue;
            }
            let classification = classify(&chi);
            let root = root_number(&chi.primitive_inducing());
            if (root.epsilon - Complex64::new(1.0, 0.0)).norm() > CATALOG_EPSILON_TOL {
                continue;
            }
            out.push(CatalogEntry {
                q,
                root_mod_q: root_number(&chi),
                character: chi,
                classification,
                root,
            });
        }
    }
    out
}

/// Pairs of distinct characters mod `q` whose Gauss sums coincide (within `tol`).
pub fn gauss_sum_collisions(q: u64, tol: f64) -> Result<Vec<(String, String)>> {
    let chars = enumerate_characters(q)?;
    let sums: Vec<Complex64> = chars.iter().map(gauss_sum).collect();
    let mut out = Vec::new();
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            if (sums[i] - sums[j]).norm() <= tol {
                out.push((chars[i].label_string(), chars[j].label_string()));
            }
        }
    }
    Ok(out)
}

pub fn euler_phi(q: u64) -> u64 {
    factorize(q)
        .into_iter()
        .fold(q, |acc, (p, _)| acc / p * (p - 1))
}

fn root_of_unity(k: u64, l: u64) -> Complex64 {
    root_of_unity_u128(k as u128, l as u128)
}

fn root_of_unity_u128(k: u128, l: u128) -> Complex64 {
    // exact values at quarter turns keep real characters exactly ±1
    let k = k % l;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == l {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == l {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * l {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * (k as f64) / (l as f64))
}

fn advance(counter: &mut [u64], bounds: impl Iterator<Item = u64>) -> bool {
    let bounds: Vec<u64> = bounds.collect();
    for i in (0..counter.len()).rev() {
        counter[i] += 1;
        if counter[i] < bounds[i] {
            return true;
        }
        counter[i] = 0;
    }
    false
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, g, m);
        k += 1;
    }
    k
}

/// `x ≡ g (mod pe)`, `x ≡ 1 (mod rest)`.
fn crt_lift(g: u64, pe: u64, rest: u64) -> u64 {
    (0..rest)
        .map(|k| g + k * pe)
        .find(|x| x % rest == 1 % rest)
        .expect("coprime moduli")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_nonprincipal(q: u64) -> Vec<DirichletCharacter> {
        real_characters(q)
            .unwrap()
            .into_iter()
            .filter(|c| !c.is_principal())
            .collect()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn q5_real_character_values() {
        let chars = enumerate_characters(5).unwrap();
        assert_eq!(chars.len(), 4);
        assert!(chars[0].is_principal());
        let real: Vec<_> = chars
            .iter()
            .filter(|c| c.is_real() && !c.is_principal())
            .collect();
        assert_eq!(real.len(), 1);
        let v: Vec<f64> = (1..=5).map(|n| real[0].value(n).re).collect();
        assert_eq!(v, vec![1.0, -1.0, -1.0, 1.0, 0.0]);
    }

    #[test]
    fn q1_trivial() {
        let chars = enumerate_characters(1).unwrap();
        assert_eq!(chars.len(), 1);
        for n in -3..10 {
            assert_eq!(chars[0].value(n), Complex64::new(1.0, 0.0));
        }
        assert_eq!(classify(&chars[0]).parity, Parity::Even);
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(matches!(enumerate_characters(0), Err(Error::Domain(_))));
    }

    #[test]
    fn q8_brute_force_multiplicative_functions() {
        // brute force: every map (Z/8)* -> {±1} (the group has exponent 2)
        // that is multiplicative is a character
        let units = [1u64, 3, 5, 7];
        let mut brute = 0;
        let mut brute_real_nonprincipal_even_primitive = 0;
        for mask in 0..16u32 {
            let val = |n: u64| {
                let i = units.iter().position(|&u| u == n).unwrap();
                if mask >> i & 1 == 1 {
                    -1i32
                } else {
                    1
                }
            };
            let ok = units
                .iter()
                .all(|&a| units.iter().all(|&b| val(a * b % 8) == val(a) * val(b)));
            if ok {
                brute += 1;
                let principal = units.iter().all(|&u| val(u) == 1);
                // primitive mod 8: not constant on classes mod 4
                let primitive = val(5) != val(1);
                if !principal && val(7) == 1 && primitive {
                    brute_real_nonprincipal_even_primitive += 1;
                }
            }
        }
        let chars = enumerate_characters(8).unwrap();
        assert_eq!(chars.len(), brute);
        assert_eq!(real_nonprincipal(8).len(), 3);
        let even_primitive = chars
            .iter()
            .filter(|c| {
                let k = classify(c);
                k.is_real && !k.is_principal && k.parity == Parity::Even && k.is_primitive
            })
            .count();
        assert_eq!(even_primitive, brute_real_nonprincipal_even_primitive);
        assert_eq!(even_primitive, 1);
    }

    #[test]
    fn classification_examples() {
        let chi5 = &real_nonprincipal(5)[0];
        let c = classify(chi5);
        assert_eq!(
            (c.kappa(), c.conductor, c.is_primitive, c.is_real),
            (0, 5, true, true)
        );

        let principal6 = &enumerate_characters(6).unwrap()[0];
        let c = classify(principal6);
        assert_eq!((c.conductor, c.is_primitive, c.kappa()), (1, false, 0));

        let chi10 = &real_nonprincipal(10)[0];
        let c = classify(chi10);
        assert_eq!(
            (c.conductor, c.is_primitive, c.parity),
            (5, false, Parity::Even)
        );
        // brute-force induction check: χ mod 10 agrees with χ mod 5 on units
        for n in [1i64, 3, 7, 9] {
            assert_eq!(chi10.value(n), chi5.value(n));
        }
    }

    #[test]
    fn gauss_sum_examples() {
        let chi5 = &real_nonprincipal(5)[0];
        assert!(close(
            gauss_sum(chi5),
            Complex64::new(5f64.sqrt(), 0.0),
            1e-12
        ));
        let chi3 = &real_nonprincipal(3)[0];
        assert!(close(
            gauss_sum(chi3),
            Complex64::new(0.0, 3f64.sqrt()),
            1e-12
        ));
        for p in [2u64, 3, 5, 7, 11, 13] {
            let principal = &enumerate_characters(p).unwrap()[0];
            assert!(close(
                gauss_sum(principal),
                Complex64::new(-1.0, 0.0),
                1e-12
            ));
        }
    }

    #[test]
    fn root_number_examples() {
        let one = Complex64::new(1.0, 0.0);
        let chi5 = &real_nonprincipal(5)[0];
        assert!(close(root_number(chi5).epsilon, one, 1e-12));
        let chi3 = &real_nonprincipal(3)[0];
        assert!(close(root_number(chi3).epsilon, one, 1e-12));
        for chi in enumerate_characters(5)
            .unwrap()
            .iter()
            .filter(|c| !c.is_real())
        {
            let r = root_number(chi);
            assert!((r.epsilon.norm() - 1.0).abs() < 1e-12);
            assert!(!r.non_primitive);
        }
        let chi10 = &real_nonprincipal(10)[0];
        assert!(root_number(chi10).non_primitive);
    }

    #[test]
    fn catalog_lists() {
        let even: Vec<u64> = catalog_self_dual(21, Parity::Even)
            .iter()
            .map(|e| e.q)
            .collect();
        for q in [5, 8, 10, 12, 13, 15, 17, 21] {
            assert!(even.contains(&q), "even catalog missing q={q}: {even:?}");
        }
        let odd: Vec<u64> = catalog_self_dual(19, Parity::Odd)
            .iter()
            .map(|e| e.q)
            .collect();
        for q in [3, 4, 6, 7, 11, 12, 14, 15, 19] {
            assert!(odd.contains(&q), "odd catalog missing q={q}: {odd:?}");
        }
        let e10 = catalog_self_dual(21, Parity::Even)
            .into_iter()
            .find(|e| e.q == 10)
            .unwrap();
        assert!(!e10.classification.is_primitive);
        assert_eq!(e10.classification.conductor, 5);
        // the literal mod-10 ratio is not unimodular
        assert!((e10.root_mod_q.epsilon.norm() - 1.0).abs() > 0.1);
    }

    #[test]
    fn catalog_below_three_is_empty() {
        assert!(catalog_self_dual(2, Parity::Even).is_empty());
        assert!(catalog_self_dual(2, Parity::Odd).is_empty());
    }

    #[test]
    fn conjugate_is_inverse() {
        for chi in enumerate_characters(13).unwrap() {
            let bar = chi.conjugate();
            for n in 0..13 {
                let prod = chi.value(n) * bar.value(n);
                let expect = if n % 13 == 0 { 0.0 } else { 1.0 };
                assert!(close(prod, Complex64::new(expect, 0.0), 1e-12));
            }
            assert!(enumerate_characters(13)
                .unwrap()
                .iter()
                .any(|c| c.label() == bar.label()));
        }
    }

    #[test]
    fn gauss_sums_can_collide() {
        // imprimitive characters mod 16 induced from mod 8 all have τ = 0
        assert!(!gauss_sum_collisions(16, 1e-9).unwrap().is_empty());
        assert!(gauss_sum_collisions(5, 1e-9).unwrap().is_empty());
    }

    #[test]
    fn totient_counts() {
        for q in 1..=60 {
            assert_eq!(enumerate_characters(q).unwrap().len() as u64, euler_phi(q));
        }
    }
}
