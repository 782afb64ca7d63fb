use num_complex::Complex64;
use proptest::prelude::*;

use deform_zeros::analytic::hurwitz_zeta;
use deform_zeros::characters::{enumerate_characters, Parity};
use deform_zeros::deformation::DeformationFamily;
use deform_zeros::funceq::fe_residual;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characters_are_completely_multiplicative(q in 2u64..40, m in 1i64..200, n in 1i64..200) {
        for chi in enumerate_characters(q).unwrap() {
            let lhs = chi.value(m * n);
            let rhs = chi.value(m) * chi.value(n);
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((chi.value(m + q as i64) - chi.value(m)).norm() < 1e-12);
        }
    }

    #[test]
    fn hurwitz_duplication(sigma in -1.0f64..2.0, t in 1.0f64..30.0, a in 0.05f64..=1.0) {
        let s = Complex64::new(sigma, t);
        let lhs = hurwitz_zeta(s, a / 2.0).unwrap() + hurwitz_zeta(s, (a + 1.0) / 2.0).unwrap();
        let rhs = (s * 2f64.ln()).exp() * hurwitz_zeta(s, a).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn phi_is_convex_combination(tau in 0.0f64..=1.0, sigma in -1.0f64..2.0, t in 1.0f64..30.0) {
        let fam = DeformationFamily::for_modulus(5, Parity::Even).unwrap();
        let s = Complex64::new(sigma, t);
        let expected = fam.f0.eval(s).unwrap() * (1.0 - tau) + fam.f1.eval(s).unwrap() * tau;
        let phi = fam.phi(tau).unwrap().eval(s).unwrap();
        prop_assert!((phi - expected).norm() <= 1e-12 * expected.norm().max(1.0));
        prop_assert!(fe_residual(&fam.phi(tau).unwrap(), &fam.shared_fe, s).unwrap() < 1e-8);
    }
}
