//! Randomized cross-checks of the numerical kernels against slow but
//! independently-derived reference computations.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use spectral_localizer::signature::{
    inertia, matrix_signature, pfaffian_sign_log, InertiaMethod,
};
use spectral_localizer::{CMatrix, RMatrix};

fn hermitian_from(entries: &[(f64, f64)], n: usize) -> CMatrix {
    let m = DMatrix::from_iterator(n, n, entries.iter().map(|&(re, im)| Complex64::new(re, im)));
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn skew_from(entries: &[f64], n: usize) -> RMatrix {
    let m = DMatrix::from_iterator(n, n, entries.iter().copied());
    (&m - m.transpose()) * 0.5
}

/// Pfaffian by recursive expansion along the first row; O(n!!), reference only.
fn pfaffian_reference(a: &RMatrix) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 1.0;
    }
    let mut total = 0.0;
    for j in 1..n {
        if a[(0, j)] == 0.0 {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&i| i != j).collect();
        let sub = a.select_rows(keep.iter()).select_columns(keep.iter());
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * a[(0, j)] * pfaffian_reference(&sub);
    }
    total
}

/// Winding of `e^{ian}(1 + c e^{in})` is `a` for `|c| < 1` and `a + 1` for
/// `|c| > 1`: the oracle must respect multiplicativity and zero counting.
#[test]
fn winding_multiplicativity() {
    use spectral_localizer::operators::{Coefficient, HoppingOperator, HoppingTerm};
    use spectral_localizer::oracle::{winding_number_d1, BlochSymbol};

    let one = || Coefficient::Const(CMatrix::identity(1, 1));
    let scalar = |c: f64| {
        Coefficient::Const(CMatrix::from_element(1, 1, Complex64::new(c, 0.0)))
    };
    for a in -3i64..=3 {
        for &(c, extra) in &[(0.4, 0), (2.5, 1)] {
            let op = HoppingOperator::new(
                1,
                1,
                vec![
                    HoppingTerm { displacement: vec![-a], coeff: one() },
                    HoppingTerm { displacement: vec![-a - 1], coeff: scalar(c) },
                ],
            )
            .unwrap();
            let symbol = BlochSymbol::new(&op).unwrap();
            assert_eq!(winding_number_d1(&symbol, 64).unwrap(), a + extra, "a={a} c={c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inertia_methods_agree(
        n in 2usize..24,
        entries in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 24 * 24),
    ) {
        let a = hermitian_from(&entries[..n * n], n);
        let f = inertia(&a, InertiaMethod::Factorization).unwrap();
        let e = inertia(&a, InertiaMethod::Eigen).unwrap();
        prop_assert_eq!(f.positive, e.positive);
        prop_assert_eq!(f.negative, e.negative);
        prop_assert_eq!(f.zero, e.zero);
        prop_assert_eq!(f.dim(), n);
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        n in 2usize..12,
        entries in prop::collection::vec((-4.0f64..4.0, -4.0f64..4.0), 12 * 12),
        gen in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 12 * 12),
    ) {
        let a = hermitian_from(&entries[..n * n], n);
        let mut s = DMatrix::from_iterator(
            n, n, gen[..n * n].iter().map(|&(re, im)| Complex64::new(re, im)));
        // push S away from singularity so the congruence is genuine
        for i in 0..n {
            s[(i, i)] += Complex64::new(8.0, 0.0);
        }
        let b = s.adjoint() * &a * &s;
        let sig_a = matrix_signature(&a, InertiaMethod::Factorization).unwrap();
        let sig_b = matrix_signature(&b, InertiaMethod::Factorization).unwrap();
        prop_assert_eq!(sig_a, sig_b);
    }

    #[test]
    fn pfaffian_sign_matches_reference(
        half in 1usize..4,
        entries in prop::collection::vec(-4.0f64..4.0, 8 * 8),
    ) {
        let n = 2 * half;
        let a = skew_from(&entries[..n * n], n);
        let reference = pfaffian_reference(&a);
        // skip configurations where the reference itself is numerically moot
        prop_assume!(reference.abs() > 1e-8);
        let (sign, log_mag) = pfaffian_sign_log(&a).unwrap();
        prop_assert_eq!(sign as f64, reference.signum());
        prop_assert!((log_mag - reference.abs().ln()).abs() < 1e-8);
    }

    #[test]
    fn pfaffian_orthogonal_conjugation_law(
        half in 1usize..5,
        entries in prop::collection::vec(-4.0f64..4.0, 10 * 10),
        gen in prop::collection::vec(-1.0f64..1.0, 10 * 10),
    ) {
        let n = 2 * half;
        let a = skew_from(&entries[..n * n], n);
        let mut g = DMatrix::from_iterator(n, n, gen[..n * n].iter().copied());
        for i in 0..n {
            g[(i, i)] += 4.0;
        }
        let q = g.qr().q();
        let det_q = q.determinant().signum();
        let conj = &q * &a * q.transpose();
        let base = pfaffian_sign_log(&a);
        prop_assume!(base.is_ok());
        let (s0, m0) = base.unwrap();
        let (s1, m1) = pfaffian_sign_log(&conj).unwrap();
        // Pf(Q K Qᵀ) = det(Q) Pf(K)
        prop_assert_eq!(s1 as f64, det_q * s0 as f64);
        prop_assert!((m1 - m0).abs() < 1e-8);
    }
}
