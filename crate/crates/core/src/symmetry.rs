//! Real symmetries of the localizer: the `(d mod 8, j mod 8)` sign tables,
//! the real unitary `R = Σ S σ₁^{s_A} σ₃^{s_A s_D}` on the localizer, the
//! symmetry verification, and the invariant dispatch (ℤ, 2ℤ, ℤ₂, trivial)
//! with the ℤ₂ value as a Pfaffian sign.

use crate::clifford::CliffordRep;
use crate::signature::pfaffian_sign;
use crate::{CMatrix, Error, RMatrix, Result};
use num_complex::Complex64;

/// Which invariant a sign combination `(s_L, s'_L)` supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    /// `(+,+)`: any integer half-signature.
    Z,
    /// `(+,-)`: the signature is even, the half-signature an even... the
    /// index is constrained to 2ℤ.
    TwoZ,
    /// `(-,+)`: signature 0; ℤ₂ invariant from the Pfaffian sign of `iMLM*`.
    Z2,
    /// `(-,-)`: signature 0, no secondary invariant.
    Trivial,
}

fn check_sign(s: i8) -> Result<()> {
    if s == 1 || s == -1 {
        Ok(())
    } else {
        Err(Error::InvalidSign(s as i32))
    }
}

/// Sign pair `(s_A, s'_A)` for `j mod 8 ∈ {2, 4, 6, 8}`:
/// `S* conj(A) S = A^{[s_A]}` and `S² = s'_A`.
pub fn sign_data_for_j(j: i64) -> Result<(i8, i8)> {
    match j.rem_euclid(8) {
        2 => Ok((-1, 1)),
        4 => Ok((1, -1)),
        6 => Ok((-1, -1)),
        0 => Ok((1, 1)), // j = 8
        _ => Err(Error::UnsupportedDimension(j)),
    }
}

/// Combine the Dirac and A-side signs into the localizer signs and the
/// invariant kind: `s_L = s_A s_D`, `s'_L = s'_D s'_A (s_A)^{(s_D+1)/2}`.
pub fn classify(
    s_d: i8,
    s_prime_d: i8,
    s_a: i8,
    s_prime_a: i8,
) -> Result<(i8, i8, InvariantKind)> {
    for s in [s_d, s_prime_d, s_a, s_prime_a] {
        check_sign(s)?;
    }
    let s_l = s_a * s_d;
    let extra = if s_d == 1 { s_a } else { 1 };
    let s_prime_l = s_prime_d * s_prime_a * extra;
    let kind = match (s_l, s_prime_l) {
        (1, 1) => InvariantKind::Z,
        (1, -1) => InvariantKind::TwoZ,
        (-1, 1) => InvariantKind::Z2,
        _ => InvariantKind::Trivial,
    };
    Ok((s_l, s_prime_l, kind))
}

/// The A-side real symmetry shipped by a model: a real unitary `S` on the
/// internal fiber with `S² = s'_A` and `S* conj(A) S = A^{[s_A]}`.
#[derive(Debug, Clone)]
pub struct RealSymmetryData {
    pub s_fiber: RMatrix,
    pub sign_a: i8,
    pub sign_prime_a: i8,
}

fn sigma1() -> RMatrix {
    RMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

fn sigma3() -> RMatrix {
    RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// Assemble `R = Σ S σ₁^{s_A} σ₃^{s_A s_D}` on the full localizer space
/// (grading ⊗ sites ⊗ C^ν ⊗ fiber); `σ^{+1} = 1`, `σ^{-1} = σ` act on the
/// grading. Verifies that `S` is real orthogonal with `S² = s'_A` and that
/// the declared signs are valid.
pub fn build_r(
    rep: &CliffordRep,
    data: &RealSymmetryData,
    n_sites: usize,
) -> Result<RMatrix> {
    check_sign(data.sign_a)?;
    check_sign(data.sign_prime_a)?;
    let s = &data.s_fiber;
    let m = s.nrows();
    if m != s.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "S is {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    let id = RMatrix::identity(m, m);
    let orth = (s * s.transpose() - &id).abs().max();
    if orth > 1e-12 {
        return Err(Error::SymmetryViolated("S not orthogonal", orth));
    }
    let sq = (s * s - &id * data.sign_prime_a as f64).abs().max();
    if sq > 1e-12 {
        return Err(Error::SymmetryViolated("S^2 != s'_A", sq));
    }
    let mut p = RMatrix::identity(2, 2);
    if data.sign_a == -1 {
        p *= sigma1();
    }
    if data.sign_a * rep.sign_d == -1 {
        p *= sigma3();
    }
    let ones = RMatrix::identity(n_sites, n_sites);
    Ok(p.kronecker(&ones).kronecker(&rep.sigma).kronecker(s))
}

/// Residual `max |(R^T conj(L) R - s_L L)_{ij}|` of the defining relation.
pub fn verify_symmetry(l: &CMatrix, r: &RMatrix, s_l: i8) -> Result<f64> {
    check_sign(s_l)?;
    if l.nrows() != r.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "L {}x{} vs R {}x{}",
            l.nrows(),
            l.ncols(),
            r.nrows(),
            r.ncols()
        )));
    }
    let rc = r.map(|x| Complex64::new(x, 0.0));
    let lhs = rc.transpose() * l.map(|z| z.conj()) * &rc;
    let res = (lhs - l * Complex64::new(s_l as f64, 0.0))
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    Ok(res)
}

/// Square-root branch for `M = R^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Spectrum of `M` is `{1, i}` (the convention the invariant is pinned to).
    First,
    /// Spectrum `{1, -i}`; flips the Pfaffian sign by `det R`.
    Second,
}

/// ℤ₂ invariant of a localizer in class `(s_L, s'_L) = (-1, +1)`: the sign of
/// `Pf(i M L M*)` with `M = R^{1/2}`. `R² = 1` makes `R` symmetric
/// orthogonal; `M` maps its `-1` eigenspace to `±i` depending on the branch.
pub fn z2_invariant(l: &CMatrix, r: &RMatrix, tol: f64, branch: Branch) -> Result<i8> {
    let n = r.nrows();
    let sq = (r * r - RMatrix::identity(n, n)).abs().max();
    if sq > 1e-12 {
        return Err(Error::WrongSymmetryClass(format!(
            "R^2 != 1 (residual {sq:.3e}); the Pfaffian invariant needs s'_L = +1"
        )));
    }
    let res = verify_symmetry(l, r, -1)?;
    if res > tol {
        return Err(Error::SymmetryViolated("R^T conj(L) R != -L", res));
    }
    // spectral square root of the symmetric orthogonal R
    let eig = nalgebra::SymmetricEigen::new(r.clone());
    let root = match branch {
        Branch::First => Complex64::new(0.0, 1.0),
        Branch::Second => Complex64::new(0.0, -1.0),
    };
    let mut m = CMatrix::zeros(n, n);
    for (idx, &ev) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(idx);
        let factor = if ev > 0.0 { Complex64::new(1.0, 0.0) } else { root };
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] += factor * Complex64::new(v[a] * v[b], 0.0);
            }
        }
    }
    let k = &m * l * m.adjoint() * Complex64::new(0.0, 1.0);
    // K must be real antisymmetric
    let imag = k.iter().fold(0.0f64, |acc, z| acc.max(z.im.abs()));
    if imag > tol.max(1e-10) {
        return Err(Error::BadPfaffianInput(format!(
            "iMLM* has imaginary part {imag:.3e}"
        )));
    }
    let kr = k.map(|z| z.re);
    pfaffian_sign(&kr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford;

    fn sign_data_for_d(d: i64) -> (i8, i8) {
        let rep = build_clifford(d).unwrap();
        (rep.sign_d, rep.sign_prime_d)
    }

    #[test]
    fn dispatch_table_16_entries() {
        // (d, j) -> (s_L, s'_L) table
        let expect: [((i64, i64), (i8, i8)); 16] = [
            ((1, 2), (-1, -1)),
            ((1, 4), (1, -1)),
            ((1, 6), (-1, 1)),
            ((1, 8), (1, 1)),
            ((3, 2), (1, -1)),
            ((3, 4), (-1, 1)),
            ((3, 6), (1, 1)),
            ((3, 8), (-1, -1)),
            ((5, 2), (-1, 1)),
            ((5, 4), (1, 1)),
            ((5, 6), (-1, -1)),
            ((5, 8), (1, -1)),
            ((7, 2), (1, 1)),
            ((7, 4), (-1, -1)),
            ((7, 6), (1, -1)),
            ((7, 8), (-1, 1)),
        ];
        for ((d, j), (sl, spl)) in expect {
            let (sd, spd) = sign_data_for_d(d);
            let (sa, spa) = sign_data_for_j(j).unwrap();
            let (got_sl, got_spl, kind) = classify(sd, spd, sa, spa).unwrap();
            assert_eq!((got_sl, got_spl), (sl, spl), "d={d} j={j}");
            let expect_kind = match (sl, spl) {
                (1, 1) => InvariantKind::Z,
                (1, -1) => InvariantKind::TwoZ,
                (-1, 1) => InvariantKind::Z2,
                _ => InvariantKind::Trivial,
            };
            assert_eq!(kind, expect_kind);
        }
    }

    #[test]
    fn classify_rejects_bad_signs() {
        assert!(classify(0, 1, 1, 1).is_err());
        assert!(classify(1, 2, 1, 1).is_err());
    }

    #[test]
    fn r_squared_matches_s_prime_l_all_classes() {
        for d in [1i64, 3, 5, 7] {
            let rep = build_clifford(d).unwrap();
            for j in [2i64, 4, 6, 8] {
                let (sa, spa) = sign_data_for_j(j).unwrap();
                // synthetic fiber S with the required square
                let s = if spa == 1 {
                    RMatrix::identity(2, 2)
                } else {
                    RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
                };
                let data = RealSymmetryData {
                    s_fiber: s,
                    sign_a: sa,
                    sign_prime_a: spa,
                };
                let r = build_r(&rep, &data, 3).unwrap();
                let (_, spl, _) = classify(rep.sign_d, rep.sign_prime_d, sa, spa).unwrap();
                let n = r.nrows();
                let res = (&r * &r - RMatrix::identity(n, n) * spl as f64).abs().max();
                assert!(res < 1e-14, "d={d} j={j}");
                // realness and orthogonality
                let orth = (&r * r.transpose() - RMatrix::identity(n, n)).abs().max();
                assert!(orth < 1e-14);
            }
        }
    }

    #[test]
    fn build_r_rejects_wrong_square() {
        let rep = build_clifford(1).unwrap();
        let data = RealSymmetryData {
            s_fiber: RMatrix::identity(2, 2),
            sign_a: -1,
            sign_prime_a: -1, // but 1² = +1
        };
        assert!(build_r(&rep, &data, 2).is_err());
    }

    #[test]
    fn z2_toy_example() {
        // L = σ₂ (Hermitian, purely imaginary), R = 1 → K = iσ₂, Pf = +1
        let z = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let l = CMatrix::from_row_slice(2, 2, &[z, -i, i, z]);
        let r = RMatrix::identity(2, 2);
        assert_eq!(verify_symmetry(&l, &r, -1).unwrap(), 0.0);
        assert_eq!(z2_invariant(&l, &r, 1e-12, Branch::First).unwrap(), 1);
        // the other branch differs by det(R) = +1 here → same sign
        assert_eq!(z2_invariant(&l, &r, 1e-12, Branch::Second).unwrap(), 1);
    }

    #[test]
    fn z2_branch_flip_is_det_r() {
        // R with an odd-dimensional -1 eigenspace (det R = -1) flips between
        // branches. Symmetry R^T conj(L) R = -L forces entries coupling to
        // the flipped coordinate to be real, the rest purely imaginary.
        let i = Complex64::new(0.0, 1.0);
        let o = Complex64::new(1.0, 0.0);
        let mut l = CMatrix::zeros(4, 4);
        l[(0, 1)] = i;
        l[(1, 0)] = -i;
        l[(2, 3)] = o;
        l[(3, 2)] = o;
        let r = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0]));
        assert!(verify_symmetry(&l, &r, -1).unwrap() < 1e-14);
        let first = z2_invariant(&l, &r, 1e-12, Branch::First).unwrap();
        let second = z2_invariant(&l, &r, 1e-12, Branch::Second).unwrap();
        assert_eq!(first, -second); // det R = -1
    }

    #[test]
    fn z2_rejects_wrong_class() {
        let l = CMatrix::identity(2, 2);
        let r = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]); // R² = -1
        assert!(matches!(
            z2_invariant(&l, &r, 1e-12, Branch::First),
            Err(Error::WrongSymmetryClass(_))
        ));
        // R² = 1 but L breaks the symmetry (L real symmetric → s_L = +1)
        let r = RMatrix::identity(2, 2);
        assert!(matches!(
            z2_invariant(&l, &r, 1e-12, Branch::First),
            Err(Error::SymmetryViolated(_, _))
        ));
    }

    #[test]
    fn perturbation_raises_residual() {
        let z = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut l = CMatrix::from_row_slice(2, 2, &[z, -i, i, z]);
        let r = RMatrix::identity(2, 2);
        // add a real (s_L-even) perturbation of size ε
        let eps = 1e-3;
        l[(0, 0)] += Complex64::new(eps, 0.0);
        let res = verify_symmetry(&l, &r, -1).unwrap();
        assert!(res >= eps, "res={res}");
    }
}
