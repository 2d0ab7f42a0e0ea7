//! Inertia, signature and half-signature of Hermitian matrices, and the sign
//! of the Pfaffian of a real skew-symmetric matrix.
//!
//! The fast path never diagonalizes: a Bunch-Kaufman factorization
//! `P A P^T = L D L^*` leaves the inertia on the 1x1/2x2 block diagonal `D`
//! (Sylvester), at a third of the cost of an eigensolve and with no
//! eigenvector memory.

use crate::linalg::{
    block_diagonal_eigenvalues_in_place, hermitian_eigenvalues_in_place, hermiticity_residual,
};
use crate::{CMatrix, Error, RMatrix, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InertiaMethod {
    /// Bunch-Kaufman block diagonal (default; no eigenvectors, no full solve).
    Factorization,
    /// Full Hermitian eigensolve; slower, used as the independent cross-check.
    Eigen,
}

fn count_inertia(values: &[f64]) -> Inertia {
    // relative zero threshold against the largest block magnitude
    let scale = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = scale * values.len() as f64 * f64::EPSILON;
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for &v in values {
        if v > tol {
            inertia.positive += 1;
        } else if v < -tol {
            inertia.negative += 1;
        } else {
            inertia.zero += 1;
        }
    }
    inertia
}

/// Inertia of a Hermitian matrix given as a raw column-major buffer.
/// The buffer is consumed. No hermiticity check is performed here; use
/// [`inertia`] when the input is untrusted.
pub fn inertia_in_place(
    buf: &mut [Complex64],
    n: usize,
    method: InertiaMethod,
) -> Result<Inertia> {
    let values = match method {
        InertiaMethod::Factorization => block_diagonal_eigenvalues_in_place(buf, n)?,
        InertiaMethod::Eigen => hermitian_eigenvalues_in_place(buf, n)?,
    };
    Ok(count_inertia(&values))
}

/// Inertia `(n_+, n_-, n_0)` of a Hermitian matrix.
pub fn inertia(a: &CMatrix, method: InertiaMethod) -> Result<Inertia> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} not square",
            a.nrows(),
            a.ncols()
        )));
    }
    let res = hermiticity_residual(a);
    let scale = a.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    if res > 1e-10 * scale {
        return Err(Error::NotHermitian(res));
    }
    let mut buf = a.as_slice().to_vec();
    inertia_in_place(&mut buf, a.nrows(), method)
}

/// Signature `n_+ - n_-` of a Hermitian matrix (zeros allowed and skipped).
pub fn matrix_signature(a: &CMatrix, method: InertiaMethod) -> Result<i64> {
    Ok(inertia(a, method)?.signature())
}

/// Half of the signature of an invertible Hermitian matrix. Errors when a
/// numerically zero eigenvalue is found (after confirming with the full
/// eigensolve) or when the signature is odd.
pub fn half_signature(a: &CMatrix) -> Result<i64> {
    let mut i = inertia(a, InertiaMethod::Factorization)?;
    if i.zero > 0 {
        // the block diagonal can report spurious zeros near breakdown;
        // settle it with the eigensolve before giving up
        i = inertia(a, InertiaMethod::Eigen)?;
        if i.zero > 0 {
            return Err(Error::NotInvertible);
        }
    }
    let s = i.signature();
    if s.rem_euclid(2) != 0 {
        return Err(Error::OddSignature(s));
    }
    Ok(s / 2)
}

/// Half-signature from a raw column-major Hermitian buffer (consumed).
/// For matrices too large to clone; zero blocks are a hard error here.
pub fn half_signature_in_place(buf: &mut [Complex64], n: usize) -> Result<i64> {
    let i = inertia_in_place(buf, n, InertiaMethod::Factorization)?;
    if i.zero > 0 {
        return Err(Error::NotInvertible);
    }
    let s = i.signature();
    if s.rem_euclid(2) != 0 {
        return Err(Error::OddSignature(s));
    }
    Ok(s / 2)
}

/// Sign of the Pfaffian of a real skew-symmetric matrix of even dimension.
///
/// Householder reflections tridiagonalize `A ↦ Q A Q^T` (Q orthogonal), then
/// `Pf(A) = det(Q) Pf(T)` with `Pf(T) = e_1 e_3 e_5 ⋯` the product of every
/// other superdiagonal entry; `det(Q) = (-1)^{#reflections}`. Only signs and
/// a log-magnitude are accumulated, so there is no overflow for large inputs.
pub fn pfaffian_sign(a: &RMatrix) -> Result<i8> {
    let (sign, log_mag) = pfaffian_sign_log(a)?;
    let n = a.nrows() as f64;
    // relative singularity guard: |Pf|² = det, so compare in log scale
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    if log_mag < (n / 2.0) * scale.ln() + n * (f64::EPSILON.ln() / 2.0) {
        return Err(Error::BadPfaffianInput(
            "Pfaffian vanishes at the working tolerance".into(),
        ));
    }
    Ok(sign)
}

/// `(sign, ln |Pf|)`; sign is `0` only when an exact zero pivot is hit.
pub fn pfaffian_sign_log(a: &RMatrix) -> Result<(i8, f64)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::BadPfaffianInput(format!(
            "{}x{} not square",
            n,
            a.ncols()
        )));
    }
    if n % 2 != 0 {
        return Err(Error::BadPfaffianInput(format!("odd dimension {n}")));
    }
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut skew = 0.0f64;
    for j in 0..n {
        for i in j..n {
            skew = skew.max((a[(i, j)] + a[(j, i)]).abs());
        }
    }
    if skew > 1e-10 * scale.max(1.0) {
        return Err(Error::BadPfaffianInput(format!(
            "not skew-symmetric: residual {skew:.3e}"
        )));
    }
    if n == 0 {
        return Ok((1, 0.0));
    }

    let mut m = a.clone();
    let mut det_q: i8 = 1;
    for k in 0..n.saturating_sub(2) {
        // Householder vector zeroing column k strictly below row k+1
        let col: Vec<f64> = (k + 1..n).map(|i| m[(i, k)]).collect();
        let alpha = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let mut v = col;
        // choose the sign that avoids cancellation
        let a0 = v[0];
        let s = if a0 >= 0.0 { alpha } else { -alpha };
        v[0] += s;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        det_q = -det_q;
        // apply P = 1 - 2 v v^T / (v^T v) from both sides on rows/cols k+1..
        let base = k + 1;
        // w = M v (restricted), then M ← M - 2/(v'v) (w v^T - v w^T) ... do
        // it as two rank-1 style sweeps: first columns, then rows.
        for j in 0..n {
            let dot: f64 = (0..v.len()).map(|t| m[(base + t, j)] * v[t]).sum();
            let f = 2.0 * dot / vnorm2;
            for t in 0..v.len() {
                m[(base + t, j)] -= f * v[t];
            }
        }
        for i in 0..n {
            let dot: f64 = (0..v.len()).map(|t| m[(i, base + t)] * v[t]).sum();
            let f = 2.0 * dot / vnorm2;
            for t in 0..v.len() {
                m[(i, base + t)] -= f * v[t];
            }
        }
    }

    let mut sign: i8 = if det_q > 0 { 1 } else { -1 };
    let mut log_mag = 0.0f64;
    let mut k = 0;
    while k + 1 < n {
        let e = m[(k, k + 1)];
        if e == 0.0 {
            return Ok((0, f64::NEG_INFINITY));
        }
        if e < 0.0 {
            sign = -sign;
        }
        log_mag += e.abs().ln();
        k += 2;
    }
    Ok((sign, log_mag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm_from_diag(d: &[f64]) -> CMatrix {
        let n = d.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    #[test]
    fn inertia_of_diagonal() {
        let m = herm_from_diag(&[3.0, -1.0, 0.0, 2.0, -5.0]);
        for method in [InertiaMethod::Factorization, InertiaMethod::Eigen] {
            let i = inertia(&m, method).unwrap();
            assert_eq!(
                i,
                Inertia {
                    positive: 2,
                    negative: 2,
                    zero: 1
                }
            );
            assert_eq!(i.signature(), 0);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            inertia(&m, InertiaMethod::Eigen),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn half_signature_basic() {
        assert_eq!(half_signature(&herm_from_diag(&[1.0, 1.0, -1.0, 1.0])).unwrap(), 1);
        assert_eq!(
            half_signature(&herm_from_diag(&[-2.0, -0.5, -1.0, 1.0])).unwrap(),
            -1
        );
        assert!(matches!(
            half_signature(&herm_from_diag(&[1.0, 1.0, -1.0])),
            Err(Error::OddSignature(1))
        ));
        assert!(matches!(
            half_signature(&herm_from_diag(&[1.0, 0.0])),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn congruence_preserves_signature() {
        // A = C* D C has the inertia of D for invertible C
        let d = herm_from_diag(&[2.0, -1.0, 0.5, -3.0]);
        let mut c = CMatrix::identity(4, 4);
        c[(0, 1)] = Complex64::new(1.5, -0.5);
        c[(2, 3)] = Complex64::new(0.0, 2.0);
        c[(3, 0)] = Complex64::new(-0.7, 0.1);
        let a = c.adjoint() * d * &c;
        let i = inertia(&a, InertiaMethod::Factorization).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (2, 2, 0));
    }

    fn skew2(x: f64) -> RMatrix {
        RMatrix::from_row_slice(2, 2, &[0.0, x, -x, 0.0])
    }

    #[test]
    fn pfaffian_2x2() {
        assert_eq!(pfaffian_sign(&skew2(3.0)).unwrap(), 1);
        assert_eq!(pfaffian_sign(&skew2(-0.25)).unwrap(), -1);
    }

    #[test]
    fn pfaffian_direct_sum() {
        // Pf of diag blocks multiplies: signs (+)(-) -> -
        let mut m = RMatrix::zeros(4, 4);
        m[(0, 1)] = 2.0;
        m[(1, 0)] = -2.0;
        m[(2, 3)] = -1.5;
        m[(3, 2)] = 1.5;
        assert_eq!(pfaffian_sign(&m).unwrap(), -1);
    }

    #[test]
    fn pfaffian_rejects_bad_inputs() {
        assert!(pfaffian_sign(&RMatrix::zeros(3, 3)).is_err());
        let mut m = RMatrix::zeros(2, 2);
        m[(0, 1)] = 1.0;
        m[(1, 0)] = 1.0; // symmetric, not skew
        assert!(pfaffian_sign(&m).is_err());
        assert!(pfaffian_sign(&RMatrix::zeros(4, 4)).is_err()); // singular
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        // fixed 6x6 skew matrix; compare sign and magnitude against det
        let mut m = RMatrix::zeros(6, 6);
        let entries = [
            (0, 1, 1.0),
            (0, 2, -2.0),
            (0, 4, 0.5),
            (1, 3, 1.5),
            (2, 3, 0.3),
            (2, 5, -1.1),
            (3, 4, 2.2),
            (4, 5, -0.7),
            (1, 5, 0.9),
        ];
        for (i, j, v) in entries {
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
        let (sign, log_mag) = pfaffian_sign_log(&m).unwrap();
        assert_ne!(sign, 0);
        let det = m.clone().determinant();
        assert!(((2.0 * log_mag).exp() - det).abs() < 1e-9 * det.abs().max(1.0));
    }
}
