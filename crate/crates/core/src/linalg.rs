//! Thin wrappers around the system LAPACK (zheev, zhetrf) plus a few dense
//! helpers. All matrices are column-major, which matches both `nalgebra`
//! storage and the Fortran calling convention, so buffers are passed through
//! without copies.

use crate::{CMatrix, Error, Result};
use num_complex::Complex64;
use std::os::raw::{c_char, c_int};

extern "C" {
    fn zheev_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const c_int,
        a: *mut Complex64,
        lda: *const c_int,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const c_int,
        rwork: *mut f64,
        info: *mut c_int,
    );
    fn zhetrf_(
        uplo: *const c_char,
        n: *const c_int,
        a: *mut Complex64,
        lda: *const c_int,
        ipiv: *mut c_int,
        work: *mut Complex64,
        lwork: *const c_int,
        info: *mut c_int,
    );
}

/// Eigenvalues of a Hermitian matrix, ascending. The buffer is consumed.
pub fn hermitian_eigenvalues_in_place(a: &mut [Complex64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let nn = n as c_int;
    let mut w = vec![0.0f64; n];
    let mut rwork = vec![0.0f64; (3 * n).max(1)];
    let mut info: c_int = 0;
    // workspace query
    let mut wkopt = Complex64::new(0.0, 0.0);
    let m1: c_int = -1;
    unsafe {
        zheev_(
            &(b'N' as c_char),
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            &mut wkopt,
            &m1,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    let lwork = (wkopt.re as usize).max(2 * n).max(1);
    let mut work = vec![Complex64::new(0.0, 0.0); lwork];
    unsafe {
        zheev_(
            &(b'N' as c_char),
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &(lwork as c_int),
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zheev", info });
    }
    Ok(w)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    let n = a.nrows();
    let mut buf = a.as_slice().to_vec();
    hermitian_eigenvalues_in_place(&mut buf, n)
}

/// Smallest |eigenvalue| of a Hermitian matrix.
pub fn min_abs_eigenvalue(a: &CMatrix) -> Result<f64> {
    let w = hermitian_eigenvalues(a)?;
    Ok(w.iter().fold(f64::INFINITY, |m, &x| m.min(x.abs())))
}

/// Bunch-Kaufman factorization `P A P^T = L D L^*` of a Hermitian matrix,
/// returning the eigenvalues of the 1x1/2x2 block diagonal `D`. By Sylvester's
/// law these have the same sign pattern as the eigenvalues of `A` (but not the
/// same magnitudes). The buffer is consumed.
pub fn block_diagonal_eigenvalues_in_place(a: &mut [Complex64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let nn = n as c_int;
    let mut ipiv = vec![0 as c_int; n];
    let mut info: c_int = 0;
    let mut wkopt = Complex64::new(0.0, 0.0);
    let m1: c_int = -1;
    unsafe {
        zhetrf_(
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            ipiv.as_mut_ptr(),
            &mut wkopt,
            &m1,
            &mut info,
        );
    }
    let lwork = (wkopt.re as usize).max(2 * n).max(1);
    let mut work = vec![Complex64::new(0.0, 0.0); lwork];
    unsafe {
        zhetrf_(
            &(b'L' as c_char),
            &nn,
            a.as_mut_ptr(),
            &nn,
            ipiv.as_mut_ptr(),
            work.as_mut_ptr(),
            &(lwork as c_int),
            &mut info,
        );
    }
    // info > 0 means an exactly singular block; report a zero block eigenvalue
    // instead of failing so the caller can count it.
    if info < 0 {
        return Err(Error::Lapack { routine: "zhetrf", info });
    }
    let at = |i: usize, j: usize| a[j * n + i];
    let mut eigs = Vec::with_capacity(n);
    let mut k = 0usize;
    while k < n {
        if ipiv[k] > 0 {
            eigs.push(at(k, k).re);
            k += 1;
        } else {
            // 2x2 Hermitian block [[d1, conj(e)], [e, d2]]
            let d1 = at(k, k).re;
            let d2 = at(k + 1, k + 1).re;
            let e = at(k + 1, k);
            let mid = 0.5 * (d1 + d2);
            let disc = (0.5 * (d1 - d2)).hypot(e.norm());
            eigs.push(mid - disc);
            eigs.push(mid + disc);
            k += 2;
        }
    }
    Ok(eigs)
}

/// Operator (spectral) norm via singular values. Intended for small matrices.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().max()
}

/// Extreme singular values `(smallest, largest)` of a complex matrix.
pub fn extreme_singular_values(a: &CMatrix) -> (f64, f64) {
    let sv = a.clone().singular_values();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for &s in sv.iter() {
        lo = lo.min(s);
        hi = hi.max(s);
    }
    (lo, hi)
}

/// Largest absolute entry; cheap norm used for residual checks on big matrices.
pub fn max_abs_entry(a: &CMatrix) -> f64 {
    a.iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Hermiticity residual `max_ij |a_ij - conj(a_ji)|`.
pub fn hermiticity_residual(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut r = 0.0f64;
    for j in 0..n {
        for i in j..n {
            r = r.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zheev_pauli_like() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(-1.0, 0.0);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        let w = hermitian_eigenvalues(&m).unwrap();
        let s = 2f64.sqrt();
        assert!((w[0] + s).abs() < 1e-12 && (w[1] - s).abs() < 1e-12);
    }

    #[test]
    fn block_diagonal_signs_match_eigen_signs() {
        // indefinite 3x3 with known inertia (2, 1, 0)
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = Complex64::new(2.0, 0.0);
        m[(1, 1)] = Complex64::new(-3.0, 0.0);
        m[(2, 2)] = Complex64::new(1.0, 0.0);
        m[(0, 1)] = Complex64::new(0.5, 0.25);
        m[(1, 0)] = m[(0, 1)].conj();
        let mut buf = m.as_slice().to_vec();
        let d = block_diagonal_eigenvalues_in_place(&mut buf, 3).unwrap();
        let pos = d.iter().filter(|x| **x > 0.0).count();
        let neg = d.iter().filter(|x| **x < 0.0).count();
        assert_eq!((pos, neg), (2, 1));
    }
}
