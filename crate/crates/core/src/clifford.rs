//! Irreducible Hermitian representations of the complex Clifford algebra in
//! odd dimension, together with the real unitary `Σ` implementing complex
//! conjugation of the Dirac operator.
//!
//! The sign pattern of `(sign_D, sign'_D)` as a function of `d mod 8` is
//! `d=1 -> (+,+)`, `d=3 -> (-,-)`, `d=5 -> (+,-)`, `d=7 -> (-,+)`.

use crate::linalg::operator_norm;
use crate::{CMatrix, Error, RMatrix, Result};
use num_complex::Complex64;

/// An irreducible representation of the Clifford algebra `C_d` (odd `d`)
/// by Hermitian `ν x ν` matrices, plus the real unitary `Σ` with
/// `Σ* conj(Γ_j) Σ = sign_D Γ_j` and `Σ² = sign'_D`.
#[derive(Debug, Clone)]
pub struct CliffordRep {
    pub d: usize,
    /// Representation dimension `ν = 2^((d-1)/2)`.
    pub nu: usize,
    pub gammas: Vec<CMatrix>,
    /// Real unitary conjugation operator (stored real).
    pub sigma: RMatrix,
    pub sign_d: i8,
    pub sign_prime_d: i8,
}

fn pauli() -> [CMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

fn kron_real(a: &RMatrix, b: &RMatrix) -> RMatrix {
    a.kronecker(b)
}

/// Build the representation for odd `d` in `{1, 3, 5, 7}`.
///
/// Construction: start from the scalar `d = 1` case and go `d -> d+2` via
/// `Γ_j -> σ_1 ⊗ Γ_j`, appending `σ_2 ⊗ 1` and `σ_3 ⊗ 1`. The conjugation
/// operator is obtained by tensoring with the real Pauli factor that
/// produces the required sign pattern: `Σ_3 = iσ_2`, `Σ_5 = σ_3 ⊗ Σ_3`,
/// `Σ_7 = iσ_2 ⊗ Σ_5`.
pub fn build_clifford(d: i64) -> Result<CliffordRep> {
    if d < 1 || d % 2 == 0 || d > 7 {
        return Err(Error::UnsupportedDimension(d));
    }
    let [s1, s2, s3] = pauli();
    let one = |n: usize| CMatrix::identity(n, n);

    let mut gammas = vec![one(1)];
    let mut sigma = RMatrix::identity(1, 1);
    let isigma2 = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let sigma3_r = RMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);

    let mut dim = 1usize;
    let mut cur = 1i64;
    while cur < d {
        let next: Vec<CMatrix> = gammas
            .iter()
            .map(|g| kron(&s1, g))
            .chain([kron(&s2, &one(dim)), kron(&s3, &one(dim))])
            .collect();
        sigma = match cur + 2 {
            3 => isigma2.clone(),
            5 => kron_real(&sigma3_r, &sigma),
            7 => kron_real(&isigma2, &sigma),
            _ => unreachable!(),
        };
        gammas = next;
        dim *= 2;
        cur += 2;
    }

    let (sign_d, sign_prime_d) = match d % 8 {
        1 => (1, 1),
        3 => (-1, -1),
        5 => (1, -1),
        7 => (-1, 1),
        _ => unreachable!(),
    };
    Ok(CliffordRep {
        d: d as usize,
        nu: dim,
        gammas,
        sigma,
        sign_d,
        sign_prime_d,
    })
}

impl CliffordRep {
    /// `Σ` as a complex matrix.
    pub fn sigma_complex(&self) -> CMatrix {
        self.sigma.map(|x| Complex64::new(x, 0.0))
    }
}

/// Check all representation invariants within `tol` in operator norm:
/// Hermiticity, `Γ_j² = 1`, pairwise anticommutation, realness and
/// unitarity of `Σ`, `Σ² = sign'_D`, and `Σ* conj(Γ_j) Σ = sign_D Γ_j`.
pub fn verify_clifford(rep: &CliffordRep, tol: f64) -> bool {
    let nu = rep.nu;
    if rep.gammas.len() != rep.d || nu != 1usize << (rep.d / 2) {
        return false;
    }
    let id = CMatrix::identity(nu, nu);
    for g in &rep.gammas {
        if g.nrows() != nu || operator_norm(&(g - g.adjoint())) > tol {
            return false;
        }
        if operator_norm(&(g * g - &id)) > tol {
            return false;
        }
    }
    for i in 0..rep.d {
        for j in (i + 1)..rep.d {
            let anti = &rep.gammas[i] * &rep.gammas[j] + &rep.gammas[j] * &rep.gammas[i];
            if operator_norm(&anti) > tol {
                return false;
            }
        }
    }
    let sc = rep.sigma_complex();
    if operator_norm(&(&sc * sc.adjoint() - &id)) > tol {
        return false;
    }
    let ssq = &sc * &sc;
    let sp = Complex64::new(rep.sign_prime_d as f64, 0.0);
    if operator_norm(&(ssq - &id * sp)) > tol {
        return false;
    }
    let s = Complex64::new(rep.sign_d as f64, 0.0);
    for g in &rep.gammas {
        let conj_g = g.map(|z| z.conj());
        let rel = sc.adjoint() * conj_g * &sc - g * s;
        if operator_norm(&rel) > tol {
            return false;
        }
    }
    true
}
