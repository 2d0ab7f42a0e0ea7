//! The concrete operators used throughout the tests and the CLI: shift
//! powers, the boundary-defect shift, SSH chains (clean and disordered), a
//! 3D chiral model, and a d=1 class-DIII chain with its real symmetry data.
//!
//! Orientation: the right shift is `(S ψ)(n) = ψ(n+1)` (hopping displacement
//! `-1`, Bloch symbol `e^{+ik}`), the representative with index pairing `+1`.

use crate::operators::{Coefficient, HoppingOperator, HoppingTerm};
use crate::symmetry::RealSymmetryData;
use crate::{CMatrix, Error, RMatrix, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn scalar(v: Complex64) -> Coefficient {
    Coefficient::Const(CMatrix::identity(1, 1) * v)
}

/// `A = Sⁿ`, the n-fold right shift (`n < 0` gives the adjoint power).
pub fn shift_model(n: i64) -> HoppingOperator {
    HoppingOperator::new(
        1,
        1,
        vec![HoppingTerm {
            displacement: vec![-n],
            coeff: scalar(Complex64::new(1.0, 0.0)),
        }],
    )
    .expect("static model")
}

/// The §-counterexample operator: the right shift on the window
/// `[-2ρ, 2ρ]` and the identity outside. Not globally invertible — the
/// kernel sits at the window edge — yet its localizer at radius ρ sees only
/// the pure shift and reports half-signature 1, while the true index is 0.
pub fn defect_shift_model(rho: f64) -> Result<HoppingOperator> {
    if !(rho > 0.0) {
        return Err(Error::InvalidRadius(rho));
    }
    let w = (2.0 * rho).floor() as i64;
    let one = Complex64::new(1.0, 0.0);
    let hop = Coefficient::SiteDependent(Arc::new(move |n: &[i64]| {
        // target n receives from n+1 when the source lies in the window
        let v = if n[0] >= -w && n[0] <= w - 1 { one } else { Complex64::new(0.0, 0.0) };
        CMatrix::identity(1, 1) * v
    }));
    let diag = Coefficient::SiteDependent(Arc::new(move |n: &[i64]| {
        let v = if n[0].abs() > w { one } else { Complex64::new(0.0, 0.0) };
        CMatrix::identity(1, 1) * v
    }));
    HoppingOperator::new(
        1,
        1,
        vec![
            HoppingTerm {
                displacement: vec![-1],
                coeff: hop,
            },
            HoppingTerm {
                displacement: vec![0],
                coeff: diag,
            },
        ],
    )
}

/// Periodicized defect: the cyclic shift on `[-2ρ, 2ρ]` plus identity
/// outside. Invertible, but the wrap-around hopping has `|r| = 4ρ`, so
/// `‖[X,A]‖` is of order ρ and the localizer conditions force huge volumes.
pub fn defect_shift_model_periodic(rho: f64) -> Result<HoppingOperator> {
    let w = (2.0 * rho).floor() as i64;
    let mut op = defect_shift_model(rho)?;
    let one = Complex64::new(1.0, 0.0);
    let wrap = Coefficient::SiteDependent(Arc::new(move |n: &[i64]| {
        let v = if n[0] == w { one } else { Complex64::new(0.0, 0.0) };
        CMatrix::identity(1, 1) * v
    }));
    op.terms.push(HoppingTerm {
        displacement: vec![2 * w],
        coeff: wrap,
    });
    Ok(op)
}

/// Deterministic per-site disorder factor, uniform in `[1-w, 1+w]`, derived
/// from (seed, hopping channel, site) so concurrent construction and
/// restriction order cannot change the sample.
fn disorder_factor(seed: u64, channel: u64, site: i64, w: f64) -> f64 {
    let mut key = seed ^ channel.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    key ^= (site as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    key = key.wrapping_add(0x94D0_49BB_1331_11EB);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    1.0 - w + 2.0 * w * rng.gen::<f64>()
}

/// SSH chain off-diagonal block: `A_0 = m`, `A_1 = t`, optionally with
/// independent uniform multiplicative disorder in `[1-w, 1+w]` per site and
/// hopping channel.
pub fn ssh_model(m: f64, t: f64, disorder_w: f64, seed: u64) -> HoppingOperator {
    let terms = if disorder_w > 0.0 {
        let w = disorder_w;
        vec![
            HoppingTerm {
                displacement: vec![0],
                coeff: Coefficient::SiteDependent(Arc::new(move |n: &[i64]| {
                    CMatrix::identity(1, 1)
                        * Complex64::new(m * disorder_factor(seed, 0, n[0], w), 0.0)
                })),
            },
            HoppingTerm {
                displacement: vec![1],
                coeff: Coefficient::SiteDependent(Arc::new(move |n: &[i64]| {
                    CMatrix::identity(1, 1)
                        * Complex64::new(t * disorder_factor(seed, 1, n[0], w), 0.0)
                })),
            },
        ]
    } else {
        vec![
            HoppingTerm {
                displacement: vec![0],
                coeff: scalar(Complex64::new(m, 0.0)),
            },
            HoppingTerm {
                displacement: vec![1],
                coeff: scalar(Complex64::new(t, 0.0)),
            },
        ]
    };
    HoppingOperator::new(1, 1, terms).expect("static model")
}

/// A d=3 chiral block with symbol
/// `A(k) = Σ_j sin(k_j) σ_j + i (m + Σ_j cos(k_j)) 1`, realized by range-1
/// hoppings `A_{±e_j} = (i/2)(1 ± σ_j)`, `A_0 = i m 1`. Gap closes at
/// `m ∈ {±1, ±3}`.
pub fn chiral_3d_model(m: f64) -> Result<HoppingOperator> {
    for bad in [1.0, -1.0, 3.0, -3.0] {
        if m == bad {
            return Err(Error::InvalidModel(format!("gap closes at m = {m}")));
        }
    }
    let i = Complex64::new(0.0, 1.0);
    let id = CMatrix::identity(2, 2);
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let sigmas = [
        CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ];
    let mut terms = vec![HoppingTerm {
        displacement: vec![0, 0, 0],
        coeff: Coefficient::Const(&id * (i * Complex64::new(m, 0.0))),
    }];
    for (j, s) in sigmas.iter().enumerate() {
        for sign in [1.0f64, -1.0] {
            let mut r = vec![0i64, 0, 0];
            r[j] = sign as i64;
            let coeff = (&id + s * Complex64::new(sign, 0.0)) * (i * Complex64::new(0.5, 0.0));
            terms.push(HoppingTerm {
                displacement: r,
                coeff: Coefficient::Const(coeff),
            });
        }
    }
    HoppingOperator::new(3, 2, terms)
}

/// Class-DIII chain: two SSH copies with opposite chirality,
/// `A(k) = diag(m + t e^{-ik}, m + t e^{+ik})`, satisfying
/// `S* conj(A) S = A*` with `S = iσ₂` (`S² = -1`, the j=6 relations).
pub fn diii_chain_model(m: f64, t: f64) -> (HoppingOperator, RealSymmetryData) {
    let z = Complex64::new(0.0, 0.0);
    let cm = Complex64::new(m, 0.0);
    let ct = Complex64::new(t, 0.0);
    let a0 = CMatrix::from_row_slice(2, 2, &[cm, z, z, cm]);
    let a_plus = CMatrix::from_row_slice(2, 2, &[ct, z, z, z]);
    let a_minus = CMatrix::from_row_slice(2, 2, &[z, z, z, ct]);
    let op = HoppingOperator::new(
        1,
        2,
        vec![
            HoppingTerm {
                displacement: vec![0],
                coeff: Coefficient::Const(a0),
            },
            HoppingTerm {
                displacement: vec![1],
                coeff: Coefficient::Const(a_plus),
            },
            HoppingTerm {
                displacement: vec![-1],
                coeff: Coefficient::Const(a_minus),
            },
        ],
    )
    .expect("static model");
    let s = RMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let data = RealSymmetryData {
        s_fiber: s,
        sign_a: -1,
        sign_prime_a: -1,
    };
    (op, data)
}
