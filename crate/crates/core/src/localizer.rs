//! Assembly of the spectral localizer
//! `L_{κ,ρ} = [[κ D_ρ, A_ρ], [A_ρ*, -κ D_ρ]]`, its tapered variant and the
//! straight-line homotopy between them.
//!
//! Index layout of the `2 ν m |sites|` dimensional matrix: grading block
//! first (`+κD` block then `-κD` block), sites in ball order inside each
//! block, fiber `C^ν ⊗ C^m` with the Clifford index major.

use crate::clifford::CliffordRep;
use crate::lattice::{dirac_matrix_with_fiber, site_block, LatticeBall};
use crate::linalg::hermitian_eigenvalues;
use crate::operators::HoppingOperator;
use crate::{CMatrix, Error, Result};
use num_complex::Complex64;

/// The Haagerup tapering pair `(F_ρ, G_ρ)` built from the piecewise-quadratic
/// bump cumulative `f`, satisfying `4 F (1 - F) = G⁴`, `G_ρ = 1` on
/// `[-ρ/2, ρ/2]`, `G_ρ = 0` outside `[-ρ, ρ]`, and `||Ĝ'_ρ||_{L¹} ≤ 8/ρ`.
#[derive(Debug, Clone, Copy)]
pub struct TaperingPair {
    pub rho: f64,
}

/// Cumulative of the triangle-free quadratic bump: `0` below `-1`,
/// `(1+x)²/2` on `[-1,0]`, `1-(1-x)²/2` on `[0,1]`, `1` above.
fn bump_cumulative(x: f64) -> f64 {
    if x <= -1.0 {
        0.0
    } else if x <= 0.0 {
        0.5 * (1.0 + x) * (1.0 + x)
    } else if x <= 1.0 {
        1.0 - 0.5 * (1.0 - x) * (1.0 - x)
    } else {
        1.0
    }
}

pub fn haagerup_profile(rho: f64) -> Result<TaperingPair> {
    if !(rho > 0.0) {
        return Err(Error::InvalidRadius(rho));
    }
    Ok(TaperingPair { rho })
}

impl TaperingPair {
    /// `G_ρ(x) = f(4x/ρ + 3) - f(4x/ρ - 3)`; even, valued in `[0,1]`.
    pub fn g(&self, x: f64) -> f64 {
        let y = x / self.rho;
        bump_cumulative(4.0 * y + 3.0) - bump_cumulative(4.0 * y - 3.0)
    }

    /// `F_ρ(x) = (1 + sgn(x) (1 - G_ρ(x)⁴)^{1/2}) / 2`; `2F - 1` is odd.
    pub fn f(&self, x: f64) -> f64 {
        let g4 = self.g(x).powi(4);
        0.5 * (1.0 + x.signum() * (1.0 - g4).max(0.0).sqrt())
    }
}

/// Evaluate a function of `D_ρ ⊗ 1_m` exactly: the Dirac matrix is block
/// diagonal with site block `B_n = Σ_j n_j Γ_j` whose eigenvalues are
/// `±||n||`, so `φ(B_n) = φ_even(||n||) 1 + (φ_odd(||n||)/||n||) B_n`.
pub fn dirac_function(
    ball: &LatticeBall,
    rep: &CliffordRep,
    fiber: usize,
    phi: impl Fn(f64) -> f64,
) -> CMatrix {
    let nu = rep.nu;
    let nf = nu * fiber;
    let dim = nf * ball.len();
    let mut mat = CMatrix::zeros(dim, dim);
    for (s, site) in ball.sites.iter().enumerate() {
        let norm = (site.iter().map(|v| (v * v) as f64).sum::<f64>()).sqrt();
        let (even, odd_over_x) = if norm == 0.0 {
            (phi(0.0), 0.0)
        } else {
            let p = phi(norm);
            let q = phi(-norm);
            (0.5 * (p + q), 0.5 * (p - q) / norm)
        };
        let base = s * nf;
        let block = site_block(rep, site);
        for a in 0..nu {
            for b in 0..nu {
                let mut v = block[(a, b)] * Complex64::new(odd_over_x, 0.0);
                if a == b {
                    v += Complex64::new(even, 0.0);
                }
                if v != Complex64::new(0.0, 0.0) {
                    for q in 0..fiber {
                        mat[(base + a * fiber + q, base + b * fiber + q)] = v;
                    }
                }
            }
        }
    }
    mat
}

/// Expand the restriction of `A` (site ⊗ C^m) to site ⊗ C^ν ⊗ C^m by
/// tensoring the identity on the Clifford index.
fn expand_over_clifford(a_restricted: &CMatrix, nu: usize, fiber: usize) -> CMatrix {
    if nu == 1 {
        return a_restricted.clone();
    }
    let sites = a_restricted.nrows() / fiber;
    let nf = nu * fiber;
    let mut out = CMatrix::zeros(nf * sites, nf * sites);
    for s in 0..sites {
        for t in 0..sites {
            for q in 0..fiber {
                for q2 in 0..fiber {
                    let v = a_restricted[(s * fiber + q, t * fiber + q2)];
                    if v != Complex64::new(0.0, 0.0) {
                        for c in 0..nu {
                            out[(s * nf + c * fiber + q, t * nf + c * fiber + q2)] = v;
                        }
                    }
                }
            }
        }
    }
    out
}

fn assemble(diag: &CMatrix, off: &CMatrix) -> CMatrix {
    let n = diag.nrows();
    let mut l = CMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for i in 0..n {
            let d = diag[(i, j)];
            if d != Complex64::new(0.0, 0.0) {
                l[(i, j)] = d;
                l[(n + i, n + j)] = -d;
            }
            let o = off[(i, j)];
            if o != Complex64::new(0.0, 0.0) {
                l[(i, n + j)] = o;
                l[(n + j, i)] = o.conj();
            }
        }
    }
    l
}

fn check_compat(op: &HoppingOperator, rep: &CliffordRep, ball: &LatticeBall) -> Result<()> {
    if op.d != rep.d || op.d != ball.d {
        return Err(Error::DimensionMismatch(format!(
            "operator d={}, clifford d={}, ball d={}",
            op.d, rep.d, ball.d
        )));
    }
    Ok(())
}

/// The linear spectral localizer `[[κ D_ρ, A_ρ], [A_ρ*, -κ D_ρ]]`.
pub fn build_localizer(
    op: &HoppingOperator,
    rep: &CliffordRep,
    ball: &LatticeBall,
    kappa: f64,
) -> Result<CMatrix> {
    check_compat(op, rep, ball)?;
    if !(kappa > 0.0) {
        return Err(Error::InvalidKappa(kappa));
    }
    let m = op.fiber_dim;
    let diag = dirac_matrix_with_fiber(ball, rep, m) * Complex64::new(kappa, 0.0);
    let off = expand_over_clifford(&op.restrict(ball)?, rep.nu, m);
    Ok(assemble(&diag, &off))
}

/// The homotopy localizer at `λ ∈ [0, 1]`:
/// `[[κρ (2F-1)(D), G(D) A_ρ G(D)], [G A* G, -κρ (2F-1)(D)]]` with
/// `F = λ F^L + (1-λ) F_ρ`, `G = λ + (1-λ) G_ρ`, `F^L(x) = (1 + x/ρ)/2`.
/// `λ = 1` reproduces [`build_localizer`]; `λ = 0` is the tapered localizer.
pub fn homotopy_localizer(
    op: &HoppingOperator,
    rep: &CliffordRep,
    ball: &LatticeBall,
    kappa: f64,
    lambda: f64,
) -> Result<CMatrix> {
    check_compat(op, rep, ball)?;
    if !(kappa > 0.0) {
        return Err(Error::InvalidKappa(kappa));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidLambda(lambda));
    }
    let rho = ball.rho;
    let taper = haagerup_profile(rho)?;
    let m = op.fiber_dim;
    let two_f_minus_one =
        |x: f64| lambda * (x / rho) + (1.0 - lambda) * (2.0 * taper.f(x) - 1.0);
    let g = |x: f64| lambda + (1.0 - lambda) * taper.g(x);
    let diag =
        dirac_function(ball, rep, m, |x| kappa * rho * two_f_minus_one(x));
    let g_of_d = dirac_function(ball, rep, m, g);
    let a = expand_over_clifford(&op.restrict(ball)?, rep.nu, m);
    let off = &g_of_d * a * &g_of_d;
    Ok(assemble(&diag, &off))
}

/// The tapered localizer (homotopy endpoint `λ = 0`).
pub fn build_tapered_localizer(
    op: &HoppingOperator,
    rep: &CliffordRep,
    ball: &LatticeBall,
    kappa: f64,
) -> Result<CMatrix> {
    homotopy_localizer(op, rep, ball, kappa, 0.0)
}

/// Assemble the linear localizer directly into a single column-major buffer
/// and return its half-signature via the in-place factorization. This is the
/// path for matrices near the memory limit: peak usage is one `(2n)²` buffer
/// plus the factorization workspace, with no intermediate block matrices.
pub fn half_signature_lean(
    op: &HoppingOperator,
    rep: &CliffordRep,
    ball: &LatticeBall,
    kappa: f64,
) -> Result<i64> {
    let (mut buf, dim) = assemble_localizer_buffer(op, rep, ball, kappa)?;
    crate::signature::half_signature_in_place(&mut buf, dim)
}

/// Column-major entries of the linear localizer, assembled without any
/// intermediate block matrices.
pub fn assemble_localizer_buffer(
    op: &HoppingOperator,
    rep: &CliffordRep,
    ball: &LatticeBall,
    kappa: f64,
) -> Result<(Vec<Complex64>, usize)> {
    check_compat(op, rep, ball)?;
    if !(kappa > 0.0) {
        return Err(Error::InvalidKappa(kappa));
    }
    let m = op.fiber_dim;
    let nu = rep.nu;
    let nf = nu * m;
    let n = nf * ball.len();
    let dim = 2 * n;
    let mut buf = vec![Complex64::new(0.0, 0.0); dim * dim];
    let idx = |row: usize, col: usize| col * dim + row;
    // diagonal blocks ±κ Σ_j n_j Γ_j per site
    for (s, site) in ball.sites.iter().enumerate() {
        let block = site_block(rep, site) * Complex64::new(kappa, 0.0);
        let base = s * nf;
        for a in 0..nu {
            for b in 0..nu {
                let v = block[(a, b)];
                if v != Complex64::new(0.0, 0.0) {
                    for q in 0..m {
                        let (row, col) = (base + a * m + q, base + b * m + q);
                        buf[idx(row, col)] = v;
                        buf[idx(n + row, n + col)] = -v;
                    }
                }
            }
        }
    }
    // off-diagonal blocks A_ρ ⊗ 1_ν and its adjoint
    for (ti, target) in ball.sites.iter().enumerate() {
        for t in &op.terms {
            let source: Vec<i64> = target
                .iter()
                .zip(&t.displacement)
                .map(|(a, b)| a - b)
                .collect();
            if let Some(si) = ball.index_of(&source) {
                let block = t.coeff.at(target);
                for a in 0..m {
                    for b in 0..m {
                        let v = block[(a, b)];
                        if v != Complex64::new(0.0, 0.0) {
                            for c in 0..nu {
                                let row = ti * nf + c * m + a;
                                let col = si * nf + c * m + b;
                                buf[idx(row, n + col)] += v;
                                buf[idx(n + col, row)] += v.conj();
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((buf, dim))
}

#[derive(Debug, Clone, Copy)]
pub struct GapReport {
    pub min_abs_eigenvalue: f64,
    /// The certified lower bound `g / √2` from `L² ≥ g²/2`.
    pub bound: f64,
    pub ok: bool,
}

/// Check the localizer spectral gap against the theorem bound `g / √2`.
pub fn gap_check(localizer: &CMatrix, gap_g: f64) -> Result<GapReport> {
    let w = hermitian_eigenvalues(localizer)?;
    let min_abs = w.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    let bound = gap_g / 2f64.sqrt();
    Ok(GapReport {
        min_abs_eigenvalue: min_abs,
        bound,
        ok: min_abs >= bound - 1e-9,
    })
}
