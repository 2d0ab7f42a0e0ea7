//! The discrete Euclidean ball in `Z^d` and the finite-volume Dirac matrix.

use crate::clifford::CliffordRep;
use crate::{CMatrix, Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;

/// The set `{x in Z^d : ||x||_2 <= rho}` with a stable (lexicographic)
/// site ordering.
#[derive(Debug, Clone)]
pub struct LatticeBall {
    pub d: usize,
    pub rho: f64,
    /// Sites in lexicographic order.
    pub sites: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

pub fn build_ball(d: usize, rho: f64) -> Result<LatticeBall> {
    if !(rho > 0.0) {
        return Err(Error::InvalidRadius(rho));
    }
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let r = rho.floor() as i64;
    let rho2 = rho * rho;
    let mut sites = Vec::new();
    let mut x = vec![-r; d];
    'outer: loop {
        let norm2: i64 = x.iter().map(|v| v * v).sum();
        if (norm2 as f64) <= rho2 {
            sites.push(x.clone());
        }
        // odometer increment in lexicographic order
        for k in (0..d).rev() {
            if x[k] < r {
                x[k] += 1;
                for v in x.iter_mut().skip(k + 1) {
                    *v = -r;
                }
                continue 'outer;
            }
        }
        break;
    }
    // the odometer with most-significant first already yields lex order
    let index = sites
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(LatticeBall { d, rho, sites, index })
}

impl LatticeBall {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn index_of(&self, site: &[i64]) -> Option<usize> {
        self.index.get(site).copied()
    }
}

/// The Dirichlet restriction of `D = Σ_j Γ_j X_j` to the ball: block diagonal
/// over sites with block `Σ_j n_j Γ_j` at site `n`. Dimension `ν |sites|`.
pub fn dirac_matrix(ball: &LatticeBall, rep: &CliffordRep) -> Result<CMatrix> {
    if ball.d != rep.d {
        return Err(Error::DimensionMismatch(format!(
            "ball d={} vs clifford d={}",
            ball.d, rep.d
        )));
    }
    Ok(dirac_matrix_with_fiber(ball, rep, 1))
}

/// Dirac matrix with the Clifford block tensored by `1_m` (fiber `C^ν ⊗ C^m`),
/// dimension `ν m |sites|`. Site-major, Clifford index before the internal one.
pub fn dirac_matrix_with_fiber(ball: &LatticeBall, rep: &CliffordRep, m: usize) -> CMatrix {
    let nu = rep.nu;
    let n_fiber = nu * m;
    let dim = n_fiber * ball.len();
    let mut mat = CMatrix::zeros(dim, dim);
    for (s, site) in ball.sites.iter().enumerate() {
        let block = site_block(rep, site);
        let base = s * n_fiber;
        for a in 0..nu {
            for b in 0..nu {
                let v = block[(a, b)];
                if v != Complex64::new(0.0, 0.0) {
                    for q in 0..m {
                        mat[(base + a * m + q, base + b * m + q)] = v;
                    }
                }
            }
        }
    }
    mat
}

/// The `ν x ν` block `Σ_j n_j Γ_j` at one site.
pub fn site_block(rep: &CliffordRep, site: &[i64]) -> CMatrix {
    let nu = rep.nu;
    let mut block = CMatrix::zeros(nu, nu);
    for (j, g) in rep.gammas.iter().enumerate() {
        let c = Complex64::new(site[j] as f64, 0.0);
        if site[j] != 0 {
            block += g * c;
        }
    }
    block
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford;
    use crate::linalg::hermitian_eigenvalues;

    #[test]
    fn ball_counts() {
        assert_eq!(build_ball(1, 2.0).unwrap().len(), 5);
        assert_eq!(build_ball(3, 1.0).unwrap().len(), 7);
        // brute-force count over {-2..2}^3 gives 33
        assert_eq!(build_ball(3, 2.0).unwrap().len(), 33);
    }

    #[test]
    fn ball_rejects_nonpositive_radius() {
        assert!(build_ball(1, 0.0).is_err());
        assert!(build_ball(2, -1.0).is_err());
    }

    #[test]
    fn sites_sorted_and_unique() {
        let ball = build_ball(2, 3.5).unwrap();
        for w in ball.sites.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, s) in ball.sites.iter().enumerate() {
            assert_eq!(ball.index_of(s), Some(i));
            let n2: i64 = s.iter().map(|v| v * v).sum();
            assert!((n2 as f64) <= 3.5 * 3.5);
        }
    }

    #[test]
    fn dirac_d1_is_position() {
        let ball = build_ball(1, 2.0).unwrap();
        let rep = build_clifford(1).unwrap();
        let d = dirac_matrix(&ball, &rep).unwrap();
        let diag: Vec<f64> = (0..5).map(|i| d[(i, i)].re).collect();
        assert_eq!(diag, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn dirac_d3_unit_ball_spectrum() {
        let ball = build_ball(3, 1.0).unwrap();
        let rep = build_clifford(3).unwrap();
        let d = dirac_matrix(&ball, &rep).unwrap();
        assert_eq!(d.nrows(), 14);
        let w = hermitian_eigenvalues(&d).unwrap();
        let zeros = w.iter().filter(|x| x.abs() < 1e-12).count();
        let ones = w.iter().filter(|x| (x.abs() - 1.0).abs() < 1e-12).count();
        assert_eq!((zeros, ones), (2, 12));
    }

    #[test]
    fn site_blocks_have_plus_minus_norm_eigenvalues() {
        let rep = build_clifford(3).unwrap();
        for site in [[1i64, 0, 0], [1, 2, 2], [-2, 1, 0]] {
            let b = site_block(&rep, &site);
            let w = hermitian_eigenvalues(&b).unwrap();
            let norm = (site.iter().map(|v| (v * v) as f64).sum::<f64>()).sqrt();
            assert!((w[0] + norm).abs() < 1e-12);
            assert!((w[1] - norm).abs() < 1e-12);
        }
    }
}
