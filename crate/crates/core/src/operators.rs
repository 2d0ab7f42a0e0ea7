//! Finite-range hopping operators on `l²(Z^d) ⊗ C^N`, their Dirichlet
//! restrictions, and the three scalars entering the localizer conditions:
//! `||A||`, the gap `g = ||A^{-1}||^{-1}` and `||[D,A]||`.
//!
//! Hopping convention: `(A ψ)(n) = Σ_r A_r(n) ψ(n - r)`, i.e. the coefficient
//! is indexed by the *target* site. This fixes which index carries disorder.

use crate::clifford::CliffordRep;
use crate::lattice::LatticeBall;
use crate::linalg::{extreme_singular_values, operator_norm};
use crate::{CMatrix, Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Hopping coefficient for one displacement: either a constant matrix
/// (translation-invariant) or a site-indexed family (disordered).
#[derive(Clone)]
pub enum Coefficient {
    Const(CMatrix),
    SiteDependent(Arc<dyn Fn(&[i64]) -> CMatrix + Send + Sync>),
}

impl Coefficient {
    pub fn at(&self, site: &[i64]) -> CMatrix {
        match self {
            Coefficient::Const(m) => m.clone(),
            Coefficient::SiteDependent(f) => f(site),
        }
    }
}

impl std::fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficient::Const(m) => write!(f, "Const({}x{})", m.nrows(), m.ncols()),
            Coefficient::SiteDependent(_) => write!(f, "SiteDependent"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HoppingTerm {
    pub displacement: Vec<i64>,
    pub coeff: Coefficient,
}

/// A finite-range operator `A` on `l²(Z^d) ⊗ C^N`.
#[derive(Debug, Clone)]
pub struct HoppingOperator {
    pub d: usize,
    /// Internal fiber dimension `N`.
    pub fiber_dim: usize,
    pub terms: Vec<HoppingTerm>,
}

impl HoppingOperator {
    pub fn new(d: usize, fiber_dim: usize, terms: Vec<HoppingTerm>) -> Result<Self> {
        for t in &terms {
            if t.displacement.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "displacement {:?} in d={}",
                    t.displacement, d
                )));
            }
            if let Coefficient::Const(m) = &t.coeff {
                if m.nrows() != fiber_dim || m.ncols() != fiber_dim {
                    return Err(Error::DimensionMismatch(format!(
                        "coefficient {}x{} with N={}",
                        m.nrows(),
                        m.ncols(),
                        fiber_dim
                    )));
                }
            }
        }
        Ok(HoppingOperator { d, fiber_dim, terms })
    }

    pub fn is_translation_invariant(&self) -> bool {
        self.terms
            .iter()
            .all(|t| matches!(t.coeff, Coefficient::Const(_)))
    }

    /// Hopping range `max ||r||_2` over the support.
    pub fn range(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| norm2(&t.displacement))
            .fold(0.0, f64::max)
    }

    /// The operator scaled by a constant factor.
    pub fn scaled(&self, factor: Complex64) -> HoppingOperator {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let coeff = match &t.coeff {
                    Coefficient::Const(m) => Coefficient::Const(m * factor),
                    Coefficient::SiteDependent(f) => {
                        let f = f.clone();
                        Coefficient::SiteDependent(Arc::new(move |n: &[i64]| f(n) * factor))
                    }
                };
                HoppingTerm {
                    displacement: t.displacement.clone(),
                    coeff,
                }
            })
            .collect();
        HoppingOperator {
            d: self.d,
            fiber_dim: self.fiber_dim,
            terms,
        }
    }

    /// The adjoint operator: `(A*)_r(n) = A_{-r}(n - r)^*`.
    pub fn adjoint(&self) -> HoppingOperator {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let neg: Vec<i64> = t.displacement.iter().map(|x| -x).collect();
                let coeff = match &t.coeff {
                    Coefficient::Const(m) => Coefficient::Const(m.adjoint()),
                    Coefficient::SiteDependent(f) => {
                        let f = f.clone();
                        let neg2 = neg.clone();
                        Coefficient::SiteDependent(Arc::new(move |n: &[i64]| {
                            let src: Vec<i64> =
                                n.iter().zip(&neg2).map(|(a, b)| a - b).collect();
                            f(&src).adjoint()
                        }))
                    }
                };
                HoppingTerm { displacement: neg, coeff }
            })
            .collect();
        HoppingOperator {
            d: self.d,
            fiber_dim: self.fiber_dim,
            terms,
        }
    }

    /// The commutator `[X_j, A]`, whose hoppings are `r ↦ r_j A_r(n)`.
    pub fn commutator_with_position(&self, axis: usize) -> Result<HoppingOperator> {
        if axis == 0 || axis > self.d {
            return Err(Error::DimensionMismatch(format!(
                "axis {} for d={}",
                axis, self.d
            )));
        }
        let j = axis - 1;
        let terms = self
            .terms
            .iter()
            .filter(|t| t.displacement[j] != 0)
            .map(|t| {
                let rj = Complex64::new(t.displacement[j] as f64, 0.0);
                let coeff = match &t.coeff {
                    Coefficient::Const(m) => Coefficient::Const(m * rj),
                    Coefficient::SiteDependent(f) => {
                        let f = f.clone();
                        Coefficient::SiteDependent(Arc::new(move |n: &[i64]| f(n) * rj))
                    }
                };
                HoppingTerm {
                    displacement: t.displacement.clone(),
                    coeff,
                }
            })
            .collect();
        Ok(HoppingOperator {
            d: self.d,
            fiber_dim: self.fiber_dim,
            terms,
        })
    }

    /// Bloch symbol `A(k) = Σ_r A_r e^{-i k·r}` (translation-invariant only).
    pub fn symbol(&self, k: &[f64]) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(self.fiber_dim, self.fiber_dim);
        for t in &self.terms {
            let m = match &t.coeff {
                Coefficient::Const(m) => m,
                Coefficient::SiteDependent(_) => return Err(Error::NotTranslationInvariant),
            };
            let phase: f64 = -k
                .iter()
                .zip(&t.displacement)
                .map(|(ki, ri)| ki * (*ri as f64))
                .sum::<f64>();
            out += m * Complex64::from_polar(1.0, phase);
        }
        Ok(out)
    }

    /// Dirichlet restriction to the ball: block `(m, n) = A_{m-n}(m)` for
    /// sites `m, n` in the ball, all hoppings across the boundary dropped.
    pub fn restrict(&self, ball: &LatticeBall) -> Result<CMatrix> {
        if self.d != ball.d {
            return Err(Error::DimensionMismatch(format!(
                "operator d={} vs ball d={}",
                self.d, ball.d
            )));
        }
        let nf = self.fiber_dim;
        let dim = nf * ball.len();
        let mut mat = CMatrix::zeros(dim, dim);
        for (ti, target) in ball.sites.iter().enumerate() {
            for t in &self.terms {
                let source: Vec<i64> = target
                    .iter()
                    .zip(&t.displacement)
                    .map(|(a, b)| a - b)
                    .collect();
                if let Some(si) = ball.index_of(&source) {
                    let block = t.coeff.at(target);
                    for a in 0..nf {
                        for b in 0..nf {
                            let v = block[(a, b)];
                            if v != Complex64::new(0.0, 0.0) {
                                mat[(ti * nf + a, si * nf + b)] += v;
                            }
                        }
                    }
                }
            }
        }
        Ok(mat)
    }

    /// Periodicized restriction to the box `[-L, L)^d` (cyclic closure of the
    /// displacements). Used to probe norms of disordered operators without
    /// the spurious edge modes of a Dirichlet cut.
    pub fn restrict_periodic(&self, half_side: i64) -> Result<CMatrix> {
        let l = half_side;
        if l <= 0 {
            return Err(Error::InvalidRadius(l as f64));
        }
        let side = 2 * l;
        let n_sites = (side as usize).pow(self.d as u32);
        let nf = self.fiber_dim;
        let mut mat = CMatrix::zeros(nf * n_sites, nf * n_sites);
        let mut target = vec![-l; self.d];
        for ti in 0..n_sites {
            for t in &self.terms {
                let source: Vec<i64> = target
                    .iter()
                    .zip(&t.displacement)
                    .map(|(a, b)| {
                        let mut v = (a - b + l).rem_euclid(side) - l;
                        if v < -l {
                            v += side;
                        }
                        v
                    })
                    .collect();
                let si = box_index(&source, l, side);
                let block = t.coeff.at(&target);
                for a in 0..nf {
                    for b in 0..nf {
                        let v = block[(a, b)];
                        if v != Complex64::new(0.0, 0.0) {
                            mat[(ti * nf + a, si * nf + b)] += v;
                        }
                    }
                }
            }
            // odometer
            for k in (0..self.d).rev() {
                if target[k] < l - 1 {
                    target[k] += 1;
                    for v in target.iter_mut().skip(k + 1) {
                        *v = -l;
                    }
                    break;
                }
                target[k] = -l;
            }
        }
        Ok(mat)
    }
}

fn box_index(site: &[i64], l: i64, side: i64) -> usize {
    let mut idx = 0usize;
    for &x in site {
        idx = idx * side as usize + (x + l) as usize;
    }
    idx
}

fn norm2(r: &[i64]) -> f64 {
    (r.iter().map(|v| (v * v) as f64).sum::<f64>()).sqrt()
}

/// How `||A||` and `g` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// Extreme singular values of the Bloch symbol over a refined k-grid
    /// (translation-invariant operators, certified by a Lipschitz bound).
    Symbol,
    /// Extreme singular values of the periodicized truncation; an estimate,
    /// not a certificate.
    Truncation { rho_probe: i64 },
}

/// How `||[D,A]||` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CommutatorMode {
    /// Sup over k of the largest singular value of `Σ_j Γ_j ⊗ (∂_j symbol)`.
    ExactSymbol,
    /// Triangle inequality `Σ_r ||r|| sup_n ||A_r(n)||`; the sup is taken
    /// over sites within `probe_radius` (exact for constant coefficients).
    UpperBound { probe_radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    Exact,
    UpperBound,
}

/// The scalar inputs of the localizer theorem for a given `(κ, ρ)`.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub norm_a: f64,
    pub gap_g: f64,
    pub comm_norm: f64,
    /// Largest κ allowed by the commutator condition: `g³ / (18 ||A|| ||[D,A]||)`.
    pub kappa_max: f64,
    /// Smallest ρ allowed for the given κ: `2 g / κ`.
    pub rho_min: f64,
    pub cond1_ok: bool,
    pub cond2_ok: bool,
    pub bound_mode: BoundMode,
    /// False when the gap probe found `g = 0`; the pairing is then undefined.
    pub invertible: bool,
}

/// Scan a scalar function of the symbol over k-grids, doubling the per-axis
/// resolution until the change drops below `tol` (a Bernstein-type bound on
/// the symbol derivative makes the extremes of a trigonometric polynomial
/// Lipschitz in k, so grid refinement converges linearly).
fn refine_symbol_scan<F>(d: usize, mut eval: F, start: usize, cap: usize, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(usize) -> Result<(f64, f64)>,
{
    let _ = d;
    let mut grid = start;
    let (mut lo, mut hi) = eval(grid)?;
    while grid < cap {
        grid *= 2;
        let (lo2, hi2) = eval(grid)?;
        let change = (lo - lo2).abs().max((hi - hi2).abs());
        lo = lo2;
        hi = hi2;
        if change < tol {
            break;
        }
    }
    Ok((lo, hi))
}

fn k_grid_scan(
    op: &HoppingOperator,
    grid: usize,
    mut visit: impl FnMut(&CMatrix),
) -> Result<()> {
    let d = op.d;
    let mut idx = vec![0usize; d];
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    loop {
        let k: Vec<f64> = idx.iter().map(|&i| i as f64 * step).collect();
        let s = op.symbol(&k)?;
        visit(&s);
        let mut done = true;
        for j in (0..d).rev() {
            if idx[j] + 1 < grid {
                idx[j] += 1;
                for v in idx.iter_mut().skip(j + 1) {
                    *v = 0;
                }
                done = false;
                break;
            }
        }
        if done {
            return Ok(());
        }
    }
}

/// `(||A||, g)` for a hopping operator.
pub fn norm_and_gap(op: &HoppingOperator, mode: NormMode) -> Result<(f64, f64)> {
    match mode {
        NormMode::Symbol => {
            if !op.is_translation_invariant() {
                return Err(Error::NotTranslationInvariant);
            }
            let cap = if op.d == 1 { 1 << 14 } else { 128 };
            let (lo, hi) = refine_symbol_scan(
                op.d,
                |grid| {
                    let mut lo = f64::INFINITY;
                    let mut hi = 0.0f64;
                    k_grid_scan(op, grid, |s| {
                        let (l, h) = extreme_singular_values(s);
                        lo = lo.min(l);
                        hi = hi.max(h);
                    })?;
                    Ok((lo, hi))
                },
                64,
                cap,
                1e-6,
            )?;
            Ok((hi, lo))
        }
        NormMode::Truncation { rho_probe } => {
            let m = op.restrict_periodic(rho_probe)?;
            let (lo, hi) = extreme_singular_values(&m);
            Ok((hi, lo))
        }
    }
}

/// `||[D, A]||` (or an upper bound for it).
pub fn dirac_commutator_norm(
    op: &HoppingOperator,
    rep: &CliffordRep,
    mode: CommutatorMode,
) -> Result<(f64, BoundMode)> {
    match mode {
        CommutatorMode::ExactSymbol => {
            if !op.is_translation_invariant() {
                return Err(Error::NotTranslationInvariant);
            }
            // [D, A] = Σ_j Γ_j ⊗ [X_j, A]; its symbol at k is
            // Σ_j Γ_j ⊗ (Σ_r r_j A_r e^{-i k·r}).
            let parts: Vec<HoppingOperator> = (1..=op.d)
                .map(|j| op.commutator_with_position(j))
                .collect::<Result<_>>()?;
            let cap = if op.d == 1 { 1 << 14 } else { 128 };
            let (_, hi) = refine_symbol_scan(
                op.d,
                |grid| {
                    let mut hi = 0.0f64;
                    let d = op.d;
                    let mut idx = vec![0usize; d];
                    let step = 2.0 * std::f64::consts::PI / grid as f64;
                    loop {
                        let k: Vec<f64> = idx.iter().map(|&i| i as f64 * step).collect();
                        let mut m =
                            CMatrix::zeros(rep.nu * op.fiber_dim, rep.nu * op.fiber_dim);
                        for (j, part) in parts.iter().enumerate() {
                            m += rep.gammas[j].kronecker(&part.symbol(&k)?);
                        }
                        hi = hi.max(operator_norm(&m));
                        let mut done = true;
                        for j in (0..d).rev() {
                            if idx[j] + 1 < grid {
                                idx[j] += 1;
                                for v in idx.iter_mut().skip(j + 1) {
                                    *v = 0;
                                }
                                done = false;
                                break;
                            }
                        }
                        if done {
                            break;
                        }
                    }
                    Ok((0.0, hi))
                },
                64,
                cap,
                1e-6,
            )?;
            Ok((hi, BoundMode::Exact))
        }
        CommutatorMode::UpperBound { probe_radius } => {
            let r = probe_radius.max(1.0);
            let rad = r.ceil() as i64;
            let mut total = 0.0;
            for t in &op.terms {
                let rn = norm2(&t.displacement);
                if rn == 0.0 {
                    continue;
                }
                let sup = match &t.coeff {
                    Coefficient::Const(m) => operator_norm(m),
                    Coefficient::SiteDependent(_) => {
                        // scan a box of probe sites
                        let mut sup = 0.0f64;
                        let mut site = vec![-rad; op.d];
                        loop {
                            sup = sup.max(operator_norm(&t.coeff.at(&site)));
                            let mut done = true;
                            for k in (0..op.d).rev() {
                                if site[k] < rad {
                                    site[k] += 1;
                                    for v in site.iter_mut().skip(k + 1) {
                                        *v = -rad;
                                    }
                                    done = false;
                                    break;
                                }
                                site[k] = -rad;
                            }
                            if done {
                                break;
                            }
                        }
                        sup
                    }
                };
                total += rn * sup;
            }
            Ok((total, BoundMode::UpperBound))
        }
    }
}

/// Assemble the full condition report for `(κ, ρ)`. Translation-invariant
/// operators get certified symbol values; disordered ones get the
/// periodicized-truncation gap estimate and the triangle-inequality
/// commutator bound.
pub fn condition_report(
    op: &HoppingOperator,
    rep: &CliffordRep,
    kappa: f64,
    rho: f64,
) -> Result<ConditionReport> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidKappa(kappa));
    }
    let (norm_a, gap_g, comm_norm, bound_mode) = if op.is_translation_invariant() {
        let (na, g) = norm_and_gap(op, NormMode::Symbol)?;
        let (c, _) = dirac_commutator_norm(op, rep, CommutatorMode::ExactSymbol)?;
        (na, g, c, BoundMode::Exact)
    } else {
        let probe = (4.0 * rho).ceil() as i64;
        let (na, g) = norm_and_gap(op, NormMode::Truncation { rho_probe: probe })?;
        let (c, _) = dirac_commutator_norm(
            op,
            rep,
            CommutatorMode::UpperBound {
                probe_radius: 4.0 * rho + op.range(),
            },
        )?;
        (na, g, c, BoundMode::UpperBound)
    };
    let invertible = gap_g > 1e-12 * norm_a.max(1.0);
    let (kappa_max, rho_min, cond1_ok, cond2_ok) = if invertible {
        let kmax = if comm_norm > 0.0 {
            gap_g.powi(3) / (18.0 * norm_a * comm_norm)
        } else {
            f64::INFINITY
        };
        let rmin = 2.0 * gap_g / kappa;
        let c1 = comm_norm <= gap_g.powi(3) / (18.0 * norm_a * kappa) + 1e-12;
        let c2 = rmin <= rho + 1e-12;
        (kmax, rmin, c1, c2)
    } else {
        (0.0, f64::INFINITY, false, false)
    };
    Ok(ConditionReport {
        norm_a,
        gap_g,
        comm_norm,
        kappa_max,
        rho_min,
        cond1_ok,
        cond2_ok,
        bound_mode,
        invertible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford;
    use crate::lattice::build_ball;

    fn shift(n: i64) -> HoppingOperator {
        let one = CMatrix::identity(1, 1);
        HoppingOperator::new(
            1,
            1,
            vec![HoppingTerm {
                displacement: vec![n],
                coeff: Coefficient::Const(one),
            }],
        )
        .unwrap()
    }

    fn ssh(m: f64, t: f64) -> HoppingOperator {
        let c = |x: f64| CMatrix::identity(1, 1) * Complex64::new(x, 0.0);
        HoppingOperator::new(
            1,
            1,
            vec![
                HoppingTerm {
                    displacement: vec![0],
                    coeff: Coefficient::Const(c(m)),
                },
                HoppingTerm {
                    displacement: vec![1],
                    coeff: Coefficient::Const(c(t)),
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn restrict_shift_is_subdiagonal() {
        let ball = build_ball(1, 2.0).unwrap();
        let m = shift(1).restrict(&ball).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)].re, expect, "({i},{j})");
                assert_eq!(m[(i, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn restrict_identity() {
        let ball = build_ball(1, 3.0).unwrap();
        let m = shift(0).restrict(&ball).unwrap();
        assert_eq!(m, CMatrix::identity(7, 7));
    }

    #[test]
    fn restrict_ssh_matches_convolution() {
        let ball = build_ball(1, 2.0).unwrap();
        let op = ssh(0.5, 1.0);
        let m = op.restrict(&ball).unwrap();
        // apply A to each basis vector by the defining convolution
        for (si, src) in ball.sites.iter().enumerate() {
            for (ti, tgt) in ball.sites.iter().enumerate() {
                let r = tgt[0] - src[0];
                let expect = match r {
                    0 => 0.5,
                    1 => 1.0,
                    _ => 0.0,
                };
                assert_eq!(m[(ti, si)].re, expect);
            }
        }
    }

    #[test]
    fn restrict_adjoint_is_adjoint_of_restrict() {
        let ball = build_ball(1, 3.0).unwrap();
        let op = ssh(0.3, 0.7);
        let a = op.restrict(&ball).unwrap();
        let astar = op.adjoint().restrict(&ball).unwrap();
        assert!((a.adjoint() - astar).iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn position_commutator_of_shift() {
        let op = shift(1);
        let c = op.commutator_with_position(1).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert_eq!(c.terms[0].displacement, vec![1]);
        assert_eq!(c.terms[0].coeff.at(&[0])[(0, 0)].re, 1.0);
        // identity commutes
        assert!(shift(0).commutator_with_position(1).unwrap().terms.is_empty());
    }

    #[test]
    fn commutator_norm_of_shift_powers() {
        let rep = build_clifford(1).unwrap();
        for n in 1..=3i64 {
            let op = shift(n);
            let (v, mode) =
                dirac_commutator_norm(&op, &rep, CommutatorMode::ExactSymbol).unwrap();
            assert!((v - n as f64).abs() < 1e-9, "n={n} got {v}");
            assert_eq!(mode, BoundMode::Exact);
        }
        let (v, _) = dirac_commutator_norm(&shift(0), &rep, CommutatorMode::ExactSymbol).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn commutator_norm_ssh() {
        let rep = build_clifford(1).unwrap();
        let (v, _) =
            dirac_commutator_norm(&ssh(0.5, 1.0), &rep, CommutatorMode::ExactSymbol).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn upper_bound_dominates_exact() {
        let rep = build_clifford(1).unwrap();
        for op in [shift(2), ssh(0.4, 1.3)] {
            let (ex, _) = dirac_commutator_norm(&op, &rep, CommutatorMode::ExactSymbol).unwrap();
            let (ub, _) = dirac_commutator_norm(
                &op,
                &rep,
                CommutatorMode::UpperBound { probe_radius: 4.0 },
            )
            .unwrap();
            assert!(ub >= ex - 1e-9);
        }
    }

    #[test]
    fn norm_and_gap_values() {
        let (na, g) = norm_and_gap(&shift(1), NormMode::Symbol).unwrap();
        assert!((na - 1.0).abs() < 1e-9 && (g - 1.0).abs() < 1e-9);
        let (na, g) = norm_and_gap(&ssh(0.5, 1.0), NormMode::Symbol).unwrap();
        assert!((na - 1.5).abs() < 1e-6 && (g - 0.5).abs() < 1e-6);
        // gap closes at m = t
        let (_, g) = norm_and_gap(&ssh(1.0, 1.0), NormMode::Symbol).unwrap();
        assert!(g < 1e-3);
    }

    #[test]
    fn condition_report_shift() {
        let rep = build_clifford(1).unwrap();
        let r = condition_report(&shift(1), &rep, 1.0 / 18.0, 36.0).unwrap();
        assert!(r.cond1_ok && r.cond2_ok && r.invertible);
        assert!((r.kappa_max - 1.0 / 18.0).abs() < 1e-6);
        assert!((r.rho_min - 36.0).abs() < 1e-6);
        let r = condition_report(&shift(1), &rep, 0.1, 36.0).unwrap();
        assert!(!r.cond1_ok);
    }

    #[test]
    fn gap_closing_reported_not_invertible() {
        let rep = build_clifford(1).unwrap();
        let r = condition_report(&ssh(1.0, 1.0), &rep, 1.0 / 18.0, 36.0).unwrap();
        assert!(!r.invertible && !r.cond1_ok && !r.cond2_ok);
    }
}
