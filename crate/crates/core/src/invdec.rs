//! Invariant decomposition: a diagonalizable matrix written as a sum of
//! commuting parts, each squaring to a multiple of the identity.
//!
//! With `B = P diag(α) P⁻¹`, part `i` is
//!
//! ```text
//! b_i = ½ (α_i − τ) · P s_i P⁻¹,    s_i = diag(−1, …, +1 (at i), …, −1)
//! ```
//!
//! where `τ = tr B / (n − 2)`. Since `P s_i P⁻¹ = 2 p_i q_iᵀ − 1` (column
//! `p_i` of `P`, row `q_i` of `P⁻¹`), no sign-pattern matrices are ever
//! formed. For `B ∈ su(3)` the squares `λ_i = ¼ α_i²` are real and
//! non-positive.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::smallmat::{eigen_general, eigen_normal3, ComplexMat, EigenSystem};
use crate::tol::Tolerances;

/// Traceless skew-Hermitian 3×3 matrix, an element of su(3).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    mat: ComplexMat,
}

impl AlgebraElement {
    /// Validates `|tr B| <= alg_tol` and `|B + B†| <= alg_tol · max(1, |B|)`.
    pub fn new(mat: ComplexMat, tol: &Tolerances) -> Result<Self> {
        if mat.n() != 3 {
            return Err(Error::InvalidDimension(mat.n(), "3"));
        }
        let tr = mat.trace().norm();
        if tr > tol.alg_tol {
            return Err(Error::NotAlgebraElement(format!("|tr| = {tr:.3e}")));
        }
        let herm = mat.hermitian_part_norm();
        if herm > tol.alg_tol * mat.frobenius_norm().max(1.0) {
            return Err(Error::NotAlgebraElement(format!("|B + B†| = {herm:.3e}")));
        }
        Ok(Self { mat })
    }

    pub fn zero() -> Self {
        Self {
            mat: ComplexMat::zeros(3),
        }
    }

    pub fn mat(&self) -> &ComplexMat {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMat {
        self.mat
    }

    /// Not validated; for use inside the crate on matrices known to be in su(3).
    pub(crate) fn from_trusted(mat: ComplexMat) -> Self {
        Self { mat }
    }
}

/// One part `b` of a decomposition, with `b² = square · 1`.
///
/// For parts of an su(3) element `square` is real and non-positive;
/// `lambda` is its real part, `beta = √(−λ)` and `unit = b / β` (absent
/// when `β < beta_zero_tol`).
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePart {
    mat: ComplexMat,
    square: Complex64,
    lambda: f64,
    beta: f64,
    unit: Option<ComplexMat>,
}

impl SimplePart {
    pub fn new(mat: ComplexMat, square: Complex64, tol: &Tolerances) -> Self {
        let lambda = square.re;
        let beta = if lambda < 0.0 { (-lambda).sqrt() } else { 0.0 };
        let unit = (beta >= tol.beta_zero_tol).then(|| mat.scale_re(1.0 / beta));
        Self {
            mat,
            square,
            lambda,
            beta,
            unit,
        }
    }

    /// `beta · unit`, for a unit direction with `unit² = −1`.
    pub fn from_unit(unit: ComplexMat, beta: f64) -> Self {
        let mat = unit.scale_re(beta);
        Self {
            mat,
            square: Complex64::new(-beta * beta, 0.0),
            lambda: -beta * beta,
            beta,
            unit: Some(unit),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            mat: ComplexMat::zeros(n),
            square: Complex64::new(0.0, 0.0),
            lambda: 0.0,
            beta: 0.0,
            unit: None,
        }
    }

    pub fn mat(&self) -> &ComplexMat {
        &self.mat
    }

    pub fn square(&self) -> Complex64 {
        self.square
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn unit(&self) -> Option<&ComplexMat> {
        self.unit.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_none() && self.square.norm() == 0.0
    }

    /// `|b² − square · 1|_F`.
    pub fn simplicity_residual(&self) -> f64 {
        let n = self.mat.n();
        (&(&self.mat * &self.mat) - &ComplexMat::identity(n).scale(self.square)).frobenius_norm()
    }
}

/// `source = Σ parts`, parts pairwise commuting.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantDecomposition {
    pub parts: Vec<SimplePart>,
    pub source: ComplexMat,
}

impl InvariantDecomposition {
    pub fn sum(&self) -> ComplexMat {
        sum_parts(&self.parts)
    }

    /// `|Σ b_i − B|_F / max(1, |B|_F)`.
    pub fn sum_residual(&self) -> f64 {
        (&self.sum() - &self.source).frobenius_norm() / self.source.frobenius_norm().max(1.0)
    }

    /// Largest `|[b_i, b_j]|_F / max(1, |b_i| |b_j|)` over pairs.
    pub fn max_commutator(&self) -> f64 {
        max_commutator(&self.parts)
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.parts.iter().map(SimplePart::lambda).collect()
    }
}

pub(crate) fn sum_parts(parts: &[SimplePart]) -> ComplexMat {
    let mut acc = ComplexMat::zeros(parts[0].mat.n());
    for p in parts {
        acc += &p.mat;
    }
    acc
}

/// Largest normalized pairwise commutator among `parts`.
pub fn max_commutator(parts: &[SimplePart]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            let c = a.mat.commutator(&b.mat).frobenius_norm();
            let scale = (a.mat.frobenius_norm() * b.mat.frobenius_norm()).max(1.0);
            worst = worst.max(c / scale);
        }
    }
    worst
}

fn is_normal(a: &ComplexMat, tol: &Tolerances) -> bool {
    let adj = a.adjoint();
    (&(a * &adj) - &(&adj * a)).frobenius_norm() <= tol.normal_tol * a.norm_sqr()
}

fn eigen_any(b: &ComplexMat, tol: &Tolerances) -> Result<EigenSystem> {
    if b.n() == 3 && is_normal(b, tol) {
        eigen_normal3(b, tol)
    } else {
        eigen_general(b, tol)
    }
}

/// Parts `½ (α_i − shift)(2 p_i q_iᵀ − 1)` of an eigensystem.
pub(crate) fn parts_from_eigen(es: &EigenSystem, shift: Complex64, tol: &Tolerances) -> Vec<SimplePart> {
    let n = es.values.len();
    (0..n)
        .map(|i| {
            let coef = (es.values[i] - shift) * 0.5;
            let mut m = ComplexMat::from_fn(n, |r, c| es.vectors[(r, i)] * es.inverse_vectors[(i, c)] * (coef * 2.0));
            for d in 0..n {
                m[(d, d)] -= coef;
            }
            SimplePart::new(m, coef * coef, tol)
        })
        .collect()
}

/// Decomposition of a diagonalizable 3×3 matrix through its eigensystem.
///
/// Normal inputs use the closed-form normal solver, anything else the
/// general QR solver. Parts follow the canonical eigenvalue order.
pub fn decompose_via_eigen(b: &ComplexMat, tol: &Tolerances) -> Result<InvariantDecomposition> {
    if b.n() != 3 {
        return Err(Error::InvalidDimension(b.n(), "3"));
    }
    let es = eigen_any(b, tol)?;
    Ok(InvariantDecomposition {
        parts: parts_from_eigen(&es, b.trace(), tol),
        source: b.clone(),
    })
}

/// Decomposition of an su(3) element; see [`decompose_via_eigen`].
pub fn decompose(b: &AlgebraElement, tol: &Tolerances) -> Result<InvariantDecomposition> {
    decompose_via_eigen(&b.mat, tol)
}

/// The n-dimensional generalization (`3 <= n <= 8`): `n` commuting parts
/// with the trace shift `tr B / (n − 2)`. Each part squares to a scalar,
/// complex in general.
pub fn decompose_nxn(b: &ComplexMat, tol: &Tolerances) -> Result<Vec<SimplePart>> {
    let n = b.n();
    if !(3..=8).contains(&n) {
        return Err(Error::InvalidDimension(n, "3 <= n <= 8"));
    }
    let es = eigen_any(b, tol)?;
    let shift = b.trace() / (n as f64 - 2.0);
    Ok(parts_from_eigen(&es, shift, tol))
}

/// The three `λ_i` of an su(3) element as roots of
///
/// ```text
/// −λ³ + ¼ tr(B²) λ² − ¼ (¼ tr(B²))² λ + (det B / 8)² = 0
/// ```
///
/// solved with the trigonometric method. Sorted descending; round-off
/// above zero is clamped.
pub fn lambda_roots(b: &AlgebraElement) -> [f64; 3] {
    let scale = b.mat.frobenius_norm();
    if scale == 0.0 {
        return [0.0; 3];
    }
    let m = b.mat.scale_re(1.0 / scale);
    let t = (&m * &m).trace().re;
    let d8 = m.det() / 8.0;
    let s1 = 0.25 * t;
    let s2 = 0.25 * s1 * s1;
    let s3 = (d8 * d8).re;
    let mut roots = real_cubic_roots(s1, s2, s3);
    for r in roots.iter_mut() {
        *r = (*r * scale * scale).min(0.0);
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

/// Real roots of `λ³ − s1 λ² + s2 λ − s3` assuming all three are real.
fn real_cubic_roots(s1: f64, s2: f64, s3: f64) -> [f64; 3] {
    let shift = s1 / 3.0;
    let p = s2 - s1 * s1 / 3.0;
    let q = -2.0 * s1 * s1 * s1 / 27.0 + s1 * s2 / 3.0 - s3;
    if p >= 0.0 {
        let x = (-q).cbrt();
        return [x + shift; 3];
    }
    let r = (-p / 3.0).sqrt();
    let arg = (3.0 * q / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
    let phi = arg.acos() / 3.0;
    let tau = 2.0 * std::f64::consts::PI / 3.0;
    [0.0, 1.0, 2.0].map(|k| 2.0 * r * (phi - tau * k).cos() + shift)
}

/// Smallest pairwise (and from-zero) separation of `lambdas`, relative to
/// the largest magnitude. Zero when all vanish.
pub fn lambda_separation(lambdas: &[f64; 3]) -> f64 {
    let big = lambdas.iter().map(|l| l.abs()).fold(0.0, f64::max);
    if big == 0.0 {
        return 0.0;
    }
    let mut sep = lambdas.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
    for i in 0..3 {
        for j in i + 1..3 {
            sep = sep.min((lambdas[i] - lambdas[j]).abs());
        }
    }
    sep / big
}

/// Decomposition without diagonalization, valid for distinct nonzero `λ_i`:
///
/// ```text
/// b_i = [B + det(B)/(8 λ_i) · 1] · [1 + (B² − ¼ tr(B²) · 1) / (2 λ_i)]⁻¹
/// ```
///
/// Each part is symmetrized to `½ (b − b†)` to remove inversion drift.
/// Refuses near-degenerate input with [`Error::DegenerateLambdas`]; use
/// [`decompose`] there.
pub fn decompose_closed_form(
    b: &AlgebraElement,
    lambdas: [f64; 3],
    tol: &Tolerances,
) -> Result<InvariantDecomposition> {
    let sep = lambda_separation(&lambdas);
    if sep <= tol.lambda_sep_tol {
        return Err(Error::DegenerateLambdas(sep));
    }
    let m = &b.mat;
    let id = ComplexMat::identity(3);
    let m2 = m * m;
    let det = m.det();
    let centered_sq = &m2 - &id.scale_re(0.25 * m2.trace().re);
    let parts = lambdas
        .iter()
        .map(|&lam| {
            let left = m + &id.scale(det / (8.0 * lam));
            let right = &id + &centered_sq.scale_re(1.0 / (2.0 * lam));
            let bi = &left * &right.inverse(tol)?;
            let skew = (&bi - &bi.adjoint()).scale_re(0.5);
            Ok(SimplePart::new(skew, Complex64::new(lam, 0.0), tol))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantDecomposition {
        parts,
        source: m.clone(),
    })
}

/// Greedy nearest-λ matching: `result[i]` is the index in `to` matched
/// with `from[i]`.
pub fn match_by_lambda(from: &[SimplePart], to: &[SimplePart]) -> Vec<usize> {
    let mut taken = vec![false; to.len()];
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in from.iter().enumerate() {
        for (j, b) in to.iter().enumerate() {
            pairs.push(((a.square - b.square).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = vec![usize::MAX; from.len()];
    for (_, i, j) in pairs {
        if out[i] == usize::MAX && !taken[j] {
            out[i] = j;
            taken[j] = true;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gellmann::{lambda, rho};
    use crate::smallmat::I;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag_example() -> ComplexMat {
        ComplexMat::from_diag(&[c(0.0, 0.3), c(0.0, -0.1), c(0.0, -0.2)])
    }

    fn close(a: &ComplexMat, b: &ComplexMat, eps: f64) -> bool {
        (a - b).frobenius_norm() <= eps
    }

    #[test]
    fn algebra_element_validation() {
        assert!(AlgebraElement::new(diag_example(), &tol()).is_ok());
        assert!(AlgebraElement::new(lambda(1), &tol()).is_err());
        assert!(AlgebraElement::new(ComplexMat::identity(3).scale(I), &tol()).is_err());
        assert!(AlgebraElement::new(ComplexMat::zeros(4), &tol()).is_err());
    }

    #[test]
    fn zero_decomposes_to_zero_parts() {
        let d = decompose(&AlgebraElement::zero(), &tol()).unwrap();
        for p in &d.parts {
            assert_eq!(p.lambda(), 0.0);
            assert!(p.unit().is_none());
            assert_eq!(p.mat().frobenius_norm(), 0.0);
        }
    }

    #[test]
    fn diagonal_example_parts() {
        // hand substitution with P = 1, tr B = 0
        let d = decompose_via_eigen(&diag_example(), &tol()).unwrap();
        let b1 = ComplexMat::from_diag(&[c(0.0, 0.15), c(0.0, -0.15), c(0.0, -0.15)]);
        let b2 = ComplexMat::from_diag(&[c(0.0, 0.05), c(0.0, -0.05), c(0.0, 0.05)]);
        let b3 = ComplexMat::from_diag(&[c(0.0, 0.1), c(0.0, 0.1), c(0.0, -0.1)]);
        assert!(close(d.parts[0].mat(), &b1, 1e-16));
        assert!(close(d.parts[1].mat(), &b2, 1e-16));
        assert!(close(d.parts[2].mat(), &b3, 1e-16));
        let l = d.lambdas();
        for (got, want) in l.iter().zip([-0.0225, -0.0025, -0.01]) {
            assert!((got - want).abs() < 1e-17);
        }
        assert!(close(&d.sum(), &diag_example(), 1e-16));
        for p in &d.parts {
            assert!(p.simplicity_residual() < 1e-17);
        }
    }

    #[test]
    fn lambda1_splits_into_rho_halves() {
        let pi = std::f64::consts::PI;
        let b = lambda(1).scale(c(0.0, pi));
        let d = decompose_via_eigen(&b, &tol()).unwrap();
        let plus = rho(1).scale(c(0.0, pi / 2.0));
        let minus = rho(-1).scale(c(0.0, pi / 2.0));
        assert!(close(d.parts[0].mat(), &minus, 1e-14));
        assert!(d.parts[1].mat().frobenius_norm() < 1e-15);
        assert!(close(d.parts[2].mat(), &plus, 1e-14));
    }

    #[test]
    fn nxn_reduces_to_3x3() {
        let b = diag_example();
        let a = decompose_nxn(&b, &tol()).unwrap();
        let d = decompose_via_eigen(&b, &tol()).unwrap();
        assert_eq!(a, d.parts);
    }

    #[test]
    fn nxn_diag_1234() {
        let b = ComplexMat::from_real_diag(&[1.0, 2.0, 3.0, 4.0]);
        let parts = decompose_nxn(&b, &tol()).unwrap();
        // canonical order is 4, 3, 2, 1; the alpha = 1 part is last
        let b_alpha1 = ComplexMat::from_real_diag(&[2.0, 2.0, 2.0, -2.0]);
        let b_alpha1 = {
            // eigenvalue 1 sits in slot 0 of the input basis
            let mut m = b_alpha1;
            m[(0, 0)] = c(-2.0, 0.0);
            m[(3, 3)] = c(2.0, 0.0);
            m
        };
        assert!(close(parts[3].mat(), &b_alpha1, 1e-13));
        assert!(close(&sum_parts(&parts), &b, 1e-13));
        assert!(max_commutator(&parts) < 1e-14);
    }

    #[test]
    fn nxn_identity_is_degenerate_but_valid() {
        let b = ComplexMat::identity(4);
        let parts = decompose_nxn(&b, &tol()).unwrap();
        assert!(close(&sum_parts(&parts), &b, 1e-13));
        assert!(max_commutator(&parts) < 1e-14);
        assert!(decompose_nxn(&ComplexMat::identity(2), &tol()).is_err());
    }

    #[test]
    fn roots_examples() {
        assert_eq!(lambda_roots(&AlgebraElement::zero()), [0.0; 3]);
        let b = AlgebraElement::new(diag_example(), &tol()).unwrap();
        let r = lambda_roots(&b);
        for (got, want) in r.iter().zip([-0.0025, -0.01, -0.0225]) {
            assert!((got - want).abs() < 1e-15, "{r:?}");
        }
        let b = AlgebraElement::new(lambda(2).scale(I), &tol()).unwrap();
        let r = lambda_roots(&b);
        for (got, want) in r.iter().zip([0.0, -0.25, -0.25]) {
            assert!((got - want).abs() < 1e-8, "{r:?}");
        }
    }

    #[test]
    fn roots_satisfy_the_cubic() {
        let b = AlgebraElement::new(diag_example(), &tol()).unwrap();
        let t = (b.mat() * b.mat()).trace().re;
        let d = b.mat().det();
        for l in lambda_roots(&b) {
            let resid = -l * l * l + 0.25 * t * l * l - 0.25 * (0.25 * t).powi(2) * l + ((d / 8.0) * (d / 8.0)).re;
            assert!(resid.abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_matches_eigen_path_on_diagonal() {
        let b = AlgebraElement::new(diag_example(), &tol()).unwrap();
        let cf = decompose_closed_form(&b, lambda_roots(&b), &tol()).unwrap();
        let ev = decompose(&b, &tol()).unwrap();
        let m = match_by_lambda(&cf.parts, &ev.parts);
        for (i, &j) in m.iter().enumerate() {
            assert!(close(cf.parts[i].mat(), ev.parts[j].mat(), 1e-14));
        }
        let b1 = ComplexMat::from_diag(&[c(0.0, 0.15), c(0.0, -0.15), c(0.0, -0.15)]);
        assert!(close(cf.parts[2].mat(), &b1, 1e-14));
    }

    #[test]
    fn closed_form_refuses_degenerate() {
        let b = AlgebraElement::new(lambda(2).scale(I), &tol()).unwrap();
        assert!(matches!(
            decompose_closed_form(&b, [-0.25, -0.25, 0.0], &tol()),
            Err(Error::DegenerateLambdas(_))
        ));
        let b = AlgebraElement::new(diag_example(), &tol()).unwrap();
        assert!(matches!(
            decompose_closed_form(&b, [-0.0225, -0.01, 0.0], &tol()),
            Err(Error::DegenerateLambdas(_))
        ));
    }

    #[test]
    fn greedy_matching() {
        let t = tol();
        let mk = |l: f64| SimplePart::new(ComplexMat::zeros(3), c(l, 0.0), &t);
        let a = vec![mk(-1.0), mk(-2.0), mk(-3.0)];
        let b = vec![mk(-2.1), mk(-2.9), mk(-0.9)];
        assert_eq!(match_by_lambda(&a, &b), vec![2, 0, 1]);
    }
}
