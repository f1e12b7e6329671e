//! Factorization `U = U1 U2 U3` into commuting Euler factors, and the
//! principal and branch logarithms built on it.
//!
//! In the eigenbasis of `U`, with half-angles `θ_i` (`Σθ = 0`), `c_i = cos θ_i`,
//! `s_i = sin θ_i`:
//!
//! ```text
//! g0 + S_i          = c_j c_k (c_i + i s_i Q_i)        simple route
//! 1 + H_k S_j⁻¹     = (c_i + i s_i Q_i) / c_i          inverse route
//! 1 + g6 H_i⁻¹      = (c_i + i s_i Q_i) / c_i          pseudoscalar route
//! ```
//!
//! so every route fixes a factor up to a real scale, removed by the
//! ⅓-weighted normalization. The last factor follows as `U_m = U_i† U_k† U`.

use crate::error::{Error, Result};
use crate::expmap::GroupElement;
use crate::grades::{halves, split_hs, GradeDecomposition};
use crate::invdec::SimplePart;
use crate::smallmat::ComplexMat;
use crate::tol::Tolerances;

/// `sqrt(tr(M M†) / n)`; 1 for every unitary matrix.
pub fn weighted_norm(m: &ComplexMat) -> f64 {
    (m.norm_sqr() / m.n() as f64).sqrt()
}

/// `M / |M|` in the weighted norm.
pub fn normalize(m: &ComplexMat, tol: &Tolerances) -> Result<ComplexMat> {
    let norm = weighted_norm(m);
    if norm.is_nan() || norm <= tol.norm_zero_tol {
        return Err(Error::ZeroMatrix);
    }
    Ok(m.scale_re(1.0 / norm))
}

/// How a factor was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorRoute {
    /// `normalize(g0 + S_i)`.
    Simple,
    /// `normalize(1 + H_k S_j⁻¹)`.
    InverseHS { h: usize, s: usize },
    /// `normalize(1 + g6 H_i⁻¹)`.
    InversePseudoscalar,
    /// `U_i† U_k† U` from the other two factors.
    Derived,
}

impl FactorRoute {
    pub fn describe(&self) -> String {
        match self {
            FactorRoute::Simple => "simple".into(),
            FactorRoute::InverseHS { h, s } => format!("inverse(H{} S{}^-1)", h + 1, s + 1),
            FactorRoute::InversePseudoscalar => "inverse(g6 H^-1)".into(),
            FactorRoute::Derived => "derived".into(),
        }
    }
}

/// `U = factors[0] · factors[1] · factors[2]`, all commuting.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: [ComplexMat; 3],
    /// Principal parts of the factors; `None` where the direction is lost
    /// at `β = π`.
    pub parts: [Option<SimplePart>; 3],
    pub routes: [FactorRoute; 3],
    pub grades: GradeDecomposition,
}

impl Factorization {
    pub fn product(&self) -> ComplexMat {
        &(&self.factors[0] * &self.factors[1]) * &self.factors[2]
    }

    /// Largest `|[U_i, U_j]|_F`.
    pub fn max_commutator(&self) -> f64 {
        let f = &self.factors;
        [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| f[i].commutator(&f[j]).frobenius_norm())
            .fold(0.0, f64::max)
    }

    pub fn used_inverse_route(&self) -> bool {
        self.routes
            .iter()
            .any(|r| matches!(r, FactorRoute::InverseHS { .. } | FactorRoute::InversePseudoscalar))
    }
}

fn others(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

/// Factor `i` through the inverse routes; `None` when all are singular.
fn inverse_route(
    g: &GradeDecomposition,
    i: usize,
    avoid: usize,
    tol: &Tolerances,
) -> Option<(ComplexMat, FactorRoute)> {
    let id = ComplexMat::identity(3);
    let (a, b) = others(i);
    let k = if avoid == a { b } else { a };
    // S_avoid ∝ c_i c_k stays invertible when only c_avoid vanishes
    for (h, s) in [(k, avoid), (avoid, k)] {
        if weighted_norm(&g.s[s]) > tol.g0_zero_tol {
            if let Ok(inv) = g.s[s].inverse(tol) {
                if let Ok(f) = normalize(&(&id + &(&g.h[h] * &inv)), tol) {
                    return Some((f, FactorRoute::InverseHS { h, s }));
                }
            }
        }
    }
    if weighted_norm(&g.h[i]) > tol.g0_zero_tol {
        if let Ok(inv) = g.h[i].inverse(tol) {
            if let Ok(f) = normalize(&(&id + &(&g.g6 * &inv)), tol) {
                return Some((f, FactorRoute::InversePseudoscalar));
            }
        }
    }
    None
}

/// Factorization into three commuting Euler factors.
///
/// With `|g0| > g0_zero_tol`, two factors come from the simple route and
/// the one with the smallest weight `|g0 + S_i|` is derived. Otherwise the factor whose cosine vanishes is
/// derived from the other two, which use the inverse routes. Each computed
/// factor keeps the sign normalization gives it; the derived factor absorbs
/// the net sign, so the product is always `U`.
pub fn factorize(u: &GroupElement, tol: &Tolerances) -> Result<Factorization> {
    let g = split_hs(u, tol)?;
    let g0 = g.scalar0().norm();
    let mut factors: [Option<ComplexMat>; 3] = [None, None, None];
    let mut routes = [FactorRoute::Derived; 3];
    // |g0 + S_i| = |c_j c_k|; the simple route loses eps / |c_j c_k| relative accuracy
    let weights: Vec<f64> = g.s.iter().map(|s| weighted_norm(&(&g.g0 + s))).collect();
    let derived;
    if g0 > tol.g0_zero_tol {
        let m = (0..3).fold(0, |best, i| if weights[i] < weights[best] { i } else { best });
        for i in (0..3).filter(|&i| i != m) {
            factors[i] = Some(normalize(&(&g.g0 + &g.s[i]), tol)?);
            routes[i] = FactorRoute::Simple;
        }
        derived = m;
    } else {
        let m = (0..3).fold(0, |best, i| if weights[i] > weights[best] { i } else { best });
        if weights[m] <= tol.g0_zero_tol {
            return Err(Error::FactorizationFailed(format!(
                "g0 = {g0:.3e} and every |g0 + S_i| <= {:.3e}; two cosines vanish and the eigenbasis is degenerate",
                weights[m]
            )));
        }
        for i in (0..3).filter(|&i| i != m) {
            let (f, r) = inverse_route(&g, i, m, tol).ok_or_else(|| {
                Error::FactorizationFailed(format!(
                    "g0 = {g0:.3e}; S and H constituents for factor {} are singular",
                    i + 1
                ))
            })?;
            factors[i] = Some(f);
            routes[i] = r;
        }
        derived = m;
    }
    let (a, b) = others(derived);
    let rest = &(&factors[a].as_ref().unwrap().adjoint() * &factors[b].as_ref().unwrap().adjoint()) * u.mat();
    factors[derived] = Some(rest);
    let factors = factors.map(Option::unwrap);
    check_factors(&factors, u, tol)?;
    let parts = std::array::from_fn(|i| log_factor_along(&factors[i], &g.patterns[i], i + 1, tol).ok());
    Ok(Factorization {
        factors,
        parts,
        routes,
        grades: g,
    })
}

fn check_factors(factors: &[ComplexMat; 3], u: &GroupElement, tol: &Tolerances) -> Result<()> {
    for (i, f) in factors.iter().enumerate() {
        let (ccos, _) = halves(f);
        let off = (&ccos - &ComplexMat::identity(3).scale(ccos.trace() / 3.0)).frobenius_norm();
        let unit = f.unitarity_residual();
        if off > tol.fact_tol || unit > tol.fact_tol {
            return Err(Error::FactorizationFailed(format!(
                "factor {} is not an Euler factor (scalar residual {off:.3e}, unitarity {unit:.3e})",
                i + 1
            )));
        }
    }
    let prod = &(&factors[0] * &factors[1]) * &factors[2];
    let resid = (&prod - u.mat()).frobenius_norm();
    if resid > tol.fact_tol {
        return Err(Error::FactorizationFailed(format!("product residual {resid:.3e}")));
    }
    Ok(())
}

fn log_factor(ui: &ComplexMat, index: usize, tol: &Tolerances) -> Result<SimplePart> {
    let (ccos, ssin) = halves(ui);
    let x = ccos.trace().re / 3.0;
    let off = (&ccos - &ComplexMat::identity(ui.n()).scale_re(x)).frobenius_norm();
    if off > tol.fact_tol {
        return Err(Error::NotSimpleFactor(format!(
            "cosine part deviates from scalar by {off:.3e}"
        )));
    }
    if x.abs() > 1.0 + tol.acos_overshoot_tol {
        return Err(Error::NotSimpleFactor(format!("(1/3) Re tr = {x} outside [-1, 1]")));
    }
    let sin = weighted_norm(&ssin);
    if sin > tol.sin_zero_tol {
        let unit = normalize(&ssin, tol)?;
        // on ssin rather than b̂: the direction of a small sine carries eps / sin error
        let sq = (&(&ssin * &ssin) + &ComplexMat::identity(ui.n()).scale_re(sin * sin)).frobenius_norm();
        if sq > tol.fact_tol {
            return Err(Error::NotSimpleFactor(format!("|ssin² + sin²β 1| = {sq:.3e}")));
        }
        // equal to arccos(x) on the unit circle
        return Ok(SimplePart::from_unit(unit, sin.atan2(x.clamp(-1.0, 1.0))));
    }
    if x > 0.0 {
        Ok(SimplePart::zero(ui.n()))
    } else {
        Err(Error::AmbiguousDirection(index))
    }
}

/// Log of a factor known to be `c + i s Q` for the involution `Q`: the
/// direction is `±iQ`, exact at every angle, and only the sign and `β` are
/// read off the factor.
fn log_factor_along(ui: &ComplexMat, pattern: &ComplexMat, index: usize, tol: &Tolerances) -> Result<SimplePart> {
    let (ccos, ssin) = halves(ui);
    let n = ui.n();
    let x = ccos.trace().re / 3.0;
    let off = (&ccos - &ComplexMat::identity(n).scale_re(x)).frobenius_norm();
    if off > tol.fact_tol {
        return Err(Error::NotSimpleFactor(format!(
            "cosine part deviates from scalar by {off:.3e}"
        )));
    }
    if x.abs() > 1.0 + tol.acos_overshoot_tol {
        return Err(Error::NotSimpleFactor(format!("(1/3) Re tr = {x} outside [-1, 1]")));
    }
    let iq = pattern.scale(crate::smallmat::I);
    // <ssin, iQ> / n with |iQ|² = n
    let y = (&ssin * &iq.adjoint()).trace().re / n as f64;
    let stray = (&ssin - &iq.scale_re(y)).frobenius_norm();
    if stray > tol.fact_tol {
        return Err(Error::NotSimpleFactor(format!(
            "sine part leaves its pattern by {stray:.3e}"
        )));
    }
    let sin = y.abs();
    if sin <= tol.sin_zero_tol && x < 0.0 {
        return Err(Error::AmbiguousDirection(index));
    }
    let beta = sin.atan2(x.clamp(-1.0, 1.0));
    if beta < tol.beta_zero_tol {
        return Ok(SimplePart::zero(n));
    }
    Ok(SimplePart::from_unit(iq.scale_re(y.signum()), beta))
}

/// `Ln U_i = β b̂` with `β ∈ [0, π]` and `b̂ = normalize(ssin U_i)`.
///
/// `U_i = 1` gives the zero part; `U_i = −1` has no recoverable direction
/// and fails with [`Error::AmbiguousDirection`] (index 0).
pub fn principal_log_factor(ui: &ComplexMat, tol: &Tolerances) -> Result<SimplePart> {
    log_factor(ui, 0, tol)
}

/// Principal logarithm `Σ Ln U_i` with its factorization.
///
/// The result is skew-Hermitian; its trace is a multiple of `2πi`, zero
/// whenever the factors' angles stay in the principal range.
pub fn principal_log_with(u: &GroupElement, tol: &Tolerances) -> Result<(ComplexMat, Factorization)> {
    let f = factorize(u, tol)?;
    let mut acc = ComplexMat::zeros(3);
    for (i, fi) in f.factors.iter().enumerate() {
        acc += log_factor_along(fi, &f.grades.patterns[i], i + 1, tol)?.mat();
    }
    Ok((acc, f))
}

pub fn principal_log(u: &GroupElement, tol: &Tolerances) -> Result<ComplexMat> {
    principal_log_with(u, tol).map(|(l, _)| l)
}

/// Branch indices `k_i` of `ln U = Σ Ln U_i + 2π k_i b̂_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LogBranch {
    pub k: [i64; 3],
}

impl LogBranch {
    pub const PRINCIPAL: LogBranch = LogBranch { k: [0; 3] };

    pub fn new(k: [i64; 3]) -> Self {
        Self { k }
    }
}

/// `Σ Ln U_i + 2π k_i b̂_i`.
pub fn branch_log(u: &GroupElement, branch: LogBranch, tol: &Tolerances) -> Result<ComplexMat> {
    branch_log_with_units(u, branch, &[None, None, None], tol)
}

/// As [`branch_log`], taking `fallback[i]` as `b̂_i` where factor `i` has
/// no direction of its own (`U_i = 1`). The fallback must commute with `U`.
pub fn branch_log_with_units(
    u: &GroupElement,
    branch: LogBranch,
    fallback: &[Option<ComplexMat>; 3],
    tol: &Tolerances,
) -> Result<ComplexMat> {
    let (mut acc, f) = principal_log_with(u, tol)?;
    for (i, (&k, fb)) in branch.k.iter().zip(fallback).enumerate() {
        if k == 0 {
            continue;
        }
        let unit = f.parts[i]
            .as_ref()
            .and_then(|p| p.unit())
            .or(fb.as_ref())
            .ok_or(Error::MissingDirection(i + 1))?;
        acc += &unit.scale_re(2.0 * std::f64::consts::PI * k as f64);
    }
    Ok(acc)
}
