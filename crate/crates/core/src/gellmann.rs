//! Gell-Mann generators and their ρ completions.
//!
//! For `a = 1..7`, `ρ±a = λa ± Ea` where `Ea` is the diagonal unit that
//! fills the zero row/column of `λa`; `ρ0 = diag(1, 1, −1)`. All fifteen
//! square to the identity and are stored with exact integer entries.
//! Index convention: `rho(±a)` for `a = 1..7`, `rho(0)` for `ρ0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expmap::GroupElement;
use crate::smallmat::{ComplexMat, I, ONE};

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;

/// Gell-Mann matrix `λa`, `a = 1..8`, with `λ8 = diag(1, 1, −2) / √3`.
///
/// # Panics
/// If `a` is outside `1..=8`.
pub fn lambda(a: usize) -> ComplexMat {
    let mut m = ComplexMat::zeros(3);
    let mut sym = |i: usize, j: usize, v: Complex64| {
        m[(i, j)] = v;
        m[(j, i)] = v.conj();
    };
    match a {
        1 => sym(0, 1, ONE),
        2 => sym(0, 1, -I),
        3 => return ComplexMat::from_real_diag(&[1.0, -1.0, 0.0]),
        4 => sym(0, 2, ONE),
        5 => sym(0, 2, -I),
        6 => sym(1, 2, ONE),
        7 => sym(1, 2, -I),
        8 => {
            return ComplexMat::from_real_diag(&[FRAC_1_SQRT_3, FRAC_1_SQRT_3, -2.0 * FRAC_1_SQRT_3]);
        }
        _ => panic!("Gell-Mann index {a} outside 1..=8"),
    }
    m
}

/// Diagonal slot completing `λa`, `a = 1..7`.
fn completion_slot(a: usize) -> usize {
    match a {
        1..=3 => 2,
        4 | 5 => 1,
        _ => 0,
    }
}

/// `ρ_i` for `i ∈ −7..=7`.
///
/// # Panics
/// If `|i| > 7`.
pub fn rho(i: i32) -> ComplexMat {
    if i == 0 {
        return ComplexMat::from_real_diag(&[1.0, 1.0, -1.0]);
    }
    let a = i.unsigned_abs() as usize;
    assert!(a <= 7, "rho index {i} outside -7..=7");
    let mut m = lambda(a);
    let s = completion_slot(a);
    m[(s, s)] += if i > 0 { ONE } else { -ONE };
    m
}

/// All generators, precomputed.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    pub lambdas: [ComplexMat; 8],
    /// `rhos[k]` is `ρ_{k − 7}`.
    pub rhos: [ComplexMat; 15],
}

impl GellMannBasis {
    pub fn new() -> Self {
        Self {
            lambdas: std::array::from_fn(|k| lambda(k + 1)),
            rhos: std::array::from_fn(|k| rho(k as i32 - 7)),
        }
    }

    pub fn lambda(&self, a: usize) -> &ComplexMat {
        &self.lambdas[a - 1]
    }

    pub fn rho(&self, i: i32) -> &ComplexMat {
        &self.rhos[(i + 7) as usize]
    }
}

impl Default for GellMannBasis {
    fn default() -> Self {
        Self::new()
    }
}

fn check_index(a: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&a) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("Gell-Mann index {a} outside 1..={max}")))
    }
}

/// `λa` rebuilt from the ρ matrices.
pub fn reconstruct_lambda(a: usize) -> Result<ComplexMat> {
    check_index(a, 8)?;
    if a <= 7 {
        let ai = a as i32;
        return Ok((&rho(ai) + &rho(-ai)).scale_re(0.5));
    }
    let half = 0.5 * FRAC_1_SQRT_3;
    Ok(&(&rho(-3).scale_re(half) - &rho(3).scale_re(half)) + &rho(0).scale_re(FRAC_1_SQRT_3))
}

/// `exp(iθλa) = (1 − λa²) + λa² cos θ + i λa sin θ` for `a = 1..7`;
/// `a = 8` is forwarded to [`exp_gellmann8`].
pub fn exp_gellmann(a: usize, theta: f64) -> Result<GroupElement> {
    check_index(a, 8)?;
    if a == 8 {
        return Ok(exp_gellmann8(theta));
    }
    let l = lambda(a);
    let l2 = &l * &l;
    let (s, c) = theta.sin_cos();
    let m = &(&equilibrium_point(a)? + &l2.scale_re(c)) + &l.scale(Complex64::new(0.0, s));
    Ok(GroupElement::from_trusted(m))
}

/// `exp(iθλ8) = diag(e^{iθ/√3}, e^{iθ/√3}, e^{−2iθ/√3})`.
pub fn exp_gellmann8(theta: f64) -> GroupElement {
    let p = theta * FRAC_1_SQRT_3;
    let e = Complex64::from_polar(1.0, p);
    GroupElement::from_trusted(ComplexMat::from_diag(&[e, e, Complex64::from_polar(1.0, -2.0 * p)]))
}

/// `1 − λa²`, the fixed point of the cosine part of `exp(iθλa)`.
pub fn equilibrium_point(a: usize) -> Result<ComplexMat> {
    check_index(a, 7)?;
    let l = lambda(a);
    Ok(&ComplexMat::identity(3) - &(&l * &l))
}

/// `i · Σ coeffs[a] λ_{a+1}`, an su(3) element for real coefficients.
pub fn algebra_from_coefficients(coeffs: &[f64; 8]) -> ComplexMat {
    let mut m = ComplexMat::zeros(3);
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            m += &lambda(k + 1).scale(Complex64::new(0.0, c));
        }
    }
    m
}

#[cfg(test)]
fn is_exact_involution(m: &ComplexMat) -> bool {
    let sq = m * m;
    sq.entries()
        .iter()
        .enumerate()
        .all(|(k, &v)| v == if k % 4 == 0 { ONE } else { crate::smallmat::ZERO })
}
