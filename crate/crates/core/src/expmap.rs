//! Exponential of su(3) elements as a product of commuting Euler factors
//! `e^{b_i} = cos(β_i) 1 + sin(β_i) b̂_i`.

use crate::error::{Error, Result};
use crate::invdec::{decompose, max_commutator, AlgebraElement, InvariantDecomposition, SimplePart};
use crate::smallmat::ComplexMat;
use crate::tol::Tolerances;

/// Special unitary 3×3 matrix, an element of SU(3).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    mat: ComplexMat,
}

impl GroupElement {
    /// Validates `|U†U − 1|_F <= grp_tol` and `|det U − 1| <= grp_tol`.
    pub fn new(mat: ComplexMat, tol: &Tolerances) -> Result<Self> {
        if mat.n() != 3 {
            return Err(Error::InvalidDimension(mat.n(), "3"));
        }
        let unit = mat.unitarity_residual();
        if unit > tol.grp_tol {
            return Err(Error::NotGroupElement(format!("|U†U − 1| = {unit:.3e}")));
        }
        let det = (mat.det() - 1.0).norm();
        if det > tol.grp_tol {
            return Err(Error::NotGroupElement(format!("|det U − 1| = {det:.3e}")));
        }
        Ok(Self { mat })
    }

    pub fn identity() -> Self {
        Self {
            mat: ComplexMat::identity(3),
        }
    }

    pub fn mat(&self) -> &ComplexMat {
        &self.mat
    }

    pub fn into_mat(self) -> ComplexMat {
        self.mat
    }

    /// Not validated; for matrices special unitary by construction.
    pub(crate) fn from_trusted(mat: ComplexMat) -> Self {
        Self { mat }
    }
}

/// `e^{b}` for one simple part. Unitary, but its determinant is only a
/// unit-modulus phase.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactor {
    pub part: SimplePart,
    pub mat: ComplexMat,
}

fn euler(unit: Option<&ComplexMat>, beta: f64, n: usize) -> ComplexMat {
    let id = ComplexMat::identity(n);
    match unit {
        Some(u) => {
            let (s, c) = beta.sin_cos();
            &id.scale_re(c) + &u.scale_re(s)
        }
        None => id,
    }
}

/// `cos(β) 1 + sin(β) b̂`, or `1` for a zero part.
pub fn exp_simple(b: &SimplePart) -> EulerFactor {
    EulerFactor {
        part: b.clone(),
        mat: euler(b.unit(), b.beta(), b.mat().n()),
    }
}

/// Product of the Euler factors of `d`, in part order; zero parts skipped.
pub fn exp_decomposition(d: &InvariantDecomposition) -> ComplexMat {
    let mut acc = ComplexMat::identity(d.source.n());
    for p in d.parts.iter().filter(|p| p.unit().is_some()) {
        acc = &acc * &exp_simple(p).mat;
    }
    acc
}

/// `exp(B)` through the invariant decomposition.
pub fn exp_su3(b: &AlgebraElement, tol: &Tolerances) -> Result<GroupElement> {
    let d = decompose(b, tol)?;
    Ok(GroupElement::from_trusted(exp_decomposition(&d)))
}

fn check_commuting(parts: &[SimplePart], tol: &Tolerances) -> Result<()> {
    let c = max_commutator(parts);
    if c > tol.decomp_tol {
        return Err(Error::NonCommutingParts(c));
    }
    Ok(())
}

/// `U(θ) = e^{θ1 b1} e^{θ2 b2} e^{θ3 b3}`; conjugation by it fixes every `b_i`.
pub fn family_element(parts: &[SimplePart], thetas: &[f64], tol: &Tolerances) -> Result<ComplexMat> {
    if parts.len() != thetas.len() || parts.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} parts but {} angles",
            parts.len(),
            thetas.len()
        )));
    }
    check_commuting(parts, tol)?;
    let n = parts[0].mat().n();
    let mut acc = ComplexMat::identity(n);
    for (p, &t) in parts.iter().zip(thetas) {
        if t != 0.0 {
            acc = &acc * &euler(p.unit(), t * p.beta(), n);
        }
    }
    Ok(acc)
}

/// `Σ A_i b_i`. Traceless only for tuned coefficients.
pub fn invariant_combination(parts: &[SimplePart], coeffs: &[f64]) -> Result<ComplexMat> {
    if parts.len() != coeffs.len() || parts.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} parts but {} coefficients",
            parts.len(),
            coeffs.len()
        )));
    }
    let mut acc = ComplexMat::zeros(parts[0].mat().n());
    for (p, &a) in parts.iter().zip(coeffs) {
        acc += &p.mat().scale_re(a);
    }
    Ok(acc)
}
