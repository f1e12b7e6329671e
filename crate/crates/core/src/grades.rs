//! Grade projections of a group element and their Hermitian and
//! skew-Hermitian constituents.
//!
//! With `U = e^{b1} e^{b2} e^{b3}`, `ccos(b_i) = cos β_i 1` and
//! `ssin(b_i) = sin β_i b̂_i`:
//!
//! ```text
//! ⟨U⟩₀ = ¼ (1 + tr ccos U) 1       = Π ccos(b_i)
//! ⟨U⟩₂ = ssin U − ⟨U⟩₆             = Σ ssin(b_i) Π_{j≠i} ccos(b_j)
//! ⟨U⟩₄ = ccos U − ⟨U⟩₀             = Σ ccos(b_i) Π_{j≠i} ssin(b_j)
//! ⟨U⟩₆ = ¼ tr(ssin U) 1            = Π ssin(b_i)
//! ```
//!
//! The summands of ⟨U⟩₂ are the skew-Hermitian `S_i`, those of ⟨U⟩₄ the
//! Hermitian `H_i`.

use num_complex::Complex64;

use crate::error::Result;
use crate::expmap::GroupElement;
use crate::invdec::SimplePart;
use crate::smallmat::{eigen_normal3, ComplexMat, EigenSystem};
use crate::tol::Tolerances;

/// All grades of `U` plus the constituent split.
#[derive(Debug, Clone)]
pub struct GradeDecomposition {
    pub g0: ComplexMat,
    pub g2: ComplexMat,
    pub g4: ComplexMat,
    pub g6: ComplexMat,
    pub ccos: ComplexMat,
    pub ssin: ComplexMat,
    /// Hermitian constituents, summing to `g4`.
    pub h: [ComplexMat; 3],
    /// Skew-Hermitian constituents, summing to `g2`.
    pub s: [ComplexMat; 3],
    /// `2 p_j p_j† − 1` in the eigenbasis of `U`; `h[j]` and `s[j]` are
    /// multiples of `patterns[j]`.
    pub patterns: [ComplexMat; 3],
    /// Eigensystem of `U` the split was computed in.
    pub eigen: EigenSystem,
}

impl GradeDecomposition {
    /// The scalar in `g0 = x · 1`.
    pub fn scalar0(&self) -> Complex64 {
        self.g0.trace() / 3.0
    }

    /// The scalar in `g6 = x · 1`, purely imaginary.
    pub fn scalar6(&self) -> Complex64 {
        self.g6.trace() / 3.0
    }

    /// `|g0 + g2 + g4 + g6 − U|_F`.
    pub fn reconstruction_residual(&self, u: &ComplexMat) -> f64 {
        (&(&(&(&self.g0 + &self.g2) + &self.g4) + &self.g6) - u).frobenius_norm()
    }
}

/// Hermitian and skew-Hermitian halves `½(U ± U†)`.
pub fn ccos_ssin(u: &GroupElement) -> (ComplexMat, ComplexMat) {
    halves(u.mat())
}

pub(crate) fn halves(u: &ComplexMat) -> (ComplexMat, ComplexMat) {
    let adj = u.adjoint();
    ((u + &adj).scale_re(0.5), (u - &adj).scale_re(0.5))
}

fn g0_of(ccos: &ComplexMat) -> ComplexMat {
    ComplexMat::identity(3).scale((ccos.trace() + 1.0) * 0.25)
}

fn g6_of(ssin: &ComplexMat) -> ComplexMat {
    ComplexMat::identity(3).scale(ssin.trace() * 0.25)
}

pub fn grade0(u: &GroupElement) -> ComplexMat {
    g0_of(&ccos_ssin(u).0)
}

pub fn grade2(u: &GroupElement) -> ComplexMat {
    let ssin = ccos_ssin(u).1;
    &ssin - &g6_of(&ssin)
}

pub fn grade4(u: &GroupElement) -> ComplexMat {
    let ccos = ccos_ssin(u).0;
    &ccos - &g0_of(&ccos)
}

pub fn grade6(u: &GroupElement) -> ComplexMat {
    g6_of(&ccos_ssin(u).1)
}

/// Grades plus the `H_i` / `S_i` split.
///
/// `A = g2 + g4` shares the unitary eigenbasis of `U`; its eigenvalue on
/// `p_j` is `a_j = p_j† A p_j` and the invariant decomposition gives
/// constituents `μ_j (2 p_j p_j† − 1)` with `μ_j = ½(a_j − tr A)`.
/// `Re μ_j` yields `H_j`, `i Im μ_j` yields `S_j`.
pub fn split_hs(u: &GroupElement, tol: &Tolerances) -> Result<GradeDecomposition> {
    let (ccos, ssin) = ccos_ssin(u);
    let g0 = g0_of(&ccos);
    let g6 = g6_of(&ssin);
    let g2 = &ssin - &g6;
    let g4 = &ccos - &g0;
    let a = &g2 + &g4;
    let eigen = eigen_normal3(u.mat(), tol)?;
    let p = &eigen.vectors;
    let tr_a = a.trace();
    let patterns: [ComplexMat; 3] = std::array::from_fn(|j| {
        let mut q = ComplexMat::from_fn(3, |r, c| p[(r, j)] * p[(c, j)].conj() * 2.0);
        for d in 0..3 {
            q[(d, d)] -= 1.0;
        }
        q
    });
    let mu: [Complex64; 3] = std::array::from_fn(|j| {
        let col = p.column(j);
        let mut aj = Complex64::new(0.0, 0.0);
        for r in 0..3 {
            for c in 0..3 {
                aj += col[r].conj() * a[(r, c)] * col[c];
            }
        }
        (aj - tr_a) * 0.5
    });
    let h = std::array::from_fn(|j| patterns[j].scale_re(mu[j].re));
    let s = std::array::from_fn(|j| patterns[j].scale(Complex64::new(0.0, mu[j].im)));
    Ok(GradeDecomposition {
        g0,
        g2,
        g4,
        g6,
        ccos,
        ssin,
        h,
        s,
        patterns,
        eigen,
    })
}

/// `M − ⅓ tr(M) 1`.
pub fn traceless_projection(m: &ComplexMat) -> ComplexMat {
    let n = m.n();
    m - &ComplexMat::identity(n).scale(m.trace() / n as f64)
}

/// Grades `[g0, g2, g4, g6]` assembled from the product forms over three
/// commuting simple parts.
pub fn grades_from_parts(parts: &[SimplePart]) -> [ComplexMat; 4] {
    let n = parts[0].mat().n();
    let id = ComplexMat::identity(n);
    let c: Vec<ComplexMat> = parts.iter().map(|p| id.scale_re(p.beta().cos())).collect();
    let s: Vec<ComplexMat> = parts
        .iter()
        .map(|p| match p.unit() {
            Some(u) => u.scale_re(p.beta().sin()),
            None => ComplexMat::zeros(n),
        })
        .collect();
    let prod =
        |f: &dyn Fn(usize) -> bool| (0..parts.len()).fold(id.clone(), |acc, k| &acc * if f(k) { &s[k] } else { &c[k] });
    let mut g2 = ComplexMat::zeros(n);
    let mut g4 = ComplexMat::zeros(n);
    for i in 0..parts.len() {
        g2 += &prod(&|k| k == i);
        g4 += &prod(&|k| k != i);
    }
    [prod(&|_| false), g2, g4, prod(&|_| true)]
}
