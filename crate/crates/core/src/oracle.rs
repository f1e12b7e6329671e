//! Reference matrix functions and seeded random sampling.
//!
//! Nothing here goes through the invariant decomposition: the exponential
//! is a scaled Taylor series, the logarithm a plain eigendecomposition.
//! The generator is ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`, so sample streams are portable across
//! platforms.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::expmap::GroupElement;
use crate::gellmann::algebra_from_coefficients;
use crate::invdec::AlgebraElement;
use crate::smallmat::{eigen_general, eigen_normal3, ComplexMat};
use crate::tol::Tolerances;

const TAYLOR_ORDER: usize = 18;

/// Seed of a sample stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSeed(pub u64);

/// Deterministic sample stream.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: RngSeed) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed.0),
        }
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    pub fn uniform(&mut self) -> f64 {
        rand::Rng::random::<f64>(&mut self.rng)
    }

    /// `i · scale · Σ c_a λ_a`, `c_a` standard normal.
    pub fn algebra(&mut self, scale: f64) -> AlgebraElement {
        let coeffs: [f64; 8] = std::array::from_fn(|_| scale * self.normal());
        AlgebraElement::from_trusted(algebra_from_coefficients(&coeffs))
    }

    /// Complex Ginibre matrix with `E|z|² = 1` per entry.
    pub fn ginibre(&mut self, n: usize) -> ComplexMat {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMat::from_fn(n, |_, _| Complex64::new(s * self.normal(), s * self.normal()))
    }

    /// Haar-distributed U(n) element via phase-corrected QR.
    pub fn unitary(&mut self, n: usize) -> ComplexMat {
        let (q, r) = self.ginibre(n).qr();
        let phases: Vec<Complex64> = r
            .diagonal()
            .iter()
            .map(|&d| {
                if d.norm() > 0.0 {
                    d / d.norm()
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
            .collect();
        &q * &ComplexMat::from_diag(&phases)
    }

    /// Haar-distributed SU(3) element: U(3) sample divided by a cube root
    /// of its determinant.
    pub fn group(&mut self) -> GroupElement {
        let u = self.unitary(3);
        let root = Complex64::from_polar(1.0, -u.det().arg() / 3.0);
        GroupElement::from_trusted(u.scale(root))
    }
}

/// `random_algebra(seed, scale)`: first algebra sample of the stream.
pub fn random_algebra(seed: RngSeed, scale: f64) -> Result<AlgebraElement> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
    }
    Ok(Sampler::new(seed).algebra(scale))
}

/// First group sample of the stream.
pub fn random_group(seed: RngSeed) -> GroupElement {
    Sampler::new(seed).group()
}

/// Scaling and squaring with a degree-18 Taylor polynomial, `|B/2^s|_F <= ½`.
pub fn exp_reference(b: &ComplexMat) -> ComplexMat {
    let n = b.n();
    let norm = b.frobenius_norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let a = b.scale_re(0.5f64.powi(s));
    let id = ComplexMat::identity(n);
    let mut acc = id.clone();
    for k in (1..=TAYLOR_ORDER).rev() {
        acc = &id + &(&a * &acc).scale_re(1.0 / k as f64);
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

/// Principal logarithm of a unitary matrix: eigenphases in `(−π, π]`.
pub fn log_reference(u: &ComplexMat, tol: &Tolerances) -> Result<ComplexMat> {
    let resid = u.unitarity_residual();
    if resid > tol.grp_tol {
        return Err(Error::NotUnitary(resid));
    }
    let es = if u.n() == 3 {
        eigen_normal3(u, tol)?
    } else {
        eigen_general(u, tol)?
    };
    let n = u.n();
    let logs: Vec<Complex64> = es.values.iter().map(|z| Complex64::new(0.0, z.arg())).collect();
    let l = ComplexMat::from_fn(n, |r, c| {
        (0..n)
            .map(|k| es.vectors[(r, k)] * logs[k] * es.inverse_vectors[(k, c)])
            .sum()
    });
    Ok((&l - &l.adjoint()).scale_re(0.5))
}

/// `|a − b|_F / max(1, |b|_F)`.
pub fn compare(a: &ComplexMat, b: &ComplexMat) -> Result<f64> {
    let diff = a.checked_sub(b)?;
    Ok(diff.frobenius_norm() / b.frobenius_norm().max(1.0))
}
