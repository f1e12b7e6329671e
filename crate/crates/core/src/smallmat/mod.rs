//! Dense complex matrices up to 8×8.
//!
//! [`ComplexMat`] is a value type: arithmetic returns new matrices and
//! nothing is shared. Storage is inline for 3×3 and below, so the SU(3)
//! kernels never touch the heap for matrix temporaries.

mod eigen;

pub use eigen::{eigen_general, eigen_normal3, order_eigenvalues, EigenSystem};

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

pub type ComplexScalar = Complex64;

pub const MAX_DIM: usize = 8;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Builds a complex scalar, rejecting NaN and infinities.
pub fn scalar(re: f64, im: f64) -> Result<ComplexScalar> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(Error::NonFinite { row: 0, col: 0 })
    }
}

/// Square complex matrix, `2 <= n <= 8`, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMat {
    n: usize,
    data: SmallVec<[Complex64; 9]>,
}

fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n, "2 <= n <= 8"))
    }
}

impl ComplexMat {
    /// # Panics
    /// If `n` is outside `2..=8`.
    pub fn zeros(n: usize) -> Self {
        assert!((2..=MAX_DIM).contains(&n), "dimension {n} outside 2..=8");
        Self {
            n,
            data: SmallVec::from_elem(ZERO, n * n),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Real diagonal convenience constructor.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Checked constructor from row-major entries.
    pub fn from_row_major(n: usize, entries: &[Complex64]) -> Result<Self> {
        check_dim(n)?;
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        for (k, z) in entries.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: k / n, col: k % n });
            }
        }
        Ok(Self {
            n,
            data: entries.iter().copied().collect(),
        })
    }

    /// Checked constructor from a list of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        let flat: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(n, &flat)
    }

    /// Real-valued rows, mostly for tests and constants.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        for (i, z) in col.iter().enumerate() {
            self[(i, j)] = *z;
        }
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.matmul(other))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Closed form for n = 2, 3; LU with partial pivoting above.
    pub fn det(&self) -> Complex64 {
        let m = |i, j| self[(i, j)];
        match self.n {
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => Lu::factor(self, 0.0).map_or(ZERO, |lu| lu.det()),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn is_scalar(&self, tol: f64) -> bool {
        let s = self.trace() / self.n as f64;
        (self - &Self::identity(self.n).scale(s)).frobenius_norm() <= tol
    }

    /// `|a + a†|_F`, zero for skew-Hermitian matrices.
    pub fn hermitian_part_norm(&self) -> f64 {
        (self + &self.adjoint()).frobenius_norm()
    }

    /// `|a - a†|_F`, zero for Hermitian matrices.
    pub fn skew_part_norm(&self) -> f64 {
        (self - &self.adjoint()).frobenius_norm()
    }

    /// `|a† a - 1|_F`.
    pub fn unitarity_residual(&self) -> f64 {
        (&self.adjoint().matmul(self) - &Self::identity(self.n)).frobenius_norm()
    }

    /// Raw Gauss-Jordan inverse with partial pivoting; `None` only on an
    /// exactly zero pivot.
    pub(crate) fn gauss_jordan(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (piv, pmag) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag == 0.0 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let p = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= p;
                inv[(col, j)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(r, j)] -= f * ac;
                    inv[(r, j)] -= f * ic;
                }
            }
        }
        Some(inv)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    ///
    /// Fails with [`Error::Singular`] when a pivot vanishes, the Frobenius
    /// condition estimate exceeds `inv_cond_max`, or `|a a⁻¹ - 1|` exceeds
    /// `inv_tol`.
    pub fn inverse(&self, tol: &Tolerances) -> Result<Self> {
        let inv = self.gauss_jordan().ok_or(Error::Singular(f64::INFINITY))?;
        let cond = self.frobenius_norm() * inv.frobenius_norm();
        if !cond.is_finite() || cond > tol.inv_cond_max {
            return Err(Error::Singular(cond));
        }
        let resid = (&self.matmul(&inv) - &Self::identity(self.n)).frobenius_norm();
        if resid > tol.inv_tol {
            return Err(Error::Singular(cond));
        }
        Ok(inv)
    }

    /// Householder QR: returns `(Q, R)` with `Q` unitary and `R` upper
    /// triangular, `R[k][k] = -e^{i arg x0}|x|` per column.
    pub fn qr(&self) -> (Self, Self) {
        let n = self.n;
        let mut r = self.clone();
        let mut q = Self::identity(n);
        for k in 0..n.saturating_sub(1) {
            let x: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
            let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if xnorm == 0.0 {
                continue;
            }
            let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
            let alpha = -phase * xnorm;
            let mut v = x;
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            // R <- H R, Q <- Q H with H = 1 - 2 v v† / (v† v)
            for j in 0..n {
                let dot: Complex64 = (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum();
                let f = dot * (2.0 / vnorm2);
                for i in k..n {
                    r[(i, j)] -= v[i - k] * f;
                }
            }
            for i in 0..n {
                let dot: Complex64 = (k..n).map(|j| q[(i, j)] * v[j - k]).sum();
                let f = dot * (2.0 / vnorm2);
                for j in k..n {
                    q[(i, j)] -= f * v[j - k].conj();
                }
            }
        }
        for i in 1..n {
            for j in 0..i {
                r[(i, j)] = ZERO;
            }
        }
        (q, r)
    }
}

/// LU factorization with partial pivoting.
///
/// `pivot_floor` replaces pivots smaller than it, which lets inverse
/// iteration run against exactly singular shifted matrices.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub(crate) fn factor(a: &ComplexMat, pivot_floor: f64) -> Option<Self> {
        let n = a.n;
        let mut lu: Vec<Complex64> = a.data.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, pmag) =
                (k..n)
                    .map(|r| (r, lu[r * n + k].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            if pmag <= pivot_floor {
                if pivot_floor == 0.0 {
                    return None;
                }
                lu[k * n + k] = Complex64::new(pivot_floor, 0.0);
            }
            let piv = lu[k * n + k];
            for r in k + 1..n {
                let f = lu[r * n + k] / piv;
                lu[r * n + k] = f;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[r * n + j] -= f * u;
                }
            }
        }
        Some(Self { n, lu, perm, sign })
    }

    pub(crate) fn det(&self) -> Complex64 {
        (0..self.n).map(|i| self.lu[i * self.n + i]).product::<Complex64>() * self.sign
    }

    pub(crate) fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i * n + j];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

impl Index<(usize, usize)> for ComplexMat {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for ComplexMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMat {}x{} [", self.n, self.n)?;
        for row in self.rows() {
            write!(f, " ")?;
            for z in row {
                write!(f, " {:+.6e}{:+.6e}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Operators panic on dimension mismatch; use the `checked_*` methods
// where the dimensions are not known to agree.
macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&ComplexMat> for &ComplexMat {
            type Output = ComplexMat;
            fn $method(self, rhs: &ComplexMat) -> ComplexMat {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                $body(self, rhs)
            }
        }
        impl $trait<ComplexMat> for ComplexMat {
            type Output = ComplexMat;
            fn $method(self, rhs: ComplexMat) -> ComplexMat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ComplexMat> for ComplexMat {
            type Output = ComplexMat;
            fn $method(self, rhs: &ComplexMat) -> ComplexMat {
                (&self).$method(rhs)
            }
        }
        impl $trait<ComplexMat> for &ComplexMat {
            type Output = ComplexMat;
            fn $method(self, rhs: ComplexMat) -> ComplexMat {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &ComplexMat, b: &ComplexMat| a.zip_with(b, |x, y| x + y));
binop!(Sub, sub, |a: &ComplexMat, b: &ComplexMat| a.zip_with(b, |x, y| x - y));
binop!(Mul, mul, |a: &ComplexMat, b: &ComplexMat| a.matmul(b));

impl Mul<Complex64> for &ComplexMat {
    type Output = ComplexMat;
    fn mul(self, s: Complex64) -> ComplexMat {
        self.scale(s)
    }
}

impl Mul<Complex64> for ComplexMat {
    type Output = ComplexMat;
    fn mul(self, s: Complex64) -> ComplexMat {
        self.scale(s)
    }
}

impl Mul<f64> for &ComplexMat {
    type Output = ComplexMat;
    fn mul(self, s: f64) -> ComplexMat {
        self.scale_re(s)
    }
}

impl Mul<f64> for ComplexMat {
    type Output = ComplexMat;
    fn mul(self, s: f64) -> ComplexMat {
        self.scale_re(s)
    }
}

impl Neg for &ComplexMat {
    type Output = ComplexMat;
    fn neg(self) -> ComplexMat {
        self.map(|z| -z)
    }
}

impl Neg for ComplexMat {
    type Output = ComplexMat;
    fn neg(self) -> ComplexMat {
        -&self
    }
}

impl AddAssign<&ComplexMat> for ComplexMat {
    fn add_assign(&mut self, rhs: &ComplexMat) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMat> for ComplexMat {
    fn sub_assign(&mut self, rhs: &ComplexMat) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
    }
}
