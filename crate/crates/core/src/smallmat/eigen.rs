//! Eigendecompositions: a closed-form path for normal 3×3 matrices and a
//! Hessenberg QR path for general matrices up to 8×8.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::{ComplexMat, Lu, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// `input = vectors · diag(values) · inverse_vectors`.
///
/// Values are ordered by imaginary part descending, then real part
/// descending, then modulus descending. Columns of `vectors` have unit
/// norm and their largest-modulus entry is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<Complex64>,
    pub vectors: ComplexMat,
    pub inverse_vectors: ComplexMat,
}

impl EigenSystem {
    pub fn reconstruct(&self) -> ComplexMat {
        let d = ComplexMat::from_diag(&self.values);
        &(&self.vectors * &d) * &self.inverse_vectors
    }

    /// `|P D P⁻¹ - a|_F`.
    pub fn residual(&self, a: &ComplexMat) -> f64 {
        (&self.reconstruct() - a).frobenius_norm()
    }
}

fn compare_values(a: Complex64, b: Complex64, tie: f64) -> Ordering {
    if (a.im - b.im).abs() > tie {
        b.im.total_cmp(&a.im)
    } else if (a.re - b.re).abs() > tie {
        b.re.total_cmp(&a.re)
    } else {
        b.norm().total_cmp(&a.norm())
    }
}

/// Permutation that puts `values` into canonical order.
///
/// Components closer than `eig_tol · max|v|` count as ties and fall
/// through to the next key. Insertion sort: the tolerant comparison is not
/// a total order, and `n <= 8`.
pub fn order_eigenvalues(values: &[Complex64], tol: &Tolerances) -> Vec<usize> {
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tie = tol.eig_tol * scale;
    let mut idx: Vec<usize> = (0..values.len()).collect();
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && compare_values(values[idx[j - 1]], values[idx[j]], tie) == Ordering::Greater {
            idx.swap(j - 1, j);
            j -= 1;
        }
    }
    idx
}

fn vnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize_vec(v: &mut [Complex64]) -> f64 {
    let n = vnorm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    n
}

/// Rotates `v` so its largest-modulus entry is real positive. Entries
/// within a relative 1e-12 of the maximum tie, and the first one wins.
fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-12)).unwrap();
    let phase = v[pivot].conj() / v[pivot].norm();
    v.iter_mut().for_each(|z| *z *= phase);
}

/// Hermitian inner product `<u, v> = Σ conj(u_k) v_k`.
fn hdot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Bilinear cross product; `r_i × r_j` is annihilated by rows `i` and `j`.
fn cross(a: &[Complex64], b: &[Complex64]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Null vector of a rank-deficient 3×3 matrix via the largest of the
/// three row cross products. `None` when every cross product vanishes.
fn null_vector3(m: &ComplexMat) -> Option<[Complex64; 3]> {
    let scale = m.max_abs();
    if scale == 0.0 {
        return None;
    }
    let m = m.scale_re(1.0 / scale);
    let r: Vec<&[Complex64]> = m.rows().collect();
    let candidates = [cross(r[0], r[1]), cross(r[0], r[2]), cross(r[1], r[2])];
    let best = candidates
        .iter()
        .max_by(|a, b| vnorm(*a).total_cmp(&vnorm(*b)))
        .copied()
        .unwrap();
    let mut v = best;
    if normalize_vec(&mut v) > 0.0 && v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(v)
    } else {
        None
    }
}

/// Roots of `y³ + p y + q` by Cardano's formula, choosing the cube
/// root branch with the larger modulus to avoid cancellation.
fn depressed_cubic_roots(p: Complex64, q: Complex64) -> [Complex64; 3] {
    let half_q = q * 0.5;
    let disc = (half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0)).sqrt();
    let w1 = -half_q + disc;
    let w2 = -half_q - disc;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    if w.norm() == 0.0 {
        return [ZERO; 3];
    }
    let u = w.cbrt();
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [ZERO; 3];
    let mut uk = u;
    for root in roots.iter_mut() {
        *root = uk - p / (uk * 3.0);
        uk *= omega;
    }
    roots
}

/// Eigenvalue estimates of a 3×3 matrix from its characteristic cubic.
fn cubic_eigenvalues(a: &ComplexMat) -> [Complex64; 3] {
    let shift = a.trace() / 3.0;
    let centered = a - &ComplexMat::identity(3).scale(shift);
    let s = centered.frobenius_norm();
    if s == 0.0 {
        return [shift; 3];
    }
    let c = centered.scale_re(1.0 / s);
    let p = -(&c * &c).trace() * 0.5;
    let q = -c.det();
    depressed_cubic_roots(p, q).map(|y| y * s + shift)
}

/// Eigen pairs of a normal 2×2 matrix `[[a, b], [c, d]]`, with
/// orthonormal eigenvectors.
fn eigen_normal2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [(Complex64, [Complex64; 2]); 2] {
    let half_tr = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mu = half_tr + disc;
    let cand1 = [b, mu - a];
    let cand2 = [mu - d, c];
    let mut y = if vnorm(&cand1) >= vnorm(&cand2) { cand1 } else { cand2 };
    if normalize_vec(&mut y) == 0.0 {
        y = [ONE, ZERO];
    }
    let z = [-y[1].conj(), y[0].conj()];
    let rq = |v: &[Complex64; 2]| v[0].conj() * (a * v[0] + b * v[1]) + v[1].conj() * (c * v[0] + d * v[1]);
    [(rq(&y), y), (rq(&z), z)]
}

/// Eigendecomposition of a normal 3×3 matrix.
///
/// Eigenvalue estimates come from the characteristic cubic (Cardano).
/// The eigenvector of the most isolated estimate is a row cross product
/// of the shifted matrix; the remaining two are found by diagonalizing the
/// 2×2 compression onto its orthogonal complement, which keeps the basis
/// unitary and well defined under degeneracy. Final eigenvalues are the
/// Rayleigh quotients of the resulting unitary basis.
pub fn eigen_normal3(a: &ComplexMat, tol: &Tolerances) -> Result<EigenSystem> {
    if a.n() != 3 {
        return Err(Error::InvalidDimension(a.n(), "3"));
    }
    let norm2 = a.norm_sqr();
    let adj = a.adjoint();
    let comm = (&(a * &adj) - &(&adj * a)).frobenius_norm();
    if comm > tol.normal_tol * norm2 {
        return Err(Error::NotNormal(comm / norm2.max(f64::MIN_POSITIVE)));
    }

    let est = cubic_eigenvalues(a);
    let isolation = |i: usize| {
        (0..3)
            .filter(|&j| j != i)
            .map(|j| (est[i] - est[j]).norm())
            .fold(f64::INFINITY, f64::min)
    };
    let iso = (0..3).max_by(|&i, &j| isolation(i).total_cmp(&isolation(j))).unwrap();

    let id = ComplexMat::identity(3);
    let mut v1 = null_vector3(&(a - &id.scale(est[iso]))).unwrap_or([ONE, ZERO, ZERO]);
    // one refinement with the Rayleigh quotient of the first estimate
    let av1 = mat_vec(a, &v1);
    let mu1 = hdot(&v1, &av1);
    if let Some(v) = null_vector3(&(a - &id.scale(mu1))) {
        v1 = v;
    }

    // orthonormal basis (w2, w3) of the complement of v1
    let k = (0..3).min_by(|&i, &j| v1[i].norm().total_cmp(&v1[j].norm())).unwrap();
    let mut w2 = [ZERO; 3];
    w2[k] = ONE;
    let proj = v1[k].conj();
    for i in 0..3 {
        w2[i] -= v1[i] * proj;
    }
    normalize_vec(&mut w2);
    let c = cross(&v1, &w2);
    let w3 = [c[0].conj(), c[1].conj(), c[2].conj()];

    let aw2 = mat_vec(a, &w2);
    let aw3 = mat_vec(a, &w3);
    let pairs = eigen_normal2(hdot(&w2, &aw2), hdot(&w2, &aw3), hdot(&w3, &aw2), hdot(&w3, &aw3));

    let mut vectors = vec![v1];
    for (_, y) in &pairs {
        let mut v = [ZERO; 3];
        for i in 0..3 {
            v[i] = w2[i] * y[0] + w3[i] * y[1];
        }
        vectors.push(v);
    }
    let values: Vec<Complex64> = vectors.iter().map(|v| hdot(v, &mat_vec(a, v))).collect();

    let order = order_eigenvalues(&values, tol);
    let mut p = ComplexMat::zeros(3);
    let mut sorted = Vec::with_capacity(3);
    for (col, &src) in order.iter().enumerate() {
        let mut v = vectors[src];
        fix_phase(&mut v);
        p.set_column(col, &v);
        sorted.push(values[src]);
    }
    let pinv = p.adjoint();
    Ok(EigenSystem {
        values: sorted,
        vectors: p,
        inverse_vectors: pinv,
    })
}

fn mat_vec(a: &ComplexMat, v: &[Complex64]) -> Vec<Complex64> {
    a.rows()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(a: &ComplexMat) -> ComplexMat {
    let n = a.n();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vnorm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let mut v = x;
        v[0] += phase * xnorm;
        let vn2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vn2 == 0.0 {
            continue;
        }
        let off = k + 1;
        for j in 0..n {
            let dot: Complex64 = (off..n).map(|i| v[i - off].conj() * h[(i, j)]).sum();
            let f = dot * (2.0 / vn2);
            for i in off..n {
                h[(i, j)] -= v[i - off] * f;
            }
        }
        for i in 0..n {
            let dot: Complex64 = (off..n).map(|j| h[(i, j)] * v[j - off]).sum();
            let f = dot * (2.0 / vn2);
            for j in off..n {
                h[(i, j)] -= f * v[j - off].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Eigenvalues of a Hessenberg matrix by single-shift QR with Givens
/// rotations. The first sweep on each active block is unshifted, later
/// sweeps use the Wilkinson shift, and every tenth stalled sweep uses an
/// exceptional shift.
fn hessenberg_qr_eigenvalues(mut h: ComplexMat) -> Result<Vec<Complex64>> {
    let n = h.n();
    let eps = f64::EPSILON;
    let hnorm = h.frobenius_norm();
    let max_sweeps = 60 * n;
    let mut hi = n - 1;
    let mut stalled = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if diag > 0.0 { diag } else { hnorm };
            if sub <= eps * scale {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            stalled = 0;
            continue;
        }
        stalled += 1;
        total += 1;
        if total > max_sweeps {
            return Err(Error::NoConvergence(total));
        }
        let shift = if stalled == 1 {
            ZERO
        } else if stalled.is_multiple_of(10) {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.25 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (g, s) = if r == 0.0 { (ONE, ZERO) } else { (x / r, y / r) };
            for j in k..=hi {
                let (a, b) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = g.conj() * a + s.conj() * b;
                h[(k + 1, j)] = -s * a + g * b;
            }
            rots.push((g, s));
        }
        for (off, &(g, s)) in rots.iter().enumerate() {
            let k = lo + off;
            for i in lo..=(k + 1).min(hi) {
                let (a, b) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = a * g + b * s;
                h[(i, k + 1)] = -a * s.conj() + b * g.conj();
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(h.diagonal())
}

/// Deterministic, generic-looking start vector for inverse iteration.
fn start_vector(n: usize, member: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| {
            let t = (i + 1) as f64;
            let m = (member + 1) as f64;
            Complex64::new((1.3 * t * m).cos() + 0.1 * t, (0.7 * t + m).sin())
        })
        .collect()
}

/// Groups value indices whose pairwise distance is below `width`
/// (transitively). Returns, for each index, its cluster id.
fn clusters(values: &[Complex64], width: f64) -> Vec<usize> {
    let n = values.len();
    let mut id: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() < width {
                let (a, b) = (id[i], id[j]);
                for x in id.iter_mut() {
                    if *x == b {
                        *x = a;
                    }
                }
            }
        }
    }
    id
}

/// General eigendecomposition for `2 <= n <= 8`.
///
/// Eigenvalues come from Hessenberg QR iteration, eigenvectors from
/// inverse iteration on the original matrix. Vectors belonging to one
/// eigenvalue cluster are Gram-Schmidt orthogonalized against each other.
/// Fails with [`Error::NotDiagonalizable`] when the eigenvector matrix is
/// too ill-conditioned (`diag_cond_max`) or the reconstruction residual
/// exceeds `eig_tol · |a|_F`.
pub fn eigen_general(a: &ComplexMat, tol: &Tolerances) -> Result<EigenSystem> {
    let n = a.n();
    let anorm = a.frobenius_norm();
    if anorm == 0.0 {
        let id = ComplexMat::identity(n);
        return Ok(EigenSystem {
            values: vec![ZERO; n],
            vectors: id.clone(),
            inverse_vectors: id,
        });
    }
    let raw = hessenberg_qr_eigenvalues(hessenberg(a))?;
    let order = order_eigenvalues(&raw, tol);
    let values: Vec<Complex64> = order.iter().map(|&i| raw[i]).collect();
    let cluster = clusters(&values, tol.cluster_tol * anorm);

    let floor = f64::EPSILON * anorm;
    let id = ComplexMat::identity(n);
    let mut p = ComplexMat::zeros(n);
    let mut done: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (j, &alpha) in values.iter().enumerate() {
        let lu = Lu::factor(&(a - &id.scale(alpha)), floor)
            .ok_or_else(|| Error::NotDiagonalizable("shifted matrix could not be factored".into()))?;
        let peers: Vec<usize> = (0..j).filter(|&k| cluster[k] == cluster[j]).collect();
        let mut x = start_vector(n, peers.len());
        for _ in 0..3 {
            x = lu.solve(&x);
            for &k in &peers {
                let proj = hdot(&done[k], &x);
                for (xi, di) in x.iter_mut().zip(&done[k]) {
                    *xi -= di * proj;
                }
            }
            if normalize_vec(&mut x) == 0.0 || x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NotDiagonalizable("inverse iteration collapsed".into()));
            }
        }
        fix_phase(&mut x);
        p.set_column(j, &x);
        done.push(x);
    }

    let pinv = p
        .gauss_jordan()
        .ok_or_else(|| Error::NotDiagonalizable("eigenvector matrix is singular".into()))?;
    let cond = p.frobenius_norm() * pinv.frobenius_norm();
    if !cond.is_finite() || cond > tol.diag_cond_max {
        return Err(Error::NotDiagonalizable(format!(
            "eigenvector condition estimate {cond:.3e} exceeds {:.1e}",
            tol.diag_cond_max
        )));
    }
    let es = EigenSystem {
        values,
        vectors: p,
        inverse_vectors: pinv,
    };
    let resid = es.residual(a);
    if resid > tol.eig_tol * anorm {
        return Err(Error::NotDiagonalizable(format!(
            "reconstruction residual {:.3e} exceeds tolerance (eigenvector condition {cond:.3e})",
            resid / anorm
        )));
    }
    Ok(es)
}
