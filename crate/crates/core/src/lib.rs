//! Invariant decomposition of small complex matrices, with closed-form
//! exponentials, factorizations and logarithms on SU(3).
//!
//! A traceless skew-Hermitian `B` splits into at most three commuting parts
//! `b_i` with `b_i² = λ_i 1`, so `exp(B)` becomes a product of generalized
//! Euler formulas. The same structure, read backwards from a group element,
//! yields its grades, a factorization and its logarithms.
//!
//! ```
//! use invdec::{exp_su3, oracle, principal_log, Tolerances};
//!
//! let tol = Tolerances::default();
//! let b = oracle::random_algebra(oracle::RngSeed(1), 0.5).unwrap();
//! let u = exp_su3(&b, &tol).unwrap();
//! assert!(oracle::compare(u.mat(), &oracle::exp_reference(b.mat())).unwrap() < 1e-12);
//! let l = principal_log(&u, &tol).unwrap();
//! assert!(oracle::compare(&l, b.mat()).unwrap() < 1e-10);
//! ```

pub mod error;
pub mod expmap;
pub mod factorlog;
pub mod gellmann;
pub mod grades;
pub mod invdec;
pub mod oracle;
pub mod smallmat;
pub mod tol;

pub use error::{Error, Result};
pub use expmap::{exp_simple, exp_su3, family_element, invariant_combination, EulerFactor, GroupElement};
pub use factorlog::{
    branch_log, factorize, normalize, principal_log, principal_log_factor, FactorRoute, Factorization, LogBranch,
};
pub use grades::{split_hs, traceless_projection, GradeDecomposition};
pub use invdec::{
    decompose, decompose_closed_form, decompose_nxn, decompose_via_eigen, lambda_roots, AlgebraElement,
    InvariantDecomposition, SimplePart,
};
pub use num_complex::Complex64;
pub use smallmat::{ComplexMat, ComplexScalar, EigenSystem};
pub use tol::Tolerances;
