#![allow(dead_code)]

use invdec::gellmann::algebra_from_coefficients;
use invdec::oracle::{RngSeed, Sampler};
use invdec::{AlgebraElement, Complex64, ComplexMat, GroupElement, Tolerances};
use proptest::prelude::*;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn dist(a: &ComplexMat, b: &ComplexMat) -> f64 {
    (a - b).frobenius_norm()
}

pub fn complex_mat(n: usize, bound: f64) -> impl Strategy<Value = ComplexMat> {
    prop::collection::vec((-bound..bound, -bound..bound), n * n).prop_map(move |v| {
        let entries: Vec<Complex64> = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        ComplexMat::from_row_major(n, &entries).unwrap()
    })
}

/// `i Σ c_a λ_a` with `|c_a| < bound`.
pub fn algebra(bound: f64) -> impl Strategy<Value = AlgebraElement> {
    prop::array::uniform8(-bound..bound)
        .prop_map(|c| AlgebraElement::new(algebra_from_coefficients(&c), &tol()).unwrap())
}

/// As [`algebra`], rescaled so `|B|_F <= max_norm`.
pub fn algebra_capped(bound: f64, max_norm: f64) -> impl Strategy<Value = AlgebraElement> {
    algebra(bound).prop_map(move |b| {
        let n = b.mat().frobenius_norm();
        if n <= max_norm {
            b
        } else {
            AlgebraElement::new(b.mat().scale_re(max_norm / n), &tol()).unwrap()
        }
    })
}

pub fn haar() -> impl Strategy<Value = GroupElement> {
    any::<u64>().prop_map(|s| Sampler::new(RngSeed(s)).group())
}

pub fn unitary(n: usize) -> impl Strategy<Value = ComplexMat> {
    any::<u64>().prop_map(move |s| Sampler::new(RngSeed(s)).unitary(n))
}
