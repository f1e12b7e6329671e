//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines always reach
//! standard output. Exits non-zero when a criterion fails, except those in
//! `UNATTAINABLE`, which are still evaluated and reported.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use invdec::factorlog::principal_log_with;
use invdec::gellmann::{exp_gellmann, lambda, reconstruct_lambda, rho};
use invdec::grades::{grade0, grade2, grade4, grade6, grades_from_parts};
use invdec::invdec::{lambda_separation, match_by_lambda};
use invdec::oracle::{exp_reference, RngSeed, Sampler};
use invdec::{
    branch_log, decompose, decompose_closed_form, decompose_nxn, exp_su3, factorize, lambda_roots, principal_log,
    AlgebraElement, Complex64, ComplexMat, GroupElement, LogBranch, SimplePart, Tolerances,
};
use invdec_bench::{run_all, Task};

/// Criteria that cannot hold for any implementation; see the README.
const UNATTAINABLE: &[&str] = &["6b"];

const SAMPLES: usize = 1000;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, detail }
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn conjugate(v: &ComplexMat, d: &ComplexMat) -> ComplexMat {
    &(v * d) * &v.adjoint()
}

fn phases(p: [f64; 3]) -> ComplexMat {
    ComplexMat::from_diag(&p.map(|x| Complex64::from_polar(1.0, x)))
}

/// Haar element with the given eigenphases.
fn with_phases(s: &mut Sampler, p: [f64; 3]) -> GroupElement {
    GroupElement::new(conjugate(&s.unitary(3), &phases(p)), &tol()).expect("unitary conjugate of a phase matrix")
}

fn criterion1() -> Outcome {
    let t = tol();
    let start = Instant::now();
    let mut s = Sampler::new(RngSeed(1));
    let (mut sum, mut comm, mut simple, mut above, mut roots) = (0f64, 0f64, 0f64, f64::NEG_INFINITY, 0f64);
    let mut errors = 0;
    for _ in 0..SAMPLES {
        let b = s.algebra(1.0);
        let Ok(d) = decompose(&b, &t) else {
            errors += 1;
            continue;
        };
        sum = sum.max(d.sum_residual());
        comm = comm.max(d.max_commutator());
        for p in &d.parts {
            simple = simple.max(p.simplicity_residual());
            above = above.max(p.lambda()).max(p.square().im.abs());
        }
        let mut eig = d.lambdas();
        eig.sort_by(|a, b| b.total_cmp(a));
        let r = lambda_roots(&b);
        roots = roots.max(eig.iter().zip(&r).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = errors == 0 && sum <= 1e-10 && comm <= 1e-10 && simple <= 1e-10 && above <= 1e-12 && roots <= 1e-9;
    outcome(
        "1",
        pass,
        format!(
            "decomposition suite: {SAMPLES} samples, {errors} errors, sum {sum:.1e}, commutator {comm:.1e}, \
             simplicity {simple:.1e}, max lambda {above:.1e}, roots {roots:.1e}, {secs:.2} s"
        ),
    )
}

fn parts_distance(a: &[SimplePart], b: &[SimplePart]) -> f64 {
    let m = match_by_lambda(a, b);
    a.iter()
        .zip(&m)
        .map(|(p, &j)| (p.mat() - b[j].mat()).frobenius_norm())
        .fold(0.0, f64::max)
}

fn criterion2() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(2));
    let (mut used, mut worst, mut errors) = (0, 0f64, 0);
    for _ in 0..SAMPLES {
        let b = s.algebra(1.0);
        let l = lambda_roots(&b);
        if lambda_separation(&l) <= 1e-4 {
            continue;
        }
        used += 1;
        match (decompose_closed_form(&b, l, &t), decompose(&b, &t)) {
            (Ok(c), Ok(e)) => worst = worst.max(parts_distance(&c.parts, &e.parts)),
            _ => errors += 1,
        }
    }
    outcome(
        "2",
        used >= 900 && errors == 0 && worst <= 1e-8,
        format!("closed-form equivalence: {used}/{SAMPLES} separated samples, {errors} errors, max part distance {worst:.1e}"),
    )
}

fn criterion3() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(3));
    let (mut dist, mut unit, mut det, mut errors) = (0f64, 0f64, 0f64, 0);
    for _ in 0..SAMPLES {
        let raw = s.algebra(1.0).into_mat();
        let target = 5.0 * s.uniform();
        let b = AlgebraElement::new(raw.scale_re(target / raw.frobenius_norm()), &t).unwrap();
        let Ok(u) = exp_su3(&b, &t) else {
            errors += 1;
            continue;
        };
        dist = dist.max((u.mat() - &exp_reference(b.mat())).frobenius_norm());
        unit = unit.max(u.mat().unitarity_residual());
        det = det.max((u.mat().det() - 1.0).norm());
    }
    outcome(
        "3",
        errors == 0 && dist <= 1e-10 && unit <= 1e-11 && det <= 1e-11,
        format!("exponential vs oracle: |B| <= 5, max distance {dist:.1e}, unitarity {unit:.1e}, det {det:.1e}"),
    )
}

fn criterion4() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(4));
    let (mut worst, mut pseudo, mut errors) = (0f64, 0f64, 0);
    for _ in 0..SAMPLES {
        let u = s.group();
        let Ok((_, f)) = principal_log_with(&u, &t) else {
            errors += 1;
            continue;
        };
        let Some(parts) = f.parts.iter().cloned().collect::<Option<Vec<_>>>() else {
            errors += 1;
            continue;
        };
        let from_parts = grades_from_parts(&parts);
        let from_u = [grade0(&u), grade2(&u), grade4(&u), grade6(&u)];
        for (a, b) in from_u.iter().zip(&from_parts) {
            worst = worst.max((a - b).frobenius_norm());
        }
        let g6 = &from_u[3];
        let x = g6.trace() / 3.0;
        let off = (g6 - &ComplexMat::identity(3).scale(Complex64::new(0.0, x.im))).frobenius_norm();
        pseudo = pseudo.max(off);
    }
    outcome(
        "4",
        errors == 0 && worst <= 1e-9 && pseudo <= 1e-10,
        format!("grade identities: {SAMPLES} Haar samples, {errors} errors, max grade distance {worst:.1e}, g6 off i1 {pseudo:.1e}"),
    )
}

fn criterion5() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(5));
    let (mut worst, mut errors) = (0f64, 0);
    for _ in 0..SAMPLES {
        let u = s.group();
        match factorize(&u, &t) {
            Ok(f) => worst = worst.max((&f.product() - u.mat()).frobenius_norm()),
            Err(_) => errors += 1,
        }
    }
    let mut s = Sampler::new(RngSeed(55));
    let (mut engineered, mut inverse, mut eng_worst) = (0, 0, 0f64);
    for _ in 0..20 {
        // eigenphases (π, φ, −π − φ): one half-angle at π/2, so g0 = 0
        let phi = (0.2 + 2.6 * s.uniform()) * if s.uniform() < 0.5 { -1.0 } else { 1.0 };
        let u = with_phases(&mut s, [PI, phi, -PI - phi]);
        engineered += 1;
        match factorize(&u, &t) {
            Ok(f) => {
                inverse += f.used_inverse_route() as usize;
                eng_worst = eng_worst.max((&f.product() - u.mat()).frobenius_norm());
            }
            Err(_) => errors += 1,
        }
    }
    let worst = worst.max(eng_worst);
    outcome(
        "5",
        errors == 0 && worst <= 1e-10 && inverse >= 10,
        format!(
            "factorization round trip: {SAMPLES} Haar + {engineered} engineered g0 = 0 ({inverse} via inverse routes), \
             {errors} errors, max residual {worst:.1e}"
        ),
    )
}

/// Two eigenvalues within `margin` of −1: the set where the factorization
/// loses its eigenbasis.
fn near_boundary(u: &GroupElement, margin: f64) -> bool {
    let es = invdec::smallmat::eigen_normal3(u.mat(), &tol()).expect("unitary matrices are normal");
    es.values.iter().filter(|z| (*z + 1.0).norm() <= margin).count() >= 2
}

fn criterion6a() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(6));
    let (mut excluded, mut worst, mut errors) = (0, 0f64, 0);
    for _ in 0..SAMPLES {
        let u = s.group();
        if near_boundary(&u, 1e-6) {
            excluded += 1;
            continue;
        }
        match principal_log(&u, &t) {
            Ok(l) => worst = worst.max((&exp_reference(&l) - u.mat()).frobenius_norm()),
            Err(_) => errors += 1,
        }
    }
    let rate = excluded as f64 / SAMPLES as f64;
    outcome(
        "6a",
        errors == 0 && worst <= 1e-9 && rate < 0.01,
        format!("exp(Ln U) = U: {SAMPLES} Haar samples, {excluded} excluded near beta = pi, {errors} errors, max residual {worst:.1e}"),
    )
}

fn criterion6b() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(61));
    let (mut accepted, mut failed, mut worst) = (0, 0, 0f64);
    let (mut small, mut small_failed) = (0, 0);
    while accepted < SAMPLES {
        let scale = 0.3 + 0.9 * s.uniform();
        let b = s.algebra(scale);
        let d = decompose(&b, &t).unwrap();
        if !d.parts.iter().all(|p| p.beta() > 0.05 && p.beta() < PI - 0.05) {
            continue;
        }
        accepted += 1;
        let below_half = d.parts.iter().all(|p| p.beta() < PI / 2.0 - 0.05);
        small += below_half as usize;
        let dist = exp_su3(&b, &t)
            .and_then(|u| principal_log(&u, &t))
            .map_or(f64::INFINITY, |l| (&l - b.mat()).frobenius_norm());
        worst = worst.max(dist);
        if dist.is_nan() || dist > 1e-8 {
            failed += 1;
            small_failed += below_half as usize;
        }
    }
    outcome(
        "6b",
        failed == 0,
        format!(
            "Ln(exp B) = B for beta in (0.05, pi - 0.05): {failed}/{accepted} differ (max {worst:.1e}); \
             subset with every beta < pi/2 - 0.05: {small_failed}/{small} differ"
        ),
    )
}

fn criterion6c() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(62));
    let (mut worst, mut errors, mut runs) = (0f64, 0, 0);
    for _ in 0..100 {
        let u = s.group();
        for k in 0..27 {
            let branch = LogBranch::new([k / 9 - 1, (k / 3) % 3 - 1, k % 3 - 1].map(i64::from));
            runs += 1;
            match branch_log(&u, branch, &t) {
                Ok(l) => worst = worst.max((&exp_reference(&l) - u.mat()).frobenius_norm()),
                Err(_) => errors += 1,
            }
        }
    }
    outcome(
        "6c",
        errors == 0 && worst <= 1e-8,
        format!("branch logs, k in {{-1,0,1}}^3: {runs} runs, {errors} errors, max residual {worst:.1e}"),
    )
}

/// `exp(iθλ_a)` written out: `1 + (cos θ − 1) λ² + i sin θ λ` for `a <= 7`,
/// where `λ³ = λ`; the diagonal phases for `a = 8`.
fn gellmann_closed_form(a: usize, theta: f64) -> ComplexMat {
    if a == 8 {
        let r = theta / 3f64.sqrt();
        return phases([r, r, -2.0 * r]);
    }
    let l = lambda(a);
    let id = ComplexMat::identity(3);
    &(&id + &(&l * &l).scale_re(theta.cos() - 1.0)) + &l.scale(Complex64::new(0.0, theta.sin()))
}

fn criterion7() -> Outcome {
    let id = ComplexMat::identity(3);
    let squares = (-7..=7).all(|i| {
        let r = rho(i);
        &r * &r == id
    });
    let count = (-7..=7).count();
    let recon = (1..=8)
        .map(|a| (&reconstruct_lambda(a).unwrap() - &lambda(a)).max_abs())
        .fold(0.0, f64::max);
    let (mut closed, mut reference) = (0f64, 0f64);
    for a in 1..=8 {
        for k in 0..41 {
            let theta = -2.0 * PI + 4.0 * PI * k as f64 / 40.0;
            let u = exp_gellmann(a, theta).unwrap();
            closed = closed.max((u.mat() - &gellmann_closed_form(a, theta)).max_abs());
            let gen = lambda(a).scale(Complex64::new(0.0, theta));
            reference = reference.max((u.mat() - &exp_reference(&gen)).max_abs());
        }
    }
    outcome(
        "7",
        squares && count == 15 && recon <= 1e-15 && closed <= 1e-12 && reference <= 1e-12,
        format!(
            "Gell-Mann suite: {count} rho squares exact: {squares}, reconstruction {recon:.1e}, \
             closed form {closed:.1e}, reference {reference:.1e} (41-point grid, a = 1..8)"
        ),
    )
}

fn criterion8() -> Outcome {
    let t = tol();
    let mut s = Sampler::new(RngSeed(8));
    let (mut sum, mut comm, mut square, mut errors) = (0f64, 0f64, 0f64, 0);
    for n in 4..=8 {
        for _ in 0..100 {
            let d: Vec<Complex64> = (0..n).map(|_| Complex64::new(s.normal(), s.normal())).collect();
            let p = s.ginibre(n);
            let Ok(pinv) = p.inverse(&t) else {
                errors += 1;
                continue;
            };
            let b = &(&p * &ComplexMat::from_diag(&d)) * &pinv;
            let Ok(parts) = decompose_nxn(&b, &t) else {
                errors += 1;
                continue;
            };
            let mut acc = ComplexMat::zeros(n);
            for q in &parts {
                acc += q.mat();
                square = square.max(q.simplicity_residual());
            }
            sum = sum.max((&acc - &b).frobenius_norm() / b.frobenius_norm().max(1.0));
            comm = comm.max(invdec::invdec::max_commutator(&parts));
        }
    }
    outcome(
        "8",
        errors == 0 && sum <= 1e-9 && comm <= 1e-9 && square <= 1e-9,
        format!("n x n decomposition: n = 4..8, 100 each, {errors} errors, sum {sum:.1e}, commutator {comm:.1e}, square {square:.1e}"),
    )
}

fn criterion9() -> Outcome {
    let start = Instant::now();
    let first = run_all(1000, RngSeed(42));
    let secs = start.elapsed().as_secs_f64();
    let second = run_all(1000, RngSeed(42));
    let (Ok(first), Ok(second)) = (first, second) else {
        return outcome("9", false, "bench harness: run_all failed".into());
    };
    let strip = |r: &[invdec_bench::BenchReport]| r.iter().map(|x| x.accuracy_only()).collect::<Vec<_>>();
    let reproducible = strip(&first) == strip(&second);
    let json = serde_json::to_string(&first).is_ok();
    let exp_err = first
        .iter()
        .find(|r| r.task == Task::Exp && r.method == "invariant" && r.regime == invdec_bench::Regime::Generic)
        .and_then(|r| r.max_rel_err)
        .unwrap_or(f64::INFINITY);
    let failures: usize = first.iter().map(|r| r.failures).sum();
    outcome(
        "9",
        reproducible && json && secs < 60.0 && exp_err <= 1e-9 && first.len() == 20,
        format!(
            "bench harness: {} reports, {secs:.2} s, reproducible {reproducible}, exp generic max_rel_err {exp_err:.1e}, \
             {failures} failures across regimes",
            first.len()
        ),
    )
}

fn criterion10() -> Outcome {
    let bad = common::check_all();
    outcome(
        "10",
        common::CASES.len() >= 12 && bad.is_empty(),
        format!(
            "CLI golden tests: {} fixtures, byte-stable over two runs, mismatches {bad:?}",
            common::CASES.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 12] = [
        criterion1,
        criterion2,
        criterion3,
        criterion4,
        criterion5,
        criterion6a,
        criterion6b,
        criterion6c,
        criterion7,
        criterion8,
        criterion9,
        criterion10,
    ];
    let mut blocking = Vec::new();
    for c in criteria {
        let o = c();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && UNATTAINABLE.contains(&o.id) {
            " (known unattainable)"
        } else {
            ""
        };
        println!("criterion {:<3} {status}{note}: {}", o.id, o.detail);
        if !o.pass && !UNATTAINABLE.contains(&o.id) {
            blocking.push(o.id);
        }
    }
    if blocking.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("blocking failures: {blocking:?}");
        ExitCode::FAILURE
    }
}
