//! Timing and accuracy harness for the closed-form kernels against the
//! reference algorithms.
//!
//! Inputs are drawn from a seeded stream before any timing starts, so the
//! accuracy fields of a report depend only on `(task, regime, n, seed)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use invdec::oracle::{compare, exp_reference, log_reference, RngSeed, Sampler};
use invdec::{
    exp_su3, factorize, principal_log, AlgebraElement, Complex64, ComplexMat, Error, GroupElement, Result, Tolerances,
};
use serde::Serialize;

pub const MIN_SAMPLES: usize = 100;
pub const WARMUP: usize = 10;

/// Gap between the two close eigenphases in the near-degenerate regime.
pub const NEAR_DEGENERATE_GAP: f64 = 1e-7;
/// Largest distance of the top `β` from `π` in the boundary regime; the
/// exponential then has two eigenvalues near −1.
pub const BOUNDARY_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Exp,
    Log,
    Factorize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Generic,
    SmallAngle,
    NearDegenerate,
    Boundary,
}

impl Task {
    pub const ALL: [Task; 3] = [Task::Exp, Task::Log, Task::Factorize];

    pub fn name(self) -> &'static str {
        match self {
            Task::Exp => "exp",
            Task::Log => "log",
            Task::Factorize => "factorize",
        }
    }
}

impl Regime {
    pub const ALL: [Regime; 4] = [
        Regime::Generic,
        Regime::SmallAngle,
        Regime::NearDegenerate,
        Regime::Boundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Generic => "generic",
            Regime::SmallAngle => "small-angle",
            Regime::NearDegenerate => "near-degenerate",
            Regime::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown task {s:?} (exp, log, factorize)")))
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown regime {s:?} (generic, small-angle, near-degenerate, boundary)"
            ))
        })
    }
}

/// Timing and accuracy of one method on one input set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub task: Task,
    pub method: String,
    pub regime: Regime,
    pub seed: u64,
    pub n_samples: usize,
    pub median_ns: f64,
    pub p10_ns: f64,
    pub p90_ns: f64,
    /// Largest relative error against the reference; absent for the
    /// reference method itself.
    pub max_rel_err: Option<f64>,
    pub median_rel_err: Option<f64>,
    pub failures: usize,
    /// Error code to count.
    pub failure_codes: BTreeMap<String, usize>,
}

impl BenchReport {
    /// Copy with timings zeroed, for reproducibility comparisons.
    pub fn accuracy_only(&self) -> BenchReport {
        BenchReport {
            median_ns: 0.0,
            p10_ns: 0.0,
            p90_ns: 0.0,
            ..self.clone()
        }
    }
}

/// Algebra elements of the requested regime.
pub fn algebra_inputs(regime: Regime, n: usize, seed: RngSeed) -> Vec<AlgebraElement> {
    let mut s = Sampler::new(seed);
    (0..n).map(|_| algebra_sample(&mut s, regime)).collect()
}

fn diag_conjugate(s: &mut Sampler, phases: [f64; 3]) -> AlgebraElement {
    let v = s.unitary(3);
    let d = ComplexMat::from_diag(&phases.map(|p| Complex64::new(0.0, p)));
    let b = &(&v * &d) * &v.adjoint();
    let b = (&b - &b.adjoint()).scale_re(0.5);
    let b = &b - &ComplexMat::identity(3).scale(b.trace() / 3.0);
    AlgebraElement::new(b, &Tolerances::default()).expect("conjugated phases stay in su(3)")
}

fn algebra_sample(s: &mut Sampler, regime: Regime) -> AlgebraElement {
    match regime {
        Regime::Generic => s.algebra(1.0),
        Regime::SmallAngle => s.algebra(1e-6),
        Regime::NearDegenerate => {
            let x = 2.0 * s.uniform() - 1.0;
            let d = NEAR_DEGENERATE_GAP;
            diag_conjugate(s, [x, x + d, -2.0 * x - d])
        }
        Regime::Boundary => {
            // part angles are half the eigenphases: β = (π − a, π − b, 2π − a − b) / 2
            let a = BOUNDARY_MARGIN * s.uniform().max(1e-3);
            let b = BOUNDARY_MARGIN * s.uniform().max(1e-3);
            let pi = std::f64::consts::PI;
            diag_conjugate(s, [pi - a, pi - b, -2.0 * pi + a + b])
        }
    }
}

/// Group elements of the requested regime: Haar samples for `generic`,
/// reference exponentials of regime algebra elements otherwise.
pub fn group_inputs(regime: Regime, n: usize, seed: RngSeed) -> Vec<GroupElement> {
    let mut s = Sampler::new(seed);
    let tol = Tolerances::default();
    (0..n)
        .map(|_| match regime {
            Regime::Generic => s.group(),
            _ => {
                let b = algebra_sample(&mut s, regime);
                GroupElement::new(exp_reference(b.mat()), &tol).expect("exponential of su(3) is special unitary")
            }
        })
        .collect()
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

struct Outcome {
    times: Vec<f64>,
    errors: Vec<f64>,
    failures: BTreeMap<String, usize>,
}

fn measure<I, O>(
    inputs: &[I],
    mut run: impl FnMut(&I) -> Result<O>,
    mut accuracy: impl FnMut(&I, &O) -> Option<f64>,
) -> Outcome {
    for x in inputs.iter().take(WARMUP) {
        let _ = std::hint::black_box(run(x));
    }
    let mut out = Outcome {
        times: Vec::with_capacity(inputs.len()),
        errors: Vec::new(),
        failures: BTreeMap::new(),
    };
    for x in inputs {
        let start = Instant::now();
        let r = std::hint::black_box(run(x));
        out.times.push(start.elapsed().as_nanos() as f64);
        match r {
            Ok(o) => out.errors.extend(accuracy(x, &o)),
            Err(e) => *out.failures.entry(e.code().to_string()).or_default() += 1,
        }
    }
    out
}

fn report(task: Task, method: &str, regime: Regime, seed: RngSeed, o: Outcome) -> BenchReport {
    let mut times = o.times;
    times.sort_by(f64::total_cmp);
    let mut errs = o.errors;
    errs.sort_by(f64::total_cmp);
    BenchReport {
        task,
        method: method.to_string(),
        regime,
        seed: seed.0,
        n_samples: times.len(),
        median_ns: percentile(&times, 0.5),
        p10_ns: percentile(&times, 0.1),
        p90_ns: percentile(&times, 0.9),
        max_rel_err: errs.last().copied(),
        median_rel_err: (!errs.is_empty()).then(|| percentile(&errs, 0.5)),
        failures: o.failures.values().sum(),
        failure_codes: o.failures,
    }
}

fn rel(a: &ComplexMat, b: &ComplexMat) -> Option<f64> {
    compare(a, b).ok()
}

/// One report per method for `task` on `n` inputs of `regime`.
///
/// `exp` and `log` time the invariant method and the reference; errors of
/// the invariant method are measured against the reference. `factorize`
/// has no reference and reports `|U1 U2 U3 − U|`.
pub fn run_bench(task: Task, regime: Regime, n: usize, seed: RngSeed) -> Result<Vec<BenchReport>> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "n = {n} below the minimum of {MIN_SAMPLES}"
        )));
    }
    let tol = Tolerances::default();
    let reports = match task {
        Task::Exp => {
            let inputs = algebra_inputs(regime, n, seed);
            let inv = measure(
                &inputs,
                |b| exp_su3(b, &tol),
                |b, u| rel(u.mat(), &exp_reference(b.mat())),
            );
            let reference = measure(&inputs, |b| Ok(exp_reference(b.mat())), |_, _| None);
            vec![
                report(task, "invariant", regime, seed, inv),
                report(task, "reference", regime, seed, reference),
            ]
        }
        Task::Log => {
            let inputs = group_inputs(regime, n, seed);
            let inv = measure(
                &inputs,
                |u| principal_log(u, &tol),
                |u, l| rel(&exp_reference(l), u.mat()),
            );
            let reference = measure(&inputs, |u| log_reference(u.mat(), &tol), |_, _| None);
            vec![
                report(task, "invariant", regime, seed, inv),
                report(task, "reference", regime, seed, reference),
            ]
        }
        Task::Factorize => {
            let inputs = group_inputs(regime, n, seed);
            let inv = measure(&inputs, |u| factorize(u, &tol), |u, f| rel(&f.product(), u.mat()));
            vec![report(task, "invariant", regime, seed, inv)]
        }
    };
    Ok(reports)
}

/// Every task on every regime.
pub fn run_all(n: usize, seed: RngSeed) -> Result<Vec<BenchReport>> {
    let mut out = Vec::new();
    for task in Task::ALL {
        for regime in Regime::ALL {
            out.extend(run_bench(task, regime, n, seed)?);
        }
    }
    Ok(out)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"))
}

/// Aligned plain-text table, one row per report.
pub fn format_table(reports: &[BenchReport]) -> String {
    let header = [
        "task",
        "method",
        "regime",
        "n",
        "median_ns",
        "p10_ns",
        "p90_ns",
        "max_rel_err",
        "median_rel_err",
        "failures",
    ];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.task.to_string(),
                r.method.clone(),
                r.regime.to_string(),
                r.n_samples.to_string(),
                format!("{:.0}", r.median_ns),
                format!("{:.0}", r.p10_ns),
                format!("{:.0}", r.p90_ns),
                fmt_opt(r.max_rel_err),
                fmt_opt(r.median_rel_err),
                r.failures.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if c < 3 {
                    format!("{s:<w$}", w = widths[c])
                } else {
                    format!("{s:>w$}", w = widths[c])
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for r in &rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}
