//! Subcommand bodies. Each returns the rendered output document.

use std::io::Read;

use invdec::factorlog::{branch_log, principal_log_with};
use invdec::gellmann::{exp_gellmann, lambda};
use invdec::invdec::max_commutator;
use invdec::oracle::{compare, exp_reference, log_reference, random_algebra, random_group, RngSeed};
use invdec::{
    decompose_closed_form, decompose_nxn, decompose_via_eigen, exp_su3, factorize, lambda_roots, AlgebraElement,
    Complex64, ComplexMat, GroupElement, LogBranch, SimplePart, Tolerances,
};
use invdec_bench::{format_table, run_bench, Regime, Task};
use serde_json::{json, Value};

use crate::document::{complex_value, mat_value, render, MatrixDocument};
use crate::Failure;

fn read_matrix(path: &str) -> Result<ComplexMat, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Input {
        code: "IoError",
        message: format!("{path}: {e}"),
    })?;
    let doc: MatrixDocument = serde_json::from_str(&text).map_err(|e| Failure::Input {
        code: "ParseError",
        message: e.to_string(),
    })?;
    Ok(doc.to_mat()?)
}

fn part_value(index: usize, p: &SimplePart) -> Value {
    json!({
        "index": index + 1,
        "matrix": mat_value(p.mat()),
        "square": complex_value(p.square()),
        "lambda": p.lambda(),
        "beta": p.beta(),
        "simplicity_residual": p.simplicity_residual(),
    })
}

fn parts_document(command: &str, method: &str, b: &ComplexMat, parts: &[SimplePart]) -> String {
    let mut sum = ComplexMat::zeros(b.n());
    for p in parts {
        sum += p.mat();
    }
    let sum_residual = (&sum - b).frobenius_norm() / b.frobenius_norm().max(1.0);
    render(&json!({
        "command": command,
        "method": method,
        "n": b.n(),
        "parts": parts.iter().enumerate().map(|(i, p)| part_value(i, p)).collect::<Vec<_>>(),
        "diagnostics": {
            "sum_residual": sum_residual,
            "max_commutator": max_commutator(parts),
            "max_simplicity_residual": parts.iter().map(SimplePart::simplicity_residual).fold(0.0, f64::max),
        },
    }))
}

pub fn decompose(
    path: &str,
    nxn: bool,
    require_su3: bool,
    closed_form: bool,
    tol: &Tolerances,
) -> Result<String, Failure> {
    let b = read_matrix(path)?;
    let method = if closed_form { "closed-form" } else { "eigen" };
    if closed_form && nxn {
        return Err(Failure::Input {
            code: "InvalidArgument",
            message: "--method closed-form applies to su(3) only, not --nxn".into(),
        });
    }
    if require_su3 || closed_form {
        AlgebraElement::new(b.clone(), tol)?;
    }
    let parts = if closed_form {
        let a = AlgebraElement::new(b.clone(), tol)?;
        decompose_closed_form(&a, lambda_roots(&a), tol)?.parts
    } else if nxn {
        decompose_nxn(&b, tol)?
    } else {
        decompose_via_eigen(&b, tol)?.parts
    };
    Ok(parts_document("decompose", method, &b, &parts))
}

fn group_residuals(u: &ComplexMat) -> Value {
    json!({
        "unitarity_residual": u.unitarity_residual(),
        "det_residual": (u.det() - 1.0).norm(),
    })
}

pub fn exp(path: &str, invariant: bool, reference: bool, tol: &Tolerances) -> Result<String, Failure> {
    let b = read_matrix(path)?;
    let mut doc = json!({ "command": "exp" });
    let method = match (invariant, reference) {
        (true, true) => "both",
        (true, false) => "invariant",
        _ => "reference",
    };
    doc["method"] = json!(method);
    let inv = if invariant {
        let a = AlgebraElement::new(b.clone(), tol)?;
        Some(exp_su3(&a, tol)?.into_mat())
    } else {
        None
    };
    let refm = reference.then(|| exp_reference(&b));
    if let Some(u) = &inv {
        doc["u"] = mat_value(u);
        doc["diagnostics"] = group_residuals(u);
    }
    if let Some(r) = &refm {
        doc["reference"] = mat_value(r);
        if inv.is_none() {
            doc["diagnostics"] = group_residuals(r);
        }
    }
    if let (Some(u), Some(r)) = (&inv, &refm) {
        doc["distance"] = json!(compare(u, r)?);
    }
    Ok(render(&doc))
}

pub fn log(path: &str, branch: Option<LogBranch>, reference: bool, tol: &Tolerances) -> Result<String, Failure> {
    let m = read_matrix(path)?;
    if reference {
        if branch.is_some() {
            return Err(Failure::Input {
                code: "InvalidArgument",
                message: "--branch needs --method invariant".into(),
            });
        }
        let l = log_reference(&m, tol)?;
        return Ok(render(&json!({
            "command": "log",
            "method": "reference",
            "log": mat_value(&l),
            "diagnostics": { "exp_residual": compare(&exp_reference(&l), &m)? },
        })));
    }
    let u = GroupElement::new(m, tol)?;
    let branch = branch.unwrap_or(LogBranch::PRINCIPAL);
    let (principal, f) = principal_log_with(&u, tol)?;
    let l = if branch == LogBranch::PRINCIPAL {
        principal
    } else {
        branch_log(&u, branch, tol)?
    };
    Ok(render(&json!({
        "command": "log",
        "method": "invariant",
        "branch": branch.k,
        "log": mat_value(&l),
        "betas": f.parts.iter().map(|p| p.as_ref().map(SimplePart::beta)).collect::<Vec<_>>(),
        "routes": f.routes.iter().map(|r| r.describe()).collect::<Vec<_>>(),
        "diagnostics": {
            "exp_residual": compare(&exp_reference(&l), u.mat())?,
            "trace": complex_value(l.trace()),
        },
    })))
}

pub fn factor(path: &str, tol: &Tolerances) -> Result<String, Failure> {
    let u = GroupElement::new(read_matrix(path)?, tol)?;
    let f = factorize(&u, tol)?;
    let g = &f.grades;
    let mats = |ms: &[ComplexMat]| ms.iter().map(mat_value).collect::<Vec<_>>();
    let parts: Vec<Value> = f
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| p.as_ref().map_or(Value::Null, |p| part_value(i, p)))
        .collect();
    Ok(render(&json!({
        "command": "factor",
        "factors": mats(&f.factors),
        "routes": f.routes.iter().map(|r| r.describe()).collect::<Vec<_>>(),
        "used_inverse_route": f.used_inverse_route(),
        "grades": {
            "g0": mat_value(&g.g0),
            "g2": mat_value(&g.g2),
            "g4": mat_value(&g.g4),
            "g6": mat_value(&g.g6),
        },
        "h": mats(&g.h),
        "s": mats(&g.s),
        "parts": parts,
        "diagnostics": {
            "g0_scalar": complex_value(g.scalar0()),
            "product_residual": (&f.product() - u.mat()).frobenius_norm(),
            "max_commutator": f.max_commutator(),
            "grade_reconstruction_residual": g.reconstruction_residual(u.mat()),
        },
    })))
}

pub fn bench(
    task: Option<Task>,
    regime: Option<Regime>,
    n: usize,
    seed: RngSeed,
    json_out: bool,
    table_out: bool,
    no_timings: bool,
) -> Result<String, Failure> {
    let tasks: Vec<Task> = task.map_or(Task::ALL.to_vec(), |t| vec![t]);
    let regimes: Vec<Regime> = regime.map_or(Regime::ALL.to_vec(), |r| vec![r]);
    let mut reports = Vec::new();
    for &t in &tasks {
        for &r in &regimes {
            reports.extend(run_bench(t, r, n, seed)?);
        }
    }
    if no_timings {
        reports = reports.iter().map(|r| r.accuracy_only()).collect();
    }
    let mut out = String::new();
    if json_out {
        let reports = serde_json::to_value(&reports).expect("reports serialize");
        out += &render(&json!({ "command": "bench", "reports": reports }));
    }
    if table_out {
        out += &format_table(&reports);
        if !out.ends_with('\n') {
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn gellmann(a: usize, theta: f64) -> Result<String, Failure> {
    let u = exp_gellmann(a, theta)?;
    let generator = lambda(a).scale(Complex64::new(0.0, theta));
    Ok(render(&json!({
        "command": "gellmann",
        "a": a,
        "theta": theta,
        "u": mat_value(u.mat()),
        "diagnostics": {
            "reference_distance": compare(u.mat(), &exp_reference(&generator))?,
            "unitarity_residual": u.mat().unitarity_residual(),
        },
    })))
}

pub fn sample(group: bool, seed: RngSeed, scale: f64) -> Result<String, Failure> {
    let (kind, m) = if group {
        ("group", random_group(seed).into_mat())
    } else {
        ("algebra", random_algebra(seed, scale)?.into_mat())
    };
    let mut doc = MatrixDocument::from_mat(&m);
    doc.metadata.insert("kind".into(), kind.into());
    doc.metadata.insert("seed".into(), seed.0.to_string());
    if !group {
        doc.metadata.insert("scale".into(), format!("{scale:e}"));
    }
    Ok(render(&serde_json::to_value(doc).expect("matrix documents serialize")))
}
