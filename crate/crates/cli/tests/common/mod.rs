//! Golden cases shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: Option<&'static str>,
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "decompose_zero",
        args: &["decompose", "tests/fixtures/zero3.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "decompose_diag",
        args: &["decompose", "--require-su3", "tests/fixtures/diag_algebra.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "decompose_diag_closed_form",
        args: &[
            "decompose",
            "--method",
            "closed-form",
            "tests/fixtures/diag_algebra.json",
        ],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "decompose_generic_stdin",
        args: &["decompose", "--require-su3", "-"],
        stdin: Some("tests/fixtures/generic_algebra.json"),
        exit: 0,
    },
    Case {
        name: "decompose_hermitian_rejected",
        args: &["decompose", "--require-su3", "tests/fixtures/hermitian.json"],
        stdin: None,
        exit: 2,
    },
    Case {
        name: "decompose_nxn_diag4",
        args: &["decompose", "--nxn", "tests/fixtures/diag4.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "exp_zero",
        args: &["exp", "tests/fixtures/zero3.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "exp_pi_lambda1",
        args: &["exp", "tests/fixtures/pi_lambda1.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "exp_both",
        args: &["exp", "--method", "both", "tests/fixtures/generic_algebra.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "log_identity",
        args: &["log", "tests/fixtures/identity3.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "log_diag",
        args: &["log", "tests/fixtures/diag_i_minus_i.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "log_diag_reference",
        args: &["log", "--method", "reference", "tests/fixtures/diag_i_minus_i.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "log_branch",
        args: &["log", "--branch", "-1,0,1", "tests/fixtures/haar_seed42.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "log_double_minus_one",
        args: &["log", "tests/fixtures/double_minus_one.json"],
        stdin: None,
        exit: 3,
    },
    Case {
        name: "factor_identity",
        args: &["factor", "tests/fixtures/identity3.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "factor_haar_seed42",
        args: &["factor", "tests/fixtures/haar_seed42.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "factor_zero_g0",
        args: &["factor", "tests/fixtures/zero_g0.json"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "bench_exp_generic",
        args: &[
            "bench",
            "--task",
            "exp",
            "--regime",
            "generic",
            "--n",
            "100",
            "--seed",
            "42",
            "--no-timings",
        ],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "bench_factorize_near_degenerate",
        args: &[
            "bench",
            "--task",
            "factorize",
            "--regime",
            "near-degenerate",
            "--n",
            "100",
            "--seed",
            "7",
            "--no-timings",
        ],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "bench_too_few_samples",
        args: &["bench", "--n", "50"],
        stdin: None,
        exit: 2,
    },
    Case {
        name: "gellmann_1_pi",
        args: &["gellmann", "--a", "1", "--theta", "3.14159265358979"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "gellmann_8",
        args: &["gellmann", "--a", "8", "--theta", "-0.7"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "gellmann_9_rejected",
        args: &["gellmann", "--a", "9", "--theta", "1"],
        stdin: None,
        exit: 2,
    },
    Case {
        name: "sample_algebra",
        args: &["sample", "--kind", "algebra", "--seed", "7", "--scale", "0.5"],
        stdin: None,
        exit: 0,
    },
    Case {
        name: "tol_override_unknown",
        args: &["--tol-override", "bogus=1", "exp", "tests/fixtures/zero3.json"],
        stdin: None,
        exit: 2,
    },
];

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(case: &Case) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_invdec"));
    cmd.args(case.args).current_dir(manifest_dir()).stdout(Stdio::piped());
    cmd.stdin(if case.stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = cmd.spawn().expect("binary starts");
    if let Some(path) = case.stdin {
        let text = std::fs::read(manifest_dir().join(path)).unwrap();
        child.stdin.take().unwrap().write_all(&text).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.json"))
}

/// Runs every case twice; returns the names whose output is unstable,
/// has the wrong exit code or differs from the stored document.
pub fn check_all() -> Vec<&'static str> {
    CASES
        .iter()
        .filter(|case| {
            let (code, first) = run(case);
            let (_, second) = run(case);
            let stored = std::fs::read_to_string(golden_path(case.name)).ok();
            code != case.exit || first != second || stored.as_deref() != Some(first.as_str())
        })
        .map(|case| case.name)
        .collect()
}
