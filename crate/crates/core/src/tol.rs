//! Numerical thresholds shared by every module.
//!
//! All values are plain `f64`s so callers can override individual keys
//! (the CLI exposes this as `--tol-override key=value`).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigen reconstruction residual, relative to the input norm.
    pub eig_tol: f64,
    /// Commutator `a a† - a† a` relative to `|a|²` for the normal path.
    pub normal_tol: f64,
    /// `|a a⁻¹ - 1|` accepted by `inverse`.
    pub inv_tol: f64,
    /// Largest Frobenius condition estimate accepted by `inverse`.
    pub inv_cond_max: f64,
    /// Largest eigenvector condition estimate before a matrix counts as defective.
    pub diag_cond_max: f64,
    /// Eigenvalue cluster width, relative to the input norm.
    pub cluster_tol: f64,
    /// Traceless skew-Hermitian check for algebra elements.
    pub alg_tol: f64,
    /// Unitarity and unit-determinant check for group elements.
    pub grp_tol: f64,
    /// Simple-part residual `|b² - λ1|`.
    pub simple_tol: f64,
    /// Sum and commutator residuals of a decomposition.
    pub decomp_tol: f64,
    /// Below this a part counts as zero and carries no unit direction.
    pub beta_zero_tol: f64,
    /// Relative separation the closed-form decomposition requires between lambdas.
    pub lambda_sep_tol: f64,
    /// Grade bookkeeping residuals.
    pub grade_tol: f64,
    /// Factorization residuals and factor shape checks.
    pub fact_tol: f64,
    /// Exp-of-log residual accepted by the logarithms.
    pub log_tol: f64,
    /// Scalar grade magnitude below which the inverse routes are used.
    pub g0_zero_tol: f64,
    /// Sine magnitude below which a factor direction is unrecoverable.
    pub sin_zero_tol: f64,
    /// Normalized norm below which `normalize` refuses.
    pub norm_zero_tol: f64,
    /// Largest tolerated `|arccos` argument| overshoot before clamping is an error.
    pub acos_overshoot_tol: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        eig_tol: 1e-10,
        normal_tol: 1e-10,
        inv_tol: 1e-9,
        inv_cond_max: 1e12,
        diag_cond_max: 1e10,
        cluster_tol: 1e-8,
        alg_tol: 1e-10,
        grp_tol: 1e-10,
        simple_tol: 1e-10,
        decomp_tol: 1e-10,
        beta_zero_tol: 1e-12,
        lambda_sep_tol: 1e-6,
        grade_tol: 1e-9,
        fact_tol: 1e-9,
        log_tol: 1e-9,
        g0_zero_tol: 1e-8,
        sin_zero_tol: 1e-9,
        norm_zero_tol: 1e-14,
        acos_overshoot_tol: 1e-8,
    };

    pub const KEYS: [&'static str; 19] = [
        "eig_tol",
        "normal_tol",
        "inv_tol",
        "inv_cond_max",
        "diag_cond_max",
        "cluster_tol",
        "alg_tol",
        "grp_tol",
        "simple_tol",
        "decomp_tol",
        "beta_zero_tol",
        "lambda_sep_tol",
        "grade_tol",
        "fact_tol",
        "log_tol",
        "g0_zero_tol",
        "sin_zero_tol",
        "norm_zero_tol",
        "acos_overshoot_tol",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "eig_tol" => &mut self.eig_tol,
            "normal_tol" => &mut self.normal_tol,
            "inv_tol" => &mut self.inv_tol,
            "inv_cond_max" => &mut self.inv_cond_max,
            "diag_cond_max" => &mut self.diag_cond_max,
            "cluster_tol" => &mut self.cluster_tol,
            "alg_tol" => &mut self.alg_tol,
            "grp_tol" => &mut self.grp_tol,
            "simple_tol" => &mut self.simple_tol,
            "decomp_tol" => &mut self.decomp_tol,
            "beta_zero_tol" => &mut self.beta_zero_tol,
            "lambda_sep_tol" => &mut self.lambda_sep_tol,
            "grade_tol" => &mut self.grade_tol,
            "fact_tol" => &mut self.fact_tol,
            "log_tol" => &mut self.log_tol,
            "g0_zero_tol" => &mut self.g0_zero_tol,
            "sin_zero_tol" => &mut self.sin_zero_tol,
            "norm_zero_tol" => &mut self.norm_zero_tol,
            "acos_overshoot_tol" => &mut self.acos_overshoot_tol,
            _ => return None,
        })
    }

    /// Overrides one key. Values must be finite and positive.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {key} must be finite and positive, got {value}"
            )));
        }
        let slot = self
            .slot(key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown tolerance key {key:?}")))?;
        *slot = value;
        Ok(())
    }

    /// Parses a `key=value` override.
    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got {spec:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("not a number: {value:?}")))?;
        self.set(key.trim(), value)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_key_is_settable() {
        let mut t = Tolerances::default();
        for key in Tolerances::KEYS {
            t.set(key, 0.5).unwrap();
        }
        assert_eq!(t.eig_tol, 0.5);
        assert_eq!(t.acos_overshoot_tol, 0.5);
    }

    #[test]
    fn override_parsing() {
        let mut t = Tolerances::default();
        t.apply_override("g0_zero_tol=1e-6").unwrap();
        assert_eq!(t.g0_zero_tol, 1e-6);
        assert!(t.apply_override("nope=1").is_err());
        assert!(t.apply_override("eig_tol").is_err());
        assert!(t.apply_override("eig_tol=-1").is_err());
        assert!(t.apply_override("eig_tol=abc").is_err());
    }
}
