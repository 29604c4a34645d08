//! Structured check reports: residuals, convergence tables, pass/fail.

use crate::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub band: usize,
    pub residual: f64,
}

/// Outcome of one identity check.  Invariant: `passed` ⇔
/// `residual ≤ tolerance · reference_scale` (and, when a convergence table
/// is present and applicable, the residuals decrease monotonically).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    /// Complex parameters as `(name, [re, im])` pairs.
    pub parameters: Vec<(String, [f64; 2])>,
    /// Comparison band: residuals are measured on modes `|n| ≤ band`.
    pub band: usize,
    /// Band at which intermediate operator applications run.
    pub working_band: usize,
    pub residual: f64,
    pub reference_scale: f64,
    pub tolerance: f64,
    pub convergence: Vec<ConvergencePoint>,
    /// Least-squares slope of `ln residual` against `ln band`, when a
    /// convergence table with distinct residuals is available.
    pub slope: Option<f64>,
    /// Secondary residual for checks with a weak form.
    pub weak_residual: Option<f64>,
    pub passed: bool,
    pub trials: usize,
    pub seed: u64,
    pub wall_time_ms: u64,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check_name: &str, tolerance: f64) -> Self {
        CheckReport {
            check_name: check_name.to_string(),
            parameters: Vec::new(),
            band: 0,
            working_band: 0,
            residual: 0.0,
            reference_scale: 1.0,
            tolerance,
            convergence: Vec::new(),
            slope: None,
            weak_residual: None,
            passed: false,
            trials: 0,
            seed: 0,
            wall_time_ms: 0,
            notes: Vec::new(),
        }
    }

    pub fn push_param(&mut self, name: &str, value: Complex64) {
        self.parameters.push((name.to_string(), [value.re, value.im]));
    }

    pub fn push_real_param(&mut self, name: &str, value: f64) {
        self.parameters.push((name.to_string(), [value, 0.0]));
    }

    /// Record the convergence table, compute the log-log slope, and flag
    /// non-monotone sequences in the notes.
    pub fn set_convergence(&mut self, points: Vec<ConvergencePoint>) {
        if points.len() >= 2 {
            let xs: Vec<f64> = points.iter().map(|p| (p.band as f64).ln()).collect();
            let ys: Vec<f64> = points.iter().map(|p| p.residual.max(1e-300).ln()).collect();
            let n = xs.len() as f64;
            let mx = xs.iter().sum::<f64>() / n;
            let my = ys.iter().sum::<f64>() / n;
            let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
            let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
            if sxx > 0.0 {
                self.slope = Some(sxy / sxx);
            }
            let spread = points.iter().map(|p| p.residual).fold(f64::NEG_INFINITY, f64::max)
                / points
                    .iter()
                    .map(|p| p.residual)
                    .fold(f64::INFINITY, f64::min)
                    .max(1e-300);
            if spread < 1.5 {
                self.notes
                    .push("convergence table is flat; monotonicity not applicable".into());
            }
        }
        self.convergence = points;
    }

    /// `true` when the convergence residuals are strictly decreasing (or no
    /// table / a flat, not-applicable table is present).
    pub fn convergence_monotone(&self) -> bool {
        if self.notes.iter().any(|n| n.contains("not applicable")) {
            return true;
        }
        self.convergence
            .windows(2)
            .all(|w| w[1].residual < w[0].residual)
    }

    /// Apply the pass criterion.  `require_monotone` additionally demands a
    /// strictly decreasing convergence table.
    pub fn finalize(&mut self, require_monotone: bool) {
        self.passed = self.residual <= self.tolerance * self.reference_scale
            && (!require_monotone || self.convergence_monotone());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<CheckReport> {
        serde_json::from_str(text).map_err(|e| crate::IdentityLabError::Serde(e.to_string()))
    }

    /// Human-readable summary table.
    pub fn human_table(&self) -> String {
        let mut out = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "check: {:<28} [{status}]", self.check_name);
        let _ = writeln!(
            out,
            "  residual {:>12.5e}   tolerance {:>9.1e}   scale {:>9.3e}",
            self.residual, self.tolerance, self.reference_scale
        );
        let _ = writeln!(
            out,
            "  band {}   working band {}   trials {}   seed {}   {} ms",
            self.band, self.working_band, self.trials, self.seed, self.wall_time_ms
        );
        for (name, [re, im]) in &self.parameters {
            let _ = writeln!(out, "  param {name:<10} = {re:+.6} {im:+.6}i");
        }
        if let Some(w) = self.weak_residual {
            let _ = writeln!(out, "  weak residual {w:.5e}");
        }
        if !self.convergence.is_empty() {
            let _ = write!(out, "  convergence:");
            for p in &self.convergence {
                let _ = write!(out, "  N={} -> {:.3e}", p.band, p.residual);
            }
            let _ = writeln!(out);
        }
        if let Some(s) = self.slope {
            let _ = writeln!(out, "  slope {s:+.3}");
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        out
    }
}
