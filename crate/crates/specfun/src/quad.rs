//! Gauss–Legendre panel quadrature with geometric endpoint grading.
//!
//! The oracles in this crate integrate functions with algebraic endpoint
//! singularities `t^{μ}` (`Re μ > −1`).  Panels graded geometrically towards
//! the singular point keep every panel analytic with a uniform Bernstein
//! ellipse, so a fixed Gauss rule converges exponentially per panel; the
//! remaining tip `[0, ε)` is handled analytically by the callers.

use num_complex::Complex64;

/// Endpoint-singularity strategy for panel generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grading {
    /// Uniform panels only (smooth integrands).
    None,
    /// Panels shrink geometrically towards flagged endpoints.
    GeometricEndpoints {
        /// Number of halving levels per graded endpoint.
        levels: u32,
        /// Size ratio between consecutive panels (in `(0,1)`).
        ratio: f64,
    },
}

/// Configuration of a singular-quadrature oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per panel (at least 8).
    pub node_count: usize,
    /// Endpoint grading strategy.
    pub grading: Grading,
    /// Relative accuracy the oracle is tuned to deliver.
    pub target_rel_err: f64,
}

impl QuadratureConfig {
    /// Oracle-grade default: 32-node Gauss panels, 40 halving levels,
    /// tuned for ~1e-12 relative error.
    pub fn oracle_default() -> Self {
        QuadratureConfig {
            node_count: 32,
            grading: Grading::GeometricEndpoints {
                levels: 40,
                ratio: 0.5,
            },
            target_rel_err: 1e-12,
        }
    }

    /// Validates the invariants (`node_count ≥ 8`, positive target).
    pub fn validate(&self) -> Result<(), String> {
        if self.node_count < 8 {
            return Err(format!("node_count must be >= 8, got {}", self.node_count));
        }
        if !(self.target_rel_err > 0.0) {
            return Err(format!(
                "target_rel_err must be positive, got {}",
                self.target_rel_err
            ));
        }
        if let Grading::GeometricEndpoints { ratio, .. } = self.grading {
            if !(ratio > 0.0 && ratio < 1.0) {
                return Err(format!("grading ratio must lie in (0,1), got {ratio}"));
            }
        }
        Ok(())
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::oracle_default()
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrates `f` over `[a, b]` with a single Gauss rule.
pub fn gauss_panel<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    nodes: &[f64],
    weights: &[f64],
) -> Complex64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

/// Panel decomposition of `[a, b]` with geometric grading towards the
/// flagged endpoints and a cap on interior panel length (to resolve
/// oscillatory smooth factors).
pub fn graded_panels(
    a: f64,
    b: f64,
    grade_left: bool,
    grade_right: bool,
    grading: Grading,
    max_panel: f64,
) -> Vec<(f64, f64)> {
    assert!(b > a);
    let length = b - a;
    let (levels, ratio) = match grading {
        Grading::None => (0, 0.5),
        Grading::GeometricEndpoints { levels, ratio } => (levels, ratio),
    };
    let mut cuts = vec![a, b];
    let reach = 0.5 * length.min(2.0 * max_panel);
    if grade_left && levels > 0 {
        let mut d = reach;
        for _ in 0..levels {
            d *= ratio;
            if d < 1e-300 {
                break;
            }
            cuts.push(a + d);
        }
        cuts.push(a + reach);
    }
    if grade_right && levels > 0 {
        let mut d = reach;
        for _ in 0..levels {
            d *= ratio;
            if d < 1e-300 {
                break;
            }
            cuts.push(b - d);
        }
        cuts.push(b - reach);
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-306);
    // Split any remaining long interior panel down to the cap.
    let mut panels = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo <= max_panel {
            panels.push((lo, hi));
        } else {
            let k = ((hi - lo) / max_panel).ceil() as usize;
            let h = (hi - lo) / k as f64;
            for j in 0..k {
                panels.push((lo + h * j as f64, lo + h * (j + 1) as f64));
            }
        }
    }
    panels
}

/// Integrates `f` over a panel list with a shared Gauss rule.
pub fn integrate_panels<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    panels: &[(f64, f64)],
    node_count: usize,
) -> Complex64 {
    let (nodes, weights) = gauss_legendre(node_count);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(a, b) in panels {
        acc += gauss_panel(f, a, b, &nodes, &weights);
    }
    acc
}
