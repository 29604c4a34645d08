//! Independent quadrature oracles for the closed forms in this crate.
//!
//! Each oracle evaluates the defining singular integral directly: graded
//! Gauss–Legendre panels away from the singular points, plus an analytic
//! expansion of the excluded tip `[0, ε)` so that nearly non-integrable
//! exponents (`Re μ` close to `−1`) are still resolved to oracle accuracy.

use crate::quad::{graded_panels, integrate_panels, QuadratureConfig};
use crate::{c_factor, Result, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Tip half-width excluded around each algebraic singularity and replaced
/// by its analytic expansion.
const TIP: f64 = 1e-5;

fn complex_pow(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

/// `∫₀^π (2 sin(θ/2))^μ cos(nθ) dθ` for `Re μ > −1`.
///
/// The tip `[0, ε]` uses `(2 sin(θ/2))^μ = θ^μ (1 − μθ²/24 + O(θ⁴))` and
/// `cos nθ = 1 − n²θ²/2 + O(θ⁴)`:
/// `∫₀^ε ≈ ε^{μ+1}/(μ+1) − (μ/24 + n²/2)·ε^{μ+3}/(μ+3)`,
/// with error `O(n⁴ ε^{μ+5})` — far below 1e-12 for the n used by oracles.
pub fn sin_power_cos_integral(mu: Complex64, n: i64, quad: &QuadratureConfig) -> Complex64 {
    let nf = n.unsigned_abs() as f64;
    let tip = complex_pow(TIP, mu + 1.0) / (mu + 1.0)
        - (mu / 24.0 + nf * nf / 2.0) * complex_pow(TIP, mu + 3.0) / (mu + 3.0);
    // Panel cap keeps several Gauss nodes per oscillation of cos(nθ).
    let cap = (PI / 8.0).min(10.0 / (nf + 1.0));
    let panels = graded_panels(TIP, PI, true, false, quad.grading, cap);
    let mut f = |theta: f64| {
        let base = 2.0 * (theta / 2.0).sin();
        complex_pow(base, mu) * (nf * theta).cos()
    };
    integrate_panels(&mut f, &panels, quad.node_count) + tip
}

/// Quadrature value of the eigenvalue `λ_n(p)` straight from the defining
/// kernel: `λ_n(p) = (1/(2C(p))) ∫₀^{2π} |1−e^{iθ}|^{−1+p} e^{inθ} dθ`.
///
/// For `p ∈ iR` the integral is Abel-regularized by the analytic tip value
/// (the oscillatory boundary term `ε^{p}/p` carries the regularization).
pub fn lambda_oracle(n: i64, p: Complex64, quad: &QuadratureConfig) -> Result<Complex64> {
    let c = c_factor(p)?;
    if c.norm() == 0.0 {
        return Err(SpecFunError::Degenerate(
            "C(p) vanishes; kernel normalization undefined".into(),
        ));
    }
    let integral = 2.0 * sin_power_cos_integral(p - 1.0, n, quad);
    Ok(integral / (2.0 * c))
}

/// Quadrature value of the Fourier coefficient of `|1−e^{iθ}|^α`
/// (normalized measure), `Re α > −1`.
pub fn circle_power_coeff_oracle(
    n: i64,
    alpha: Complex64,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    if !(alpha.re > -1.0) {
        return Err(SpecFunError::Domain(format!(
            "oracle requires Re alpha > -1, got {alpha}"
        )));
    }
    Ok(sin_power_cos_integral(alpha, n, quad) / PI)
}

/// Direct quadrature of the cyclic beta integral
/// `∫₀^{2π} ∏_s |e^{iθ} − x_s|^{e_s − 1} dθ` with `(x_s, e_s)` the three
/// unimodular points and exponents.  Requires `Re e_s ∈ (0, 1)`.
///
/// Each singular angle contributes analytic tips on both sides using the
/// exact value and first two derivatives of the smooth cofactor, so the
/// oracle stays accurate even when some `Re e_s` approaches 0.
pub fn beta_oracle(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    quad: &QuadratureConfig,
) -> Result<Complex64> {
    let pts = [(a, alpha), (b, beta), (c, gamma)];
    for (x, e) in &pts {
        if e.re <= 0.0 || e.re >= 1.0 {
            return Err(SpecFunError::Domain(format!(
                "beta oracle requires 0 < Re exponent < 1, got {e}"
            )));
        }
        if ((*x).norm() - 1.0).abs() > 1e-12 {
            return Err(SpecFunError::Domain("points must be unimodular".into()));
        }
    }
    // Singular angles, sorted.
    let mut sing: Vec<(f64, Complex64)> = pts
        .iter()
        .map(|(x, e)| (x.im.atan2(x.re).rem_euclid(2.0 * PI), *e))
        .collect();
    sing.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());
    for w in sing.windows(2) {
        if w[1].0 - w[0].0 < 10.0 * TIP {
            return Err(SpecFunError::Degenerate(
                "singular points too close for the oracle grading".into(),
            ));
        }
    }

    // Smooth evaluation of the full integrand away from singular angles.
    let angles: Vec<f64> = sing.iter().map(|s| s.0).collect();
    let exps: Vec<Complex64> = sing.iter().map(|s| s.1).collect();
    let integrand = |theta: f64| -> Complex64 {
        let mut log_acc = Complex64::new(0.0, 0.0);
        for (t, e) in angles.iter().zip(&exps) {
            let d = (theta - t).rem_euclid(2.0 * PI);
            log_acc += (*e - 1.0) * (2.0 * (d / 2.0).sin()).ln();
        }
        log_acc.exp()
    };

    let mut total = Complex64::new(0.0, 0.0);
    // Segments between consecutive singular angles (cyclically).
    for i in 0..angles.len() {
        let u = angles[i];
        let v = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + 2.0 * PI
        };
        let panels = graded_panels(u + TIP, v - TIP, true, true, quad.grading, PI / 8.0);
        let mut f = |theta: f64| integrand(theta);
        total += integrate_panels(&mut f, &panels, quad.node_count);
    }
    // Analytic tips: one per singular angle per side.
    for i in 0..angles.len() {
        let e = exps[i];
        // Cofactor m(θ) = ∏_{s' ≠ i} (2 sin(Δ_{s'}/2))^{e_{s'}−1} and its
        // log-derivatives at the singular angle.
        let mut log_m0 = Complex64::new(0.0, 0.0);
        let mut dlog = Complex64::new(0.0, 0.0);
        let mut d2log = Complex64::new(0.0, 0.0);
        for j in 0..angles.len() {
            if j == i {
                continue;
            }
            let d = (angles[i] - angles[j]).rem_euclid(2.0 * PI);
            let half = d / 2.0;
            log_m0 += (exps[j] - 1.0) * (2.0 * half.sin()).ln();
            dlog += (exps[j] - 1.0) * 0.5 * (half.cos() / half.sin());
            d2log += (exps[j] - 1.0) * (-0.25) / (half.sin() * half.sin());
        }
        let m0 = log_m0.exp();
        let m1 = m0 * dlog;
        // Second derivative of the cofactor plus the (2 sin(t/2)/t)^{e−1}
        // curvature correction −(e−1)/12.
        let m2 = m0 * (dlog * dlog + d2log - (e - 1.0) / 12.0);
        for side in [1.0f64, -1.0] {
            // tail = ∫₀^ε (m0 ± m1 t + m2 t²/2) t^{e−1} dt.
            let tail = m0 * complex_pow(TIP, e) / e
                + side * m1 * complex_pow(TIP, e + 1.0) / (e + 1.0)
                + m2 * 0.5 * complex_pow(TIP, e + 2.0) / (e + 2.0);
            total += tail;
        }
    }
    Ok(total)
}
