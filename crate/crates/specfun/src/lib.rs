//! Complex special functions for the spectral operator laboratory.
//!
//! The operators studied here (Fourier multipliers `J(alpha)`, singular
//! multiplication operators `A(alpha)`, and R-matrix words built from them)
//! reduce, coefficient by coefficient, to ratios of gamma functions.  This
//! crate provides those scalar building blocks:
//!
//! * [`log_gamma`] — complex log-gamma (Stirling series plus reflection),
//! * [`c_factor`] — `C(p) = Γ(p)·cos(πp/2)`, the normalization constant of
//!   the intertwining integral, with the reflection law `C(γ)C(1−γ) = π/2`,
//! * [`lambda_n`] — eigenvalues of the intertwiner on the Fourier basis,
//! * [`circle_power_coeff`] — Fourier coefficients of `|1−e^{iθ}|^α`,
//! * [`beta_closed_form`] — the closed form of the cyclic beta integral.
//!
//! Every closed form is backed by an independent singular-quadrature oracle
//! in [`oracle`]; the unit tests pin oracle agreement at the tolerances the
//! rest of the workspace relies on.

pub mod gamma;
pub mod oracle;
pub mod quad;

use num_complex::Complex64;
use thiserror::Error;

pub use gamma::log_gamma;
pub use quad::QuadratureConfig;

/// Errors surfaced by scalar special-function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// A gamma argument landed (within `1e-9`) on a non-positive integer.
    #[error("gamma pole at argument {0}")]
    Pole(Complex64),
    /// A parameter violated an integrability or strip condition.
    #[error("parameter outside domain: {0}")]
    Domain(String),
    /// Two points that must be distinct coincide.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// A finite result could not be represented in f64.
    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, SpecFunError>;

/// Absolute distance below which a gamma argument counts as sitting on a
/// non-positive-integer pole.  Chosen well above rounding noise so that
/// catastrophic cancellation cannot masquerade as a finite value.
pub const POLE_TOLERANCE: f64 = 1e-9;

/// True when `z` is within [`POLE_TOLERANCE`] of a non-positive integer.
pub fn near_nonpositive_integer(z: Complex64) -> bool {
    let k = z.re.round();
    k <= 0.0 && (z - Complex64::new(k, 0.0)).norm() < POLE_TOLERANCE
}

/// `C(p) = Γ(p)·cos(πp/2)`, evaluated through [`log_gamma`] so that the
/// gamma factor cannot overflow before the cosine tempers it.
///
/// Satisfies the reflection law `C(γ)·C(1−γ) = π/2` away from poles.
pub fn c_factor(p: Complex64) -> Result<Complex64> {
    let lg = log_gamma(p)?;
    let cos = (p * std::f64::consts::FRAC_PI_2).cos();
    if cos.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let value = (lg + cos.ln()).exp();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(SpecFunError::Overflow("c_factor"))
    }
}

/// Eigenvalue of the intertwiner `J(p)` on the Fourier mode `z^n`:
///
/// ```text
/// λ_n(p) = Γ(|n| + (1−p)/2) / Γ(|n| + (1+p)/2)
/// ```
///
/// This is the value produced by the defining kernel integral
/// `(1/(2C(p))) ∮ |z−u|^{−1+p} u^n du/(iu)`; the unit tests pin it against
/// the graded-quadrature oracle [`oracle::lambda_oracle`].  Key properties:
/// even in `n`, unimodular for `p ∈ iR`, and `λ_k · k^p → 1` as `k → ∞`.
pub fn lambda_n(n: i64, p: Complex64) -> Result<Complex64> {
    let m = Complex64::new(n.unsigned_abs() as f64, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let num = m + half * (1.0 - p);
    let den = m + half * (1.0 + p);
    if near_nonpositive_integer(num) {
        return Err(SpecFunError::Pole(num));
    }
    if near_nonpositive_integer(den) {
        return Err(SpecFunError::Pole(den));
    }
    Ok((log_gamma(num)? - log_gamma(den)?).exp())
}

/// `n`-th Fourier coefficient of `|1−e^{iθ}|^α` with respect to normalized
/// measure:
///
/// ```text
/// c_n(α) = (1/2π) ∫₀^{2π} |1−e^{iθ}|^α e^{−inθ} dθ
///        = (−1)^n · Γ(1+α) / (Γ(1+α/2+|n|)·Γ(1+α/2−|n|))
/// ```
///
/// Requires `Re α > −1` (integrability).  Even in `n`; when the second
/// denominator gamma sits on a pole the coefficient vanishes (e.g. `α = 2`
/// has support `|n| ≤ 1` only).  The closed form is pinned against
/// [`oracle::circle_power_coeff_oracle`] in the tests.
pub fn circle_power_coeff(n: i64, alpha: Complex64) -> Result<Complex64> {
    if !(alpha.re > -1.0) {
        return Err(SpecFunError::Domain(format!(
            "circle_power_coeff requires Re alpha > -1, got {alpha}"
        )));
    }
    let m = Complex64::new(n.unsigned_abs() as f64, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let plus = one + alpha * 0.5 + m;
    let minus = one + alpha * 0.5 - m;
    if near_nonpositive_integer(minus) || near_nonpositive_integer(plus) {
        // A pole of a denominator gamma annihilates the coefficient.
        return Ok(Complex64::new(0.0, 0.0));
    }
    let value = (log_gamma(one + alpha)? - log_gamma(plus)? - log_gamma(minus)?).exp();
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(value * sign)
}

fn check_unimodular(label: &str, z: Complex64) -> Result<()> {
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(SpecFunError::Domain(format!(
            "{label} must be unimodular, got |{label}| = {}",
            z.norm()
        )));
    }
    Ok(())
}

fn beta_power_part(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
) -> Result<Complex64> {
    let sum = alpha + beta + gamma;
    if (sum - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(SpecFunError::Domain(format!(
            "beta integral requires alpha+beta+gamma = 1, got {sum}"
        )));
    }
    for (label, e) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if e.re <= 0.0 || e.re >= 1.0 {
            return Err(SpecFunError::Domain(format!(
                "beta integral requires 0 < Re {label} < 1, got {e}"
            )));
        }
    }
    check_unimodular("a", a)?;
    check_unimodular("b", b)?;
    check_unimodular("c", c)?;
    for (label, u, v) in [("a,b", a, b), ("b,c", b, c), ("a,c", a, c)] {
        if (u - v).norm() < 1e-9 {
            return Err(SpecFunError::Degenerate(format!("points {label} coincide")));
        }
    }
    let lab = (a - b).norm().ln();
    let lbc = (b - c).norm().ln();
    let lac = (a - c).norm().ln();
    Ok((-gamma * lab - alpha * lbc - beta * lac).exp())
}

/// Closed form of the cyclic beta integral over the circle (measure
/// `dz/(iz)`, total mass `2π`): for `α+β+γ = 1`, each real part in `(0,1)`,
/// and distinct unimodular points `a, b, c`,
///
/// ```text
/// ∮ |z−a|^{α−1} |z−b|^{β−1} |z−c|^{γ−1} dz/(iz)
///   = (4/π)·C(α)C(β)C(γ)·|a−b|^{−γ}|b−c|^{−α}|a−c|^{−β}.
/// ```
pub fn beta_closed_form(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
) -> Result<Complex64> {
    let powers = beta_power_part(alpha, beta, gamma, a, b, c)?;
    let prefactor = c_factor(alpha)? * c_factor(beta)? * c_factor(gamma)?
        * (4.0 / std::f64::consts::PI);
    Ok(prefactor * powers)
}

/// Alternate prefactor form of the same closed form,
/// `2·C(α)C(β)/C(α+β) · (powers)`; agrees with [`beta_closed_form`] by the
/// reflection law `C(γ)C(1−γ) = π/2` (here `α+β = 1−γ`).
pub fn beta_closed_form_alt(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
) -> Result<Complex64> {
    let powers = beta_power_part(alpha, beta, gamma, a, b, c)?;
    let prefactor = c_factor(alpha)? * c_factor(beta)? / c_factor(alpha + beta)? * 2.0;
    Ok(prefactor * powers)
}
