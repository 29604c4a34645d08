//! Numerical application of operator words to truncated Fourier fields.
//!
//! `J` is diagonal in the Fourier basis; `A` is a one-dimensional
//! convolution along the antidiagonals of the `(k, l)` index plane (the sum
//! `n_k + n_l` is invariant); `T` is realized by oversampled grid evaluation
//! at Möbius-mapped nodes followed by re-analysis along the acted axis.

use crate::expr::SymbolValues;
use crate::moebius::MoebiusElement;
use crate::word::{OperatorFactor, OperatorWord};
use crate::Result;
use num_complex::Complex64;
use specfun::{circle_power_coeff, lambda_n};
use torus_spectral::SpectralField;

/// Oversampling factor for the grid realization of `T`.
pub const T_OVERSAMPLE: usize = 4;

/// Band-edge energy fraction above which a word application is flagged as
/// potentially aliased.
pub const ALIAS_WARNING_THRESHOLD: f64 = 1e-4;

/// Diagnostics accumulated while applying a word.
#[derive(Clone, Debug, Default)]
pub struct ApplyStats {
    /// Total squared norm pushed outside the band by `A` factors and
    /// discarded by re-truncation.
    pub discarded_energy: f64,
    /// Largest band-edge energy fraction observed after any factor.
    pub max_band_edge_fraction: f64,
    /// Human-readable warnings for factors whose output concentrated more
    /// than [`ALIAS_WARNING_THRESHOLD`] of its energy on the band edge.
    pub warnings: Vec<String>,
}

/// Apply the diagonal intertwiner `J` on `axis` (1-based) with spectral
/// parameter `p`: each mode `n` is scaled by `λ_{n_axis}(p)`.
pub fn apply_j(field: &SpectralField, axis: usize, p: Complex64) -> Result<SpectralField> {
    let band = field.band() as i64;
    let mut eigen = Vec::with_capacity(band as usize + 1);
    for n in 0..=band {
        eigen.push(lambda_n(n, p)?);
    }
    let m = field.dim();
    let side = field.side();
    let stride = side.pow((m - axis) as u32);
    let mut out = field.clone();
    for (idx, value) in out.coeffs_mut().iter_mut().enumerate() {
        let n_axis = (idx / stride % side) as i64 - band;
        *value *= eigen[n_axis.unsigned_abs() as usize];
    }
    Ok(out)
}

/// Apply multiplication by `|z_k − z_l|^alpha` (axes 1-based).  The full
/// convolution is computed along each antidiagonal of the `(k, l)` plane and
/// re-truncated to the field's band.  Returns the result together with the
/// squared norm discarded by the truncation.
pub fn apply_a(
    field: &SpectralField,
    k: usize,
    l: usize,
    alpha: Complex64,
    track_discard: bool,
) -> Result<(SpectralField, f64)> {
    let band = field.band() as i64;
    let m = field.dim();
    let side = field.side();
    // Fourier coefficients of the multiplier along the difference angle.
    let mut kernel = Vec::with_capacity(4 * band as usize + 1);
    for s in -2 * band..=2 * band {
        kernel.push(circle_power_coeff(s, alpha)?);
    }
    let kernel_at = |s: i64| kernel[(s + 2 * band) as usize];

    let stride_k = side.pow((m - k) as u32);
    let stride_l = side.pow((m - l) as u32);
    let mut out = SpectralField::zeros(m, band as usize);
    let mut discarded = 0.0f64;

    // Enumerate base offsets with the k and l indices fixed at their
    // minimum, then sweep each (k, l) plane by antidiagonals.
    let plane = side * side;
    let total = side.pow(m as u32);
    let mut base_offsets = Vec::with_capacity(total / plane);
    for idx in 0..total {
        if idx / stride_k % side == 0 && idx / stride_l % side == 0 {
            base_offsets.push(idx);
        }
    }

    let coeffs = field.coeffs();
    let out_coeffs = out.coeffs_mut();
    let mut line = vec![Complex64::new(0.0, 0.0); side];
    for &base in &base_offsets {
        for d in -2 * band..=2 * band {
            // Input antidiagonal n_k + n_l = d; n_k ranges over i ∈ [lo, hi].
            let lo = (-band).max(d - band);
            let hi = band.min(d + band);
            if lo > hi {
                continue;
            }
            for (slot, i) in line.iter_mut().zip(lo..=hi) {
                let off = base
                    + ((i + band) as usize) * stride_k
                    + ((d - i + band) as usize) * stride_l;
                *slot = coeffs[off];
            }
            let len = (hi - lo + 1) as usize;
            // In-band outputs share the same index range [lo, hi].
            for a in lo..=hi {
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, i) in line[..len].iter().zip(lo..=hi) {
                    acc += kernel_at(a - i) * x;
                }
                let off = base
                    + ((a + band) as usize) * stride_k
                    + ((d - a + band) as usize) * stride_l;
                out_coeffs[off] = acc;
            }
            if track_discard {
                // Out-of-band outputs: a ∈ [lo − 2N, hi + 2N] \ [lo, hi].
                for a in (lo - 2 * band..lo).chain(hi + 1..=hi + 2 * band) {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (x, i) in line[..len].iter().zip(lo..=hi) {
                        let s = a - i;
                        if s.abs() <= 2 * band {
                            acc += kernel_at(s) * x;
                        }
                    }
                    discarded += acc.norm_sqr();
                }
            }
        }
    }
    Ok((out, discarded))
}

/// Apply the group action `T(element)` with spectral parameter `power` on
/// `axis` (1-based): `f ↦ |a + z·b̄|^{−1+power} · f((b + z·ā)/(a + z·b̄))`
/// in the acted variable, realized on an oversampled grid and re-analyzed
/// back to the field's band.
pub fn apply_t(
    field: &SpectralField,
    axis: usize,
    element: &MoebiusElement,
    power: Complex64,
) -> Result<SpectralField> {
    let band = field.band() as i64;
    let side = field.side();
    let points = T_OVERSAMPLE * side;
    // One-axis transfer matrix M[n', n] = (1/P) Σ_j e^{−i n' θ_j} w_j u_j^n,
    // where u_j is the Möbius image of the node z_j and w_j the multiplier.
    let mut matrix = vec![Complex64::new(0.0, 0.0); side * side];
    let minus_one_plus_p = power - 1.0;
    for j in 0..points {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / points as f64;
        let z = Complex64::from_polar(1.0, theta);
        let u = element.map_point(z);
        let base = element.multiplier_base(z);
        let weight = (minus_one_plus_p * base.norm().ln()).exp() / points as f64;
        // Powers u^n for n = −N..N, built incrementally from u^{−N}.
        let mut u_pow = (0..band).fold(Complex64::new(1.0, 0.0), |acc, _| acc * u.conj());
        let e_step = (-Complex64::i() * theta).exp();
        for col in 0..side {
            let value = weight * u_pow;
            // e^{−i n' θ_j} built incrementally over rows.
            let mut phase = (Complex64::i() * (band as f64) * theta).exp();
            for row in 0..side {
                matrix[row * side + col] += phase * value;
                phase *= e_step;
            }
            u_pow *= u;
        }
    }
    contract_axis(field, axis, &matrix)
}

/// Multiply the field by a square matrix along one axis (1-based).
fn contract_axis(field: &SpectralField, axis: usize, matrix: &[Complex64]) -> Result<SpectralField> {
    let m = field.dim();
    let side = field.side();
    let stride = side.pow((m - axis) as u32);
    let total = side.pow(m as u32);
    let mut out = SpectralField::zeros(m, field.band());
    let coeffs = field.coeffs();
    let out_coeffs = out.coeffs_mut();
    let mut line = vec![Complex64::new(0.0, 0.0); side];
    let mut base = 0;
    while base < total {
        for inner in 0..stride {
            let start = base + inner;
            for (slot, i) in line.iter_mut().enumerate() {
                *i = coeffs[start + slot * stride];
            }
            for row in 0..side {
                let mut acc = Complex64::new(0.0, 0.0);
                let mrow = &matrix[row * side..(row + 1) * side];
                for (mv, xv) in mrow.iter().zip(line.iter()) {
                    acc += mv * xv;
                }
                out_coeffs[start + row * stride] = acc;
            }
        }
        base += stride * side;
    }
    Ok(out)
}

/// Apply an operator word (factor 0 first), resolving symbolic exponents at
/// `values`.
pub fn apply_word(
    field: &SpectralField,
    word: &OperatorWord,
    values: &SymbolValues,
) -> Result<SpectralField> {
    let mut current = field.clone();
    for factor in word.factors() {
        current = match factor {
            OperatorFactor::J { axis, exponent } => {
                apply_j(&current, *axis, exponent.eval(values))?
            }
            OperatorFactor::A { k, l, exponent } => {
                apply_a(&current, *k, *l, exponent.eval(values), false)?.0
            }
            OperatorFactor::T { axis, element, power } => {
                apply_t(&current, *axis, element, *power)?
            }
        };
    }
    Ok(current)
}

/// As [`apply_word`], additionally reporting truncation diagnostics.
pub fn apply_word_with_stats(
    field: &SpectralField,
    word: &OperatorWord,
    values: &SymbolValues,
) -> Result<(SpectralField, ApplyStats)> {
    let mut current = field.clone();
    let mut stats = ApplyStats::default();
    for (step, factor) in word.factors().iter().enumerate() {
        current = match factor {
            OperatorFactor::J { axis, exponent } => {
                apply_j(&current, *axis, exponent.eval(values))?
            }
            OperatorFactor::A { k, l, exponent } => {
                let (next, lost) = apply_a(&current, *k, *l, exponent.eval(values), true)?;
                stats.discarded_energy += lost;
                next
            }
            OperatorFactor::T { axis, element, power } => {
                apply_t(&current, *axis, element, *power)?
            }
        };
        let edge = current.band_edge_fraction();
        stats.max_band_edge_fraction = stats.max_band_edge_fraction.max(edge);
        if edge > ALIAS_WARNING_THRESHOLD {
            stats.warnings.push(format!(
                "factor {step}: band-edge energy fraction {edge:.3e} exceeds {ALIAS_WARNING_THRESHOLD:.1e}"
            ));
        }
    }
    Ok((current, stats))
}
