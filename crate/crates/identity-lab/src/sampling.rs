//! Deterministic parameter and group-element sampling for the checks.

use crate::{DomainTag, ParameterPoint};
use intertwiners::MoebiusElement;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn imaginary(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Complex64::new(0.0, sign * rng.gen_range(lo..hi))
}

/// A point on the unitary locus with all five parameters purely imaginary,
/// magnitudes drawn from `[lo, hi)`.
pub fn sample_sigma_point(seed: u64, lo: f64, hi: f64) -> ParameterPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ParameterPoint {
        p: imaginary(&mut rng, lo, hi),
        q: imaginary(&mut rng, lo, hi),
        r: imaginary(&mut rng, lo, hi),
        theta: imaginary(&mut rng, lo, hi),
        tau: imaginary(&mut rng, lo, hi),
        domain_tag: DomainTag::SigmaUnitary,
    }
}

/// A purely imaginary star-triangle triple `(α, β, γ)` with `α+β+γ = 0`,
/// the two free magnitudes drawn from `[lo, hi)`.
pub fn sample_sigma_triple(seed: u64, lo: f64, hi: f64) -> (Complex64, Complex64, Complex64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = imaginary(&mut rng, lo, hi);
    let beta = imaginary(&mut rng, lo, hi);
    (alpha, beta, -alpha - beta)
}

/// A triple in the interior strip `Ξ°`: `Re α > 0`, `−1/2 < Re β < 0`,
/// `Re γ > 0`, `α + β + γ = 0`, with small imaginary offsets.
pub fn sample_xi_triple(seed: u64) -> (Complex64, Complex64, Complex64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = Complex64::new(rng.gen_range(0.06..0.2), rng.gen_range(-0.1..0.1));
    let gamma = Complex64::new(rng.gen_range(0.06..0.2), rng.gen_range(-0.1..0.1));
    (alpha, -alpha - gamma, gamma)
}

/// A group element `a = cosh t·e^{iφ}`, `b = sinh t·e^{iψ}` with
/// `t ∈ [t_lo, t_hi)` and uniform phases.
pub fn random_group_element(seed: u64, t_lo: f64, t_hi: f64) -> MoebiusElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.gen_range(t_lo..t_hi);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    let psi = rng.gen_range(0.0..std::f64::consts::TAU);
    MoebiusElement::from_angles(t, phi, psi)
}
