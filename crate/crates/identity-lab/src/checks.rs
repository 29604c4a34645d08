//! The identity checks: each runs a residual computation at one or more
//! bands and returns a [`CheckReport`].

use crate::report::{CheckReport, ConvergencePoint};
use crate::{DomainTag, IdentityLabError, ParameterPoint, Result};
use intertwiners::{
    apply_word, r_block, yang_baxter_words, Exponent, MoebiusElement, OperatorFactor,
    OperatorWord, SymbolValues,
};
use num_complex::Complex64;
use specfun::oracle::{beta_oracle, lambda_oracle};
use specfun::{beta_closed_form, beta_closed_form_alt, lambda_n, QuadratureConfig};
use std::time::Instant;
use torus_spectral::{inner_product, random_diagonal_bump, SpectralField};

/// Default tolerances, pinned where the acceptance criteria pin them.
pub const BETA_TOLERANCE: f64 = 1e-8;
pub const EIGEN_TOLERANCE: f64 = 1e-6;
pub const UNITARY_SINGLE_TOLERANCE: f64 = 1e-6;
pub const UNITARY_WORD_TOLERANCE: f64 = 1e-5;
pub const J_INTERTWINE_TOLERANCE: f64 = 1e-5;
pub const R_INTERTWINE_TOLERANCE: f64 = 1e-4;
pub const STAR_TRIANGLE_TOLERANCE: f64 = 1e-4;
pub const WEAK_STAR_TOLERANCE: f64 = 1e-4;
pub const ANCHOR_TOLERANCE: f64 = 1e-2;
pub const YANG_BAXTER_STRONG_TOLERANCE: f64 = 1e-2;
pub const YANG_BAXTER_WEAK_TOLERANCE: f64 = 1e-3;

/// Default vanishing-neighborhood half-width for bump test fields.
pub const BUMP_GAP: f64 = 0.5;

fn all_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for k in 1..=m {
        for l in (k + 1)..=m {
            pairs.push((k, l));
        }
    }
    pairs
}

/// Deterministic test field: a diagonal-vanishing bump for `m ≥ 2`, a
/// smooth random band-limited field on `T¹`.
pub fn test_field(m: usize, band: usize, seed: u64) -> Result<SpectralField> {
    if m == 1 {
        Ok(torus_spectral::random_band_limited(1, band, 0.3, seed))
    } else {
        Ok(random_diagonal_bump(m, band, &all_pairs(m), BUMP_GAP, seed)?)
    }
}

/// Embed to the working band, apply, restrict back to the comparison band.
fn apply_working(
    field: &SpectralField,
    word: &OperatorWord,
    values: &SymbolValues,
    working_band: usize,
) -> Result<SpectralField> {
    let wide = field.embed(working_band.max(field.band()));
    Ok(apply_word(&wide, word, values)?.restrict(field.band()))
}

/// Star-triangle words on `T²` (factor 0 acts first):
/// left `J₁(α)·A₁₂(β)·J₁(γ)`, right `A₁₂(−γ)·J₁(−β)·A₁₂(−α)`.
pub fn star_triangle_words(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
) -> Result<(OperatorWord, OperatorWord)> {
    let left = OperatorWord::new(
        2,
        vec![
            OperatorFactor::j(1, Exponent::Const(gamma)),
            OperatorFactor::a(1, 2, Exponent::Const(beta)),
            OperatorFactor::j(1, Exponent::Const(alpha)),
        ],
    )?;
    let right = OperatorWord::new(
        2,
        vec![
            OperatorFactor::a(1, 2, Exponent::Const(-alpha)),
            OperatorFactor::j(1, Exponent::Const(-beta)),
            OperatorFactor::a(1, 2, Exponent::Const(-gamma)),
        ],
    )?;
    Ok((left, right))
}

/// Beta integral: quadrature vs closed form, plus agreement of the two
/// closed-form constants.
pub fn check_beta(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    quad: &QuadratureConfig,
    tolerance: f64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new("beta", tolerance);
    for (name, v) in [
        ("alpha", alpha),
        ("beta", beta),
        ("gamma", gamma),
        ("a", a),
        ("b", b),
        ("c", c),
    ] {
        report.push_param(name, v);
    }
    let closed = beta_closed_form(alpha, beta, gamma, a, b, c)?;
    let alt = beta_closed_form_alt(alpha, beta, gamma, a, b, c)?;
    let quadrature = beta_oracle(alpha, beta, gamma, a, b, c, quad)?;
    report.residual = (quadrature - closed).norm() / closed.norm();
    let form_gap = (closed - alt).norm() / closed.norm();
    report
        .notes
        .push(format!("closed-form constants agree to {form_gap:.3e}"));
    if form_gap > 1e-12 {
        report
            .notes
            .push("closed-form constants disagree beyond 1e-12".into());
        report.residual = report.residual.max(form_gap);
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(false);
    Ok(report)
}

/// Eigenvalue formula: diagonal action vs `λ_n`, and closed form vs the
/// kernel-quadrature oracle.
pub fn check_eigen(
    n: i64,
    p: Complex64,
    quad: &QuadratureConfig,
    tolerance: f64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new("eigen", tolerance);
    report.push_real_param("n", n as f64);
    report.push_param("p", p);

    let lam = lambda_n(n, p)?;
    // Diagonal action on the single mode n (same code path as apply_j's
    // eigenvalue table; must agree to floating error exactly).
    let band = n.unsigned_abs() as usize + 2;
    let mut mode = SpectralField::zeros(1, band);
    mode.set(&[n], Complex64::new(1.0, 0.0));
    let acted = intertwiners::apply_j(&mode, 1, p)?;
    let mut scaled = mode.clone();
    scaled.scale(lam);
    let apply_gap = acted.sub(&scaled)?.norm() / lam.norm();
    report.band = band;
    report.working_band = band;

    let oracle = lambda_oracle(n, p, quad)?;
    let oracle_gap = (lam - oracle).norm() / lam.norm();
    let evenness = (lam - lambda_n(-n, p)?).norm() / lam.norm();
    report.residual = apply_gap.max(oracle_gap);
    report.notes.push(format!(
        "apply gap {apply_gap:.3e}; oracle gap {oracle_gap:.3e}; evenness pairing {evenness:.3e}"
    ));
    if evenness > 1e-12 {
        report.residual = report.residual.max(evenness);
        report.notes.push("evenness pairing exceeded 1e-12".into());
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(false);
    Ok(report)
}

/// Norm preservation of a word with purely imaginary exponents on test
/// fields: `max |‖wF‖ − ‖F‖| / ‖F‖` over trials.
pub fn check_unitary(
    word: &OperatorWord,
    values: &SymbolValues,
    band: usize,
    working_band: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new("unitary", tolerance);
    report.band = band;
    report.working_band = working_band;
    report.trials = trials;
    report.seed = seed;
    let mut worst = 0.0f64;
    for t in 0..trials {
        let field = test_field(word.m(), band, seed + t as u64)?;
        let wide = field.embed(working_band.max(band));
        let out = apply_word(&wide, word, values)?;
        worst = worst.max((out.norm() - field.norm()).abs() / field.norm());
    }
    report.residual = worst;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(false);
    Ok(report)
}

/// Intertwining of `J` on `T¹`: `T_p(g)·J(p) = J(p)·T_{−p}(g)`.
pub fn check_j_intertwine(
    p: Complex64,
    g: &MoebiusElement,
    band: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new("j-intertwine", tolerance);
    report.push_param("p", p);
    report.push_param("g.a", g.a());
    report.push_param("g.b", g.b());
    report.band = band;
    report.working_band = band;
    report.trials = trials;
    report.seed = seed;
    let mut worst = 0.0f64;
    for t in 0..trials {
        let field = test_field(1, band, seed + t as u64)?;
        let left = intertwiners::apply_t(&intertwiners::apply_j(&field, 1, p)?, 1, g, p)?;
        let right = intertwiners::apply_j(&intertwiners::apply_t(&field, 1, g, -p)?, 1, p)?;
        worst = worst.max(left.sub(&right)?.norm() / field.norm());
    }
    report.residual = worst;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(false);
    Ok(report)
}

/// Intertwining of `Ř` on `T²`:
/// `Ř(σ)·(T_p ⊗ T_q)(g) = (T_q ⊗ T_p)(g)·Ř(σ)` on bump fields, measured on
/// the inner band after applying at the working band.
pub fn check_r_intertwine(
    sigma: Complex64,
    p: Complex64,
    q: Complex64,
    g: &MoebiusElement,
    band: usize,
    working_band: usize,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new("r-intertwine", tolerance);
    report.push_param("sigma", sigma);
    report.push_param("p", p);
    report.push_param("q", q);
    report.push_param("g.a", g.a());
    report.push_param("g.b", g.b());
    report.band = band;
    report.working_band = working_band;
    report.trials = trials;
    report.seed = seed;

    let r_word = r_block(2, 1, 2, sigma, p, q)?;
    let t_pq = OperatorWord::new(
        2,
        vec![OperatorFactor::t(1, *g, p), OperatorFactor::t(2, *g, q)],
    )?;
    let t_qp = OperatorWord::new(
        2,
        vec![OperatorFactor::t(1, *g, q), OperatorFactor::t(2, *g, p)],
    )?;
    let left_word = t_pq.then(&r_word)?; // Ř ∘ (T_p ⊗ T_q)
    let right_word = r_word.then(&t_qp)?; // (T_q ⊗ T_p) ∘ Ř
    let values = SymbolValues::zero();

    let mut worst = 0.0f64;
    for t in 0..trials {
        let field = test_field(2, band, seed + t as u64)?;
        let left = apply_working(&field, &left_word, &values, working_band)?;
        let right = apply_working(&field, &right_word, &values, working_band)?;
        worst = worst.max(left.sub(&right)?.norm() / field.norm());
    }
    report.residual = worst;
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(false);
    Ok(report)
}

/// Strong star-triangle identity on bump fields, with a convergence table
/// over `bands` (residual reported at the largest band; working band is
/// twice the comparison band).
pub fn check_star_triangle(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    bands: &[usize],
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<CheckReport> {
    if (alpha + beta + gamma).norm() > 1e-12 {
        return Err(IdentityLabError::Domain(
            "star-triangle requires α + β + γ = 0".into(),
        ));
    }
    let start = Instant::now();
    let mut report = CheckReport::new("star-triangle", tolerance);
    report.push_param("alpha", alpha);
    report.push_param("beta", beta);
    report.push_param("gamma", gamma);
    report.trials = trials;
    report.seed = seed;
    let (left_word, right_word) = star_triangle_words(alpha, beta, gamma)?;
    let values = SymbolValues::zero();

    let mut table = Vec::new();
    for &band in bands {
        let mut worst = 0.0f64;
        for t in 0..trials {
            let psi = test_field(2, band, seed + t as u64)?;
            let left = apply_working(&psi, &left_word, &values, 2 * band)?;
            let right = apply_working(&psi, &right_word, &values, 2 * band)?;
            worst = worst.max(left.sub(&right)?.norm() / psi.norm());
        }
        table.push(ConvergencePoint { band, residual: worst });
    }
    report.band = *bands.last().expect("at least one band");
    report.working_band = 2 * report.band;
    report.residual = table.last().unwrap().residual;
    report.set_convergence(table);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(bands.len() > 1);
    Ok(report)
}

/// Yang–Baxter relation on `T³`: strong residual on bump fields restricted
/// to the inner band, weak residual against independent bump fields, with a
/// convergence table over `bands`.
pub fn check_yang_baxter(
    point: &ParameterPoint,
    bands: &[usize],
    trials: usize,
    seed: u64,
    tolerance_strong: f64,
    tolerance_weak: f64,
) -> Result<CheckReport> {
    if point.domain_tag != DomainTag::SigmaUnitary {
        return Err(IdentityLabError::Domain(
            "Yang-Baxter check runs on the unitary locus".into(),
        ));
    }
    point.validate()?;
    let start = Instant::now();
    let mut report = CheckReport::new("yang-baxter", tolerance_strong);
    for (name, v) in point.named() {
        report.push_param(name, v);
    }
    report.trials = trials;
    report.seed = seed;
    let values = point.to_symbol_values();
    let (lhs, rhs) = yang_baxter_words();

    let mut table = Vec::new();
    let mut weak_worst = 0.0f64;
    for &band in bands {
        let mut worst = 0.0f64;
        for t in 0..trials {
            let v = test_field(3, band, seed + t as u64)?;
            let w = test_field(3, band, seed + 1000 + t as u64)?;
            let left = apply_working(&v, &lhs, &values, 2 * band)?;
            let right = apply_working(&v, &rhs, &values, 2 * band)?;
            let diff = left.sub(&right)?;
            worst = worst.max(diff.norm() / v.norm());
            if band == *bands.last().unwrap() {
                let pairing = inner_product(&diff, &w)?.norm() / (v.norm() * w.norm());
                weak_worst = weak_worst.max(pairing);
            }
        }
        table.push(ConvergencePoint { band, residual: worst });
    }
    report.band = *bands.last().expect("at least one band");
    report.working_band = 2 * report.band;
    report.residual = table.last().unwrap().residual;
    report.weak_residual = Some(weak_worst);
    report.set_convergence(table);
    report.notes.push(format!(
        "weak tolerance {tolerance_weak:.1e}; weak residual {weak_worst:.3e}"
    ));
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(bands.len() > 1);
    if weak_worst > tolerance_weak {
        report.passed = false;
        report.notes.push("weak residual exceeded tolerance".into());
    }
    Ok(report)
}

/// Run a named residual computation over several bands and certify
/// monotone decrease plus the final tolerance.
pub fn convergence_study<F>(
    check_name: &str,
    bands: &[usize],
    tolerance: f64,
    mut runner: F,
) -> Result<CheckReport>
where
    F: FnMut(usize) -> Result<f64>,
{
    let start = Instant::now();
    let mut report = CheckReport::new(check_name, tolerance);
    let mut table = Vec::new();
    for &band in bands {
        table.push(ConvergencePoint { band, residual: runner(band)? });
    }
    report.band = *bands.last().expect("at least one band");
    report.working_band = 2 * report.band;
    report.residual = table.last().unwrap().residual;
    report.set_convergence(table);
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report.finalize(bands.len() > 1);
    Ok(report)
}
