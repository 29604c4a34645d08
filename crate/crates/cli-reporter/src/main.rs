//! `rlab`: run spectral identity checks, derivations, and convergence
//! studies from the command line, writing JSON reports and printing
//! human-readable summaries.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 configuration
//! error (with a machine-readable JSON object on standard error).

use clap::{Args, Parser, Subcommand};
use diagram_calculus::{search_certificate, yang_baxter_derivation, Certificate, NumericConfig};
use identity_lab::checks::{
    check_beta, check_eigen, check_j_intertwine, check_r_intertwine, check_star_triangle,
    check_unitary, check_yang_baxter, BETA_TOLERANCE, EIGEN_TOLERANCE, J_INTERTWINE_TOLERANCE,
    R_INTERTWINE_TOLERANCE, STAR_TRIANGLE_TOLERANCE, UNITARY_SINGLE_TOLERANCE,
    UNITARY_WORD_TOLERANCE, WEAK_STAR_TOLERANCE, YANG_BAXTER_STRONG_TOLERANCE,
    YANG_BAXTER_WEAK_TOLERANCE,
};
use identity_lab::{
    random_group_element, sample_sigma_point, weak_star_triangle, CheckReport,
};
use intertwiners::{r_block, Exponent, OperatorFactor, OperatorWord, SymbolValues};
use num_complex::Complex64;
use serde::Serialize;
use specfun::QuadratureConfig;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// A complex parameter, entered either as `RE+IMi` (for example `0.4i`,
/// `0.1+0.3i`, `-0.2-0.05i`, `0.5`) or as `RE,IM`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct ComplexArg(Complex64);

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

impl Serialize for ComplexArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let bad = || format!("cannot parse complex number from {text:?}; use RE+IMi or RE,IM");
        if let Some((re, im)) = t.split_once(',') {
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            return Ok(ComplexArg(Complex64::new(re, im)));
        }
        if let Some(body) = t.strip_suffix(['i', 'I']) {
            // Split off the imaginary part at the last sign that is not a
            // leading sign and not part of an exponent.
            let bytes = body.as_bytes();
            let split = (1..bytes.len()).rev().find(|&idx| {
                (bytes[idx] == b'+' || bytes[idx] == b'-')
                    && bytes[idx - 1] != b'e'
                    && bytes[idx - 1] != b'E'
            });
            let (re_part, im_part) = match split {
                Some(idx) => (&body[..idx], &body[idx..]),
                None => ("0", body),
            };
            let re: f64 = if re_part.is_empty() { 0.0 } else { re_part.parse().map_err(|_| bad())? };
            let im: f64 = match im_part {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other.parse().map_err(|_| bad())?,
            };
            return Ok(ComplexArg(Complex64::new(re, im)));
        }
        let re: f64 = t.parse().map_err(|_| bad())?;
        Ok(ComplexArg(Complex64::new(re, 0.0)))
    }
}

#[derive(Parser, Serialize)]
#[command(
    name = "rlab",
    version,
    about = "Spectral operator laboratory: certify operator identities on truncated Fourier spaces",
    propagate_version = true
)]
struct Cli {
    /// Directory for JSON reports and certificates.
    #[arg(long, global = true, env = "RLAB_OUTPUT_DIR", default_value = ".")]
    output_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// Check the circle beta integral against its closed form.
    VerifyBeta(BetaArgs),
    /// Check the diagonal eigenvalue formula against the kernel quadrature.
    VerifyEigen(EigenArgs),
    /// Check norm preservation of J, A, or R words on bump fields.
    VerifyUnitary(UnitaryArgs),
    /// Check the intertwining relation for J or for the R word.
    VerifyIntertwine(IntertwineArgs),
    /// Check the star-triangle identity on bump fields over several bands.
    VerifyStarTriangle(StarTriangleArgs),
    /// Check the weak star-triangle form on the interior strip.
    VerifyStarTriangleWeak(WeakArgs),
    /// Check the Yang-Baxter relation on bump fields over several bands.
    VerifyYangBaxter(YangBaxterArgs),
    /// Produce the built-in Yang-Baxter derivation certificate.
    DeriveYb(DeriveArgs),
    /// Search for a derivation between two serialized words.
    SearchDerivation(SearchArgs),
    /// Run a convergence study for one of the band-dependent checks.
    Convergence(ConvergenceArgs),
    /// Replay and validate a stored derivation certificate.
    VerifyCertificate(VerifyCertArgs),
}

#[derive(Args, Serialize)]
struct BetaArgs {
    /// First exponent; alpha + beta + gamma must equal 1.
    #[arg(long, default_value = "0.3333333333333333")]
    alpha: ComplexArg,
    #[arg(long, default_value = "0.3333333333333333")]
    beta: ComplexArg,
    /// Defaults to 1 - alpha - beta.
    #[arg(long)]
    gamma: Option<ComplexArg>,
    /// Angles (radians) of the three unimodular points.
    #[arg(long, default_value_t = 0.0)]
    angle_a: f64,
    #[arg(long, default_value_t = 2.0943951023931953)]
    angle_b: f64,
    #[arg(long, default_value_t = 4.1887902047863905)]
    angle_c: f64,
    #[arg(long, default_value_t = BETA_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args, Serialize)]
struct EigenArgs {
    /// Fourier mode.
    #[arg(long, default_value_t = 5)]
    n: i64,
    /// Spectral parameter.
    #[arg(long, default_value = "0.4i")]
    p: ComplexArg,
    #[arg(long, default_value_t = EIGEN_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args, Serialize)]
struct UnitaryArgs {
    /// Which operator: a single J factor, a single A factor, or the
    /// four-factor R word.
    #[arg(long, value_parser = ["j", "a", "r"], default_value = "r")]
    op: String,
    /// Exponent for single factors (purely imaginary for unitarity).
    #[arg(long, default_value = "0.3i")]
    exponent: ComplexArg,
    /// Side parameter of the R word.
    #[arg(long, default_value = "0.09i")]
    sigma: ComplexArg,
    #[arg(long, default_value = "0.07i")]
    p: ComplexArg,
    #[arg(long, default_value = "-0.05i")]
    q: ComplexArg,
    /// Comparison band.
    #[arg(long, default_value_t = 64)]
    band: usize,
    /// Band for intermediate applications; defaults to twice the band.
    #[arg(long)]
    working_band: Option<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args, Serialize)]
struct IntertwineArgs {
    /// Which relation: the diagonal operator J or the R word.
    #[arg(long, value_parser = ["j", "r"], default_value = "j")]
    which: String,
    #[arg(long, default_value = "0.4i")]
    p: ComplexArg,
    #[arg(long, default_value = "0.11i")]
    sigma: ComplexArg,
    #[arg(long, default_value = "-0.09i")]
    q: ComplexArg,
    /// Rapidity bound for the random group element.
    #[arg(long, default_value_t = 0.3)]
    t_max: f64,
    /// Seed for the group element.
    #[arg(long, default_value_t = 4)]
    element_seed: u64,
    #[arg(long, default_value_t = 64)]
    band: usize,
    #[arg(long)]
    working_band: Option<usize>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args, Serialize)]
struct StarTriangleArgs {
    #[arg(long, default_value = "0.7i")]
    alpha: ComplexArg,
    #[arg(long, default_value = "-0.2i")]
    beta: ComplexArg,
    /// Defaults to -alpha - beta.
    #[arg(long)]
    gamma: Option<ComplexArg>,
    /// Bands for the convergence table; the residual is reported at the
    /// largest.
    #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64])]
    bands: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = STAR_TRIANGLE_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args, Serialize)]
struct WeakArgs {
    #[arg(long, default_value = "0.2+0.05i")]
    alpha: ComplexArg,
    #[arg(long, default_value = "0.1-0.03i")]
    gamma: ComplexArg,
    /// Defaults to -alpha - gamma.
    #[arg(long)]
    beta: Option<ComplexArg>,
    #[arg(long, default_value_t = 64)]
    band: usize,
    #[arg(long)]
    working_band: Option<usize>,
    #[arg(long, default_value_t = 5)]
    seed: u64,
    /// Skip the independent quadruple-quadrature anchor.
    #[arg(long)]
    no_anchor: bool,
    #[arg(long, default_value_t = WEAK_STAR_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args, Serialize)]
struct YangBaxterArgs {
    /// Seed for the purely imaginary parameter point.
    #[arg(long, default_value_t = 42)]
    point_seed: u64,
    /// Magnitude range for the imaginary parts.
    #[arg(long, default_value_t = 0.02)]
    magnitude_lo: f64,
    #[arg(long, default_value_t = 0.25)]
    magnitude_hi: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [12usize, 16, 24, 32])]
    bands: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = YANG_BAXTER_STRONG_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value_t = YANG_BAXTER_WEAK_TOLERANCE)]
    weak_tolerance: f64,
}

#[derive(Args, Serialize)]
struct DeriveArgs {
    /// Cross-check every intermediate word numerically.
    #[arg(long)]
    numeric: bool,
    /// Comparison band for the numeric mode (T^3).
    #[arg(long, default_value_t = 32)]
    band: usize,
    #[arg(long, default_value_t = 11)]
    seed: u64,
    /// Seed for the purely imaginary parameter point in numeric mode.
    #[arg(long, default_value_t = 42)]
    point_seed: u64,
    /// Certificate file name inside the output directory.
    #[arg(long, default_value = "yang-baxter-certificate.json")]
    certificate: String,
    /// Per-step weak-residual gate in numeric mode.
    #[arg(long, default_value_t = YANG_BAXTER_WEAK_TOLERANCE)]
    weak_tolerance: f64,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    /// JSON file holding the start word.
    #[arg(long)]
    from: PathBuf,
    /// JSON file holding the target word.
    #[arg(long)]
    to: PathBuf,
    /// Maximum number of star-triangle moves.
    #[arg(long, default_value_t = 8)]
    depth_limit: usize,
    #[arg(long, default_value = "search-certificate.json")]
    certificate: String,
}

#[derive(Args, Serialize)]
struct ConvergenceArgs {
    /// Which band-dependent check to study.
    #[arg(long, value_parser = ["star-triangle", "yang-baxter"], default_value = "star-triangle")]
    check: String,
    #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64])]
    bands: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Seed for the Yang-Baxter parameter point.
    #[arg(long, default_value_t = 42)]
    point_seed: u64,
}

#[derive(Args, Serialize)]
struct VerifyCertArgs {
    /// Certificate file to replay.
    #[arg(long)]
    input: PathBuf,
}

/// Report envelope: the parsed configuration echoed verbatim next to the
/// check outcome.
#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    config: C,
    report: R,
}

enum Outcome {
    Passed,
    Failed,
}

fn config_error(message: String) -> ! {
    let payload = serde_json::json!({ "error": "config", "message": message });
    eprintln!("{payload}");
    std::process::exit(2);
}

fn write_report<C: Serialize, R: Serialize>(
    dir: &PathBuf,
    name: &str,
    command: &str,
    config: &C,
    report: &R,
) -> String {
    let envelope = Envelope { command, config, report };
    let text = serde_json::to_string_pretty(&envelope).expect("report serialization");
    if let Err(e) = std::fs::create_dir_all(dir) {
        config_error(format!("cannot create output directory {}: {e}", dir.display()));
    }
    let path = dir.join(name);
    if let Err(e) = std::fs::write(&path, &text) {
        config_error(format!("cannot write report {}: {e}", path.display()));
    }
    path.display().to_string()
}

fn finish(report: &CheckReport, path: &str) -> Outcome {
    print!("{}", report.human_table());
    println!("report written to {path}");
    if report.passed {
        Outcome::Passed
    } else {
        Outcome::Failed
    }
}

fn or_err<T>(result: identity_lab::Result<T>) -> T {
    match result {
        Ok(v) => v,
        Err(e) => config_error(e.to_string()),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            config_error(e.to_string());
        }
    };
    let outcome = run(cli);
    std::process::exit(match outcome {
        Outcome::Passed => 0,
        Outcome::Failed => 1,
    });
}

fn run(cli: Cli) -> Outcome {
    let dir = &cli.output_dir;
    let quad = QuadratureConfig::oracle_default();
    match &cli.command {
        Command::VerifyBeta(args) => {
            let gamma = args
                .gamma
                .map(|g| g.0)
                .unwrap_or_else(|| Complex64::new(1.0, 0.0) - args.alpha.0 - args.beta.0);
            let unit = |t: f64| Complex64::from_polar(1.0, t);
            let report = or_err(check_beta(
                args.alpha.0,
                args.beta.0,
                gamma,
                unit(args.angle_a),
                unit(args.angle_b),
                unit(args.angle_c),
                &quad,
                args.tolerance,
            ));
            let path = write_report(dir, "verify-beta.json", "verify-beta", args, &report);
            finish(&report, &path)
        }
        Command::VerifyEigen(args) => {
            let report = or_err(check_eigen(args.n, args.p.0, &quad, args.tolerance));
            let path = write_report(dir, "verify-eigen.json", "verify-eigen", args, &report);
            finish(&report, &path)
        }
        Command::VerifyUnitary(args) => {
            let values = SymbolValues::zero();
            let working = args.working_band.unwrap_or(2 * args.band);
            let (word, default_tol) = match args.op.as_str() {
                "j" => (
                    OperatorWord::new(2, vec![OperatorFactor::j(1, Exponent::Const(args.exponent.0))]),
                    UNITARY_SINGLE_TOLERANCE,
                ),
                "a" => (
                    OperatorWord::new(
                        2,
                        vec![OperatorFactor::a(1, 2, Exponent::Const(args.exponent.0))],
                    ),
                    UNITARY_SINGLE_TOLERANCE,
                ),
                _ => (
                    r_block(2, 1, 2, args.sigma.0, args.p.0, args.q.0),
                    UNITARY_WORD_TOLERANCE,
                ),
            };
            let word = word.unwrap_or_else(|e| config_error(e.to_string()));
            let report = or_err(check_unitary(
                &word,
                &values,
                args.band,
                working,
                args.trials,
                args.seed,
                args.tolerance.unwrap_or(default_tol),
            ));
            let path = write_report(dir, "verify-unitary.json", "verify-unitary", args, &report);
            finish(&report, &path)
        }
        Command::VerifyIntertwine(args) => {
            let g = random_group_element(args.element_seed, 0.05, args.t_max.max(0.06));
            let report = match args.which.as_str() {
                "j" => or_err(check_j_intertwine(
                    args.p.0,
                    &g,
                    args.band,
                    args.trials,
                    args.seed,
                    args.tolerance.unwrap_or(J_INTERTWINE_TOLERANCE),
                )),
                _ => or_err(check_r_intertwine(
                    args.sigma.0,
                    args.p.0,
                    args.q.0,
                    &g,
                    args.band,
                    args.working_band.unwrap_or(2 * args.band),
                    args.trials,
                    args.seed,
                    args.tolerance.unwrap_or(R_INTERTWINE_TOLERANCE),
                )),
            };
            let path =
                write_report(dir, "verify-intertwine.json", "verify-intertwine", args, &report);
            finish(&report, &path)
        }
        Command::VerifyStarTriangle(args) => {
            let gamma = args
                .gamma
                .map(|g| g.0)
                .unwrap_or_else(|| -args.alpha.0 - args.beta.0);
            let report = or_err(check_star_triangle(
                args.alpha.0,
                args.beta.0,
                gamma,
                &args.bands,
                args.trials,
                args.seed,
                args.tolerance,
            ));
            let path = write_report(
                dir,
                "verify-star-triangle.json",
                "verify-star-triangle",
                args,
                &report,
            );
            finish(&report, &path)
        }
        Command::VerifyStarTriangleWeak(args) => {
            let beta = args
                .beta
                .map(|b| b.0)
                .unwrap_or_else(|| -args.alpha.0 - args.gamma.0);
            let report = or_err(weak_star_triangle(
                args.alpha.0,
                beta,
                args.gamma.0,
                args.band,
                args.working_band.unwrap_or(2 * args.band),
                args.seed,
                !args.no_anchor,
                args.tolerance,
            ));
            let path = write_report(
                dir,
                "verify-star-triangle-weak.json",
                "verify-star-triangle-weak",
                args,
                &report,
            );
            finish(&report, &path)
        }
        Command::VerifyYangBaxter(args) => {
            let point = sample_sigma_point(args.point_seed, args.magnitude_lo, args.magnitude_hi);
            let report = or_err(check_yang_baxter(
                &point,
                &args.bands,
                args.trials,
                args.seed,
                args.tolerance,
                args.weak_tolerance,
            ));
            let path = write_report(
                dir,
                "verify-yang-baxter.json",
                "verify-yang-baxter",
                args,
                &report,
            );
            finish(&report, &path)
        }
        Command::DeriveYb(args) => {
            let numeric = args.numeric.then(|| {
                let point = sample_sigma_point(args.point_seed, 0.02, 0.25);
                NumericConfig::new(args.band, args.seed, &point.to_symbol_values())
            });
            let cert = yang_baxter_derivation(numeric.as_ref())
                .unwrap_or_else(|e| config_error(e.to_string()));
            let path = write_certificate(dir, &args.certificate, &cert);
            let mut passed = cert.verify().is_ok();
            println!(
                "yang-baxter derivation: {} moves, {} star-triangle; certificate written to {path}",
                cert.steps.len(),
                cert.star_triangle_count()
            );
            if let Some(numeric) = &cert.numeric {
                println!(
                    "numeric mode at band {}: max strong residual {:.3e}, max weak residual {:.3e}",
                    numeric.config.band,
                    numeric.max_strong_residual,
                    numeric.max_weak_residual
                );
                if numeric.max_weak_residual > args.weak_tolerance {
                    println!(
                        "weak residual exceeded the gate {:.1e}",
                        args.weak_tolerance
                    );
                    passed = false;
                }
            }
            if passed {
                Outcome::Passed
            } else {
                Outcome::Failed
            }
        }
        Command::SearchDerivation(args) => {
            let read_word = |path: &PathBuf| -> OperatorWord {
                let text = std::fs::read_to_string(path).unwrap_or_else(|e| {
                    config_error(format!("cannot read {}: {e}", path.display()))
                });
                OperatorWord::from_json(&text).unwrap_or_else(|e| config_error(e.to_string()))
            };
            let from = read_word(&args.from);
            let to = read_word(&args.to);
            let found = search_certificate("search-derivation", &from, &to, args.depth_limit, None)
                .unwrap_or_else(|e| config_error(e.to_string()));
            match found {
                Some(cert) => {
                    let path = write_certificate(dir, &args.certificate, &cert);
                    println!(
                        "derivation found: {} moves, {} star-triangle; certificate written to {path}",
                        cert.steps.len(),
                        cert.star_triangle_count()
                    );
                    Outcome::Passed
                }
                None => {
                    println!(
                        "no derivation within {} star-triangle moves",
                        args.depth_limit
                    );
                    Outcome::Failed
                }
            }
        }
        Command::Convergence(args) => {
            let report = match args.check.as_str() {
                "star-triangle" => or_err(check_star_triangle(
                    Complex64::new(0.0, 0.7),
                    Complex64::new(0.0, -0.2),
                    Complex64::new(0.0, -0.5),
                    &args.bands,
                    args.trials,
                    args.seed,
                    STAR_TRIANGLE_TOLERANCE,
                )),
                _ => {
                    let point = sample_sigma_point(args.point_seed, 0.02, 0.25);
                    or_err(check_yang_baxter(
                        &point,
                        &args.bands,
                        args.trials,
                        args.seed,
                        YANG_BAXTER_STRONG_TOLERANCE,
                        YANG_BAXTER_WEAK_TOLERANCE,
                    ))
                }
            };
            let path = write_report(dir, "convergence.json", "convergence", args, &report);
            let outcome = finish(&report, &path);
            if !report.convergence_monotone() {
                println!("convergence table is not monotone");
                return Outcome::Failed;
            }
            outcome
        }
        Command::VerifyCertificate(args) => {
            let text = std::fs::read_to_string(&args.input).unwrap_or_else(|e| {
                config_error(format!("cannot read {}: {e}", args.input.display()))
            });
            let cert = Certificate::from_json(&text).unwrap_or_else(|e| config_error(e.to_string()));
            match cert.verify() {
                Ok(end) => {
                    println!(
                        "certificate {} valid: {} moves, end word of {} factors",
                        cert.name,
                        cert.steps.len(),
                        end.len()
                    );
                    Outcome::Passed
                }
                Err(e) => {
                    println!("certificate rejected: {e}");
                    Outcome::Failed
                }
            }
        }
    }
}

fn write_certificate(dir: &PathBuf, name: &str, cert: &Certificate) -> String {
    if let Err(e) = std::fs::create_dir_all(dir) {
        config_error(format!("cannot create output directory {}: {e}", dir.display()));
    }
    let path = dir.join(name);
    if let Err(e) = std::fs::write(&path, cert.to_json()) {
        config_error(format!("cannot write certificate {}: {e}", path.display()));
    }
    path.display().to_string()
}
