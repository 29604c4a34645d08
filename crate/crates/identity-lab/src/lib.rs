//! Executable certification of operator identities on truncated Fourier
//! spaces: beta integral, eigenvalue formula, unitarity, intertwining,
//! star-triangle (strong and weak forms), and Yang–Baxter, each as a
//! residual plus convergence study with structured, serializable reports.

pub mod checks;
pub mod report;
pub mod sampling;
pub mod weak;

pub use checks::{
    check_beta, check_eigen, check_j_intertwine, check_r_intertwine, check_star_triangle,
    check_unitary, check_yang_baxter, convergence_study,
};
pub use report::{CheckReport, ConvergencePoint};
pub use sampling::{
    random_group_element, sample_sigma_point, sample_sigma_triple, sample_xi_triple,
};
pub use weak::weak_star_triangle;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdentityLabError {
    #[error("operator application failed: {0}")]
    Intertwiner(#[from] intertwiners::IntertwinerError),
    #[error("special function evaluation failed: {0}")]
    Spec(#[from] specfun::SpecFunError),
    #[error("field operation failed: {0}")]
    Field(#[from] torus_spectral::FieldError),
    #[error("parameters outside the check's domain: {0}")]
    Domain(String),
    #[error("serialization failed: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, IdentityLabError>;

/// Where in parameter space a check runs; some checks are only meaningful
/// on one of these loci.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainTag {
    /// All parameters purely imaginary: every operator is unitary.
    SigmaUnitary,
    /// The interior strip for the weak star-triangle form, stated on the
    /// derived triple `(α, β, γ) = (p, q, r)`:
    /// `Re α > 0`, `−1/2 < Re β < 0`, `Re γ > 0`, `α + β + γ = 0`.
    XiInterior,
    General,
}

/// A full parameter tuple for the identity checks.  The star-triangle
/// family reads its `(α, β, γ)` triple from `(p, q, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterPoint {
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
    pub theta: Complex64,
    pub tau: Complex64,
    pub domain_tag: DomainTag,
}

/// Tolerance on `Re = 0` for the unitary locus.
pub const SIGMA_RE_TOLERANCE: f64 = 1e-14;

impl ParameterPoint {
    pub fn new(
        p: Complex64,
        q: Complex64,
        r: Complex64,
        theta: Complex64,
        tau: Complex64,
        domain_tag: DomainTag,
    ) -> Result<Self> {
        let point = ParameterPoint { p, q, r, theta, tau, domain_tag };
        point.validate()?;
        Ok(point)
    }

    pub fn validate(&self) -> Result<()> {
        match self.domain_tag {
            DomainTag::SigmaUnitary => {
                for (name, v) in self.named() {
                    if v.re.abs() > SIGMA_RE_TOLERANCE {
                        return Err(IdentityLabError::Domain(format!(
                            "SigmaUnitary requires Re {name} = 0, got {}",
                            v.re
                        )));
                    }
                }
            }
            DomainTag::XiInterior => {
                let (alpha, beta, gamma) = (self.p, self.q, self.r);
                if !(alpha.re > 0.0 && gamma.re > 0.0 && beta.re > -0.5 && beta.re < 0.0) {
                    return Err(IdentityLabError::Domain(format!(
                        "XiInterior requires Re α > 0, −1/2 < Re β < 0, Re γ > 0; \
                         got ({}, {}, {})",
                        alpha.re, beta.re, gamma.re
                    )));
                }
                if (alpha + beta + gamma).norm() > 1e-12 {
                    return Err(IdentityLabError::Domain(
                        "XiInterior requires α + β + γ = 0".into(),
                    ));
                }
            }
            DomainTag::General => {}
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, Complex64); 5] {
        [
            ("p", self.p),
            ("q", self.q),
            ("r", self.r),
            ("theta", self.theta),
            ("tau", self.tau),
        ]
    }

    pub fn to_symbol_values(&self) -> intertwiners::SymbolValues {
        intertwiners::SymbolValues {
            p: self.p,
            q: self.q,
            r: self.r,
            theta: self.theta,
            tau: self.tau,
        }
    }
}
