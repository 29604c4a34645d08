//! Elements of the group of disk-preserving Möbius transformations,
//! parametrized as `(a, b)` with `|a|² − |b|² = 1`.
//!
//! The element `(a, b)` acts on the unit circle by
//! `z ↦ (b + z·ā) / (a + z·b̄)`, which preserves `|z| = 1`.

use crate::{IntertwinerError, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Tolerance on the determinant constraint `|a|² − |b|² = 1`.
const DET_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusElement {
    a: Complex64,
    b: Complex64,
}

impl MoebiusElement {
    /// Build an element, validating the determinant constraint.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if (det - 1.0).abs() > DET_TOLERANCE {
            return Err(IntertwinerError::Word(format!(
                "Moebius parameters violate |a|^2 - |b|^2 = 1 (got {det})"
            )));
        }
        Ok(MoebiusElement { a, b })
    }

    /// `a = cosh t · e^{iφ}`, `b = sinh t · e^{iψ}`; the constraint holds
    /// automatically.
    pub fn from_angles(t: f64, phi: f64, psi: f64) -> Self {
        MoebiusElement {
            a: Complex64::from_polar(t.cosh(), phi),
            b: Complex64::from_polar(t.sinh(), psi),
        }
    }

    pub fn identity() -> Self {
        MoebiusElement {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn inverse(&self) -> Self {
        MoebiusElement { a: self.a.conj(), b: -self.b }
    }

    /// Group product; `T(g₁)·T(g₂) = T(g₁.compose(g₂))` where the right
    /// factor acts first.
    pub fn compose(&self, other: &MoebiusElement) -> Self {
        MoebiusElement {
            a: self.a * other.a + self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    /// The circle action `z ↦ (b + z·ā) / (a + z·b̄)`.
    pub fn map_point(&self, z: Complex64) -> Complex64 {
        (self.b + z * self.a.conj()) / (self.a + z * self.b.conj())
    }

    /// The base `a + z·b̄` of the conformal multiplier at `z`.
    pub fn multiplier_base(&self, z: Complex64) -> Complex64 {
        self.a + z * self.b.conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms() {
        let g = MoebiusElement::from_angles(0.7, 0.3, -1.1);
        let h = MoebiusElement::from_angles(0.2, 2.0, 0.5);
        let e = MoebiusElement::identity();
        let gh = g.compose(&h);
        // Closure: determinant still 1.
        assert!((gh.a().norm_sqr() - gh.b().norm_sqr() - 1.0).abs() < 1e-12);
        // Inverse.
        let gg = g.compose(&g.inverse());
        assert!((gg.a() - e.a()).norm() < 1e-12 && gg.b().norm() < 1e-12);
        // For substitution operators the point maps compose in the order
        // opposite to the operators: the left factor's map is applied first.
        let z = Complex64::from_polar(1.0, 0.9);
        let via_product = gh.map_point(z);
        let via_maps = h.map_point(g.map_point(z));
        assert!((via_product - via_maps).norm() < 1e-12);
        // The action preserves the circle.
        assert!((g.map_point(z).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constraint_is_enforced() {
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(0.5, 0.0);
        assert!(MoebiusElement::new(a, b).is_err());
        let ok = MoebiusElement::from_angles(0.4, 0.0, 0.0);
        assert!(MoebiusElement::new(ok.a(), ok.b()).is_ok());
    }
}
