//! Operator words: ordered products of the diagonal intertwiner `J`, the
//! singular multiplier `A`, and the group action `T`, together with exact
//! JSON serialization and the four-factor R-matrix building block.
//!
//! Factors are stored in **application order**: factor 0 acts on the field
//! first.

use crate::expr::{LinExpr, Symbol, SymbolValues};
use crate::moebius::MoebiusElement;
use crate::{IntertwinerError, Result};
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// An exponent attached to a `J` or `A` factor: either a fixed complex
/// number or an exact linear expression in the spectral parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Const(Complex64),
    Symbolic(LinExpr),
}

impl Exponent {
    pub fn eval(&self, values: &SymbolValues) -> Complex64 {
        match self {
            Exponent::Const(v) => *v,
            Exponent::Symbolic(e) => e.eval(values),
        }
    }

    /// Complex conjugate; only constant exponents support this exactly,
    /// since conjugation is not linear over the symbols.
    pub fn conj(&self) -> Result<Exponent> {
        match self {
            Exponent::Const(v) => Ok(Exponent::Const(v.conj())),
            Exponent::Symbolic(e) => Err(IntertwinerError::Word(format!(
                "cannot conjugate symbolic exponent {e}; resolve the word first"
            ))),
        }
    }
}

/// One factor of an operator word.  Axis labels are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorFactor {
    /// Diagonal intertwiner on one axis: multiplies the mode `n` on that
    /// axis by the eigenvalue `λ_n(exponent)`.
    J { axis: usize, exponent: Exponent },
    /// Multiplication by the chordal-distance power `|z_k − z_l|^exponent`.
    A { k: usize, l: usize, exponent: Exponent },
    /// The group action on one axis with spectral parameter `power`.
    T {
        axis: usize,
        element: MoebiusElement,
        power: Complex64,
    },
}

impl OperatorFactor {
    pub fn j(axis: usize, exponent: Exponent) -> Self {
        OperatorFactor::J { axis, exponent }
    }

    pub fn a(k: usize, l: usize, exponent: Exponent) -> Self {
        OperatorFactor::A { k, l, exponent }
    }

    pub fn t(axis: usize, element: MoebiusElement, power: Complex64) -> Self {
        OperatorFactor::T { axis, element, power }
    }

    fn validate(&self, m: usize) -> Result<()> {
        let bad_axis = |axis: usize| {
            IntertwinerError::Word(format!("axis {axis} outside 1..={m}"))
        };
        match self {
            OperatorFactor::J { axis, .. } | OperatorFactor::T { axis, .. } => {
                if *axis == 0 || *axis > m {
                    return Err(bad_axis(*axis));
                }
            }
            OperatorFactor::A { k, l, .. } => {
                if *k == 0 || *k > m {
                    return Err(bad_axis(*k));
                }
                if *l == 0 || *l > m {
                    return Err(bad_axis(*l));
                }
                if k == l {
                    return Err(IntertwinerError::Word(format!(
                        "A factor requires two distinct axes, got ({k}, {l})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Formal adjoint of a single factor.  Requires constant exponents.
    pub fn adjoint(&self) -> Result<OperatorFactor> {
        Ok(match self {
            OperatorFactor::J { axis, exponent } => OperatorFactor::J {
                axis: *axis,
                exponent: exponent.conj()?,
            },
            OperatorFactor::A { k, l, exponent } => OperatorFactor::A {
                k: *k,
                l: *l,
                exponent: exponent.conj()?,
            },
            // ⟨T(g, p)f, h⟩ = ⟨f, T(g⁻¹, −p̄)h⟩; on the unitary locus
            // (imaginary p) this is the inverse with the same parameter.
            OperatorFactor::T { axis, element, power } => OperatorFactor::T {
                axis: *axis,
                element: element.inverse(),
                power: -power.conj(),
            },
        })
    }
}

/// An ordered product of operator factors acting on fields over `T^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorWord {
    m: usize,
    factors: Vec<OperatorFactor>,
}

impl OperatorWord {
    pub fn new(m: usize, factors: Vec<OperatorFactor>) -> Result<Self> {
        if m == 0 || m > 3 {
            return Err(IntertwinerError::Word(format!(
                "torus dimension {m} outside 1..=3"
            )));
        }
        for f in &factors {
            f.validate(m)?;
        }
        Ok(OperatorWord { m, factors })
    }

    pub fn identity(m: usize) -> Self {
        OperatorWord { m, factors: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[OperatorFactor] {
        &self.factors
    }

    pub fn push(&mut self, factor: OperatorFactor) -> Result<()> {
        factor.validate(self.m)?;
        self.factors.push(factor);
        Ok(())
    }

    /// Concatenation: `self` acts first, then `after`.
    pub fn then(&self, after: &OperatorWord) -> Result<OperatorWord> {
        if self.m != after.m {
            return Err(IntertwinerError::Word(
                "cannot concatenate words over different tori".into(),
            ));
        }
        let mut factors = self.factors.clone();
        factors.extend(after.factors.iter().cloned());
        Ok(OperatorWord { m: self.m, factors })
    }

    /// Formal adjoint: factors reversed and individually conjugated.
    pub fn adjoint(&self) -> Result<OperatorWord> {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(OperatorFactor::adjoint)
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorWord { m: self.m, factors })
    }

    /// Replace every symbolic exponent by its value at `values`.
    pub fn resolve(&self, values: &SymbolValues) -> OperatorWord {
        let factors = self
            .factors
            .iter()
            .map(|f| match f {
                OperatorFactor::J { axis, exponent } => OperatorFactor::J {
                    axis: *axis,
                    exponent: Exponent::Const(exponent.eval(values)),
                },
                OperatorFactor::A { k, l, exponent } => OperatorFactor::A {
                    k: *k,
                    l: *l,
                    exponent: Exponent::Const(exponent.eval(values)),
                },
                other => other.clone(),
            })
            .collect();
        OperatorWord { m: self.m, factors }
    }

    pub fn to_json(&self) -> String {
        let repr = WordRepr::from(self);
        serde_json::to_string_pretty(&repr).expect("word serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<OperatorWord> {
        let repr: WordRepr =
            serde_json::from_str(text).map_err(|e| IntertwinerError::Serde(e.to_string()))?;
        repr.try_into()
    }
}

/// The four-factor R-matrix block on axes `(k, l)` with spectral side
/// parameter `σ` and representation parameters `(p, q)`:
/// `A_{kl}(σ + (p+q)/2) · J_l(−σ + (p−q)/2) · J_k(−σ + (q−p)/2) · A_{kl}(σ − (p+q)/2)`
/// (rightmost factor acts first; factors are stored in application order).
pub fn r_block(
    m: usize,
    k: usize,
    l: usize,
    sigma: Complex64,
    p: Complex64,
    q: Complex64,
) -> Result<OperatorWord> {
    let half = 0.5;
    OperatorWord::new(
        m,
        vec![
            OperatorFactor::a(k, l, Exponent::Const(sigma - (p + q) * half)),
            OperatorFactor::j(k, Exponent::Const(-sigma + (q - p) * half)),
            OperatorFactor::j(l, Exponent::Const(-sigma + (p - q) * half)),
            OperatorFactor::a(k, l, Exponent::Const(sigma + (p + q) * half)),
        ],
    )
}

/// Symbolic variant of [`r_block`] with exact linear-expression exponents.
pub fn r_block_symbolic(
    m: usize,
    k: usize,
    l: usize,
    sigma: LinExpr,
    p: LinExpr,
    q: LinExpr,
) -> Result<OperatorWord> {
    let half = Ratio::new(1i64, 2);
    OperatorWord::new(
        m,
        vec![
            OperatorFactor::a(k, l, Exponent::Symbolic(sigma - (p + q) * half)),
            OperatorFactor::j(k, Exponent::Symbolic(-sigma + (q - p) * half)),
            OperatorFactor::j(l, Exponent::Symbolic(-sigma + (p - q) * half)),
            OperatorFactor::a(k, l, Exponent::Symbolic(sigma + (p + q) * half)),
        ],
    )
}

/// The symbolic left- and right-hand sides of the Yang–Baxter relation on
/// `T³`: three R-blocks per side in application order.
pub fn yang_baxter_words() -> (OperatorWord, OperatorWord) {
    let p = LinExpr::symbol(Symbol::P);
    let q = LinExpr::symbol(Symbol::Q);
    let r = LinExpr::symbol(Symbol::R);
    let theta = LinExpr::symbol(Symbol::Theta);
    let tau = LinExpr::symbol(Symbol::Tau);
    let lhs = r_block_symbolic(3, 2, 3, tau, q, r)
        .and_then(|w| w.then(&r_block_symbolic(3, 1, 2, theta, p, r).unwrap()))
        .and_then(|w| w.then(&r_block_symbolic(3, 2, 3, theta - tau, p, q).unwrap()))
        .expect("static word construction");
    let rhs = r_block_symbolic(3, 1, 2, theta - tau, p, q)
        .and_then(|w| w.then(&r_block_symbolic(3, 2, 3, theta, p, r).unwrap()))
        .and_then(|w| w.then(&r_block_symbolic(3, 1, 2, tau, q, r).unwrap()))
        .expect("static word construction");
    (lhs, rhs)
}

// ---------------------------------------------------------------------------
// Serialization representation (stable, hash-friendly).

#[derive(Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
enum ExponentRepr {
    Const { value: [f64; 2] },
    Linear {
        coeffs: [[i64; 2]; 5],
        constant: [i64; 2],
    },
}

impl From<&Exponent> for ExponentRepr {
    fn from(e: &Exponent) -> Self {
        match e {
            Exponent::Const(v) => ExponentRepr::Const { value: [v.re, v.im] },
            Exponent::Symbolic(l) => ExponentRepr::Linear {
                coeffs: l.coeffs.map(|c| [*c.numer(), *c.denom()]),
                constant: [*l.constant.numer(), *l.constant.denom()],
            },
        }
    }
}

impl TryFrom<ExponentRepr> for Exponent {
    type Error = IntertwinerError;
    fn try_from(repr: ExponentRepr) -> Result<Exponent> {
        Ok(match repr {
            ExponentRepr::Const { value } => {
                Exponent::Const(Complex64::new(value[0], value[1]))
            }
            ExponentRepr::Linear { coeffs, constant } => {
                let ratio = |p: [i64; 2]| -> Result<Ratio<i64>> {
                    if p[1] == 0 {
                        return Err(IntertwinerError::Serde(
                            "zero denominator in exponent".into(),
                        ));
                    }
                    Ok(Ratio::new(p[0], p[1]))
                };
                let mut cs = [Ratio::new(0, 1); 5];
                for (slot, p) in cs.iter_mut().zip(coeffs.iter()) {
                    *slot = ratio(*p)?;
                }
                Exponent::Symbolic(LinExpr {
                    coeffs: cs,
                    constant: ratio(constant)?,
                })
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum FactorRepr {
    J {
        axis: usize,
        exponent: ExponentRepr,
    },
    A {
        k: usize,
        l: usize,
        exponent: ExponentRepr,
    },
    T {
        axis: usize,
        a: [f64; 2],
        b: [f64; 2],
        power: [f64; 2],
    },
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    m: usize,
    factors: Vec<FactorRepr>,
}

impl From<&OperatorWord> for WordRepr {
    fn from(word: &OperatorWord) -> Self {
        let factors = word
            .factors
            .iter()
            .map(|f| match f {
                OperatorFactor::J { axis, exponent } => FactorRepr::J {
                    axis: *axis,
                    exponent: exponent.into(),
                },
                OperatorFactor::A { k, l, exponent } => FactorRepr::A {
                    k: *k,
                    l: *l,
                    exponent: exponent.into(),
                },
                OperatorFactor::T { axis, element, power } => FactorRepr::T {
                    axis: *axis,
                    a: [element.a().re, element.a().im],
                    b: [element.b().re, element.b().im],
                    power: [power.re, power.im],
                },
            })
            .collect();
        WordRepr { m: word.m, factors }
    }
}

impl TryFrom<WordRepr> for OperatorWord {
    type Error = IntertwinerError;
    fn try_from(repr: WordRepr) -> Result<OperatorWord> {
        let factors = repr
            .factors
            .into_iter()
            .map(|f| {
                Ok(match f {
                    FactorRepr::J { axis, exponent } => OperatorFactor::J {
                        axis,
                        exponent: exponent.try_into()?,
                    },
                    FactorRepr::A { k, l, exponent } => OperatorFactor::A {
                        k,
                        l,
                        exponent: exponent.try_into()?,
                    },
                    FactorRepr::T { axis, a, b, power } => OperatorFactor::T {
                        axis,
                        element: MoebiusElement::new(
                            Complex64::new(a[0], a[1]),
                            Complex64::new(b[0], b[1]),
                        )?,
                        power: Complex64::new(power[0], power[1]),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorWord::new(repr.m, factors)
    }
}
