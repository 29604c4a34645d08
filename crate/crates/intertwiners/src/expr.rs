//! Exact linear expressions in the five spectral parameters
//! `p, q, r, θ, τ` with rational coefficients.
//!
//! Operator words that appear in algebraic derivations carry exponents that
//! are rational linear combinations of these parameters; keeping the
//! coefficients exact lets rewrite rules match patterns without floating
//! point slop.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The five named parameters, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    P,
    Q,
    R,
    Theta,
    Tau,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::P, Symbol::Q, Symbol::R, Symbol::Theta, Symbol::Tau];

    pub fn index(self) -> usize {
        match self {
            Symbol::P => 0,
            Symbol::Q => 1,
            Symbol::R => 2,
            Symbol::Theta => 3,
            Symbol::Tau => 4,
        }
    }

    pub fn name(self) -> &'static str {
        ["p", "q", "r", "theta", "tau"][self.index()]
    }
}

/// Numeric values assigned to the five parameters when a symbolic word is
/// instantiated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolValues {
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
    pub theta: Complex64,
    pub tau: Complex64,
}

impl SymbolValues {
    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        SymbolValues { p: z, q: z, r: z, theta: z, tau: z }
    }

    pub fn as_array(&self) -> [Complex64; 5] {
        [self.p, self.q, self.r, self.theta, self.tau]
    }
}

/// A linear expression `Σ cᵢ·xᵢ + c₀` with exact rational coefficients over
/// the symbols in [`Symbol::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinExpr {
    /// Coefficients of `p, q, r, θ, τ`, in that order.
    pub coeffs: [Ratio<i64>; 5],
    /// Constant term.
    pub constant: Ratio<i64>,
}

impl LinExpr {
    pub fn zero() -> Self {
        LinExpr {
            coeffs: [Ratio::new(0, 1); 5],
            constant: Ratio::new(0, 1),
        }
    }

    pub fn constant(value: Ratio<i64>) -> Self {
        LinExpr { constant: value, ..LinExpr::zero() }
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut e = LinExpr::zero();
        e.coeffs[s.index()] = Ratio::new(1, 1);
        e
    }

    /// `coefficient · symbol` as a one-term expression.
    pub fn term(coefficient: Ratio<i64>, s: Symbol) -> Self {
        let mut e = LinExpr::zero();
        e.coeffs[s.index()] = coefficient;
        e
    }

    pub fn is_zero(&self) -> bool {
        *self == LinExpr::zero()
    }

    pub fn scaled(mut self, factor: Ratio<i64>) -> Self {
        for c in &mut self.coeffs {
            *c *= factor;
        }
        self.constant *= factor;
        self
    }

    /// Evaluate at the given parameter values.
    pub fn eval(&self, values: &SymbolValues) -> Complex64 {
        let vals = values.as_array();
        let mut acc = Complex64::new(ratio_to_f64(self.constant), 0.0);
        for (c, v) in self.coeffs.iter().zip(vals.iter()) {
            if *c.numer() != 0 {
                acc += ratio_to_f64(*c) * v;
            }
        }
        acc
    }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(mut self, rhs: LinExpr) -> LinExpr {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        self.constant += rhs.constant;
        self
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(self, rhs: LinExpr) -> LinExpr {
        self + (-rhs)
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        self.scaled(Ratio::new(-1, 1))
    }
}

impl Mul<Ratio<i64>> for LinExpr {
    type Output = LinExpr;
    fn mul(self, rhs: Ratio<i64>) -> LinExpr {
        self.scaled(rhs)
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (c, s) in self.coeffs.iter().zip(Symbol::ALL.iter()) {
            if *c.numer() == 0 {
                continue;
            }
            if wrote {
                write!(f, " {} ", if *c.numer() < 0 { "-" } else { "+" })?;
            } else if *c.numer() < 0 {
                write!(f, "-")?;
            }
            let a = c.numer().abs();
            let d = *c.denom();
            if d == 1 && a == 1 {
                write!(f, "{}", s.name())?;
            } else if d == 1 {
                write!(f, "{}·{}", a, s.name())?;
            } else {
                write!(f, "{}/{}·{}", a, d, s.name())?;
            }
            wrote = true;
        }
        if *self.constant.numer() != 0 || !wrote {
            if wrote {
                write!(f, " {} ", if *self.constant.numer() < 0 { "-" } else { "+" })?;
                let a = self.constant.numer().abs();
                if *self.constant.denom() == 1 {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "{}/{}", a, self.constant.denom())?;
                }
            } else {
                write!(f, "{}", self.constant)?;
            }
        }
        Ok(())
    }
}
