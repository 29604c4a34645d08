//! Word-level rewrite moves.
//!
//! A word is a list of factors in application order (index 0 acts first).
//! Three moves preserve the operator the word denotes:
//!
//! * `Transpose(t)` — swap the commuting factors at positions `t, t+1`;
//! * `StarToTriangle(t)` — replace `[J_a(x), A_ab(y), J_a(z)]` at
//!   `t..t+3` (with `x + y + z = 0` exactly) by `[A_ab(−z), J_a(−y),
//!   A_ab(−x)]`;
//! * `TriangleToStar(t)` — the inverse replacement, `[A_ab(x), J_a(y),
//!   A_ab(z)]` ↦ `[J_a(−z), A_ab(−y), J_a(−x)]`.
//!
//! Star/triangle moves require exact symbolic exponents; the zero-sum
//! constraint is checked in rational arithmetic, never in floating point.

use crate::{DiagramError, Result};
use intertwiners::{Exponent, LinExpr, OperatorFactor, OperatorWord};
use serde::{Deserialize, Serialize};

/// One rewrite move, identified by its leftmost word position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Transpose { position: usize },
    StarToTriangle { position: usize },
    TriangleToStar { position: usize },
}

impl Move {
    pub fn position(&self) -> usize {
        match self {
            Move::Transpose { position }
            | Move::StarToTriangle { position }
            | Move::TriangleToStar { position } => *position,
        }
    }

    /// `true` for the star ↔ triangle family, `false` for transpositions.
    pub fn is_star_triangle(&self) -> bool {
        !matches!(self, Move::Transpose { .. })
    }
}

fn factor_axes(f: &OperatorFactor) -> Vec<usize> {
    match f {
        OperatorFactor::J { axis, .. } | OperatorFactor::T { axis, .. } => vec![*axis],
        OperatorFactor::A { k, l, .. } => vec![*k, *l],
    }
}

/// Exact commutation: diagonal factors commute among themselves,
/// multiplication factors commute among themselves, a `J` and an `A`
/// commute when their axis sets are disjoint, and `T` factors are
/// conservatively treated as commuting with nothing.
pub fn factors_commute(f: &OperatorFactor, g: &OperatorFactor) -> bool {
    match (f, g) {
        (OperatorFactor::T { .. }, _) | (_, OperatorFactor::T { .. }) => false,
        (OperatorFactor::J { .. }, OperatorFactor::J { .. }) => true,
        (OperatorFactor::A { .. }, OperatorFactor::A { .. }) => true,
        _ => {
            let fa = factor_axes(f);
            factor_axes(g).iter().all(|a| !fa.contains(a))
        }
    }
}

pub(crate) fn symbolic_exponent(f: &OperatorFactor) -> Result<LinExpr> {
    let exponent = match f {
        OperatorFactor::J { exponent, .. } | OperatorFactor::A { exponent, .. } => exponent,
        OperatorFactor::T { .. } => {
            return Err(DiagramError::Structure(
                "group-action factors carry no rewrite exponent".into(),
            ))
        }
    };
    match exponent {
        Exponent::Symbolic(e) => Ok(*e),
        Exponent::Const(_) => Err(DiagramError::Structure(
            "rewrite moves require exact symbolic exponents".into(),
        )),
    }
}

fn window<'a>(word: &'a OperatorWord, t: usize, len: usize) -> Result<&'a [OperatorFactor]> {
    if t + len > word.len() {
        return Err(DiagramError::Pattern(format!(
            "positions {t}..{} outside word of length {}",
            t + len,
            word.len()
        )));
    }
    Ok(&word.factors()[t..t + len])
}

fn describe(f: &OperatorFactor) -> String {
    match f {
        OperatorFactor::J { axis, exponent } => match exponent {
            Exponent::Symbolic(e) => format!("J_{axis}({e})"),
            Exponent::Const(v) => format!("J_{axis}({v})"),
        },
        OperatorFactor::A { k, l, exponent } => match exponent {
            Exponent::Symbolic(e) => format!("A_{k}{l}({e})"),
            Exponent::Const(v) => format!("A_{k}{l}({v})"),
        },
        OperatorFactor::T { axis, .. } => format!("T_{axis}"),
    }
}

fn rebuild(word: &OperatorWord, t: usize, removed: usize, repl: Vec<OperatorFactor>) -> OperatorWord {
    let mut factors: Vec<OperatorFactor> = word.factors().to_vec();
    factors.splice(t..t + removed, repl);
    OperatorWord::new(word.m(), factors).expect("rewrite preserves word validity")
}

/// Swap the commuting factors at `t` and `t+1`.
pub fn transpose(word: &OperatorWord, t: usize) -> Result<OperatorWord> {
    let pair = window(word, t, 2)?;
    if !factors_commute(&pair[0], &pair[1]) {
        return Err(DiagramError::NonCommuting(format!(
            "{} and {} at position {t}",
            describe(&pair[0]),
            describe(&pair[1])
        )));
    }
    Ok(rebuild(word, t, 2, vec![pair[1].clone(), pair[0].clone()]))
}

/// Apply the star-to-triangle replacement at `t..t+3`.
pub fn star_to_triangle(word: &OperatorWord, t: usize) -> Result<OperatorWord> {
    let w = window(word, t, 3)?;
    let (axis_x, k, l, axis_z) = match (&w[0], &w[1], &w[2]) {
        (
            OperatorFactor::J { axis: ax, .. },
            OperatorFactor::A { k, l, .. },
            OperatorFactor::J { axis: az, .. },
        ) => (*ax, *k, *l, *az),
        _ => {
            return Err(DiagramError::Pattern(format!(
                "expected J·A·J at position {t}, found {}, {}, {}",
                describe(&w[0]),
                describe(&w[1]),
                describe(&w[2])
            )))
        }
    };
    if axis_x != axis_z || (axis_x != k && axis_x != l) {
        return Err(DiagramError::Pattern(format!(
            "star pattern needs both J factors on one axis of A_{k}{l}, got axes {axis_x}, {axis_z}"
        )));
    }
    let (x, y, z) = (
        symbolic_exponent(&w[0])?,
        symbolic_exponent(&w[1])?,
        symbolic_exponent(&w[2])?,
    );
    if !(x + y + z).is_zero() {
        return Err(DiagramError::Constraint(format!(
            "star move requires x + y + z = 0, got ({x}) + ({y}) + ({z})"
        )));
    }
    let repl = vec![
        OperatorFactor::a(k, l, Exponent::Symbolic(-z)),
        OperatorFactor::j(axis_x, Exponent::Symbolic(-y)),
        OperatorFactor::a(k, l, Exponent::Symbolic(-x)),
    ];
    Ok(rebuild(word, t, 3, repl))
}

/// Apply the triangle-to-star replacement at `t..t+3`.
pub fn triangle_to_star(word: &OperatorWord, t: usize) -> Result<OperatorWord> {
    let w = window(word, t, 3)?;
    let (k1, l1, axis, k2, l2) = match (&w[0], &w[1], &w[2]) {
        (
            OperatorFactor::A { k: k1, l: l1, .. },
            OperatorFactor::J { axis, .. },
            OperatorFactor::A { k: k2, l: l2, .. },
        ) => (*k1, *l1, *axis, *k2, *l2),
        _ => {
            return Err(DiagramError::Pattern(format!(
                "expected A·J·A at position {t}, found {}, {}, {}",
                describe(&w[0]),
                describe(&w[1]),
                describe(&w[2])
            )))
        }
    };
    let pair1 = (k1.min(l1), k1.max(l1));
    let pair2 = (k2.min(l2), k2.max(l2));
    if pair1 != pair2 || (axis != k1 && axis != l1) {
        return Err(DiagramError::Pattern(format!(
            "triangle pattern needs matching A axes containing the J axis, \
             got A_{k1}{l1}, J_{axis}, A_{k2}{l2}"
        )));
    }
    let (x, y, z) = (
        symbolic_exponent(&w[0])?,
        symbolic_exponent(&w[1])?,
        symbolic_exponent(&w[2])?,
    );
    if !(x + y + z).is_zero() {
        return Err(DiagramError::Constraint(format!(
            "triangle move requires x + y + z = 0, got ({x}) + ({y}) + ({z})"
        )));
    }
    let repl = vec![
        OperatorFactor::j(axis, Exponent::Symbolic(-z)),
        OperatorFactor::a(pair1.0, pair1.1, Exponent::Symbolic(-y)),
        OperatorFactor::j(axis, Exponent::Symbolic(-x)),
    ];
    Ok(rebuild(word, t, 3, repl))
}

/// Apply one move, checking its preconditions.
pub fn apply_move(word: &OperatorWord, mv: &Move) -> Result<OperatorWord> {
    match mv {
        Move::Transpose { position } => transpose(word, *position),
        Move::StarToTriangle { position } => star_to_triangle(word, *position),
        Move::TriangleToStar { position } => triangle_to_star(word, *position),
    }
}

/// Apply a sequence of moves left to right.
pub fn apply_moves(word: &OperatorWord, moves: &[Move]) -> Result<OperatorWord> {
    let mut cur = word.clone();
    for mv in moves {
        cur = apply_move(&cur, mv)?;
    }
    Ok(cur)
}
