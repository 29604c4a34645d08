//! Hash-chained derivation certificates.
//!
//! A certificate records a start word, a move script, and after every move
//! the serialized intermediate word together with its SHA-256 hash.  The
//! independent checker replays the script with exact arithmetic, re-checks
//! every move's precondition, and accepts only if each replayed word
//! matches the stored serialization and hash bit for bit.  In numeric mode
//! each intermediate word is additionally applied to bump fields at a
//! purely imaginary parameter point and the per-step residuals recorded.

use crate::canon::search_derivation;
use crate::moves::{apply_move, Move};
use crate::{DiagramError, Result};
use identity_lab::checks::test_field;
use intertwiners::{apply_word, yang_baxter_words, OperatorWord, SymbolValues};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use torus_spectral::{inner_product, SpectralField};

fn word_hash(json: &str) -> String {
    hex::encode(Sha256::digest(json.as_bytes()))
}

/// One certified step: the move, the word it produced, and that word's
/// hash.  Numeric residuals compare the produced word against the previous
/// one on the same test field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateStep {
    #[serde(rename = "move")]
    pub mv: Move,
    pub word_json: String,
    pub word_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_residual: Option<f64>,
}

/// Configuration for the numeric cross-check of a derivation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    /// Comparison band; operators run at twice this band internally.
    pub band: usize,
    pub seed: u64,
    /// Parameter values; the residual bounds assume a purely imaginary
    /// (unitary-locus) point.
    pub p: [f64; 2],
    pub q: [f64; 2],
    pub r: [f64; 2],
    pub theta: [f64; 2],
    pub tau: [f64; 2],
}

impl NumericConfig {
    pub fn new(band: usize, seed: u64, values: &SymbolValues) -> Self {
        NumericConfig {
            band,
            seed,
            p: [values.p.re, values.p.im],
            q: [values.q.re, values.q.im],
            r: [values.r.re, values.r.im],
            theta: [values.theta.re, values.theta.im],
            tau: [values.tau.re, values.tau.im],
        }
    }

    pub fn values(&self) -> SymbolValues {
        let c = |v: [f64; 2]| num_complex::Complex64::new(v[0], v[1]);
        SymbolValues {
            p: c(self.p),
            q: c(self.q),
            r: c(self.r),
            theta: c(self.theta),
            tau: c(self.tau),
        }
    }
}

/// Aggregate numeric outcome over all steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericSummary {
    pub config: NumericConfig,
    pub max_strong_residual: f64,
    pub max_weak_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub start_word_json: String,
    pub start_word_hash: String,
    pub steps: Vec<CertificateStep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSummary>,
}

impl Certificate {
    /// Number of star ↔ triangle moves in the script.
    pub fn star_triangle_count(&self) -> usize {
        self.steps.iter().filter(|s| s.mv.is_star_triangle()).count()
    }

    pub fn start_word(&self) -> Result<OperatorWord> {
        OperatorWord::from_json(&self.start_word_json).map_err(DiagramError::from)
    }

    pub fn end_word(&self) -> Result<OperatorWord> {
        match self.steps.last() {
            Some(step) => OperatorWord::from_json(&step.word_json).map_err(DiagramError::from),
            None => self.start_word(),
        }
    }

    pub fn moves(&self) -> Vec<Move> {
        self.steps.iter().map(|s| s.mv).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| DiagramError::Serde(e.to_string()))
    }

    /// Independent replay: re-applies every move with its precondition
    /// checks and accepts only if each step's stored word and hash match
    /// the replayed word exactly.  Returns the verified end word.
    pub fn verify(&self) -> Result<OperatorWord> {
        if word_hash(&self.start_word_json) != self.start_word_hash {
            return Err(DiagramError::Certificate(
                "start word hash does not match its serialization".into(),
            ));
        }
        let mut cur = self.start_word()?;
        for (idx, step) in self.steps.iter().enumerate() {
            cur = apply_move(&cur, &step.mv).map_err(|e| {
                DiagramError::Certificate(format!("step {idx}: move precondition failed: {e}"))
            })?;
            let json = cur.to_json();
            if json != step.word_json {
                return Err(DiagramError::Certificate(format!(
                    "step {idx}: replayed word differs from the stored word"
                )));
            }
            if word_hash(&json) != step.word_hash {
                return Err(DiagramError::Certificate(format!(
                    "step {idx}: stored hash does not match the stored word"
                )));
            }
        }
        Ok(cur)
    }
}

/// Apply a word to a field at twice its band, then restrict.
fn apply_working(
    word: &OperatorWord,
    values: &SymbolValues,
    field: &SpectralField,
) -> Result<SpectralField> {
    let band = field.band();
    let wide = field.embed(2 * band);
    Ok(apply_word(&wide, word, values)?.restrict(band))
}

/// Build a certificate by replaying `moves` from `start`, optionally with
/// per-step numeric residuals.
pub fn certify(
    name: &str,
    start: &OperatorWord,
    moves: &[Move],
    numeric: Option<&NumericConfig>,
) -> Result<Certificate> {
    let start_word_json = start.to_json();
    let start_word_hash = word_hash(&start_word_json);

    let mut probe = None;
    if let Some(cfg) = numeric {
        let values = cfg.values();
        let field = test_field(start.m(), cfg.band, cfg.seed)?;
        let pairing = test_field(start.m(), cfg.band, cfg.seed + 1)?;
        let baseline = apply_working(start, &values, &field)?;
        probe = Some((values, field, pairing, baseline));
    }

    let mut steps = Vec::with_capacity(moves.len());
    let mut cur = start.clone();
    let mut max_strong: f64 = 0.0;
    let mut max_weak: f64 = 0.0;
    for mv in moves {
        cur = apply_move(&cur, mv)?;
        let word_json = cur.to_json();
        let hash = word_hash(&word_json);
        let (mut strong, mut weak) = (None, None);
        if let Some((values, field, pairing, prev)) = probe.as_mut() {
            let next = apply_working(&cur, values, field)?;
            let diff = next.sub(prev)?;
            let scale = prev.norm().max(next.norm()).max(1e-300);
            let s = diff.norm() / scale;
            let w = inner_product(&diff, pairing)?.norm() / (scale * pairing.norm());
            max_strong = max_strong.max(s);
            max_weak = max_weak.max(w);
            strong = Some(s);
            weak = Some(w);
            *prev = next;
        }
        steps.push(CertificateStep {
            mv: *mv,
            word_json,
            word_hash: hash,
            strong_residual: strong,
            weak_residual: weak,
        });
    }

    Ok(Certificate {
        name: name.to_string(),
        start_word_json,
        start_word_hash,
        steps,
        numeric: numeric.map(|cfg| NumericSummary {
            config: cfg.clone(),
            max_strong_residual: max_strong,
            max_weak_residual: max_weak,
        }),
    })
}

/// Search for a derivation and package it as a certificate; `None` when no
/// derivation exists within `depth_limit` star ↔ triangle moves.
pub fn search_certificate(
    name: &str,
    from: &OperatorWord,
    to: &OperatorWord,
    depth_limit: usize,
    numeric: Option<&NumericConfig>,
) -> Result<Option<Certificate>> {
    match search_derivation(from, to, depth_limit)? {
        Some(moves) => Ok(Some(certify(name, from, &moves, numeric)?)),
        None => Ok(None),
    }
}

/// The built-in derivation of the Yang–Baxter relation: a fixed script of
/// 34 transpositions and 8 star ↔ triangle moves taking the left word of
/// [`yang_baxter_words`] to the right word, checked move by move.
pub fn yang_baxter_derivation(numeric: Option<&NumericConfig>) -> Result<Certificate> {
    let (lhs, rhs) = yang_baxter_words();
    let cert = certify("yang-baxter", &lhs, &yb_script(), numeric)?;
    let end = cert.end_word()?;
    assert_eq!(
        end, rhs,
        "built-in Yang-Baxter script must terminate at the right-hand word"
    );
    Ok(cert)
}

/// The fixed move script.  Positions are 0-based indices into the word in
/// application order.
fn yb_script() -> Vec<Move> {
    let t = |position| Move::Transpose { position };
    let st = |position| Move::StarToTriangle { position };
    let ts = |position| Move::TriangleToStar { position };
    vec![
        t(3),
        t(4),
        t(7),
        ts(5),
        t(1),
        t(4),
        st(2),
        t(1),
        t(2),
        t(3),
        t(4),
        t(9),
        t(8),
        t(7),
        st(5),
        t(0),
        t(4),
        t(3),
        ts(1),
        st(8),
        t(5),
        t(6),
        t(4),
        t(5),
        ts(6),
        t(5),
        t(6),
        t(7),
        t(10),
        ts(8),
        t(3),
        t(4),
        t(7),
        st(5),
        t(3),
        t(2),
        t(1),
        t(4),
        t(3),
        t(5),
        t(8),
        t(7),
    ]
}
