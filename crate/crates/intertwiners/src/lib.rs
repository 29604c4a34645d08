//! Intertwining operators on truncated Fourier spaces over tori.
//!
//! The crate provides three operator families acting on
//! [`torus_spectral::SpectralField`]s —
//!
//! * `J(p)`: the diagonal intertwiner with eigenvalues `λ_n(p)`,
//! * `A(α)`: multiplication by the chordal-distance power `|z_k − z_l|^α`,
//! * `T(g, p)`: the principal-series group action for a Möbius element `g`,
//!
//! — together with [`word::OperatorWord`], an ordered product of such
//! factors with exponents that are either fixed complex numbers or exact
//! rational-linear expressions in the five spectral parameters
//! `p, q, r, θ, τ` ([`expr::LinExpr`]).  Words serialize to a stable JSON
//! form and support formal adjoints; [`word::r_block`] builds the
//! four-factor R-matrix block used by the Yang–Baxter relation.

pub mod apply;
pub mod expr;
pub mod moebius;
pub mod word;

pub use apply::{apply_a, apply_j, apply_t, apply_word, apply_word_with_stats, ApplyStats};
pub use expr::{LinExpr, Symbol, SymbolValues};
pub use moebius::MoebiusElement;
pub use word::{
    r_block, r_block_symbolic, yang_baxter_words, Exponent, OperatorFactor, OperatorWord,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IntertwinerError {
    #[error("special function evaluation failed: {0}")]
    Spec(#[from] specfun::SpecFunError),
    #[error("field operation failed: {0}")]
    Field(#[from] torus_spectral::FieldError),
    #[error("malformed operator word: {0}")]
    Word(String),
    #[error("serialization failed: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, IntertwinerError>;
