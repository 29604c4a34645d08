//! Exact rewrite calculus for symbolic operator words: commutation
//! transpositions, star ↔ triangle moves with rational-arithmetic
//! constraint checking, Foata canonical forms over the commutation monoid,
//! breadth-first derivation search, planar diagram views of words, and
//! hash-chained derivation certificates with an independent checker and an
//! optional numeric residual mode.

pub mod canon;
pub mod certificate;
pub mod diagram;
pub mod moves;

pub use canon::{foata_canonical, search_derivation, words_equivalent};
pub use certificate::{
    certify, search_certificate, yang_baxter_derivation, Certificate, CertificateStep,
    NumericConfig, NumericSummary,
};
pub use diagram::{diagram_to_word, word_to_diagram, Diagram, Edge, EdgeKind, PortKind, Vertex};
pub use moves::{
    apply_move, apply_moves, factors_commute, star_to_triangle, transpose, triangle_to_star, Move,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("factors do not commute: {0}")]
    NonCommuting(String),
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unsupported word structure: {0}")]
    Structure(String),
    #[error("certificate invalid: {0}")]
    Certificate(String),
    #[error("serialization failed: {0}")]
    Serde(String),
    #[error("operator application failed: {0}")]
    Intertwiner(#[from] intertwiners::IntertwinerError),
    #[error("field operation failed: {0}")]
    Field(#[from] torus_spectral::FieldError),
    #[error("numeric check failed: {0}")]
    Numeric(#[from] identity_lab::IdentityLabError),
}

pub type Result<T> = std::result::Result<T, DiagramError>;
