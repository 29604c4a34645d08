//! Planar diagram view of a symbolic operator word.
//!
//! Each torus axis is a strand.  A `J` factor inserts a new internal vertex
//! on its strand (an integration point); an `A` factor draws a propagator
//! edge between the current endpoints of its two strands.  Edges carry the
//! factor's exact exponent and a 1-based `order_index` recording the
//! application order, so the word can be reconstructed from the diagram.

use crate::{DiagramError, Result};
use intertwiners::{Exponent, LinExpr, OperatorFactor, OperatorWord};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortKind {
    /// The incoming end of a strand.
    Initial,
    /// The outgoing end of a strand.
    Target,
    /// An integration vertex created by a `J` factor.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    /// Representation label of the strand (`p`, `q`, or `r`).
    pub rep_label: String,
    pub kind: PortKind,
    /// 1-based strand (axis) number.
    pub strand: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// Segment of a strand crossing a `J` vertex.
    JEdge,
    /// Propagator between two strands from an `A` factor.
    AEdge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub exponent: LinExpr,
    /// 1-based position of the generating factor in application order.
    pub order_index: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagram {
    pub m: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

const REP_LABELS: [&str; 3] = ["p", "q", "r"];

/// Build the diagram of a symbolic word (no `T` factors, no constant
/// exponents).
pub fn word_to_diagram(word: &OperatorWord) -> Result<Diagram> {
    let m = word.m();
    let mut vertices: Vec<Vertex> = (1..=m)
        .map(|s| Vertex {
            id: s - 1,
            rep_label: REP_LABELS[s - 1].to_string(),
            kind: PortKind::Initial,
            strand: s,
        })
        .collect();
    let mut current: Vec<usize> = (0..m).collect();
    let mut edges = Vec::new();
    for (pos, factor) in word.factors().iter().enumerate() {
        let order_index = pos + 1;
        let symbolic = |e: &Exponent| -> Result<LinExpr> {
            match e {
                Exponent::Symbolic(l) => Ok(*l),
                Exponent::Const(_) => Err(DiagramError::Structure(
                    "diagrams require symbolic exponents".into(),
                )),
            }
        };
        match factor {
            OperatorFactor::J { axis, exponent } => {
                let id = vertices.len();
                vertices.push(Vertex {
                    id,
                    rep_label: REP_LABELS[axis - 1].to_string(),
                    kind: PortKind::Internal,
                    strand: *axis,
                });
                edges.push(Edge {
                    from: current[axis - 1],
                    to: id,
                    exponent: symbolic(exponent)?,
                    order_index,
                    kind: EdgeKind::JEdge,
                });
                current[axis - 1] = id;
            }
            OperatorFactor::A { k, l, exponent } => {
                edges.push(Edge {
                    from: current[k - 1],
                    to: current[l - 1],
                    exponent: symbolic(exponent)?,
                    order_index,
                    kind: EdgeKind::AEdge,
                });
            }
            OperatorFactor::T { .. } => {
                return Err(DiagramError::Structure(
                    "group-action factors have no diagram representation".into(),
                ))
            }
        }
    }
    // Mark the final vertex of each strand as its outgoing port; a strand
    // with no integration vertex keeps its single initial port.
    for (s, &id) in current.iter().enumerate() {
        if id != s {
            vertices[id].kind = PortKind::Target;
        }
    }
    Ok(Diagram { m, vertices, edges })
}

/// Reconstruct the word from a diagram produced by [`word_to_diagram`].
pub fn diagram_to_word(diagram: &Diagram) -> Result<OperatorWord> {
    let strand_of = |id: usize| -> Result<usize> {
        diagram
            .vertices
            .get(id)
            .map(|v| v.strand)
            .ok_or_else(|| DiagramError::Structure(format!("edge references vertex {id}")))
    };
    let mut edges: Vec<&Edge> = diagram.edges.iter().collect();
    edges.sort_by_key(|e| e.order_index);
    for (pos, e) in edges.iter().enumerate() {
        if e.order_index != pos + 1 {
            return Err(DiagramError::Structure(format!(
                "edge order indices must be 1..={}, found {}",
                edges.len(),
                e.order_index
            )));
        }
    }
    let factors = edges
        .iter()
        .map(|e| {
            Ok(match e.kind {
                EdgeKind::JEdge => {
                    OperatorFactor::j(strand_of(e.from)?, Exponent::Symbolic(e.exponent))
                }
                EdgeKind::AEdge => OperatorFactor::a(
                    strand_of(e.from)?,
                    strand_of(e.to)?,
                    Exponent::Symbolic(e.exponent),
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    OperatorWord::new(diagram.m, factors).map_err(DiagramError::from)
}
