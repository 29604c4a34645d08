//! Rewrite moves, canonical forms, derivation search, and certificates.

use diagram_calculus::{
    apply_moves, diagram_to_word, foata_canonical, search_certificate, search_derivation,
    star_to_triangle, transpose, triangle_to_star, word_to_diagram, words_equivalent,
    yang_baxter_derivation, EdgeKind, Move, NumericConfig, PortKind,
};
use intertwiners::{
    yang_baxter_words, Exponent, LinExpr, OperatorFactor, OperatorWord, Symbol, SymbolValues,
};
use num_complex::Complex64;

fn sym(s: Symbol) -> Exponent {
    Exponent::Symbolic(LinExpr::symbol(s))
}

fn star_word() -> OperatorWord {
    // Application order: J₁(γ), A₁₂(β), J₁(α) with γ = −α−β.
    let alpha = LinExpr::symbol(Symbol::P);
    let beta = LinExpr::symbol(Symbol::Q);
    OperatorWord::new(
        2,
        vec![
            OperatorFactor::j(1, Exponent::Symbolic(-alpha - beta)),
            OperatorFactor::a(1, 2, Exponent::Symbolic(beta)),
            OperatorFactor::j(1, Exponent::Symbolic(alpha)),
        ],
    )
    .unwrap()
}

#[test]
fn transpositions_enforce_commutation() {
    let w = OperatorWord::new(
        2,
        vec![
            OperatorFactor::a(1, 2, sym(Symbol::P)),
            OperatorFactor::a(1, 2, sym(Symbol::Q)),
            OperatorFactor::j(1, sym(Symbol::R)),
        ],
    )
    .unwrap();
    // A–A always commutes.
    let swapped = transpose(&w, 0).unwrap();
    assert_eq!(swapped.factors()[0], w.factors()[1]);
    // J₁ does not commute past A₁₂.
    assert!(transpose(&w, 1).is_err());
    // J₂ does commute past A₁₃ (disjoint axes).
    let v = OperatorWord::new(
        3,
        vec![
            OperatorFactor::a(1, 3, sym(Symbol::P)),
            OperatorFactor::j(2, sym(Symbol::Q)),
        ],
    )
    .unwrap();
    assert!(transpose(&v, 0).is_ok());
}

#[test]
fn star_triangle_moves_round_trip_and_check_constraints() {
    let star = star_word();
    let triangle = star_to_triangle(&star, 0).unwrap();
    // [J(γ), A(β), J(α)] ↦ [A(−α), J(−β), A(−γ)].
    match &triangle.factors()[0] {
        OperatorFactor::A { exponent: Exponent::Symbolic(e), .. } => {
            assert_eq!(*e, -LinExpr::symbol(Symbol::P));
        }
        other => panic!("expected A factor, got {other:?}"),
    }
    let back = triangle_to_star(&triangle, 0).unwrap();
    assert_eq!(back, star);
    // Nonzero exponent sum is rejected symbolically.
    let bad = OperatorWord::new(
        2,
        vec![
            OperatorFactor::j(1, sym(Symbol::P)),
            OperatorFactor::a(1, 2, sym(Symbol::Q)),
            OperatorFactor::j(1, sym(Symbol::P)),
        ],
    )
    .unwrap();
    assert!(star_to_triangle(&bad, 0).is_err());
    // Shape mismatch is rejected.
    assert!(triangle_to_star(&star, 0).is_err());
}

#[test]
fn foata_canonical_form_quotients_free_transpositions() {
    let w = OperatorWord::new(
        3,
        vec![
            OperatorFactor::a(1, 3, sym(Symbol::P)),
            OperatorFactor::j(2, sym(Symbol::Q)),
            OperatorFactor::j(1, sym(Symbol::R)),
        ],
    )
    .unwrap();
    // Swap the two commuting leading factors: same class, same canon.
    let v = transpose(&w, 0).unwrap();
    assert_ne!(w, v);
    assert_eq!(foata_canonical(&w).unwrap(), foata_canonical(&v).unwrap());
    assert!(words_equivalent(&w, &v).unwrap());
    // A genuinely different word lands in a different class.
    let u = OperatorWord::new(3, vec![OperatorFactor::j(1, sym(Symbol::R))]).unwrap();
    assert!(!words_equivalent(&w, &u).unwrap());
}

#[test]
fn builtin_yang_baxter_derivation_replays_exactly() {
    let cert = yang_baxter_derivation(None).unwrap();
    assert_eq!(cert.steps.len(), 42);
    assert_eq!(cert.star_triangle_count(), 8);
    let (lhs, rhs) = yang_baxter_words();
    assert_eq!(cert.start_word().unwrap(), lhs);
    assert_eq!(cert.end_word().unwrap(), rhs);
    // The independent checker accepts and returns the end word.
    let end = cert.verify().unwrap();
    assert_eq!(end, rhs);
    // Serialization round trip preserves the certificate bit for bit.
    let back = diagram_calculus::Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(cert, back);
}

#[test]
fn tampered_certificates_are_rejected() {
    let cert = yang_baxter_derivation(None).unwrap();
    // Tamper with one move's position.
    let mut tampered = cert.clone();
    tampered.steps[10].mv = Move::Transpose { position: 0 };
    assert!(tampered.verify().is_err());
    // Tamper with a stored intermediate word.
    let mut tampered = cert.clone();
    tampered.steps[20].word_json = cert.steps[19].word_json.clone();
    assert!(tampered.verify().is_err());
    // Tamper with a stored hash.
    let mut tampered = cert.clone();
    tampered.steps[30].word_hash = cert.start_word_hash.clone();
    assert!(tampered.verify().is_err());
    // Tamper with the start word.
    let mut tampered = cert;
    tampered.start_word_json = star_word().to_json();
    assert!(tampered.verify().is_err());
}

#[test]
fn numeric_mode_residuals_are_small_at_desk_scale() {
    let zero = [0.0, 0.0];
    let cfg = NumericConfig {
        band: 10,
        seed: 11,
        p: [0.0, 0.13],
        q: [0.0, 0.07],
        r: [0.0, -0.11],
        theta: [0.0, 0.19],
        tau: [0.0, 0.05],
    };
    assert_ne!(cfg.p, zero);
    let cert = yang_baxter_derivation(Some(&cfg)).unwrap();
    let summary = cert.numeric.as_ref().expect("numeric mode requested");
    assert!(
        summary.max_strong_residual < 5e-2,
        "strong {}",
        summary.max_strong_residual
    );
    assert!(
        summary.max_weak_residual < 1e-3,
        "weak {}",
        summary.max_weak_residual
    );
    for step in &cert.steps {
        assert!(step.strong_residual.is_some() && step.weak_residual.is_some());
    }
    // Determinism: the numeric run reproduces bit-exactly.
    let again = yang_baxter_derivation(Some(&cfg)).unwrap();
    assert_eq!(cert, again);
}

#[test]
fn search_finds_trivial_and_single_move_derivations() {
    let star = star_word();
    // from = to: empty script.
    let script = search_derivation(&star, &star, 3).unwrap().unwrap();
    assert!(script.is_empty());
    // Star to its triangle: one star-triangle move (no transpositions
    // needed here).
    let triangle = star_to_triangle(&star, 0).unwrap();
    let script = search_derivation(&star, &triangle, 3).unwrap().unwrap();
    assert_eq!(
        script.iter().filter(|m| m.is_star_triangle()).count(),
        1
    );
    assert_eq!(apply_moves(&star, &script).unwrap(), triangle);
    // An unreachable target reports no derivation.
    let other = OperatorWord::new(
        2,
        vec![OperatorFactor::j(2, sym(Symbol::P))],
    )
    .unwrap();
    assert!(search_derivation(&star, &other, 2).unwrap().is_none());
}

#[test]
fn search_rediscovers_the_yang_baxter_derivation() {
    let (lhs, rhs) = yang_baxter_words();
    let cert = search_certificate("yang-baxter-search", &lhs, &rhs, 8, None)
        .unwrap()
        .expect("derivation exists within 8 star-triangle moves");
    assert_eq!(cert.end_word().unwrap(), rhs);
    assert_eq!(cert.verify().unwrap(), rhs);
    assert!(cert.star_triangle_count() >= 8);
}

#[test]
fn diagrams_round_trip_and_match_the_word_structure() {
    let (lhs, _) = yang_baxter_words();
    let diagram = word_to_diagram(&lhs).unwrap();
    // 3 strands, one extra vertex per J factor (6 of them).
    assert_eq!(diagram.m, 3);
    assert_eq!(diagram.vertices.len(), 3 + 6);
    assert_eq!(diagram.edges.len(), lhs.len());
    assert_eq!(
        diagram.edges.iter().filter(|e| e.kind == EdgeKind::JEdge).count(),
        6
    );
    // Order indices are contiguous 1..=K.
    let mut idx: Vec<usize> = diagram.edges.iter().map(|e| e.order_index).collect();
    idx.sort_unstable();
    assert_eq!(idx, (1..=lhs.len()).collect::<Vec<_>>());
    // J edges join vertices with equal rep labels.
    for e in &diagram.edges {
        let (a, b) = (&diagram.vertices[e.from], &diagram.vertices[e.to]);
        match e.kind {
            EdgeKind::JEdge => assert_eq!(a.rep_label, b.rep_label),
            EdgeKind::AEdge => assert_ne!(a.strand, b.strand),
        }
    }
    assert!(diagram.vertices.iter().any(|v| v.kind == PortKind::Target));
    assert_eq!(diagram_to_word(&diagram).unwrap(), lhs);
    // Empty word: strands only, no edges.
    let empty = word_to_diagram(&OperatorWord::identity(2)).unwrap();
    assert_eq!((empty.vertices.len(), empty.edges.len()), (2, 0));
    assert_eq!(diagram_to_word(&empty).unwrap(), OperatorWord::identity(2));
}

#[test]
fn moves_reject_constant_exponent_and_group_action_words() {
    let constant = OperatorWord::new(
        2,
        vec![
            OperatorFactor::j(1, Exponent::Const(Complex64::new(0.0, 0.3))),
            OperatorFactor::a(1, 2, Exponent::Const(Complex64::new(0.0, 0.2))),
            OperatorFactor::j(1, Exponent::Const(Complex64::new(0.0, -0.5))),
        ],
    )
    .unwrap();
    assert!(star_to_triangle(&constant, 0).is_err());
    assert!(foata_canonical(&constant).is_err());
    assert!(word_to_diagram(&constant).is_err());
    // Transpositions never move a group-action factor.
    let with_t = OperatorWord::new(
        2,
        vec![
            OperatorFactor::t(
                1,
                intertwiners::MoebiusElement::identity(),
                Complex64::new(0.0, 0.1),
            ),
            OperatorFactor::j(2, sym(Symbol::P)),
        ],
    )
    .unwrap();
    assert!(transpose(&with_t, 0).is_err());
}

#[test]
fn every_move_preserves_the_word_numerically() {
    // Replay the built-in script at a small band and check that each single
    // move leaves the applied operator unchanged to within truncation.
    let cfg = NumericConfig::new(
        8,
        3,
        &SymbolValues {
            p: Complex64::new(0.0, 0.11),
            q: Complex64::new(0.0, -0.06),
            r: Complex64::new(0.0, 0.09),
            theta: Complex64::new(0.0, 0.15),
            tau: Complex64::new(0.0, 0.04),
        },
    );
    let cert = yang_baxter_derivation(Some(&cfg)).unwrap();
    for step in &cert.steps {
        let strong = step.strong_residual.unwrap();
        if step.mv.is_star_triangle() {
            assert!(strong < 0.2, "star-triangle step residual {strong}");
        } else {
            assert!(strong < 1e-2, "transposition step residual {strong}");
        }
    }
}
