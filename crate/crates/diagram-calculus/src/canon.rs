//! Trace-monoid machinery over the commutation relation: Foata canonical
//! forms, dependency closures, class-level star ↔ triangle moves, and a
//! breadth-first derivation search whose output is a word-level move script
//! replayable by [`crate::apply_moves`].

use crate::moves::Move;
use crate::{DiagramError, Result};
use intertwiners::{Exponent, LinExpr, OperatorFactor, OperatorWord};
use std::collections::{HashMap, VecDeque};

/// Internal exact factor: `J` on one axis or `A` on an ordered axis pair,
/// both with symbolic exponents.  Derives a total order so canonical forms
/// are unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum SymFactor {
    A { k: usize, l: usize, e: LinExpr },
    J { axis: usize, e: LinExpr },
}

impl SymFactor {
    fn exponent(&self) -> LinExpr {
        match self {
            SymFactor::A { e, .. } | SymFactor::J { e, .. } => *e,
        }
    }

    fn commutes(&self, other: &SymFactor) -> bool {
        match (self, other) {
            (SymFactor::J { .. }, SymFactor::J { .. }) => true,
            (SymFactor::A { .. }, SymFactor::A { .. }) => true,
            (SymFactor::J { axis, .. }, SymFactor::A { k, l, .. })
            | (SymFactor::A { k, l, .. }, SymFactor::J { axis, .. }) => axis != k && axis != l,
        }
    }
}

fn to_sym(word: &OperatorWord) -> Result<Vec<SymFactor>> {
    word.factors()
        .iter()
        .map(|f| {
            let sym = |e: &Exponent| -> Result<LinExpr> {
                match e {
                    Exponent::Symbolic(l) => Ok(*l),
                    Exponent::Const(_) => Err(DiagramError::Structure(
                        "derivation calculus requires symbolic exponents".into(),
                    )),
                }
            };
            match f {
                OperatorFactor::J { axis, exponent } => Ok(SymFactor::J {
                    axis: *axis,
                    e: sym(exponent)?,
                }),
                OperatorFactor::A { k, l, exponent } => Ok(SymFactor::A {
                    k: *k.min(l),
                    l: *k.max(l),
                    e: sym(exponent)?,
                }),
                OperatorFactor::T { .. } => Err(DiagramError::Structure(
                    "derivation calculus does not rewrite group-action factors".into(),
                )),
            }
        })
        .collect()
}

fn to_word(m: usize, factors: &[SymFactor]) -> OperatorWord {
    let fs = factors
        .iter()
        .map(|f| match f {
            SymFactor::J { axis, e } => OperatorFactor::j(*axis, Exponent::Symbolic(*e)),
            SymFactor::A { k, l, e } => OperatorFactor::a(*k, *l, Exponent::Symbolic(*e)),
        })
        .collect();
    OperatorWord::new(m, fs).expect("symbolic factors are always valid")
}

/// Foata normal form: repeatedly peel the layer of factors that commute
/// with everything remaining before them, sorting each layer.
fn canon_vec(word: &[SymFactor]) -> Vec<SymFactor> {
    let mut rem: Vec<SymFactor> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rem.is_empty() {
        let mut taken: Vec<SymFactor> = Vec::new();
        let mut rest: Vec<SymFactor> = Vec::new();
        for f in rem {
            if rest.iter().all(|g| f.commutes(g)) && taken.iter().all(|g| f.commutes(g)) {
                taken.push(f);
            } else {
                rest.push(f);
            }
        }
        taken.sort();
        out.extend(taken);
        rem = rest;
    }
    out
}

/// `before[i][j]`: factor `i` must act before factor `j` (transitive
/// closure of non-commutation in word order).
fn dependency_closure(word: &[SymFactor]) -> Vec<Vec<bool>> {
    let n = word.len();
    let mut before = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if !word[i].commutes(&word[j]) {
                before[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if before[i][k] {
                for j in 0..n {
                    if before[k][j] {
                        before[i][j] = true;
                    }
                }
            }
        }
    }
    before
}

#[derive(Clone, Copy, Debug)]
struct ClassTag {
    star: bool,
    i: usize,
    j: usize,
    k: usize,
}

/// All star ↔ triangle moves applicable anywhere in the trace class of
/// `word`, each returned as a concrete representative of the result class.
fn class_st_moves(word: &[SymFactor]) -> Vec<(Vec<SymFactor>, ClassTag)> {
    let n = word.len();
    let before = dependency_closure(word);
    let mut res = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (&word[i], &word[j], &word[k]);
                let pattern = match (x, y, z) {
                    (
                        SymFactor::J { axis: ax, .. },
                        SymFactor::A { k: ak, l: al, .. },
                        SymFactor::J { axis: az, .. },
                    ) if ax == az && (ax == ak || ax == al) => {
                        Some((true, *ax, *ak, *al))
                    }
                    (
                        SymFactor::A { k: k1, l: l1, .. },
                        SymFactor::J { axis, .. },
                        SymFactor::A { k: k2, l: l2, .. },
                    ) if (k1, l1) == (k2, l2) && (axis == k1 || axis == l1) => {
                        Some((false, *axis, *k1, *l1))
                    }
                    _ => None,
                };
                let Some((star, axis, ak, al)) = pattern else { continue };
                if !(x.exponent() + y.exponent() + z.exponent()).is_zero() {
                    continue;
                }
                // Contiguity in the class: nothing may be forced strictly
                // between the first and last factor of the pattern.
                if (0..n).any(|m| {
                    m != i && m != j && m != k && before[i][m] && before[m][k]
                }) {
                    continue;
                }
                // Linear extension with the triple adjacent: dependencies of
                // the triple go in front, dependents behind, free factors
                // keep their side by word position.
                let mut pre = Vec::new();
                let mut post = Vec::new();
                for m in 0..n {
                    if m == i || m == j || m == k {
                        continue;
                    }
                    if before[m][i] || before[m][j] || before[m][k] {
                        pre.push(m);
                    } else if before[i][m] || before[j][m] || before[k][m] {
                        post.push(m);
                    } else if m < i {
                        pre.push(m);
                    } else {
                        post.push(m);
                    }
                }
                let repl = if star {
                    vec![
                        SymFactor::A { k: ak, l: al, e: -z.exponent() },
                        SymFactor::J { axis, e: -y.exponent() },
                        SymFactor::A { k: ak, l: al, e: -x.exponent() },
                    ]
                } else {
                    vec![
                        SymFactor::J { axis, e: -z.exponent() },
                        SymFactor::A { k: ak, l: al, e: -y.exponent() },
                        SymFactor::J { axis, e: -x.exponent() },
                    ]
                };
                let mut new = Vec::with_capacity(n);
                new.extend(pre.iter().map(|&m| word[m]));
                new.extend(repl);
                new.extend(post.iter().map(|&m| word[m]));
                res.push((new, ClassTag { star, i, j, k }));
            }
        }
    }
    res
}

/// Expand one class-level move on a concrete word into adjacent
/// transpositions followed by the star ↔ triangle replacement.
fn expand_step(word: &[SymFactor], tag: ClassTag) -> Result<(Vec<Move>, Vec<SymFactor>)> {
    let ClassTag { star, i, j, k } = tag;
    let before = dependency_closure(word);
    // Label each position: the pattern factors, plus the factors between
    // them split into those that must stay in front (`pre`, priority 0) and
    // those pushed behind (`post`, priority 4).
    let prio_of = |t: usize| -> Option<u8> {
        if t == i {
            Some(1)
        } else if t == j {
            Some(2)
        } else if t == k {
            Some(3)
        } else if t > i && t < k {
            Some(if before[i][t] { 4 } else { 0 })
        } else {
            None
        }
    };
    let mut tagged: Vec<(Option<u8>, SymFactor)> = word
        .iter()
        .enumerate()
        .map(|(t, f)| (prio_of(t), *f))
        .collect();
    let mut moves = Vec::new();
    // Bubble toward the arrangement pre…, x, y, z, post…; every swap must
    // be between commuting factors or the class move was unsound.
    let mut changed = true;
    while changed {
        changed = false;
        for t in 0..tagged.len() - 1 {
            if let (Some(pa), Some(pb)) = (tagged[t].0, tagged[t + 1].0) {
                if pa > pb {
                    if !tagged[t].1.commutes(&tagged[t + 1].1) {
                        return Err(DiagramError::NonCommuting(
                            "class move expansion required an illegal swap".into(),
                        ));
                    }
                    moves.push(Move::Transpose { position: t });
                    tagged.swap(t, t + 1);
                    changed = true;
                }
            }
        }
    }
    let px = tagged
        .iter()
        .position(|(lab, _)| *lab == Some(1))
        .ok_or_else(|| DiagramError::Pattern("pattern head lost during expansion".into()))?;
    if tagged.get(px + 1).map(|t| t.0) != Some(Some(2))
        || tagged.get(px + 2).map(|t| t.0) != Some(Some(3))
    {
        return Err(DiagramError::Pattern(
            "pattern did not become adjacent during expansion".into(),
        ));
    }
    let cur: Vec<SymFactor> = tagged.into_iter().map(|(_, f)| f).collect();
    let (xx, yy, zz) = (&cur[px], &cur[px + 1], &cur[px + 2]);
    let repl = if star {
        moves.push(Move::StarToTriangle { position: px });
        let (axis, ak, al) = match (xx, yy) {
            (SymFactor::J { axis, .. }, SymFactor::A { k, l, .. }) => (*axis, *k, *l),
            _ => return Err(DiagramError::Pattern("star pattern corrupted".into())),
        };
        vec![
            SymFactor::A { k: ak, l: al, e: -zz.exponent() },
            SymFactor::J { axis, e: -yy.exponent() },
            SymFactor::A { k: ak, l: al, e: -xx.exponent() },
        ]
    } else {
        moves.push(Move::TriangleToStar { position: px });
        let (axis, ak, al) = match (yy, xx) {
            (SymFactor::J { axis, .. }, SymFactor::A { k, l, .. }) => (*axis, *k, *l),
            _ => return Err(DiagramError::Pattern("triangle pattern corrupted".into())),
        };
        vec![
            SymFactor::J { axis, e: -zz.exponent() },
            SymFactor::A { k: ak, l: al, e: -yy.exponent() },
            SymFactor::J { axis, e: -xx.exponent() },
        ]
    };
    let mut new = cur[..px].to_vec();
    new.extend(repl);
    new.extend(cur[px + 3..].iter().copied());
    Ok((moves, new))
}

/// Emit the transpositions that turn `from` into `to` inside one trace
/// class; errors when the words are not equivalent.
fn align_within_class(from: &[SymFactor], to: &[SymFactor]) -> Result<Vec<Move>> {
    if from.len() != to.len() {
        return Err(DiagramError::Pattern(
            "words of different length cannot be aligned".into(),
        ));
    }
    let mut cur = from.to_vec();
    let mut moves = Vec::new();
    for pos in 0..to.len() {
        // Find the first matching factor that every intermediate factor
        // commutes past; its existence characterizes trace equivalence.
        let idx = (pos..cur.len())
            .find(|&idx| {
                cur[idx] == to[pos] && (pos..idx).all(|t| cur[t].commutes(&cur[idx]))
            })
            .ok_or_else(|| {
                DiagramError::Pattern("words are not equivalent in the commutation monoid".into())
            })?;
        for t in (pos..idx).rev() {
            moves.push(Move::Transpose { position: t });
            cur.swap(t, t + 1);
        }
    }
    Ok(moves)
}

/// Foata canonical form of a symbolic word: a unique representative of its
/// commutation class.
pub fn foata_canonical(word: &OperatorWord) -> Result<OperatorWord> {
    Ok(to_word(word.m(), &canon_vec(&to_sym(word)?)))
}

/// `true` when the two words lie in the same commutation class.
pub fn words_equivalent(a: &OperatorWord, b: &OperatorWord) -> Result<bool> {
    if a.m() != b.m() {
        return Ok(false);
    }
    Ok(canon_vec(&to_sym(a)?) == canon_vec(&to_sym(b)?))
}

/// Breadth-first search for a derivation of `to` from `from` using at most
/// `depth_limit` star ↔ triangle moves (plus any number of transpositions).
/// Returns a word-level move script, or `None` when no derivation exists
/// within the limit.
pub fn search_derivation(
    from: &OperatorWord,
    to: &OperatorWord,
    depth_limit: usize,
) -> Result<Option<Vec<Move>>> {
    if from.m() != to.m() {
        return Err(DiagramError::Pattern(
            "cannot derive between words over different tori".into(),
        ));
    }
    let start_word = to_sym(from)?;
    let goal_word = to_sym(to)?;
    let start = canon_vec(&start_word);
    let goal = canon_vec(&goal_word);

    // Class-level BFS: states are canonical forms, transitions are
    // star ↔ triangle moves.
    let mut parents: HashMap<Vec<SymFactor>, Option<(Vec<SymFactor>, ClassTag)>> = HashMap::new();
    parents.insert(start.clone(), None);
    let mut class_path: Option<Vec<(Vec<SymFactor>, ClassTag)>> = None;
    if start == goal {
        class_path = Some(Vec::new());
    } else {
        let mut queue = VecDeque::new();
        queue.push_back((start.clone(), 0usize));
        'bfs: while let Some((cur, depth)) = queue.pop_front() {
            if depth >= depth_limit {
                continue;
            }
            for (new, tag) in class_st_moves(&cur) {
                let cn = canon_vec(&new);
                if parents.contains_key(&cn) {
                    continue;
                }
                parents.insert(cn.clone(), Some((cur.clone(), tag)));
                if cn == goal {
                    let mut path = Vec::new();
                    let mut node = cn;
                    while let Some(Some((prev, tag))) = parents.get(&node) {
                        path.push((prev.clone(), *tag));
                        node = prev.clone();
                    }
                    path.reverse();
                    class_path = Some(path);
                    break 'bfs;
                }
                queue.push_back((cn, depth + 1));
            }
        }
    }
    let Some(class_path) = class_path else {
        return Ok(None);
    };

    // Expand each class move into concrete word-level moves on the running
    // word, relocating the pattern factors of the canonical representative.
    let mut script = Vec::new();
    let mut cur = start_word;
    for (prev_class, tag) in class_path {
        let (fx, fy, fz) = (prev_class[tag.i], prev_class[tag.j], prev_class[tag.k]);
        let mut used = [usize::MAX; 3];
        for (slot, target) in [fx, fy, fz].iter().enumerate() {
            used[slot] = cur
                .iter()
                .enumerate()
                .position(|(t, f)| f == target && !used[..slot].contains(&t))
                .ok_or_else(|| {
                    DiagramError::Pattern("class move pattern missing from running word".into())
                })?;
        }
        let (pi, pj, pk) = (used[0], used[1], used[2]);
        if !(pi < pj && pj < pk) {
            return Err(DiagramError::Pattern(
                "class move pattern out of order in running word".into(),
            ));
        }
        let (moves, next) = expand_step(&cur, ClassTag { star: tag.star, i: pi, j: pj, k: pk })?;
        script.extend(moves);
        cur = next;
    }

    // Final alignment inside the goal class.
    script.extend(align_within_class(&cur, &goal_word)?);
    Ok(Some(script))
}
