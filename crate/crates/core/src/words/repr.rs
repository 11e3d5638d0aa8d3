//! The M4 condition for word presentations and the presentation of a finite
//! MVS by its own addition table.

use super::{close, BoundedCongruence, Presentation, Relation, Tri, Word, WordError};
use crate::algebra::{ElemId, FiniteMvs};

/// Letters `c` with `c*ū ∈ [a]` and `c*v̄ ∈ [b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M4Witness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub u_bar: Word,
    pub v_bar: Word,
}

/// First letters of the members of a class, with the least tail for each.
fn heads(cong: &BoundedCongruence, letter: usize) -> Vec<Option<Word>> {
    let k = cong.presentation().alphabet().len();
    let mut out = vec![None; k];
    let class = cong.class_of(&Word::letter(letter)).expect("letters are in range");
    for w in cong.members(class) {
        if let Some(c) = w.first() {
            if out[c].is_none() {
                out[c] = Some(w.tail());
            }
        }
    }
    out
}

/// Checks that every two letters `a ≠ b` have a common left factor `c ∈ V`
/// up to the bound, which makes the word quotient satisfy (M4).
///
/// Proved lists one witness per pair; Refuted names a pair whose classes are
/// exact and share no first letter.
pub fn check_m4(p: &Presentation, bound: usize) -> Result<Tri<Vec<M4Witness>, (usize, usize)>, WordError> {
    let cong = close(p, bound)?;
    let k = p.alphabet().len();
    let heads: Vec<Vec<Option<Word>>> = (0..k).map(|a| heads(&cong, a)).collect();
    let mut witnesses = Vec::new();
    let mut undecided = false;
    for a in 0..k {
        for b in a + 1..k {
            let common = (0..k).find_map(|c| match (&heads[a][c], &heads[b][c]) {
                (Some(u), Some(v)) => Some(M4Witness {
                    a,
                    b,
                    c,
                    u_bar: u.clone(),
                    v_bar: v.clone(),
                }),
                _ => None,
            });
            match common {
                Some(w) => witnesses.push(w),
                None => {
                    let exact = |x: usize| cong.is_exact(cong.class_of(&Word::letter(x)).unwrap());
                    if exact(a) && exact(b) {
                        return Ok(Tri::Refuted((a, b)));
                    }
                    undecided = true;
                }
            }
        }
    }
    Ok(if undecided { Tri::Unknown } else { Tri::Proved(witnesses) })
}

/// Letters are the nonzero elements; relations are `m1 m2 ~ m1+m2`.
pub fn present_mvs(m: &FiniteMvs) -> Presentation {
    let alphabet: Vec<String> = m.nonzero().map(|x| m.name(x).to_string()).collect();
    let mut relations = Vec::new();
    for x in m.nonzero() {
        for y in m.nonzero() {
            let s = m.add(x, y);
            debug_assert_ne!(s, m.neutral());
            relations.push(Relation::new(x.0 - 1, y.0 - 1, s.0 - 1));
        }
    }
    Presentation::new(alphabet, relations).expect("element names are distinct and nonempty")
}

/// Left fold of `+` over the letter images; the empty word gives `e`.
pub fn eval_word(m: &FiniteMvs, assignment: &[ElemId], w: &Word) -> ElemId {
    w.letters().iter().fold(m.neutral(), |acc, &l| m.add(acc, assignment[l]))
}

/// The word of length at most one standing for an element.
fn element_word(x: ElemId) -> Word {
    if x.0 == 0 {
        Word::empty()
    } else {
        Word::letter(x.0 - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentationFailure {
    /// A word whose class contains no word of length at most one.
    Unreduced(Word),
    /// Two elements land in the same class.
    NotInjective(ElemId, ElemId),
    /// `[x]*[y]` differs from `[x+y]`.
    SumMismatch(ElemId, ElemId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationReport {
    pub presentation: Presentation,
    /// Representative word of the class of each element, indexed by element.
    pub classes: Vec<Word>,
    pub failure: Option<RepresentationFailure>,
}

impl RepresentationReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `m ↦ [m]` is an isomorphism onto the word quotient of
/// [`present_mvs`], within the given bound.
pub fn verify_representation(m: &FiniteMvs, bound: usize) -> Result<RepresentationReport, WordError> {
    let p = present_mvs(m);
    let cong = close(&p, bound)?;
    let class = |x: ElemId| cong.class_of(&element_word(x)).unwrap();
    let classes = m.elements().map(|x| cong.representative(class(x))).collect();
    let report = |failure| RepresentationReport {
        presentation: p.clone(),
        classes: Vec::clone(&classes),
        failure,
    };
    if let Some(c) = (0..cong.class_count()).find(|&c| cong.representative(c).len() > 1) {
        return Ok(report(Some(RepresentationFailure::Unreduced(cong.representative(c)))));
    }
    for x in m.elements() {
        for y in m.elements().filter(|&y| y > x) {
            if class(x) == class(y) {
                return Ok(report(Some(RepresentationFailure::NotInjective(x, y))));
            }
        }
    }
    for x in m.elements() {
        for y in m.elements() {
            let joined = super::concat(&element_word(x), &element_word(y));
            if cong.class_of(&joined)? != class(m.add(x, y)) {
                return Ok(report(Some(RepresentationFailure::SumMismatch(x, y))));
            }
        }
    }
    Ok(report(None))
}
