//! Words over an alphabet and presentations by relations `ab ~ c`.
//!
//! A presentation `(V, R)` generates the equivalence `𝐑_T` on words: the
//! transitive closure of the one-step moves that replace a factor `ab` by `c`
//! or `c` by `ab` at a single position. `𝐑_T` is a congruence for
//! concatenation, and membership is only semi-decidable in general, so the
//! engine answers with [`Tri`] verdicts computed on bounded word universes.

mod closure;
mod model;
mod repr;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use closure::{
    close, close_with_budget, words_equal, BoundedCongruence, Chain, ClassId, Refutation, Step, StepKind,
};
pub use model::{find_separating_model, for_each_monoid, MonoidModel};
pub use repr::{
    check_m4, eval_word, present_mvs, verify_representation, M4Witness, RepresentationFailure,
    RepresentationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(usize),
    #[error("bound {0} is too small; at least 2 is required")]
    BoundTooSmall(usize),
    #[error("{words} words up to the bound exceed the budget of {budget}")]
    SizeExceeded { words: u128, budget: u64 },
    #[error("word of length {len} exceeds the bound {bound}")]
    WordTooLong { len: usize, bound: usize },
}

/// Three-valued answer of a bounded semi-decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tri<P, R> {
    Proved(P),
    Refuted(R),
    Unknown,
}

impl<P, R> Tri<P, R> {
    pub fn is_proved(&self) -> bool {
        matches!(self, Tri::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Tri::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Tri::Unknown)
    }
}

/// A finite sequence of letter indices. The empty word is `0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: usize) -> Self {
        Word(vec![a])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// The word without its first letter.
    pub fn tail(&self) -> Word {
        Word(self.0.iter().skip(1).copied().collect())
    }
}

/// `u * v`.
pub fn concat(u: &Word, v: &Word) -> Word {
    let mut letters = Vec::with_capacity(u.len() + v.len());
    letters.extend_from_slice(&u.0);
    letters.extend_from_slice(&v.0);
    Word(letters)
}

/// The relation `ab ~ c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Relation {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Relation { a, b, c }
    }
}

/// `u R_{ab~c} v`: equal, or one replacement `ab → c` or `c → ab` at a
/// single position turns `u` into `v`.
pub fn one_step(u: &Word, v: &Word, rel: Relation) -> bool {
    if u == v {
        return true;
    }
    let shortens = |long: &[usize], short: &[usize]| {
        long.len() == short.len() + 1
            && (0..short.len()).any(|i| {
                long[..i] == short[..i]
                    && long[i] == rel.a
                    && long[i + 1] == rel.b
                    && short[i] == rel.c
                    && long[i + 2..] == short[i + 1..]
            })
    };
    shortens(&u.0, &v.0) || shortens(&v.0, &u.0)
}

/// An alphabet with a set of relations `ab ~ c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Vec<String>,
    relations: BTreeSet<Relation>,
}

impl Presentation {
    pub fn new(
        alphabet: Vec<String>,
        relations: impl IntoIterator<Item = Relation>,
    ) -> Result<Self, WordError> {
        if alphabet.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        for (i, l) in alphabet.iter().enumerate() {
            if l.is_empty() {
                return Err(WordError::UnknownLetter(String::new()));
            }
            if alphabet[..i].contains(l) {
                return Err(WordError::DuplicateLetter(l.clone()));
            }
        }
        let relations: BTreeSet<Relation> = relations.into_iter().collect();
        let k = alphabet.len();
        if let Some(r) = relations.iter().find(|r| r.a >= k || r.b >= k || r.c >= k) {
            return Err(WordError::LetterOutOfRange(r.a.max(r.b).max(r.c)));
        }
        Ok(Presentation {
            alphabet,
            relations,
        })
    }

    /// Builds from letter names, e.g. `&[("a", "b", "c")]` for `ab ~ c`.
    pub fn from_names<S: AsRef<str>>(letters: &[S], relations: &[(&str, &str, &str)]) -> Result<Self, WordError> {
        let alphabet: Vec<String> = letters.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup = |s: &str| {
            alphabet
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| WordError::UnknownLetter(s.to_string()))
        };
        let rels = relations
            .iter()
            .map(|(a, b, c)| Ok(Relation::new(lookup(a)?, lookup(b)?, lookup(c)?)))
            .collect::<Result<Vec<_>, WordError>>()?;
        Presentation::new(alphabet, rels)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn relations(&self) -> &BTreeSet<Relation> {
        &self.relations
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        match w.0.iter().find(|&&l| l >= self.alphabet.len()) {
            Some(&l) => Err(WordError::LetterOutOfRange(l)),
            None => Ok(()),
        }
    }

    /// Concatenation restricted to words over this alphabet.
    pub fn concat(&self, u: &Word, v: &Word) -> Result<Word, WordError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(concat(u, v))
    }

    fn single_char_letters(&self) -> bool {
        self.alphabet.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses `abcd` when every letter is one character, `x1,x2` otherwise.
    /// The empty string, or `0` when `0` is not a letter, is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s.is_empty() || (s == "0" && self.letter_index("0").is_none()) {
            return Ok(Word::empty());
        }
        let tokens: Vec<String> = if s.contains(',') || !self.single_char_letters() {
            s.split(',').map(|t| t.trim().to_string()).collect()
        } else {
            s.chars().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| self.letter_index(t).ok_or_else(|| WordError::UnknownLetter(t.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return if self.letter_index("0").is_none() { "0".into() } else { String::new() };
        }
        let names = w.0.iter().map(|&l| self.alphabet[l].as_str());
        if self.single_char_letters() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(",")
        }
    }

    pub fn format_relation(&self, r: Relation) -> String {
        let sep = if self.single_char_letters() { "" } else { "," };
        format!(
            "{}{sep}{}~{}",
            self.alphabet[r.a], self.alphabet[r.b], self.alphabet[r.c]
        )
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|&r| self.format_relation(r)).collect();
        write!(f, "<{} | {}>", self.alphabet.join(" "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn p_abcd() -> Presentation {
        Presentation::from_names(&["a", "b", "c", "d"], &[("a", "b", "c"), ("a", "d", "b"), ("b", "c", "a")]).unwrap()
    }

    #[test]
    fn concat_basics() {
        let p = p_abcd();
        let ab = p.parse_word("ab").unwrap();
        let cd = p.parse_word("cd").unwrap();
        assert_eq!(concat(&ab, &cd), p.parse_word("abcd").unwrap());
        assert_eq!(concat(&Word::empty(), &ab), ab);
        assert_eq!(p.concat(&ab, &Word(vec![9])), Err(WordError::LetterOutOfRange(9)));
    }

    #[test]
    fn one_step_moves_from_the_chain() {
        let p = p_abcd();
        let w = |s| p.parse_word(s).unwrap();
        let bc_a = Relation::new(1, 2, 0);
        let ad_b = Relation::new(0, 3, 1);
        let ab_c = Relation::new(0, 1, 2);
        assert!(one_step(&w("abcd"), &w("aad"), bc_a));
        assert!(one_step(&w("aad"), &w("abcd"), bc_a));
        assert!(one_step(&w("aad"), &w("ab"), ad_b));
        assert!(one_step(&w("ab"), &w("c"), ab_c));
        assert!(!one_step(&w("d"), &w("c"), ab_c));
        assert!(!one_step(&w("abcd"), &w("ab"), ab_c));
        assert!(one_step(&w("d"), &w("d"), ab_c));
    }

    #[test]
    fn word_syntax() {
        let p = Presentation::from_names(&["x1", "x2"], &[]).unwrap();
        assert_eq!(p.parse_word("x1,x2,x1").unwrap(), Word(vec![0, 1, 0]));
        assert_eq!(p.format_word(&Word(vec![0, 1])), "x1,x2");
        assert_eq!(p.parse_word("0").unwrap(), Word::empty());
        assert_eq!(p.parse_word("x3"), Err(WordError::UnknownLetter("x3".into())));
        let q = Presentation::from_names(&["1", "a"], &[("1", "a", "a")]).unwrap();
        assert_eq!(q.parse_word("1a").unwrap(), Word(vec![0, 1]));
        assert_eq!(q.format_relation(Relation::new(0, 1, 1)), "1a~a");
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(Presentation::new(vec![], []), Err(WordError::EmptyAlphabet));
        assert_eq!(
            Presentation::new(vec!["a".into(), "a".into()], []),
            Err(WordError::DuplicateLetter("a".into()))
        );
        assert_eq!(
            Presentation::new(vec!["a".into()], [Relation::new(0, 0, 1)]),
            Err(WordError::LetterOutOfRange(1))
        );
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(0usize..3, 0..6).prop_map(Word)
    }

    proptest! {
        #[test]
        fn concat_is_associative(u in word_strategy(), v in word_strategy(), w in word_strategy()) {
            prop_assert_eq!(concat(&concat(&u, &v), &w), concat(&u, &concat(&v, &w)));
            prop_assert_eq!(concat(&u, &Word::empty()), u.clone());
        }

        #[test]
        fn one_step_is_symmetric(u in word_strategy(), v in word_strategy(), a in 0usize..3, b in 0usize..3, c in 0usize..3) {
            let r = Relation::new(a, b, c);
            prop_assert_eq!(one_step(&u, &v, r), one_step(&v, &u, r));
        }
    }
}
