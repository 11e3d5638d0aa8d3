//! Bounded congruence closure over all words up to a length bound.

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;

use super::{one_step, Presentation, Relation, Tri, Word, WordError};
use crate::algebra::Limits;

/// Index of a class in a [`BoundedCongruence`]; classes are numbered in the
/// order of their least member.
pub type ClassId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// `ab → c`
    Shorten,
    /// `c → ab`
    Lengthen,
}

/// One application of a relation at `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub from: Word,
    pub to: Word,
    pub relation: Relation,
    pub position: usize,
    pub kind: StepKind,
}

/// A sequence of one-step moves connecting two words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub start: Word,
    pub steps: Vec<Step>,
}

impl Chain {
    pub fn end(&self) -> &Word {
        self.steps.last().map_or(&self.start, |s| &s.to)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every step is a valid one-step move from the previous word, using a
    /// relation of `p`.
    pub fn replays(&self, p: &Presentation) -> bool {
        let mut current = &self.start;
        for s in &self.steps {
            if &s.from != current || !p.relations().contains(&s.relation) || !one_step(&s.from, &s.to, s.relation) {
                return false;
            }
            current = &s.to;
        }
        true
    }
}

/// Why two words are known to lie in different classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The class of `word` is closed under every one-step move, so it is the
    /// full class and the other word is not in it.
    ExactClass(Word),
    /// A monoid model satisfying every relation evaluates the words differently.
    Model(super::MonoidModel),
}

/// The partition of all words of length `≤ bound` by chains of one-step
/// moves that stay within the bound.
#[derive(Debug, Clone)]
pub struct BoundedCongruence {
    presentation: Presentation,
    bound: usize,
    /// `offsets[n]` is the id of the first word of length `n`.
    offsets: Vec<usize>,
    class_of: Vec<ClassId>,
    class_start: Vec<usize>,
    members: Vec<usize>,
    exact: Vec<bool>,
}

pub fn close(p: &Presentation, bound: usize) -> Result<BoundedCongruence, WordError> {
    close_with_budget(p, bound, Limits::default().word_budget)
}

/// Closes `p` over words of length `≤ bound`, refusing when there are more
/// than `budget` such words.
pub fn close_with_budget(p: &Presentation, bound: usize, budget: u64) -> Result<BoundedCongruence, WordError> {
    if bound < 2 {
        return Err(WordError::BoundTooSmall(bound));
    }
    let k = p.alphabet().len() as u128;
    let mut offsets = vec![0usize];
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=bound {
        total += level;
        if total > budget as u128 {
            let words = (0..=bound as u32).map(|i| k.saturating_pow(i)).fold(0u128, u128::saturating_add);
            return Err(WordError::SizeExceeded { words, budget });
        }
        offsets.push(total as usize);
        level *= k;
    }
    let mut c = BoundedCongruence {
        presentation: p.clone(),
        bound,
        offsets,
        class_of: Vec::new(),
        class_start: Vec::new(),
        members: Vec::new(),
        exact: Vec::new(),
    };
    let n = c.word_count();
    let k = p.alphabet().len();
    let mut by_pair: Vec<Vec<usize>> = vec![Vec::new(); k * k];
    for r in p.relations() {
        by_pair[r.a * k + r.b].push(r.c);
    }

    // every one-step pair consists of a word and a shortening of it, so
    // scanning shortenings alone visits every edge of the universe
    let mut uf = UnionFind::<usize>::new(n);
    for id in c.offsets[2]..n {
        let w = c.word(id);
        for i in 0..w.len() - 1 {
            for &rc in &by_pair[w.0[i] * k + w.0[i + 1]] {
                let mut short = Vec::with_capacity(w.len() - 1);
                short.extend_from_slice(&w.0[..i]);
                short.push(rc);
                short.extend_from_slice(&w.0[i + 2..]);
                uf.union(id, c.id_of_letters(&short));
            }
        }
    }

    // class ids follow the least member, which is the first id seen
    let mut root_class = vec![usize::MAX; n];
    let mut class_of = vec![0; n];
    let mut sizes = Vec::new();
    for (id, class) in class_of.iter_mut().enumerate() {
        let r = uf.find(id);
        if root_class[r] == usize::MAX {
            root_class[r] = sizes.len();
            sizes.push(0usize);
        }
        *class = root_class[r];
        sizes[root_class[r]] += 1;
    }
    let mut class_start = Vec::with_capacity(sizes.len() + 1);
    class_start.push(0);
    for s in &sizes {
        class_start.push(class_start.last().unwrap() + s);
    }
    let mut fill = class_start.clone();
    let mut members = vec![0; n];
    for id in 0..n {
        members[fill[class_of[id]]] = id;
        fill[class_of[id]] += 1;
    }

    // a class is exact unless some member of maximal length can be lengthened
    let mut is_rhs = vec![false; k];
    for r in p.relations() {
        is_rhs[r.c] = true;
    }
    let mut exact = vec![true; sizes.len()];
    for id in c.offsets[bound]..n {
        if c.word(id).0.iter().any(|&l| is_rhs[l]) {
            exact[class_of[id]] = false;
        }
    }
    c.class_of = class_of;
    c.class_start = class_start;
    c.members = members;
    c.exact = exact;
    Ok(c)
}

impl BoundedCongruence {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn word_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn class_count(&self) -> usize {
        self.exact.len()
    }

    fn id_of_letters(&self, letters: &[usize]) -> usize {
        let k = self.presentation.alphabet().len();
        self.offsets[letters.len()] + letters.iter().fold(0, |acc, &l| acc * k + l)
    }

    /// Position of `w` in length-then-lexicographic order.
    pub fn word_id(&self, w: &Word) -> Result<usize, WordError> {
        self.presentation.check_word(w)?;
        if w.len() > self.bound {
            return Err(WordError::WordTooLong {
                len: w.len(),
                bound: self.bound,
            });
        }
        Ok(self.id_of_letters(&w.0))
    }

    pub fn word(&self, id: usize) -> Word {
        let len = self.offsets.partition_point(|&o| o <= id) - 1;
        let k = self.presentation.alphabet().len();
        let mut value = id - self.offsets[len];
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = value % k;
            value /= k;
        }
        Word(letters)
    }

    pub fn class_of(&self, w: &Word) -> Result<ClassId, WordError> {
        Ok(self.class_of[self.word_id(w)?])
    }

    pub fn same_class(&self, u: &Word, v: &Word) -> Result<bool, WordError> {
        Ok(self.class_of(u)? == self.class_of(v)?)
    }

    /// Members of a class in length-then-lexicographic order.
    pub fn members(&self, class: ClassId) -> impl Iterator<Item = Word> + '_ {
        self.members[self.class_start[class]..self.class_start[class + 1]]
            .iter()
            .map(|&id| self.word(id))
    }

    pub fn class_size(&self, class: ClassId) -> usize {
        self.class_start[class + 1] - self.class_start[class]
    }

    /// The least member of a class.
    pub fn representative(&self, class: ClassId) -> Word {
        self.word(self.members[self.class_start[class]])
    }

    pub fn representatives(&self) -> Vec<Word> {
        (0..self.class_count()).map(|c| self.representative(c)).collect()
    }

    /// The class is closed under all one-step moves, so it is a full class
    /// of the unbounded closure.
    pub fn is_exact(&self, class: ClassId) -> bool {
        self.exact[class]
    }

    /// One-step neighbours of `w` that stay within the bound.
    pub fn neighbors(&self, w: &Word) -> Vec<Step> {
        let mut out = Vec::new();
        let l = &w.0;
        for &r in self.presentation.relations() {
            for i in 0..l.len() {
                if i + 1 < l.len() && l[i] == r.a && l[i + 1] == r.b {
                    let mut to = l[..i].to_vec();
                    to.push(r.c);
                    to.extend_from_slice(&l[i + 2..]);
                    out.push(Step {
                        from: w.clone(),
                        to: Word(to),
                        relation: r,
                        position: i,
                        kind: StepKind::Shorten,
                    });
                }
                if l[i] == r.c && l.len() < self.bound {
                    let mut to = l[..i].to_vec();
                    to.extend([r.a, r.b]);
                    to.extend_from_slice(&l[i + 1..]);
                    out.push(Step {
                        from: w.clone(),
                        to: Word(to),
                        relation: r,
                        position: i,
                        kind: StepKind::Lengthen,
                    });
                }
            }
        }
        out
    }

    /// A shortest chain of one-step moves from `u` to `v` within the bound.
    pub fn chain(&self, u: &Word, v: &Word) -> Result<Option<Chain>, WordError> {
        let (from, to) = (self.word_id(u)?, self.word_id(v)?);
        if self.class_of[from] != self.class_of[to] {
            return Ok(None);
        }
        let mut parent: std::collections::HashMap<usize, Step> = std::collections::HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = std::collections::HashSet::from([from]);
        while let Some(id) = queue.pop_front() {
            if id == to {
                break;
            }
            for step in self.neighbors(&self.word(id)) {
                let next = self.id_of_letters(&step.to.0);
                if seen.insert(next) {
                    parent.insert(next, step);
                    queue.push_back(next);
                }
            }
        }
        let mut steps = Vec::new();
        let mut at = to;
        while at != from {
            let step = parent.remove(&at).expect("same class implies a path");
            at = self.id_of_letters(&step.from.0);
            steps.push(step);
        }
        steps.reverse();
        Ok(Some(Chain {
            start: u.clone(),
            steps,
        }))
    }

    /// Proved with a chain, Refuted when either class is exact, else Unknown.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<Tri<Chain, Refutation>, WordError> {
        let (cu, cv) = (self.class_of(u)?, self.class_of(v)?);
        if cu == cv {
            return Ok(Tri::Proved(self.chain(u, v)?.expect("same class")));
        }
        if self.is_exact(cv) {
            return Ok(Tri::Refuted(Refutation::ExactClass(v.clone())));
        }
        if self.is_exact(cu) {
            return Ok(Tri::Refuted(Refutation::ExactClass(u.clone())));
        }
        Ok(Tri::Unknown)
    }
}

/// Decides `u 𝐑_T v` as far as the closure at `bound` allows.
pub fn words_equal(p: &Presentation, u: &Word, v: &Word, bound: usize) -> Result<Tri<Chain, Refutation>, WordError> {
    close(p, bound)?.equal(u, v)
}
