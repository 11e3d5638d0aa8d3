//! Boolean relations over a finite carrier.

use std::fmt;

use crate::algebra::ElemId;

/// A binary relation on `{0, .., size-1}` stored as a dense boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemRelation {
    size: usize,
    bits: Vec<bool>,
}

/// Why a relation fails to be an equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceFailure {
    NotReflexive(ElemId),
    NotSymmetric(ElemId, ElemId),
    NotTransitive(ElemId, ElemId, ElemId),
}

impl ElemRelation {
    pub fn empty(size: usize) -> Self {
        ElemRelation {
            size,
            bits: vec![false; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut r = Self::empty(size);
        for i in 0..size {
            r.bits[i * size + i] = true;
        }
        r
    }

    pub fn full(size: usize) -> Self {
        ElemRelation {
            size,
            bits: vec![true; size * size],
        }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(ElemId, ElemId) -> bool) -> Self {
        let mut r = Self::empty(size);
        for i in 0..size {
            for j in 0..size {
                r.bits[i * size + j] = f(ElemId(i), ElemId(j));
            }
        }
        r
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (ElemId, ElemId)>) -> Self {
        let mut r = Self::empty(size);
        for (a, b) in pairs {
            r.set(a, b, true);
        }
        r
    }

    /// The equivalence relation whose classes are `classes`. Elements not
    /// mentioned end up in singleton classes.
    pub fn from_classes(size: usize, classes: &[Vec<ElemId>]) -> Self {
        let mut r = Self::identity(size);
        for class in classes {
            for &a in class {
                for &b in class {
                    r.set(a, b, true);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: ElemId, b: ElemId) -> bool {
        self.bits[a.0 * self.size + b.0]
    }

    pub fn set(&mut self, a: ElemId, b: ElemId, value: bool) {
        self.bits[a.0 * self.size + b.0] = value;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        let n = self.size;
        (0..n * n)
            .filter(move |&k| self.bits[k])
            .map(move |k| (ElemId(k / n), ElemId(k % n)))
    }

    pub fn is_subset_of(&self, other: &ElemRelation) -> bool {
        self.size == other.size && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Relational composition: `a (self;other) c` iff `a self b` and `b other c` for some `b`.
    pub fn compose(&self, other: &ElemRelation) -> ElemRelation {
        assert_eq!(self.size, other.size, "relation sizes differ");
        let n = self.size;
        ElemRelation::from_fn(n, |a, c| {
            (0..n).any(|b| self.get(a, ElemId(b)) && other.get(ElemId(b), c))
        })
    }

    pub fn reflexivity_failure(&self) -> Option<ElemId> {
        (0..self.size).map(ElemId).find(|&a| !self.get(a, a))
    }

    pub fn symmetry_failure(&self) -> Option<(ElemId, ElemId)> {
        self.pairs().find(|&(a, b)| !self.get(b, a))
    }

    pub fn transitivity_failure(&self) -> Option<(ElemId, ElemId, ElemId)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                if !self.get(ElemId(a), ElemId(b)) {
                    continue;
                }
                for c in 0..n {
                    if self.get(ElemId(b), ElemId(c)) && !self.get(ElemId(a), ElemId(c)) {
                        return Some((ElemId(a), ElemId(b), ElemId(c)));
                    }
                }
            }
        }
        None
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexivity_failure().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_failure().is_none()
    }

    pub fn equivalence_failure(&self) -> Option<EquivalenceFailure> {
        if let Some(a) = self.reflexivity_failure() {
            return Some(EquivalenceFailure::NotReflexive(a));
        }
        if let Some((a, b)) = self.symmetry_failure() {
            return Some(EquivalenceFailure::NotSymmetric(a, b));
        }
        self.transitivity_failure()
            .map(|(a, b, c)| EquivalenceFailure::NotTransitive(a, b, c))
    }

    pub fn is_equivalence(&self) -> bool {
        self.equivalence_failure().is_none()
    }

    /// Smallest equivalence relation containing `self`.
    pub fn equivalence_closure(&self) -> ElemRelation {
        let n = self.size;
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        for (a, b) in self.pairs() {
            uf.union(a.0, b.0);
        }
        ElemRelation::from_fn(n, |a, b| uf.equiv(a.0, b.0))
    }

    /// Equivalence classes, each sorted, ordered by least member.
    ///
    /// Only meaningful for equivalence relations.
    pub fn classes(&self) -> Vec<Vec<ElemId>> {
        let n = self.size;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: Vec<ElemId> = (a..n)
                .filter(|&b| self.get(ElemId(a), ElemId(b)))
                .map(ElemId)
                .collect();
            for b in &class {
                seen[b.0] = true;
            }
            out.push(class);
        }
        out
    }
}

impl fmt::Debug for ElemRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.pairs().map(|(a, b)| (a.0, b.0)))
            .finish()
    }
}
