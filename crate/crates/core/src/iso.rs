//! Isomorphism search between small MVSs.

use crate::algebra::{ElemId, FiniteMvs};
use crate::morphism::MvsMap;

/// Per-element invariant preserved by every isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    leq_out: usize,
    leq_in: usize,
    lt_out: usize,
    lt_in: usize,
    idempotent: bool,
}

fn signatures(m: &FiniteMvs) -> Vec<Signature> {
    m.elements()
        .map(|a| Signature {
            leq_out: m.elements().filter(|&b| m.leq(a, b)).count(),
            leq_in: m.elements().filter(|&b| m.leq(b, a)).count(),
            lt_out: m.elements().filter(|&b| m.lt(a, b)).count(),
            lt_in: m.elements().filter(|&b| m.lt(b, a)).count(),
            idempotent: m.add(a, a) == a,
        })
        .collect()
}

struct Search<'a> {
    m: &'a FiniteMvs,
    n: &'a FiniteMvs,
    sig_m: Vec<Signature>,
    sig_n: Vec<Signature>,
    image: Vec<Option<ElemId>>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Every sum whose operands and result are assigned must be preserved.
    fn consistent(&self, last: ElemId) -> bool {
        let h = |x: ElemId| self.image[x.0];
        for other in self.m.elements() {
            let Some(ho) = h(other) else { continue };
            let hl = h(last).unwrap();
            for (a, b, ha, hb) in [(last, other, hl, ho), (other, last, ho, hl)] {
                if let Some(hs) = h(self.m.add(a, b)) {
                    if hs != self.n.add(ha, hb) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend(&mut self, next: usize) -> bool {
        if next == self.m.card() {
            return true;
        }
        let a = ElemId(next);
        for b in self.n.nonzero() {
            if self.used[b.0] || self.sig_m[a.0] != self.sig_n[b.0] {
                continue;
            }
            self.image[a.0] = Some(b);
            self.used[b.0] = true;
            if self.consistent(a) && self.extend(next + 1) {
                return true;
            }
            self.image[a.0] = None;
            self.used[b.0] = false;
        }
        false
    }
}

/// The lexicographically first isomorphism `M → N`, if any.
///
/// Backtracks over bijections fixing `e ↦ e`, assigning domain elements in
/// order and trying codomain candidates in ascending order. Candidates must
/// share the element's `⊴`/`◁` in- and out-degrees and idempotence.
pub fn find_isomorphism(m: &FiniteMvs, n: &FiniteMvs) -> Option<MvsMap> {
    if m.card() != n.card() || m.is_commutative() != n.is_commutative() {
        return None;
    }
    let sig_m = signatures(m);
    let sig_n = signatures(n);
    let mut sorted_m = sig_m.clone();
    let mut sorted_n = sig_n.clone();
    sorted_m.sort_unstable();
    sorted_n.sort_unstable();
    if sorted_m != sorted_n {
        return None;
    }
    let mut search = Search {
        m,
        n,
        sig_m,
        sig_n,
        image: vec![None; m.card()],
        used: vec![false; n.card()],
    };
    search.image[0] = Some(n.neutral());
    search.used[0] = true;
    if !search.extend(1) {
        return None;
    }
    let mapping = search.image.into_iter().map(Option::unwrap).collect();
    Some(MvsMap::new(m.clone(), n.clone(), mapping).expect("search only returns homomorphisms"))
}
