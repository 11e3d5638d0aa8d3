//! Congruences, quotients and the mutual-order congruence of a commutative MVS.

use petgraph::unionfind::UnionFind;

use crate::algebra::{ElemId, FiniteMvs, MvsError, RawTable};
use crate::relation::{ElemRelation, EquivalenceFailure};

/// Why a relation is not a congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceWitness {
    NotEquivalence(EquivalenceFailure),
    /// `m R m2` and `n R n2` but `m+n` is not related to `m2+n2`.
    Incompatible {
        m: ElemId,
        m2: ElemId,
        n: ElemId,
        n2: ElemId,
    },
}

/// `Ok(())` when `r` is an equivalence compatible with `+`. The witness is the
/// lexicographically least violating tuple `(m, m2, n, n2)`.
pub fn is_congruence(m: &FiniteMvs, r: &ElemRelation) -> Result<(), CongruenceWitness> {
    if let Some(f) = r.equivalence_failure() {
        return Err(CongruenceWitness::NotEquivalence(f));
    }
    let related: Vec<(ElemId, ElemId)> = r.pairs().collect();
    for &(a, a2) in &related {
        for &(b, b2) in &related {
            if !r.get(m.add(a, b), m.add(a2, b2)) {
                return Err(CongruenceWitness::Incompatible {
                    m: a,
                    m2: a2,
                    n: b,
                    n2: b2,
                });
            }
        }
    }
    Ok(())
}

/// The least congruence containing `pairs`.
pub fn congruence_generated_by(
    m: &FiniteMvs,
    pairs: impl IntoIterator<Item = (ElemId, ElemId)>,
) -> ElemRelation {
    let n = m.card();
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in pairs {
        uf.union(a.0, b.0);
    }
    loop {
        let mut changed = false;
        for a in m.elements() {
            for b in m.elements() {
                if a == b || !uf.equiv(a.0, b.0) {
                    continue;
                }
                for c in m.elements() {
                    changed |= uf.union(m.add(a, c).0, m.add(b, c).0);
                    changed |= uf.union(m.add(c, a).0, m.add(c, b).0);
                }
            }
        }
        if !changed {
            break;
        }
    }
    ElemRelation::from_fn(n, |a, b| uf.equiv(a.0, b.0))
}

/// A quotient `M/R` together with the class map `m ↦ [m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub mvs: FiniteMvs,
    /// `class_of[m]` is the element of `mvs` representing `[m]`.
    pub class_of: Vec<ElemId>,
}

impl Quotient {
    pub fn class(&self, m: ElemId) -> ElemId {
        self.class_of[m.0]
    }
}

fn check_size(m: &FiniteMvs, r: &ElemRelation) -> Result<(), MvsError> {
    if r.size() != m.card() {
        return Err(MvsError::SizeMismatch {
            relation: r.size(),
            carrier: m.card(),
        });
    }
    Ok(())
}

/// Members other than `e` that `r` relates to `e` in either direction.
pub(crate) fn neutral_class_extras(m: &FiniteMvs, r: &ElemRelation) -> Vec<ElemId> {
    let e = m.neutral();
    m.nonzero()
        .filter(|&x| r.get(e, x) || r.get(x, e))
        .collect()
}

/// Forms `M/R` with `[m] + [n] = [m+n]`. Classes are numbered by least
/// member, so `[e]` is the neutral of the quotient, and each class is named
/// after its least member.
///
/// The neutral-class condition is checked before compatibility.
pub fn quotient(m: &FiniteMvs, r: &ElemRelation) -> Result<Quotient, MvsError> {
    check_size(m, r)?;
    let extras = neutral_class_extras(m, r);
    if !extras.is_empty() {
        let mut class = vec![m.neutral()];
        class.extend(extras);
        return Err(MvsError::NeutralClassNotTrivial(class));
    }
    is_congruence(m, r).map_err(MvsError::NotACongruence)?;

    let classes = r.classes();
    let mut class_of = vec![ElemId(0); m.card()];
    for (ci, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x.0] = ElemId(ci);
        }
    }
    let names = classes.iter().map(|c| m.name(c[0]).to_string()).collect();
    let rows = classes
        .iter()
        .map(|ca| {
            classes
                .iter()
                .map(|cb| class_of[m.add(ca[0], cb[0]).0].0)
                .collect()
        })
        .collect();
    let raw = RawTable::new(names, rows)?;
    let mvs = FiniteMvs::from_trusted(raw)?;
    Ok(Quotient { mvs, class_of })
}

/// `m R n` iff `m ⊴ n` and `n ⊴ m`. Requires a commutative MVS.
pub fn mutual_order_congruence(m: &FiniteMvs) -> Result<ElemRelation, MvsError> {
    m.require_commutative()?;
    Ok(ElemRelation::from_fn(m.card(), |a, b| {
        m.leq(a, b) && m.leq(b, a)
    }))
}
