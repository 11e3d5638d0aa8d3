//! Sub-MVSs and the extension `M∞ = M ∪ {∞}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{ElemId, FiniteMvs, RawTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubMvsFailure {
    OutOfRange(ElemId),
    MissingNeutral,
    TooSmall,
    NotClosed(ElemId, ElemId),
    /// Nonzero members with no common nonzero left divisor inside the subset.
    M4Fails(ElemId, ElemId),
}

impl fmt::Display for SubMvsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubMvsFailure::OutOfRange(a) => write!(f, "element {a} is not in the carrier"),
            SubMvsFailure::MissingNeutral => f.write_str("subset does not contain the neutral element"),
            SubMvsFailure::TooSmall => f.write_str("subset has fewer than two elements"),
            SubMvsFailure::NotClosed(a, b) => write!(f, "{a} + {b} leaves the subset"),
            SubMvsFailure::M4Fails(a, b) => write!(f, "M4 fails inside the subset at ({a},{b})"),
        }
    }
}

/// A sub-MVS as a standalone MVS plus its embedding into the ambient one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubMvs {
    pub mvs: FiniteMvs,
    /// `embedding[i]` is the ambient element for the sub-MVS element `i`.
    pub embedding: Vec<ElemId>,
}

pub fn is_sub_mvs(m: &FiniteMvs, subset: &BTreeSet<ElemId>) -> Result<(), SubMvsFailure> {
    if let Some(&a) = subset.iter().find(|a| !m.contains(**a)) {
        return Err(SubMvsFailure::OutOfRange(a));
    }
    if !subset.contains(&m.neutral()) {
        return Err(SubMvsFailure::MissingNeutral);
    }
    if subset.len() < 2 {
        return Err(SubMvsFailure::TooSmall);
    }
    for &a in subset {
        for &b in subset {
            if !subset.contains(&m.add(a, b)) {
                return Err(SubMvsFailure::NotClosed(a, b));
            }
        }
    }
    let divides = |d: ElemId, x: ElemId| subset.iter().any(|&k| m.add(d, k) == x);
    let nonzero: Vec<ElemId> = subset.iter().copied().filter(|&a| a != m.neutral()).collect();
    for &a in &nonzero {
        for &b in &nonzero {
            if !nonzero.iter().any(|&d| divides(d, a) && divides(d, b)) {
                return Err(SubMvsFailure::M4Fails(a, b));
            }
        }
    }
    Ok(())
}

/// Restricts `+` to `subset`, which must pass [`is_sub_mvs`].
pub fn restrict(m: &FiniteMvs, subset: &BTreeSet<ElemId>) -> Result<SubMvs, SubMvsFailure> {
    is_sub_mvs(m, subset)?;
    let embedding: Vec<ElemId> = subset.iter().copied().collect();
    let position = |x: ElemId| embedding.binary_search(&x).expect("closed subset");
    let names = embedding.iter().map(|&a| m.name(a).to_string()).collect();
    let rows = embedding
        .iter()
        .map(|&a| embedding.iter().map(|&b| position(m.add(a, b))).collect())
        .collect();
    let raw = RawTable::new(names, rows).expect("restriction of a valid table");
    let mvs = FiniteMvs::from_trusted(raw).expect("sub-MVS satisfies the axioms");
    Ok(SubMvs { mvs, embedding })
}

/// `M∞` with its inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub mvs: FiniteMvs,
    pub infinity: ElemId,
    /// Identity on the original indices.
    pub inclusion: Vec<ElemId>,
}

fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|n| n == base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !taken.contains(c))
        .unwrap()
}

/// Adjoins a single absorbing element `∞` (named `inf`, or `inf1`, .. if taken)
/// with `m + ∞ = ∞ + m = ∞` for all `m`.
pub fn adjoin_infinity(m: &FiniteMvs) -> Extension {
    let n = m.card();
    let mut names = m.names().to_vec();
    names.push(fresh_name(&names, "inf"));
    let raw = RawTable::from_fn(names, |a, b| {
        if a == n || b == n {
            n
        } else {
            m.add(ElemId(a), ElemId(b)).0
        }
    })
    .expect("extended table is well formed");
    let mvs = FiniteMvs::from_trusted(raw).expect("M∞ satisfies the axioms");
    Extension {
        mvs,
        infinity: ElemId(n),
        inclusion: m.elements().collect(),
    }
}
