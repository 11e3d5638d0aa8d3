//! Homomorphisms between finite MVSs.
//!
//! A map `h: M → N` is a homomorphism when it sends exactly the neutral
//! element to the neutral element (H1) and preserves `+` (H2). Maps are
//! validated eagerly on construction.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{ElemId, FiniteMvs, MvsError};
use crate::congruence::{quotient, Quotient};
use crate::relation::ElemRelation;
use crate::sub::{adjoin_infinity, restrict, Extension, SubMvs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("mapping has {got} entries, domain has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("element {0} is mapped outside the codomain")]
    OutOfRange(ElemId),
    #[error("H1 fails at {0}: neutral is not preserved exactly")]
    H1Violation(ElemId),
    #[error("H2 fails at ({0}, {1}): h(m+n) != h(m)+h(n)")]
    H2Violation(ElemId, ElemId),
    #[error("codomain of the first map is not the domain of the second")]
    DomainMismatch,
    #[error("map is not bijective")]
    NotBijective,
    #[error(transparent)]
    Mvs(#[from] MvsError),
}

/// A validated homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvsMap {
    domain: FiniteMvs,
    codomain: FiniteMvs,
    mapping: Vec<ElemId>,
}

/// Finds the first (H1) or (H2) violation of a candidate mapping.
pub fn hom_violation(
    domain: &FiniteMvs,
    codomain: &FiniteMvs,
    mapping: &[ElemId],
) -> Result<(), HomError> {
    if mapping.len() != domain.card() {
        return Err(HomError::WrongLength {
            expected: domain.card(),
            got: mapping.len(),
        });
    }
    if let Some(m) = domain.elements().find(|m| !codomain.contains(mapping[m.0])) {
        return Err(HomError::OutOfRange(m));
    }
    let h = |m: ElemId| mapping[m.0];
    if let Some(m) = domain
        .elements()
        .find(|&m| (h(m) == codomain.neutral()) != (m == domain.neutral()))
    {
        return Err(HomError::H1Violation(m));
    }
    for m in domain.elements() {
        for n in domain.elements() {
            if h(domain.add(m, n)) != codomain.add(h(m), h(n)) {
                return Err(HomError::H2Violation(m, n));
            }
        }
    }
    Ok(())
}

pub fn make_hom(
    domain: FiniteMvs,
    codomain: FiniteMvs,
    mapping: Vec<ElemId>,
) -> Result<MvsMap, HomError> {
    MvsMap::new(domain, codomain, mapping)
}

/// `g ∘ h`.
pub fn compose(g: &MvsMap, h: &MvsMap) -> Result<MvsMap, HomError> {
    h.then(g)
}

impl MvsMap {
    pub fn new(
        domain: FiniteMvs,
        codomain: FiniteMvs,
        mapping: Vec<ElemId>,
    ) -> Result<Self, HomError> {
        hom_violation(&domain, &codomain, &mapping)?;
        Ok(MvsMap {
            domain,
            codomain,
            mapping,
        })
    }

    pub fn identity(m: &FiniteMvs) -> Self {
        MvsMap {
            domain: m.clone(),
            codomain: m.clone(),
            mapping: m.elements().collect(),
        }
    }

    /// Inclusion of a sub-MVS into its ambient MVS.
    pub fn inclusion(sub: &SubMvs, ambient: &FiniteMvs) -> Result<Self, HomError> {
        Self::new(sub.mvs.clone(), ambient.clone(), sub.embedding.clone())
    }

    /// `i: M ↪ M∞`.
    pub fn infinity_inclusion(m: &FiniteMvs) -> (Self, Extension) {
        let ext = adjoin_infinity(m);
        let map = Self::new(m.clone(), ext.mvs.clone(), ext.inclusion.clone())
            .expect("M is a sub-MVS of M∞");
        (map, ext)
    }

    pub fn domain(&self) -> &FiniteMvs {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteMvs {
        &self.codomain
    }

    pub fn mapping(&self) -> &[ElemId] {
        &self.mapping
    }

    pub fn apply(&self, m: ElemId) -> ElemId {
        self.mapping[m.0]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MvsMap) -> Result<MvsMap, HomError> {
        if self.codomain != next.domain {
            return Err(HomError::DomainMismatch);
        }
        let mapping = self.mapping.iter().map(|&m| next.apply(m)).collect();
        MvsMap::new(self.domain.clone(), next.codomain.clone(), mapping)
    }

    /// `h(M)`, sorted.
    pub fn image(&self) -> BTreeSet<ElemId> {
        self.mapping.iter().copied().collect()
    }

    /// `(m1, m2) ∈ ker(h)` iff `h(m1) = h(m2)`.
    pub fn kernel(&self) -> ElemRelation {
        ElemRelation::from_fn(self.domain.card(), |a, b| self.apply(a) == self.apply(b))
    }

    /// `Ok(())` when every nonzero codomain element `⊴`-dominates the image of
    /// some nonzero domain element; otherwise the least element that does not.
    pub fn is_fine(&self) -> Result<(), ElemId> {
        match self.codomain.nonzero().find(|&m2| {
            !self
                .domain
                .nonzero()
                .any(|m1| self.codomain.leq(self.apply(m1), m2))
        }) {
            None => Ok(()),
            Some(m2) => Err(m2),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.mapping.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.mapping.len() == self.codomain.card()
    }

    pub fn invert(&self) -> Result<MvsMap, HomError> {
        if !self.is_bijective() {
            return Err(HomError::NotBijective);
        }
        let mut inverse = vec![ElemId(0); self.codomain.card()];
        for m in self.domain.elements() {
            inverse[self.apply(m).0] = m;
        }
        MvsMap::new(self.codomain.clone(), self.domain.clone(), inverse)
    }

    /// First pair `(m, n)` breaking `m ⊴ n ⇒ h(m) ⊴ h(n)` or `m ◁ n ⇒ h(m) ◁ h(n)`.
    pub fn order_violation(&self) -> Option<(ElemId, ElemId)> {
        let (d, c) = (&self.domain, &self.codomain);
        d.elements()
            .flat_map(|m| d.elements().map(move |n| (m, n)))
            .find(|&(m, n)| {
                (d.leq(m, n) && !c.leq(self.apply(m), self.apply(n)))
                    || (d.lt(m, n) && !c.lt(self.apply(m), self.apply(n)))
            })
    }

    /// The image as a sub-MVS of the codomain.
    pub fn image_mvs(&self) -> SubMvs {
        restrict(&self.codomain, &self.image()).expect("the image of a homomorphism is a sub-MVS")
    }

    /// `M → M/ker(h) → h(M) → N`.
    pub fn factor(&self) -> Factorization {
        let kernel = self.kernel();
        let projection =
            canonical_projection(&self.domain, &kernel).expect("ker(h) has a trivial neutral class");
        let image = self.image_mvs();
        let quotient = projection.codomain().clone();
        let mut iso_map = vec![ElemId(0); quotient.card()];
        for m in self.domain.elements() {
            let class = projection.apply(m);
            let pos = image
                .embedding
                .binary_search(&self.apply(m))
                .expect("value lies in the image");
            iso_map[class.0] = ElemId(pos);
        }
        let iso = MvsMap::new(quotient, image.mvs.clone(), iso_map)
            .expect("h* is a homomorphism");
        let inclusion = MvsMap::inclusion(&image, &self.codomain).expect("inclusion of the image");
        Factorization {
            projection,
            iso,
            inclusion,
        }
    }
}

/// `h = inclusion ∘ iso ∘ projection` with `iso: M/ker(h) → h(M)` bijective.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub projection: MvsMap,
    pub iso: MvsMap,
    pub inclusion: MvsMap,
}

/// `h*: M/ker(h) → h(M)`, `[m] ↦ h(m)`.
pub fn first_isomorphism(h: &MvsMap) -> MvsMap {
    h.factor().iso
}

/// `m ↦ [m]_R` onto `M/R`.
pub fn canonical_projection(m: &FiniteMvs, r: &ElemRelation) -> Result<MvsMap, HomError> {
    let Quotient { mvs, class_of } = quotient(m, r)?;
    MvsMap::new(m.clone(), mvs, class_of)
}
