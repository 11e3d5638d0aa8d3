//! Quasimetric functions `f: X × X → M` and the topologies they induce.
//!
//! `f` is quasimetric when `f(x,x) = e` (f2) and `f(x,z) ⊴ f(x,y) + f(y,z)`
//! (f1); it is a metric function when also symmetric (f3). The open balls
//! `B(x,m) = {y : f(x,y) ◁ m}`, `m ≠ e`, form a neighbourhood base at `x`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{ElemId, FiniteMvs, MvsError};
use crate::congruence::mutual_order_congruence;
use crate::morphism::{canonical_projection, HomError, MvsMap};
use crate::topology::{FiniteTopology, PointSet, TopologyShapeError, MAX_POINTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Shape(#[from] TopologyShapeError),
    #[error("distance table must be {n}x{n} over the MVS carrier")]
    BadTable { n: usize },
    #[error("not a quasimetric function: {0}")]
    NotQuasimetric(QuasimetricReport),
    #[error("ball radius must not be the neutral element")]
    NeutralRadius,
    #[error("point {0} is outside the point set")]
    UnknownPoint(usize),
    #[error("the two functions are defined on different point sets")]
    PointSetMismatch,
    #[error("the map's domain is not the table's MVS")]
    DomainMismatch,
    #[error("search space of {needed} tables exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Mvs(#[from] MvsError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("internal invariant broken: {0}")]
    Invariant(&'static str),
}

/// Failures of (f1), (f2), (f3), each the lexicographically least witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QuasimetricReport {
    /// `(x, y, z)` with `f(x,z) ⋬ f(x,y) + f(y,z)`.
    pub f1: Option<(usize, usize, usize)>,
    /// `x` with `f(x,x) != e`.
    pub f2: Option<usize>,
    /// `(x, y)` with `f(x,y) != f(y,x)`.
    pub f3: Option<(usize, usize)>,
}

impl QuasimetricReport {
    pub fn is_quasimetric(&self) -> bool {
        self.f1.is_none() && self.f2.is_none()
    }

    pub fn is_metric(&self) -> bool {
        self.is_quasimetric() && self.f3.is_none()
    }
}

impl fmt::Display for QuasimetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some((x, y, z)) = self.f1 {
            parts.push(format!("f1 fails at ({x},{y},{z})"));
        }
        if let Some(x) = self.f2 {
            parts.push(format!("f2 fails at {x}"));
        }
        if let Some((x, y)) = self.f3 {
            parts.push(format!("f3 fails at ({x},{y})"));
        }
        if parts.is_empty() {
            parts.push("f1, f2, f3 hold".into());
        }
        f.write_str(&parts.join("; "))
    }
}

/// An unchecked table `X × X → M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    points: Vec<String>,
    mvs: FiniteMvs,
    values: Vec<ElemId>,
}

impl DistanceTable {
    pub fn new(points: Vec<String>, mvs: FiniteMvs, rows: Vec<Vec<ElemId>>) -> Result<Self, TopologyError> {
        let n = points.len();
        if n == 0 {
            return Err(TopologyError::BadTable { n });
        }
        if n > MAX_POINTS {
            return Err(TopologyShapeError::TooManyPoints(n).into());
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(TopologyShapeError::DuplicatePoint(p.clone()).into());
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n || r.iter().any(|&v| !mvs.contains(v))) {
            return Err(TopologyError::BadTable { n });
        }
        Ok(DistanceTable {
            points,
            mvs,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn mvs(&self) -> &FiniteMvs {
        &self.mvs
    }

    pub fn value(&self, x: usize, y: usize) -> ElemId {
        self.values[x * self.points.len() + y]
    }

    pub fn check(&self) -> QuasimetricReport {
        check_values(&self.mvs, self.points.len(), &self.values)
    }
}

fn check_values(m: &FiniteMvs, n: usize, values: &[ElemId]) -> QuasimetricReport {
    let f = |x: usize, y: usize| values[x * n + y];
    let mut report = QuasimetricReport::default();
    'f1: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !m.leq(f(x, z), m.add(f(x, y), f(y, z))) {
                    report.f1 = Some((x, y, z));
                    break 'f1;
                }
            }
        }
    }
    report.f2 = (0..n).find(|&x| f(x, x) != m.neutral());
    report.f3 = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| f(x, y) != f(y, x));
    report
}

pub fn check_quasimetric(table: &DistanceTable) -> QuasimetricReport {
    table.check()
}

/// A table satisfying (f1) and (f2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasimetricTable {
    points: Vec<String>,
    mvs: FiniteMvs,
    values: Vec<ElemId>,
    symmetric: bool,
}

impl TryFrom<DistanceTable> for QuasimetricTable {
    type Error = TopologyError;

    fn try_from(t: DistanceTable) -> Result<Self, TopologyError> {
        let report = t.check();
        if !report.is_quasimetric() {
            return Err(TopologyError::NotQuasimetric(report));
        }
        Ok(QuasimetricTable {
            points: t.points,
            mvs: t.mvs,
            values: t.values,
            symmetric: report.f3.is_none(),
        })
    }
}

impl QuasimetricTable {
    pub fn new(points: Vec<String>, mvs: FiniteMvs, rows: Vec<Vec<ElemId>>) -> Result<Self, TopologyError> {
        DistanceTable::new(points, mvs, rows)?.try_into()
    }

    /// `f(x,y) = e` everywhere; induces the indiscrete topology.
    pub fn trivial(points: Vec<String>, mvs: FiniteMvs) -> Self {
        let n = points.len();
        let rows = vec![vec![mvs.neutral(); n]; n];
        Self::new(points, mvs, rows).expect("the constant-e table is a metric function")
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn mvs(&self) -> &FiniteMvs {
        &self.mvs
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn value(&self, x: usize, y: usize) -> ElemId {
        self.values[x * self.len() + y]
    }

    pub fn rows(&self) -> Vec<Vec<ElemId>> {
        self.values.chunks(self.len()).map(<[ElemId]>::to_vec).collect()
    }

    pub fn report(&self) -> QuasimetricReport {
        check_values(&self.mvs, self.len(), &self.values)
    }

    /// `B(x,m) = {y : f(x,y) ◁ m}`.
    pub fn open_ball(&self, x: usize, m: ElemId) -> Result<PointSet, TopologyError> {
        if x >= self.len() {
            return Err(TopologyError::UnknownPoint(x));
        }
        if m == self.mvs.neutral() {
            return Err(TopologyError::NeutralRadius);
        }
        if !self.mvs.contains(m) {
            return Err(MvsError::UnknownElement(m).into());
        }
        Ok(self.ball(x, m))
    }

    fn ball(&self, x: usize, m: ElemId) -> PointSet {
        (0..self.len()).filter(|&y| self.mvs.lt(self.value(x, y), m)).collect()
    }

    /// Distinct balls at `x` over all nonzero radii.
    pub fn balls(&self, x: usize) -> BTreeSet<PointSet> {
        self.mvs.nonzero().map(|m| self.ball(x, m)).collect()
    }

    /// Open sets: `U` such that every `x ∈ U` has a ball inside `U`.
    pub fn induced_topology(&self) -> FiniteTopology {
        let n = self.len();
        let balls: Vec<BTreeSet<PointSet>> = (0..n).map(|x| self.balls(x)).collect();
        let opens = (0..1u32 << n)
            .map(PointSet)
            .filter(|u| u.iter().all(|x| balls[x].iter().any(|b| b.is_subset_of(*u))))
            .collect();
        FiniteTopology::new(self.points.clone(), opens)
            .expect("balls form a neighbourhood base of a topology")
    }

    /// Least open set containing each point, without enumerating subsets:
    /// the closure of `{x}` under `y ↦ (smallest ball at y)`.
    pub fn minimal_open_sets(&self) -> Vec<PointSet> {
        let n = self.len();
        let smallest: Vec<PointSet> = (0..n)
            .map(|x| {
                self.balls(x)
                    .into_iter()
                    .fold(PointSet::full(n), PointSet::intersection)
            })
            .collect();
        (0..n)
            .map(|x| {
                let mut reach = PointSet::singleton(x);
                loop {
                    let next = reach
                        .iter()
                        .fold(reach, |acc, y| acc.union(smallest[y]));
                    if next == reach {
                        break reach;
                    }
                    reach = next;
                }
            })
            .collect()
    }

    /// First `(x, m1, m2)` for which no nonzero radius gives a ball inside
    /// `B(x,m1) ∩ B(x,m2)`.
    pub fn directedness_failure(&self) -> Option<(usize, ElemId, ElemId)> {
        for x in 0..self.len() {
            for m1 in self.mvs.nonzero() {
                for m2 in self.mvs.nonzero() {
                    let meet = self.ball(x, m1).intersection(self.ball(x, m2));
                    if !self.mvs.nonzero().any(|m3| self.ball(x, m3).is_subset_of(meet)) {
                        return Some((x, m1, m2));
                    }
                }
            }
        }
        None
    }

    /// Copy with point names replaced.
    pub fn with_points(&self, points: Vec<String>) -> Result<Self, TopologyError> {
        Self::new(points, self.mvs.clone(), self.rows())
    }
}

pub fn open_ball(q: &QuasimetricTable, x: usize, m: ElemId) -> Result<PointSet, TopologyError> {
    q.open_ball(x, m)
}

pub fn induced_topology(q: &QuasimetricTable) -> FiniteTopology {
    q.induced_topology()
}

/// `f(m,n) = e` if `n ⊴ m`, else `n`, on `X = M`. Requires commutativity.
pub fn canonical_quasimetric(m: &FiniteMvs) -> Result<QuasimetricTable, TopologyError> {
    m.require_commutative()?;
    let rows = m
        .elements()
        .map(|a| {
            m.elements()
                .map(|b| if m.leq(b, a) { m.neutral() } else { b })
                .collect()
        })
        .collect();
    let table = QuasimetricTable::new(m.names().to_vec(), m.clone(), rows)?;
    Ok(table)
}

fn same_points(a: &QuasimetricTable, b: &QuasimetricTable) -> Result<(), TopologyError> {
    if a.points != b.points {
        return Err(TopologyError::PointSetMismatch);
    }
    Ok(())
}

/// `𝒯(coarse) ⊆ 𝒯(fine)`.
pub fn is_finer(fine: &QuasimetricTable, coarse: &QuasimetricTable) -> Result<bool, TopologyError> {
    same_points(fine, coarse)?;
    Ok(coarse
        .induced_topology()
        .is_coarser_than(&fine.induced_topology()))
}

pub fn are_equivalent(q1: &QuasimetricTable, q2: &QuasimetricTable) -> Result<bool, TopologyError> {
    same_points(q1, q2)?;
    Ok(q1.induced_topology() == q2.induced_topology())
}

/// `h ∘ f`.
pub fn transform(h: &MvsMap, q: &QuasimetricTable) -> Result<QuasimetricTable, TopologyError> {
    if h.domain() != q.mvs() {
        return Err(TopologyError::DomainMismatch);
    }
    let rows = q
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| h.apply(v)).collect())
        .collect();
    QuasimetricTable::new(q.points.clone(), h.codomain().clone(), rows)
        .map_err(|_| TopologyError::Invariant("h ∘ f must be quasimetric"))
}

/// Pushes `q` through `M → M/R` for the mutual-order congruence `R`, landing
/// in a partially ordered MVS while inducing the same topology.
pub fn quotient_metrize(q: &QuasimetricTable) -> Result<QuasimetricTable, TopologyError> {
    let r = mutual_order_congruence(q.mvs())?;
    let h = canonical_projection(q.mvs(), &r)?;
    let out = transform(&h, q)?;
    if out.induced_topology() != q.induced_topology() {
        return Err(TopologyError::Invariant("quotient metrization changed the topology"));
    }
    Ok(out)
}
