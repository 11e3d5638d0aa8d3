//! Finite metric value sets given by operation tables.
//!
//! A metric value set (MVS) is a carrier with at least two elements and an
//! operation `+` that is associative (M1), has a neutral element `e` (M2),
//! admits no nontrivial decomposition of `e` (M3), and in which every two
//! nonzero elements share a nonzero left divisor (M4).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::congruence::CongruenceWitness;
use crate::relation::ElemRelation;

/// Index of an element in a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub usize);

impl ElemId {
    pub const NEUTRAL: ElemId = ElemId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Size caps for the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_carrier: usize,
    pub max_points: usize,
    /// Node cap for the metrizability search.
    pub search_budget: u64,
    /// Word cap for bounded closures.
    pub word_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: 64,
            max_points: 16,
            search_budget: 1 << 24,
            word_budget: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("carrier is empty")]
    Empty,
    #[error("element name is empty")]
    EmptyName,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("table not square")]
    NotSquare,
    #[error("entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvsError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("carrier of {card} elements exceeds the cap of {cap}")]
    TooLarge { card: usize, cap: usize },
    #[error("axiom violation: {0}")]
    AxiomViolation(Box<AxiomReport>),
    #[error("relation is not a congruence: {0:?}")]
    NotACongruence(CongruenceWitness),
    #[error("class of the neutral element is not trivial: {0:?}")]
    NeutralClassNotTrivial(Vec<ElemId>),
    #[error("operation is not commutative: {0} + {1} != {1} + {0}")]
    NotCommutative(ElemId, ElemId),
    #[error("relation is over {relation} elements but the carrier has {carrier}")]
    SizeMismatch { relation: usize, carrier: usize },
    #[error("element {0} is outside the carrier")]
    UnknownElement(ElemId),
}

/// An unchecked operation table: `table[i][j]` is `i + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawTable {
    names: Vec<String>,
    table: Vec<ElemId>,
}

impl RawTable {
    pub fn new(names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let n = names.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(TableError::EmptyName);
            }
            if names[..i].contains(name) {
                return Err(TableError::DuplicateName(name.clone()));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(TableError::NotSquare);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(TableError::OutOfRange { row, col, value });
                }
                table.push(ElemId(value));
            }
        }
        Ok(RawTable { names, table })
    }

    pub fn from_fn<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, TableError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(names, rows)
    }

    pub fn card(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a.0 * self.card() + b.0]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.card())
            .map(|r| r.iter().map(|x| x.0).collect())
            .collect()
    }
}

/// One of the conditions a table must satisfy to be an MVS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// At least two elements.
    Card,
    M1,
    M2,
    M3,
    M4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Card => "card>=2",
            Axiom::M1 => "M1",
            Axiom::M2 => "M2",
            Axiom::M3 => "M3",
            Axiom::M4 => "M4",
        };
        f.write_str(s)
    }
}

/// Result of checking a raw table against the MVS conditions.
///
/// Witness tuples, by axiom:
/// - `Card`: the whole carrier.
/// - `M1`: `(a, b, c)` with `(a+b)+c != a+(b+c)`.
/// - `M2`: for every candidate `e` in order, the least `x` with `e+x != x` or `x+e != x`.
/// - `M3`: `(a, b)` with `a+b = e` and not both neutral.
/// - `M4`: `(a, b)` of nonzero elements without a common nonzero left divisor.
///
/// When no neutral exists, M3 and M4 cannot be stated; both are reported as
/// failed with an empty witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub card_ok: bool,
    pub m1_holds: bool,
    pub m2_holds: bool,
    pub m3_holds: bool,
    pub m4_holds: bool,
    pub witnesses: BTreeMap<Axiom, Vec<ElemId>>,
    pub neutral: Option<ElemId>,
}

impl AxiomReport {
    pub fn is_mvs(&self) -> bool {
        self.card_ok && self.m1_holds && self.m2_holds && self.m3_holds && self.m4_holds
    }

    pub fn failed(&self) -> Vec<Axiom> {
        self.witnesses.keys().copied().collect()
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&[ElemId]> {
        self.witnesses.get(&axiom).map(Vec::as_slice)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_mvs() {
            return f.write_str("all axioms hold");
        }
        let parts: Vec<String> = self
            .witnesses
            .iter()
            .map(|(ax, w)| {
                let w: Vec<String> = w.iter().map(|x| x.0.to_string()).collect();
                format!("{ax} fails at ({})", w.join(","))
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

fn find_neutral(raw: &RawTable) -> Result<ElemId, Vec<ElemId>> {
    let n = raw.card();
    let mut refuters = Vec::with_capacity(n);
    for cand in (0..n).map(ElemId) {
        let bad = (0..n)
            .map(ElemId)
            .find(|&x| raw.get(cand, x) != x || raw.get(x, cand) != x);
        match bad {
            None => return Ok(cand),
            Some(x) => refuters.push(x),
        }
    }
    Err(refuters)
}

/// `d` is a left divisor of `m`: `d + k = m` for some `k`.
fn left_divides(raw: &RawTable, d: ElemId, m: ElemId) -> bool {
    (0..raw.card()).any(|k| raw.get(d, ElemId(k)) == m)
}

/// Exhaustively evaluates (M1)-(M4) and the cardinality condition.
pub fn check_axioms(raw: &RawTable) -> AxiomReport {
    let n = raw.card();
    let ids = || (0..n).map(ElemId);
    let mut witnesses = BTreeMap::new();

    let card_ok = n >= 2;
    if !card_ok {
        witnesses.insert(Axiom::Card, ids().collect());
    }

    let assoc = ids()
        .flat_map(|a| ids().flat_map(move |b| ids().map(move |c| (a, b, c))))
        .find(|&(a, b, c)| raw.get(raw.get(a, b), c) != raw.get(a, raw.get(b, c)));
    if let Some((a, b, c)) = assoc {
        witnesses.insert(Axiom::M1, vec![a, b, c]);
    }

    let neutral = match find_neutral(raw) {
        Ok(e) => Some(e),
        Err(refuters) => {
            witnesses.insert(Axiom::M2, refuters);
            None
        }
    };

    match neutral {
        Some(e) => {
            let zero_sum = ids()
                .flat_map(|a| ids().map(move |b| (a, b)))
                .find(|&(a, b)| raw.get(a, b) == e && (a != e || b != e));
            if let Some((a, b)) = zero_sum {
                witnesses.insert(Axiom::M3, vec![a, b]);
            }

            let nonzero: Vec<ElemId> = ids().filter(|&x| x != e).collect();
            'outer: for &m1 in &nonzero {
                for &m2 in &nonzero {
                    let shared = nonzero
                        .iter()
                        .any(|&d| left_divides(raw, d, m1) && left_divides(raw, d, m2));
                    if !shared {
                        witnesses.insert(Axiom::M4, vec![m1, m2]);
                        break 'outer;
                    }
                }
            }
        }
        None => {
            witnesses.insert(Axiom::M3, Vec::new());
            witnesses.insert(Axiom::M4, Vec::new());
        }
    }

    AxiomReport {
        card_ok,
        m1_holds: !witnesses.contains_key(&Axiom::M1),
        m2_holds: neutral.is_some(),
        m3_holds: !witnesses.contains_key(&Axiom::M3),
        m4_holds: !witnesses.contains_key(&Axiom::M4),
        witnesses,
        neutral,
    }
}

/// A validated finite MVS. The neutral element is always `ElemId(0)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMvs {
    names: Vec<String>,
    table: Vec<ElemId>,
    leq: ElemRelation,
    lt: ElemRelation,
    commutative: bool,
}

/// Shape of the induced relation `⊴`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderClass {
    /// Some `m != n` with `m ⊴ n` and `n ⊴ m`; the least such pair.
    NotAntisymmetric(ElemId, ElemId),
    PartiallyOrdered,
    TotallyOrdered,
}

pub fn validate(raw: &RawTable) -> Result<FiniteMvs, MvsError> {
    validate_with(raw, &Limits::default())
}

/// Checks the axioms and builds the canonical form with the neutral
/// element relabelled to index 0 (other elements keep their relative order).
pub fn validate_with(raw: &RawTable, limits: &Limits) -> Result<FiniteMvs, MvsError> {
    if raw.card() > limits.max_carrier {
        return Err(MvsError::TooLarge {
            card: raw.card(),
            cap: limits.max_carrier,
        });
    }
    let report = check_axioms(raw);
    if !report.is_mvs() {
        return Err(MvsError::AxiomViolation(Box::new(report)));
    }
    let e = report.neutral.expect("neutral present when M2 holds");
    let n = raw.card();
    // order[new] = old
    let order: Vec<usize> = std::iter::once(e.0)
        .chain((0..n).filter(|&i| i != e.0))
        .collect();
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let names = order.iter().map(|&old| raw.names()[old].clone()).collect();
    let mut table = Vec::with_capacity(n * n);
    for &a in &order {
        for &b in &order {
            table.push(ElemId(position[raw.get(ElemId(a), ElemId(b)).0]));
        }
    }
    Ok(FiniteMvs::from_canonical(names, table))
}

impl FiniteMvs {
    /// Builds the cached relations. Callers guarantee the table is a valid
    /// MVS with neutral at index 0.
    fn from_canonical(names: Vec<String>, table: Vec<ElemId>) -> Self {
        let n = names.len();
        let at = |a: usize, b: usize| table[a * n + b];
        let mut leq = ElemRelation::empty(n);
        let mut lt = ElemRelation::empty(n);
        for a in 0..n {
            for k in 0..n {
                let s = at(a, k);
                leq.set(ElemId(a), s, true);
                if k != 0 {
                    lt.set(ElemId(a), s, true);
                }
            }
        }
        let commutative = (0..n).all(|a| (0..n).all(|b| at(a, b) == at(b, a)));
        FiniteMvs {
            names,
            table,
            leq,
            lt,
            commutative,
        }
    }

    pub fn card(&self) -> usize {
        self.names.len()
    }

    pub fn neutral(&self) -> ElemId {
        ElemId::NEUTRAL
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: ElemId) -> &str {
        &self.names[a.0]
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|n| n == name).map(ElemId)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + Clone {
        (0..self.card()).map(ElemId)
    }

    /// Elements of `M* = M \ {e}`.
    pub fn nonzero(&self) -> impl Iterator<Item = ElemId> + Clone {
        (1..self.card()).map(ElemId)
    }

    pub fn contains(&self, a: ElemId) -> bool {
        a.0 < self.card()
    }

    pub fn add(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a.0 * self.card() + b.0]
    }

    /// Left fold of `+`; the empty sum is `e`.
    pub fn sum(&self, items: impl IntoIterator<Item = ElemId>) -> ElemId {
        items
            .into_iter()
            .fold(self.neutral(), |acc, x| self.add(acc, x))
    }

    /// `a ⊴ b`: `a + k = b` for some `k`.
    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.leq.get(a, b)
    }

    /// `a ◁ b`: `a + k = b` for some `k != e`.
    pub fn lt(&self, a: ElemId, b: ElemId) -> bool {
        self.lt.get(a, b)
    }

    pub fn leq_relation(&self) -> &ElemRelation {
        &self.leq
    }

    pub fn lt_relation(&self) -> &ElemRelation {
        &self.lt
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn commutativity_failure(&self) -> Option<(ElemId, ElemId)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.add(a, b) != self.add(b, a))
    }

    pub fn require_commutative(&self) -> Result<(), MvsError> {
        match self.commutativity_failure() {
            None => Ok(()),
            Some((a, b)) => Err(MvsError::NotCommutative(a, b)),
        }
    }

    pub fn to_raw(&self) -> RawTable {
        RawTable {
            names: self.names.clone(),
            table: self.table.clone(),
        }
    }

    pub fn order_class(&self) -> OrderClass {
        for a in self.elements() {
            for b in self.elements().skip(a.0 + 1) {
                if self.leq(a, b) && self.leq(b, a) {
                    return OrderClass::NotAntisymmetric(a, b);
                }
            }
        }
        let total = self
            .elements()
            .all(|a| self.elements().all(|b| self.leq(a, b) || self.leq(b, a)));
        if total {
            OrderClass::TotallyOrdered
        } else {
            OrderClass::PartiallyOrdered
        }
    }

    /// Copy with elements renamed; `names` must be distinct and as many as the carrier.
    pub fn renamed(&self, names: Vec<String>) -> Result<FiniteMvs, MvsError> {
        let raw = RawTable::new(names, self.to_raw().rows())?;
        Ok(FiniteMvs {
            names: raw.names,
            ..self.clone()
        })
    }

    /// Rebuilds from a canonical table known to satisfy the axioms, re-running
    /// the checker to keep construction honest.
    pub(crate) fn from_trusted(raw: RawTable) -> Result<FiniteMvs, MvsError> {
        let report = check_axioms(&raw);
        if !report.is_mvs() || report.neutral != Some(ElemId::NEUTRAL) {
            return Err(MvsError::AxiomViolation(Box::new(report)));
        }
        Ok(FiniteMvs::from_canonical(raw.names, raw.table))
    }
}

pub fn order_class(m: &FiniteMvs) -> OrderClass {
    m.order_class()
}

impl fmt::Debug for FiniteMvs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteMvs {:?}", self.names)?;
        for a in self.elements() {
            let row: Vec<&str> = self.elements().map(|b| self.name(self.add(a, b))).collect();
            writeln!(f, "  {}: {}", self.name(a), row.join(" "))?;
        }
        Ok(())
    }
}
