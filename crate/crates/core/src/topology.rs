//! Topologies on small finite point sets, stored as explicit open-set families.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Hard cap on the number of points; subsets are `u32` bitmasks and openness
/// checks enumerate all of them.
pub const MAX_POINTS: usize = 16;

/// A subset of `{0, .., n-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        PointSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(x: usize) -> Self {
        PointSet(1 << x)
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&x| self.contains(x))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyShapeError {
    #[error("{0} points exceed the cap of {MAX_POINTS}")]
    TooManyPoints(usize),
    #[error("open set {0:?} mentions points outside the carrier")]
    OutOfRange(PointSet),
    #[error("the empty set is not open")]
    MissingEmpty,
    #[error("the whole space is not open")]
    MissingFull,
    #[error("union of {0:?} and {1:?} is not open")]
    NotUnionClosed(PointSet, PointSet),
    #[error("intersection of {0:?} and {1:?} is not open")]
    NotIntersectionClosed(PointSet, PointSet),
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
}

/// A topology on named points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    points: Vec<String>,
    opens: BTreeSet<PointSet>,
}

/// Point names `0, 1, .., n-1`.
pub fn numbered_points(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl FiniteTopology {
    pub fn new(points: Vec<String>, opens: BTreeSet<PointSet>) -> Result<Self, TopologyShapeError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(TopologyShapeError::TooManyPoints(n));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(TopologyShapeError::DuplicatePoint(p.clone()));
            }
        }
        let full = PointSet::full(n);
        if let Some(&u) = opens.iter().find(|u| !u.is_subset_of(full)) {
            return Err(TopologyShapeError::OutOfRange(u));
        }
        if !opens.contains(&PointSet::EMPTY) {
            return Err(TopologyShapeError::MissingEmpty);
        }
        if !opens.contains(&full) {
            return Err(TopologyShapeError::MissingFull);
        }
        for &u in &opens {
            for &v in &opens {
                if !opens.contains(&u.union(v)) {
                    return Err(TopologyShapeError::NotUnionClosed(u, v));
                }
                if !opens.contains(&u.intersection(v)) {
                    return Err(TopologyShapeError::NotIntersectionClosed(u, v));
                }
            }
        }
        Ok(FiniteTopology { points, opens })
    }

    pub fn discrete(points: Vec<String>) -> Self {
        let n = points.len();
        let opens = (0..1u32 << n).map(PointSet).collect();
        FiniteTopology { points, opens }
    }

    pub fn indiscrete(points: Vec<String>) -> Self {
        let full = PointSet::full(points.len());
        FiniteTopology {
            points,
            opens: [PointSet::EMPTY, full].into_iter().collect(),
        }
    }

    /// The topology whose open sets are the unions of `minimal[x]`, where
    /// `minimal[x]` is the least open set containing `x`. The family must be
    /// consistent: `y ∈ minimal[x]` implies `minimal[y] ⊆ minimal[x]`.
    pub fn from_minimal_open_sets(points: Vec<String>, minimal: &[PointSet]) -> Self {
        let n = points.len();
        let opens = (0..1u32 << n)
            .map(PointSet)
            .filter(|u| u.iter().all(|x| minimal[x].is_subset_of(*u)))
            .collect();
        FiniteTopology { points, opens }
    }

    /// Every topology on `n` points, via the correspondence with preorders.
    pub fn enumerate_all(n: usize) -> Vec<FiniteTopology> {
        assert!(n <= 5, "enumeration is only practical for tiny point sets");
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for bits in 0u64..1 << cells.len() {
            // minimal[x] = {y : x ≤ y} for the preorder encoded by `bits`
            let mut minimal: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
            for (k, &(x, y)) in cells.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    minimal[x].insert(y);
                }
            }
            let transitive = (0..n).all(|x| minimal[x].iter().all(|y| minimal[y].is_subset_of(minimal[x])));
            if !transitive {
                continue;
            }
            let t = FiniteTopology::from_minimal_open_sets(numbered_points(n), &minimal);
            if seen.insert(t.opens.clone()) {
                out.push(t);
            }
        }
        out
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

    pub fn opens(&self) -> &BTreeSet<PointSet> {
        &self.opens
    }

    pub fn is_open(&self, u: PointSet) -> bool {
        self.opens.contains(&u)
    }

    /// Every open set of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &FiniteTopology) -> bool {
        self.opens.is_subset(&other.opens)
    }

    /// Least open set containing each point.
    pub fn minimal_open_sets(&self) -> Vec<PointSet> {
        let full = PointSet::full(self.len());
        (0..self.len())
            .map(|x| {
                self.opens
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(full, |acc, &u| acc.intersection(u))
            })
            .collect()
    }

    pub fn with_points(self, points: Vec<String>) -> Self {
        assert_eq!(points.len(), self.points.len());
        FiniteTopology { points, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    #[test]
    fn point_set_basics() {
        let a = s(&[0, 2]);
        assert!(a.contains(2) && !a.contains(1));
        assert_eq!(a.len(), 2);
        assert!(a.is_subset_of(PointSet::full(3)));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn validation() {
        let pts = numbered_points(2);
        let sierpinski = [s(&[]), s(&[0]), s(&[0, 1])].into_iter().collect();
        assert!(FiniteTopology::new(pts.clone(), sierpinski).is_ok());
        let missing: BTreeSet<_> = [s(&[0]), s(&[0, 1])].into_iter().collect();
        assert_eq!(
            FiniteTopology::new(pts.clone(), missing),
            Err(TopologyShapeError::MissingEmpty)
        );
        let pts3 = numbered_points(3);
        let bad: BTreeSet<_> = [s(&[]), s(&[0]), s(&[1]), s(&[0, 1, 2])].into_iter().collect();
        assert_eq!(
            FiniteTopology::new(pts3, bad),
            Err(TopologyShapeError::NotUnionClosed(s(&[0]), s(&[1])))
        );
    }

    #[test]
    fn topology_counts() {
        // number of topologies on n labelled points: 1, 4, 29, 355
        let counts: Vec<usize> = (1..=4).map(|n| FiniteTopology::enumerate_all(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
        for t in FiniteTopology::enumerate_all(3) {
            assert!(FiniteTopology::new(t.points().to_vec(), t.opens().clone()).is_ok());
        }
    }

    #[test]
    fn minimal_open_sets_round_trip() {
        for t in FiniteTopology::enumerate_all(3) {
            let rebuilt = FiniteTopology::from_minimal_open_sets(t.points().to_vec(), &t.minimal_open_sets());
            assert_eq!(rebuilt, t);
        }
    }

    #[test]
    fn discrete_and_indiscrete() {
        let d = FiniteTopology::discrete(numbered_points(3));
        let i = FiniteTopology::indiscrete(numbered_points(3));
        assert_eq!(d.opens().len(), 8);
        assert_eq!(i.opens().len(), 2);
        assert!(i.is_coarser_than(&d));
        assert!(!d.is_coarser_than(&i));
    }
}
