//! Exhaustive search for a quasimetric function inducing a given topology.

use crate::algebra::{ElemId, FiniteMvs};
use crate::quasimetric::{QuasimetricTable, TopologyError};
use crate::topology::{FiniteTopology, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Only consider symmetric tables (metric functions).
    pub symmetric: bool,
    /// Upper bound on `card(M)^cells`, the size of the unpruned search space.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetric: false,
            budget: 1 << 24,
        }
    }
}

struct Search<'a> {
    m: &'a FiniteMvs,
    n: usize,
    cells: Vec<(usize, usize)>,
    symmetric: bool,
    values: Vec<Option<ElemId>>,
    target: Vec<PointSet>,
}

impl Search<'_> {
    fn get(&self, x: usize, y: usize) -> Option<ElemId> {
        self.values[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: Option<ElemId>) {
        self.values[x * self.n + y] = v;
        if self.symmetric {
            self.values[y * self.n + x] = v;
        }
    }

    fn triangle_ok(&self, x: usize, y: usize, z: usize) -> bool {
        match (self.get(x, z), self.get(x, y), self.get(y, z)) {
            (Some(xz), Some(xy), Some(yz)) => self.m.leq(xz, self.m.add(xy, yz)),
            _ => true,
        }
    }

    /// (f1) on every fully assigned triple that uses cell `(a, b)`.
    fn consistent(&self, a: usize, b: usize) -> bool {
        let mut touched = vec![(a, b)];
        if self.symmetric {
            touched.push((b, a));
        }
        touched.into_iter().all(|(a, b)| {
            (0..self.n).all(|w| {
                self.triangle_ok(a, w, b) && self.triangle_ok(a, b, w) && self.triangle_ok(w, a, b)
            })
        })
    }

    fn leaf_matches(&self) -> bool {
        let rows = (0..self.n)
            .map(|x| (0..self.n).map(|y| self.get(x, y).unwrap()).collect())
            .collect();
        let q = QuasimetricTable::new(crate::topology::numbered_points(self.n), self.m.clone(), rows)
            .expect("forward checking leaves only quasimetric tables");
        q.minimal_open_sets() == self.target
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.cells.len() {
            return self.leaf_matches();
        }
        let (a, b) = self.cells[k];
        for v in self.m.elements() {
            self.set(a, b, Some(v));
            if self.consistent(a, b) && self.run(k + 1) {
                return true;
            }
        }
        self.set(a, b, None);
        false
    }
}

/// The first table in row-major lexicographic order (off-diagonal cells,
/// values ascending) that satisfies (f1), (f2) and induces `target`, or
/// `None` when `target` is not `M`-metrizable.
pub fn search_metrizable(
    target: &FiniteTopology,
    m: &FiniteMvs,
    options: SearchOptions,
) -> Result<Option<QuasimetricTable>, TopologyError> {
    let n = target.len();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| if options.symmetric { x < y } else { x != y })
        .collect();
    let needed = (m.card() as u128)
        .checked_pow(cells.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > options.budget as u128 {
        return Err(TopologyError::BudgetExceeded {
            needed,
            budget: options.budget,
        });
    }
    let mut values = vec![None; n * n];
    for x in 0..n {
        values[x * n + x] = Some(m.neutral());
    }
    let mut search = Search {
        m,
        n,
        cells,
        symmetric: options.symmetric,
        values,
        target: target.minimal_open_sets(),
    };
    if !search.run(0) {
        return Ok(None);
    }
    let rows = (0..n)
        .map(|x| (0..n).map(|y| search.get(x, y).unwrap()).collect())
        .collect();
    QuasimetricTable::new(target.points().to_vec(), m.clone(), rows).map(Some)
}
