//! Random MVSs, homomorphisms, congruences and quasimetric tables for
//! property tests and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{check_axioms, validate, ElemId, FiniteMvs, RawTable};
use crate::congruence::congruence_generated_by;
use crate::morphism::MvsMap;
use crate::quasimetric::QuasimetricTable;
use crate::relation::ElemRelation;

/// Nodes visited before a table search restarts from scratch.
const RESTART_AFTER: usize = 20_000;

struct TableSearch<'a, R: Rng> {
    rng: &'a mut R,
    n: usize,
    commutative: bool,
    cells: Vec<(usize, usize)>,
    table: Vec<Option<usize>>,
    nodes: usize,
}

impl<R: Rng> TableSearch<'_, R> {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: Option<usize>) {
        self.table[x * self.n + y] = v;
        if self.commutative {
            self.table[y * self.n + x] = v;
        }
    }

    fn associative_so_far(&self) -> bool {
        let n = self.n;
        (1..n).all(|x| {
            (1..n).all(|y| {
                (1..n).all(|z| {
                    let l = self.get(x, y).and_then(|xy| self.get(xy, z));
                    let r = self.get(y, z).and_then(|yz| self.get(x, yz));
                    !matches!((l, r), (Some(l), Some(r)) if l != r)
                })
            })
        })
    }

    fn leaf(&self) -> Option<RawTable> {
        let raw = RawTable::from_fn(numbered_names(self.n), |x, y| self.get(x, y).unwrap()).ok()?;
        check_axioms(&raw).is_mvs().then_some(raw)
    }

    fn run(&mut self, k: usize) -> Option<RawTable> {
        self.nodes += 1;
        if self.nodes > RESTART_AFTER {
            return None;
        }
        if k == self.cells.len() {
            return self.leaf();
        }
        let (x, y) = self.cells[k];
        let mut values: Vec<usize> = (1..self.n).collect();
        values.shuffle(self.rng);
        for v in values {
            self.set(x, y, Some(v));
            if self.associative_so_far() {
                if let Some(raw) = self.run(k + 1) {
                    return Some(raw);
                }
            }
        }
        self.set(x, y, None);
        None
    }
}

/// Element names `0, 1, .., n-1`; `0` is the neutral element.
pub fn numbered_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// A random MVS on `card ≥ 2` elements with neutral `0`. Tables are built by
/// backtracking with shuffled value orders, so every MVS of that size can
/// appear, though not uniformly.
pub fn random_mvs<R: Rng>(rng: &mut R, card: usize, commutative: bool) -> FiniteMvs {
    assert!(card >= 2, "an MVS has at least two elements");
    loop {
        let n = card;
        let mut table = vec![None; n * n];
        for x in 0..n {
            table[x] = Some(x);
            table[x * n] = Some(x);
        }
        let cells = (1..n)
            .flat_map(|x| (1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !commutative || x <= y)
            .collect();
        let mut search = TableSearch {
            rng: &mut *rng,
            n,
            commutative,
            cells,
            table,
            nodes: 0,
        };
        if let Some(raw) = search.run(0) {
            return validate(&raw).expect("leaf tables pass the axiom check");
        }
    }
}

/// A random homomorphism `domain → codomain`, or `None` when there is none.
pub fn random_hom<R: Rng>(rng: &mut R, domain: &FiniteMvs, codomain: &FiniteMvs) -> Option<MvsMap> {
    fn extend<R: Rng>(
        rng: &mut R,
        d: &FiniteMvs,
        c: &FiniteMvs,
        image: &mut Vec<Option<ElemId>>,
        next: usize,
    ) -> bool {
        if next == d.card() {
            return true;
        }
        let mut candidates: Vec<ElemId> = c.nonzero().collect();
        candidates.shuffle(rng);
        for v in candidates {
            image[next] = Some(v);
            let ok = d.elements().all(|x| {
                d.elements().all(|y| match (image[x.0], image[y.0], image[d.add(x, y).0]) {
                    (Some(hx), Some(hy), Some(hs)) => c.add(hx, hy) == hs,
                    _ => true,
                })
            });
            if ok && extend(rng, d, c, image, next + 1) {
                return true;
            }
        }
        image[next] = None;
        false
    }
    let mut image = vec![None; domain.card()];
    image[0] = Some(codomain.neutral());
    if !extend(rng, domain, codomain, &mut image, 1) {
        return None;
    }
    let mapping = image.into_iter().map(Option::unwrap).collect();
    Some(MvsMap::new(domain.clone(), codomain.clone(), mapping).expect("search only returns homomorphisms"))
}

/// A congruence generated by a few random pairs of nonzero elements, with
/// the class of the neutral element trivial.
pub fn random_congruence<R: Rng>(rng: &mut R, m: &FiniteMvs) -> ElemRelation {
    let nonzero: Vec<ElemId> = m.nonzero().collect();
    for _ in 0..32 {
        let count = rng.gen_range(0..=nonzero.len());
        let pairs: Vec<(ElemId, ElemId)> = (0..count)
            .map(|_| (*nonzero.choose(rng).unwrap(), *nonzero.choose(rng).unwrap()))
            .collect();
        // M3 keeps the nonzero elements closed, so this never reaches e
        let r = congruence_generated_by(m, pairs);
        if m.nonzero().all(|x| !r.get(x, m.neutral())) {
            return r;
        }
    }
    ElemRelation::identity(m.card())
}

/// A random quasimetric table on `points` with values in `m`.
pub fn random_quasimetric<R: Rng>(rng: &mut R, points: Vec<String>, m: &FiniteMvs, symmetric: bool) -> QuasimetricTable {
    let n = points.len();
    let mut values = vec![vec![m.neutral(); n]; n];
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| if symmetric { x < y } else { x != y })
        .collect();
    fn fill<R: Rng>(
        rng: &mut R,
        m: &FiniteMvs,
        cells: &[(usize, usize)],
        values: &mut Vec<Vec<ElemId>>,
        assigned: &mut Vec<Vec<bool>>,
        k: usize,
        symmetric: bool,
    ) -> bool {
        let Some(&(a, b)) = cells.get(k) else { return true };
        let mut candidates: Vec<ElemId> = m.elements().collect();
        candidates.shuffle(rng);
        let n = values.len();
        for v in candidates {
            values[a][b] = v;
            assigned[a][b] = true;
            if symmetric {
                values[b][a] = v;
                assigned[b][a] = true;
            }
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        !(assigned[x][z] && assigned[x][y] && assigned[y][z])
                            || m.leq(values[x][z], m.add(values[x][y], values[y][z]))
                    })
                })
            });
            if ok && fill(rng, m, cells, values, assigned, k + 1, symmetric) {
                return true;
            }
        }
        assigned[a][b] = false;
        if symmetric {
            assigned[b][a] = false;
        }
        false
    }
    let mut assigned: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| x == y).collect()).collect();
    let found = fill(rng, m, &cells, &mut values, &mut assigned, 0, symmetric);
    assert!(found, "the all-neutral table always satisfies the triangle inequality");
    QuasimetricTable::new(points, m.clone(), values).expect("backtracking keeps (f1) and (f2)")
}
