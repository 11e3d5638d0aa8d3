//! Finite monoid models that separate words.

use super::{Presentation, Word};

/// A monoid on `{0, .., size-1}` with identity `0`, plus an image for every
/// letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidModel {
    pub size: usize,
    /// Row-major multiplication table.
    pub table: Vec<usize>,
    pub assignment: Vec<usize>,
}

impl MonoidModel {
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// Product of the letter images; the empty word evaluates to `0`.
    pub fn eval(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |acc, &l| self.mul(acc, self.assignment[l]))
    }

    pub fn is_monoid(&self) -> bool {
        let s = self.size;
        self.table.len() == s * s
            && self.table.iter().all(|&v| v < s)
            && (0..s).all(|x| self.mul(0, x) == x && self.mul(x, 0) == x)
            && (0..s).all(|x| (0..s).all(|y| (0..s).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))))
    }

    /// Every relation `ab ~ c` holds as `[a]·[b] = [c]`.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        self.assignment.len() == p.alphabet().len()
            && p
                .relations()
                .iter()
                .all(|r| self.mul(self.assignment[r.a], self.assignment[r.b]) == self.assignment[r.c])
    }
}

struct TableSearch<'a> {
    size: usize,
    cells: Vec<(usize, usize)>,
    table: Vec<Option<usize>>,
    visit: &'a mut dyn FnMut(&[usize]) -> bool,
}

impl TableSearch<'_> {
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.size + y]
    }

    /// Associativity on every triple whose products are all known.
    fn associative_so_far(&self) -> bool {
        let s = self.size;
        (1..s).all(|x| {
            (1..s).all(|y| {
                (1..s).all(|z| {
                    let left = self.get(x, y).and_then(|xy| self.get(xy, z));
                    let right = self.get(y, z).and_then(|yz| self.get(x, yz));
                    match (left, right) {
                        (Some(l), Some(r)) => l == r,
                        _ => true,
                    }
                })
            })
        })
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.cells.len() {
            let table: Vec<usize> = self.table.iter().map(|v| v.unwrap()).collect();
            return (self.visit)(&table);
        }
        let (x, y) = self.cells[k];
        for v in 0..self.size {
            self.table[x * self.size + y] = Some(v);
            if self.associative_so_far() && self.run(k + 1) {
                return true;
            }
        }
        self.table[x * self.size + y] = None;
        false
    }
}

/// Calls `visit` on every monoid table of the given size with identity `0`,
/// in row-major lexicographic order, until it returns `true`.
pub fn for_each_monoid(size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if size == 0 {
        return false;
    }
    let mut table = vec![None; size * size];
    for x in 0..size {
        table[x] = Some(x);
        table[x * size] = Some(x);
    }
    let cells = (1..size).flat_map(|x| (1..size).map(move |y| (x, y))).collect();
    TableSearch {
        size,
        cells,
        table,
        visit,
    }
    .run(0)
}

fn assign(
    p: &Presentation,
    size: usize,
    table: &[usize],
    assignment: &mut Vec<usize>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = assignment.len();
    if k == p.alphabet().len() {
        return accept(assignment);
    }
    for v in 0..size {
        assignment.push(v);
        let ok = p.relations().iter().all(|r| {
            r.a.max(r.b).max(r.c) != k
                || table[assignment[r.a] * size + assignment[r.b]] == assignment[r.c]
        });
        if ok && assign(p, size, table, assignment, accept) {
            return true;
        }
        assignment.pop();
    }
    false
}

/// The first model, by size, table and assignment order, in which every
/// relation holds and `u`, `v` evaluate differently. Such a model proves
/// that `u` and `v` are not related.
pub fn find_separating_model(p: &Presentation, u: &Word, v: &Word, max_size: usize) -> Option<MonoidModel> {
    if u == v {
        return None;
    }
    let mut found = None;
    for size in 1..=max_size {
        let done = for_each_monoid(size, &mut |table| {
            let mut assignment = Vec::new();
            assign(p, size, table, &mut assignment, &mut |a| {
                let m = MonoidModel {
                    size,
                    table: table.to_vec(),
                    assignment: a.to_vec(),
                };
                if m.eval(u) != m.eval(v) {
                    found = Some(m);
                    true
                } else {
                    false
                }
            })
        });
        if done {
            break;
        }
    }
    found
}
