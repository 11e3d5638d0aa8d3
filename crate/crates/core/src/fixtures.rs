//! Small named MVSs and non-MVS tables used throughout the tests and examples.

use crate::algebra::{validate, FiniteMvs, RawTable};

/// `({0,1}, max)`.
pub fn max2_raw() -> RawTable {
    RawTable::from_fn(["0", "1"], |a, b| a.max(b)).unwrap()
}

pub fn max2() -> FiniteMvs {
    validate(&max2_raw()).unwrap()
}

/// `({0,1,2}, +)` with sums capped at 2.
pub fn sat3() -> FiniteMvs {
    validate(&RawTable::from_fn(["0", "1", "2"], |a, b| (a + b).min(2)).unwrap()).unwrap()
}

/// `({0,..,3}, +)` with sums capped at 3.
pub fn sat4() -> FiniteMvs {
    validate(&RawTable::from_fn(["0", "1", "2", "3"], |a, b| (a + b).min(3)).unwrap()).unwrap()
}

/// `({0,1,2}, max)`: ordered, yet `m ◁ m` for every nonzero `m`.
pub fn max3() -> FiniteMvs {
    validate(&RawTable::from_fn(["0", "1", "2"], |a, b| a.max(b)).unwrap()).unwrap()
}

/// `{e,a,b}` with `a+a = b`, `a+b = b+a = a`, `b+b = b`: the two-element group
/// `{b, a}` with a new neutral adjoined. Commutative, not antisymmetric.
pub fn m_ab() -> FiniteMvs {
    let raw = RawTable::new(
        vec!["e".into(), "a".into(), "b".into()],
        vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]],
    )
    .unwrap();
    validate(&raw).unwrap()
}

/// `{e,p,q}` with `x + y = y` for nonzero `x, y`. A non-commutative MVS.
pub fn right_zero3() -> FiniteMvs {
    let raw = RawTable::from_fn(["e", "p", "q"], |a, b| if b == 0 { a } else { b }).unwrap();
    validate(&raw).unwrap()
}

/// `Z/2`: fails (M3) only.
pub fn z2_raw() -> RawTable {
    RawTable::from_fn(["0", "1"], |a, b| (a + b) % 2).unwrap()
}

/// `{e,a,b}` with `x + y = x` for nonzero `x`: fails (M4) only.
pub fn left_projection_raw() -> RawTable {
    RawTable::from_fn(["e", "a", "b"], |a, b| if a == 0 { b } else { a }).unwrap()
}

/// Every valid fixture.
pub fn all() -> Vec<FiniteMvs> {
    vec![max2(), sat3(), sat4(), max3(), m_ab(), right_zero3()]
}
