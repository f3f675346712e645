//! Relaxation of fully active solutions: decreasing the coordinates in `Q`
//! and increasing those in `R` while every row keeps its omega statistic at 0.
//!
//! Everything is driven by the activation tableau `C(i, j) = A(i, j) + x_j`.
//! A row stays solved while it has fewer than `p` negative and at most
//! `n - p` positive entries. Decreasing `x_j` turns the zeros of column `j`
//! negative immediately and each positive `C(i, j)` negative once the
//! decrement passes `C(i, j)`; increasing is symmetric.

use crate::algebra::{Matrix, Omega};
use crate::boxes::{BoxUnion, Interval, IntervalBox};
use crate::error::{Error, Result};
use crate::scalar::{Extended, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationTableau {
    c: Matrix,
    x: Vec<Scalar>,
    p: usize,
    zero_sets: Vec<Vec<usize>>,
    negatives: Vec<usize>,
    positives: Vec<usize>,
}

impl ActivationTableau {
    pub fn matrix(&self) -> &Matrix {
        &self.c
    }

    pub fn x(&self) -> &[Scalar] {
        &self.x
    }

    pub fn level(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.c.rows()
    }

    pub fn cols(&self) -> usize {
        self.c.cols()
    }

    /// Columns (0-based) where row `i` is zero.
    pub fn zero_set(&self, i: usize) -> &[usize] {
        &self.zero_sets[i]
    }

    pub fn negatives(&self, i: usize) -> usize {
        self.negatives[i]
    }

    pub fn positives(&self, i: usize) -> usize {
        self.positives[i]
    }

    fn in_zero_set(&self, i: usize, j: usize) -> bool {
        self.c.get(i, j).is_zero()
    }
}

/// Builds `C` for a solution `x` of the normalized system.
pub fn tableau(a: &Matrix, omega: &Omega, x: &[Scalar]) -> Result<ActivationTableau> {
    let (m, n) = (a.rows(), a.cols());
    if x.len() != n {
        return Err(Error::DimensionMismatch { what: "x", expected: n, found: x.len() });
    }
    let p = omega.level(n);
    let c = a.map_indexed(|_, j, v| v + &x[j]);
    let mut zero_sets = Vec::with_capacity(m);
    let mut negatives = Vec::with_capacity(m);
    let mut positives = Vec::with_capacity(m);
    for i in 0..m {
        let row = c.row(i);
        zero_sets.push((0..n).filter(|&j| row[j].is_zero()).collect());
        negatives.push(row.iter().filter(|v| v.is_negative()).count());
        positives.push(row.iter().filter(|v| v.is_positive()).count());
    }
    if (0..m).any(|i| negatives[i] >= p || positives[i] > n - p) {
        return Err(Error::NotASolution);
    }
    Ok(ActivationTableau { c, x: x.to_vec(), p, zero_sets, negatives, positives })
}

fn check_sets(t: &ActivationTableau, q: &[usize], r: &[usize]) -> Result<()> {
    let n = t.cols();
    if let Some(&j) = q.iter().chain(r).find(|&&j| j >= n) {
        return Err(Error::ColumnOutOfRange { column: j, n });
    }
    if let Some(&j) = q.iter().find(|j| r.contains(j)) {
        return Err(Error::OverlappingRelaxation(j));
    }
    Ok(())
}

/// Whether `x` admits the `(Q, R)`-relaxation: on every row the zeros of `Q`
/// fit in the remaining negative budget and those of `R` in the positive one.
pub fn admits_relaxation(t: &ActivationTableau, q: &[usize], r: &[usize]) -> Result<bool> {
    check_sets(t, q, r)?;
    Ok(admissible(t, q, r))
}

fn admissible(t: &ActivationTableau, q: &[usize], r: &[usize]) -> bool {
    let (p, n) = (t.p, t.cols());
    (0..t.rows()).all(|i| {
        let qi = q.iter().filter(|&&j| t.in_zero_set(i, j)).count();
        let ri = r.iter().filter(|&&j| t.in_zero_set(i, j)).count();
        t.negatives[i] + qi < p && t.positives[i] + ri + p <= n
    })
}

/// Columns admitting the singleton relaxation `R = {j}`.
pub fn increasable(t: &ActivationTableau) -> Vec<usize> {
    (0..t.cols()).filter(|&j| admissible(t, &[], &[j])).collect()
}

/// Columns admitting the singleton relaxation `Q = {j}`.
pub fn decreasable(t: &ActivationTableau) -> Vec<usize> {
    (0..t.cols()).filter(|&j| admissible(t, &[j], &[])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Largest step for one coordinate moving alone; `0` when it cannot move.
pub fn single_bound(t: &ActivationTableau, j: usize, direction: Direction) -> Extended {
    if j >= t.cols() {
        return Extended::Finite(Scalar::zero());
    }
    let (q, r): (&[usize], &[usize]) = match direction {
        Direction::Down => (&[j], &[]),
        Direction::Up => (&[], &[j]),
    };
    if !admissible(t, q, r) {
        return Extended::Finite(Scalar::zero());
    }
    let steps = match direction {
        Direction::Down => budgeted_steps(t, q, Direction::Down),
        Direction::Up => budgeted_steps(t, r, Direction::Up),
    };
    steps.into_iter().next().expect("one coordinate")
}

/// Maximal steps for the coordinates in `moving`, all moving in `direction`.
///
/// Only crossings in the moving direction consume budget: a decrease can only
/// add negatives, an increase only positives. Crossings that would help the
/// other budget are not relied on, since the box also contains the points
/// where they have not happened yet. Starting from the bound that assumes
/// every co-moving crossable entry crosses, each coordinate in turn is raised
/// to the largest value that keeps every row within budget given the others.
/// That keeps the box valid at every step and the bounds nondecreasing.
fn budgeted_steps(t: &ActivationTableau, moving: &[usize], direction: Direction) -> Vec<Extended> {
    let (p, n, m) = (t.p, t.cols(), t.rows());
    let capacity = match direction {
        Direction::Down => p - 1,
        Direction::Up => n - p,
    };
    // distance to the sign change of an entry leaving its side, if any
    let threshold = |i: usize, j: usize| -> Option<Scalar> {
        let v = t.c.get(i, j);
        match direction {
            Direction::Down if v.is_positive() => Some(v.clone()),
            Direction::Up if v.is_negative() => Some(-v),
            _ => None,
        }
    };
    let base: Vec<usize> = (0..m)
        .map(|i| {
            let used = match direction {
                Direction::Down => t.negatives[i],
                Direction::Up => t.positives[i],
            };
            used + moving.iter().filter(|&&j| t.in_zero_set(i, j)).count()
        })
        .collect();
    let crosses = |i: usize, k: usize, bound: &Extended| match threshold(i, k) {
        Some(th) => Extended::Finite(th) < *bound,
        None => false,
    };
    let bound_for = |pos: usize, current: &[Extended], pessimistic: bool| -> Extended {
        let j = moving[pos];
        let mut best = Extended::PosInf;
        for (i, &used) in base.iter().enumerate() {
            let Some(th) = threshold(i, j) else { continue };
            let others = moving
                .iter()
                .enumerate()
                .filter(|&(l, &k)| l != pos && if pessimistic { threshold(i, k).is_some() } else { crosses(i, k, &current[l]) })
                .count();
            if used + others + 1 > capacity {
                best = best.min(Extended::Finite(th));
            }
        }
        best
    };
    let mut bounds: Vec<Extended> = (0..moving.len()).map(|pos| bound_for(pos, &[], true)).collect();
    loop {
        let mut changed = false;
        for pos in 0..moving.len() {
            let next = bound_for(pos, &bounds, false);
            debug_assert!(next >= bounds[pos]);
            if next != bounds[pos] {
                bounds[pos] = next;
                changed = true;
            }
        }
        if !changed {
            return bounds;
        }
    }
}

/// Box swept by the `(Q, R)`-relaxation with every coordinate at its joint
/// maximal step.
pub fn joint_box(t: &ActivationTableau, q: &[usize], r: &[usize]) -> Result<IntervalBox> {
    check_sets(t, q, r)?;
    if !admissible(t, q, r) {
        return Err(Error::InadmissibleRelaxation);
    }
    let mut intervals: Vec<Interval> = t.x.iter().cloned().map(Interval::point).collect();
    for (&j, step) in q.iter().zip(budgeted_steps(t, q, Direction::Down)) {
        let lo = Extended::offset(&t.x[j], &step, true);
        intervals[j] = Interval::new(lo, Extended::Finite(t.x[j].clone()))?;
    }
    for (&j, step) in r.iter().zip(budgeted_steps(t, r, Direction::Up)) {
        let hi = Extended::offset(&t.x[j], &step, false);
        intervals[j] = Interval::new(Extended::Finite(t.x[j].clone()), hi)?;
    }
    Ok(IntervalBox(intervals))
}

/// Admissible `(Q, R)` pairs, each column independently fixed, decreased or
/// increased.
pub fn admissible_pairs(t: &ActivationTableau) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = t.cols();
    let total = 3usize.pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let (mut q, mut r) = (Vec::new(), Vec::new());
            for j in 0..n {
                match code % 3 {
                    1 => q.push(j),
                    2 => r.push(j),
                    _ => {}
                }
                code /= 3;
            }
            admissible(t, &q, &r).then_some((q, r))
        })
        .collect()
}

/// `Rel(x)`: union of the joint boxes of all admissible pairs, with touching
/// boxes fused and contained ones dropped.
pub fn rel_set(a: &Matrix, omega: &Omega, x: &[Scalar]) -> Result<BoxUnion> {
    let t = tableau(a, omega, x)?;
    let mut out = BoxUnion::empty(a.cols());
    for (q, r) in admissible_pairs(&t) {
        out.push(joint_box(&t, &q, &r)?)?;
    }
    out.coalesce();
    Ok(out)
}
