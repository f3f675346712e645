//! Oracles for integration tests. They work on integer matrices with
//! coordinates doubled, so breakpoints and midpoints are integers and no
//! library arithmetic is involved.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use mmw_core::{Matrix, Omega, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rows = Vec<Vec<i64>>;

pub const CORPUS_SEED: u64 = 0x6d6d_7700;
pub const CORPUS_SIZE: usize = 500;

/// Deterministic instances with `m, n` in `1..=4` and entries in `[-5, 5]`.
pub fn corpus() -> Vec<Rows> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let m = rng.gen_range(1..=4);
            let n = rng.gen_range(1..=4);
            (0..m).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect()
        })
        .collect()
}

pub fn matrix(rows: &Rows) -> Matrix {
    Matrix::from_i64(rows).unwrap()
}

pub fn omega(p: usize, n: usize) -> Omega {
    Omega::from_level(p, n).unwrap()
}

pub fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from(x)).collect()
}

/// `v / 2` as exact scalars.
pub fn halves(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::new(x, 2).unwrap()).collect()
}

/// Whether `x2 / 2` solves `A (x)_p x = 0`: the p-th smallest of each row of
/// `2A + x2` is zero.
pub fn solves2(rows: &Rows, p: usize, x2: &[i64]) -> bool {
    rows.iter().all(|row| {
        let mut c: Vec<i64> = row.iter().zip(x2).map(|(a, x)| 2 * a + x).collect();
        c.sort_unstable();
        c[p - 1] == 0
    })
}

pub fn solves(rows: &Rows, p: usize, x: &[i64]) -> bool {
    solves2(rows, p, &x.iter().map(|v| 2 * v).collect::<Vec<_>>())
}

/// Every tuple of rows, one per column, whose vector `x_k = -A(i_k, k)` is a
/// solution, with the vectors.
pub fn brute_force(rows: &Rows, p: usize) -> (BTreeSet<Vec<i64>>, BTreeSet<Vec<usize>>) {
    let (m, n) = (rows.len(), rows[0].len());
    let mut xs = BTreeSet::new();
    let mut tuples = BTreeSet::new();
    for t in (0..n).map(|_| 0..m).multi_cartesian_product() {
        let x: Vec<i64> = t.iter().enumerate().map(|(k, &i)| -rows[i][k]).collect();
        if solves(rows, p, &x) {
            xs.insert(x);
            tuples.insert(t);
        }
    }
    (xs, tuples)
}

/// Doubled test coordinates per column: each breakpoint `-A(i, j)`, the
/// midpoints between consecutive ones, and one point beyond either end.
pub fn grid2(rows: &Rows) -> Vec<Vec<i64>> {
    let n = rows[0].len();
    (0..n)
        .map(|j| {
            let b: Vec<i64> = rows.iter().map(|r| -2 * r[j]).sorted().dedup().collect();
            let mut pts = vec![b[0] - 2];
            for w in b.windows(2) {
                pts.push(w[0]);
                pts.push((w[0] + w[1]) / 2);
            }
            pts.push(*b.last().unwrap());
            pts.push(b.last().unwrap() + 2);
            pts
        })
        .collect()
}

pub fn grid_points2(rows: &Rows) -> Vec<Vec<i64>> {
    grid2(rows).into_iter().multi_cartesian_product().collect()
}

pub fn column_distinct(rows: &Rows) -> bool {
    (0..rows[0].len()).all(|j| rows.iter().map(|r| r[j]).all_unique())
}

/// Largest multiplicity per column.
pub fn frequencies(rows: &Rows) -> Vec<usize> {
    (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j]).counts().into_values().max().unwrap())
        .collect()
}

/// `rank(i, j) = 1 + #{entries of column j below A(i, j)}`.
pub fn ranks(rows: &Rows) -> Rows {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(j, &v)| 1 + rows.iter().filter(|o| o[j] < v).count() as i64)
                .collect()
        })
        .collect()
}

pub fn to_one_based(t: &[usize]) -> Vec<usize> {
    t.iter().map(|i| i + 1).collect()
}
