//! Reduction to `A* (x)_omega x = 0`, a cheap unsolvability filter, and the
//! classical principal solution for the min-plus and max-plus levels.

use crate::algebra::{kth_smallest, Matrix, Omega};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedInstance {
    pub matrix: Matrix,
    /// Right-hand side the matrix was normalized against.
    pub rhs: Vec<Scalar>,
}

/// Subtracts `b_i` from row `i`.
pub fn normalize(a: &Matrix, b: &[Scalar]) -> Result<NormalizedInstance> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { what: "b", expected: a.rows(), found: b.len() });
    }
    Ok(NormalizedInstance { matrix: a.map_indexed(|i, _, v| v - &b[i]), rhs: b.to_vec() })
}

/// Finds rows `(i, j)` (0-based) with row `i` strictly above row `j` in every
/// column. Such a pair makes every level unsolvable; `None` proves nothing.
pub fn dominance_unsolvable(a: &Matrix) -> Option<(usize, usize)> {
    let m = a.rows();
    (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && a.row(i).iter().zip(a.row(j)).all(|(u, v)| u > v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalCandidate {
    pub xbar: Vec<Scalar>,
    /// `M_k`: rows (0-based) whose column-`k` entry equals the column statistic.
    pub msets: Vec<Vec<usize>>,
}

/// `xbar_k = -stat(A(., k))`. At row level 1 the column statistic is the
/// minimum and at row level n the maximum, whatever the row count; other
/// levels use `ceil(omega m)`.
pub fn classical_principal(a: &Matrix, omega: &Omega) -> PrincipalCandidate {
    let (m, n) = (a.rows(), a.cols());
    let p = match omega.level(n) {
        1 => 1,
        l if l == n => m,
        _ => omega.level(m),
    };
    let mut xbar = Vec::with_capacity(a.cols());
    let mut msets = Vec::with_capacity(a.cols());
    for k in 0..a.cols() {
        let col: Vec<Scalar> = a.column(k).cloned().collect();
        let stat = kth_smallest(&col, p).expect("matrix columns are nonempty");
        msets.push((0..m).filter(|&i| col[i] == stat).collect());
        xbar.push(-stat);
    }
    PrincipalCandidate { xbar, msets }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalVerdict {
    pub solvable: bool,
    pub unique: bool,
}

/// Solvability and uniqueness from the covering of `M` by the `M_k`. Only
/// valid at level 1 (min-plus) or level n (max-plus).
pub fn classical_solvable(pc: &PrincipalCandidate, a: &Matrix, omega: &Omega) -> Result<ClassicalVerdict> {
    let (m, n) = (a.rows(), a.cols());
    let p = omega.level(n);
    if p != 1 && p != n {
        return Err(Error::NotClassicalLevel { level: p, n });
    }
    if pc.msets.len() != n {
        return Err(Error::DimensionMismatch { what: "M sets", expected: n, found: pc.msets.len() });
    }
    let covered = |skip: Option<usize>| {
        let mut hit = vec![false; m];
        for (k, set) in pc.msets.iter().enumerate() {
            if Some(k) != skip {
                for &i in set {
                    hit[i] = true;
                }
            }
        }
        hit.into_iter().all(|h| h)
    };
    let solvable = covered(None);
    // a proper subfamily covers iff some family of size n - 1 does
    let unique = solvable && (0..n).all(|k| !covered(Some(k)));
    Ok(ClassicalVerdict { solvable, unique })
}
