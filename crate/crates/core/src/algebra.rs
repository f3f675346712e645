//! The maxmin-omega order statistic and the matrix-vector product built on it.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The synchronisation fraction, a rational in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Scalar", into = "Scalar")]
pub struct Omega(Scalar);

impl Omega {
    pub fn new(value: Scalar) -> Result<Self> {
        if !value.is_positive() || value > Scalar::one() {
            return Err(Error::OmegaOutOfRange(value.to_string()));
        }
        Ok(Omega(value))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        Omega::new(Scalar::new(numer, denom)?)
    }

    /// The fraction `level / n`, whose level for `n` columns is exactly `level`.
    pub fn from_level(level: usize, n: usize) -> Result<Self> {
        if n == 0 || level == 0 || level > n {
            return Err(Error::LevelOutOfRange { level, n });
        }
        Omega::ratio(level as i64, n as i64)
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    /// `ceil(omega * n)`, computed on integers.
    pub fn level(&self, n: usize) -> usize {
        let scaled = self.0.numer() * BigInt::from(n);
        let (q, r) = scaled.div_rem(self.0.denom());
        let q = if r.is_zero() { q } else { q + BigInt::one() };
        q.to_usize().expect("level fits in usize")
    }

    pub fn spec(&self, n: usize) -> OmegaSpec {
        OmegaSpec { omega: self.clone(), n, p: self.level(n) }
    }
}

impl TryFrom<Scalar> for Omega {
    type Error = Error;
    fn try_from(value: Scalar) -> Result<Self> {
        Omega::new(value)
    }
}

impl From<Omega> for Scalar {
    fn from(value: Omega) -> Self {
        value.0
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// An omega together with the column count it is applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpec {
    pub omega: Omega,
    pub n: usize,
    pub p: usize,
}

/// `ceil(omega * n)` with validation of both arguments.
pub fn omega_level(omega: &Scalar, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::LevelOutOfRange { level: 0, n });
    }
    Ok(Omega::new(omega.clone())?.level(n))
}

/// Dense row-major matrix of finite scalars with at least one row and column.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRows { row: i + 1, expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: m, cols: n, data })
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Scalar::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &Scalar> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entrywise map that keeps the shape.
    pub fn map_indexed<F: FnMut(usize, usize, &Scalar) -> Scalar>(&self, mut f: F) -> Matrix {
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(k, v)| f(k / self.cols, k % self.cols, v))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// True when no column holds a repeated value.
    pub fn is_column_distinct(&self) -> bool {
        (0..self.cols).all(|j| self.column(j).all_unique())
    }
}

impl TryFrom<Vec<Vec<Scalar>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Scalar>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Vector helper for tests and callers working with small integers.
pub fn vector_i64(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| Scalar::from(v)).collect()
}

/// The `p`-th smallest element (1-based, counted with multiplicity).
pub fn kth_smallest(values: &[Scalar], p: usize) -> Result<Scalar> {
    if values.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    if p == 0 || p > values.len() {
        return Err(Error::LevelOutOfRange { level: p, n: values.len() });
    }
    let mut work: Vec<&Scalar> = values.iter().collect();
    let (_, nth, _) = work.select_nth_unstable(p - 1);
    Ok((*nth).clone())
}

/// The `ceil(omega |S|)`-th smallest element of the multiset `S`.
pub fn maxmin_omega(values: &[Scalar], omega: &Omega) -> Result<Scalar> {
    if values.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    kth_smallest(values, omega.level(values.len()))
}

/// Which subset identity to evaluate in [`maxmin_omega_by_subsets`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetForm {
    /// Minimum over all `p`-subsets of their maximum.
    MinOfMax,
    /// Maximum over all `(n + 1 - p)`-subsets of their minimum.
    MaxOfMin,
}

/// Evaluates the order statistic through the min/max subset identities.
/// Exponential in `|S|`; meant as an independent cross-check.
pub fn maxmin_omega_by_subsets(values: &[Scalar], omega: &Omega, form: SubsetForm) -> Result<Scalar> {
    if values.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let n = values.len();
    let p = omega.level(n);
    let out = match form {
        SubsetForm::MinOfMax => values
            .iter()
            .combinations(p)
            .map(|sub| sub.into_iter().max().expect("nonempty subset"))
            .min(),
        SubsetForm::MaxOfMin => values
            .iter()
            .combinations(n + 1 - p)
            .map(|sub| sub.into_iter().min().expect("nonempty subset"))
            .max(),
    };
    Ok(out.expect("at least one subset").clone())
}

/// `A (x)_omega x`: row `i` is the omega statistic of `{A(i,j) + x_j}`.
pub fn apply(a: &Matrix, omega: &Omega, x: &[Scalar]) -> Result<Vec<Scalar>> {
    if x.len() != a.cols() {
        return Err(Error::DimensionMismatch { what: "x", expected: a.cols(), found: x.len() });
    }
    let p = omega.level(a.cols());
    (0..a.rows())
        .map(|i| {
            let shifted: Vec<Scalar> = a.row(i).iter().zip(x).map(|(aij, xj)| aij + xj).collect();
            kth_smallest(&shifted, p)
        })
        .collect()
}

/// Exact test of `A (x)_omega x = b`.
pub fn is_solution(a: &Matrix, omega: &Omega, x: &[Scalar], b: &[Scalar]) -> Result<bool> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { what: "b", expected: a.rows(), found: b.len() });
    }
    Ok(apply(a, omega, x)? == b)
}

/// Sign-count test of `A (x)_omega x = 0` for a fixed level: every row needs
/// fewer than `p` negative and at most `n - p` positive shifted entries.
pub(crate) fn solves_normalized(a: &Matrix, p: usize, x: &[Scalar]) -> bool {
    let n = a.cols();
    (0..a.rows()).all(|i| {
        let (mut neg, mut pos) = (0, 0);
        for (aij, xj) in a.row(i).iter().zip(x) {
            let c = aij + xj;
            if c.is_negative() {
                neg += 1;
            } else if c.is_positive() {
                pos += 1;
            }
        }
        neg < p && pos <= n - p
    })
}
