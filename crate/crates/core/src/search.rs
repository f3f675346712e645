//! Enumeration of solution-index candidates from the principal order matrix,
//! verification against the original matrix, and size classification.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{solves_normalized, Matrix, Omega};
use crate::order::{principal_order, PrincipalOrderMatrix};
use crate::scalar::Scalar;

/// One row index per column, naming an active entry. Stored 0-based; shown and
/// serialized 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(pub Vec<usize>);

impl IndexTuple {
    /// Builds a tuple from 1-based row numbers.
    pub fn one_based(rows: &[usize]) -> Self {
        IndexTuple(rows.iter().map(|&r| r - 1).collect())
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&r| r + 1).collect()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_one_based().iter().join(","))
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IndexTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<usize>::deserialize(deserializer)?;
        if rows.contains(&0) {
            return Err(serde::de::Error::custom("row numbers are 1-based"));
        }
        Ok(IndexTuple::one_based(&rows))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullyActive {
    pub x: Vec<Scalar>,
    /// Canonical tuple: smallest row of each tied group.
    pub tuple: IndexTuple,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchResult {
    pub fully_active: Vec<FullyActive>,
    /// Every solution index, including tuples that differ only inside a tied
    /// group of a column.
    pub indices: Vec<IndexTuple>,
}

/// Inclusive bounds on the rank sum of a solution index.
pub fn rank_sum_bounds(pom: &PrincipalOrderMatrix, p: usize) -> (i64, i64) {
    let (m, n, f) = (pom.rows() as i64, pom.cols() as i64, pom.total_freq() as i64);
    let mp = m * p as i64;
    (mp + n - f, mp + n - m)
}

struct Dfs<'a> {
    pom: &'a PrincipalOrderMatrix,
    /// Canonical (rank, representative row, group) per column.
    choices: Vec<Vec<(usize, usize, &'a [usize])>>,
    lower: i64,
    upper: i64,
    /// Largest rank reachable in columns `k..`.
    max_tail: Vec<i64>,
    /// Rows coverable by one choice in each of columns `k..`.
    freq_tail: Vec<usize>,
}

impl<'a> Dfs<'a> {
    fn new(pom: &'a PrincipalOrderMatrix, p: usize) -> Self {
        let n = pom.cols();
        let choices: Vec<Vec<_>> = (0..n)
            .map(|j| pom.groups(j).iter().map(|(&r, rows)| (r, rows[0], rows.as_slice())).collect())
            .collect();
        let mut max_tail = vec![0i64; n + 1];
        let mut freq_tail = vec![0usize; n + 1];
        for j in (0..n).rev() {
            let top = choices[j].iter().map(|c| c.0).max().unwrap_or(0);
            max_tail[j] = max_tail[j + 1] + top as i64;
            freq_tail[j] = freq_tail[j + 1] + pom.freqs()[j];
        }
        let (lower, upper) = rank_sum_bounds(pom, p);
        Dfs { pom, choices, lower, upper, max_tail, freq_tail }
    }

    fn run(&self, col: usize, sum: i64, cover: &mut Vec<u32>, uncovered: usize, tuple: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        let n = self.pom.cols();
        if col == n {
            if uncovered == 0 && sum >= self.lower && sum <= self.upper {
                out.push(IndexTuple(tuple.clone()));
            }
            return;
        }
        // rank 1 is always present, so the minimum tail sum is the column count
        let min_rest = (n - col - 1) as i64;
        for &(rank, rep, group) in &self.choices[col] {
            let s = sum + rank as i64;
            if s + min_rest > self.upper || s + self.max_tail[col + 1] < self.lower {
                continue;
            }
            let mut newly = 0;
            for &i in group {
                if cover[i] == 0 {
                    newly += 1;
                }
                cover[i] += 1;
            }
            let left = uncovered - newly;
            if left <= self.freq_tail[col + 1] {
                tuple.push(rep);
                self.run(col + 1, s, cover, left, tuple, out);
                tuple.pop();
            }
            for &i in group {
                cover[i] -= 1;
            }
        }
    }
}

/// Canonical tuples satisfying the coverage condition and the rank-sum
/// bounds, sorted lexicographically. A superset of the solution indices.
pub fn candidate_tuples(pom: &PrincipalOrderMatrix, omega: &Omega) -> Vec<IndexTuple> {
    let p = omega.level(pom.cols());
    let dfs = Dfs::new(pom, p);
    let m = pom.rows();
    let mut out: Vec<IndexTuple> = dfs.choices[0]
        .par_iter()
        .flat_map_iter(|&(rank, rep, group)| {
            let mut cover = vec![0u32; m];
            for &i in group {
                cover[i] += 1;
            }
            let mut found = Vec::new();
            let s = rank as i64;
            let rest = (pom.cols() - 1) as i64;
            let left = m - group.len();
            if s + rest <= dfs.upper && s + dfs.max_tail[1] >= dfs.lower && left <= dfs.freq_tail[1] {
                let mut tuple = vec![rep];
                dfs.run(1, s, &mut cover, left, &mut tuple, &mut found);
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// `x_k = -A(i_k, k)`, returned when it solves the normalized system.
pub fn verify_candidate(a: &Matrix, omega: &Omega, t: &IndexTuple) -> Option<Vec<Scalar>> {
    if t.0.len() != a.cols() || t.0.iter().any(|&i| i >= a.rows()) {
        return None;
    }
    let x: Vec<Scalar> = t.0.iter().enumerate().map(|(k, &i)| -a.get(i, k)).collect();
    solves_normalized(a, omega.level(a.cols()), &x).then_some(x)
}

/// All fully active solutions of `A (x)_omega x = 0` and the full set of
/// solution indices.
pub fn fully_active_solutions(a: &Matrix, omega: &Omega) -> SearchResult {
    let pom = principal_order(a);
    let mut fully_active: Vec<FullyActive> = candidate_tuples(&pom, omega)
        .into_iter()
        .filter_map(|t| verify_candidate(a, omega, &t).map(|x| FullyActive { x, tuple: t }))
        .collect();
    let mut indices: Vec<IndexTuple> = fully_active
        .iter()
        .flat_map(|fa| expand_ties(&pom, &fa.tuple))
        .collect();
    indices.sort();
    indices.dedup();
    fully_active.sort_by(|u, v| u.tuple.cmp(&v.tuple));
    let mut seen = std::collections::HashSet::new();
    fully_active.retain(|fa| seen.insert(fa.x.clone()));
    SearchResult { fully_active, indices }
}

/// Every tuple that picks, in each column, any row tied with the given one.
pub fn expand_ties(pom: &PrincipalOrderMatrix, t: &IndexTuple) -> Vec<IndexTuple> {
    t.0.iter()
        .enumerate()
        .map(|(k, &i)| pom.group_of(i, k).to_vec())
        .multi_cartesian_product()
        .map(IndexTuple)
        .collect()
}

/// Possible sizes of the solution set implied by the shape of the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SizeClass {
    /// No solutions.
    #[serde(rename = "{0}")]
    Empty,
    /// Finitely many solutions, possibly none.
    #[serde(rename = "[0,finite)")]
    Finite,
    /// Either none or infinitely many.
    #[serde(rename = "{0,inf}")]
    EmptyOrInfinite,
    /// No restriction.
    #[serde(rename = "[0,inf]")]
    Any,
}

/// Observed size of a solution set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(usize),
    Infinite,
}

impl SizeClass {
    pub fn admits(self, c: Cardinality) -> bool {
        match (self, c) {
            (SizeClass::Any, _) => true,
            (SizeClass::Empty, Cardinality::Finite(k)) => k == 0,
            (SizeClass::Finite, Cardinality::Finite(_)) => true,
            (SizeClass::EmptyOrInfinite, Cardinality::Finite(k)) => k == 0,
            (SizeClass::EmptyOrInfinite, Cardinality::Infinite) => true,
            _ => false,
        }
    }
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeClass::Empty => "{0}",
            SizeClass::Finite => "[0,finite)",
            SizeClass::EmptyOrInfinite => "{0,inf}",
            SizeClass::Any => "[0,inf]",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SizeReport {
    pub m: usize,
    pub n: usize,
    /// Sum of the column frequencies.
    pub f: usize,
    pub column_distinct: bool,
    pub class: SizeClass,
}

/// Size class from `(m, n, f)` alone; holds for every omega.
pub fn size_classification(a: &Matrix) -> SizeReport {
    let pom = principal_order(a);
    let (m, n, f) = (a.rows(), a.cols(), pom.total_freq());
    let class = if m > f {
        SizeClass::Empty
    } else if m == f {
        SizeClass::Finite
    } else if m < n {
        SizeClass::EmptyOrInfinite
    } else {
        // covers m = n < f and n < m < f
        SizeClass::Any
    };
    SizeReport { m, n, f, column_distinct: f == n, class }
}
