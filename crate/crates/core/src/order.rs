//! Principal order matrix: within-column ranks where equal entries share a
//! rank, plus per-column multiplicities.

use std::collections::BTreeMap;

use crate::algebra::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalOrderMatrix {
    rows: usize,
    cols: usize,
    /// Row-major ranks, each in `1..=rows`.
    ranks: Vec<usize>,
    freqs: Vec<usize>,
    /// Per column: rank -> rows (0-based, ascending) holding it.
    groups: Vec<BTreeMap<usize, Vec<usize>>>,
}

impl PrincipalOrderMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.ranks[i * self.cols + j]
    }

    pub fn ranks(&self) -> Vec<Vec<usize>> {
        self.ranks.chunks(self.cols).map(<[usize]>::to_vec).collect()
    }

    pub fn freqs(&self) -> &[usize] {
        &self.freqs
    }

    /// Sum of the column frequencies.
    pub fn total_freq(&self) -> usize {
        self.freqs.iter().sum()
    }

    /// Distinct ranks of column `j` with the rows holding them.
    pub fn groups(&self, j: usize) -> &BTreeMap<usize, Vec<usize>> {
        &self.groups[j]
    }

    /// Rows of column `j` that hold the same rank as row `i`.
    pub fn group_of(&self, i: usize, j: usize) -> &[usize] {
        &self.groups[j][&self.rank(i, j)]
    }

    /// The ranks reinterpreted as a scalar matrix.
    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_rows(
            self.ranks
                .chunks(self.cols)
                .map(|r| r.iter().map(|&v| Scalar::from(v as i64)).collect())
                .collect(),
        )
        .expect("rank matrix has the shape of its source")
    }
}

/// `rank(i, j) = 1 + #{entries of column j strictly below A(i, j)}`.
pub fn principal_order(a: &Matrix) -> PrincipalOrderMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut ranks = vec![0; m * n];
    let mut groups = Vec::with_capacity(n);
    for j in 0..n {
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&u, &v| a.get(u, j).cmp(a.get(v, j)).then(u.cmp(&v)));
        let mut col_groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut rank = 1;
        for (pos, &i) in order.iter().enumerate() {
            if pos > 0 && a.get(order[pos - 1], j) != a.get(i, j) {
                rank = pos + 1;
            }
            ranks[i * n + j] = rank;
            col_groups.entry(rank).or_default().push(i);
        }
        for rows in col_groups.values_mut() {
            rows.sort_unstable();
        }
        groups.push(col_groups);
    }
    let freqs = groups.iter().map(|g| g.values().map(Vec::len).max().unwrap_or(0)).collect();
    PrincipalOrderMatrix { rows: m, cols: n, ranks, freqs, groups }
}

pub fn column_frequencies(pom: &PrincipalOrderMatrix) -> Vec<usize> {
    pom.freqs.clone()
}

/// Rows (0-based) of column `j` holding rank `r`; empty when unused.
pub fn idx(pom: &PrincipalOrderMatrix, j: usize, r: usize) -> Vec<usize> {
    pom.groups.get(j).and_then(|g| g.get(&r)).cloned().unwrap_or_default()
}
