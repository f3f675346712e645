//! Complete solution sets by enumerating the cells of the breakpoint
//! arrangement `x_j = -A(i, j)`.
//!
//! On each coordinate the breakpoints split the line into positions: the
//! breakpoints themselves (odd positions) and the open gaps around them (even
//! positions). Inside a cell every `C(i, j) = A(i, j) + x_j` has a fixed sign,
//! so feasibility is a per-row sign count and never touches a sample point.

use itertools::Itertools;
use rayon::prelude::*;

use crate::algebra::{Matrix, Omega};
use crate::boxes::{BoxUnion, Interval, IntervalBox};
use crate::error::{Error, Result};
use crate::scalar::{Extended, Scalar};

pub const DEFAULT_CELL_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointGrid {
    /// Sorted distinct `-A(i, j)` per coordinate.
    pub breakpoints: Vec<Vec<Scalar>>,
    /// Position (odd) of the breakpoint of entry `(i, j)`, row-major.
    entry_position: Vec<usize>,
    cols: usize,
}

impl BreakpointGrid {
    pub fn new(a: &Matrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let breakpoints: Vec<Vec<Scalar>> = (0..n)
            .map(|j| a.column(j).map(|v| -v).sorted().dedup().collect())
            .collect();
        let mut entry_position = vec![0; m * n];
        for i in 0..m {
            for j in 0..n {
                let b = -a.get(i, j);
                let k = breakpoints[j].binary_search(&b).expect("breakpoint present");
                entry_position[i * n + j] = 2 * k + 1;
            }
        }
        BreakpointGrid { breakpoints, entry_position, cols: n }
    }

    /// Number of positions on coordinate `j`.
    pub fn positions(&self, j: usize) -> usize {
        2 * self.breakpoints[j].len() + 1
    }

    pub fn cell_count(&self) -> u128 {
        (0..self.cols).map(|j| self.positions(j) as u128).product()
    }

    /// Sign of `C(i, j)` on position `pos` of coordinate `j`.
    fn sign(&self, i: usize, j: usize, pos: usize) -> std::cmp::Ordering {
        pos.cmp(&self.entry_position[i * self.cols + j])
    }

    /// Closed hull of positions `lo..=hi` on coordinate `j`.
    fn hull(&self, j: usize, lo: usize, hi: usize) -> Interval {
        let b = &self.breakpoints[j];
        let lower = if lo % 2 == 1 {
            Extended::Finite(b[lo / 2].clone())
        } else if lo == 0 {
            Extended::NegInf
        } else {
            Extended::Finite(b[lo / 2 - 1].clone())
        };
        let upper = if hi % 2 == 1 {
            Extended::Finite(b[hi / 2].clone())
        } else if hi / 2 == b.len() {
            Extended::PosInf
        } else {
            Extended::Finite(b[hi / 2].clone())
        };
        Interval::new(lower, upper).expect("positions are ordered")
    }
}

/// A cell given by one position per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(pub Vec<usize>);

impl Cell {
    /// True when every coordinate sits on a breakpoint.
    pub fn is_vertex(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }
}

fn cell_feasible(a: &Matrix, grid: &BreakpointGrid, p: usize, cell: &[usize]) -> bool {
    let n = a.cols();
    (0..a.rows()).all(|i| {
        let (mut neg, mut pos) = (0, 0);
        for (j, &position) in cell.iter().enumerate() {
            match grid.sign(i, j, position) {
                std::cmp::Ordering::Less => neg += 1,
                std::cmp::Ordering::Greater => pos += 1,
                std::cmp::Ordering::Equal => {}
            }
        }
        neg < p && pos <= n - p
    })
}

fn decode(grid: &BreakpointGrid, mut code: u128) -> Vec<usize> {
    (0..grid.cols)
        .map(|j| {
            let k = grid.positions(j) as u128;
            let pos = (code % k) as usize;
            code /= k;
            pos
        })
        .collect()
}

/// All feasible cells, sorted.
pub fn feasible_cells(a: &Matrix, omega: &Omega, budget: u128) -> Result<(BreakpointGrid, Vec<Cell>)> {
    let grid = BreakpointGrid::new(a);
    let total = grid.cell_count();
    if total > budget {
        return Err(Error::CellBudgetExceeded { cells: total, budget });
    }
    let p = omega.level(a.cols());
    let total = u64::try_from(total).map_err(|_| Error::CellBudgetExceeded { cells: total, budget })?;
    let mut cells: Vec<Cell> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let cell = decode(&grid, code as u128);
            cell_feasible(a, &grid, p, &cell).then_some(Cell(cell))
        })
        .collect();
    cells.sort();
    Ok((grid, cells))
}

/// Position ranges `(lo, hi)` per coordinate.
type RangeBox = Vec<(usize, usize)>;

/// Merges runs of adjacent boxes along each coordinate in ascending order.
fn merge_ranges(mut boxes: Vec<RangeBox>, dims: usize) -> Vec<RangeBox> {
    for c in 0..dims {
        boxes.sort_by(|u, v| {
            let key = |b: &RangeBox| {
                let mut k: Vec<(usize, usize)> = b.iter().enumerate().filter(|&(d, _)| d != c).map(|(_, r)| *r).collect();
                k.push(b[c]);
                k
            };
            key(u).cmp(&key(v))
        });
        let mut merged: Vec<RangeBox> = Vec::with_capacity(boxes.len());
        for b in boxes {
            if let Some(last) = merged.last_mut() {
                let same_rest = (0..dims).all(|d| d == c || last[d] == b[d]);
                if same_rest && last[c].1 + 1 == b[c].0 {
                    last[c].1 = b[c].1;
                    continue;
                }
            }
            merged.push(b);
        }
        boxes = merged;
    }
    boxes
}

/// `S(A, omega)` as a union of closed boxes: feasible cells merged greedily
/// coordinate by coordinate, closed, then coalesced and sorted.
pub fn exact_solution_set(a: &Matrix, omega: &Omega, budget: u128) -> Result<BoxUnion> {
    let (grid, cells) = feasible_cells(a, omega, budget)?;
    let n = a.cols();
    let ranges: Vec<RangeBox> = cells.into_iter().map(|c| c.0.into_iter().map(|p| (p, p)).collect()).collect();
    let boxes = merge_ranges(ranges, n)
        .into_iter()
        .map(|rb| IntervalBox(rb.iter().enumerate().map(|(j, &(lo, hi))| grid.hull(j, lo, hi)).collect()))
        .collect();
    let mut union = BoxUnion::new(n, boxes)?;
    union.coalesce();
    Ok(union)
}

/// Vertices of the arrangement that solve the system; exactly the fully
/// active solutions.
pub fn fully_active_vertices(a: &Matrix, omega: &Omega, budget: u128) -> Result<Vec<Vec<Scalar>>> {
    let (grid, cells) = feasible_cells(a, omega, budget)?;
    Ok(cells
        .into_iter()
        .filter(Cell::is_vertex)
        .map(|c| c.0.iter().enumerate().map(|(j, &p)| grid.breakpoints[j][p / 2].clone()).collect())
        .collect())
}
