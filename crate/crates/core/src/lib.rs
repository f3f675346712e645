//! Exact solver for maxmin-omega linear systems `A (x)_omega x = b`, where each
//! row takes the `ceil(omega n)`-th smallest of `A(i, j) + x_j`.
//!
//! The pipeline normalizes to `b = 0`, ranks each column into the principal
//! order matrix, enumerates solution-index candidates from rank-sum and
//! coverage conditions, verifies them into fully active solutions, and relaxes
//! those into boxes. An independent cell enumeration of the breakpoint
//! arrangement computes the complete solution set for cross-checking.
//!
//! All arithmetic is exact over the rationals.

pub mod algebra;
pub mod boxes;
pub mod error;
pub mod exact;
pub mod io;
pub mod normalize;
pub mod order;
pub mod relax;
pub mod report;
pub mod scalar;
pub mod search;

pub use algebra::{apply, is_solution, maxmin_omega, maxmin_omega_by_subsets, omega_level, Matrix, Omega, OmegaSpec, SubsetForm};
pub use boxes::{box_union_equal, member, BoxUnion, Interval, IntervalBox};
pub use error::{Error, Result};
pub use exact::{exact_solution_set, DEFAULT_CELL_BUDGET};
pub use normalize::{classical_principal, classical_solvable, dominance_unsolvable, normalize};
pub use order::{principal_order, PrincipalOrderMatrix};
pub use relax::{rel_set, tableau, ActivationTableau, Direction};
pub use scalar::{Extended, Scalar};
pub use search::{candidate_tuples, fully_active_solutions, size_classification, verify_candidate, IndexTuple, SearchResult};
