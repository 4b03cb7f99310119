//! Exact arithmetic substrate: rationals, sparse rational matrices with
//! fraction-free elimination, Laurent polynomials and rational functions in
//! the torus variable `u`, and truncated `(q, t)` series over those.

mod laurent;
mod rational;
mod series;
mod sparse;

pub use laurent::{UFrac, ULaurent};
pub use rational::{rat, ratio, Rational};
pub use series::QTSeries;
pub use sparse::{rank, rank_kernel, solve_membership, sparse_dot, Membership, RankKernel, SparseMatQ, SparseVec};
