//! Exact linear algebra over Q and over the fraction field `R = Q(x)`.

mod embed;
pub mod qdense;
mod rmatrix;
mod span;

pub use embed::{embed, RelationSystem};
pub use rmatrix::{rank_over_r, Echelon, RMatrix};
pub use span::{q_membership, rspan_intersect_qspan, QSpan};
