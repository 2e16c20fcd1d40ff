//! Exact structure theory for finite-dimensional Lie algebras of derivations
//! of `Q[x1, ..., xn]` with rational-function coefficients.
//!
//! The crate is `no_std` (it needs `alloc`). Arithmetic is exact throughout:
//! rationals are arbitrary precision, rational functions are kept reduced
//! with a normalized denominator, and every linear-algebra question is
//! answered by exact elimination over Q or over `Q(x1, ..., xn)`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod corpus;
pub mod derivation;
pub mod error;
pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod structure;

pub use classify::{
    build_solv2_instance, canonical_nilpotent, canonical_rank2_nilpotent, classify_rank1, constants_membership, f_ratio,
    CanonicalForm, CanonicalKind, Solv2Data, Solv2Instance,
};
pub use derivation::Derivation;
pub use error::{Error, Result};
pub use linalg::{q_membership, rank_over_r, rspan_intersect_qspan, QSpan};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use structure::{analyze, check_closure, nilbasis_chain, ChainCertificate, LieAlgebra, Report};
