use alloc::vec::Vec;

use num_traits::Zero;

use super::embed::{embed, RelationSystem};
use super::qdense;
use super::rmatrix::RMatrix;
use crate::derivation::{combine, Derivation};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite-dimensional Q-subspace of derivations, held as a Q-linearly
/// independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSpan {
    nvars: usize,
    basis: Vec<Derivation>,
}

impl QSpan {
    pub fn zero(nvars: usize) -> Self {
        QSpan {
            nvars,
            basis: Vec::new(),
        }
    }

    /// Span of `gens`; the basis is the greedy independent subsequence, so
    /// earlier generators are preferred.
    pub fn spanned_by(nvars: usize, gens: impl IntoIterator<Item = Derivation>) -> Self {
        let gens: Vec<Derivation> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let picked = independent_subsequence(&gens);
        QSpan {
            nvars,
            basis: picked.into_iter().map(|i| gens[i].clone()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Q-coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &Derivation) -> Option<Vec<Rational>> {
        if v.is_zero() {
            return Some(alloc::vec![Rational::zero(); self.dim()]);
        }
        if self.is_zero() {
            return None;
        }
        let mut family: Vec<&Derivation> = self.basis.iter().collect();
        family.push(v);
        let mut vecs = embed(&family);
        let target = vecs.pop().expect("target embedded");
        qdense::solve(&vecs, &target)
    }

    pub fn contains(&self, v: &Derivation) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_span(&self, other: &QSpan) -> bool {
        if other.is_zero() {
            return true;
        }
        let family: Vec<&Derivation> = self.basis.iter().chain(&other.basis).collect();
        let vecs = embed(&family);
        let ncols = vecs[0].len();
        qdense::rank(vecs, ncols) == self.dim()
    }

    pub fn same_span(&self, other: &QSpan) -> bool {
        self.dim() == other.dim() && self.contains_span(other)
    }

    /// This span enlarged by `gens`, keeping the current basis as a prefix.
    pub fn extended(&self, gens: impl IntoIterator<Item = Derivation>) -> QSpan {
        QSpan::spanned_by(self.nvars, self.basis.iter().cloned().chain(gens))
    }

    pub fn rank_over_r(&self) -> usize {
        super::rmatrix::rank_over_r(&self.basis)
    }
}

/// Indices of the greedy Q-independent subsequence of `gens`.
pub(crate) fn independent_subsequence(gens: &[Derivation]) -> Vec<usize> {
    if gens.is_empty() {
        return Vec::new();
    }
    let family: Vec<&Derivation> = gens.iter().collect();
    let vecs = embed(&family);
    let width = vecs[0].len();
    // Columns are the generators; pivot columns of the echelon form are
    // exactly the greedy independent choices.
    let rows: Vec<Vec<Rational>> = (0..width)
        .map(|i| vecs.iter().map(|v| v[i].clone()).collect())
        .collect();
    let mut rows = rows;
    qdense::rref(&mut rows, gens.len())
}

/// Q-coordinates of `v` in `span`, if any.
pub fn q_membership(v: &Derivation, span: &QSpan) -> Option<Vec<Rational>> {
    span.coordinates(v)
}

/// `{ v in L : v in R * I }` for a subspace `I` of `L`.
///
/// With `I` in reduced echelon form over R (pivot rows `P_k` at pivot
/// columns `p_k`), `v` lies in the R-span of `I` exactly when the residual
/// `v - sum_k v[p_k] P_k` vanishes. The residual is R-linear in `v`, so on
/// `v = sum_j c_j l_j` the condition is the Q-linear system
/// `sum_j c_j residual(l_j) = 0`, solved by monomial coefficient extraction.
pub fn rspan_intersect_qspan(l: &QSpan, i: &QSpan) -> Result<QSpan> {
    if !l.contains_span(i) {
        return Err(Error::NotSubspace);
    }
    let n = l.nvars();
    if i.is_zero() {
        return Ok(QSpan::zero(n));
    }
    let ech = RMatrix::from_derivations(n, i.basis()).echelon();
    let pivot_rows: Vec<Derivation> = ech
        .pivot_rows()
        .iter()
        .map(|r| Derivation::new(r.clone()).expect("rows have ambient width"))
        .collect();
    let mut system = RelationSystem::new(l.dim());
    let residuals: Vec<(usize, Derivation)> = l
        .basis()
        .iter()
        .enumerate()
        .map(|(j, lj)| {
            let res = ech
                .pivots
                .iter()
                .zip(&pivot_rows)
                .fold(lj.clone(), |acc, (&p, row)| &acc - &row.scale(lj.coeff(p)));
            (j, res)
        })
        .collect();
    system.add_block(residuals);
    let gens = system
        .solve()
        .into_iter()
        .map(|c| combine(n, &c, l.basis()));
    Ok(QSpan::spanned_by(n, gens))
}
