//! Structure of finite-dimensional Q-subalgebras of derivations: closure,
//! derived and lower central series, center, the rank-adapted ideal chain of
//! a nilpotent algebra, and derived-length bound verdicts.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::derivation::{combine, Derivation};
use crate::error::{Error, Result};
use crate::linalg::{rspan_intersect_qspan, QSpan, RelationSystem};

/// A pair of basis elements whose bracket leaves the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub left: usize,
    pub right: usize,
    pub bracket: Derivation,
}

/// A Q-span of derivations verified to be closed under the bracket.
///
/// Structure results (rank, series, center) are computed on first use and
/// memoized. Concurrent first uses may both compute; the results are
/// identical and only one is kept.
pub struct LieAlgebra {
    basis: QSpan,
    rank: OnceBox<usize>,
    derived: OnceBox<Vec<QSpan>>,
    lower_central: OnceBox<Vec<QSpan>>,
    center: OnceBox<QSpan>,
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        LieAlgebra::closed_unchecked(self.basis.clone())
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra").field("basis", &self.basis).finish()
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

/// Verifies that `basis` spans a subalgebra.
pub fn check_closure(basis: QSpan) -> core::result::Result<LieAlgebra, ClosureFailure> {
    let b = basis.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let br = b[i].bracket(&b[j]);
            if !basis.contains(&br) {
                return Err(ClosureFailure {
                    left: i,
                    right: j,
                    bracket: br,
                });
            }
        }
    }
    Ok(LieAlgebra::closed_unchecked(basis))
}

impl LieAlgebra {
    fn closed_unchecked(basis: QSpan) -> Self {
        LieAlgebra {
            basis,
            rank: OnceBox::new(),
            derived: OnceBox::new(),
            lower_central: OnceBox::new(),
            center: OnceBox::new(),
        }
    }

    /// Span of `gens`, which must already be closed.
    pub fn from_generators(
        nvars: usize,
        gens: impl IntoIterator<Item = Derivation>,
    ) -> core::result::Result<Self, ClosureFailure> {
        check_closure(QSpan::spanned_by(nvars, gens))
    }

    /// Smallest subalgebra containing `gens`, or `None` once its dimension
    /// would exceed `max_dim`.
    pub fn generated_by(
        nvars: usize,
        gens: impl IntoIterator<Item = Derivation>,
        max_dim: usize,
    ) -> Option<Self> {
        let mut span = QSpan::spanned_by(nvars, gens);
        if span.dim() > max_dim {
            return None;
        }
        let mut checked = 0;
        loop {
            let dim = span.dim();
            if checked == dim {
                return Some(LieAlgebra::closed_unchecked(span));
            }
            let b = span.basis().to_vec();
            let mut fresh = Vec::new();
            for i in 0..dim {
                for j in (i + 1).max(checked)..dim {
                    let br = b[i].bracket(&b[j]);
                    if !br.is_zero() {
                        fresh.push(br);
                    }
                }
            }
            checked = dim;
            span = span.extended(fresh);
            if span.dim() > max_dim {
                return None;
            }
        }
    }

    pub fn basis(&self) -> &QSpan {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Dimension of the R-span.
    pub fn rank(&self) -> usize {
        *self.rank.get_or_init(|| Box::new(self.basis.rank_over_r()))
    }

    pub fn derived_series(&self) -> &[QSpan] {
        self.derived
            .get_or_init(|| Box::new(series(&self.basis, |last| product(last, last))))
    }

    pub fn lower_central_series(&self) -> &[QSpan] {
        self.lower_central
            .get_or_init(|| Box::new(series(&self.basis, |last| product(&self.basis, last))))
    }

    pub fn center(&self) -> &QSpan {
        self.center
            .get_or_init(|| Box::new(quotient_center_preimage(&self.basis, &QSpan::zero(self.nvars()))))
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(QSpan::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(QSpan::is_zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.derived_series().get(1).is_none_or(QSpan::is_zero)
    }

    /// Index of the first zero term of the derived series.
    pub fn derived_length(&self) -> Option<usize> {
        self.is_solvable().then(|| self.derived_series().len() - 1)
    }

    /// Smallest `c` with `L^{c+1} = 0`, where `L^1 = L`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        self.is_nilpotent()
            .then(|| self.lower_central_series().len() - 1)
    }
}

/// Span of all brackets `[u, v]`, without containment checks.
fn product(u: &QSpan, v: &QSpan) -> QSpan {
    let mut gens = Vec::new();
    for a in u.basis() {
        for b in v.basis() {
            let br = a.bracket(b);
            if !br.is_zero() {
                gens.push(br);
            }
        }
    }
    QSpan::spanned_by(u.nvars(), gens)
}

/// Span of all brackets `[u, v]` for `u` in `U`, `v` in `V`, both inside
/// the algebra.
pub fn product_space(u: &QSpan, v: &QSpan, ambient: &LieAlgebra) -> Result<QSpan> {
    if !ambient.basis.contains_span(u) || !ambient.basis.contains_span(v) {
        return Err(Error::NotSubspace);
    }
    Ok(product(u, v))
}

fn series(start: &QSpan, step: impl Fn(&QSpan) -> QSpan) -> Vec<QSpan> {
    let mut out = vec![start.clone()];
    loop {
        let last = out.last().expect("nonempty");
        if last.is_zero() {
            return out;
        }
        let next = step(last);
        debug_assert!(last.contains_span(&next), "series must descend");
        let stable = next.dim() == last.dim() && next.same_span(last);
        out.push(next);
        if stable {
            return out;
        }
    }
}

pub fn derived_series(l: &LieAlgebra) -> &[QSpan] {
    l.derived_series()
}

pub fn lower_central_series(l: &LieAlgebra) -> &[QSpan] {
    l.lower_central_series()
}

pub fn center(l: &LieAlgebra) -> &QSpan {
    l.center()
}

/// `{ v in L : [v, L] is contained in I }`, the preimage of the center of
/// `L / I`. Solved as one Q-linear system in the coordinates of `v` and of
/// the `I`-components of each bracket.
pub(crate) fn quotient_center_preimage(l: &QSpan, i: &QSpan) -> QSpan {
    let n = l.nvars();
    let m = l.dim();
    let di = i.dim();
    let b = l.basis();
    let mut system = RelationSystem::new(m + m * di);
    for (col, bi) in b.iter().enumerate() {
        let mut block: Vec<(usize, Derivation)> =
            b.iter().enumerate().map(|(j, bj)| (j, bj.bracket(bi))).collect();
        for (t, it) in i.basis().iter().enumerate() {
            block.push((m + col * di + t, -it));
        }
        system.add_block(block);
    }
    let gens = system
        .solve()
        .into_iter()
        .map(|c| combine(n, &c[..m], b));
    QSpan::spanned_by(n, gens)
}

/// One verified condition of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Offending element when the check fails on a specific bracket.
    pub witness: Option<Derivation>,
}

impl Check {
    fn new(name: String, pass: bool) -> Self {
        Check {
            name,
            pass,
            witness: None,
        }
    }
}

/// Adapted R-basis `D_1..D_k` of a nilpotent algebra with the ideal chain
/// `0 = I_0 < I_1 < ... < I_k = L`, `I_s = L ∩ (R D_1 + ... + R D_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    pub adapted_basis: Vec<Derivation>,
    pub ideals: Vec<QSpan>,
    pub checks: Vec<Check>,
}

impl ChainCertificate {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// First element of `[L, D]` (over the basis of `L`) escaping `target`.
fn bracket_escape(l: &[Derivation], d: &Derivation, target: &QSpan) -> Option<Derivation> {
    l.iter()
        .map(|b| b.bracket(d))
        .find(|br| !target.contains(br))
}

/// Builds the ideal chain of a nilpotent algebra of rank at least one.
///
/// At step `s` the next element `D_s` is the first basis vector of the
/// preimage of `Z(L / I_{s-1})` that is not already in `I_{s-1}`; it is
/// automatically R-independent of `D_1..D_{s-1}`.
pub fn nilbasis_chain(l: &LieAlgebra) -> Result<ChainCertificate> {
    if !l.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let k = l.rank();
    if k == 0 {
        return Err(Error::Rank { expected: 1, found: 0 });
    }
    let n = l.nvars();
    let basis = l.basis().basis();
    let mut ideals = vec![QSpan::zero(n)];
    let mut adapted: Vec<Derivation> = Vec::new();
    for s in 1..=k {
        let prev = &ideals[s - 1];
        let centre = quotient_center_preimage(l.basis(), prev);
        let next_d = centre
            .basis()
            .iter()
            .find(|v| !prev.contains(v))
            .cloned()
            .ok_or_else(|| {
                Error::Invariant(format!("quotient by I_{} has no central element", s - 1))
            })?;
        adapted.push(next_d);
        let span_d = QSpan::spanned_by(n, adapted.iter().cloned());
        ideals.push(rspan_intersect_qspan(l.basis(), &span_d)?);
    }

    let mut checks = Vec::new();
    checks.push(Check::new("I_0 = 0".into(), ideals[0].is_zero()));
    checks.push(Check::new(format!("I_{k} = L"), ideals[k].same_span(l.basis())));
    for (s, ideal) in ideals.iter().enumerate() {
        let r = ideal.rank_over_r();
        checks.push(Check::new(format!("rk_R I_{s} = {s} (found {r})"), r == s));
    }
    for s in 1..=k {
        let nested = ideals[s].contains_span(&ideals[s - 1]) && ideals[s].dim() > ideals[s - 1].dim();
        checks.push(Check::new(format!("I_{} < I_{s}", s - 1), nested));
    }
    for (s, ideal) in ideals.iter().enumerate().skip(1) {
        let ideal_escape = ideal
            .basis()
            .iter()
            .find_map(|d| bracket_escape(basis, d, ideal));
        checks.push(Check {
            name: format!("[L, I_{s}] in I_{s}"),
            pass: ideal_escape.is_none(),
            witness: ideal_escape,
        });
    }
    for s in 1..=k {
        let escape = bracket_escape(basis, &adapted[s - 1], &ideals[s - 1]);
        checks.push(Check {
            name: format!("[L, D_{s}] in I_{}", s - 1),
            pass: escape.is_none(),
            witness: escape,
        });
    }
    for j in 1..=k {
        let ij = ideals[j].basis();
        let escape = ij
            .iter()
            .find_map(|d| bracket_escape(ij, d, &ideals[j - 1]));
        checks.push(Check {
            name: format!("[I_{j}, I_{j}] in I_{}", j - 1),
            pass: escape.is_none(),
            witness: escape,
        });
    }
    Ok(ChainCertificate {
        adapted_basis: adapted,
        ideals,
        checks,
    })
}

/// Derived-length bounds checked by [`analyze`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundId {
    /// Nilpotent: `s(L) <= rk_R L`.
    NilpotentRank,
    /// Solvable: `s(L) <= 2 rk_R L`.
    SolvableTwiceRank,
    /// Solvable and finite-dimensional over its constants:
    /// `s(L) <= rk_R L + 1`.
    SolvableRankPlusOne,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::NilpotentRank => "s<=k",
            BoundId::SolvableTwiceRank => "s<=2k",
            BoundId::SolvableRankPlusOne => "s<=k+1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            BoundId::NilpotentRank,
            BoundId::SolvableTwiceRank,
            BoundId::SolvableRankPlusOne,
        ]
        .into_iter()
        .find(|b| b.as_str() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub id: BoundId,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

impl BoundCheck {
    fn new(id: BoundId, lhs: usize, rhs: usize) -> Self {
        BoundCheck {
            id,
            lhs,
            rhs,
            pass: lhs <= rhs,
        }
    }
}

/// Structure summary of a closed algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub dim_q: usize,
    pub rank_r: usize,
    pub closed: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub derived_length: Option<usize>,
    pub nilpotency_class: Option<usize>,
    pub center_dim: usize,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub bound_checks: Vec<BoundCheck>,
}

impl Report {
    pub fn all_bounds_pass(&self) -> bool {
        self.bound_checks.iter().all(|b| b.pass)
    }
}

pub fn analyze(l: &LieAlgebra) -> Report {
    let k = l.rank();
    let s = l.derived_length();
    let mut bound_checks = Vec::new();
    if let Some(s) = s {
        if l.is_nilpotent() {
            bound_checks.push(BoundCheck::new(BoundId::NilpotentRank, s, k));
        }
        bound_checks.push(BoundCheck::new(BoundId::SolvableTwiceRank, s, 2 * k));
        // dim over Q is finite, hence so is the dimension over the constants.
        bound_checks.push(BoundCheck::new(BoundId::SolvableRankPlusOne, s, k + 1));
    }
    Report {
        dim_q: l.dim(),
        rank_r: k,
        closed: true,
        solvable: l.is_solvable(),
        nilpotent: l.is_nilpotent(),
        derived_length: s,
        nilpotency_class: l.nilpotency_class(),
        center_dim: l.center().dim(),
        derived_dims: l.derived_series().iter().map(QSpan::dim).collect(),
        lower_central_dims: l.lower_central_series().iter().map(QSpan::dim).collect(),
        bound_checks,
    }
}
