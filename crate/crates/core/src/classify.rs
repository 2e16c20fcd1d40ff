//! Low-rank canonical forms.
//!
//! The field of constants `F(L) = { r : D(r) = 0 for all D in L }` is never
//! built as an object; every statement about it is checked through
//! [`constants_membership`]. Canonical forms carry the list of identities
//! that were verified exactly while constructing them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{rank_over_r, rspan_intersect_qspan, QSpan};
use crate::ratfunc::RatFunc;
use crate::rational::{factorial, Rational};
use crate::structure::{analyze, check_closure, LieAlgebra, Report};

/// `r` is annihilated by every element of `L`.
pub fn constants_membership(r: &RatFunc, l: &LieAlgebra) -> bool {
    l.basis().basis().iter().all(|b| b.apply(r).is_zero())
}

/// `r1 / r2` when it is a constant of `L` (so `r1`, `r2` are dependent over
/// `F(L)`); zero when both vanish.
pub fn f_ratio(r1: &RatFunc, r2: &RatFunc, l: &LieAlgebra) -> Option<RatFunc> {
    if r2.is_zero() {
        return r1.is_zero().then(|| RatFunc::zero(r1.nvars()));
    }
    let q = r1.checked_div(r2).ok()?;
    constants_membership(&q, l).then_some(q)
}

/// `r` with `m = r * d`, when `m` lies on the R-line of `d`.
pub fn ratio(m: &Derivation, d: &Derivation) -> Option<RatFunc> {
    let p = d.leading_index()?;
    let r = m.coeff(p).checked_div(d.coeff(p)).ok()?;
    (d.scale(&r) == *m).then_some(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    NilpotentRank1,
    NilpotentRank2Split,
    NilpotentRank2Chain,
    SolvableRank1Abelian,
    SolvableRank1Affine,
}

impl CanonicalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalKind::NilpotentRank1 => "nilpotent-rank1",
            CanonicalKind::NilpotentRank2Split => "nilpotent-rank2-split",
            CanonicalKind::NilpotentRank2Chain => "nilpotent-rank2-chain",
            CanonicalKind::SolvableRank1Abelian => "solvable-rank1-abelian",
            CanonicalKind::SolvableRank1Affine => "solvable-rank1-affine",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub kind: CanonicalKind,
    pub derivations: Vec<(String, Derivation)>,
    pub functions: Vec<(String, RatFunc)>,
    /// Dimension of `F(L) L` over `F(L)` certified by the witnesses.
    pub dim_f: usize,
    /// `k` in `F<D1, a D1, ..., a^k/k! D1, D2>`.
    pub chain_length: Option<usize>,
    pub relations: Vec<String>,
}

impl CanonicalForm {
    pub fn derivation(&self, name: &str) -> Option<&Derivation> {
        self.derivations.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn function(&self, name: &str) -> Option<&RatFunc> {
        self.functions.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

/// Records `name` if `holds`, otherwise fails with the error built by `err`.
struct Verifier {
    relations: Vec<String>,
    err: fn(String) -> Error,
}

impl Verifier {
    fn invariant() -> Self {
        Verifier {
            relations: Vec::new(),
            err: Error::Invariant,
        }
    }

    fn data() -> Self {
        Verifier {
            relations: Vec::new(),
            err: Error::RelationViolation,
        }
    }

    fn check(&mut self, holds: bool, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        if holds {
            self.relations.push(name);
            Ok(())
        } else {
            Err((self.err)(name))
        }
    }
}

fn require_rank(l: &LieAlgebra, k: usize) -> Result<()> {
    let found = l.rank();
    if found == k {
        Ok(())
    } else {
        Err(Error::Rank { expected: k, found })
    }
}

/// Rank-one solvable algebras: abelian ones are one-dimensional over their
/// constants, nonabelian ones are `F<D1, b D1>` with `D1(b) = 1`.
pub fn classify_rank1(l: &LieAlgebra) -> Result<CanonicalForm> {
    require_rank(l, 1)?;
    if !l.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let basis = l.basis().basis();
    let mut v = Verifier::invariant();
    if l.is_abelian() {
        let d1 = basis[0].clone();
        v.check(true, "[L, L] = 0")?;
        for (i, m) in basis.iter().enumerate() {
            let r = ratio(m, &d1)
                .ok_or_else(|| Error::Invariant(format!("basis element {i} off the line of D1")))?;
            v.check(
                f_ratio(&r, &RatFunc::one(l.nvars()), l).is_some(),
                format!("b{} = r D1 with r in F", i + 1),
            )?;
        }
        return Ok(CanonicalForm {
            kind: CanonicalKind::SolvableRank1Abelian,
            derivations: vec![("D1".into(), d1)],
            functions: Vec::new(),
            dim_f: 1,
            chain_length: None,
            relations: v.relations,
        });
    }

    let d1 = l.derived_series()[1].basis()[0].clone();
    let ratios: Vec<RatFunc> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| {
            ratio(m, &d1)
                .ok_or_else(|| Error::Invariant(format!("basis element {i} off the line of D1")))
        })
        .collect::<Result<_>>()?;
    let (r, beta) = ratios
        .iter()
        .map(|r| (r, d1.apply(r)))
        .find(|(_, beta)| !beta.is_zero())
        .ok_or_else(|| Error::Invariant("nonabelian algebra centralizes D1".into()))?;
    let b = r.checked_div(&beta)?;
    v.check(d1.apply(&b).is_one(), "D1(b) = 1")?;
    for (i, r) in ratios.iter().enumerate() {
        let beta = d1.apply(r);
        let alpha = r - &(&beta * &b);
        v.check(
            constants_membership(&alpha, l) && constants_membership(&beta, l),
            format!("b{} = (alpha + beta b) D1 with alpha, beta in F", i + 1),
        )?;
    }
    Ok(CanonicalForm {
        kind: CanonicalKind::SolvableRank1Affine,
        derivations: vec![("D1".into(), d1)],
        functions: vec![("b".into(), b)],
        dim_f: 2,
        chain_length: None,
        relations: v.relations,
    })
}

/// Canonical form of a nilpotent algebra of rank one or two.
pub fn canonical_nilpotent(l: &LieAlgebra) -> Result<CanonicalForm> {
    if !l.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    match l.rank() {
        1 => {
            let mut form = classify_rank1(l)?;
            form.kind = CanonicalKind::NilpotentRank1;
            Ok(form)
        }
        2 => canonical_rank2_nilpotent(l),
        found => Err(Error::Rank { expected: 2, found }),
    }
}

/// Coordinates `(alpha, beta)` of `m = alpha D1 + beta D2` over R.
fn plane_coordinates(m: &Derivation, d1: &Derivation, d2: &Derivation) -> Option<(RatFunc, RatFunc)> {
    let n = m.nvars();
    for p in 0..n {
        for q in p + 1..n {
            let det = &(d1.coeff(p) * d2.coeff(q)) - &(d1.coeff(q) * d2.coeff(p));
            if det.is_zero() {
                continue;
            }
            let alpha = (&(m.coeff(p) * d2.coeff(q)) - &(m.coeff(q) * d2.coeff(p)))
                .checked_div(&det)
                .ok()?;
            let beta = (&(d1.coeff(p) * m.coeff(q)) - &(d1.coeff(q) * m.coeff(p)))
                .checked_div(&det)
                .ok()?;
            let back = &d1.scale(&alpha) + &d2.scale(&beta);
            return (back == *m).then_some((alpha, beta));
        }
    }
    None
}

/// Writes `t = sum_{j <= top} gamma_j a^j / j!` with every `gamma_j` a
/// constant of `L`, peeling the top coefficient with `D2^j` each time.
fn in_divided_power_span(t: &RatFunc, a: &RatFunc, top: usize, d2: &Derivation, l: &LieAlgebra) -> bool {
    let mut rest = t.clone();
    for j in (0..=top).rev() {
        let mut gamma = rest.clone();
        for _ in 0..j {
            gamma = d2.apply(&gamma);
        }
        if !constants_membership(&gamma, l) {
            return false;
        }
        let power = a.pow(j as u32).scale(&factorial(j as u32).recip());
        rest = &rest - &(&gamma * &power);
    }
    rest.is_zero()
}

/// Number of applications of `d` needed to annihilate `r`.
fn nilpotency_depth(d: &Derivation, r: &RatFunc, cap: usize) -> Option<usize> {
    let mut cur = r.clone();
    for depth in 0..=cap {
        if cur.is_zero() {
            return Some(depth);
        }
        cur = d.apply(&cur);
    }
    None
}

/// Rank-two nilpotent algebras: either two commuting central directions, or
/// `F<D1, a D1, ..., a^k/k! D1, D2>` with `[D1, D2] = 0`, `D1(a) = 0`,
/// `D2(a) = 1`, found from the Jordan chain of `ad D2` on `L ∩ R D1`.
pub fn canonical_rank2_nilpotent(l: &LieAlgebra) -> Result<CanonicalForm> {
    if !l.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    require_rank(l, 2)?;
    let n = l.nvars();
    let basis = l.basis().basis();
    let centre = l.center();
    let mut v = Verifier::invariant();

    if centre.rank_over_r() == 2 {
        let d1 = centre.basis()[0].clone();
        let d2 = centre
            .basis()
            .iter()
            .find(|z| rank_over_r(&[d1.clone(), (*z).clone()]) == 2)
            .cloned()
            .ok_or_else(|| Error::Invariant("center of rank 2 without independent pair".into()))?;
        v.check(d1.bracket(&d2).is_zero(), "[D1, D2] = 0")?;
        for (i, m) in basis.iter().enumerate() {
            let ok = plane_coordinates(m, &d1, &d2).is_some_and(|(al, be)| {
                constants_membership(&al, l) && constants_membership(&be, l)
            });
            v.check(ok, format!("b{} in F D1 + F D2", i + 1))?;
        }
        return Ok(CanonicalForm {
            kind: CanonicalKind::NilpotentRank2Split,
            derivations: vec![("D1".into(), d1), ("D2".into(), d2)],
            functions: Vec::new(),
            dim_f: 2,
            chain_length: None,
            relations: v.relations,
        });
    }

    let z = centre
        .basis()
        .first()
        .cloned()
        .ok_or_else(|| Error::Invariant("nilpotent algebra with trivial center".into()))?;
    let i1 = rspan_intersect_qspan(l.basis(), &QSpan::spanned_by(n, [z.clone()]))?;
    let d2 = basis
        .iter()
        .find(|b| !i1.contains(b))
        .cloned()
        .ok_or_else(|| Error::Invariant("L ∩ R D1 exhausts a rank-2 algebra".into()))?;

    // ad D2 acts on r D1 in I1 as r -> D2(r); pick the deepest element.
    let ratios: Vec<RatFunc> = i1
        .basis()
        .iter()
        .map(|m| ratio(m, &z).ok_or_else(|| Error::Invariant("I1 leaves R D1".into())))
        .collect::<Result<_>>()?;
    let cap = i1.dim();
    let mut top: Option<(usize, &RatFunc)> = None;
    for r in &ratios {
        let depth = nilpotency_depth(&d2, r, cap)
            .ok_or_else(|| Error::Invariant("ad D2 is not nilpotent on I1".into()))?;
        if top.is_none_or(|(best, _)| depth > best) {
            top = Some((depth, r));
        }
    }
    let (depth, top_ratio) = top.ok_or_else(|| Error::Invariant("I1 is zero".into()))?;
    let mut chain = vec![top_ratio.clone()];
    for _ in 1..depth {
        let next = d2.apply(chain.last().expect("nonempty"));
        chain.push(next);
    }
    chain.reverse();
    let k = depth - 1;
    let bottom = chain[0].clone();
    let d1 = z.scale(&bottom);
    let normalized: Vec<RatFunc> = chain
        .iter()
        .map(|c| c.checked_div(&bottom))
        .collect::<Result<_>>()?;

    v.check(d1.bracket(&d2).is_zero(), "[D1, D2] = 0")?;
    let mut functions = Vec::new();
    if k >= 1 {
        let a = normalized[1].clone();
        v.check(d1.apply(&a).is_zero(), "D1(a) = 0")?;
        v.check(d2.apply(&a).is_one(), "D2(a) = 1")?;
        for i in 2..=k {
            let lhs = d2.apply(&a.pow(i as u32).scale(&factorial(i as u32).recip()));
            let rhs = a
                .pow(i as u32 - 1)
                .scale(&factorial(i as u32 - 1).recip());
            v.check(lhs == rhs, format!("D2(a^{i}/{i}!) = a^{}/{}!", i - 1, i - 1))?;
        }
        for (i, t) in normalized.iter().enumerate().skip(2) {
            v.check(
                in_divided_power_span(t, &a, i, &d2, l),
                format!("chain element {i} in F-span of a^j/j! D1, j <= {i}"),
            )?;
        }
        for (i, m) in basis.iter().enumerate() {
            let ok = plane_coordinates(m, &d1, &d2).is_some_and(|(al, be)| {
                constants_membership(&be, l) && in_divided_power_span(&al, &a, k, &d2, l)
            });
            v.check(ok, format!("b{} in F<a^j/j! D1 (j <= {k}), D2>", i + 1))?;
        }
        functions.push(("a".into(), a));
    } else {
        for (i, m) in basis.iter().enumerate() {
            let ok = plane_coordinates(m, &d1, &d2).is_some_and(|(al, be)| {
                constants_membership(&al, l) && constants_membership(&be, l)
            });
            v.check(ok, format!("b{} in F D1 + F D2", i + 1))?;
        }
    }
    Ok(CanonicalForm {
        kind: CanonicalKind::NilpotentRank2Chain,
        derivations: vec![("D1".into(), d1), ("D2".into(), d2)],
        functions,
        dim_f: k + 2,
        chain_length: Some(k),
        relations: v.relations,
    })
}

/// Instance data for the five rank-two solvable families. `f1` lists the
/// kernel elements of `D1` standing in for the coefficient field `ker D1`;
/// an empty list means `{1}`. `linear` holds 1-based pairs `(i, j)` selecting
/// `v_i D_j` for the affine family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solv2Data {
    pub d1: Option<Derivation>,
    pub d2: Option<Derivation>,
    pub a: Option<RatFunc>,
    pub a1: Option<RatFunc>,
    pub b: Option<RatFunc>,
    pub c: Option<RatFunc>,
    pub d: Option<RatFunc>,
    pub r: Option<RatFunc>,
    pub f1: Vec<RatFunc>,
    pub v1: Option<RatFunc>,
    pub v2: Option<RatFunc>,
    pub linear: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Solv2Instance {
    pub kind: u8,
    pub d1: Derivation,
    pub d2: Derivation,
    /// `a` with `[D2, D1] = a D1` (zero for the affine family).
    pub a: RatFunc,
    /// Factor `D2` was divided by to match the supplied `a`.
    pub d2_rescale: Option<Rational>,
    pub generators: Vec<Derivation>,
    pub algebra: LieAlgebra,
    pub relations: Vec<String>,
    pub report: Report,
}

fn need<T: Clone>(v: &Option<T>, name: &'static str) -> Result<T> {
    v.clone().ok_or(Error::MissingDatum(name))
}

/// Builds one of the five solvable rank-two families and verifies its
/// defining relations. All relations use the bracket convention
/// `[D2, D1] = a D1`; under it the shifts read `D2(b) = -a b + a1` and
/// `D2(c) = -a c + r`.
pub fn build_solv2_instance(kind: u8, data: &Solv2Data) -> Result<Solv2Instance> {
    if !(1..=5).contains(&kind) {
        return Err(Error::InvalidParameter(format!("solvable family {kind} (expected 1..5)")));
    }
    let d1 = need(&data.d1, "D1")?;
    let mut d2 = need(&data.d2, "D2")?;
    let n = d1.nvars();
    if d2.nvars() != n {
        return Err(Error::AmbientMismatch {
            expected: n,
            found: d2.nvars(),
        });
    }
    let mut v = Verifier::data();
    if kind == 5 {
        return build_affine(d1, d2, data, v);
    }

    let f1 = if data.f1.is_empty() {
        vec![RatFunc::one(n)]
    } else {
        data.f1.clone()
    };
    for (i, f) in f1.iter().enumerate() {
        v.check(d1.apply(f).is_zero(), format!("D1(f{}) = 0", i + 1))?;
    }

    let computed = ratio(&d2.bracket(&d1), &d1)
        .ok_or_else(|| Error::RelationViolation("[D2, D1] = a D1".into()))?;
    let mut d2_rescale = None;
    let a = match &data.a {
        None => computed,
        Some(a) if *a == computed => computed,
        Some(a) => {
            // [D2 / lambda, D1] = (computed / lambda) D1
            let lambda = computed
                .checked_div(a)
                .ok()
                .and_then(|q| q.constant_value())
                .filter(|q| !q.is_zero())
                .ok_or_else(|| Error::RelationViolation("[D2, D1] = a D1".into()))?;
            d2 = d2.scale_q(&lambda.recip());
            d2_rescale = Some(lambda);
            a.clone()
        }
    };
    v.check(d2.bracket(&d1) == d1.scale(&a), "[D2, D1] = a D1")?;
    v.check(d1.apply(&a).is_zero(), "D1(a) = 0")?;

    let mut generators = vec![d2.clone()];
    if kind == 3 || kind == 4 {
        let c = need(&data.c, "c")?;
        let d = need(&data.d, "d")?;
        let r = need(&data.r, "r")?;
        v.check(d1.apply(&d).is_zero(), "D1(d) = 0")?;
        v.check(d1.apply(&d1.apply(&c)).is_zero(), "D1(D1(c)) = 0")?;
        v.check(d1.apply(&r).is_zero(), "D1(r) = 0")?;
        v.check(d2.apply(&d).is_one(), "D2(d) = 1")?;
        v.check(d2.apply(&c) == &r - &(&a * &c), "D2(c) = -a*c + r")?;
        generators.push(&d1.scale(&c) + &d2.scale(&d));
    }
    generators.extend(f1.iter().map(|f| d1.scale(f)));
    if kind == 2 || kind == 4 {
        let b = need(&data.b, "b")?;
        let a1 = need(&data.a1, "a1")?;
        v.check(d1.apply(&b).is_one(), "D1(b) = 1")?;
        v.check(d1.apply(&a1).is_zero(), "D1(a1) = 0")?;
        v.check(d2.apply(&b) == &a1 - &(&a * &b), "D2(b) = -a*b + a1")?;
        generators.extend(f1.iter().map(|f| d1.scale(&(f * &b))));
    }
    finish(kind, d1, d2, a, d2_rescale, generators, v)
}

fn build_affine(d1: Derivation, d2: Derivation, data: &Solv2Data, mut v: Verifier) -> Result<Solv2Instance> {
    let n = d1.nvars();
    let v1 = need(&data.v1, "v1")?;
    let v2 = need(&data.v2, "v2")?;
    let (dd, vv) = ([&d1, &d2], [&v1, &v2]);
    v.check(d1.bracket(&d2).is_zero(), "[D1, D2] = 0")?;
    for (i, d) in dd.iter().enumerate() {
        for (j, w) in vv.iter().enumerate() {
            let want = if i == j { RatFunc::one(n) } else { RatFunc::zero(n) };
            v.check(d.apply(w) == want, format!("D{}(v{}) = {}", i + 1, j + 1, u8::from(i == j)))?;
        }
    }
    let mut generators = vec![d1.clone(), d2.clone()];
    for &(i, j) in &data.linear {
        if !(1..=2).contains(&i) || !(1..=2).contains(&j) {
            return Err(Error::InvalidParameter(format!("affine pair ({i}, {j})")));
        }
        generators.push(dd[j - 1].scale(vv[i - 1]));
    }
    let instance = finish(5, d1, d2, RatFunc::zero(n), None, generators, v)?;
    let dim = instance.algebra.dim();
    if !(2..=5).contains(&dim) {
        return Err(Error::RelationViolation(format!("2 <= dim <= 5 (dim = {dim})")));
    }
    Ok(instance)
}

fn finish(
    kind: u8,
    d1: Derivation,
    d2: Derivation,
    a: RatFunc,
    d2_rescale: Option<Rational>,
    generators: Vec<Derivation>,
    mut v: Verifier,
) -> Result<Solv2Instance> {
    let n = d1.nvars();
    let algebra = check_closure(QSpan::spanned_by(n, generators.iter().cloned()))
        .map_err(Error::NotClosed)?;
    if !algebra.is_solvable() {
        return Err(Error::NotSolvable);
    }
    v.check(true, "closed under the bracket")?;
    if kind == 5 {
        v.check(true, format!("2 <= dim <= 5 (dim = {})", algebra.dim()))?;
    }
    let report = analyze(&algebra);
    let s = report.derived_length.unwrap_or(0);
    if s > 4 {
        return Err(Error::Invariant(format!("derived length {s} exceeds 4")));
    }
    v.check(true, format!("derived length {s} <= 4"))?;
    Ok(Solv2Instance {
        kind,
        d1,
        d2,
        a,
        d2_rescale,
        generators,
        algebra,
        relations: v.relations,
        report,
    })
}
