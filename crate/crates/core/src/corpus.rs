//! Named families of algebras and seeded random draws.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::linalg::QSpan;
use crate::poly::{Monomial, Polynomial};
use crate::ratfunc::RatFunc;
use crate::rational::{factorial, int};
use crate::structure::{check_closure, LieAlgebra};

/// Corpus names accepted by [`generate`].
pub const NAMES: &[&str] = &[
    "l_family",
    "abelian",
    "ga1",
    "sl2",
    "b2",
    "borel_ga2",
    "ga2_full",
    "triangular_fuzz",
    "rank1_fuzz",
];

/// Largest dimension a random draw may close up to before it is discarded.
pub const FUZZ_MAX_DIM: usize = 8;
const FUZZ_ATTEMPTS: usize = 500;

fn closed(nvars: usize, gens: Vec<Derivation>) -> LieAlgebra {
    check_closure(QSpan::spanned_by(nvars, gens)).expect("corpus family is closed")
}

fn x(n: usize, i: usize) -> RatFunc {
    RatFunc::variable(n, i)
}

fn dx(n: usize, i: usize) -> Derivation {
    Derivation::partial(n, i)
}

/// `<d1, x2 d1, x2^2/2! d1, ..., x2^n/n! d1, d2>` in `nvars >= 2` variables:
/// nilpotent of rank 2 and dimension `n + 2`.
pub fn l_family(n: usize, nvars: usize) -> Result<LieAlgebra> {
    if nvars < 2 {
        return Err(Error::InvalidParameter(format!("l_family needs at least 2 variables, got {nvars}")));
    }
    let x2 = x(nvars, 1);
    let mut gens: Vec<Derivation> = (0..=n)
        .map(|i| dx(nvars, 0).scale(&x2.pow(i as u32).scale(&factorial(i as u32).recip())))
        .collect();
    gens.push(dx(nvars, 1));
    Ok(closed(nvars, gens))
}

/// `<d1, ..., dn>`.
pub fn abelian(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidParameter("abelian needs at least 1 variable".into()));
    }
    Ok(closed(n, (0..n).map(|i| dx(n, i)).collect()))
}

/// `<d1, x1 d1>`.
pub fn ga1() -> LieAlgebra {
    closed(1, vec![dx(1, 0), dx(1, 0).scale(&x(1, 0))])
}

/// `<d1, x1 d1, x1^2 d1>`.
pub fn sl2() -> LieAlgebra {
    let x1 = x(1, 0);
    closed(1, vec![dx(1, 0), dx(1, 0).scale(&x1), dx(1, 0).scale(&x1.pow(2))])
}

/// `<x2 d2, d2, x2 d1, d1>`.
pub fn b2() -> LieAlgebra {
    let x2 = x(2, 1);
    closed(2, vec![dx(2, 1).scale(&x2), dx(2, 1), dx(2, 0).scale(&x2), dx(2, 0)])
}

/// `<d1, d2, x1 d1, x2 d1, x2 d2>`: upper-triangular affine fields.
pub fn borel_ga2() -> LieAlgebra {
    let (x1, x2) = (x(2, 0), x(2, 1));
    closed(
        2,
        vec![dx(2, 0), dx(2, 1), dx(2, 0).scale(&x1), dx(2, 0).scale(&x2), dx(2, 1).scale(&x2)],
    )
}

/// All affine fields on the plane.
pub fn ga2_full() -> LieAlgebra {
    let mut gens = vec![dx(2, 0), dx(2, 1)];
    for j in 0..2 {
        for i in 0..2 {
            gens.push(dx(2, j).scale(&x(2, i)));
        }
    }
    closed(2, gens)
}

/// A random closed algebra together with the number of rejected draws.
#[derive(Clone, Debug)]
pub struct FuzzDraw {
    pub algebra: LieAlgebra,
    pub discarded: usize,
}

fn check_fuzz_params(n: usize, degree: u32) -> Result<()> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParameter(format!("fuzz variables must be 1..3, got {n}")));
    }
    if degree > 4 {
        return Err(Error::InvalidParameter(format!("fuzz degree must be at most 4, got {degree}")));
    }
    Ok(())
}

/// Random polynomial in the variables `vars` with at most `terms` terms of
/// total degree at most `degree` and small integer coefficients.
fn random_poly(rng: &mut ChaCha8Rng, n: usize, vars: &[usize], degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=degree);
        for &v in vars {
            if budget == 0 {
                break;
            }
            let e = rng.gen_range(0..=budget);
            exps[v] = e;
            budget -= e;
        }
        let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
        p = &p + &Polynomial::term(Monomial::new(exps), int(c));
    }
    p
}

/// `(p_i(x_1..x_{i-1}) + c_i x_i) d_i` summed over the components.
fn random_triangular(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Derivation {
    let coeffs = (0..n)
        .map(|i| {
            if rng.gen_ratio(1, 3) {
                return RatFunc::zero(n);
            }
            let below: Vec<usize> = (0..i).collect();
            let p = random_poly(rng, n, &below, degree, 2);
            let c = [-1i64, 0, 0, 1, 2][rng.gen_range(0..5)];
            let lin = Polynomial::variable(n, i).scale(&int(c));
            RatFunc::from(&p + &lin)
        })
        .collect();
    Derivation::new(coeffs).expect("ambient width")
}

/// `(q(x_2..x_n) + c x_1) d_1` with `q` possibly divided by `1 + x_2`.
fn random_line(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Derivation {
    let rest: Vec<usize> = (1..n).collect();
    let mut q = RatFunc::from(random_poly(rng, n, &rest, degree, 2));
    if n >= 2 && rng.gen_ratio(1, 3) {
        let den = &Polynomial::one(n) + &Polynomial::variable(n, 1);
        q = RatFunc::new(q.numer().clone(), den).expect("nonzero denominator");
    }
    let c = [-1i64, 0, 1, 2][rng.gen_range(0..4)];
    let lin = RatFunc::from(Polynomial::variable(n, 0).scale(&int(c)));
    Derivation::single(0, &q + &lin)
}

fn draw(
    seed: u64,
    n: usize,
    degree: u32,
    field: fn(&mut ChaCha8Rng, usize, u32) -> Derivation,
) -> Result<FuzzDraw> {
    check_fuzz_params(n, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for discarded in 0..FUZZ_ATTEMPTS {
        let count = rng.gen_range(2..=3);
        let gens: Vec<Derivation> = (0..count).map(|_| field(&mut rng, n, degree)).collect();
        if gens.iter().all(Derivation::is_zero) {
            continue;
        }
        if let Some(algebra) = LieAlgebra::generated_by(n, gens, FUZZ_MAX_DIM) {
            return Ok(FuzzDraw { algebra, discarded });
        }
    }
    Err(Error::InvalidParameter(format!(
        "no closed draw of dimension <= {FUZZ_MAX_DIM} within {FUZZ_ATTEMPTS} attempts"
    )))
}

/// Algebra generated by 2-3 random triangular fields, redrawn until it closes
/// within [`FUZZ_MAX_DIM`] dimensions. Deterministic in `seed`.
pub fn triangular_fuzz(seed: u64, n: usize, degree: u32) -> Result<FuzzDraw> {
    draw(seed, n, degree, random_triangular)
}

/// Rank-one solvable draws: fields `(q(x_2..x_n) + c x_1) d_1`.
pub fn rank1_fuzz(seed: u64, n: usize, degree: u32) -> Result<FuzzDraw> {
    draw(seed, n, degree, random_line)
}

/// Integer parameters of a corpus request, by name.
pub type Params = BTreeMap<String, u64>;

fn take(params: &mut Params, key: &str, default: u64) -> u64 {
    params.remove(key).unwrap_or(default)
}

/// Builds the corpus algebra `name`. Unused parameters are an error.
pub fn generate(name: &str, params: &Params) -> Result<LieAlgebra> {
    let mut p = params.clone();
    let algebra = match name {
        "l_family" => {
            let n = take(&mut p, "n", 2) as usize;
            let vars = take(&mut p, "vars", 2) as usize;
            l_family(n, vars)?
        }
        "abelian" => abelian(take(&mut p, "n", 2) as usize)?,
        "ga1" => ga1(),
        "sl2" => sl2(),
        "b2" => b2(),
        "borel_ga2" => borel_ga2(),
        "ga2_full" => ga2_full(),
        "triangular_fuzz" | "rank1_fuzz" => {
            let seed = take(&mut p, "seed", 0);
            let n = take(&mut p, "n", 2) as usize;
            let degree = u32::try_from(take(&mut p, "degree", 2)).unwrap_or(u32::MAX);
            let f = if name == "rank1_fuzz" { rank1_fuzz } else { triangular_fuzz };
            f(seed, n, degree)?.algebra
        }
        _ => return Err(Error::UnknownCorpus(name.to_string())),
    };
    if let Some(key) = p.keys().next() {
        return Err(Error::InvalidParameter(format!("{name} takes no parameter `{key}`")));
    }
    Ok(algebra)
}

/// The fixed corpus swept by whole-corpus verification, as
/// `(label, algebra)` with identifier labels, plus one triangular and one
/// rank-one draw for every seed in `seeds`.
pub fn standard_corpus(seeds: Range<u64>) -> Vec<(String, LieAlgebra)> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.push((format!("l_family_n{n}"), l_family(n, 2).expect("two variables")));
    }
    for n in 1..=3 {
        out.push((format!("abelian_n{n}"), abelian(n).expect("positive")));
    }
    out.push(("ga1".into(), ga1()));
    out.push(("sl2".into(), sl2()));
    out.push(("b2".into(), b2()));
    out.push(("borel_ga2".into(), borel_ga2()));
    out.push(("ga2_full".into(), ga2_full()));
    for seed in seeds {
        if let Ok(d) = triangular_fuzz(seed, 2, 2) {
            out.push((format!("triangular_fuzz_seed{seed}"), d.algebra));
        }
        if let Ok(d) = rank1_fuzz(seed, 2, 2) {
            out.push((format!("rank1_fuzz_seed{seed}"), d.algebra));
        }
    }
    out
}
