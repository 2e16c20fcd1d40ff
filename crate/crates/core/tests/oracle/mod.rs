//! Reference computations that share no code with the library's linear
//! algebra: Q-dependence is detected by evaluating at random rational
//! points, R-rank by nonvanishing minors (Laplace expansion), and the
//! series by bracketing basis pairs directly.
#![allow(dead_code)]

use derlie_core::rational::{frac, int};
use derlie_core::{Derivation, Monomial, Polynomial, RatFunc, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn eval_poly(p: &Polynomial, point: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m.exponents()) {
            for _ in 0..e {
                t *= x;
            }
        }
        acc += t;
    }
    acc
}

pub fn eval(r: &RatFunc, point: &[Rational]) -> Option<Rational> {
    let den = eval_poly(r.denom(), point);
    (!den.is_zero()).then(|| eval_poly(r.numer(), point) / den)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| frac(rng.gen_range(-60..=60), rng.gen_range(1..=7)))
        .collect()
}

/// Rank of a dense rational matrix, by plain row reduction.
pub fn q_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (v, q) in row.iter_mut().zip(&pivot) {
                *v -= &f * q;
            }
        }
        rank += 1;
    }
    rank
}

/// Q-dimension of the span of `family`, from values at random points.
/// A dependence found this way is genuine; an accidental one needs every
/// point to hit a common zero, which the point count makes negligible.
pub fn q_dim(family: &[Derivation], rng: &mut ChaCha8Rng) -> usize {
    let Some(first) = family.first() else { return 0 };
    let n = first.nvars();
    let mut rows = Vec::new();
    let wanted = family.len() + 4;
    let mut points = 0;
    while points < wanted {
        let p = random_point(rng, n);
        let values: Option<Vec<Vec<Rational>>> = (0..n)
            .map(|var| family.iter().map(|d| eval(d.coeff(var), &p)).collect())
            .collect();
        if let Some(values) = values {
            rows.extend(values);
            points += 1;
        }
    }
    q_rank(rows)
}

/// Greedy Q-independent subfamily (earlier members preferred).
pub fn q_basis(family: &[Derivation], rng: &mut ChaCha8Rng) -> Vec<Derivation> {
    let mut basis: Vec<Derivation> = Vec::new();
    for d in family {
        let mut trial = basis.clone();
        trial.push(d.clone());
        if q_dim(&trial, rng) == trial.len() {
            basis = trial;
        }
    }
    basis
}

fn brackets(a: &[Derivation], b: &[Derivation]) -> Vec<Derivation> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.bracket(y))).collect()
}

/// Dimensions of `L = L^0 > [L, L] > ...`, ending at zero or at the first
/// repeated dimension (which is listed twice).
pub fn derived_dims(basis: &[Derivation], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut cur = q_basis(basis, rng);
    let mut dims = vec![cur.len()];
    while !cur.is_empty() {
        let next = q_basis(&brackets(&cur, &cur), rng);
        let stuck = next.len() == cur.len();
        dims.push(next.len());
        if stuck {
            break;
        }
        cur = next;
    }
    dims
}

/// Dimensions of `L = L_1 > [L, L_1] > ...`, same termination rule.
pub fn lower_central_dims(basis: &[Derivation], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let l = q_basis(basis, rng);
    let mut cur = l.clone();
    let mut dims = vec![cur.len()];
    while !cur.is_empty() {
        let next = q_basis(&brackets(&l, &cur), rng);
        let stuck = next.len() == cur.len();
        dims.push(next.len());
        if stuck {
            break;
        }
        cur = next;
    }
    dims
}

/// Determinant by expansion along the first row.
pub fn det(m: &[Vec<RatFunc>]) -> RatFunc {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let n = m[0][0].nvars();
    let mut acc = RatFunc::zero(n);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RatFunc>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut out = subsets(n - 1, k);
    out.extend(with_last);
    out
}

fn submatrix(rows: &[Derivation], ri: &[usize], ci: &[usize]) -> Vec<Vec<RatFunc>> {
    ri.iter()
        .map(|&r| ci.iter().map(|&c| rows[r].coeff(c).clone()).collect())
        .collect()
}

/// Largest order of a nonvanishing minor, with its row and column choice.
pub fn nonzero_minor(rows: &[Derivation]) -> (usize, Vec<usize>, Vec<usize>) {
    let Some(first) = rows.first() else {
        return (0, Vec::new(), Vec::new());
    };
    let n = first.nvars();
    for k in (1..=n.min(rows.len())).rev() {
        for ri in subsets(rows.len(), k) {
            for ci in subsets(n, k) {
                if !det(&submatrix(rows, &ri, &ci)).is_zero() {
                    return (k, ri, ci);
                }
            }
        }
    }
    (0, Vec::new(), Vec::new())
}

pub fn rank_by_minors(rows: &[Derivation]) -> usize {
    nonzero_minor(rows).0
}

/// `v` lies in the R-span of `rows` iff every bordered minor vanishes.
pub fn in_rspan_by_minors(v: &Derivation, rows: &[Derivation]) -> bool {
    let (r, ri, ci) = nonzero_minor(rows);
    let n = v.nvars();
    if r == 0 {
        return v.is_zero();
    }
    let mut base: Vec<Derivation> = ri.iter().map(|&i| rows[i].clone()).collect();
    base.push(v.clone());
    let all_rows: Vec<usize> = (0..=r).collect();
    (0..n).filter(|c| !ci.contains(c)).all(|extra| {
        let mut cols = ci.clone();
        cols.push(extra);
        det(&submatrix(&base, &all_rows, &cols)).is_zero()
    })
}

/// Dimension of `{ v in span_Q(l) : v in R * span(i) }` from the bordered
/// minor conditions, each Q-linear in the coordinates of `v`, sampled at
/// random points.
pub fn intersection_dim_by_minors(l: &[Derivation], i: &[Derivation], rng: &mut ChaCha8Rng) -> usize {
    let (r, ri, ci) = nonzero_minor(i);
    if l.is_empty() {
        return 0;
    }
    let n = l[0].nvars();
    if r == 0 {
        return 0;
    }
    let base: Vec<Derivation> = ri.iter().map(|&k| i[k].clone()).collect();
    let all_rows: Vec<usize> = (0..=r).collect();
    // forms[t][j]: bordered minor t with l_j as the last row.
    let forms: Vec<Vec<RatFunc>> = (0..n)
        .filter(|c| !ci.contains(c))
        .map(|extra| {
            let mut cols = ci.clone();
            cols.push(extra);
            l.iter()
                .map(|lj| {
                    let mut rows = base.clone();
                    rows.push(lj.clone());
                    det(&submatrix(&rows, &all_rows, &cols))
                })
                .collect()
        })
        .collect();
    // The intersection contains the Q-relations of l itself; count the
    // solution space of the coefficient vectors, then quotient by those.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut points = 0;
    while points < l.len() + 4 {
        let p = random_point(rng, n);
        let vals: Option<Vec<Vec<Rational>>> = forms
            .iter()
            .map(|f| f.iter().map(|m| eval(m, &p)).collect())
            .collect();
        if let Some(vals) = vals {
            rows.extend(vals);
            points += 1;
        }
    }
    let solutions = l.len() - q_rank(rows);
    let relations = l.len() - q_dim(l, rng);
    solutions - relations
}

/// Random polynomial in `n` variables with at most `terms` terms of degree
/// at most `degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32, terms: usize) -> Polynomial {
    let terms = (0..rng.gen_range(1..=terms)).map(|_| {
        let mut budget = rng.gen_range(0..=degree);
        let exps: Vec<u32> = (0..n)
            .map(|_| {
                let e = rng.gen_range(0..=budget);
                budget -= e;
                e
            })
            .collect();
        let c = frac(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        (Monomial::new(exps), c)
    });
    Polynomial::from_terms(n, terms)
}

/// Random rational function with numerator and denominator degree at most
/// `degree`; the denominator is 1 about half of the time.
pub fn random_ratfunc(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> RatFunc {
    let num = random_poly(rng, n, degree, 3);
    let den = if rng.gen_bool(0.5) {
        Polynomial::one(n)
    } else {
        let d = random_poly(rng, n, degree, 2);
        if d.is_zero() {
            Polynomial::one(n)
        } else {
            d
        }
    };
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// Random derivation whose components are zero with probability 1/4.
pub fn random_derivation(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Derivation {
    let coeffs = (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 4) {
                RatFunc::zero(n)
            } else {
                random_ratfunc(rng, n, degree)
            }
        })
        .collect();
    Derivation::new(coeffs).expect("ambient width")
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(-4..=4);
    if v == 0 {
        Rational::one()
    } else {
        int(v)
    }
}

/// A family with built-in R-dependencies: members are random R-combinations
/// of a few random base fields, plus an occasional free member.
pub fn dependent_family(rng: &mut ChaCha8Rng, n: usize) -> Vec<Derivation> {
    let bases: Vec<Derivation> = (0..rng.gen_range(1..=2)).map(|_| random_derivation(rng, n, 2)).collect();
    let m = rng.gen_range(2..=4);
    (0..m)
        .map(|_| {
            if rng.gen_ratio(1, 5) {
                return random_derivation(rng, n, 2);
            }
            bases.iter().fold(Derivation::zero(n), |acc, b| {
                let c = if rng.gen_bool(0.5) {
                    random_ratfunc(rng, n, 1)
                } else {
                    RatFunc::constant(n, small_rational(rng))
                };
                &acc + &b.scale(&c)
            })
        })
        .collect()
}

/// Dimension of the center of the algebra with Q-independent `basis`: the
/// solutions `c` of `sum_j c_j [b_j, b_i] = 0` for every `i`, sampled at
/// random points.
pub fn center_dim(basis: &[Derivation], rng: &mut ChaCha8Rng) -> usize {
    let Some(first) = basis.first() else { return 0 };
    let n = first.nvars();
    let table: Vec<Vec<Derivation>> = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| bj.bracket(bi)).collect())
        .collect();
    let mut rows = Vec::new();
    let mut points = 0;
    while points < basis.len() + 4 {
        let p = random_point(rng, n);
        let vals: Option<Vec<Vec<Rational>>> = table
            .iter()
            .flat_map(|row| (0..n).map(move |var| (row, var)))
            .map(|(row, var)| row.iter().map(|d| eval(d.coeff(var), &p)).collect())
            .collect();
        if let Some(vals) = vals {
            rows.extend(vals);
            points += 1;
        }
    }
    basis.len() - q_rank(rows)
}
