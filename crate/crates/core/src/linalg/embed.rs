//! Coordinates of derivation families as vectors over Q.
//!
//! For every component all members of the family are brought over one
//! common denominator (the lcm of their denominators); the numerators'
//! monomial coefficients then give Q-coordinates in which Q-linear
//! relations of the family are exactly the linear relations of the vectors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::derivation::Derivation;
use crate::gcd::lcm;
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

type Key = (usize, usize, Monomial);

/// Collects sparse coordinates of a family under shared denominators.
fn sparse_coordinates(block: usize, family: &[&Derivation], out: &mut [BTreeMap<Key, Rational>]) {
    let Some(first) = family.first() else { return };
    let n = first.nvars();
    for var in 0..n {
        let den = family.iter().fold(Polynomial::one(n), |acc, d| {
            let den = d.coeff(var).denom();
            if den.is_one() || den == &acc {
                acc
            } else {
                lcm(&acc, den)
            }
        });
        for (slot, d) in out.iter_mut().zip(family) {
            let coeffs = d
                .coeff(var)
                .monomial_coefficients(&den)
                .expect("common denominator clears every coefficient");
            for (m, c) in coeffs {
                slot.insert((block, var, m), c);
            }
        }
    }
}

/// Dense Q-vectors (one per family member) over a shared coordinate set.
pub fn embed(family: &[&Derivation]) -> Vec<Vec<Rational>> {
    let mut sparse = vec![BTreeMap::new(); family.len()];
    sparse_coordinates(0, family, &mut sparse);
    densify(&sparse)
}

fn densify(sparse: &[BTreeMap<Key, Rational>]) -> Vec<Vec<Rational>> {
    let mut keys: BTreeMap<&Key, usize> = BTreeMap::new();
    for s in sparse {
        for k in s.keys() {
            keys.entry(k).or_insert(0);
        }
    }
    for (i, v) in keys.values_mut().enumerate() {
        *v = i;
    }
    sparse
        .iter()
        .map(|s| {
            let mut v = vec![Rational::zero(); keys.len()];
            for (k, c) in s {
                v[keys[k]] = c.clone();
            }
            v
        })
        .collect()
}

/// A homogeneous Q-linear system in `unknowns` scalars `c`.
///
/// Each block contributes the vector equation
/// `sum over (u, D) in block of c[u] * D = 0`. Blocks are embedded
/// independently so each gets its own common denominators.
pub struct RelationSystem {
    unknowns: usize,
    blocks: Vec<Vec<(usize, Derivation)>>,
}

impl RelationSystem {
    pub fn new(unknowns: usize) -> Self {
        RelationSystem {
            unknowns,
            blocks: Vec::new(),
        }
    }

    pub fn add_block(&mut self, terms: Vec<(usize, Derivation)>) {
        debug_assert!(terms.iter().all(|(u, _)| *u < self.unknowns));
        self.blocks.push(terms);
    }

    /// Basis of the solution space, one vector per free unknown.
    pub fn solve(&self) -> Vec<Vec<Rational>> {
        let mut columns: Vec<BTreeMap<Key, Rational>> = vec![BTreeMap::new(); self.unknowns];
        for (b, block) in self.blocks.iter().enumerate() {
            let family: Vec<&Derivation> = block.iter().map(|(_, d)| d).collect();
            let mut sparse = vec![BTreeMap::new(); family.len()];
            sparse_coordinates(b, &family, &mut sparse);
            for ((u, _), coords) in block.iter().zip(sparse) {
                for (k, c) in coords {
                    let e = columns[*u].entry(k).or_insert_with(Rational::zero);
                    *e += c;
                }
            }
        }
        let dense = densify(&columns);
        let nrows = dense.first().map_or(0, Vec::len);
        let rows: Vec<Vec<Rational>> = (0..nrows)
            .map(|i| dense.iter().map(|col| col[i].clone()).collect())
            .collect();
        super::qdense::nullspace(rows, self.unknowns)
    }
}
