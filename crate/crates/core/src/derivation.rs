//! Derivations `f1 d/dx1 + ... + fn d/dxn` with rational-function
//! coefficients, their action on `Q(x1, ..., xn)`, and the Lie bracket.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation {
    coeffs: Vec<RatFunc>,
}

impl Derivation {
    /// Builds a derivation from its coefficient vector. Every coefficient must
    /// live in a ring with exactly `coeffs.len()` variables.
    pub fn new(coeffs: Vec<RatFunc>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(Error::AmbientMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(Derivation { coeffs })
    }

    pub fn zero(nvars: usize) -> Self {
        Derivation {
            coeffs: (0..nvars).map(|_| RatFunc::zero(nvars)).collect(),
        }
    }

    /// The coordinate field `d/dx_{var+1}`.
    pub fn partial(nvars: usize, var: usize) -> Self {
        let mut d = Derivation::zero(nvars);
        d.coeffs[var] = RatFunc::one(nvars);
        d
    }

    /// `coeff * d/dx_{var+1}`.
    pub fn single(var: usize, coeff: RatFunc) -> Self {
        let mut d = Derivation::zero(coeff.nvars());
        d.coeffs[var] = coeff;
        d
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, var: usize) -> &RatFunc {
        &self.coeffs[var]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    /// `sum_i coeffs[i] * d r / d x_i`.
    pub fn apply(&self, r: &RatFunc) -> RatFunc {
        debug_assert_eq!(r.nvars(), self.nvars());
        let mut acc = RatFunc::zero(self.nvars());
        if r.constant_value().is_some() {
            return acc;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = r.partial(i).expect("index within ambient");
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// `[self, other]`, computed coefficientwise as
    /// `self(other_i) - other(self_i)`.
    pub fn bracket(&self, other: &Derivation) -> Derivation {
        debug_assert_eq!(self.nvars(), other.nvars());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(mine, theirs)| &self.apply(theirs) - &other.apply(mine))
            .collect();
        Derivation { coeffs }
    }

    /// `r * self`.
    pub fn scale(&self, r: &RatFunc) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn scale_q(&self, c: &Rational) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|k| k.scale(c)).collect(),
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Renders as `f1*dx1 + f2*dx2` over the given variable names, omitting
    /// zero components.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> DerivationDisplay<'a, S> {
        DerivationDisplay { d: self, names }
    }
}

/// Q-linear combination `sum_j coords[j] * vectors[j]`.
pub fn combine(nvars: usize, coords: &[Rational], vectors: &[Derivation]) -> Derivation {
    coords
        .iter()
        .zip(vectors)
        .fold(Derivation::zero(nvars), |acc, (c, v)| &acc + &v.scale_q(c))
}

impl Add for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

pub struct DerivationDisplay<'a, S> {
    d: &'a Derivation,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for DerivationDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.d.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let name = self.names[i].as_ref();
            if c.is_one() {
                write!(f, "d{name}")?;
            } else if c.is_polynomial() && c.numer().is_monomial() {
                write!(f, "{}*d{name}", c.display(self.names))?;
            } else {
                write!(f, "({})*d{name}", c.display(self.names))?;
            }
        }
        if first {
            write!(f, "0*d{}", self.names[0].as_ref())?;
        }
        Ok(())
    }
}
