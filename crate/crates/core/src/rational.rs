//! Arbitrary-precision rationals.
//!
//! `num-rational` already keeps `BigRational` in lowest terms with a positive
//! denominator (zero is `0/1`), which is exactly the canonical form required
//! here, so the type is re-exported rather than wrapped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Positive rational `c` such that every element of `values` divided by `c`
/// is an integer and those integers have no common factor. Returns one for
/// an all-zero input.
pub(crate) fn content<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut any = false;
    for v in values {
        if v.is_zero() {
            continue;
        }
        any = true;
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if !any {
        return Rational::one();
    }
    Rational::new(num.abs(), den)
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}
