//! Reduced rational functions, the fraction field `Q(x1, ..., xn)`.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gcd::gcd;
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

/// `num / den` with `gcd(num, den) = 1` and `den` primitive over the
/// integers with positive leading coefficient. Equal values therefore have
/// identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::AmbientMismatch {
                expected: num.nvars(),
                found: den.nvars(),
            });
        }
        Ok(Self::reduce(num, den))
    }

    /// `num / den` for coprime inputs; only the denominator is normalized.
    fn coprime(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RatFunc::zero(num.nvars());
        }
        let (c, den) = den.primitive_split();
        RatFunc {
            num: num.scale(&c.recip()),
            den,
        }
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc::zero(n);
        }
        if let Some(c) = den.constant_value() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: Polynomial::one(n),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let (c, den) = den.primitive_split();
        RatFunc {
            num: num.scale(&c.recip()),
            den,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: Polynomial::zero(nvars),
            den: Polynomial::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RatFunc {
            num: Polynomial::constant(nvars, c),
            den: Polynomial::one(nvars),
        }
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Polynomial::variable(nvars, var).into()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Sum of numerator and denominator total degrees; the pivot weight used
    /// by fraction-field elimination.
    pub fn weight(&self) -> u32 {
        self.num.total_degree() + self.den.total_degree()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = RatFunc::coprime(rhs.den.clone(), rhs.num.clone());
        Ok(self * &inv)
    }

    pub fn pow(&self, exp: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Partial derivative in `x_{var+1}` by the quotient rule.
    pub fn partial(&self, var: usize) -> Result<Self> {
        let n = self.nvars();
        if var >= n {
            return Err(Error::VariableIndex { index: var, nvars: n });
        }
        let dn = self.num.derivative(var);
        if self.den.is_one() {
            return Ok(RatFunc {
                num: dn,
                den: self.den.clone(),
            });
        }
        let dd = self.den.derivative(var);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        // A common factor of `top` and `den^2` must already divide `den`.
        if top.is_zero() || gcd(&top, &self.den).is_one() {
            return Ok(RatFunc::coprime(top, &self.den * &self.den));
        }
        Ok(RatFunc::reduce(top, &self.den * &self.den))
    }

    /// Monomial coefficients of `self * basis_den`, which must be a
    /// polynomial.
    pub fn monomial_coefficients(
        &self,
        basis_den: &Polynomial,
    ) -> Result<BTreeMap<Monomial, Rational>> {
        let cleared = if self.den.is_one() {
            &self.num * basis_den
        } else {
            let q = basis_den
                .div_exact(&self.den)
                .ok_or(Error::NotPolynomial)?;
            &self.num * &q
        };
        Ok(cleared.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> RatFuncDisplay<'a, S> {
        RatFuncDisplay { r: self, names }
    }
}

impl From<Polynomial> for RatFunc {
    fn from(p: Polynomial) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: Polynomial::one(n),
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: self.den.clone(),
                };
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        // Cancel through g = gcd of the denominators: only the part of the
        // new numerator sharing a factor with g can cancel.
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::coprime(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let h = gcd(&t, &g);
        let den = &b * &rhs.den;
        if h.is_one() {
            return RatFunc::coprime(t, den);
        }
        RatFunc::coprime(t.div_exact(&h).expect("gcd divides"), den.div_exact(&h).expect("gcd divides"))
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        // Cross-cancel so the product needs no further gcd.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cut = |p: &Polynomial, g: &Polynomial| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFunc::coprime(num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub struct RatFuncDisplay<'a, S> {
    r: &'a RatFunc,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for RatFuncDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (&self.r.num, &self.r.den);
        if den.is_one() {
            return write!(f, "{}", num.display(self.names));
        }
        if num.num_terms() > 1 {
            write!(f, "({})", num.display(self.names))?;
        } else {
            write!(f, "{}", num.display(self.names))?;
        }
        // A bare denominator is safe only for a single variable power.
        let bare = den.num_terms() == 1
            && den.leading_term().is_some_and(|(m, c)| {
                c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1
            });
        if bare {
            write!(f, "/{}", den.display(self.names))
        } else {
            write!(f, "/({})", den.display(self.names))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn x(n: usize, i: usize) -> RatFunc {
        RatFunc::variable(n, i)
    }

    fn k(n: usize, c: i64) -> RatFunc {
        RatFunc::constant(n, int(c))
    }

    fn inv(r: &RatFunc) -> RatFunc {
        r.recip().unwrap()
    }

    #[test]
    fn like_terms() {
        let r = inv(&x(1, 0));
        assert_eq!(&r + &r, k(1, 2).checked_div(&x(1, 0)).unwrap());
    }

    #[test]
    fn inverse_pair() {
        let x1 = x(1, 0);
        let a = x1.checked_div(&(&x1 + &k(1, 1))).unwrap();
        let b = (&x1 + &k(1, 1)).checked_div(&x1).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn cancellation_before_addition() {
        // (x^2 - 1)/(x - 1) + 1, cross-multiplied by hand: x + 2.
        let x1 = x(1, 0);
        let a = (&(&x1 * &x1) - &k(1, 1))
            .checked_div(&(&x1 - &k(1, 1)))
            .unwrap();
        let sum = &a + &k(1, 1);
        assert_eq!(sum, &x1 + &k(1, 2));
        assert!(sum.is_polynomial());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            k(2, 1).checked_div(&RatFunc::zero(2)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn denominator_normal_form() {
        let r = RatFunc::new(
            Polynomial::one(1),
            Polynomial::variable(1, 0).scale(&int(-6)),
        )
        .unwrap();
        assert_eq!(r.denom(), &Polynomial::variable(1, 0));
        assert_eq!(r.numer(), &Polynomial::constant(1, frac(-1, 6)));
    }

    #[test]
    fn partial_derivatives() {
        let (a, b) = (x(2, 0), x(2, 1));
        assert_eq!((&(&a * &a) * &b).partial(0).unwrap(), &(&a * &b).scale(&int(2)) + &RatFunc::zero(2));
        // quotient rule by hand: d/dx (1/x) = (0*x - 1*1)/x^2
        let expected = RatFunc::new(Polynomial::constant(2, int(-1)), Polynomial::variable(2, 0).pow(2)).unwrap();
        assert_eq!(inv(&a).partial(0).unwrap(), expected);
        assert!((&a * &a).partial(1).unwrap().is_zero());
        assert_eq!(
            a.partial(2),
            Err(Error::VariableIndex { index: 2, nvars: 2 })
        );
    }

    #[test]
    fn monomial_coefficient_extraction() {
        let n = 1;
        let r = &x(n, 0) + &k(n, 2);
        let m = r.monomial_coefficients(&Polynomial::one(n)).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&Monomial::new(alloc::vec![1])], int(1));
        assert_eq!(m[&Monomial::new(alloc::vec![0])], int(2));

        let r = inv(&x(n, 0));
        let m = r.monomial_coefficients(&Polynomial::variable(n, 0)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&Monomial::new(alloc::vec![0])], int(1));

        assert_eq!(
            r.monomial_coefficients(&Polynomial::one(n)),
            Err(Error::NotPolynomial)
        );
    }

    #[test]
    fn rendering() {
        let names = ["x", "y"];
        let (a, b) = (x(2, 0), x(2, 1));
        let r = inv(&(&a + &k(2, 1)));
        assert_eq!(r.display(&names).to_string(), "1/(x + 1)");
        let r = (&a - &b).checked_div(&(&a * &a)).unwrap();
        assert_eq!(r.display(&names).to_string(), "(x - y)/x^2");
        let r = k(2, 1).checked_div(&(&a * &b)).unwrap();
        assert_eq!(r.display(&names).to_string(), "1/(x*y)");
    }
}
