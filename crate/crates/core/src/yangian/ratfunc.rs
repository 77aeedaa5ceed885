//! Rational functions of the two spectral parameters `x = lambda_1` and
//! `y = lambda_2`, kept in lowest terms with a normalized denominator so that
//! equality of values is equality of representations.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::BiPoly;
use crate::matrix::Entry;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariateRational {
    num: BiPoly,
    den: BiPoly,
}

impl BivariateRational {
    /// `num / den` in canonical form; `None` if `den` is zero.
    pub fn new(num: BiPoly, den: BiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides the numerator");
        let den = den.div_exact(&g).expect("gcd divides the denominator");
        let scale = Rational::one() / den.lead_rational();
        Some(BivariateRational { num: num.scale(&scale), den: den.scale(&scale) })
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self::new(p, BiPoly::one()).expect("nonzero denominator")
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    /// `lambda_1`.
    pub fn x() -> Self {
        Self::from_poly(BiPoly::x())
    }

    /// `lambda_2`.
    pub fn y() -> Self {
        Self::from_poly(BiPoly::y())
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BiPoly {
        &self.den
    }

    /// `1 / self`; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Value at `(x, y)`, or `None` at a pole.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let d = self.den.eval(x, y);
        (!d.is_zero()).then(|| self.num.eval(x, y) / d)
    }

    /// True for a constant function, i.e. no dependence on the parameters.
    pub fn as_constant(&self) -> Option<Rational> {
        let deg0 = |p: &BiPoly| p.degree_x().unwrap_or(0) == 0 && p.degree_y().unwrap_or(0) == 0;
        (deg0(&self.num) && deg0(&self.den)).then(|| self.num.eval(&Rational::zero(), &Rational::zero()))
    }
}

impl Zero for BivariateRational {
    fn zero() -> Self {
        BivariateRational { num: BiPoly::zero(), den: BiPoly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for BivariateRational {
    fn one() -> Self {
        BivariateRational { num: BiPoly::one(), den: BiPoly::one() }
    }
}

impl Add for BivariateRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den).expect("nonzero denominator");
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }
}

impl Neg for BivariateRational {
    type Output = Self;

    fn neg(self) -> Self {
        BivariateRational { num: self.num.neg(), den: self.den }
    }
}

impl Sub for BivariateRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for BivariateRational {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominator")
    }
}

impl Div for BivariateRational {
    type Output = Self;

    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by the zero function")
    }
}

impl From<Rational> for BivariateRational {
    fn from(q: Rational) -> Self {
        Self::constant(q)
    }
}

impl fmt::Display for BivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl BiPoly {
    fn is_one_poly(&self) -> bool {
        *self == BiPoly::one()
    }
}

impl Entry for BivariateRational {
    fn witness_string(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn c(v: i64) -> BivariateRational {
        BivariateRational::constant(int(v))
    }

    #[test]
    fn canonical_equality() {
        let u = BivariateRational::x() - BivariateRational::y();
        let a = c(1) / u.clone();
        let b = (c(2) * u.clone()) / (c(2) * u.clone() * u.clone());
        assert_eq!(a, b);
        assert_eq!(a.clone() * u.clone(), c(1));
        assert_eq!(a.clone() - a.clone(), BivariateRational::zero());
        let one_minus = c(1) - c(1) / (u.clone() * u.clone());
        let prod = (c(1) + a.clone()) * (c(1) - a);
        assert_eq!(prod, one_minus);
    }

    #[test]
    fn partial_fractions_recombine() {
        let x = BivariateRational::x();
        let y = BivariateRational::y();
        // 1/(x-1) - 1/(y-1) = (y - x) / ((x-1)(y-1))
        let lhs = c(1) / (x.clone() - c(1)) - c(1) / (y.clone() - c(1));
        let rhs = (y.clone() - x.clone()) / ((x - c(1)) * (y - c(1)));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.eval(&int(3), &int(2)), Some(Rational::new(int(-1).to_integer(), int(2).to_integer())));
        assert_eq!(lhs.eval(&int(1), &int(2)), None);
    }

    #[test]
    fn display_and_constants() {
        let u = BivariateRational::x() - BivariateRational::y();
        assert_eq!((c(1) / u.clone()).to_string(), "(1) / (x - y)");
        assert_eq!(u.to_string(), "x - y");
        assert_eq!(c(3).as_constant(), Some(int(3)));
        assert_eq!(u.as_constant(), None);
    }
}
