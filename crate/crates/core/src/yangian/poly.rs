//! Dense polynomials over the rationals in one variable `y`, and in two
//! variables `x`, `y` stored as polynomials in `x` with coefficients in `Q[y]`.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// A polynomial in `y`; `coeffs[i]` multiplies `y^i`, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// `y`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs =
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// `self * y^k`.
    fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let db = divisor.degree().expect("division by the zero polynomial");
        let lb = divisor.lead();
        let mut q = UniPoly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = UniPoly::constant(r.lead() / &lb).shift(dr - db);
            r = r.sub(&t.mul(divisor));
            q = q.add(&t);
        }
        (q, r)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.lead()))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * y + c)
    }
}

/// A polynomial in `x` and `y`; `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![UniPoly::constant(c)])
    }

    pub fn from_uni(p: UniPoly) -> Self {
        Self::from_coeffs(vec![p])
    }

    pub fn from_coeffs(coeffs: Vec<UniPoly>) -> Self {
        let mut p = BiPoly { coeffs };
        while p.coeffs.last().is_some_and(UniPoly::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![UniPoly::zero(), UniPoly::constant(Rational::one())])
    }

    /// `y`.
    pub fn y() -> Self {
        Self::from_uni(UniPoly::var())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Total degree bound used for reporting: maximum `y`-degree.
    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UniPoly::degree).max()
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    /// Leading coefficient in `x`.
    pub fn lead(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// The rational leading coefficient under the order "`x`-degree first,
    /// then `y`-degree".
    pub fn lead_rational(&self) -> Rational {
        self.lead().lead()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = UniPoly::zero();
        let coeffs =
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero).add(other.coeffs.get(i).unwrap_or(&zero))).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(UniPoly::neg).collect() }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> BiPoly {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }

    pub fn mul_uni(&self, p: &UniPoly) -> BiPoly {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![UniPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// `self * x^k`.
    fn shift(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![UniPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly { coeffs }
    }

    /// Monic gcd of the `Q[y]` coefficients.
    pub fn content(&self) -> UniPoly {
        self.coeffs.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::from_coeffs(self.coeffs.iter().map(|p| p.div_rem(&c).0).collect())
    }

    /// A pseudo-remainder of `self` by `divisor` in `x`: an element of
    /// `Q[y]^* self + Q[y][x] divisor` of lower `x`-degree than `divisor`.
    fn pseudo_rem(&self, divisor: &BiPoly) -> BiPoly {
        let db = divisor.degree_x().expect("division by the zero polynomial");
        let lb = divisor.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree_x() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = r.mul_uni(&lb).sub(&divisor.mul_uni(&lr).shift(dr - db));
        }
        r
    }

    /// A greatest common divisor, normalized by [`BiPoly::normalized`].
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree_x() < b.degree_x() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            a = b;
            b = r.primitive_part();
        }
        b.mul_uni(&content).normalized()
    }

    /// Scaled so that [`BiPoly::lead_rational`] is 1.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.lead_rational()))
    }

    /// `self / divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &BiPoly) -> Option<BiPoly> {
        let db = divisor.degree_x()?;
        let lb = divisor.lead();
        let mut q = BiPoly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.degree_x() {
            if dr < db {
                return None;
            }
            let (t, rem) = r.lead().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            let term = BiPoly::from_uni(t).shift(dr - db);
            r = r.sub(&term.mul(divisor));
            q = q.add(&term);
        }
        Some(q)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c.eval(y))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: &Rational, i: usize, j: usize, first: bool) -> fmt::Result {
    let neg = c < &Rational::zero();
    let mag = if neg { -c } else { c.clone() };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let unit = mag.is_one() && (i > 0 || j > 0);
    if !unit {
        write!(f, "{}", mag)?;
    }
    let vars = [("x", i), ("y", j)];
    let mut sep = !unit;
    for (v, e) in vars {
        if e == 0 {
            continue;
        }
        if sep {
            write!(f, "*")?;
        }
        write!(f, "{}", v)?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
        sep = true;
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            for (j, q) in c.coeffs().iter().enumerate().rev() {
                if q.is_zero() {
                    continue;
                }
                write_monomial(f, q, i, j, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn lin(a: i64, b: i64, c: i64) -> BiPoly {
        // a x + b y + c
        BiPoly::x().scale(&int(a)).add(&BiPoly::y().scale(&int(b))).add(&BiPoly::constant(int(c)))
    }

    #[test]
    fn uni_gcd() {
        let y = UniPoly::var();
        let a = y.sub(&UniPoly::constant(int(1))).mul(&y.add(&UniPoly::constant(int(2))));
        let b = y.sub(&UniPoly::constant(int(1))).mul(&y);
        assert_eq!(a.gcd(&b), y.sub(&UniPoly::constant(int(1))));
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), UniPoly::zero());
        assert_eq!(a.eval(&int(3)), int(10));
    }

    #[test]
    fn bi_gcd_and_division() {
        let u = lin(1, -1, 0);
        let v = lin(1, 0, -1);
        let w = lin(0, 1, -1);
        let a = u.mul(&v).mul(&v);
        let b = u.mul(&w).mul(&v).scale(&int(3));
        assert_eq!(a.gcd(&b), u.mul(&v).normalized());
        assert_eq!(a.div_exact(&u).unwrap(), v.mul(&v));
        assert!(a.div_exact(&w).is_none());
        assert_eq!(u.gcd(&w), BiPoly::one());
    }

    #[test]
    fn display() {
        assert_eq!(lin(1, -1, 0).to_string(), "x - y");
        assert_eq!(lin(2, 0, -1).mul(&BiPoly::y()).to_string(), "2*x*y - y");
        assert_eq!(BiPoly::zero().to_string(), "0");
    }
}
