//! Exact rational scalars and their `p/q` text form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Always `p/q` with `q >= 1`, e.g. `"1/1"`, `"-3/2"`.
pub fn to_ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_strings() {
        assert_eq!(to_ratio_string(&int(1)), "1/1");
        assert_eq!(to_ratio_string(&Rational::new(6.into(), (-4).into())), "-3/2");
        assert_eq!(parse_ratio("-3/2").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_ratio("7").unwrap(), int(7));
        assert!(parse_ratio("1/0").is_none());
        assert!(parse_ratio("x").is_none());
    }
}
