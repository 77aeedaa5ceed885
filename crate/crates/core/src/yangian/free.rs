//! Noncommutative polynomials in the symbols `L^(m)_{a,b}` (`m >= 1`) and their
//! tensor powers, in expanded form. `L^(0)_{a,b}` is `delta_{a,b} 1` and is
//! never stored.

use std::collections::{btree_map, BTreeMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};

/// The generator `L^(level)_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub level: u8,
    pub a: u8,
    pub b: u8,
}

pub type Word = Vec<Gen>;

/// A sum of `k`-fold tensors of words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeTensor {
    order: usize,
    terms: BTreeMap<Vec<Word>, Rational>,
}

/// A noncommutative polynomial: a free tensor of order 1.
pub type FreeNCPoly = FreeTensor;

impl FreeTensor {
    pub fn zero(order: usize) -> Self {
        FreeTensor { order, terms: BTreeMap::new() }
    }

    /// `1 (x) ... (x) 1`.
    pub fn one(order: usize) -> Self {
        let mut t = Self::zero(order);
        t.add_term(vec![Vec::new(); order], Rational::one());
        t
    }

    /// `L^(level)_{a,b}` as an order-1 element, with `L^(0) = delta 1`.
    pub fn generator(level: usize, a: usize, b: usize) -> Self {
        if level == 0 {
            return if a == b { Self::one(1) } else { Self::zero(1) };
        }
        let mut t = Self::zero(1);
        t.add_term(vec![vec![Gen { level: level as u8, a: a as u8, b: b as u8 }]], Rational::one());
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, key: Vec<Word>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FreeTensor) -> FreeTensor {
        assert_eq!(self.order, other.order, "tensor orders differ");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> FreeTensor {
        let mut out = Self::zero(self.order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * q);
        }
        out
    }

    pub fn sub(&self, other: &FreeTensor) -> FreeTensor {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Factor-wise product `(x (x) y)(x' (x) y') = xx' (x) yy'`.
    pub fn mul(&self, other: &FreeTensor) -> FreeTensor {
        assert_eq!(self.order, other.order, "tensor orders differ");
        let mut out = Self::zero(self.order);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().zip(k2).map(|(w1, w2)| w1.iter().chain(w2).copied().collect()).collect();
                out.add_term(key, c1 * c2);
            }
        }
        out
    }

    pub fn tensor(&self, other: &FreeTensor) -> FreeTensor {
        let mut out = Self::zero(self.order + other.order);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1.iter().chain(k2).cloned().collect(), c1 * c2);
            }
        }
        out
    }

    /// Applies an algebra homomorphism, given on generators, to factor
    /// `slot`; the image order is `images(g).order()` for every generator.
    pub fn map_slot_hom(&self, slot: usize, image_order: usize, image: &dyn Fn(Gen) -> FreeTensor) -> FreeTensor {
        self.map_slot(slot, image_order, |w| w.iter().fold(FreeTensor::one(image_order), |acc, &g| acc.mul(&image(g))))
    }

    /// Applies an algebra anti-homomorphism, given on generators, to factor
    /// `slot` (order preserved).
    pub fn map_slot_antihom(&self, slot: usize, image: &dyn Fn(Gen) -> FreeTensor) -> FreeTensor {
        self.map_slot(slot, 1, |w| w.iter().rev().fold(FreeTensor::one(1), |acc, &g| acc.mul(&image(g))))
    }

    fn map_slot(&self, slot: usize, image_order: usize, word_image: impl Fn(&Word) -> FreeTensor) -> FreeTensor {
        assert!(slot < self.order, "slot out of range");
        let mut out = Self::zero(self.order - 1 + image_order);
        for (key, c) in &self.terms {
            let img = word_image(&key[slot]);
            for (ik, ic) in &img.terms {
                let new_key = key[..slot].iter().chain(ik).chain(&key[slot + 1..]).cloned().collect();
                out.add_term(new_key, c * ic);
            }
        }
        out
    }

    /// The multiplication map on an order-2 tensor.
    pub fn multiply_out(&self) -> FreeNCPoly {
        assert_eq!(self.order, 2, "multiply_out needs an order-2 tensor");
        let mut out = Self::zero(1);
        for (k, c) in &self.terms {
            out.add_term(vec![k[0].iter().chain(&k[1]).copied().collect()], c.clone());
        }
        out
    }

    /// The counit `epsilon(L^(m)) = 0` (`m >= 1`) applied to factor `slot`.
    pub fn counit_at(&self, slot: usize) -> FreeTensor {
        self.map_slot(slot, 0, |w| if w.is_empty() { FreeTensor::one(0) } else { FreeTensor::zero(0) })
    }

    /// The first term, in key order, where the two tensors differ.
    pub fn first_difference(&self, other: &FreeTensor) -> Option<String> {
        if self.order != other.order {
            return Some(format!("orders {} and {}", self.order, other.order));
        }
        let diff = self.sub(other);
        diff.terms.iter().next().map(|(k, _)| {
            format!(
                "{}: {} vs {}",
                format_key(k),
                rational::to_ratio_string(&self.terms.get(k).cloned().unwrap_or_else(Rational::zero)),
                rational::to_ratio_string(&other.terms.get(k).cloned().unwrap_or_else(Rational::zero)),
            )
        })
    }
}

fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|g| format!("L{}_{}{}", g.level, g.a, g.b)).collect::<Vec<_>>().join(" ")
}

fn format_key(k: &[Word]) -> String {
    k.iter().map(format_word).collect::<Vec<_>>().join(" (x) ")
}

impl fmt::Display for FreeTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(k, c)| format!("{} {}", rational::to_ratio_string(c), format_key(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_cancellation() {
        let x = FreeTensor::generator(1, 0, 1);
        let y = FreeTensor::generator(2, 1, 0);
        let xy = x.mul(&y);
        let yx = y.mul(&x);
        assert_ne!(xy, yx);
        assert!(xy.sub(&xy).is_zero());
        assert_eq!(FreeTensor::generator(0, 1, 1), FreeTensor::one(1));
        assert!(FreeTensor::generator(0, 0, 1).is_zero());
        let t = x.tensor(&y);
        assert_eq!(t.order(), 2);
        assert_eq!(t.multiply_out(), xy);
        assert_eq!(t.counit_at(0), FreeTensor::zero(1));
        assert_eq!(FreeTensor::one(1).tensor(&y).counit_at(0), y);
    }

    #[test]
    fn antihomomorphism_reverses_words() {
        let x = FreeTensor::generator(1, 0, 1);
        let y = FreeTensor::generator(1, 1, 0);
        let xy = x.mul(&y);
        let id = |g: Gen| FreeTensor::generator(g.level as usize, g.a as usize, g.b as usize);
        assert_eq!(xy.map_slot_antihom(0, &id), y.mul(&x));
        assert_eq!(xy.map_slot_hom(0, 1, &id), xy);
    }
}
