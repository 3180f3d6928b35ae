//! The fraction field Q(x).

use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::ratpoly::RatPoly;
use super::ring::{ring_boilerplate, Ring};

/// Reduced fraction `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    /// Panics when `den` is zero.
    pub fn new(num: RatPoly, den: RatPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(RatPoly::default());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        RatFunc {
            num: p,
            den: RatPoly::constant(Rational::one()),
        }
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&RatPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The denominator is a power of the variable (Laurent polynomial after
    /// `x -> q`).
    pub fn has_monomial_denominator(&self) -> bool {
        self.den.as_monomial().is_some()
    }

    pub fn recip(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul_ref(&other.recip())
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_polynomial() {
            self.num.display(var)
        } else {
            format!("({}) / ({})", self.num.display(var), self.den.display(var))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(RatPoly::default())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(RatPoly::constant(Rational::one()))
    }
}

ring_boilerplate!(RatFunc);

impl Ring for RatFunc {
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
    }
    fn neg_ref(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<RatPoly> for RatFunc {
    fn from(p: RatPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::from_poly(RatPoly::constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2
        let f = RatFunc::new(
            RatPoly::from_ints(&[-1, 0, 1]),
            RatPoly::from_ints(&[-2, 2]),
        );
        assert!(f.is_polynomial());
        assert_eq!(
            f.num(),
            &RatPoly::new(vec![
                crate::algebra::rational::ratio(1, 2),
                crate::algebra::rational::ratio(1, 2)
            ])
        );
    }

    #[test]
    fn monomial_denominators_are_detected() {
        let f = RatFunc::new(RatPoly::from_ints(&[1, 0, 1]), RatPoly::from_ints(&[0, 3]));
        assert!(!f.is_polynomial());
        assert!(f.has_monomial_denominator());
    }
}
