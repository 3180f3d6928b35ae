//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{rat, Rational};
use super::ring::{ring_boilerplate, ExactDiv, Ring};

/// Polynomial in one variable with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`; trailing zeros are never stored,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        RatPoly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `Some((c, k))` when the polynomial is exactly `c * x^k` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(Rational, usize)> {
        let v = self.valuation()?;
        let d = self.degree()?;
        (v == d).then(|| (self.coeffs[d].clone(), d))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::default();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::default(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::default(), Self::default());
        };
        if sd < dd {
            return (Self::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Substitutes `x^2 -> y`; `None` if an odd power is present.
    pub fn halve_exponents(&self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len() / 2 + 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 1 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                out.push(c.clone());
            }
        }
        Some(Self::new(out))
    }

    /// Substitutes `x -> x^2`.
    pub fn double_exponents(&self) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() * 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        Self::new(out)
    }

    pub fn display(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            match k {
                0 => out.push_str(&abs.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&abs.to_string());
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        RatPoly::new(out)
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return RatPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RatPoly::new(out)
    }
}

impl Zero for RatPoly {
    fn zero() -> Self {
        RatPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RatPoly {
    fn one() -> Self {
        RatPoly::constant(Rational::one())
    }
}

ring_boilerplate!(RatPoly);

impl Ring for RatPoly {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl ExactDiv for RatPoly {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        // monomial divisors are the common case in graded eliminations
        if let Some((c, k)) = other.as_monomial() {
            let v = self.valuation().unwrap_or(k);
            if v < k {
                return None;
            }
            let inv = c.recip();
            return Some(RatPoly::new(
                self.coeffs[k.min(self.coeffs.len())..]
                    .iter()
                    .map(|a| a * &inv)
                    .collect(),
            ));
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        let p = RatPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(RatPoly::from_ints(&[0, 0]).is_zero());
        assert_eq!(RatPoly::from_ints(&[]).degree(), None);
    }

    #[test]
    fn product_degree_is_additive() {
        let a = RatPoly::from_ints(&[1, 0, 3]);
        let b = RatPoly::from_ints(&[-2, 5]);
        assert_eq!((&a * &b).degree(), Some(3));
    }

    #[test]
    fn division_and_gcd() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = RatPoly::from_ints(&[-2, 1, 1]);
        let b = RatPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), RatPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&RatPoly::from_ints(&[-1, 1]));
        assert_eq!(q, RatPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn exact_division_by_monomial() {
        let p = RatPoly::from_ints(&[0, 0, 4, 6]);
        let m = RatPoly::monomial(rat(2), 2);
        assert_eq!(p.exact_div(&m), Some(RatPoly::from_ints(&[2, 3])));
        assert_eq!(RatPoly::from_ints(&[1, 1]).exact_div(&m), None);
    }

    #[test]
    fn halving_rejects_odd_powers() {
        let p = RatPoly::from_ints(&[1, 0, 5]);
        assert_eq!(p.halve_exponents(), Some(RatPoly::from_ints(&[1, 5])));
        assert_eq!(RatPoly::from_ints(&[0, 1]).halve_exponents(), None);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(RatPoly::from_ints(&[0, -1, 3]).display("t"), "-t + 3*t^2");
    }
}
