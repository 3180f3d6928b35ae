//! Laurent polynomials over Q in one variable `q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::ratpoly::RatPoly;
use super::ring::{ring_boilerplate, Ring};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = LaurentPoly::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// `q^k`
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, e: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Writes `self = q^shift * p` with `p` an ordinary polynomial and
    /// `shift` the lowest exponent (0 for the zero polynomial).
    pub fn to_poly(&self) -> (RatPoly, i64) {
        let Some(lo) = self.min_exp() else {
            return (RatPoly::default(), 0);
        };
        let hi = self.max_exp().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (RatPoly::new(coeffs), lo)
    }

    /// `q^shift * p`
    pub fn from_poly(p: &RatPoly, shift: i64) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64 + shift, c.clone())),
        )
    }

    /// `q -> q^{-1}`
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(q.clone(), *e as usize)
            } else {
                num_traits::pow(q.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn display(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *e == 0 {
                out.push_str(&abs.to_string());
                continue;
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(var);
            if *e != 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("q"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("q"))
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::q_pow(0)
    }
}

ring_boilerplate!(LaurentPoly);

impl Ring for LaurentPoly {
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn shifts_are_exact() {
        let p = LaurentPoly::from_terms([(-1, rat(1)), (2, rat(-3))]);
        let s = p.shift(4);
        assert_eq!(s.min_exp(), Some(3));
        assert_eq!(s.coeff(6), rat(-3));
        assert_eq!(p.mul_ref(&LaurentPoly::q_pow(4)), s);
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentPoly::q_pow(-2);
        assert!(a.sub_ref(&a).is_zero());
    }

    #[test]
    fn poly_round_trip() {
        let p = LaurentPoly::from_terms([(-2, rat(5)), (1, rat(1))]);
        let (poly, shift) = p.to_poly();
        assert_eq!(shift, -2);
        assert_eq!(poly, RatPoly::from_ints(&[5, 0, 0, 1]));
        assert_eq!(LaurentPoly::from_poly(&poly, shift), p);
    }
}
