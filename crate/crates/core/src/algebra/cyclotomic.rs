//! Cyclotomic polynomials and factorization of Laurent polynomials.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::Rational;
use super::ratpoly::RatPoly;
use crate::error::{Error, Result};

/// The `d`-th cyclotomic polynomial, via `x^d - 1 = prod_{e | d} Phi_e`.
pub fn cyclotomic(d: usize) -> RatPoly {
    assert!(d >= 1, "cyclotomic index starts at 1");
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[0] = -Rational::one();
    coeffs[d] = Rational::one();
    let mut p = RatPoly::new(coeffs);
    for e in 1..d {
        if d % e == 0 {
            let (q, r) = p.div_rem(&cyclotomic(e));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// `p = unit * q^shift * prod Phi_d^{m_d} * remainder`, remainder monic with
/// no cyclotomic factor of index up to the search bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclotomicFactorization {
    pub unit: Rational,
    pub shift: i64,
    pub factors: BTreeMap<usize, u32>,
    pub remainder: RatPoly,
}

impl CyclotomicFactorization {
    pub fn expand(&self) -> LaurentPoly {
        let mut p = self.remainder.scale(&self.unit);
        for (&d, &m) in &self.factors {
            let phi = cyclotomic(d);
            for _ in 0..m {
                p = &p * &phi;
            }
        }
        LaurentPoly::from_poly(&p, self.shift)
    }

    pub fn is_fully_cyclotomic(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.factors.keys().copied().collect()
    }
}

/// Trial division by `Phi_d` for `1 <= d <= max_index`.
pub fn cyclotomic_factor(p: &LaurentPoly, max_index: usize) -> Result<CyclotomicFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (poly, shift) = p.to_poly();
    let unit = poly.leading().unwrap().clone();
    let mut rest = poly.monic();
    let mut factors = BTreeMap::new();
    for d in 1..=max_index {
        if rest.degree() == Some(0) {
            break;
        }
        let phi = cyclotomic(d);
        if phi.degree() > rest.degree() {
            continue;
        }
        loop {
            let (q, r) = rest.div_rem(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            *factors.entry(d).or_insert(0) += 1;
        }
    }
    Ok(CyclotomicFactorization {
        unit,
        shift,
        factors,
        remainder: rest,
    })
}

/// Factorization of a quotient `num / den` with signed multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioFactorization {
    pub unit: Rational,
    pub shift: i64,
    pub factors: BTreeMap<usize, i64>,
    pub remainder_num: RatPoly,
    pub remainder_den: RatPoly,
}

impl RatioFactorization {
    pub fn is_fully_cyclotomic(&self) -> bool {
        self.remainder_num == self.remainder_den
    }

    pub fn indices(&self) -> Vec<usize> {
        self.factors
            .iter()
            .filter(|(_, &m)| m != 0)
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn display(&self) -> String {
        let mut parts = vec![format!("{}", self.unit)];
        if self.shift != 0 {
            parts.push(format!("q^{}", self.shift));
        }
        for (d, m) in &self.factors {
            if *m != 0 {
                parts.push(format!("Phi{d}^{m}"));
            }
        }
        if !self.is_fully_cyclotomic() {
            parts.push(format!(
                "({}) / ({})",
                self.remainder_num.display("q"),
                self.remainder_den.display("q")
            ));
        }
        parts.join(" * ")
    }
}

pub fn cyclotomic_factor_ratio(num: &LaurentPoly, den: &LaurentPoly, max_index: usize) -> Result<RatioFactorization> {
    let a = cyclotomic_factor(num, max_index)?;
    let b = cyclotomic_factor(den, max_index)?;
    let mut factors: BTreeMap<usize, i64> = BTreeMap::new();
    for (&d, &m) in &a.factors {
        *factors.entry(d).or_insert(0) += m as i64;
    }
    for (&d, &m) in &b.factors {
        *factors.entry(d).or_insert(0) -= m as i64;
    }
    factors.retain(|_, m| *m != 0);
    let g = a.remainder.gcd(&b.remainder);
    Ok(RatioFactorization {
        unit: a.unit / b.unit,
        shift: a.shift - b.shift,
        factors,
        remainder_num: a.remainder.div_rem(&g).0,
        remainder_den: b.remainder.div_rem(&g).0,
    })
}
