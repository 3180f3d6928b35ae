//! Poincaré polynomials of the configuration space, the flag manifold and
//! two-block Grassmannians, and the difference series `phi = (1 - t^4) psi`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symgroup::permutation::check_size;

pub const MAX_SERIES_N: usize = 30;

/// Integer polynomial in `x = t^2`; `coeffs[k]` multiplies `t^{2k}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PoincareSeries {
    coeffs: Vec<BigInt>,
}

impl PoincareSeries {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PoincareSeries { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^{2k}`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// Exact division by `1 - x^2` (that is, `1 - t^4`).
    pub fn div_one_minus_x2(&self) -> Option<Self> {
        let c = &self.coeffs;
        if c.is_empty() {
            return Some(Self::default());
        }
        if c.len() < 3 {
            return None;
        }
        let m = c.len() - 2;
        let mut q = vec![BigInt::zero(); m];
        for k in 0..m {
            q[k] = &c[k] + if k >= 2 { q[k - 2].clone() } else { BigInt::zero() };
        }
        // the top two coefficients must match -q[m-2], -q[m-1]
        for k in m..c.len() {
            let expect = if k >= 2 { -q[k - 2].clone() } else { BigInt::zero() };
            if c[k] != expect {
                return None;
            }
        }
        Some(Self::new(q))
    }

    /// Coefficients indexed by the degree in `t`.
    pub fn t_coeffs(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        out
    }

    pub fn display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
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
            match (k, abs.is_one()) {
                (0, _) => out.push_str(&abs.to_string()),
                (1, true) => out.push_str("t^2"),
                (_, true) => out.push_str(&format!("t^{}", 2 * k)),
                (_, false) => out.push_str(&format!("{abs}t^{}", 2 * k)),
            }
        }
        out
    }
}

impl fmt::Debug for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// `prod_{k=1}^{n-1} (1 + k t^2)`
pub fn poincare_conf(n: usize) -> Result<PoincareSeries> {
    check_size("n", n, MAX_SERIES_N)?;
    Ok((1..n.max(1)).fold(PoincareSeries::from_ints(&[1]), |acc, k| {
        acc.mul(&PoincareSeries::from_ints(&[1, k as i64]))
    }))
}

/// `prod_{k=1}^{n-1} (1 + t^2 + ... + t^{2k})`
pub fn poincare_flag(n: usize) -> Result<PoincareSeries> {
    check_size("n", n, MAX_SERIES_N)?;
    Ok((1..n.max(1)).fold(PoincareSeries::from_ints(&[1]), |acc, k| {
        acc.mul(&PoincareSeries::from_ints(&vec![1; k + 1]))
    }))
}

/// Gaussian binomial `[r + s choose r]` in `x = t^2`.
pub fn poincare_grassmann(r: usize, s: usize) -> Result<PoincareSeries> {
    check_size("r + s", r + s, MAX_SERIES_N)?;
    // Pascal recursion [n, k] = [n-1, k-1] + x^k [n-1, k]
    let n = r + s;
    let mut row: Vec<PoincareSeries> = vec![PoincareSeries::from_ints(&[1])];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let a = if k >= 1 { row[k - 1].clone() } else { PoincareSeries::default() };
            let b = if k < m {
                let mut c = vec![BigInt::zero(); k];
                c.extend(row[k].coeffs.iter().cloned());
                PoincareSeries::new(c)
            } else {
                PoincareSeries::default()
            };
            let n = a.coeffs.len().max(b.coeffs.len());
            next.push(PoincareSeries::new((0..n).map(|i| a.coeff(i) + b.coeff(i)).collect()));
        }
        row = next;
    }
    Ok(row[r].clone())
}

/// `phi = P_conf - P_flag` and `psi = phi / (1 - t^4)`.
pub fn phi_psi(n: usize) -> Result<(PoincareSeries, PoincareSeries)> {
    let phi = poincare_conf(n)?.sub(&poincare_flag(n)?);
    let psi = phi
        .div_one_minus_x2()
        .ok_or_else(|| Error::DivisionFailure(format!("phi({n}) = {phi} is not divisible by 1 - t^4")))?;
    Ok((phi, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::partition::factorial;

    #[test]
    fn displays_for_three_points() {
        assert_eq!(poincare_conf(3).unwrap(), PoincareSeries::from_ints(&[1, 3, 2]));
        assert_eq!(poincare_flag(3).unwrap(), PoincareSeries::from_ints(&[1, 2, 2, 1]));
        assert_eq!(poincare_conf(3).unwrap().display(), "1 + 3t^2 + 2t^4");
    }

    #[test]
    fn phi_psi_small() {
        let (phi, psi) = phi_psi(2).unwrap();
        assert!(phi.is_zero() && psi.is_zero());
        let (phi, psi) = phi_psi(3).unwrap();
        assert_eq!(phi, PoincareSeries::from_ints(&[0, 1, 0, -1]));
        assert_eq!(psi, PoincareSeries::from_ints(&[0, 1]));
    }

    #[test]
    fn psi_four_points() {
        let (_, psi) = phi_psi(4).unwrap();
        assert_eq!(psi, PoincareSeries::from_ints(&[0, 3, 6, 3, 1]));
    }

    #[test]
    fn values_at_one_are_factorials() {
        for n in 1..=12 {
            assert_eq!(poincare_conf(n).unwrap().at_one(), factorial(n));
            assert_eq!(poincare_flag(n).unwrap().at_one(), factorial(n));
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(poincare_grassmann(1, 2).unwrap(), PoincareSeries::from_ints(&[1, 1, 1]));
        assert_eq!(poincare_grassmann(2, 2).unwrap(), PoincareSeries::from_ints(&[1, 1, 2, 1, 1]));
        assert_eq!(poincare_grassmann(0, 4).unwrap(), PoincareSeries::from_ints(&[1]));
    }

    #[test]
    fn non_divisible_input_is_detected() {
        assert!(PoincareSeries::from_ints(&[1, 0, 0]).div_one_minus_x2().is_none());
        assert!(PoincareSeries::from_ints(&[1, 1, -1]).div_one_minus_x2().is_none());
        assert!(PoincareSeries::from_ints(&[1]).div_one_minus_x2().is_none());
    }

    #[test]
    fn size_limit() {
        assert!(matches!(poincare_conf(31), Err(Error::SizeLimit { .. })));
    }
}
