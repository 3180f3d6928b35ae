//! Sparse polynomials in `t_1, ..., t_n` over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{rat, Rational};
use crate::symgroup::Permutation;

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The variable `t_i`, one-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Total degree if homogeneous (zero polynomial has none).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `d/dt_i`, one-based.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i - 1] -= 1;
            out.add_term(f, c * rat(k as i64));
        }
        out
    }

    /// Applies `p(d/dt_1, ..., d/dt_n)`.
    pub fn apply_operator(&self, op: &MultiPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &op.terms {
            let mut d = self.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    d = d.derivative(i + 1);
                }
            }
            out = out.add(&d.scale(c));
        }
        out
    }

    /// `(sigma . h)(t) = h(t_sigma(1), ..., t_sigma(n))`.
    pub fn permute(&self, sigma: &Permutation) -> Self {
        // the monomial t^e becomes prod_i t_sigma(i)^{e_i}
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                f[sigma.at(i)] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &k) in point.iter().zip(e) {
                v *= num_traits::pow(x.clone(), k as usize);
            }
            acc += v;
        }
        acc
    }

    pub fn eval_i64(&self, point: &[i64]) -> Rational {
        let p: Vec<Rational> = point.iter().map(|&v| rat(v)).collect();
        self.eval(&p)
    }

    /// Coefficient vector against a list of monomials.
    pub fn coords(&self, monomials: &[Exponent]) -> Vec<Rational> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coords(nvars: usize, monomials: &[Exponent], v: &[Rational]) -> Self {
        Self::from_terms(nvars, monomials.iter().cloned().zip(v.iter().cloned()))
    }

    /// Leading monomial in lexicographic order.
    pub fn leading_monomial(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                .collect();
            if vars.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Monomials of total degree `d` in `n` variables, lexicographically
/// descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, d: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if cur.len() == n - 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=d).rev() {
            cur.push(k);
            rec(n, d - k, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Elementary symmetric polynomial `e_k`.
pub fn elementary(n: usize, k: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return p;
    }
    loop {
        let mut e = vec![0; n];
        for &i in &idx {
            e[i] = 1;
        }
        p.add_term(e, Rational::one());
        // next combination
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    p
}

/// Power sum `p_k`.
pub fn power_sum(n: usize, k: u32) -> MultiPoly {
    MultiPoly::from_terms(
        n,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = k;
            (e, Rational::one())
        }),
    )
}

/// `prod_{i<j} (t_i - t_j)`.
pub fn vandermonde(n: usize) -> MultiPoly {
    let mut p = MultiPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            p = p.mul(&MultiPoly::var(n, i).sub(&MultiPoly::var(n, j)));
        }
    }
    p
}
