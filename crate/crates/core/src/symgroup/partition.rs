use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the centralizer order.
    pub fn centralizer_order(&self) -> BigInt {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
        }
        let mut z = BigInt::one();
        for (part, m) in counts {
            for k in 1..=m {
                z *= BigInt::from(part) * BigInt::from(k);
            }
        }
        z
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.centralizer_order()
    }

    pub fn conjugate(&self) -> Partition {
        let len = self.parts.first().copied().unwrap_or(0);
        Partition::new((1..=len).map(|k| self.parts.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// Dimension of the irreducible representation, by the hook length formula.
    pub fn dimension(&self) -> BigInt {
        let conj = self.conjugate();
        let mut hooks = BigInt::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j] - i - 1;
                hooks *= BigInt::from(arm + leg + 1);
            }
        }
        factorial(self.size()) / hooks
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

type CharKey = (Vec<usize>, Vec<usize>);

fn cache() -> &'static Mutex<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `chi^lambda` on the class of cycle type `mu` (Murnaghan-Nakayama).
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "|{lambda}| = {} but |{mu}| = {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(rat(mn(&lambda.parts, &mu.parts)))
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = cache().lock().unwrap().get(&key) {
        return v;
    }
    let k = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    // beta numbers: distinct, decreasing
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let crossed = beta.iter().filter(|&&c| c > target && c < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn(&shape, rest);
    }
    cache().lock().unwrap().insert(key, total);
    total
}

/// Multiplicities `<chi, chi^lambda>` of a class function given on every
/// cycle type of `S_n`.
pub fn decompose_into_irreducibles(
    n: usize,
    char_values: &BTreeMap<Partition, Rational>,
) -> Result<BTreeMap<Partition, u64>> {
    let classes = partitions(n);
    for mu in &classes {
        if !char_values.contains_key(mu) {
            return Err(Error::InvalidInput(format!("character value missing on class {mu}")));
        }
    }
    let order = Rational::from_integer(factorial(n));
    let mut out = BTreeMap::new();
    for lambda in &classes {
        let mut acc = Rational::zero();
        for mu in &classes {
            let chi = irreducible_character(lambda, mu)?;
            acc += Rational::from_integer(mu.class_size()) * &char_values[mu] * chi;
        }
        let m = acc / &order;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::NonIntegralMultiplicity {
                partition: lambda.to_string(),
                value: m.to_string(),
            });
        }
        let m = m.to_integer().to_u64().expect("multiplicity fits in u64");
        if m > 0 {
            out.insert(lambda.clone(), m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3)[0], p(&[3]));
        assert_eq!(partitions(3)[2], p(&[1, 1, 1]));
    }

    #[test]
    fn trivial_and_sign_characters() {
        for mu in partitions(4) {
            assert_eq!(irreducible_character(&p(&[4]), &mu).unwrap(), rat(1));
        }
        let sign = p(&[1, 1, 1, 1]);
        assert_eq!(irreducible_character(&sign, &p(&[1, 1, 1, 1])).unwrap(), rat(1));
        assert_eq!(irreducible_character(&sign, &p(&[2, 1, 1])).unwrap(), rat(-1));
    }

    #[test]
    fn s3_table() {
        let std = p(&[2, 1]);
        assert_eq!(irreducible_character(&std, &p(&[1, 1, 1])).unwrap(), rat(2));
        assert_eq!(irreducible_character(&std, &p(&[2, 1])).unwrap(), rat(0));
        assert_eq!(irreducible_character(&std, &p(&[3])).unwrap(), rat(-1));
    }

    #[test]
    fn dimension_matches_character_at_identity() {
        for n in 1..=6 {
            let id = p(&vec![1; n]);
            for l in partitions(n) {
                assert_eq!(irreducible_character(&l, &id).unwrap(), Rational::from_integer(l.dimension()));
            }
        }
    }

    #[test]
    fn mismatched_sizes() {
        assert!(matches!(
            irreducible_character(&p(&[2]), &p(&[1, 1, 1])),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn trivial_character_decomposes() {
        let values: BTreeMap<_, _> = partitions(4).into_iter().map(|m| (m, rat(1))).collect();
        let d = decompose_into_irreducibles(4, &values).unwrap();
        assert_eq!(d, BTreeMap::from([(p(&[4]), 1)]));
    }

    #[test]
    fn non_characters_are_flagged() {
        let mut values: BTreeMap<_, _> = partitions(3).into_iter().map(|m| (m, rat(0))).collect();
        values.insert(p(&[1, 1, 1]), rat(1));
        assert!(matches!(
            decompose_into_irreducibles(3, &values),
            Err(Error::NonIntegralMultiplicity { .. })
        ));
    }
}
