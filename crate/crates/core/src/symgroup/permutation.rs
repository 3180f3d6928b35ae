use std::fmt;

use crate::error::{Error, Result};

use super::partition::Partition;

/// Largest `n` accepted by default by the enumeration routines.
pub const DEFAULT_MAX_N: usize = 6;

/// A permutation of `{1..n}` in one-line notation.
///
/// Stored zero-based; `image(i)` and the display are one-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from one-based images, e.g. `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|v| v - 1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// One-based image of the one-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// Zero-based image of the zero-based point `i`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.len()];
        let mut s = 1;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.len()];
        let mut parts = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// Transposition of the one-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    /// Adjacent transpositions `(1 2), (2 3), ...`.
    pub fn adjacent_transpositions(n: usize) -> Vec<Self> {
        (1..n).map(|i| Self::transposition(n, i, i + 1)).collect()
    }

    /// Longest element `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn check_size(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::SizeLimit { what, value: n, max })
    } else {
        Ok(())
    }
}

/// All permutations of `{1..n}` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    all_permutations_up_to(n, DEFAULT_MAX_N)
}

pub fn all_permutations_up_to(n: usize, max: usize) -> Result<Vec<Permutation>> {
    check_size("n", n, max)?;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Position of each permutation in the canonical order.
pub fn index_of(perms: &[Permutation]) -> std::collections::HashMap<Permutation, usize> {
    perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}
