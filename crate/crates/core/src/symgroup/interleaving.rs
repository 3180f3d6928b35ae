use std::fmt;

use crate::error::Result;

use super::permutation::check_size;

/// Largest `r + s` accepted by default.
pub const DEFAULT_MAX_INTERLEAVING: usize = 16;

/// A word in `X` and `Y`; letter `k` says which cluster owns the `k`-th point
/// from the bottom of the axis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interleaving {
    /// `true` for `X`.
    letters: Vec<bool>,
}

impl Interleaving {
    pub fn from_word(word: &str) -> Option<Self> {
        let letters = word
            .chars()
            .map(|c| match c {
                'X' => Some(true),
                'Y' => Some(false),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()?;
        Some(Interleaving { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn r(&self) -> usize {
        self.letters.iter().filter(|&&x| x).count()
    }

    pub fn s(&self) -> usize {
        self.len() - self.r()
    }

    pub fn is_x(&self, k: usize) -> bool {
        self.letters[k]
    }

    /// Zero-based axis positions of the `X` letters, bottom to top.
    pub fn x_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.letters[k]).collect()
    }

    pub fn y_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| !self.letters[k]).collect()
    }

    pub fn word(&self) -> String {
        self.letters.iter().map(|&x| if x { 'X' } else { 'Y' }).collect()
    }
}

impl fmt::Debug for Interleaving {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl fmt::Display for Interleaving {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// All words with `r` letters `X` and `s` letters `Y`, in lexicographic
/// order with `X < Y`.
pub fn interleavings(r: usize, s: usize) -> Result<Vec<Interleaving>> {
    check_size("r + s", r + s, DEFAULT_MAX_INTERLEAVING)?;
    fn rec(r: usize, s: usize, cur: &mut Vec<bool>, out: &mut Vec<Interleaving>) {
        if r == 0 && s == 0 {
            out.push(Interleaving { letters: cur.clone() });
            return;
        }
        if r > 0 {
            cur.push(true);
            rec(r - 1, s, cur, out);
            cur.pop();
        }
        if s > 0 {
            cur.push(false);
            rec(r, s - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, s, &mut Vec::new(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let w = interleavings(0, 3).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].word(), "YYY");
        let w: Vec<String> = interleavings(1, 2).unwrap().iter().map(|w| w.word()).collect();
        assert_eq!(w, vec!["XYY", "YXY", "YYX"]);
        assert_eq!(interleavings(2, 2).unwrap().len(), 6);
    }

    #[test]
    fn round_trip_words() {
        let w = Interleaving::from_word("XYXY").unwrap();
        assert_eq!(w.r(), 2);
        assert_eq!(w.x_positions(), vec![0, 2]);
        assert!(Interleaving::from_word("XZ").is_none());
    }
}
