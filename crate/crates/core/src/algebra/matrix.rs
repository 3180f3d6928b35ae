//! Dense row-major matrices over a [`Ring`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::rational::Rational;
use super::ratpoly::RatPoly;
use super::ring::{ExactDiv, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type PolyMatrix = Matrix<RatPoly>;

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row `i` of the result is row `source[i]` of `self`.
    pub fn select_rows(&self, source: &[usize]) -> Self {
        let mut data = Vec::with_capacity(source.len() * self.cols);
        for &s in source {
            data.extend_from_slice(self.row(s));
        }
        Matrix {
            rows: source.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, source: &[usize]) -> Self {
        Self::from_fn(self.rows, source.len(), |i, j| self[(i, source[j])].clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .entries()
                .all(|(i, j, v)| if i == j { v.is_one() } else { v.is_zero() })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    /// Matrix product; rows of the result are computed in parallel.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let cols = other.cols;
        let data: Vec<R> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let left = self.row(i);
                (0..cols).map(move |j| {
                    let mut acc = R::zero();
                    for (k, a) in left.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let b = &other[(k, j)];
                        if !b.is_zero() {
                            acc = acc.add_ref(&a.mul_ref(b));
                        }
                    }
                    acc
                })
            })
            .collect();
        Matrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.add_ref(&self[(i, i)]))
    }
}

impl<R: ExactDiv> Matrix<R> {
    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut prev = R::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return R::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(k, k)]
                        .mul_ref(&a[(i, j)])
                        .sub_ref(&a[(i, k)].mul_ref(&a[(k, j)]));
                    a[(i, j)] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = R::zero();
            }
            prev = a[(k, k)].clone();
        }
        if negate {
            prev.neg_ref()
        } else {
            prev
        }
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix<RatPoly> {
    /// Substitutes a value for the variable in every entry.
    pub fn eval(&self, x: &Rational) -> Matrix<Rational> {
        self.map(|p| p.eval(x))
    }

    /// Coefficient of `x^k` in every entry.
    pub fn coefficient(&self, k: usize) -> Matrix<Rational> {
        self.map(|p| p.coeff(k))
    }
}

/// Result of Gauss-Jordan elimination over Q.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix<Rational>,
    pub pivots: Vec<usize>,
}

impl Matrix<Rational> {
    pub fn to_poly(&self) -> Matrix<RatPoly> {
        self.map(|c| RatPoly::constant(c.clone()))
    }

    /// Reduced row echelon form; pivot columns are listed in order.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            let pivot_row: Vec<(usize, Rational)> = (c..a.cols)
                .filter(|&j| !a[(r, j)].is_zero())
                .map(|j| (j, a[(r, j)].clone()))
                .collect();
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for (j, v) in &pivot_row {
                    let w = &a[(i, *j)] - &f * v;
                    a[(i, *j)] = w;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &Matrix<Rational>) -> Option<Matrix<Rational>> {
        assert!(self.is_square());
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let aug = self.hstack(rhs).rref();
        if aug.pivots.len() < n || aug.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, rhs.cols, |i, j| {
            aug.matrix[(i, n + j)].clone()
        }))
    }

    pub fn inverse(&self) -> Option<Matrix<Rational>> {
        self.solve(&Matrix::identity(self.rows))
    }
}
