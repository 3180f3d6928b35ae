//! Smith normal form over Q[u] for graded matrices.
//!
//! A matrix is graded when rows and columns carry degrees and every nonzero
//! entry `(i, j)` is a single monomial `c u^e` with `4e = col_deg[j] - row_deg[i]`
//! (`u` has degree 4). Elimination then never leaves the space of monomial
//! entries, so it runs on the constant coefficients while the exponents are
//! recovered from the degree bookkeeping.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use super::ratpoly::RatPoly;
use crate::error::{Error, Result};

/// Degree of the variable `u`.
pub const U_DEGREE: i64 = 4;

#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Exponent `e_k` of the invariant factor `u^{e_k}`, nondecreasing.
    pub exponents: Vec<usize>,
    /// `u * m * v = diagonal(u^{e_k})`.
    pub u: Matrix<RatPoly>,
    pub v: Matrix<RatPoly>,
    /// Degree of the target basis vector carrying the `k`-th factor.
    pub row_degrees: Vec<i64>,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<RatPoly> {
        self.exponents
            .iter()
            .map(|&e| RatPoly::monomial(Rational::one(), e))
            .collect()
    }

    pub fn diagonal(&self) -> Matrix<RatPoly> {
        let n = self.exponents.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                RatPoly::monomial(Rational::one(), self.exponents[i])
            } else {
                RatPoly::zero()
            }
        })
    }

    /// Hilbert series of the cokernel, as coefficients indexed by degree.
    pub fn cokernel_series(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            for s in 0..e as i64 {
                let deg = (self.row_degrees[k] + U_DEGREE * s) as usize;
                if out.len() <= deg {
                    out.resize(deg + 1, 0);
                }
                out[deg] += 1;
            }
        }
        out
    }

    /// Checks `u * m * v == diagonal` exactly.
    pub fn certifies(&self, m: &Matrix<RatPoly>) -> bool {
        self.u.mul(m).mul(&self.v) == self.diagonal()
    }
}

/// Smith form of a square graded matrix over Q[u].
pub fn graded_smith_form(m: &Matrix<RatPoly>, row_deg: &[i64], col_deg: &[i64]) -> Result<SmithForm> {
    let n = m.rows();
    if !m.is_square() || row_deg.len() != n || col_deg.len() != n {
        return Err(Error::SizeMismatch("graded Smith form needs a square matrix with matching degree lists".into()));
    }
    let mut c = Matrix::<Rational>::zeros(n, n);
    for (i, j, v) in m.entries() {
        if v.is_zero() {
            continue;
        }
        let gap = col_deg[j] - row_deg[i];
        let ok = gap >= 0 && gap % U_DEGREE == 0 && v.as_monomial().map(|(_, k)| k as i64) == Some(gap / U_DEGREE);
        if !ok {
            return Err(Error::DegreeMismatch { row: i, col: j, expected: gap });
        }
        c[(i, j)] = v.coeff((gap / U_DEGREE) as usize);
    }

    // current row/column degrees, permuted alongside the matrix
    let mut rd = row_deg.to_vec();
    let mut cd = col_deg.to_vec();
    let mut uc = Matrix::<Rational>::identity(n);
    let mut vc = Matrix::<Rational>::identity(n);
    let mut exponents = Vec::with_capacity(n);

    for p in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in p..n {
            for j in p..n {
                if !c[(i, j)].is_zero() {
                    let gap = cd[j] - rd[i];
                    if best.is_none_or(|(g, _, _)| gap < g) {
                        best = Some((gap, i, j));
                    }
                }
            }
        }
        let (gap, pi, pj) = best.ok_or(Error::SingularMatrix)?;
        c.swap_rows(p, pi);
        uc.swap_rows(p, pi);
        rd.swap(p, pi);
        swap_cols(&mut c, p, pj);
        swap_cols(&mut vc, p, pj);
        cd.swap(p, pj);

        let inv = c[(p, p)].recip();
        for i in p + 1..n {
            if c[(i, p)].is_zero() {
                continue;
            }
            let f = &c[(i, p)] * &inv;
            for j in p..n {
                if !c[(p, j)].is_zero() {
                    let v = &c[(i, j)] - &f * &c[(p, j)];
                    c[(i, j)] = v;
                }
            }
            for j in 0..n {
                if !uc[(p, j)].is_zero() {
                    let v = &uc[(i, j)] - &f * &uc[(p, j)];
                    uc[(i, j)] = v;
                }
            }
        }
        for j in p + 1..n {
            if c[(p, j)].is_zero() {
                continue;
            }
            let f = &c[(p, j)] * &inv;
            c[(p, j)] = Rational::zero();
            for i in 0..n {
                if !vc[(i, p)].is_zero() {
                    let v = &vc[(i, j)] - &f * &vc[(i, p)];
                    vc[(i, j)] = v;
                }
            }
        }
        for j in 0..n {
            let v = &uc[(p, j)] * &inv;
            uc[(p, j)] = v;
        }
        c[(p, p)] = Rational::one();
        exponents.push((gap / U_DEGREE) as usize);
    }

    // U maps original rows to current rows, V original columns to current ones
    let u = lift(&uc, |a, b| row_deg[b] - rd[a])?;
    let v = lift(&vc, |a, b| cd[b] - col_deg[a])?;
    Ok(SmithForm {
        exponents,
        u,
        v,
        row_degrees: rd,
    })
}

fn swap_cols(m: &mut Matrix<Rational>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let tmp = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = tmp;
    }
}

fn lift(c: &Matrix<Rational>, gap: impl Fn(usize, usize) -> i64) -> Result<Matrix<RatPoly>> {
    let mut out = Matrix::<RatPoly>::zeros(c.rows(), c.cols());
    for (i, j, v) in c.entries() {
        if v.is_zero() {
            continue;
        }
        let g = gap(i, j);
        if g < 0 || g % U_DEGREE != 0 {
            return Err(Error::DegreeMismatch { row: i, col: j, expected: g });
        }
        out[(i, j)] = RatPoly::monomial(v.clone(), (g / U_DEGREE) as usize);
    }
    Ok(out)
}

/// Determinant of a certificate, expected to be a nonzero constant.
pub fn certificate_det_is_unit(m: &Matrix<RatPoly>) -> bool {
    let d = m.det();
    d.is_constant() && !d.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn u(c: i64, e: usize) -> RatPoly {
        RatPoly::monomial(rat(c), e)
    }

    #[test]
    fn identity_has_unit_factors() {
        let m = Matrix::<RatPoly>::identity(3);
        let s = graded_smith_form(&m, &[0, 2, 4], &[0, 2, 4]).unwrap();
        assert_eq!(s.exponents, vec![0, 0, 0]);
        assert!(s.certifies(&m));
        assert!(s.cokernel_series().iter().all(|&c| c == 0));
    }

    #[test]
    fn diagonal_u() {
        let m = Matrix::from_rows(vec![vec![u(1, 0), RatPoly::zero()], vec![RatPoly::zero(), u(1, 1)]]);
        let s = graded_smith_form(&m, &[0, 0], &[0, 4]).unwrap();
        assert_eq!(s.exponents, vec![0, 1]);
        assert!(s.certifies(&m));
        assert_eq!(s.cokernel_series(), vec![1]);
    }

    #[test]
    fn mixed_graded_matrix() {
        // rows in degrees (0, 2, 2), columns in degrees (0, 2, 6)
        let m = Matrix::from_rows(vec![
            vec![u(2, 0), RatPoly::zero(), RatPoly::zero()],
            vec![RatPoly::zero(), u(1, 0), u(-1, 1)],
            vec![RatPoly::zero(), u(1, 0), u(5, 1)],
        ]);
        let s = graded_smith_form(&m, &[0, 2, 2], &[0, 2, 6]).unwrap();
        assert_eq!(s.exponents, vec![0, 0, 1]);
        assert!(s.certifies(&m));
        assert!(certificate_det_is_unit(&s.u));
        assert!(certificate_det_is_unit(&s.v));
        assert_eq!(s.cokernel_series(), vec![0, 0, 1]);
    }

    #[test]
    fn degree_violations_are_rejected() {
        let m = Matrix::from_rows(vec![vec![u(1, 1)]]);
        assert!(matches!(
            graded_smith_form(&m, &[0], &[0]),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
