//! Exact linear solves over Q[x], Q[q, 1/q] and their fraction fields.

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::matrix::Matrix;
use super::rational::Rational;
use super::ratfunc::RatFunc;
use super::ratpoly::RatPoly;
use super::ring::ExactDiv;
use crate::error::{Error, Result};

/// Solves `m * X = b` over Q(x) with fraction-free elimination.
///
/// Forward elimination is Bareiss on the augmented matrix; back substitution
/// computes `det * X`, which is polynomial by Cramer's rule, so every
/// division along the way is exact.
pub fn fraction_solve(m: &Matrix<RatPoly>, b: &Matrix<RatPoly>) -> Result<Matrix<RatFunc>> {
    let (y, d) = scaled_solve(m, b)?;
    Ok(y.map(|p| RatFunc::new(p.clone(), d.clone())))
}

/// Returns `(Y, d)` with `m * Y = d * b`, `d = ±det(m)` and `Y` polynomial.
pub fn scaled_solve(m: &Matrix<RatPoly>, b: &Matrix<RatPoly>) -> Result<(Matrix<RatPoly>, RatPoly)> {
    if !m.is_square() || m.rows() != b.rows() {
        return Err(Error::SizeMismatch(format!(
            "solve of {}x{} against {}x{}",
            m.rows(),
            m.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = m.rows();
    let k = b.cols();
    if n == 0 {
        return Ok((Matrix::zeros(0, k), RatPoly::one()));
    }
    let mut a = m.hstack(b);
    let width = n + k;
    let mut prev = RatPoly::one();
    for p in 0..n {
        let pivot = (p..n)
            .filter(|&i| !a[(i, p)].is_zero())
            .min_by_key(|&i| a[(i, p)].num_terms())
            .ok_or(Error::SingularMatrix)?;
        a.swap_rows(pivot, p);
        let piv = a[(p, p)].clone();
        for i in p + 1..n {
            let f = a[(i, p)].clone();
            for j in p + 1..width {
                let v = &(&piv * &a[(i, j)]) - &(&f * &a[(p, j)]);
                a[(i, j)] = v.exact_div(&prev).expect("Bareiss step is exact");
            }
            a[(i, p)] = RatPoly::zero();
        }
        prev = piv;
    }
    let d = prev;
    let mut y = Matrix::<RatPoly>::zeros(n, k);
    for c in 0..k {
        for i in (0..n).rev() {
            let mut acc = &d * &a[(i, n + c)];
            for j in i + 1..n {
                if !a[(i, j)].is_zero() {
                    acc = &acc - &(&a[(i, j)] * &y[(j, c)]);
                }
            }
            y[(i, c)] = acc
                .exact_div(&a[(i, i)])
                .expect("back substitution is exact");
        }
    }
    Ok((y, d))
}

/// Splits a column-homogeneous matrix as `C * diag(x^deg_j)`.
///
/// Returns `None` if some column mixes powers; zero columns get degree 0.
pub fn split_homogeneous_columns(m: &Matrix<RatPoly>) -> Option<(Matrix<Rational>, Vec<usize>)> {
    let mut degs = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let mut deg = None;
        for i in 0..m.rows() {
            let e = &m[(i, j)];
            if e.is_zero() {
                continue;
            }
            let (_, k) = e.as_monomial()?;
            match deg {
                None => deg = Some(k),
                Some(d) if d != k => return None,
                _ => {}
            }
        }
        degs.push(deg.unwrap_or(0));
    }
    let c = Matrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].coeff(degs[j]));
    Some((c, degs))
}

/// Solves `(C_m diag(x^dm)) X = C_b diag(x^db)` entrywise:
/// `X_ij = (C_m^{-1} C_b)_ij x^{db_j - dm_i}`.
pub fn graded_solve(
    cm: &Matrix<Rational>,
    dm: &[usize],
    cb: &Matrix<Rational>,
    db: &[usize],
) -> Result<Matrix<RatFunc>> {
    let k = cm.solve(cb).ok_or(Error::SingularMatrix)?;
    Ok(Matrix::from_fn(k.rows(), k.cols(), |i, j| {
        let c = k[(i, j)].clone();
        if c.is_zero() {
            return RatFunc::zero();
        }
        let e = db[j] as i64 - dm[i] as i64;
        if e >= 0 {
            RatFunc::from_poly(RatPoly::monomial(c, e as usize))
        } else {
            RatFunc::new(RatPoly::constant(c), RatPoly::monomial(Rational::one(), (-e) as usize))
        }
    }))
}

/// Multiplies each row by the power of `q` that clears negative exponents
/// in that row of every given matrix simultaneously.
fn clear_row_shifts(ms: &[&Matrix<LaurentPoly>]) -> (Vec<Matrix<RatPoly>>, Vec<i64>) {
    let rows = ms[0].rows();
    let shifts: Vec<i64> = (0..rows)
        .map(|i| {
            ms.iter()
                .flat_map(|m| m.row(i).iter().filter_map(LaurentPoly::min_exp))
                .min()
                .map_or(0, |lo| -lo)
        })
        .collect();
    let polys = ms
        .iter()
        .map(|m| {
            Matrix::from_fn(m.rows(), m.cols(), |i, j| {
                let (p, s) = m[(i, j)].to_poly();
                p.shift((s + shifts[i]) as usize)
            })
        })
        .collect();
    (polys, shifts)
}

/// Determinant of a Laurent matrix.
pub fn laurent_det(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    let (polys, shifts) = clear_row_shifts(&[m]);
    let d = polys[0].det();
    LaurentPoly::from_poly(&d, -shifts.iter().sum::<i64>())
}

/// Solves `m * X = b` over Q(q); entries are returned as rational functions
/// in `q`.
pub fn laurent_solve(m: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>) -> Result<Matrix<RatFunc>> {
    if m.rows() != b.rows() {
        return Err(Error::SizeMismatch("row counts differ".into()));
    }
    let (polys, _) = clear_row_shifts(&[m, b]);
    fraction_solve(&polys[0], &polys[1])
}

/// `Some` iff the denominator is a monomial `c q^k`.
pub fn ratfunc_to_laurent(f: &RatFunc) -> Option<LaurentPoly> {
    let (c, k) = if f.is_zero() {
        return Some(LaurentPoly::zero());
    } else {
        f.den().as_monomial()?
    };
    let num = f.num().scale(&c.recip());
    Some(LaurentPoly::from_poly(&num, -(k as i64)))
}

/// Converts a matrix whose entries are expected to be polynomial.
pub fn as_poly_matrix(m: &Matrix<RatFunc>) -> std::result::Result<Matrix<RatPoly>, (usize, usize)> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (i, j, v) in m.entries() {
        match v.as_polynomial() {
            Some(p) => out[(i, j)] = p.clone(),
            None => return Err((i, j)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn t() -> RatPoly {
        RatPoly::x()
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = Matrix::from_rows(vec![
            vec![RatPoly::from_ints(&[1, 2]), RatPoly::zero()],
            vec![RatPoly::from_ints(&[0, 0, 3]), RatPoly::one()],
        ]);
        let x = fraction_solve(&Matrix::identity(2), &b).unwrap();
        assert_eq!(as_poly_matrix(&x).unwrap(), b);
    }

    #[test]
    fn two_by_two_hand_elimination() {
        let m = Matrix::from_rows(vec![vec![RatPoly::one(), t()], vec![RatPoly::one(), -&t()]]);
        let two_t = t().scale(&rat(2));
        let b = Matrix::from_rows(vec![
            vec![RatPoly::one(), two_t.clone()],
            vec![RatPoly::one(), -&two_t],
        ]);
        let x = as_poly_matrix(&fraction_solve(&m, &b).unwrap()).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![RatPoly::one(), RatPoly::zero()],
            vec![RatPoly::zero(), RatPoly::constant(rat(2))],
        ]);
        assert_eq!(x, expected);
    }

    #[test]
    fn diagonal_inverse_has_denominator() {
        let m = Matrix::from_rows(vec![
            vec![t(), RatPoly::zero()],
            vec![RatPoly::zero(), RatPoly::one()],
        ]);
        let x = fraction_solve(&m, &Matrix::identity(2)).unwrap();
        assert_eq!(x[(0, 0)], RatFunc::new(RatPoly::one(), t()));
        assert!(x[(1, 1)].is_one());
    }

    #[test]
    fn singular_input_is_reported() {
        let m = Matrix::from_rows(vec![vec![t(), t()], vec![t(), t()]]);
        assert!(matches!(
            fraction_solve(&m, &Matrix::identity(2)),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn graded_and_fraction_solves_agree() {
        let m = Matrix::from_rows(vec![vec![RatPoly::one(), t()], vec![RatPoly::one(), -&t()]]);
        let b = Matrix::from_rows(vec![
            vec![RatPoly::one(), RatPoly::monomial(rat(3), 2)],
            vec![RatPoly::one(), RatPoly::monomial(rat(5), 2)],
        ]);
        let (cm, dm) = split_homogeneous_columns(&m).unwrap();
        let (cb, db) = split_homogeneous_columns(&b).unwrap();
        assert_eq!(
            graded_solve(&cm, &dm, &cb, &db).unwrap(),
            fraction_solve(&m, &b).unwrap()
        );
    }

    #[test]
    fn laurent_solve_and_det() {
        let q = LaurentPoly::q_pow(1);
        let qi = LaurentPoly::q_pow(-1);
        let one = LaurentPoly::one();
        let m = Matrix::from_rows(vec![vec![one.clone(), q.clone()], vec![one, qi]]);
        let x = laurent_solve(&m, &m).unwrap();
        assert!(x.is_identity());
        let det = laurent_det(&m);
        assert_eq!(
            det,
            LaurentPoly::from_terms([(-1, rat(1)), (1, rat(-1))])
        );
    }

    #[test]
    fn laurent_conversion() {
        let f = RatFunc::new(RatPoly::from_ints(&[1, 0, 1]), RatPoly::monomial(rat(2), 1));
        let l = ratfunc_to_laurent(&f).unwrap();
        assert_eq!(l.coeff(-1), crate::algebra::rational::ratio(1, 2));
        assert_eq!(l.coeff(1), crate::algebra::rational::ratio(1, 2));
        let g = RatFunc::new(RatPoly::one(), RatPoly::from_ints(&[1, 1]));
        assert!(ratfunc_to_laurent(&g).is_none());
    }
}
