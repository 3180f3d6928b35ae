//! Equivariant K-theory over `Z[q, q^-1]`: restriction of line-bundle
//! monomials to fixed points, the matrix `A_K(q)`, and its determinant.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::cyclotomic::{cyclotomic_factor, cyclotomic_factor_ratio, CyclotomicFactorization, RatioFactorization};
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{is_integer, Rational};
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::ratpoly::RatPoly;
use crate::algebra::solve::{laurent_det, laurent_solve, ratfunc_to_laurent};
use crate::conf::{admissible_basis, epsilon, AdmissibleMonomial};
use crate::conventions::LabelConvention;
use crate::error::{Error, Result};
use crate::flag::principal_weights;
use crate::symgroup::permutation::{all_permutations_up_to, index_of, DEFAULT_MAX_N};
use crate::symgroup::Permutation;

/// Largest cyclotomic index searched when factoring determinants.
pub const DEFAULT_CYCLOTOMIC_BOUND: usize = 2 * DEFAULT_MAX_N;

/// `L_1^{a_1} ... L_n^{a_n}` with `0 <= a_i <= n - i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteinbergMonomial {
    exponents: Vec<u32>,
}

impl SteinbergMonomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        let n = exponents.len();
        for (i, &a) in exponents.iter().enumerate() {
            if a as usize > n - 1 - i {
                return Err(Error::InvalidInput(format!("exponent a_{} = {a} exceeds {}", i + 1, n - 1 - i)));
            }
        }
        Ok(SteinbergMonomial { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

impl fmt::Display for SteinbergMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("L{}", i + 1) } else { format!("L{}^{a}", i + 1) })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// All `n!` monomials, ordered by degree and then lexicographically.
pub fn steinberg_basis(n: usize) -> Result<Vec<SteinbergMonomial>> {
    crate::symgroup::permutation::check_size("n", n, DEFAULT_MAX_N)?;
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for i in 0..n {
        let bound = (n - 1 - i) as u32;
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=bound).map(move |a| {
                    let mut f = e.clone();
                    f.push(a);
                    f
                })
            })
            .collect();
    }
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum()).then_with(|| a.cmp(b)));
    Ok(out.into_iter().map(|exponents| SteinbergMonomial { exponents }).collect())
}

/// `q^{sum_i a_i mu_w(i)}`.
pub fn flag_k_restriction(m: &SteinbergMonomial, w: &Permutation) -> LaurentPoly {
    let mu = principal_weights(m.exponents.len());
    let e: i64 = m.exponents.iter().enumerate().map(|(i, &a)| a as i64 * mu[w.at(i)]).sum();
    LaurentPoly::q_pow(e)
}

/// `prod q^{eps(sigma, i, j)}` over the factors `H_ij`.
pub fn conf_k_restriction(m: &AdmissibleMonomial, sigma: &Permutation) -> LaurentPoly {
    let e: i64 = m.factors().iter().map(|g| epsilon(sigma, g.i, g.j)).sum();
    LaurentPoly::q_pow(e)
}

#[derive(Debug, Clone)]
pub struct KRestrictions {
    pub components: Vec<Permutation>,
    pub conf_basis: Vec<AdmissibleMonomial>,
    pub flag_basis: Vec<SteinbergMonomial>,
    pub conf: Matrix<LaurentPoly>,
    /// Rows already matched to the configuration components.
    pub flag: Matrix<LaurentPoly>,
}

pub fn k_restrictions(n: usize, label: LabelConvention) -> Result<KRestrictions> {
    let components = all_permutations_up_to(n, DEFAULT_MAX_N)?;
    let conf_basis = admissible_basis(n)?;
    let flag_basis = steinberg_basis(n)?;
    let conf_rows: Vec<Vec<LaurentPoly>> = components
        .par_iter()
        .map(|s| conf_basis.iter().map(|b| conf_k_restriction(b, s)).collect())
        .collect();
    let flag_rows: Vec<Vec<LaurentPoly>> = components
        .par_iter()
        .map(|s| {
            let w = label.fixed_flag(s);
            flag_basis.iter().map(|m| flag_k_restriction(m, &w)).collect()
        })
        .collect();
    Ok(KRestrictions {
        components,
        conf_basis,
        flag_basis,
        conf: Matrix::from_rows(conf_rows),
        flag: Matrix::from_rows(flag_rows),
    })
}

/// `f(1/q)`.
pub fn invert_q(f: &RatFunc) -> RatFunc {
    let rev = |p: &RatPoly| -> (RatPoly, usize) {
        let d = p.degree().unwrap_or(0);
        let mut c = p.coeffs().to_vec();
        c.reverse();
        (RatPoly::new(c), d)
    };
    if f.is_zero() {
        return RatFunc::zero();
    }
    let (num, dn) = rev(f.num());
    let (den, dd) = rev(f.den());
    // f(1/q) = q^{dd - dn} num_rev / den_rev
    if dd >= dn {
        RatFunc::new(num.shift(dd - dn), den)
    } else {
        RatFunc::new(num, den.shift(dn - dd))
    }
}

#[derive(Debug, Clone)]
pub struct KMatchingMatrix {
    pub n: usize,
    pub a: Matrix<RatFunc>,
    /// Entries as Laurent polynomials when every denominator is a monomial.
    pub a_laurent: Option<Matrix<LaurentPoly>>,
    /// Laurent entries with integer coefficients.
    pub integral: bool,
    pub det_conf: LaurentPoly,
    pub det_flag: LaurentPoly,
    /// `det A_K = det R_F / det R_X`.
    pub ratio: RatioFactorization,
    /// Cyclotomic indices allowed with isotropy orders measured on the
    /// rotation circle (`d <= n - 1`) and on its spin double cover
    /// (`d <= 2(n - 1)`).
    pub rotation_bound: usize,
    pub spin_bound: usize,
    /// `A_K(1/q) = A_K(q)`, forced by relabeling along the longest element.
    pub q_inversion_symmetric: bool,
}

impl KMatchingMatrix {
    pub fn is_identity(&self) -> bool {
        self.a.is_identity()
    }

    pub fn observed_indices(&self) -> Vec<usize> {
        self.ratio.indices()
    }

    pub fn within_rotation_bound(&self) -> bool {
        self.ratio.is_fully_cyclotomic() && self.observed_indices().iter().all(|&d| d <= self.rotation_bound)
    }

    pub fn within_spin_bound(&self) -> bool {
        self.ratio.is_fully_cyclotomic() && self.observed_indices().iter().all(|&d| d <= self.spin_bound)
    }
}

pub fn compute_k_matching(n: usize, label: LabelConvention) -> Result<KMatchingMatrix> {
    compute_k_matching_bounded(n, label, DEFAULT_CYCLOTOMIC_BOUND)
}

pub fn compute_k_matching_bounded(n: usize, label: LabelConvention, max_index: usize) -> Result<KMatchingMatrix> {
    let r = k_restrictions(n, label)?;
    let det_conf = laurent_det(&r.conf);
    let det_flag = laurent_det(&r.flag);
    if det_conf.is_zero() || det_flag.is_zero() {
        return Err(Error::SingularDeterminant(format!(
            "det R_X = {}, det R_F = {}",
            det_conf.display("q"),
            det_flag.display("q")
        )));
    }
    let ratio = cyclotomic_factor_ratio(&det_flag, &det_conf, max_index)?;
    let a = laurent_solve(&r.conf, &r.flag)?;
    let a_laurent = a
        .entries()
        .map(|(_, _, f)| ratfunc_to_laurent(f))
        .collect::<Option<Vec<_>>>()
        .map(|v| Matrix::new(a.rows(), a.cols(), v));
    let integral = a_laurent
        .as_ref()
        .is_some_and(|m| m.entries().all(|(_, _, p)| p.terms().all(|(_, c)| is_integer(c))));
    let q_inversion_symmetric = a.map(invert_q) == a;
    Ok(KMatchingMatrix {
        n,
        a,
        a_laurent,
        integral,
        det_conf,
        det_flag,
        ratio,
        rotation_bound: n.saturating_sub(1),
        spin_bound: 2 * n.saturating_sub(1),
        q_inversion_symmetric,
    })
}

/// Relabeling by the longest element inverts `q` in both restriction
/// matrices: `R(1/q) = P R(q)` with `(P R)(tau) = R(tau w0)`.
pub fn longest_element_relabeling_inverts_q(r: &KRestrictions) -> bool {
    let n = r.components.first().map_or(0, Permutation::len);
    let w0 = Permutation::longest(n);
    let index = index_of(&r.components);
    let rows: Vec<usize> = r.components.iter().map(|t| index[&t.compose(&w0)]).collect();
    let inv = |m: &Matrix<LaurentPoly>| m.map(LaurentPoly::invert_variable);
    inv(&r.conf) == r.conf.select_rows(&rows) && inv(&r.flag) == r.flag.select_rows(&rows)
}

#[derive(Debug, Clone)]
pub struct KFreenessReport {
    pub n: usize,
    pub det_conf: CyclotomicFactorization,
    pub det_flag: CyclotomicFactorization,
    /// Rank of each restriction matrix at `q = 1`.
    pub rank_at_one_conf: usize,
    pub rank_at_one_flag: usize,
    /// Connected components of each space (one degree-0 block).
    pub expected_rank_at_one: usize,
}

impl KFreenessReport {
    pub fn passed(&self) -> bool {
        !self.det_conf.expand().is_zero()
            && !self.det_flag.expand().is_zero()
            && self.rank_at_one_conf == self.expected_rank_at_one
            && self.rank_at_one_flag == self.expected_rank_at_one
    }
}

pub fn freeness_probe_k(n: usize) -> Result<KFreenessReport> {
    crate::symgroup::permutation::check_size("n", n, 4)?;
    let r = k_restrictions(n, LabelConvention::default())?;
    let at_one = |m: &Matrix<LaurentPoly>| m.map(|p| p.eval(&Rational::one())).rank();
    Ok(KFreenessReport {
        n,
        det_conf: cyclotomic_factor(&laurent_det(&r.conf), DEFAULT_CYCLOTOMIC_BOUND)?,
        det_flag: cyclotomic_factor(&laurent_det(&r.flag), DEFAULT_CYCLOTOMIC_BOUND)?,
        rank_at_one_conf: at_one(&r.conf),
        rank_at_one_flag: at_one(&r.flag),
        expected_rank_at_one: 1,
    })
}

/// `(value, derivative)` at `q = 1`: the expansion to first order in
/// `q = 1 + e`.
fn first_order(p: &LaurentPoly) -> (Rational, Rational) {
    p.terms().fold((Rational::zero(), Rational::zero()), |(v, d), (k, c)| {
        (v + c, d + c * Rational::from_integer(k.into()))
    })
}

#[derive(Debug, Clone)]
pub struct FirstOrderCheck {
    /// Leading terms of the classes `1, H - 1` reproduce `R_X` with `t' = e`.
    pub conf_matches: bool,
    /// Leading terms of `1, L_1 - 1` reproduce `R_F diag(1, 1/2)`.
    pub flag_matches: bool,
    /// `A_K(1)` equals `A` after the same change of basis.
    pub matching_matches: bool,
}

impl FirstOrderCheck {
    pub fn passed(&self) -> bool {
        self.conf_matches && self.flag_matches && self.matching_matches
    }
}

/// Two-point comparison between K-theory near `q = 1` and cohomology.
pub fn first_order_check_two_points() -> Result<FirstOrderCheck> {
    use crate::conventions::Conventions;
    use crate::matching::compute_matching_matrix;
    let r = k_restrictions(2, LabelConvention::default())?;
    let coh = compute_matching_matrix(2, Conventions::default())?;
    // leading coefficient of each column after subtracting 1 from the
    // positive-degree class
    let lead = |m: &Matrix<LaurentPoly>| -> Matrix<Rational> {
        Matrix::from_fn(2, 2, |i, j| {
            let (v, d) = first_order(&m[(i, j)]);
            if j == 0 {
                v
            } else {
                d
            }
        })
    };
    let values_are_one = |m: &Matrix<LaurentPoly>| (0..2).all(|i| first_order(&m[(i, 1)]).0.is_one());
    let coeffs = |m: &Matrix<RatPoly>| Matrix::from_fn(2, 2, |i, j| m[(i, j)].coeff(j));
    let half = Matrix::from_rows(vec![
        vec![Rational::one(), Rational::zero()],
        vec![Rational::zero(), Rational::new(1.into(), 2.into())],
    ]);
    let conf_matches = values_are_one(&r.conf) && lead(&r.conf) == coeffs(&coh.conf.matrix);
    let flag_rows = coh.flag.matrix.select_rows(&[0, 1]);
    let flag_matches = values_are_one(&r.flag) && lead(&r.flag) == coeffs(&flag_rows).mul(&half);
    let a_at_one = Matrix::from_fn(2, 2, |i, j| {
        let k = laurent_solve(&r.conf, &r.flag).expect("two-point solve")[(i, j)].clone();
        k.num().eval(&Rational::one()) / k.den().eval(&Rational::one())
    });
    let matching_matches = coh.a.coefficient(0).mul(&half) == a_at_one;
    Ok(FirstOrderCheck {
        conf_matches,
        flag_matches,
        matching_matches,
    })
}
