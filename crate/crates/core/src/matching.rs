//! The matching matrix `A = R_X^{-1} R_F` between the equivariant
//! cohomologies of the configuration space and the flag manifold, and the
//! checks that surround it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::matrix::Matrix;
use crate::algebra::rational::Rational;
use crate::algebra::ratpoly::RatPoly;
use crate::algebra::smith::graded_smith_form;
use crate::algebra::solve::{as_poly_matrix, fraction_solve, graded_solve};
use crate::conf::{conf_action_matrix, conf_restriction_matrix_with, ConfRestrictionMatrix};
use crate::conventions::{Conventions, Metric};
use crate::error::{Error, Result};
use crate::flag::{
    flag_action_matrix, flag_restriction_matrix, grassmann_invariant_basis, interleaving_flag, principal_weights,
    FlagRestrictionMatrix,
};
use crate::series::{phi_psi, PoincareSeries};
use crate::symgroup::permutation::{check_size, index_of, DEFAULT_MAX_N};
use crate::symgroup::{decompose_into_irreducibles, factorial, interleavings, partitions, Interleaving, Partition, Permutation};

/// How `R_X^{-1} R_F` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveRoute {
    /// Uses column homogeneity: one solve over Q, exponents from degrees.
    #[default]
    Graded,
    /// Fraction-free elimination over Q[t'] (slower; independent check).
    Fraction,
}

#[derive(Debug, Clone)]
pub struct MatchingMatrix {
    pub n: usize,
    pub conventions: Conventions,
    /// Entries in `Q[t']`; rows follow the admissible basis, columns the
    /// harmonic basis.
    pub a: Matrix<RatPoly>,
    /// Cohomological degrees.
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
    /// `det A = det_coeff * t'^det_degree`.
    pub det_coeff: Rational,
    pub det_degree: usize,
    pub conf: ConfRestrictionMatrix,
    pub flag: FlagRestrictionMatrix,
    /// Fixed flag matched with each configuration component.
    pub matched_flags: Vec<Permutation>,
}

impl MatchingMatrix {
    pub fn det(&self) -> RatPoly {
        RatPoly::monomial(self.det_coeff.clone(), self.det_degree)
    }

    /// Largest `k` with a nonzero `A_k`.
    pub fn max_shift(&self) -> usize {
        self.a
            .entries()
            .filter_map(|(_, _, v)| v.degree())
            .max()
            .unwrap_or(0)
            / 2
    }

    /// Entries of `A` as polynomials in `u' = t'^2`.
    pub fn in_u(&self) -> Matrix<RatPoly> {
        self.a.map(|p| p.halve_exponents().expect("odd powers are rejected at construction"))
    }
}

/// `A` for the default conventions.
pub fn compute_matching_matrix(n: usize, conventions: Conventions) -> Result<MatchingMatrix> {
    compute_matching_matrix_via(n, conventions, SolveRoute::Graded)
}

pub fn compute_matching_matrix_via(n: usize, conventions: Conventions, route: SolveRoute) -> Result<MatchingMatrix> {
    check_size("n", n, DEFAULT_MAX_N)?;
    let conf = conf_restriction_matrix_with(n, conventions.lift)?;
    let matched: Vec<Permutation> = conf.components.iter().map(|c| conventions.label.fixed_flag(c)).collect();
    let flag = flag_restriction_matrix(n, conventions.metric)?;
    build(conf, flag, matched, conventions, route)
}

/// `A` for an explicit component-to-flag bijection, for instance one
/// produced by numerical calibration.
pub fn compute_matching_matrix_with_bijection(
    n: usize,
    conventions: Conventions,
    matched_flags: Vec<Permutation>,
) -> Result<MatchingMatrix> {
    check_size("n", n, DEFAULT_MAX_N)?;
    let conf = conf_restriction_matrix_with(n, conventions.lift)?;
    let flag = flag_restriction_matrix(n, conventions.metric)?;
    if matched_flags.len() != conf.components.len() {
        return Err(Error::SizeMismatch("bijection has the wrong length".into()));
    }
    build(conf, flag, matched_flags, conventions, SolveRoute::Graded)
}

fn build(
    conf: ConfRestrictionMatrix,
    flag: FlagRestrictionMatrix,
    matched_flags: Vec<Permutation>,
    conventions: Conventions,
    route: SolveRoute,
) -> Result<MatchingMatrix> {
    let index = index_of(&flag.fixed_flags);
    let rows: Vec<usize> = matched_flags
        .iter()
        .map(|w| {
            index
                .get(w)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("{w} is not a fixed flag")))
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; rows.len()];
    for &r in &rows {
        if std::mem::replace(&mut seen[r], true) {
            return Err(Error::InvalidInput("component-to-flag map is not a bijection".into()));
        }
    }
    let rf = flag.matrix.select_rows(&rows);
    let x = match route {
        SolveRoute::Graded => {
            let (cx, dx) = conf.graded_parts();
            let (cf, df) = flag.graded_parts();
            graded_solve(&cx, &dx, &cf.select_rows(&rows), &df)?
        }
        SolveRoute::Fraction => fraction_solve(&conf.matrix, &rf)?,
    };
    let a = as_poly_matrix(&x).map_err(|(row, col)| Error::NonPolynomialEntry {
        row,
        col,
        value: x[(row, col)].display("t'"),
    })?;
    let row_degrees = conf.col_degrees.clone();
    let col_degrees = flag.col_degrees.clone();
    check_degrees(&a, &row_degrees, &col_degrees)?;
    let det_degree = ((col_degrees.iter().sum::<i64>() - row_degrees.iter().sum::<i64>()) / 2) as usize;
    let det_coeff = match route {
        SolveRoute::Graded => {
            let k = Matrix::from_fn(a.rows(), a.cols(), |i, j| {
                a[(i, j)].coeff(((col_degrees[j] - row_degrees[i]).max(0) / 2) as usize)
            });
            k.det()
        }
        SolveRoute::Fraction => {
            let d = a.det();
            match d.as_monomial() {
                Some((c, k)) if k == det_degree => c,
                None if d.is_zero() => Rational::zero(),
                _ => return Err(Error::SingularDeterminant(format!("det A = {} is not c t'^{det_degree}", d.display("t'")))),
            }
        }
    };
    if det_coeff.is_zero() {
        return Err(Error::SingularDeterminant("det A = 0".into()));
    }
    Ok(MatchingMatrix {
        n: conf.n,
        conventions,
        a,
        row_degrees,
        col_degrees,
        det_coeff,
        det_degree,
        conf,
        flag,
        matched_flags,
    })
}

/// Every nonzero entry must be `c t'^e` with `2e = col - row`, `e` even.
pub fn check_degrees(a: &Matrix<RatPoly>, row_degrees: &[i64], col_degrees: &[i64]) -> Result<()> {
    for (i, j, v) in a.entries() {
        if v.is_zero() {
            continue;
        }
        let expected = (col_degrees[j] - row_degrees[i]) / 2;
        let ok = v.as_monomial().is_some_and(|(_, k)| k as i64 == expected) && (col_degrees[j] - row_degrees[i]) % 2 == 0;
        if !ok {
            return Err(Error::DegreeMismatch { row: i, col: j, expected });
        }
        if expected % 2 != 0 {
            return Err(Error::OddPowerEntry {
                row: i,
                col: j,
                value: v.display("t'"),
            });
        }
    }
    Ok(())
}

/// `A_k`: the coefficient of `t'^{2k}` (`u'^k`), lowering degree by `4k`.
pub fn extract_ak(m: &MatchingMatrix, k: usize) -> Matrix<Rational> {
    m.a.coefficient(2 * k)
}

#[derive(Debug, Clone)]
pub struct CokernelReport {
    /// Exponents `e` of the invariant factors `u'^e`.
    pub exponents: Vec<usize>,
    /// Hilbert series of the cokernel indexed by degree in `t`.
    pub series: Vec<u64>,
    pub psi: PoincareSeries,
    pub certified: bool,
}

impl CokernelReport {
    /// Cokernel series as a polynomial in `x = t^2`.
    pub fn series_in_x(&self) -> PoincareSeries {
        PoincareSeries::new(self.series.iter().step_by(2).map(|&c| BigInt::from(c)).collect())
    }

    pub fn matches_psi(&self) -> bool {
        self.series.iter().skip(1).step_by(2).all(|&c| c == 0) && self.series_in_x() == self.psi
    }

    pub fn invariant_factors(&self) -> Vec<String> {
        self.exponents
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "u'".to_string(),
                e => format!("u'^{e}"),
            })
            .collect()
    }
}

/// Graded Smith form of `A` over `Q[u']` and the comparison with `psi`.
pub fn cokernel_report(m: &MatchingMatrix) -> Result<CokernelReport> {
    let smith = graded_smith_form(&m.in_u(), &m.row_degrees, &m.col_degrees)?;
    let certified = smith.certifies(&m.in_u());
    let (_, psi) = phi_psi(m.n)?;
    let report = CokernelReport {
        exponents: smith.exponents.clone(),
        series: smith.cokernel_series(),
        psi,
        certified,
    };
    if !report.matches_psi() {
        return Err(Error::MismatchWithPsi {
            found: report.series_in_x().display(),
            expected: report.psi.display(),
        });
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct EquivarianceReport {
    pub checked: usize,
    /// `rho_X(sigma) A = A rho_F(sigma)` in `Q[t']`.
    pub full: Option<Error>,
    /// `rho_X(sigma)|_{t'=0} A_k = A_k rho_F(sigma)` for every `k`.
    pub graded: Option<Error>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.full.is_none() && self.graded.is_none()
    }
}

fn first_difference<R: crate::algebra::ring::Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Option<(usize, usize)> {
    a.entries().find(|&(i, j, v)| v != &b[(i, j)]).map(|(i, j, _)| (i, j))
}

/// Checks both equivariance statements for every `sigma` given.
pub fn equivariance_report(m: &MatchingMatrix, sigmas: &[Permutation]) -> Result<EquivarianceReport> {
    let shifts = m.max_shift();
    let aks: Vec<Matrix<Rational>> = (0..=shifts).map(|k| extract_ak(m, k)).collect();
    let results: Vec<(Option<Error>, Option<Error>)> = sigmas
        .par_iter()
        .map(|sigma| -> Result<_> {
            let rx = conf_action_matrix(sigma, &m.conf)?;
            let rf = flag_action_matrix(sigma, &m.flag.basis);
            let full = first_difference(&rx.mul(&m.a), &m.a.mul(&rf.to_poly())).map(|(row, col)| {
                Error::EquivarianceFailure {
                    sigma: sigma.to_string(),
                    row,
                    col,
                    graded: String::new(),
                }
            });
            let rx0 = rx.coefficient(0);
            let graded = aks.iter().enumerate().find_map(|(k, ak)| {
                first_difference(&rx0.mul(ak), &ak.mul(&rf)).map(|(row, col)| Error::EquivarianceFailure {
                    sigma: sigma.to_string(),
                    row,
                    col,
                    graded: format!(" in A_{k} modulo t'"),
                })
            });
            Ok((full, graded))
        })
        .collect::<Result<_>>()?;
    let full = results.iter().find_map(|r| r.0.clone());
    let graded = results.iter().find_map(|r| r.1.clone());
    Ok(EquivarianceReport {
        checked: sigmas.len(),
        full,
        graded,
    })
}

/// Whole group for `n <= 4`, adjacent transpositions otherwise; fails on
/// the first violated identity.
pub fn equivariance_audit(m: &MatchingMatrix) -> Result<EquivarianceReport> {
    let sigmas = if m.n <= 4 {
        m.conf.components.clone()
    } else {
        Permutation::adjacent_transpositions(m.n)
    };
    let report = equivariance_report(m, &sigmas)?;
    if let Some(e) = report.full.clone().or(report.graded.clone()) {
        return Err(e);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Conf,
    Flag,
}

/// A permutation with the given cycle type.
pub fn class_representative(mu: &Partition) -> Permutation {
    let n = mu.size();
    let mut images = vec![0; n];
    let mut start = 0;
    for &len in mu.parts() {
        for k in 0..len {
            images[start + k] = start + (k + 1) % len + 1;
        }
        start += len;
    }
    Permutation::from_one_line(&images).expect("cycle layout is a permutation")
}

/// Irreducible decomposition of each cohomological degree.
pub type CharacterTable = BTreeMap<i64, BTreeMap<Partition, u64>>;

pub fn graded_character_table(n: usize, side: Side, conventions: Conventions) -> Result<CharacterTable> {
    check_size("n", n, 5)?;
    let classes = partitions(n);
    let (degrees, actions): (Vec<i64>, Vec<Matrix<Rational>>) = match side {
        Side::Conf => {
            let r = conf_restriction_matrix_with(n, conventions.lift)?;
            let acts = classes
                .par_iter()
                .map(|mu| conf_action_matrix(&class_representative(mu), &r).map(|m| m.coefficient(0)))
                .collect::<Result<Vec<_>>>()?;
            (r.col_degrees.clone(), acts)
        }
        Side::Flag => {
            let f = flag_restriction_matrix(n, conventions.metric)?;
            let acts = classes
                .par_iter()
                .map(|mu| flag_action_matrix(&class_representative(mu), &f.basis))
                .collect();
            (f.col_degrees.clone(), acts)
        }
    };
    let mut table = CharacterTable::new();
    let distinct: std::collections::BTreeSet<i64> = degrees.iter().copied().collect();
    for d in distinct {
        let values: BTreeMap<Partition, Rational> = classes
            .iter()
            .zip(&actions)
            .map(|(mu, act)| {
                let tr = (0..degrees.len())
                    .filter(|&i| degrees[i] == d)
                    .fold(Rational::zero(), |acc, i| acc + &act[(i, i)]);
                (mu.clone(), tr)
            })
            .collect();
        table.insert(d, decompose_into_irreducibles(n, &values)?);
    }
    Ok(table)
}

/// Multiplicities summed over degrees.
pub fn total_multiplicities(table: &CharacterTable) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    for row in table.values() {
        for (p, m) in row {
            *out.entry(p.clone()).or_insert(0) += m;
        }
    }
    out
}

/// Square matching matrix for the Grassmannian with `r = 1`.
#[derive(Debug, Clone)]
pub struct Theorem2Matrix {
    pub n: usize,
    pub words: Vec<Interleaving>,
    /// Restrictions of `beta^k`, `beta = sum_j w_{x y_j}`.
    pub conf: Matrix<RatPoly>,
    /// Restrictions of the invariant harmonics at coset representatives.
    pub flag: Matrix<RatPoly>,
    pub a: Matrix<RatPoly>,
    pub det: RatPoly,
}

pub fn theorem2_r1_matrix(n: usize, metric: Metric) -> Result<Theorem2Matrix> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    check_size("n", n, 8)?;
    let words = interleavings(1, n - 1)?;
    let mu = principal_weights(n);
    let conf_c = Matrix::from_fn(words.len(), n, |i, k| {
        let m = words[i].x_positions()[0];
        Rational::from_integer(BigInt::from(mu[m]).pow(k as u32))
    });
    let conf_deg: Vec<usize> = (0..n).collect();
    let basis = grassmann_invariant_basis(1, n - 1, metric)?;
    let flag_deg: Vec<usize> = basis.iter().map(|h| h.degree as usize).collect();
    let flag_rows: Vec<Vec<RatPoly>> = words
        .iter()
        .map(|w| {
            let rep = interleaving_flag(w);
            basis.iter().map(|h| h.restrict(&rep)).collect()
        })
        .collect();
    let flag = Matrix::from_rows(flag_rows);
    let flag_c = Matrix::from_fn(words.len(), basis.len(), |i, j| flag[(i, j)].coeff(flag_deg[j]));
    let conf = Matrix::from_fn(words.len(), n, |i, k| RatPoly::monomial(conf_c[(i, k)].clone(), k));
    let x = graded_solve(&conf_c, &conf_deg, &flag_c, &flag_deg)?;
    let a = as_poly_matrix(&x).map_err(|(row, col)| Error::NonPolynomialEntry {
        row,
        col,
        value: x[(row, col)].display("t'"),
    })?;
    let det_degree = flag_deg.iter().sum::<usize>() as i64 - conf_deg.iter().sum::<usize>() as i64;
    let c = flag_c.det() / conf_c.det();
    if c.is_zero() {
        return Err(Error::SingularDeterminant(format!("r = 1, n = {n}")));
    }
    if det_degree != 0 {
        return Err(Error::NonConstantDeterminant(format!("degree {det_degree}")));
    }
    let det = RatPoly::constant(c);
    debug_assert_eq!(a.det(), det);
    Ok(Theorem2Matrix {
        n,
        words,
        conf,
        flag,
        a,
        det,
    })
}

/// Number of fixed components of the two-cluster configuration space and
/// the expected `n! / (r! s!)`.
pub fn grassmann_component_count(r: usize, s: usize) -> Result<(usize, BigInt)> {
    let count = interleavings(r, s)?.len();
    let expected = factorial(r + s) / (factorial(r) * factorial(s));
    Ok((count, expected))
}

/// `k`-th graded piece of a constant action on degree blocks.
pub fn degree_block(m: &Matrix<Rational>, degrees: &[i64], d: i64) -> Matrix<Rational> {
    let idx: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == d).collect();
    m.select_rows(&idx).select_cols(&idx)
}

/// Is `m` equal to the identity scaled by a unit?
pub fn is_unit_constant(p: &RatPoly) -> bool {
    p.is_constant() && !p.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::conventions::{ConfLift, LabelConvention};
    use num_traits::One;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn two_points() {
        let m = compute_matching_matrix(2, Conventions::default()).unwrap();
        assert_eq!(m.a, Matrix::from_rows(vec![vec![RatPoly::one(), RatPoly::zero()], vec![RatPoly::zero(), RatPoly::constant(rat(2))]]));
        assert_eq!(m.det_degree, 0);
        let c = cokernel_report(&m).unwrap();
        assert!(c.series.iter().all(|&v| v == 0));
    }

    #[test]
    fn three_points() {
        let m = compute_matching_matrix(3, Conventions::default()).unwrap();
        assert_eq!(m.det_degree, 2);
        assert_eq!(extract_ak(&m, 0).rank(), 5);
        let a1 = extract_ak(&m, 1);
        assert_eq!(a1.rank(), 1);
        let (i, j, _) = a1.entries().find(|(_, _, v)| !v.is_zero()).unwrap();
        assert_eq!((m.row_degrees[i], m.col_degrees[j]), (2, 6));
        assert!(extract_ak(&m, 2).is_zero());
        let c = cokernel_report(&m).unwrap();
        assert_eq!(c.exponents, vec![0, 0, 0, 0, 0, 1]);
        assert_eq!(c.series, vec![0, 0, 1]);
        assert!(c.certified);
    }

    #[test]
    fn routes_agree() {
        for lift in [ConfLift::Orthogonal, ConfLift::Product] {
            let conv = Conventions { lift, ..Default::default() };
            let g = compute_matching_matrix_via(3, conv, SolveRoute::Graded).unwrap();
            let f = compute_matching_matrix_via(3, conv, SolveRoute::Fraction).unwrap();
            assert_eq!(g.a, f.a);
            assert_eq!(g.det(), f.det());
        }
    }

    #[test]
    fn identity_labels_break_polynomiality() {
        let conv = Conventions {
            label: LabelConvention::Identity,
            ..Default::default()
        };
        assert!(compute_matching_matrix(3, conv).is_err());
    }

    #[test]
    fn equivariance_three_points() {
        let m = compute_matching_matrix(3, Conventions::default()).unwrap();
        assert!(equivariance_audit(&m).unwrap().passed());
    }

    #[test]
    fn product_lift_fails_only_the_graded_statement() {
        let conv = Conventions {
            lift: ConfLift::Product,
            ..Default::default()
        };
        let m = compute_matching_matrix(3, conv).unwrap();
        let r = equivariance_report(&m, &m.conf.components.clone()).unwrap();
        assert!(r.full.is_none());
        assert!(r.graded.is_some());
    }

    #[test]
    fn class_representatives() {
        assert_eq!(class_representative(&p(&[3, 1])).cycle_type(), p(&[3, 1]));
        assert_eq!(class_representative(&p(&[2, 2])).cycle_type(), p(&[2, 2]));
    }

    #[test]
    fn two_point_characters() {
        let t = graded_character_table(2, Side::Conf, Conventions::default()).unwrap();
        assert_eq!(t[&0], BTreeMap::from([(p(&[2]), 1)]));
        assert_eq!(t[&2], BTreeMap::from([(p(&[1, 1]), 1)]));
    }

    #[test]
    fn three_point_characters() {
        let regular = BTreeMap::from([(p(&[3]), 1), (p(&[2, 1]), 2), (p(&[1, 1, 1]), 1)]);
        for side in [Side::Conf, Side::Flag] {
            let t = graded_character_table(3, side, Conventions::default()).unwrap();
            assert_eq!(total_multiplicities(&t), regular);
        }
        let f = graded_character_table(3, Side::Flag, Conventions::default()).unwrap();
        assert_eq!(f[&6], BTreeMap::from([(p(&[1, 1, 1]), 1)]));
    }

    #[test]
    fn grassmann_r1() {
        for n in 2..=5 {
            let t = theorem2_r1_matrix(n, Metric::Apolar).unwrap();
            assert!(is_unit_constant(&t.det));
            assert_eq!(t.a.rows(), n);
        }
    }

    #[test]
    fn component_counts() {
        let (c, e) = grassmann_component_count(2, 2).unwrap();
        assert_eq!(c, 6);
        assert_eq!(BigInt::from(c), e);
    }
}
