//! Configuration space side: admissible monomials, equivariant lifts and
//! their restrictions to the fixed components `C_n(R^1)`.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{rat, Rational};
use crate::algebra::ratpoly::RatPoly;
use crate::algebra::solve::{as_poly_matrix, graded_solve, split_homogeneous_columns};
use crate::conventions::ConfLift;
use crate::error::{Error, Result};
use crate::symgroup::permutation::{all_permutations_up_to, check_size, DEFAULT_MAX_N};
use crate::symgroup::Permutation;

/// The degree-2 class `w_ij`, stored with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    pub i: usize,
    pub j: usize,
}

impl Generator {
    /// `w_ab` as `(sign, generator)`, using `w_ba = -w_ab`.
    pub fn oriented(a: usize, b: usize) -> (i64, Generator) {
        assert_ne!(a, b, "w_ii is not defined");
        if a < b {
            (1, Generator { i: a, j: b })
        } else {
            (-1, Generator { i: b, j: a })
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}{}", self.i, self.j)
    }
}

/// Square-free product of generators with strictly increasing second indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct AdmissibleMonomial {
    factors: Vec<Generator>,
}

impl AdmissibleMonomial {
    pub fn new(factors: Vec<Generator>) -> Result<Self> {
        let ok = factors.iter().all(|g| g.i < g.j && g.i >= 1)
            && factors.windows(2).all(|w| w[0].j < w[1].j);
        if !ok {
            return Err(Error::InvalidInput(format!("{factors:?} is not admissible")));
        }
        Ok(AdmissibleMonomial { factors })
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    /// Number of factors; the cohomological degree is twice this.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        2 * self.factors.len()
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

/// All admissible monomials, ordered by degree and then factor list.
pub fn admissible_basis(n: usize) -> Result<Vec<AdmissibleMonomial>> {
    check_size("n", n, DEFAULT_MAX_N)?;
    let mut out = vec![AdmissibleMonomial::default()];
    for j in 2..=n {
        let mut next = Vec::with_capacity(out.len() * j);
        for m in &out {
            next.push(m.clone());
            for i in 1..j {
                let mut f = m.factors.clone();
                f.push(Generator { i, j });
                next.push(AdmissibleMonomial { factors: f });
            }
        }
        out = next;
    }
    out.sort_by(|a, b| (a.len(), &a.factors).cmp(&(b.len(), &b.factors)));
    Ok(out)
}

/// `+1` iff point `i` lies below point `j` on the component labelled `sigma`.
pub fn epsilon(sigma: &Permutation, i: usize, j: usize) -> i64 {
    assert_ne!(i, j);
    let inv = sigma.inverse();
    if inv.image(i) < inv.image(j) {
        1
    } else {
        -1
    }
}

/// Sign pattern `prod eps` of a product of generators on one component.
fn sign_pattern(positions: &[usize], gens: &[Generator]) -> i64 {
    gens.iter()
        .map(|g| if positions[g.i - 1] < positions[g.j - 1] { 1 } else { -1 })
        .product()
}

fn positions(sigma: &Permutation) -> Vec<usize> {
    sigma.inverse().one_line()
}

/// Restriction of the product lift of `b` to the component `sigma`.
pub fn restrict_monomial(b: &AdmissibleMonomial, sigma: &Permutation) -> RatPoly {
    let s = sign_pattern(&positions(sigma), &b.factors);
    RatPoly::monomial(rat(s), b.len())
}

#[derive(Debug, Clone)]
pub struct ConfRestrictionMatrix {
    pub n: usize,
    pub lift: ConfLift,
    pub basis: Vec<AdmissibleMonomial>,
    /// Rows follow `all_permutations(n)`.
    pub components: Vec<Permutation>,
    pub matrix: Matrix<RatPoly>,
    /// Cohomological degrees of the columns.
    pub col_degrees: Vec<i64>,
}

impl ConfRestrictionMatrix {
    /// Constant coefficients `C` with `matrix = C * diag(t'^{deg/2})`.
    pub fn graded_parts(&self) -> (Matrix<Rational>, Vec<usize>) {
        split_homogeneous_columns(&self.matrix).expect("restriction columns are homogeneous")
    }

    pub fn det(&self) -> RatPoly {
        let (c, d) = self.graded_parts();
        RatPoly::monomial(c.det(), d.iter().sum())
    }
}

/// Restriction matrix of the product lift; entries are `±t'^k`.
pub fn conf_restriction_matrix(n: usize) -> Result<ConfRestrictionMatrix> {
    conf_restriction_matrix_with(n, ConfLift::Product)
}

pub fn conf_restriction_matrix_with(n: usize, lift: ConfLift) -> Result<ConfRestrictionMatrix> {
    let basis = admissible_basis(n)?;
    let components = all_permutations_up_to(n, DEFAULT_MAX_N)?;
    let pos: Vec<Vec<usize>> = components.iter().map(positions).collect();
    let signs: Vec<Vec<i64>> = pos
        .par_iter()
        .map(|p| basis.iter().map(|b| sign_pattern(p, &b.factors)).collect())
        .collect();
    let product = Matrix::from_fn(components.len(), basis.len(), |i, j| rat(signs[i][j]));
    let coeffs = match lift {
        ConfLift::Product => product,
        ConfLift::Orthogonal => orthogonal_lift(n, &basis, &pos, &product)?,
    };
    let matrix = Matrix::from_fn(coeffs.rows(), coeffs.cols(), |i, j| {
        RatPoly::monomial(coeffs[(i, j)].clone(), basis[j].len())
    });
    if coeffs.rank() < basis.len() {
        return Err(Error::SingularMatrix);
    }
    Ok(ConfRestrictionMatrix {
        n,
        lift,
        col_degrees: basis.iter().map(|b| b.degree() as i64).collect(),
        basis,
        components,
        matrix,
    })
}

/// Coefficients of the orthogonal-complement lift.
///
/// `Y` has one 2-sphere per pair `i < j`; `H(Y)` has the square-free
/// monomials in the `y_ij` as an orthonormal basis. The image of a monomial
/// `m` in `H(X)` is read off from the product lift: the degree-`k` part of
/// `C^{-1} s_m`, where `s_m` is its sign pattern and `C` the product-lift
/// coefficient matrix. The lift of `b` is the minimum-norm preimage, whose
/// equivariant restriction is `t'^k sum_m L_mb s_m`.
fn orthogonal_lift(
    n: usize,
    basis: &[AdmissibleMonomial],
    pos: &[Vec<usize>],
    product: &Matrix<Rational>,
) -> Result<Matrix<Rational>> {
    let pairs: Vec<Generator> = (1..=n)
        .flat_map(|j| (1..j).map(move |i| Generator { i, j }))
        .collect();
    let rows = pos.len();
    let mut out = Matrix::<Rational>::zeros(rows, basis.len());
    for k in 0..n {
        let cols: Vec<usize> = (0..basis.len()).filter(|&b| basis[b].len() == k).collect();
        if k == 0 {
            for i in 0..rows {
                out[(i, cols[0])] = Rational::one();
            }
            continue;
        }
        let subsets = combinations(&pairs, k);
        let s = Matrix::from_fn(rows, subsets.len(), |i, m| rat(sign_pattern(&pos[i], &subsets[m])));
        let coords = product.solve(&s).ok_or(Error::SingularMatrix)?;
        let phi = coords.select_rows(&cols);
        let gram = phi.mul(&phi.transpose());
        let l = phi.transpose().mul(&gram.inverse().ok_or(Error::SingularMatrix)?);
        let lifted = s.mul(&l);
        for (c, &b) in cols.iter().enumerate() {
            for i in 0..rows {
                out[(i, b)] = lifted[(i, c)].clone();
            }
        }
    }
    Ok(out)
}

fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `(P_sigma R)(tau) = R(sigma^{-1} tau)`.
pub fn permute_components(r: &ConfRestrictionMatrix, sigma: &Permutation) -> Matrix<RatPoly> {
    let index = crate::symgroup::permutation::index_of(&r.components);
    let inv = sigma.inverse();
    let source: Vec<usize> = r.components.iter().map(|tau| index[&inv.compose(tau)]).collect();
    r.matrix.select_rows(&source)
}

/// Matrix of `sigma` on the lifted basis: `R rho(sigma) = P_sigma R`.
pub fn conf_action_matrix(sigma: &Permutation, r: &ConfRestrictionMatrix) -> Result<Matrix<RatPoly>> {
    let (c, d) = r.graded_parts();
    let moved = permute_components(r, sigma);
    let (cm, dm) = split_homogeneous_columns(&moved).expect("permuted rows stay homogeneous");
    let x = graded_solve(&c, &d, &cm, &dm)?;
    as_poly_matrix(&x).map_err(|(row, col)| Error::NonPolynomialEntry {
        row,
        col,
        value: x[(row, col)].display("t'"),
    })
}

/// Outcome of checking the two equivariant relations on restriction tuples.
#[derive(Debug, Clone)]
pub struct RelationProbe {
    /// `w_ij^2 = t'^2` for each pair.
    pub squares: Vec<((usize, usize), bool)>,
    /// `w_ij w_jk + w_jk w_ki + w_ki w_ij = -t'^2` for each triple.
    pub triples: Vec<((usize, usize, usize), bool)>,
}

impl RelationProbe {
    pub fn passed(&self) -> bool {
        self.squares.iter().all(|(_, ok)| *ok) && self.triples.iter().all(|(_, ok)| *ok)
    }
}

/// Checks the relations using the degree-2 columns of `r`.
pub fn equivariant_relation_probe(r: &ConfRestrictionMatrix) -> RelationProbe {
    let n = r.n;
    let rows = r.components.len();
    let column = |a: usize, b: usize| -> Vec<RatPoly> {
        let (s, g) = Generator::oriented(a, b);
        let idx = r
            .basis
            .iter()
            .position(|m| m.factors() == [g])
            .expect("every generator is admissible");
        (0..rows).map(|i| r.matrix[(i, idx)].scale(&rat(s))).collect()
    };
    let t2 = RatPoly::monomial(Rational::one(), 2);
    let minus_t2 = -&t2;
    let mut squares = Vec::new();
    for j in 1..=n {
        for i in 1..j {
            let c = column(i, j);
            squares.push(((i, j), c.iter().all(|v| &(v * v) == &t2)));
        }
    }
    let mut triples = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (ij, jk, ki) = (column(i, j), column(j, k), column(k, i));
                let ok = (0..rows).all(|s| {
                    let v = &(&(&ij[s] * &jk[s]) + &(&jk[s] * &ki[s])) + &(&ki[s] * &ij[s]);
                    v == minus_t2
                });
                triples.push(((i, j, k), ok));
            }
        }
    }
    RelationProbe { squares, triples }
}

/// Degree census of the admissible basis, indexed by number of factors.
pub fn census(basis: &[AdmissibleMonomial]) -> Vec<usize> {
    let top = basis.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = vec![0; top + 1];
    for b in basis {
        out[b.len()] += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::all_permutations;
    use num_traits::Zero;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn basis_sizes_and_census() {
        let b2 = admissible_basis(2).unwrap();
        assert_eq!(b2.len(), 2);
        assert_eq!(b2[1].to_string(), "w12");
        assert_eq!(census(&admissible_basis(3).unwrap()), vec![1, 3, 2]);
        assert_eq!(census(&admissible_basis(4).unwrap()), vec![1, 6, 11, 6]);
    }

    #[test]
    fn epsilon_examples() {
        let id = Permutation::identity(3);
        assert_eq!(epsilon(&id, 1, 2), 1);
        assert_eq!(epsilon(&id, 2, 1), -1);
        assert_eq!(epsilon(&perm(&[2, 1, 3]), 1, 2), -1);
    }

    #[test]
    fn restriction_examples() {
        let w12 = AdmissibleMonomial::new(vec![Generator { i: 1, j: 2 }]).unwrap();
        assert_eq!(restrict_monomial(&w12, &Permutation::identity(2)), RatPoly::x());
        assert_eq!(restrict_monomial(&w12, &perm(&[2, 1])), -&RatPoly::x());
        let w12w13 =
            AdmissibleMonomial::new(vec![Generator { i: 1, j: 2 }, Generator { i: 1, j: 3 }]).unwrap();
        assert_eq!(restrict_monomial(&w12w13, &Permutation::identity(3)), RatPoly::from_ints(&[0, 0, 1]));
        assert!(restrict_monomial(&AdmissibleMonomial::default(), &perm(&[3, 1, 2])).is_one());
    }

    #[test]
    fn two_point_matrix() {
        let r = conf_restriction_matrix(2).unwrap();
        let t = RatPoly::x();
        assert_eq!(
            r.matrix,
            Matrix::from_rows(vec![vec![RatPoly::one(), t.clone()], vec![RatPoly::one(), -&t]])
        );
        assert_eq!(r.det(), RatPoly::from_ints(&[0, -2]));
    }

    #[test]
    fn three_point_determinant_shape() {
        let d = conf_restriction_matrix(3).unwrap().det();
        let (c, k) = d.as_monomial().unwrap();
        assert_eq!(k, 7);
        assert!(!c.is_zero());
    }

    #[test]
    fn lifts_agree_in_degree_two() {
        let p = conf_restriction_matrix_with(4, ConfLift::Product).unwrap();
        let o = conf_restriction_matrix_with(4, ConfLift::Orthogonal).unwrap();
        for (j, b) in p.basis.iter().enumerate() {
            if b.len() <= 1 {
                assert_eq!(p.matrix.column(j), o.matrix.column(j), "column {b}");
            }
        }
    }

    #[test]
    fn action_of_swap_on_two_points() {
        let r = conf_restriction_matrix(2).unwrap();
        let rho = conf_action_matrix(&perm(&[2, 1]), &r).unwrap();
        assert_eq!(
            rho,
            Matrix::from_rows(vec![
                vec![RatPoly::one(), RatPoly::zero()],
                vec![RatPoly::zero(), RatPoly::constant(rat(-1))]
            ])
        );
    }

    #[test]
    fn action_is_a_representation() {
        for lift in [ConfLift::Product, ConfLift::Orthogonal] {
            let r = conf_restriction_matrix_with(3, lift).unwrap();
            let perms = all_permutations(3).unwrap();
            let rho: Vec<_> = perms.iter().map(|s| conf_action_matrix(s, &r).unwrap()).collect();
            assert!(rho[0].is_identity());
            for (a, s) in perms.iter().enumerate() {
                for (b, t) in perms.iter().enumerate() {
                    let st = perms.iter().position(|p| p == &s.compose(t)).unwrap();
                    assert_eq!(rho[a].mul(&rho[b]), rho[st], "{lift} {s} {t}");
                }
            }
        }
    }

    #[test]
    fn relations_hold() {
        for n in 3..=4 {
            for lift in [ConfLift::Product, ConfLift::Orthogonal] {
                let probe = equivariant_relation_probe(&conf_restriction_matrix_with(n, lift).unwrap());
                assert!(probe.passed());
                assert_eq!(probe.squares.len(), n * (n - 1) / 2);
            }
        }
    }
}
