//! Flag manifold side: harmonic polynomials, restriction to the fixed flags
//! of the principal circle, the symmetric group action, and invariant
//! sub-bases for two-block Grassmannians.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::matrix::Matrix;
use crate::algebra::rational::{content_scale, rat, Rational};
use crate::algebra::ratpoly::RatPoly;
use crate::algebra::solve::{as_poly_matrix, graded_solve, split_homogeneous_columns};
use crate::conventions::Metric;
use crate::error::{Error, Result};
use crate::multipoly::{elementary, monomials_of_degree, vandermonde, Exponent, MultiPoly};
use crate::symgroup::partition::factorial;
use crate::symgroup::permutation::{all_permutations_up_to, check_size, index_of, DEFAULT_MAX_N};
use crate::symgroup::Permutation;

/// `mu_i = n + 1 - 2i`, in spinor units.
pub fn principal_weights(n: usize) -> Vec<i64> {
    (1..=n as i64).map(|i| n as i64 + 1 - 2 * i).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicElement {
    pub poly: MultiPoly,
    pub degree: u32,
}

impl HarmonicElement {
    /// `h(mu_w(1), ..., mu_w(n)) t'^deg`.
    pub fn restrict(&self, w: &Permutation) -> RatPoly {
        let n = self.poly.nvars();
        let mu = principal_weights(n);
        let point: Vec<i64> = (0..n).map(|i| mu[w.at(i)]).collect();
        RatPoly::monomial(self.poly.eval_i64(&point), self.degree as usize)
    }
}

pub fn restrict_harmonic(h: &HarmonicElement, w: &Permutation) -> RatPoly {
    h.restrict(w)
}

/// Scaled reduced echelon basis of the row span: leading entries positive,
/// integer coefficients with content 1, rows ordered by pivot.
pub fn canonical_span(vectors: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_fn(vectors.len(), width, |i, j| vectors[i][j].clone());
    let r = m.rref();
    (0..r.pivots.len())
        .map(|i| {
            let row = r.matrix.row(i).to_vec();
            let s = content_scale(&row);
            row.into_iter().map(|v| v * &s).collect()
        })
        .collect()
}

fn metric_weight(metric: Metric, e: &[u32]) -> Rational {
    match metric {
        Metric::Apolar => e
            .iter()
            .fold(Rational::one(), |acc, &k| acc * Rational::from_integer(factorial(k as usize))),
        Metric::Monomial => Rational::one(),
    }
}

/// Harmonic basis together with the data needed to take coordinates.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub n: usize,
    pub metric: Metric,
    pub elements: Vec<HarmonicElement>,
    /// Pivot monomial of each element (zero in every other element of the
    /// same degree).
    pivots: Vec<Exponent>,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.elements.iter().map(|h| h.degree).collect()
    }

    /// Census by degree.
    pub fn census(&self) -> Vec<usize> {
        let top = self.degrees().into_iter().max().unwrap_or(0) as usize;
        let mut out = vec![0; top + 1];
        for d in self.degrees() {
            out[d as usize] += 1;
        }
        out
    }

    /// Coordinates of `p` in this basis, or `None` if `p` lies outside the span.
    pub fn coordinates(&self, p: &MultiPoly) -> Option<Vec<Rational>> {
        let mut coords = Vec::with_capacity(self.len());
        let mut recon = MultiPoly::zero(self.n);
        for (h, piv) in self.elements.iter().zip(&self.pivots) {
            let c = p.coeff(piv) / h.poly.coeff(piv);
            recon = recon.add(&h.poly.scale(&c));
            coords.push(c);
        }
        (recon == *p).then_some(coords)
    }

    fn from_canonical(n: usize, metric: Metric, per_degree: Vec<(u32, Vec<Exponent>, Vec<Vec<Rational>>)>) -> Self {
        let mut elements = Vec::new();
        let mut pivots = Vec::new();
        for (d, monos, rows) in per_degree {
            for row in rows {
                let piv = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
                pivots.push(monos[piv].clone());
                elements.push(HarmonicElement {
                    poly: MultiPoly::from_coords(n, &monos, &row),
                    degree: d,
                });
            }
        }
        HarmonicBasis {
            n,
            metric,
            elements,
            pivots,
        }
    }
}

/// Complement of the ideal generated by positive-degree symmetric
/// polynomials under `metric`.
///
/// The apolar complement is the span of all partial derivatives of the
/// Vandermonde; for a diagonal metric `G` the complement is `G^{-1} A` times
/// the apolar one, `A` being the apolar weights.
pub fn harmonic_basis(n: usize, metric: Metric) -> Result<HarmonicBasis> {
    check_size("n", n, DEFAULT_MAX_N)?;
    let top = (n * n.saturating_sub(1) / 2) as u32;
    let mut levels: Vec<Vec<MultiPoly>> = vec![Vec::new(); top as usize + 1];
    levels[top as usize] = vec![vandermonde(n)];
    for d in (0..top).rev() {
        let monos = monomials_of_degree(n, d);
        let above = &levels[d as usize + 1];
        let derivs: Vec<Vec<Rational>> = above
            .par_iter()
            .flat_map_iter(|h| (1..=n).map(move |i| h.derivative(i)))
            .map(|p| p.coords(&monos))
            .collect();
        levels[d as usize] = canonical_span(&derivs, monos.len())
            .iter()
            .map(|v| MultiPoly::from_coords(n, &monos, v))
            .collect();
    }
    let per_degree = (0..=top)
        .map(|d| {
            let monos = monomials_of_degree(n, d);
            let vecs: Vec<Vec<Rational>> = levels[d as usize]
                .iter()
                .map(|p| {
                    p.coords(&monos)
                        .into_iter()
                        .zip(&monos)
                        .map(|(c, e)| match metric {
                            Metric::Apolar => c,
                            Metric::Monomial => c * metric_weight(Metric::Apolar, e),
                        })
                        .collect()
                })
                .collect();
            let rows = canonical_span(&vecs, monos.len());
            (d, monos, rows)
        })
        .collect();
    Ok(HarmonicBasis::from_canonical(n, metric, per_degree))
}

#[derive(Debug, Clone)]
pub struct FlagRestrictionMatrix {
    pub n: usize,
    pub basis: HarmonicBasis,
    /// Rows follow `all_permutations(n)`.
    pub fixed_flags: Vec<Permutation>,
    pub matrix: Matrix<RatPoly>,
    /// Cohomological degrees of the columns.
    pub col_degrees: Vec<i64>,
}

impl FlagRestrictionMatrix {
    pub fn graded_parts(&self) -> (Matrix<Rational>, Vec<usize>) {
        let c = Matrix::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            self.matrix[(i, j)].coeff(self.basis.elements[j].degree as usize)
        });
        (c, self.basis.degrees().iter().map(|&d| d as usize).collect())
    }

    pub fn det(&self) -> RatPoly {
        let (c, d) = self.graded_parts();
        RatPoly::monomial(c.det(), d.iter().sum())
    }
}

pub fn flag_restriction_matrix(n: usize, metric: Metric) -> Result<FlagRestrictionMatrix> {
    let basis = harmonic_basis(n, metric)?;
    flag_restriction_matrix_for(basis)
}

pub fn flag_restriction_matrix_for(basis: HarmonicBasis) -> Result<FlagRestrictionMatrix> {
    let n = basis.n;
    let fixed_flags = all_permutations_up_to(n, DEFAULT_MAX_N)?;
    let rows: Vec<Vec<RatPoly>> = fixed_flags
        .par_iter()
        .map(|w| basis.elements.iter().map(|h| h.restrict(w)).collect())
        .collect();
    let matrix = Matrix::from_rows(rows);
    let col_degrees = basis.degrees().iter().map(|&d| 2 * d as i64).collect();
    let out = FlagRestrictionMatrix {
        n,
        basis,
        fixed_flags,
        matrix,
        col_degrees,
    };
    if out.graded_parts().0.rank() < out.basis.len() {
        return Err(Error::SingularMatrix);
    }
    Ok(out)
}

/// Matrix of `h -> sigma . h` on the harmonic basis (constant entries).
pub fn flag_action_matrix(sigma: &Permutation, basis: &HarmonicBasis) -> Matrix<Rational> {
    let cols: Vec<Vec<Rational>> = basis
        .elements
        .iter()
        .map(|h| {
            basis
                .coordinates(&h.poly.permute(sigma))
                .expect("harmonic space is stable under permutations")
        })
        .collect();
    Matrix::from_fn(basis.len(), basis.len(), |i, j| cols[j][i].clone())
}

/// `(Q_sigma R)(w) = R(w sigma)`, which is the restriction of `sigma . h`.
pub fn permute_fixed_flags(r: &FlagRestrictionMatrix, sigma: &Permutation) -> Matrix<RatPoly> {
    let index = index_of(&r.fixed_flags);
    let source: Vec<usize> = r.fixed_flags.iter().map(|w| index[&w.compose(sigma)]).collect();
    r.matrix.select_rows(&source)
}

/// The action recovered from restrictions alone: `R rho = Q_sigma R`.
pub fn flag_action_via_restriction(sigma: &Permutation, r: &FlagRestrictionMatrix) -> Result<Matrix<RatPoly>> {
    let (c, d) = r.graded_parts();
    let moved = permute_fixed_flags(r, sigma);
    let (cm, dm) = split_homogeneous_columns(&moved).expect("permuted rows stay homogeneous");
    let x = graded_solve(&c, &d, &cm, &dm)?;
    as_poly_matrix(&x).map_err(|(row, col)| Error::NonPolynomialEntry {
        row,
        col,
        value: x[(row, col)].display("t'"),
    })
}

/// Weakly decreasing tuples of length `len` summing to `d`.
fn decreasing_tuples(len: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, d: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (0..=d.min(max)).rev() {
            cur.push(k);
            rec(len, d - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, d, d, &mut Vec::new(), &mut out);
    out
}

fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation of a multiset
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Orbit of a monomial under `S_r x S_s`, as `(representative, members)`.
fn orbit_sum(n: usize, r: usize, a: &[u32], b: &[u32]) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for x in distinct_permutations(a) {
        for y in distinct_permutations(b) {
            let mut e = x.clone();
            e.extend_from_slice(&y);
            debug_assert_eq!(e.len(), n);
            p.add_term(e, Rational::one());
        }
    }
    let _ = r;
    p
}

fn orbit_key(e: &[u32], r: usize) -> (Vec<u32>, Vec<u32>) {
    let mut a = e[..r].to_vec();
    let mut b = e[r..].to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    (a, b)
}

/// Harmonics invariant under permuting `t_1..t_r` and `t_{r+1}..t_n`
/// separately, computed inside the invariant ring with orbit sums.
pub fn grassmann_invariant_basis(r: usize, s: usize, metric: Metric) -> Result<Vec<HarmonicElement>> {
    let n = r + s;
    check_size("r + s", n, 8)?;
    let top = (r * s) as u32;
    let mut out = Vec::new();
    for d in 0..=top {
        let orbits: Vec<(Vec<u32>, Vec<u32>)> = (0..=d)
            .flat_map(|da| {
                let bs = decreasing_tuples(s, d - da);
                decreasing_tuples(r, da)
                    .into_iter()
                    .flat_map(move |a| bs.clone().into_iter().map(move |b| (a.clone(), b)))
            })
            .collect();
        let index: BTreeMap<(Vec<u32>, Vec<u32>), usize> =
            orbits.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let sums: Vec<MultiPoly> = orbits.iter().map(|(a, b)| orbit_sum(n, r, a, b)).collect();
        let gram: Vec<Rational> = orbits
            .iter()
            .zip(&sums)
            .map(|((a, b), m)| {
                let mut e = a.clone();
                e.extend_from_slice(b);
                rat(m.terms().len() as i64) * metric_weight(metric, &e)
            })
            .collect();
        // invariant part of the ideal: e_k times invariants of degree d - k
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in 1..=n.min(d as usize) {
            let ek = elementary(n, k);
            let lower = d - k as u32;
            for da in 0..=lower {
                for a in decreasing_tuples(r, da) {
                    for b in decreasing_tuples(s, lower - da) {
                        let prod = ek.mul(&orbit_sum(n, r, &a, &b));
                        let mut v = vec![Rational::zero(); orbits.len()];
                        for (e, c) in prod.terms() {
                            let key = orbit_key(e, r);
                            if key.0 == e[..r] && key.1 == e[r..] {
                                v[index[&key]] = c.clone();
                            }
                        }
                        rows.push(v.into_iter().zip(&gram).map(|(x, g)| x * g).collect());
                    }
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..orbits.len())
                .map(|i| (0..orbits.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        } else {
            Matrix::from_fn(rows.len(), orbits.len(), |i, j| rows[i][j].clone()).nullspace()
        };
        let monos = monomials_of_degree(n, d);
        let polys: Vec<Vec<Rational>> = kernel
            .iter()
            .map(|v| {
                sums.iter()
                    .zip(v)
                    .fold(MultiPoly::zero(n), |acc, (m, c)| acc.add(&m.scale(c)))
                    .coords(&monos)
            })
            .collect();
        for row in canonical_span(&polys, monos.len()) {
            out.push(HarmonicElement {
                poly: MultiPoly::from_coords(n, &monos, &row),
                degree: d,
            });
        }
    }
    Ok(out)
}

/// Coset representative of an interleaving: the fixed flag sending the
/// `X` points to the weights at the `X` positions, in increasing order.
pub fn interleaving_flag(word: &crate::symgroup::Interleaving) -> Permutation {
    let mut images: Vec<usize> = word.x_positions().into_iter().map(|p| p + 1).collect();
    images.extend(word.y_positions().into_iter().map(|p| p + 1));
    Permutation::from_one_line(&images).expect("positions form a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::power_sum;
    use crate::symgroup::all_permutations;

    #[test]
    fn two_variable_basis() {
        let b = harmonic_basis(2, Metric::Apolar).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.elements[1].poly, MultiPoly::var(2, 1).sub(&MultiPoly::var(2, 2)));
    }

    #[test]
    fn census_matches_flag_series() {
        assert_eq!(harmonic_basis(3, Metric::Apolar).unwrap().census(), vec![1, 2, 2, 1]);
        assert_eq!(harmonic_basis(4, Metric::Monomial).unwrap().census(), vec![1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn harmonics_are_killed_by_power_sums() {
        let b = harmonic_basis(4, Metric::Apolar).unwrap();
        for h in &b.elements {
            for k in 1..=4 {
                assert!(h.poly.apply_operator(&power_sum(4, k)).is_zero());
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let b = harmonic_basis(2, Metric::Apolar).unwrap();
        let h = &b.elements[1];
        assert_eq!(h.restrict(&Permutation::identity(2)), RatPoly::from_ints(&[0, 2]));
        assert_eq!(
            h.restrict(&Permutation::from_one_line(&[2, 1]).unwrap()),
            RatPoly::from_ints(&[0, -2])
        );
        let v = HarmonicElement {
            poly: vandermonde(3),
            degree: 3,
        };
        assert_eq!(v.restrict(&Permutation::identity(3)), RatPoly::monomial(rat(16), 3));
    }

    #[test]
    fn two_point_restriction_matrix() {
        let r = flag_restriction_matrix(2, Metric::Apolar).unwrap();
        let t2 = RatPoly::from_ints(&[0, 2]);
        assert_eq!(
            r.matrix,
            Matrix::from_rows(vec![vec![RatPoly::one(), t2.clone()], vec![RatPoly::one(), -&t2]])
        );
        let d = flag_restriction_matrix(3, Metric::Apolar).unwrap().det();
        assert_eq!(d.as_monomial().unwrap().1, 9);
    }

    #[test]
    fn swap_negates_the_difference() {
        let b = harmonic_basis(2, Metric::Apolar).unwrap();
        let m = flag_action_matrix(&Permutation::from_one_line(&[2, 1]).unwrap(), &b);
        assert_eq!(m, Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]]));
    }

    #[test]
    fn regular_character() {
        let b = harmonic_basis(3, Metric::Apolar).unwrap();
        for s in all_permutations(3).unwrap() {
            let tr = flag_action_matrix(&s, &b).trace();
            assert_eq!(tr, if s.is_identity() { rat(6) } else { rat(0) });
        }
    }

    #[test]
    fn grassmann_census() {
        let census = |r, s| {
            let b = grassmann_invariant_basis(r, s, Metric::Apolar).unwrap();
            let mut c = vec![0; r * s + 1];
            for h in b {
                c[h.degree as usize] += 1;
            }
            c
        };
        assert_eq!(census(0, 3), vec![1]);
        assert_eq!(census(1, 2), vec![1, 1, 1]);
        assert_eq!(census(2, 2), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn interleaving_representatives() {
        let w = crate::symgroup::Interleaving::from_word("YXY").unwrap();
        assert_eq!(interleaving_flag(&w).one_line(), vec![2, 1, 3]);
    }
}
