//! Floating-point construction of the map from configurations of distinct
//! points in R^3 to the flag manifold: directions become points of CP^1,
//! each point gets the binary form vanishing at its directions to the
//! others, and the forms are orthonormalised by the polar decomposition.

use nalgebra::{DMatrix, DVector, Matrix3, Rotation3, SymmetricEigen, UnitQuaternion, Vector3};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symgroup::permutation::{all_permutations_up_to, check_size};
use crate::symgroup::Permutation;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Points closer than this are treated as coincident.
pub const COLLISION_TOLERANCE: f64 = 1e-9;
/// Smallest singular value of the form matrix accepted as independent.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-10;
/// Minimum overlap for an unambiguous fixed-flag match.
pub const CALIBRATION_OVERLAP: f64 = 0.99;
/// Largest number of points accepted by the numerical routines.
pub const MAX_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    points: Vec<[f64; 3]>,
    min_separation: f64,
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

impl PointConfig {
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        check_size("n", points.len(), MAX_POINTS)?;
        let mut min_separation = f64::INFINITY;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d = dist(&points[i], &points[j]);
                if !(d > COLLISION_TOLERANCE) {
                    return Err(Error::CoincidentPoints(i + 1, j + 1));
                }
                min_separation = min_separation.min(d);
            }
        }
        Ok(PointConfig { points, min_separation })
    }

    /// Points on the axis in the order `x_sigma(1) < ... < x_sigma(n)`.
    pub fn on_axis(sigma: &Permutation) -> Self {
        let n = sigma.len();
        let mut points = vec![[0.0; 3]; n];
        for k in 0..n {
            points[sigma.at(k)] = [0.0, 0.0, (k + 1) as f64];
        }
        PointConfig::new(points).expect("distinct heights")
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }

    /// Point `i` of the result is point `sigma(i)` of `self`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        let points = (0..self.n()).map(|i| self.points[sigma.at(i)]).collect();
        PointConfig {
            points,
            min_separation: self.min_separation,
        }
    }

    pub fn rotate(&self, r: &Matrix3<f64>) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                let v = r * Vector3::new(p[0], p[1], p[2]);
                [v.x, v.y, v.z]
            })
            .collect();
        PointConfig::new(points).expect("rotations preserve distances")
    }

    pub fn scale_translate(&self, scale: f64, shift: [f64; 3]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| [scale * p[0] + shift[0], scale * p[1] + shift[1], scale * p[2] + shift[2]])
            .collect();
        PointConfig::new(points).expect("similarities preserve distinctness")
    }
}

/// `(cos(theta/2), e^{i phi} sin(theta/2))` for the direction `d`.
pub fn direction_root(d: [f64; 3]) -> Result<[C64; 2]> {
    let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if !(norm > 0.0) {
        return Err(Error::ZeroInput);
    }
    let z = (d[2] / norm).clamp(-1.0, 1.0);
    let theta = z.acos();
    let phi = d[1].atan2(d[0]);
    Ok([
        Complex::new((theta / 2.0).cos(), 0.0),
        Complex::from_polar((theta / 2.0).sin(), phi),
    ])
}

/// Root of `p_i` pointing from `x_i` to `x_j`.
pub fn pair_root(cfg: &PointConfig, i: usize, j: usize) -> Result<[C64; 2]> {
    let (a, b) = (cfg.points[i], cfg.points[j]);
    if dist(&a, &b) <= COLLISION_TOLERANCE {
        return Err(Error::CoincidentPoints(i + 1, j + 1));
    }
    direction_root([b[0] - a[0], b[1] - a[1], b[2] - a[2]])
}

fn binom(m: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// Monomial coefficients of `prod (b X - a Y)`; index `k` multiplies
/// `X^k Y^{m-k}`.
pub fn form_monomial_coeffs(roots: &[[C64; 2]]) -> Vec<C64> {
    let mut p = vec![Complex::new(1.0, 0.0)];
    for [a, b] in roots {
        let mut next = vec![Complex::new(0.0, 0.0); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += b * c;
            next[k] -= a * c;
        }
        p = next;
    }
    p
}

/// Coordinates in the unitary basis `sqrt(binom(m, k)) X^k Y^{m-k}`.
pub fn to_unitary_coords(monomial: &[C64]) -> Vec<C64> {
    let m = monomial.len() - 1;
    monomial.iter().enumerate().map(|(k, c)| c / binom(m, k).sqrt()).collect()
}

pub fn from_unitary_coords(v: &[C64]) -> Vec<C64> {
    let m = v.len() - 1;
    v.iter().enumerate().map(|(k, c)| c * binom(m, k).sqrt()).collect()
}

/// Unit-normalised binary form with the given roots, in unitary coordinates.
pub fn binary_form(roots: &[[C64; 2]]) -> Vec<C64> {
    let v = to_unitary_coords(&form_monomial_coeffs(roots));
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|c| c / norm).collect()
}

/// Rows `p_1, ..., p_n` before orthonormalisation.
pub fn form_matrix(cfg: &PointConfig) -> Result<CMatrix> {
    let n = cfg.n();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        let roots = (0..n)
            .filter(|&j| j != i)
            .map(|j| pair_root(cfg, i, j))
            .collect::<Result<Vec<_>>>()?;
        for (k, c) in binary_form(&roots).into_iter().enumerate() {
            m[(i, k)] = c;
        }
    }
    Ok(m)
}

/// `(M M^H)^{-1/2} M`.
pub fn polar_orthonormalize(m: &CMatrix) -> CMatrix {
    let h = m * m.adjoint();
    let eig = SymmetricEigen::new(h);
    let inv_sqrt = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex::new(1.0 / l.sqrt(), 0.0)),
    );
    let v = &eig.eigenvectors;
    v * DMatrix::from_diagonal(&inv_sqrt) * v.adjoint() * m
}

/// Largest entry of `|U U^H - I|`.
pub fn orthonormality_residual(u: &CMatrix) -> f64 {
    let g = u * u.adjoint();
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - Complex::new(target, 0.0)).norm());
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlagDiagnostics {
    pub condition_number: f64,
    pub min_singular_value: f64,
    pub polar_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlagNumeric {
    /// Row `i` spans the line attached to point `i`.
    pub lines: CMatrix,
    pub diagnostics: FlagDiagnostics,
}

pub fn atiyah_flag(cfg: &PointConfig) -> Result<FlagNumeric> {
    let m = form_matrix(cfg)?;
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.max();
    let min = sv.min();
    if min < INDEPENDENCE_TOLERANCE {
        return Err(Error::DependentPolynomials(min));
    }
    let lines = polar_orthonormalize(&m);
    let polar_residual = orthonormality_residual(&lines);
    Ok(FlagNumeric {
        lines,
        diagnostics: FlagDiagnostics {
            condition_number: max / min,
            min_singular_value: min,
            polar_residual,
        },
    })
}

/// `|| u - phase * v ||` for unit vectors, with the phase aligned.
pub fn line_distance(u: &[C64], v: &[C64]) -> f64 {
    let ip: C64 = v.iter().zip(u).map(|(a, b)| a.conj() * b).sum();
    let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex::new(1.0, 0.0) };
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - phase * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn row(m: &CMatrix, i: usize) -> Vec<C64> {
    m.row(i).iter().copied().collect()
}

/// Relabeling points by `sigma` must relabel the lines by `sigma`.
pub fn permutation_equivariance_residual(cfg: &PointConfig, sigma: &Permutation) -> Result<f64> {
    let u = atiyah_flag(cfg)?.lines;
    let v = atiyah_flag(&cfg.relabel(sigma))?.lines;
    Ok((0..cfg.n())
        .map(|i| line_distance(&row(&v, i), &row(&u, sigma.at(i))))
        .fold(0.0, f64::max))
}

/// Element of SU(2) covering the rotation `r` under the Hopf map
/// `(a, b) -> (2 Re(a* b), 2 Im(a* b), |a|^2 - |b|^2)`.
pub fn su2_lift(r: &Matrix3<f64>) -> [[C64; 2]; 2] {
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
    let (w, x, y, z) = (q.w, q.i, q.j, q.k);
    [
        [Complex::new(w, -z), Complex::new(-y, -x)],
        [Complex::new(y, -x), Complex::new(w, z)],
    ]
}

pub fn hopf(v: [C64; 2]) -> [f64; 3] {
    let ab = v[0].conj() * v[1];
    [2.0 * ab.re, 2.0 * ab.im, v[0].norm_sqr() - v[1].norm_sqr()]
}

/// Matrix of `p -> p o g^{-1}` on forms of degree `m`, unitary coordinates.
pub fn sym_power(g: &[[C64; 2]; 2], m: usize) -> CMatrix {
    // g^{-1} = g^H for g in SU(2)
    let gi = [[g[0][0].conj(), g[1][0].conj()], [g[0][1].conj(), g[1][1].conj()]];
    // X -> gi00 X + gi01 Y, Y -> gi10 X + gi11 Y, in index-by-power-of-X form
    let x_img = [gi[0][1], gi[0][0]];
    let y_img = [gi[1][1], gi[1][0]];
    let mul = |p: &[C64], q: &[C64]| -> Vec<C64> {
        let mut out = vec![Complex::new(0.0, 0.0); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let mut s = CMatrix::zeros(m + 1, m + 1);
    for k in 0..=m {
        let mut p = vec![Complex::new(1.0, 0.0)];
        for _ in 0..k {
            p = mul(&p, &x_img);
        }
        for _ in k..m {
            p = mul(&p, &y_img);
        }
        // column k: image of the unitary basis vector sqrt(binom) X^k Y^{m-k}
        let scale = binom(m, k).sqrt();
        let v = to_unitary_coords(&p.iter().map(|c| c * scale).collect::<Vec<_>>());
        for (i, c) in v.into_iter().enumerate() {
            s[(i, k)] = c;
        }
    }
    s
}

/// Line-by-line distance between `f(R x)` and `Sym(g) f(x)`.
pub fn rotation_equivariance_residual(cfg: &PointConfig, r: &Matrix3<f64>) -> Result<f64> {
    let u = atiyah_flag(cfg)?.lines;
    let v = atiyah_flag(&cfg.rotate(r))?.lines;
    let s = sym_power(&su2_lift(r), cfg.n() - 1);
    let moved = &u * s.transpose();
    Ok((0..cfg.n())
        .map(|i| line_distance(&row(&v, i), &row(&moved, i)))
        .fold(0.0, f64::max))
}

/// Orthonormal rows spanning the row space of `m`.
pub fn orthonormal_rows(m: &CMatrix) -> CMatrix {
    let qr = m.adjoint().qr();
    let q = qr.q();
    q.columns(0, m.nrows()).adjoint()
}

/// `sin` of the largest principal angle, as the spectral distance of the
/// orthogonal projectors.
pub fn subspace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let pa = a.adjoint() * a;
    let pb = b.adjoint() * b;
    (pa - pb).svd(false, false).singular_values.max()
}

/// Cosines of the principal angles between two row spaces (orthonormal rows).
pub fn principal_cosines(a: &CMatrix, b: &CMatrix) -> Vec<f64> {
    let m = a * b.adjoint();
    let mut s: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

/// Two subspaces of dimensions `r` and `s` spanning C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspacePair {
    pub p: CMatrix,
    pub q: CMatrix,
}

impl SubspacePair {
    /// Smallest singular value of the stacked orthonormal bases; positive
    /// iff the two spaces span C^n.
    pub fn spanning_margin(&self) -> f64 {
        let n = self.p.ncols();
        let mut m = CMatrix::zeros(n, n);
        m.rows_mut(0, self.p.nrows()).copy_from(&self.p);
        m.rows_mut(self.p.nrows(), self.q.nrows()).copy_from(&self.q);
        m.svd(false, false).singular_values.min()
    }

    /// Polar orthogonalisation of the pair: the point of the Grassmannian.
    pub fn orthogonalize(&self) -> SubspacePair {
        let r = self.p.nrows();
        let n = self.p.ncols();
        let mut m = CMatrix::zeros(n, n);
        m.rows_mut(0, r).copy_from(&self.p);
        m.rows_mut(r, n - r).copy_from(&self.q);
        let u = polar_orthonormalize(&m);
        SubspacePair {
            p: u.rows(0, r).into_owned(),
            q: u.rows(r, n - r).into_owned(),
        }
    }
}

/// Spans of the forms of each cluster, from the full construction on
/// `x_1..x_r, y_1..y_s`.
pub fn grassmann_map(x: &[[f64; 3]], y: &[[f64; 3]]) -> Result<SubspacePair> {
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            if dist(a, b) <= COLLISION_TOLERANCE {
                return Err(Error::CrossClusterCollision(i + 1, j + 1));
            }
        }
    }
    let mut pts = x.to_vec();
    pts.extend_from_slice(y);
    let has_collision = |c: &[[f64; 3]]| {
        (0..c.len()).any(|i| (i + 1..c.len()).any(|j| dist(&c[i], &c[j]) <= COLLISION_TOLERANCE))
    };
    if has_collision(x) || has_collision(y) {
        return Ok(collision_limit(x, y, &LimitOptions::default())?.pair);
    }
    spans(&PointConfig::new(pts)?, x.len())
}

fn spans(cfg: &PointConfig, r: usize) -> Result<SubspacePair> {
    let m = form_matrix(cfg)?;
    let n = cfg.n();
    Ok(SubspacePair {
        p: orthonormal_rows(&m.rows(0, r).into_owned()),
        q: orthonormal_rows(&m.rows(r, n - r).into_owned()),
    })
}

#[derive(Debug, Clone)]
pub struct LimitOptions {
    pub delta0: f64,
    pub max_steps: usize,
    pub tolerance: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            delta0: 1e-2,
            max_steps: 40,
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CollisionLimit {
    pub pair: SubspacePair,
    /// Successive distances between the perturbed spans.
    pub steps: Vec<f64>,
    /// Observed contraction ratio of successive distances.
    pub rate: f64,
}

/// Fixed, generic displacement directions for coincident points.
fn displacement(k: usize) -> [f64; 3] {
    let a = 0.7548776662466927 * (k + 1) as f64;
    let b = 0.5698402909980532 * (k + 1) as f64;
    let v = [(a * 6.283185307179586).cos(), (b * 6.283185307179586).sin(), 0.3 + 0.1 * k as f64];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Separates coincident points inside each cluster along the displacement
/// directions scaled by `delta`.
fn perturb(points: &[[f64; 3]], delta: f64, offset: usize) -> Vec<[f64; 3]> {
    let mut out = points.to_vec();
    for i in 0..points.len() {
        let dup = (0..i).filter(|&j| dist(&points[i], &points[j]) <= COLLISION_TOLERANCE).count();
        if dup > 0 {
            let d = displacement(offset + i);
            let s = delta * dup as f64;
            out[i] = [points[i][0] + s * d[0], points[i][1] + s * d[1], points[i][2] + s * d[2]];
        }
    }
    out
}

/// Limit of the cluster spans along `delta_k = delta0 2^{-k}` with a
/// Cauchy test on the principal angles.
pub fn collision_limit(x: &[[f64; 3]], y: &[[f64; 3]], opts: &LimitOptions) -> Result<CollisionLimit> {
    let r = x.len();
    let mut prev: Option<SubspacePair> = None;
    let mut steps = Vec::new();
    for k in 0..opts.max_steps {
        let delta = opts.delta0 * 0.5f64.powi(k as i32);
        let mut pts = perturb(x, delta, 0);
        pts.extend(perturb(y, delta, r));
        let cur = spans(&PointConfig::new(pts)?, r)?;
        if let Some(p) = &prev {
            let d = subspace_distance(&p.p, &cur.p).max(subspace_distance(&p.q, &cur.q));
            steps.push(d);
            if d < opts.tolerance {
                let rate = if steps.len() >= 2 {
                    steps[steps.len() - 1] / steps[steps.len() - 2]
                } else {
                    0.0
                };
                return Ok(CollisionLimit { pair: cur, steps, rate });
            }
        }
        prev = Some(cur);
    }
    Err(Error::NonConvergentLimit(steps.last().copied().unwrap_or(f64::NAN)))
}

/// Span of `q X` and `q Y`, where `q` vanishes at the directions from the
/// collision point `x_1 = x_2` to the remaining points.
pub fn two_point_collision_span(x1: [f64; 3], others: &[[f64; 3]]) -> Result<CMatrix> {
    let roots = others
        .iter()
        .map(|p| direction_root([p[0] - x1[0], p[1] - x1[1], p[2] - x1[2]]))
        .collect::<Result<Vec<_>>>()?;
    let q = form_monomial_coeffs(&roots);
    let m = q.len() + 1;
    let mut rows = CMatrix::zeros(2, m);
    for (k, c) in q.iter().enumerate() {
        rows[(0, k + 1)] = *c; // q X
        rows[(1, k)] = *c; // q Y
    }
    for i in 0..2 {
        let v = to_unitary_coords(&row(&rows, i));
        for (k, c) in v.into_iter().enumerate() {
            rows[(i, k)] = c;
        }
    }
    Ok(orthonormal_rows(&rows))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramResidual {
    /// Distance between the span of the first `r` lines of `f_n` and the
    /// `r`-plane of `f_{r,s}`.
    pub literal: f64,
    /// Smallest principal cosine between the two `r`-planes; positive means
    /// the straight-line homotopy between them stays in the Grassmannian.
    pub min_cosine: f64,
}

/// Compares the two routes around the square for a split into the first
/// `r` and last `n - r` points.
pub fn diagram_residual(cfg: &PointConfig, r: usize) -> Result<DiagramResidual> {
    let n = cfg.n();
    if r == 0 || r >= n {
        return Err(Error::InvalidInput(format!("split r = {r} of n = {n}")));
    }
    let u = atiyah_flag(cfg)?.lines;
    let top = orthonormal_rows(&u.rows(0, r).into_owned());
    let g = spans(cfg, r)?.orthogonalize();
    let cos = principal_cosines(&top, &g.p);
    Ok(DiagramResidual {
        literal: subspace_distance(&top, &g.p),
        min_cosine: cos.last().copied().unwrap_or(1.0),
    })
}

/// Fixed flag matched with one on-axis ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationEntry {
    pub component: Permutation,
    pub fixed_flag: Permutation,
    pub min_overlap: f64,
}

/// Runs the map on one on-axis configuration per ordering and reads off
/// which weight line each point's line lands on. The unitary basis vector
/// `X^k Y^{n-1-k}` carries the weight `mu_{k+1}`.
pub fn calibrate_fixed_labels(n: usize) -> Result<Vec<CalibrationEntry>> {
    check_size("n", n, 6)?;
    let perms = all_permutations_up_to(n, 6)?;
    perms
        .par_iter()
        .map(|sigma| {
            let u = atiyah_flag(&PointConfig::on_axis(sigma))?.lines;
            let mut images = Vec::with_capacity(n);
            let mut min_overlap = f64::INFINITY;
            for i in 0..n {
                let (k, best) = (0..n)
                    .map(|k| (k, u[(i, k)].norm()))
                    .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .expect("n > 0");
                if best < CALIBRATION_OVERLAP {
                    return Err(Error::AmbiguousMatch {
                        ordering: sigma.to_string(),
                        overlap: best,
                    });
                }
                min_overlap = min_overlap.min(best);
                images.push(k + 1);
            }
            let fixed_flag = Permutation::from_one_line(&images).map_err(|_| Error::AmbiguousMatch {
                ordering: sigma.to_string(),
                overlap: min_overlap,
            })?;
            Ok(CalibrationEntry {
                component: sigma.clone(),
                fixed_flag,
                min_overlap,
            })
        })
        .collect()
}

/// Uniform random point of the cube `[-1, 1]^3`.
fn random_point(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]
}

/// Random configuration whose points are at least `0.05` apart.
pub fn random_config(n: usize, rng: &mut ChaCha8Rng) -> PointConfig {
    loop {
        let pts: Vec<[f64; 3]> = (0..n).map(|_| random_point(rng)).collect();
        if let Ok(c) = PointConfig::new(pts) {
            if c.min_separation() > 0.05 {
                return c;
            }
        }
    }
}

/// Uniform random rotation (Shoemake).
pub fn random_rotation(rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let q = nalgebra::Quaternion::new(
        u1.sqrt() * (tau * u3).cos(),
        (1.0 - u1).sqrt() * (tau * u2).sin(),
        (1.0 - u1).sqrt() * (tau * u2).cos(),
        u1.sqrt() * (tau * u3).sin(),
    );
    *UnitQuaternion::from_quaternion(q).to_rotation_matrix().matrix()
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_one_line(&images).expect("shuffle of 1..n")
}

/// Worst residuals over a seeded Monte-Carlo run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MapSuiteReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub permutation: f64,
    pub rotation: f64,
    pub similarity: f64,
    pub polar: f64,
    pub max_condition: f64,
    /// Literal square-diagram distance, worst over splits `1 <= r < n`.
    pub diagram: f64,
    /// Smallest principal cosine between the two routes.
    pub diagram_min_cosine: f64,
    /// Literal distance on on-axis configurations.
    pub diagram_on_axis: f64,
}

/// Per-sample streams are seeded with `seed + index` so runs are
/// reproducible regardless of scheduling.
pub fn map_suite(n: usize, samples: usize, seed: u64) -> Result<MapSuiteReport> {
    check_size("n", n, MAX_POINTS)?;
    if n < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    let rows = (0..samples)
        .into_par_iter()
        .map(|k| -> Result<MapSuiteReport> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let cfg = random_config(n, &mut rng);
            let sigma = random_permutation(n, &mut rng);
            let rot = random_rotation(&mut rng);
            let flag = atiyah_flag(&cfg)?;
            let scale = rng.random_range(0.1..10.0);
            let shift = random_point(&mut rng);
            let moved = atiyah_flag(&cfg.scale_translate(scale, shift))?.lines;
            let similarity = (0..n)
                .map(|i| line_distance(&row(&moved, i), &row(&flag.lines, i)))
                .fold(0.0, f64::max);
            let mut diagram: f64 = 0.0;
            let mut cosine: f64 = 1.0;
            for r in 1..n {
                let d = diagram_residual(&cfg, r)?;
                diagram = diagram.max(d.literal);
                cosine = cosine.min(d.min_cosine);
            }
            let axis = PointConfig::on_axis(&sigma);
            let mut on_axis: f64 = 0.0;
            for r in 1..n {
                on_axis = on_axis.max(diagram_residual(&axis, r)?.literal);
            }
            Ok(MapSuiteReport {
                permutation: permutation_equivariance_residual(&cfg, &sigma)?,
                rotation: rotation_equivariance_residual(&cfg, &rot)?,
                similarity,
                polar: flag.diagnostics.polar_residual,
                max_condition: flag.diagnostics.condition_number,
                diagram,
                diagram_min_cosine: cosine,
                diagram_on_axis: on_axis,
                ..Default::default()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = MapSuiteReport {
        n,
        samples,
        seed,
        diagram_min_cosine: 1.0,
        ..Default::default()
    };
    for r in rows {
        out.permutation = out.permutation.max(r.permutation);
        out.rotation = out.rotation.max(r.rotation);
        out.similarity = out.similarity.max(r.similarity);
        out.polar = out.polar.max(r.polar);
        out.max_condition = out.max_condition.max(r.max_condition);
        out.diagram = out.diagram.max(r.diagram);
        out.diagram_min_cosine = out.diagram_min_cosine.min(r.diagram_min_cosine);
        out.diagram_on_axis = out.diagram_on_axis.max(r.diagram_on_axis);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        Complex::new(re, im)
    }

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn anchor_roots() {
        let up = direction_root([0.0, 0.0, 1.0]).unwrap();
        assert!(close(up[0], c(1.0, 0.0)) && close(up[1], c(0.0, 0.0)));
        let down = direction_root([0.0, 0.0, -2.0]).unwrap();
        assert!(close(down[0], c(0.0, 0.0)) && (down[1].norm() - 1.0).abs() < 1e-12);
        let x = direction_root([1.0, 0.0, 0.0]).unwrap();
        let mx = direction_root([-1.0, 0.0, 0.0]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(x[0], c(h, 0.0)) && close(x[1], c(h, 0.0)));
        assert!((x[0].conj() * mx[0] + x[1].conj() * mx[1]).norm() < 1e-12);
        assert!(direction_root([0.0; 3]).is_err());
    }

    #[test]
    fn hopf_inverts_roots() {
        let d = [0.3, -0.4, 0.5];
        let n = (0.5f64).sqrt();
        let h = hopf(direction_root(d).unwrap());
        for k in 0..3 {
            assert!((h[k] - d[k] / n).abs() < 1e-12);
        }
    }

    #[test]
    fn su2_lift_covers_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let r = random_rotation(&mut rng);
            let g = su2_lift(&r);
            let v = direction_root(random_point(&mut rng)).unwrap();
            let gv = [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]];
            let lhs = hopf(gv);
            let h = hopf(v);
            let rhs = r * Vector3::new(h[0], h[1], h[2]);
            for k in 0..3 {
                assert!((lhs[k] - rhs[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sym_power_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = su2_lift(&random_rotation(&mut rng));
        for m in 1..5 {
            assert!(orthonormality_residual(&sym_power(&g, m)) < 1e-12);
        }
    }

    #[test]
    fn two_points_are_already_orthogonal() {
        let cfg = PointConfig::new(vec![[0.1, 0.2, 0.3], [-0.5, 0.7, 1.1]]).unwrap();
        let m = form_matrix(&cfg).unwrap();
        let f = atiyah_flag(&cfg).unwrap();
        assert!(orthonormality_residual(&m) < 1e-12);
        for i in 0..2 {
            assert!(line_distance(&row(&m, i), &row(&f.lines, i)) < 1e-12);
        }
    }

    #[test]
    fn collinear_three_points_give_coordinate_lines() {
        let sigma = Permutation::identity(3);
        let u = atiyah_flag(&PointConfig::on_axis(&sigma)).unwrap().lines;
        // point i has i - 1 points below: X^{i-1} Y^{3-i}
        for i in 0..3 {
            assert!((u[(i, i)].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn coincident_points_are_rejected() {
        assert!(matches!(
            PointConfig::new(vec![[0.0; 3], [0.0; 3]]),
            Err(Error::CoincidentPoints(1, 2))
        ));
        assert!(matches!(
            grassmann_map(&[[0.0; 3]], &[[0.0; 3], [1.0, 0.0, 0.0]]),
            Err(Error::CrossClusterCollision(1, 1))
        ));
    }

    #[test]
    fn calibration_is_the_inverse() {
        for n in 2..=4 {
            for e in calibrate_fixed_labels(n).unwrap() {
                assert_eq!(e.fixed_flag, e.component.inverse());
                assert!(e.min_overlap > 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn single_point_cluster_is_its_form() {
        let x = [[0.0, 0.0, 0.0]];
        let y = [[1.0, 0.2, 0.0], [0.0, 1.0, 0.5]];
        let pair = grassmann_map(&x, &y).unwrap();
        let mut pts = x.to_vec();
        pts.extend_from_slice(&y);
        let m = form_matrix(&PointConfig::new(pts).unwrap()).unwrap();
        assert!(line_distance(&row(&pair.p, 0), &row(&m, 0)) < 1e-12);
        assert!(pair.spanning_margin() > 1e-3);
    }

    #[test]
    fn two_point_collision_matches_characterization() {
        let x1 = [0.1, -0.2, 0.3];
        let others = [[1.0, 0.5, -0.2], [-0.7, 0.4, 0.9]];
        let lim = collision_limit(&[x1, x1], &others, &LimitOptions::default()).unwrap();
        let expected = two_point_collision_span(x1, &others).unwrap();
        assert!(subspace_distance(&lim.pair.p, &expected) < 1e-7);
        assert!(lim.rate < 0.75);
    }

    #[test]
    fn small_suite() {
        let r = map_suite(3, 5, 1).unwrap();
        assert!(r.permutation < 1e-10);
        assert!(r.rotation < 1e-10);
        assert!(r.polar < 1e-12);
        assert!(r.diagram_on_axis < 1e-10);
        assert!(r.diagram_min_cosine > 0.0);
    }
}
