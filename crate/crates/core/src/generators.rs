//! Elementary matrices, the λ-matrix basis of su(n) and Hermitian exponentials.
//!
//! Off-diagonal generators come in symmetric/antisymmetric pairs
//!
//! ```text
//! Θ^h_j = e^h_j + e^j_h,      β^h_j = -i (e^h_j - e^j_h),      h < j
//! ```
//!
//! and the diagonal ones are
//!
//! ```text
//! η^m_m = sqrt(2 / (m (m+1))) (e^1_1 + … + e^m_m - m e^{m+1}_{m+1})
//! ```
//!
//! The λ numbering is blockwise: for `j = 2, …, n` append
//! `Θ^1_j, β^1_j, …, Θ^{j-1}_j, β^{j-1}_j, η^{j-1}_{j-1}`. This makes λ_1..λ_3
//! the Pauli matrices, λ_1..λ_8 the Gell-Mann matrices, and keeps every index
//! stable when `n` grows.

use std::fmt;

use nalgebra::SymmetricEigen;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, cone, czero, hermitian_deviation, max_abs, max_abs_diff, zeros, CMatrix,
};
use crate::scalar::{cis, from_usize, lit, to_f64, Real};

/// 1-based position of an elementary matrix `e^h_j` in an `n×n` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementaryIndex {
    h: usize,
    j: usize,
    n: usize,
}

impl ElementaryIndex {
    pub fn new(h: usize, j: usize, n: usize) -> Result<Self> {
        if h == 0 || j == 0 || h > n || j > n {
            return Err(Error::IndexOutOfRange { h, j, n });
        }
        Ok(Self { h, j, n })
    }

    pub fn row(&self) -> usize {
        self.h
    }

    pub fn col(&self) -> usize {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// `e^h_j`: 1 at (h, j), 0 elsewhere.
pub fn elementary<T: Real>(idx: ElementaryIndex) -> CMatrix<T> {
    let mut m = zeros(idx.n, idx.n);
    m[(idx.h - 1, idx.j - 1)] = cone();
    m
}

fn e<T: Real>(h: usize, j: usize, n: usize) -> CMatrix<T> {
    elementary(ElementaryIndex::new(h, j, n).expect("internal index in range"))
}

/// `Θ^h_j = e^h_j + e^j_h` for `h ≠ j`.
pub fn theta<T: Real>(h: usize, j: usize, n: usize) -> Result<CMatrix<T>> {
    ElementaryIndex::new(h, j, n)?;
    if h == j {
        return Err(Error::IndexOutOfRange { h, j, n });
    }
    Ok(e(h, j, n) + e(j, h, n))
}

/// `β^h_j = -i (e^h_j - e^j_h)` for `h ≠ j`.
pub fn beta<T: Real>(h: usize, j: usize, n: usize) -> Result<CMatrix<T>> {
    ElementaryIndex::new(h, j, n)?;
    if h == j {
        return Err(Error::IndexOutOfRange { h, j, n });
    }
    let minus_i = Complex::new(T::zero(), -T::one());
    Ok((e::<T>(h, j, n) - e::<T>(j, h, n)) * minus_i)
}

/// Diagonal generator `η^m_m`, `1 ≤ m ≤ n-1`.
pub fn eta<T: Real>(m: usize, n: usize) -> Result<CMatrix<T>> {
    if m == 0 || m >= n {
        return Err(Error::IndexOutOfRange { h: m, j: m, n });
    }
    let scale = (lit::<T>(2.0) / from_usize::<T>(m * (m + 1))).sqrt();
    let mut out = zeros(n, n);
    for k in 0..m {
        out[(k, k)] = Complex::new(scale, T::zero());
    }
    out[(m, m)] = Complex::new(-scale * from_usize::<T>(m), T::zero());
    Ok(out)
}

/// Which family a λ-matrix belongs to, with its 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorLabel {
    Theta { h: usize, j: usize },
    Beta { h: usize, j: usize },
    Eta { m: usize },
}

impl GeneratorLabel {
    /// 1-based λ index of this generator in the blockwise numbering.
    pub fn lambda_index(&self) -> usize {
        match *self {
            GeneratorLabel::Theta { h, j } => (j - 1) * (j - 1) + 2 * (h - 1),
            GeneratorLabel::Beta { h, j } => (j - 1) * (j - 1) + 2 * (h - 1) + 1,
            GeneratorLabel::Eta { m } => (m + 1) * (m + 1) - 1,
        }
    }

    pub fn matrix<T: Real>(&self, n: usize) -> Result<CMatrix<T>> {
        match *self {
            GeneratorLabel::Theta { h, j } => theta(h, j, n),
            GeneratorLabel::Beta { h, j } => beta(h, j, n),
            GeneratorLabel::Eta { m } => eta(m, n),
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::Theta { h, j } => write!(f, "Theta^{h}_{j}"),
            GeneratorLabel::Beta { h, j } => write!(f, "beta^{h}_{j}"),
            GeneratorLabel::Eta { m } => write!(f, "eta^{m}_{m}"),
        }
    }
}

/// The `n² - 1` λ-matrices of su(n) in blockwise order.
#[derive(Debug, Clone)]
pub struct GeneratorSet<T: Real> {
    n: usize,
    matrices: Vec<CMatrix<T>>,
    labels: Vec<GeneratorLabel>,
}

impl<T: Real> GeneratorSet<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// λ_k with the usual 1-based numbering. Panics when `k` is out of range.
    pub fn lambda(&self, k: usize) -> &CMatrix<T> {
        &self.matrices[k - 1]
    }

    pub fn label(&self, k: usize) -> GeneratorLabel {
        self.labels[k - 1]
    }

    pub fn matrices(&self) -> &[CMatrix<T>] {
        &self.matrices
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (GeneratorLabel, &CMatrix<T>)> {
        self.labels.iter().copied().zip(self.matrices.iter())
    }
}

pub fn lambda_labels(n: usize) -> Vec<GeneratorLabel> {
    let mut labels = Vec::with_capacity(n * n - 1);
    for j in 2..=n {
        for h in 1..j {
            labels.push(GeneratorLabel::Theta { h, j });
            labels.push(GeneratorLabel::Beta { h, j });
        }
        labels.push(GeneratorLabel::Eta { m: j - 1 });
    }
    labels
}

pub fn lambda_set<T: Real>(n: usize) -> Result<GeneratorSet<T>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let labels = lambda_labels(n);
    let matrices = labels
        .iter()
        .map(|l| l.matrix(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet {
        n,
        matrices,
        labels,
    })
}

/// Diagonal combinations that act as σ_3 on a lower-right 2×2 block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimedDiagonal {
    /// `λ₈′ = (√3 λ₈ − λ₃)/2 = diag(0, 1, −1, 0, …)`
    Lambda8,
    /// `λ₁₅′ = (√6 λ₁₅ − √3 λ₈)/3 = diag(0, 0, 1, −1, …)`
    Lambda15,
}

pub fn primed_lambda<T: Real>(n: usize, which: PrimedDiagonal) -> Result<CMatrix<T>> {
    let s3 = Complex::new(lit::<T>(3.0).sqrt(), T::zero());
    match which {
        PrimedDiagonal::Lambda8 => {
            if n < 3 {
                return Err(Error::DimensionTooSmall { n, min: 3 });
            }
            let half = Complex::new(lit::<T>(0.5), T::zero());
            Ok((eta::<T>(2, n)? * s3 - eta::<T>(1, n)?) * half)
        }
        PrimedDiagonal::Lambda15 => {
            if n < 4 {
                return Err(Error::DimensionTooSmall { n, min: 4 });
            }
            let s6 = Complex::new(lit::<T>(6.0).sqrt(), T::zero());
            let third = Complex::new(T::one() / lit::<T>(3.0), T::zero());
            Ok((eta::<T>(3, n)? * s6 - eta::<T>(2, n)? * s3) * third)
        }
    }
}

/// `Θ^a_b` extended to every index pair: symmetric for `a > b`, `2 e^a_a` on the diagonal.
fn theta_extended<T: Real>(a: usize, b: usize, n: usize) -> CMatrix<T> {
    if a == b {
        e::<T>(a, a, n) * Complex::new(lit::<T>(2.0), T::zero())
    } else {
        e::<T>(a, b, n) + e::<T>(b, a, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorReport<T> {
    pub max_deviation: T,
    pub tuples_checked: usize,
}

/// Checks
/// `[β^h_j, Θ^k_e] = −i δ^k_j Θ^h_e + i δ^h_e Θ^k_j + i δ^k_h Θ^j_e − i δ^j_e Θ^k_h`
/// for every `h < j`, `k < e`.
pub fn verify_beta_theta_commutators<T: Real>(n: usize) -> CommutatorReport<T> {
    let i = Complex::new(T::zero(), T::one());
    let delta = |a: usize, b: usize| a == b;
    let mut worst = T::zero();
    let mut count = 0;
    for j in 2..=n {
        for h in 1..j {
            let b = beta::<T>(h, j, n).expect("indices in range");
            for ee in 2..=n {
                for k in 1..ee {
                    let t = theta::<T>(k, ee, n).expect("indices in range");
                    let lhs = commutator(&b, &t);
                    let mut rhs = zeros::<T>(n, n);
                    if delta(k, j) {
                        rhs -= theta_extended::<T>(h, ee, n) * i;
                    }
                    if delta(h, ee) {
                        rhs += theta_extended::<T>(k, j, n) * i;
                    }
                    if delta(k, h) {
                        rhs += theta_extended::<T>(j, ee, n) * i;
                    }
                    if delta(j, ee) {
                        rhs -= theta_extended::<T>(k, h, n) * i;
                    }
                    worst = worst.max(max_abs_diff(&lhs, &rhs));
                    count += 1;
                }
            }
        }
    }
    CommutatorReport {
        max_deviation: worst,
        tuples_checked: count,
    }
}

/// Hermiticity tolerance for [`herm_exp`], relative to the largest entry.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// `exp(i t H)` for Hermitian `H`, via the eigendecomposition `H = V diag(λ) V†`.
pub fn herm_exp<T: Real>(h: &CMatrix<T>, t: T) -> Result<CMatrix<T>> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.nrows(),
            cols: h.ncols(),
        });
    }
    let scale = T::one().max(max_abs(h));
    let dev = hermitian_deviation(h);
    if dev > lit::<T>(HERMITIAN_TOL) * scale {
        return Err(Error::NotHermitian(to_f64(dev)));
    }
    let n = h.nrows();
    if n == 0 {
        return Ok(h.clone());
    }
    let eig = SymmetricEigen::new(h.clone());
    let v = eig.eigenvectors;
    let mut scaled = v.clone();
    for (c, lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = cis(t * *lambda);
        for r in 0..n {
            scaled[(r, c)] *= phase;
        }
    }
    Ok(scaled * v.adjoint())
}

/// Largest deviation of `tr(λ_a λ_b)` from `2 δ_ab` over a generator set.
pub fn trace_orthonormality_deviation<T: Real>(set: &GeneratorSet<T>) -> T {
    let two = Complex::new(lit::<T>(2.0), T::zero());
    let mut worst = T::zero();
    for (a, la) in set.matrices.iter().enumerate() {
        for (b, lb) in set.matrices.iter().enumerate() {
            let tr = (la * lb).trace();
            let expect = if a == b { two } else { czero() };
            worst = worst.max((tr - expect).norm_sqr().sqrt());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, unitarity_deviation};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn mat(rows: &[&[Complex<f64>]]) -> CMatrix<f64> {
        let n = rows.len();
        CMatrix::from_fn(n, rows[0].len(), |r, cc| rows[r][cc])
    }

    #[test]
    fn elementary_examples() {
        let e12 = elementary::<f64>(ElementaryIndex::new(1, 2, 2).unwrap());
        assert_eq!(
            e12,
            mat(&[&[c(0., 0.), c(1., 0.)], &[c(0., 0.), c(0., 0.)]])
        );
        let e21 = elementary::<f64>(ElementaryIndex::new(2, 1, 2).unwrap());
        assert_eq!(
            e21,
            mat(&[&[c(0., 0.), c(0., 0.)], &[c(1., 0.), c(0., 0.)]])
        );
        let e33 = elementary::<f64>(ElementaryIndex::new(3, 3, 3).unwrap());
        let mut d = zeros::<f64>(3, 3);
        d[(2, 2)] = c(1., 0.);
        assert_eq!(e33, d);
    }

    #[test]
    fn elementary_rejects_bad_index() {
        assert!(ElementaryIndex::new(0, 1, 2).is_err());
        assert!(ElementaryIndex::new(3, 1, 2).is_err());
        assert!(ElementaryIndex::new(1, 3, 2).is_err());
    }

    #[test]
    fn pauli_recovery() {
        let set = lambda_set::<f64>(2).unwrap();
        assert_eq!(set.len(), 3);
        let s1 = mat(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]]);
        let s2 = mat(&[&[c(0., 0.), c(0., -1.)], &[c(0., 1.), c(0., 0.)]]);
        let s3 = mat(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), c(-1., 0.)]]);
        assert!(max_abs_diff(set.lambda(1), &s1) < 1e-15);
        assert!(max_abs_diff(set.lambda(2), &s2) < 1e-15);
        assert!(max_abs_diff(set.lambda(3), &s3) < 1e-15);
    }

    #[test]
    fn lambda8_is_gell_mann() {
        let set = lambda_set::<f64>(3).unwrap();
        let l8 = set.lambda(8);
        let s = 1.0 / 3f64.sqrt();
        assert!((l8[(0, 0)].re - s).abs() < 1e-15);
        assert!((l8[(1, 1)].re - s).abs() < 1e-15);
        assert!((l8[(2, 2)].re + 2.0 * s).abs() < 1e-15);
        assert_eq!(set.label(8), GeneratorLabel::Eta { m: 2 });
    }

    #[test]
    fn su4_numbering() {
        let set = lambda_set::<f64>(4).unwrap();
        assert_eq!(set.len(), 15);
        let expect = [
            GeneratorLabel::Theta { h: 1, j: 2 },
            GeneratorLabel::Beta { h: 1, j: 2 },
            GeneratorLabel::Eta { m: 1 },
            GeneratorLabel::Theta { h: 1, j: 3 },
            GeneratorLabel::Beta { h: 1, j: 3 },
            GeneratorLabel::Theta { h: 2, j: 3 },
            GeneratorLabel::Beta { h: 2, j: 3 },
            GeneratorLabel::Eta { m: 2 },
            GeneratorLabel::Theta { h: 1, j: 4 },
            GeneratorLabel::Beta { h: 1, j: 4 },
            GeneratorLabel::Theta { h: 2, j: 4 },
            GeneratorLabel::Beta { h: 2, j: 4 },
            GeneratorLabel::Theta { h: 3, j: 4 },
            GeneratorLabel::Beta { h: 3, j: 4 },
            GeneratorLabel::Eta { m: 3 },
        ];
        assert_eq!(set.labels(), &expect);
        for (k, l) in set.labels().iter().enumerate() {
            assert_eq!(l.lambda_index(), k + 1);
        }
    }

    #[test]
    fn lambda_set_rejects_small_n() {
        assert_eq!(
            lambda_set::<f64>(1).unwrap_err(),
            Error::DimensionTooSmall { n: 1, min: 2 }
        );
    }

    #[test]
    fn primed_diagonals() {
        let l8p = primed_lambda::<f64>(3, PrimedDiagonal::Lambda8).unwrap();
        let d: Vec<f64> = l8p.diagonal().iter().map(|z| z.re).collect();
        assert!(d
            .iter()
            .zip([0.0, 1.0, -1.0])
            .all(|(a, b)| (a - b).abs() < 1e-15));

        let l8p4 = primed_lambda::<f64>(4, PrimedDiagonal::Lambda8).unwrap();
        let d: Vec<f64> = l8p4.diagonal().iter().map(|z| z.re).collect();
        assert!(d
            .iter()
            .zip([0.0, 1.0, -1.0, 0.0])
            .all(|(a, b)| (a - b).abs() < 1e-15));

        let l15p = primed_lambda::<f64>(4, PrimedDiagonal::Lambda15).unwrap();
        let d: Vec<f64> = l15p.diagonal().iter().map(|z| z.re).collect();
        assert!(d
            .iter()
            .zip([0.0, 0.0, 1.0, -1.0])
            .all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(max_abs(&(l15p.clone() - CMatrix::from_diagonal(&l15p.diagonal()))) == 0.0);

        assert!(primed_lambda::<f64>(2, PrimedDiagonal::Lambda8).is_err());
        assert!(primed_lambda::<f64>(3, PrimedDiagonal::Lambda15).is_err());
    }

    #[test]
    fn commutators_small_n() {
        for n in [2, 3, 5] {
            let report = verify_beta_theta_commutators::<f64>(n);
            assert_eq!(report.max_deviation, 0.0, "n = {n}");
            let pairs = n * (n - 1) / 2;
            assert_eq!(report.tuples_checked, pairs * pairs);
        }
    }

    #[test]
    fn herm_exp_sigma2_is_rotation() {
        let s2 = lambda_set::<f64>(2).unwrap().lambda(2).clone();
        let th = 0.37;
        let u = herm_exp(&s2, -th).unwrap();
        let expect = mat(&[
            &[c(th.cos(), 0.), c(-th.sin(), 0.)],
            &[c(th.sin(), 0.), c(th.cos(), 0.)],
        ]);
        assert!(max_abs_diff(&u, &expect) < 1e-14);
    }

    #[test]
    fn herm_exp_diagonal_and_zero() {
        let s3 = lambda_set::<f64>(2).unwrap().lambda(3).clone();
        let phi = 1.3;
        let u = herm_exp(&s3, phi / 2.0).unwrap();
        assert!((u[(0, 0)] - Complex::from_polar(1.0, phi / 2.0)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex::from_polar(1.0, -phi / 2.0)).norm() < 1e-15);
        assert!(u[(0, 1)].norm() < 1e-15);

        let set = lambda_set::<f64>(4).unwrap();
        let u0 = herm_exp(set.lambda(11), 0.0).unwrap();
        assert!(max_abs_diff(&u0, &identity(4)) < 1e-15);
        let u1 = herm_exp(set.lambda(14), 0.9).unwrap();
        assert!(unitarity_deviation(&u1) < 1e-14);
    }

    #[test]
    fn herm_exp_rejects_non_hermitian() {
        let e12 = elementary::<f64>(ElementaryIndex::new(1, 2, 2).unwrap());
        assert!(matches!(herm_exp(&e12, 1.0), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn single_precision_builds() {
        let set = lambda_set::<f32>(3).unwrap();
        assert!(trace_orthonormality_deviation(&set) < 1e-5);
        assert!(verify_beta_theta_commutators::<f32>(3).max_deviation < 1e-6);
    }
}
