//! Dense complex matrix helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::scalar::{modulus, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

#[inline]
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

pub fn zeros<T: Real>(rows: usize, cols: usize) -> CMatrix<T> {
    CMatrix::from_element(rows, cols, czero())
}

pub fn basis_vector<T: Real>(n: usize, k: usize) -> CVector<T> {
    let mut v = CVector::from_element(n, czero());
    v[k] = cone();
    v
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(modulus(*z)))
}

pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc.max(modulus(*x - *y)))
}

pub fn max_abs_diff_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc.max(modulus(*x - *y)))
}

/// `max |M - M†|`.
pub fn hermitian_deviation<T: Real>(m: &CMatrix<T>) -> T {
    max_abs_diff(m, &m.adjoint())
}

/// `max |U†U - I|`.
pub fn unitarity_deviation<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.ncols();
    max_abs_diff(&(u.adjoint() * u), &identity(n))
}

pub fn commutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b - b * a
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> Complex<T> {
    m.diagonal().iter().fold(czero(), |acc, z| acc + *z)
}

/// Hermitian inner product `⟨a|b⟩ = Σ conj(a_k) b_k`.
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(czero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub fn norm<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Embeds `block` into an `n×n` identity with its top-left corner at (`offset`, `offset`).
pub fn embed<T: Real>(n: usize, offset: usize, block: &CMatrix<T>) -> CMatrix<T> {
    let k = block.nrows();
    assert!(offset + k <= n, "block does not fit");
    let mut out = identity(n);
    out.view_mut((offset, offset), (k, k)).copy_from(block);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_places_block() {
        let b = CMatrix::<f64>::from_element(2, 2, Complex::new(2.0, 0.0));
        let m = embed(4, 1, &b);
        assert_eq!(m[(0, 0)], cone());
        assert_eq!(m[(1, 2)], Complex::new(2.0, 0.0));
        assert_eq!(m[(3, 3)], cone());
        assert_eq!(m[(0, 1)], czero());
    }

    #[test]
    fn unitarity_of_identity() {
        assert_eq!(unitarity_deviation(&identity::<f64>(5)), 0.0);
    }
}
