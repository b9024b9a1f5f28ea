//! Ladder and Cartan operators on the occupation basis, stored as coordinate triplets.
//!
//! Every operator here is the second-quantized lift `J^h_j = a†_h a_j` of the
//! elementary matrix `e^h_j`: it moves one quantum from mode `j` to mode `h` with
//! amplitude `√((m_h + 1) m_j)`. For `h < j` this raises, for `h > j` it lowers,
//! and `J^h_h` counts `m_h`.

use num_complex::Complex;

use super::basis::OccupationBasis;
use crate::error::{Error, Result};
use crate::generators::eta;
use crate::linalg::{zeros, CMatrix};
use crate::scalar::{cplx, from_usize, Real};

/// Sparse square operator; `entries` are `(row, col, value)` with unique positions.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T> {
    dim: usize,
    entries: Vec<(usize, usize, Complex<T>)>,
}

impl<T: Real> SparseOperator<T> {
    /// Sums duplicate positions and drops exact zeros.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, Complex<T>)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, Complex<T>)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(
                r < dim && c < dim,
                "triplet ({r}, {c}) outside dimension {dim}"
            );
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2.norm_sqr() != T::zero());
        Self { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex<T>)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map(|i| self.entries[i].2)
            .unwrap_or_else(|_| cplx(T::zero(), T::zero()))
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim, "vector length does not match operator");
        let mut out = vec![cplx(T::zero(), T::zero()); self.dim];
        for &(r, c, x) in &self.entries {
            out[r] += x * v[c];
        }
        out
    }

    pub fn to_dense(&self) -> CMatrix<T> {
        let mut m = zeros(self.dim, self.dim);
        for &(r, c, x) in &self.entries {
            m[(r, c)] = x;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(
            self.dim,
            self.entries
                .iter()
                .map(|&(r, c, x)| (c, r, x.conj()))
                .collect(),
        )
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self::from_triplets(
            self.dim,
            self.entries
                .iter()
                .map(|&(r, c, x)| (r, c, x * s))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut t = self.entries.clone();
        t.extend_from_slice(&other.entries);
        Self::from_triplets(self.dim, t)
    }
}

fn check_mode(basis: &OccupationBasis, h: usize, j: usize) -> Result<()> {
    let n = basis.n();
    if h == 0 || j == 0 || h > n || j > n {
        return Err(Error::IndexOutOfRange { h, j, n });
    }
    Ok(())
}

/// `a†_h a_j` for any 1-based `h, j`.
pub fn ladder_op<T: Real>(
    basis: &OccupationBasis,
    h: usize,
    j: usize,
) -> Result<SparseOperator<T>> {
    check_mode(basis, h, j)?;
    let (h0, j0) = (h - 1, j - 1);
    let mut triplets = Vec::new();
    for (col, state) in basis.states().iter().enumerate() {
        let m = state.as_slice();
        if h0 == j0 {
            if m[h0] > 0 {
                triplets.push((col, col, cplx(from_usize::<T>(m[h0]), T::zero())));
            }
            continue;
        }
        if m[j0] == 0 {
            continue;
        }
        let mut target = m.to_vec();
        target[h0] += 1;
        target[j0] -= 1;
        let row = basis
            .index_of(&target)
            .expect("shifted occupation stays in the basis");
        let amp = from_usize::<T>((m[h0] + 1) * m[j0]).sqrt();
        triplets.push((row, col, cplx(amp, T::zero())));
    }
    Ok(SparseOperator::from_triplets(basis.dim(), triplets))
}

/// Raising operator `J^h_j`, `h < j`.
pub fn raising_op<T: Real>(
    basis: &OccupationBasis,
    h: usize,
    j: usize,
) -> Result<SparseOperator<T>> {
    check_mode(basis, h, j)?;
    if h >= j {
        return Err(Error::IndexOutOfRange { h, j, n: basis.n() });
    }
    ladder_op(basis, h, j)
}

/// Lowering operator `J^h_j`, `h > j`; the adjoint of `J^j_h`.
pub fn lowering_op<T: Real>(
    basis: &OccupationBasis,
    h: usize,
    j: usize,
) -> Result<SparseOperator<T>> {
    check_mode(basis, h, j)?;
    if h <= j {
        return Err(Error::IndexOutOfRange { h, j, n: basis.n() });
    }
    ladder_op(basis, h, j)
}

/// Cartan operator `J^h_h`, diagonal with value
/// `√(2/(h(h+1))) (m_1 + … + m_h − h m_{h+1})`, `1 ≤ h ≤ n−1`.
pub fn cartan_op<T: Real>(basis: &OccupationBasis, h: usize) -> Result<SparseOperator<T>> {
    let n = basis.n();
    if h == 0 || h >= n {
        return Err(Error::IndexOutOfRange { h, j: h, n });
    }
    let scale = (from_usize::<T>(2) / from_usize::<T>(h * (h + 1))).sqrt();
    let triplets = basis
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let m = s.as_slice();
            let lower: usize = m[..h].iter().sum();
            let value = from_usize::<T>(lower) - from_usize::<T>(h * m[h]);
            (i, i, cplx(scale * value, T::zero()))
        })
        .collect();
    Ok(SparseOperator::from_triplets(basis.dim(), triplets))
}

/// Second-quantized lift `Σ_{hj} G_{hj} a†_h a_j` of an `n×n` matrix.
pub fn lift_generator<T: Real>(
    basis: &OccupationBasis,
    g: &CMatrix<T>,
) -> Result<SparseOperator<T>> {
    let n = basis.n();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g.nrows().max(g.ncols()),
        });
    }
    let mut acc = SparseOperator::zero(basis.dim());
    for h in 1..=n {
        for j in 1..=n {
            let coeff = g[(h - 1, j - 1)];
            if coeff.norm_sqr() == T::zero() {
                continue;
            }
            acc = acc.add(&ladder_op(basis, h, j)?.scaled(coeff));
        }
    }
    Ok(acc)
}

/// Lift of `η^h_h`, used to cross-check [`cartan_op`].
pub fn lifted_eta<T: Real>(basis: &OccupationBasis, h: usize) -> Result<SparseOperator<T>> {
    lift_generator(basis, &eta::<T>(h, basis.n())?)
}
