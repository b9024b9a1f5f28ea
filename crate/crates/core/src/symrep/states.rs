//! Coherent states `|n^N_n⟩` of the symmetric representation.
//!
//! Three independent constructions produce the same amplitude vector over
//! [`basis(n, N)`](super::basis):
//!
//! * the nested η-expansion ([`coherent_state`]),
//! * the N-th symmetric tensor power of the fundamental state ([`tensor_power_oracle`]),
//! * the stereographic expansion in `ζ_k = e^{i(φ_{k+1}−φ_k)} tan ξ_k` ([`stereographic_state`]).

use num_complex::Complex;
use serde::Serialize;

use super::basis::{basis, OccupationBasis};
use super::operators::lift_generator;
use crate::error::{Error, Result};
use crate::fundamental::{coherent_state_fund, AngleCoordinates, DisplacementParams};
use crate::generators::{herm_exp, lambda_set};
use crate::linalg::{inner, norm, CMatrix, CVector};
use crate::scalar::{binomial, cis, cplx, multinomial, powu, powu_c, Real};

/// Amplitudes of a coherent state over the occupation basis `basis(n, size)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepCoherentState<T> {
    pub n: usize,
    pub size: usize,
    pub amplitudes: Vec<Complex<T>>,
}

impl<T: Real> RepCoherentState<T> {
    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }
}

/// `|N, 0, …, 0⟩` as a dense vector.
pub fn highest_weight<T: Real>(basis: &OccupationBasis) -> Vec<Complex<T>> {
    let mut v = vec![cplx(T::zero(), T::zero()); basis.dim()];
    v[basis.highest_weight_index()] = cplx(T::one(), T::zero());
    v
}

/// `η^N_j(φ_A, φ_B, θ) = e^{ijφ_B} e^{i(N−j)φ_A} sin^j θ cos^{N−j} θ √C(N, j)`.
pub fn eta_coeff<T: Real>(
    size: usize,
    j: usize,
    phi_a: T,
    phi_b: T,
    theta: T,
) -> Result<Complex<T>> {
    if j > size {
        return Err(Error::ExpansionIndex { j, max: size });
    }
    Ok(eta_unchecked(size, j, phi_a, phi_b, theta))
}

fn eta_unchecked<T: Real>(size: usize, j: usize, phi_a: T, phi_b: T, theta: T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    let phase = crate::scalar::from_usize::<T>(j) * phi_b
        + crate::scalar::from_usize::<T>(size - j) * phi_a;
    cis(phase) * (powu(s, j) * powu(c, size - j) * binomial::<T>(size, j).sqrt())
}

/// Nested η-expansion; amplitude at `(j_1, …, j_{n−1})` is
/// `η^N_{j_1}(φ_0, 0, ξ_0) η^{j_1}_{j_2}(φ_1, 0, ξ_1) ⋯ η^{j_{n−2}}_{j_{n−1}}(φ_{n−2}, φ_{n−1}, ξ_{n−2})`.
pub fn coherent_state<T: Real>(size: usize, angles: &AngleCoordinates<T>) -> RepCoherentState<T> {
    let n = angles.n();
    let mut amplitudes = Vec::with_capacity(super::basis_dimension(n, size));
    nest(angles, 0, size, cplx(T::one(), T::zero()), &mut amplitudes);
    RepCoherentState {
        n,
        size,
        amplitudes,
    }
}

fn nest<T: Real>(
    angles: &AngleCoordinates<T>,
    level: usize,
    prev: usize,
    acc: Complex<T>,
    out: &mut Vec<Complex<T>>,
) {
    let last = angles.xi.len() - 1;
    let phi_b = if level == last {
        angles.phi[level + 1]
    } else {
        T::zero()
    };
    for j in 0..=prev {
        let term = acc * eta_unchecked(prev, j, angles.phi[level], phi_b, angles.xi[level]);
        if level == last {
            out.push(term);
        } else {
            nest(angles, level + 1, j, term, out);
        }
    }
}

/// `√(N!/∏ m_k!) ∏ c_k^{m_k}` with `c` the fundamental coherent state.
pub fn tensor_power_oracle<T: Real>(
    size: usize,
    angles: &AngleCoordinates<T>,
) -> RepCoherentState<T> {
    let n = angles.n();
    let c = coherent_state_fund(angles).amplitudes;
    let b = basis(n, size).expect("n >= 2");
    let amplitudes = b
        .states()
        .iter()
        .map(|m| {
            let m = m.as_slice();
            let prod = m
                .iter()
                .zip(&c)
                .fold(cplx(T::one(), T::zero()), |acc, (&mk, ck)| {
                    acc * powu_c(*ck, mk)
                });
            prod * multinomial::<T>(m).sqrt()
        })
        .collect();
    RepCoherentState {
        n,
        size,
        amplitudes,
    }
}

/// Global phase `φ_0` and `ζ_k = e^{i(φ_{k+1}−φ_k)} tan ξ_k`, `k = 0 … n−2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StereoCoordinates<T> {
    pub global_phase: T,
    pub zeta: Vec<Complex<T>>,
}

pub fn angles_to_stereo<T: Real>(angles: &AngleCoordinates<T>) -> Result<StereoCoordinates<T>> {
    let mut zeta = Vec::with_capacity(angles.xi.len());
    for (k, &x) in angles.xi.iter().enumerate() {
        if (x - T::frac_pi_2()).abs() <= T::default_epsilon() || x.cos().abs() == T::zero() {
            return Err(Error::StereographicPole { index: k });
        }
        zeta.push(cis(angles.phi[k + 1] - angles.phi[k]) * x.tan());
    }
    Ok(StereoCoordinates {
        global_phase: angles.phi[0],
        zeta,
    })
}

/// Stereographic expansion
/// `e^{iφ_0 N} ∏_k (1+|ζ_k|²)^{−j_k/2} ζ_k^{j_{k+1}} √C(j_k, j_{k+1})`, `j_0 = N`.
pub fn stereographic_state<T: Real>(
    size: usize,
    stereo: &StereoCoordinates<T>,
) -> RepCoherentState<T> {
    let n = stereo.zeta.len() + 1;
    let mut amplitudes = Vec::with_capacity(super::basis_dimension(n, size));
    let global = cis(stereo.global_phase * crate::scalar::from_usize::<T>(size));
    stereo_nest(stereo, 0, size, global, &mut amplitudes);
    RepCoherentState {
        n,
        size,
        amplitudes,
    }
}

fn stereo_nest<T: Real>(
    stereo: &StereoCoordinates<T>,
    level: usize,
    prev: usize,
    acc: Complex<T>,
    out: &mut Vec<Complex<T>>,
) {
    let z = stereo.zeta[level];
    // (1 + |ζ|²)^{−prev/2}
    let damp = powu(T::one() / (T::one() + z.norm_sqr()).sqrt(), prev);
    let last = level + 1 == stereo.zeta.len();
    for j in 0..=prev {
        let term = acc * powu_c(z, j) * (damp * binomial::<T>(prev, j).sqrt());
        if last {
            out.push(term);
        } else {
            stereo_nest(stereo, level + 1, j, term, out);
        }
    }
}

/// Closed-form overlap `⟨n(a)|n(b)⟩` in the size-N representation:
///
/// ```text
/// ( e^{i(φ_{n−1}−φ′_{n−1})} ∏_{k=0}^{n−2} sin ξ_k sin ξ′_k
///   + Σ_{m=0}^{n−2} e^{i(φ_m−φ′_m)} cos ξ_m cos ξ′_m ∏_{k<m} sin ξ_k sin ξ′_k )^N
/// ```
///
/// with unprimed angles from `b` and primed from `a`.
pub fn overlap_closed<T: Real>(
    a: &AngleCoordinates<T>,
    b: &AngleCoordinates<T>,
    size: usize,
) -> Result<Complex<T>> {
    let n = b.n();
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.n(),
        });
    }
    let mut sum = cplx(T::zero(), T::zero());
    let mut sines = T::one();
    for m in 0..n - 1 {
        let (sb, cb) = b.xi[m].sin_cos();
        let (sa, ca) = a.xi[m].sin_cos();
        sum += cis(b.phi[m] - a.phi[m]) * (cb * ca * sines);
        sines *= sb * sa;
    }
    sum += cis(b.phi[n - 1] - a.phi[n - 1]) * sines;
    Ok(powu_c(sum, size))
}

/// `⟨n(a)|n(b)⟩` from the amplitude vectors.
pub fn direct_overlap<T: Real>(
    a: &AngleCoordinates<T>,
    b: &AngleCoordinates<T>,
    size: usize,
) -> Result<Complex<T>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            got: a.n(),
        });
    }
    let sa = coherent_state(size, a);
    let sb = coherent_state(size, b);
    Ok(inner(&sa.amplitudes, &sb.amplitudes))
}

/// Applies the lifted λ-exponential displacement `∏ exp(i t T^N(λ_k))` to `|N, 0, …, 0⟩`.
pub fn displaced_highest_weight<T: Real>(
    params: &DisplacementParams<T>,
    size: usize,
) -> Result<RepCoherentState<T>> {
    let n = params.n();
    let b = basis(n, size)?;
    let set = lambda_set::<T>(n)?;
    let mut v = CVector::from_vec(highest_weight::<T>(&b));
    // Rightmost factor acts first.
    for (k, t) in params.factors().into_iter().rev() {
        let lifted: CMatrix<T> = lift_generator(&b, set.lambda(k))?.to_dense();
        v = herm_exp(&lifted, t)? * v;
    }
    Ok(RepCoherentState {
        n,
        size,
        amplitudes: v.as_slice().to_vec(),
    })
}
