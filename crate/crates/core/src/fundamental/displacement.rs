//! Displacement operators written as products of λ-matrix exponentials.
//!
//! SU(3): `e^{iαλ₈′} e^{iβλ₇} e^{iγλ₈′} · e^{iφ/2 λ₃} e^{−iθλ₂} e^{iφ/2 λ₃}` with
//! `φ₁ = α+γ`, `φ₂ = −α+γ`, `ξ₁ = −β`.
//!
//! SU(4): `e^{iαλ₁₅′} e^{iβλ₁₄} e^{iγλ₁₅′} · e^{iφ₁/2 λ₈′} e^{−iξ₁λ₇} e^{iφ₁/2 λ₈′} ·
//! e^{iφ/2 λ₃} e^{−iθλ₂} e^{iφ/2 λ₃}` with `φ₂ = α+γ`, `φ₃ = −α+γ`, `ξ₂ = −β`.
//!
//! The primed diagonals are expanded into λ₃, λ₈, λ₁₅ factors, so every factor is
//! the exponential of a single basis generator.

use crate::error::{Error, Result};
use crate::generators::{herm_exp, lambda_set, GeneratorSet};
use crate::linalg::{identity, CMatrix};
use crate::scalar::{lit, Real};

use super::AngleCoordinates;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su3Displacement<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub theta: T,
    pub phi: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su4Displacement<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub xi1: T,
    pub phi1: T,
    pub theta: T,
    pub phi: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DisplacementParams<T> {
    Su3(Su3Displacement<T>),
    Su4(Su4Displacement<T>),
}

impl<T: Real> DisplacementParams<T> {
    /// Inverts the parameter map: `α = (φ_a − φ_b)/2`, `γ = (φ_a + φ_b)/2`, `β = −ξ`
    /// on the innermost SU(2) block.
    pub fn from_angles(angles: &AngleCoordinates<T>) -> Result<Self> {
        let half = lit::<T>(0.5);
        let (xi, phi) = (&angles.xi, &angles.phi);
        match angles.n() {
            3 => Ok(DisplacementParams::Su3(Su3Displacement {
                alpha: (phi[1] - phi[2]) * half,
                beta: -xi[1],
                gamma: (phi[1] + phi[2]) * half,
                theta: xi[0],
                phi: phi[0],
            })),
            4 => Ok(DisplacementParams::Su4(Su4Displacement {
                alpha: (phi[2] - phi[3]) * half,
                beta: -xi[2],
                gamma: (phi[2] + phi[3]) * half,
                xi1: xi[1],
                phi1: phi[1],
                theta: xi[0],
                phi: phi[0],
            })),
            n => Err(Error::DimensionMismatch {
                expected: 3,
                got: n,
            }),
        }
    }

    /// Forward map to coset coordinates, evaluated without range normalization.
    pub fn to_angles(&self) -> AngleCoordinates<T> {
        match *self {
            DisplacementParams::Su3(p) => AngleCoordinates {
                xi: vec![p.theta, -p.beta],
                phi: vec![p.phi, p.alpha + p.gamma, p.gamma - p.alpha],
            },
            DisplacementParams::Su4(p) => AngleCoordinates {
                xi: vec![p.theta, p.xi1, -p.beta],
                phi: vec![p.phi, p.phi1, p.alpha + p.gamma, p.gamma - p.alpha],
            },
        }
    }

    pub fn n(&self) -> usize {
        match self {
            DisplacementParams::Su3(_) => 3,
            DisplacementParams::Su4(_) => 4,
        }
    }

    /// The factors `(k, t)` of `∏ exp(i t λ_k)` in left-to-right order.
    pub fn factors(&self) -> Vec<(usize, T)> {
        let half = lit::<T>(0.5);
        let quarter = lit::<T>(0.25);
        let s3 = lit::<T>(3.0).sqrt();
        let s6 = lit::<T>(6.0).sqrt();
        let third = T::one() / lit::<T>(3.0);
        match *self {
            DisplacementParams::Su3(p) => vec![
                (8, s3 * p.alpha * half),
                (3, -p.alpha * half),
                (7, p.beta),
                (8, s3 * p.gamma * half),
                (3, -p.gamma * half),
                (3, p.phi * half),
                (2, -p.theta),
                (3, p.phi * half),
            ],
            DisplacementParams::Su4(p) => vec![
                (15, s6 * p.alpha * third),
                (8, -s3 * p.alpha * third),
                (14, p.beta),
                (15, s6 * p.gamma * third),
                (8, -s3 * p.gamma * third),
                (8, s3 * p.phi1 * quarter),
                (3, -p.phi1 * quarter),
                (7, -p.xi1),
                (8, s3 * p.phi1 * quarter),
                (3, -p.phi1 * quarter),
                (3, p.phi * half),
                (2, -p.theta),
                (3, p.phi * half),
            ],
        }
    }
}

/// Multiplies out the λ-exponential product for the given parameters.
pub fn displacement_lambda<T: Real>(params: &DisplacementParams<T>) -> Result<CMatrix<T>> {
    let n = params.n();
    let set: GeneratorSet<T> = lambda_set(n)?;
    params
        .factors()
        .into_iter()
        .try_fold(identity(n), |acc, (k, t)| {
            Ok(acc * herm_exp(set.lambda(k), t)?)
        })
}
