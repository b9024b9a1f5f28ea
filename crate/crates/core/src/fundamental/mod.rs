//! Fundamental (n×n) representation: the recursive `L·M·R` parameterization of
//! SU(n), coherent states on the (2n−1)-sphere and the coset geometry.

mod displacement;
mod tree;

pub use displacement::{displacement_lambda, DisplacementParams, Su3Displacement, Su4Displacement};
pub use tree::{
    build_group_element, complete_first_column, decompose, DecompositionTree, DEFAULT_DECOMPOSE_TOL,
};

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{embed, CMatrix};
use crate::scalar::{argument, cis, cplx, modulus, wrap_phase, Real};

/// Spherical coordinates of a coset point: polar angles `ξ_0 … ξ_{n−2}` and
/// phases `φ_0 … φ_{n−1}` (radians).
///
/// `ξ_0`/`φ_0` play the role of the root `θ`/`φ` of the parameterization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleCoordinates<T> {
    pub xi: Vec<T>,
    pub phi: Vec<T>,
}

impl<T: Real> AngleCoordinates<T> {
    /// Validated constructor: `0 ≤ ξ_k ≤ π/2`, `0 ≤ φ_k < 2π`, `|φ| = |ξ| + 1 ≥ 2`.
    pub fn new(xi: Vec<T>, phi: Vec<T>) -> Result<Self> {
        let out = Self::unchecked(xi, phi)?;
        out.check_ranges()?;
        Ok(out)
    }

    /// Wraps the phases into [0, 2π) before validating.
    pub fn normalized(xi: Vec<T>, phi: Vec<T>) -> Result<Self> {
        let phi = phi.into_iter().map(wrap_phase).collect();
        Self::new(xi, phi)
    }

    /// Only checks the lengths. Formulas are evaluated on whatever angles are given,
    /// which finite differencing and parameter maps rely on.
    pub fn unchecked(xi: Vec<T>, phi: Vec<T>) -> Result<Self> {
        if phi.len() < 2 || xi.len() + 1 != phi.len() {
            return Err(Error::InvalidAngles(format!(
                "need n-1 polar angles and n >= 2 phases, got {} and {}",
                xi.len(),
                phi.len()
            )));
        }
        Ok(Self { xi, phi })
    }

    /// Highest-weight point: every angle zero.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "coset coordinates need n >= 2");
        Self {
            xi: vec![T::zero(); n - 1],
            phi: vec![T::zero(); n],
        }
    }

    pub fn check_ranges(&self) -> Result<()> {
        let half_pi = T::frac_pi_2();
        let two_pi = T::two_pi();
        for (k, &x) in self.xi.iter().enumerate() {
            if !(x >= T::zero() && x <= half_pi) {
                return Err(Error::InvalidAngles(format!(
                    "xi_{k} = {x} outside [0, pi/2]"
                )));
            }
        }
        for (k, &p) in self.phi.iter().enumerate() {
            if !(p >= T::zero() && p < two_pi) {
                return Err(Error::InvalidAngles(format!(
                    "phi_{k} = {p} outside [0, 2pi)"
                )));
            }
        }
        Ok(())
    }

    /// Group dimension `n`.
    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Number of real coordinates, `2n − 1`.
    pub fn coordinate_count(&self) -> usize {
        self.xi.len() + self.phi.len()
    }

    /// Coordinates in metric order `(ξ_0, φ_0, ξ_1, φ_1, …, ξ_{n−2}, φ_{n−2}, φ_{n−1})`.
    pub fn to_flat(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.coordinate_count());
        for (x, p) in self.xi.iter().zip(&self.phi) {
            out.push(*x);
            out.push(*p);
        }
        out.push(*self.phi.last().expect("n >= 2"));
        out
    }

    /// Inverse of [`to_flat`](Self::to_flat), without range checks.
    pub fn from_flat(flat: &[T]) -> Result<Self> {
        if flat.len() < 3 || flat.len().is_multiple_of(2) {
            return Err(Error::InvalidAngles(format!(
                "flat coordinate list must have odd length >= 3, got {}",
                flat.len()
            )));
        }
        let m = flat.len() / 2;
        let xi = (0..m).map(|k| flat[2 * k]).collect();
        let mut phi: Vec<T> = (0..m).map(|k| flat[2 * k + 1]).collect();
        phi.push(flat[flat.len() - 1]);
        Self::unchecked(xi, phi)
    }

    /// The tail `(ξ_1…, φ_1…)` describing the embedded SU(n−1) point; `None` at n = 2.
    pub fn tail(&self) -> Option<Self> {
        if self.n() <= 2 {
            return None;
        }
        Some(Self {
            xi: self.xi[1..].to_vec(),
            phi: self.phi[1..].to_vec(),
        })
    }
}

/// Unit vector in `C^n`: the orbit of `(1, 0, …, 0)ᵀ` in the fundamental representation.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalState<T> {
    pub amplitudes: Vec<Complex<T>>,
}

impl<T: Real> FundamentalState<T> {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> T {
        crate::linalg::norm(&self.amplitudes)
    }
}

/// SU(2) element
///
/// ```text
/// ( e^{iφ1} cos θ   −e^{−iφ2} sin θ )
/// ( e^{iφ2} sin θ    e^{−iφ1} cos θ )
/// ```
pub fn su2_matrix<T: Real>(theta: T, phi1: T, phi2: T) -> CMatrix<T> {
    let (s, c) = theta.sin_cos();
    let a = cis(phi1) * c;
    let b = cis(phi2) * s;
    DMatrix::from_row_slice(2, 2, &[a, -b.conj(), b, a.conj()])
}

/// `M(θ, φ)`: the SU(2) block `[[e^{iφ}cos θ, −sin θ], [sin θ, e^{−iφ}cos θ]]`
/// on the first two coordinates, identity elsewhere.
pub fn middle_matrix<T: Real>(n: usize, theta: T, phi: T) -> Result<CMatrix<T>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let (s, c) = theta.sin_cos();
    let a = cis(phi) * c;
    let block = DMatrix::from_row_slice(
        2,
        2,
        &[a, cplx(-s, T::zero()), cplx(s, T::zero()), a.conj()],
    );
    Ok(embed(n, 0, &block))
}

/// Coherent state of the fundamental representation,
/// `n_n = (e^{iφ_0} cos ξ_0, sin ξ_0 · n_{n−1})` with `n_1 = (e^{iφ_{n−1}})`.
pub fn coherent_state_fund<T: Real>(angles: &AngleCoordinates<T>) -> FundamentalState<T> {
    let n = angles.n();
    let mut amplitudes = Vec::with_capacity(n);
    let mut carry = T::one();
    for (x, p) in angles.xi.iter().zip(&angles.phi) {
        let (s, c) = x.sin_cos();
        amplitudes.push(cis(*p) * (carry * c));
        carry *= s;
    }
    amplitudes.push(cis(angles.phi[n - 1]) * carry);
    FundamentalState { amplitudes }
}

/// Fundamental state with its overall phase removed.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFixedState<T> {
    pub state: FundamentalState<T>,
    /// Component made real and non-negative (0 unless the first amplitude vanishes).
    pub pivot: usize,
    /// Set when the first amplitude vanished and a later component was used.
    pub pivot_moved: bool,
    /// `θ′ = 2 ξ_0`, the polar angle of the half-angle convention
    /// `(cos(θ′/2), e^{i(φ_1−φ_0)} sin(θ′/2))` at n = 2.
    pub theta_prime: T,
}

/// Divides out the phase of the first amplitude (the `e^{iφ_1} = 1` gauge). If the
/// first amplitude is zero the first nonzero component is used instead and flagged.
pub fn phase_fixed_state<T: Real>(angles: &AngleCoordinates<T>) -> PhaseFixedState<T> {
    let mut state = coherent_state_fund(angles);
    let tiny = T::default_epsilon();
    let pivot = state
        .amplitudes
        .iter()
        .position(|z| modulus(*z) > tiny)
        .unwrap_or(0);
    let gauge = cis(-argument(state.amplitudes[pivot]));
    for z in &mut state.amplitudes {
        *z *= gauge;
    }
    // Exact real pivot; the imaginary part is roundoff after the rotation.
    state.amplitudes[pivot] = cplx(modulus(state.amplitudes[pivot]), T::zero());
    PhaseFixedState {
        state,
        pivot,
        pivot_moved: pivot != 0,
        theta_prime: angles.xi[0] + angles.xi[0],
    }
}

/// Diagonal metric coefficients in the order of [`AngleCoordinates::to_flat`],
/// from `ds_n² = dξ_0² + cos²ξ_0 dφ_0² + sin²ξ_0 ds_{n−1}²`.
pub fn metric_diag<T: Real>(angles: &AngleCoordinates<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(angles.coordinate_count());
    let mut scale = T::one();
    for x in &angles.xi {
        let (s, c) = x.sin_cos();
        out.push(scale);
        out.push(scale * c * c);
        scale *= s * s;
    }
    out.push(scale);
    out
}

/// Density of `dμ_n`: `∏_k cos ξ_k sin^{2(n−k)−3} ξ_k`.
pub fn measure_density<T: Real>(angles: &AngleCoordinates<T>) -> T {
    let n = angles.n();
    angles.xi.iter().enumerate().fold(T::one(), |acc, (k, x)| {
        let (s, c) = x.sin_cos();
        acc * c * crate::scalar::powu(s, 2 * (n - k) - 3)
    })
}

/// Gauss-decomposition parameters of an SU(2) element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussParameters<T> {
    pub zeta: Complex<T>,
    pub nu: T,
}

/// `ζ = e^{i(φ2−φ1)} tan θ`, `ν = ln cos θ`; undefined at θ = π/2.
pub fn gauss_decomposition_su2<T: Real>(theta: T, phi1: T, phi2: T) -> Result<GaussParameters<T>> {
    let c = theta.cos();
    if c.abs() <= T::zero()
        || !c.is_finite()
        || (theta - T::frac_pi_2()).abs() <= T::default_epsilon()
    {
        return Err(Error::GaussPole);
    }
    Ok(GaussParameters {
        zeta: cis(phi2 - phi1) * theta.tan(),
        nu: c.abs().ln(),
    })
}

/// `exp(ζ e²₁) · exp(ν σ₃) · exp(−ζ* e¹₂) · exp(iφ1 σ₃)`, each factor in closed form
/// (the off-diagonal ones are nilpotent, the others diagonal).
pub fn gauss_product<T: Real>(params: &GaussParameters<T>, phi1: T) -> CMatrix<T> {
    let one = cplx(T::one(), T::zero());
    let zero = cplx(T::zero(), T::zero());
    let lower = DMatrix::from_row_slice(2, 2, &[one, zero, params.zeta, one]);
    let scale = DMatrix::from_row_slice(
        2,
        2,
        &[
            cplx(params.nu.exp(), T::zero()),
            zero,
            zero,
            cplx((-params.nu).exp(), T::zero()),
        ],
    );
    let upper = DMatrix::from_row_slice(2, 2, &[one, -params.zeta.conj(), zero, one]);
    let phase = DMatrix::from_row_slice(2, 2, &[cis(phi1), zero, zero, cis(-phi1)]);
    lower * scale * upper * phase
}
