//! Seeded sampling of SU(n) elements and coset points.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::fundamental::AngleCoordinates;
use crate::linalg::CMatrix;
use crate::scalar::{argument, cis, cplx, from_usize, lit, modulus, Real};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed element of SU(n): QR of a complex Ginibre matrix with the
/// diagonal phases of R moved into Q, then the determinant phase divided out.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix<T> {
    let scale = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        cplx(lit::<T>(re) * scale, lit::<T>(im) * scale)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        let d = r[(c, c)];
        let m = modulus(d);
        if m > T::zero() {
            let phase = d / m;
            for row in 0..n {
                q[(row, c)] *= phase;
            }
        }
    }
    let correction = cis(-argument(q.determinant()) / from_usize::<T>(n));
    q * correction
}

/// Coset point with `ξ_k` uniform in `[0, π/2)` and `φ_k` uniform in `[0, 2π)`.
pub fn random_angles<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> AngleCoordinates<T> {
    let xi = (0..n - 1)
        .map(|_| lit::<T>(rng.random_range(0.0..std::f64::consts::FRAC_PI_2)))
        .collect();
    let phi = (0..n)
        .map(|_| lit::<T>(rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    AngleCoordinates { xi, phi }
}

/// Coset point drawn from the normalized `dμ_n` (a uniform point on the (2n−1)-sphere).
pub fn measure_angles<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> AngleCoordinates<T> {
    let v: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
    let mut rest = 1.0f64;
    let mut xi = Vec::with_capacity(n - 1);
    let mut phi = Vec::with_capacity(n);
    for (k, (a, b)) in v.iter().enumerate() {
        let amp = (a * a + b * b).sqrt() / norm;
        let p = b.atan2(*a).rem_euclid(std::f64::consts::TAU);
        phi.push(lit::<T>(if p >= std::f64::consts::TAU { 0.0 } else { p }));
        if k + 1 < n {
            let c = if rest > 0.0 {
                (amp / rest).clamp(0.0, 1.0)
            } else {
                1.0
            };
            xi.push(lit::<T>(c.acos()));
            rest *= (1.0 - c * c).max(0.0).sqrt();
        }
    }
    AngleCoordinates { xi, phi }
}
