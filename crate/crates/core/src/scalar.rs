//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All math is written against [`Real`], which is implemented for `f32` and
//! `f64`. Tolerances quoted throughout the docs (1e-12 and friends) assume
//! `f64`; `f32` builds work but only to single precision.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FloatConst, FromPrimitive, ToPrimitive};

/// Real floating point scalar: `f32` or `f64`.
pub trait Real:
    RealField + Copy + Default + FloatConst + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub fn from_usize<T: Real>(x: usize) -> T {
    T::from_usize(x).expect("integer representable in scalar type")
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `e^{i t}`.
#[inline]
pub fn cis<T: Real>(t: T) -> Complex<T> {
    Complex::new(t.cos(), t.sin())
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    z.re.hypot(z.im)
}

/// Principal argument in (-π, π].
#[inline]
pub fn argument<T: Real>(z: Complex<T>) -> T {
    z.im.atan2(z.re)
}

/// Wraps a phase into [0, 2π).
pub fn wrap_phase<T: Real>(t: T) -> T {
    let two_pi = T::two_pi();
    let mut r = t % two_pi;
    if r < T::zero() {
        r += two_pi;
    }
    // `r` can round up to exactly 2π for tiny negative inputs.
    if r >= two_pi {
        r -= two_pi;
    }
    r
}

/// Binomial coefficient evaluated in floating point by the multiplicative formula.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * from_usize::<T>(n - i) / from_usize::<T>(i + 1);
    }
    acc
}

/// Multinomial coefficient `N! / ∏ m_k!` with `N = Σ m_k`.
pub fn multinomial<T: Real>(parts: &[usize]) -> T {
    let mut total = 0;
    let mut acc = T::one();
    for &m in parts {
        total += m;
        acc *= binomial::<T>(total, m);
    }
    acc
}

/// Integer power for real scalars; `0^0 = 1`.
#[inline]
pub fn powu<T: Real>(x: T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

#[inline]
pub fn powu_c<T: Real>(z: Complex<T>, e: usize) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    for _ in 0..e {
        acc *= z;
    }
    acc
}
