//! Tensor-product quadrature over the coset space with the `dμ_n` weight.
//!
//! Each polar angle is integrated in the variable `x = cos² ξ_k`, where
//! `cos ξ_k sin^{2q+1} ξ_k dξ_k = ½ (1 − x)^q dx`, `q = n − k − 2`. After the phase
//! sums, every integrand used here is a polynomial in `x`, so Gauss–Legendre in `x`
//! is exact rather than merely convergent. Phases use the uniform rule, which is
//! exact for trigonometric polynomials of degree below `Q`.

use num_complex::Complex;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fundamental::AngleCoordinates;
use crate::linalg::{identity, max_abs_diff, CMatrix};
use crate::scalar::{cis, cplx, from_usize, lit, powu, Real};
use crate::symrep::{basis_dimension, coherent_state};

/// Points per parallel work unit; fixed so the reduction tree does not depend on the thread count.
const CHUNK: usize = 2048;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(order: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); order];
    let mut weights = vec![T::zero(); order];
    let nf = from_usize::<T>(order);
    let eps = T::default_epsilon() * lit(4.0);
    for i in 0..order.div_ceil(2) {
        let guess = T::pi() * (from_usize::<T>(i) + lit(0.75)) / (nf + lit(0.5));
        let mut x = guess.cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= eps {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        if d != T::zero() {
            dp = d;
        }
        let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = T::zero();
    }
    (nodes, weights)
}

fn legendre_with_derivative<T: Real>(order: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if order == 0 {
        return (p0, T::zero());
    }
    for k in 2..=order {
        let kf = from_usize::<T>(k);
        let p2 = ((lit::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = from_usize::<T>(order);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}

/// One polar axis: nodes `ξ` ascending and weights that already carry the
/// `cos ξ sin^{2q+1} ξ` factor of `dμ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid<T> {
    n: usize,
    polar_order: usize,
    phase_order: usize,
    polar: Vec<PolarRule<T>>,
    phases: Vec<T>,
    phase_weight: T,
}

/// Tensor grid of `n − 1` polar axes of `P` nodes and `n` phase axes of `Q` nodes.
pub fn build_grid<T: Real>(
    n: usize,
    polar_order: usize,
    phase_order: usize,
) -> Result<QuadratureGrid<T>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if polar_order == 0 || phase_order == 0 {
        return Err(Error::Parse(format!(
            "quadrature orders must be positive, got P = {polar_order}, Q = {phase_order}"
        )));
    }
    let (t, w) = gauss_legendre::<T>(polar_order);
    let half = lit::<T>(0.5);
    let polar = (0..n - 1)
        .map(|k| {
            let q = n - k - 2;
            // Descending x is ascending ξ.
            let (nodes, weights) = t
                .iter()
                .zip(&w)
                .rev()
                .map(|(&tk, &wk)| {
                    let x = (tk + T::one()) * half;
                    (x.sqrt().acos(), half * half * wk * powu(T::one() - x, q))
                })
                .unzip();
            PolarRule { nodes, weights }
        })
        .collect();
    let qf = from_usize::<T>(phase_order);
    let phases = (0..phase_order)
        .map(|j| T::two_pi() * from_usize::<T>(j) / qf)
        .collect();
    Ok(QuadratureGrid {
        n,
        polar_order,
        phase_order,
        polar,
        phases,
        phase_weight: T::two_pi() / qf,
    })
}

impl<T: Real> QuadratureGrid<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polar_order(&self) -> usize {
        self.polar_order
    }

    pub fn phase_order(&self) -> usize {
        self.phase_order
    }

    pub fn polar_rules(&self) -> &[PolarRule<T>] {
        &self.polar
    }

    pub fn phase_nodes(&self) -> &[T] {
        &self.phases
    }

    pub fn point_count(&self) -> usize {
        self.polar_order.pow(self.n as u32 - 1) * self.phase_order.pow(self.n as u32)
    }

    /// Writes point `index` into `out` and returns its weight.
    ///
    /// Digits follow the flat coordinate order `ξ_0, φ_0, ξ_1, …, φ_{n−1}` with the
    /// last coordinate varying fastest.
    pub fn load_point(&self, mut index: usize, out: &mut AngleCoordinates<T>) -> T {
        let n = self.n;
        let mut weight = T::one();
        let p = self.phase_order;
        out.phi[n - 1] = self.phases[index % p];
        index /= p;
        for k in (0..n - 1).rev() {
            out.phi[k] = self.phases[index % p];
            index /= p;
            let i = index % self.polar_order;
            index /= self.polar_order;
            out.xi[k] = self.polar[k].nodes[i];
            weight *= self.polar[k].weights[i];
        }
        weight * powu(self.phase_weight, n)
    }

    pub fn point(&self, index: usize) -> (AngleCoordinates<T>, T) {
        let mut a = AngleCoordinates::zero(self.n);
        let w = self.load_point(index, &mut a);
        (a, w)
    }

    pub fn points(&self) -> impl Iterator<Item = (AngleCoordinates<T>, T)> + '_ {
        (0..self.point_count()).map(move |i| self.point(i))
    }

    /// Σ over all points of `f(angles, weight, acc)`, reduced in grid-index order per chunk
    /// and then over chunks in order.
    pub fn reduce<A, F, M>(&self, init: impl Fn() -> A + Sync, fold: F, merge: M) -> A
    where
        A: Send,
        F: Fn(&mut A, &AngleCoordinates<T>, T) + Sync,
        M: Fn(&mut A, A),
    {
        let total = self.point_count();
        let chunks = total.div_ceil(CHUNK);
        let partials: Vec<A> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = init();
                let mut a = AngleCoordinates::zero(self.n);
                for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    let w = self.load_point(i, &mut a);
                    fold(&mut acc, &a, w);
                }
                acc
            })
            .collect();
        let mut out = init();
        for p in partials {
            merge(&mut out, p);
        }
        out
    }
}

/// Σ weights, i.e. `∫ dμ_n` on the grid.
pub fn coset_volume<T: Real>(grid: &QuadratureGrid<T>) -> T {
    grid.reduce(T::zero, |acc, _, w| *acc += w, |acc, p| *acc += p)
}

/// `(2π)^n / (2^{n−1} (n−1)!)`.
pub fn exact_coset_volume<T: Real>(n: usize) -> T {
    let mut denom = T::one();
    for k in 1..n {
        denom *= lit::<T>(2.0) * from_usize::<T>(k);
    }
    powu(T::two_pi(), n) / denom
}

/// Smallest `(P, Q)` for which [`coset_volume`] is exact.
pub fn volume_orders(n: usize) -> (usize, usize) {
    ((n / 2).max(1), 1)
}

/// Default `(P, Q) = (N + n, 2N + 1)` for the resolution of unity.
pub fn unity_orders(n: usize, size: usize) -> (usize, usize) {
    (size + n, 2 * size + 1)
}

/// Whether a grid integrates `|n⟩⟨n| dμ_n` exactly: `Q > N` and `2P − 1 ≥ N + n − 2`.
pub fn unity_is_exact(n: usize, size: usize, polar_order: usize, phase_order: usize) -> bool {
    phase_order > size && 2 * polar_order + 1 >= size + n
}

/// `(N + n − 1)! / (2 π^n N!)`.
pub fn unity_prefactor<T: Real>(n: usize, size: usize) -> T {
    let mut ratio = T::one();
    for k in size + 1..size + n {
        ratio *= from_usize::<T>(k);
    }
    ratio / (lit::<T>(2.0) * powu(T::pi(), n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnityReport<T: Real> {
    pub matrix: CMatrix<T>,
    pub max_abs_deviation: T,
    pub max_off_diagonal: T,
    pub prefactor: T,
    pub dim: usize,
    /// `false` when the grid is below the exactness threshold; the residual is then
    /// a convergence error rather than roundoff.
    pub exact: bool,
}

/// `prefactor · Σ_w |n^N_n⟩⟨n^N_n|` compared against the identity on `basis(n, N)`.
pub fn resolution_of_unity<T: Real>(size: usize, grid: &QuadratureGrid<T>) -> UnityReport<T> {
    let n = grid.n();
    let dim = basis_dimension(n, size);
    let zero = cplx(T::zero(), T::zero());
    let sum = grid.reduce(
        || vec![zero; dim * dim],
        |acc, angles, w| {
            if w == T::zero() {
                return;
            }
            let psi = coherent_state(size, angles).amplitudes;
            for (r, pr) in psi.iter().enumerate() {
                let wr = *pr * w;
                for (c, pc) in psi.iter().enumerate() {
                    acc[r * dim + c] += wr * pc.conj();
                }
            }
        },
        |acc, p| {
            for (a, b) in acc.iter_mut().zip(p) {
                *a += b;
            }
        },
    );
    let prefactor = unity_prefactor::<T>(n, size);
    let matrix = CMatrix::from_row_iterator(dim, dim, sum.into_iter().map(|z| z * prefactor));
    let max_abs_deviation = max_abs_diff(&matrix, &identity(dim));
    let mut max_off_diagonal = T::zero();
    for r in 0..dim {
        for c in 0..dim {
            if r != c {
                max_off_diagonal = max_off_diagonal.max(matrix[(r, c)].norm_sqr().sqrt());
            }
        }
    }
    UnityReport {
        matrix,
        max_abs_deviation,
        max_off_diagonal,
        prefactor,
        dim,
        exact: unity_is_exact(n, size, grid.polar_order(), grid.phase_order()),
    }
}

/// `Σ_j (2π/Q) e^{ikφ_j}` on the uniform phase rule; `2π` at `k ≡ 0 (mod Q)`, zero otherwise.
pub fn phase_moment<T: Real>(k: i64, phase_order: usize) -> Complex<T> {
    let qf = from_usize::<T>(phase_order);
    let kf = lit::<T>(k as f64);
    let step = T::two_pi() / qf;
    (0..phase_order).fold(cplx(T::zero(), T::zero()), |acc, j| {
        acc + cis(kf * step * from_usize::<T>(j)) * step
    })
}

/// `∫₀^{π/2} cos^{2(m−k)+1} ξ sin^{2k+1} ξ dξ = k! (m−k)! / (2 (m+1)!)`.
pub fn xi_moment_exact(m: usize, k: usize) -> Ratio<u128> {
    assert!(k <= m, "moment index k = {k} exceeds m = {m}");
    let fact = |x: usize| (1..=x as u128).product::<u128>();
    Ratio::new(fact(k) * fact(m - k), 2 * fact(m + 1))
}

/// The same integral by Gauss–Legendre directly in `ξ` on `[0, π/2]`.
pub fn xi_moment_quadrature<T: Real>(m: usize, k: usize, order: usize) -> T {
    let (t, w) = gauss_legendre::<T>(order);
    let half_range = T::frac_pi_4();
    t.iter().zip(&w).fold(T::zero(), |acc, (&tk, &wk)| {
        let xi = (tk + T::one()) * half_range;
        let (s, c) = xi.sin_cos();
        acc + wk * half_range * powu(c, 2 * (m - k) + 1) * powu(s, 2 * k + 1)
    })
}

pub fn ratio_to_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_small_orders() {
        let (x, w) = gauss_legendre::<f64>(1);
        assert_eq!(x, vec![0.0]);
        assert!((w[0] - 2.0).abs() < 1e-15);

        let (x, w) = gauss_legendre::<f64>(2);
        let r = 1.0 / 3f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);

        let (x, w) = gauss_legendre::<f64>(3);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((w[0] - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_exact_degree() {
        for order in 1..=20 {
            let (x, w) = gauss_legendre::<f64>(order);
            for deg in 0..2 * order {
                let q: f64 = x.iter().zip(&w).map(|(a, b)| b * a.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                assert!(
                    (q - exact).abs() < 1e-13,
                    "order {order} degree {deg}: {q} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn grid_point_counts() {
        assert_eq!(build_grid::<f64>(2, 8, 8).unwrap().point_count(), 512);
        assert_eq!(build_grid::<f64>(3, 8, 8).unwrap().point_count(), 64 * 512);
        assert!(build_grid::<f64>(1, 2, 2).is_err());
        assert!(build_grid::<f64>(3, 0, 2).is_err());
    }

    #[test]
    fn weights_nonnegative_and_points_in_range() {
        for (n, p, q) in [(2, 1, 1), (3, 4, 3), (4, 3, 2)] {
            let g = build_grid::<f64>(n, p, q).unwrap();
            for (a, w) in g.points() {
                assert!(w >= 0.0);
                a.check_ranges().unwrap();
            }
        }
    }

    #[test]
    fn volumes() {
        assert!((exact_coset_volume::<f64>(2) - 2.0 * PI * PI).abs() < 1e-12);
        assert!((exact_coset_volume::<f64>(3) - (2.0 * PI).powi(3) / 8.0).abs() < 1e-12);
        assert!((exact_coset_volume::<f64>(4) - (2.0 * PI).powi(4) / 48.0).abs() < 1e-12);
        for n in 2..=7 {
            let (p, q) = volume_orders(n);
            let g = build_grid::<f64>(n, p, q).unwrap();
            let v = coset_volume(&g);
            assert!((v - exact_coset_volume::<f64>(n)).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn unity_small_cases() {
        for (n, size) in [(2, 1), (3, 2), (2, 0), (4, 0)] {
            let (p, q) = unity_orders(n, size);
            let g = build_grid::<f64>(n, p, q).unwrap();
            let r = resolution_of_unity(size, &g);
            assert!(r.exact);
            assert!(
                r.max_abs_deviation < 1e-10,
                "(n, N) = ({n}, {size}): {}",
                r.max_abs_deviation
            );
            assert!(r.max_off_diagonal < 1e-12);
        }
    }

    #[test]
    fn below_threshold_is_flagged() {
        let g = build_grid::<f64>(2, 1, 1).unwrap();
        let r = resolution_of_unity(2, &g);
        assert!(!r.exact);
        assert!(r.max_abs_deviation > 1e-3);
    }

    #[test]
    fn phase_moments_vanish() {
        let size = 3;
        let q = 2 * size + 1;
        for k in 1..=(2 * size as i64) {
            assert!(phase_moment::<f64>(k, q).norm() < 1e-13);
            assert!(phase_moment::<f64>(-k, q).norm() < 1e-13);
        }
        assert!((phase_moment::<f64>(0, q).re - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn xi_moments() {
        assert_eq!(xi_moment_exact(0, 0), Ratio::new(1, 2));
        assert_eq!(xi_moment_exact(1, 0), Ratio::new(1, 4));
        for m in 0..=12 {
            for k in 0..=m {
                let exact = ratio_to_f64(&xi_moment_exact(m, k));
                let q = xi_moment_quadrature::<f64>(m, k, 40);
                assert!((q - exact).abs() < 1e-14, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn deterministic_reduction() {
        let g = build_grid::<f64>(3, 5, 5).unwrap();
        let a = resolution_of_unity(2, &g);
        let b = resolution_of_unity(2, &g);
        assert_eq!(a.matrix, b.matrix);
    }
}
