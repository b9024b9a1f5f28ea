//! Cross-checks against independent constructions written only for the tests.

use num_complex::Complex;
use suncs::fundamental::{
    coherent_state_fund, gauss_decomposition_su2, gauss_product, su2_matrix, AngleCoordinates,
};
use suncs::generators::{herm_exp, lambda_set};
use suncs::linalg::{identity, max_abs_diff, max_abs_diff_vec, CMatrix};
use suncs::quadrature::{
    build_grid, coset_volume, exact_coset_volume, ratio_to_f64, xi_moment_exact,
};
use suncs::random::{random_angles, seeded};
use suncs::symrep::{basis, coherent_state, lift_generator, overlap_closed, RepCoherentState};

type C = Complex<f64>;

/// `exp(A)` by scaling and squaring a truncated Taylor series.
fn taylor_exp(a: &CMatrix<f64>) -> CMatrix<f64> {
    let n = a.nrows();
    let norm: f64 = a.iter().map(|z| z.norm()).sum();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = a * C::new(scale, 0.0);
    let mut term = identity::<f64>(n);
    let mut sum = identity::<f64>(n);
    for k in 1..30 {
        term = &term * &a * C::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn mat(rows: [[C; 2]; 2]) -> CMatrix<f64> {
    CMatrix::from_row_slice(2, 2, &[rows[0][0], rows[0][1], rows[1][0], rows[1][1]])
}

#[test]
fn gauss_product_matches_taylor_exponentials() {
    let z = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let e21 = mat([[z, z], [one, z]]);
    let e12 = mat([[z, one], [z, z]]);
    let s3 = mat([[one, z], [z, -one]]);
    for k in 0..12 {
        let theta = 0.13 * k as f64;
        let (phi1, phi2) = (0.4 + 0.5 * k as f64, 2.0 - 0.3 * k as f64);
        let p = gauss_decomposition_su2(theta, phi1, phi2).unwrap();
        let product = taylor_exp(&(&e21 * p.zeta))
            * taylor_exp(&(&s3 * C::new(p.nu, 0.0)))
            * taylor_exp(&(&e12 * -p.zeta.conj()))
            * taylor_exp(&(&s3 * C::new(0.0, phi1)));
        let target = su2_matrix(theta, phi1, phi2);
        assert!(max_abs_diff(&product, &target) < 1e-12, "theta = {theta}");
        assert!(max_abs_diff(&gauss_product(&p, phi1), &product) < 1e-12);
    }
}

#[test]
fn herm_exp_matches_taylor() {
    for n in 2..=5 {
        let set = lambda_set::<f64>(n).unwrap();
        for k in 1..=set.len() {
            let t = 0.3 + 0.17 * k as f64;
            let via_eig = herm_exp(set.lambda(k), t).unwrap();
            let via_series = taylor_exp(&(set.lambda(k) * C::new(0.0, t)));
            assert!(
                max_abs_diff(&via_eig, &via_series) < 1e-13,
                "n = {n}, k = {k}"
            );
        }
    }
}

/// Projects `c ⊗ c ⊗ … ⊗ c` onto the normalized symmetric occupation states by
/// enumerating all `n^N` index strings.
fn brute_force_symmetric_power(c: &[C], size: usize) -> Vec<C> {
    let n = c.len();
    let b = basis(n, size).unwrap();
    let mut amp = vec![C::new(0.0, 0.0); b.dim()];
    let mut count = vec![0usize; b.dim()];
    let total = n.pow(size as u32);
    for mut idx in 0..total {
        let mut occ = vec![0usize; n];
        let mut prod = C::new(1.0, 0.0);
        for _ in 0..size {
            let k = idx % n;
            idx /= n;
            occ[k] += 1;
            prod *= c[k];
        }
        let i = b.index_of(&occ).unwrap();
        amp[i] += prod;
        count[i] += 1;
    }
    amp.iter()
        .zip(count)
        .map(|(a, k)| a / (k as f64).sqrt())
        .collect()
}

#[test]
fn coherent_state_equals_brute_force_tensor_power() {
    let mut rng = seeded(2024);
    for n in 2..=4 {
        for size in 0..=4 {
            let a = random_angles::<f64, _>(n, &mut rng);
            let c = coherent_state_fund(&a).amplitudes;
            let expect = brute_force_symmetric_power(&c, size);
            let got: RepCoherentState<f64> = coherent_state(size, &a);
            assert!(
                max_abs_diff_vec(&got.amplitudes, &expect) < 1e-13,
                "n = {n}, N = {size}"
            );
        }
    }
}

#[test]
fn overlap_is_power_of_fundamental_overlap() {
    let mut rng = seeded(5);
    for n in 2..=5 {
        let a = random_angles::<f64, _>(n, &mut rng);
        let b = random_angles::<f64, _>(n, &mut rng);
        let fa = coherent_state_fund(&a).amplitudes;
        let fb = coherent_state_fund(&b).amplitudes;
        let dot: C = fa.iter().zip(&fb).map(|(x, y)| x.conj() * y).sum();
        for size in 0..=6 {
            let closed = overlap_closed(&a, &b, size).unwrap();
            assert!((closed - dot.powu(size as u32)).norm() < 1e-13);
        }
    }
}

/// The lift of a generator is the derivative of the group action on the
/// symmetric power: `d/dt T(exp(itG)) |_{t=0} = i·lift(G)`.
#[test]
fn lift_is_derivative_of_symmetric_power() {
    let n = 3;
    let size = 2;
    let b = basis(n, size).unwrap();
    let set = lambda_set::<f64>(n).unwrap();
    let a = AngleCoordinates::new(vec![0.5, 1.1], vec![0.2, 3.0, 4.5]).unwrap();
    let c = coherent_state_fund(&a).amplitudes;
    let psi = brute_force_symmetric_power(&c, size);
    let h = 1e-5;
    for k in 1..=set.len() {
        let g = set.lambda(k);
        let moved = |t: f64| {
            let u = herm_exp(g, t).unwrap();
            let v = &u * suncs::linalg::CVector::from_vec(c.clone());
            brute_force_symmetric_power(v.as_slice(), size)
        };
        let (p, m) = (moved(h), moved(-h));
        let fd: Vec<C> = p
            .iter()
            .zip(&m)
            .map(|(x, y)| (x - y) / C::new(0.0, 2.0 * h))
            .collect();
        let lifted = lift_generator(&b, g).unwrap().apply(&psi);
        assert!(max_abs_diff_vec(&fd, &lifted) < 1e-8, "lambda_{k}");
    }
}

#[test]
fn coset_volume_is_sphere_area() {
    // dμ_n is the Riemannian volume element of the unit (2n−1)-sphere, area 2π^n/(n−1)!.
    for n in 2..=6 {
        let fact: f64 = (1..n).map(|k| k as f64).product();
        let area = 2.0 * std::f64::consts::PI.powi(n as i32) / fact;
        assert!((exact_coset_volume::<f64>(n) - area).abs() < 1e-10);
        let g = build_grid::<f64>(n, 3, 1).unwrap();
        assert!((coset_volume(&g) - area).abs() < 1e-10);
    }
}

#[test]
fn xi_moment_against_beta_function() {
    // ∫ cos^{2a+1} sin^{2b+1} = B(a+1, b+1)/2 = a! b! / (2 (a+b+1)!)
    for m in 0..=12usize {
        for k in 0..=m {
            let (a, b) = (m - k, k);
            let f = |x: usize| (1..=x).map(|i| i as f64).product::<f64>();
            let beta = f(a) * f(b) / (2.0 * f(a + b + 1));
            assert!((ratio_to_f64(&xi_moment_exact(m, k)) - beta).abs() < 1e-15 * beta.max(1.0));
        }
    }
}
