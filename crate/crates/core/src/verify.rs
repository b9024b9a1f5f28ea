//! The invariant suite behind `suncs verify`.
//!
//! Every check reports the worst deviation it measured, the tolerance it was held
//! to, and a pass flag. Sampling uses a ChaCha stream seeded from the config, so
//! the report is a pure function of `(n, N, seed, samples, tolerances)`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::Result;
use crate::fundamental::{
    build_group_element, coherent_state_fund, decompose, displacement_lambda,
    gauss_decomposition_su2, gauss_product, measure_density, metric_diag, su2_matrix,
    AngleCoordinates, DisplacementParams, DEFAULT_DECOMPOSE_TOL,
};
use crate::generators::{
    elementary, lambda_set, trace_orthonormality_deviation, verify_beta_theta_commutators,
    ElementaryIndex,
};
use crate::linalg::{
    basis_vector, commutator, hermitian_deviation, max_abs_diff, max_abs_diff_vec, norm, trace,
};
use crate::quadrature::{
    build_grid, coset_volume, exact_coset_volume, phase_moment, ratio_to_f64, resolution_of_unity,
    unity_orders, volume_orders, xi_moment_exact, xi_moment_quadrature,
};
use crate::random::{haar_unitary, random_angles, seeded, SeededRng};
use crate::symrep::{
    angles_to_stereo, basis, cartan_op, coherent_state, direct_overlap, displaced_highest_weight,
    ladder_op, lift_generator, lifted_eta, overlap_closed, raising_op, stereographic_state,
    tensor_power_oracle,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub reconstruction: f64,
    pub unity: f64,
    pub algebraic: f64,
    pub finite_difference: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            reconstruction: 1e-10,
            unity: 1e-10,
            algebraic: 1e-12,
            finite_difference: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub n: usize,
    pub size: usize,
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
}

impl VerifyConfig {
    pub fn new(n: usize, size: usize, seed: u64) -> Self {
        Self {
            n,
            size,
            seed,
            samples: 20,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    #[serde(rename = "N")]
    pub size: usize,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn record(&mut self, name: &str, deviation: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            deviation,
            tolerance,
            // NaN fails.
            passed: deviation <= tolerance,
        });
    }
}

/// Step for the metric finite-difference check.
pub const FD_STEP: f64 = 1e-4;

/// Finite-difference embedding metric along `dir`:
/// `|ψ(a + h·dir) − ψ(a − h·dir)|² / (4h²)` against `Σ g_kk dir_k²`.
pub fn metric_fd_deviation(angles: &AngleCoordinates<f64>, dir: &[f64], step: f64) -> Result<f64> {
    let flat = angles.to_flat();
    let shifted = |s: f64| -> Result<Vec<Complex<f64>>> {
        let moved: Vec<f64> = flat.iter().zip(dir).map(|(x, d)| x + s * d).collect();
        Ok(coherent_state_fund(&AngleCoordinates::from_flat(&moved)?).amplitudes)
    };
    let plus = shifted(step)?;
    let minus = shifted(-step)?;
    let fd: f64 = plus
        .iter()
        .zip(&minus)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        / (4.0 * step * step);
    let g = metric_diag(angles);
    let exact: f64 = g.iter().zip(dir).map(|(gk, d)| gk * d * d).sum();
    Ok((fd - exact).abs())
}

pub fn run_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let (n, size, tol) = (cfg.n, cfg.size, cfg.tolerances);
    let mut rng = seeded(cfg.seed);
    let mut suite = Suite { checks: Vec::new() };

    generator_checks(&mut suite, n, tol)?;
    fundamental_checks(&mut suite, n, cfg.samples, tol, &mut rng)?;
    symrep_checks(&mut suite, n, size, cfg.samples, tol, &mut rng)?;
    quadrature_checks(&mut suite, n, size, tol)?;

    let passed = suite.checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        n,
        size,
        seed: cfg.seed,
        samples: cfg.samples,
        passed,
        checks: suite.checks,
    })
}

fn generator_checks(suite: &mut Suite, n: usize, tol: Tolerances) -> Result<()> {
    let set = lambda_set::<f64>(n)?;
    let mut herm = 0.0f64;
    for m in set.matrices() {
        herm = herm.max(hermitian_deviation(m)).max(trace(m).norm());
    }
    suite.record("generators.hermitian_traceless", herm, tol.algebraic);
    suite.record(
        "generators.trace_orthonormality",
        trace_orthonormality_deviation(&set),
        tol.algebraic,
    );
    let comm = verify_beta_theta_commutators::<f64>(n);
    suite.record(
        "generators.beta_theta_commutators",
        comm.max_deviation,
        tol.algebraic,
    );

    let pauli = lambda_set::<f64>(2)?;
    let i = Complex::new(0.0, 1.0);
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let sigmas = [
        [zero, one, one, zero],
        [zero, -i, i, zero],
        [one, zero, zero, -one],
    ];
    let mut dev = 0.0f64;
    for (k, s) in sigmas.iter().enumerate() {
        let expect = crate::linalg::CMatrix::from_row_slice(2, 2, s);
        dev = dev.max(max_abs_diff(pauli.lambda(k + 1), &expect));
    }
    suite.record("generators.pauli_recovery", dev, tol.algebraic);
    Ok(())
}

fn fundamental_checks(
    suite: &mut Suite,
    n: usize,
    samples: usize,
    tol: Tolerances,
    rng: &mut SeededRng,
) -> Result<()> {
    let mut round_trip = 0.0f64;
    let mut first_column = 0.0f64;
    for _ in 0..samples {
        let u = haar_unitary::<f64, _>(n, rng);
        let tree = decompose(&u, DEFAULT_DECOMPOSE_TOL)?;
        round_trip = round_trip.max(max_abs_diff(&build_group_element(&tree)?, &u));
        let col = &u * basis_vector::<f64>(n, 0);
        let state = coherent_state_fund(&tree.coset_angles());
        first_column = first_column.max(max_abs_diff_vec(col.as_slice(), &state.amplitudes));
    }
    suite.record(
        "fundamental.decompose_round_trip",
        round_trip,
        tol.reconstruction,
    );
    suite.record(
        "fundamental.first_column_is_coherent_state",
        first_column,
        tol.reconstruction,
    );

    let mut norm_dev = 0.0f64;
    let mut fd = 0.0f64;
    let mut measure = 0.0f64;
    let dims = 2 * n - 1;
    for _ in 0..samples {
        let a = random_angles::<f64, _>(n, rng);
        norm_dev = norm_dev.max((coherent_state_fund(&a).norm() - 1.0).abs());
        for k in 0..dims {
            let mut e = vec![0.0; dims];
            e[k] = 1.0;
            fd = fd.max(metric_fd_deviation(&a, &e, FD_STEP)?);
        }
        let dir: Vec<f64> = (0..dims)
            .map(|_| rand::Rng::random_range(rng, -1.0..1.0))
            .collect();
        fd = fd.max(metric_fd_deviation(&a, &dir, FD_STEP)?);
        let g = metric_diag(&a);
        let sqrt_det = g.iter().product::<f64>().sqrt();
        measure = measure.max((measure_density(&a) - sqrt_det).abs());
    }
    suite.record("fundamental.state_norm", norm_dev, tol.algebraic);
    suite.record(
        "fundamental.metric_finite_difference",
        fd,
        tol.finite_difference,
    );
    suite.record("fundamental.measure_is_sqrt_metric", measure, tol.algebraic);

    if n == 3 || n == 4 {
        let mut dev = 0.0f64;
        for _ in 0..samples {
            let a = random_angles::<f64, _>(n, rng);
            let u = displacement_lambda(&DisplacementParams::from_angles(&a)?)?;
            let col = &u * basis_vector::<f64>(n, 0);
            dev = dev.max(max_abs_diff_vec(
                col.as_slice(),
                &coherent_state_fund(&a).amplitudes,
            ));
        }
        suite.record("fundamental.lambda_displacement", dev, tol.algebraic);
    }

    let mut gauss = 0.0f64;
    for k in 0..16 {
        let theta = k as f64 * std::f64::consts::FRAC_PI_2 / 16.0;
        for p in 0..6 {
            let (phi1, phi2) = (p as f64 * 1.1, 6.0 - p as f64 * 0.7);
            let params = gauss_decomposition_su2(theta, phi1, phi2)?;
            gauss = gauss.max(max_abs_diff(
                &gauss_product(&params, phi1),
                &su2_matrix(theta, phi1, phi2),
            ));
        }
    }
    suite.record("fundamental.gauss_reconstruction", gauss, tol.algebraic);
    Ok(())
}

fn symrep_checks(
    suite: &mut Suite,
    n: usize,
    size: usize,
    samples: usize,
    tol: Tolerances,
    rng: &mut SeededRng,
) -> Result<()> {
    let mut norm_dev = 0.0f64;
    let mut tensor = 0.0f64;
    let mut stereo = 0.0f64;
    let mut overlap = 0.0f64;
    let mut self_overlap = 0.0f64;
    for _ in 0..samples {
        let a = random_angles::<f64, _>(n, rng);
        let b = random_angles::<f64, _>(n, rng);
        let s = coherent_state(size, &a);
        norm_dev = norm_dev.max((s.norm() - 1.0).abs());
        tensor = tensor.max(max_abs_diff_vec(
            &s.amplitudes,
            &tensor_power_oracle(size, &a).amplitudes,
        ));
        let st = stereographic_state(size, &angles_to_stereo(&a)?);
        stereo = stereo.max(max_abs_diff_vec(&s.amplitudes, &st.amplitudes));
        overlap =
            overlap.max((overlap_closed(&a, &b, size)? - direct_overlap(&a, &b, size)?).norm());
        self_overlap =
            self_overlap.max((overlap_closed(&a, &a, size)? - Complex::new(1.0, 0.0)).norm());
    }
    suite.record("symrep.state_norm", norm_dev, tol.algebraic);
    suite.record("symrep.tensor_power_oracle", tensor, tol.algebraic);
    suite.record("symrep.stereographic_oracle", stereo, tol.algebraic);
    suite.record("symrep.overlap_closed_form", overlap, tol.algebraic);
    suite.record("symrep.self_overlap", self_overlap, tol.algebraic);

    let b = basis(n, size)?;
    let mut adjoint = 0.0f64;
    let mut annihilation = 0.0f64;
    let mut lift = 0.0f64;
    let mut ops = Vec::with_capacity(n * n);
    for h in 1..=n {
        for j in 1..=n {
            let op = ladder_op::<f64>(&b, h, j)?;
            let lifted = lift_generator(&b, &elementary::<f64>(ElementaryIndex::new(h, j, n)?))?;
            lift = lift.max(max_abs_diff(&op.to_dense(), &lifted.to_dense()));
            if h < j {
                let raise = raising_op::<f64>(&b, h, j)?;
                let lower = ladder_op::<f64>(&b, j, h)?;
                adjoint = adjoint.max(max_abs_diff(&raise.adjoint().to_dense(), &lower.to_dense()));
                let hw = raise.apply(&crate::symrep::highest_weight::<f64>(&b));
                annihilation = annihilation.max(norm(&hw));
            }
            ops.push(op.to_dense());
        }
    }
    for h in 1..n {
        let c = cartan_op::<f64>(&b, h)?;
        lift = lift.max(max_abs_diff(
            &c.to_dense(),
            &lifted_eta::<f64>(&b, h)?.to_dense(),
        ));
    }
    let at = |h: usize, j: usize| &ops[(h - 1) * n + (j - 1)];
    let mut comm = 0.0f64;
    for h in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let lhs = commutator(at(h, j), at(k, l));
                    let mut rhs = lhs.clone() * Complex::new(0.0, 0.0);
                    if j == k {
                        rhs += at(h, l);
                    }
                    if l == h {
                        rhs -= at(k, j);
                    }
                    comm = comm.max(max_abs_diff(&lhs, &rhs));
                }
            }
        }
    }
    suite.record("symrep.adjointness", adjoint, tol.algebraic);
    suite.record(
        "symrep.highest_weight_annihilation",
        annihilation,
        tol.algebraic,
    );
    suite.record("symrep.lift_consistency", lift, tol.algebraic);
    suite.record("symrep.commutation_relations", comm, tol.algebraic);

    if (n == 3 || n == 4) && size <= 3 {
        let mut dev = 0.0f64;
        for _ in 0..samples.min(5) {
            let a = random_angles::<f64, _>(n, rng);
            let displaced = displaced_highest_weight(&DisplacementParams::from_angles(&a)?, size)?;
            dev = dev.max(max_abs_diff_vec(
                &displaced.amplitudes,
                &coherent_state(size, &a).amplitudes,
            ));
        }
        suite.record("symrep.lifted_displacement", dev, tol.reconstruction);
    }
    Ok(())
}

fn quadrature_checks(suite: &mut Suite, n: usize, size: usize, tol: Tolerances) -> Result<()> {
    let (p, q) = volume_orders(n);
    let volume = coset_volume(&build_grid::<f64>(n, p, q)?);
    suite.record(
        "quadrature.coset_volume",
        (volume - exact_coset_volume::<f64>(n)).abs(),
        tol.unity,
    );

    let (p, q) = unity_orders(n, size);
    let report = resolution_of_unity(size, &build_grid::<f64>(n, p, q)?);
    suite.record(
        "quadrature.resolution_of_unity",
        report.max_abs_deviation,
        tol.unity,
    );
    suite.record(
        "quadrature.unity_off_diagonal",
        report.max_off_diagonal,
        tol.algebraic,
    );

    let mut phase = 0.0f64;
    let qn = 2 * size + 1;
    for k in 1..=(2 * size) as i64 {
        phase = phase
            .max(phase_moment::<f64>(k, qn).norm())
            .max(phase_moment::<f64>(-k, qn).norm());
    }
    suite.record("quadrature.phase_moments", phase, 1e-13);

    let mut xi = 0.0f64;
    for m in 0..=12 {
        for k in 0..=m {
            let exact = ratio_to_f64(&xi_moment_exact(m, k));
            xi = xi.max((xi_moment_quadrature::<f64>(m, k, 40) - exact).abs());
        }
    }
    suite.record("quadrature.xi_moments", xi, tol.algebraic);
    Ok(())
}
