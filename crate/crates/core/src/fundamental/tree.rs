//! `U = L_{n−1} M(θ, φ) R_{n−1}` and its constructive inverse.
//!
//! `L = 1 ⊕ X` and `R = 1 ⊕ Y` with `X, Y ∈ SU(n−1)`, applied recursively down
//! to SU(2) blocks. Because `M` and `L` alone fix the first column of `U`,
//! decomposition reads `θ, φ` off `U₁₁`, completes the normalized sub-column
//! `(U₂₁ … U_n1)/sin θ` to an SU(n−1) matrix `X`, and takes `R = M† L† U`.
//! The parameterization is redundant for n ≥ 4; only `build(decompose(U)) = U`
//! is promised, not a particular representative.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{middle_matrix, su2_matrix, AngleCoordinates};
use crate::error::{Error, Result};
use crate::linalg::{embed, identity, unitarity_deviation, CMatrix};
use crate::scalar::{argument, cplx, modulus, to_f64, wrap_phase, Real};

pub const DEFAULT_DECOMPOSE_TOL: f64 = 1e-8;

/// Recursive record of the `L·M·R` factorization angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecompositionTree<T> {
    Node {
        theta: T,
        phi: T,
        left: Box<DecompositionTree<T>>,
        right: Box<DecompositionTree<T>>,
    },
    Su2 {
        theta: T,
        phi1: T,
        phi2: T,
    },
}

impl<T: Real> DecompositionTree<T> {
    /// All-zero tree of dimension `n`, which builds the identity.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 2, "SU(n) trees need n >= 2");
        if n == 2 {
            DecompositionTree::Su2 {
                theta: T::zero(),
                phi1: T::zero(),
                phi2: T::zero(),
            }
        } else {
            DecompositionTree::Node {
                theta: T::zero(),
                phi: T::zero(),
                left: Box::new(Self::identity(n - 1)),
                right: Box::new(Self::identity(n - 1)),
            }
        }
    }

    /// Group dimension; errors if the two subtrees disagree.
    pub fn dim(&self) -> Result<usize> {
        match self {
            DecompositionTree::Su2 { .. } => Ok(2),
            DecompositionTree::Node { left, right, .. } => {
                let (l, r) = (left.dim()?, right.dim()?);
                if l != r {
                    return Err(Error::MalformedTree(format!(
                        "left subtree has dimension {l}, right subtree {r}"
                    )));
                }
                Ok(l + 1)
            }
        }
    }

    /// Checks angle ranges: polar angles in [0, π/2], phases in [0, 2π).
    pub fn validate(&self) -> Result<()> {
        let polar_ok = |t: T| t >= T::zero() && t <= T::frac_pi_2();
        let phase_ok = |p: T| p >= T::zero() && p < T::two_pi();
        match self {
            DecompositionTree::Su2 { theta, phi1, phi2 } => {
                if !polar_ok(*theta) || !phase_ok(*phi1) || !phase_ok(*phi2) {
                    return Err(Error::MalformedTree(format!(
                        "SU(2) leaf angles out of range: ({theta}, {phi1}, {phi2})"
                    )));
                }
            }
            DecompositionTree::Node {
                theta,
                phi,
                left,
                right,
            } => {
                if !polar_ok(*theta) || !phase_ok(*phi) {
                    return Err(Error::MalformedTree(format!(
                        "node angles out of range: ({theta}, {phi})"
                    )));
                }
                left.validate()?;
                right.validate()?;
            }
        }
        self.dim().map(|_| ())
    }

    /// Coset coordinates of the first column: the `θ, φ` chain along the left spine.
    pub fn coset_angles(&self) -> AngleCoordinates<T> {
        let mut xi = Vec::new();
        let mut phi = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                DecompositionTree::Node {
                    theta,
                    phi: p,
                    left,
                    ..
                } => {
                    xi.push(*theta);
                    phi.push(*p);
                    cur = left;
                }
                DecompositionTree::Su2 { theta, phi1, phi2 } => {
                    xi.push(*theta);
                    phi.push(*phi1);
                    phi.push(*phi2);
                    break;
                }
            }
        }
        AngleCoordinates { xi, phi }
    }
}

/// Multiplies out `L·M·R` recursively.
pub fn build_group_element<T: Real>(tree: &DecompositionTree<T>) -> Result<CMatrix<T>> {
    let n = tree.dim()?;
    Ok(build_unchecked(tree, n))
}

fn build_unchecked<T: Real>(tree: &DecompositionTree<T>, n: usize) -> CMatrix<T> {
    match tree {
        DecompositionTree::Su2 { theta, phi1, phi2 } => su2_matrix(*theta, *phi1, *phi2),
        DecompositionTree::Node {
            theta,
            phi,
            left,
            right,
        } => {
            let l = embed(n, 1, &build_unchecked(left, n - 1));
            let m = middle_matrix(n, *theta, *phi).expect("n >= 3 inside a node");
            let r = embed(n, 1, &build_unchecked(right, n - 1));
            l * m * r
        }
    }
}

/// Decomposes `U ∈ SU(n)`, `n ≥ 2`. `tol` bounds `max|U†U − I|` and `|det U − 1|`.
pub fn decompose<T: Real>(u: &CMatrix<T>, tol: T) -> Result<DecompositionTree<T>> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let n = u.nrows();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let dev = unitarity_deviation(u);
    if dev > tol || !dev.is_finite() {
        return Err(Error::NotUnitary(to_f64(dev)));
    }
    let det_dev = modulus(u.determinant() - cplx(T::one(), T::zero()));
    if det_dev > tol || !det_dev.is_finite() {
        return Err(Error::NotUnimodular(to_f64(det_dev)));
    }
    Ok(decompose_unchecked(u))
}

fn phase_of<T: Real>(z: Complex<T>) -> T {
    if modulus(z) == T::zero() {
        T::zero()
    } else {
        wrap_phase(argument(z))
    }
}

fn decompose_unchecked<T: Real>(u: &CMatrix<T>) -> DecompositionTree<T> {
    let n = u.nrows();
    if n == 2 {
        let a = u[(0, 0)];
        let b = u[(1, 0)];
        return DecompositionTree::Su2 {
            theta: modulus(b).atan2(modulus(a)),
            phi1: phase_of(a),
            phi2: phase_of(b),
        };
    }

    let u11 = u[(0, 0)];
    let sub: Vec<Complex<T>> = (1..n).map(|k| u[(k, 0)]).collect();
    let r = crate::linalg::norm(&sub);
    let theta = r.atan2(modulus(u11));
    let phi = phase_of(u11);

    let x = if r > T::zero() {
        let unit: Vec<Complex<T>> = sub.iter().map(|z| *z / cplx(r, T::zero())).collect();
        complete_first_column(&unit)
    } else {
        identity(n - 1)
    };

    let l = embed(n, 1, &x);
    let m = middle_matrix(n, theta, phi).expect("n >= 3");
    let rest = m.adjoint() * l.adjoint() * u;
    let y = rest.view((1, 1), (n - 1, n - 1)).into_owned();

    DecompositionTree::Node {
        theta,
        phi,
        left: Box::new(decompose_unchecked(&x)),
        right: Box::new(decompose_unchecked(&y)),
    }
}

/// Completes a unit vector `v ∈ C^m` (m ≥ 2) to `X ∈ SU(m)` with `X e₁ = v`.
///
/// Builds `V = G_1 ⋯ G_{m−1}` from SU(2) eliminations `[[a*, b*], [−b, a]]/ρ`
/// applied bottom-up so that `V v = e₁`, then returns `X = V†`. Each factor has
/// unit determinant, so `X` lands in SU(m) without a phase correction.
pub fn complete_first_column<T: Real>(v: &[Complex<T>]) -> CMatrix<T> {
    let m = v.len();
    let mut w = v.to_vec();
    let mut acc = identity::<T>(m);
    for k in (1..m).rev() {
        let (a, b) = (w[k - 1], w[k]);
        let rho = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if rho == T::zero() {
            continue;
        }
        let inv = cplx(T::one() / rho, T::zero());
        let g = [a.conj() * inv, b.conj() * inv, -b * inv, a * inv];
        for col in 0..m {
            let top = acc[(k - 1, col)];
            let bot = acc[(k, col)];
            acc[(k - 1, col)] = g[0] * top + g[1] * bot;
            acc[(k, col)] = g[2] * top + g[3] * bot;
        }
        w[k - 1] = cplx(rho, T::zero());
        w[k] = cplx(T::zero(), T::zero());
    }
    acc.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, unitarity_deviation};
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn identity_tree_builds_identity() {
        for n in 2..=6 {
            let u = build_group_element(&DecompositionTree::<f64>::identity(n)).unwrap();
            assert!(max_abs_diff(&u, &identity(n)) < 1e-16);
        }
    }

    #[test]
    fn identity_decomposes_to_zero_angles() {
        for n in 2..=6 {
            let tree = decompose(&identity::<f64>(n), 1e-8).unwrap();
            assert_eq!(tree, DecompositionTree::identity(n), "n = {n}");
        }
    }

    #[test]
    fn su3_tree_matches_explicit_product() {
        let tree = DecompositionTree::Node {
            theta: 0.4,
            phi: 1.2,
            left: Box::new(DecompositionTree::Su2 {
                theta: 0.9,
                phi1: 2.0,
                phi2: 5.5,
            }),
            right: Box::new(DecompositionTree::Su2 {
                theta: 0.3,
                phi1: 0.7,
                phi2: 3.3,
            }),
        };
        let g = build_group_element(&tree).unwrap();
        let l = embed(3, 1, &su2_matrix(0.9, 2.0, 5.5));
        let m = middle_matrix(3, 0.4, 1.2).unwrap();
        let r = embed(3, 1, &su2_matrix(0.3, 0.7, 3.3));
        assert!(max_abs_diff(&g, &(l * m * r)) < 1e-15);
        assert!(unitarity_deviation(&g) < 1e-14);
        assert!((g.determinant() - c(1., 0.)).norm() < 1e-14);
    }

    #[test]
    fn middle_factor_decomposes_with_trivial_sides() {
        let (theta, phi): (f64, f64) = (0.65, 2.4);
        let u = middle_matrix(4, theta, phi).unwrap();
        let tree = decompose(&u, 1e-8).unwrap();
        match &tree {
            DecompositionTree::Node {
                theta: t,
                phi: p,
                left,
                right,
            } => {
                assert!((t - theta).abs() < 1e-14);
                assert!((p - phi).abs() < 1e-14);
                assert!(max_abs_diff(&build_group_element(left).unwrap(), &identity(3)) < 1e-14);
                assert!(max_abs_diff(&build_group_element(right).unwrap(), &identity(3)) < 1e-14);
            }
            _ => panic!("expected a node"),
        }
        assert!(max_abs_diff(&build_group_element(&tree).unwrap(), &u) < 1e-14);
    }

    #[test]
    fn degenerate_first_entry() {
        // U₁₁ = 0: θ = π/2 and φ = 0.
        let u = middle_matrix(3, FRAC_PI_2, 0.0).unwrap();
        let tree = decompose(&u, 1e-8).unwrap();
        if let DecompositionTree::Node { theta, phi, .. } = tree {
            assert!((theta - FRAC_PI_2).abs() < 1e-15);
            assert_eq!(phi, 0.0);
        }
        assert!(
            max_abs_diff(
                &build_group_element(&decompose(&u, 1e-8).unwrap()).unwrap(),
                &u
            ) < 1e-14
        );
    }

    #[test]
    fn rejects_bad_input() {
        let mut u = identity::<f64>(3);
        u[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(decompose(&u, 1e-8), Err(Error::NotUnitary(_))));

        let mut p = identity::<f64>(3);
        p[(0, 0)] = c(0.0, 1.0);
        assert!(matches!(decompose(&p, 1e-8), Err(Error::NotUnimodular(_))));

        assert!(matches!(
            decompose(&CMatrix::<f64>::identity(2, 3), 1e-8),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            decompose(&identity::<f64>(1), 1e-8),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn malformed_tree_rejected() {
        let tree = DecompositionTree::Node {
            theta: 0.1,
            phi: 0.2,
            left: Box::new(DecompositionTree::<f64>::identity(3)),
            right: Box::new(DecompositionTree::identity(2)),
        };
        assert!(matches!(
            build_group_element(&tree),
            Err(Error::MalformedTree(_))
        ));

        let bad = DecompositionTree::Su2 {
            theta: 2.0,
            phi1: 0.0,
            phi2: 0.0,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn completion_hits_target_column() {
        let v = [c(0.1, 0.2), c(-0.3, 0.4), c(0.5, -0.1), c(0.2, 0.2)];
        let nrm = crate::linalg::norm(&v);
        let v: Vec<_> = v.iter().map(|z| z / nrm).collect();
        let x = complete_first_column(&v);
        for (k, z) in v.iter().enumerate() {
            assert!((x[(k, 0)] - z).norm() < 1e-15);
        }
        assert!(unitarity_deviation(&x) < 1e-15);
        assert!((x.determinant() - c(1., 0.)).norm() < 1e-14);
    }

    #[test]
    fn json_shape() {
        let tree = DecompositionTree::<f64>::identity(3);
        let v = serde_json::to_value(&tree).unwrap();
        assert!(v.get("theta").is_some() && v.get("phi").is_some());
        assert!(v["left"].get("phi1").is_some());
        let back: DecompositionTree<f64> = serde_json::from_value(v).unwrap();
        assert_eq!(back, tree);
    }
}
