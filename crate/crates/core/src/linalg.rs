//! Dense complex linear algebra shared by every device model.
//!
//! Matrices are plain `nalgebra` dynamic matrices over `Complex64`; the
//! dimensions in this crate never exceed a few dozen, so everything is dense
//! and allocation cost is irrelevant. Angular frequencies are used throughout
//! and ħ = 1, so `expm(h, -i*t)` is the propagator for any Hamiltonian `h`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Tolerance for construction-level checks (entries assembled from exact algebra).
pub const TOL_CONSTRUCTION: f64 = 1e-12;
/// Tolerance for propagation-level checks (matrix exponentials, compositions).
pub const TOL_PROPAGATION: f64 = 1e-10;
/// Tolerance for comparisons between exact and approximate dynamics.
pub const TOL_APPROX: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("matrix is not unitary within {tol:e} (deviation {deviation:e})")]
    NotUnitary { tol: f64, deviation: f64 },
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Computational basis vector |k⟩ in a `dim`-dimensional space.
pub fn basis_state(dim: usize, k: usize) -> CVector {
    assert!(k < dim, "basis index {k} out of range for dim {dim}");
    let mut v = CVector::zeros(dim);
    v[k] = C64::new(1.0, 0.0);
    v
}

pub fn is_finite(a: &CMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest entrywise deviation |a - b|.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(a: &CMatrix, tol: f64) -> bool {
    a.is_square() && max_abs_diff(a, &a.adjoint()) <= tol
}

pub fn is_unitary(a: &CMatrix, tol: f64) -> bool {
    a.is_square() && unitarity_deviation(a) <= tol
}

/// Largest entrywise deviation of U†U from the identity.
pub fn unitarity_deviation(a: &CMatrix) -> f64 {
    max_abs_diff(&(a.adjoint() * a), &identity(a.nrows()))
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// Tensor product with the first factor as the most significant index,
/// so `kron(a, b)[(i*nb + j, k*nb + l)] = a[(i, k)] * b[(j, l)]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Tensor product of state vectors, same index convention as [`kron`].
pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i * b.len() + j] = a[i] * b[j];
        }
    }
    out
}

/// e^{scale·A}.
///
/// Hermitian inputs go through the eigendecomposition, which keeps the result
/// unitary to machine precision for purely imaginary `scale`. Everything else
/// (and any input the iterative eigensolver rejects) falls back to
/// scaling-and-squaring with a Padé(13) approximant.
pub fn expm(a: &CMatrix, scale: C64) -> Result<CMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if is_hermitian(a, 1e-10) {
        if let Some(eig) = a.clone().try_symmetric_eigen(f64::EPSILON, 0) {
            let dim = a.nrows();
            let mut exp_diag = CMatrix::zeros(dim, dim);
            for i in 0..dim {
                exp_diag[(i, i)] = (scale * eig.eigenvalues[i]).exp();
            }
            return Ok(&eig.eigenvectors * exp_diag * eig.eigenvectors.adjoint());
        }
    }
    Ok(expm_pade(&(a * scale)))
}

/// Scaling-and-squaring with the diagonal Padé(13) approximant.
fn expm_pade(a: &CMatrix) -> CMatrix {
    // Coefficients of the [13/13] Padé approximant to exp.
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    const THETA_13: f64 = 5.371920351148152;

    let dim = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    let a = a / C64::new(2f64.powi(squarings as i32), 0.0);

    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = identity(dim);

    let b = |k: usize| C64::new(B[k], 0.0);
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let mut r = (&v - &u)
        .lu()
        .solve(&(&v + &u))
        .expect("Padé denominator is singular");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

fn one_norm(a: &CMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Distance between two operators minimized over a global phase:
/// min over |c| = 1 of ‖U − cV‖_F / √dim. Returns the distance and the
/// optimal phase c* = tr(V†U)/|tr(V†U)|.
pub fn phase_alignment(u: &CMatrix, v: &CMatrix) -> (f64, C64) {
    assert_eq!(u.shape(), v.shape(), "shape mismatch in phase_alignment");
    let tr = (v.adjoint() * u).trace();
    let c = if tr.norm() > 0.0 {
        tr / tr.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let d = (u - v * c).norm() / (u.nrows() as f64).sqrt();
    (d, c)
}

/// Gate distance up to global phase; zero iff U = cV for some unit-modulus c.
///
/// Both inputs must be unitary; use [`phase_alignment`] directly for
/// sub-unitary restrictions of larger evolutions.
pub fn phase_distance(u: &CMatrix, v: &CMatrix) -> Result<f64, LinalgError> {
    if u.nrows() != v.nrows() || u.ncols() != v.ncols() {
        return Err(LinalgError::DimensionMismatch(u.nrows(), v.nrows()));
    }
    for m in [u, v] {
        let dev = unitarity_deviation(m);
        if dev > TOL_APPROX {
            return Err(LinalgError::NotUnitary {
                tol: TOL_APPROX,
                deviation: dev,
            });
        }
    }
    Ok(phase_alignment(u, v).0)
}

/// Rank of the realignment R(V)[(i,k),(j,l)] = V[(i,j),(k,l)] of a two-qubit
/// operator, with singular values thresholded at `tol` times the largest.
/// Rank 1 iff V is a tensor product S⊗T.
pub fn realignment_rank(v: &CMatrix, tol: f64) -> Result<usize, LinalgError> {
    if v.nrows() != 4 || v.ncols() != 4 {
        return Err(LinalgError::WrongDimension {
            expected: 4,
            got: v.nrows().max(v.ncols()),
        });
    }
    let mut r = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    r[(2 * i + k, 2 * j + l)] = v[(2 * i + j, 2 * k + l)];
                }
            }
        }
    }
    Ok(thresholded_rank(&r, tol))
}

fn thresholded_rank(m: &CMatrix, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * largest).count()
}

/// Haar-distributed random unitary via QR of a Gaussian-free Ginibre proxy
/// (uniform entries; the phase fix on R's diagonal removes the QR gauge).
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{pauli, swap_gate, Axis};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let z = CMatrix::zeros(3, 3);
        let e = expm(&z, c(0.7, -1.3)).unwrap();
        assert!(max_abs_diff(&e, &identity(3)) < 1e-15);
    }

    #[test]
    fn expm_diagonal_phase() {
        let e = expm(&pauli(Axis::Z), c(0.0, -PI / 2.0)).unwrap();
        let want = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, -1.0), c(0.0, 1.0)]));
        assert!(max_abs_diff(&e, &want) < 1e-14);
    }

    #[test]
    fn expm_exchange_generator_matches_spectral_projectors() {
        // σ·τ has eigenvalues +1 (triplet) and -3 (singlet), so
        // e^{-iφ σ·τ} = e^{-iφ}(1+U_sw)/2 + e^{3iφ}(1-U_sw)/2.
        let st = swap_gate() * C64::new(2.0, 0.0) - identity(4);
        let phi = PI / 4.0;
        let got = expm(&st, c(0.0, -phi)).unwrap();
        let p_triplet = (identity(4) + swap_gate()) / C64::new(2.0, 0.0);
        let p_singlet = (identity(4) - swap_gate()) / C64::new(2.0, 0.0);
        let want = p_triplet * c(0.0, -phi).exp() + p_singlet * c(0.0, 3.0 * phi).exp();
        assert!(max_abs_diff(&got, &want) < 1e-14);
    }

    #[test]
    fn expm_hermitian_with_imaginary_scale_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = CMatrix::from_fn(5, 5, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = (&g + g.adjoint()) / C64::new(2.0, 0.0);
            let u = expm(&h, c(0.0, -0.37)).unwrap();
            assert!(is_unitary(&u, TOL_PROPAGATION));
        }
    }

    #[test]
    fn expm_pade_path_handles_non_hermitian_input() {
        // Nilpotent: e^A = 1 + A exactly.
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = c(1.0, 0.0);
        let e = expm(&a, c(1.0, 0.0)).unwrap();
        let want = identity(2) + &a;
        assert!(max_abs_diff(&e, &want) < 1e-14);

        // Complex diagonal (normal but not Hermitian).
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.2, 1.1), c(-0.4, -2.7)]));
        let e = expm(&d, c(1.0, 0.0)).unwrap();
        let want = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(0.2, 1.1).exp(),
            c(-0.4, -2.7).exp(),
        ]));
        assert!(max_abs_diff(&e, &want) < 1e-13);
    }

    #[test]
    fn expm_pade_agrees_with_eigen_route_after_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = CMatrix::from_fn(6, 6, |_, _| {
            c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
        });
        let h = (&g + g.adjoint()) / C64::new(2.0, 0.0);
        let eigen_route = expm(&h, c(0.0, -1.0)).unwrap();
        let pade_route = expm_pade(&(&h * c(0.0, -1.0)));
        assert!(max_abs_diff(&eigen_route, &pade_route) < 1e-12);
    }

    #[test]
    fn expm_rejects_non_square() {
        let a = CMatrix::zeros(2, 3);
        assert!(matches!(
            expm(&a, c(1.0, 0.0)),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn kron_of_identities() {
        assert!(max_abs_diff(&kron(&identity(2), &identity(2)), &identity(4)) < 1e-15);
    }

    #[test]
    fn kron_ordering_puts_first_factor_most_significant() {
        // (σ_x ⊗ 1)|10⟩ = |00⟩ in the lexicographic basis.
        let op = kron(&pauli(Axis::X), &identity(2));
        let out = &op * basis_state(4, 2);
        assert!((out - basis_state(4, 0)).norm() < 1e-15);
    }

    #[test]
    fn kron_sigma_z_pair() {
        let got = kron(&pauli(Axis::Z), &pauli(Axis::Z));
        // Direct 4x4 expansion.
        let want = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(-1.0, 0.0),
            c(1.0, 0.0),
        ]));
        assert!(max_abs_diff(&got, &want) < 1e-15);
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let a = random_unitary(2, &mut rng);
            let b = random_unitary(2, &mut rng);
            let m = random_unitary(3, &mut rng);
            let left = kron(&kron(&a, &b), &m);
            let right = kron(&a, &kron(&b, &m));
            assert!(max_abs_diff(&left, &right) < 1e-14);
        }
    }

    #[test]
    fn dagger_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(4, &mut rng);
        assert!(max_abs_diff(&dagger(&dagger(&u)), &u) < 1e-15);
        assert!(max_abs_diff(&dagger(&pauli(Axis::Y)), &pauli(Axis::Y)) < 1e-15);
        assert!(max_abs_diff(&(dagger(&u) * &u), &identity(4)) < 1e-13);
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_unitary(4, &mut rng);
        assert!(phase_distance(&u, &u).unwrap() < 1e-14);
        for alpha in [0.3, 1.9, -2.4] {
            let v = &u * c(0.0, alpha).exp();
            assert!(phase_distance(&u, &v).unwrap() < 1e-14);
        }
    }

    #[test]
    fn phase_distance_identity_vs_not() {
        // tr(σ_x† 1) = 0, so every phase is equally bad: distance √2.
        let d = phase_distance(&identity(2), &pauli(Axis::X)).unwrap();
        assert!((d - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn phase_distance_checks_inputs() {
        assert!(matches!(
            phase_distance(&identity(2), &identity(4)),
            Err(LinalgError::DimensionMismatch(..))
        ));
        let not_unitary = identity(2) * C64::new(2.0, 0.0);
        assert!(matches!(
            phase_distance(&not_unitary, &identity(2)),
            Err(LinalgError::NotUnitary { .. })
        ));
    }

    #[test]
    fn phase_distance_is_a_pseudometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..25 {
            let u = random_unitary(4, &mut rng);
            let v = random_unitary(4, &mut rng);
            let w = random_unitary(4, &mut rng);
            let duv = phase_distance(&u, &v).unwrap();
            let dvu = phase_distance(&v, &u).unwrap();
            let duw = phase_distance(&u, &w).unwrap();
            let dvw = phase_distance(&v, &w).unwrap();
            assert!((duv - dvu).abs() < 1e-10);
            assert!(duw <= duv + dvw + 1e-10);
        }
    }

    #[test]
    fn realignment_rank_of_products_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let s = random_unitary(2, &mut rng);
            let t = random_unitary(2, &mut rng);
            assert_eq!(realignment_rank(&kron(&s, &t), 1e-8).unwrap(), 1);
        }
        assert_eq!(realignment_rank(&identity(4), 1e-8).unwrap(), 1);
    }

    #[test]
    fn realignment_rank_of_cnot_is_two() {
        let mut cnot = identity(4);
        cnot[(2, 2)] = c(0.0, 0.0);
        cnot[(3, 3)] = c(0.0, 0.0);
        cnot[(2, 3)] = c(1.0, 0.0);
        cnot[(3, 2)] = c(1.0, 0.0);
        assert_eq!(realignment_rank(&cnot, 1e-8).unwrap(), 2);

        // The realignment of CNOT has singular values {√2, √2, 0, 0}.
        let mut r = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        r[(2 * i + k, 2 * j + l)] = cnot[(2 * i + j, 2 * k + l)];
                    }
                }
            }
        }
        let mut sv: Vec<f64> = r
            .svd(false, false)
            .singular_values
            .iter()
            .cloned()
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let want = [2.0_f64.sqrt(), 2.0_f64.sqrt(), 0.0, 0.0];
        for (got, want) in sv.iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn realignment_rank_requires_dim_four() {
        assert!(matches!(
            realignment_rank(&identity(2), 1e-8),
            Err(LinalgError::WrongDimension { .. })
        ));
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for dim in [2, 3, 4] {
            let u = random_unitary(dim, &mut rng);
            assert!(is_unitary(&u, 1e-12));
        }
    }
}
