//! Ideal-gate constructors and the universality toolkit: qubit-slot
//! embeddings, controlled gates, the CNOT decomposition identity and the
//! imprimitivity classifier.
//!
//! Basis convention: slot 1 is the most significant bit, i.e. the leftmost
//! factor of a tensor product, matching lexicographic column ordering.

use crate::linalg::{
    self, basis_state, identity, is_unitary, kron, phase_alignment, realignment_rank, CMatrix,
    CVector, C64,
};
use crate::report::{Diagnostics, FidelityReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GateError {
    #[error("input gate is not unitary within {0:e}")]
    NotUnitary(f64),
    #[error("slot {slot} out of range for {n} qubits")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("two-qubit slots must be distinct, got ({0}, {1})")]
    EqualSlots(usize, usize),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SqrtSwapSign {
    Plus,
    Minus,
}

/// Symbolic description of an ideal gate, used as the verification target in
/// configs and reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateSpec {
    Rotation {
        theta: f64,
        phi: f64,
    },
    Phase {
        eta: f64,
    },
    Controlled {
        gate: Box<GateSpec>,
        controls: usize,
    },
    Swap,
    SqrtSwap {
        sign: SqrtSwapSign,
    },
    Pauli {
        axis: Axis,
    },
    /// Explicit matrix, rows of [re, im] pairs.
    Explicit {
        rows: Vec<Vec<[f64; 2]>>,
    },
}

impl GateSpec {
    pub fn explicit(m: &CMatrix) -> Self {
        let rows = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| [m[(i, j)].re, m[(i, j)].im])
                    .collect()
            })
            .collect();
        GateSpec::Explicit { rows }
    }

    /// Checks a (possibly user-supplied) spec before materializing it:
    /// explicit matrices must be square, finite and unitary; controlled inner
    /// gates must be 1-bit gates.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            GateSpec::Rotation { .. }
            | GateSpec::Phase { .. }
            | GateSpec::Swap
            | GateSpec::SqrtSwap { .. }
            | GateSpec::Pauli { .. } => Ok(()),
            GateSpec::Controlled { gate, controls } => {
                gate.validate()?;
                if gate.matrix().nrows() != 2 {
                    return Err("controlled gates take a 1-bit inner gate".into());
                }
                if *controls > 16 {
                    return Err(format!(
                        "{controls} control bits would need a 2^{} dimensional matrix",
                        controls + 1
                    ));
                }
                Ok(())
            }
            GateSpec::Explicit { rows } => {
                let dim = rows.len();
                if dim == 0 {
                    return Err("explicit gate matrix is empty".into());
                }
                if rows.iter().any(|r| r.len() != dim) {
                    return Err("explicit gate matrix is not square".into());
                }
                if rows
                    .iter()
                    .flatten()
                    .any(|[re, im]| !re.is_finite() || !im.is_finite())
                {
                    return Err("explicit gate matrix has non-finite entries".into());
                }
                if !is_unitary(&self.matrix(), linalg::TOL_APPROX) {
                    return Err("explicit gate matrix is not unitary".into());
                }
                Ok(())
            }
        }
    }

    /// Materializes the gate. Specs from untrusted input should pass
    /// [`GateSpec::validate`] first; materializing an invalid spec panics.
    pub fn matrix(&self) -> CMatrix {
        match self {
            GateSpec::Rotation { theta, phi } => rotation_gate(*theta, *phi),
            GateSpec::Phase { eta } => phase_gate(*eta),
            GateSpec::Controlled { gate, controls } => {
                controlled_gate(&gate.matrix(), *controls).expect("inner gate must be unitary")
            }
            GateSpec::Swap => swap_gate(),
            GateSpec::SqrtSwap { sign } => sqrt_swap(*sign),
            GateSpec::Pauli { axis } => pauli(*axis),
            GateSpec::Explicit { rows } => {
                let dim = rows.len();
                CMatrix::from_fn(dim, dim, |i, j| C64::new(rows[i][j][0], rows[i][j][1]))
            }
        }
    }
}

pub fn pauli(axis: Axis) -> CMatrix {
    let c = C64::new;
    match axis {
        Axis::X => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        Axis::Y => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        Axis::Z => CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    }
}

/// The 1-bit rotation gate
/// [[cosθ, -i e^{-iφ} sinθ], [-i e^{iφ} sinθ, cosθ]], det = 1.
pub fn rotation_gate(theta: f64, phi: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    let mi = C64::new(0.0, -1.0);
    let e_m = C64::new(0.0, -phi).exp();
    let e_p = C64::new(0.0, phi).exp();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(c, 0.0),
            mi * e_m * s,
            mi * e_p * s,
            C64::new(c, 0.0),
        ],
    )
}

/// The quantum phase gate Q_η = diag(1, 1, 1, e^{iη}).
pub fn phase_gate(eta: f64) -> CMatrix {
    let mut q = identity(4);
    q[(3, 3)] = C64::new(0.0, eta).exp();
    q
}

/// Λ_m(U): identity except for U in the bottom-right 2x2 block, i.e. U applied
/// to the last qubit when all m control bits are 1.
pub fn controlled_gate(u: &CMatrix, m: usize) -> Result<CMatrix, GateError> {
    if !is_unitary(u, linalg::TOL_CONSTRUCTION) || u.nrows() != 2 {
        return Err(GateError::NotUnitary(linalg::TOL_CONSTRUCTION));
    }
    let dim = 1 << (m + 1);
    let mut out = identity(dim);
    for i in 0..2 {
        for j in 0..2 {
            out[(dim - 2 + i, dim - 2 + j)] = u[(i, j)];
        }
    }
    Ok(out)
}

pub fn cnot() -> CMatrix {
    controlled_gate(&pauli(Axis::X), 1).expect("σ_x is unitary")
}

/// A(j): the 1-bit gate A acting on slot j (1-based) of an n-qubit register.
pub fn embed_1bit(a: &CMatrix, slot: usize, n: usize) -> Result<CMatrix, GateError> {
    if slot == 0 || slot > n {
        return Err(GateError::SlotOutOfRange { slot, n });
    }
    let mut out = identity(1);
    for k in 1..=n {
        let factor = if k == slot { a.clone() } else { identity(2) };
        out = kron(&out, &factor);
    }
    Ok(out)
}

/// B(j,k): the 2-bit gate B acting on the ordered slot pair (j,k) of an
/// n-qubit register, identity elsewhere.
pub fn embed_2bit(b: &CMatrix, slots: (usize, usize), n: usize) -> Result<CMatrix, GateError> {
    let (j, k) = slots;
    if j == k {
        return Err(GateError::EqualSlots(j, k));
    }
    for slot in [j, k] {
        if slot == 0 || slot > n {
            return Err(GateError::SlotOutOfRange { slot, n });
        }
    }
    let dim = 1 << n;
    // Bit value of slot s (1-based, slot 1 most significant) in index x.
    let bit = |x: usize, s: usize| (x >> (n - s)) & 1;
    let mut out = CMatrix::zeros(dim, dim);
    for row in 0..dim {
        for col in 0..dim {
            let spectators_match = (1..=n)
                .filter(|&s| s != j && s != k)
                .all(|s| bit(row, s) == bit(col, s));
            if spectators_match {
                let br = 2 * bit(row, j) + bit(row, k);
                let bc = 2 * bit(col, j) + bit(col, k);
                out[(row, col)] = b[(br, bc)];
            }
        }
    }
    Ok(out)
}

/// The swapping gate U_sw|x₁x₂⟩ = |x₂x₁⟩ = (1 + σ·τ)/2.
pub fn swap_gate() -> CMatrix {
    let mut u = CMatrix::zeros(4, 4);
    u[(0, 0)] = C64::new(1.0, 0.0);
    u[(1, 2)] = C64::new(1.0, 0.0);
    u[(2, 1)] = C64::new(1.0, 0.0);
    u[(3, 3)] = C64::new(1.0, 0.0);
    u
}

/// The square roots of the swapping gate: (e^{±iπ/4}/√2)(1 ∓ i U_sw).
pub fn sqrt_swap(sign: SqrtSwapSign) -> CMatrix {
    let s = match sign {
        SqrtSwapSign::Plus => 1.0,
        SqrtSwapSign::Minus => -1.0,
    };
    let prefactor = C64::new(0.0, s * std::f64::consts::FRAC_PI_4).exp() / 2f64.sqrt();
    (identity(4) + swap_gate() * C64::new(0.0, -s)) * prefactor
}

/// Checks the CNOT decomposition
/// Λ₁(σ_x) = U_{π/4,π/2}(2) · Q_π · U_{π/4,-π/2}(2).
pub fn verify_cnot_decomposition() -> FidelityReport {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    let left = embed_1bit(&rotation_gate(FRAC_PI_4, FRAC_PI_2), 2, 2).unwrap();
    let right = embed_1bit(&rotation_gate(FRAC_PI_4, -FRAC_PI_2), 2, 2).unwrap();
    let composite = left * phase_gate(std::f64::consts::PI) * right;
    let target = GateSpec::Controlled {
        gate: Box::new(GateSpec::Pauli { axis: Axis::X }),
        controls: 1,
    };
    FidelityReport::compare(
        "ideal",
        "cnot_decomposition",
        Some(target),
        &composite,
        Diagnostics::default(),
    )
}

/// A 2-bit gate is primitive iff it is S⊗T or (S⊗T)·U_sw; imprimitive gates
/// are exactly the ones that make the 1-bit gates universal.
pub fn is_imprimitive(v: &CMatrix, tol: f64) -> Result<bool, GateError> {
    if !is_unitary(v, linalg::TOL_APPROX) {
        return Err(GateError::NotUnitary(linalg::TOL_APPROX));
    }
    let direct = realignment_rank(v, tol)?;
    let swapped = realignment_rank(&(v * swap_gate()), tol)?;
    Ok(direct > 1 && swapped > 1)
}

/// The exchange-pulse XOR sequence
/// e^{iπσ_z/4} e^{-iπτ_z/4} U_sw^{1/2} e^{iπσ_z/2} U_sw^{1/2}
/// with the lower-sign square root; equals i·Q_π.
pub fn xor_gate() -> CMatrix {
    let quarter = std::f64::consts::FRAC_PI_4;
    let sz1 = kron(&pauli(Axis::Z), &identity(2));
    let tz2 = kron(&identity(2), &pauli(Axis::Z));
    let root = sqrt_swap(SqrtSwapSign::Minus);
    let e = |m: &CMatrix, angle: f64| {
        linalg::expm(m, C64::new(0.0, angle)).expect("Pauli embeddings are square")
    };
    e(&sz1, quarter) * e(&tz2, -quarter) * &root * e(&sz1, 2.0 * quarter) * &root
}

/// Output state of a gate applied to computational basis state |k⟩.
pub fn apply_to_basis(u: &CMatrix, k: usize) -> CVector {
    u * basis_state(u.nrows(), k)
}

/// Optimal global phase aligning `got` with `want`.
pub fn global_phase(got: &CMatrix, want: &CMatrix) -> C64 {
    phase_alignment(got, want).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, phase_distance, random_unitary};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rotation_at_zero_angle_is_identity() {
        for phi in [0.0, 1.0, -2.5] {
            assert!(max_abs_diff(&rotation_gate(0.0, phi), &identity(2)) < 1e-15);
        }
    }

    #[test]
    fn rotation_at_cnot_decomposition_parameters() {
        // -i e^{-iπ/2} = -1, so U_{π/4,π/2} is the real rotation by 45°.
        let got = rotation_gate(FRAC_PI_4, FRAC_PI_2);
        let h = 0.5_f64.sqrt();
        let want = CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(-h, 0.0), c(h, 0.0), c(h, 0.0)]);
        assert!(max_abs_diff(&got, &want) < 1e-15);
    }

    #[test]
    fn rotation_gates_are_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let theta = rng.gen_range(0.0..2.0 * PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let u = rotation_gate(theta, phi);
            assert!(is_unitary(&u, 1e-12));
            let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
            assert!((det - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_composition_adds_angles_on_a_common_axis() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..20 {
            let t1 = rng.gen_range(0.0..PI);
            let t2 = rng.gen_range(0.0..PI);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let composed = rotation_gate(t1, phi) * rotation_gate(t2, phi);
            assert!(max_abs_diff(&composed, &rotation_gate(t1 + t2, phi)) < 1e-12);
        }
    }

    #[test]
    fn phase_gate_basics() {
        assert!(max_abs_diff(&phase_gate(0.0), &identity(4)) < 1e-15);
        let mut want = identity(4);
        want[(3, 3)] = c(-1.0, 0.0);
        assert!(max_abs_diff(&phase_gate(PI), &want) < 1e-15);
        let prod = phase_gate(1.3) * phase_gate(-1.3);
        assert!(max_abs_diff(&prod, &identity(4)) < 1e-15);
    }

    #[test]
    fn controlled_gate_block_structure() {
        let u = rotation_gate(0.7, 1.1);
        assert!(max_abs_diff(&controlled_gate(&u, 0).unwrap(), &u) < 1e-15);
        for m in 1..=3 {
            let lam = controlled_gate(&u, m).unwrap();
            let dim = 1 << (m + 1);
            for i in 0..dim - 2 {
                for j in 0..dim {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((lam[(i, j)] - c(want, 0.0)).norm() < 1e-15);
                    assert!((lam[(j, i)] - c(want, 0.0)).norm() < 1e-15);
                }
            }
        }
        let lam_id = controlled_gate(&identity(2), 2).unwrap();
        assert!(max_abs_diff(&lam_id, &identity(8)) < 1e-15);
    }

    #[test]
    fn cnot_action_on_basis() {
        let gate = cnot();
        assert!((apply_to_basis(&gate, 2) - basis_state(4, 3)).norm() < 1e-15);
        assert!((apply_to_basis(&gate, 3) - basis_state(4, 2)).norm() < 1e-15);
        assert!((apply_to_basis(&gate, 0) - basis_state(4, 0)).norm() < 1e-15);
        assert!((apply_to_basis(&gate, 1) - basis_state(4, 1)).norm() < 1e-15);
    }

    #[test]
    fn controlled_gate_rejects_non_unitary() {
        let bad = identity(2) * C64::new(1.5, 0.0);
        assert!(matches!(
            controlled_gate(&bad, 1),
            Err(GateError::NotUnitary(_))
        ));
    }

    #[test]
    fn embed_1bit_matches_bitwise_action() {
        // Oracle: apply A to bit j of each basis index directly.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in 1..=4usize {
            for slot in 1..=n {
                let a = random_unitary(2, &mut rng);
                let embedded = embed_1bit(&a, slot, n).unwrap();
                let dim = 1 << n;
                let mut want = CMatrix::zeros(dim, dim);
                for col in 0..dim {
                    let b = (col >> (n - slot)) & 1;
                    for out_bit in 0..2 {
                        let row = (col & !(1 << (n - slot))) | (out_bit << (n - slot));
                        want[(row, col)] += a[(out_bit, b)];
                    }
                }
                assert!(max_abs_diff(&embedded, &want) < 1e-14);
            }
        }
    }

    #[test]
    fn embed_1bit_examples() {
        let a = rotation_gate(0.4, 0.9);
        assert!(max_abs_diff(&embed_1bit(&a, 1, 1).unwrap(), &a) < 1e-15);
        let op = embed_1bit(&pauli(Axis::X), 2, 2).unwrap();
        assert!((apply_to_basis(&op, 0) - basis_state(4, 1)).norm() < 1e-15);
        assert!(matches!(
            embed_1bit(&a, 3, 2),
            Err(GateError::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn embed_2bit_examples() {
        assert!(max_abs_diff(&embed_2bit(&identity(4), (1, 3), 3).unwrap(), &identity(8)) < 1e-15);

        // U_sw(1,3)|100⟩ = |001⟩.
        let op = embed_2bit(&swap_gate(), (1, 3), 3).unwrap();
        assert!((apply_to_basis(&op, 0b100) - basis_state(8, 0b001)).norm() < 1e-15);

        // Reversing the slot order conjugates by the swap.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let b = random_unitary(4, &mut rng);
        let reversed = embed_2bit(&b, (2, 1), 2).unwrap();
        let want = swap_gate() * &b * swap_gate();
        assert!(max_abs_diff(&reversed, &want) < 1e-14);

        let direct = embed_2bit(&b, (1, 2), 2).unwrap();
        assert!(max_abs_diff(&direct, &b) < 1e-15);

        assert!(matches!(
            embed_2bit(&b, (2, 2), 3),
            Err(GateError::EqualSlots(..))
        ));
    }

    #[test]
    fn embedded_swaps_square_to_identity() {
        for n in 2..=4usize {
            for j in 1..=n {
                for k in 1..=n {
                    if j == k {
                        continue;
                    }
                    let op = embed_2bit(&swap_gate(), (j, k), n).unwrap();
                    assert!(max_abs_diff(&(&op * &op), &identity(1 << n)) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn swap_gate_identities() {
        let u = swap_gate();
        assert!((apply_to_basis(&u, 1) - basis_state(4, 2)).norm() < 1e-15);
        assert!(max_abs_diff(&(&u * &u), &identity(4)) < 1e-15);
        // U_sw = (1 + σ·τ)/2 entrywise.
        #[rustfmt::skip]
        let st = CMatrix::from_row_slice(4, 4, &[
            c(1., 0.), c(0., 0.),  c(0., 0.),  c(0., 0.),
            c(0., 0.), c(-1., 0.), c(2., 0.),  c(0., 0.),
            c(0., 0.), c(2., 0.),  c(-1., 0.), c(0., 0.),
            c(0., 0.), c(0., 0.),  c(0., 0.),  c(1., 0.),
        ]);
        assert!(max_abs_diff(&u, &((identity(4) + st) / C64::new(2.0, 0.0))) < 1e-15);
    }

    #[test]
    fn sqrt_swap_squares_to_swap_on_both_branches() {
        for sign in [SqrtSwapSign::Plus, SqrtSwapSign::Minus] {
            let r = sqrt_swap(sign);
            assert!(max_abs_diff(&(&r * &r), &swap_gate()) < 1e-12);
        }
    }

    #[test]
    fn sqrt_swap_fixes_aligned_states_with_unit_scalar() {
        // On the U_sw = +1 eigenvector |00⟩ the scalar e^{±iπ/4}(1 ∓ i)/√2 is exactly 1.
        for sign in [SqrtSwapSign::Plus, SqrtSwapSign::Minus] {
            let out = apply_to_basis(&sqrt_swap(sign), 0);
            assert!((out - basis_state(4, 0)).norm() < 1e-15);
        }
    }

    #[test]
    fn cnot_decomposition_identity() {
        let report = verify_cnot_decomposition();
        assert!(report.distance < 1e-10, "distance {}", report.distance);

        // Explicit multiplication oracle for the action on |10⟩ and |00⟩.
        let left = embed_1bit(&rotation_gate(FRAC_PI_4, FRAC_PI_2), 2, 2).unwrap();
        let right = embed_1bit(&rotation_gate(FRAC_PI_4, -FRAC_PI_2), 2, 2).unwrap();
        let composite = left * phase_gate(PI) * right;
        let phase = global_phase(&composite, &cnot());
        let out10 = apply_to_basis(&composite, 2);
        assert!((out10 - basis_state(4, 3) * phase).norm() < 1e-12);
        let out00 = apply_to_basis(&composite, 0);
        assert!((out00 - basis_state(4, 0) * phase).norm() < 1e-12);
    }

    #[test]
    fn imprimitivity_classification() {
        assert!(!is_imprimitive(&swap_gate(), 1e-8).unwrap());
        assert!(is_imprimitive(&cnot(), 1e-8).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let s = random_unitary(2, &mut rng);
            let t = random_unitary(2, &mut rng);
            let product = kron(&s, &t);
            assert!(!is_imprimitive(&product, 1e-8).unwrap());
            assert!(!is_imprimitive(&(product * swap_gate()), 1e-8).unwrap());
        }
        for eta in [PI / 7.0, PI / 3.0, PI] {
            assert!(is_imprimitive(&phase_gate(eta), 1e-8).unwrap());
        }
        assert!(matches!(
            is_imprimitive(&(identity(4) * C64::new(2.0, 0.0)), 1e-8),
            Err(GateError::NotUnitary(_))
        ));
    }

    #[test]
    fn xor_gate_equals_i_times_phase_gate() {
        let want = phase_gate(PI) * c(0.0, 1.0);
        assert!(max_abs_diff(&xor_gate(), &want) < 1e-12);
    }

    #[test]
    fn xor_gate_basis_phases() {
        let u = xor_gate();
        assert!((apply_to_basis(&u, 3) - basis_state(4, 3) * c(0.0, -1.0)).norm() < 1e-12);
        assert!((apply_to_basis(&u, 0) - basis_state(4, 0) * c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn gate_spec_materialization_is_unitary() {
        let specs = [
            GateSpec::Rotation {
                theta: 0.3,
                phi: 1.2,
            },
            GateSpec::Phase { eta: 2.2 },
            GateSpec::Swap,
            GateSpec::SqrtSwap {
                sign: SqrtSwapSign::Plus,
            },
            GateSpec::Pauli { axis: Axis::Y },
            GateSpec::Controlled {
                gate: Box::new(GateSpec::Rotation {
                    theta: 1.0,
                    phi: 0.0,
                }),
                controls: 1,
            },
        ];
        for spec in specs {
            assert!(is_unitary(&spec.matrix(), 1e-12), "{spec:?}");
        }
        let m = rotation_gate(0.8, 0.1);
        let spec = GateSpec::explicit(&m);
        assert!(max_abs_diff(&spec.matrix(), &m) < 1e-15);
    }

    #[test]
    fn validate_rejects_malformed_specs() {
        let jagged = GateSpec::Explicit {
            rows: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0]]],
        };
        assert!(jagged.validate().is_err());

        let not_unitary = GateSpec::Explicit {
            rows: vec![vec![[2.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [2.0, 0.0]]],
        };
        assert!(not_unitary.validate().is_err());

        let two_bit_inner = GateSpec::Controlled {
            gate: Box::new(GateSpec::Swap),
            controls: 1,
        };
        assert!(two_bit_inner.validate().is_err());

        let fine = GateSpec::Controlled {
            gate: Box::new(GateSpec::Pauli { axis: Axis::X }),
            controls: 2,
        };
        assert!(fine.validate().is_ok());
        assert!(GateSpec::explicit(&rotation_gate(0.3, 0.4))
            .validate()
            .is_ok());
    }

    #[test]
    fn rotation_determinant_is_one_so_phase_distance_to_itself_is_strict() {
        // Guard for the global-phase extraction helper.
        let u = rotation_gate(1.1, 0.4);
        let aligned = global_phase(&(u.clone() * c(0.0, 0.9).exp()), &u);
        assert!((aligned - c(0.0, 0.9).exp()).norm() < 1e-12);
        assert!(phase_distance(&u, &u).unwrap() < 1e-15);
    }
}
