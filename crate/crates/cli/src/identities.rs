//! The gate-identity suite behind `qdevsim verify-gates`: every closed-form
//! pulse prescription in the library, checked against its ideal gate.

use qdevsim_core::cavity::{self, CavityParams};
use qdevsim_core::gates::{
    self, phase_gate, rotation_gate, sqrt_swap, swap_gate, xor_gate, SqrtSwapSign,
};
use qdevsim_core::iontrap::{self, IonTrapParams, JpMode, JpParams, SmParams};
use qdevsim_core::linalg::{
    basis_state, identity, kron, max_abs_diff, phase_alignment, CVector, C64,
};
use qdevsim_core::qdot;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone)]
pub struct IdentityResult {
    pub name: &'static str,
    pub distance: f64,
}

/// Runs every identity and returns the measured distances.
pub fn run_identity_suite() -> Vec<IdentityResult> {
    let mut results = Vec::new();
    let mut push = |name: &'static str, distance: f64| {
        results.push(IdentityResult { name, distance });
    };

    push(
        "cnot_decomposition",
        gates::verify_cnot_decomposition().distance,
    );
    push(
        "swap_squares_to_identity",
        max_abs_diff(&(swap_gate() * swap_gate()), &identity(4)),
    );
    for (name, sign) in [
        ("sqrt_swap_plus_squares_to_swap", SqrtSwapSign::Plus),
        ("sqrt_swap_minus_squares_to_swap", SqrtSwapSign::Minus),
    ] {
        let root = sqrt_swap(sign);
        push(name, max_abs_diff(&(&root * &root), &swap_gate()));
    }
    push(
        "xor_equals_i_times_qpi",
        max_abs_diff(&xor_gate(), &(phase_gate(PI) * C64::new(0.0, 1.0))),
    );
    push("exchange_algebra", qdot::max_identity_residual());

    let qpi = qdot::qpi_sequence();
    push(
        "qpi_dots_phase_gate",
        phase_alignment(&qpi, &phase_gate(PI)).0,
    );
    push(
        "qpi_dots_xor_cross_route",
        phase_alignment(&qpi, &xor_gate()).0,
    );

    let exchange = qdot::evolve_schedule(&qdot::exchange_schedule(FRAC_PI_2)).unwrap();
    push(
        "exchange_swap_pulse",
        phase_alignment(&exchange, &swap_gate()).0,
    );

    let rotated = qdot::evolve_schedule(&qdot::rotation_schedule(PI / 3.0, PI / 5.0)).unwrap();
    let rotation_target = kron(&rotation_gate(PI / 3.0, PI / 5.0), &identity(2));
    push(
        "dot_rotation_pulse",
        max_abs_diff(&rotated, &rotation_target),
    );

    let ions = IonTrapParams::new(2, 0.1, 1.0, 10.0, 3).expect("valid ion parameters");
    let cz = iontrap::cirac_zoller_gate(&ions).expect("valid gate");
    push(
        "cirac_zoller_phase_gate",
        phase_alignment(&cz.reduced, &phase_gate(PI)).0,
    );
    let cz_expm = iontrap::cirac_zoller_gate_via_expm(&ions).expect("valid gate");
    push(
        "cirac_zoller_route_agreement",
        max_abs_diff(&cz.full, &cz_expm.full),
    );
    push(
        "cirac_zoller_phonon_leakage",
        iontrap::phonon_leakage(&ions, &cz.full),
    );

    let cav = CavityParams::dispersive(5.0, 0.1, 100.0).expect("valid cavity parameters");
    let t = cavity::solve_time_for_eta(&cav, PI).expect("nonzero phase rate");
    let (gate, _) = cavity::phase_gate_sim(&cav, t).expect("dispersive model");
    push("cavity_qpg_sign_flip", max_abs_diff(&gate, &phase_gate(PI)));

    let sm = SmParams::new(0.1, 1.0, 0.05).expect("nonzero detuning");
    let entangled = iontrap::sm_gate(&sm, sm.entangling_time()) * basis_state(4, 0);
    let r = 0.5_f64.sqrt();
    let mut bell: CVector = CVector::zeros(4);
    bell[0] = C64::new(r, 0.0);
    bell[3] = C64::new(0.0, -r);
    push("sm_entangling_pulse", (entangled - bell).norm());

    let jp = JpParams::new(
        1.0,
        vec![
            JpMode {
                eta1: 0.11,
                eta2: 0.13,
                nu: 0.4,
            },
            JpMode {
                eta1: 0.09,
                eta2: 0.08,
                nu: 0.7,
            },
        ],
    )
    .expect("no resonant pole");
    let (_, jp_gate) = iontrap::jp_gate(&jp, jp.entangling_time());
    let out = &jp_gate * basis_state(4, 1);
    push(
        "jp_balanced_amplitudes",
        (out[1].norm() - out[2].norm()).abs() + (out[1].norm() - r).abs(),
    );

    push("cavity_dressed_eigenpairs", dressed_residual(&cav));

    results
}

fn dressed_residual(p: &CavityParams) -> f64 {
    let mut worst: f64 = 0.0;
    let h = cavity::build_hamiltonian(p);
    for n in 1..=p.n_max {
        let d = cavity::dressed_states(p, n).expect("non-degenerate");
        let r_plus = &h * &d.plus - &d.plus * C64::new(d.e_plus, 0.0);
        let r_minus = &h * &d.minus - &d.minus * C64::new(d.e_minus, 0.0);
        worst = worst.max(r_plus.norm()).max(r_minus.norm());
    }
    worst
}

/// 0 when every identity is below tolerance, 1 otherwise.
pub fn exit_code(results: &[IdentityResult], tol: f64) -> u8 {
    if results.iter().all(|r| r.distance < tol) {
        0
    } else {
        1
    }
}

/// Prints the identity table to stdout.
pub fn print_table(results: &[IdentityResult], tol: f64) {
    println!("{:<36} {:>12}  status", "identity", "distance");
    for r in results {
        let status = if r.distance < tol { "pass" } else { "FAIL" };
        println!("{:<36} {:>12.3e}  {}", r.name, r.distance, status);
    }
    let failures = results.iter().filter(|r| r.distance >= tol).count();
    println!(
        "{} identities checked, {} failed (tolerance {:e})",
        results.len(),
        failures,
        tol
    );
}

/// Negative control for the exit-code path: the distance produced by a
/// deliberate sign error (−i·Q_π instead of i·Q_π in the XOR identity).
pub fn sign_error_control() -> IdentityResult {
    let wrong = phase_gate(PI) * C64::new(0.0, -1.0);
    IdentityResult {
        name: "sign_error_control",
        distance: max_abs_diff(&xor_gate(), &wrong),
    }
}
