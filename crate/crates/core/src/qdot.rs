//! Exchange-coupled quantum-dot pair: the two-spin control Hamiltonian,
//! pulse schedules realizing swap, √swap, single-spin rotations and the
//! conditional phase gate, Heisenberg-picture trajectories, and a truncated
//! Dyson series for cross-checking the propagator.

use crate::gates::{pauli, swap_gate, Axis};
use crate::linalg::{expm, identity, kron, CMatrix, C64};
use crate::schedule::{DeviceKind, PulseSchedule, ScheduleError, Segment};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QdotError {
    #[error("schedule targets {0:?}, not the quantum-dot pair")]
    WrongDevice(DeviceKind),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("sample time {t} outside the schedule duration {duration}")]
    TimeOutOfRange { t: f64, duration: f64 },
}

const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

/// Pauli component on dot 1: σ_a ⊗ 1.
pub fn spin1(axis: Axis) -> CMatrix {
    kron(&pauli(axis), &identity(2))
}

/// Pauli component on dot 2: 1 ⊗ τ_a.
pub fn spin2(axis: Axis) -> CMatrix {
    kron(&identity(2), &pauli(axis))
}

/// Exchange operator σ·τ = Σ_a σ_a ⊗ τ_a.
pub fn exchange_op() -> CMatrix {
    AXES.iter()
        .map(|&a| kron(&pauli(a), &pauli(a)))
        .fold(CMatrix::zeros(4, 4), |acc, m| acc + m)
}

/// Control Hamiltonian H = (1/2)[Ω₁·σ + Ω₂·τ + ω σ·τ].
pub fn build_h(omega1: [f64; 3], omega2: [f64; 3], exchange: f64) -> CMatrix {
    let mut h = exchange_op() * C64::new(0.5 * exchange, 0.0);
    for (i, &axis) in AXES.iter().enumerate() {
        if omega1[i] != 0.0 {
            h += spin1(axis) * C64::new(0.5 * omega1[i], 0.0);
        }
        if omega2[i] != 0.0 {
            h += spin2(axis) * C64::new(0.5 * omega2[i], 0.0);
        }
    }
    h
}

/// Hamiltonian of one schedule segment.
pub fn segment_hamiltonian(seg: &Segment) -> CMatrix {
    build_h(
        seg.vector("omega1"),
        seg.vector("omega2"),
        seg.scalar("exchange"),
    )
}

/// One named algebraic identity of the σ·τ calculus and its residual.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub residual: f64,
}

/// Verifies the spin-exchange identities the pulse constructions rest on:
/// ((1+σ·τ)/2)² = 1, (σ·τ)² = 3 − 2σ·τ, U_sw = (1+σ·τ)/2, U_sw σ U_sw = τ,
/// U_sw² = 1, and the singlet/triplet projector algebra.
pub fn sigma_tau_identities() -> Vec<IdentityCheck> {
    use crate::linalg::max_abs_diff;
    let st = exchange_op();
    let one = identity(4);
    let u = (&one + &st) / C64::new(2.0, 0.0);
    let mut checks = vec![
        IdentityCheck {
            name: "half_one_plus_exchange_squares_to_one",
            residual: max_abs_diff(&(&u * &u), &one),
        },
        IdentityCheck {
            name: "exchange_square_identity",
            residual: max_abs_diff(
                &(&st * &st),
                &(&one * C64::new(3.0, 0.0) - &st * C64::new(2.0, 0.0)),
            ),
        },
        IdentityCheck {
            name: "swap_is_half_one_plus_exchange",
            residual: max_abs_diff(&u, &swap_gate()),
        },
        IdentityCheck {
            name: "swap_squares_to_one",
            residual: max_abs_diff(&(swap_gate() * swap_gate()), &one),
        },
    ];
    for axis in AXES {
        let conjugated = swap_gate() * spin1(axis) * swap_gate();
        checks.push(IdentityCheck {
            name: match axis {
                Axis::X => "swap_conjugates_sigma_x_to_tau_x",
                Axis::Y => "swap_conjugates_sigma_y_to_tau_y",
                Axis::Z => "swap_conjugates_sigma_z_to_tau_z",
            },
            residual: max_abs_diff(&conjugated, &spin2(axis)),
        });
    }
    let p1 = (&one * C64::new(3.0, 0.0) + &st) / C64::new(4.0, 0.0);
    let p2 = (&one - &st) / C64::new(4.0, 0.0);
    checks.push(IdentityCheck {
        name: "triplet_projector_idempotent",
        residual: max_abs_diff(&(&p1 * &p1), &p1),
    });
    checks.push(IdentityCheck {
        name: "singlet_projector_idempotent",
        residual: max_abs_diff(&(&p2 * &p2), &p2),
    });
    checks.push(IdentityCheck {
        name: "projectors_orthogonal",
        residual: max_abs_diff(&(&p1 * &p2), &CMatrix::zeros(4, 4)),
    });
    checks
}

pub fn max_identity_residual() -> f64 {
    sigma_tau_identities()
        .iter()
        .map(|c| c.residual)
        .fold(0.0, f64::max)
}

fn check_device(s: &PulseSchedule) -> Result<(), QdotError> {
    if s.device != DeviceKind::QuantumDotPair {
        return Err(QdotError::WrongDevice(s.device));
    }
    Ok(())
}

/// Time-ordered propagator of a dot schedule: the product of per-segment
/// exponentials, earliest segment acting first.
pub fn evolve_schedule(s: &PulseSchedule) -> Result<CMatrix, QdotError> {
    check_device(s)?;
    let mut u = identity(4);
    for seg in &s.segments {
        let h = segment_hamiltonian(seg);
        let step = expm(&h, C64::new(0.0, -seg.duration)).expect("segment H is square");
        u = step * u;
    }
    Ok(u)
}

/// Closed form of an exchange-only pulse with area ∫ω dt:
/// e^{iφ}[cos(2φ)·1 − i sin(2φ)·U_sw] with φ = area/2.
pub fn exchange_closed_form(area: f64) -> CMatrix {
    let phi = 0.5 * area;
    let prefactor = C64::new(0.0, phi).exp();
    let (s, c) = (2.0 * phi).sin_cos();
    (identity(4) * C64::new(c, 0.0) + swap_gate() * C64::new(0.0, -s)) * prefactor
}

/// Single-segment exchange pulse of the given area.
pub fn exchange_schedule(area: f64) -> PulseSchedule {
    PulseSchedule::new(
        DeviceKind::QuantumDotPair,
        vec![Segment::new(1.0).with_scalar("exchange", area)],
    )
    .expect("valid by construction")
}

/// Single-dot pulse along the xy-plane axis e(φ) with area 2θ, which
/// realizes rotation_gate(θ, φ) ⊗ 1 with global phase exactly 1.
pub fn rotation_schedule(theta: f64, phi: f64) -> PulseSchedule {
    let area = 2.0 * theta;
    PulseSchedule::new(
        DeviceKind::QuantumDotPair,
        vec![Segment::new(1.0).with_vector("omega1", [area * phi.cos(), area * phi.sin(), 0.0])],
    )
    .expect("valid by construction")
}

/// The five-stage conditional-phase schedule: exchange π/4, dot-1 z-area −π,
/// exchange π/4, dot-2 z-area −π/2, dot-1 z-area +π/2, in that time order.
pub fn qpi_schedule() -> PulseSchedule {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    PulseSchedule::new(
        DeviceKind::QuantumDotPair,
        vec![
            Segment::new(1.0).with_scalar("exchange", FRAC_PI_4),
            Segment::new(1.0).with_vector("omega1", [0.0, 0.0, -PI]),
            Segment::new(1.0).with_scalar("exchange", FRAC_PI_4),
            Segment::new(1.0).with_vector("omega2", [0.0, 0.0, -FRAC_PI_2]),
            Segment::new(1.0).with_vector("omega1", [0.0, 0.0, FRAC_PI_2]),
        ],
    )
    .expect("valid by construction")
}

/// Evolves the five-stage schedule; matches the quantum phase gate Q_π up to
/// a global phase.
pub fn qpi_sequence() -> CMatrix {
    evolve_schedule(&qpi_schedule()).expect("schedule is valid")
}

/// Propagator from time 0 to an arbitrary time inside the schedule.
pub fn propagator_until(s: &PulseSchedule, t: f64) -> Result<CMatrix, QdotError> {
    check_device(s)?;
    let duration = s.total_duration();
    if t < 0.0 || t > duration + 1e-12 {
        return Err(QdotError::TimeOutOfRange { t, duration });
    }
    let mut u = identity(4);
    let mut remaining = t;
    for seg in &s.segments {
        if remaining <= 0.0 {
            break;
        }
        let h = segment_hamiltonian(seg);
        let dt = remaining.min(seg.duration);
        u = expm(&h, C64::new(0.0, -dt)).expect("square") * u;
        remaining -= seg.duration;
    }
    Ok(u)
}

/// Heisenberg-picture spin components sampled along a schedule:
/// σ_a(t) = U(t)† σ_a U(t) and likewise for τ.
#[derive(Debug, Clone)]
pub struct HeisenbergTrajectory {
    pub times: Vec<f64>,
    pub sigma: Vec<[CMatrix; 3]>,
    pub tau: Vec<[CMatrix; 3]>,
}

pub fn heisenberg_evolve(
    s: &PulseSchedule,
    times: &[f64],
) -> Result<HeisenbergTrajectory, QdotError> {
    check_device(s)?;
    let mut sigma = Vec::with_capacity(times.len());
    let mut tau = Vec::with_capacity(times.len());
    for &t in times {
        let u = propagator_until(s, t)?;
        let u_dag = u.adjoint();
        let conj = |op: CMatrix| &u_dag * op * &u;
        sigma.push([
            conj(spin1(Axis::X)),
            conj(spin1(Axis::Y)),
            conj(spin1(Axis::Z)),
        ]);
        tau.push([
            conj(spin2(Axis::X)),
            conj(spin2(Axis::Y)),
            conj(spin2(Axis::Z)),
        ]);
    }
    Ok(HeisenbergTrajectory {
        times: times.to_vec(),
        sigma,
        tau,
    })
}

/// Formal cross product of two operator triples, components multiplied in the
/// written order: (a × b)_x = a_y b_z − a_z b_y, cyclically.
pub fn cross_product(a: &[CMatrix; 3], b: &[CMatrix; 3]) -> [CMatrix; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn scalar_cross(v: [f64; 3], ops: &[CMatrix; 3]) -> [CMatrix; 3] {
    let c = |x: f64| C64::new(x, 0.0);
    [
        &ops[2] * c(v[1]) - &ops[1] * c(v[2]),
        &ops[0] * c(v[2]) - &ops[2] * c(v[0]),
        &ops[1] * c(v[0]) - &ops[0] * c(v[1]),
    ]
}

/// Largest residual of the Heisenberg equations of motion
/// dσ/dt = Ω₁×σ − ω σ×τ and dτ/dt = Ω₂×τ + ω σ×τ, checked with central
/// finite differences at interior points of each segment. Normalized by the
/// segment's ‖H‖.
pub fn heisenberg_residual(s: &PulseSchedule) -> Result<f64, QdotError> {
    check_device(s)?;
    let h_step = 1e-4;
    let mut worst: f64 = 0.0;
    let mut start = 0.0;
    for seg in &s.segments {
        let h_norm = segment_hamiltonian(seg).norm().max(1e-12);
        let samples = [0.25, 0.5, 0.75].map(|f| start + f * seg.duration);
        for t in samples {
            let probe = heisenberg_evolve(s, &[t - h_step, t, t + h_step])?;
            for spin in [0, 1] {
                let (now, fwd, bwd) = if spin == 0 {
                    (&probe.sigma[1], &probe.sigma[2], &probe.sigma[0])
                } else {
                    (&probe.tau[1], &probe.tau[2], &probe.tau[0])
                };
                let drive = if spin == 0 {
                    seg.vector("omega1")
                } else {
                    seg.vector("omega2")
                };
                let cross_st = cross_product(&probe.sigma[1], &probe.tau[1]);
                let precession = scalar_cross(drive, now);
                let w = seg.scalar("exchange");
                let exchange_sign = if spin == 0 { -w } else { w };
                for a in 0..3 {
                    let derivative = (&fwd[a] - &bwd[a]) / C64::new(2.0 * h_step, 0.0);
                    let rhs = &precession[a] + &cross_st[a] * C64::new(exchange_sign, 0.0);
                    let residual = (derivative - rhs).norm() / h_norm;
                    worst = worst.max(residual);
                }
            }
        }
        start += seg.duration;
    }
    Ok(worst)
}

/// Truncated Dyson series 1 − i∫H + (−i)²∫∫ H H + … evaluated by nested
/// trapezoid quadrature over the piecewise-constant schedule. Converges to
/// [`evolve_schedule`] as the order grows while ∫‖H‖dt < 1.
pub fn dyson_propagator(s: &PulseSchedule, order: usize) -> Result<CMatrix, QdotError> {
    check_device(s)?;
    const POINTS_PER_SEGMENT: usize = 1600;

    // Per-segment grids; term values live on every grid point.
    let hamiltonians: Vec<CMatrix> = s.segments.iter().map(segment_hamiltonian).collect();
    let steps: Vec<f64> = s
        .segments
        .iter()
        .map(|seg| seg.duration / POINTS_PER_SEGMENT as f64)
        .collect();

    let grid: Vec<Vec<CMatrix>> = s
        .segments
        .iter()
        .map(|_| vec![identity(4); POINTS_PER_SEGMENT + 1])
        .collect();
    let mut term = grid;
    let mut total = identity(4);

    for _ in 0..order {
        let mut next: Vec<Vec<CMatrix>> = Vec::with_capacity(term.len());
        let mut carry = CMatrix::zeros(4, 4);
        for (seg_idx, values) in term.iter().enumerate() {
            let h = &hamiltonians[seg_idx];
            let dt = steps[seg_idx];
            let minus_i = C64::new(0.0, -1.0);
            let mut integrated = Vec::with_capacity(values.len());
            let mut acc = carry.clone();
            integrated.push(acc.clone());
            for i in 1..values.len() {
                let f_prev = h * &values[i - 1] * minus_i;
                let f_here = h * &values[i] * minus_i;
                acc += (f_prev + f_here) * C64::new(0.5 * dt, 0.0);
                integrated.push(acc.clone());
            }
            carry = acc;
            next.push(integrated);
        }
        total += &carry;
        term = next;
    }
    Ok(total)
}
