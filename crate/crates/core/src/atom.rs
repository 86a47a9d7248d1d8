//! Two-level atom driven by a classical field: exact integration of the
//! time-dependent amplitude equations, the closed-form propagator in the
//! rotating-wave approximation, and pulse synthesis for rotation gates.

use crate::linalg::{identity, CMatrix, C64};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AtomError {
    #[error("Rabi frequency must be non-negative, got {0}")]
    NegativeRabi(f64),
    #[error("Rabi frequency must be positive for pulse synthesis, got {0}")]
    NonPositiveRabi(f64),
    #[error(
        "step size too large: step·max(ν, Ω_R) = {product:.3} must stay below 0.1 \
         (need more than {min_steps} steps)"
    )]
    StepTooLarge { product: f64, min_steps: usize },
}

/// Drive and level parameters, all angular frequencies.
#[derive(Debug, Clone, Copy)]
pub struct AtomParams {
    /// Lower level frequency ω₀.
    pub omega0: f64,
    /// Upper level frequency ω₁.
    pub omega1: f64,
    /// Drive frequency ν.
    pub nu: f64,
    /// Rabi frequency Ω_R ≥ 0.
    pub rabi: f64,
    /// Drive phase φ (phase of the dipole matrix element).
    pub phi: f64,
}

impl AtomParams {
    pub fn new(omega0: f64, omega1: f64, nu: f64, rabi: f64, phi: f64) -> Result<Self, AtomError> {
        if rabi < 0.0 {
            return Err(AtomError::NegativeRabi(rabi));
        }
        Ok(AtomParams {
            omega0,
            omega1,
            nu,
            rabi,
            phi,
        })
    }

    /// Resonant parameters: ν = ω with the lower level at frequency zero.
    pub fn resonant(transition: f64, rabi: f64, phi: f64) -> Result<Self, AtomError> {
        AtomParams::new(0.0, transition, transition, rabi, phi)
    }

    /// Transition frequency ω = ω₁ − ω₀ (upper minus lower).
    pub fn transition(&self) -> f64 {
        self.omega1 - self.omega0
    }

    /// Detuning Δ = ω − ν.
    pub fn detuning(&self) -> f64 {
        self.transition() - self.nu
    }

    /// Generalized Rabi frequency Ω = √(Ω_R² + Δ²) ≥ Ω_R.
    pub fn generalized_rabi(&self) -> f64 {
        self.rabi.hypot(self.detuning())
    }
}

/// Closed-form propagator for the slowly-varying amplitudes (c₀, c₁) in the
/// rotating-wave approximation, detuned case included. At resonance this is
/// the special-unitary matrix
/// [[cos(Ωt/2), i e^{-iφ} sin(Ωt/2)], [i e^{iφ} sin(Ωt/2), cos(Ωt/2)]].
pub fn rwa_propagator(p: &AtomParams, t: f64) -> CMatrix {
    let delta = p.detuning();
    let omega = p.generalized_rabi();
    if omega == 0.0 {
        return identity(2);
    }
    let half = 0.5 * omega * t;
    let (s, c) = half.sin_cos();
    let i = C64::new(0.0, 1.0);
    let frame_p = C64::new(0.0, 0.5 * delta * t).exp();
    let frame_m = frame_p.conj();
    let ratio_d = C64::new(delta / omega, 0.0);
    let ratio_r = C64::new(p.rabi / omega, 0.0);
    let e_m = C64::new(0.0, -p.phi).exp();
    let e_p = C64::new(0.0, p.phi).exp();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            frame_p * (C64::new(c, 0.0) - i * ratio_d * s),
            frame_p * i * ratio_r * e_m * s,
            frame_m * i * ratio_r * e_p * s,
            frame_m * (C64::new(c, 0.0) + i * ratio_d * s),
        ],
    )
}

/// Effective interaction Hamiltonian whose exponential reproduces the
/// resonant RWA propagator: H = -(Ω/2)[e^{iφ}|1⟩⟨0| + e^{-iφ}|0⟩⟨1|].
pub fn effective_hamiltonian(p: &AtomParams) -> CMatrix {
    let half = -0.5 * p.rabi;
    let mut h = CMatrix::zeros(2, 2);
    h[(1, 0)] = C64::new(0.0, p.phi).exp() * half;
    h[(0, 1)] = C64::new(0.0, -p.phi).exp() * half;
    h
}

/// Lab-frame coefficient matrix of the amplitude equations,
/// dC/dt = A(t) C, with the full cos(νt) drive (no rotating-wave step).
fn lab_frame_coefficients(p: &AtomParams, t: f64) -> CMatrix {
    let i = C64::new(0.0, 1.0);
    let drive = C64::new(p.rabi * (p.nu * t).cos(), 0.0);
    let e_m = C64::new(0.0, -p.phi).exp();
    let e_p = C64::new(0.0, p.phi).exp();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            -i * p.omega0,
            i * drive * e_m,
            i * drive * e_p,
            -i * p.omega1,
        ],
    )
}

/// Integrates the lab-frame amplitude equations with classical fixed-step
/// RK4 and returns the propagator for (C₀, C₁). Unitarity drift is left in the
/// result as an integration diagnostic rather than renormalized away.
pub fn integrate_full(p: &AtomParams, t: f64, steps: usize) -> Result<CMatrix, AtomError> {
    let fastest = p.nu.abs().max(p.rabi);
    let h = t / steps.max(1) as f64;
    if steps == 0 || h * fastest >= 0.1 {
        let min_steps = (t * fastest / 0.1).ceil() as usize + 1;
        return Err(AtomError::StepTooLarge {
            product: h * fastest,
            min_steps,
        });
    }
    let mut u = identity(2);
    let mut time = 0.0;
    let half = C64::new(0.5 * h, 0.0);
    let two = C64::new(2.0, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    for _ in 0..steps {
        let k1 = lab_frame_coefficients(p, time) * &u;
        let k2 = lab_frame_coefficients(p, time + 0.5 * h) * (&u + &k1 * half);
        let k3 = lab_frame_coefficients(p, time + 0.5 * h) * (&u + &k2 * half);
        let k4 = lab_frame_coefficients(p, time + h) * (&u + &k3 * C64::new(h, 0.0));
        u += (k1 + k2 * two + k3 * two + k4) * sixth;
        time += h;
    }
    Ok(u)
}

/// Transforms a lab-frame propagator to the frame of the slowly-varying
/// amplitudes, c_j = C_j e^{iω_j t}, for comparison against [`rwa_propagator`].
pub fn to_rotating_frame(p: &AtomParams, u_lab: &CMatrix, t: f64) -> CMatrix {
    let mut frame = CMatrix::zeros(2, 2);
    frame[(0, 0)] = C64::new(0.0, p.omega0 * t).exp();
    frame[(1, 1)] = C64::new(0.0, p.omega1 * t).exp();
    frame * u_lab
}

/// Pulse parameters (duration, drive phase) such that the resonant RWA
/// propagator equals rotation_gate(θ, φ_target): t = 2θ/Ω, φ = φ_target − π.
pub fn pulse_for_rotation(
    theta: f64,
    phi_target: f64,
    omega: f64,
) -> Result<(f64, f64), AtomError> {
    if omega <= 0.0 {
        return Err(AtomError::NonPositiveRabi(omega));
    }
    let t = 2.0 * theta / omega;
    let phi = (phi_target - std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI);
    Ok((t, phi))
}

/// Phase-free distance between the exactly integrated propagator (moved to
/// the rotating frame) and the RWA propagator, for a resonant pulse of the
/// given duration. The error scales as Ω_R/ν.
pub fn rwa_comparison_error(p: &AtomParams, t: f64, steps: usize) -> Result<f64, AtomError> {
    let full = integrate_full(p, t, steps)?;
    let rotated = to_rotating_frame(p, &full, t);
    let rwa = rwa_propagator(p, t);
    Ok(crate::linalg::phase_alignment(&rotated, &rwa).0)
}

/// Recommended step count for [`integrate_full`]: keeps step·max(ν, Ω_R)
/// near 0.02 so RK4 error stays well under the RWA discrepancies it measures.
pub fn suggested_steps(p: &AtomParams, t: f64) -> usize {
    let fastest = p.nu.abs().max(p.rabi);
    ((t * fastest / 0.02).ceil() as usize).max(100)
}
