//! Trapped-ion two-qubit gates: the three-pulse controlled phase gate driven
//! on the red sideband with an auxiliary level, plus the Sørensen–Mølmer and
//! Jonathan–Plenio effective models.
//!
//! The register is two ions, each with internal levels {|0⟩, |1⟩, |α⟩},
//! sharing one truncated center-of-mass phonon mode. Ion 1 is the most
//! significant factor; basis index = (s₁·3 + s₂)·(phonon_max+1) + k.

use crate::linalg::{expm, identity, kron, CMatrix, C64};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IonTrapError {
    #[error("need at least two ions, got {0}")]
    TooFewIons(usize),
    #[error("need at least two phonon levels, got phonon_max = {0}")]
    TruncationTooSmall(usize),
    #[error("ion index {0} out of range (register holds ions 1 and 2)")]
    IonOutOfRange(usize),
    #[error("sideband detuning must be nonzero")]
    ZeroDetuning,
    #[error("drive resonant with vibrational mode {index} (Ω² = ν_p²)")]
    ResonantPole { index: usize },
}

/// Internal level indices.
pub const ION_ZERO: usize = 0;
pub const ION_ONE: usize = 1;
pub const ION_AUX: usize = 2;

#[derive(Debug, Clone, Copy)]
pub struct IonTrapParams {
    /// Number of ions N in the string (sets the coupling, not the register).
    pub n_ions: usize,
    /// Lamb–Dicke parameter η.
    pub lamb_dicke: f64,
    /// Single-ion Rabi frequency Ω.
    pub rabi: f64,
    /// Center-of-mass mode frequency ω_CM (diagnostics only).
    pub omega_cm: f64,
    /// Phonon truncation.
    pub phonon_max: usize,
    /// Laser phase φ.
    pub phi: f64,
}

impl IonTrapParams {
    pub fn new(
        n_ions: usize,
        lamb_dicke: f64,
        rabi: f64,
        omega_cm: f64,
        phonon_max: usize,
    ) -> Result<Self, IonTrapError> {
        if n_ions < 2 {
            return Err(IonTrapError::TooFewIons(n_ions));
        }
        if phonon_max < 2 {
            return Err(IonTrapError::TruncationTooSmall(phonon_max));
        }
        Ok(IonTrapParams {
            n_ions,
            lamb_dicke,
            rabi,
            omega_cm,
            phonon_max,
            phi: 0.0,
        })
    }

    /// Sideband coupling g = ηΩ/(2√N).
    pub fn coupling(&self) -> f64 {
        self.lamb_dicke * self.rabi / (2.0 * (self.n_ions as f64).sqrt())
    }

    /// Block frequency E_k = (ηΩ/2)√((k+1)/N).
    pub fn block_frequency(&self, k: usize) -> f64 {
        self.coupling() * ((k + 1) as f64).sqrt()
    }

    /// Lamb–Dicke criterion ratio η·Ω/(2ω_CM); recorded, not enforced.
    pub fn lamb_dicke_ratio(&self) -> f64 {
        self.lamb_dicke * self.rabi / (2.0 * self.omega_cm)
    }

    /// Duration of a π/2 sideband pulse: T = π√N/(ηΩ), so E₀T = π/2.
    pub fn gate_time(&self) -> f64 {
        std::f64::consts::PI * (self.n_ions as f64).sqrt() / (self.lamb_dicke * self.rabi)
    }

    pub fn phonon_dim(&self) -> usize {
        self.phonon_max + 1
    }

    pub fn dim(&self) -> usize {
        9 * self.phonon_dim()
    }

    pub fn index(&self, s1: usize, s2: usize, k: usize) -> usize {
        (s1 * 3 + s2) * self.phonon_dim() + k
    }

    fn check_ion(&self, j: usize) -> Result<(), IonTrapError> {
        if j == 1 || j == 2 {
            Ok(())
        } else {
            Err(IonTrapError::IonOutOfRange(j))
        }
    }
}

/// Phonon ladder operators on the truncated CM mode.
fn phonon_ladder(p: &IonTrapParams) -> (CMatrix, CMatrix) {
    let dim = p.phonon_dim();
    let mut a = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    let a_dag = a.adjoint();
    (a, a_dag)
}

/// 3x3 transfer operator |to⟩⟨from| on one ion.
fn transfer(to: usize, from: usize) -> CMatrix {
    let mut e = CMatrix::zeros(3, 3);
    e[(to, from)] = C64::new(1.0, 0.0);
    e
}

/// Embeds a single-ion operator ⊗ phonon operator into the full register.
fn embed(j: usize, ion_op: &CMatrix, phonon_op: &CMatrix) -> CMatrix {
    let id3 = identity(3);
    match j {
        1 => kron(&kron(ion_op, &id3), phonon_op),
        2 => kron(&kron(&id3, ion_op), phonon_op),
        _ => unreachable!("ion index validated by callers"),
    }
}

fn coupling_hamiltonian(p: &IonTrapParams, j: usize, upper: usize) -> CMatrix {
    let (a, a_dag) = phonon_ladder(p);
    let g = p.coupling();
    let e_m = C64::new(0.0, -p.phi).exp() * g;
    let e_p = C64::new(0.0, p.phi).exp() * g;
    embed(j, &transfer(upper, ION_ZERO), &a) * e_m
        + embed(j, &transfer(ION_ZERO, upper), &a_dag) * e_p
}

/// Red-sideband Hamiltonian for ion j:
/// H_j = (ηΩ/2√N)[|1⟩_j⟨0|_j e^{-iφ} a + |0⟩_j⟨1|_j e^{iφ} a†].
pub fn red_sideband_h(p: &IonTrapParams, j: usize) -> Result<CMatrix, IonTrapError> {
    p.check_ion(j)?;
    Ok(coupling_hamiltonian(p, j, ION_ONE))
}

/// Auxiliary-level Hamiltonian: same coupling with |1⟩ replaced by |α⟩, so
/// every |1⟩_j|k⟩ state is left alone.
pub fn aux_h(p: &IonTrapParams, j: usize) -> Result<CMatrix, IonTrapError> {
    p.check_ion(j)?;
    Ok(coupling_hamiltonian(p, j, ION_AUX))
}

/// Closed-form propagator e^{-iH_j t} assembled block by block: each
/// {|0⟩_j|k+1⟩, |x⟩_j|k⟩} pair rotates at E_k, everything off-resonant is
/// fixed.
fn coupled_propagator(p: &IonTrapParams, j: usize, upper: usize, t: f64) -> CMatrix {
    let mut u = identity(p.dim());
    let mi = C64::new(0.0, -1.0);
    let e_p = C64::new(0.0, p.phi).exp();
    let e_m = C64::new(0.0, -p.phi).exp();
    for k in 0..p.phonon_max {
        let (s, c) = (p.block_frequency(k) * t).sin_cos();
        for other in 0..3 {
            let (idx_low, idx_up) = match j {
                1 => (p.index(ION_ZERO, other, k + 1), p.index(upper, other, k)),
                _ => (p.index(other, ION_ZERO, k + 1), p.index(other, upper, k)),
            };
            u[(idx_low, idx_low)] = C64::new(c, 0.0);
            u[(idx_up, idx_up)] = C64::new(c, 0.0);
            u[(idx_low, idx_up)] = mi * e_p * s;
            u[(idx_up, idx_low)] = mi * e_m * s;
        }
    }
    u
}

/// U_j(t, φ) on the red sideband, in closed form.
pub fn sideband_propagator(p: &IonTrapParams, j: usize, t: f64) -> Result<CMatrix, IonTrapError> {
    p.check_ion(j)?;
    Ok(coupled_propagator(p, j, ION_ONE, t))
}

/// U_j^aux(t, φ) through the auxiliary level, in closed form.
pub fn aux_propagator(p: &IonTrapParams, j: usize, t: f64) -> Result<CMatrix, IonTrapError> {
    p.check_ion(j)?;
    Ok(coupled_propagator(p, j, ION_AUX, t))
}

/// Three-pulse controlled phase gate.
#[derive(Debug, Clone)]
pub struct CzGate {
    /// Operator on the full two-ion ⊗ phonon space.
    pub full: CMatrix,
    /// Restriction to the computational states |s₁s₂⟩|0⟩_CM.
    pub reduced: CMatrix,
}

/// U = U₁(T,0) · U₂^aux(2T,0) · U₁(T,0) with T = π√N/(ηΩ): flips the sign of
/// |11⟩ only, i.e. the phase gate Q_π on the computational subspace.
pub fn cirac_zoller_gate(p: &IonTrapParams) -> Result<CzGate, IonTrapError> {
    let mut at_zero_phase = *p;
    at_zero_phase.phi = 0.0;
    let t = p.gate_time();
    let u1 = sideband_propagator(&at_zero_phase, 1, t)?;
    let u2 = aux_propagator(&at_zero_phase, 2, 2.0 * t)?;
    let full = &u1 * u2 * &u1;
    let reduced = reduce_to_register(p, &full);
    Ok(CzGate { full, reduced })
}

/// Same sequence with each propagator built by exponentiating the assembled
/// Hamiltonian; cross-checks the closed-form blocks.
pub fn cirac_zoller_gate_via_expm(p: &IonTrapParams) -> Result<CzGate, IonTrapError> {
    let mut at_zero_phase = *p;
    at_zero_phase.phi = 0.0;
    let t = p.gate_time();
    let h1 = red_sideband_h(&at_zero_phase, 1)?;
    let h2 = aux_h(&at_zero_phase, 2)?;
    let u1 = expm(&h1, C64::new(0.0, -t)).expect("square");
    let u2 = expm(&h2, C64::new(0.0, -2.0 * t)).expect("square");
    let full = &u1 * u2 * &u1;
    let reduced = reduce_to_register(p, &full);
    Ok(CzGate { full, reduced })
}

/// 4x4 matrix elements between the computational states |s₁s₂⟩|0⟩_CM.
pub fn reduce_to_register(p: &IonTrapParams, full: &CMatrix) -> CMatrix {
    let idx = [
        p.index(0, 0, 0),
        p.index(0, 1, 0),
        p.index(1, 0, 0),
        p.index(1, 1, 0),
    ];
    CMatrix::from_fn(4, 4, |r, c| full[(idx[r], idx[c])])
}

/// Worst-case population above phonon number 1 over the four computational
/// input states.
pub fn phonon_leakage(p: &IonTrapParams, full: &CMatrix) -> f64 {
    let inputs = [
        p.index(0, 0, 0),
        p.index(0, 1, 0),
        p.index(1, 0, 0),
        p.index(1, 1, 0),
    ];
    let mut worst: f64 = 0.0;
    for &col in &inputs {
        let mut leaked = 0.0;
        for row in 0..p.dim() {
            if row % p.phonon_dim() >= 2 {
                leaked += full[(row, col)].norm_sqr();
            }
        }
        worst = worst.max(leaked);
    }
    worst
}

/// Sørensen–Mølmer bichromatic drive parameters.
#[derive(Debug, Clone, Copy)]
pub struct SmParams {
    pub lamb_dicke: f64,
    pub rabi: f64,
    /// Detuning δ from the sidebands.
    pub delta: f64,
}

impl SmParams {
    pub fn new(lamb_dicke: f64, rabi: f64, delta: f64) -> Result<Self, IonTrapError> {
        if delta == 0.0 {
            return Err(IonTrapError::ZeroDetuning);
        }
        Ok(SmParams {
            lamb_dicke,
            rabi,
            delta,
        })
    }

    /// Effective two-ion Rabi frequency Ω_SM = η²Ω²/δ.
    pub fn effective_rabi(&self) -> f64 {
        self.lamb_dicke.powi(2) * self.rabi.powi(2) / self.delta
    }

    /// Full-entanglement time T = π/(2Ω_SM).
    pub fn entangling_time(&self) -> f64 {
        std::f64::consts::FRAC_PI_2 / self.effective_rabi().abs()
    }
}

/// H_SM = (Ω_SM/2)(|00⟩⟨11| + |11⟩⟨00| + |10⟩⟨01| + |01⟩⟨10|).
pub fn sm_hamiltonian(p: &SmParams) -> CMatrix {
    let half = C64::new(0.5 * p.effective_rabi(), 0.0);
    let mut h = CMatrix::zeros(4, 4);
    h[(0, 3)] = half;
    h[(3, 0)] = half;
    h[(1, 2)] = half;
    h[(2, 1)] = half;
    h
}

/// Evolution under the Sørensen–Mølmer effective Hamiltonian; at
/// t = π/(2Ω_SM) it takes |00⟩ to (|00⟩ − i|11⟩)/√2.
pub fn sm_gate(p: &SmParams, t: f64) -> CMatrix {
    expm(&sm_hamiltonian(p), C64::new(0.0, -t)).expect("square")
}

/// One vibrational mode entering the Jonathan–Plenio light-shift drive.
#[derive(Debug, Clone, Copy)]
pub struct JpMode {
    pub eta1: f64,
    pub eta2: f64,
    pub nu: f64,
}

#[derive(Debug, Clone)]
pub struct JpParams {
    pub rabi: f64,
    pub modes: Vec<JpMode>,
}

impl JpParams {
    pub fn new(rabi: f64, modes: Vec<JpMode>) -> Result<Self, IonTrapError> {
        for (index, mode) in modes.iter().enumerate() {
            if rabi * rabi == mode.nu * mode.nu {
                return Err(IonTrapError::ResonantPole { index });
            }
        }
        Ok(JpParams { rabi, modes })
    }

    /// ω_eff = (Ω²/2) Σ_p η₁ₚη₂ₚνₚ/(Ω² − νₚ²).
    pub fn effective_frequency(&self) -> f64 {
        let omega_sq = self.rabi * self.rabi;
        0.5 * omega_sq
            * self
                .modes
                .iter()
                .map(|m| m.eta1 * m.eta2 * m.nu / (omega_sq - m.nu * m.nu))
                .sum::<f64>()
    }

    /// Maximal-entanglement time T = |π/(4ω_eff)|.
    pub fn entangling_time(&self) -> f64 {
        (std::f64::consts::FRAC_PI_4 / self.effective_frequency()).abs()
    }
}

/// Evolution under H_JP = −ω_eff(|10⟩⟨01| + |01⟩⟨10|); returns ω_eff and the
/// gate. |00⟩ and |11⟩ are untouched.
pub fn jp_gate(p: &JpParams, t: f64) -> (f64, CMatrix) {
    let omega_eff = p.effective_frequency();
    let mut h = CMatrix::zeros(4, 4);
    h[(1, 2)] = C64::new(-omega_eff, 0.0);
    h[(2, 1)] = C64::new(-omega_eff, 0.0);
    (omega_eff, expm(&h, C64::new(0.0, -t)).expect("square"))
}
