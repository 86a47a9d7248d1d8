//! Three-level atom coupled to a quantized cavity mode: the full interaction
//! Hamiltonian, its two-dimensional invariant blocks and dressed states, and
//! the large-detuning (dispersive) phase-gate model.
//!
//! Atomic levels are ordered {α, β, γ} with the qubit encoded as |1⟩ = |β⟩,
//! |0⟩ = |γ⟩; the second qubit is the photon number 0/1. The γ level is
//! detached: its entire row and column of the Hamiltonian are zero, including
//! the field energy.

use crate::fock::FockSpace;
use crate::linalg::{expm, phase_alignment, CMatrix, CVector, C64};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CavityError {
    #[error("coupling must be non-negative, got g = {0}")]
    NegativeCoupling(f64),
    #[error("need at least two photon levels, got n_max = {0}")]
    TruncationTooSmall(usize),
    #[error("block index n = {n} outside 1..={n_max}")]
    BlockOutOfRange { n: usize, n_max: usize },
    #[error("dressed states are degenerate (D = 0); requires g > 0")]
    DegenerateDressedStates,
    #[error("detuning is zero; the dispersive model needs Δ ≠ 0")]
    ZeroDetuning,
    #[error("no phase accumulates (E₋(1) = 0)")]
    NoPhaseAccumulation,
}

pub const LEVEL_ALPHA: usize = 0;
pub const LEVEL_BETA: usize = 1;
pub const LEVEL_GAMMA: usize = 2;

#[derive(Debug, Clone, Copy)]
pub struct CavityParams {
    /// Atomic α↔β transition frequency ω_αβ.
    pub omega_ab: f64,
    /// Cavity mode frequency ν.
    pub nu: f64,
    /// Atom-field coupling g.
    pub g: f64,
    /// Photon-number truncation.
    pub n_max: usize,
    /// Required |Δ| / (2g√n_max) for the dispersive model to be trusted.
    pub min_detuning_ratio: f64,
}

impl CavityParams {
    pub fn new(omega_ab: f64, nu: f64, g: f64, n_max: usize) -> Result<Self, CavityError> {
        if g < 0.0 {
            return Err(CavityError::NegativeCoupling(g));
        }
        if n_max < 2 {
            return Err(CavityError::TruncationTooSmall(n_max));
        }
        Ok(CavityParams {
            omega_ab,
            nu,
            g,
            n_max,
            min_detuning_ratio: 10.0,
        })
    }

    /// Dispersive parameters with the detuning given as a multiple of g.
    pub fn dispersive(omega_ab: f64, g: f64, delta_over_g: f64) -> Result<Self, CavityError> {
        CavityParams::new(omega_ab, omega_ab + delta_over_g * g, g, 3)
    }

    /// Detuning Δ = ν − ω_αβ.
    pub fn detuning(&self) -> f64 {
        self.nu - self.omega_ab
    }

    /// |Δ| in units of the largest retained coupling 2g√n_max.
    pub fn detuning_ratio(&self) -> f64 {
        let scale = 2.0 * self.g * (self.n_max as f64).sqrt();
        if scale == 0.0 {
            f64::INFINITY
        } else {
            self.detuning().abs() / scale
        }
    }

    pub fn is_dispersive(&self) -> bool {
        self.detuning_ratio() >= self.min_detuning_ratio
    }

    pub fn dim(&self) -> usize {
        3 * (self.n_max + 1)
    }

    fn photon_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn index(&self, level: usize, n: usize) -> usize {
        level * self.photon_dim() + n
    }

    /// Rabi splitting Ω_n = √(Δ² + 4g²n) of the n-th block.
    pub fn block_splitting(&self, n: usize) -> f64 {
        (self.detuning().powi(2) + 4.0 * self.g * self.g * n as f64).sqrt()
    }

    /// Dispersive energy of |β,1⟩: E₋(1) = -ω_αβ/2 + ν + g²/Δ.
    pub fn e_minus_1(&self) -> Result<f64, CavityError> {
        let shift = if self.g == 0.0 {
            0.0
        } else {
            let delta = self.detuning();
            if delta == 0.0 {
                return Err(CavityError::ZeroDetuning);
            }
            self.g * self.g / delta
        };
        Ok(-0.5 * self.omega_ab + self.nu + shift)
    }

    /// Row/column indices of the computational states {|0,0⟩,|0,1⟩,|1,0⟩,|1,1⟩}
    /// = {γ0, γ1, β0, β1} inside the full space.
    pub fn qubit_indices(&self) -> [usize; 4] {
        [
            self.index(LEVEL_GAMMA, 0),
            self.index(LEVEL_GAMMA, 1),
            self.index(LEVEL_BETA, 0),
            self.index(LEVEL_BETA, 1),
        ]
    }
}

/// Full atom-cavity Hamiltonian
/// H = (ω_αβ/2)(|α⟩⟨α| − |β⟩⟨β|)⊗1 + ν·1⊗a†a + g(|α⟩⟨β|⊗a + |β⟩⟨α|⊗a†)
/// with the γ sector zeroed entirely.
pub fn build_hamiltonian(p: &CavityParams) -> CMatrix {
    let space = FockSpace::new(p.n_max).expect("n_max >= 2");
    let (a, a_dag) = space.ladder_ops();
    let pd = p.photon_dim();
    let mut h = CMatrix::zeros(p.dim(), p.dim());
    for n in 0..pd {
        h[(p.index(LEVEL_ALPHA, n), p.index(LEVEL_ALPHA, n))] =
            C64::new(0.5 * p.omega_ab + p.nu * n as f64, 0.0);
        h[(p.index(LEVEL_BETA, n), p.index(LEVEL_BETA, n))] =
            C64::new(-0.5 * p.omega_ab + p.nu * n as f64, 0.0);
    }
    for row in 0..pd {
        for col in 0..pd {
            // g |α⟩⟨β| ⊗ a  and its adjoint.
            h[(p.index(LEVEL_ALPHA, row), p.index(LEVEL_BETA, col))] = a[(row, col)] * p.g;
            h[(p.index(LEVEL_BETA, row), p.index(LEVEL_ALPHA, col))] = a_dag[(row, col)] * p.g;
        }
    }
    h
}

/// Matrix of the full Hamiltonian on the invariant block
/// V_n = span{|α,n-1⟩, |β,n⟩}:
/// [[ω_αβ/2 + ν(n-1), g√n], [g√n, -ω_αβ/2 + νn]].
pub fn invariant_block(p: &CavityParams, n: usize) -> Result<CMatrix, CavityError> {
    if n < 1 || n > p.n_max {
        return Err(CavityError::BlockOutOfRange { n, n_max: p.n_max });
    }
    let root = (n as f64).sqrt();
    Ok(CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.5 * p.omega_ab + p.nu * (n as f64 - 1.0), 0.0),
            C64::new(p.g * root, 0.0),
            C64::new(p.g * root, 0.0),
            C64::new(-0.5 * p.omega_ab + p.nu * n as f64, 0.0),
        ],
    ))
}

/// Dressed eigenstates of the n-th invariant block, as full-space vectors.
#[derive(Debug, Clone)]
pub struct DressedPair {
    pub plus: CVector,
    pub minus: CVector,
    pub e_plus: f64,
    pub e_minus: f64,
    pub sin_theta: f64,
    pub cos_theta: f64,
}

/// |+⟩_n = cosθ_n|α,n-1⟩ − sinθ_n|β,n⟩ and |−⟩_n = sinθ_n|α,n-1⟩ + cosθ_n|β,n⟩
/// with sinθ_n = (Ω_n−Δ)/D, cosθ_n = 2g√n/D, and energies
/// E_±(n) = nν + (−ν ∓ Ω_n)/2.
pub fn dressed_states(p: &CavityParams, n: usize) -> Result<DressedPair, CavityError> {
    if n < 1 || n > p.n_max {
        return Err(CavityError::BlockOutOfRange { n, n_max: p.n_max });
    }
    let delta = p.detuning();
    let omega_n = p.block_splitting(n);
    let two_g_root = 2.0 * p.g * (n as f64).sqrt();
    let d = ((omega_n - delta).powi(2) + two_g_root.powi(2)).sqrt();
    if d == 0.0 {
        return Err(CavityError::DegenerateDressedStates);
    }
    let sin_theta = (omega_n - delta) / d;
    let cos_theta = two_g_root / d;

    let mut plus = CVector::zeros(p.dim());
    plus[p.index(LEVEL_ALPHA, n - 1)] = C64::new(cos_theta, 0.0);
    plus[p.index(LEVEL_BETA, n)] = C64::new(-sin_theta, 0.0);
    let mut minus = CVector::zeros(p.dim());
    minus[p.index(LEVEL_ALPHA, n - 1)] = C64::new(sin_theta, 0.0);
    minus[p.index(LEVEL_BETA, n)] = C64::new(cos_theta, 0.0);

    let nf = n as f64;
    Ok(DressedPair {
        plus,
        minus,
        e_plus: nf * p.nu + 0.5 * (-p.nu - omega_n),
        e_minus: nf * p.nu + 0.5 * (-p.nu + omega_n),
        sin_theta,
        cos_theta,
    })
}

/// Large-detuning effective Hamiltonian
/// H̃ = H₀ + H₁ − (g²/Δ)(a a†|α⟩⟨α| − a†a|β⟩⟨β|), diagonal in the product
/// basis, γ sector zero.
pub fn effective_hamiltonian(p: &CavityParams) -> Result<CMatrix, CavityError> {
    let shift = if p.g == 0.0 {
        0.0
    } else {
        let delta = p.detuning();
        if delta == 0.0 {
            return Err(CavityError::ZeroDetuning);
        }
        p.g * p.g / delta
    };
    let mut h = CMatrix::zeros(p.dim(), p.dim());
    for n in 0..p.photon_dim() {
        let nf = n as f64;
        // a a† |n⟩ = (n+1)|n⟩ in the α sector, a†a |n⟩ = n|n⟩ in the β sector.
        h[(p.index(LEVEL_ALPHA, n), p.index(LEVEL_ALPHA, n))] =
            C64::new(0.5 * p.omega_ab + p.nu * nf - shift * (nf + 1.0), 0.0);
        h[(p.index(LEVEL_BETA, n), p.index(LEVEL_BETA, n))] =
            C64::new(-0.5 * p.omega_ab + p.nu * nf + shift * nf, 0.0);
    }
    Ok(h)
}

/// Effective generator on the four computational states: the qubit states
/// |0,0⟩, |0,1⟩, |1,0⟩ are stationary and |1,1⟩ carries E₋(1), so the
/// evolution is the quantum phase gate diag(1,1,1,e^{-iE₋(1)t}).
pub fn qubit_generator(p: &CavityParams) -> Result<CMatrix, CavityError> {
    let mut h = CMatrix::zeros(4, 4);
    h[(3, 3)] = C64::new(p.e_minus_1()?, 0.0);
    Ok(h)
}

/// Evolves the computational states for time t under the dispersive model and
/// returns the resulting gate together with the accumulated phase
/// η = −E₋(1)·t (mod 2π, in (−π, π]).
pub fn phase_gate_sim(p: &CavityParams, t: f64) -> Result<(CMatrix, f64), CavityError> {
    let gate = expm(&qubit_generator(p)?, C64::new(0.0, -t)).expect("generator is square");
    let eta = wrap_angle(-p.e_minus_1()? * t);
    Ok((gate, eta))
}

/// Smallest t > 0 with −E₋(1)·t ≡ eta (mod 2π).
pub fn solve_time_for_eta(p: &CavityParams, eta: f64) -> Result<f64, CavityError> {
    let rate = -p.e_minus_1()?;
    if rate == 0.0 {
        return Err(CavityError::NoPhaseAccumulation);
    }
    let turns = 2.0 * std::f64::consts::PI;
    let fraction = (eta * rate.signum()).rem_euclid(turns);
    let fraction = if fraction == 0.0 { turns } else { fraction };
    Ok(fraction / rate.abs())
}

/// Phase-free distance between the exact evolution and the dispersive model,
/// both restricted to the four computational states. Decreases as |Δ|/g grows.
pub fn effective_vs_exact_error(p: &CavityParams, t: f64) -> Result<f64, CavityError> {
    let scale = C64::new(0.0, -t);
    let exact = expm(&build_hamiltonian(p), scale).expect("square");
    let effective = expm(&effective_hamiltonian(p)?, scale).expect("square");
    let idx = p.qubit_indices();
    let restrict = |m: &CMatrix| CMatrix::from_fn(4, 4, |r, c| m[(idx[r], idx[c])]);
    Ok(phase_alignment(&restrict(&exact), &restrict(&effective)).0)
}

/// Leakage diagnostic under the exact Hamiltonian: the worst-case population
/// outside the computational subspace (α levels plus the photon buffer level)
/// over the four computational initial states.
pub fn exact_leakage(p: &CavityParams, t: f64) -> f64 {
    let exact = expm(&build_hamiltonian(p), C64::new(0.0, -t)).expect("square");
    let idx = p.qubit_indices();
    let mut worst: f64 = 0.0;
    for &col in &idx {
        let mut leaked = 0.0;
        for row in 0..p.dim() {
            let level = row / p.photon_dim();
            let n = row % p.photon_dim();
            if level == LEVEL_ALPHA || n == p.n_max {
                leaked += exact[(row, col)].norm_sqr();
            }
        }
        worst = worst.max(leaked);
    }
    worst
}

fn wrap_angle(x: f64) -> f64 {
    let turns = 2.0 * std::f64::consts::PI;
    let wrapped = x.rem_euclid(turns);
    if wrapped > std::f64::consts::PI {
        wrapped - turns
    } else {
        wrapped
    }
}
