//! Device models and schedule propagation: every device exposes a per-segment
//! Hamiltonian assembled from its channel values, and a schedule evolves as
//! the time-ordered product of segment exponentials (earliest pulse acts
//! first on kets).

use crate::atom::AtomParams;
use crate::cavity::{self, CavityParams};
use crate::iontrap::{self, IonTrapParams, JpParams, SmParams};
use crate::linalg::{self, expm, identity, CMatrix, C64};
use crate::qdot;
use crate::schedule::{DeviceKind, PulseSchedule, Segment};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DeviceError {
    #[error("schedule device {got:?} does not match model {expected:?}")]
    ChannelMismatch {
        expected: DeviceKind,
        got: DeviceKind,
    },
    #[error("assembled segment Hamiltonian is not Hermitian (deviation {0:e})")]
    NonHermitian(f64),
    #[error(transparent)]
    Cavity(#[from] cavity::CavityError),
    #[error(transparent)]
    IonTrap(#[from] iontrap::IonTrapError),
}

/// A device together with its physical parameters; produces Hamiltonians for
/// schedule segments.
#[derive(Debug, Clone)]
pub enum DeviceModel {
    TwoLevelAtom(AtomParams),
    CavityQed(CavityParams),
    IonTrapCz(IonTrapParams),
    IonTrapSm(SmParams),
    IonTrapJp(JpParams),
    QuantumDotPair,
}

impl DeviceModel {
    pub fn kind(&self) -> DeviceKind {
        match self {
            DeviceModel::TwoLevelAtom(_) => DeviceKind::TwoLevelAtom,
            DeviceModel::CavityQed(_) => DeviceKind::CavityQed,
            DeviceModel::IonTrapCz(_) => DeviceKind::IonTrapCz,
            DeviceModel::IonTrapSm(_) => DeviceKind::IonTrapSm,
            DeviceModel::IonTrapJp(_) => DeviceKind::IonTrapJp,
            DeviceModel::QuantumDotPair => DeviceKind::QuantumDotPair,
        }
    }

    /// Dimension of the space a schedule evolves on.
    pub fn dim(&self) -> usize {
        match self {
            DeviceModel::TwoLevelAtom(_) => 2,
            DeviceModel::CavityQed(_) => 4,
            DeviceModel::IonTrapCz(p) => p.dim(),
            DeviceModel::IonTrapSm(_) | DeviceModel::IonTrapJp(_) => 4,
            DeviceModel::QuantumDotPair => 4,
        }
    }

    /// Hamiltonian generating one segment of a schedule.
    pub fn segment_hamiltonian(&self, seg: &Segment) -> Result<CMatrix, DeviceError> {
        match self {
            DeviceModel::TwoLevelAtom(p) => {
                let mut drive = *p;
                let amplitude = seg.scalar("rabi");
                // A negative drive amplitude is a π phase shift.
                drive.rabi = amplitude.abs();
                drive.phi = seg.scalar("phase")
                    + if amplitude < 0.0 {
                        std::f64::consts::PI
                    } else {
                        0.0
                    };
                Ok(crate::atom::effective_hamiltonian(&drive))
            }
            DeviceModel::CavityQed(p) => {
                let shift = seg.scalar("shift");
                Ok(cavity::qubit_generator(p)? * C64::new(shift, 0.0))
            }
            DeviceModel::IonTrapCz(p) => {
                let mut h = CMatrix::zeros(p.dim(), p.dim());
                for (channel, build) in [
                    ("red1", iontrap::red_sideband_h(p, 1)?),
                    ("red2", iontrap::red_sideband_h(p, 2)?),
                    ("aux1", iontrap::aux_h(p, 1)?),
                    ("aux2", iontrap::aux_h(p, 2)?),
                ] {
                    let amplitude = seg.scalar(channel);
                    if amplitude != 0.0 {
                        h += build * C64::new(amplitude, 0.0);
                    }
                }
                Ok(h)
            }
            DeviceModel::IonTrapSm(p) => {
                Ok(iontrap::sm_hamiltonian(p) * C64::new(seg.scalar("sm"), 0.0))
            }
            DeviceModel::IonTrapJp(p) => {
                let omega_eff = p.effective_frequency();
                let mut h = CMatrix::zeros(4, 4);
                let v = C64::new(-omega_eff * seg.scalar("jp"), 0.0);
                h[(1, 2)] = v;
                h[(2, 1)] = v;
                Ok(h)
            }
            DeviceModel::QuantumDotPair => Ok(qdot::segment_hamiltonian(seg)),
        }
    }
}

/// Time-ordered product of per-segment propagators,
/// U = U_K ··· U_2 · U_1 for segments 1…K.
pub fn propagate(device: &DeviceModel, s: &PulseSchedule) -> Result<CMatrix, DeviceError> {
    if s.device != device.kind() {
        return Err(DeviceError::ChannelMismatch {
            expected: device.kind(),
            got: s.device,
        });
    }
    let mut u = identity(device.dim());
    for seg in &s.segments {
        let h = device.segment_hamiltonian(seg)?;
        if !linalg::is_hermitian(&h, linalg::TOL_CONSTRUCTION) {
            let dev = linalg::max_abs_diff(&h, &h.adjoint());
            return Err(DeviceError::NonHermitian(dev));
        }
        u = expm(&h, C64::new(0.0, -seg.duration)).expect("segment H is square") * u;
    }
    Ok(u)
}
