//! Run configuration: device parameters, schedule (explicit segments or a
//! named builtin), optional verification target and optional sweep block.

use qdevsim_core::atom::AtomParams;
use qdevsim_core::cavity::{self, CavityParams};
use qdevsim_core::iontrap::{IonTrapParams, JpMode, JpParams, SmParams};
use qdevsim_core::schedule::{DeviceKind, PulseSchedule, Segment};
use qdevsim_core::{DeviceModel, GateSpec};
use serde::Deserialize;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Errors are split by exit code: `Config` problems exit 2, `Precondition`
/// violations exit 3.
#[derive(Debug)]
pub enum ConfigError {
    Config(String),
    Precondition(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Config(msg) => write!(f, "config error: {msg}"),
            ConfigError::Precondition(msg) => write!(f, "precondition violation: {msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn config_err<E: std::fmt::Display>(e: E) -> ConfigError {
    ConfigError::Config(e.to_string())
}

fn precondition_err<E: std::fmt::Display>(e: E) -> ConfigError {
    ConfigError::Precondition(e.to_string())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub device: DeviceConfig,
    pub schedule: ScheduleConfig,
    #[serde(default)]
    pub target: Option<GateSpec>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DeviceConfig {
    TwoLevelAtom {
        #[serde(default)]
        omega0: f64,
        omega1: f64,
        nu: f64,
        rabi: f64,
        #[serde(default)]
        phi: f64,
    },
    CavityQed {
        omega_ab: f64,
        nu: f64,
        g: f64,
        #[serde(default = "default_photon_truncation")]
        n_max: usize,
    },
    IonTrapCz {
        #[serde(default = "default_ion_count")]
        n_ions: usize,
        lamb_dicke: f64,
        rabi: f64,
        omega_cm: f64,
        #[serde(default = "default_phonon_truncation")]
        phonon_max: usize,
        #[serde(default)]
        phi: f64,
    },
    IonTrapSm {
        lamb_dicke: f64,
        rabi: f64,
        delta: f64,
    },
    IonTrapJp {
        rabi: f64,
        modes: Vec<JpModeConfig>,
    },
    QuantumDotPair {},
}

fn default_photon_truncation() -> usize {
    3
}

fn default_phonon_truncation() -> usize {
    3
}

fn default_ion_count() -> usize {
    2
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JpModeConfig {
    pub eta1: f64,
    pub eta2: f64,
    pub nu: f64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ScheduleConfig {
    Builtin { builtin: String },
    Explicit { segments: Vec<Segment> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: String,
    pub values: Vec<f64>,
}

impl DeviceConfig {
    pub fn build(&self) -> Result<DeviceModel, ConfigError> {
        match self {
            DeviceConfig::TwoLevelAtom {
                omega0,
                omega1,
                nu,
                rabi,
                phi,
            } => AtomParams::new(*omega0, *omega1, *nu, *rabi, *phi)
                .map(DeviceModel::TwoLevelAtom)
                .map_err(precondition_err),
            DeviceConfig::CavityQed {
                omega_ab,
                nu,
                g,
                n_max,
            } => CavityParams::new(*omega_ab, *nu, *g, *n_max)
                .map(DeviceModel::CavityQed)
                .map_err(precondition_err),
            DeviceConfig::IonTrapCz {
                n_ions,
                lamb_dicke,
                rabi,
                omega_cm,
                phonon_max,
                phi,
            } => {
                let mut p = IonTrapParams::new(*n_ions, *lamb_dicke, *rabi, *omega_cm, *phonon_max)
                    .map_err(precondition_err)?;
                p.phi = *phi;
                Ok(DeviceModel::IonTrapCz(p))
            }
            DeviceConfig::IonTrapSm {
                lamb_dicke,
                rabi,
                delta,
            } => SmParams::new(*lamb_dicke, *rabi, *delta)
                .map(DeviceModel::IonTrapSm)
                .map_err(precondition_err),
            DeviceConfig::IonTrapJp { rabi, modes } => {
                let modes = modes
                    .iter()
                    .map(|m| JpMode {
                        eta1: m.eta1,
                        eta2: m.eta2,
                        nu: m.nu,
                    })
                    .collect();
                JpParams::new(*rabi, modes)
                    .map(DeviceModel::IonTrapJp)
                    .map_err(precondition_err)
            }
            DeviceConfig::QuantumDotPair {} => Ok(DeviceModel::QuantumDotPair),
        }
    }
}

/// A schedule resolved against a device, ready to simulate.
pub struct PreparedRun {
    pub model: DeviceModel,
    pub schedule: PulseSchedule,
    pub schedule_name: String,
    pub target: Option<GateSpec>,
}

pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    serde_json::from_str(text).map_err(config_err)
}

/// Resolves the schedule block (builtin name or explicit segments) against
/// the configured device and fills in the builtin's default target.
pub fn prepare(config: &RunConfig) -> Result<PreparedRun, ConfigError> {
    if let Some(target) = &config.target {
        target.validate().map_err(ConfigError::Config)?;
    }
    let model = config.device.build()?;
    let (schedule, schedule_name, default_target) = match &config.schedule {
        ScheduleConfig::Explicit { segments } => {
            let s = PulseSchedule::new(model.kind(), segments.clone()).map_err(config_err)?;
            (s, "explicit".to_string(), None)
        }
        ScheduleConfig::Builtin { builtin } => expand_builtin(builtin, &model)?,
    };
    Ok(PreparedRun {
        model,
        schedule,
        schedule_name,
        target: config.target.clone().or(default_target),
    })
}

fn expand_builtin(
    name: &str,
    model: &DeviceModel,
) -> Result<(PulseSchedule, String, Option<GateSpec>), ConfigError> {
    let mismatch = |expected: &str| {
        ConfigError::Config(format!(
            "builtin '{name}' needs a {expected} device, got {:?}",
            model.kind()
        ))
    };
    let (schedule, target) = match (name, model) {
        ("swap", DeviceModel::QuantumDotPair) => (
            qdevsim_core::qdot::exchange_schedule(FRAC_PI_2),
            Some(GateSpec::Swap),
        ),
        ("sqrt_swap", DeviceModel::QuantumDotPair) => (
            qdevsim_core::qdot::exchange_schedule(FRAC_PI_4),
            Some(GateSpec::SqrtSwap {
                sign: qdevsim_core::gates::SqrtSwapSign::Plus,
            }),
        ),
        ("qpi_dots", DeviceModel::QuantumDotPair) => (
            qdevsim_core::qdot::qpi_schedule(),
            Some(GateSpec::Phase { eta: PI }),
        ),
        ("swap" | "sqrt_swap" | "qpi_dots", _) => return Err(mismatch("quantum_dot_pair")),
        ("rotation", DeviceModel::TwoLevelAtom(p)) => {
            let theta = FRAC_PI_4;
            let phi_target = FRAC_PI_2;
            let (t, phi) = qdevsim_core::atom::pulse_for_rotation(theta, phi_target, p.rabi)
                .map_err(precondition_err)?;
            let s = PulseSchedule::new(
                DeviceKind::TwoLevelAtom,
                vec![Segment::new(t)
                    .with_scalar("rabi", p.rabi)
                    .with_scalar("phase", phi)],
            )
            .map_err(config_err)?;
            (
                s,
                Some(GateSpec::Rotation {
                    theta,
                    phi: phi_target,
                }),
            )
        }
        ("rotation", _) => return Err(mismatch("two_level_atom")),
        ("cz_ions", DeviceModel::IonTrapCz(p)) => {
            let t = p.gate_time();
            let s = PulseSchedule::new(
                DeviceKind::IonTrapCz,
                vec![
                    Segment::new(t).with_scalar("red1", 1.0),
                    Segment::new(2.0 * t).with_scalar("aux2", 1.0),
                    Segment::new(t).with_scalar("red1", 1.0),
                ],
            )
            .map_err(config_err)?;
            (s, Some(GateSpec::Phase { eta: PI }))
        }
        ("cz_ions", _) => return Err(mismatch("ion_trap_cz")),
        ("cavity_qpg", DeviceModel::CavityQed(p)) => {
            let t = cavity::solve_time_for_eta(p, PI).map_err(precondition_err)?;
            let s = PulseSchedule::new(
                DeviceKind::CavityQed,
                vec![Segment::new(t).with_scalar("shift", 1.0)],
            )
            .map_err(config_err)?;
            (s, Some(GateSpec::Phase { eta: PI }))
        }
        ("cavity_qpg", _) => return Err(mismatch("cavity_qed")),
        ("sm_entangle", DeviceModel::IonTrapSm(p)) => {
            let t = p.entangling_time();
            if !t.is_finite() {
                return Err(ConfigError::Precondition(
                    "effective two-ion coupling is zero; no entangling time exists".into(),
                ));
            }
            let s = PulseSchedule::new(
                DeviceKind::IonTrapSm,
                vec![Segment::new(t).with_scalar("sm", 1.0)],
            )
            .map_err(config_err)?;
            (s, None)
        }
        ("sm_entangle", _) => return Err(mismatch("ion_trap_sm")),
        ("jp_entangle", DeviceModel::IonTrapJp(p)) => {
            let t = p.entangling_time();
            if !t.is_finite() {
                return Err(ConfigError::Precondition(
                    "effective exchange frequency is zero; no entangling time exists".into(),
                ));
            }
            let s = PulseSchedule::new(
                DeviceKind::IonTrapJp,
                vec![Segment::new(t).with_scalar("jp", 1.0)],
            )
            .map_err(config_err)?;
            (s, None)
        }
        ("jp_entangle", _) => return Err(mismatch("ion_trap_jp")),
        _ => {
            return Err(ConfigError::Config(format!(
                "unknown builtin schedule '{name}'"
            )))
        }
    };
    Ok((schedule, name.to_string(), target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_builtin_config() {
        let text = r#"{
            "device": { "kind": "quantum_dot_pair" },
            "schedule": { "builtin": "qpi_dots" }
        }"#;
        let config = parse(text).unwrap();
        let prepared = prepare(&config).unwrap();
        assert_eq!(prepared.schedule_name, "qpi_dots");
        assert_eq!(prepared.schedule.segments.len(), 5);
        assert!(matches!(prepared.target, Some(GateSpec::Phase { .. })));
    }

    #[test]
    fn parses_explicit_segments() {
        let text = r#"{
            "device": { "kind": "quantum_dot_pair" },
            "schedule": { "segments": [
                { "duration": 1.0, "channels": { "exchange": 0.785398163397448 } }
            ] },
            "target": { "kind": "sqrt_swap", "sign": "plus" }
        }"#;
        let config = parse(text).unwrap();
        let prepared = prepare(&config).unwrap();
        assert_eq!(prepared.schedule_name, "explicit");
        assert_eq!(prepared.schedule.segments.len(), 1);
    }

    #[test]
    fn rejects_malformed_and_mismatched_configs() {
        assert!(matches!(parse("{ nope"), Err(ConfigError::Config(_))));
        assert!(matches!(
            parse(r#"{ "device": { "kind": "warp_drive" }, "schedule": { "builtin": "swap" } }"#),
            Err(ConfigError::Config(_))
        ));

        let mismatched = parse(
            r#"{ "device": { "kind": "quantum_dot_pair" }, "schedule": { "builtin": "cz_ions" } }"#,
        )
        .unwrap();
        assert!(matches!(prepare(&mismatched), Err(ConfigError::Config(_))));
    }

    #[test]
    fn invalid_targets_and_dead_couplings_are_rejected() {
        let bad_target = parse(
            r#"{
                "device": { "kind": "quantum_dot_pair" },
                "schedule": { "builtin": "swap" },
                "target": { "kind": "explicit", "rows": [[[1.0, 0.0]], []] }
            }"#,
        )
        .unwrap();
        assert!(matches!(prepare(&bad_target), Err(ConfigError::Config(_))));

        let dead_jp = parse(
            r#"{
                "device": { "kind": "ion_trap_jp", "rabi": 1.0,
                            "modes": [{ "eta1": 0.0, "eta2": 0.0, "nu": 0.4 }] },
                "schedule": { "builtin": "jp_entangle" }
            }"#,
        )
        .unwrap();
        assert!(matches!(
            prepare(&dead_jp),
            Err(ConfigError::Precondition(_))
        ));
    }

    #[test]
    fn zero_detuning_cavity_is_a_precondition_violation() {
        let config = parse(
            r#"{
                "device": { "kind": "cavity_qed", "omega_ab": 5.0, "nu": 5.0, "g": 0.1 },
                "schedule": { "builtin": "cavity_qpg" }
            }"#,
        )
        .unwrap();
        assert!(matches!(
            prepare(&config),
            Err(ConfigError::Precondition(_))
        ));
    }
}
