//! Simulation and sweep execution: propagate a prepared run, assemble the
//! fidelity report, and evaluate parameter sweeps into CSV rows.

use crate::config::{ConfigError, PreparedRun, RunConfig, SweepConfig};
use qdevsim_core::atom::{self, AtomParams};
use qdevsim_core::cavity::{self, CavityParams};
use qdevsim_core::iontrap;
use qdevsim_core::linalg::{identity, max_abs_diff};
use qdevsim_core::{propagate, DeviceModel, Diagnostics, FidelityReport};
use std::f64::consts::PI;

fn precondition_err<E: std::fmt::Display>(e: E) -> ConfigError {
    ConfigError::Precondition(e.to_string())
}

/// Propagates the schedule and assembles the report. For the ion-trap phase
/// gate the reported matrix is the restriction to the computational states
/// |s₁s₂⟩|0⟩_CM of the full register evolution.
pub fn simulate(run: &PreparedRun) -> Result<FidelityReport, ConfigError> {
    let full = propagate(&run.model, &run.schedule).map_err(precondition_err)?;
    let (reported, diagnostics) = match &run.model {
        DeviceModel::IonTrapCz(p) => {
            let reduced = iontrap::reduce_to_register(p, &full);
            let diag = Diagnostics {
                lamb_dicke_ratio: Some(p.lamb_dicke_ratio()),
                leakage: iontrap::phonon_leakage(p, &full),
                ..Default::default()
            };
            (reduced, diag)
        }
        DeviceModel::CavityQed(p) => {
            if !p.is_dispersive() {
                eprintln!(
                    "warning: detuning ratio {:.2} below {:.2}; the dispersive model is unreliable",
                    p.detuning_ratio(),
                    p.min_detuning_ratio
                );
            }
            let diag = Diagnostics {
                detuning_ratio: Some(p.detuning_ratio()),
                leakage: cavity::exact_leakage(p, run.schedule.total_duration()),
                ..Default::default()
            };
            (full, diag)
        }
        DeviceModel::TwoLevelAtom(p) => {
            let diag = Diagnostics {
                rwa_ratio: Some(if p.rabi > 0.0 {
                    p.nu / p.rabi
                } else {
                    f64::INFINITY
                }),
                leakage: max_abs_diff(&(full.adjoint() * &full), &identity(2)),
                ..Default::default()
            };
            (full, diag)
        }
        _ => (full, Diagnostics::default()),
    };
    Ok(FidelityReport::compare(
        device_name(&run.model),
        &run.schedule_name,
        run.target.clone(),
        &reported,
        diagnostics,
    ))
}

fn device_name(model: &DeviceModel) -> &'static str {
    match model {
        DeviceModel::TwoLevelAtom(_) => "two_level_atom",
        DeviceModel::CavityQed(_) => "cavity_qed",
        DeviceModel::IonTrapCz(_) => "ion_trap_cz",
        DeviceModel::IonTrapSm(_) => "ion_trap_sm",
        DeviceModel::IonTrapJp(_) => "ion_trap_jp",
        DeviceModel::QuantumDotPair => "quantum_dot_pair",
    }
}

/// One evaluated sweep point.
pub struct SweepRow {
    pub value: f64,
    pub distance: f64,
    pub leakage: f64,
    pub validity_ratio: f64,
}

/// Evaluates a sweep over a named device parameter. Supported sweeps:
/// `delta_over_g` on the cavity (dispersive-vs-exact error at g·t = π) and
/// `nu_over_rabi` on the atom (full-integration-vs-RWA error at pulse area π).
pub fn sweep(config: &RunConfig, spec: &SweepConfig) -> Result<Vec<SweepRow>, ConfigError> {
    if spec.values.is_empty() {
        return Err(ConfigError::Config("sweep values list is empty".into()));
    }
    let model = config.device.build()?;
    match (&model, spec.parameter.as_str()) {
        (DeviceModel::CavityQed(p), "delta_over_g") => cavity_sweep(p, &spec.values),
        (DeviceModel::TwoLevelAtom(p), "nu_over_rabi") => atom_sweep(p, &spec.values),
        (_, parameter) => Err(ConfigError::Config(format!(
            "unsupported sweep parameter '{parameter}' for device {:?}",
            model.kind()
        ))),
    }
}

fn cavity_sweep(base: &CavityParams, values: &[f64]) -> Result<Vec<SweepRow>, ConfigError> {
    if base.g <= 0.0 {
        return Err(ConfigError::Precondition("cavity sweep needs g > 0".into()));
    }
    let t = PI / base.g;
    values
        .iter()
        .map(|&ratio| {
            let p = CavityParams::new(
                base.omega_ab,
                base.omega_ab + ratio * base.g,
                base.g,
                base.n_max,
            )
            .map_err(precondition_err)?;
            let distance = cavity::effective_vs_exact_error(&p, t).map_err(precondition_err)?;
            Ok(SweepRow {
                value: ratio,
                distance,
                leakage: cavity::exact_leakage(&p, t),
                validity_ratio: p.detuning_ratio(),
            })
        })
        .collect()
}

fn atom_sweep(base: &AtomParams, values: &[f64]) -> Result<Vec<SweepRow>, ConfigError> {
    if base.rabi <= 0.0 {
        return Err(ConfigError::Precondition(
            "atom sweep needs a positive Rabi frequency".into(),
        ));
    }
    let t = PI / base.rabi;
    values
        .iter()
        .map(|&ratio| {
            let p = AtomParams::resonant(ratio * base.rabi, base.rabi, base.phi)
                .map_err(precondition_err)?;
            let steps = atom::suggested_steps(&p, t);
            let distance = atom::rwa_comparison_error(&p, t, steps).map_err(precondition_err)?;
            let u = atom::integrate_full(&p, t, steps).map_err(precondition_err)?;
            Ok(SweepRow {
                value: ratio,
                distance,
                leakage: max_abs_diff(&(u.adjoint() * &u), &identity(2)),
                validity_ratio: ratio,
            })
        })
        .collect()
}

/// CSV serialization: header plus one row per swept value.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("value,distance,leakage,validity_ratio\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.value, row.distance, row.leakage, row.validity_ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    #[test]
    fn qpi_dots_simulation_reports_tiny_distance() {
        let config = config::parse(
            r#"{
                "device": { "kind": "quantum_dot_pair" },
                "schedule": { "builtin": "qpi_dots" }
            }"#,
        )
        .unwrap();
        let run = config::prepare(&config).unwrap();
        let report = simulate(&run).unwrap();
        assert!(report.distance < 1e-10, "distance {}", report.distance);
        assert_eq!(report.device, "quantum_dot_pair");
        assert_eq!(report.basis_action.len(), 4);
    }

    #[test]
    fn cz_ions_simulation_flips_the_last_basis_phase() {
        let config = config::parse(
            r#"{
                "device": { "kind": "ion_trap_cz", "lamb_dicke": 0.1, "rabi": 1.0, "omega_cm": 10.0 },
                "schedule": { "builtin": "cz_ions" }
            }"#,
        )
        .unwrap();
        let run = config::prepare(&config).unwrap();
        let report = simulate(&run).unwrap();
        assert!(report.distance < 1e-10);
        assert!((report.basis_action[3][0] + 1.0).abs() < 1e-10);
        assert!((report.basis_action[0][0] - 1.0).abs() < 1e-10);
        assert!(report.diagnostics.leakage < 1e-12);
        assert!(report.diagnostics.lamb_dicke_ratio.is_some());
    }

    #[test]
    fn empty_sweep_is_a_config_error() {
        let config = config::parse(
            r#"{
                "device": { "kind": "cavity_qed", "omega_ab": 5.0, "nu": 15.0, "g": 0.1 },
                "schedule": { "builtin": "cavity_qpg" },
                "sweep": { "parameter": "delta_over_g", "values": [] }
            }"#,
        )
        .unwrap();
        let spec = config.sweep.clone().unwrap();
        assert!(matches!(sweep(&config, &spec), Err(ConfigError::Config(_))));
    }

    #[test]
    fn cavity_sweep_distance_decreases() {
        let config = config::parse(
            r#"{
                "device": { "kind": "cavity_qed", "omega_ab": 5.0, "nu": 15.0, "g": 0.1 },
                "schedule": { "builtin": "cavity_qpg" },
                "sweep": { "parameter": "delta_over_g", "values": [10, 100] }
            }"#,
        )
        .unwrap();
        let spec = config.sweep.clone().unwrap();
        let rows = sweep(&config, &spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].distance > rows[1].distance);
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with("value,distance,leakage,validity_ratio\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
