//! Fidelity reports: the machine-readable payload produced by simulations.

use crate::gates::GateSpec;
use crate::linalg::{phase_alignment, CMatrix};
use serde::{Deserialize, Serialize};

/// Validity diagnostics attached to a report. Absent ratios are omitted from
/// the serialized form.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lamb_dicke_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detuning_ratio: Option<f64>,
    pub leakage: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rwa_ratio: Option<f64>,
}

/// Gate distance up to global phase, the aligning phase, and the diagonal
/// action on each computational basis state.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FidelityReport {
    pub device: String,
    pub schedule_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<GateSpec>,
    pub distance: f64,
    /// Unit-modulus scalar c with achieved ≈ c · target, as [re, im].
    pub global_phase: [f64; 2],
    /// ⟨k|U|k⟩ for each basis state k, as [re, im].
    pub basis_action: Vec<[f64; 2]>,
    pub diagnostics: Diagnostics,
}

impl FidelityReport {
    /// Compares an achieved gate against a target (when given) and records the
    /// basis-state action.
    pub fn compare(
        device: &str,
        schedule_name: &str,
        target: Option<GateSpec>,
        achieved: &CMatrix,
        diagnostics: Diagnostics,
    ) -> Self {
        let (distance, phase) = match &target {
            Some(spec) => phase_alignment(achieved, &spec.matrix()),
            None => (0.0, num_complex::Complex64::new(1.0, 0.0)),
        };
        let basis_action = (0..achieved.nrows())
            .map(|k| {
                let z = achieved[(k, k)];
                [z.re, z.im]
            })
            .collect();
        FidelityReport {
            device: device.to_string(),
            schedule_name: schedule_name.to_string(),
            target,
            distance,
            global_phase: [phase.re, phase.im],
            basis_action,
            diagnostics,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{phase_gate, GateSpec};
    use std::f64::consts::PI;

    #[test]
    fn report_captures_distance_phase_and_action() {
        let achieved = phase_gate(PI) * num_complex::Complex64::new(0.0, 1.0);
        let report = FidelityReport::compare(
            "test",
            "manual",
            Some(GateSpec::Phase { eta: PI }),
            &achieved,
            Diagnostics::default(),
        );
        assert!(report.distance < 1e-14);
        assert!((report.global_phase[0] - 0.0).abs() < 1e-14);
        assert!((report.global_phase[1] - 1.0).abs() < 1e-14);
        assert!((report.basis_action[3][1] + 1.0).abs() < 1e-14);
        // |global_phase| = 1 whenever the gates actually match.
        let modulus = (report.global_phase[0].powi(2) + report.global_phase[1].powi(2)).sqrt();
        assert!((modulus - 1.0).abs() < 1e-14);
    }

    #[test]
    fn report_round_trips_through_json() {
        let achieved = phase_gate(1.234567890123456);
        let report = FidelityReport::compare(
            "test",
            "roundtrip",
            Some(GateSpec::Phase {
                eta: 1.234567890123456,
            }),
            &achieved,
            Diagnostics {
                detuning_ratio: Some(17.25),
                leakage: 3.5e-13,
                ..Default::default()
            },
        );
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: FidelityReport = serde_json::from_str(&text).unwrap();
        assert_eq!(report.distance.to_bits(), back.distance.to_bits());
        assert_eq!(report.global_phase, back.global_phase);
        assert_eq!(report.basis_action, back.basis_action);
        assert_eq!(
            report.diagnostics.leakage.to_bits(),
            back.diagnostics.leakage.to_bits()
        );
    }
}
