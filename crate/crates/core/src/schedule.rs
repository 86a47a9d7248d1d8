//! Pulse schedules: time-ordered piecewise-constant control segments.
//!
//! Every pulse prescription realized here is specified by channel areas
//! alone, so piecewise-constant envelopes lose nothing. Channel names are
//! declared per device kind and validated at construction.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("segment {index} has non-positive duration {duration}")]
    NonPositiveDuration { index: usize, duration: f64 },
    #[error("channel '{channel}' is not valid for device {device:?}")]
    UnknownChannel { channel: String, device: DeviceKind },
    #[error("channel '{channel}' expects a {expected:?} value")]
    WrongChannelShape {
        channel: String,
        expected: ChannelShape,
    },
    #[error("channel '{channel}' in segment {index} has a non-finite value")]
    NonFiniteValue { channel: String, index: usize },
    #[error("schedule targets device {expected:?}, got {got:?}")]
    DeviceMismatch {
        expected: DeviceKind,
        got: DeviceKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelShape {
    Scalar,
    Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceKind {
    TwoLevelAtom,
    CavityQed,
    IonTrapCz,
    IonTrapSm,
    IonTrapJp,
    QuantumDotPair,
}

impl DeviceKind {
    /// Channels a schedule for this device may drive, with their shapes.
    pub fn channels(&self) -> &'static [(&'static str, ChannelShape)] {
        use ChannelShape::{Scalar, Vector};
        match self {
            DeviceKind::TwoLevelAtom => &[("rabi", Scalar), ("phase", Scalar)],
            DeviceKind::CavityQed => &[("shift", Scalar)],
            DeviceKind::IonTrapCz => &[
                ("red1", Scalar),
                ("red2", Scalar),
                ("aux1", Scalar),
                ("aux2", Scalar),
            ],
            DeviceKind::IonTrapSm => &[("sm", Scalar)],
            DeviceKind::IonTrapJp => &[("jp", Scalar)],
            DeviceKind::QuantumDotPair => {
                &[("omega1", Vector), ("omega2", Vector), ("exchange", Scalar)]
            }
        }
    }

    pub fn channel_shape(&self, channel: &str) -> Option<ChannelShape> {
        self.channels()
            .iter()
            .find(|(name, _)| *name == channel)
            .map(|(_, shape)| *shape)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChannelValue {
    Scalar(f64),
    Vector([f64; 3]),
}

impl ChannelValue {
    pub fn scalar(&self) -> f64 {
        match self {
            ChannelValue::Scalar(v) => *v,
            ChannelValue::Vector(_) => panic!("expected scalar channel value"),
        }
    }

    pub fn vector(&self) -> [f64; 3] {
        match self {
            ChannelValue::Scalar(_) => panic!("expected vector channel value"),
            ChannelValue::Vector(v) => *v,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Segment {
    pub duration: f64,
    pub channels: BTreeMap<String, ChannelValue>,
}

impl Segment {
    pub fn new(duration: f64) -> Self {
        Segment {
            duration,
            channels: BTreeMap::new(),
        }
    }

    pub fn with_scalar(mut self, channel: &str, value: f64) -> Self {
        self.channels
            .insert(channel.to_string(), ChannelValue::Scalar(value));
        self
    }

    pub fn with_vector(mut self, channel: &str, value: [f64; 3]) -> Self {
        self.channels
            .insert(channel.to_string(), ChannelValue::Vector(value));
        self
    }

    pub fn scalar(&self, channel: &str) -> f64 {
        self.channels.get(channel).map_or(0.0, ChannelValue::scalar)
    }

    pub fn vector(&self, channel: &str) -> [f64; 3] {
        self.channels
            .get(channel)
            .map_or([0.0; 3], ChannelValue::vector)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PulseSchedule {
    pub device: DeviceKind,
    pub segments: Vec<Segment>,
}

impl PulseSchedule {
    pub fn new(device: DeviceKind, segments: Vec<Segment>) -> Result<Self, ScheduleError> {
        for (index, seg) in segments.iter().enumerate() {
            if seg.duration <= 0.0 || !seg.duration.is_finite() {
                return Err(ScheduleError::NonPositiveDuration {
                    index,
                    duration: seg.duration,
                });
            }
            for (channel, value) in &seg.channels {
                let expected =
                    device
                        .channel_shape(channel)
                        .ok_or_else(|| ScheduleError::UnknownChannel {
                            channel: channel.clone(),
                            device,
                        })?;
                let (shape, finite) = match value {
                    ChannelValue::Scalar(v) => (ChannelShape::Scalar, v.is_finite()),
                    ChannelValue::Vector(v) => {
                        (ChannelShape::Vector, v.iter().all(|x| x.is_finite()))
                    }
                };
                if shape != expected {
                    return Err(ScheduleError::WrongChannelShape {
                        channel: channel.clone(),
                        expected,
                    });
                }
                if !finite {
                    return Err(ScheduleError::NonFiniteValue {
                        channel: channel.clone(),
                        index,
                    });
                }
            }
        }
        Ok(PulseSchedule { device, segments })
    }

    pub fn empty(device: DeviceKind) -> Self {
        PulseSchedule {
            device,
            segments: Vec::new(),
        }
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Σ duration·value over segments; scalar channels give a scalar area,
    /// vector channels a componentwise 3-vector area.
    pub fn pulse_area(&self, channel: &str) -> Result<ChannelValue, ScheduleError> {
        let shape =
            self.device
                .channel_shape(channel)
                .ok_or_else(|| ScheduleError::UnknownChannel {
                    channel: channel.to_string(),
                    device: self.device,
                })?;
        match shape {
            ChannelShape::Vector => {
                let mut area = [0.0; 3];
                for seg in &self.segments {
                    let v = seg.vector(channel);
                    for (acc, component) in area.iter_mut().zip(v) {
                        *acc += seg.duration * component;
                    }
                }
                Ok(ChannelValue::Vector(area))
            }
            ChannelShape::Scalar => {
                let area = self
                    .segments
                    .iter()
                    .map(|s| s.duration * s.scalar(channel))
                    .sum();
                Ok(ChannelValue::Scalar(area))
            }
        }
    }
}
