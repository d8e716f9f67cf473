use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::spin::{spin_operators, static_hamiltonian, Frame, SpinSystem};
use crate::error::{Error, Result};
use crate::linalg::{unitary_evolution, Complex, Matrix, Unitary};

/// One rectangular rf block: amplitude `ω₁` (rad/s), phase `φ` (rad) and
/// duration (s).
///
/// Serialized as `{"amp_hz", "phase_rad", "dur_s"}` with `amp_hz = ω₁ / 2π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PulseRepr", into = "PulseRepr")]
pub struct PulseSegment {
    pub(crate) amplitude: f64,
    pub(crate) phase: f64,
    pub(crate) duration: f64,
}

#[derive(Serialize, Deserialize)]
struct PulseRepr {
    amp_hz: f64,
    phase_rad: f64,
    dur_s: f64,
}

impl From<PulseSegment> for PulseRepr {
    fn from(p: PulseSegment) -> Self {
        PulseRepr {
            amp_hz: p.amplitude / (2.0 * PI),
            phase_rad: p.phase,
            dur_s: p.duration,
        }
    }
}

impl TryFrom<PulseRepr> for PulseSegment {
    type Error = Error;

    fn try_from(r: PulseRepr) -> Result<Self> {
        PulseSegment::new(r.amp_hz * 2.0 * PI, r.phase_rad, r.dur_s)
    }
}

impl PulseSegment {
    pub fn new(amplitude: f64, phase: f64, duration: f64) -> Result<Self> {
        if !(amplitude.is_finite() && phase.is_finite() && duration.is_finite()) {
            return Err(Error::NonFinite("pulse segment"));
        }
        if amplitude < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "negative rf amplitude {amplitude}"
            )));
        }
        if duration <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "non-positive duration {duration}"
            )));
        }
        Ok(Self {
            amplitude,
            phase,
            duration,
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn amplitude_hz(&self) -> f64 {
        self.amplitude / (2.0 * PI)
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Nutation angle `ω₁ t`.
    pub fn angle(&self) -> f64 {
        self.amplitude * self.duration
    }
}

/// Rotating-frame control model with the drift and drive operators cached.
#[derive(Clone, Debug)]
pub struct ControlModel {
    drift: Matrix,
    ix: Matrix,
    iy: Matrix,
}

impl ControlModel {
    pub fn new(sys: &SpinSystem) -> Self {
        let ops = spin_operators(sys.spin()).expect("spin validated at construction");
        Self {
            drift: static_hamiltonian(sys, Frame::Rotating),
            ix: ops.x,
            iy: ops.y,
        }
    }

    pub fn dim(&self) -> usize {
        self.drift.dim()
    }

    /// `H_Q + ω₁ (I_x cos φ + I_y sin φ)`.
    pub fn hamiltonian(&self, seg: &PulseSegment) -> Matrix {
        let (s, c) = seg.phase.sin_cos();
        let drive = self
            .ix
            .scale(Complex::new(seg.amplitude * c, 0.0))
            .try_add(&self.iy.scale(Complex::new(seg.amplitude * s, 0.0)))
            .expect("same dimension");
        self.drift.try_add(&drive).expect("same dimension")
    }

    pub fn propagator(&self, seg: &PulseSegment) -> Unitary {
        unitary_evolution(&self.hamiltonian(seg), seg.duration)
    }

    /// Propagator of the whole sequence; `segments[0]` is applied first.
    pub fn sequence(&self, segments: &[PulseSegment]) -> Unitary {
        let mut total = Unitary::identity(self.dim()).expect("valid dimension");
        for seg in segments {
            total = self
                .propagator(seg)
                .then_after(&total)
                .expect("same dimension");
        }
        total
    }
}

/// `exp(-i H_seg t)` in the rotating frame.
pub fn pulse_propagator(sys: &SpinSystem, seg: &PulseSegment) -> Unitary {
    ControlModel::new(sys).propagator(seg)
}

pub fn sequence_propagator(sys: &SpinSystem, segments: &[PulseSegment]) -> Unitary {
    ControlModel::new(sys).sequence(segments)
}
