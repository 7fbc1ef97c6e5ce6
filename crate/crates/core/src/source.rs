//! Source waveforms and how they are coupled into a grid.

use serde::{Deserialize, Serialize};

use crate::error::{FdtdError, Result};

/// Default Gaussian delay and width (in steps) for 1D scenarios.
pub const DEFAULT_1D_PULSE: (f64, f64) = (40.0, 12.0);
/// Default Gaussian delay and width (in steps) for 2D and 3D scenarios.
pub const DEFAULT_ND_PULSE: (f64, f64) = (20.0, 6.0);

/// Gaussian pulse `exp(-(t0 - t)² / (2·spread²))`, all arguments in steps.
pub fn gaussian_pulse(t: f64, t0: f64, spread: f64) -> f64 {
    let u = (t0 - t) / spread;
    (-0.5 * u * u).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Waveform {
    Gaussian {
        t0: f64,
        spread: f64,
    },
    /// Continuous wave at `freq` Hz whose envelope rises along the leading
    /// half of a Gaussian (`t0`, `spread`) and stays at one afterwards.
    Sinusoid {
        freq: f64,
        t0: f64,
        spread: f64,
    },
}

impl Waveform {
    pub fn gaussian(t0: f64, spread: f64) -> Self {
        Waveform::Gaussian { t0, spread }
    }

    /// Waveform value at a (possibly fractional) step count `t`.
    pub fn eval(&self, t: f64, dt: f64) -> f64 {
        match *self {
            Waveform::Gaussian { t0, spread } => gaussian_pulse(t, t0, spread),
            Waveform::Sinusoid { freq, t0, spread } => {
                let envelope = if t < t0 {
                    gaussian_pulse(t, t0, spread)
                } else {
                    1.0
                };
                envelope * (2.0 * std::f64::consts::PI * freq * t * dt).sin()
            }
        }
    }

    fn timing(&self) -> (f64, f64) {
        match *self {
            Waveform::Gaussian { t0, spread } | Waveform::Sinusoid { t0, spread, .. } => {
                (t0, spread)
            }
        }
    }

    /// Step after which a Gaussian pulse is below `1e-16` of its peak.
    /// Continuous waves never go quiet.
    pub fn quiet_after(&self) -> Option<usize> {
        match *self {
            Waveform::Gaussian { t0, spread } => Some((t0 + 8.6 * spread).ceil() as usize),
            Waveform::Sinusoid { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Injection {
    /// The source overwrites the field sample.
    Hard,
    /// The source is added to the field sample.
    Soft,
}

/// A waveform plus its coupling into the grid. Where it is placed is decided
/// by the scenario that owns it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub waveform: Waveform,
    pub injection: Injection,
    pub amplitude: f64,
}

impl SourceSpec {
    pub fn soft(waveform: Waveform) -> Self {
        SourceSpec {
            waveform,
            injection: Injection::Soft,
            amplitude: 1.0,
        }
    }

    pub fn hard(waveform: Waveform) -> Self {
        SourceSpec {
            waveform,
            injection: Injection::Hard,
            amplitude: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, spread) = self.waveform.timing();
        if !(spread > 0.0) {
            return Err(FdtdError::validation(format!(
                "pulse spread must be positive, got {spread}"
            )));
        }
        if !(t0 >= 3.0 * spread) {
            return Err(FdtdError::validation(format!(
                "pulse delay t0 = {t0} must be at least 3·spread = {}",
                3.0 * spread
            )));
        }
        if let Waveform::Sinusoid { freq, .. } = self.waveform {
            if !(freq > 0.0) || !freq.is_finite() {
                return Err(FdtdError::validation(format!(
                    "sinusoid frequency must be positive, got {freq}"
                )));
            }
        }
        if !self.amplitude.is_finite() {
            return Err(FdtdError::validation("source amplitude must be finite"));
        }
        Ok(())
    }

    /// Value to couple into the field at `step`.
    ///
    /// A hard source pins the field at its own time level. A soft source is an
    /// extra term of the curl update that advances the field from `step - 1`
    /// to `step`, which is centered at `step - ½`.
    pub fn sample(&self, step: usize, dt: f64) -> f64 {
        let t = match self.injection {
            Injection::Hard => step as f64,
            Injection::Soft => step as f64 - 0.5,
        };
        self.amplitude * self.waveform.eval(t, dt)
    }

    /// Applies the source to one field sample.
    pub fn apply(&self, field: &mut f64, step: usize, dt: f64) {
        let v = self.sample(step, dt);
        match self.injection {
            Injection::Hard => *field = v,
            Injection::Soft => *field += v,
        }
    }
}
