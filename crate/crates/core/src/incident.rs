//! Auxiliary 1D line that carries the incident plane wave for TF/SF injection.

use crate::error::Result;
use crate::solver1d::FieldState1D;
use crate::source::{Injection, SourceSpec};

/// Node of the line driven by the hard source.
pub const INCIDENT_SOURCE_NODE: usize = 1;

/// `ez` at integer nodes and `hx` at half nodes along the propagation axis,
/// using the same lattice spacing and time step as the host grid. The head is
/// driven by a hard source; the tail uses the two-step absorbing boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidentLine {
    line: FieldState1D,
    source: SourceSpec,
    dt: f64,
}

impl IncidentLine {
    pub fn new(nodes: usize, source: SourceSpec, dt: f64) -> Result<Self> {
        source.validate()?;
        let source = SourceSpec {
            injection: Injection::Hard,
            ..source
        };
        Ok(IncidentLine {
            line: FieldState1D::new(nodes),
            source,
            dt,
        })
    }

    /// Advances the line by one step: `ez` to level `step`, then `hx` to
    /// `step + ½`.
    pub fn advance(&mut self, step: usize) {
        self.advance_e(step);
        self.advance_h();
    }

    pub fn advance_e(&mut self, step: usize) {
        self.line.step_e();
        self.line.apply_abc();
        self.source
            .apply(&mut self.line.ex[INCIDENT_SOURCE_NODE], step, self.dt);
    }

    pub fn advance_h(&mut self) {
        self.line.step_h();
    }

    #[inline]
    pub fn ez(&self, j: usize) -> f64 {
        self.line.ex[j]
    }

    #[inline]
    pub fn hx(&self, j: usize) -> f64 {
        self.line.hy[j]
    }

    pub fn ez_slice(&self) -> &[f64] {
        &self.line.ex
    }

    pub fn len(&self) -> usize {
        self.line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.line.is_empty()
    }

    /// Zeroes the line, for tests that need the TF/SF seams inert.
    pub fn clear(&mut self) {
        self.line = FieldState1D::new(self.line.len());
    }

    pub fn source(&self) -> &SourceSpec {
        &self.source
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{gaussian_pulse, Waveform};

    #[test]
    fn head_follows_source_and_wave_travels() {
        let mut line =
            IncidentLine::new(101, SourceSpec::soft(Waveform::gaussian(20.0, 6.0)), 1e-11).unwrap();
        let mut at60 = Vec::new();
        for n in 0..200 {
            line.advance(n);
            assert_eq!(
                line.ez(INCIDENT_SOURCE_NODE),
                gaussian_pulse(n as f64, 20.0, 6.0)
            );
            at60.push(line.ez(60));
        }
        let (peak_step, peak) = at60
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        // 59 cells at two steps per cell
        assert!((peak_step as i64 - (20 + 118)).abs() <= 1, "{peak_step}");
        assert!((peak - 1.0).abs() < 0.02, "{peak}");
    }
}
