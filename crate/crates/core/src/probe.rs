//! Time series recorded at fixed lattice positions.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeTrace {
    /// Lattice indices of the sampled node, one per axis.
    pub position: Vec<usize>,
    /// One sample per completed step, `values[n]` after step `n`.
    pub values: Vec<f64>,
}

impl ProbeTrace {
    pub fn new(position: Vec<usize>, capacity: usize) -> Self {
        ProbeTrace {
            position,
            values: Vec::with_capacity(capacity),
        }
    }

    pub fn peak_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `‖a − b‖₂ / ‖b‖₂` over the common length.
pub fn relative_l2(a: &[f64], b: &[f64]) -> f64 {
    let (num, den) = a.iter().zip(b).fold((0.0, 0.0), |(n, d), (x, y)| {
        (n + (x - y) * (x - y), d + y * y)
    });
    (num / den).sqrt()
}
