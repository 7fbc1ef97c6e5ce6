//! Per-cell lossy dielectric description and its compiled update coefficients.
//!
//! The electric field is recovered from the flux density with a running loss
//! accumulator: `e = ga·(d − acc)`, then `acc += gb·e`, where
//! `ga = 1/(εr + σ·dt/ε0)` and `gb = σ·dt/ε0`.

use crate::error::{FdtdError, Result};
use crate::grid::EPS0;

/// Relative permittivity and conductivity per cell, in flat storage order.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialMap {
    eps_r: Vec<f64>,
    sigma: Vec<f64>,
}

impl MaterialMap {
    pub fn free_space(len: usize) -> Self {
        MaterialMap {
            eps_r: vec![1.0; len],
            sigma: vec![0.0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.eps_r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps_r.is_empty()
    }

    pub fn set(&mut self, index: usize, eps_r: f64, sigma: f64) {
        self.eps_r[index] = eps_r;
        self.sigma[index] = sigma;
    }

    pub fn eps_r(&self) -> &[f64] {
        &self.eps_r
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    /// Number of cells that differ from free space.
    pub fn assigned_cells(&self) -> usize {
        self.eps_r
            .iter()
            .zip(&self.sigma)
            .filter(|(&e, &s)| e != 1.0 || s != 0.0)
            .count()
    }

    pub fn is_free_space(&self) -> bool {
        self.assigned_cells() == 0
    }

    /// Compiles to `(ga, gb)` for time step `dt`. Every offending cell is
    /// listed when validation fails.
    pub fn compile(&self, dt: f64) -> Result<CompiledMaterials> {
        let bad: Vec<usize> = self
            .eps_r
            .iter()
            .zip(&self.sigma)
            .enumerate()
            .filter(|(_, (&e, &s))| !(e >= 1.0) || !(s >= 0.0) || !e.is_finite() || !s.is_finite())
            .map(|(i, _)| i)
            .collect();
        if !bad.is_empty() {
            const SHOWN: usize = 16;
            let mut listed: Vec<String> = bad.iter().take(SHOWN).map(|i| i.to_string()).collect();
            if bad.len() > SHOWN {
                listed.push(format!("... ({} total)", bad.len()));
            }
            return Err(FdtdError::validation(format!(
                "cells with eps_r < 1 or sigma < 0: {}",
                listed.join(", ")
            )));
        }
        let (ga, gb) = self
            .eps_r
            .iter()
            .zip(&self.sigma)
            .map(|(&e, &s)| {
                let gb = s * dt / EPS0;
                (1.0 / (e + gb), gb)
            })
            .unzip();
        Ok(CompiledMaterials { ga, gb })
    }
}

/// `(ga, gb)` coefficient arrays, same storage order as the source map.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledMaterials {
    ga: Vec<f64>,
    gb: Vec<f64>,
}

impl CompiledMaterials {
    pub fn free_space(len: usize) -> Self {
        CompiledMaterials {
            ga: vec![1.0; len],
            gb: vec![0.0; len],
        }
    }

    pub fn ga(&self) -> &[f64] {
        &self.ga
    }

    pub fn gb(&self) -> &[f64] {
        &self.gb
    }

    pub fn len(&self) -> usize {
        self.ga.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ga.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::courant_dt;

    #[test]
    fn free_space_is_identity() {
        let c = MaterialMap::free_space(4).compile(1e-11).unwrap();
        assert!(c.ga().iter().all(|&g| g == 1.0));
        assert!(c.gb().iter().all(|&g| g == 0.0));
    }

    #[test]
    fn lossless_dielectric() {
        let mut m = MaterialMap::free_space(1);
        m.set(0, 4.0, 0.0);
        let c = m.compile(1e-11).unwrap();
        assert_eq!(c.ga()[0], 0.25);
        assert_eq!(c.gb()[0], 0.0);
    }

    #[test]
    fn lossy_cylinder_material() {
        let dt = courant_dt(0.01).unwrap();
        let mut m = MaterialMap::free_space(1);
        m.set(0, 30.0, 0.3);
        let c = m.compile(dt).unwrap();
        // frozen from a 40-digit evaluation of the same constants
        assert!((c.ga()[0] - 0.032_717_057_957_994_708).abs() < 1e-15);
        assert!((c.gb()[0] - 0.565_095_470_500_304_8).abs() < 1e-14);
    }

    #[test]
    fn rejects_unphysical_cells() {
        let mut m = MaterialMap::free_space(5);
        m.set(1, 0.5, 0.0);
        m.set(3, 2.0, -1.0);
        let err = m.compile(1e-11).unwrap_err().to_string();
        assert!(err.contains("1, 3"), "{err}");
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn coefficients_bounded(eps in 1.0f64..100.0, sigma in 0.0f64..10.0, dt in 1e-13f64..1e-9) {
                let mut m = MaterialMap::free_space(1);
                m.set(0, eps, sigma);
                let c = m.compile(dt).unwrap();
                prop_assert!(c.ga()[0] > 0.0 && c.ga()[0] <= 1.0);
                prop_assert!(c.gb()[0] >= 0.0);
            }
        }
    }
}
