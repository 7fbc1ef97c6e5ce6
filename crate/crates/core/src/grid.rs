//! Physical constants, the uniform grid description and the time-step rule.

use crate::error::{FdtdError, Result};

/// Speed of light in vacuum, m/s (exact SI value).
pub const C0: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m (CODATA 2018).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, H/m (CODATA 2018).
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Impedance of free space, ohms.
pub const ETA0: f64 = 376.730_313_668;

/// Minimum number of cells along any axis.
pub const MIN_CELLS: usize = 10;

/// Time step for a uniform cell size `dx`: half the time light needs to cross a cell.
pub fn courant_dt(dx: f64) -> Result<f64> {
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(FdtdError::domain(format!(
            "cell size must be positive, got {dx}"
        )));
    }
    Ok(dx / (2.0 * C0))
}

/// Converts an SI electric field (V/m) to the normalized units used by the solvers.
pub fn normalize_e(e_si: f64) -> f64 {
    e_si / ETA0
}

/// Inverse of [`normalize_e`].
pub fn denormalize_e(e_norm: f64) -> f64 {
    e_norm * ETA0
}

/// Uniform Yee grid: `cells[a]` cells of size `dx` along each axis.
///
/// A grid with `n` cells along an axis has `n + 1` integer lattice nodes
/// `0..=n`; half-integer quantities live at `i + ½` for `i in 0..n`. Every
/// field array is allocated with `n + 1` entries per axis so all components
/// share one footprint.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    cells: Vec<usize>,
    dx: f64,
    dt: f64,
    n_steps: usize,
}

impl GridSpec {
    pub fn new(cells: &[usize], dx: f64, n_steps: usize) -> Result<Self> {
        if cells.is_empty() || cells.len() > 3 {
            return Err(FdtdError::validation(format!(
                "grid must have 1, 2 or 3 axes, got {}",
                cells.len()
            )));
        }
        if let Some((axis, &n)) = cells.iter().enumerate().find(|(_, &n)| n < MIN_CELLS) {
            return Err(FdtdError::validation(format!(
                "axis {axis} has {n} cells, at least {MIN_CELLS} required"
            )));
        }
        let dt = courant_dt(dx).map_err(|e| FdtdError::validation(e.to_string()))?;
        Ok(GridSpec {
            cells: cells.to_vec(),
            dx,
            dt,
            n_steps,
        })
    }

    pub fn dims(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Number of lattice nodes along `axis` (`cells + 1`).
    pub fn nodes(&self, axis: usize) -> usize {
        self.cells[axis] + 1
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn with_steps(mut self, n_steps: usize) -> Self {
        self.n_steps = n_steps;
        self
    }

    /// Center node index along `axis`.
    pub fn center(&self, axis: usize) -> usize {
        self.cells[axis] / 2
    }

    pub(crate) fn require_dims(&self, dims: usize) -> Result<()> {
        if self.dims() != dims {
            return Err(FdtdError::validation(format!(
                "expected a {dims}D grid, got {}D",
                self.dims()
            )));
        }
        Ok(())
    }
}
