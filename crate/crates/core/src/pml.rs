//! Graded perfectly matched layer coefficients.
//!
//! Each axis carries two coefficient families: `g*` at integer lattice nodes
//! and `f*` at half-integer nodes (`f[i]` is the value at `i + ½`). For a loss
//! value `xn` at a given depth,
//!
//! ```text
//! *1 = xn,  *2 = 1/(1 + xn),  *3 = (1 − xn)/(1 + xn)
//! ```
//!
//! with `xn(d) = 0.333·(d/npml)³`, `d` measured in cells from the inner face of
//! the layer. Outside the layer the coefficients are the identity `(0, 1, 1)`.
//! Multi-dimensional grids apply the per-axis vectors as tensor products.

use crate::error::{FdtdError, Result};
use crate::grid::GridSpec;

/// Loss at the outer face of the layer.
pub const PML_MAX_LOSS: f64 = 0.333;

/// Loss parameter at depth `d` cells into a layer `npml` cells thick.
pub fn pml_loss(d: f64, npml: usize) -> f64 {
    if npml == 0 || d <= 0.0 {
        return 0.0;
    }
    let x = d / npml as f64;
    PML_MAX_LOSS * x * x * x
}

/// Coefficient vectors along one axis with `cells` cells (`cells + 1` nodes).
#[derive(Debug, Clone, PartialEq)]
pub struct AxisPml {
    pub g1: Vec<f64>,
    pub g2: Vec<f64>,
    pub g3: Vec<f64>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub f3: Vec<f64>,
}

impl AxisPml {
    pub fn identity(cells: usize) -> Self {
        let n = cells + 1;
        AxisPml {
            g1: vec![0.0; n],
            g2: vec![1.0; n],
            g3: vec![1.0; n],
            f1: vec![0.0; n],
            f2: vec![1.0; n],
            f3: vec![1.0; n],
        }
    }

    pub fn new(cells: usize, npml: usize) -> Self {
        let mut axis = AxisPml::identity(cells);
        if npml == 0 {
            return axis;
        }
        let n = cells as f64;
        let inner_right = (cells - npml) as f64;
        let depth = |x: f64| -> f64 {
            if x < npml as f64 {
                npml as f64 - x
            } else if x > inner_right {
                x - inner_right
            } else {
                0.0
            }
        };
        for i in 0..=cells {
            let xn = pml_loss(depth(i as f64), npml);
            axis.g1[i] = xn;
            axis.g2[i] = 1.0 / (1.0 + xn);
            axis.g3[i] = (1.0 - xn) / (1.0 + xn);
        }
        for i in 0..cells {
            let x = i as f64 + 0.5;
            debug_assert!(x < n);
            let xn = pml_loss(depth(x), npml);
            axis.f1[i] = xn;
            axis.f2[i] = 1.0 / (1.0 + xn);
            axis.f3[i] = (1.0 - xn) / (1.0 + xn);
        }
        axis
    }

    pub fn is_identity(&self) -> bool {
        self.g1.iter().chain(&self.f1).all(|&v| v == 0.0)
    }
}

fn check_thickness(npml: usize, grid: &GridSpec) -> Result<()> {
    let min_cells = grid.cells().iter().copied().min().unwrap_or(0);
    if npml > min_cells / 4 {
        return Err(FdtdError::validation(format!(
            "PML of {npml} cells exceeds a quarter of the smallest axis ({min_cells} cells)"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PmlCoefficients2D {
    pub npml: usize,
    pub i: AxisPml,
    pub j: AxisPml,
}

/// Builds the 2D layer coefficients for a grid.
pub fn build_pml_2d(npml: usize, grid: &GridSpec) -> Result<PmlCoefficients2D> {
    grid.require_dims(2)?;
    check_thickness(npml, grid)?;
    Ok(PmlCoefficients2D {
        npml,
        i: AxisPml::new(grid.cells()[0], npml),
        j: AxisPml::new(grid.cells()[1], npml),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PmlCoefficients3D {
    pub npml: usize,
    pub i: AxisPml,
    pub j: AxisPml,
    pub k: AxisPml,
}

/// Builds the 3D layer coefficients for a grid.
pub fn build_pml_3d(npml: usize, grid: &GridSpec) -> Result<PmlCoefficients3D> {
    grid.require_dims(3)?;
    check_thickness(npml, grid)?;
    Ok(PmlCoefficients3D {
        npml,
        i: AxisPml::new(grid.cells()[0], npml),
        j: AxisPml::new(grid.cells()[1], npml),
        k: AxisPml::new(grid.cells()[2], npml),
    })
}
