//! Rasterization of dielectric scatterers onto the lattice.

use serde::{Deserialize, Serialize};

use crate::error::{FdtdError, Result};
use crate::grid::GridSpec;
use crate::material::MaterialMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderSpec {
    /// Axis position `(x, y)` in meters, measured from lattice node `(0, 0)`.
    pub center: [f64; 2],
    pub radius: f64,
    pub eps_r: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereSpec {
    pub center: [f64; 3],
    pub radius: f64,
    pub eps_r: f64,
    pub sigma: f64,
}

/// Checks that `[c − r, c + r]` lies strictly inside the non-PML interior on
/// every axis.
fn check_inside(center: &[f64], radius: f64, grid: &GridSpec, npml: usize) -> Result<()> {
    if !(radius >= 0.0) {
        return Err(FdtdError::validation(format!(
            "radius must be non-negative, got {radius}"
        )));
    }
    let dx = grid.dx();
    // touching within rounding counts as overlap
    let slack = 1e-9 * dx;
    for (axis, &c) in center.iter().enumerate() {
        let lo = npml as f64 * dx;
        let hi = (grid.cells()[axis] - npml) as f64 * dx;
        if !(c - radius > lo + slack && c + radius < hi - slack) {
            return Err(FdtdError::validation(format!(
                "object spans [{:.6}, {:.6}] m on axis {axis}, interior is ({lo:.6}, {hi:.6}) m",
                c - radius,
                c + radius
            )));
        }
    }
    Ok(())
}

/// Squared-distance bound for "strictly inside"; points on the surface up to
/// rounding are treated as outside.
fn inside_threshold(radius: f64) -> f64 {
    radius * radius * (1.0 - 1e-9)
}

/// Assigns the cylinder material to every node `(i, j)` strictly closer than
/// `radius` to the axis. Node storage is row-major over `(cells + 1)²`.
pub fn rasterize_cylinder(
    spec: &CylinderSpec,
    grid: &GridSpec,
    npml: usize,
) -> Result<MaterialMap> {
    grid.require_dims(2)?;
    check_inside(&spec.center, spec.radius, grid, npml)?;
    let (ni, nj) = (grid.nodes(0), grid.nodes(1));
    let mut map = MaterialMap::free_space(ni * nj);
    paint_cylinder(&mut map, spec, grid);
    Ok(map)
}

pub(crate) fn paint_cylinder(map: &mut MaterialMap, spec: &CylinderSpec, grid: &GridSpec) {
    let (ni, nj) = (grid.nodes(0), grid.nodes(1));
    let dx = grid.dx();
    let r2 = inside_threshold(spec.radius);
    for i in 0..ni {
        let x = i as f64 * dx - spec.center[0];
        for j in 0..nj {
            let y = j as f64 * dx - spec.center[1];
            if x * x + y * y < r2 {
                map.set(i * nj + j, spec.eps_r, spec.sigma);
            }
        }
    }
}

/// Sphere materials sampled at the three electric-field positions
/// `Ex (i+½, j, k)`, `Ey (i, j+½, k)` and `Ez (i, j, k+½)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereMaterials {
    pub x: MaterialMap,
    pub y: MaterialMap,
    pub z: MaterialMap,
}

/// Point-in-sphere assignment at positions shifted by `offset` cells from the
/// integer nodes.
pub fn rasterize_sphere_at(spec: &SphereSpec, grid: &GridSpec, offset: [f64; 3]) -> MaterialMap {
    let n = [grid.nodes(0), grid.nodes(1), grid.nodes(2)];
    let dx = grid.dx();
    let r2 = inside_threshold(spec.radius);
    let mut map = MaterialMap::free_space(n[0] * n[1] * n[2]);
    for i in 0..n[0] {
        let x = (i as f64 + offset[0]) * dx - spec.center[0];
        for j in 0..n[1] {
            let y = (j as f64 + offset[1]) * dx - spec.center[1];
            for k in 0..n[2] {
                let z = (k as f64 + offset[2]) * dx - spec.center[2];
                if x * x + y * y + z * z < r2 {
                    map.set((i * n[1] + j) * n[2] + k, spec.eps_r, spec.sigma);
                }
            }
        }
    }
    map
}

pub fn rasterize_sphere(
    spec: &SphereSpec,
    grid: &GridSpec,
    npml: usize,
) -> Result<SphereMaterials> {
    grid.require_dims(3)?;
    check_inside(&spec.center, spec.radius, grid, npml)?;
    Ok(SphereMaterials {
        x: rasterize_sphere_at(spec, grid, [0.5, 0.0, 0.0]),
        y: rasterize_sphere_at(spec, grid, [0.0, 0.5, 0.0]),
        z: rasterize_sphere_at(spec, grid, [0.0, 0.0, 0.5]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid2() -> GridSpec {
        GridSpec::new(&[100, 100], 0.01, 1).unwrap()
    }

    #[test]
    fn zero_radius_assigns_nothing() {
        let spec = CylinderSpec {
            center: [0.5, 0.5],
            radius: 0.0,
            eps_r: 30.0,
            sigma: 0.3,
        };
        assert_eq!(
            rasterize_cylinder(&spec, &grid2(), 8)
                .unwrap()
                .assigned_cells(),
            0
        );
    }

    #[test]
    fn cylinder_cell_count() {
        let g = grid2();
        let spec = CylinderSpec {
            center: [0.5, 0.5],
            radius: 10.0 * g.dx(),
            eps_r: 30.0,
            sigma: 0.3,
        };
        let map = rasterize_cylinder(&spec, &g, 8).unwrap();
        // independent scan over integer offsets
        let brute = (-10i32..=10)
            .flat_map(|a| (-10i32..=10).map(move |b| (a, b)))
            .filter(|&(a, b)| a * a + b * b < 100)
            .count();
        assert_eq!(map.assigned_cells(), brute);
        let area = PI * 100.0;
        assert!((map.assigned_cells() as f64 - area).abs() <= 64.0);
        let i = 50 * 101 + 50;
        assert_eq!((map.eps_r()[i], map.sigma()[i]), (30.0, 0.3));
    }

    #[test]
    fn paper_cylinder_fits_scenario_grid() {
        // 20 cm diameter at 2.5 mm cells spans 80 cells
        let g = GridSpec::new(&[200, 200], 0.0025, 1).unwrap();
        let spec = CylinderSpec {
            center: [0.25, 0.25],
            radius: 0.1,
            eps_r: 30.0,
            sigma: 0.3,
        };
        let map = rasterize_cylinder(&spec, &g, 8).unwrap();
        let area = PI * 40.0 * 40.0;
        assert!((map.assigned_cells() as f64 - area).abs() <= 2.0 * PI * 40.0);
    }

    #[test]
    fn cylinder_overlapping_pml_rejected() {
        let g = grid2();
        let spec = CylinderSpec {
            center: [0.15, 0.5],
            radius: 0.08,
            eps_r: 2.0,
            sigma: 0.0,
        };
        assert!(rasterize_cylinder(&spec, &g, 8).is_err());
        assert!(rasterize_cylinder(&spec, &g, 0).is_ok());
    }

    #[test]
    fn sphere_voxel_count() {
        let g = GridSpec::new(&[40, 40, 40], 0.01, 1).unwrap();
        let spec = SphereSpec {
            center: [0.2, 0.2, 0.2],
            radius: 8.0 * g.dx(),
            eps_r: 30.0,
            sigma: 0.3,
        };
        let on_nodes = rasterize_sphere_at(&spec, &g, [0.0; 3]);
        let mut brute = 0;
        for a in -8i32..=8 {
            for b in -8i32..=8 {
                for c in -8i32..=8 {
                    if a * a + b * b + c * c < 64 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(on_nodes.assigned_cells(), brute);
        let vol = 4.0 / 3.0 * PI * 512.0;
        let tol = 4.0 * PI * 64.0;
        assert!((brute as f64 - vol).abs() <= tol);
        let staggered = rasterize_sphere(&spec, &g, 8).unwrap();
        for m in [&staggered.x, &staggered.y, &staggered.z] {
            assert!((m.assigned_cells() as f64 - vol).abs() <= tol);
        }
    }

    #[test]
    fn sphere_radius_zero_and_tangent() {
        let g = GridSpec::new(&[40, 40, 40], 0.01, 1).unwrap();
        let mut spec = SphereSpec {
            center: [0.2, 0.2, 0.2],
            radius: 0.0,
            eps_r: 30.0,
            sigma: 0.3,
        };
        assert!(rasterize_sphere(&spec, &g, 8).unwrap().z.is_free_space());
        // inner PML face at 8 cells: radius 12 cells touches it
        spec.radius = 0.12;
        assert!(rasterize_sphere(&spec, &g, 8).is_err());
        spec.radius = 0.119;
        assert!(rasterize_sphere(&spec, &g, 8).is_ok());
    }
}
