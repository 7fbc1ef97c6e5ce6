//! Finite-difference time-domain electromagnetics on the Yee lattice.
//!
//! Fields are stored in normalized units (`Ẽ = sqrt(ε0/μ0)·E`) and every solver
//! runs at the fixed time step `dt = dx / 2c`, so all curl updates carry the
//! coefficient `0.5`.
//!
//! - [`solver1d`]: 1D line with the two-step absorbing boundary.
//! - [`solver2d`]: TM-mode 2D grid with PML, TF/SF plane-wave injection and
//!   dielectric cylinders.
//! - [`solver3d`]: flux-density 3D grid with PML, TF/SF and dielectric spheres.
//! - [`analytic`]: d'Alembert pulse, Bessel/Hankel functions and the cylinder
//!   scattering series used as oracles.
//! - [`antenna`]: rectangular microstrip patch design chain.
//! - [`validate`]: the oracle-comparison suites shared by the CLI and tests.

// `!(x >= a)` deliberately rejects NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod antenna;
pub mod error;
pub mod field;
pub mod geometry;
pub mod grid;
pub mod incident;
pub mod material;
pub mod pml;
pub mod probe;
pub mod solver1d;
pub mod solver2d;
pub mod solver3d;
pub mod source;
pub mod validate;

pub use error::{FdtdError, Result};
pub use grid::{courant_dt, denormalize_e, normalize_e, GridSpec, C0, EPS0, ETA0, MU0};
pub use material::{CompiledMaterials, MaterialMap};
pub use source::{gaussian_pulse, Injection, SourceSpec, Waveform};
