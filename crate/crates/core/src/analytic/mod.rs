//! Closed-form reference solutions.

pub mod bessel;
pub mod cylinder;
pub mod dalembert;

pub use bessel::{bessel_j, bessel_j_complex, bessel_y, hankel1, hankel2};
pub use cylinder::{
    cylinder_scattered_h_tm, cylinder_scattered_tm, cylinder_total_tm,
    incident_plane_wave_expansion, CylinderKind, CylinderScatterParams,
};
pub use dalembert::dalembert_gaussian;
