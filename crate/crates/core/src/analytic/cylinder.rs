//! TM plane-wave scattering by an infinite circular cylinder at normal
//! incidence.
//!
//! Time convention `e^{jωt}`; the incident wave is `Ez = e^{−jkx}` travelling
//! along `+x` (`φ = 0`). Fields are in normalized units, so `H` shares the
//! amplitude scale of `E`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::{bessel_j, bessel_j_complex, derivative, hankel2};
use crate::error::{FdtdError, Result};
use crate::grid::{C0, EPS0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CylinderKind {
    /// Perfect electric conductor.
    Conducting,
    /// Lossy dielectric with `eps_r` and `sigma`.
    Penetrable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderScatterParams {
    /// Radius in meters.
    pub a: f64,
    /// Free-space wavenumber in 1/m.
    pub k: f64,
    pub eps_r: f64,
    pub sigma: f64,
    pub max_order: u32,
    pub kind: CylinderKind,
}

/// Extra orders beyond `ceil(ka)` the series needs at minimum.
pub const MIN_EXTRA_ORDERS: u32 = 10;
/// Extra orders used by [`CylinderScatterParams::at_frequency`].
pub const DEFAULT_EXTRA_ORDERS: u32 = 15;

fn min_order(x: f64) -> u32 {
    x.ceil() as u32 + MIN_EXTRA_ORDERS
}

impl CylinderScatterParams {
    pub fn new(
        a: f64,
        k: f64,
        eps_r: f64,
        sigma: f64,
        max_order: u32,
        kind: CylinderKind,
    ) -> Result<Self> {
        let p = CylinderScatterParams {
            a,
            k,
            eps_r,
            sigma,
            max_order,
            kind,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters for frequency `freq` Hz with a comfortably converged order.
    pub fn at_frequency(
        a: f64,
        freq: f64,
        eps_r: f64,
        sigma: f64,
        kind: CylinderKind,
    ) -> Result<Self> {
        let k = 2.0 * std::f64::consts::PI * freq / C0;
        let order = (k * a).ceil() as u32 + DEFAULT_EXTRA_ORDERS;
        CylinderScatterParams::new(a, k, eps_r, sigma, order, kind)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) || !(self.k > 0.0 && self.k.is_finite()) {
            return Err(FdtdError::domain(format!(
                "cylinder needs a > 0 and k > 0, got a = {}, k = {}",
                self.a, self.k
            )));
        }
        if self.kind == CylinderKind::Penetrable && !(self.eps_r >= 1.0 && self.sigma >= 0.0) {
            return Err(FdtdError::domain(format!(
                "cylinder material needs eps_r >= 1 and sigma >= 0, got {} and {}",
                self.eps_r, self.sigma
            )));
        }
        let need = min_order(self.ka());
        if self.max_order < need {
            return Err(FdtdError::Convergence(format!(
                "series order {} below the minimum {need} for ka = {:.6}",
                self.max_order,
                self.ka()
            )));
        }
        Ok(())
    }

    pub fn ka(&self) -> f64 {
        self.k * self.a
    }

    pub fn omega(&self) -> f64 {
        self.k * C0
    }

    /// Interior wavenumber `k·sqrt(eps_r − j·sigma/(ω·ε0))`.
    pub fn k_inside(&self) -> Complex64 {
        let eps_c = Complex64::new(self.eps_r, -self.sigma / (self.omega() * EPS0));
        self.k * eps_c.sqrt()
    }

    /// Scattered-wave coefficients `a_m` for `m = 0..=M`.
    pub fn scattered_coefficients(&self) -> Result<Vec<Complex64>> {
        let ka = self.ka();
        let m_max = self.max_order;
        let j: Vec<f64> = (0..=m_max + 1)
            .map(|m| bessel_j(m, ka))
            .collect::<Result<_>>()?;
        let h: Vec<Complex64> = (0..=m_max + 1)
            .map(|m| hankel2(m, ka))
            .collect::<Result<_>>()?;
        match self.kind {
            CylinderKind::Conducting => Ok((0..=m_max as usize).map(|m| -j[m] / h[m]).collect()),
            CylinderKind::Penetrable => {
                let k1 = self.k_inside();
                let k1a = k1 * self.a;
                let j1: Vec<Complex64> =
                    (0..=m_max + 1).map(|m| bessel_j_complex(m, k1a)).collect();
                Ok((0..=m_max)
                    .map(|m| {
                        let i = m as usize;
                        let dj = derivative(|n| j[n as usize], m);
                        let dh = derivative(|n| h[n as usize], m);
                        let dj1 = derivative(|n| j1[n as usize], m);
                        (k1 * dj1 * j[i] - self.k * j1[i] * dj)
                            / (self.k * j1[i] * dh - k1 * dj1 * h[i])
                    })
                    .collect())
            }
        }
    }

    /// Interior standing-wave coefficients `c_m`; zero for a conductor.
    pub fn interior_coefficients(&self) -> Result<Vec<Complex64>> {
        let a_m = self.scattered_coefficients()?;
        if self.kind == CylinderKind::Conducting {
            return Ok(vec![Complex64::new(0.0, 0.0); a_m.len()]);
        }
        let ka = self.ka();
        let k1a = self.k_inside() * self.a;
        (0..=self.max_order)
            .map(|m| {
                let jm = bessel_j(m, ka)?;
                let hm = hankel2(m, ka)?;
                Ok((jm + a_m[m as usize] * hm) / bessel_j_complex(m, k1a))
            })
            .collect()
    }
}

/// `(−j)^m` for `m ≥ 0`.
fn neg_j_pow(m: u32) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `Σ_{m=−M..M} (−j)^{|m|}·e^{jmφ}·f(|m|)`, folded onto `m ≥ 0`.
fn harmonic_sum(
    phi: f64,
    max_order: u32,
    f: impl Fn(u32) -> Result<Complex64>,
) -> Result<Complex64> {
    let mut sum = f(0)?;
    for m in 1..=max_order {
        sum += neg_j_pow(m) * (2.0 * (m as f64 * phi).cos()) * f(m)?;
    }
    Ok(sum)
}

/// Jacobi–Anger expansion of `e^{−jkx}` at `(rho, phi)`, truncated at `|m| ≤ M`.
pub fn incident_plane_wave_expansion(
    rho: f64,
    phi: f64,
    k: f64,
    max_order: u32,
) -> Result<Complex64> {
    if !(rho >= 0.0) {
        return Err(FdtdError::domain(format!("rho must be >= 0, got {rho}")));
    }
    if (max_order as f64) < k * rho + MIN_EXTRA_ORDERS as f64 {
        return Err(FdtdError::Convergence(format!(
            "order {max_order} too small for k·rho = {:.6}",
            k * rho
        )));
    }
    let kr = k * rho;
    harmonic_sum(phi, max_order, |m| {
        Ok(Complex64::new(bessel_j(m, kr)?, 0.0))
    })
}

fn check_outside(rho: f64, p: &CylinderScatterParams) -> Result<()> {
    if !(rho >= p.a) {
        return Err(FdtdError::domain(format!(
            "scattered field is defined for rho >= a = {}, got {rho}",
            p.a
        )));
    }
    Ok(())
}

/// Scattered `Ez` outside the cylinder.
pub fn cylinder_scattered_tm(
    rho: f64,
    phi: f64,
    params: &CylinderScatterParams,
) -> Result<Complex64> {
    params.validate()?;
    check_outside(rho, params)?;
    let a_m = params.scattered_coefficients()?;
    let kr = params.k * rho;
    harmonic_sum(phi, params.max_order, |m| {
        Ok(a_m[m as usize] * hankel2(m, kr)?)
    })
}

/// Total `Ez` anywhere: incident plus scattered outside, the interior
/// standing wave inside (zero inside a conductor).
pub fn cylinder_total_tm(rho: f64, phi: f64, params: &CylinderScatterParams) -> Result<Complex64> {
    params.validate()?;
    if !(rho >= 0.0) {
        return Err(FdtdError::domain(format!("rho must be >= 0, got {rho}")));
    }
    if rho >= params.a {
        let a_m = params.scattered_coefficients()?;
        let kr = params.k * rho;
        return harmonic_sum(phi, params.max_order, |m| {
            Ok(bessel_j(m, kr)? + a_m[m as usize] * hankel2(m, kr)?)
        });
    }
    let c_m = params.interior_coefficients()?;
    let k1r = params.k_inside() * rho;
    harmonic_sum(phi, params.max_order, |m| {
        Ok(c_m[m as usize] * bessel_j_complex(m, k1r))
    })
}

/// Scattered `(H_rho, H_phi)` outside the cylinder, from `∇×E = −jωμH`.
pub fn cylinder_scattered_h_tm(
    rho: f64,
    phi: f64,
    params: &CylinderScatterParams,
) -> Result<(Complex64, Complex64)> {
    params.validate()?;
    check_outside(rho, params)?;
    let a_m = params.scattered_coefficients()?;
    let kr = params.k * rho;
    let h: Vec<Complex64> = (0..=params.max_order + 1)
        .map(|m| hankel2(m, kr))
        .collect::<Result<_>>()?;
    // H_phi = (1/jk)·∂Ez/∂rho
    let h_phi = harmonic_sum(phi, params.max_order, |m| {
        Ok(a_m[m as usize] * derivative(|n| h[n as usize], m))
    })? * Complex64::new(0.0, -1.0);
    // H_rho = −(1/(jk·rho))·∂Ez/∂phi; the ±m terms pair into −2m·sin(mφ)
    let mut d_phi = Complex64::new(0.0, 0.0);
    for m in 1..=params.max_order {
        let mf = m as f64;
        d_phi += neg_j_pow(m) * (-2.0 * mf * (mf * phi).sin()) * a_m[m as usize] * h[m as usize];
    }
    let h_rho = -d_phi / Complex64::new(0.0, kr);
    Ok((h_rho, h_phi))
}
