//! Rectangular microstrip patch design from the transmission-line model.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FdtdError, Result};
use crate::grid::C0;

/// Bandwidth the reference design aims for; carried along for reporting only.
pub const BW_TARGET: f64 = 500e6;

fn positive(v: f64, name: &str) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(FdtdError::domain(format!(
            "{name} must be positive, got {v}"
        )));
    }
    Ok(())
}

/// Patch width `W = c/(2·f0)·sqrt(2/(εr + 1))`.
pub fn patch_width(f0: f64, eps_r: f64) -> Result<f64> {
    positive(f0, "f0")?;
    if !(eps_r >= 1.0 && eps_r.is_finite()) {
        return Err(FdtdError::domain(format!(
            "eps_r must be >= 1, got {eps_r}"
        )));
    }
    Ok(C0 / (2.0 * f0) * (2.0 / (eps_r + 1.0)).sqrt())
}

/// Which variant of the effective-permittivity formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PermittivityForm {
    /// `(1 + 12h/W)^(−1/2)`: the transmission-line model.
    #[default]
    InverseRoot,
    /// `(1 + 12h/W)^(+1/2)`, kept for comparison only; it exceeds `εr`.
    Printed,
}

/// Effective permittivity of the microstrip, inverse-root form.
pub fn effective_permittivity(eps_r: f64, h: f64, w: f64) -> Result<f64> {
    effective_permittivity_with(eps_r, h, w, PermittivityForm::InverseRoot)
}

pub fn effective_permittivity_with(
    eps_r: f64,
    h: f64,
    w: f64,
    form: PermittivityForm,
) -> Result<f64> {
    positive(h, "h")?;
    positive(w, "W")?;
    if !(eps_r >= 1.0) {
        return Err(FdtdError::domain(format!(
            "eps_r must be >= 1, got {eps_r}"
        )));
    }
    if w <= h {
        return Err(FdtdError::validation(format!(
            "formula needs W > h, got W = {w} m, h = {h} m"
        )));
    }
    let root = (1.0 + 12.0 * h / w).sqrt();
    let factor = match form {
        PermittivityForm::InverseRoot => 1.0 / root,
        PermittivityForm::Printed => root,
    };
    Ok((eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * factor)
}

/// Length extension from fringing fields at each radiating edge.
pub fn fringing_extension(eps_reff: f64, w: f64, h: f64) -> Result<f64> {
    positive(w, "W")?;
    positive(h, "h")?;
    if !(eps_reff > 0.258) {
        return Err(FdtdError::domain(format!(
            "eps_reff must exceed 0.258, got {eps_reff}"
        )));
    }
    let u = w / h;
    Ok(0.412 * h * (eps_reff + 0.3) * (u + 0.264) / ((eps_reff - 0.258) * (u + 0.8)))
}

/// Physical length `L = c/(2·f0·sqrt(εreff)) − 2ΔL`.
pub fn patch_length(f0: f64, eps_reff: f64, delta_l: f64) -> Result<f64> {
    positive(f0, "f0")?;
    positive(eps_reff, "eps_reff")?;
    if !(delta_l >= 0.0) {
        return Err(FdtdError::domain(format!(
            "delta_L must be >= 0, got {delta_l}"
        )));
    }
    let l = C0 / (2.0 * f0 * eps_reff.sqrt()) - 2.0 * delta_l;
    if l <= 0.0 {
        return Err(FdtdError::Infeasible(format!(
            "fringing extension {delta_l} m leaves a non-positive patch length {l} m"
        )));
    }
    Ok(l)
}

/// Feed on the patch diagonal: `y = (W/L)·x`, with `0 ≤ x ≤ L`.
pub fn feed_point(w: f64, l: f64, x_feed: f64) -> Result<(f64, f64)> {
    positive(w, "W")?;
    positive(l, "L")?;
    if !(0.0..=l).contains(&x_feed) {
        return Err(FdtdError::domain(format!(
            "x_feed = {x_feed} m must lie within [0, L = {l}] m"
        )));
    }
    Ok((x_feed, w / l * x_feed))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaDesign {
    pub f0: f64,
    pub eps_r: f64,
    pub h: f64,
    pub w: f64,
    pub eps_reff: f64,
    pub delta_l: f64,
    pub l: f64,
    pub x_feed: f64,
    pub y_feed: f64,
    pub bw_target: f64,
}

pub fn design(f0: f64, eps_r: f64, h: f64, x_feed: f64) -> Result<AntennaDesign> {
    design_with(f0, eps_r, h, x_feed, PermittivityForm::InverseRoot)
}

pub fn design_with(
    f0: f64,
    eps_r: f64,
    h: f64,
    x_feed: f64,
    form: PermittivityForm,
) -> Result<AntennaDesign> {
    let w = patch_width(f0, eps_r)?;
    let eps_reff = effective_permittivity_with(eps_r, h, w, form)?;
    let delta_l = fringing_extension(eps_reff, w, h)?;
    let l = patch_length(f0, eps_reff, delta_l)?;
    let (x_feed, y_feed) = feed_point(w, l, x_feed)?;
    Ok(AntennaDesign {
        f0,
        eps_r,
        h,
        w,
        eps_reff,
        delta_l,
        l,
        x_feed,
        y_feed,
        bw_target: BW_TARGET,
    })
}

/// Published design parameters for the 5.8 GHz patch.
pub mod reference {
    pub const F0: f64 = 5.8e9;
    pub const EPS_R: f64 = 5.0;
    pub const H: f64 = 1.6e-3;
    pub const X_FEED: f64 = 2.8e-3;
    pub const W: f64 = 17.30e-3;
    pub const L: f64 = 10.402e-3;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub quantity: &'static str,
    pub computed: f64,
    pub reported: f64,
    pub relative_difference: f64,
    pub flagged: bool,
}

/// Side-by-side of a computed design and the published table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableComparison {
    pub tolerance: f64,
    pub rows: Vec<ComparisonRow>,
}

impl TableComparison {
    pub fn flagged(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| r.flagged)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("quantity,computed,reported,relative_difference,flagged\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{}\n",
                r.quantity, r.computed, r.reported, r.relative_difference, r.flagged
            ));
        }
        s
    }
}

impl fmt::Display for TableComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<10} {:>14} {:>14} {:>10}",
            "quantity", "computed", "reported", "rel.diff"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<10} {:>14.6e} {:>14.6e} {:>9.2}% {}",
                r.quantity,
                r.computed,
                r.reported,
                100.0 * r.relative_difference,
                if r.flagged { "MISMATCH" } else { "ok" }
            )?;
        }
        Ok(())
    }
}

/// Compares `design` with the published W and L, plus the feed height the
/// published W and L imply. Rows differing by more than `tolerance`
/// (relative) are flagged.
pub fn compare_with_reference(design: &AntennaDesign, tolerance: f64) -> TableComparison {
    let published_y = reference::W / reference::L * design.x_feed;
    let row = |quantity, computed: f64, reported: f64| {
        let relative_difference = (computed - reported).abs() / reported.abs();
        ComparisonRow {
            quantity,
            computed,
            reported,
            relative_difference,
            flagged: relative_difference > tolerance,
        }
    };
    TableComparison {
        tolerance,
        rows: vec![
            row("W", design.w, reference::W),
            row("L", design.l, reference::L),
            row("y_feed", design.y_feed, published_y),
        ],
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    /// Full-precision evaluation of the chain at 5.8 GHz, εr = 5, h = 1.6 mm.
    const GOLDEN_W: f64 = 0.014921142786837894;
    const GOLDEN_EPS_REFF: f64 = 4.3225717889178747;
    const GOLDEN_DELTA_L: f64 = 0.00071001261297688948;
    const GOLDEN_L: f64 = 0.011010560882629025;
    const GOLDEN_Y_FEED: f64 = 0.0037944660811112429;

    #[test]
    fn reference_design_matches_golden_values() {
        let d = design(5.8e9, 5.0, 1.6e-3, 2.8e-3).unwrap();
        assert!(rel(d.w, GOLDEN_W) < 1e-12);
        assert!(rel(d.eps_reff, GOLDEN_EPS_REFF) < 1e-12);
        assert!(rel(d.delta_l, GOLDEN_DELTA_L) < 1e-12);
        assert!(rel(d.l, GOLDEN_L) < 1e-12);
        assert!(rel(d.y_feed, GOLDEN_Y_FEED) < 1e-12);
        assert_eq!(d.bw_target, 500e6);
        assert!(d.w > d.h && d.eps_reff > 1.0 && d.eps_reff <= d.eps_r);
    }

    #[test]
    fn rounded_intermediates() {
        assert!((patch_width(5.8e9, 5.0).unwrap() - 14.93e-3).abs() < 0.01e-3);
        assert!((effective_permittivity(5.0, 1.6e-3, 14.93e-3).unwrap() - 4.32).abs() < 0.005);
        let dl = fringing_extension(4.32, 9.33 * 1.6e-3, 1.6e-3).unwrap();
        assert!((dl - 0.71e-3).abs() < 0.005e-3);
        assert!((patch_length(5.8e9, 4.32, 0.71e-3).unwrap() - 11.0e-3).abs() < 0.05e-3);
    }

    #[test]
    fn printed_form_exceeds_substrate_permittivity() {
        let w = patch_width(5.8e9, 5.0).unwrap();
        let printed =
            effective_permittivity_with(5.0, 1.6e-3, w, PermittivityForm::Printed).unwrap();
        assert!((printed - 6.0244104959117502).abs() < 1e-12);
        assert!(printed > 5.0);
    }

    #[test]
    fn free_space_limits() {
        let f0 = 2.4e9;
        let half_wave = C0 / (2.0 * f0);
        assert_eq!(patch_width(f0, 1.0).unwrap(), half_wave);
        assert_eq!(effective_permittivity(1.0, 1e-3, 2e-2).unwrap(), 1.0);
        assert_eq!(patch_length(f0, 1.0, 0.0).unwrap(), half_wave);
        let d = design(f0, 1.0, 1e-3, 1e-3).unwrap();
        assert!(rel(d.l + 2.0 * d.delta_l, d.w) < 1e-15);
    }

    #[test]
    fn table_ratio_feed() {
        let (_, y) = feed_point(17.30e-3, 10.402e-3, 2.8e-3).unwrap();
        assert!((y - 4.6567967698519515e-3).abs() < 1e-15);
        assert_eq!(feed_point(5e-3, 5e-3, 1.3e-3).unwrap(), (1.3e-3, 1.3e-3));
        assert_eq!(feed_point(17e-3, 10e-3, 0.0).unwrap().1, 0.0);
        assert!(feed_point(17e-3, 10e-3, -1e-4).is_err());
        assert!(feed_point(17e-3, 10e-3, 10.1e-3).is_err());
    }

    #[test]
    fn error_cases() {
        assert!(patch_width(0.0, 5.0).is_err());
        assert!(patch_width(1e9, 0.5).is_err());
        assert!(matches!(
            effective_permittivity(5.0, 2e-3, 2e-3),
            Err(FdtdError::Validation(_))
        ));
        assert!(fringing_extension(0.258, 1e-2, 1e-3).is_err());
        assert!(matches!(
            patch_length(1e9, 4.0, 0.1),
            Err(FdtdError::Infeasible(_))
        ));
    }

    #[test]
    fn comparison_flags_width_and_length() {
        let d = design(
            reference::F0,
            reference::EPS_R,
            reference::H,
            reference::X_FEED,
        )
        .unwrap();
        let cmp = compare_with_reference(&d, 0.01);
        let flagged: Vec<_> = cmp.flagged().map(|r| r.quantity).collect();
        assert_eq!(flagged, ["W", "L", "y_feed"]);
        assert!((cmp.rows[0].relative_difference - (17.30e-3 - GOLDEN_W) / 17.30e-3).abs() < 1e-12);
        let text = cmp.to_string();
        assert!(text.contains("MISMATCH"));
        assert_eq!(cmp.to_csv().lines().count(), 4);
    }

    #[test]
    fn geometric_similarity() {
        let (f0, h) = (5.8e9, 1.6e-3);
        let d = design(f0, 4.4, h, 1e-3).unwrap();
        for s in [0.5, 2.0, 3.7] {
            let e = design(f0 * s, 4.4, h / s, 1e-3 / s).unwrap();
            assert!(rel(e.w, d.w / s) < 1e-14);
            assert!(rel(e.l, d.l / s) < 1e-14);
            assert!(rel(e.eps_reff, d.eps_reff) < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn width_decreases_with_permittivity(f0 in 1e9f64..1e10, e in 1.0f64..12.0, de in 0.01f64..3.0) {
            prop_assert!(patch_width(f0, e + de).unwrap() < patch_width(f0, e).unwrap());
        }

        #[test]
        fn eps_reff_increases_with_width(e in 1.5f64..12.0, h in 1e-4f64..3e-3, r in 1.1f64..50.0, dr in 0.1f64..10.0) {
            let a = effective_permittivity(e, h, r * h).unwrap();
            let b = effective_permittivity(e, h, (r + dr) * h).unwrap();
            prop_assert!(b > a);
            prop_assert!(a > 1.0 && a <= e);
        }

        #[test]
        fn length_decreases_with_frequency(f0 in 2e9f64..1e10, df in 1e7f64..1e9) {
            let l = |f: f64| design(f, 5.0, 1.6e-3, 0.0).unwrap().l;
            prop_assert!(l(f0 + df) < l(f0));
        }

        #[test]
        fn fringing_homogeneous_in_h(e in 1.0f64..12.0, h in 1e-4f64..3e-3, r in 0.5f64..40.0) {
            let a = fringing_extension(e, r * h, h).unwrap();
            let b = fringing_extension(e, 2.0 * r * h, 2.0 * h).unwrap();
            prop_assert!(rel(b, 2.0 * a) < 1e-14);
        }

        #[test]
        fn feed_on_diagonal(w in 1e-3f64..5e-2, l in 1e-3f64..5e-2, t in 0.0f64..1.0) {
            let (x, y) = feed_point(w, l, t * l).unwrap();
            prop_assert!(rel(x / l + 1e-300, y / w + 1e-300) < 1e-15);
        }
    }
}
