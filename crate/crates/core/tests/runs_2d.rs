use std::f64::consts::PI;

use yeefdtd::field::Field2;
use yeefdtd::solver2d::{Excitation2D, Scenario2D, Sim2D, TfsfBox2D};
use yeefdtd::validate::{pml_scenario, tfsf_scenario, PML_CELLS};

fn bilinear(f: &Field2, x: f64, y: f64) -> f64 {
    let (i, j) = (x.floor() as usize, y.floor() as usize);
    let (u, v) = (x - i as f64, y - j as f64);
    (1.0 - u) * (1.0 - v) * f.get(i, j)
        + u * (1.0 - v) * f.get(i + 1, j)
        + (1.0 - u) * v * f.get(i, j + 1)
        + u * v * f.get(i + 1, j + 1)
}

/// Peak |ez| along rays from `src`, one per angle.
fn ray_peaks(
    ez: &Field2,
    src: (usize, usize),
    radii: std::ops::RangeInclusive<f64>,
    rays: usize,
) -> Vec<f64> {
    (0..rays)
        .map(|n| {
            let th = 2.0 * PI * n as f64 / rays as f64;
            let mut peak: f64 = 0.0;
            let mut r = *radii.start();
            while r <= *radii.end() {
                let v = bilinear(ez, src.0 as f64 + r * th.cos(), src.1 as f64 + r * th.sin());
                peak = peak.max(v.abs());
                r += 0.25;
            }
            peak
        })
        .collect()
}

#[test]
fn offset_pulse_stays_circular_at_step_90() {
    let mut scn = pml_scenario(PML_CELLS, 0).unwrap();
    scn.grid = scn.grid.with_steps(90);
    let src = match scn.excitation {
        Excitation2D::Point { i, j } => (i, j),
        _ => unreachable!(),
    };
    let mut sim = Sim2D::new(scn).unwrap();
    for _ in 0..90 {
        sim.advance().unwrap();
    }
    let peaks = ray_peaks(&sim.state().ez, src, 28.0..=37.0, 72);
    let max = peaks.iter().cloned().fold(f64::MIN, f64::max);
    let min = peaks.iter().cloned().fold(f64::MAX, f64::min);
    let mean = peaks.iter().sum::<f64>() / peaks.len() as f64;
    let anisotropy = (max - min) / mean;
    assert!(anisotropy < 0.05, "anisotropy {anisotropy}");
}

#[test]
fn total_field_follows_incident_line_on_axis() {
    let (scn, b): (Scenario2D, TfsfBox2D) = tfsf_scenario().unwrap();
    let ic = (b.ia + b.ib) / 2;
    let mut sim = Sim2D::new(scn.clone()).unwrap();
    let (mut num, mut den) = (0.0, 0.0);
    for _ in 0..scn.grid.n_steps() {
        sim.advance().unwrap();
        let inc = sim.incident().unwrap();
        for j in b.ja..=b.jb {
            let (t, r) = (sim.state().ez.get(ic, j), inc.ez(j));
            num += (t - r) * (t - r);
            den += r * r;
        }
    }
    let err = (num / den).sqrt();
    assert!(err < 0.01, "on-axis relative L2 {err}");
}
