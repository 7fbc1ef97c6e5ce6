//! Dispatches a parsed scenario and writes its artifacts plus a manifest.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde_json::json;
use yeefdtd::antenna::{compare_with_reference, design_with, AntennaDesign};
use yeefdtd::solver1d::run_1d;
use yeefdtd::solver2d::run_2d;
use yeefdtd::solver3d::run_3d;
use yeefdtd::validate::{run_suite, CriterionReport, Suite};

use crate::config::{AntennaConfig, Body, Built, ReportFormat, ScenarioConfig};
use crate::error::RunError;
use crate::output::{field_csv, fmt_value, probe_csv, slice_axes, snapshot_1d_csv, OutDir};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub files: Vec<String>,
    /// Text worth echoing to the terminal (reports, tables).
    pub console: String,
}

/// Runs `cfg`, writing every artifact into `out`. The manifest is written
/// even when validation criteria fail.
pub fn run(cfg: &ScenarioConfig, out: &Path) -> Result<RunSummary, RunError> {
    let start = Instant::now();
    let mut dir = OutDir::create(out)?;
    let mut console = String::new();
    let mut failed = 0;
    match (&cfg.body, cfg.build()?) {
        (Body::Fdtd(_), Some(built)) => write_fields(&built, &mut dir)?,
        (Body::Antenna(a), _) => console = write_antenna(a, &mut dir)?,
        (Body::Validate(suites), _) => {
            let reports = run_suites(suites)?;
            failed = reports.iter().filter(|r| !r.passed()).count();
            console = write_validation(&reports, &mut dir)?;
        }
        (Body::Fdtd(_), None) => unreachable!("field configs always build"),
    }
    let manifest = json!({
        "tool": "yeefdtd",
        "version": env!("CARGO_PKG_VERSION"),
        "kind": cfg.kind.name(),
        "config": cfg.to_string(),
        "threads": rayon::current_num_threads(),
        "wall_time_s": start.elapsed().as_secs_f64(),
        "files": dir.files,
    });
    let text = serde_json::to_string_pretty(&manifest).expect("manifest is plain JSON") + "\n";
    dir.write(MANIFEST, &text)?;
    if failed > 0 {
        return Err(RunError::ValidationFailed { failed });
    }
    Ok(RunSummary {
        files: dir.files,
        console,
    })
}

fn write_fields(built: &Built, dir: &mut OutDir) -> Result<(), RunError> {
    match built {
        Built::D1(s) => {
            let r = run_1d(s)?;
            for p in &r.probes {
                dir.write(
                    &format!("probe_{}.csv", p.position[0]),
                    &probe_csv("ex", &p.values),
                )?;
            }
            for snap in &r.snapshots {
                dir.write(
                    &format!("snapshot_{:06}.csv", snap.step),
                    &snapshot_1d_csv(snap),
                )?;
            }
        }
        Built::D2(s) => {
            let r = run_2d(s)?;
            for p in &r.probes {
                let name = format!("probe_{}_{}.csv", p.position[0], p.position[1]);
                dir.write(&name, &probe_csv("ez", &p.values))?;
            }
            for snap in &r.snapshots {
                dir.write(
                    &format!("snapshot_{:06}.csv", snap.step),
                    &field_csv(["i", "j", "ez"], &snap.ez),
                )?;
            }
        }
        Built::D3(s) => {
            let r = run_3d(s)?;
            for p in &r.probes {
                let name = format!(
                    "probe_{}_{}_{}.csv",
                    p.position[0], p.position[1], p.position[2]
                );
                dir.write(&name, &probe_csv("ez", &p.values))?;
            }
            for sl in &r.slices {
                let sp = sl.spec;
                let [a, b] = slice_axes(sp.plane);
                let name = format!(
                    "slice_{}{}_{}_{:06}.csv",
                    sp.plane.name(),
                    sp.offset,
                    sp.component.name(),
                    sp.step
                );
                dir.write(&name, &field_csv([a, b, sp.component.name()], &sl.data))?;
            }
        }
    }
    Ok(())
}

pub fn design_table(d: &AntennaDesign, format: ReportFormat) -> String {
    let rows = [
        ("f0", d.f0, "Hz"),
        ("eps_r", d.eps_r, ""),
        ("h", d.h, "m"),
        ("W", d.w, "m"),
        ("eps_reff", d.eps_reff, ""),
        ("delta_L", d.delta_l, "m"),
        ("L", d.l, "m"),
        ("x_feed", d.x_feed, "m"),
        ("y_feed", d.y_feed, "m"),
        ("bw_target", d.bw_target, "Hz"),
    ];
    let mut s = String::new();
    match format {
        ReportFormat::Csv => {
            s.push_str("quantity,value,unit\n");
            for (q, v, u) in rows {
                let _ = writeln!(s, "{q},{},{u}", fmt_value(v));
            }
        }
        ReportFormat::Text => {
            for (q, v, u) in rows {
                let _ = writeln!(s, "{q:<10} {v:>16.8e} {u}");
            }
        }
    }
    s
}

pub fn antenna_reports(a: &AntennaConfig) -> Result<(String, String), RunError> {
    let d = design_with(a.f0, a.eps_r, a.h, a.x_feed, a.form)?;
    let cmp = compare_with_reference(&d, a.tolerance);
    let cmp_text = match a.format {
        ReportFormat::Csv => cmp.to_csv(),
        ReportFormat::Text => cmp.to_string(),
    };
    Ok((design_table(&d, a.format), cmp_text))
}

fn write_antenna(a: &AntennaConfig, dir: &mut OutDir) -> Result<String, RunError> {
    let (table, cmp) = antenna_reports(a)?;
    let ext = match a.format {
        ReportFormat::Csv => "csv",
        ReportFormat::Text => "txt",
    };
    dir.write(&format!("design.{ext}"), &table)?;
    dir.write(&format!("comparison.{ext}"), &cmp)?;
    Ok(format!("{table}\n{cmp}"))
}

pub fn run_suites(suites: &[Suite]) -> Result<Vec<CriterionReport>, RunError> {
    let mut out = Vec::new();
    for s in suites {
        out.extend(run_suite(*s)?);
    }
    Ok(out)
}

pub fn validation_text(reports: &[CriterionReport]) -> String {
    reports.iter().map(|r| format!("{r}\n")).collect()
}

pub fn validation_csv(reports: &[CriterionReport]) -> String {
    let mut s = String::from("criterion,check,measured,threshold,passed,runtime_s\n");
    for r in reports {
        for c in &r.checks {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.id,
                c.name,
                fmt_value(c.measured),
                fmt_value(c.threshold),
                c.passed(),
                r.runtime.as_secs_f64()
            );
        }
    }
    s
}

fn write_validation(reports: &[CriterionReport], dir: &mut OutDir) -> Result<String, RunError> {
    let text = validation_text(reports);
    dir.write("validation.txt", &text)?;
    dir.write("validation.csv", &validation_csv(reports))?;
    Ok(text)
}
