//! Line-oriented scenario files.
//!
//! ```text
//! kind = fdtd2d
//!
//! [grid]
//! cells = 100, 100
//! dx = 0.01
//!
//! [objects]
//! cylinder = 0.5, 0.5, 0.1, 30, 0.3
//! ```
//!
//! Keys before the first `[section]` header belong to the file itself; only
//! `kind` lives there. `#` starts a comment. Values are scalars or
//! comma-separated lists. `probe`, `slice` and `cylinder` may repeat; any
//! other repeated key is an error.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use yeefdtd::antenna::{self, PermittivityForm};
use yeefdtd::geometry::{CylinderSpec, SphereSpec};
use yeefdtd::solver1d::Scenario1D;
use yeefdtd::solver2d::{Excitation2D, Scenario2D, TfsfBox2D};
use yeefdtd::solver3d::{Component, Excitation3D, Plane, Scenario3D, SliceSpec, TfsfBox3D};
use yeefdtd::source::{DEFAULT_1D_PULSE, DEFAULT_ND_PULSE};
use yeefdtd::validate::Suite;
use yeefdtd::{GridSpec, Injection, SourceSpec, Waveform};

use crate::error::ConfigError;

const SECTIONS: &[(&str, &[&str])] = &[
    ("", &["kind"]),
    ("grid", &["cells", "dx", "steps"]),
    ("boundary", &["type", "npml"]),
    (
        "source",
        &[
            "waveform",
            "t0",
            "spread",
            "freq",
            "injection",
            "amplitude",
            "position",
            "plane_wave",
        ],
    ),
    ("objects", &["cylinder", "sphere"]),
    ("outputs", &["snapshot_steps", "probe", "slice", "dir"]),
    (
        "antenna",
        &["f0", "eps_r", "h", "x_feed", "form", "tolerance", "format"],
    ),
    ("validate", &["suites"]),
];

const REPEATABLE: &[&str] = &["probe", "slice", "cylinder"];

pub const DEFAULT_DX: f64 = 0.01;
pub const DEFAULT_2D_CELLS: usize = 100;
pub const DEFAULT_NPML: usize = 8;
pub const DEFAULT_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Fdtd1d,
    Fdtd2d,
    Fdtd3d,
    Antenna,
    Validate,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Fdtd1d => "fdtd1d",
            Kind::Fdtd2d => "fdtd2d",
            Kind::Fdtd3d => "fdtd3d",
            Kind::Antenna => "antenna",
            Kind::Validate => "validate",
        }
    }

    fn dims(&self) -> Option<usize> {
        match self {
            Kind::Fdtd1d => Some(1),
            Kind::Fdtd2d => Some(2),
            Kind::Fdtd3d => Some(3),
            _ => None,
        }
    }

    fn sections(&self) -> &'static [&'static str] {
        match self {
            Kind::Fdtd1d | Kind::Fdtd2d | Kind::Fdtd3d => {
                &["grid", "boundary", "source", "objects", "outputs"]
            }
            Kind::Antenna => &["antenna", "outputs"],
            Kind::Validate => &["validate", "outputs"],
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Kind::Fdtd1d,
            Kind::Fdtd2d,
            Kind::Fdtd3d,
            Kind::Antenna,
            Kind::Validate,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| "one of fdtd1d, fdtd2d, fdtd3d, antenna, validate".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Two-step Mur-type boundary; 1D only.
    Abc,
    /// Graded PML of the given depth; zero depth leaves bare PEC walls.
    Pml(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdtdConfig {
    pub cells: Vec<usize>,
    pub dx: f64,
    pub steps: usize,
    pub boundary: Boundary,
    pub source: SourceSpec,
    /// Point-source node; the grid center when absent.
    pub position: Option<Vec<usize>>,
    /// TF/SF box bounds `ia, ib, ja, jb[, ka, kb]`.
    pub plane_wave: Option<Vec<usize>>,
    pub cylinders: Vec<CylinderSpec>,
    pub sphere: Option<SphereSpec>,
    pub snapshot_steps: Vec<usize>,
    pub probes: Vec<Vec<usize>>,
    pub slices: Vec<SliceSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntennaConfig {
    pub f0: f64,
    pub eps_r: f64,
    pub h: f64,
    pub x_feed: f64,
    pub form: PermittivityForm,
    pub tolerance: f64,
    pub format: ReportFormat,
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Body {
    Fdtd(FdtdConfig),
    Antenna(AntennaConfig),
    Validate(Vec<Suite>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: Kind,
    pub body: Body,
    pub out_dir: Option<PathBuf>,
}

/// Core scenario ready to run.
#[derive(Debug, Clone)]
pub enum Built {
    D1(Scenario1D),
    D2(Scenario2D),
    D3(Scenario3D),
}

// ---- raw parsing ----

#[derive(Debug)]
struct Entry {
    section: String,
    key: String,
    value: String,
    line: usize,
}

fn tokenize(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut section = String::new();
    let mut entries: Vec<Entry> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::Syntax {
                    line,
                    msg: format!("unterminated section header '{s}'"),
                })?
                .trim();
            if !SECTIONS
                .iter()
                .any(|(sec, _)| *sec == name && !name.is_empty())
            {
                return Err(ConfigError::UnknownSection {
                    name: name.to_string(),
                    line,
                });
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = s.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            msg: format!("expected 'key = value', got '{s}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let known = SECTIONS
            .iter()
            .find(|(sec, _)| *sec == section)
            .is_some_and(|(_, keys)| keys.contains(&key));
        if !known {
            return Err(ConfigError::UnknownKey {
                key: key.to_string(),
                section: section.clone(),
                line,
            });
        }
        if !REPEATABLE.contains(&key) {
            if let Some(prev) = entries
                .iter()
                .find(|e| e.section == section && e.key == key)
            {
                return Err(ConfigError::Syntax {
                    line,
                    msg: format!("duplicate key '{key}' (first set on line {})", prev.line),
                });
            }
        }
        entries.push(Entry {
            section: section.clone(),
            key: key.to_string(),
            value: value.to_string(),
            line,
        });
    }
    Ok(entries)
}

struct Raw {
    entries: Vec<Entry>,
}

impl Raw {
    fn all<'a>(&'a self, section: &'a str, key: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries
            .iter()
            .filter(move |e| e.section == section && e.key == key)
    }

    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries
            .iter()
            .find(|e| e.section == section && e.key == key)
    }

    fn parse<T: FromStr>(
        &self,
        section: &str,
        key: &str,
        expected: &'static str,
    ) -> Result<Option<T>, ConfigError> {
        self.get(section, key)
            .map(|e| scalar(e, expected))
            .transpose()
    }

    fn require<T: FromStr>(
        &self,
        section: &str,
        key: &str,
        expected: &'static str,
    ) -> Result<T, ConfigError> {
        self.parse(section, key, expected)?
            .ok_or_else(|| ConfigError::Missing {
                section: section.to_string(),
                key: key.to_string(),
            })
    }
}

fn type_error(e: &Entry, expected: &'static str) -> ConfigError {
    ConfigError::Type {
        key: e.key.clone(),
        line: e.line,
        expected,
        got: e.value.clone(),
    }
}

fn scalar<T: FromStr>(e: &Entry, expected: &'static str) -> Result<T, ConfigError> {
    e.value.parse().map_err(|_| type_error(e, expected))
}

fn list<T: FromStr>(e: &Entry, expected: &'static str) -> Result<Vec<T>, ConfigError> {
    if e.value.is_empty() {
        return Ok(Vec::new());
    }
    e.value
        .split(',')
        .map(|v| v.trim().parse().map_err(|_| type_error(e, expected)))
        .collect()
}

fn list_of_len<T: FromStr>(
    e: &Entry,
    n: usize,
    expected: &'static str,
) -> Result<Vec<T>, ConfigError> {
    let v = list(e, expected)?;
    if v.len() != n {
        return Err(type_error(e, expected));
    }
    Ok(v)
}

fn parse_waveform_kind(e: &Entry) -> Result<bool, ConfigError> {
    match e.value.as_str() {
        "gaussian" => Ok(false),
        "sinusoid" => Ok(true),
        _ => Err(type_error(e, "gaussian or sinusoid")),
    }
}

fn parse_slice(e: &Entry) -> Result<SliceSpec, ConfigError> {
    const EXPECTED: &str = "plane, offset, component, step (e.g. xy, 30, ez, 50)";
    let parts: Vec<&str> = e.value.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(type_error(e, EXPECTED));
    }
    let plane = match parts[0] {
        "xy" => Plane::Xy,
        "xz" => Plane::Xz,
        "yz" => Plane::Yz,
        _ => return Err(type_error(e, EXPECTED)),
    };
    let component = [
        Component::Ex,
        Component::Ey,
        Component::Ez,
        Component::Hx,
        Component::Hy,
        Component::Hz,
    ]
    .into_iter()
    .find(|c| c.name() == parts[2])
    .ok_or_else(|| type_error(e, EXPECTED))?;
    let offset = parts[1].parse().map_err(|_| type_error(e, EXPECTED))?;
    let step = parts[3].parse().map_err(|_| type_error(e, EXPECTED))?;
    Ok(SliceSpec {
        plane,
        offset,
        component,
        step,
    })
}

// ---- typed config ----

impl ScenarioConfig {
    pub fn parse_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        text.parse()
    }

    fn from_raw(raw: &Raw) -> Result<Self, ConfigError> {
        let kind: Kind = {
            let e = raw.get("", "kind").ok_or_else(|| ConfigError::Missing {
                section: "top level".into(),
                key: "kind".into(),
            })?;
            e.value
                .parse()
                .map_err(|_| type_error(e, "one of fdtd1d, fdtd2d, fdtd3d, antenna, validate"))?
        };
        if let Some(e) = raw
            .entries
            .iter()
            .find(|e| !e.section.is_empty() && !kind.sections().contains(&e.section.as_str()))
        {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: format!(
                    "section [{}] does not apply to kind {}",
                    e.section,
                    kind.name()
                ),
            });
        }
        let out_dir = raw.parse::<PathBuf>("outputs", "dir", "a path")?;
        let body = match kind {
            Kind::Antenna => Body::Antenna(antenna_from_raw(raw)?),
            Kind::Validate => Body::Validate(suites_from_raw(raw)?),
            _ => Body::Fdtd(fdtd_from_raw(raw, kind.dims().unwrap_or(1))?),
        };
        let field_only = raw
            .entries
            .iter()
            .find(|e| e.section == "outputs" && e.key != "dir");
        if let (false, Some(e)) = (matches!(body, Body::Fdtd(_)), field_only) {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: format!("'{}' only applies to field solvers", e.key),
            });
        }
        let cfg = ScenarioConfig {
            kind,
            body,
            out_dir,
        };
        cfg.build()?;
        Ok(cfg)
    }

    /// Core scenario for field-solver kinds, fully validated.
    pub fn build(&self) -> Result<Option<Built>, ConfigError> {
        let Body::Fdtd(f) = &self.body else {
            return Ok(None);
        };
        f.build(self.kind).map(Some)
    }
}

fn fdtd_from_raw(raw: &Raw, dims: usize) -> Result<FdtdConfig, ConfigError> {
    let cells = match raw.get("grid", "cells") {
        Some(e) => list_of_len::<usize>(e, dims, cells_expectation(dims))?,
        None if dims == 2 => vec![DEFAULT_2D_CELLS; 2],
        None => {
            return Err(ConfigError::Missing {
                section: "grid".into(),
                key: "cells".into(),
            })
        }
    };
    let dx = raw.parse("grid", "dx", "a number")?.unwrap_or(DEFAULT_DX);
    let steps = raw
        .parse("grid", "steps", "a non-negative integer")?
        .unwrap_or(3 * cells.iter().copied().max().unwrap_or(0));

    let boundary = match raw.get("boundary", "type").map(|e| (e, e.value.as_str())) {
        None if dims == 1 => Boundary::Abc,
        None => Boundary::Pml(
            raw.parse("boundary", "npml", "a non-negative integer")?
                .unwrap_or(DEFAULT_NPML),
        ),
        Some((_, "abc")) if dims == 1 => Boundary::Abc,
        Some((_, "pml")) if dims > 1 => Boundary::Pml(
            raw.parse("boundary", "npml", "a non-negative integer")?
                .unwrap_or(DEFAULT_NPML),
        ),
        Some((e, _)) => {
            return Err(type_error(
                e,
                if dims == 1 {
                    "abc (1D grids)"
                } else {
                    "pml (2D and 3D grids)"
                },
            ))
        }
    };
    if boundary == Boundary::Abc {
        if let Some(e) = raw.get("boundary", "npml") {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: "npml does not apply to the 1D boundary".into(),
            });
        }
    }

    let plane_wave = match raw.get("source", "plane_wave") {
        Some(e) if dims == 1 => {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: "plane_wave needs a 2D or 3D grid".into(),
            })
        }
        Some(e) => Some(list_of_len::<usize>(e, 2 * dims, box_expectation(dims))?),
        None => None,
    };
    let position = match raw.get("source", "position") {
        Some(e) if plane_wave.is_some() => {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: "position and plane_wave are mutually exclusive".into(),
            })
        }
        Some(e) => Some(list_of_len::<usize>(e, dims, index_expectation(dims))?),
        None => None,
    };
    let (def_t0, def_spread) = if dims == 1 {
        DEFAULT_1D_PULSE
    } else {
        DEFAULT_ND_PULSE
    };
    let t0 = raw.parse("source", "t0", "a number")?.unwrap_or(def_t0);
    let spread = raw
        .parse("source", "spread", "a number")?
        .unwrap_or(def_spread);
    let sinusoid = raw
        .get("source", "waveform")
        .map(parse_waveform_kind)
        .transpose()?
        .unwrap_or(false);
    let waveform = if sinusoid {
        Waveform::Sinusoid {
            freq: raw.require("source", "freq", "a number")?,
            t0,
            spread,
        }
    } else {
        if let Some(e) = raw.get("source", "freq") {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: "freq needs waveform = sinusoid".into(),
            });
        }
        Waveform::Gaussian { t0, spread }
    };
    let injection = match raw.get("source", "injection") {
        Some(e) => match e.value.as_str() {
            "soft" => Injection::Soft,
            "hard" => Injection::Hard,
            _ => return Err(type_error(e, "soft or hard")),
        },
        // the plane-wave line is driven at its head node
        None if plane_wave.is_some() => Injection::Hard,
        None => Injection::Soft,
    };
    let amplitude = raw.parse("source", "amplitude", "a number")?.unwrap_or(1.0);

    let cylinders = raw
        .all("objects", "cylinder")
        .map(|e| {
            if dims != 2 {
                return Err(ConfigError::Syntax {
                    line: e.line,
                    msg: "cylinders need a 2D grid".into(),
                });
            }
            let v = list_of_len::<f64>(e, 5, "cx, cy, radius, eps_r, sigma")?;
            Ok(CylinderSpec {
                center: [v[0], v[1]],
                radius: v[2],
                eps_r: v[3],
                sigma: v[4],
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sphere = match raw.get("objects", "sphere") {
        Some(e) if dims != 3 => {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: "a sphere needs a 3D grid".into(),
            })
        }
        Some(e) => {
            let v = list_of_len::<f64>(e, 6, "cx, cy, cz, radius, eps_r, sigma")?;
            Some(SphereSpec {
                center: [v[0], v[1], v[2]],
                radius: v[3],
                eps_r: v[4],
                sigma: v[5],
            })
        }
        None => None,
    };

    let snapshot_steps = match raw.get("outputs", "snapshot_steps") {
        Some(e) if dims == 3 => {
            return Err(ConfigError::Syntax {
                line: e.line,
                msg: "3D grids write slices; use 'slice = plane, offset, component, step'".into(),
            })
        }
        Some(e) => list(e, "a list of step numbers")?,
        None => Vec::new(),
    };
    let probes = raw
        .all("outputs", "probe")
        .map(|e| list_of_len::<usize>(e, dims, index_expectation(dims)))
        .collect::<Result<Vec<_>, _>>()?;
    let slices = raw
        .all("outputs", "slice")
        .map(|e| {
            if dims != 3 {
                return Err(ConfigError::Syntax {
                    line: e.line,
                    msg: "slices need a 3D grid; use snapshot_steps".into(),
                });
            }
            parse_slice(e)
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(FdtdConfig {
        cells,
        dx,
        steps,
        boundary,
        source: SourceSpec {
            waveform,
            injection,
            amplitude,
        },
        position,
        plane_wave,
        cylinders,
        sphere,
        snapshot_steps,
        probes,
        slices,
    })
}

fn cells_expectation(dims: usize) -> &'static str {
    [
        "one cell count",
        "two cell counts (nx, ny)",
        "three cell counts (nx, ny, nz)",
    ][dims - 1]
}

fn index_expectation(dims: usize) -> &'static str {
    [
        "one node index",
        "two node indices (i, j)",
        "three node indices (i, j, k)",
    ][dims - 1]
}

fn box_expectation(dims: usize) -> &'static str {
    if dims == 2 {
        "four indices (ia, ib, ja, jb)"
    } else {
        "six indices (ia, ib, ja, jb, ka, kb)"
    }
}

fn antenna_from_raw(raw: &Raw) -> Result<AntennaConfig, ConfigError> {
    let form = match raw.get("antenna", "form") {
        None => PermittivityForm::InverseRoot,
        Some(e) => match e.value.as_str() {
            "inverse-root" => PermittivityForm::InverseRoot,
            "printed" => PermittivityForm::Printed,
            _ => return Err(type_error(e, "inverse-root or printed")),
        },
    };
    let format = match raw.get("antenna", "format") {
        None => ReportFormat::Text,
        Some(e) => match e.value.as_str() {
            "csv" => ReportFormat::Csv,
            "text" => ReportFormat::Text,
            _ => return Err(type_error(e, "csv or text")),
        },
    };
    Ok(AntennaConfig {
        f0: raw
            .parse("antenna", "f0", "a number")?
            .unwrap_or(antenna::reference::F0),
        eps_r: raw
            .parse("antenna", "eps_r", "a number")?
            .unwrap_or(antenna::reference::EPS_R),
        h: raw
            .parse("antenna", "h", "a number")?
            .unwrap_or(antenna::reference::H),
        x_feed: raw
            .parse("antenna", "x_feed", "a number")?
            .unwrap_or(antenna::reference::X_FEED),
        form,
        tolerance: raw
            .parse("antenna", "tolerance", "a number")?
            .unwrap_or(DEFAULT_TOLERANCE),
        format,
    })
}

fn suites_from_raw(raw: &Raw) -> Result<Vec<Suite>, ConfigError> {
    match raw.get("validate", "suites") {
        None => Ok(Suite::ALL.to_vec()),
        Some(e) if e.value == "all" => Ok(Suite::ALL.to_vec()),
        Some(e) => list(
            e,
            "suite names (1d, 2d-pml, 2d-tfsf, 2d-cylinder, 3d, antenna, bessel) or all",
        ),
    }
}

impl FdtdConfig {
    fn grid(&self) -> Result<GridSpec, ConfigError> {
        Ok(GridSpec::new(&self.cells, self.dx, self.steps)?)
    }

    fn build(&self, kind: Kind) -> Result<Built, ConfigError> {
        let grid = self.grid()?;
        let npml = match self.boundary {
            Boundary::Pml(n) => n,
            Boundary::Abc => 0,
        };
        let built = match kind {
            Kind::Fdtd1d => {
                let mut s = Scenario1D::centered(grid, self.source);
                if let Some(p) = &self.position {
                    s.source_position = p[0];
                }
                s.probes = self.probes.iter().map(|p| p[0]).collect();
                s.snapshot_steps = self.snapshot_steps.clone();
                s.validate()?;
                Built::D1(s)
            }
            Kind::Fdtd2d => {
                let mut s = Scenario2D::point_source(grid, npml, self.source);
                if let Some(p) = &self.position {
                    s.excitation = Excitation2D::Point { i: p[0], j: p[1] };
                }
                if let Some(b) = &self.plane_wave {
                    s.excitation = Excitation2D::PlaneWave(TfsfBox2D {
                        ia: b[0],
                        ib: b[1],
                        ja: b[2],
                        jb: b[3],
                    });
                }
                s.cylinders = self.cylinders.clone();
                s.probes = self.probes.iter().map(|p| (p[0], p[1])).collect();
                s.snapshot_steps = self.snapshot_steps.clone();
                s.validate()?;
                Built::D2(s)
            }
            _ => {
                let mut s = Scenario3D::point_source(grid, npml, self.source);
                if let Some(p) = &self.position {
                    s.excitation = Excitation3D::Point {
                        i: p[0],
                        j: p[1],
                        k: p[2],
                    };
                }
                if let Some(b) = &self.plane_wave {
                    s.excitation = Excitation3D::PlaneWave(TfsfBox3D {
                        ia: b[0],
                        ib: b[1],
                        ja: b[2],
                        jb: b[3],
                        ka: b[4],
                        kb: b[5],
                    });
                }
                s.sphere = self.sphere;
                s.probes = self.probes.iter().map(|p| [p[0], p[1], p[2]]).collect();
                s.slices = self.slices.clone();
                s.validate()?;
                Built::D3(s)
            }
        };
        Ok(built)
    }
}

impl FromStr for ScenarioConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let raw = Raw {
            entries: tokenize(text)?,
        };
        ScenarioConfig::from_raw(&raw)
    }
}

// ---- serialization ----

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Writes every setting explicitly, so parsing the output reproduces the
/// config exactly (floats use shortest round-trip formatting).
impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "kind = {}", self.kind.name())?;
        match &self.body {
            Body::Fdtd(c) => write_fdtd(&mut s, c)?,
            Body::Antenna(a) => {
                writeln!(s, "\n[antenna]")?;
                writeln!(s, "f0 = {}", a.f0)?;
                writeln!(s, "eps_r = {}", a.eps_r)?;
                writeln!(s, "h = {}", a.h)?;
                writeln!(s, "x_feed = {}", a.x_feed)?;
                let form = match a.form {
                    PermittivityForm::InverseRoot => "inverse-root",
                    PermittivityForm::Printed => "printed",
                };
                writeln!(s, "form = {form}")?;
                writeln!(s, "tolerance = {}", a.tolerance)?;
                let format = match a.format {
                    ReportFormat::Csv => "csv",
                    ReportFormat::Text => "text",
                };
                writeln!(s, "format = {format}")?;
            }
            Body::Validate(suites) => {
                writeln!(s, "\n[validate]")?;
                let names: Vec<_> = suites.iter().map(Suite::name).collect();
                writeln!(s, "suites = {}", names.join(", "))?;
            }
        }
        let has_outputs = matches!(&self.body, Body::Fdtd(_));
        if let Some(dir) = &self.out_dir {
            if !has_outputs {
                writeln!(s, "\n[outputs]")?;
            }
            writeln!(s, "dir = {}", dir.display())?;
        }
        f.write_str(&s)
    }
}

fn write_fdtd(s: &mut String, c: &FdtdConfig) -> fmt::Result {
    writeln!(s, "\n[grid]")?;
    writeln!(s, "cells = {}", join(&c.cells))?;
    writeln!(s, "dx = {}", c.dx)?;
    writeln!(s, "steps = {}", c.steps)?;
    writeln!(s, "\n[boundary]")?;
    match c.boundary {
        Boundary::Abc => writeln!(s, "type = abc")?,
        Boundary::Pml(n) => writeln!(s, "type = pml\nnpml = {n}")?,
    }
    writeln!(s, "\n[source]")?;
    match c.source.waveform {
        Waveform::Gaussian { t0, spread } => {
            writeln!(s, "waveform = gaussian\nt0 = {t0}\nspread = {spread}")?
        }
        Waveform::Sinusoid { freq, t0, spread } => writeln!(
            s,
            "waveform = sinusoid\nfreq = {freq}\nt0 = {t0}\nspread = {spread}"
        )?,
    }
    let injection = match c.source.injection {
        Injection::Soft => "soft",
        Injection::Hard => "hard",
    };
    writeln!(s, "injection = {injection}")?;
    writeln!(s, "amplitude = {}", c.source.amplitude)?;
    if let Some(p) = &c.position {
        writeln!(s, "position = {}", join(p))?;
    }
    if let Some(b) = &c.plane_wave {
        writeln!(s, "plane_wave = {}", join(b))?;
    }
    if !c.cylinders.is_empty() || c.sphere.is_some() {
        writeln!(s, "\n[objects]")?;
        for cy in &c.cylinders {
            writeln!(
                s,
                "cylinder = {}, {}, {}, {}, {}",
                cy.center[0], cy.center[1], cy.radius, cy.eps_r, cy.sigma
            )?;
        }
        if let Some(sp) = &c.sphere {
            writeln!(
                s,
                "sphere = {}, {}, {}, {}, {}, {}",
                sp.center[0], sp.center[1], sp.center[2], sp.radius, sp.eps_r, sp.sigma
            )?;
        }
    }
    writeln!(s, "\n[outputs]")?;
    if !c.snapshot_steps.is_empty() {
        writeln!(s, "snapshot_steps = {}", join(&c.snapshot_steps))?;
    }
    for p in &c.probes {
        writeln!(s, "probe = {}", join(p))?;
    }
    for sl in &c.slices {
        writeln!(
            s,
            "slice = {}, {}, {}, {}",
            sl.plane.name(),
            sl.offset,
            sl.component.name(),
            sl.step
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fdtd(c: &ScenarioConfig) -> &FdtdConfig {
        match &c.body {
            Body::Fdtd(f) => f,
            _ => panic!("not a field-solver config"),
        }
    }

    #[test]
    fn minimal_1d_file_gets_defaults() {
        let c: ScenarioConfig = "kind = fdtd1d\n[grid]\ncells = 200\ndx = 0.01\n"
            .parse()
            .unwrap();
        let f = fdtd(&c);
        assert_eq!(f.source.waveform, Waveform::gaussian(40.0, 12.0));
        assert_eq!(f.source.injection, Injection::Soft);
        assert_eq!(f.boundary, Boundary::Abc);
        assert_eq!(f.steps, 600);
    }

    #[test]
    fn unknown_key_names_key_and_line() {
        let err = "kind = fdtd1d\n[grid]\ncells = 200\n[source]\nsped = 12\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        match &err {
            ConfigError::UnknownKey { key, line, .. } => {
                assert_eq!(key, "sped");
                assert_eq!(*line, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        let msg = err.to_string();
        assert!(msg.contains("sped") && msg.contains("line 5"), "{msg}");
    }

    #[test]
    fn missing_and_mistyped_values() {
        let err = "kind = fdtd1d\n[grid]\ndx = 0.01\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(err.to_string().contains("[grid]"), "{err}");
        let err = "kind = fdtd2d\n[grid]\ndx = small\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(err, ConfigError::Type { line: 3, .. }), "{err:?}");
        let err = "[grid]\ncells = 10\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(err.to_string().contains("kind"), "{err}");
        let err = "kind = fdtd2d\n[source]\nwaveform = sinusoid\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(err.to_string().contains("freq"), "{err}");
    }

    #[test]
    fn cylinder_file_matches_benchmark_material() {
        let text = "kind = fdtd2d\n[objects]\ncylinder = 0.5, 0.5, 0.1, 30, 0.3\n";
        let c: ScenarioConfig = text.parse().unwrap();
        let f = fdtd(&c);
        assert_eq!(f.cells, vec![100, 100]);
        assert_eq!(f.boundary, Boundary::Pml(8));
        assert_eq!(
            f.cylinders,
            vec![CylinderSpec {
                center: [0.5, 0.5],
                radius: 0.1,
                eps_r: 30.0,
                sigma: 0.3
            }]
        );
    }

    #[test]
    fn positions_are_checked_against_the_grid() {
        let err = "kind = fdtd2d\n[outputs]\nprobe = 200, 5\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(err, ConfigError::Invalid(_)), "{err:?}");
        let err = "kind = fdtd1d\n[grid]\ncells = 50\n[boundary]\ntype = pml\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(matches!(err, ConfigError::Type { .. }), "{err:?}");
    }

    #[test]
    fn sections_must_fit_the_kind() {
        let err = "kind = antenna\n[grid]\ncells = 10\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(err.to_string().contains("[grid]"), "{err}");
        let err = "kind = fdtd1d\n[grid]\ncells = 10\ncells = 20\n"
            .parse::<ScenarioConfig>()
            .unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn round_trips() {
        let files = [
            "kind = fdtd1d\n[grid]\ncells = 200\n[outputs]\nprobe = 150\nsnapshot_steps = 100, 200\ndir = out/a\n",
            "kind = fdtd2d\n[source]\nwaveform = sinusoid\nfreq = 5e8\nt0 = 720\nspread = 240\nplane_wave = 14, 86, 14, 86\n[objects]\ncylinder = 0.5, 0.5, 0.1, 30, 0.3\n[outputs]\nprobe = 50, 50\nprobe = 60, 40\n",
            "kind = fdtd3d\n[grid]\ncells = 30, 30, 30\ndx = 0.005\n[boundary]\nnpml = 6\n[objects]\nsphere = 0.075, 0.075, 0.075, 0.03, 4, 0.01\n[source]\nplane_wave = 8, 22, 8, 22, 8, 22\n[outputs]\nslice = xy, 15, ez, 20\nslice = yz, 10, hx, 25\n",
            "kind = antenna\n[antenna]\nform = printed\nformat = csv\n",
            "kind = validate\n[validate]\nsuites = 1d, bessel\n[outputs]\ndir = reports\n",
        ];
        for text in files {
            let a: ScenarioConfig = text.parse().unwrap();
            let b: ScenarioConfig = a.to_string().parse().unwrap();
            assert_eq!(a, b, "{text}");
        }
    }
}
