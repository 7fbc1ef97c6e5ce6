//! Two-dimensional TM-mode (`Ez`, `Hx`, `Hy`) Yee solver.
//!
//! Lattice positions: `dz`/`ez` at nodes `(i, j)`, `hx[i][j]` at `(i, j+½)`,
//! `hy[i][j]` at `(i+½, j)`. The outermost nodes are held at zero (PEC walls);
//! an optional graded PML lines the inside of those walls.
//!
//! One step advances, in order: `dz` (with PML weights), the TF/SF `dz`
//! seams, any point source, `ez` from `dz` through the loss accumulator, the
//! incident line, then `hx`/`hy` with their PML curl accumulators and the
//! TF/SF `h` seams.

use rayon::prelude::*;

use crate::error::{FdtdError, Result};
use crate::field::Field2;
use crate::geometry::{paint_cylinder, CylinderSpec};
use crate::grid::GridSpec;
use crate::incident::IncidentLine;
use crate::material::{CompiledMaterials, MaterialMap};
use crate::pml::{build_pml_2d, PmlCoefficients2D};
use crate::probe::ProbeTrace;
use crate::source::{Injection, SourceSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct FieldState2D {
    pub dz: Field2,
    pub ez: Field2,
    pub hx: Field2,
    pub hy: Field2,
    /// PML curl accumulators for `hx` and `hy`.
    pub ihx: Field2,
    pub ihy: Field2,
    /// Conductivity loss accumulator of the `ez` recovery.
    pub iz: Field2,
}

impl FieldState2D {
    pub fn new(ni: usize, nj: usize) -> Self {
        let z = Field2::zeros(ni, nj);
        FieldState2D {
            dz: z.clone(),
            ez: z.clone(),
            hx: z.clone(),
            hy: z.clone(),
            ihx: z.clone(),
            ihy: z.clone(),
            iz: z,
        }
    }

    pub fn for_grid(grid: &GridSpec) -> Self {
        FieldState2D::new(grid.nodes(0), grid.nodes(1))
    }

    pub fn shape(&self) -> (usize, usize) {
        self.ez.shape()
    }

    fn first_non_finite(&self) -> Option<(&'static str, (usize, usize))> {
        [
            ("dz", &self.dz),
            ("ez", &self.ez),
            ("hx", &self.hx),
            ("hy", &self.hy),
        ]
        .into_iter()
        .find_map(|(name, f)| f.first_non_finite().map(|p| (name, p)))
    }

    /// `Σ (ez² + hx² + hy²)` over nodes with both indices in `lo..=hi`.
    pub fn energy_in(&self, lo: usize, hi: usize) -> f64 {
        let mut e = 0.0;
        for i in lo..=hi {
            for j in lo..=hi {
                let (a, b, c) = (self.ez.get(i, j), self.hx.get(i, j), self.hy.get(i, j));
                e += a * a + b * b + c * c;
            }
        }
        e
    }
}

/// `dz` sweep over interior nodes.
pub fn update_dz(st: &mut FieldState2D, pml: &PmlCoefficients2D) {
    let (ni, nj) = st.dz.shape();
    let (hx, hy) = (&st.hx, &st.hy);
    let (pi, pj) = (&pml.i, &pml.j);
    st.dz
        .as_mut_slice()
        .par_chunks_mut(nj)
        .enumerate()
        .skip(1)
        .take(ni - 2)
        .for_each(|(i, dz)| {
            let (hy_i, hy_m, hx_i) = (hy.row(i), hy.row(i - 1), hx.row(i));
            for j in 1..nj - 1 {
                let curl = hy_i[j] - hy_m[j] - hx_i[j] + hx_i[j - 1];
                dz[j] = pi.g3[i] * pj.g3[j] * dz[j] + 0.5 * pi.g2[i] * pj.g2[j] * curl;
            }
        });
}

/// `ez = ga·(dz − iz)`, `iz += gb·ez`.
pub fn update_ez(st: &mut FieldState2D, mat: &CompiledMaterials) {
    let (ga, gb) = (mat.ga(), mat.gb());
    st.ez
        .as_mut_slice()
        .par_iter_mut()
        .zip(st.iz.as_mut_slice().par_iter_mut())
        .zip(st.dz.as_slice().par_iter())
        .enumerate()
        .for_each(|(n, ((ez, iz), &dz))| {
            *ez = ga[n] * (dz - *iz);
            if gb[n] != 0.0 {
                *iz += gb[n] * *ez;
            }
        });
}

/// `hx` and `hy` sweeps with PML accumulators.
pub fn update_h(st: &mut FieldState2D, pml: &PmlCoefficients2D) {
    let (ni, nj) = st.ez.shape();
    let ez = &st.ez;
    let (pi, pj) = (&pml.i, &pml.j);
    st.hx
        .as_mut_slice()
        .par_chunks_mut(nj)
        .zip(st.ihx.as_mut_slice().par_chunks_mut(nj))
        .enumerate()
        .for_each(|(i, (hx, ihx))| {
            let e = ez.row(i);
            let g1 = pi.g1[i];
            for j in 0..nj - 1 {
                let curl = e[j] - e[j + 1];
                if g1 != 0.0 {
                    ihx[j] += curl;
                    hx[j] = pj.f3[j] * hx[j] + 0.5 * pj.f2[j] * (curl + g1 * ihx[j]);
                } else {
                    hx[j] = pj.f3[j] * hx[j] + 0.5 * pj.f2[j] * curl;
                }
            }
        });
    st.hy
        .as_mut_slice()
        .par_chunks_mut(nj)
        .zip(st.ihy.as_mut_slice().par_chunks_mut(nj))
        .enumerate()
        .take(ni - 1)
        .for_each(|(i, (hy, ihy))| {
            let (e, e1) = (ez.row(i), ez.row(i + 1));
            let (f2, f3) = (pi.f2[i], pi.f3[i]);
            for j in 0..nj {
                let curl = e1[j] - e[j];
                let g1 = pj.g1[j];
                if g1 != 0.0 {
                    ihy[j] += curl;
                    hy[j] = f3 * hy[j] + 0.5 * f2 * (curl + g1 * ihy[j]);
                } else {
                    hy[j] = f3 * hy[j] + 0.5 * f2 * curl;
                }
            }
        });
}

/// One source-free step: `dz`, `ez`, then `h`.
pub fn step_tm_2d(st: &mut FieldState2D, pml: &PmlCoefficients2D, mat: &CompiledMaterials) {
    update_dz(st, pml);
    update_ez(st, mat);
    update_h(st, pml);
}

/// Total-field box: nodes `ia..=ib` × `ja..=jb`. The plane wave travels
/// along `+j` with `Ez`/`Hx` polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TfsfBox2D {
    pub ia: usize,
    pub ib: usize,
    pub ja: usize,
    pub jb: usize,
}

impl TfsfBox2D {
    pub fn validate(&self, grid: &GridSpec, npml: usize) -> Result<()> {
        let check = |lo: usize, hi: usize, n: usize, axis: &str| -> Result<()> {
            let min = 2.max(npml + 1);
            let max = (n - 3).min(n - npml - 1);
            if !(lo >= min && lo < hi && hi <= max) {
                return Err(FdtdError::validation(format!(
                    "TF/SF bounds {lo}..={hi} along {axis} must satisfy {min} <= lo < hi <= {max}"
                )));
            }
            Ok(())
        };
        check(self.ia, self.ib, grid.cells()[0], "i")?;
        check(self.ja, self.jb, grid.cells()[1], "j")
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (self.ia..=self.ib).contains(&i) && (self.ja..=self.jb).contains(&j)
    }
}

/// `dz` corrections on the `j = ja` and `j = jb` rows. Uses `hx` of the
/// incident line at the half step preceding the current `dz` level.
pub fn tfsf_apply_dz(st: &mut FieldState2D, b: &TfsfBox2D, inc: &IncidentLine) {
    let lo = 0.5 * inc.hx(b.ja - 1);
    let hi = 0.5 * inc.hx(b.jb);
    for i in b.ia..=b.ib {
        *st.dz.at_mut(i, b.ja) += lo;
        *st.dz.at_mut(i, b.jb) -= hi;
    }
}

/// `hx` corrections just outside `ja`/`jb` and `hy` corrections just outside
/// `ia`/`ib`, using the incident `ez` at the current level.
pub fn tfsf_apply_h(st: &mut FieldState2D, b: &TfsfBox2D, inc: &IncidentLine) {
    let (lo, hi) = (0.5 * inc.ez(b.ja), 0.5 * inc.ez(b.jb));
    for i in b.ia..=b.ib {
        *st.hx.at_mut(i, b.ja - 1) += lo;
        *st.hx.at_mut(i, b.jb) -= hi;
    }
    for j in b.ja..=b.jb {
        let e = 0.5 * inc.ez(j);
        *st.hy.at_mut(b.ia - 1, j) -= e;
        *st.hy.at_mut(b.ib, j) += e;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Excitation2D {
    /// Source applied to `dz` at one node.
    Point { i: usize, j: usize },
    /// Plane wave injected on the boundary of a total-field box.
    PlaneWave(TfsfBox2D),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario2D {
    pub grid: GridSpec,
    pub npml: usize,
    pub source: SourceSpec,
    pub excitation: Excitation2D,
    pub cylinders: Vec<CylinderSpec>,
    pub probes: Vec<(usize, usize)>,
    pub snapshot_steps: Vec<usize>,
}

impl Scenario2D {
    /// Point source at the grid center, no objects, probes or snapshots.
    pub fn point_source(grid: GridSpec, npml: usize, source: SourceSpec) -> Self {
        let (i, j) = (grid.center(0), grid.center(1));
        Scenario2D {
            grid,
            npml,
            source,
            excitation: Excitation2D::Point { i, j },
            cylinders: Vec::new(),
            probes: Vec::new(),
            snapshot_steps: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.require_dims(2)?;
        self.source.validate()?;
        let (ni, nj) = (self.grid.nodes(0), self.grid.nodes(1));
        let interior = |i: usize, j: usize| i >= 1 && i + 1 < ni && j >= 1 && j + 1 < nj;
        match self.excitation {
            Excitation2D::Point { i, j } if !interior(i, j) => {
                return Err(FdtdError::validation(format!(
                    "source node ({i}, {j}) is not an interior node"
                )))
            }
            Excitation2D::PlaneWave(b) => b.validate(&self.grid, self.npml)?,
            _ => {}
        }
        if let Some(&(i, j)) = self.probes.iter().find(|&&(i, j)| i >= ni || j >= nj) {
            return Err(FdtdError::validation(format!(
                "probe ({i}, {j}) outside the grid"
            )));
        }
        Ok(())
    }

    /// Material map with every cylinder painted in, after checking each one
    /// fits inside the non-PML interior.
    pub fn materials(&self) -> Result<MaterialMap> {
        let (ni, nj) = (self.grid.nodes(0), self.grid.nodes(1));
        let mut map = MaterialMap::free_space(ni * nj);
        for c in &self.cylinders {
            crate::geometry::rasterize_cylinder(c, &self.grid, self.npml)?;
            paint_cylinder(&mut map, c, &self.grid);
        }
        Ok(map)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot2D {
    pub step: usize,
    pub ez: Field2,
}

/// A running 2D simulation.
#[derive(Debug, Clone)]
pub struct Sim2D {
    scenario: Scenario2D,
    state: FieldState2D,
    pml: PmlCoefficients2D,
    materials: CompiledMaterials,
    incident: Option<IncidentLine>,
    step: usize,
}

impl Sim2D {
    pub fn new(scenario: Scenario2D) -> Result<Self> {
        scenario.validate()?;
        let pml = build_pml_2d(scenario.npml, &scenario.grid)?;
        let materials = scenario.materials()?.compile(scenario.grid.dt())?;
        let incident = match scenario.excitation {
            Excitation2D::PlaneWave(_) => Some(IncidentLine::new(
                scenario.grid.nodes(1),
                scenario.source,
                scenario.grid.dt(),
            )?),
            Excitation2D::Point { .. } => None,
        };
        Ok(Sim2D {
            state: FieldState2D::for_grid(&scenario.grid),
            scenario,
            pml,
            materials,
            incident,
            step: 0,
        })
    }

    pub fn state(&self) -> &FieldState2D {
        &self.state
    }

    pub fn incident(&self) -> Option<&IncidentLine> {
        self.incident.as_ref()
    }

    pub fn scenario(&self) -> &Scenario2D {
        &self.scenario
    }

    pub fn steps_done(&self) -> usize {
        self.step
    }

    pub fn advance(&mut self) -> Result<()> {
        let n = self.step;
        let dt = self.scenario.grid.dt();
        let st = &mut self.state;
        update_dz(st, &self.pml);
        match (self.scenario.excitation, self.incident.as_mut()) {
            (Excitation2D::PlaneWave(b), Some(inc)) => {
                tfsf_apply_dz(st, &b, inc);
                update_ez(st, &self.materials);
                inc.advance(n);
                update_h(st, &self.pml);
                tfsf_apply_h(st, &b, inc);
            }
            (Excitation2D::Point { i, j }, _) => {
                let src = &self.scenario.source;
                let at = st.dz.at_mut(i, j);
                match src.injection {
                    Injection::Hard => *at = src.sample(n, dt),
                    Injection::Soft => *at += src.sample(n, dt),
                }
                update_ez(st, &self.materials);
                update_h(st, &self.pml);
            }
            (Excitation2D::PlaneWave(_), None) => unreachable!("plane wave without incident line"),
        }
        if let Some((field, (i, j))) = st.first_non_finite() {
            return Err(FdtdError::NonFinite {
                step: n,
                field,
                index: vec![i, j],
            });
        }
        self.step += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Run2D {
    pub probes: Vec<ProbeTrace>,
    pub snapshots: Vec<Snapshot2D>,
    pub final_state: FieldState2D,
}

/// Runs `grid.n_steps` steps, recording `ez` at each probe after every step
/// and full `ez` snapshots after the requested steps.
pub fn run_2d(scenario: &Scenario2D) -> Result<Run2D> {
    let n_steps = scenario.grid.n_steps();
    let mut probes: Vec<ProbeTrace> = scenario
        .probes
        .iter()
        .map(|&(i, j)| ProbeTrace::new(vec![i, j], n_steps))
        .collect();
    let mut snapshots = Vec::new();
    let mut sim = Sim2D::new(scenario.clone())?;
    for n in 0..n_steps {
        sim.advance()?;
        for p in &mut probes {
            p.values
                .push(sim.state.ez.get(p.position[0], p.position[1]));
        }
        if scenario.snapshot_steps.contains(&n) {
            snapshots.push(Snapshot2D {
                step: n,
                ez: sim.state.ez.clone(),
            });
        }
    }
    Ok(Run2D {
        probes,
        snapshots,
        final_state: sim.state,
    })
}

/// Radius (in cells, from `center`) of the annulus with the largest
/// `sqrt(r)·mean|ez|`, searched over `radii`; the weight undoes cylindrical
/// spreading.
pub fn ring_radius(
    ez: &Field2,
    center: (usize, usize),
    radii: std::ops::RangeInclusive<usize>,
) -> usize {
    let max_radius = *radii.end();
    let (ni, nj) = ez.shape();
    let mut sum = vec![0.0; max_radius + 1];
    let mut count = vec![0usize; max_radius + 1];
    for i in 0..ni {
        for j in 0..nj {
            let (di, dj) = (i as f64 - center.0 as f64, j as f64 - center.1 as f64);
            let r = (di * di + dj * dj).sqrt().round() as usize;
            if r <= max_radius {
                sum[r] += ez.get(i, j).abs();
                count[r] += 1;
            }
        }
    }
    let score = |r: usize| (r as f64).sqrt() * sum[r] / count[r] as f64;
    radii
        .filter(|&r| count[r] > 0)
        .max_by(|&a, &b| score(a).total_cmp(&score(b)))
        .unwrap_or(0)
}
