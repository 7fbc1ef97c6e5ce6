//! Three-dimensional Yee solver in the flux-density formulation.
//!
//! Lattice positions (cell `(i, j, k)`):
//!
//! ```text
//! Ex (i+½, j, k)    Ey (i, j+½, k)    Ez (i, j, k+½)
//! Hx (i, j+½, k+½)  Hy (i+½, j, k+½)  Hz (i+½, j+½, k)
//! ```
//!
//! Every component is stored on an `(n+1)³` array; entries past the last
//! half node are never touched. Tangential `E` on the outer faces stays zero.
//! A step updates `D`, applies `D` seams and sources, recovers `E`, advances
//! the incident line, updates `H` and applies the `H` seams.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FdtdError, Result};
use crate::field::{Field2, Field3};
use crate::geometry::{rasterize_sphere, SphereSpec};
use crate::grid::GridSpec;
use crate::incident::IncidentLine;
use crate::material::CompiledMaterials;
use crate::pml::{build_pml_3d, AxisPml, PmlCoefficients3D};
use crate::probe::ProbeTrace;
use crate::source::{Injection, SourceSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct FieldState3D {
    pub dx: Field3,
    pub dy: Field3,
    pub dz: Field3,
    pub ex: Field3,
    pub ey: Field3,
    pub ez: Field3,
    pub hx: Field3,
    pub hy: Field3,
    pub hz: Field3,
    /// PML curl accumulators of the `D` updates.
    pub idx: Field3,
    pub idy: Field3,
    pub idz: Field3,
    /// PML curl accumulators of the `H` updates.
    pub ihx: Field3,
    pub ihy: Field3,
    pub ihz: Field3,
    /// Conductivity loss accumulators of the `E` recovery.
    pub ix: Field3,
    pub iy: Field3,
    pub iz: Field3,
}

impl FieldState3D {
    pub fn new(ni: usize, nj: usize, nk: usize) -> Self {
        let z = Field3::zeros(ni, nj, nk);
        FieldState3D {
            dx: z.clone(),
            dy: z.clone(),
            dz: z.clone(),
            ex: z.clone(),
            ey: z.clone(),
            ez: z.clone(),
            hx: z.clone(),
            hy: z.clone(),
            hz: z.clone(),
            idx: z.clone(),
            idy: z.clone(),
            idz: z.clone(),
            ihx: z.clone(),
            ihy: z.clone(),
            ihz: z.clone(),
            ix: z.clone(),
            iy: z.clone(),
            iz: z,
        }
    }

    pub fn for_grid(grid: &GridSpec) -> Self {
        FieldState3D::new(grid.nodes(0), grid.nodes(1), grid.nodes(2))
    }

    pub fn component(&self, c: Component) -> &Field3 {
        match c {
            Component::Ex => &self.ex,
            Component::Ey => &self.ey,
            Component::Ez => &self.ez,
            Component::Hx => &self.hx,
            Component::Hy => &self.hy,
            Component::Hz => &self.hz,
        }
    }

    /// Largest magnitude over all six field components.
    pub fn max_abs(&self) -> f64 {
        [&self.ex, &self.ey, &self.ez, &self.hx, &self.hy, &self.hz]
            .iter()
            .map(|f| f.max_abs())
            .fold(0.0, f64::max)
    }

    fn first_non_finite(&self) -> Option<(&'static str, (usize, usize, usize))> {
        [
            ("ex", &self.ex),
            ("ey", &self.ey),
            ("ez", &self.ez),
            ("hx", &self.hx),
            ("hy", &self.hy),
            ("hz", &self.hz),
        ]
        .into_iter()
        .find_map(|(name, f)| f.first_non_finite().map(|p| (name, p)))
    }
}

/// Electric material coefficients at the three `E` positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Materials3D {
    pub x: CompiledMaterials,
    pub y: CompiledMaterials,
    pub z: CompiledMaterials,
}

impl Materials3D {
    pub fn free_space(len: usize) -> Self {
        Materials3D {
            x: CompiledMaterials::free_space(len),
            y: CompiledMaterials::free_space(len),
            z: CompiledMaterials::free_space(len),
        }
    }
}

fn plane(f: &Field3, i: usize) -> &[f64] {
    let pl = f.plane_len();
    &f.as_slice()[i * pl..(i + 1) * pl]
}

/// `X = a3·b3·X + ½·a2·b2·(curl + c1·acc)`, with the accumulator only touched
/// inside the layer so the interior reduces to the plain stencil.
#[inline(always)]
fn pml_update(x: &mut f64, acc: &mut f64, curl: f64, w3: f64, w2: f64, c1: f64) {
    if c1 != 0.0 {
        *acc += curl;
        *x = w3 * *x + 0.5 * w2 * (curl + c1 * *acc);
    } else {
        *x = w3 * *x + 0.5 * w2 * curl;
    }
}

/// Shared driver: runs `body(i, out_plane, acc_plane)` for `i` in `range`
/// in parallel over `i`-planes.
fn sweep<F>(out: &mut Field3, acc: &mut Field3, range: std::ops::Range<usize>, body: F)
where
    F: Fn(usize, &mut [f64], &mut [f64]) + Sync,
{
    let pl = out.plane_len();
    out.as_mut_slice()
        .par_chunks_mut(pl)
        .zip(acc.as_mut_slice().par_chunks_mut(pl))
        .enumerate()
        .skip(range.start)
        .take(range.end - range.start)
        .for_each(|(i, (o, a))| body(i, o, a));
}

/// All three `D` updates.
pub fn update_d(st: &mut FieldState3D, pml: &PmlCoefficients3D) {
    let (ni, nj, nk) = st.ex.shape();
    let (pi, pj, pk): (&AxisPml, &AxisPml, &AxisPml) = (&pml.i, &pml.j, &pml.k);
    let (hx, hy, hz) = (&st.hx, &st.hy, &st.hz);

    sweep(&mut st.dx, &mut st.idx, 0..ni - 1, |i, d, acc| {
        let (hy_i, hz_i) = (plane(hy, i), plane(hz, i));
        let c1 = pi.f1[i];
        for j in 1..nj - 1 {
            for k in 1..nk - 1 {
                let p = j * nk + k;
                let curl = hz_i[p] - hz_i[p - nk] - hy_i[p] + hy_i[p - 1];
                pml_update(
                    &mut d[p],
                    &mut acc[p],
                    curl,
                    pj.g3[j] * pk.g3[k],
                    pj.g2[j] * pk.g2[k],
                    c1,
                );
            }
        }
    });
    sweep(&mut st.dy, &mut st.idy, 1..ni - 1, |i, d, acc| {
        let (hx_i, hz_i, hz_m) = (plane(hx, i), plane(hz, i), plane(hz, i - 1));
        for j in 0..nj - 1 {
            let c1 = pj.f1[j];
            for k in 1..nk - 1 {
                let p = j * nk + k;
                let curl = hx_i[p] - hx_i[p - 1] - hz_i[p] + hz_m[p];
                pml_update(
                    &mut d[p],
                    &mut acc[p],
                    curl,
                    pi.g3[i] * pk.g3[k],
                    pi.g2[i] * pk.g2[k],
                    c1,
                );
            }
        }
    });
    sweep(&mut st.dz, &mut st.idz, 1..ni - 1, |i, d, acc| {
        let (hy_i, hy_m, hx_i) = (plane(hy, i), plane(hy, i - 1), plane(hx, i));
        for j in 1..nj - 1 {
            for k in 0..nk - 1 {
                let p = j * nk + k;
                let curl = hy_i[p] - hy_m[p] - hx_i[p] + hx_i[p - nk];
                pml_update(
                    &mut d[p],
                    &mut acc[p],
                    curl,
                    pi.g3[i] * pj.g3[j],
                    pi.g2[i] * pj.g2[j],
                    pk.f1[k],
                );
            }
        }
    });
}

fn e_from_d(e: &mut Field3, loss: &mut Field3, d: &Field3, mat: &CompiledMaterials) {
    let (ga, gb) = (mat.ga(), mat.gb());
    e.as_mut_slice()
        .par_iter_mut()
        .zip(loss.as_mut_slice().par_iter_mut())
        .zip(d.as_slice().par_iter())
        .enumerate()
        .for_each(|(n, ((e, acc), &d))| {
            *e = ga[n] * (d - *acc);
            if gb[n] != 0.0 {
                *acc += gb[n] * *e;
            }
        });
}

/// `E = ga·(D − I)`, `I += gb·E` for each component.
pub fn update_e(st: &mut FieldState3D, mat: &Materials3D) {
    e_from_d(&mut st.ex, &mut st.ix, &st.dx, &mat.x);
    e_from_d(&mut st.ey, &mut st.iy, &st.dy, &mat.y);
    e_from_d(&mut st.ez, &mut st.iz, &st.dz, &mat.z);
}

/// All three `H` updates.
pub fn update_h(st: &mut FieldState3D, pml: &PmlCoefficients3D) {
    let (ni, nj, nk) = st.ex.shape();
    let (pi, pj, pk) = (&pml.i, &pml.j, &pml.k);
    let (ex, ey, ez) = (&st.ex, &st.ey, &st.ez);

    sweep(&mut st.hx, &mut st.ihx, 0..ni, |i, h, acc| {
        let (ey_i, ez_i) = (plane(ey, i), plane(ez, i));
        let c1 = pi.g1[i];
        for j in 0..nj - 1 {
            for k in 0..nk - 1 {
                let p = j * nk + k;
                let curl = ey_i[p + 1] - ey_i[p] - ez_i[p + nk] + ez_i[p];
                pml_update(
                    &mut h[p],
                    &mut acc[p],
                    curl,
                    pj.f3[j] * pk.f3[k],
                    pj.f2[j] * pk.f2[k],
                    c1,
                );
            }
        }
    });
    sweep(&mut st.hy, &mut st.ihy, 0..ni - 1, |i, h, acc| {
        let (ez_i, ez_p, ex_i) = (plane(ez, i), plane(ez, i + 1), plane(ex, i));
        for j in 0..nj {
            let c1 = pj.g1[j];
            for k in 0..nk - 1 {
                let p = j * nk + k;
                let curl = ez_p[p] - ez_i[p] - ex_i[p + 1] + ex_i[p];
                pml_update(
                    &mut h[p],
                    &mut acc[p],
                    curl,
                    pi.f3[i] * pk.f3[k],
                    pi.f2[i] * pk.f2[k],
                    c1,
                );
            }
        }
    });
    sweep(&mut st.hz, &mut st.ihz, 0..ni - 1, |i, h, acc| {
        let (ex_i, ey_i, ey_p) = (plane(ex, i), plane(ey, i), plane(ey, i + 1));
        for j in 0..nj - 1 {
            for k in 0..nk {
                let p = j * nk + k;
                let curl = ex_i[p + nk] - ex_i[p] - ey_p[p] + ey_i[p];
                pml_update(
                    &mut h[p],
                    &mut acc[p],
                    curl,
                    pi.f3[i] * pj.f3[j],
                    pi.f2[i] * pj.f2[j],
                    pk.g1[k],
                );
            }
        }
    });
}

/// One source-free step.
pub fn step_3d(st: &mut FieldState3D, pml: &PmlCoefficients3D, mat: &Materials3D) {
    update_d(st, pml);
    update_e(st, mat);
    update_h(st, pml);
}

/// Total-field cuboid of nodes `ia..=ib` × `ja..=jb` × `ka..=kb`. The plane
/// wave travels along `+j` with `Ez`/`Hx` polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TfsfBox3D {
    pub ia: usize,
    pub ib: usize,
    pub ja: usize,
    pub jb: usize,
    pub ka: usize,
    pub kb: usize,
}

impl TfsfBox3D {
    /// Every face must sit at least one node inside the non-PML interior.
    pub fn validate(&self, grid: &GridSpec, npml: usize) -> Result<()> {
        let axes = [
            (self.ia, self.ib, "i"),
            (self.ja, self.jb, "j"),
            (self.ka, self.kb, "k"),
        ];
        for (axis, (lo, hi, name)) in axes.into_iter().enumerate() {
            let n = grid.cells()[axis];
            let min = 2.max(npml + 1);
            let max = (n - 3).min(n - npml - 1);
            if !(lo >= min && lo < hi && hi <= max) {
                return Err(FdtdError::validation(format!(
                    "TF/SF bounds {lo}..={hi} along {name} must satisfy {min} <= lo < hi <= {max}"
                )));
            }
        }
        Ok(())
    }
}

/// `D` seam corrections: `Dz` on the `j` faces, `Dy` on the `k` faces.
pub fn tfsf_apply_d(st: &mut FieldState3D, b: &TfsfBox3D, inc: &IncidentLine) {
    let (lo, hi) = (0.5 * inc.hx(b.ja - 1), 0.5 * inc.hx(b.jb));
    for i in b.ia..=b.ib {
        for k in b.ka..b.kb {
            *st.dz.at_mut(i, b.ja, k) += lo;
            *st.dz.at_mut(i, b.jb, k) -= hi;
        }
    }
    for i in b.ia..=b.ib {
        for j in b.ja..b.jb {
            let h = 0.5 * inc.hx(j);
            *st.dy.at_mut(i, j, b.ka) -= h;
            *st.dy.at_mut(i, j, b.kb) += h;
        }
    }
}

/// `H` seam corrections: `Hx` just outside the `j` faces, `Hy` just outside
/// the `i` faces.
pub fn tfsf_apply_h(st: &mut FieldState3D, b: &TfsfBox3D, inc: &IncidentLine) {
    let (lo, hi) = (0.5 * inc.ez(b.ja), 0.5 * inc.ez(b.jb));
    for i in b.ia..=b.ib {
        for k in b.ka..b.kb {
            *st.hx.at_mut(i, b.ja - 1, k) += lo;
            *st.hx.at_mut(i, b.jb, k) -= hi;
        }
    }
    for j in b.ja..=b.jb {
        let e = 0.5 * inc.ez(j);
        for k in b.ka..b.kb {
            *st.hy.at_mut(b.ia - 1, j, k) -= e;
            *st.hy.at_mut(b.ib, j, k) += e;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Ex,
    Ey,
    Ez,
    Hx,
    Hy,
    Hz,
}

impl Component {
    pub fn name(&self) -> &'static str {
        match self {
            Component::Ex => "ex",
            Component::Ey => "ey",
            Component::Ez => "ez",
            Component::Hx => "hx",
            Component::Hy => "hy",
            Component::Hz => "hz",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    /// Constant `k`; slice indexed `(i, j)`.
    Xy,
    /// Constant `j`; slice indexed `(i, k)`.
    Xz,
    /// Constant `i`; slice indexed `(j, k)`.
    Yz,
}

impl Plane {
    pub fn name(&self) -> &'static str {
        match self {
            Plane::Xy => "xy",
            Plane::Xz => "xz",
            Plane::Yz => "yz",
        }
    }

    fn normal_axis(&self) -> usize {
        match self {
            Plane::Xy => 2,
            Plane::Xz => 1,
            Plane::Yz => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub plane: Plane,
    pub offset: usize,
    pub component: Component,
    pub step: usize,
}

/// Copies one lattice plane of `f` into a 2D array.
pub fn extract_slice(f: &Field3, plane: Plane, offset: usize) -> Field2 {
    let (ni, nj, nk) = f.shape();
    match plane {
        Plane::Xy => {
            let mut out = Field2::zeros(ni, nj);
            for i in 0..ni {
                for j in 0..nj {
                    out.set(i, j, f.get(i, j, offset));
                }
            }
            out
        }
        Plane::Xz => {
            let mut out = Field2::zeros(ni, nk);
            for i in 0..ni {
                for k in 0..nk {
                    out.set(i, k, f.get(i, offset, k));
                }
            }
            out
        }
        Plane::Yz => {
            let mut out = Field2::zeros(nj, nk);
            for j in 0..nj {
                for k in 0..nk {
                    out.set(j, k, f.get(offset, j, k));
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Excitation3D {
    /// Source applied to `dz` at one `Ez` position.
    Point {
        i: usize,
        j: usize,
        k: usize,
    },
    PlaneWave(TfsfBox3D),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario3D {
    pub grid: GridSpec,
    pub npml: usize,
    pub source: SourceSpec,
    pub excitation: Excitation3D,
    pub sphere: Option<SphereSpec>,
    /// `Ez` probe positions.
    pub probes: Vec<[usize; 3]>,
    pub slices: Vec<SliceSpec>,
}

impl Scenario3D {
    pub fn point_source(grid: GridSpec, npml: usize, source: SourceSpec) -> Self {
        let (i, j, k) = (grid.center(0), grid.center(1), grid.center(2));
        Scenario3D {
            grid,
            npml,
            source,
            excitation: Excitation3D::Point { i, j, k },
            sphere: None,
            probes: Vec::new(),
            slices: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.require_dims(3)?;
        self.source.validate()?;
        let n = [self.grid.nodes(0), self.grid.nodes(1), self.grid.nodes(2)];
        match self.excitation {
            Excitation3D::Point { i, j, k } => {
                if !(i >= 1 && i + 1 < n[0] && j >= 1 && j + 1 < n[1] && k + 1 < n[2]) {
                    return Err(FdtdError::validation(format!(
                        "source ({i}, {j}, {k}) is not an interior Ez position"
                    )));
                }
            }
            Excitation3D::PlaneWave(b) => b.validate(&self.grid, self.npml)?,
        }
        if let Some(p) = self
            .probes
            .iter()
            .find(|p| p.iter().zip(n).any(|(&a, m)| a >= m))
        {
            return Err(FdtdError::validation(format!(
                "probe {p:?} outside the grid"
            )));
        }
        if let Some(s) = self
            .slices
            .iter()
            .find(|s| s.offset >= n[s.plane.normal_axis()])
        {
            return Err(FdtdError::validation(format!(
                "{} slice offset {} outside the grid",
                s.plane.name(),
                s.offset
            )));
        }
        Ok(())
    }

    pub fn materials(&self) -> Result<Materials3D> {
        let len = self.grid.nodes(0) * self.grid.nodes(1) * self.grid.nodes(2);
        match &self.sphere {
            None => Ok(Materials3D::free_space(len)),
            Some(s) => {
                let maps = rasterize_sphere(s, &self.grid, self.npml)?;
                let dt = self.grid.dt();
                Ok(Materials3D {
                    x: maps.x.compile(dt)?,
                    y: maps.y.compile(dt)?,
                    z: maps.z.compile(dt)?,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Slice3D {
    pub spec: SliceSpec,
    pub data: Field2,
}

#[derive(Debug, Clone)]
pub struct Sim3D {
    scenario: Scenario3D,
    state: FieldState3D,
    pml: PmlCoefficients3D,
    materials: Materials3D,
    incident: Option<IncidentLine>,
    step: usize,
}

impl Sim3D {
    pub fn new(scenario: Scenario3D) -> Result<Self> {
        scenario.validate()?;
        let pml = build_pml_3d(scenario.npml, &scenario.grid)?;
        let materials = scenario.materials()?;
        let incident = match scenario.excitation {
            Excitation3D::PlaneWave(_) => Some(IncidentLine::new(
                scenario.grid.nodes(1),
                scenario.source,
                scenario.grid.dt(),
            )?),
            Excitation3D::Point { .. } => None,
        };
        Ok(Sim3D {
            state: FieldState3D::for_grid(&scenario.grid),
            scenario,
            pml,
            materials,
            incident,
            step: 0,
        })
    }

    pub fn state(&self) -> &FieldState3D {
        &self.state
    }

    pub fn incident(&self) -> Option<&IncidentLine> {
        self.incident.as_ref()
    }

    pub fn steps_done(&self) -> usize {
        self.step
    }

    pub fn advance(&mut self) -> Result<()> {
        let n = self.step;
        let dt = self.scenario.grid.dt();
        let st = &mut self.state;
        update_d(st, &self.pml);
        match (self.scenario.excitation, self.incident.as_mut()) {
            (Excitation3D::PlaneWave(b), Some(inc)) => {
                tfsf_apply_d(st, &b, inc);
                update_e(st, &self.materials);
                inc.advance(n);
                update_h(st, &self.pml);
                tfsf_apply_h(st, &b, inc);
            }
            (Excitation3D::Point { i, j, k }, _) => {
                let src = &self.scenario.source;
                let at = st.dz.at_mut(i, j, k);
                match src.injection {
                    Injection::Hard => *at = src.sample(n, dt),
                    Injection::Soft => *at += src.sample(n, dt),
                }
                update_e(st, &self.materials);
                update_h(st, &self.pml);
            }
            (Excitation3D::PlaneWave(_), None) => unreachable!("plane wave without incident line"),
        }
        if let Some((field, (i, j, k))) = st.first_non_finite() {
            return Err(FdtdError::NonFinite {
                step: n,
                field,
                index: vec![i, j, k],
            });
        }
        self.step += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Run3D {
    pub probes: Vec<ProbeTrace>,
    pub slices: Vec<Slice3D>,
    pub final_state: FieldState3D,
}

pub fn run_3d(scenario: &Scenario3D) -> Result<Run3D> {
    let n_steps = scenario.grid.n_steps();
    let mut probes: Vec<ProbeTrace> = scenario
        .probes
        .iter()
        .map(|p| ProbeTrace::new(p.to_vec(), n_steps))
        .collect();
    let mut slices = Vec::new();
    let mut sim = Sim3D::new(scenario.clone())?;
    for n in 0..n_steps {
        sim.advance()?;
        for p in &mut probes {
            let q = &p.position;
            p.values.push(sim.state.ez.get(q[0], q[1], q[2]));
        }
        for spec in scenario.slices.iter().filter(|s| s.step == n) {
            slices.push(Slice3D {
                spec: *spec,
                data: extract_slice(sim.state.component(spec.component), spec.plane, spec.offset),
            });
        }
    }
    Ok(Run3D {
        probes,
        slices,
        final_state: sim.state,
    })
}

/// Largest deviation from the mirror symmetries `x ↔ −x`, `y ↔ −y` about
/// node `(c, c)` and from the `x ↔ y` exchange, over `ez`, `hx` and `hy`,
/// for a source on the `Ez` line through that node.
pub fn symmetry_deviation(st: &FieldState3D, c: usize) -> f64 {
    let (ni, nj, nk) = st.ez.shape();
    let n = 2 * c;
    assert!(ni == n + 1 && nj == n + 1, "center must be the middle node");
    let mut dev: f64 = 0.0;
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..nk {
                let e = st.ez.get(i, j, k);
                dev = dev.max((e - st.ez.get(n - i, j, k)).abs());
                dev = dev.max((e - st.ez.get(i, n - j, k)).abs());
                dev = dev.max((e - st.ez.get(j, i, k)).abs());
                if j < n {
                    // hx at (i, j+½): even in x, odd in y, swaps with −hy
                    let h = st.hx.get(i, j, k);
                    dev = dev.max((h - st.hx.get(n - i, j, k)).abs());
                    dev = dev.max((h + st.hx.get(i, n - 1 - j, k)).abs());
                    dev = dev.max((h + st.hy.get(j, i, k)).abs());
                }
            }
        }
    }
    dev
}

/// Radius (cells) of the spherical shell with the largest `r·mean|ez|` about
/// `center`, searched over `radii`. The `r` weight undoes spherical
/// spreading; starting the search a few cells out skips the static field a
/// soft source leaves behind.
pub fn shell_radius(
    ez: &Field3,
    center: [usize; 3],
    radii: std::ops::RangeInclusive<usize>,
) -> usize {
    let max_radius = *radii.end();
    let (ni, nj, nk) = ez.shape();
    let mut sum = vec![0.0; max_radius + 1];
    let mut count = vec![0usize; max_radius + 1];
    for i in 0..ni {
        for j in 0..nj {
            for k in 0..nk {
                let d = [
                    i as f64 - center[0] as f64,
                    j as f64 - center[1] as f64,
                    k as f64 - center[2] as f64,
                ];
                let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt().round() as usize;
                if r <= max_radius {
                    sum[r] += ez.get(i, j, k).abs();
                    count[r] += 1;
                }
            }
        }
    }
    let score = |r: usize| r as f64 * sum[r] / count[r] as f64;
    radii
        .filter(|&r| count[r] > 0)
        .max_by(|&a, &b| score(a).total_cmp(&score(b)))
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::relative_l2;
    use crate::solver2d::ring_radius;
    use crate::source::Waveform;
    use crate::validate::{plain_step_3d as plain_step, random_state_3d as random_state};

    fn grid(n: usize, steps: usize) -> GridSpec {
        GridSpec::new(&[n, n, n], 0.01, steps).unwrap()
    }

    #[test]
    fn zero_state_stays_zero() {
        let g = grid(20, 1);
        let pml = build_pml_3d(5, &g).unwrap();
        let mat = Materials3D::free_space(21 * 21 * 21);
        let mut st = FieldState3D::for_grid(&g);
        for _ in 0..3 {
            step_3d(&mut st, &pml, &mat);
        }
        assert_eq!(st.max_abs(), 0.0);
    }

    #[test]
    fn identity_pml_matches_plain_stencil_bitwise() {
        let g = grid(16, 1);
        let pml = build_pml_3d(0, &g).unwrap();
        let mat = Materials3D::free_space(17 * 17 * 17);
        let mut a = random_state(17, 9);
        let mut b = a.clone();
        for _ in 0..10 {
            step_3d(&mut a, &pml, &mat);
            plain_step(&mut b);
        }
        for c in [
            Component::Ex,
            Component::Ey,
            Component::Ez,
            Component::Hx,
            Component::Hy,
            Component::Hz,
        ] {
            let (x, y) = (a.component(c), b.component(c));
            assert!(
                x.as_slice()
                    .iter()
                    .zip(y.as_slice())
                    .all(|(p, q)| p.to_bits() == q.to_bits()),
                "{c:?}"
            );
        }
    }

    #[test]
    fn impulse_keeps_symmetry() {
        let g = grid(20, 1);
        let pml = build_pml_3d(0, &g).unwrap();
        let mat = Materials3D::free_space(21 * 21 * 21);
        let mut st = FieldState3D::for_grid(&g);
        st.dz.set(10, 10, 10, 1.0);
        st.ez.set(10, 10, 10, 1.0);
        for _ in 0..60 {
            step_3d(&mut st, &pml, &mat);
            assert!(symmetry_deviation(&st, 10) < 1e-12);
        }
        assert!(st.max_abs() > 0.0);
    }

    /// Step-to-step change of `ez`; differencing removes the static field a
    /// soft source leaves around itself.
    fn ez_change(a: &Field3, b: &Field3) -> Field3 {
        let (ni, nj, nk) = a.shape();
        let mut d = Field3::zeros(ni, nj, nk);
        for ((o, x), y) in d
            .as_mut_slice()
            .iter_mut()
            .zip(a.as_slice())
            .zip(b.as_slice())
        {
            *o = y - x;
        }
        d
    }

    #[test]
    fn shell_expands_half_a_cell_per_step() {
        let g = grid(60, 51);
        let mut scn =
            Scenario3D::point_source(g, 0, SourceSpec::soft(Waveform::gaussian(20.0, 6.0)));
        scn.slices = [49, 50]
            .map(|step| SliceSpec {
                plane: Plane::Xy,
                offset: 30,
                component: Component::Ez,
                step,
            })
            .to_vec();
        let mut sim = Sim3D::new(scn.clone()).unwrap();
        for _ in 0..50 {
            sim.advance().unwrap();
        }
        let before = sim.state().ez.clone();
        sim.advance().unwrap();
        // 30 steps after the pulse peak
        let change = ez_change(&before, &sim.state().ez);
        let r = shell_radius(&change, [30, 30, 30], 2..=28);
        assert!((r as i64 - 15).abs() <= 2, "shell radius {r}");
        let run = run_3d(&scn).unwrap();
        assert_eq!(run.final_state, *sim.state());
        let (a, b) = (&run.slices[0].data, &run.slices[1].data);
        let mut diff = Field2::zeros(61, 61);
        for ((o, x), y) in diff
            .as_mut_slice()
            .iter_mut()
            .zip(a.as_slice())
            .zip(b.as_slice())
        {
            *o = y - x;
        }
        let ring = ring_radius(&diff, (30, 30), 2..=28);
        assert!((ring as i64 - 15).abs() <= 2, "ring radius {ring}");
    }

    #[test]
    fn tfsf_zero_incident_is_inert() {
        let g = grid(30, 1);
        let b = TfsfBox3D {
            ia: 8,
            ib: 22,
            ja: 8,
            jb: 22,
            ka: 8,
            kb: 22,
        };
        let inc =
            IncidentLine::new(31, SourceSpec::hard(Waveform::gaussian(20.0, 6.0)), g.dt()).unwrap();
        let mut st = random_state(31, 4);
        let before = st.clone();
        tfsf_apply_d(&mut st, &b, &inc);
        tfsf_apply_h(&mut st, &b, &inc);
        assert_eq!(st, before);
    }

    #[test]
    fn tfsf_box_validation() {
        let g = grid(40, 1);
        let ok = TfsfBox3D {
            ia: 10,
            ib: 30,
            ja: 10,
            jb: 30,
            ka: 10,
            kb: 30,
        };
        assert!(ok.validate(&g, 8).is_ok());
        assert!(TfsfBox3D { ka: 8, ..ok }.validate(&g, 8).is_err());
        assert!(TfsfBox3D { kb: 32, ..ok }.validate(&g, 8).is_err());
        assert!(TfsfBox3D {
            ia: 20,
            ib: 20,
            ..ok
        }
        .validate(&g, 8)
        .is_err());
    }

    fn plane_wave_scenario() -> (Scenario3D, TfsfBox3D) {
        let g = grid(40, 260);
        let b = TfsfBox3D {
            ia: 9,
            ib: 31,
            ja: 9,
            jb: 31,
            ka: 9,
            kb: 31,
        };
        let mut scn =
            Scenario3D::point_source(g, 7, SourceSpec::hard(Waveform::gaussian(20.0, 6.0)));
        scn.excitation = Excitation3D::PlaneWave(b);
        (scn, b)
    }

    #[test]
    fn empty_box_leaks_little_and_follows_incident() {
        let (scn, b) = plane_wave_scenario();
        let mut sim = Sim3D::new(scn).unwrap();
        let (mut leak, mut peak): (f64, f64) = (0.0, 0.0);
        let (mut axis, mut reference) = (Vec::new(), Vec::new());
        let inside = |i: usize, j: usize, k: usize| {
            (b.ia..=b.ib).contains(&i) && (b.ja..=b.jb).contains(&j) && (b.ka..b.kb).contains(&k)
        };
        for _ in 0..260 {
            sim.advance().unwrap();
            let ez = &sim.state().ez;
            let (ni, nj, nk) = ez.shape();
            for i in 0..ni {
                for j in 0..nj {
                    for k in 0..nk - 1 {
                        let v = ez.get(i, j, k).abs();
                        if inside(i, j, k) {
                            peak = peak.max(v);
                        } else {
                            leak = leak.max(v);
                        }
                    }
                }
            }
            axis.push(ez.get(20, 20, 20));
            reference.push(sim.incident().unwrap().ez(20));
        }
        assert!(peak > 0.9, "peak {peak}");
        assert!(leak < 0.03 * peak, "leak {leak} of {peak}");
        let err = relative_l2(&axis, &reference);
        assert!(err < 0.02, "axis error {err}");
    }

    #[test]
    fn sphere_shadows_downstream_probe() {
        let (mut scn, _) = plane_wave_scenario();
        scn.grid = scn.grid.clone().with_steps(200);
        scn.probes = vec![[20, 11, 20], [20, 29, 20]];
        let free = run_3d(&scn).unwrap();
        scn.sphere = Some(SphereSpec {
            center: [0.2, 0.2, 0.205],
            radius: 0.06,
            eps_r: 30.0,
            sigma: 0.3,
        });
        let with = run_3d(&scn).unwrap();
        let (up, down) = (with.probes[0].peak_abs(), with.probes[1].peak_abs());
        assert!(down < up, "downstream {down} upstream {up}");
        assert!(down < free.probes[1].peak_abs());
    }

    #[test]
    fn free_space_sphere_is_bitwise_no_sphere() {
        let (mut scn, _) = plane_wave_scenario();
        scn.grid = scn.grid.clone().with_steps(40);
        scn.probes = vec![[20, 20, 20]];
        let plain = run_3d(&scn).unwrap();
        scn.sphere = Some(SphereSpec {
            center: [0.2, 0.2, 0.2],
            radius: 0.06,
            eps_r: 1.0,
            sigma: 0.0,
        });
        let vacuum = run_3d(&scn).unwrap();
        assert_eq!(plain, vacuum);
    }

    #[test]
    fn slice_extraction() {
        let mut f = Field3::zeros(3, 4, 5);
        f.set(1, 2, 3, 7.0);
        assert_eq!(extract_slice(&f, Plane::Xy, 3).get(1, 2), 7.0);
        assert_eq!(extract_slice(&f, Plane::Xz, 2).get(1, 3), 7.0);
        assert_eq!(extract_slice(&f, Plane::Yz, 1).get(2, 3), 7.0);
        assert_eq!(extract_slice(&f, Plane::Yz, 1).shape(), (4, 5));
    }

    #[test]
    fn rejects_bad_scenarios() {
        let g = grid(30, 5);
        let mut scn =
            Scenario3D::point_source(g, 5, SourceSpec::soft(Waveform::gaussian(20.0, 6.0)));
        scn.slices.push(SliceSpec {
            plane: Plane::Xz,
            offset: 31,
            component: Component::Ez,
            step: 1,
        });
        assert!(Sim3D::new(scn.clone()).is_err());
        scn.slices.clear();
        scn.excitation = Excitation3D::Point { i: 30, j: 3, k: 3 };
        assert!(Sim3D::new(scn.clone()).is_err());
        scn.excitation = Excitation3D::Point {
            i: 15,
            j: 15,
            k: 15,
        };
        scn.sphere = Some(SphereSpec {
            center: [0.15, 0.15, 0.06],
            radius: 0.05,
            eps_r: 4.0,
            sigma: 0.0,
        });
        assert!(Sim3D::new(scn).is_err());
    }
}
