//! One-dimensional Yee line (`Ex`, `Hy`) with the two-step absorbing boundary.
//!
//! `ex[k]` lives at node `k`, `hy[k]` at `k + ½`. A line of `n` cells has
//! `KE = n + 1` nodes; both arrays have length `KE` and `hy[KE − 1]` is never
//! touched. At `dt = dx/2c` a wave needs exactly two steps to cross one cell,
//! so each end node is fed the value its neighbour had two steps earlier.

use crate::error::{FdtdError, Result};
use crate::grid::GridSpec;
use crate::probe::ProbeTrace;
use crate::source::{Injection, SourceSpec};

/// Values of `ex[1]` and `ex[KE − 2]` from the two previous steps, oldest first.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AbcHistory {
    pub low: [f64; 2],
    pub high: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldState1D {
    pub ex: Vec<f64>,
    pub hy: Vec<f64>,
    pub history: AbcHistory,
}

impl FieldState1D {
    /// Zero fields on `ke` nodes.
    pub fn new(ke: usize) -> Self {
        assert!(ke >= 3, "a 1D line needs at least three nodes");
        FieldState1D {
            ex: vec![0.0; ke],
            hy: vec![0.0; ke],
            history: AbcHistory::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.ex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ex.is_empty()
    }

    /// `ex[k] += 0.5·(hy[k−½] − hy[k+½])` on interior nodes; the end nodes are
    /// left to [`apply_abc`](Self::apply_abc).
    pub fn step_e(&mut self) {
        let ke = self.ex.len();
        for k in 1..ke - 1 {
            self.ex[k] += 0.5 * (self.hy[k - 1] - self.hy[k]);
        }
    }

    /// `hy[k+½] += 0.5·(ex[k] − ex[k+1])`.
    pub fn step_h(&mut self) {
        let ke = self.ex.len();
        for k in 0..ke - 1 {
            self.hy[k] += 0.5 * (self.ex[k] - self.ex[k + 1]);
        }
    }

    /// Sets each end node to its neighbour's value from two steps ago and
    /// records the current neighbours.
    pub fn apply_abc(&mut self) {
        let ke = self.ex.len();
        let h = &mut self.history;
        self.ex[0] = h.low[0];
        h.low = [h.low[1], self.ex[1]];
        self.ex[ke - 1] = h.high[0];
        h.high = [h.high[1], self.ex[ke - 2]];
    }

    /// `Σ ex² + Σ hy²`.
    pub fn energy(&self) -> f64 {
        self.ex.iter().chain(&self.hy).map(|v| v * v).sum()
    }

    pub fn max_abs_ex(&self) -> f64 {
        self.ex.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn first_non_finite(&self) -> Option<(&'static str, usize)> {
        if let Some(k) = self.ex.iter().position(|v| !v.is_finite()) {
            return Some(("ex", k));
        }
        self.hy
            .iter()
            .position(|v| !v.is_finite())
            .map(|k| ("hy", k))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario1D {
    pub grid: GridSpec,
    pub source: SourceSpec,
    pub source_position: usize,
    pub probes: Vec<usize>,
    pub snapshot_steps: Vec<usize>,
}

impl Scenario1D {
    /// Centered source, no probes or snapshots.
    pub fn centered(grid: GridSpec, source: SourceSpec) -> Self {
        let source_position = grid.center(0);
        Scenario1D {
            grid,
            source,
            source_position,
            probes: Vec::new(),
            snapshot_steps: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.require_dims(1)?;
        self.source.validate()?;
        let ke = self.grid.nodes(0);
        let ok = |k: usize| (1..=ke - 2).contains(&k);
        if !ok(self.source_position) {
            return Err(FdtdError::validation(format!(
                "source position {} outside [1, {}]",
                self.source_position,
                ke - 2
            )));
        }
        if let Some(&p) = self.probes.iter().find(|&&p| !ok(p)) {
            return Err(FdtdError::validation(format!(
                "probe position {p} outside [1, {}]",
                ke - 2
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot1D {
    pub step: usize,
    pub ex: Vec<f64>,
    pub hy: Vec<f64>,
}

/// A running 1D simulation.
#[derive(Debug, Clone)]
pub struct Sim1D {
    scenario: Scenario1D,
    state: FieldState1D,
    step: usize,
}

impl Sim1D {
    pub fn new(scenario: Scenario1D) -> Result<Self> {
        scenario.validate()?;
        let state = FieldState1D::new(scenario.grid.nodes(0));
        Ok(Sim1D {
            scenario,
            state,
            step: 0,
        })
    }

    pub fn state(&self) -> &FieldState1D {
        &self.state
    }

    /// Number of completed steps.
    pub fn steps_done(&self) -> usize {
        self.step
    }

    /// One full step: E sweep, boundaries, source, H sweep.
    ///
    /// A soft source on the line feeds the two outgoing halves equally, so
    /// each half carries half the waveform amplitude.
    pub fn advance(&mut self) -> Result<()> {
        let n = self.step;
        let st = &mut self.state;
        st.step_e();
        st.apply_abc();
        let src = &self.scenario.source;
        let v = src.sample(n, self.scenario.grid.dt());
        let at = &mut st.ex[self.scenario.source_position];
        match src.injection {
            Injection::Hard => *at = v,
            Injection::Soft => *at += 0.5 * v,
        }
        st.step_h();
        if let Some((field, k)) = st.first_non_finite() {
            return Err(FdtdError::NonFinite {
                step: n,
                field,
                index: vec![k],
            });
        }
        self.step += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Run1D {
    pub probes: Vec<ProbeTrace>,
    pub snapshots: Vec<Snapshot1D>,
    pub final_state: FieldState1D,
}

/// Runs `grid.n_steps` steps, recording `ex` at each probe after every step
/// and full snapshots after the requested steps.
pub fn run_1d(scenario: &Scenario1D) -> Result<Run1D> {
    let n_steps = scenario.grid.n_steps();
    let mut probes: Vec<ProbeTrace> = scenario
        .probes
        .iter()
        .map(|&k| ProbeTrace::new(vec![k], n_steps))
        .collect();
    let mut snapshots = Vec::new();
    let mut sim = Sim1D::new(scenario.clone())?;
    for n in 0..n_steps {
        sim.advance()?;
        for p in &mut probes {
            p.values.push(sim.state.ex[p.position[0]]);
        }
        if scenario.snapshot_steps.contains(&n) {
            snapshots.push(Snapshot1D {
                step: n,
                ex: sim.state.ex.clone(),
                hy: sim.state.hy.clone(),
            });
        }
    }
    Ok(Run1D {
        probes,
        snapshots,
        final_state: sim.state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{gaussian_pulse, Waveform};

    fn default_scenario(cells: usize, steps: usize) -> Scenario1D {
        let grid = GridSpec::new(&[cells], 0.01, steps).unwrap();
        Scenario1D::centered(grid, SourceSpec::soft(Waveform::gaussian(40.0, 12.0)))
    }

    #[test]
    fn zero_state_stays_zero() {
        let mut s = FieldState1D::new(50);
        s.step_e();
        s.apply_abc();
        s.step_h();
        assert!(s.ex.iter().chain(&s.hy).all(|&v| v == 0.0));
    }

    #[test]
    fn e_sweep_on_h_impulse() {
        let mut s = FieldState1D::new(20);
        s.hy[0] = 1.0; // hy at ½
        s.step_e();
        // node 0 is a boundary node and untouched by the sweep
        assert_eq!(s.ex[0], 0.0);
        assert_eq!(s.ex[1], 0.5);
        assert!(s.ex[2..].iter().all(|&v| v == 0.0));
        s.apply_abc();
        assert_eq!(s.ex[0], 0.0);

        let mut s = FieldState1D::new(20);
        s.hy[5] = 1.0; // hy at 5½
        s.step_e();
        assert_eq!(s.ex[5], -0.5);
        assert_eq!(s.ex[6], 0.5);
        let changed = s.ex.iter().filter(|&&v| v != 0.0).count();
        assert_eq!(changed, 2);
    }

    #[test]
    fn h_sweep_on_e_impulse() {
        let mut s = FieldState1D::new(30);
        s.ex[10] = 1.0;
        s.step_h();
        assert_eq!(s.hy[9], -0.5);
        assert_eq!(s.hy[10], 0.5);
        assert_eq!(s.hy.iter().filter(|&&v| v != 0.0).count(), 2);
    }

    #[test]
    fn uniform_fields_have_no_curl() {
        let mut s = FieldState1D::new(30);
        s.hy.iter_mut().for_each(|v| *v = 0.7);
        s.step_e();
        assert!(s.ex.iter().all(|&v| v == 0.0));
        let mut s = FieldState1D::new(30);
        s.ex.iter_mut().for_each(|v| *v = -1.3);
        s.step_h();
        assert!(s.hy[..29].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn boundary_replays_neighbour_two_steps_later() {
        let mut sim = Sim1D::new(default_scenario(200, 0)).unwrap();
        let ke = 201;
        let mut neighbour = Vec::new();
        let mut edge = Vec::new();
        for _ in 0..400 {
            sim.advance().unwrap();
            neighbour.push(sim.state().ex[ke - 2]);
            edge.push(sim.state().ex[ke - 1]);
        }
        // the pulse reaches the right end near step 40 + 2·100
        assert!(neighbour[240] > 0.1);
        for n in 2..400 {
            assert_eq!(edge[n], neighbour[n - 2]);
        }
    }

    #[test]
    fn zero_history_gives_zero_boundary() {
        let mut s = FieldState1D::new(40);
        s.ex[20] = 1.0;
        s.apply_abc();
        assert_eq!(s.ex[0], 0.0);
        assert_eq!(s.ex[39], 0.0);
    }

    #[test]
    fn pulses_split_and_travel_half_a_cell_per_step() {
        // 100 steps after the pulse peak the halves sit 50 cells out
        let mut scn = default_scenario(200, 141);
        scn.snapshot_steps = vec![140];
        let run = run_1d(&scn).unwrap();
        let ex = &run.snapshots[0].ex;
        let right = (101..=200)
            .max_by(|&a, &b| ex[a].total_cmp(&ex[b]))
            .unwrap();
        let left = (0..100).max_by(|&a, &b| ex[a].total_cmp(&ex[b])).unwrap();
        assert_eq!(right, 150);
        assert_eq!(left, 50);
        assert!((ex[150] - 0.5).abs() < 0.01);
    }

    #[test]
    fn mirror_symmetric_about_source() {
        let mut sim = Sim1D::new(default_scenario(200, 0)).unwrap();
        for _ in 0..1000 {
            sim.advance().unwrap();
            let ex = &sim.state().ex;
            for k in 0..=100 {
                assert!((ex[100 + k] - ex[100 - k]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn probe_sees_half_pulse() {
        let mut scn = default_scenario(200, 221);
        scn.probes = vec![150];
        let run = run_1d(&scn).unwrap();
        let peak = run.probes[0].peak_abs();
        assert!((peak - 0.5).abs() < 0.01, "peak {peak}");
        let at = run.probes[0]
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(at, 140);
    }

    #[test]
    fn hard_source_pins_field() {
        let grid = GridSpec::new(&[100], 0.01, 0).unwrap();
        let scn = Scenario1D::centered(grid, SourceSpec::hard(Waveform::gaussian(40.0, 12.0)));
        let mut sim = Sim1D::new(scn).unwrap();
        for n in 0..60 {
            sim.advance().unwrap();
            assert_eq!(sim.state().ex[50], gaussian_pulse(n as f64, 40.0, 12.0));
        }
    }

    #[test]
    fn rejects_out_of_range_positions() {
        let mut scn = default_scenario(100, 10);
        scn.probes = vec![100];
        assert!(run_1d(&scn).is_err());
        scn.probes = vec![99];
        assert!(run_1d(&scn).is_ok());
        scn.source_position = 0;
        assert!(run_1d(&scn).is_err());
    }

    #[test]
    fn detects_non_finite_values() {
        let grid = GridSpec::new(&[50], 0.01, 0).unwrap();
        let mut src = SourceSpec::soft(Waveform::gaussian(40.0, 12.0));
        src.amplitude = f64::MAX;
        let mut sim = Sim1D::new(Scenario1D::centered(grid, src)).unwrap();
        let mut failure = None;
        for _ in 0..200 {
            if let Err(e) = sim.advance() {
                failure = Some(e);
                break;
            }
        }
        assert!(matches!(failure, Some(FdtdError::NonFinite { .. })));
    }
}
