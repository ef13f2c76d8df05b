//! Theorem-level guarantee bounds and stream replay with oracle checks.

use crate::estimate::{Estimate, EstimatorError, Mode, Param};
use crate::graph::{DynamicGraph, EdgeUpdate, GraphError, UpdateKind};
use crate::grid::{Algorithm, Grid, GridConfig};
use crate::oracle::oracle;
use crate::report::{row_label, ReportRow};
use crate::stream::{Event, StreamMode, UpdateStream};

pub const TOLERANCE: f64 = 1e-9;

/// `[lower, upper]` that the combined estimate must fall in when the true
/// value is `truth` (finite).
pub fn guarantee_bounds(alg: Algorithm, param: Param, eps: f64, truth: f64) -> (f64, f64) {
    match (alg, param) {
        (Algorithm::Rand, Param::Diameter) => (2.0 * (1.0 - eps) / 3.0 * truth - 2.0 / 3.0, truth),
        (Algorithm::Rand, Param::Radius) => (truth, (1.0 + eps) * (1.5 * truth + 0.5)),
        (Algorithm::Rand, Param::Eccentricities) => (3.0 * (1.0 - eps) / 5.0 * truth - 1.0, truth),
        (Algorithm::Det, Param::Radius) => (truth, (1.0 + eps) * truth),
        (Algorithm::Det, _) => ((1.0 - eps) * truth, truth),
    }
}

/// Bound check with float slack. An infinite truth is checked on the
/// soundness side only: maximized parameters always pass, the radius must be
/// reported infinite as well.
pub fn check(alg: Algorithm, param: Param, eps: f64, truth: f64, estimate: f64) -> (Option<f64>, Option<f64>, bool) {
    if truth.is_infinite() {
        return match param {
            Param::Radius => (Some(truth), None, estimate.is_infinite()),
            _ => (None, Some(truth), true),
        };
    }
    let (lo, hi) = guarantee_bounds(alg, param, eps, truth);
    (Some(lo), Some(hi), estimate >= lo - TOLERANCE && estimate <= hi + TOLERANCE)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    None,
    Queries,
    Events,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReplayError {
    #[error("incompatible run: {0}")]
    IncompatibleSpec(String),
    #[error("event {index}: {source}")]
    Estimator { index: usize, source: EstimatorError },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Drives a grid through a stream one event at a time.
///
/// Fully dynamic streams are accepted when they have the staged shape used
/// by the gadget generators: after a stage marker, updates of one kind
/// followed by updates that undo them. Undo updates restore the snapshot
/// taken at the marker instead of being fed to the estimators.
#[derive(Debug, Clone)]
pub struct Replayer {
    cfg: GridConfig,
    verify: VerifyLevel,
    grid: Grid,
    graph: DynamicGraph,
    snapshot: Option<Grid>,
    pending: Vec<EdgeUpdate>,
    next_index: usize,
}

pub fn stream_mode(stream: &UpdateStream) -> Mode {
    match stream.mode {
        StreamMode::Incremental => Mode::Incremental,
        StreamMode::Decremental => Mode::Decremental,
        StreamMode::FullyDynamic => match stream.updates().next() {
            Some(e) if e.kind == UpdateKind::Delete => Mode::Decremental,
            _ => Mode::Incremental,
        },
    }
}

impl Replayer {
    /// `cfg.mode` is replaced by the mode the stream implies.
    pub fn new(stream: &UpdateStream, mut cfg: GridConfig, verify: VerifyLevel) -> Result<Self, ReplayError> {
        cfg.mode = stream_mode(stream);
        if cfg.alg == Algorithm::Det && cfg.mode == Mode::Decremental {
            return Err(ReplayError::IncompatibleSpec("the deterministic estimators accept insertions only".into()));
        }
        let graph = stream.initial_graph()?;
        let grid = Grid::new(&graph, cfg).map_err(|source| match source {
            EstimatorError::Unsupported(s) => ReplayError::IncompatibleSpec(s),
            source => ReplayError::Estimator { index: 0, source },
        })?;
        Ok(Replayer { cfg, verify, grid, graph, snapshot: None, pending: Vec::new(), next_index: 0 })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn mode(&self) -> Mode {
        self.cfg.mode
    }

    fn accepted_kind(&self) -> UpdateKind {
        match self.cfg.mode {
            Mode::Incremental => UpdateKind::Insert,
            Mode::Decremental => UpdateKind::Delete,
        }
    }

    fn apply(&mut self, e: &EdgeUpdate, index: usize) -> Result<(), ReplayError> {
        let wrap = |source| ReplayError::Estimator { index, source };
        if e.kind == self.accepted_kind() {
            self.graph.apply(e)?;
            self.grid.apply(e).map_err(wrap)?;
            if self.snapshot.is_some() {
                self.pending.push(*e);
            }
            return Ok(());
        }
        let undo = e.inverse();
        let Some(pos) = self.pending.iter().position(|p| *p == undo) else {
            return Err(ReplayError::IncompatibleSpec(format!(
                "event {index}: {:?} of ({}, {}) does not undo an update of the current stage",
                e.kind, e.u, e.v
            )));
        };
        self.graph.apply(e)?;
        self.pending.remove(pos);
        self.grid = self.snapshot.clone().expect("pending updates imply a snapshot");
        for p in self.pending.clone() {
            self.grid.apply(&p).map_err(wrap)?;
        }
        Ok(())
    }

    /// Processes the next event and returns the rows it produces.
    pub fn step(&mut self, event: &Event) -> Result<Vec<ReportRow>, ReplayError> {
        let index = self.next_index;
        self.next_index += 1;
        let (emit, verify) = match event {
            Event::Stage(_) => {
                self.snapshot = Some(self.grid.clone());
                self.pending.clear();
                (false, false)
            }
            Event::Update(e) => {
                self.apply(e, index)?;
                (self.verify == VerifyLevel::Events, true)
            }
            Event::Query => (true, self.verify != VerifyLevel::None),
        };
        if !emit {
            return Ok(Vec::new());
        }
        Ok(self.rows(index, verify))
    }

    pub fn rows(&self, index: usize, verify: bool) -> Vec<ReportRow> {
        let estimate = self.grid.query();
        let stats = self.grid.stats();
        let truth = verify.then(|| {
            let o = oracle(&self.graph);
            match self.cfg.param {
                Param::Diameter => vec![o.diameter.as_f64()],
                Param::Radius => vec![o.radius.as_f64()],
                Param::Eccentricities => o.ecc_out.iter().map(|d| d.as_f64()).collect(),
            }
        });
        let per_vertex = matches!(estimate, Estimate::PerVertex(_));
        estimate
            .values()
            .into_iter()
            .enumerate()
            .map(|(i, est)| {
                let mut row = ReportRow {
                    event_index: index,
                    param: row_label(self.cfg.param, per_vertex.then_some(i)),
                    estimate: est,
                    oracle: None,
                    lower_bound: None,
                    upper_bound: None,
                    ok: None,
                    reinit_count: stats.reinit_count,
                    phase: stats.phase,
                };
                if let Some(t) = &truth {
                    let (lo, hi, ok) = check(self.cfg.alg, self.cfg.param, self.cfg.eps, t[i], est);
                    row.oracle = Some(t[i]);
                    row.lower_bound = lo;
                    row.upper_bound = hi;
                    row.ok = Some(ok);
                }
                row
            })
            .collect()
    }
}

/// Replays a whole stream and collects all rows.
pub fn replay(stream: &UpdateStream, cfg: GridConfig, verify: VerifyLevel) -> Result<Vec<ReportRow>, ReplayError> {
    let mut r = Replayer::new(stream, cfg, verify)?;
    let mut rows = Vec::new();
    for ev in &stream.events {
        rows.extend(r.step(ev)?);
    }
    Ok(rows)
}
