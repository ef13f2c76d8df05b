//! Geometric grid of parameter guesses around fixed-guess estimators.
//!
//! Each cell runs one estimator with guess `g_j` on a private copy of the
//! graph. Maximized parameters (diameter, eccentricities) combine cells by
//! `max`, the radius by `min`. After every update the grid checks, using only
//! the cells' own outputs, that some cell brackets every true value, and
//! creates cells above or below when that cannot be certified.

use crate::bootstrap::{static_bootstrap, BootstrapError, BootstrapEstimate};
use crate::det::{DetConfig, DetEstimator};
use crate::estimate::{Estimate, EstimatorError, EstimatorStats, Mode, Param, WorkBreakdown};
use crate::graph::{DynamicGraph, EdgeUpdate};
use crate::rand_est::{RandConfig, RandEstimator};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Rand,
    Det,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub alg: Algorithm,
    pub param: Param,
    pub eps: f64,
    pub mode: Mode,
    pub seed: u64,
    pub c_sample: f64,
    pub c_prime: f64,
}

impl GridConfig {
    pub fn new(alg: Algorithm, param: Param, eps: f64, mode: Mode, seed: u64) -> Self {
        GridConfig { alg, param, eps, mode, seed, c_sample: 1.0, c_prime: 1.0 }
    }

    pub fn combine(&self) -> Combine {
        if self.param == Param::Radius {
            Combine::Min
        } else {
            Combine::Max
        }
    }

    /// Ratio slack between consecutive guesses.
    pub fn eps_prime(&self) -> f64 {
        match self.combine() {
            Combine::Max => self.eps / 2.0,
            // ε/3 keeps (1+ε')/(1-ε') ≤ 1+ε only up to ε = 1.
            Combine::Min if self.eps <= 1.0 => self.eps / 3.0,
            Combine::Min => self.eps / 4.0,
        }
    }

    /// Accuracy handed to each cell; equal to the grid ratio slack.
    pub fn cell_eps(&self) -> f64 {
        self.eps_prime()
    }

    /// The value a cell with guess `g` certifies when its precondition holds:
    /// a lower bound for maximized parameters (valid when `g <= P`), an upper
    /// bound for the radius (valid when `g >= R`).
    pub fn cell_bound(&self, g: u32) -> f64 {
        let e = self.cell_eps();
        let g = g as f64;
        match (self.alg, self.param) {
            (Algorithm::Rand, Param::Diameter) => 2.0 / 3.0 * (1.0 - e) * g - 2.0 / 3.0,
            (Algorithm::Rand, Param::Eccentricities) => 3.0 / 5.0 * (1.0 - e) * g - 1.0,
            (Algorithm::Rand, Param::Radius) => (1.0 + e) * (1.5 * g + 0.5),
            (Algorithm::Det, Param::Radius) => (1.0 + e) * g,
            (Algorithm::Det, _) => (1.0 - e) * g,
        }
    }

    pub fn next_up(&self, g: u32) -> u32 {
        (g + 1).max((g as f64 / (1.0 - self.eps_prime())).floor() as u32)
    }

    pub fn next_down(&self, g: u32) -> u32 {
        (g - 1).min(((1.0 - self.eps_prime()) * g as f64).ceil() as u32).max(1)
    }
}

#[derive(Debug, Clone)]
pub enum AnyEstimator {
    Rand(RandEstimator),
    Det(DetEstimator),
}

impl AnyEstimator {
    pub fn apply(&mut self, g: &DynamicGraph, e: &EdgeUpdate) -> Result<(), EstimatorError> {
        match self {
            AnyEstimator::Rand(x) => x.apply(g, e),
            AnyEstimator::Det(x) => x.apply(g, e),
        }
    }

    pub fn query(&self) -> Estimate {
        match self {
            AnyEstimator::Rand(x) => x.query(),
            AnyEstimator::Det(x) => x.query(),
        }
    }

    pub fn stats(&self) -> EstimatorStats {
        match self {
            AnyEstimator::Rand(x) => x.stats(),
            AnyEstimator::Det(x) => x.stats(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridCell {
    pub guess: u32,
    pub graph: DynamicGraph,
    pub estimator: AnyEstimator,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GridStats {
    pub cells: usize,
    pub cells_created: usize,
    /// Sum over live cells.
    pub reinit_count: u64,
    /// Largest phase counter among live cells.
    pub phase: u64,
    pub work: u64,
    pub work_classes: WorkBreakdown,
}

#[derive(Debug, Clone)]
pub struct Grid {
    cfg: GridConfig,
    graph: DynamicGraph,
    cells: Vec<GridCell>,
    bootstrap: Option<BootstrapEstimate>,
    created: usize,
}

/// Integer geometric guesses from `lo` up to at least `hi`, capped at `limit`.
pub fn layout(cfg: &GridConfig, lo: u32, hi: u32, limit: u32) -> Vec<u32> {
    let lo = lo.clamp(1, limit);
    let hi = hi.clamp(lo, limit);
    let mut out = vec![lo];
    while *out.last().unwrap() < hi {
        let next = cfg.next_up(*out.last().unwrap()).min(limit);
        out.push(next);
    }
    out
}

impl Grid {
    pub fn new(g: &DynamicGraph, cfg: GridConfig) -> Result<Self, EstimatorError> {
        if cfg.alg == Algorithm::Det && cfg.mode == Mode::Decremental {
            return Err(EstimatorError::Unsupported("deterministic estimators are incremental only".into()));
        }
        if g.n() == 0 {
            return Err(BootstrapError::EmptyGraph.into());
        }
        let limit = Self::limit_for(g);
        let (bootstrap, (lo, hi)) = match static_bootstrap(g, cfg.param) {
            Ok(b) => {
                let r = b.range();
                (Some(b), r)
            }
            Err(BootstrapError::InfiniteParameter(_)) => (None, (1, limit)),
            Err(e) => return Err(e.into()),
        };
        let mut grid = Grid { cfg, graph: g.clone(), cells: Vec::new(), bootstrap, created: 0 };
        for guess in layout(&cfg, lo, hi, limit) {
            grid.add_cell(guess)?;
        }
        grid.maintain()?;
        Ok(grid)
    }

    /// Largest useful guess: no finite distance exceeds `n - 1`.
    fn limit_for(g: &DynamicGraph) -> u32 {
        (g.n().saturating_sub(1) as u32).max(1)
    }

    fn limit(&self) -> u32 {
        Self::limit_for(&self.graph)
    }

    pub fn config(&self) -> &GridConfig {
        &self.cfg
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn bootstrap(&self) -> Option<&BootstrapEstimate> {
        self.bootstrap.as_ref()
    }

    pub fn cells(&self) -> &[GridCell] {
        &self.cells
    }

    pub fn guesses(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c.guess).collect()
    }

    fn add_cell(&mut self, guess: u32) -> Result<(), EstimatorError> {
        if self.cells.iter().any(|c| c.guess == guess) {
            return Ok(());
        }
        let cfg = &self.cfg;
        let estimator = match cfg.alg {
            Algorithm::Rand => {
                let seed = cfg.seed.wrapping_add((guess as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let rc = RandConfig {
                    c_sample: cfg.c_sample,
                    c_prime: cfg.c_prime,
                    ..RandConfig::new(cfg.param, guess, cfg.cell_eps(), cfg.mode, seed)
                };
                AnyEstimator::Rand(RandEstimator::new(&self.graph, rc)?)
            }
            Algorithm::Det => AnyEstimator::Det(DetEstimator::new(
                &self.graph,
                DetConfig { param: cfg.param, guess, eps: cfg.cell_eps() },
            )?),
        };
        let cell = GridCell { guess, graph: self.graph.clone(), estimator };
        let pos = self.cells.partition_point(|c| c.guess < guess);
        self.cells.insert(pos, cell);
        self.created += 1;
        Ok(())
    }

    pub fn apply(&mut self, e: &EdgeUpdate) -> Result<(), EstimatorError> {
        self.graph.apply(e)?;
        for cell in &mut self.cells {
            cell.graph.apply(e)?;
            cell.estimator.apply(&cell.graph, e)?;
        }
        self.maintain()
    }

    /// Adds cells until coverage is certified for every parameter value.
    fn maintain(&mut self) -> Result<(), EstimatorError> {
        loop {
            let estimates: Vec<Vec<f64>> = self.cells.iter().map(|c| c.estimator.query().values()).collect();
            let k = estimates[0].len();
            let lowest = self.cells[0].guess;
            let highest = self.cells.last().unwrap().guess;
            let limit = self.limit();
            let (mut up, mut down) = (false, false);
            for i in 0..k {
                let col = estimates.iter().map(|e| e[i]);
                match self.cfg.combine() {
                    Combine::Max => {
                        let best = col.clone().fold(0.0, f64::max);
                        if lowest > 1 && (lowest as f64) > best.max(1.0) + TOL {
                            down = true;
                        }
                        let certified = self.cells.iter().zip(col).any(|(c, p)| p < self.cfg.cell_bound(c.guess) - TOL);
                        if highest < limit && !certified {
                            up = true;
                        }
                    }
                    Combine::Min => {
                        let best = col.clone().fold(f64::INFINITY, f64::min);
                        if highest < limit && !(best <= highest as f64 + TOL) {
                            up = true;
                        }
                        let certified = self.cells.iter().zip(col).any(|(c, p)| p > self.cfg.cell_bound(c.guess) + TOL);
                        if lowest > 1 && !certified {
                            down = true;
                        }
                    }
                }
            }
            if !up && !down {
                return Ok(());
            }
            if up {
                self.add_cell(self.cfg.next_up(highest).min(limit))?;
            }
            if down {
                self.add_cell(self.cfg.next_down(lowest))?;
            }
        }
    }

    pub fn query(&self) -> Estimate {
        let per_cell: Vec<Vec<f64>> = self.cells.iter().map(|c| c.estimator.query().values()).collect();
        let k = per_cell[0].len();
        let combined: Vec<f64> = (0..k)
            .map(|i| {
                let col = per_cell.iter().map(|e| e[i]);
                match self.cfg.combine() {
                    Combine::Max => col.fold(0.0, f64::max),
                    Combine::Min => col.fold(f64::INFINITY, f64::min),
                }
            })
            .collect();
        match self.cfg.param {
            Param::Eccentricities => Estimate::PerVertex(combined),
            _ => Estimate::Scalar(combined[0]),
        }
    }

    pub fn stats(&self) -> GridStats {
        let mut s = GridStats { cells: self.cells.len(), cells_created: self.created, ..GridStats::default() };
        for c in &self.cells {
            let cs = c.estimator.stats();
            s.reinit_count += cs.reinit_count;
            s.phase = s.phase.max(cs.phase);
            s.work += cs.work;
            s.work_classes += cs.work_classes;
        }
        s
    }
}
