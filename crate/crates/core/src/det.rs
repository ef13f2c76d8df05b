//! Deterministic incremental estimators driven by a fixed center set.
//!
//! * diameter and eccentricities: in-direction engines from every center,
//!   cap `guess`, on a strongly connected graph;
//! * radius: out-direction engines, cap `2·guess`, from centers chosen
//!   inside the top strongly connected component, which is recomputed after
//!   every insertion.

use crate::centers::{select_centers, CenterSet};
use crate::estimate::{Estimate, EstimatorError, EstimatorStats, Mode, Param, WorkBreakdown};
use crate::graph::{Direction, DynamicGraph, EdgeUpdate, UpdateKind, VertexId};
use crate::oracle::strongly_connected;
use crate::scc::top_scc;
use crate::sssp::{EsTree, Source, SsspConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetConfig {
    pub param: Param,
    pub guess: u32,
    pub eps: f64,
}

#[derive(Debug, Clone)]
pub struct DetEstimator {
    cfg: DetConfig,
    centers: CenterSet,
    engines: Vec<EsTree>,
    /// Current top component (radius only).
    scope: Vec<VertexId>,
    scc_recomputes: u64,
}

impl DetEstimator {
    pub fn new(g: &DynamicGraph, cfg: DetConfig) -> Result<Self, EstimatorError> {
        if !(cfg.eps > 0.0 && cfg.eps < 2.0) {
            return Err(EstimatorError::EpsOutOfRange { eps: cfg.eps, range: "(0, 2)" });
        }
        if cfg.guess == 0 {
            return Err(EstimatorError::GuessNonPositive);
        }
        let scope: Vec<VertexId> = match cfg.param {
            Param::Radius => top_scc(g),
            _ => {
                if !strongly_connected(g) {
                    return Err(EstimatorError::NotStronglyConnected);
                }
                (0..g.n()).collect()
            }
        };
        let centers = select_centers(g, cfg.guess, cfg.eps, &scope)?;
        let mut est = DetEstimator { cfg, centers, engines: Vec::new(), scope, scc_recomputes: 0 };
        est.spawn_engines(g)?;
        Ok(est)
    }

    fn engine_shape(&self) -> (Direction, i64) {
        match self.cfg.param {
            Param::Radius => (Direction::Out, 2 * self.cfg.guess as i64),
            _ => (Direction::In, self.cfg.guess as i64),
        }
    }

    fn spawn_engines(&mut self, g: &DynamicGraph) -> Result<(), EstimatorError> {
        let (dir, cap) = self.engine_shape();
        for &c in &self.centers.centers[self.engines.len()..] {
            let cfg = SsspConfig::new(Source::Vertex(c), dir, cap, Mode::Incremental);
            self.engines.push(EsTree::new(g, cfg)?);
        }
        Ok(())
    }

    pub fn config(&self) -> &DetConfig {
        &self.cfg
    }

    pub fn centers(&self) -> &CenterSet {
        &self.centers
    }

    pub fn scope(&self) -> &[VertexId] {
        &self.scope
    }

    pub fn apply(&mut self, g: &DynamicGraph, e: &EdgeUpdate) -> Result<(), EstimatorError> {
        if e.kind != UpdateKind::Insert {
            return Err(EstimatorError::ModeMismatch(e.kind));
        }
        for t in &mut self.engines {
            t.insert(g, e.u, e.v)?;
        }
        if self.cfg.param == Param::Radius {
            self.scc_recomputes += 1;
            let top = top_scc(g);
            if top.len() > self.scope.len() {
                // Old centers and labels stay; only newly added vertices are
                // peeled, after the bounds are tightened to current distances.
                let engines = &self.engines;
                let index: std::collections::HashMap<VertexId, usize> =
                    self.centers.centers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                self.centers.refresh_bounds(|c, v| engines[index[&c]].dist(v).get());
                self.centers.extend(g, &top)?;
                self.scope = top;
                self.spawn_engines(g)?;
            }
        }
        Ok(())
    }

    /// A capped engine that misses some vertex proves a distance of at least
    /// `cap + 1`, which is still a sound lower bound.
    fn truncated_max(t: &EsTree) -> Option<u32> {
        let m = t.max_estimate();
        if m.all_reached {
            m.value
        } else {
            Some(t.cap() + 1)
        }
    }

    pub fn query(&self) -> Estimate {
        match self.cfg.param {
            Param::Diameter => {
                let d = self.engines.iter().filter_map(Self::truncated_max).max().unwrap_or(0);
                Estimate::Scalar(d as f64)
            }
            Param::Radius => {
                // The exact backend has slack 0, so no correction factor.
                let r = self
                    .engines
                    .iter()
                    .map(|t| t.max_estimate())
                    .filter(|m| m.all_reached)
                    .filter_map(|m| m.value)
                    .min();
                Estimate::Scalar(r.map_or(f64::INFINITY, |r| r as f64))
            }
            Param::Eccentricities => {
                let n = self.centers.label.len();
                let vals = (0..n)
                    .map(|v| {
                        self.engines.iter().map(|t| t.dist(v).get().unwrap_or(t.cap() + 1)).max().unwrap_or(0) as f64
                    })
                    .collect();
                Estimate::PerVertex(vals)
            }
        }
    }

    pub fn stats(&self) -> EstimatorStats {
        let work = WorkBreakdown {
            centers: self.engines.iter().map(EsTree::work).sum(),
            selection: self.centers.stats.pruned_edges,
            ..WorkBreakdown::default()
        };
        EstimatorStats {
            phase: 0,
            reinit_count: 0,
            work: work.total(),
            work_classes: work,
            engines: self.engines.len(),
        }
    }

    pub fn scc_recomputes(&self) -> u64 {
        self.scc_recomputes
    }
}
