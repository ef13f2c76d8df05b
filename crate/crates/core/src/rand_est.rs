//! Las Vegas estimators for one fixed guess of the parameter.
//!
//! A random hitting sample `S` gives good estimates for every vertex close
//! to `S`. Vertices far from `S` form the set `W`; a pivot `w ∈ W` and a
//! subsample `S'` of its ball cover the remaining case. Whenever one of the
//! sampling guarantees is observed to fail the whole structure is rebuilt.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::Dist;
use crate::estimate::{Estimate, EstimatorError, EstimatorStats, Mode, Param, WorkBreakdown};
use crate::graph::{Direction, DynamicGraph, EdgeUpdate, UpdateKind, VertexId};
use crate::sssp::{set_source, ChangeSet, EsTree, Source, SsspConfig};

/// Rebuilds attempted for one event before falling back to `S = V`.
pub const MAX_REINIT_ATTEMPTS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandConfig {
    pub param: Param,
    pub guess: u32,
    pub eps: f64,
    pub mode: Mode,
    pub seed: u64,
    pub c_sample: f64,
    pub c_prime: f64,
}

impl RandConfig {
    pub fn new(param: Param, guess: u32, eps: f64, mode: Mode, seed: u64) -> Self {
        RandConfig { param, guess, eps, mode, seed, c_sample: 1.0, c_prime: 1.0 }
    }

    /// Backend slack used by the estimate formulas.
    pub fn delta(&self) -> f64 {
        match self.param {
            Param::Diameter => 2.0 * self.eps / 11.0,
            Param::Radius => self.eps / 4.0,
            Param::Eccentricities => self.eps / 9.0,
        }
    }

    /// Distance from `S` above which a vertex belongs to `W`.
    pub fn tau(&self) -> f64 {
        let g = self.guess as f64;
        match self.param {
            Param::Diameter => g / 3.0,
            Param::Radius => g / 2.0,
            Param::Eccentricities => 2.0 * g / 5.0,
        }
    }

    pub fn cap(&self) -> u32 {
        match self.param {
            Param::Radius => 2 * self.guess,
            _ => self.guess,
        }
    }

    /// Sampling exponent with `guess ≈ n^(1-2α)`.
    pub fn alpha(&self, n: usize) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let ln_n = (n as f64).ln();
        ((1.0 - (self.guess as f64).ln() / ln_n) / 2.0).clamp(0.0, 0.5)
    }

    /// `⌈c·n^α·ln²n⌉` capped at `n`; a guess of at least `n` samples every
    /// vertex.
    pub fn sample_size(&self, n: usize) -> usize {
        if self.guess as usize >= n {
            return n;
        }
        let ln_n = (n.max(2) as f64).ln();
        let s = (self.c_sample * (n as f64).powf(self.alpha(n)) * ln_n * ln_n).ceil();
        (s as usize).clamp(1, n.max(1))
    }

    /// Probability of admitting a ball member into `S'`.
    pub fn admission_probability(&self, n: usize) -> f64 {
        let ln_n = (n.max(2) as f64).ln();
        (self.c_prime * ln_n * ln_n / (self.delta() * self.guess as f64)).min(1.0)
    }

    fn validate(&self, g: &DynamicGraph) -> Result<(), EstimatorError> {
        if self.guess == 0 {
            return Err(EstimatorError::GuessNonPositive);
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(EstimatorError::EpsOutOfRange { eps: self.eps, range: "(0, 1)" });
        }
        if self.param == Param::Eccentricities && self.eps >= 0.45 {
            return Err(EstimatorError::EpsOutOfRange { eps: self.eps, range: "(0, 0.45)" });
        }
        if self.param != Param::Diameter && g.is_directed() {
            return Err(EstimatorError::Unsupported(format!(
                "randomized {} estimator needs an undirected graph",
                self.param
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReinitReason {
    BallTooBig,
    SPrimeTooBig,
    SPrimeTooFar,
}

/// A vertex admitted into `S'` with its pivot distance at admission time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Admission {
    pub vertex: VertexId,
    pub phase: u64,
    pub dist_from_w: Dist,
}

#[derive(Debug, Clone)]
struct Pivot {
    w: VertexId,
    engine: EsTree,
    sprime: Vec<VertexId>,
    sprime_engines: Vec<EsTree>,
    /// `d'(S', v)`, absent while `S'` is empty.
    sprime_dist: Option<EsTree>,
}

#[derive(Debug, Clone)]
pub struct RandEstimator {
    cfg: RandConfig,
    n: usize,
    rng: ChaCha8Rng,
    s: Vec<VertexId>,
    s_engines: Vec<EsTree>,
    dist_to_s: EsTree,
    w_set: BTreeSet<VertexId>,
    pivot: Option<Pivot>,
    phase: u64,
    reinit_count: u64,
    retired: WorkBreakdown,
    admissions: Vec<Admission>,
    last_reinit: Option<ReinitReason>,
}

impl RandEstimator {
    pub fn new(g: &DynamicGraph, cfg: RandConfig) -> Result<Self, EstimatorError> {
        cfg.validate(g)?;
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut est = Self::build(g, cfg, rng, false)?;
        est.settle(g)?;
        Ok(est)
    }

    /// Fresh sample and engines. `full` forces `S = V`.
    fn build(g: &DynamicGraph, cfg: RandConfig, mut rng: ChaCha8Rng, full: bool) -> Result<Self, EstimatorError> {
        let n = g.n();
        let mut s: Vec<VertexId> =
            if full { (0..n).collect() } else { sample(&mut rng, n, cfg.sample_size(n)).into_vec() };
        s.sort_unstable();
        let cap = cfg.cap() as i64;
        let s_engines = s
            .iter()
            .map(|&x| EsTree::new(g, SsspConfig::new(Source::Vertex(x), Direction::In, cap, cfg.mode)))
            .collect::<Result<Vec<_>, _>>()?;
        let tau_cap = cfg.tau().floor() as i64 + 1;
        let dist_to_s = set_source(g, &s, Direction::In, tau_cap, cfg.mode)?;
        let mut est = RandEstimator {
            cfg,
            n,
            rng,
            s,
            s_engines,
            dist_to_s,
            w_set: BTreeSet::new(),
            pivot: None,
            phase: 0,
            reinit_count: 0,
            retired: WorkBreakdown::default(),
            admissions: Vec::new(),
            last_reinit: None,
        };
        est.w_set = (0..n).filter(|&v| est.far_from_s(v)).collect();
        Ok(est)
    }

    fn far_from_s(&self, v: VertexId) -> bool {
        self.dist_to_s.dist(v).as_f64() > self.cfg.tau()
    }

    fn ball_radius(&self) -> u32 {
        self.cfg.tau().floor() as u32
    }

    pub fn config(&self) -> &RandConfig {
        &self.cfg
    }

    pub fn sample_set(&self) -> &[VertexId] {
        &self.s
    }

    pub fn far_set(&self) -> Vec<VertexId> {
        self.w_set.iter().copied().collect()
    }

    pub fn pivot(&self) -> Option<VertexId> {
        self.pivot.as_ref().map(|p| p.w)
    }

    pub fn sprime(&self) -> &[VertexId] {
        self.pivot.as_ref().map_or(&[], |p| &p.sprime)
    }

    pub fn admissions(&self) -> &[Admission] {
        &self.admissions
    }

    pub fn last_reinit(&self) -> Option<ReinitReason> {
        self.last_reinit
    }

    /// Starts a phase at `w`: pivot engine, then `S'` sampled from its ball.
    fn start_phase(&mut self, g: &DynamicGraph, w: VertexId) -> Result<(), EstimatorError> {
        if let Some(old) = self.pivot.take() {
            self.retired.pivot += pivot_work(&old);
        }
        let cap = self.cfg.cap() as i64;
        let engine = EsTree::new(g, SsspConfig::new(Source::Vertex(w), Direction::Out, cap, self.cfg.mode))?;
        self.phase += 1;
        self.pivot = Some(Pivot { w, engine, sprime: Vec::new(), sprime_engines: Vec::new(), sprime_dist: None });
        let p = self.cfg.admission_probability(self.n);
        let ball = self.pivot.as_ref().unwrap().engine.ball(self.ball_radius())?;
        let chosen: Vec<VertexId> = ball.into_iter().filter(|_| p >= 1.0 || self.rng.gen_bool(p)).collect();
        if chosen.is_empty() {
            return Ok(());
        }
        let sp_cap = (self.cfg.delta() * self.cfg.guess as f64).floor() as i64 + 1;
        let mode = self.cfg.mode;
        let pv = self.pivot.as_mut().unwrap();
        for &u in &chosen {
            self.admissions.push(Admission { vertex: u, phase: self.phase, dist_from_w: pv.engine.dist(u) });
            pv.sprime_engines.push(EsTree::new(g, SsspConfig::new(Source::Vertex(u), Direction::In, cap, mode))?);
        }
        pv.sprime_dist = Some(set_source(g, &chosen, Direction::Out, sp_cap, mode)?);
        pv.sprime = chosen;
        Ok(())
    }

    /// Adds a vertex that joined the pivot ball (incremental only).
    fn admit(&mut self, g: &DynamicGraph, u: VertexId) -> Result<(), EstimatorError> {
        let cap = self.cfg.cap() as i64;
        let sp_cap = (self.cfg.delta() * self.cfg.guess as f64).floor() as i64 + 1;
        let mode = self.cfg.mode;
        let phase = self.phase;
        let pv = self.pivot.as_mut().expect("admission needs a pivot");
        if pv.sprime.contains(&u) {
            return Ok(());
        }
        self.admissions.push(Admission { vertex: u, phase, dist_from_w: pv.engine.dist(u) });
        pv.sprime.push(u);
        pv.sprime_engines.push(EsTree::new(g, SsspConfig::new(Source::Vertex(u), Direction::In, cap, mode))?);
        match &mut pv.sprime_dist {
            Some(t) => {
                t.grow(g, u)?;
            }
            None => pv.sprime_dist = Some(set_source(g, &[u], Direction::Out, sp_cap, mode)?),
        }
        Ok(())
    }

    /// First firing reinitialization condition, if any.
    pub fn check_reinit(&self) -> Option<ReinitReason> {
        let pv = self.pivot.as_ref()?;
        let ball = pv.engine.ball(self.ball_radius()).expect("ball radius below cap");
        let dg = self.cfg.delta() * self.cfg.guess as f64;
        let far = ball.iter().any(|&v| match &pv.sprime_dist {
            Some(t) => t.dist(v).as_f64() > dg,
            None => true,
        });
        reinit_reason(self.n, self.cfg.alpha(self.n), dg, ball.len(), pv.sprime.len(), far)
    }

    /// Picks a pivot when one is due, then rebuilds until no
    /// reinitialization condition fires.
    fn settle(&mut self, g: &DynamicGraph) -> Result<(), EstimatorError> {
        let mut attempts = 0;
        loop {
            self.ensure_pivot(g)?;
            let Some(reason) = self.check_reinit() else {
                return Ok(());
            };
            attempts += 1;
            self.last_reinit = Some(reason);
            let full = attempts >= MAX_REINIT_ATTEMPTS;
            let mut fresh = Self::build(g, self.cfg, self.rng.clone(), full)?;
            fresh.reinit_count = self.reinit_count + 1;
            fresh.retired = self.retired;
            fresh.retired += self.live_work();
            fresh.admissions = std::mem::take(&mut self.admissions);
            fresh.last_reinit = self.last_reinit;
            *self = fresh;
        }
    }

    fn ensure_pivot(&mut self, g: &DynamicGraph) -> Result<(), EstimatorError> {
        let due = match (&self.pivot, self.cfg.mode) {
            (None, Mode::Decremental) => self.phase == 0,
            (None, Mode::Incremental) => true,
            (Some(p), Mode::Incremental) => !self.w_set.contains(&p.w),
            (Some(_), Mode::Decremental) => false,
        };
        if !due || self.w_set.is_empty() {
            if self.cfg.mode == Mode::Incremental && due {
                if let Some(old) = self.pivot.take() {
                    self.retired.pivot += pivot_work(&old);
                }
            }
            return Ok(());
        }
        let w = match self.cfg.mode {
            Mode::Decremental => *self.w_set.first().unwrap(),
            Mode::Incremental => {
                let i = self.rng.gen_range(0..self.w_set.len());
                *self.w_set.iter().nth(i).unwrap()
            }
        };
        self.start_phase(g, w)
    }

    pub fn apply(&mut self, g: &DynamicGraph, e: &EdgeUpdate) -> Result<(), EstimatorError> {
        let expected = match self.cfg.mode {
            Mode::Incremental => UpdateKind::Insert,
            Mode::Decremental => UpdateKind::Delete,
        };
        if e.kind != expected {
            return Err(EstimatorError::ModeMismatch(e.kind));
        }
        for t in &mut self.s_engines {
            t.apply(g, e)?;
        }
        let cs = self.dist_to_s.apply(g, e)?;
        for &(v, _, _) in &cs.changed {
            if self.far_from_s(v) {
                self.w_set.insert(v);
            } else {
                self.w_set.remove(&v);
            }
        }
        let mut joiners = Vec::new();
        if let Some(pv) = &mut self.pivot {
            let ball_cs: ChangeSet = pv.engine.apply(g, e)?;
            for t in &mut pv.sprime_engines {
                t.apply(g, e)?;
            }
            if let Some(t) = &mut pv.sprime_dist {
                t.apply(g, e)?;
            }
            let r = Dist::finite(self.cfg.tau().floor() as u32);
            joiners = ball_cs.changed.iter().filter(|c| c.1 > r && c.2 <= r).map(|c| c.0).collect();
        }
        if self.cfg.mode == Mode::Incremental && !joiners.is_empty() {
            let p = self.cfg.admission_probability(self.n);
            for u in joiners {
                if p >= 1.0 || self.rng.gen_bool(p) {
                    self.admit(g, u)?;
                }
            }
        }
        self.settle(g)
    }

    fn engines(&self) -> impl Iterator<Item = &EsTree> {
        let pv = self.pivot.iter().flat_map(|p| std::iter::once(&p.engine).chain(p.sprime_engines.iter()));
        self.s_engines.iter().chain(pv)
    }

    fn live_work(&self) -> WorkBreakdown {
        WorkBreakdown {
            sample: self.s_engines.iter().map(EsTree::work).sum::<u64>() + self.dist_to_s.work(),
            pivot: self.pivot.as_ref().map_or(0, pivot_work),
            ..WorkBreakdown::default()
        }
    }

    /// `max_v d'(s, v)` (or the in-direction analogue), with a missed vertex
    /// proving a distance of at least `cap + 1`.
    fn ecc_lower(t: &EsTree) -> u32 {
        let m = t.max_estimate();
        if m.all_reached {
            m.value.unwrap_or(0)
        } else {
            t.cap() + 1
        }
    }

    pub fn query(&self) -> Estimate {
        let delta = self.cfg.delta();
        match self.cfg.param {
            Param::Diameter => {
                let d = self.engines().map(Self::ecc_lower).max().unwrap_or(0);
                Estimate::Scalar(d as f64)
            }
            Param::Radius => {
                let best =
                    self.engines().map(|t| t.max_estimate()).filter(|m| m.all_reached).filter_map(|m| m.value).min();
                Estimate::Scalar(best.map_or(f64::INFINITY, |r| r as f64 / (1.0 - delta)))
            }
            Param::Eccentricities => {
                let per_engine: Vec<(&EsTree, f64)> = self.engines().map(|t| (t, Self::ecc_lower(t) as f64)).collect();
                let vals = (0..self.n)
                    .map(|v| {
                        per_engine
                            .iter()
                            .map(|&(t, ecc_s)| match t.dist(v).get() {
                                Some(d) => {
                                    let d = d as f64;
                                    d.max((1.0 - delta) * ecc_s - d / (1.0 - delta))
                                }
                                None => (t.cap() + 1) as f64,
                            })
                            .fold(0.0, f64::max)
                    })
                    .collect();
                Estimate::PerVertex(vals)
            }
        }
    }

    pub fn stats(&self) -> EstimatorStats {
        let mut work = self.retired;
        work += self.live_work();
        EstimatorStats {
            phase: self.phase,
            reinit_count: self.reinit_count,
            work: work.total(),
            work_classes: work,
            engines: self.engines().count()
                + 1
                + usize::from(self.pivot.as_ref().is_some_and(|p| p.sprime_dist.is_some())),
        }
    }
}

/// The three rebuild conditions, checked in order: ball larger than
/// `n^(1-α)`, `|S'|` above `n^(1-α) ln⁴n / (δ·guess)`, and some ball vertex
/// farther than `δ·guess` from `S'`.
pub fn reinit_reason(
    n: usize,
    alpha: f64,
    delta_guess: f64,
    ball_len: usize,
    sprime_len: usize,
    sprime_far: bool,
) -> Option<ReinitReason> {
    let nf = n as f64;
    let limit = nf.powf(1.0 - alpha);
    if ball_len as f64 > limit {
        return Some(ReinitReason::BallTooBig);
    }
    if sprime_len as f64 > limit * nf.max(2.0).ln().powi(4) / delta_guess {
        return Some(ReinitReason::SPrimeTooBig);
    }
    sprime_far.then_some(ReinitReason::SPrimeTooFar)
}

fn pivot_work(p: &Pivot) -> u64 {
    p.engine.work()
        + p.sprime_engines.iter().map(EsTree::work).sum::<u64>()
        + p.sprime_dist.as_ref().map_or(0, EsTree::work)
}
