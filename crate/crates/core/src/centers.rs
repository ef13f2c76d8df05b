//! Deterministic greedy center selection by ball peeling.
//!
//! With `γ = ε'·guess/2`, balls have radius `⌊γ⌋` and a vertex qualifies as
//! a center when its ball in the residual graph holds at least
//! `T = max(1, ⌈γ⌉)` vertices. Every vertex of the scope ends up labeled with
//! a center at distance at most `ε'·guess`.

use std::collections::VecDeque;

use crate::estimate::EstimatorError;
use crate::graph::{DynamicGraph, VertexId};

/// Counters from the selection scans.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SelectionStats {
    /// Edges traversed by pruned counting scans.
    pub pruned_edges: u64,
    /// Exact ball computations triggered by a pruned count reaching `T`.
    pub exact_checks: u64,
    /// Scans that started at a vertex already holding a counter (always 0).
    pub rescanned_roots: u64,
    /// Vertices made centers outside the peeling step.
    pub promotions: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterSet {
    pub centers: Vec<VertexId>,
    /// Center assigned to each scope vertex.
    pub label: Vec<Option<VertexId>>,
    /// Upper bound on `d(label[v], v)` established at labeling time.
    pub bound: Vec<u32>,
    pub eps_prime: f64,
    pub guess: u32,
    pub stats: SelectionStats,
}

impl CenterSet {
    fn gamma(&self) -> f64 {
        self.eps_prime * self.guess as f64 / 2.0
    }

    pub fn ball_radius(&self) -> u32 {
        self.gamma().floor() as u32
    }

    pub fn threshold(&self) -> usize {
        (self.gamma().ceil() as usize).max(1)
    }

    /// Integer coverage radius `⌊ε'·guess⌋`.
    pub fn coverage(&self) -> u32 {
        (self.eps_prime * self.guess as f64).floor() as u32
    }

    pub fn is_center(&self, v: VertexId) -> bool {
        self.label[v] == Some(v)
    }

    /// Tightens stored bounds, e.g. from current center distances.
    pub fn refresh_bounds(&mut self, mut dist_to_center: impl FnMut(VertexId, VertexId) -> Option<u32>) {
        for v in 0..self.label.len() {
            if let Some(c) = self.label[v] {
                if let Some(d) = dist_to_center(c, v) {
                    self.bound[v] = self.bound[v].min(d);
                }
            }
        }
    }

    /// Labels every vertex of `scope` that has no label yet, keeping all
    /// existing centers and labels.
    pub fn extend(&mut self, g: &DynamicGraph, scope: &[VertexId]) -> Result<(), EstimatorError> {
        let mut alive = vec![false; g.n()];
        for &v in scope {
            alive[v] = self.label[v].is_none();
        }
        let mut in_scope = vec![false; g.n()];
        for &v in scope {
            in_scope[v] = true;
        }
        self.peel(g, &mut alive);
        self.sweep(g, &mut alive, &in_scope);
        match scope.iter().find(|&&v| self.label[v].is_none()) {
            Some(&v) => Err(EstimatorError::NotCoveringScope(v)),
            None => Ok(()),
        }
    }

    /// Vertices of the residual graph within `radius` of `v`, with depths.
    fn residual_ball(&self, g: &DynamicGraph, alive: &[bool], v: VertexId, radius: u32) -> Vec<(VertexId, u32)> {
        let mut seen = vec![false; g.n()];
        seen[v] = true;
        let mut out = vec![(v, 0)];
        let mut queue = VecDeque::from([(v, 0)]);
        while let Some((x, d)) = queue.pop_front() {
            if d == radius {
                continue;
            }
            for &y in g.out_neighbors(x) {
                if alive[y] && !seen[y] {
                    seen[y] = true;
                    out.push((y, d + 1));
                    queue.push_back((y, d + 1));
                }
            }
        }
        out
    }

    /// Step 2: scan alive vertices by increasing id. A scan does not expand
    /// vertices that already hold a counter; it adds their counter instead,
    /// which can only overestimate the ball. Overestimates that reach the
    /// threshold are confirmed with an exact ball before the vertex becomes
    /// a center.
    fn peel(&mut self, g: &DynamicGraph, alive: &mut [bool]) {
        let n = g.n();
        let r = self.ball_radius();
        let t = self.threshold();
        let mut counter = vec![0usize; n];
        let mut seen = vec![usize::MAX; n];
        for y in 0..n {
            if !alive[y] {
                continue;
            }
            if counter[y] != 0 {
                self.stats.rescanned_roots += 1;
            }
            let mut estimate = 1usize;
            seen[y] = y;
            let mut queue = VecDeque::from([(y, 0u32)]);
            while let Some((x, d)) = queue.pop_front() {
                if d == r || estimate >= t {
                    continue;
                }
                for &z in g.out_neighbors(x) {
                    self.stats.pruned_edges += 1;
                    if !alive[z] || seen[z] == y {
                        continue;
                    }
                    seen[z] = y;
                    if counter[z] != 0 {
                        estimate += counter[z];
                    } else {
                        estimate += 1;
                        queue.push_back((z, d + 1));
                    }
                }
            }
            let mut exact = None;
            if estimate >= t {
                self.stats.exact_checks += 1;
                let ball = self.residual_ball(g, alive, y, r);
                if ball.len() >= t {
                    self.centers.push(y);
                    for (x, d) in ball {
                        alive[x] = false;
                        self.label[x] = Some(y);
                        self.bound[x] = d;
                    }
                    counter.iter_mut().for_each(|c| *c = 0);
                    continue;
                }
                exact = Some(ball.len());
            }
            counter[y] = exact.unwrap_or(estimate);
        }
    }

    /// Steps 3 and 4: repeatedly take the lowest-id alive vertex with a
    /// labeled in-neighbor (sources of the residual graph first), inherit
    /// that neighbor's center and label everything it still reaches.
    fn sweep(&mut self, g: &DynamicGraph, alive: &mut [bool], in_scope: &[bool]) {
        let n = g.n();
        let limit = self.coverage();
        let labeled_parent = |cs: &CenterSet, u: VertexId| {
            g.in_neighbors(u)
                .iter()
                .copied()
                .filter(|&w| in_scope[w] && cs.label[w].is_some())
                .min_by_key(|&w| (cs.bound[w], w))
        };
        let residual_source = |alive: &[bool], u: VertexId| g.in_neighbors(u).iter().all(|&w| !alive[w]);
        let mut sources: Vec<VertexId> = (0..n).filter(|&u| alive[u] && residual_source(alive, u)).collect();
        sources.reverse();
        loop {
            let pick = loop {
                match sources.pop() {
                    Some(u) if alive[u] => break Some(u),
                    Some(_) => continue,
                    None => break (0..n).find(|&u| alive[u] && labeled_parent(self, u).is_some()),
                }
            };
            let Some(u) = pick.or_else(|| (0..n).find(|&u| alive[u])) else {
                return;
            };
            let inherited = labeled_parent(self, u).and_then(|w| {
                let b = self.bound[w] + 1;
                let c = self.label[w].expect("labeled");
                (b <= limit).then_some((c, b))
            });
            let (center, base) = inherited.unwrap_or_else(|| {
                self.centers.push(u);
                self.stats.promotions += 1;
                (u, 0)
            });
            for (x, d) in self.residual_ball(g, alive, u, u32::MAX) {
                alive[x] = false;
                self.label[x] = Some(center);
                self.bound[x] = base + d;
            }
        }
    }
}

/// Runs the full selection on the subgraph induced by `scope`.
pub fn select_centers(g: &DynamicGraph, guess: u32, eps: f64, scope: &[VertexId]) -> Result<CenterSet, EstimatorError> {
    if guess == 0 {
        return Err(EstimatorError::GuessNonPositive);
    }
    let mut cs = CenterSet {
        centers: Vec::new(),
        label: vec![None; g.n()],
        bound: vec![0; g.n()],
        eps_prime: eps / 2.0,
        guess,
        stats: SelectionStats::default(),
    };
    cs.extend(g, scope)?;
    Ok(cs)
}
