//! Truncated dynamic single-source shortest paths via Even-Shiloach trees.
//!
//! An engine observes a [`DynamicGraph`] it does not own: the caller mutates
//! the graph first and then notifies every engine of the same update.
//!
//! Set sources are rooted at an internal dummy vertex (index `n`) joined to
//! every member, so internal levels are shifted by one against the exposed
//! distances `d(S, v)` / `d(v, S)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::dist::Dist;
use crate::estimate::Mode;
use crate::graph::{Direction, DynamicGraph, EdgeUpdate, UpdateKind, VertexId};

const NONE: usize = usize::MAX;
const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsspError {
    #[error("depth cap must be non-negative, got {0}")]
    CapNonPositive(i64),
    #[error("{op} not allowed on a {mode:?} engine")]
    ModeMismatch { op: &'static str, mode: Mode },
    #[error("source set is empty")]
    EmptySet,
    #[error("ball radius {r} exceeds the cap {cap}")]
    RadiusExceedsCap { r: u32, cap: u32 },
    #[error("vertex {0} out of range")]
    BadVertex(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Vertex(VertexId),
    Set(Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SsspConfig {
    pub source: Source,
    pub direction: Direction,
    pub cap: i64,
    pub mode: Mode,
    /// Backend slack; the Even-Shiloach backend is exact and always reports 0.
    pub delta: f64,
}

impl SsspConfig {
    pub fn new(source: Source, direction: Direction, cap: i64, mode: Mode) -> Self {
        SsspConfig { source, direction, cap, mode, delta: 0.0 }
    }
}

/// Vertices whose exposed estimate changed, with old and new values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChangeSet {
    pub changed: Vec<(VertexId, Dist, Dist)>,
}

impl ChangeSet {
    pub fn is_empty(&self) -> bool {
        self.changed.is_empty()
    }
}

/// Largest finite estimate and whether every vertex has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxEstimate {
    pub value: Option<u32>,
    pub all_reached: bool,
}

#[derive(Debug, Clone)]
pub struct EsTree {
    cfg: SsspConfig,
    n: usize,
    root: usize,
    /// 1 for set sources (the dummy sits at level 0), else 0.
    offset: u32,
    icap: u32,
    level: Vec<u32>,
    parent: Vec<usize>,
    in_set: Vec<bool>,
    work: u64,
    hist: BTreeMap<u32, usize>,
    reached: usize,
}

impl EsTree {
    pub fn new(g: &DynamicGraph, cfg: SsspConfig) -> Result<EsTree, SsspError> {
        if cfg.cap < 0 {
            return Err(SsspError::CapNonPositive(cfg.cap));
        }
        let cap = cfg.cap.min(u32::MAX as i64 - 2) as u32;
        let n = g.n();
        let mut in_set = vec![false; n];
        let (root, offset) = match &cfg.source {
            Source::Vertex(s) => {
                if *s >= n {
                    return Err(SsspError::BadVertex(*s));
                }
                (*s, 0)
            }
            Source::Set(set) => {
                if set.is_empty() {
                    return Err(SsspError::EmptySet);
                }
                for &s in set {
                    if s >= n {
                        return Err(SsspError::BadVertex(s));
                    }
                    in_set[s] = true;
                }
                (n, 1)
            }
        };
        let mut t = EsTree {
            cfg,
            n,
            root,
            offset,
            icap: cap + offset,
            level: vec![UNREACHED; n + 1],
            parent: vec![NONE; n + 1],
            in_set,
            work: 0,
            hist: BTreeMap::new(),
            reached: 0,
        };
        t.build(g);
        Ok(t)
    }

    fn build(&mut self, g: &DynamicGraph) {
        self.level[self.root] = 0;
        let mut queue = VecDeque::from([self.root]);
        while let Some(x) = queue.pop_front() {
            let lx = self.level[x];
            if lx == self.icap {
                continue;
            }
            for c in self.children(g, x) {
                self.work += 1;
                if self.level[c] == UNREACHED {
                    self.level[c] = lx + 1;
                    self.parent[c] = x;
                    queue.push_back(c);
                }
            }
        }
        for v in 0..self.n {
            if self.level[v] != UNREACHED {
                self.track_add(self.level[v] - self.offset);
            }
        }
    }

    pub fn config(&self) -> &SsspConfig {
        &self.cfg
    }

    pub fn cap(&self) -> u32 {
        self.icap - self.offset
    }

    pub fn mode(&self) -> Mode {
        self.cfg.mode
    }

    pub fn direction(&self) -> Direction {
        self.cfg.direction
    }

    /// Cumulative scan, relaxation and level-increase steps.
    pub fn work(&self) -> u64 {
        self.work
    }

    pub fn is_member(&self, v: VertexId) -> bool {
        self.in_set[v]
    }

    /// Exposed estimate for a real vertex.
    pub fn dist(&self, v: VertexId) -> Dist {
        self.exposed(self.level[v])
    }

    pub fn distances(&self) -> Vec<Dist> {
        (0..self.n).map(|v| self.dist(v)).collect()
    }

    /// Tree parent of `v`; `None` for the root, set members (whose parent is
    /// the dummy) and unreached vertices.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v];
        (p != NONE && p != self.n).then_some(p)
    }

    fn exposed(&self, level: u32) -> Dist {
        if level == UNREACHED {
            Dist::UNKNOWN
        } else {
            Dist::finite(level - self.offset)
        }
    }

    /// Vertices one tree step below `x` in the traversal direction.
    fn children(&self, g: &DynamicGraph, x: usize) -> Vec<usize> {
        if x == self.n {
            (0..self.n).filter(|&v| self.in_set[v]).collect()
        } else {
            g.step(x, self.cfg.direction).to_vec()
        }
    }

    fn parent_candidates<'g>(&self, g: &'g DynamicGraph, v: usize) -> impl Iterator<Item = usize> + 'g {
        let dummy = (self.in_set[v]).then_some(self.n);
        dummy.into_iter().chain(g.step(v, self.cfg.direction.reverse()).iter().copied())
    }

    fn track_add(&mut self, d: u32) {
        *self.hist.entry(d).or_insert(0) += 1;
        self.reached += 1;
    }

    fn track_remove(&mut self, d: u32) {
        let c = self.hist.get_mut(&d).expect("tracked level present");
        *c -= 1;
        if *c == 0 {
            self.hist.remove(&d);
        }
        self.reached -= 1;
    }

    fn set_level(&mut self, v: usize, new: u32, touched: &mut HashMap<usize, u32>) {
        let old = self.level[v];
        if old == new {
            return;
        }
        touched.entry(v).or_insert(old);
        if v < self.n {
            if old != UNREACHED {
                self.track_remove(old - self.offset);
            }
            if new != UNREACHED {
                self.track_add(new - self.offset);
            }
        }
        self.level[v] = new;
    }

    fn change_set(&self, touched: HashMap<usize, u32>) -> ChangeSet {
        let mut changed: Vec<_> = touched
            .into_iter()
            .filter(|&(v, old)| v < self.n && old != self.level[v])
            .map(|(v, old)| (v, self.exposed(old), self.dist(v)))
            .collect();
        changed.sort_unstable_by_key(|c| c.0);
        ChangeSet { changed }
    }

    /// Tree-direction arcs `(a, b)` (b one step below a) for a graph edge.
    fn arcs(&self, g: &DynamicGraph, u: VertexId, v: VertexId) -> Vec<(usize, usize)> {
        let forward = match self.cfg.direction {
            Direction::Out => (u, v),
            Direction::In => (v, u),
        };
        if g.is_directed() {
            vec![forward]
        } else {
            vec![(u, v), (v, u)]
        }
    }

    pub fn apply(&mut self, g: &DynamicGraph, e: &EdgeUpdate) -> Result<ChangeSet, SsspError> {
        match e.kind {
            UpdateKind::Insert => self.insert(g, e.u, e.v),
            UpdateKind::Delete => self.delete(g, e.u, e.v),
        }
    }

    /// Notifies the engine that edge `(u, v)` was inserted into `g`.
    pub fn insert(&mut self, g: &DynamicGraph, u: VertexId, v: VertexId) -> Result<ChangeSet, SsspError> {
        if self.cfg.mode != Mode::Incremental {
            return Err(SsspError::ModeMismatch { op: "insert", mode: self.cfg.mode });
        }
        let mut touched = HashMap::new();
        for (a, b) in self.arcs(g, u, v) {
            self.relax_from(g, a, b, &mut touched);
        }
        Ok(self.change_set(touched))
    }

    /// Adds `v` to the source set (incremental set engines only).
    pub fn grow(&mut self, g: &DynamicGraph, v: VertexId) -> Result<ChangeSet, SsspError> {
        if self.cfg.mode != Mode::Incremental {
            return Err(SsspError::ModeMismatch { op: "grow", mode: self.cfg.mode });
        }
        if v >= self.n || self.offset == 0 {
            return Err(SsspError::BadVertex(v));
        }
        let mut touched = HashMap::new();
        if !self.in_set[v] {
            self.in_set[v] = true;
            if let Source::Set(s) = &mut self.cfg.source {
                s.push(v);
            }
            self.relax_from(g, self.n, v, &mut touched);
        }
        Ok(self.change_set(touched))
    }

    fn relax_from(&mut self, g: &DynamicGraph, a: usize, b: usize, touched: &mut HashMap<usize, u32>) {
        self.work += 1;
        let la = self.level[a];
        if la == UNREACHED || la + 1 > self.icap || la + 1 >= self.level[b] {
            return;
        }
        self.set_level(b, la + 1, touched);
        self.parent[b] = a;
        let mut queue = VecDeque::from([b]);
        while let Some(x) = queue.pop_front() {
            let lx = self.level[x];
            if lx == self.icap {
                continue;
            }
            for c in self.children(g, x) {
                self.work += 1;
                if lx + 1 < self.level[c] {
                    self.set_level(c, lx + 1, touched);
                    self.parent[c] = x;
                    queue.push_back(c);
                }
            }
        }
    }

    /// Notifies the engine that edge `(u, v)` was deleted from `g`.
    pub fn delete(&mut self, g: &DynamicGraph, u: VertexId, v: VertexId) -> Result<ChangeSet, SsspError> {
        if self.cfg.mode != Mode::Decremental {
            return Err(SsspError::ModeMismatch { op: "delete", mode: self.cfg.mode });
        }
        let mut touched = HashMap::new();
        let mut queue = BTreeSet::new();
        for (a, b) in self.arcs(g, u, v) {
            self.work += 1;
            if self.parent[b] == a {
                self.parent[b] = NONE;
                queue.insert((self.level[b], b));
            }
        }
        while let Some((lv, x)) = queue.pop_first() {
            debug_assert_eq!(lv, self.level[x]);
            let want = lv - 1;
            let mut found = NONE;
            for p in self.parent_candidates(g, x) {
                self.work += 1;
                if self.level[p] == want {
                    found = p;
                    break;
                }
            }
            if found != NONE {
                self.parent[x] = found;
                continue;
            }
            // No support at this level: drop one level and detach children.
            self.work += 1;
            let next = if lv + 1 > self.icap { UNREACHED } else { lv + 1 };
            for c in self.children(g, x) {
                self.work += 1;
                if self.parent[c] == x {
                    self.parent[c] = NONE;
                    queue.insert((self.level[c], c));
                }
            }
            self.set_level(x, next, &mut touched);
            if next != UNREACHED {
                queue.insert((next, x));
            }
        }
        Ok(self.change_set(touched))
    }

    /// Vertices whose estimate is at most `r`.
    pub fn ball(&self, r: u32) -> Result<Vec<VertexId>, SsspError> {
        if r > self.cap() {
            return Err(SsspError::RadiusExceedsCap { r, cap: self.cap() });
        }
        Ok((0..self.n).filter(|&v| self.dist(v) <= Dist::finite(r)).collect())
    }

    pub fn max_estimate(&self) -> MaxEstimate {
        MaxEstimate { value: self.hist.keys().next_back().copied(), all_reached: self.reached == self.n }
    }

    /// Full audit of the tree invariants against `g`, for tests.
    pub fn check_invariants(&self, g: &DynamicGraph) -> Result<(), String> {
        if self.level[self.root] != 0 {
            return Err("root level is not zero".into());
        }
        for v in 0..self.n {
            let l = self.level[v];
            if l == UNREACHED || v == self.root {
                continue;
            }
            if l > self.icap {
                return Err(format!("vertex {v} above cap"));
            }
            let p = self.parent[v];
            if p == NONE || self.level[p] != l - 1 {
                return Err(format!("vertex {v} has no valid parent"));
            }
            let edge_ok = if p == self.n {
                self.in_set[v]
            } else {
                match self.cfg.direction {
                    Direction::Out => g.has_edge(p, v),
                    Direction::In => g.has_edge(v, p),
                }
            };
            if !edge_ok {
                return Err(format!("parent edge of {v} missing"));
            }
        }
        let finite = self.level[..self.n].iter().filter(|&&l| l != UNREACHED).count();
        if finite != self.reached || self.hist.values().sum::<usize>() != finite {
            return Err("max tracker out of sync".into());
        }
        Ok(())
    }
}

/// Engine rooted at a dummy vertex joined to every member of `set`.
pub fn set_source(
    g: &DynamicGraph,
    set: &[VertexId],
    dir: Direction,
    cap: i64,
    mode: Mode,
) -> Result<EsTree, SsspError> {
    EsTree::new(g, SsspConfig::new(Source::Set(set.to_vec()), dir, cap, mode))
}
