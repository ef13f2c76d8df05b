//! Hard instances from the conditional lower-bound reductions.
//!
//! Every generator turns a seed instance (vectors or a digraph) into a base
//! graph plus one edge batch per stage. After a stage's batch is applied the
//! queried parameter sits on one side of a gap decided by a combinatorial
//! event: an orthogonal triple or pair, a hitting set, or a closed walk.

pub mod gadgets;
pub mod ov;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::estimate::Param;
use crate::graph::{DynamicGraph, EdgeUpdate, GraphError, VertexId};
use crate::oracle::oracle;
use crate::stream::{Event, StreamMode, UpdateStream};
pub use gadgets::{gen_2approx, gen_diam32, gen_directed, gen_ecc53, gen_kcycle, gen_radius32};
pub use ov::OvInstance;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AdversaryError {
    #[error("cleaning removed every vector of some set")]
    DegenerateInstance,
    #[error("bad seed instance: {0}")]
    BadInstance(String),
    #[error("epsilon {0} outside the range of this construction")]
    EpsOutOfRange(f64),
    #[error("instance has {n} vertices, oracle limit is {limit}")]
    TooLargeForOracle { n: usize, limit: usize },
    #[error("{stage}: {detail}")]
    CertificationFailed { stage: String, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Diam32,
    Radius32,
    Ecc53,
    TwoApprox,
    DirectedEcc,
    DirectedRadius,
    KCycle,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 7] = [
        GadgetKind::Diam32,
        GadgetKind::Radius32,
        GadgetKind::Ecc53,
        GadgetKind::TwoApprox,
        GadgetKind::DirectedEcc,
        GadgetKind::DirectedRadius,
        GadgetKind::KCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Diam32 => "diam32",
            GadgetKind::Radius32 => "radius32",
            GadgetKind::Ecc53 => "ecc53",
            GadgetKind::TwoApprox => "2approx",
            GadgetKind::DirectedEcc => "directed-ecc",
            GadgetKind::DirectedRadius => "directed-radius",
            GadgetKind::KCycle => "kcycle",
        }
    }

    pub fn param(self) -> Param {
        match self {
            GadgetKind::Diam32 | GadgetKind::KCycle => Param::Diameter,
            GadgetKind::Radius32 | GadgetKind::TwoApprox | GadgetKind::DirectedRadius => Param::Radius,
            GadgetKind::Ecc53 | GadgetKind::DirectedEcc => Param::Eccentricities,
        }
    }

    pub fn directed(self) -> bool {
        matches!(self, GadgetKind::DirectedEcc | GadgetKind::DirectedRadius | GadgetKind::KCycle)
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GadgetKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown gadget kind `{s}`"))
    }
}

/// Whether stages add their edges to a base without them, or delete the
/// unused ones from a base holding every stage edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Insert,
    Delete,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Ov3(OvInstance),
    Hs3(OvInstance),
    Ov2(OvInstance),
    KCycle { graph: DynamicGraph, k: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub label: String,
    /// Index of the stage's `w` (or `v`) in the cleaned seed.
    pub element: usize,
    pub batch: Vec<EdgeUpdate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", content = "value", rename_all = "snake_case")]
pub enum Relation {
    AtLeast(u32),
    AtMost(u32),
    Exactly(u32),
    Finite,
    Infinite,
}

impl Relation {
    pub fn holds(self, x: f64) -> bool {
        match self {
            Relation::AtLeast(b) => x >= b as f64,
            Relation::AtMost(b) => x <= b as f64,
            Relation::Exactly(b) => x == b as f64,
            Relation::Finite => x.is_finite(),
            Relation::Infinite => x.is_infinite(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::AtLeast(b) => write!(f, ">= {b}"),
            Relation::AtMost(b) => write!(f, "<= {b}"),
            Relation::Exactly(b) => write!(f, "= {b}"),
            Relation::Finite => f.write_str("finite"),
            Relation::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    /// Padding length; 0 where the construction has none.
    pub a: u32,
    pub polarity: Polarity,
    pub base: DynamicGraph,
    pub stages: Vec<Stage>,
    /// Vertices the gap statement is about: `u^a` for the eccentricity
    /// families, the shared `u^0` for the undirected radius, the left `u^0`
    /// for the pair construction.
    pub probes: Vec<VertexId>,
    /// The designated center `s` where the construction has one.
    pub center: Option<VertexId>,
    pub source: Source,
}

/// Outcome of the brute-force decision for one stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageEvent {
    pub holds: bool,
    /// Seed indices of `u` taking part in the event.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub event: bool,
    pub param: &'static str,
    pub measured: f64,
    pub expected: Relation,
}

impl GadgetInstance {
    pub fn event(&self, stage: usize) -> StageEvent {
        let e = self.stages[stage].element;
        let (holds, witnesses) = match &self.source {
            Source::Ov3(i) => {
                let w = ov::ov3_witnesses(i, e);
                (!w.is_empty(), w)
            }
            Source::Hs3(i) => {
                let w = ov::hs3_witnesses(i, e);
                (!w.is_empty(), w)
            }
            Source::Ov2(i) => {
                let w = ov::ov2_witnesses(i, e);
                (!w.is_empty(), w)
            }
            Source::KCycle { graph, k } => (ov::closed_walk(graph, e, *k), Vec::new()),
        };
        StageEvent { holds, witnesses }
    }

    /// Bound the queried parameter obeys when the event holds or not.
    pub fn expected(&self, event: bool) -> Relation {
        let a = self.a;
        match (self.kind, event) {
            (GadgetKind::Diam32, true) => Relation::AtLeast(6 * a + 1),
            (GadgetKind::Diam32, false) => Relation::AtMost(4 * a + 1),
            (GadgetKind::Radius32, true) => Relation::AtMost(4 * a + 1),
            (GadgetKind::Radius32, false) => Relation::AtLeast(6 * a + 1),
            (GadgetKind::Ecc53, true) => Relation::AtLeast(5 * a + 1),
            (GadgetKind::Ecc53, false) => Relation::AtMost(3 * a + 2),
            (GadgetKind::TwoApprox, true) => Relation::AtLeast(4 * a),
            (GadgetKind::TwoApprox, false) => Relation::Exactly(2 * a + 1),
            (GadgetKind::DirectedEcc, true) => Relation::Exactly(2 * a + 3),
            (GadgetKind::DirectedEcc, false) => Relation::AtMost(a + 3),
            (GadgetKind::DirectedRadius, true) => Relation::Exactly(a + 3),
            (GadgetKind::DirectedRadius, false) => Relation::AtLeast(2 * a + 3),
            (GadgetKind::KCycle, true) => Relation::Finite,
            (GadgetKind::KCycle, false) => Relation::Infinite,
        }
    }

    /// Checks one applied stage against the oracle. Returns the measured
    /// value, or a description of the violated claim.
    fn measure(&self, g: &DynamicGraph, ev: &StageEvent) -> Result<f64, String> {
        let o = oracle(g);
        let expected = self.expected(ev.holds);
        let ecc = |v: VertexId| o.ecc_out[v].as_f64();
        let fail = |what: String| Err(format!("{what} violates {expected}"));
        match self.kind {
            GadgetKind::Diam32 | GadgetKind::KCycle => {
                let d = o.diameter.as_f64();
                if expected.holds(d) {
                    Ok(d)
                } else {
                    fail(format!("diameter {d}"))
                }
            }
            GadgetKind::Radius32 | GadgetKind::TwoApprox | GadgetKind::DirectedRadius => {
                let r = o.radius.as_f64();
                if !expected.holds(r) {
                    return fail(format!("radius {r}"));
                }
                if self.kind == GadgetKind::TwoApprox {
                    let s = self.center.expect("pair construction has a center");
                    if ecc(s) != r {
                        return Err(format!("ecc(s) = {} differs from radius {r}", ecc(s)));
                    }
                    let d = o.diameter.as_f64();
                    let ok = if ev.holds { d >= 8.0 * self.a as f64 } else { d <= 4.0 * self.a as f64 + 2.0 };
                    if !ok {
                        return Err(format!("diameter {d} on the wrong side"));
                    }
                }
                if self.kind == GadgetKind::DirectedRadius && !self.probes.iter().any(|&u| ecc(u) == r) {
                    return Err("no u^a attains the radius".into());
                }
                Ok(r)
            }
            GadgetKind::Ecc53 | GadgetKind::DirectedEcc => {
                if ev.holds {
                    let vals: Vec<f64> = ev.witnesses.iter().map(|&u| ecc(self.probes[u])).collect();
                    match vals.iter().find(|&&x| !expected.holds(x)) {
                        Some(x) => fail(format!("ecc(u^a) = {x}")),
                        None => Ok(vals.iter().copied().fold(f64::INFINITY, f64::min)),
                    }
                } else {
                    let worst = self.probes.iter().map(|&u| ecc(u)).fold(0.0, f64::max);
                    if expected.holds(worst) {
                        Ok(worst)
                    } else {
                        fail(format!("max ecc(u^a) = {worst}"))
                    }
                }
            }
        }
    }

    /// Applies each stage to a copy of the base, checks the oracle value
    /// against the brute-force decision, and reverts the batch.
    pub fn certify(&self, max_nodes: usize) -> Result<Vec<StageReport>, AdversaryError> {
        if self.base.n() > max_nodes {
            return Err(AdversaryError::TooLargeForOracle { n: self.base.n(), limit: max_nodes });
        }
        let reference = self.base.edges();
        let mut g = self.base.clone();
        let mut out = Vec::new();
        for (i, stage) in self.stages.iter().enumerate() {
            let failed = |detail: String| AdversaryError::CertificationFailed { stage: stage.label.clone(), detail };
            for e in &stage.batch {
                g.apply(e).map_err(|e| failed(e.to_string()))?;
            }
            let ev = self.event(i);
            let measured = self.measure(&g, &ev).map_err(failed)?;
            for e in stage.batch.iter().rev() {
                g.apply(&e.inverse()).map_err(|e| failed(e.to_string()))?;
            }
            if g.edges() != reference {
                return Err(failed("reverting the batch did not restore the base graph".into()));
            }
            out.push(StageReport {
                stage: stage.label.clone(),
                event: ev.holds,
                param: self.kind.param().name(),
                measured,
                expected: self.expected(ev.holds),
            });
        }
        Ok(out)
    }

    /// All stages in one stream: marker, batch, query, inverse batch.
    pub fn to_stream(&self) -> UpdateStream {
        let mut s = UpdateStream::new(self.base.n(), self.base.is_directed(), StreamMode::FullyDynamic);
        s.initial_edges = self.base.edges();
        for st in &self.stages {
            s.events.push(Event::Stage(st.label.clone()));
            s.events.extend(st.batch.iter().map(|&e| Event::Update(e)));
            s.events.push(Event::Query);
            s.events.extend(st.batch.iter().rev().map(|e| Event::Update(e.inverse())));
        }
        s
    }

    /// One stage as a partially dynamic stream.
    pub fn stage_stream(&self, stage: usize) -> UpdateStream {
        let mode = match self.polarity {
            Polarity::Insert => StreamMode::Incremental,
            Polarity::Delete => StreamMode::Decremental,
        };
        let st = &self.stages[stage];
        let mut s = UpdateStream::new(self.base.n(), self.base.is_directed(), mode);
        s.initial_edges = self.base.edges();
        s.events.push(Event::Stage(st.label.clone()));
        s.events.extend(st.batch.iter().map(|&e| Event::Update(e)));
        s.events.push(Event::Query);
        s
    }

    /// JSON lines, one per stage, with the expected bound.
    pub fn sidecar(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            stage: &'a str,
            kind: &'static str,
            param: &'static str,
            a: u32,
            event: bool,
            expected: Relation,
        }
        let mut out = String::new();
        for (i, st) in self.stages.iter().enumerate() {
            let event = self.event(i).holds;
            let line = Line {
                stage: &st.label,
                kind: self.kind.name(),
                param: self.kind.param().name(),
                a: self.a,
                event,
                expected: self.expected(event),
            };
            out.push_str(&serde_json::to_string(&line).expect("plain struct serializes"));
            out.push('\n');
        }
        out
    }
}
