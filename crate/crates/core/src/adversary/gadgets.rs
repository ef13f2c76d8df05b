//! Graph constructions. Vertex ids are assigned in creation order; each
//! builder documents its order so instances are reproducible.

use super::ov::OvInstance;
use super::{AdversaryError, GadgetInstance, GadgetKind, Polarity, Source};
use crate::graph::{DynamicGraph, EdgeUpdate, VertexId};

#[derive(Debug, Default)]
struct Builder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn node(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    fn nodes(&mut self, k: usize) -> Vec<VertexId> {
        (0..k).map(|_| self.node()).collect()
    }

    fn edge(&mut self, u: VertexId, v: VertexId) {
        self.edges.push((u, v));
    }

    /// Joins `from` to `to` by `len` edges through `len - 1` new vertices.
    fn path(&mut self, from: VertexId, to: VertexId, len: u32) {
        let mut prev = from;
        for _ in 1..len {
            let x = self.node();
            self.edge(prev, x);
            prev = x;
        }
        self.edge(prev, to);
    }

    /// New path `p[0] - … - p[len]`, optionally reusing `start` as `p[0]`.
    fn chain(&mut self, start: Option<VertexId>, len: u32) -> Vec<VertexId> {
        let mut p = vec![start.unwrap_or_else(|| self.node())];
        for _ in 0..len {
            let x = self.node();
            self.edge(*p.last().unwrap(), x);
            p.push(x);
        }
        p
    }
}

/// Handles into one copy of the base construction.
#[derive(Debug, Clone)]
pub struct BaseHandles {
    pub c_u: Vec<VertexId>,
    pub c_v: Vec<VertexId>,
    /// `u_paths[u][i]` is `u^i`.
    pub u_paths: Vec<Vec<VertexId>>,
    pub v_paths: Vec<Vec<VertexId>>,
}

impl BaseHandles {
    fn stage_pairs(&self, w: &[bool]) -> Vec<(VertexId, VertexId)> {
        (0..w.len()).filter(|&c| w[c]).map(|c| (self.c_u[c], self.c_v[c])).collect()
    }
}

/// Undirected base: `C_U` (d ids), `C_V` (d ids), then each `u` path
/// `u^0..u^a`, each `v` path, then the encoding paths (all of `U` by
/// coordinate, then all of `V`). `shared_u0` replaces the `u^0` vertices.
fn base(b: &mut Builder, inst: &OvInstance, a: u32, shared_u0: Option<&[VertexId]>) -> BaseHandles {
    let c_u = b.nodes(inst.d);
    let c_v = b.nodes(inst.d);
    let u_paths: Vec<_> = (0..inst.u().len()).map(|i| b.chain(shared_u0.map(|s| s[i]), a)).collect();
    let v_paths: Vec<_> = (0..inst.v().len()).map(|_| b.chain(None, a)).collect();
    for (u, vec) in inst.u().iter().enumerate() {
        for c in (0..inst.d).filter(|&c| vec[c]) {
            b.path(u_paths[u][a as usize], c_u[c], a);
        }
    }
    for (v, vec) in inst.v().iter().enumerate() {
        for c in (0..inst.d).filter(|&c| vec[c]) {
            b.path(c_v[c], v_paths[v][0], a);
        }
    }
    BaseHandles { c_u, c_v, u_paths, v_paths }
}

/// Base plus hubs `x` and `y` with length-`a` paths to every `u^a` and every
/// `v^0`.
fn with_hubs(b: &mut Builder, inst: &OvInstance, a: u32, shared_u0: Option<&[VertexId]>) -> BaseHandles {
    let h = base(b, inst, a, shared_u0);
    let x = b.node();
    let y = b.node();
    for p in &h.u_paths {
        b.path(x, p[a as usize], a);
    }
    for p in &h.v_paths {
        b.path(y, p[0], a);
    }
    h
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    kind: GadgetKind,
    a: u32,
    polarity: Polarity,
    directed: bool,
    b: Builder,
    stage_edges: Vec<Vec<(VertexId, VertexId)>>,
    probes: Vec<VertexId>,
    center: Option<VertexId>,
    source: Source,
) -> Result<GadgetInstance, AdversaryError> {
    let mut pool: Vec<_> = stage_edges.iter().flatten().copied().collect();
    pool.sort_unstable();
    pool.dedup();
    let mut base_edges = b.edges;
    if polarity == Polarity::Delete {
        base_edges.extend(&pool);
    }
    let base = DynamicGraph::from_edges(b.n, directed, base_edges)?;
    let stages = stage_edges
        .into_iter()
        .enumerate()
        .map(|(i, mut present)| {
            present.sort_unstable();
            let batch = match polarity {
                Polarity::Insert => present.iter().map(|&(u, v)| EdgeUpdate::insert(u, v)).collect(),
                Polarity::Delete => pool
                    .iter()
                    .filter(|e| present.binary_search(e).is_err())
                    .map(|&(u, v)| EdgeUpdate::delete(u, v))
                    .collect(),
            };
            super::Stage { label: format!("stage-{i}"), element: i, batch }
        })
        .collect();
    Ok(GadgetInstance { kind, a, polarity, base, stages, probes, center, source })
}

fn check_sets(inst: &OvInstance, k: usize) -> Result<OvInstance, AdversaryError> {
    if inst.sets.len() != k {
        return Err(AdversaryError::BadInstance(format!("expected {k} vector sets, got {}", inst.sets.len())));
    }
    inst.cleaned()
}

fn check_eps(eps: f64, hi: f64) -> Result<(), AdversaryError> {
    if eps > 0.0 && eps < hi {
        Ok(())
    } else {
        Err(AdversaryError::EpsOutOfRange(eps))
    }
}

/// Ceiling that ignores float noise just above an integer.
fn ceil(x: f64) -> u32 {
    (x - 1e-9).ceil().max(0.0) as u32
}

pub fn a_diam32(eps: f64) -> u32 {
    ceil((1.0 - 2.0 * eps) / (8.0 * eps)) + 1
}

/// The stated value `(7-6ε)/(9ε)` rounded up to an integer.
pub fn a_ecc53(eps: f64) -> u32 {
    ceil((7.0 - 6.0 * eps) / (9.0 * eps)).max(1)
}

pub fn a_2approx(eps: f64) -> u32 {
    ceil((2.0 - eps) / (2.0 * eps)) + 1
}

pub fn a_directed(eps: f64) -> u32 {
    ceil((3.0 - 3.0 * eps) / eps) + 1
}

/// Base with hubs; stages add `(c_U, c_V)` for `w[c] = 1`.
pub fn gen_diam32(inst: &OvInstance, eps: f64, polarity: Polarity) -> Result<GadgetInstance, AdversaryError> {
    check_eps(eps, 0.5)?;
    let inst = check_sets(inst, 3)?;
    let a = a_diam32(eps);
    let mut b = Builder::default();
    let h = with_hubs(&mut b, &inst, a, None);
    let stages = inst.w().iter().map(|w| h.stage_pairs(w)).collect();
    let probes = h.u_paths.iter().map(|p| p[a as usize]).collect();
    assemble(GadgetKind::Diam32, a, polarity, false, b, stages, probes, None, Source::Ov3(inst))
}

/// Two copies of the hub construction sharing every `u^0`: the left copy
/// is laid out first, then the right copy minus the shared vertices.
pub fn gen_radius32(inst: &OvInstance, eps: f64, polarity: Polarity) -> Result<GadgetInstance, AdversaryError> {
    Ok(radius32_with_handles(inst, eps, polarity)?.0)
}

pub fn radius32_with_handles(
    inst: &OvInstance,
    eps: f64,
    polarity: Polarity,
) -> Result<(GadgetInstance, BaseHandles, BaseHandles), AdversaryError> {
    check_eps(eps, 0.5)?;
    let inst = check_sets(inst, 3)?;
    let a = a_diam32(eps);
    let mut b = Builder::default();
    let left = with_hubs(&mut b, &inst, a, None);
    let shared: Vec<VertexId> = left.u_paths.iter().map(|p| p[0]).collect();
    let right = with_hubs(&mut b, &inst, a, Some(&shared));
    let stages = inst
        .w()
        .iter()
        .map(|w| {
            let mut s = left.stage_pairs(w);
            s.extend(right.stage_pairs(w));
            s
        })
        .collect();
    let gi = assemble(GadgetKind::Radius32, a, polarity, false, b, stages, shared, None, Source::Hs3(inst))?;
    Ok((gi, left, right))
}

/// Base plus a vertex `x` adjacent to every `u^0` (the last id).
pub fn gen_ecc53(inst: &OvInstance, eps: f64, polarity: Polarity) -> Result<GadgetInstance, AdversaryError> {
    check_eps(eps, 1.0)?;
    let inst = check_sets(inst, 3)?;
    let a = a_ecc53(eps);
    let mut b = Builder::default();
    let h = base(&mut b, &inst, a, None);
    let x = b.node();
    for p in &h.u_paths {
        b.edge(x, p[0]);
    }
    let stages = inst.w().iter().map(|w| h.stage_pairs(w)).collect();
    let probes = h.u_paths.iter().map(|p| p[a as usize]).collect();
    assemble(GadgetKind::Ecc53, a, polarity, false, b, stages, probes, None, Source::Ov3(inst))
}

/// Layout: `s`; per coordinate the length-`2a` paths `s → c_left` and
/// `s → c_right`; per vector the left then right path `u^0..u^a`; then
/// encoding paths `u^a - c` on the left, then on the right.
pub fn gen_2approx(inst: &OvInstance, eps: f64, polarity: Polarity) -> Result<GadgetInstance, AdversaryError> {
    check_eps(eps, 2.0)?;
    let inst = check_sets(inst, 2)?;
    let a = a_2approx(eps);
    let mut b = Builder::default();
    let s = b.node();
    let mut c_left = Vec::new();
    let mut c_right = Vec::new();
    for _ in 0..inst.d {
        c_left.push(*b.chain(Some(s), 2 * a).last().unwrap());
        c_right.push(*b.chain(Some(s), 2 * a).last().unwrap());
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for _ in inst.u() {
        left.push(b.chain(None, a));
        right.push(b.chain(None, a));
    }
    for (paths, cs) in [(&left, &c_left), (&right, &c_right)] {
        for (u, vec) in inst.u().iter().enumerate() {
            for c in (0..inst.d).filter(|&c| vec[c]) {
                b.path(paths[u][a as usize], cs[c], a);
            }
        }
    }
    let stages = inst
        .v()
        .iter()
        .map(|v| (0..inst.d).filter(|&c| v[c]).flat_map(|c| [(s, c_left[c]), (s, c_right[c])]).collect())
        .collect();
    let probes = left.iter().map(|p| p[0]).collect();
    assemble(GadgetKind::TwoApprox, a, polarity, false, b, stages, probes, Some(s), Source::Ov2(inst))
}

/// Directed variant. Layout: `C_U`, `C_V`, `u` paths, `v` paths, `x`, `y`,
/// then the length-`a` paths `y → c_V` in coordinate order.
pub fn gen_directed(
    inst: &OvInstance,
    eps: f64,
    kind: GadgetKind,
    polarity: Polarity,
) -> Result<GadgetInstance, AdversaryError> {
    check_eps(eps, 1.0)?;
    let inst = check_sets(inst, 3)?;
    let source = match kind {
        GadgetKind::DirectedEcc => Source::Ov3(inst.clone()),
        GadgetKind::DirectedRadius => Source::Hs3(inst.clone()),
        _ => return Err(AdversaryError::BadInstance(format!("{} is not a directed family", kind.name()))),
    };
    let a = a_directed(eps);
    let mut b = Builder::default();
    let c_u = b.nodes(inst.d);
    let c_v = b.nodes(inst.d);
    let u_paths: Vec<_> = inst.u().iter().map(|_| b.chain(None, a)).collect();
    let v_paths: Vec<_> = inst.v().iter().map(|_| b.chain(None, a)).collect();
    let x = b.node();
    let y = b.node();
    for (u, vec) in inst.u().iter().enumerate() {
        let top = u_paths[u][a as usize];
        for c in (0..inst.d).filter(|&c| vec[c]) {
            b.edge(top, c_u[c]);
        }
        b.edge(top, x);
        b.edge(x, u_paths[u][0]);
    }
    for (v, vec) in inst.v().iter().enumerate() {
        for c in (0..inst.d).filter(|&c| vec[c]) {
            b.edge(c_v[c], v_paths[v][0]);
        }
    }
    for c in 0..inst.d {
        b.edge(c_u[c], y);
        b.path(y, c_v[c], a);
    }
    let stages = inst.w().iter().map(|w| (0..inst.d).filter(|&c| w[c]).map(|c| (c_u[c], c_v[c])).collect()).collect();
    let probes = u_paths.iter().map(|p| p[a as usize]).collect();
    assemble(kind, a, polarity, true, b, stages, probes, None, source)
}

/// Layered copies of a seed digraph. Vertex `v` in layer `i` is
/// `i·n + v` on the left and `(k+1)·n + i·n + v` on the right; then `s`,
/// `t_left`, `t_right`.
pub fn gen_kcycle(seed: &DynamicGraph, k: usize, polarity: Polarity) -> Result<GadgetInstance, AdversaryError> {
    if k == 0 {
        return Err(AdversaryError::BadInstance("k must be positive".into()));
    }
    if !seed.is_directed() {
        return Err(AdversaryError::BadInstance("the cycle seed must be directed".into()));
    }
    let n = seed.n();
    let mut b = Builder::default();
    b.nodes(2 * (k + 1) * n);
    let s = b.node();
    let t = [b.node(), b.node()];
    let id = |side: usize, layer: usize, v: VertexId| side * (k + 1) * n + layer * n + v;
    for side in 0..2 {
        for (x, y) in seed.edges() {
            for i in 0..k {
                b.edge(id(side, i, x), id(side, i + 1, y));
            }
        }
        for layer in 0..=k {
            for v in 0..n {
                b.edge(t[side], id(side, layer, v));
                b.edge(id(side, layer, v), s);
            }
        }
    }
    let stages = (0..n)
        .map(|v| {
            let mut e = Vec::new();
            for side in 0..2 {
                e.push((s, id(side, 0, v)));
                e.push((id(side, k, v), t[side]));
            }
            e
        })
        .collect();
    let source = Source::KCycle { graph: seed.clone(), k };
    assemble(GadgetKind::KCycle, 0, polarity, true, b, stages, Vec::new(), Some(s), source)
}
