use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index in `0..n`. Ties anywhere in the crate break toward the
/// smaller id.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(VertexId, VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} out of range for n={1}")]
    VertexOutOfRange(VertexId, usize),
}

/// Which way a traversal follows edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Distances from the source: `d(s, v)`.
    Out,
    /// Distances to the source: `d(v, s)`.
    In,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UpdateKind {
    Insert,
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeUpdate {
    pub kind: UpdateKind,
    pub u: VertexId,
    pub v: VertexId,
}

impl EdgeUpdate {
    pub fn insert(u: VertexId, v: VertexId) -> Self {
        EdgeUpdate { kind: UpdateKind::Insert, u, v }
    }

    pub fn delete(u: VertexId, v: VertexId) -> Self {
        EdgeUpdate { kind: UpdateKind::Delete, u, v }
    }

    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            UpdateKind::Insert => UpdateKind::Delete,
            UpdateKind::Delete => UpdateKind::Insert,
        };
        EdgeUpdate { kind, ..self }
    }
}

/// Unweighted graph with a fixed vertex set and a mutable edge set.
///
/// Undirected graphs keep `out_adj` and `in_adj` identical, so every
/// direction-aware routine works unchanged on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicGraph {
    n: usize,
    directed: bool,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    edges: HashSet<(VertexId, VertexId)>,
}

impl DynamicGraph {
    pub fn new(n: usize, directed: bool) -> Self {
        DynamicGraph { n, directed, out_adj: vec![Vec::new(); n], in_adj: vec![Vec::new(); n], edges: HashSet::new() }
    }

    pub fn from_edges(
        n: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = DynamicGraph::new(n, directed);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    /// Neighbours reached by one step of a traversal in direction `dir`.
    pub fn step(&self, v: VertexId, dir: Direction) -> &[VertexId] {
        match dir {
            Direction::Out => &self.out_adj[v],
            Direction::In => &self.in_adj[v],
        }
    }

    fn key(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        if self.directed || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.edges.contains(&self.key(u, v))
    }

    /// Edges in canonical form (`u < v` for undirected graphs), sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self.edges.iter().copied().collect();
        out.sort_unstable();
        out
    }

    fn check(&self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange(x, self.n));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u, v)?;
        if !self.edges.insert(self.key(u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.out_adj[u].push(v);
        self.in_adj[v].push(u);
        if !self.directed {
            self.out_adj[v].push(u);
            self.in_adj[u].push(v);
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u, v)?;
        if !self.edges.remove(&self.key(u, v)) {
            return Err(GraphError::MissingEdge(u, v));
        }
        detach(&mut self.out_adj[u], v);
        detach(&mut self.in_adj[v], u);
        if !self.directed {
            detach(&mut self.out_adj[v], u);
            detach(&mut self.in_adj[u], v);
        }
        Ok(())
    }

    pub fn apply(&mut self, e: &EdgeUpdate) -> Result<(), GraphError> {
        match e.kind {
            UpdateKind::Insert => self.insert_edge(e.u, e.v),
            UpdateKind::Delete => self.delete_edge(e.u, e.v),
        }
    }
}

fn detach(list: &mut Vec<VertexId>, x: VertexId) {
    if let Some(pos) = list.iter().position(|&y| y == x) {
        list.remove(pos);
    }
}
