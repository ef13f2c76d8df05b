use std::collections::VecDeque;

use crate::dist::Dist;
use crate::graph::{Direction, DynamicGraph, VertexId};

/// Static BFS from `s` following `dir`, stopping at depth `cap`.
///
/// Vertices farther than `cap` (or unreachable) are `Dist::UNKNOWN`.
pub fn bfs_truncated(g: &DynamicGraph, s: VertexId, dir: Direction, cap: u32) -> Vec<Dist> {
    assert!(s < g.n(), "source {s} out of range");
    let mut dist = vec![Dist::UNKNOWN; g.n()];
    dist[s] = Dist::ZERO;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].value();
        if du == cap {
            continue;
        }
        for &v in g.step(u, dir) {
            if !dist[v].is_finite() {
                dist[v] = Dist::finite(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Untruncated BFS.
pub fn bfs(g: &DynamicGraph, s: VertexId, dir: Direction) -> Vec<Dist> {
    bfs_truncated(g, s, dir, u32::MAX - 1)
}

/// Multi-source BFS: `d(S, v)` for `Out`, `d(v, S)` for `In`.
pub fn bfs_from_set(g: &DynamicGraph, sources: &[VertexId], dir: Direction, cap: u32) -> Vec<Dist> {
    let mut dist = vec![Dist::UNKNOWN; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !dist[s].is_finite() {
            dist[s] = Dist::ZERO;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].value();
        if du == cap {
            continue;
        }
        for &v in g.step(u, dir) {
            if !dist[v].is_finite() {
                dist[v] = Dist::finite(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}
