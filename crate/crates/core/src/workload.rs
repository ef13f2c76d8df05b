//! Random graphs and update streams for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bfs::bfs;
use crate::graph::{Direction, DynamicGraph, EdgeUpdate, VertexId};
use crate::oracle::strongly_connected;
use crate::stream::{Event, StreamMode, UpdateStream};

/// Connected (strongly connected when directed) graph: a random spanning
/// tree, or a random Hamiltonian cycle when directed, plus `extra` random
/// edges.
pub fn connected_graph(n: usize, extra: usize, directed: bool, rng: &mut impl Rng) -> DynamicGraph {
    let mut g = DynamicGraph::new(n, directed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    if directed {
        if n > 1 {
            for i in 0..n {
                let (u, v) = (order[i], order[(i + 1) % n]);
                if !g.has_edge(u, v) {
                    g.insert_edge(u, v).expect("fresh arc");
                }
            }
        }
    } else {
        for i in 1..n {
            let parent = order[rng.gen_range(0..i)];
            g.insert_edge(parent, order[i]).expect("fresh tree edge");
        }
    }
    add_random_edges(&mut g, extra, rng);
    g
}

/// Graph with `m` uniformly random edges and no connectivity guarantee.
pub fn random_graph(n: usize, m: usize, directed: bool, rng: &mut impl Rng) -> DynamicGraph {
    let mut g = DynamicGraph::new(n, directed);
    add_random_edges(&mut g, m, rng);
    g
}

fn max_edges(n: usize, directed: bool) -> usize {
    if directed {
        n * n.saturating_sub(1)
    } else {
        n * n.saturating_sub(1) / 2
    }
}

fn add_random_edges(g: &mut DynamicGraph, k: usize, rng: &mut impl Rng) {
    let n = g.n();
    let target = (g.m() + k).min(max_edges(n, g.is_directed()));
    while g.m() < target {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.has_edge(u, v) {
            g.insert_edge(u, v).expect("checked absent");
        }
    }
}

fn connected(g: &DynamicGraph) -> bool {
    if g.is_directed() {
        strongly_connected(g)
    } else {
        g.n() == 0 || bfs(g, 0, Direction::Out).iter().all(|d| d.is_finite())
    }
}

fn stream_of(g: &DynamicGraph, mode: StreamMode, updates: Vec<EdgeUpdate>, query_every: usize) -> UpdateStream {
    let mut s = UpdateStream::new(g.n(), g.is_directed(), mode);
    s.initial_edges = g.edges();
    s.events.push(Event::Query);
    for (i, e) in updates.into_iter().enumerate() {
        s.events.push(Event::Update(e));
        if query_every > 0 && (i + 1) % query_every == 0 {
            s.events.push(Event::Query);
        }
    }
    s
}

/// Up to `deletions` random deletions from `g`. With `keep_connected`, only
/// deletions that leave the graph (strongly) connected are taken.
pub fn decremental_stream(
    g: &DynamicGraph,
    deletions: usize,
    keep_connected: bool,
    query_every: usize,
    rng: &mut impl Rng,
) -> UpdateStream {
    let mut cur = g.clone();
    let mut candidates = cur.edges();
    candidates.shuffle(rng);
    let mut updates = Vec::new();
    for (u, v) in candidates {
        if updates.len() == deletions {
            break;
        }
        cur.delete_edge(u, v).expect("edge listed");
        if keep_connected && !connected(&cur) {
            cur.insert_edge(u, v).expect("just removed");
            continue;
        }
        updates.push(EdgeUpdate::delete(u, v));
    }
    stream_of(g, StreamMode::Decremental, updates, query_every)
}

/// `insertions` random insertions of absent edges into `g`.
pub fn incremental_stream(g: &DynamicGraph, insertions: usize, query_every: usize, rng: &mut impl Rng) -> UpdateStream {
    let mut cur = g.clone();
    let mut updates = Vec::new();
    let room = max_edges(g.n(), g.is_directed()) - g.m();
    while updates.len() < insertions.min(room) {
        let (u, v) = (rng.gen_range(0..g.n()), rng.gen_range(0..g.n()));
        if u != v && !cur.has_edge(u, v) {
            cur.insert_edge(u, v).expect("checked absent");
            updates.push(EdgeUpdate::insert(u, v));
        }
    }
    stream_of(g, StreamMode::Incremental, updates, query_every)
}
