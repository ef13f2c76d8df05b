//! Test-side reference computations, written independently of the crate's
//! own BFS and oracle.

#![allow(dead_code)]

use std::collections::VecDeque;

use dynecc::{DynamicGraph, VertexId};

/// Distances from `s` following out-arcs (`reverse = false`) or in-arcs.
pub fn distances(g: &DynamicGraph, s: VertexId, reverse: bool, cap: Option<u32>) -> Vec<Option<u32>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        let dx = d[x].unwrap();
        if cap.is_some_and(|c| dx >= c) {
            continue;
        }
        let next = if reverse { g.in_neighbors(x) } else { g.out_neighbors(x) };
        for &y in next {
            if d[y].is_none() {
                d[y] = Some(dx + 1);
                q.push_back(y);
            }
        }
    }
    d
}

/// Exact parameters with `f64::INFINITY` for unreachable pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Truth {
    pub ecc: Vec<f64>,
    pub diameter: f64,
    pub radius: f64,
}

pub fn truth(g: &DynamicGraph) -> Truth {
    let ecc: Vec<f64> = (0..g.n())
        .map(|v| distances(g, v, false, None).iter().map(|d| d.map_or(f64::INFINITY, |x| x as f64)).fold(0.0, f64::max))
        .collect();
    let diameter = ecc.iter().copied().fold(0.0, f64::max);
    let radius = ecc.iter().copied().fold(f64::INFINITY, f64::min);
    Truth { ecc, diameter, radius }
}

pub const TOL: f64 = 1e-9;

pub fn within(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo - TOL && x <= hi + TOL
}
