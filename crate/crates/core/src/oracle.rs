//! Exact eccentricities by one BFS per vertex and direction.

use crate::bfs::bfs;
use crate::dist::Dist;
use crate::graph::{Direction, DynamicGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// `max_u d(v, u)` per vertex.
    pub ecc_out: Vec<Dist>,
    /// `max_u d(u, v)` per vertex.
    pub ecc_in: Vec<Dist>,
    pub diameter: Dist,
    pub radius: Dist,
}

pub fn oracle(g: &DynamicGraph) -> OracleResult {
    let ecc_out = eccentricities(g, Direction::Out);
    let ecc_in = if g.is_directed() { eccentricities(g, Direction::In) } else { ecc_out.clone() };
    let diameter = ecc_out.iter().copied().max().unwrap_or(Dist::ZERO);
    let radius = ecc_out.iter().copied().min().unwrap_or(Dist::ZERO);
    OracleResult { ecc_out, ecc_in, diameter, radius }
}

pub fn eccentricities(g: &DynamicGraph, dir: Direction) -> Vec<Dist> {
    (0..g.n()).map(|v| bfs(g, v, dir).into_iter().max().unwrap_or(Dist::ZERO)).collect()
}

/// True when every vertex reaches every other vertex.
pub fn strongly_connected(g: &DynamicGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    [Direction::Out, Direction::In].into_iter().all(|dir| bfs(g, 0, dir).iter().all(|d| d.is_finite()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_path() {
        let g = DynamicGraph::from_edges(4, false, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let o = oracle(&g);
        assert_eq!(o.diameter, 3.into());
        assert_eq!(o.radius, 2.into());
        let ecc: Vec<_> = o.ecc_out.iter().map(|d| d.value()).collect();
        assert_eq!(ecc, vec![3, 2, 2, 3]);
        assert_eq!(o.ecc_out, o.ecc_in);
    }

    #[test]
    fn directed_triangle() {
        let g = DynamicGraph::from_edges(3, true, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let o = oracle(&g);
        assert_eq!(o.diameter, 2.into());
        assert_eq!(o.radius, 2.into());
        assert!(o.ecc_out.iter().all(|&e| e == 2.into()));
        assert!(strongly_connected(&g));
    }

    #[test]
    fn isolated_vertices_are_infinite() {
        let g = DynamicGraph::new(2, false);
        let o = oracle(&g);
        assert_eq!(o.diameter, Dist::UNKNOWN);
        assert_eq!(o.radius, Dist::UNKNOWN);
        assert!(!strongly_connected(&g));
    }
}
