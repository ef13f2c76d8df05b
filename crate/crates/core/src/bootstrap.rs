//! Static constant-factor estimates used to lay out the initial guess grid.

use thiserror::Error;

use crate::bfs::bfs;
use crate::dist::Dist;
use crate::estimate::Param;
use crate::graph::{Direction, DynamicGraph};

/// Root of every bootstrap BFS.
pub const BOOTSTRAP_ROOT: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BootstrapError {
    #[error("the {0} is infinite: some vertex pair is disconnected")]
    InfiniteParameter(Param),
    #[error("graph has no vertices")]
    EmptyGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BootstrapEstimate {
    /// `D/2 <= est <= D`.
    Diameter { est: u32 },
    /// `R <= est <= 2R`.
    Radius { est: u32 },
    /// `lower[v] <= ecc(v) <= upper[v]` with `upper[v] <= 3 * lower[v]`.
    Eccentricities { lower: Vec<u32>, upper: Vec<u32> },
    /// Fallback `[1, n-1]` where no static algorithm is wired in.
    Trivial { lo: u32, hi: u32 },
}

impl BootstrapEstimate {
    /// Interval guaranteed to contain every value of the parameter.
    pub fn range(&self) -> (u32, u32) {
        match self {
            BootstrapEstimate::Diameter { est } => (*est, est.saturating_mul(2)),
            BootstrapEstimate::Radius { est } => (est.div_ceil(2), *est),
            BootstrapEstimate::Eccentricities { lower, upper } => {
                (lower.iter().copied().min().unwrap_or(0), upper.iter().copied().max().unwrap_or(0))
            }
            BootstrapEstimate::Trivial { lo, hi } => (*lo, *hi),
        }
    }
}

fn ecc_of(dist: &[Dist], param: Param) -> Result<u32, BootstrapError> {
    dist.iter().copied().max().and_then(Dist::get).ok_or(BootstrapError::InfiniteParameter(param))
}

pub fn static_bootstrap(g: &DynamicGraph, param: Param) -> Result<BootstrapEstimate, BootstrapError> {
    let n = g.n();
    if n == 0 {
        return Err(BootstrapError::EmptyGraph);
    }
    let r = BOOTSTRAP_ROOT;
    match param {
        Param::Diameter => {
            let out = ecc_of(&bfs(g, r, Direction::Out), param)?;
            let est = if g.is_directed() { out.max(ecc_of(&bfs(g, r, Direction::In), param)?) } else { out };
            Ok(BootstrapEstimate::Diameter { est })
        }
        _ if g.is_directed() => Ok(BootstrapEstimate::Trivial { lo: 1.min(n as u32 - 1), hi: n as u32 - 1 }),
        Param::Radius => Ok(BootstrapEstimate::Radius { est: ecc_of(&bfs(g, r, Direction::Out), param)? }),
        Param::Eccentricities => {
            let dist = bfs(g, r, Direction::Out);
            let ecc_r = ecc_of(&dist, param)?;
            let (lower, upper) = dist
                .iter()
                .map(|d| {
                    let d = d.value();
                    // ecc(v) >= d(v,r), >= ecc(r) - d(r,v), and >= R >= ecc(r)/2.
                    let lo = d.max(ecc_r - d).max(ecc_r.div_ceil(2));
                    (lo, d + ecc_r)
                })
                .unzip();
            Ok(BootstrapEstimate::Eccentricities { lower, upper })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle;

    #[test]
    fn star_diameter_within_factor_two() {
        // Every choice of root: the centre gives 1, a leaf gives 2; oracle D = 2.
        for root in 0..4 {
            let edges = [(0, 1), (0, 2), (0, 3)].map(|(a, b)| ((a + root) % 4, (b + root) % 4));
            let g = DynamicGraph::from_edges(4, false, edges).unwrap();
            let BootstrapEstimate::Diameter { est } = static_bootstrap(&g, Param::Diameter).unwrap() else {
                panic!("wrong variant");
            };
            assert!((1..=2).contains(&est));
            assert_eq!(oracle(&g).diameter, 2.into());
        }
    }

    #[test]
    fn path_radius_from_endpoint_is_tight() {
        let g = DynamicGraph::from_edges(5, false, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let b = static_bootstrap(&g, Param::Radius).unwrap();
        assert_eq!(b, BootstrapEstimate::Radius { est: 4 });
        assert_eq!(b.range(), (2, 4));
    }

    #[test]
    fn directed_radius_falls_back_to_trivial_bracket() {
        let g = DynamicGraph::from_edges(3, true, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = static_bootstrap(&g, Param::Radius).unwrap();
        assert_eq!(b, BootstrapEstimate::Trivial { lo: 1, hi: 2 });
    }

    #[test]
    fn disconnected_is_reported() {
        let g = DynamicGraph::from_edges(3, false, [(0, 1)]).unwrap();
        assert_eq!(static_bootstrap(&g, Param::Diameter), Err(BootstrapError::InfiniteParameter(Param::Diameter)));
    }

    #[test]
    fn eccentricity_brackets_hold_on_a_tree() {
        // Spider with legs of length 3, 2 and 1 around vertex 0.
        let edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (0, 6)];
        let g = DynamicGraph::from_edges(7, false, edges).unwrap();
        let o = oracle(&g);
        let BootstrapEstimate::Eccentricities { lower, upper } = static_bootstrap(&g, Param::Eccentricities).unwrap()
        else {
            panic!("wrong variant");
        };
        for v in 0..7 {
            let e = o.ecc_out[v].value();
            assert!(lower[v] <= e && e <= upper[v], "vertex {v}");
            assert!(upper[v] <= 3 * lower[v]);
        }
    }
}
