mod common;

use common::{distances, truth, within};
use dynecc::grid::{Algorithm, Grid, GridConfig};
use dynecc::sssp::{EsTree, Source, SsspConfig};
use dynecc::stream::parse_stream;
use dynecc::workload::{connected_graph, decremental_stream, incremental_stream, random_graph};
use dynecc::{Direction, Mode, Param};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn es_tree_matches_bfs(seed in any::<u64>(), n in 2usize..40, cap in 1i64..10, directed: bool, inc: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (stream, mode) = if inc {
            let g = random_graph(n, n / 2, directed, &mut rng);
            (incremental_stream(&g, 3 * n, 0, &mut rng), Mode::Incremental)
        } else {
            let g = random_graph(n, 3 * n, directed, &mut rng);
            (decremental_stream(&g, 3 * n, false, 0, &mut rng), Mode::Decremental)
        };
        let mut g = stream.initial_graph().unwrap();
        let mut t = EsTree::new(&g, SsspConfig::new(Source::Vertex(0), Direction::Out, cap, mode)).unwrap();
        for e in stream.updates() {
            g.apply(e).unwrap();
            t.apply(&g, e).unwrap();
            prop_assert!(t.check_invariants(&g).is_ok());
            let expected = distances(&g, 0, false, Some(cap as u32));
            for v in 0..n {
                prop_assert_eq!(t.dist(v).get(), expected[v]);
            }
        }
    }

    #[test]
    fn stream_text_round_trips(seed in any::<u64>(), n in 1usize..30, directed: bool, every in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(n, 2 * n, directed, &mut rng);
        let s = decremental_stream(&g, n, false, every, &mut rng);
        let parsed = parse_stream(&s.to_text()).unwrap();
        prop_assert_eq!(parsed, s);
    }
}

/// A tiny sample constant forces failed samples and reinitializations; the
/// reported value must still respect the guarantee.
#[test]
fn sparse_samples_stay_correct() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut reinits = 0;
    for i in 0..12 {
        let g = connected_graph(30, if i % 2 == 0 { 30 } else { 0 }, false, &mut rng);
        let s = if i % 2 == 0 {
            decremental_stream(&g, 25, true, 1, &mut rng)
        } else {
            incremental_stream(&g, 25, 1, &mut rng)
        };
        let mode = dynecc::verify::stream_mode(&s);
        let eps = 0.3;
        let mut cfg = GridConfig::new(Algorithm::Rand, Param::Diameter, eps, mode, i);
        cfg.c_sample = 0.05;
        let mut g = s.initial_graph().unwrap();
        let mut grid = Grid::new(&g, cfg).unwrap();
        for e in s.updates() {
            g.apply(e).unwrap();
            grid.apply(e).unwrap();
            let d = truth(&g).diameter;
            let est = grid.query().scalar().unwrap();
            assert!(within(est, 2.0 * (1.0 - eps) / 3.0 * d - 2.0 / 3.0, d), "D={d} est={est}");
        }
        reinits += grid.stats().reinit_count;
    }
    assert!(reinits > 0);
}
