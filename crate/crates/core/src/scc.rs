//! Strongly connected components (iterative Tarjan) and the top component.

use crate::graph::{DynamicGraph, VertexId};

/// Component index per vertex. Tarjan emits components in reverse
/// topological order, so component 0 is a sink of the condensation.
pub fn scc_ids(g: &DynamicGraph) -> (Vec<usize>, usize) {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(VertexId, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let out = g.out_neighbors(v);
            if *pos < out.len() {
                let w = out[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let x = stack.pop().expect("tarjan stack holds the component");
                    on_stack[x] = false;
                    comp[x] = count;
                    if x == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// The component from which every vertex is reachable, sorted; empty when
/// the condensation has more than one source.
pub fn top_scc(g: &DynamicGraph) -> Vec<VertexId> {
    if g.n() == 0 {
        return Vec::new();
    }
    let (comp, count) = scc_ids(g);
    let mut has_incoming = vec![false; count];
    for (u, v) in g.edges() {
        let pairs = if g.is_directed() { vec![(u, v)] } else { vec![(u, v), (v, u)] };
        for (a, b) in pairs {
            if comp[a] != comp[b] {
                has_incoming[comp[b]] = true;
            }
        }
    }
    let sources: Vec<usize> = (0..count).filter(|&c| !has_incoming[c]).collect();
    match sources[..] {
        [top] => (0..g.n()).filter(|&v| comp[v] == top).collect(),
        _ => Vec::new(),
    }
}
