//! Orthogonal-vectors and hitting-set seed instances with brute-force
//! decisions.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::AdversaryError;
use crate::graph::{DynamicGraph, VertexId};

/// Two or three sets of 0/1 vectors of common dimension `d`.
/// `sets[0]` is U, `sets[1]` is V, `sets[2]` (if present) is W.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvInstance {
    pub d: usize,
    pub sets: Vec<Vec<Vec<bool>>>,
}

/// File form: each vector is a string of `0`/`1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OvFile {
    pub sets: Vec<Vec<String>>,
}

impl OvInstance {
    pub fn from_strings<S: AsRef<str>>(sets: &[Vec<S>]) -> Result<Self, AdversaryError> {
        let mut d = None;
        let mut out = Vec::new();
        for set in sets {
            let mut vs = Vec::new();
            for s in set {
                let s = s.as_ref();
                let v: Vec<bool> = s
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(AdversaryError::BadInstance(format!("`{s}` is not a 0/1 string"))),
                    })
                    .collect::<Result<_, _>>()?;
                if *d.get_or_insert(v.len()) != v.len() {
                    return Err(AdversaryError::BadInstance("vectors differ in length".into()));
                }
                vs.push(v);
            }
            out.push(vs);
        }
        Ok(OvInstance { d: d.unwrap_or(0), sets: out })
    }

    pub fn to_file(&self) -> OvFile {
        let enc = |v: &Vec<bool>| v.iter().map(|&b| if b { '1' } else { '0' }).collect();
        OvFile { sets: self.sets.iter().map(|s| s.iter().map(enc).collect()).collect() }
    }

    /// Independent Bernoulli(`p`) entries.
    pub fn random(sizes: &[usize], d: usize, p: f64, rng: &mut impl Rng) -> Self {
        let sets = sizes.iter().map(|&k| (0..k).map(|_| (0..d).map(|_| rng.gen_bool(p)).collect()).collect()).collect();
        OvInstance { d, sets }
    }

    /// Drops coordinates that are zero across a whole set and all-zero
    /// vectors, repeating until neither rule applies.
    pub fn cleaned(&self) -> Result<OvInstance, AdversaryError> {
        let mut cur = self.clone();
        loop {
            let keep: Vec<usize> = (0..cur.d).filter(|&c| cur.sets.iter().all(|s| s.iter().any(|v| v[c]))).collect();
            let mut changed = keep.len() != cur.d;
            let mut sets = Vec::with_capacity(cur.sets.len());
            for s in &cur.sets {
                let mut kept = Vec::new();
                for v in s {
                    let w: Vec<bool> = keep.iter().map(|&c| v[c]).collect();
                    if w.iter().any(|&b| b) {
                        kept.push(w);
                    } else {
                        changed = true;
                    }
                }
                sets.push(kept);
            }
            cur = OvInstance { d: keep.len(), sets };
            if cur.sets.iter().any(|s| s.is_empty()) {
                return Err(AdversaryError::DegenerateInstance);
            }
            if !changed {
                return Ok(cur);
            }
        }
    }

    pub fn u(&self) -> &[Vec<bool>] {
        &self.sets[0]
    }

    pub fn v(&self) -> &[Vec<bool>] {
        &self.sets[1]
    }

    pub fn w(&self) -> &[Vec<bool>] {
        &self.sets[2]
    }
}

fn meets(a: &[bool], b: &[bool], c: Option<&[bool]>) -> bool {
    (0..a.len()).any(|i| a[i] && b[i] && c.is_none_or(|c| c[i]))
}

/// Indices `u` such that some `v` makes `(u, v, w)` an orthogonal triple.
pub fn ov3_witnesses(inst: &OvInstance, w: usize) -> Vec<usize> {
    let w = &inst.w()[w];
    (0..inst.u().len()).filter(|&u| inst.v().iter().any(|v| !meets(&inst.u()[u], v, Some(w)))).collect()
}

/// Indices `u` such that `{u, w}` hits every `v`.
pub fn hs3_witnesses(inst: &OvInstance, w: usize) -> Vec<usize> {
    let w = &inst.w()[w];
    (0..inst.u().len()).filter(|&u| inst.v().iter().all(|v| meets(&inst.u()[u], v, Some(w)))).collect()
}

/// Indices `u` orthogonal to `v` (two-set instance).
pub fn ov2_witnesses(inst: &OvInstance, v: usize) -> Vec<usize> {
    let v = &inst.v()[v];
    (0..inst.u().len()).filter(|&u| !meets(&inst.u()[u], v, None)).collect()
}

/// Whether a closed walk of exactly `k` arcs starts and ends at `v`.
pub fn closed_walk(g: &DynamicGraph, v: VertexId, k: usize) -> bool {
    let mut at = vec![false; g.n()];
    at[v] = true;
    for _ in 0..k {
        let mut next = vec![false; g.n()];
        for x in (0..g.n()).filter(|&x| at[x]) {
            for &y in g.out_neighbors(x) {
                next[y] = true;
            }
        }
        at = next;
    }
    at[v]
}
