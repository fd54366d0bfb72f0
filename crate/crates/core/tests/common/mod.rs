//! Definition-level oracles. Edges are recomputed from the encoder matrix
//! rather than read from the state diagram's table.
#![allow(dead_code)]

use std::collections::BTreeSet;

use quconv::{PauliOp, SymplecticEncoder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawEdge {
    pub from: usize,
    pub to: usize,
    pub physical_zero: bool,
    pub logical_weight: usize,
}

/// Every edge of the state diagram, by direct application of the encoder.
pub fn raw_edges(e: &SymplecticEncoder) -> Vec<Vec<RawEdge>> {
    let pr = e.params();
    let f = pr.field;
    let p = pr.p() as u64;
    let memories = p.pow(2 * pr.m as u32);
    let ancillas = p.pow((pr.n - pr.k) as u32);
    let logicals = p.pow(2 * pr.k as u32);
    (0..memories)
        .map(|v| {
            let mem = PauliOp::from_index(f, pr.m, v).unwrap();
            let mut out = Vec::new();
            for s in 0..ancillas {
                let mut z = vec![0u8; pr.n - pr.k];
                let mut rest = s;
                for d in z.iter_mut() {
                    *d = (rest % p) as u8;
                    rest /= p;
                }
                let anc = PauliOp::new(f, vec![0; pr.n - pr.k], z).unwrap();
                for l in 0..logicals {
                    let log = PauliOp::from_index(f, pr.k, l).unwrap();
                    let t = e.apply_roles(&mem, &anc, &log).unwrap();
                    out.push(RawEdge {
                        from: v as usize,
                        to: t.memory_out.to_index() as usize,
                        physical_zero: t.physical_out.is_identity(),
                        logical_weight: log.weight(),
                    });
                }
            }
            out
        })
        .collect()
}

/// Whether some walk of at most `max_len` edges accepted by `keep` leads
/// from `from` to `to` (zero edges allowed when `from == to`).
pub fn walk_exists(edges: &[Vec<RawEdge>], keep: &dyn Fn(&RawEdge) -> bool, from: usize, to: usize, max_len: usize) -> bool {
    let mut frontier: BTreeSet<usize> = BTreeSet::from([from]);
    if from == to {
        return true;
    }
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for &u in &frontier {
            for e in edges[u].iter().filter(|e| keep(e)) {
                if e.to == to {
                    return true;
                }
                next.insert(e.to);
            }
        }
        frontier = next;
    }
    false
}

/// A closed zero-physical walk of at most `max_len` edges containing an
/// edge of nonzero logical weight.
pub fn catastrophic_by_walks(edges: &[Vec<RawEdge>], max_len: usize) -> bool {
    let zp = |e: &RawEdge| e.physical_zero;
    edges.iter().flatten().any(|e| e.physical_zero && e.logical_weight > 0 && walk_exists(edges, &zp, e.to, e.from, max_len - 1))
}

/// Vertices on a closed walk of at most `max_len` edges accepted by `keep`.
pub fn loop_vertices_by_walks(edges: &[Vec<RawEdge>], keep: &dyn Fn(&RawEdge) -> bool, max_len: usize) -> BTreeSet<usize> {
    (0..edges.len())
        .filter(|&v| edges[v].iter().filter(|e| keep(e)).any(|e| walk_exists(edges, keep, e.to, v, max_len - 1)))
        .collect()
}

/// Depth-first search over explicit paths: a loop vertex, an admissible
/// first edge of logical weight one, then identity-logical edges, total
/// length at most `max_len`. Returns true when no such path contains a
/// closed zero-physical segment.
pub fn recursive_by_paths(edges: &[Vec<RawEdge>], max_len: usize) -> bool {
    let zp = |e: &RawEdge| e.physical_zero;
    let starts = loop_vertices_by_walks(edges, &zp, max_len);
    for &v in &starts {
        for first in edges[v].iter().filter(|e| e.logical_weight == 1) {
            let in_cycle = first.physical_zero && walk_exists(edges, &zp, first.to, first.from, max_len - 1);
            if in_cycle {
                continue;
            }
            let mut path = vec![*first];
            if extend(edges, &mut path, max_len) {
                return false;
            }
        }
    }
    true
}

fn contains_zero_loop(path: &[RawEdge]) -> bool {
    // a segment path[i..j] that closes on itself with every edge zero-physical
    (0..path.len()).any(|i| {
        (i..path.len()).any(|j| path[j].to == path[i].from && path[i..=j].iter().all(|e| e.physical_zero))
    })
}

fn extend(edges: &[Vec<RawEdge>], path: &mut Vec<RawEdge>, max_len: usize) -> bool {
    if contains_zero_loop(path) {
        return true;
    }
    if path.len() >= max_len {
        return false;
    }
    let u = path.last().unwrap().to;
    let options: Vec<RawEdge> = edges[u].iter().filter(|e| e.logical_weight == 0).copied().collect();
    let mut seen = BTreeSet::new();
    for e in options {
        if !seen.insert((e.to, e.physical_zero)) {
            continue;
        }
        path.push(e);
        let hit = extend(edges, path, max_len);
        path.pop();
        if hit {
            return true;
        }
    }
    false
}

/// Memory states with an identity-logical path to the identity.
pub fn finite_memory_by_search(edges: &[Vec<RawEdge>]) -> BTreeSet<usize> {
    let il = |e: &RawEdge| e.logical_weight == 0;
    (0..edges.len()).filter(|&v| walk_exists(edges, &il, v, 0, edges.len())).collect()
}

/// All memory Paulis commuting with every member of `set`.
pub fn centralizer_by_commutators(e: &SymplecticEncoder, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let pr = e.params();
    let total = (pr.p() as u64).pow(2 * pr.m as u32);
    let ops: Vec<PauliOp> = set.iter().map(|&v| PauliOp::from_index(pr.field, pr.m, v as u64).unwrap()).collect();
    (0..total)
        .filter(|&v| {
            let a = PauliOp::from_index(pr.field, pr.m, v).unwrap();
            ops.iter().all(|b| a.commutator(b).unwrap().is_zero())
        })
        .map(|v| v as usize)
        .collect()
}
