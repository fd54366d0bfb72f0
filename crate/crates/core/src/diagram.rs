//! The state diagram of an encoder and the graph algorithms run on it.
//!
//! Vertices are the `p^{2m}` memory Paulis, numbered by
//! [`PauliOp::to_index`]. From every vertex there is one edge per input
//! label `(S, L)`, with `S` a Z-type ancilla Pauli and `L` any logical
//! Pauli; labels are numbered `s_index · p^{2k} + l_index`. The edge's target
//! and physical output follow from applying the encoder. Edges are never
//! stored as objects: the diagram keeps a flat `(target, physical weight)`
//! table and materializes [`Edge`] values on request.

use std::collections::{BTreeSet, VecDeque};

use crate::encoder::{CodeParams, SymplecticEncoder};
use crate::error::{Error, Result};
use crate::pauli::{index_to_symplectic, PauliOp};

pub const MAX_VERTICES: u64 = 1_000_000;
pub const MAX_TABLE_ENTRIES: u64 = 1 << 26;

pub type VertexSet = BTreeSet<usize>;

/// Predicate on edges. `none()` rejects everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeFilter {
    pub require_zero_physical: bool,
    pub require_identity_logical: bool,
    pub reject_all: bool,
}

impl EdgeFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn none() -> Self {
        EdgeFilter { reject_all: true, ..Self::default() }
    }

    pub fn zero_physical() -> Self {
        EdgeFilter { require_zero_physical: true, ..Self::default() }
    }

    pub fn identity_logical() -> Self {
        EdgeFilter { require_identity_logical: true, ..Self::default() }
    }

    pub fn zero_physical_identity_logical() -> Self {
        EdgeFilter { require_zero_physical: true, require_identity_logical: true, reject_all: false }
    }

    #[inline]
    pub fn accepts(&self, physical_weight: u8, logical_weight: u8) -> bool {
        !self.reject_all
            && (!self.require_zero_physical || physical_weight == 0)
            && (!self.require_identity_logical || logical_weight == 0)
    }
}

/// Compact handle to an edge: source vertex and input label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub ancilla: PauliOp,
    pub logical: PauliOp,
    pub physical: PauliOp,
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} -> {} | S = {} | L = {} | P = {}",
            self.from, self.to, self.ancilla, self.logical, self.physical
        )
    }
}

/// A simple cycle: `vertices[i] → vertices[i+1]` along `edges[i]`, closing
/// back to `vertices[0]`, which is the smallest vertex on the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

/// Strongly connected components, each named by its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy)]
struct Transition {
    to: u32,
    physical_weight: u8,
}

pub struct StateDiagram<'a> {
    encoder: &'a SymplecticEncoder,
    params: CodeParams,
    vertices: usize,
    labels: usize,
    logical_weight: Vec<u8>,
    table: Vec<Transition>,
}

impl<'a> StateDiagram<'a> {
    pub fn new(encoder: &'a SymplecticEncoder) -> Result<Self> {
        if !encoder.is_valid() {
            return Err(Error::InvalidEncoder("matrix is not symplectic".into()));
        }
        let params = *encoder.params();
        let f = params.field;
        let p = f.p() as u64;
        let vertices = p.checked_pow(2 * params.m as u32).unwrap_or(u64::MAX);
        if vertices > MAX_VERTICES {
            return Err(Error::ScaleGuard { what: "p^(2m) vertices", size: vertices, limit: MAX_VERTICES });
        }
        let labels = p.checked_pow((params.ancillas() + 2 * params.k) as u32).unwrap_or(u64::MAX);
        let entries = vertices.saturating_mul(labels);
        if entries > MAX_TABLE_ENTRIES {
            return Err(Error::ScaleGuard { what: "edge table entries", size: entries, limit: MAX_TABLE_ENTRIES });
        }
        let (vertices, labels) = (vertices as usize, labels as usize);
        let (m, n, k) = (params.m, params.n, params.k);
        let qudits = params.qudits();
        let dim = params.dim();
        let matrix = encoder.matrix();

        // column index of each input coordinate
        let mem_cols: Vec<usize> = (0..m).chain(qudits..qudits + m).collect();
        let anc_cols: Vec<usize> = (qudits + m..qudits + m + n - k).collect();
        let log_cols: Vec<usize> = (m + n - k..qudits).chain(qudits + m + n - k..dim).collect();

        let image = |cols: &[usize], digits: &[u8]| -> Vec<u8> {
            let mut out = vec![0u8; dim];
            for (&c, &d) in cols.iter().zip(digits) {
                if d == 0 {
                    continue;
                }
                for (r, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(matrix.get(r, c), d));
                }
            }
            out
        };

        let mem_images: Vec<Vec<u8>> = (0..vertices)
            .map(|v| image(&mem_cols, &index_to_symplectic(f.p(), 2 * m, v as u64)))
            .collect();
        let logicals = p.pow(2 * k as u32) as usize;
        let mut logical_weight = Vec::with_capacity(labels);
        let label_images: Vec<Vec<u8>> = (0..labels)
            .map(|label| {
                let (s, l) = (label / logicals, label % logicals);
                let sd = index_to_symplectic(f.p(), n - k, s as u64);
                let ld = index_to_symplectic(f.p(), 2 * k, l as u64);
                logical_weight.push((0..k).filter(|&i| ld[i] != 0 || ld[k + i] != 0).count() as u8);
                let mut out = image(&anc_cols, &sd);
                for (o, v) in out.iter_mut().zip(image(&log_cols, &ld)) {
                    *o = f.add(*o, v);
                }
                out
            })
            .collect();

        let mut table = Vec::with_capacity(vertices * labels);
        let mut out = vec![0u8; dim];
        for mi in &mem_images {
            for li in &label_images {
                for ((o, &a), &b) in out.iter_mut().zip(mi).zip(li) {
                    *o = f.add(a, b);
                }
                let physical_weight = (0..n).filter(|&q| out[q] != 0 || out[qudits + q] != 0).count() as u8;
                let mut to = 0u64;
                for j in (0..m).rev() {
                    to = to * p + out[qudits + n + j] as u64;
                }
                for j in (0..m).rev() {
                    to = to * p + out[n + j] as u64;
                }
                table.push(Transition { to: to as u32, physical_weight });
            }
        }
        Ok(StateDiagram { encoder, params, vertices, labels, logical_weight, table })
    }

    pub fn encoder(&self) -> &SymplecticEncoder {
        self.encoder
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    /// Out-degree before filtering, `p^{(n-k) + 2k}`.
    pub fn num_labels(&self) -> usize {
        self.labels
    }

    /// Number of logical Paulis `p^{2k}`; labels below this have `S = I`.
    pub fn logical_label_count(&self) -> usize {
        self.labels / (self.params.p() as usize).pow(self.params.ancillas() as u32)
    }

    #[inline]
    pub fn target(&self, from: usize, label: usize) -> usize {
        self.table[from * self.labels + label].to as usize
    }

    #[inline]
    pub fn physical_weight(&self, from: usize, label: usize) -> u8 {
        self.table[from * self.labels + label].physical_weight
    }

    #[inline]
    pub fn logical_weight(&self, label: usize) -> u8 {
        self.logical_weight[label]
    }

    #[inline]
    pub fn accepts(&self, filter: &EdgeFilter, from: usize, label: usize) -> bool {
        filter.accepts(self.physical_weight(from, label), self.logical_weight[label])
    }

    pub fn memory_pauli(&self, v: usize) -> PauliOp {
        PauliOp::from_index(self.params.field, self.params.m, v as u64).expect("vertex in range")
    }

    /// Ancilla and logical Paulis of an input label.
    pub fn label_paulis(&self, label: usize) -> (PauliOp, PauliOp) {
        let f = self.params.field;
        let (n, k) = (self.params.n, self.params.k);
        let logicals = (f.p() as usize).pow(2 * k as u32);
        let sd = index_to_symplectic(f.p(), n - k, (label / logicals) as u64);
        let ancilla = PauliOp::new(f, vec![0; n - k], sd).expect("residues");
        let logical = PauliOp::from_index(f, k, (label % logicals) as u64).expect("label in range");
        (ancilla, logical)
    }

    /// Label of an `(S, L)` pair.
    pub fn label_of(&self, ancilla: &PauliOp, logical: &PauliOp) -> usize {
        let p = self.params.p() as usize;
        let s = ancilla.z().iter().rev().fold(0usize, |acc, &d| acc * p + d as usize);
        s * p.pow(2 * self.params.k as u32) + logical.to_index() as usize
    }

    pub fn edge_id(&self, from: usize, label: usize) -> EdgeId {
        EdgeId { from, to: self.target(from, label), label }
    }

    /// Full edge, recomputed through the encoder.
    pub fn edge(&self, id: EdgeId) -> Edge {
        let (ancilla, logical) = self.label_paulis(id.label);
        let t = self
            .encoder
            .apply_roles(&self.memory_pauli(id.from), &ancilla, &logical)
            .expect("role sizes match");
        debug_assert_eq!(t.memory_out.to_index() as usize, id.to);
        Edge { from: id.from, to: t.memory_out.to_index() as usize, ancilla, logical, physical: t.physical_out }
    }

    /// Outgoing edges of `v` in label order.
    pub fn edges_from<'s>(&'s self, v: usize, filter: EdgeFilter) -> impl Iterator<Item = Edge> + 's {
        self.edge_ids_from(v, filter).map(move |id| self.edge(id))
    }

    pub fn edge_ids_from<'s>(&'s self, v: usize, filter: EdgeFilter) -> impl Iterator<Item = EdgeId> + 's {
        (0..self.labels).filter(move |&l| self.accepts(&filter, v, l)).map(move |l| self.edge_id(v, l))
    }

    /// Distinct filtered successors of every vertex, sorted.
    pub fn successors(&self, filter: &EdgeFilter) -> Vec<Vec<usize>> {
        (0..self.vertices)
            .map(|v| {
                let mut s: Vec<usize> =
                    (0..self.labels).filter(|&l| self.accepts(filter, v, l)).map(|l| self.target(v, l)).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    pub fn scc(&self, filter: &EdgeFilter) -> Components {
        tarjan(&self.successors(filter))
    }

    /// Vertices lying on at least one filtered cycle.
    pub fn loop_vertices(&self, filter: &EdgeFilter) -> VertexSet {
        let succ = self.successors(filter);
        loop_mask(&succ, &tarjan(&succ)).iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
    }

    pub fn reachable(&self, filter: &EdgeFilter, start: &VertexSet) -> VertexSet {
        let succ = self.successors(filter);
        reach_mask(&succ, start.iter().copied()).iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
    }

    /// Shortest filtered path from `from` into `targets` (empty if `from` is
    /// already a target). Ties resolve toward lower labels.
    pub fn shortest_path(&self, filter: &EdgeFilter, from: usize, targets: &[bool]) -> Option<Vec<EdgeId>> {
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.vertices];
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if targets[u] {
                let mut path = Vec::new();
                let mut cur = u;
                while let Some(e) = parent[cur] {
                    path.push(e);
                    cur = e.from;
                }
                path.reverse();
                return Some(path);
            }
            for id in self.edge_ids_from(u, *filter) {
                if !seen[id.to] {
                    seen[id.to] = true;
                    parent[id.to] = Some(id);
                    queue.push_back(id.to);
                }
            }
        }
        None
    }

    /// Simple cycles by vertex sequence (parallel edges collapsed), each
    /// starting at its smallest vertex. The flag is false when `budget`
    /// (or the matching search-step allowance) cut the enumeration short.
    pub fn vertex_cycles(&self, filter: &EdgeFilter, max_len: usize, budget: usize) -> (Vec<Vec<usize>>, bool) {
        let succ = self.successors(filter);
        let comps = tarjan(&succ);
        let mut out = Vec::new();
        let mut on_path = vec![false; self.vertices];
        let mut steps = step_allowance(budget);
        for s in 0..self.vertices {
            let mut path = vec![s];
            on_path[s] = true;
            let ok = cycles_from(s, &succ, &comps.component_of, max_len, budget, &mut steps, &mut path, &mut on_path, &mut out);
            on_path[s] = false;
            if !ok {
                return (out, false);
            }
        }
        (out, true)
    }

    /// All simple cycles of length `<= max_len`, one per choice of parallel
    /// edges.
    pub fn enumerate_simple_cycles(&self, filter: &EdgeFilter, max_len: usize, budget: usize) -> Result<Vec<Cycle>> {
        let (vcycles, complete) = self.vertex_cycles(filter, max_len, budget);
        if !complete {
            return Err(Error::EnumerationBudgetExceeded { budget });
        }
        let mut out = Vec::new();
        for vs in vcycles {
            let hops: Vec<Vec<EdgeId>> = (0..vs.len())
                .map(|i| {
                    let (u, w) = (vs[i], vs[(i + 1) % vs.len()]);
                    self.edge_ids_from(u, *filter).filter(|e| e.to == w).collect()
                })
                .collect();
            let mut choice = vec![0usize; hops.len()];
            loop {
                if out.len() >= budget {
                    return Err(Error::EnumerationBudgetExceeded { budget });
                }
                out.push(Cycle { vertices: vs.clone(), edges: choice.iter().zip(&hops).map(|(&c, h)| h[c]).collect() });
                let Some(pos) = (0..hops.len()).rev().find(|&i| choice[i] + 1 < hops[i].len()) else {
                    break;
                };
                choice[pos] += 1;
                for c in &mut choice[pos + 1..] {
                    *c = 0;
                }
            }
        }
        Ok(out)
    }

    /// Memory sequences `[M_0, …, M_{t-1}]` of finite standard paths with
    /// `t <= max_len`: identity-logical steps, no identity vertex along the
    /// way, no repeated vertex, and an identity-logical edge from `M_{t-1}`
    /// to the identity.
    pub fn finite_standard_paths(&self, max_len: usize, budget: usize) -> (Vec<Vec<usize>>, bool) {
        let succ = self.successors(&EdgeFilter::identity_logical());
        let mut out = Vec::new();
        let mut on_path = vec![false; self.vertices];
        let mut steps = step_allowance(budget);
        for s in 1..self.vertices {
            let mut path = vec![s];
            on_path[s] = true;
            let ok = standard_paths_from(&succ, max_len, budget, &mut steps, &mut path, &mut on_path, &mut out);
            on_path[s] = false;
            if !ok {
                return (out, false);
            }
        }
        (out, true)
    }

    pub fn enumerate_finite_standard_paths(&self, max_len: usize, budget: usize) -> Result<Vec<Vec<usize>>> {
        match self.finite_standard_paths(max_len, budget) {
            (paths, true) => Ok(paths),
            _ => Err(Error::EnumerationBudgetExceeded { budget }),
        }
    }
}

/// Depth-first steps allowed per enumerated item.
pub const STEPS_PER_ITEM: usize = 512;

fn step_allowance(budget: usize) -> usize {
    budget.saturating_mul(STEPS_PER_ITEM)
}

#[allow(clippy::too_many_arguments)]
fn cycles_from(
    start: usize,
    succ: &[Vec<usize>],
    comp: &[usize],
    max_len: usize,
    budget: usize,
    steps: &mut usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) -> bool {
    let u = *path.last().expect("nonempty path");
    for &w in &succ[u] {
        if w == start {
            if out.len() >= budget {
                return false;
            }
            out.push(path.clone());
        } else if w > start && !on_path[w] && comp[w] == comp[start] && path.len() < max_len {
            if *steps == 0 {
                return false;
            }
            *steps -= 1;
            path.push(w);
            on_path[w] = true;
            let ok = cycles_from(start, succ, comp, max_len, budget, steps, path, on_path, out);
            on_path[w] = false;
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

fn standard_paths_from(
    succ: &[Vec<usize>],
    max_len: usize,
    budget: usize,
    steps: &mut usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) -> bool {
    let u = *path.last().expect("nonempty path");
    if succ[u].first() == Some(&0) {
        if out.len() >= budget {
            return false;
        }
        out.push(path.clone());
    }
    if path.len() >= max_len {
        return true;
    }
    for &w in &succ[u] {
        if w != 0 && !on_path[w] {
            if *steps == 0 {
                return false;
            }
            *steps -= 1;
            path.push(w);
            on_path[w] = true;
            let ok = standard_paths_from(succ, max_len, budget, steps, path, on_path, out);
            on_path[w] = false;
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Iterative Tarjan over sorted successor lists.
pub(crate) fn tarjan(succ: &[Vec<usize>]) -> Components {
    let n = succ.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component_of = vec![UNSEEN; n];
    let mut components = Vec::new();
    let mut counter = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next == 0 && index[v] == UNSEEN {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = succ[v].get(*next) {
                *next += 1;
                if index[w] == UNSEEN {
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
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                let name = comp[0];
                for &w in &comp {
                    component_of[w] = name;
                }
                components.push(comp);
            }
        }
    }
    components.sort_by_key(|c| c[0]);
    Components { component_of, components }
}

pub(crate) fn loop_mask(succ: &[Vec<usize>], comps: &Components) -> Vec<bool> {
    let mut mask = vec![false; succ.len()];
    for comp in &comps.components {
        if comp.len() > 1 {
            for &v in comp {
                mask[v] = true;
            }
        }
    }
    for (v, s) in succ.iter().enumerate() {
        if s.binary_search(&v).is_ok() {
            mask[v] = true;
        }
    }
    mask
}

pub(crate) fn reach_mask(succ: &[Vec<usize>], start: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = start.into_iter().collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(u) = stack.pop() {
        for &w in &succ[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::encoder::{random_encoder, Gate};

    fn params(p: u64, m: usize, n: usize, k: usize) -> CodeParams {
        CodeParams::new(p, m, n, k).unwrap()
    }

    #[test]
    fn out_degree_matches_label_count() {
        let e = random_encoder(params(3, 1, 2, 1), 1, 40);
        let d = StateDiagram::new(&e).unwrap();
        assert_eq!(d.num_vertices(), 9);
        for v in 0..9 {
            assert_eq!(d.edges_from(v, EdgeFilter::all()).count(), 27);
        }
    }

    #[test]
    fn identity_self_loop() {
        let e = random_encoder(params(3, 1, 2, 1), 2, 40);
        let d = StateDiagram::new(&e).unwrap();
        let first = d.edges_from(0, EdgeFilter::all()).next().unwrap();
        assert_eq!(first.to, 0);
        assert!(first.physical.is_identity() && first.logical.is_identity() && first.ancilla.is_identity());
    }

    #[test]
    fn table_agrees_with_direct_application() {
        let e = random_encoder(params(3, 2, 2, 1), 9, 60);
        let d = StateDiagram::new(&e).unwrap();
        for v in (0..81).step_by(7) {
            for edge in d.edges_from(v, EdgeFilter::all()) {
                let t = e.apply_roles(&d.memory_pauli(v), &edge.ancilla, &edge.logical).unwrap();
                assert_eq!(t.memory_out.to_index() as usize, edge.to);
                assert_eq!(t.physical_out, edge.physical);
                let label = d.label_of(&edge.ancilla, &edge.logical);
                assert_eq!(d.physical_weight(v, label) as usize, edge.physical.weight());
                assert!(edge.ancilla.is_z_type());
            }
        }
    }

    #[test]
    fn filters_hold_on_every_edge() {
        let e = random_encoder(params(3, 1, 2, 1), 5, 40);
        let d = StateDiagram::new(&e).unwrap();
        for v in 0..9 {
            for edge in d.edges_from(v, EdgeFilter::zero_physical()) {
                assert_eq!(edge.physical.weight(), 0);
            }
            for edge in d.edges_from(v, EdgeFilter::zero_physical_identity_logical()) {
                assert_eq!(edge.physical.weight() + edge.logical.weight(), 0);
            }
        }
    }

    #[test]
    fn no_edge_filter() {
        let e = random_encoder(params(2, 1, 2, 1), 5, 40);
        let d = StateDiagram::new(&e).unwrap();
        let c = d.scc(&EdgeFilter::none());
        assert_eq!(c.components.len(), 4);
        assert!(d.loop_vertices(&EdgeFilter::none()).is_empty());
        assert_eq!(d.reachable(&EdgeFilter::none(), &VertexSet::from([2])), VertexSet::from([2]));
        assert!(d.reachable(&EdgeFilter::all(), &VertexSet::new()).is_empty());
        assert!(d.enumerate_simple_cycles(&EdgeFilter::none(), 4, 100).unwrap().is_empty());
    }

    #[test]
    fn identity_is_always_a_loop_vertex() {
        for seed in 0..20 {
            let e = random_encoder(params(3, 1, 2, 1), seed, 40);
            let d = StateDiagram::new(&e).unwrap();
            assert!(d.loop_vertices(&EdgeFilter::zero_physical_identity_logical()).contains(&0));
            let c = d.scc(&EdgeFilter::all());
            assert_eq!(c.component_of[0], c.components.iter().find(|c| c.contains(&0)).unwrap()[0]);
        }
    }

    #[test]
    fn trivial_cycle_at_identity() {
        let e = SymplecticEncoder::from_gates(params(3, 1, 2, 1), &[Gate::Sum { control: 0, target: 1 }]).unwrap();
        let d = StateDiagram::new(&e).unwrap();
        let cycles = d.enumerate_simple_cycles(&EdgeFilter::zero_physical_identity_logical(), 9, 1000).unwrap();
        assert!(cycles.iter().any(|c| c.vertices == vec![0] && c.edges[0].label == 0));
    }

    #[test]
    fn memory_preserving_encoder_has_no_finite_paths() {
        // swap qudits 0 and 2: memory comes back out as memory, the
        // logical input goes to the physical output
        let pr = params(3, 1, 2, 1);
        let perm = [2usize, 1, 0];
        let mut rows = vec![vec![0u8; 6]; 6];
        for (i, &j) in perm.iter().enumerate() {
            rows[j][i] = 1;
            rows[3 + j][3 + i] = 1;
        }
        let e = SymplecticEncoder::new(pr, crate::field::FpMatrix::from_rows(pr.field, &rows).unwrap()).unwrap();
        let d = StateDiagram::new(&e).unwrap();
        for v in 1..9 {
            let targets: Vec<usize> = d.edge_ids_from(v, EdgeFilter::identity_logical()).map(|e| e.to).collect();
            assert!(targets.iter().all(|&t| t != 0));
        }
        assert!(d.enumerate_finite_standard_paths(9, 1000).unwrap().is_empty());
    }

    #[test]
    fn budget_exceeded() {
        let e = random_encoder(params(2, 2, 2, 1), 1, 40);
        let d = StateDiagram::new(&e).unwrap();
        assert!(matches!(
            d.enumerate_simple_cycles(&EdgeFilter::all(), 16, 3),
            Err(Error::EnumerationBudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn scale_guard() {
        let e = SymplecticEncoder::identity(params(13, 3, 1, 1));
        assert!(matches!(StateDiagram::new(&e), Err(Error::ScaleGuard { .. })));
    }

    fn closure(d: &StateDiagram, filter: &EdgeFilter) -> Vec<Vec<bool>> {
        let n = d.num_vertices();
        let mut r = vec![vec![false; n]; n];
        for (u, row) in r.iter_mut().enumerate() {
            row[u] = true;
            for l in 0..d.num_labels() {
                if d.accepts(filter, u, l) {
                    row[d.target(u, l)] = true;
                }
            }
        }
        for w in 0..n {
            for u in 0..n {
                if r[u][w] {
                    for v in 0..n {
                        if r[w][v] {
                            r[u][v] = true;
                        }
                    }
                }
            }
        }
        r
    }

    fn has_edge(d: &StateDiagram, filter: &EdgeFilter, u: usize, w: usize) -> bool {
        (0..d.num_labels()).any(|l| d.accepts(filter, u, l) && d.target(u, l) == w)
    }

    #[test]
    fn scc_and_reachability_match_closure_oracle() {
        for seed in 0..30 {
            let pr = if seed % 2 == 0 { params(2, 2, 2, 1) } else { params(2, 3, 1, 1) };
            let e = random_encoder(pr, seed, 60);
            let d = StateDiagram::new(&e).unwrap();
            for filter in [EdgeFilter::zero_physical(), EdgeFilter::identity_logical(), EdgeFilter::all()] {
                let r = closure(&d, &filter);
                let c = d.scc(&filter);
                let n = d.num_vertices();
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(c.component_of[u] == c.component_of[v], r[u][v] && r[v][u]);
                    }
                    let expected: VertexSet = (0..n).filter(|&v| r[u][v]).collect();
                    assert_eq!(d.reachable(&filter, &VertexSet::from([u])), expected);
                    assert_eq!(c.component_of[u], (0..n).find(|&v| r[u][v] && r[v][u]).unwrap());
                }
            }
        }
    }

    // every closed vertex walk of length <= max_len, keeping simple ones
    fn brute_cycles(d: &StateDiagram, filter: &EdgeFilter, max_len: usize) -> BTreeSet<Vec<usize>> {
        let n = d.num_vertices();
        let mut out = BTreeSet::new();
        for len in 1..=max_len {
            let total = n.pow(len as u32);
            for code in 0..total {
                let seq: Vec<usize> = (0..len).map(|i| code / n.pow(i as u32) % n).collect();
                let distinct: BTreeSet<_> = seq.iter().collect();
                if distinct.len() != len || seq[0] != *seq.iter().min().unwrap() {
                    continue;
                }
                if (0..len).all(|i| has_edge(d, filter, seq[i], seq[(i + 1) % len])) {
                    out.insert(seq);
                }
            }
        }
        out
    }

    #[test]
    fn cycles_and_loop_vertices_match_brute_force() {
        for seed in 0..40 {
            let e = random_encoder(params(2, 1, 2, 1), seed, 40);
            let d = StateDiagram::new(&e).unwrap();
            for filter in [EdgeFilter::zero_physical(), EdgeFilter::zero_physical_identity_logical(), EdgeFilter::all()] {
                let expected = brute_cycles(&d, &filter, 4);
                let (found, complete) = d.vertex_cycles(&filter, 4, 10_000);
                assert!(complete);
                assert_eq!(found.iter().cloned().collect::<BTreeSet<_>>(), expected);
                assert_eq!(found.len(), expected.len());
                let on_cycles: VertexSet = expected.iter().flatten().copied().collect();
                assert_eq!(d.loop_vertices(&filter), on_cycles);
                let edge_cycles = d.enumerate_simple_cycles(&filter, 4, 100_000).unwrap();
                let multiplicity: usize = expected
                    .iter()
                    .map(|c| {
                        (0..c.len())
                            .map(|i| {
                                (0..d.num_labels())
                                    .filter(|&l| d.accepts(&filter, c[i], l) && d.target(c[i], l) == c[(i + 1) % c.len()])
                                    .count()
                            })
                            .product::<usize>()
                    })
                    .sum();
                assert_eq!(edge_cycles.len(), multiplicity);
                for c in &edge_cycles {
                    for (i, e) in c.edges.iter().enumerate() {
                        assert_eq!(e.from, c.vertices[i]);
                        assert_eq!(e.to, c.vertices[(i + 1) % c.vertices.len()]);
                        assert!(d.accepts(&filter, e.from, e.label));
                    }
                }
            }
        }
    }

    #[test]
    fn finite_standard_paths_match_brute_force() {
        let id = EdgeFilter::identity_logical();
        for seed in 0..40 {
            let e = random_encoder(params(2, 1, 2, 1), seed, 40);
            let d = StateDiagram::new(&e).unwrap();
            let mut expected = BTreeSet::new();
            for len in 1..=4usize {
                for code in 0..4usize.pow(len as u32) {
                    let seq: Vec<usize> = (0..len).map(|i| code / 4usize.pow(i as u32) % 4).collect();
                    let distinct: BTreeSet<_> = seq.iter().collect();
                    if distinct.len() == len
                        && !seq.contains(&0)
                        && seq.windows(2).all(|w| has_edge(&d, &id, w[0], w[1]))
                        && has_edge(&d, &id, seq[len - 1], 0)
                    {
                        expected.insert(seq);
                    }
                }
            }
            let found = d.enumerate_finite_standard_paths(4, 10_000).unwrap();
            assert_eq!(found.iter().cloned().collect::<BTreeSet<_>>(), expected);
            for path in &found {
                let last = *path.last().unwrap();
                assert!(d.edge_ids_from(last, id).any(|e| e.to == 0));
            }
        }
    }

    #[test]
    fn tarjan_small_graph() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 isolated
        let succ = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let c = tarjan(&succ);
        assert_eq!(c.components, vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert_eq!(loop_mask(&succ, &c), vec![true, true, true, true, false]);
        assert_eq!(reach_mask(&succ, [3]), vec![false, false, false, true, false]);
    }
}
