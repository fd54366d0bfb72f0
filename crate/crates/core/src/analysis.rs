//! Classification of encoders and the subgroup computations behind it.
//!
//! Everything here works on a [`StateDiagram`]. The catastrophic and
//! recursive decisions are exact (SCC and reachability); only the
//! criterion scan enumerates paths and cycles and therefore carries budgets.

use std::collections::BTreeSet;

use crate::diagram::{loop_mask, reach_mask, tarjan, Edge, EdgeFilter, EdgeId, StateDiagram};
use crate::encoder::SymplecticEncoder;
use crate::error::{Error, Result};
use crate::field::{FpMatrix, PrimeField};
use crate::pauli::{index_to_symplectic, symplectic_form_vec, symplectic_index};

mod criterion;
mod precipitation;

pub use criterion::{criterion_scan, phase_oracle, CriterionRecord, CriterionScan};
pub use precipitation::{precipitation_orbit, PrecipitationOrbit};

pub const DEFAULT_CYCLE_BUDGET: usize = 20_000;
pub const DEFAULT_PATH_BUDGET: usize = 20_000;
pub const DEFAULT_RECORD_BUDGET: usize = 2_000;
pub const MAX_EXPLICIT_MEMBERS: u64 = 1_000_000;

/// Which ancilla inputs a path may use after its first edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AncillaReading {
    /// Any Z-type ancilla input.
    #[default]
    Standard,
    /// Identity ancilla only (impulse response).
    Impulse,
}

/// Enumeration limits. `None` means the default for the code size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budgets {
    pub max_len: Option<usize>,
    pub repetition_budget: Option<usize>,
    pub cycle_budget: usize,
    pub path_budget: usize,
    pub record_budget: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_len: None,
            repetition_budget: None,
            cycle_budget: DEFAULT_CYCLE_BUDGET,
            path_budget: DEFAULT_PATH_BUDGET,
            record_budget: DEFAULT_RECORD_BUDGET,
        }
    }
}

impl Budgets {
    /// Defaults overridden by `QUCONV_MAX_LEN`, `QUCONV_REPETITION_BUDGET`,
    /// `QUCONV_CYCLE_BUDGET`, `QUCONV_PATH_BUDGET` and `QUCONV_RECORD_BUDGET`.
    pub fn from_env() -> Self {
        let get = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse::<usize>().ok());
        let d = Budgets::default();
        Budgets {
            max_len: get("QUCONV_MAX_LEN").or(d.max_len),
            repetition_budget: get("QUCONV_REPETITION_BUDGET").or(d.repetition_budget),
            cycle_budget: get("QUCONV_CYCLE_BUDGET").unwrap_or(d.cycle_budget),
            path_budget: get("QUCONV_PATH_BUDGET").unwrap_or(d.path_budget),
            record_budget: get("QUCONV_RECORD_BUDGET").unwrap_or(d.record_budget),
        }
    }

    /// `p^{2m}` unless set.
    pub fn max_len_for(&self, d: &StateDiagram) -> usize {
        self.max_len.unwrap_or(d.num_vertices()).max(1)
    }

    /// `p` unless set.
    pub fn repetitions_for(&self, d: &StateDiagram) -> usize {
        self.repetition_budget.unwrap_or(d.params().p() as usize).max(1)
    }
}

/// A subgroup of the memory Paulis, listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
    pub closure_verified: bool,
}

impl SubgroupDescriptor {
    /// Picks generators greedily and checks closure: a set containing the
    /// identity is a subgroup iff its size is `p^rank`.
    pub fn from_members(field: PrimeField, m: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let members: Vec<usize> = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut basis = Echelon::new(field);
        let mut generators = Vec::new();
        for &v in &members {
            if basis.insert(index_to_symplectic(field.p(), 2 * m, v as u64)) {
                generators.push(v);
            }
        }
        let span = (field.p() as u64).checked_pow(generators.len() as u32);
        let closure_verified = members.first() == Some(&0) && span == Some(members.len() as u64);
        SubgroupDescriptor { members, generators, closure_verified }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

struct Echelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u8>)>,
}

impl Echelon {
    fn new(field: PrimeField) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u8>) -> bool {
        let f = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        for a in v.iter_mut() {
            *a = f.mul(*a, inv);
        }
        self.rows.push((pivot, v));
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatastrophicCheck {
    pub catastrophic: bool,
    /// Zero-physical cycle whose first edge has nonzero logical weight.
    pub witness: Option<Vec<EdgeId>>,
}

/// Exact: some zero-physical edge of nonzero logical weight lies inside a
/// strongly connected component of the zero-physical subgraph.
pub fn is_catastrophic(d: &StateDiagram) -> CatastrophicCheck {
    let zp = EdgeFilter::zero_physical();
    let comps = tarjan(&d.successors(&zp));
    for v in 0..d.num_vertices() {
        for label in 0..d.num_labels() {
            if d.physical_weight(v, label) != 0 || d.logical_weight(label) == 0 {
                continue;
            }
            let to = d.target(v, label);
            if comps.component_of[v] != comps.component_of[to] {
                continue;
            }
            let mut goal = vec![false; d.num_vertices()];
            goal[v] = true;
            let back = d.shortest_path(&zp, to, &goal).expect("same component");
            let mut witness = vec![d.edge_id(v, label)];
            witness.extend(back);
            return CatastrophicCheck { catastrophic: true, witness: Some(witness) };
        }
    }
    CatastrophicCheck { catastrophic: false, witness: None }
}

/// A weight-one path that falls into a zero-physical loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveCounterexample {
    pub first: EdgeId,
    /// Identity-logical edges from `first.to` to a loop vertex.
    pub approach: Vec<EdgeId>,
    /// The zero-physical identity-logical loop reached.
    pub zero_loop: Vec<EdgeId>,
}

impl RecursiveCounterexample {
    pub fn edges(&self) -> impl Iterator<Item = &EdgeId> {
        std::iter::once(&self.first).chain(&self.approach).chain(&self.zero_loop)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveCheck {
    pub recursive: bool,
    pub counterexample: Option<RecursiveCounterexample>,
}

fn continuation_filter(reading: AncillaReading) -> impl Fn(&StateDiagram, usize, usize) -> bool {
    move |d: &StateDiagram, _v: usize, label: usize| {
        d.logical_weight(label) == 0 && (reading == AncillaReading::Standard || label == 0)
    }
}

fn filtered_successors(d: &StateDiagram, keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    (0..d.num_vertices())
        .map(|v| {
            let mut s: Vec<usize> = (0..d.num_labels()).filter(|&l| keep(v, l)).map(|l| d.target(v, l)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect()
}

fn shortest_path_by(
    d: &StateDiagram,
    keep: &dyn Fn(usize, usize) -> bool,
    from: usize,
    targets: &[bool],
) -> Option<Vec<EdgeId>> {
    let n = d.num_vertices();
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([from]);
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
        for label in 0..d.num_labels() {
            if keep(u, label) {
                let w = d.target(u, label);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(d.edge_id(u, label));
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// Exact decision of the recursive property. The first edge carries the
/// path's whole logical weight (exactly one); later edges are
/// identity-logical with ancillas chosen per `reading`.
pub fn is_recursive(d: &StateDiagram, reading: AncillaReading) -> RecursiveCheck {
    let nv = d.num_vertices();
    let zp_succ = d.successors(&EdgeFilter::zero_physical());
    let zp_comps = tarjan(&zp_succ);
    let v_loop = loop_mask(&zp_succ, &zp_comps);

    let cont = continuation_filter(reading);
    let cont_keep = |v: usize, l: usize| cont(d, v, l);
    let loop_keep = |v: usize, l: usize| cont(d, v, l) && d.physical_weight(v, l) == 0;
    let w_succ = filtered_successors(d, loop_keep);
    let w_mask = loop_mask(&w_succ, &tarjan(&w_succ));

    // vertices that reach W along continuation edges
    let cont_succ = filtered_successors(d, cont_keep);
    let mut reverse = vec![Vec::new(); nv];
    for (u, s) in cont_succ.iter().enumerate() {
        for &w in s {
            reverse[w].push(u);
        }
    }
    let reaches_w = reach_mask(&reverse, (0..nv).filter(|&v| w_mask[v]));

    let first_labels: Vec<usize> = (0..d.num_labels())
        .filter(|&l| d.logical_weight(l) == 1)
        .filter(|&l| reading == AncillaReading::Standard || l < d.logical_label_count())
        .collect();
    for v in (0..nv).filter(|&v| v_loop[v]) {
        for &label in &first_labels {
            let to = d.target(v, label);
            let inside = d.physical_weight(v, label) == 0 && zp_comps.component_of[v] == zp_comps.component_of[to];
            if inside || !reaches_w[to] {
                continue;
            }
            let approach = shortest_path_by(d, &cont_keep, to, &w_mask).expect("W reachable");
            let end = approach.last().map_or(to, |e| e.to);
            let zero_loop = loop_at(d, &loop_keep, end).expect("loop vertex");
            return RecursiveCheck {
                recursive: false,
                counterexample: Some(RecursiveCounterexample { first: d.edge_id(v, label), approach, zero_loop }),
            };
        }
    }
    RecursiveCheck { recursive: true, counterexample: None }
}

fn loop_at(d: &StateDiagram, keep: &dyn Fn(usize, usize) -> bool, v: usize) -> Option<Vec<EdgeId>> {
    let mut goal = vec![false; d.num_vertices()];
    goal[v] = true;
    let mut best: Option<Vec<EdgeId>> = None;
    for label in (0..d.num_labels()).filter(|&l| keep(v, l)) {
        let first = d.edge_id(v, label);
        if let Some(rest) = shortest_path_by(d, keep, first.to, &goal) {
            if best.as_ref().is_none_or(|b| rest.len() + 1 < b.len()) {
                let mut cycle = vec![first];
                cycle.extend(rest);
                best = Some(cycle);
            }
        }
    }
    best
}

fn ensure_explicit(d: &StateDiagram) -> Result<()> {
    let n = d.num_vertices() as u64;
    if n > MAX_EXPLICIT_MEMBERS {
        return Err(Error::ScaleGuard { what: "explicit member set", size: n, limit: MAX_EXPLICIT_MEMBERS });
    }
    Ok(())
}

/// Memory states from which a standard path reaches the identity.
pub fn finite_memory_group(d: &StateDiagram) -> Result<SubgroupDescriptor> {
    ensure_explicit(d)?;
    let succ = d.successors(&EdgeFilter::identity_logical());
    let mut reverse = vec![Vec::new(); succ.len()];
    for (u, s) in succ.iter().enumerate() {
        for &w in s {
            reverse[w].push(u);
        }
    }
    let mask = reach_mask(&reverse, [0]);
    let pr = d.params();
    Ok(SubgroupDescriptor::from_members(pr.field, pr.m, (0..mask.len()).filter(|&v| mask[v])))
}

/// Memory states lying on a zero-physical cycle.
pub fn zero_cycle_group(d: &StateDiagram) -> Result<SubgroupDescriptor> {
    ensure_explicit(d)?;
    let pr = d.params();
    Ok(SubgroupDescriptor::from_members(pr.field, pr.m, d.loop_vertices(&EdgeFilter::zero_physical())))
}

/// Memory states with no standard path to the identity.
pub fn infinite_memory_states(d: &StateDiagram) -> Result<Vec<usize>> {
    let f0 = finite_memory_group(d)?;
    Ok((0..d.num_vertices()).filter(|&v| !f0.contains(v)).collect())
}

/// Memory Paulis commuting with every generator of `s`, via a nullspace.
pub fn centralizer(s: &SubgroupDescriptor, m: usize, field: PrimeField) -> Result<SubgroupDescriptor> {
    let p = field.p();
    let total = (p as u64).checked_pow(2 * m as u32).unwrap_or(u64::MAX);
    if total > MAX_EXPLICIT_MEMBERS {
        return Err(Error::ScaleGuard { what: "explicit member set", size: total, limit: MAX_EXPLICIT_MEMBERS });
    }
    // c(v, g) = z_v·x_g − x_v·z_g, linear in v = [x_v | z_v]
    let rows: Vec<Vec<u8>> = s
        .generators
        .iter()
        .map(|&g| {
            let gv = index_to_symplectic(p, 2 * m, g as u64);
            let (x, z) = gv.split_at(m);
            z.iter().map(|&c| field.neg(c)).chain(x.iter().copied()).collect()
        })
        .collect();
    let basis: Vec<Vec<u8>> = if rows.is_empty() {
        (0..2 * m).map(|i| (0..2 * m).map(|j| u8::from(i == j)).collect()).collect()
    } else {
        FpMatrix::from_rows(field, &rows)?.nullspace()
    };
    let mut members = vec![0usize];
    for b in &basis {
        let mut next = Vec::with_capacity(members.len() * p as usize);
        for &v in &members {
            let mut cur = index_to_symplectic(p, 2 * m, v as u64);
            for _ in 0..p {
                next.push(symplectic_index(p, &cur) as usize);
                for (a, &c) in cur.iter_mut().zip(b) {
                    *a = field.add(*a, c);
                }
            }
        }
        members = next;
    }
    Ok(SubgroupDescriptor::from_members(field, m, members))
}

/// Membership scan over all memory Paulis; reference for [`centralizer`].
pub fn centralizer_by_scan(s: &SubgroupDescriptor, m: usize, field: PrimeField) -> Vec<usize> {
    let p = field.p();
    let total = (p as usize).pow(2 * m as u32);
    let elems: Vec<Vec<u8>> = s.members.iter().map(|&g| index_to_symplectic(p, 2 * m, g as u64)).collect();
    (0..total)
        .filter(|&v| {
            let vv = index_to_symplectic(p, 2 * m, v as u64);
            elems.iter().all(|g| symplectic_form_vec(field, &vv, g) == 0)
        })
        .collect()
}

/// Comparison of the zero-cycle group with the centralizer of the
/// finite-memory group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub p: u8,
    pub zero_cycle: SubgroupDescriptor,
    pub finite_memory: SubgroupDescriptor,
    pub centralizer_of_finite: SubgroupDescriptor,
    pub equal: bool,
    pub zero_cycle_within_centralizer: bool,
    pub criterion_met: Option<bool>,
}

pub fn verify_corollary_p0_equals_centralizer(d: &StateDiagram, budgets: &Budgets) -> Result<CorollaryReport> {
    let pr = *d.params();
    let zero_cycle = zero_cycle_group(d)?;
    let finite_memory = finite_memory_group(d)?;
    let centralizer_of_finite = centralizer(&finite_memory, pr.m, pr.field)?;
    let equal = zero_cycle.members == centralizer_of_finite.members;
    let zero_cycle_within_centralizer = zero_cycle.members.iter().all(|&v| centralizer_of_finite.contains(v));
    let criterion_met = if pr.p() > 2 { Some(criterion_scan(d, budgets).criterion_met) } else { None };
    Ok(CorollaryReport {
        p: pr.p(),
        zero_cycle,
        finite_memory,
        centralizer_of_finite,
        equal,
        zero_cycle_within_centralizer,
        criterion_met,
    })
}

/// Everything known about one encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub catastrophic: bool,
    pub recursive: bool,
    /// The same decision with identity ancillas after the first edge.
    pub recursive_impulse: bool,
    pub catastrophic_witness: Option<Vec<Edge>>,
    pub recursive_counterexample: Option<Vec<Edge>>,
    pub criterion_met: bool,
    pub criterion_complete: bool,
    pub criterion_pairs: u64,
    pub criterion_records: Vec<CriterionRecord>,
    pub finite_memory: SubgroupDescriptor,
    pub zero_cycle: SubgroupDescriptor,
    pub centralizer_of_finite: SubgroupDescriptor,
    pub max_len: usize,
    pub repetition_budget: usize,
    pub budgets: Budgets,
}

impl Classification {
    pub fn is_recursive_noncatastrophic(&self) -> bool {
        self.recursive && !self.catastrophic
    }
}

pub fn classify(encoder: &SymplecticEncoder, budgets: &Budgets) -> Result<Classification> {
    let d = StateDiagram::new(encoder)?;
    classify_diagram(&d, budgets)
}

pub fn classify_diagram(d: &StateDiagram, budgets: &Budgets) -> Result<Classification> {
    let pr = *d.params();
    let cat = is_catastrophic(d);
    let rec = is_recursive(d, AncillaReading::Standard);
    let rec_impulse = is_recursive(d, AncillaReading::Impulse);
    let scan = criterion_scan(d, budgets);
    let finite_memory = finite_memory_group(d)?;
    let zero_cycle = zero_cycle_group(d)?;
    let centralizer_of_finite = centralizer(&finite_memory, pr.m, pr.field)?;
    let materialize = |ids: &mut dyn Iterator<Item = &EdgeId>| ids.map(|&id| d.edge(id)).collect::<Vec<_>>();
    Ok(Classification {
        catastrophic: cat.catastrophic,
        recursive: rec.recursive,
        recursive_impulse: rec_impulse.recursive,
        catastrophic_witness: cat.witness.as_ref().map(|w| materialize(&mut w.iter())),
        recursive_counterexample: rec.counterexample.as_ref().map(|c| materialize(&mut c.edges())),
        criterion_met: scan.criterion_met,
        criterion_complete: scan.complete,
        criterion_pairs: scan.pairs_examined,
        criterion_records: scan.records,
        finite_memory,
        zero_cycle,
        centralizer_of_finite,
        max_len: budgets.max_len_for(d),
        repetition_budget: budgets.repetitions_for(d),
        budgets: *budgets,
    })
}

/// The two exact flags only, for screening large samples.
pub fn quick_flags(d: &StateDiagram) -> (bool, bool) {
    (is_catastrophic(d).catastrophic, is_recursive(d, AncillaReading::Standard).recursive)
}
