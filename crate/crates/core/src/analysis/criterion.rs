//! Commutator sums between finite standard paths and zero-physical cycles.

use std::collections::BTreeSet;

use super::Budgets;
use crate::diagram::{EdgeFilter, StateDiagram};
use crate::error::{Error, Result};
use crate::pauli::{index_to_symplectic, PhaseExponent};

/// One (finite path, cycle) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionRecord {
    /// `[m_0, …, m_{t-1}]`, ending one step before the identity.
    pub f_path: Vec<usize>,
    /// `[m_1, …, m_r]` of a simple cycle.
    pub p_cycle: Vec<usize>,
    /// Number of times the cycle is traversed.
    pub repetitions: usize,
    /// `Σ_{j=1..t-1} Σ_k c(m_j^F, m_k^P) mod p`.
    pub sum: u8,
    pub doubled_sum: u8,
}

impl CriterionRecord {
    /// The cycle's memory sequence repeated `repetitions` times.
    pub fn p_sequence(&self) -> Vec<usize> {
        self.p_cycle.iter().copied().cycle().take(self.p_cycle.len() * self.repetitions).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionScan {
    /// The first `record_budget` pairs.
    pub records: Vec<CriterionRecord>,
    pub f_paths: usize,
    pub p_cycles: usize,
    pub pairs_examined: u64,
    /// Some pair has a nonzero sum.
    pub criterion_met: bool,
    /// Path and cycle enumerations both finished within budget.
    pub complete: bool,
}

pub fn criterion_scan(d: &StateDiagram, budgets: &Budgets) -> CriterionScan {
    let pr = d.params();
    let f = pr.field;
    let p = f.p();
    let len = 2 * pr.m;
    let max_len = budgets.max_len_for(d);
    let reps = budgets.repetitions_for(d);
    let (paths, paths_done) = d.finite_standard_paths(max_len, budgets.path_budget);
    let (cycles, cycles_done) = d.vertex_cycles(&EdgeFilter::zero_physical(), max_len, budgets.cycle_budget);

    let vec_of = |v: usize| index_to_symplectic(p, len, v as u64);
    let sum_vec = |states: &[usize]| {
        let mut acc = vec![0u8; len];
        for &s in states {
            for (a, b) in acc.iter_mut().zip(vec_of(s)) {
                *a = f.add(*a, b);
            }
        }
        acc
    };
    // the pair sum is bilinear, so it only depends on these two totals
    let path_totals: Vec<Vec<u8>> = paths.iter().map(|fp| sum_vec(&fp[1..])).collect();
    let cycle_totals: Vec<Vec<u8>> = cycles.iter().map(|c| sum_vec(c)).collect();
    let form = |a: &[u8], b: &[u8], r: usize| {
        let c = crate::pauli::symplectic_form_vec(f, a, b);
        f.mul(c, (r % p as usize) as u8)
    };

    let mut records = Vec::new();
    'outer: for (fp, a) in paths.iter().zip(&path_totals) {
        for (c, b) in cycles.iter().zip(&cycle_totals) {
            for r in 1..=reps {
                if records.len() >= budgets.record_budget {
                    break 'outer;
                }
                let sum = form(a, b, r);
                records.push(CriterionRecord {
                    f_path: fp.clone(),
                    p_cycle: c.clone(),
                    repetitions: r,
                    sum,
                    doubled_sum: f.add(sum, sum),
                });
            }
        }
    }

    let distinct_a: BTreeSet<&Vec<u8>> = path_totals.iter().collect();
    let distinct_b: BTreeSet<&Vec<u8>> = cycle_totals.iter().collect();
    let criterion_met =
        distinct_a.iter().any(|a| distinct_b.iter().any(|b| (1..=reps.min(p as usize)).any(|r| form(a, b, r) != 0)));

    CriterionScan {
        records,
        f_paths: paths.len(),
        p_cycles: cycles.len(),
        pairs_examined: paths.len() as u64 * cycles.len() as u64 * reps as u64,
        criterion_met,
        complete: paths_done && cycles_done,
    }
}

/// Total commutation phase between an F path and a P cycle, obtained by
/// rebuilding every frame through the encoder and adding the memory
/// commutators on the input side and on the output side of each frame pair.
pub fn phase_oracle(d: &StateDiagram, f_path: &[usize], p_cycle: &[usize]) -> Result<PhaseExponent> {
    let nv = d.num_vertices();
    if f_path.is_empty() || p_cycle.is_empty() {
        return Err(Error::InvalidSequence("empty sequence".into()));
    }
    if let Some(&bad) = f_path.iter().chain(p_cycle).find(|&&v| v >= nv) {
        return Err(Error::InvalidSequence(format!("vertex {bad} out of range")));
    }
    if f_path.contains(&0) {
        return Err(Error::InvalidSequence("finite path visits the identity before its end".into()));
    }
    let find = |from: usize, to: usize, zero_physical: bool| {
        (0..d.num_labels())
            .find(|&l| {
                d.target(from, l) == to
                    && if zero_physical { d.physical_weight(from, l) == 0 } else { d.logical_weight(l) == 0 }
            })
            .ok_or_else(|| Error::InvalidSequence(format!("no suitable edge {from} -> {to}")))
    };
    let frames = |states: &[usize], next: &dyn Fn(usize) -> usize, zero_physical: bool| {
        states
            .iter()
            .enumerate()
            .map(|(i, &from)| {
                let to = next(i);
                let label = find(from, to, zero_physical)?;
                let (s, l) = d.label_paulis(label);
                d.encoder().apply_roles(&d.memory_pauli(from), &s, &l)
            })
            .collect::<Result<Vec<_>>>()
    };
    let t = f_path.len();
    let r = p_cycle.len();
    let f_frames = frames(f_path, &|j| if j + 1 < t { f_path[j + 1] } else { 0 }, false)?;
    let p_frames = frames(p_cycle, &|k| p_cycle[(k + 1) % r], true)?;

    let field = d.params().field;
    let mut total = 0u8;
    for fr in &f_frames {
        for pr in &p_frames {
            total = field.add(total, fr.memory_in.commutator(&pr.memory_in)?.0);
            total = field.add(total, fr.memory_out.commutator(&pr.memory_out)?.0);
        }
    }
    Ok(PhaseExponent(total))
}
