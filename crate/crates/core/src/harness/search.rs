//! Exhaustive and sampled searches over encoder spaces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ClassificationRecord, REPORT_RECORDS};
use crate::analysis::{classify, is_catastrophic, quick_flags, Budgets};
use crate::diagram::{EdgeFilter, EdgeId, StateDiagram};
use crate::encoder::io::EncoderRecord;
use crate::encoder::{
    deserialize, for_each_symplectic, random_encoder_with, serialize, symplectic_group_order, CodeParams,
    SymplecticEncoder,
};
use crate::error::{Error, Result};

pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 2_000_000;
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    RecursiveNoncatastrophic,
    Catastrophic,
    Recursive,
}

impl Target {
    pub fn matches(self, catastrophic: bool, recursive: bool) -> bool {
        match self {
            Target::RecursiveNoncatastrophic => recursive && !catastrophic,
            Target::Catastrophic => catastrophic,
            Target::Recursive => recursive,
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "recursive-noncatastrophic" => Ok(Target::RecursiveNoncatastrophic),
            "catastrophic" => Ok(Target::Catastrophic),
            "recursive" => Ok(Target::Recursive),
            other => Err(format!("unknown target `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub mode: SearchMode,
    pub samples: u64,
    #[serde(with = "crate::encoder::io::wide_u64")]
    pub seed: u64,
    /// Elementary gates per sampled encoder; 0 picks `8·(2(m+n))²`.
    pub gate_count: usize,
    pub target: Target,
    /// 0 uses every available core.
    pub workers: usize,
    pub exhaustive_cap: u64,
    /// Matches kept in full in the summary; all are counted.
    pub max_witnesses: usize,
    /// Re-check every recursive, catastrophic encoder by cycle enumeration.
    pub reverify_recursive: bool,
    pub budgets: Budgets,
}

impl SearchConfig {
    pub fn sampled(p: u64, m: usize, n: usize, k: usize, samples: u64, seed: u64) -> Self {
        SearchConfig {
            p,
            m,
            n,
            k,
            mode: SearchMode::Sampled,
            samples,
            seed,
            gate_count: 0,
            target: Target::RecursiveNoncatastrophic,
            workers: 0,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            max_witnesses: 20,
            reverify_recursive: true,
            budgets: Budgets::default(),
        }
    }

    pub fn exhaustive(p: u64, m: usize, n: usize, k: usize) -> Self {
        SearchConfig { mode: SearchMode::Exhaustive, samples: 0, ..Self::sampled(p, m, n, k, 0, 0) }
    }

    pub fn params(&self) -> Result<CodeParams> {
        CodeParams::new(self.p, self.m, self.n, self.k)
    }

    pub fn gates(&self) -> usize {
        if self.gate_count > 0 {
            self.gate_count
        } else {
            let dim = 2 * (self.m + self.n);
            8 * dim * dim
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub index: u64,
    /// Re-analysis from the serialized encoder reproduced every flag.
    pub reverified: bool,
    pub encoder: EncoderRecord,
    pub classification: ClassificationRecord,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SearchSummary {
    pub group_order: String,
    pub examined: u64,
    pub matches: u64,
    pub inconclusive: u64,
    pub catastrophic: u64,
    pub recursive: u64,
    pub recursive_noncatastrophic: u64,
    /// Recursive encoders whose catastrophic witness was re-checked.
    pub recursive_reverified: u64,
    pub recursive_reverify_failures: Vec<u64>,
    pub inconclusive_indices: Vec<u64>,
    pub match_indices: Vec<u64>,
    pub witnesses: Vec<WitnessRecord>,
}

/// The `index`-th encoder of a seeded sample stream.
pub fn sample_encoder(params: CodeParams, seed: u64, index: u64, gates: usize) -> SymplecticEncoder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut e = random_encoder_with(params, &mut rng, gates);
    e.seed = Some(seed);
    e.label = Some(format!("sample {index}"));
    e
}

#[derive(Debug, Clone, Copy)]
enum Outcome {
    Inconclusive,
    Done { catastrophic: bool, recursive: bool, reverified: Option<bool> },
}

fn examine(encoder: &SymplecticEncoder, reverify: bool) -> Outcome {
    let Ok(d) = StateDiagram::new(encoder) else {
        return Outcome::Inconclusive;
    };
    let (catastrophic, recursive) = quick_flags(&d);
    let reverified = (reverify && recursive && catastrophic).then(|| {
        let witness = is_catastrophic(&d).witness.unwrap_or_default();
        witness_replays(encoder, &d, &witness) && cycle_enumeration_finds_logical_edge(&d)
    });
    Outcome::Done { catastrophic, recursive, reverified }
}

/// Replays a catastrophic witness through the encoder matrix directly.
pub fn witness_replays(encoder: &SymplecticEncoder, d: &StateDiagram, witness: &[EdgeId]) -> bool {
    if witness.is_empty() || witness[0].from != witness.last().map_or(usize::MAX, |e| e.to) {
        return false;
    }
    let mut logical = false;
    for (i, id) in witness.iter().enumerate() {
        let (s, l) = d.label_paulis(id.label);
        let Ok(t) = encoder.apply_roles(&d.memory_pauli(id.from), &s, &l) else {
            return false;
        };
        let next = witness[(i + 1) % witness.len()].from;
        if !t.physical_out.is_identity() || t.memory_out.to_index() as usize != next {
            return false;
        }
        logical |= !l.is_identity();
    }
    logical
}

/// Some simple zero-physical cycle has a hop realizable by an edge of
/// nonzero logical weight.
pub fn cycle_enumeration_finds_logical_edge(d: &StateDiagram) -> bool {
    let zp = EdgeFilter::zero_physical();
    let (cycles, _) = d.vertex_cycles(&zp, d.num_vertices(), 1_000_000);
    cycles.iter().any(|c| {
        (0..c.len()).any(|i| {
            let (u, w) = (c[i], c[(i + 1) % c.len()]);
            (0..d.num_labels()).any(|l| d.target(u, l) == w && d.physical_weight(u, l) == 0 && d.logical_weight(l) > 0)
        })
    })
}

fn full_witness(index: u64, encoder: &SymplecticEncoder, budgets: &Budgets) -> Result<WitnessRecord> {
    let c = classify(encoder, budgets)?;
    let record = ClassificationRecord::new(&c, REPORT_RECORDS);
    let again = deserialize(&serialize(encoder)).and_then(|e| classify(&e, budgets));
    let reverified = again.is_ok_and(|a| ClassificationRecord::new(&a, REPORT_RECORDS) == record);
    Ok(WitnessRecord { index, reverified, encoder: encoder.into(), classification: record })
}

/// Runs the search; `on_match` sees each fully recorded witness in index
/// order. Results do not depend on the worker count.
pub fn run_search(config: &SearchConfig, mut on_match: impl FnMut(&WitnessRecord)) -> Result<SearchSummary> {
    let params = config.params()?;
    let order = symplectic_group_order(params.field, params.qudits());
    let p = params.p() as u64;
    let vertices = p.checked_pow(2 * params.m as u32).unwrap_or(u64::MAX);
    if vertices > crate::diagram::MAX_VERTICES {
        return Err(Error::ScaleGuard { what: "p^(2m) vertices", size: vertices, limit: crate::diagram::MAX_VERTICES });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
    let mut summary = SearchSummary { group_order: order.to_string(), ..Default::default() };

    let mut absorb = |batch: Vec<(u64, SymplecticEncoder)>, summary: &mut SearchSummary| -> Result<()> {
        let outcomes: Vec<Outcome> =
            pool.install(|| batch.par_iter().map(|(_, e)| examine(e, config.reverify_recursive)).collect());
        for ((index, encoder), outcome) in batch.iter().zip(outcomes) {
            summary.examined += 1;
            let Outcome::Done { catastrophic, recursive, reverified } = outcome else {
                summary.inconclusive += 1;
                summary.inconclusive_indices.push(*index);
                continue;
            };
            summary.catastrophic += u64::from(catastrophic);
            summary.recursive += u64::from(recursive);
            summary.recursive_noncatastrophic += u64::from(recursive && !catastrophic);
            match reverified {
                Some(true) => summary.recursive_reverified += 1,
                Some(false) => summary.recursive_reverify_failures.push(*index),
                None => {}
            }
            if !config.target.matches(catastrophic, recursive) {
                continue;
            }
            summary.matches += 1;
            summary.match_indices.push(*index);
            if summary.witnesses.len() < config.max_witnesses {
                match full_witness(*index, encoder, &config.budgets) {
                    Ok(w) => {
                        on_match(&w);
                        summary.witnesses.push(w);
                    }
                    Err(_) => {
                        summary.inconclusive += 1;
                        summary.inconclusive_indices.push(*index);
                    }
                }
            }
        }
        Ok(())
    };

    match config.mode {
        SearchMode::Exhaustive => {
            if order > config.exhaustive_cap as u128 {
                return Err(Error::InvalidParams(format!(
                    "exhaustive search over {order} encoders exceeds the cap of {}",
                    config.exhaustive_cap
                )));
            }
            let mut batch = Vec::with_capacity(CHUNK);
            let mut index = 0u64;
            let mut failure = None;
            for_each_symplectic(params.field, params.qudits(), |m| {
                if failure.is_some() {
                    return;
                }
                let mut e = SymplecticEncoder::new(params, m.clone()).expect("enumerated matrices are symplectic");
                e.label = Some(format!("element {index}"));
                batch.push((index, e));
                index += 1;
                if batch.len() == CHUNK {
                    if let Err(err) = absorb(std::mem::take(&mut batch), &mut summary) {
                        failure = Some(err);
                    }
                }
            });
            if let Some(err) = failure {
                return Err(err);
            }
            absorb(batch, &mut summary)?;
        }
        SearchMode::Sampled => {
            if config.samples == 0 {
                return Err(Error::InvalidParams("sampled search needs at least one sample".into()));
            }
            let gates = config.gates();
            let mut start = 0u64;
            while start < config.samples {
                let end = (start + CHUNK as u64).min(config.samples);
                let batch: Vec<(u64, SymplecticEncoder)> = pool.install(|| {
                    (start..end).into_par_iter().map(|i| (i, sample_encoder(params, config.seed, i, gates))).collect()
                });
                absorb(batch, &mut summary)?;
                start = end;
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_stream_is_deterministic() {
        let pr = CodeParams::new(3, 1, 2, 1).unwrap();
        assert_eq!(sample_encoder(pr, 7, 12, 50), sample_encoder(pr, 7, 12, 50));
        assert_ne!(sample_encoder(pr, 7, 12, 50).matrix(), sample_encoder(pr, 7, 13, 50).matrix());
    }

    #[test]
    fn qubit_exhaustive_finds_no_recursive_noncatastrophic() {
        let s = run_search(&SearchConfig::exhaustive(2, 1, 1, 1), |_| {}).unwrap();
        assert_eq!((s.examined, s.matches, s.inconclusive), (720, 0, 0));
        assert!(s.recursive_reverify_failures.is_empty());
    }

    #[test]
    fn exhaustive_cap_is_enforced() {
        let c = SearchConfig::exhaustive(3, 1, 2, 1);
        assert!(matches!(run_search(&c, |_| {}), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn catastrophic_witnesses_reverify_and_ignore_workers() {
        let mut c = SearchConfig::sampled(3, 1, 2, 1, 3000, 11);
        c.target = Target::Catastrophic;
        c.max_witnesses = 5;
        c.workers = 1;
        let one = run_search(&c, |_| {}).unwrap();
        c.workers = 3;
        let three = run_search(&c, |_| {}).unwrap();
        assert_eq!(one, three);
        assert!(one.matches > 0);
        assert!(one.witnesses.iter().all(|w| w.reverified && w.classification.catastrophic));
    }
}
