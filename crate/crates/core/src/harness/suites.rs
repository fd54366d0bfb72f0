//! Property suites run by `quconv verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::search::{run_search, SearchConfig};
use crate::analysis::{
    centralizer, centralizer_by_scan, criterion_scan, finite_memory_group, phase_oracle, precipitation_orbit,
    verify_corollary_p0_equals_centralizer, zero_cycle_group, Budgets,
};
use crate::diagram::StateDiagram;
use crate::encoder::{random_encoder_with, CodeParams, SymplecticEncoder};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::pauli::oracle::{oracle_commutator, MAX_ORACLE_PRIME};
use crate::pauli::PauliOp;

pub const SUITES: [&str; 6] = ["commutation", "conservation", "semicomm", "precipitation", "centralizer", "qubit-no-go"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub p: u64,
    pub seed: u64,
    pub trial: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: u64,
    pub notes: Vec<String>,
    pub violations: Vec<Violation>,
}

struct Ctx {
    seed: u64,
    checks: u64,
    notes: Vec<String>,
    violations: Vec<Violation>,
}

impl Ctx {
    fn rng(&self, p: u64, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((p << 32) | trial);
        rng
    }

    fn check(&mut self, ok: bool, p: u64, trial: u64, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation { p, seed: self.seed, trial, detail: detail() });
        }
    }
}

fn random_pauli(rng: &mut ChaCha8Rng, field: PrimeField, n: usize) -> PauliOp {
    let total = (field.p() as u64).pow(2 * n as u32);
    PauliOp::from_index(field, n, rng.gen_range(0..total)).expect("index in range")
}

fn encoder_for(rng: &mut ChaCha8Rng, p: u64, shape: (usize, usize, usize)) -> Result<SymplecticEncoder> {
    let params = CodeParams::new(p, shape.0, shape.1, shape.2)?;
    let dim = params.dim();
    Ok(random_encoder_with(params, rng, 8 * dim * dim))
}

/// Runs one named suite. Unknown names are an error.
pub fn run_suite(name: &str, primes: &[u64], trials: usize, seed: u64) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidParams(format!("unknown suite `{name}` (expected one of {})", SUITES.join(", "))));
    }
    for &p in primes {
        PrimeField::new(p)?;
    }
    let mut ctx = Ctx { seed, checks: 0, notes: Vec::new(), violations: Vec::new() };
    match name {
        "commutation" => commutation(&mut ctx, primes, trials)?,
        "conservation" => conservation(&mut ctx, primes, trials)?,
        "semicomm" => semicomm(&mut ctx, primes, trials)?,
        "precipitation" => precipitation(&mut ctx, primes, trials)?,
        "centralizer" => centralizer_suite(&mut ctx, primes, trials)?,
        _ => qubit_no_go(&mut ctx, trials)?,
    }
    Ok(SuiteReport {
        suite: name.into(),
        primes: primes.to_vec(),
        trials,
        seed,
        passed: ctx.violations.is_empty(),
        checks: ctx.checks,
        notes: ctx.notes,
        violations: ctx.violations,
    })
}

fn commutation(ctx: &mut Ctx, primes: &[u64], trials: usize) -> Result<()> {
    for &p in primes {
        if p > MAX_ORACLE_PRIME as u64 {
            ctx.notes.push(format!("p = {p}: dense oracle unavailable, skipped"));
            continue;
        }
        let f = PrimeField::new(p)?;
        for trial in 0..trials as u64 {
            let mut rng = ctx.rng(p, trial);
            let n = 1 + (trial % 2) as usize;
            let (a, b) = (random_pauli(&mut rng, f, n), random_pauli(&mut rng, f, n));
            let symplectic = a.commutator(&b)?;
            let dense = oracle_commutator(&a, &b)?;
            ctx.check(dense == Some(symplectic), p, trial, || format!("c({a}, {b}) = {} but oracle gives {dense:?}", symplectic.0));
        }
    }
    Ok(())
}

const SHAPES: [(usize, usize, usize); 4] = [(1, 1, 1), (1, 2, 1), (2, 2, 1), (1, 3, 2)];

fn conservation(ctx: &mut Ctx, primes: &[u64], trials: usize) -> Result<()> {
    for &p in primes {
        for trial in 0..trials as u64 {
            let mut rng = ctx.rng(p, trial);
            let e = encoder_for(&mut rng, p, SHAPES[trial as usize % SHAPES.len()])?;
            let q = e.params().qudits();
            let f = e.params().field;
            for _ in 0..50 {
                let (a, b) = (random_pauli(&mut rng, f, q), random_pauli(&mut rng, f, q));
                let before = a.commutator(&b)?;
                let after = e.apply(&a)?.commutator(&e.apply(&b)?)?;
                ctx.check(before == after, p, trial, || format!("c({a}, {b}) changed from {} to {}", before.0, after.0));
            }
        }
    }
    Ok(())
}

fn semicomm(ctx: &mut Ctx, primes: &[u64], trials: usize) -> Result<()> {
    let budgets = Budgets::default();
    let mut pairs = 0u64;
    for &p in primes {
        for trial in 0..trials as u64 {
            let mut rng = ctx.rng(p, trial);
            let e = encoder_for(&mut rng, p, SHAPES[1 + trial as usize % 2])?;
            let d = StateDiagram::new(&e)?;
            let scan = criterion_scan(&d, &budgets);
            for rec in scan.records.iter().take(40) {
                if p == 2 {
                    ctx.check(rec.doubled_sum == 0, p, trial, || format!("doubled sum {} for {rec:?}", rec.doubled_sum));
                }
                let phase = phase_oracle(&d, &rec.f_path, &rec.p_sequence())?;
                ctx.check(phase.0 == rec.doubled_sum, p, trial, || {
                    format!("oracle phase {} != doubled sum {} for {rec:?}", phase.0, rec.doubled_sum)
                });
                pairs += 1;
            }
            if scan.criterion_met {
                ctx.notes.push(format!("p = {p}, trial {trial}: criterion met"));
            }
        }
    }
    ctx.notes.push(format!("{pairs} path/cycle pairs cross-checked"));
    Ok(())
}

fn precipitation(ctx: &mut Ctx, primes: &[u64], trials: usize) -> Result<()> {
    for &p in primes {
        for trial in 0..trials as u64 {
            let mut rng = ctx.rng(p, trial);
            let shape = if trial % 2 == 0 { (1, 2, 1) } else { (2, 3, 1) };
            let e = encoder_for(&mut rng, p, shape)?;
            let d = StateDiagram::new(&e)?;
            let f0 = finite_memory_group(&d)?;
            for i in 1..=e.params().ancillas() {
                for a in 0..p as u8 {
                    match precipitation_orbit(&d, i, a, 1_000_000) {
                        Ok(o) => {
                            ctx.check(o.within_bound(), p, trial, || format!("orbit exceeds its bound: {o:?}"));
                            let start = o.free_orbit.first().copied().unwrap_or(0);
                            ctx.check(f0.contains(start), p, trial, || format!("Z_{i}^{a} leaves memory {start} outside F0"));
                        }
                        Err(err) => ctx.check(false, p, trial, || format!("Z_{i}^{a}: {err}")),
                    }
                }
            }
        }
    }
    Ok(())
}

fn centralizer_suite(ctx: &mut Ctx, primes: &[u64], trials: usize) -> Result<()> {
    let budgets = Budgets::default();
    for &p in primes {
        let mut disagreements = 0;
        for trial in 0..trials as u64 {
            let mut rng = ctx.rng(p, trial);
            let e = encoder_for(&mut rng, p, SHAPES[1 + trial as usize % 2])?;
            let d = StateDiagram::new(&e)?;
            let pr = *e.params();
            let f0 = finite_memory_group(&d)?;
            let p0 = zero_cycle_group(&d)?;
            let c = centralizer(&f0, pr.m, pr.field)?;
            ctx.check(c.members == centralizer_by_scan(&f0, pr.m, pr.field), p, trial, || "nullspace centralizer differs from scan".into());
            ctx.check(f0.closure_verified && p0.closure_verified, p, trial, || "subgroup closure failed".into());
            let report = verify_corollary_p0_equals_centralizer(&d, &budgets)?;
            if p == 2 {
                ctx.check(report.equal, p, trial, || format!("P0 {:?} != C(F0) {:?}", p0.members, c.members));
            } else if !report.equal {
                disagreements += 1;
            }
        }
        if p > 2 {
            ctx.notes.push(format!("p = {p}: P0 != C(F0) on {disagreements} of {trials} encoders"));
        }
    }
    Ok(())
}

fn qubit_no_go(ctx: &mut Ctx, trials: usize) -> Result<()> {
    let full = run_search(&SearchConfig::exhaustive(2, 1, 1, 1), |_| {})?;
    ctx.check(full.examined == 720, 2, 0, || format!("enumerated {} encoders, expected 720", full.examined));
    ctx.check(full.matches == 0, 2, 0, || format!("recursive non-catastrophic encoders at {:?}", full.match_indices));
    ctx.notes.push(format!("(1,1,1): {} encoders, {} recursive", full.examined, full.recursive));
    if trials > 0 {
        let sampled = run_search(&SearchConfig::sampled(2, 1, 2, 1, trials as u64, ctx.seed), |_| {})?;
        ctx.check(sampled.matches == 0, 2, 1, || format!("recursive non-catastrophic samples {:?}", sampled.match_indices));
        ctx.notes.push(format!("(1,2,1): {} samples, {} recursive", sampled.examined, sampled.recursive));
    }
    Ok(())
}
