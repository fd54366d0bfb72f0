//! Enumerates (finite path, zero-physical cycle) pairs and their commutator
//! sums, cross-checked against the frame-by-frame phase oracle.

use quconv::analysis::{criterion_scan, phase_oracle, Budgets};
use quconv::encoder::random_encoder;
use quconv::{CodeParams, StateDiagram};

fn main() -> quconv::Result<()> {
    let e = random_encoder(CodeParams::new(3, 1, 2, 1)?, 21, 80);
    let d = StateDiagram::new(&e)?;
    let scan = criterion_scan(&d, &Budgets::default());
    println!("{} paths, {} cycles, {} pairs, complete {}", scan.f_paths, scan.p_cycles, scan.pairs_examined, scan.complete);
    for r in scan.records.iter().take(10) {
        let phase = phase_oracle(&d, &r.f_path, &r.p_sequence())?;
        println!("F {:?} P {:?} x{}: sum {} doubled {} oracle {}", r.f_path, r.p_cycle, r.repetitions, r.sum, r.doubled_sum, phase.0);
    }
    println!("criterion met: {}", scan.criterion_met);
    Ok(())
}
