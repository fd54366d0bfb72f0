//! Classifies an encoder read from a file, or a built-in catastrophic
//! example when no path is given.
//!
//! `cargo run --example classify_encoder -- path/to/encoder.toml`

use quconv::analysis::{classify, Budgets};
use quconv::encoder::deserialize;
use quconv::{CodeParams, Gate, SymplecticEncoder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = match std::env::args().nth(1) {
        Some(path) => deserialize(&std::fs::read_to_string(path)?)?,
        // logical qubit copied into memory and fed back without touching
        // the physical output
        None => SymplecticEncoder::from_gates(CodeParams::new(2, 1, 1, 1)?, &[Gate::Sum { control: 1, target: 0 }])?,
    };
    let c = classify(&e, &Budgets::from_env())?;
    println!("catastrophic: {}", c.catastrophic);
    for edge in c.catastrophic_witness.iter().flatten() {
        println!("  {edge}");
    }
    println!("recursive: {} (identity ancillas: {})", c.recursive, c.recursive_impulse);
    for edge in c.recursive_counterexample.iter().flatten() {
        println!("  {edge}");
    }
    println!("finite memory group order {}, zero-cycle group order {}", c.finite_memory.len(), c.zero_cycle.len());
    println!("criterion pairs {}, met {}", c.criterion_pairs, c.criterion_met);
    Ok(())
}
