//! Runs every two-qubit symplectic encoder with one memory, one physical
//! and one logical qubit and counts the classifications.

use quconv::harness::{run_search, SearchConfig, Target};

fn main() -> quconv::Result<()> {
    for target in [Target::Catastrophic, Target::Recursive, Target::RecursiveNoncatastrophic] {
        let mut config = SearchConfig::exhaustive(2, 1, 1, 1);
        config.target = target;
        config.max_witnesses = 0;
        let s = run_search(&config, |_| {})?;
        println!("{target:?}: {} of {} (group order {})", s.matches, s.examined, s.group_order);
    }
    Ok(())
}
