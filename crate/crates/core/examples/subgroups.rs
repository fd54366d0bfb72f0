//! Finite-memory and zero-physical-cycle subgroups, and the centralizer of
//! the former, for a few random qubit encoders.

use quconv::analysis::{centralizer, finite_memory_group, infinite_memory_states, zero_cycle_group};
use quconv::encoder::random_encoder;
use quconv::{CodeParams, StateDiagram};

fn main() -> quconv::Result<()> {
    let params = CodeParams::new(2, 2, 2, 1)?;
    for seed in 0..5 {
        let e = random_encoder(params, seed, 100);
        let d = StateDiagram::new(&e)?;
        let f0 = finite_memory_group(&d)?;
        let p0 = zero_cycle_group(&d)?;
        let c = centralizer(&f0, params.m, params.field)?;
        let show = |ids: &[usize]| ids.iter().map(|&v| d.memory_pauli(v).to_string()).collect::<Vec<_>>().join(", ");
        println!("seed {seed}");
        println!("  F0 = <{}> order {}", show(&f0.generators), f0.len());
        println!("  P0 = <{}> order {}", show(&p0.generators), p0.len());
        println!("  C(F0) order {}, equals P0: {}", c.len(), c.members == p0.members);
        println!("  states outside F0: {}", infinite_memory_states(&d)?.len());
    }
    Ok(())
}
