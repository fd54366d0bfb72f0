//! Injects an ancilla stabilizer into a looping encoder and reinjects it
//! until the memory returns to the identity.

use quconv::analysis::precipitation_orbit;
use quconv::encoder::random_encoder;
use quconv::{CodeParams, StateDiagram};

fn main() -> quconv::Result<()> {
    let params = CodeParams::new(5, 1, 2, 1)?;
    for seed in 0..40 {
        let e = random_encoder(params, seed, 80);
        let d = StateDiagram::new(&e)?;
        let o = precipitation_orbit(&d, 1, 1, 10_000)?;
        let (Some(t), Some(l)) = (o.loop_start, o.loop_len) else {
            continue;
        };
        println!("seed {seed}: free orbit {:?}", o.free_orbit.iter().map(|&v| d.memory_pauli(v).to_string()).collect::<Vec<_>>());
        println!("loop starts at o_{t}, length {l}; injections at frames {:?}", o.injections);
        println!("trajectory {:?}", o.trajectory);
        println!("identity after {} frames, bound {}", o.steps_to_identity, o.bound);
        return Ok(());
    }
    println!("no looping orbit among these seeds");
    Ok(())
}
