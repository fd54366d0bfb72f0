//! Prints the state diagram of a small qubit encoder and its loop
//! structure under the zero-physical filter.

use quconv::encoder::random_encoder;
use quconv::{CodeParams, EdgeFilter, StateDiagram};

fn main() -> quconv::Result<()> {
    let e = random_encoder(CodeParams::new(2, 1, 2, 1)?, 7, 60);
    let d = StateDiagram::new(&e)?;
    println!("{} vertices, {} edges out of each", d.num_vertices(), d.num_labels());

    for v in 0..d.num_vertices() {
        println!("memory {} ({v}):", d.memory_pauli(v));
        for edge in d.edges_from(v, EdgeFilter::zero_physical()) {
            println!("  {edge}");
        }
    }

    let zp = EdgeFilter::zero_physical();
    println!("zero-physical loop vertices: {:?}", d.loop_vertices(&zp));
    println!("zero-physical components: {:?}", d.scc(&zp).components);
    for c in d.enumerate_simple_cycles(&zp, d.num_vertices(), 100)? {
        println!("cycle {:?}", c.vertices);
    }
    Ok(())
}
