//! Commutation phases of qutrit Paulis, checked against explicit matrices.

use quconv::pauli::oracle::{matrix_oracle, oracle_commutator};
use quconv::{PauliOp, PrimeField};

fn main() -> quconv::Result<()> {
    let f = PrimeField::new(3)?;
    let ops = ["X1 . I", "Z1 . I", "X1Z1 . Z2", "X2 . X1", "Z1 . Z1"];
    let ops: Vec<PauliOp> = ops.iter().map(|t| PauliOp::parse(f, t)).collect::<Result<_, _>>()?;

    println!("{:>12} {:>12}  c(P,Q)  matrices", "P", "Q");
    for a in &ops {
        for b in &ops {
            let c = a.commutator(b)?;
            let m = oracle_commutator(a, b)?;
            println!("{:>12} {:>12}  {:>6}  {:?}", a.to_string(), b.to_string(), c.0, m.map(|e| e.0));
        }
    }

    let p = &ops[2];
    println!("\n{p} has weight {} and index {}", p.weight(), p.to_index());
    println!("{p} cubed is {}", p.pow(3));
    println!("X1 as a 3x3 matrix, row 0: {:?}", (0..3).map(|c| matrix_oracle(&ops[0]).map(|m| m.get(0, c))).collect::<Vec<_>>());
    Ok(())
}
