//! Builds an encoder from gates, applies it, and writes it to the text
//! format and back.

use quconv::encoder::{deserialize, serialize};
use quconv::{CodeParams, Gate, PauliOp, SymplecticEncoder};

fn main() -> quconv::Result<()> {
    // wires: memory 0, ancilla 1, logical 2
    let params = CodeParams::new(3, 1, 2, 1)?;
    let gates = [Gate::Fourier(2), Gate::Sum { control: 2, target: 0 }, Gate::Sum { control: 1, target: 2 }, Gate::Shear(0)];
    let e = SymplecticEncoder::from_gates(params, &gates)?;
    let f = params.field;

    let t = e.apply_roles(&PauliOp::identity(f, 1), &PauliOp::identity(f, 1), &PauliOp::x_on(f, 1, 0, 1))?;
    println!("logical X enters empty memory: physical {} memory {}", t.physical_out, t.memory_out);

    let a = PauliOp::parse(f, "X1 . Z2 . X1Z1")?;
    let b = PauliOp::parse(f, "Z1 . X1 . I")?;
    println!("c(a,b) = {}, c(Ea,Eb) = {}", a.commutator(&b)?.0, e.apply(&a)?.commutator(&e.apply(&b)?)?.0);

    let text = serialize(&e);
    print!("{text}");
    let back = deserialize(&text)?;
    assert_eq!(back, e);
    assert!(back.compose(&back.inverse()?)?.matrix().is_identity());
    println!("round trip ok");
    Ok(())
}
