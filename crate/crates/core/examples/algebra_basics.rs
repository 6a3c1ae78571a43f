//! Shapes, unitaries, the principal logarithm and the universal trace.

use unihom::algebra::random::{random_selfadjoint, random_unitary};
use unihom::algebra::{exp_generator, log_unitary, pairing_matrix, universal_trace, AlgebraShape, K0Class};

fn main() -> unihom::Result<()> {
    let shape: AlgebraShape = "M2 (+) M3 (+) M1".parse()?;
    println!("algebra {shape}, unit class {:?}", shape.unit_class());

    let a = random_selfadjoint(&shape, 1, 0.4);
    let u = exp_generator(&a, 1.0);
    let back = log_unitary(&u)?;
    println!("|log(e^(2 pi i a)) - a| = {:.2e}", back.element().distance(a.element())?);
    println!("Tr(a) = {:?}", universal_trace(&a).values());

    // Conjugation does not move the trace.
    let v = random_unitary(&shape, 2);
    let moved = universal_trace(&a.conjugate_by(&v)?);
    println!("Tr(v a v*) - Tr(a) = {:.2e}", moved.sub(&universal_trace(&a)).sup_norm());

    println!("pairing diag(1/n_i): {:?}", pairing_matrix(&shape));
    let x = K0Class(vec![1, 2, 0]);
    println!("rho({:?}) = {:?}", x.ranks(), unihom::algebra::pairing_rho(&shape, &x).values());
    Ok(())
}
