//! Determinant classes modulo the loop lattice, and membership in the closed
//! commutator subgroup.

use unihom::algebra::random::{random_unitary_with, rng};
use unihom::algebra::{AlgebraShape, Unitary};
use unihom::path::{cu_membership, thomsen_class};
use unihom::report::properties::cube_root_diagonal;

fn main() -> unihom::Result<()> {
    let u = cube_root_diagonal();
    let c = thomsen_class(&u)?;
    println!(
        "diag(e^(2 pi i/3), 1): class {:?} mod {:?}, distance from 0 {:.4}, in CU {}",
        c.representative.values(),
        c.lattice_spacing,
        c.distance_from_zero(),
        cu_membership(&u)?
    );

    let mut r = rng(3, 0);
    for n in [2, 3] {
        let s = AlgebraShape::matrix(n)?;
        let mut w = Unitary::one(&s);
        for _ in 0..4 {
            let (a, b) = (random_unitary_with(&s, &mut r), random_unitary_with(&s, &mut r));
            w = w.mul(&a.group_commutator(&b)?)?;
        }
        let c = thomsen_class(&w)?;
        println!("M{n}: product of 4 commutators, distance {:.2e}, in CU {}", c.distance_from_zero(), cu_membership(&w)?);
    }
    Ok(())
}
