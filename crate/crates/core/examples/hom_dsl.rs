//! The expression language: parsing, target inference, evaluation and errors.

use unihom::algebra::random::random_unitary;
use unihom::algebra::AlgebraShape;
use unihom::hom::Homomorphism;

fn main() -> unihom::Result<()> {
    let cases = [
        ("pad(1)", "M2"),
        ("det", "M3"),
        ("amplify(2) . bar", "M2"),
        ("dsum(pad(1), power(3))", "M2 (+) M1"),
        ("join . amplify_src(2)", "M1"),
        ("mult(power(-1) . proj1, proj2)", "M1 (+) M1"),
        ("conj([[0, 1], [1, 0]], [[0.6+0.8i]])", "M2 (+) M1"),
    ];
    for (text, src) in cases {
        let source: AlgebraShape = src.parse()?;
        let h = Homomorphism::parse(text, source)?;
        let check = h.check(5, 0);
        println!("{:<40} {} -> {}  gain {:.1}  hom defect {:.1e}", h.expr().to_string(), h.source(), h.target(), h.gain(), check.multiplicative_defect);
    }

    let h = Homomorphism::parse("dsum(pad(1), bar)", "M2 (+) M1".parse()?)?;
    let u = random_unitary(h.source(), 9);
    let v = h.apply(&u)?;
    println!("\ntheta(u) block sizes {:?}, unitary defect {:.1e}", v.shape().blocks(), v.element().unitary_defect());

    for (bad, src) in [("power(2)", "M2"), ("dsum(id)", "M1 (+) M1"), ("pad(1", "M1"), ("modtwist(0.5)", "M1")] {
        match Homomorphism::parse(bad, src.parse()?) {
            Ok(_) => println!("{bad}: accepted"),
            Err(e) => println!("{bad}: {e}"),
        }
    }
    Ok(())
}
