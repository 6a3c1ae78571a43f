//! `Λ`, positivity, `K₀` and the pairing square for a few homomorphisms.

use unihom::hom::Homomorphism;
use unihom::induced::{k0_map, ktu_report, lambda_matrix, positivity_report};

fn main() -> unihom::Result<()> {
    let cases = [
        ("power(-2)", "M1"),
        ("det", "M2"),
        ("pad(1)", "M2"),
        ("amplify(2)", "M1"),
        ("dsum(pad(1), bar)", "M2 (+) M1"),
        ("mult(power(-1) . proj1, proj2, proj3)", "M1 (+) M1 (+) M1"),
    ];
    for (text, src) in cases {
        let h = Homomorphism::parse(text, src.parse()?)?;
        let l = lambda_matrix(&h)?;
        let v = positivity_report(&l, &h);
        let k = k0_map(&h)?;
        let ktu = ktu_report(&h)?;
        println!("{text} : {} -> {}", h.source(), h.target());
        println!("  Lambda {:?}", l.matrix);
        println!("  K0     {:?}", k.matrix);
        println!(
            "  sign {:?}, positive {}, unital {}, circle degree {:?}, unit class preserved {}, pairing residual {:.1e}",
            v.sign, v.positive, v.unital, v.circle_degree, ktu.unit_class_preserved, ktu.pairing_residual
        );
    }
    Ok(())
}
