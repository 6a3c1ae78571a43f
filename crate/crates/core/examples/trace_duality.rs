//! The dual map on trace simplices and the functional `F(τ) = τ ∘ S_θ`.

use unihom::algebra::TraceWeights;
use unihom::hom::Homomorphism;
use unihom::induced::{apply_trace_dual, f_tau_dual, lambda_matrix, positivity_report, trace_dual};

fn main() -> unihom::Result<()> {
    let h = Homomorphism::parse("join . dsum(amplify(2), id)", "M1 (+) M1".parse()?)?;
    println!("{} : {} -> {}", h.expr(), h.source(), h.target());
    let l = lambda_matrix(&h)?;
    let v = positivity_report(&l, &h);
    println!("Lambda {:?}, positive {}, unital {}", l.matrix, v.positive, v.unital);
    let dual = trace_dual(&l, &v)?;
    println!("dual (columns are images of extreme traces) {dual:?}");
    let tau = TraceWeights::new(vec![1.0])?;
    println!("tau {:?} -> {:?}", tau.weights(), apply_trace_dual(&dual, &tau)?.weights());

    let f = f_tau_dual(&h, &tau)?;
    println!("F(tau) {:?}, via Lambda {:?}, residual {:.1e}", f.functional.coefficients(), f.via_lambda.coefficients(), f.residual);

    // A negative map is dualized after flipping its sign; a mixed-sign map has no dual.
    for (text, src) in [("bar", "M2"), ("dsum(pad(1), bar)", "M2 (+) M1")] {
        let h = Homomorphism::parse(text, src.parse()?)?;
        let l = lambda_matrix(&h)?;
        match trace_dual(&l, &positivity_report(&l, &h)) {
            Ok(d) => println!("{text}: dual {d:?}"),
            Err(e) => println!("{text}: {e}"),
        }
    }
    Ok(())
}
