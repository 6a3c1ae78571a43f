//! The general-linear generator `G_θ` and its failure to be complex-linear.

use unihom::algebra::linalg::c;
use unihom::algebra::{AlgebraShape, Element};
use unihom::hom::Homomorphism;
use unihom::induced::{c_linearity_defect, g_theta_detailed, gl_real_matrix};

fn rounded(m: &[Vec<f64>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("{:?}", r.iter().map(|x| (x * 1e9).round() / 1e9 + 0.0).collect::<Vec<_>>())).collect();
    format!("[{}]", rows.join(", "))
}

fn main() -> unihom::Result<()> {
    let m1: AlgebraShape = "M1".parse()?;
    for (alpha, beta) in [(0.0, 0.0), (0.5, -0.3), (0.0, 0.4)] {
        let h = Homomorphism::parse(&format!("modtwist({alpha}, {beta}) . power(2)"), m1.clone())?;
        println!(
            "alpha {alpha:>4}, beta {beta:>4}: G = {}, C-linearity defect {:.2e}",
            rounded(&gl_real_matrix(&h)?),
            c_linearity_defect(&h)?
        );
    }

    let h = Homomorphism::parse("modtwist(0.5, -0.3)", m1.clone())?;
    let a = Element::one(&m1).scale(c(0.3, 2.0));
    let g = g_theta_detailed(&h, &a)?;
    println!("\nG(0.3+2i) = {} at N = {}, constancy residual {:.1e}", g.value.block(0)[(0, 0)], g.n, g.constancy_residual);

    // Corner embeddings are complex-linear; conjugation is antilinear.
    for text in ["pad(1)", "bar"] {
        let h = Homomorphism::parse(text, "M2".parse()?)?;
        let g = gl_real_matrix(&h)?;
        println!("{text}: G is {}x{}, C-linearity defect {:.1e}", g.len(), g[0].len(), c_linearity_defect(&h)?);
    }
    Ok(())
}
