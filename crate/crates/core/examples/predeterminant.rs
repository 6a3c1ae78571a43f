//! Pre-determinants of piecewise-exponential paths, checked against quadrature.

use unihom::algebra::random::rng;
use unihom::algebra::{universal_trace, AlgebraShape, Element, SelfAdjoint, Unitary};
use unihom::path::{
    concat, loop_k0_class, pre_determinant, pre_determinant_numeric, projection_loop, random_path_with, PiecewisePath,
    UnitaryCurve,
};

/// `t ↦ ξ(t³)`: same endpoints, different speed.
struct Cubed(PiecewisePath);

impl UnitaryCurve for Cubed {
    fn shape(&self) -> &AlgebraShape {
        self.0.shape()
    }
    fn eval(&self, t: f64) -> Element {
        self.0.at(t * t * t).into_element()
    }
    fn knots(&self) -> Vec<f64> {
        self.0.knots().iter().map(|k| k.cbrt()).collect()
    }
}

fn main() -> unihom::Result<()> {
    let shape: AlgebraShape = "M2 (+) M1".parse()?;
    let mut r = rng(5, 0);

    let xi = random_path_with(Unitary::one(&shape), 3, 1.0, &mut r);
    let exact = pre_determinant(&xi);
    let numeric = pre_determinant_numeric(&xi, 1e-10);
    println!("exact {:?}\nquadrature {:?}", exact.values(), numeric.values());
    let slow = pre_determinant_numeric(&Cubed(xi.clone()), 1e-10);
    println!("reparametrized differs by {:.2e}", slow.sub(&exact).sup_norm());

    let eta = random_path_with(xi.end(), 2, 1.0, &mut r);
    let joined = pre_determinant(&concat(&xi, &eta)?);
    println!("concatenation defect {:.2e}", joined.sub(&exact.add(&pre_determinant(&eta))).sup_norm());

    // The loop t ↦ e^{2πitp} has pre-determinant Tr(p) and K0 class [p].
    let p = SelfAdjoint::diagonal(&shape, &[vec![1.0, 0.0], vec![1.0]])?;
    let l = projection_loop(&p)?;
    println!("loop value {:?}, Tr(p) {:?}, class {:?}", pre_determinant(&l).values(), universal_trace(&p).values(), loop_k0_class(&l)?.ranks());
    Ok(())
}
