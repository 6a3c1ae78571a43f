//! Random well-formed expressions for corpus and property runs.

use rand::Rng;

use super::{infer_target, HomExpr, Homomorphism};
use crate::algebra::random::random_unitary_with;
use crate::algebra::AlgebraShape;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomHomOptions {
    /// Maximum nesting of `dsum`, `mult` and composition.
    pub max_depth: usize,
    pub max_block_size: usize,
    pub max_blocks: usize,
    /// Allow `modtwist` leaves.
    pub allow_gl: bool,
}

impl Default for RandomHomOptions {
    fn default() -> Self {
        RandomHomOptions { max_depth: 3, max_block_size: 6, max_blocks: 4, allow_gl: false }
    }
}

fn within(t: &AlgebraShape, o: &RandomHomOptions) -> bool {
    t.block_count() <= o.max_blocks && t.blocks().iter().all(|&n| n <= o.max_block_size)
}

fn leaf<R: Rng + ?Sized>(src: &AlgebraShape, o: &RandomHomOptions, rng: &mut R) -> HomExpr {
    let k = src.block_count();
    let n = src.block_size(0);
    let single = k == 1;
    let mut options: Vec<HomExpr> = vec![HomExpr::Id, HomExpr::Bar];
    let v = random_unitary_with(src, rng);
    options.push(HomExpr::Conj(v.into_element().into_blocks()));
    options.push(HomExpr::Proj(rng.random_range(1..=k)));
    if k > 1 {
        options.push(HomExpr::Join);
    }
    if 2 * k <= o.max_blocks {
        options.push(HomExpr::AmplifySrc(2));
    }
    if single {
        options.push(HomExpr::Det);
        let m = rng.random_range(1..=2);
        if n + m <= o.max_block_size {
            options.push(HomExpr::Pad(m));
        }
        let m = rng.random_range(2..=3);
        if n * m <= o.max_block_size {
            options.push(HomExpr::Amplify(m));
        }
    }
    if src.is_abelian() {
        let p = rng.random_range(-3..=3);
        options.push(HomExpr::Power(p));
        if o.allow_gl {
            let r = |rng: &mut R| (rng.random_range(-100..=100) as f64) / 100.0;
            let (alpha, beta) = (r(rng), r(rng));
            options.push(HomExpr::ModTwist { alpha, beta, n: rng.random_range(-2..=2) });
        }
    }
    let i = rng.random_range(0..options.len());
    options.swap_remove(i)
}

fn build<R: Rng + ?Sized>(src: &AlgebraShape, depth: usize, o: &RandomHomOptions, rng: &mut R) -> HomExpr {
    loop {
        let e = if depth == 0 || rng.random_bool(0.35) {
            leaf(src, o, rng)
        } else {
            match rng.random_range(0..3) {
                0 => {
                    let inner = build(src, depth - 1, o, rng);
                    let Ok(mid) = infer_target(&inner, src) else { continue };
                    let outer = build(&mid, depth - 1, o, rng);
                    HomExpr::compose(outer, inner)
                }
                1 => HomExpr::DirectSum(
                    (0..src.block_count())
                        .map(|i| build(&src.block_shape(i), depth - 1, o, rng))
                        .collect(),
                ),
                _ => {
                    let first = build(src, depth - 1, o, rng);
                    match infer_target(&first, src) {
                        Ok(t) if t.is_abelian() => {
                            let mut second = None;
                            for _ in 0..10 {
                                let cand = build(src, depth - 1, o, rng);
                                if infer_target(&cand, src).is_ok_and(|c| c == t) {
                                    second = Some(cand);
                                    break;
                                }
                            }
                            let second = second.unwrap_or_else(|| {
                                HomExpr::compose(HomExpr::Power(rng.random_range(-2..=2)), first.clone())
                            });
                            HomExpr::Mult(vec![first, second])
                        }
                        _ => continue,
                    }
                }
            }
        };
        if infer_target(&e, src).is_ok_and(|t| within(&t, o)) {
            return e;
        }
    }
}

/// A random valid homomorphism out of `source` with nesting at most `o.max_depth`.
pub fn random_hom_with<R: Rng + ?Sized>(source: &AlgebraShape, o: &RandomHomOptions, rng: &mut R) -> Homomorphism {
    let e = build(source, o.max_depth, o, rng);
    Homomorphism::new(e, source.clone()).expect("generated expressions are valid")
}
