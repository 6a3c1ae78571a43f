use std::fmt;

use num_complex::Complex64;

use crate::algebra::linalg::CMat;

/// Syntax tree of a homomorphism between unitary (or invertible) groups.
#[derive(Debug, Clone, PartialEq)]
pub enum HomExpr {
    /// `u ↦ u`.
    Id,
    /// `u ↦ V u V*`, one matrix per source block.
    Conj(Vec<CMat>),
    /// Entrywise complex conjugation.
    Bar,
    /// `z ↦ zⁿ` on an abelian source.
    Power(i64),
    /// Determinant of a single-block source.
    Det,
    /// `u ↦ u ⊕ 1_m`.
    Pad(usize),
    /// `u ↦ u ⊕ … ⊕ u` inside one block of size `m·n`.
    Amplify(usize),
    /// `u ↦ (u, …, u)`: the source repeated `m` times as separate blocks.
    AmplifySrc(usize),
    /// `(u₁, …, u_k) ↦ diag(u₁, …, u_k)` in a single block.
    Join,
    /// Block `i` (1-based).
    Proj(usize),
    /// Applies the `i`-th expression to block `i`.
    DirectSum(Vec<HomExpr>),
    /// `outer ∘ inner`.
    Compose(Box<HomExpr>, Box<HomExpr>),
    /// Pointwise product of images in an abelian target.
    Mult(Vec<HomExpr>),
    /// `z ↦ |z|^{-β+αi} zⁿ` on an abelian source (invertible groups).
    ///
    /// Writing `z = e^{2πi(a+bi)}`, the image is `e^{2πi((na - αb) + i(n - β)b)}`,
    /// so the real-linear generator is `[[n, -α], [0, n - β]]`. On the circle it
    /// restricts to `zⁿ`.
    ModTwist { alpha: f64, beta: f64, n: i64 },
}

impl HomExpr {
    pub fn compose(outer: HomExpr, inner: HomExpr) -> HomExpr {
        HomExpr::Compose(Box::new(outer), Box::new(inner))
    }

    /// Whether the expression uses a generator that is only meaningful on
    /// invertible (not just unitary) elements.
    pub fn uses_gl_generators(&self) -> bool {
        match self {
            HomExpr::ModTwist { .. } => true,
            HomExpr::DirectSum(es) | HomExpr::Mult(es) => es.iter().any(HomExpr::uses_gl_generators),
            HomExpr::Compose(a, b) => a.uses_gl_generators() || b.uses_gl_generators(),
            _ => false,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            HomExpr::DirectSum(es) | HomExpr::Mult(es) => 1 + es.iter().map(HomExpr::size).sum::<usize>(),
            HomExpr::Compose(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }
}

fn write_real(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x == x.trunc() && x.abs() < 1e15 {
        write!(f, "{}", x as i64)
    } else {
        write!(f, "{x}")
    }
}

fn write_complex(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
    if z.im == 0.0 {
        return write_real(f, z.re);
    }
    if z.re != 0.0 {
        write_real(f, z.re)?;
        f.write_str(if z.im < 0.0 { "-" } else { "+" })?;
        write_real(f, z.im.abs())?;
    } else {
        write_real(f, z.im)?;
    }
    f.write_str("i")
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &CMat) -> fmt::Result {
    f.write_str("[")?;
    for r in 0..m.nrows() {
        if r > 0 {
            f.write_str(", ")?;
        }
        f.write_str("[")?;
        for c in 0..m.ncols() {
            if c > 0 {
                f.write_str(", ")?;
            }
            write_complex(f, m[(r, c)])?;
        }
        f.write_str("]")?;
    }
    f.write_str("]")
}

fn write_list(f: &mut fmt::Formatter<'_>, name: &str, es: &[HomExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, e) in es.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

/// Prints in the concrete syntax accepted by [`super::parse_hom`].
impl fmt::Display for HomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomExpr::Id => f.write_str("id"),
            HomExpr::Conj(ms) => {
                f.write_str("conj(")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write_matrix(f, m)?;
                }
                f.write_str(")")
            }
            HomExpr::Bar => f.write_str("bar"),
            HomExpr::Power(n) => write!(f, "power({n})"),
            HomExpr::Det => f.write_str("det"),
            HomExpr::Pad(m) => write!(f, "pad({m})"),
            HomExpr::Amplify(m) => write!(f, "amplify({m})"),
            HomExpr::AmplifySrc(m) => write!(f, "amplify_src({m})"),
            HomExpr::Join => f.write_str("join"),
            HomExpr::Proj(i) => write!(f, "proj{i}"),
            HomExpr::DirectSum(es) => write_list(f, "dsum", es),
            HomExpr::Mult(es) => write_list(f, "mult", es),
            HomExpr::Compose(outer, inner) => {
                if matches!(**outer, HomExpr::Compose(..)) {
                    write!(f, "({outer}) . {inner}")
                } else {
                    write!(f, "{outer} . {inner}")
                }
            }
            HomExpr::ModTwist { alpha, beta, n } => {
                f.write_str("modtwist(")?;
                write_real(f, *alpha)?;
                f.write_str(", ")?;
                write_real(f, *beta)?;
                if *n != 1 {
                    write!(f, ", {n}")?;
                }
                f.write_str(")")
            }
        }
    }
}
