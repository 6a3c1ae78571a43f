use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits applied when constructing a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeLimits {
    pub max_block_size: usize,
    pub max_blocks: usize,
}

impl Default for ShapeLimits {
    fn default() -> Self {
        ShapeLimits {
            max_block_size: 16,
            max_blocks: 8,
        }
    }
}

/// A finite-dimensional C*-algebra `M_{n1} ⊕ … ⊕ M_{nk}`, stored as its block sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AlgebraShape {
    blocks: Vec<usize>,
}

impl AlgebraShape {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        Self::with_limits(blocks, ShapeLimits::default())
    }

    pub fn with_limits(blocks: Vec<usize>, limits: ShapeLimits) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Shape("an algebra needs at least one block".into()));
        }
        if let Some(&n) = blocks.iter().find(|&&n| n == 0) {
            return Err(Error::Shape(format!("block size {n} must be positive")));
        }
        if blocks.len() > limits.max_blocks {
            return Err(Error::Shape(format!(
                "{} blocks exceeds the limit of {}",
                blocks.len(),
                limits.max_blocks
            )));
        }
        if let Some(&n) = blocks.iter().find(|&&n| n > limits.max_block_size) {
            return Err(Error::Shape(format!(
                "block size {n} exceeds the limit of {}",
                limits.max_block_size
            )));
        }
        Ok(AlgebraShape { blocks })
    }

    /// The single matrix algebra `M_n`.
    pub fn matrix(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `C^k`, the abelian algebra with `k` one-by-one blocks.
    pub fn abelian(k: usize) -> Result<Self> {
        Self::new(vec![1; k])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self, i: usize) -> usize {
        self.blocks[i]
    }

    pub fn is_abelian(&self) -> bool {
        self.blocks.iter().all(|&n| n == 1)
    }

    /// Complex dimension `Σ nᵢ²`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }

    /// `Σ nᵢ`, the size of the block-diagonal matrices.
    pub fn dimension_sum(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Shape of block `i` viewed as an algebra on its own.
    pub fn block_shape(&self, i: usize) -> AlgebraShape {
        AlgebraShape {
            blocks: vec![self.blocks[i]],
        }
    }

    /// The K₀ class of the unit: `(n₁, …, n_k)`.
    pub fn unit_class(&self) -> Vec<i64> {
        self.blocks.iter().map(|&n| n as i64).collect()
    }

    /// Concatenation of block lists (direct sum of algebras).
    pub fn direct_sum<'a>(parts: impl IntoIterator<Item = &'a AlgebraShape>) -> Result<Self> {
        let blocks: Vec<usize> = parts
            .into_iter()
            .flat_map(|s| s.blocks.iter().copied())
            .collect();
        Self::new(blocks)
    }
}

impl TryFrom<Vec<usize>> for AlgebraShape {
    type Error = Error;

    fn try_from(blocks: Vec<usize>) -> Result<Self> {
        AlgebraShape::new(blocks)
    }
}

impl From<AlgebraShape> for Vec<usize> {
    fn from(shape: AlgebraShape) -> Self {
        shape.blocks
    }
}

impl fmt::Display for AlgebraShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" (+) ")?;
            }
            write!(f, "M{n}")?;
        }
        Ok(())
    }
}

impl FromStr for AlgebraShape {
    type Err = Error;

    /// Parses `M2 (+) M3 (+) M1`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Shape("empty shape".into()));
        }
        let mut blocks = Vec::new();
        for part in compact.split("(+)") {
            let digits = part
                .strip_prefix('M')
                .ok_or_else(|| Error::Shape(format!("expected `M<n>`, found `{part}`")))?;
            let n: usize = digits
                .parse()
                .map_err(|_| Error::Shape(format!("bad block size in `{part}`")))?;
            blocks.push(n);
        }
        AlgebraShape::new(blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_whitespace_insensitively() {
        let s: AlgebraShape = "M2 (+) M3(+)M1".parse().unwrap();
        assert_eq!(s.blocks(), &[2, 3, 1]);
        assert_eq!(s.to_string(), "M2 (+) M3 (+) M1");
        let t: AlgebraShape = " M 2 ( + ) M 1 ".parse().unwrap();
        assert_eq!(t.blocks(), &[2, 1]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(AlgebraShape::new(vec![]).is_err());
        assert!(AlgebraShape::new(vec![2, 0]).is_err());
        assert!(AlgebraShape::new(vec![17]).is_err());
        assert!(AlgebraShape::new(vec![1; 9]).is_err());
        assert!("N2".parse::<AlgebraShape>().is_err());
        assert!("M2 (+)".parse::<AlgebraShape>().is_err());
    }

    #[test]
    fn limits_are_configurable() {
        let big = ShapeLimits {
            max_block_size: 32,
            max_blocks: 12,
        };
        assert!(AlgebraShape::with_limits(vec![20; 10], big).is_ok());
    }

    #[test]
    fn unit_class_is_block_sizes() {
        let s = AlgebraShape::new(vec![2, 3]).unwrap();
        assert_eq!(s.unit_class(), vec![2, 3]);
        assert_eq!(s.dimension(), 13);
    }
}
