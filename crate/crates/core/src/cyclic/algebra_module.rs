//! Tensor powers `A^{⊗(k+1)}` as a cyclic module.
//!
//! Basis tuples `(a_0, ..., a_k)` are ordered lexicographically, so the
//! coordinate of a tuple is its base-`dim A` value with `a_0` most
//! significant.

use super::{CyclicError, CyclicModule};
use crate::algebra::Algebra;
use crate::exact::{Scalar, SparseMatrix};

pub struct AlgebraCyclic<'a> {
    algebra: &'a Algebra,
    ceiling: usize,
}

impl<'a> AlgebraCyclic<'a> {
    pub fn new(algebra: &'a Algebra, ceiling: usize) -> Self {
        AlgebraCyclic { algebra, ceiling }
    }

    pub(crate) fn unbounded(algebra: &'a Algebra) -> Self {
        AlgebraCyclic {
            algebra,
            ceiling: usize::MAX,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        self.algebra
    }
}

fn decode(mut index: usize, d: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for slot in digits.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

fn encode(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

impl CyclicModule for AlgebraCyclic<'_> {
    fn level_dim(&self, k: usize) -> usize {
        self.algebra.dim().pow(k as u32 + 1)
    }

    fn face(&self, k: usize, r: usize) -> SparseMatrix {
        assert!(k >= 1 && r <= k, "face d_{r} on level {k}");
        let d = self.algebra.dim();
        let mut triplets = Vec::new();
        for col in 0..self.level_dim(k) {
            let t = decode(col, d, k + 1);
            // d_r multiplies slots r, r+1; d_k puts a_k a_0 in front
            let (left, right, rest): (usize, usize, Vec<usize>) = if r < k {
                (t[r], t[r + 1], [&t[..r], &[0], &t[r + 2..]].concat())
            } else {
                (t[k], t[0], [&[0], &t[1..k]].concat())
            };
            let slot = if r < k { r } else { 0 };
            for (c, coeff) in self.algebra.product(left, right) {
                let mut out = rest.clone();
                out[slot] = *c;
                triplets.push((encode(&out, d), col, coeff.clone()));
            }
        }
        SparseMatrix::from_triplets(self.level_dim(k - 1), self.level_dim(k), triplets)
    }

    fn rotation(&self, k: usize) -> SparseMatrix {
        let d = self.algebra.dim();
        let n = self.level_dim(k);
        let triplets = (0..n).map(|col| {
            let t = decode(col, d, k + 1);
            let rotated: Vec<usize> = std::iter::once(t[k])
                .chain(t[..k].iter().copied())
                .collect();
            (encode(&rotated, d), col, Scalar::one())
        });
        SparseMatrix::from_triplets(n, n, triplets)
    }

    fn check_level(&self, k: usize) -> Result<(), CyclicError> {
        let dim = (self.algebra.dim() as u128).checked_pow(k as u32 + 1);
        match dim {
            Some(x) if x <= self.ceiling as u128 => Ok(()),
            _ => Err(CyclicError::DimensionCeiling {
                level: k,
                dim: dim.map_or_else(
                    || format!("{}^{}", self.algebra.dim(), k + 1),
                    |x| x.to_string(),
                ),
                ceiling: self.ceiling,
            }),
        }
    }
}

/// `s(a_0 ⊗ ... ⊗ a_k) = 1 ⊗ a_0 ⊗ ... ⊗ a_k`.
pub fn extra_degeneracy_s(a: &Algebra, k: usize) -> SparseMatrix {
    let m = AlgebraCyclic::unbounded(a);
    let n = m.level_dim(k);
    let mut triplets = Vec::new();
    for (c, coeff) in a.unit_sparse() {
        for col in 0..n {
            triplets.push((c * n + col, col, coeff.clone()));
        }
    }
    SparseMatrix::from_triplets(m.level_dim(k + 1), n, triplets)
}
