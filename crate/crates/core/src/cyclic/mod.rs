//! Cyclic modules, the Hochschild and cyclic operators, and the periodic
//! bicomplex built from them.
//!
//! A cyclic module here is a sequence of finite-dimensional levels with face
//! maps `d_r : L_k -> L_{k-1}` (`0 <= r <= k`) and an unsigned rotation `t`
//! of order `k + 1` on `L_k`, subject to `d_0 t = d_k` and
//! `d_r t = t d_{r-1}`. Everything downstream (b, b', λ, N and the grid) is
//! derived from those two pieces of data, so the algebra and the Čech
//! presheaf share one implementation.

mod algebra_module;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::complexes::{z2_cohomology, Bicomplex, CochainComplex, ComplexError, Z2Ranks};
use crate::exact::{compose, rank, Scalar, SparseMatrix};

pub use algebra_module::{extra_degeneracy_s, AlgebraCyclic};

/// Default coordinate ceiling for a single level.
pub const DEFAULT_CEILING: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error("level {level} has dimension {dim}, above the ceiling {ceiling}")]
    DimensionCeiling {
        level: usize,
        dim: String,
        ceiling: usize,
    },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

pub trait CyclicModule {
    fn level_dim(&self, k: usize) -> usize;
    /// `d_r : L_k -> L_{k-1}`.
    fn face(&self, k: usize, r: usize) -> SparseMatrix;
    /// Unsigned rotation on `L_k`.
    fn rotation(&self, k: usize) -> SparseMatrix;
    /// Refuses levels that are too large to build.
    fn check_level(&self, _k: usize) -> Result<(), CyclicError> {
        Ok(())
    }
}

fn alternating_faces<M: CyclicModule + ?Sized>(m: &M, k: usize, last: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::zeros(m.level_dim(k - 1), m.level_dim(k));
    for r in 0..=last {
        acc = acc
            .add_scaled(&Scalar::sign(r), &m.face(k, r))
            .expect("faces share a shape");
    }
    acc
}

/// `b = Σ_{r=0}^{k} (-1)^r d_r`.
pub fn b_operator<M: CyclicModule + ?Sized>(m: &M, k: usize) -> SparseMatrix {
    assert!(k >= 1, "b is defined from level 1");
    alternating_faces(m, k, k)
}

/// `b' = Σ_{r=0}^{k-1} (-1)^r d_r`.
pub fn bprime_operator<M: CyclicModule + ?Sized>(m: &M, k: usize) -> SparseMatrix {
    assert!(k >= 1, "b' is defined from level 1");
    alternating_faces(m, k, k - 1)
}

/// `λ = (-1)^k t`.
pub fn lambda_operator<M: CyclicModule + ?Sized>(m: &M, k: usize) -> SparseMatrix {
    m.rotation(k).scale(&Scalar::sign(k))
}

/// `N = 1 + λ + ... + λ^k`.
pub fn norm_operator<M: CyclicModule + ?Sized>(m: &M, k: usize) -> SparseMatrix {
    let lambda = lambda_operator(m, k);
    let mut power = SparseMatrix::identity(m.level_dim(k));
    let mut acc = power.clone();
    for _ in 0..k {
        power = compose(&lambda, &power);
        acc = acc.add(&power).expect("square");
    }
    acc
}

/// `1 - λ`.
pub fn one_minus_lambda<M: CyclicModule + ?Sized>(m: &M, k: usize) -> SparseMatrix {
    SparseMatrix::identity(m.level_dim(k))
        .sub(&lambda_operator(m, k))
        .expect("square")
}

/// The `height x width` window of the periodic bicomplex: level `i` in
/// every column, `b` in even columns, `b'` in odd columns (the total
/// complex applies the column sign), `1 - λ` leaving odd columns and `N`
/// leaving even ones.
pub fn cyclic_bicomplex<M: CyclicModule + ?Sized>(
    m: &M,
    height: usize,
    width: usize,
) -> Result<Bicomplex, CyclicError> {
    if height < 1 || width < 2 || !width.is_multiple_of(2) {
        return Err(CyclicError::InvalidWindow(format!(
            "height {height}, width {width} (need height >= 1 and an even width >= 2)"
        )));
    }
    for k in 0..height {
        m.check_level(k)?;
    }
    let dims: Vec<Vec<usize>> = (0..height).map(|k| vec![m.level_dim(k); width]).collect();
    let mut vertical = BTreeMap::new();
    let mut horizontal = BTreeMap::new();
    for k in 0..height {
        let (b, bp) = if k >= 1 {
            (Some(b_operator(m, k)), Some(bprime_operator(m, k)))
        } else {
            (None, None)
        };
        let oml = one_minus_lambda(m, k);
        let norm = norm_operator(m, k);
        for j in 0..width {
            if let (Some(b), Some(bp)) = (&b, &bp) {
                vertical.insert((k, j), if j % 2 == 0 { b.clone() } else { bp.clone() });
            }
            if j >= 1 {
                horizontal.insert(
                    (k, j),
                    if j % 2 == 1 {
                        oml.clone()
                    } else {
                        norm.clone()
                    },
                );
            }
        }
    }
    Ok(Bicomplex::new(dims, vertical, horizontal)?.into_column_periodic()?)
}

/// Even/odd periodic ranks at a window, with the stabilization flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodicRanks {
    pub even: usize,
    pub odd: usize,
    /// Ranks at window `height` and `height - 2` agree.
    pub stabilized: bool,
    pub height: usize,
    pub width: usize,
    pub previous: Z2Ranks,
}

impl PeriodicRanks {
    pub fn ranks(&self) -> Z2Ranks {
        Z2Ranks::new(self.even, self.odd)
    }
}

fn even_width(h: usize) -> usize {
    (h + h % 2).max(2)
}

/// Periodic ranks of a cyclic module at window `height` (at least 3).
pub fn periodic_ranks<M: CyclicModule + ?Sized>(
    m: &M,
    height: usize,
) -> Result<PeriodicRanks, CyclicError> {
    if height < 3 {
        return Err(CyclicError::InvalidWindow(format!(
            "cutoff {height} is below the minimum 3"
        )));
    }
    let width = even_width(height);
    let current = z2_cohomology(&cyclic_bicomplex(m, height, width)?)?;
    let previous = z2_cohomology(&cyclic_bicomplex(m, height - 2, even_width(height - 2))?)?;
    Ok(PeriodicRanks {
        even: current.even,
        odd: current.odd,
        stabilized: current == previous,
        height,
        width,
        previous,
    })
}

/// `b` on `A^{⊗(k+1)} -> A^{⊗k}`.
pub fn hochschild_b(a: &Algebra, k: usize) -> SparseMatrix {
    b_operator(&AlgebraCyclic::unbounded(a), k)
}

/// `b'` on `A^{⊗(k+1)} -> A^{⊗k}`.
pub fn hochschild_bprime(a: &Algebra, k: usize) -> SparseMatrix {
    bprime_operator(&AlgebraCyclic::unbounded(a), k)
}

/// Signed rotation `λ` on `A^{⊗(k+1)}`.
pub fn cyclic_lambda(a: &Algebra, k: usize) -> SparseMatrix {
    lambda_operator(&AlgebraCyclic::unbounded(a), k)
}

/// `N = Σ λ^i` on `A^{⊗(k+1)}`.
pub fn norm_n(a: &Algebra, k: usize) -> SparseMatrix {
    norm_operator(&AlgebraCyclic::unbounded(a), k)
}

/// The periodic bicomplex of an algebra in a `height x width` window.
pub fn hp_bicomplex(
    a: &Algebra,
    height: usize,
    width: usize,
    ceiling: usize,
) -> Result<Bicomplex, CyclicError> {
    cyclic_bicomplex(&AlgebraCyclic::new(a, ceiling), height, width)
}

/// Periodic ranks of an algebra at cutoff `height`.
pub fn hp_ranks(a: &Algebra, height: usize, ceiling: usize) -> Result<PeriodicRanks, CyclicError> {
    periodic_ranks(&AlgebraCyclic::new(a, ceiling), height)
}

/// The `b` column on levels `0..=top`, level `k` stored in degree `-k`.
pub fn hochschild_complex(
    a: &Algebra,
    top: usize,
    ceiling: usize,
) -> Result<CochainComplex, CyclicError> {
    let m = AlgebraCyclic::new(a, ceiling);
    for k in 0..=top {
        m.check_level(k)?;
    }
    let dims = (0..=top).rev().map(|k| m.level_dim(k)).collect();
    let diffs = (1..=top).rev().map(|k| b_operator(&m, k)).collect();
    Ok(CochainComplex::new(-(top as i64), dims, diffs)?)
}

/// `rank HH_k` for `k = 0..=cutoff`.
pub fn hochschild_homology_ranks(
    a: &Algebra,
    cutoff: usize,
    ceiling: usize,
) -> Result<BTreeMap<usize, usize>, CyclicError> {
    let c = hochschild_complex(a, cutoff + 1, ceiling)?;
    let ranks = c.cohomology_ranks();
    Ok((0..=cutoff).map(|k| (k, ranks[&-(k as i64)])).collect())
}

/// One operator identity checked at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub level: usize,
    pub holds: bool,
}

/// The cyclic-module identities at levels `0..=max_level`: `b² = 0`,
/// `b'² = 0`, `λ^{k+1} = 1`, `(1-λ)N = N(1-λ) = 0`, `b's + sb' = 1`, and
/// row exactness `rank N + rank(1-λ) = dim`.
pub fn operator_identities(
    a: &Algebra,
    max_level: usize,
    ceiling: usize,
) -> Result<Vec<IdentityCheck>, CyclicError> {
    let m = AlgebraCyclic::new(a, ceiling);
    for k in 0..=max_level + 1 {
        m.check_level(k)?;
    }
    let mut out = Vec::new();
    let mut push = |name, level, holds| out.push(IdentityCheck { name, level, holds });
    for k in 0..=max_level {
        let dim = m.level_dim(k);
        let id = SparseMatrix::identity(dim);
        if k >= 2 {
            push(
                "b∘b = 0",
                k,
                compose(&b_operator(&m, k - 1), &b_operator(&m, k)).is_zero(),
            );
            push(
                "b'∘b' = 0",
                k,
                compose(&bprime_operator(&m, k - 1), &bprime_operator(&m, k)).is_zero(),
            );
        }
        let lambda = lambda_operator(&m, k);
        let mut power = id.clone();
        for _ in 0..=k {
            power = compose(&lambda, &power);
        }
        push("λ^(k+1) = 1", k, power == id);
        let oml = one_minus_lambda(&m, k);
        let norm = norm_operator(&m, k);
        push("(1-λ)∘N = 0", k, compose(&oml, &norm).is_zero());
        push("N∘(1-λ) = 0", k, compose(&norm, &oml).is_zero());
        push(
            "rank N + rank(1-λ) = dim",
            k,
            rank(&norm) + rank(&oml) == dim,
        );
        // b' s + s b' on level k, with b' from level 0 read as zero
        let s_up = extra_degeneracy_s(a, k);
        let mut contraction = compose(&bprime_operator(&m, k + 1), &s_up);
        if k >= 1 {
            let down = compose(&extra_degeneracy_s(a, k - 1), &bprime_operator(&m, k));
            contraction = contraction.add(&down).expect("square");
        }
        push("b'∘s + s∘b' = 1", k, contraction == id);
    }
    Ok(out)
}

/// `(rank N, rank(1-λ), dim)` at level `k`.
pub fn row_exactness(a: &Algebra, k: usize) -> (usize, usize, usize) {
    let m = AlgebraCyclic::unbounded(a);
    (
        rank(&norm_operator(&m, k)),
        rank(&one_minus_lambda(&m, k)),
        m.level_dim(k),
    )
}

#[cfg(test)]
mod tests;
