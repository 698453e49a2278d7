//! Čech cochains of a presheaf on a cover, the cyclic structure on the
//! levels, Z/2-graded Čech cohomology, refinement maps, and the Morita and
//! commutative comparisons.
//!
//! Level `k` is the product of `M(U_{i_0} ∩ ... ∩ U_{i_k})` over every
//! `(k+1)`-tuple of member indices in lexicographic order. Empty
//! intersections contribute zero-dimensional blocks.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{functions_on_points, matrix_algebra, tensor_product, Algebra};
use crate::complexes::{ChainMap, CochainComplex, ComplexError, Z2Ranks};
use crate::cyclic::{hp_ranks, periodic_ranks, CyclicError, CyclicModule, PeriodicRanks};
use crate::exact::{BlockBuilder, Scalar, SparseMatrix};
use crate::site::spaces::points_cover;
use crate::site::{nerve_level, validate_presheaf_on, Cover, OpenSet, Presheaf, SiteError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CechError {
    #[error("the presheaf lives on a different space than the cover")]
    SpaceMismatch,
    #[error("presheaf is not functorial: {0}")]
    InvalidPresheaf(String),
    #[error("fine member {fine} is not inside coarse member {coarse}")]
    NotRefinement { fine: usize, coarse: usize },
    #[error("assignment has {got} entries for {expected} fine members")]
    AssignmentLength { expected: usize, got: usize },
    #[error("cutoff must be at least {min}, got {got}")]
    Cutoff { min: usize, got: usize },
    #[error(transparent)]
    Site(#[from] SiteError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
}

/// Block layout of one Čech level.
struct Level {
    tuples: Vec<Vec<usize>>,
    intersections: Vec<OpenSet>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    position: BTreeMap<Vec<usize>, usize>,
    dim: usize,
}

impl Level {
    fn new(cover: &Cover, presheaf: &Presheaf, k: usize) -> Self {
        let simplices = nerve_level(cover, k);
        let mut offsets = Vec::with_capacity(simplices.len());
        let mut dims = Vec::with_capacity(simplices.len());
        let mut dim = 0;
        for s in &simplices {
            let d = presheaf.value(s.intersection);
            offsets.push(dim);
            dims.push(d);
            dim += d;
        }
        let tuples: Vec<Vec<usize>> = simplices.iter().map(|s| s.tuple.clone()).collect();
        let position = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Level {
            intersections: simplices.iter().map(|s| s.intersection).collect(),
            tuples,
            offsets,
            dims,
            position,
            dim,
        }
    }

    fn index(&self, tuple: &[usize]) -> usize {
        self.position[tuple]
    }
}

fn delete(t: &[usize], r: usize) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, x)| *x)
        .collect()
}

fn rotate(t: &[usize]) -> Vec<usize> {
    let k = t.len() - 1;
    std::iter::once(t[k])
        .chain(t[..k].iter().copied())
        .collect()
}

/// `δ_r : level k-1 -> level k`, `(δ_r c)(t) = res c(t with entry r deleted)`.
fn coface(presheaf: &Presheaf, lower: &Level, upper: &Level, r: usize) -> SparseMatrix {
    let mut bb = BlockBuilder::new(upper.dim, lower.dim);
    for (i, t) in upper.tuples.iter().enumerate() {
        if upper.dims[i] == 0 {
            continue;
        }
        let j = lower.index(&delete(t, r));
        let res = presheaf.restriction(upper.intersections[i], lower.intersections[j]);
        bb.place(upper.offsets[i], lower.offsets[j], &res, &Scalar::one());
    }
    bb.build()
}

fn check_inputs(cover: &Cover, presheaf: &Presheaf) -> Result<(), CechError> {
    if **cover.space() != **presheaf.space() {
        return Err(CechError::SpaceMismatch);
    }
    if cover.len() > 16 {
        return Err(SiteError::TooLarge(format!("cover with {} members", cover.len())).into());
    }
    // every intersection of members, plus the target
    let mut opens = BTreeSet::from([cover.target()]);
    for mask in 1u32..(1 << cover.len()) {
        let members: Vec<usize> = (0..cover.len()).filter(|i| mask >> i & 1 == 1).collect();
        opens.insert(cover.intersection(&members));
    }
    let opens: Vec<OpenSet> = opens.into_iter().collect();
    let check = validate_presheaf_on(presheaf, &opens);
    match check.witness {
        Some(w) if !check.holds => Err(CechError::InvalidPresheaf(w)),
        _ => Ok(()),
    }
}

fn levels(cover: &Cover, presheaf: &Presheaf, top: usize) -> Vec<Level> {
    (0..=top).map(|k| Level::new(cover, presheaf, k)).collect()
}

fn build_complex(presheaf: &Presheaf, levels: &[Level]) -> Result<CochainComplex, ComplexError> {
    let dims = levels.iter().map(|l| l.dim).collect();
    let diffs = levels
        .windows(2)
        .map(|w| {
            let mut acc = SparseMatrix::zeros(w[1].dim, w[0].dim);
            for r in 0..w[1].tuples[0].len() {
                acc = acc
                    .add_scaled(&Scalar::sign(r), &coface(presheaf, &w[0], &w[1], r))
                    .expect("cofaces share a shape");
            }
            acc
        })
        .collect();
    CochainComplex::new(0, dims, diffs)
}

/// Levels `0..=cutoff` with the alternating coface differential.
pub fn cech_complex(
    cover: &Cover,
    presheaf: &Presheaf,
    cutoff: usize,
) -> Result<CochainComplex, CechError> {
    check_inputs(cover, presheaf)?;
    Ok(build_complex(presheaf, &levels(cover, presheaf, cutoff))?)
}

/// `rank H^q` for `q < cutoff` (the top level only bounds the last rank).
pub fn cech_cohomology_ranks(
    cover: &Cover,
    presheaf: &Presheaf,
    cutoff: usize,
) -> Result<BTreeMap<usize, usize>, CechError> {
    if cutoff < 1 {
        return Err(CechError::Cutoff {
            min: 1,
            got: cutoff,
        });
    }
    let ranks = cech_complex(cover, presheaf, cutoff)?.cohomology_ranks();
    Ok((0..cutoff).map(|q| (q, ranks[&(q as i64)])).collect())
}

/// `(λc)(i_0, ..., i_k) = (-1)^k c(i_k, i_0, ..., i_{k-1})` on level `k`.
pub fn cyclic_action_on_level(
    cover: &Cover,
    presheaf: &Presheaf,
    k: usize,
) -> Result<SparseMatrix, CechError> {
    check_inputs(cover, presheaf)?;
    let level = Level::new(cover, presheaf, k);
    let mut bb = BlockBuilder::new(level.dim, level.dim);
    let sign = Scalar::sign(k);
    for (i, t) in level.tuples.iter().enumerate() {
        let j = level.index(&rotate(t));
        bb.place(
            level.offsets[i],
            level.offsets[j],
            &SparseMatrix::identity(level.dims[i]),
            &sign,
        );
    }
    Ok(bb.build())
}

/// The dual of the Čech levels as a cyclic module: faces are transposed
/// cofaces and `t` moves the block of `(i_0, ..., i_k)` to the block of
/// `(i_k, i_0, ..., i_{k-1})`.
pub struct CechCyclic<'a> {
    presheaf: &'a Presheaf,
    levels: Vec<Level>,
}

impl<'a> CechCyclic<'a> {
    /// Levels `0..=top`; the cover and presheaf must already be checked.
    fn new(cover: &Cover, presheaf: &'a Presheaf, top: usize) -> Self {
        CechCyclic {
            presheaf,
            levels: levels(cover, presheaf, top),
        }
    }
}

impl CyclicModule for CechCyclic<'_> {
    fn level_dim(&self, k: usize) -> usize {
        self.levels[k].dim
    }

    fn face(&self, k: usize, r: usize) -> SparseMatrix {
        coface(self.presheaf, &self.levels[k - 1], &self.levels[k], r).transpose()
    }

    fn rotation(&self, k: usize) -> SparseMatrix {
        let level = &self.levels[k];
        let mut bb = BlockBuilder::new(level.dim, level.dim);
        for (i, t) in level.tuples.iter().enumerate() {
            let j = level.index(&rotate(t));
            bb.place(
                level.offsets[j],
                level.offsets[i],
                &SparseMatrix::identity(level.dims[i]),
                &Scalar::one(),
            );
        }
        bb.build()
    }

    fn check_level(&self, k: usize) -> Result<(), CyclicError> {
        if k < self.levels.len() {
            Ok(())
        } else {
            Err(CyclicError::InvalidWindow(format!(
                "level {k} was not built"
            )))
        }
    }
}

/// Z/2-graded Čech cohomology of a presheaf on a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2CechReport {
    pub periodic: PeriodicRanks,
    /// `(Σ H^even, Σ H^odd)` of the ordinary Čech complex, `q < cutoff`.
    pub folded: Z2Ranks,
    pub classical: BTreeMap<usize, usize>,
}

/// Periodic ranks of the Čech bicomplex at window `cutoff` plus the folded
/// ordinary Čech ranks. `ceiling` bounds the level dimension.
pub fn z2_cech(
    cover: &Cover,
    presheaf: &Presheaf,
    cutoff: usize,
    ceiling: usize,
) -> Result<Z2CechReport, CechError> {
    if cutoff < 3 {
        return Err(CechError::Cutoff {
            min: 3,
            got: cutoff,
        });
    }
    check_inputs(cover, presheaf)?;
    for k in 0..cutoff {
        let tuples = (cover.len() as u128).checked_pow(k as u32 + 1);
        if tuples.is_none_or(|t| t > ceiling as u128) {
            return Err(CyclicError::DimensionCeiling {
                level: k,
                dim: tuples.map_or_else(|| format!("{}^{}", cover.len(), k + 1), |t| t.to_string()),
                ceiling,
            }
            .into());
        }
    }
    let module = CechCyclic::new(cover, presheaf, cutoff);
    let periodic = periodic_ranks(&module, cutoff)?;
    let classical = cech_cohomology_ranks(cover, presheaf, cutoff)?;
    let fold = |parity: usize| {
        classical
            .iter()
            .filter(|(q, _)| *q % 2 == parity)
            .map(|(_, r)| r)
            .sum()
    };
    Ok(Z2CechReport {
        periodic,
        folded: Z2Ranks::new(fold(0), fold(1)),
        classical,
    })
}

/// The chain map `C(coarse) -> C(fine)`,
/// `(ρc)(b_0..b_k) = res c(φ(b_0)..φ(b_k))`, on levels `0..=cutoff`.
pub fn refinement_map(
    coarse: &Cover,
    fine: &Cover,
    assignment: &[usize],
    presheaf: &Presheaf,
    cutoff: usize,
) -> Result<ChainMap, CechError> {
    if assignment.len() != fine.len() {
        return Err(CechError::AssignmentLength {
            expected: fine.len(),
            got: assignment.len(),
        });
    }
    if **coarse.space() != **fine.space() {
        return Err(CechError::SpaceMismatch);
    }
    for (b, &a) in assignment.iter().enumerate() {
        if a >= coarse.len() || !fine.members()[b].is_subset(coarse.members()[a]) {
            return Err(CechError::NotRefinement { fine: b, coarse: a });
        }
    }
    check_inputs(coarse, presheaf)?;
    check_inputs(fine, presheaf)?;
    let coarse_levels = levels(coarse, presheaf, cutoff);
    let fine_levels = levels(fine, presheaf, cutoff);
    let mut components = BTreeMap::new();
    for (k, (cl, fl)) in coarse_levels.iter().zip(&fine_levels).enumerate() {
        let mut bb = BlockBuilder::new(fl.dim, cl.dim);
        for (i, t) in fl.tuples.iter().enumerate() {
            if fl.dims[i] == 0 {
                continue;
            }
            let image: Vec<usize> = t.iter().map(|&b| assignment[b]).collect();
            let j = cl.index(&image);
            let res = presheaf.restriction(fl.intersections[i], cl.intersections[j]);
            bb.place(fl.offsets[i], cl.offsets[j], &res, &Scalar::one());
        }
        components.insert(k as i64, bb.build());
    }
    let source = build_complex(presheaf, &coarse_levels)?;
    let target = build_complex(presheaf, &fine_levels)?;
    Ok(ChainMap::new(source, target, components)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaReport {
    pub ranks_a: PeriodicRanks,
    pub ranks_amn: PeriodicRanks,
    pub equal: bool,
}

/// Periodic ranks of `A` and `A ⊗ Mat_n` at the same cutoff.
pub fn morita_check(
    a: &Algebra,
    n: usize,
    cutoff: usize,
    ceiling: usize,
) -> Result<MoritaReport, CechError> {
    let amn = tensor_product(a, &matrix_algebra(n));
    let ranks_a = hp_ranks(a, cutoff, ceiling)?;
    let ranks_amn = hp_ranks(&amn, cutoff, ceiling)?;
    Ok(MoritaReport {
        equal: ranks_a.ranks() == ranks_amn.ranks(),
        ranks_a,
        ranks_amn,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrReport {
    pub hp: PeriodicRanks,
    pub cech: PeriodicRanks,
    pub matched: bool,
}

/// Periodic ranks of `C^n` against Z/2 Čech cohomology of the discrete
/// `n`-point space with its point cover and the constant rank-one presheaf.
pub fn hkr_compare(n_points: usize, cutoff: usize, ceiling: usize) -> Result<HkrReport, CechError> {
    if n_points == 0 {
        return Err(SiteError::PointCount(0).into());
    }
    let hp = hp_ranks(&functions_on_points(n_points), cutoff, ceiling)?;
    let cover = points_cover(n_points);
    let presheaf = Presheaf::constant(cover.space().clone(), 1);
    let cech = z2_cech(&cover, &presheaf, cutoff, ceiling)?.periodic;
    Ok(HkrReport {
        matched: hp.ranks() == cech.ranks(),
        hp,
        cech,
    })
}

#[cfg(test)]
mod tests;
