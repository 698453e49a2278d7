//! Cochain complexes, chain maps, chain homotopies and bicomplexes.
//!
//! Everything is cochain graded: `d_q` maps degree `q` to degree `q + 1`.
//! Chain-graded objects (Hochschild complexes, totalizations) are stored with
//! negated degrees, so `C_n` lives in degree `-n`.

mod bicomplex;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::exact::{
    cokernel_projection, compose, rank, rank_on_kernel, BlockBuilder, Scalar, SparseMatrix,
};

pub use bicomplex::{z2_cohomology, z2_totalize, Bicomplex, Cell, Z2Complex, Z2Ranks};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("d∘d is nonzero starting in degree {degree}")]
    NonzeroComposite { degree: i64 },
    #[error("invalid bicomplex: {0}")]
    InvalidBicomplex(String),
    #[error("total differential does not square to zero ({0})")]
    TotalNotDifferential(String),
}

/// A bounded cochain complex of finite-dimensional Q(i)-spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    first: i64,
    dims: Vec<usize>,
    /// `diffs[k]` maps degree `first + k` to `first + k + 1`.
    diffs: Vec<SparseMatrix>,
}

impl CochainComplex {
    /// Validates shapes and `d∘d = 0`. `diffs` must have one fewer entry
    /// than `dims` (or be empty when `dims` is).
    pub fn new(
        first: i64,
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        if dims.len() != diffs.len() + 1 && !(dims.is_empty() && diffs.is_empty()) {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "d_{} has shape {:?}, expected {:?}",
                    first + k as i64,
                    d.shape(),
                    (dims[k + 1], dims[k])
                )));
            }
        }
        for k in 1..diffs.len() {
            if !compose(&diffs[k], &diffs[k - 1]).is_zero() {
                return Err(ComplexError::NonzeroComposite {
                    degree: first + k as i64 - 1,
                });
            }
        }
        Ok(CochainComplex { first, dims, diffs })
    }

    /// Complex starting in degree zero.
    pub fn from_degree_zero(
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        Self::new(0, dims, diffs)
    }

    pub fn first_degree(&self) -> i64 {
        self.first
    }

    pub fn last_degree(&self) -> i64 {
        self.first + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.first..=self.last_degree()
    }

    fn slot(&self, q: i64) -> Option<usize> {
        if q < self.first {
            return None;
        }
        let k = (q - self.first) as usize;
        (k < self.dims.len()).then_some(k)
    }

    pub fn dim(&self, q: i64) -> usize {
        self.slot(q).map_or(0, |k| self.dims[k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `d_q : C^q -> C^{q+1}`, as a zero matrix at the ends.
    pub fn diff(&self, q: i64) -> SparseMatrix {
        match self.slot(q) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => SparseMatrix::zeros(self.dim(q + 1), self.dim(q)),
        }
    }

    fn diff_rank(&self, q: i64) -> usize {
        match self.slot(q) {
            Some(k) if k < self.diffs.len() => rank(&self.diffs[k]),
            _ => 0,
        }
    }

    /// `dim H^q = dim ker d_q - rank d_{q-1}` for every degree.
    pub fn cohomology_ranks(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> = self.degrees().map(|q| (q, self.diff_rank(q))).collect();
        self.degrees()
            .map(|q| {
                let below = ranks.get(&(q - 1)).copied().unwrap_or(0);
                (q, self.dim(q) - ranks[&q] - below)
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &CochainComplex) -> Result<CochainComplex, ComplexError> {
        if self.degrees() != other.degrees() {
            return Err(ComplexError::ShapeMismatch(
                "direct sum needs equal degree ranges".into(),
            ));
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let diffs = self
            .diffs
            .iter()
            .zip(&other.diffs)
            .enumerate()
            .map(|(k, (a, b))| {
                let mut bb = BlockBuilder::new(dims[k + 1], dims[k]);
                bb.place(0, 0, a, &Scalar::one());
                bb.place(a.rows(), a.cols(), b, &Scalar::one());
                bb.build()
            })
            .collect();
        CochainComplex::new(self.first, dims, diffs)
    }
}

/// `make_complex` for callers that think in dims/diffs lists.
pub fn make_complex(
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
) -> Result<CochainComplex, ComplexError> {
    CochainComplex::from_degree_zero(dims, diffs)
}

pub fn cohomology_ranks(c: &CochainComplex) -> BTreeMap<i64, usize> {
    c.cohomology_ranks()
}

/// A degreewise linear map between two complexes on the same degree range.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: CochainComplex,
    pub target: CochainComplex,
    components: BTreeMap<i64, SparseMatrix>,
}

/// Result of a degreewise identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub holds: bool,
    pub first_failure: Option<i64>,
}

impl DegreeCheck {
    fn from_failure(first_failure: Option<i64>) -> Self {
        DegreeCheck {
            holds: first_failure.is_none(),
            first_failure,
        }
    }
}

impl ChainMap {
    /// Shapes are checked here; commutation is checked by [`verify_chain_map`].
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        components: BTreeMap<i64, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        if source.degrees() != target.degrees() {
            return Err(ComplexError::ShapeMismatch(format!(
                "source degrees {:?} vs target degrees {:?}",
                source.degrees(),
                target.degrees()
            )));
        }
        for (q, m) in &components {
            if !source.degrees().contains(q) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "component in degree {q} outside the complex"
                )));
            }
            if m.shape() != (target.dim(*q), source.dim(*q)) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "F_{q} has shape {:?}, expected {:?}",
                    m.shape(),
                    (target.dim(*q), source.dim(*q))
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let components = c
            .degrees()
            .map(|q| (q, SparseMatrix::identity(c.dim(q))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Result<Self, ComplexError> {
        Self::new(source.clone(), target.clone(), BTreeMap::new())
    }

    /// `F_q`, zero when not stored.
    pub fn component(&self, q: i64) -> SparseMatrix {
        self.components
            .get(&q)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.target.dim(q), self.source.dim(q)))
    }

    /// `self - other`, for maps with identical source and target.
    pub fn difference(&self, other: &ChainMap) -> Result<ChainMap, ComplexError> {
        if self.source != other.source || self.target != other.target {
            return Err(ComplexError::ShapeMismatch(
                "maps have different source or target".into(),
            ));
        }
        let components = self
            .source
            .degrees()
            .map(|q| {
                (
                    q,
                    self.component(q)
                        .sub(&other.component(q))
                        .expect("equal shapes"),
                )
            })
            .collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Rank of the map induced on `H^q`.
    pub fn induced_rank(&self, q: i64) -> usize {
        let cycles_of = self.source.diff(q);
        let to_cohomology = cokernel_projection(&self.target.diff(q - 1));
        let f = compose(&to_cohomology, &self.component(q));
        rank_on_kernel(&cycles_of, &f)
    }
}

/// True iff `d_target ∘ F_q = F_{q+1} ∘ d_source` in every degree.
pub fn verify_chain_map(f: &ChainMap) -> DegreeCheck {
    let failure = f.source.degrees().find(|&q| {
        let left = compose(&f.target.diff(q), &f.component(q));
        let right = compose(&f.component(q + 1), &f.source.diff(q));
        left != right
    });
    DegreeCheck::from_failure(failure)
}

/// Maps `s_n : source^n -> target^{n-1}`.
#[derive(Clone, Debug, Default)]
pub struct ChainHomotopy {
    maps: BTreeMap<i64, SparseMatrix>,
}

impl ChainHomotopy {
    pub fn new(maps: BTreeMap<i64, SparseMatrix>) -> Self {
        ChainHomotopy { maps }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    fn map(&self, n: i64, source: &CochainComplex, target: &CochainComplex) -> SparseMatrix {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(target.dim(n - 1), source.dim(n)))
    }

    /// `s_{n+1} d_n + d_{n-1} s_n`, the map a homotopy contributes in degree `n`.
    pub fn boundary_term(
        &self,
        n: i64,
        source: &CochainComplex,
        target: &CochainComplex,
    ) -> SparseMatrix {
        let a = compose(&self.map(n + 1, source, target), &source.diff(n));
        let b = compose(&target.diff(n - 1), &self.map(n, source, target));
        a.add(&b).expect("equal shapes")
    }
}

/// Outcome of [`verify_chain_homotopy`], including the index convention used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub holds: bool,
    pub first_failure: Option<i64>,
    pub convention: &'static str,
}

pub const HOMOTOPY_CONVENTION: &str = "F_n - G_n = s_{n+1} d_n + d_{n-1} s_n (cochain grading)";

/// Checks `F_n - G_n = s_{n+1}∘d_n + d_{n-1}∘s_n` in every degree.
pub fn verify_chain_homotopy(
    f: &ChainMap,
    g: &ChainMap,
    s: &ChainHomotopy,
) -> Result<HomotopyCheck, ComplexError> {
    if f.source != g.source || f.target != g.target {
        return Err(ComplexError::ShapeMismatch(
            "F and G must share source and target".into(),
        ));
    }
    for (n, m) in &s.maps {
        if m.shape() != (f.target.dim(n - 1), f.source.dim(*n)) {
            return Err(ComplexError::ShapeMismatch(format!(
                "s_{n} has shape {:?}, expected {:?}",
                m.shape(),
                (f.target.dim(n - 1), f.source.dim(*n))
            )));
        }
    }
    let diff = f.difference(g)?;
    let failure = f
        .source
        .degrees()
        .find(|&n| diff.component(n) != s.boundary_term(n, &f.source, &f.target));
    Ok(HomotopyCheck {
        holds: failure.is_none(),
        first_failure: failure,
        convention: HOMOTOPY_CONVENTION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_int_rows(rows)
    }

    #[test]
    fn make_complex_examples() {
        let empty = make_complex(
            vec![0, 0, 0],
            vec![SparseMatrix::zeros(0, 0), SparseMatrix::zeros(0, 0)],
        )
        .unwrap();
        assert!(empty.cohomology_ranks().values().all(|&r| r == 0));
        assert!(make_complex(vec![1, 1], vec![m(&[&[0]])]).is_ok());
        let err = make_complex(vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])]).unwrap_err();
        assert_eq!(err, ComplexError::NonzeroComposite { degree: 0 });
    }

    #[test]
    fn shape_mismatch_rejected() {
        assert!(matches!(
            make_complex(vec![1, 2], vec![m(&[&[1]])]),
            Err(ComplexError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn cohomology_examples() {
        let exact = make_complex(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        assert_eq!(
            exact.cohomology_ranks().into_values().collect::<Vec<_>>(),
            vec![0, 0]
        );
        let split = make_complex(vec![1, 1], vec![m(&[&[0]])]).unwrap();
        assert_eq!(
            split.cohomology_ranks().into_values().collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn chain_map_checks() {
        let c = make_complex(vec![1, 1], vec![m(&[&[2]])]).unwrap();
        assert!(verify_chain_map(&ChainMap::identity(&c)).holds);
        assert!(verify_chain_map(&ChainMap::zero(&c, &c).unwrap()).holds);
        let perturbed = ChainMap::new(
            c.clone(),
            c.clone(),
            BTreeMap::from([(0, m(&[&[1]])), (1, m(&[&[3]]))]),
        )
        .unwrap();
        let check = verify_chain_map(&perturbed);
        assert!(!check.holds);
        assert_eq!(check.first_failure, Some(0));
    }

    #[test]
    fn homotopy_fixtures() {
        let exact = make_complex(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        let id = ChainMap::identity(&exact);
        let zero = ChainMap::zero(&exact, &exact).unwrap();
        assert!(
            verify_chain_homotopy(&id, &id, &ChainHomotopy::zero())
                .unwrap()
                .holds
        );
        // s_1 = [1] contracts the exact complex: id = s d + d s
        let s = ChainHomotopy::new(BTreeMap::from([(1, m(&[&[1]]))]));
        let check = verify_chain_homotopy(&id, &zero, &s).unwrap();
        assert!(check.holds, "{check:?}");
        assert_eq!(check.convention, HOMOTOPY_CONVENTION);

        let split = make_complex(vec![1, 1], vec![m(&[&[0]])]).unwrap();
        let id = ChainMap::identity(&split);
        let zero = ChainMap::zero(&split, &split).unwrap();
        for k in -3..=3 {
            let s = ChainHomotopy::new(BTreeMap::from([(1, m(&[&[k]]))]));
            assert!(!verify_chain_homotopy(&id, &zero, &s).unwrap().holds);
        }
    }

    #[test]
    fn induced_ranks() {
        let split = make_complex(vec![1, 1], vec![m(&[&[0]])]).unwrap();
        let id = ChainMap::identity(&split);
        assert_eq!(id.induced_rank(0), 1);
        assert_eq!(id.induced_rank(1), 1);
        let exact = make_complex(vec![1, 1], vec![m(&[&[1]])]).unwrap();
        assert_eq!(ChainMap::identity(&exact).induced_rank(1), 0);
    }

    #[test]
    fn direct_sum_adds_ranks() {
        let a = make_complex(vec![1, 1], vec![m(&[&[0]])]).unwrap();
        let b = make_complex(vec![1, 1], vec![m(&[&[5]])]).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(
            s.cohomology_ranks().into_values().collect::<Vec<_>>(),
            vec![1, 1]
        );
    }
}
