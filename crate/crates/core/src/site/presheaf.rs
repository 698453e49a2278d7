//! Presheaves of finite-dimensional vector spaces on the opens of a finite
//! space. `restriction(v, u)` for `v ⊆ u` is a `dim M(v) x dim M(u)`
//! matrix.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FiniteSpace, OpenSet, SiteError};
use crate::exact::{Scalar, SparseMatrix};

/// `(v, u)` to the matrix `M(u) -> M(v)`.
pub type Restrictions = BTreeMap<(OpenSet, OpenSet), SparseMatrix>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// `M(U) = C^r` for nonempty `U`, `M(∅) = 0`, identity restrictions.
    Constant(usize),
    /// `M(U)` = functions on the points of `U`, restriction by projection.
    Functions,
    Table {
        values: BTreeMap<OpenSet, usize>,
        restrictions: BTreeMap<(OpenSet, OpenSet), SparseMatrix>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    space: Arc<FiniteSpace>,
    kind: Kind,
}

impl Presheaf {
    pub fn constant(space: Arc<FiniteSpace>, rank: usize) -> Self {
        Presheaf {
            space,
            kind: Kind::Constant(rank),
        }
    }

    /// Sections of the algebra of functions on the points: `M(U) = C^{|U|}`.
    pub fn functions(space: Arc<FiniteSpace>) -> Self {
        Presheaf {
            space,
            kind: Kind::Functions,
        }
    }

    /// An explicit presheaf. Every open needs a value; restrictions may be
    /// left out when `v = u` (identity) or when either side is zero.
    /// Shapes are checked here, functoriality by [`validate_presheaf`].
    pub fn from_table(
        space: Arc<FiniteSpace>,
        values: BTreeMap<OpenSet, usize>,
        restrictions: BTreeMap<(OpenSet, OpenSet), SparseMatrix>,
    ) -> Result<Self, SiteError> {
        for o in space.opens() {
            if !values.contains_key(o) {
                return Err(SiteError::Presheaf(format!("no value on {o}")));
            }
        }
        for o in values.keys() {
            space.require_open(*o)?;
        }
        for ((v, u), m) in &restrictions {
            if !v.is_subset(*u) {
                return Err(SiteError::NotContained {
                    inner: *v,
                    outer: *u,
                });
            }
            space.require_open(*v)?;
            space.require_open(*u)?;
            if m.shape() != (values[v], values[u]) {
                return Err(SiteError::Presheaf(format!(
                    "restriction {u} -> {v} has shape {:?}, expected {:?}",
                    m.shape(),
                    (values[v], values[u])
                )));
            }
        }
        for &u in space.opens() {
            for v in space.opens_within(u) {
                let trivial = v == u || values[&v] == 0 || values[&u] == 0;
                if !trivial && !restrictions.contains_key(&(v, u)) {
                    return Err(SiteError::Presheaf(format!(
                        "missing restriction {u} -> {v}"
                    )));
                }
            }
        }
        Ok(Presheaf {
            space,
            kind: Kind::Table {
                values,
                restrictions,
            },
        })
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    /// `dim M(u)`.
    pub fn value(&self, u: OpenSet) -> usize {
        match &self.kind {
            Kind::Constant(r) => {
                if u.is_empty() {
                    0
                } else {
                    *r
                }
            }
            Kind::Functions => u.len(),
            Kind::Table { values, .. } => values.get(&u).copied().unwrap_or(0),
        }
    }

    /// `M(u) -> M(v)` for `v ⊆ u`.
    pub fn restriction(&self, v: OpenSet, u: OpenSet) -> SparseMatrix {
        assert!(v.is_subset(u), "restriction needs {v} ⊆ {u}");
        match &self.kind {
            Kind::Constant(r) => {
                if v.is_empty() {
                    SparseMatrix::zeros(0, self.value(u))
                } else {
                    SparseMatrix::identity(*r)
                }
            }
            Kind::Functions => {
                let cols: Vec<usize> = u.points().collect();
                let triplets = v.points().enumerate().map(|(row, p)| {
                    let col = cols.binary_search(&p).expect("v ⊆ u");
                    (row, col, Scalar::one())
                });
                SparseMatrix::from_triplets(v.len(), u.len(), triplets)
            }
            Kind::Table { restrictions, .. } => match restrictions.get(&(v, u)) {
                Some(m) => m.clone(),
                None if v == u => SparseMatrix::identity(self.value(u)),
                None => SparseMatrix::zeros(self.value(v), self.value(u)),
            },
        }
    }

    /// The stored table (values, restrictions), if this is a table presheaf.
    pub fn table(&self) -> Option<(&BTreeMap<OpenSet, usize>, &Restrictions)> {
        match &self.kind {
            Kind::Table {
                values,
                restrictions,
            } => Some((values, restrictions)),
            _ => None,
        }
    }

    /// `Some(r)` for the constant presheaf of rank `r`.
    pub fn constant_rank(&self) -> Option<usize> {
        match self.kind {
            Kind::Constant(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_functions(&self) -> bool {
        matches!(self.kind, Kind::Functions)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafCheck {
    pub holds: bool,
    pub witness: Option<String>,
}

/// Identity and composition laws over every chain `w ⊆ v ⊆ u` of opens.
pub fn validate_presheaf(p: &Presheaf) -> PresheafCheck {
    let opens = p.space.opens().to_vec();
    validate_presheaf_on(p, &opens)
}

/// The same laws restricted to chains drawn from `opens`.
pub fn validate_presheaf_on(p: &Presheaf, opens: &[OpenSet]) -> PresheafCheck {
    let fail = |w: String| PresheafCheck {
        holds: false,
        witness: Some(w),
    };
    for &u in opens {
        if p.restriction(u, u) != SparseMatrix::identity(p.value(u)) {
            return fail(format!("restriction {u} -> {u} is not the identity"));
        }
    }
    for &u in opens {
        for &v in opens.iter().filter(|v| v.is_subset(u)) {
            let vu = p.restriction(v, u);
            for &w in opens.iter().filter(|w| w.is_subset(v)) {
                let composite = p
                    .restriction(w, v)
                    .mat_mul(&vu)
                    .expect("restriction shapes");
                if composite != p.restriction(w, u) {
                    return fail(format!(
                        "restrictions {u} -> {v} -> {w} and {u} -> {w} differ"
                    ));
                }
            }
        }
    }
    PresheafCheck {
        holds: true,
        witness: None,
    }
}
