//! Finite sites: the poset of opens of a finite space, with covers, sieves,
//! Grothendieck (pre)topologies and presheaves of vector spaces.
//!
//! Fiber products in this category are intersections, and a morphism
//! `S -> R` is an inclusion `S ⊆ R`.

mod axioms;
mod presheaf;
pub mod spaces;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use axioms::{
    check_pretopology_axioms, check_topology_axioms, generated_topology, open_cover_pretopology,
    sieves_on, trivial_topology, AxiomOutcome, AxiomReport, Family, Pretopology, Topology,
};
pub use presheaf::{
    validate_presheaf, validate_presheaf_on, Presheaf, PresheafCheck, Restrictions,
};

/// Spaces have at most this many points.
pub const MAX_POINTS: usize = 64;
/// Cap on enumerated opens, families and sieves.
pub const ENUMERATION_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SiteError {
    #[error("a space has between 1 and {MAX_POINTS} points, got {0}")]
    PointCount(usize),
    #[error("{0} is not an open set of the space")]
    NotOpen(OpenSet),
    #[error("the opens are not a topology: {0}")]
    NotTopology(String),
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: OpenSet, outer: OpenSet },
    #[error("cover members have union {union}, expected {target}")]
    NotCovering { union: OpenSet, target: OpenSet },
    #[error("malformed sieve on {target}: {reason}")]
    MalformedSieve { target: OpenSet, reason: String },
    #[error("invalid presheaf: {0}")]
    Presheaf(String),
    #[error("enumeration exceeds {ENUMERATION_CAP} items ({0})")]
    TooLarge(String),
}

/// A subset of the points, as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpenSet(u64);

impl OpenSet {
    pub const EMPTY: OpenSet = OpenSet(0);

    pub fn from_bits(bits: u64) -> Self {
        OpenSet(bits)
    }

    pub fn from_points(points: &[usize]) -> Self {
        OpenSet(points.iter().fold(0, |acc, &p| {
            assert!(p < MAX_POINTS, "point {p} out of range");
            acc | (1 << p)
        }))
    }

    /// All points `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            OpenSet(u64::MAX)
        } else {
            OpenSet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, p: usize) -> bool {
        p < 64 && self.0 >> p & 1 == 1
    }

    pub fn is_subset(self, other: OpenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 & other.0)
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&p| self.contains(p))
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", pts.join(","))
    }
}

/// Formats a family of opens as `{{0},{0,1}}`.
pub fn format_family<'a>(family: impl IntoIterator<Item = &'a OpenSet>) -> String {
    let parts: Vec<String> = family.into_iter().map(|o| o.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// A finite topological space on the points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    n_points: usize,
    opens: Vec<OpenSet>,
    index: BTreeSet<OpenSet>,
}

impl FiniteSpace {
    /// Validates that `opens` contains `∅` and the whole space and is closed
    /// under union and intersection.
    pub fn new(
        n_points: usize,
        opens: impl IntoIterator<Item = OpenSet>,
    ) -> Result<Self, SiteError> {
        if n_points == 0 || n_points > MAX_POINTS {
            return Err(SiteError::PointCount(n_points));
        }
        let whole = OpenSet::full(n_points);
        let index: BTreeSet<OpenSet> = opens.into_iter().collect();
        if let Some(bad) = index.iter().find(|o| !o.is_subset(whole)) {
            return Err(SiteError::NotContained {
                inner: *bad,
                outer: whole,
            });
        }
        for required in [OpenSet::EMPTY, whole] {
            if !index.contains(&required) {
                return Err(SiteError::NotTopology(format!("{required} is missing")));
            }
        }
        for a in &index {
            for b in &index {
                for c in [a.union(*b), a.intersection(*b)] {
                    if !index.contains(&c) {
                        return Err(SiteError::NotTopology(format!(
                            "{a} and {b} give {c}, which is missing"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_index(n_points, index))
    }

    /// The smallest topology containing `generators`.
    pub fn generated_by(
        n_points: usize,
        generators: impl IntoIterator<Item = OpenSet>,
    ) -> Result<Self, SiteError> {
        if n_points == 0 || n_points > MAX_POINTS {
            return Err(SiteError::PointCount(n_points));
        }
        let whole = OpenSet::full(n_points);
        let generators: Vec<OpenSet> = generators.into_iter().collect();
        if let Some(bad) = generators.iter().find(|o| !o.is_subset(whole)) {
            return Err(SiteError::NotContained {
                inner: *bad,
                outer: whole,
            });
        }
        // opens are exactly the unions of minimal neighbourhoods
        let minimal: BTreeSet<OpenSet> = (0..n_points)
            .map(|p| {
                generators
                    .iter()
                    .filter(|g| g.contains(p))
                    .fold(whole, |acc, g| acc.intersection(*g))
            })
            .collect();
        let mut index = BTreeSet::from([OpenSet::EMPTY]);
        let mut frontier = vec![OpenSet::EMPTY];
        while let Some(o) = frontier.pop() {
            for m in &minimal {
                let u = o.union(*m);
                if index.insert(u) {
                    if index.len() > ENUMERATION_CAP {
                        return Err(SiteError::TooLarge(
                            "opens of the generated topology".into(),
                        ));
                    }
                    frontier.push(u);
                }
            }
        }
        Ok(Self::from_index(n_points, index))
    }

    fn from_index(n_points: usize, index: BTreeSet<OpenSet>) -> Self {
        let mut opens: Vec<OpenSet> = index.iter().copied().collect();
        opens.sort_by_key(|o| (o.len(), *o));
        FiniteSpace {
            n_points,
            opens,
            index,
        }
    }

    /// Every subset is open.
    pub fn discrete(n_points: usize) -> Result<Self, SiteError> {
        Self::generated_by(n_points, (0..n_points).map(|p| OpenSet::from_points(&[p])))
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn whole(&self) -> OpenSet {
        OpenSet::full(self.n_points)
    }

    /// All opens, by size and then bit pattern.
    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn is_open(&self, o: OpenSet) -> bool {
        self.index.contains(&o)
    }

    /// Opens contained in `r`, in the order of [`FiniteSpace::opens`].
    pub fn opens_within(&self, r: OpenSet) -> Vec<OpenSet> {
        self.opens
            .iter()
            .copied()
            .filter(|o| o.is_subset(r))
            .collect()
    }

    pub fn require_open(&self, o: OpenSet) -> Result<(), SiteError> {
        if self.is_open(o) {
            Ok(())
        } else {
            Err(SiteError::NotOpen(o))
        }
    }
}

/// An indexed family of opens covering a target open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    space: Arc<FiniteSpace>,
    target: OpenSet,
    members: Vec<OpenSet>,
}

impl Cover {
    /// A cover of the whole space.
    pub fn new(space: Arc<FiniteSpace>, members: Vec<OpenSet>) -> Result<Self, SiteError> {
        let target = space.whole();
        Self::of(space, target, members)
    }

    /// A cover of the open `target`.
    pub fn of(
        space: Arc<FiniteSpace>,
        target: OpenSet,
        members: Vec<OpenSet>,
    ) -> Result<Self, SiteError> {
        space.require_open(target)?;
        let mut union = OpenSet::EMPTY;
        for &m in &members {
            space.require_open(m)?;
            if !m.is_subset(target) {
                return Err(SiteError::NotContained {
                    inner: m,
                    outer: target,
                });
            }
            union = union.union(m);
        }
        if union != target {
            return Err(SiteError::NotCovering { union, target });
        }
        Ok(Cover {
            space,
            target,
            members,
        })
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn target(&self) -> OpenSet {
        self.target
    }

    pub fn members(&self) -> &[OpenSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `U_{i_0} ∩ ... ∩ U_{i_k}`.
    pub fn intersection(&self, tuple: &[usize]) -> OpenSet {
        tuple
            .iter()
            .fold(self.target, |acc, &i| acc.intersection(self.members[i]))
    }
}

/// One row of the nerve: a tuple of member indices and its intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveSimplex {
    pub tuple: Vec<usize>,
    pub intersection: OpenSet,
}

/// All `(k+1)`-tuples of member indices for `k = 0..=max_dim`, in
/// lexicographic order, each with its (possibly empty) intersection.
/// Repeated indices and every ordering are kept.
pub fn nerve(cover: &Cover, max_dim: usize) -> Vec<Vec<NerveSimplex>> {
    (0..=max_dim).map(|k| nerve_level(cover, k)).collect()
}

pub(crate) fn nerve_level(cover: &Cover, k: usize) -> Vec<NerveSimplex> {
    let n = cover.len();
    let count = n.pow(k as u32 + 1);
    (0..count)
        .map(|mut code| {
            let mut tuple = vec![0; k + 1];
            for slot in tuple.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            let intersection = cover.intersection(&tuple);
            NerveSimplex {
                tuple,
                intersection,
            }
        })
        .collect()
}

/// A sieve on `target`: a downward-closed family of opens inside it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sieve {
    target: OpenSet,
    arrows: BTreeSet<OpenSet>,
}

impl Sieve {
    pub fn new(
        space: &FiniteSpace,
        target: OpenSet,
        arrows: BTreeSet<OpenSet>,
    ) -> Result<Self, SiteError> {
        space.require_open(target)?;
        let malformed = |reason: String| SiteError::MalformedSieve { target, reason };
        for &a in &arrows {
            if !space.is_open(a) {
                return Err(malformed(format!("{a} is not open")));
            }
            if !a.is_subset(target) {
                return Err(malformed(format!("{a} is not inside the target")));
            }
            if let Some(sub) = space
                .opens_within(a)
                .into_iter()
                .find(|s| !arrows.contains(s))
            {
                return Err(malformed(format!("{sub} ⊆ {a} is missing")));
            }
        }
        Ok(Sieve { target, arrows })
    }

    pub(crate) fn from_parts(target: OpenSet, arrows: BTreeSet<OpenSet>) -> Self {
        Sieve { target, arrows }
    }

    /// All opens inside `target`.
    pub fn maximal(space: &FiniteSpace, target: OpenSet) -> Self {
        Sieve {
            target,
            arrows: space.opens_within(target).into_iter().collect(),
        }
    }

    /// The smallest sieve on `target` containing every member of `family`.
    pub fn generated(
        space: &FiniteSpace,
        target: OpenSet,
        family: &[OpenSet],
    ) -> Result<Self, SiteError> {
        space.require_open(target)?;
        for &m in family {
            if !m.is_subset(target) {
                return Err(SiteError::NotContained {
                    inner: m,
                    outer: target,
                });
            }
        }
        let arrows = space
            .opens_within(target)
            .into_iter()
            .filter(|o| family.iter().any(|m| o.is_subset(*m)))
            .collect();
        Ok(Sieve { target, arrows })
    }

    pub fn target(&self) -> OpenSet {
        self.target
    }

    pub fn arrows(&self) -> &BTreeSet<OpenSet> {
        &self.arrows
    }

    pub fn contains(&self, o: OpenSet) -> bool {
        self.arrows.contains(&o)
    }

    /// Downward closure within `space`.
    pub fn is_downward_closed(&self, space: &FiniteSpace) -> bool {
        self.arrows.iter().all(|a| {
            space
                .opens_within(*a)
                .iter()
                .all(|s| self.arrows.contains(s))
        })
    }
}

impl fmt::Display for Sieve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sieve on {} {}",
            self.target,
            format_family(&self.arrows)
        )
    }
}

/// The sieve generated by the members of a cover.
pub fn generated_sieve(cover: &Cover) -> Sieve {
    Sieve::generated(&cover.space, cover.target, &cover.members)
        .expect("cover members lie in the target")
}

/// `f*(T)` for the inclusion `f : s ⊆ t.target`.
pub fn pullback_sieve(space: &FiniteSpace, s: OpenSet, t: &Sieve) -> Result<Sieve, SiteError> {
    space.require_open(s)?;
    if !s.is_subset(t.target) {
        return Err(SiteError::NotContained {
            inner: s,
            outer: t.target,
        });
    }
    Ok(pullback_unchecked(s, t))
}

pub(crate) fn pullback_unchecked(s: OpenSet, t: &Sieve) -> Sieve {
    Sieve {
        target: s,
        arrows: t
            .arrows
            .iter()
            .copied()
            .filter(|a| a.is_subset(s))
            .collect(),
    }
}
