//! Exhaustive checks of the topology axioms (T1)-(T3) and the pretopology
//! axioms (P1)-(P3) on a finite space.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    format_family, pullback_unchecked, FiniteSpace, OpenSet, Sieve, SiteError, ENUMERATION_CAP,
};

/// A covering family: a set of opens.
pub type Family = BTreeSet<OpenSet>;
/// `J(R)` for every open `R`.
pub type Topology = BTreeMap<OpenSet, BTreeSet<Sieve>>;
/// `Cov(R)` for every open `R`.
pub type Pretopology = BTreeMap<OpenSet, BTreeSet<Family>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: &'static str,
    pub holds: bool,
    /// A counterexample when the axiom fails.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn outcome(&self, axiom: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.axiom == axiom)
    }
}

fn outcome(axiom: &'static str, witness: Option<String>) -> AxiomOutcome {
    AxiomOutcome {
        axiom,
        holds: witness.is_none(),
        witness,
    }
}

/// Every sieve on `r`, i.e. every down-set of the opens inside `r`.
pub fn sieves_on(space: &FiniteSpace, r: OpenSet) -> Result<Vec<Sieve>, SiteError> {
    // opens by increasing size, so every proper sub-open is decided first
    let within = space.opens_within(r);
    let below: Vec<Vec<usize>> = within
        .iter()
        .map(|o| {
            within
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_subset(*o) && *s != o)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; within.len()];
    fn walk(
        i: usize,
        within: &[OpenSet],
        below: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        target: OpenSet,
        out: &mut Vec<Sieve>,
    ) -> Result<(), SiteError> {
        if i == within.len() {
            if out.len() >= ENUMERATION_CAP {
                return Err(SiteError::TooLarge(format!("sieves on {target}")));
            }
            let arrows = within
                .iter()
                .zip(chosen.iter())
                .filter(|(_, &c)| c)
                .map(|(o, _)| *o)
                .collect();
            out.push(Sieve::from_parts(target, arrows));
            return Ok(());
        }
        walk(i + 1, within, below, chosen, target, out)?;
        if below[i].iter().all(|&j| chosen[j]) {
            chosen[i] = true;
            walk(i + 1, within, below, chosen, target, out)?;
            chosen[i] = false;
        }
        Ok(())
    }
    walk(0, &within, &below, &mut chosen, r, &mut out)?;
    Ok(out)
}

fn empty_sieves() -> BTreeSet<Sieve> {
    BTreeSet::new()
}

/// Checks (T1) maximal sieves cover, (T2) stability under pullback and
/// (T3) local character, by enumeration.
pub fn check_topology_axioms(space: &FiniteSpace, j: &Topology) -> Result<AxiomReport, SiteError> {
    for (r, sieves) in j {
        space.require_open(*r)?;
        for s in sieves {
            if s.target() != *r {
                return Err(SiteError::MalformedSieve {
                    target: *r,
                    reason: format!("listed sieve has target {}", s.target()),
                });
            }
            Sieve::new(space, *r, s.arrows().clone())?;
        }
    }
    let empty = empty_sieves();
    let covering = |r: OpenSet| j.get(&r).unwrap_or(&empty);

    let t1 = space
        .opens()
        .iter()
        .find(|r| !covering(**r).contains(&Sieve::maximal(space, **r)))
        .map(|r| format!("maximal sieve on {r} is not covering"));

    let mut t2 = None;
    'outer: for r in space.opens() {
        for t in covering(*r) {
            for s in space.opens_within(*r) {
                let pulled = pullback_unchecked(s, t);
                if !covering(s).contains(&pulled) {
                    t2 = Some(format!("pullback of {t} along {s} ⊆ {r} is not covering"));
                    break 'outer;
                }
            }
        }
    }

    let mut t3 = None;
    'outer3: for r in space.opens() {
        let all = sieves_on(space, *r)?;
        for t in covering(*r) {
            for u in &all {
                let locally = t
                    .arrows()
                    .iter()
                    .all(|v| covering(*v).contains(&pullback_unchecked(*v, u)));
                if locally && !covering(*r).contains(u) {
                    t3 = Some(format!(
                        "{u} is locally covering along {t} but not covering"
                    ));
                    break 'outer3;
                }
            }
        }
    }

    Ok(AxiomReport {
        outcomes: vec![outcome("T1", t1), outcome("T2", t2), outcome("T3", t3)],
    })
}

/// Checks (P1) stability under fiber products, (P2) composition of
/// covering families and (P3) the trivial family.
pub fn check_pretopology_axioms(
    space: &FiniteSpace,
    cov: &Pretopology,
) -> Result<AxiomReport, SiteError> {
    for (r, families) in cov {
        space.require_open(*r)?;
        for f in families {
            for m in f {
                space.require_open(*m)?;
                if !m.is_subset(*r) {
                    return Err(SiteError::NotContained {
                        inner: *m,
                        outer: *r,
                    });
                }
            }
        }
    }
    let empty = BTreeSet::new();
    let families = |r: OpenSet| cov.get(&r).unwrap_or(&empty);

    let mut p1 = None;
    'outer1: for r in space.opens() {
        for f in families(*r) {
            for s in space.opens_within(*r) {
                let pulled: Family = f.iter().map(|a| a.intersection(s)).collect();
                if !families(s).contains(&pulled) {
                    p1 = Some(format!(
                        "{} in Cov({r}) pulled back to {s} gives {}, not in Cov({s})",
                        format_family(f),
                        format_family(&pulled)
                    ));
                    break 'outer1;
                }
            }
        }
    }

    let mut p2 = None;
    'outer2: for r in space.opens() {
        let within = space.opens_within(*r);
        if within.len() > 20 {
            return Err(SiteError::TooLarge(format!("families of opens inside {r}")));
        }
        let encode = |f: &Family| -> u32 {
            f.iter()
                .map(|m| 1u32 << within.iter().position(|o| o == m).expect("member inside r"))
                .fold(0, |a, b| a | b)
        };
        let decode = |mask: u32| -> Family {
            within
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, o)| *o)
                .collect()
        };
        let covering: BTreeSet<u32> = families(*r).iter().map(encode).collect();
        for f in families(*r) {
            let options: Vec<Vec<u32>> = f
                .iter()
                .map(|m| families(*m).iter().map(encode).collect())
                .collect();
            if let Some((total, choice)) =
                first_bad_composite(&options, 1 << within.len(), &covering)
            {
                let parts: Vec<String> = choice
                    .into_iter()
                    .map(|g| format_family(&decode(g)))
                    .collect();
                p2 = Some(format!(
                    "{} in Cov({r}) refined by [{}] gives {}, not in Cov({r})",
                    format_family(f),
                    parts.join(", "),
                    format_family(&decode(total))
                ));
                break 'outer2;
            }
        }
    }

    let p3 = space
        .opens()
        .iter()
        .find(|r| !families(**r).contains(&Family::from([**r])))
        .map(|r| format!("trivial family {{{r}}} is not in Cov({r})"));

    Ok(AxiomReport {
        outcomes: vec![outcome("P1", p1), outcome("P2", p2), outcome("P3", p3)],
    })
}

/// Unions of one choice from each option list, as bit masks below `size`;
/// returns a union outside `covering` together with the choices making it.
fn first_bad_composite(
    options: &[Vec<u32>],
    size: usize,
    covering: &BTreeSet<u32>,
) -> Option<(u32, Vec<u32>)> {
    // parents[step][mask] = (previous mask, chosen family) for the first visit
    let mut parents: Vec<Vec<Option<(u32, u32)>>> = Vec::with_capacity(options.len());
    let mut current = vec![0u32];
    for opts in options {
        let mut seen: Vec<Option<(u32, u32)>> = vec![None; size];
        let mut next = Vec::new();
        for &u in &current {
            for &g in opts {
                let v = u | g;
                if seen[v as usize].is_none() {
                    seen[v as usize] = Some((u, g));
                    next.push(v);
                }
            }
        }
        parents.push(seen);
        current = next;
    }
    let bad = current.into_iter().find(|t| !covering.contains(t))?;
    let mut choice = Vec::with_capacity(options.len());
    let mut mask = bad;
    for seen in parents.iter().rev() {
        let (prev, g) = seen[mask as usize].expect("reached");
        choice.push(g);
        mask = prev;
    }
    choice.reverse();
    Some((bad, choice))
}

/// `Cov(R)` = all families of opens inside `R` whose union is `R`.
pub fn open_cover_pretopology(space: &FiniteSpace) -> Result<Pretopology, SiteError> {
    let mut cov = Pretopology::new();
    for &r in space.opens() {
        let within = space.opens_within(r);
        if within.len() > 16 {
            return Err(SiteError::TooLarge(format!("families of opens inside {r}")));
        }
        let mut families = BTreeSet::new();
        for mask in 0u32..(1 << within.len()) {
            let family: Family = within
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, o)| *o)
                .collect();
            if family.iter().fold(OpenSet::EMPTY, |acc, o| acc.union(*o)) == r {
                families.insert(family);
            }
        }
        cov.insert(r, families);
    }
    Ok(cov)
}

/// `J(R)` = sieves on `R` containing some family of `Cov(R)`.
pub fn generated_topology(space: &FiniteSpace, cov: &Pretopology) -> Result<Topology, SiteError> {
    let mut j = Topology::new();
    let empty = BTreeSet::new();
    for &r in space.opens() {
        let families = cov.get(&r).unwrap_or(&empty);
        let covering = sieves_on(space, r)?
            .into_iter()
            .filter(|s| families.iter().any(|f| f.iter().all(|m| s.contains(*m))))
            .collect();
        j.insert(r, covering);
    }
    Ok(j)
}

/// `J(R) = {maximal sieve}`.
pub fn trivial_topology(space: &FiniteSpace) -> Topology {
    space
        .opens()
        .iter()
        .map(|&r| (r, BTreeSet::from([Sieve::maximal(space, r)])))
        .collect()
}
