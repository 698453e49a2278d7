use std::sync::Arc;

use super::*;
use crate::algebra::{direct_sum, field};
use crate::complexes::verify_chain_map;
use crate::cyclic::DEFAULT_CEILING;
use crate::exact::compose;
use crate::site::spaces::*;

fn constant(cover: &Cover) -> Presheaf {
    Presheaf::constant(cover.space().clone(), 1)
}

fn ranks(m: &BTreeMap<usize, usize>) -> Vec<usize> {
    m.values().copied().collect()
}

#[test]
fn single_member_cover() {
    let cover = single_cover(chain3());
    let c = cech_complex(&cover, &constant(&cover), 4).unwrap();
    assert_eq!(c.dims(), &[1, 1, 1, 1, 1]);
    assert_eq!(
        ranks(&cech_cohomology_ranks(&cover, &constant(&cover), 4).unwrap()),
        vec![1, 0, 0, 0]
    );
}

#[test]
fn circle_and_sphere() {
    let circle = circle3_cover();
    assert_eq!(
        ranks(&cech_cohomology_ranks(&circle, &constant(&circle), 4).unwrap()),
        vec![1, 1, 0, 0]
    );
    let sphere = sphere4_cover();
    assert_eq!(
        ranks(&cech_cohomology_ranks(&sphere, &constant(&sphere), 4).unwrap()),
        vec![1, 0, 1, 0]
    );
}

#[test]
fn functions_presheaf_on_points() {
    let cover = points_cover(3);
    let p = Presheaf::functions(cover.space().clone());
    assert_eq!(
        ranks(&cech_cohomology_ranks(&cover, &p, 3).unwrap()),
        vec![3, 0, 0]
    );
}

#[test]
fn cyclic_action() {
    let circle = circle3_cover();
    let p = constant(&circle);
    let l0 = cyclic_action_on_level(&circle, &p, 0).unwrap();
    assert_eq!(l0, SparseMatrix::identity(3));
    for k in 1..=3 {
        let l = cyclic_action_on_level(&circle, &p, k).unwrap();
        let mut power = SparseMatrix::identity(l.rows());
        for _ in 0..=k {
            power = compose(&l, &power);
        }
        assert_eq!(power, SparseMatrix::identity(l.rows()));
    }
    // two overlapping members: the (0,1) block reads the (1,0) block with sign -1
    let space = Arc::new(chain3());
    let two = Cover::new(
        space.clone(),
        vec![OpenSet::from_points(&[0, 1]), space.whole()],
    )
    .unwrap();
    let l1 = cyclic_action_on_level(&two, &Presheaf::constant(space, 1), 1).unwrap();
    assert_eq!(l1.get(1, 2), Scalar::from_int(-1));
    assert_eq!(l1.get(2, 1), Scalar::from_int(-1));
    assert_eq!(l1.get(0, 0), Scalar::from_int(-1));
}

#[test]
fn z2_cech_examples() {
    let point = single_cover(chain3());
    let r = z2_cech(&point, &constant(&point), 4, DEFAULT_CEILING).unwrap();
    assert_eq!(
        (r.periodic.even, r.periodic.odd, r.periodic.stabilized),
        (1, 0, true)
    );
    let circle = circle3_cover();
    let r = z2_cech(&circle, &constant(&circle), 4, DEFAULT_CEILING).unwrap();
    assert_eq!(r.folded, Z2Ranks::new(1, 1));
    assert_eq!(r.periodic.ranks(), Z2Ranks::new(1, 1));
    let sphere = sphere4_cover();
    let r = z2_cech(&sphere, &constant(&sphere), 4, DEFAULT_CEILING).unwrap();
    assert_eq!(r.folded, Z2Ranks::new(2, 0));
}

#[test]
fn refinements() {
    let circle = circle3_cover();
    let p = constant(&circle);
    let id = refinement_map(&circle, &circle, &[0, 1, 2], &p, 3).unwrap();
    for q in 0..=3 {
        assert_eq!(id.component(q), SparseMatrix::identity(id.source.dim(q)));
    }
    let (coarse, fine, assignment) = circle_refinement();
    let p = constant(&coarse);
    let rho = refinement_map(&coarse, &fine, &assignment, &p, 3).unwrap();
    assert!(verify_chain_map(&rho).holds);
    assert_eq!((rho.induced_rank(0), rho.induced_rank(1)), (1, 1));
    // into a single-member cover of a contractible space
    let space = Arc::new(chain3());
    let single = Cover::new(space.clone(), vec![space.whole()]).unwrap();
    let two = Cover::new(
        space.clone(),
        vec![OpenSet::from_points(&[0, 1]), space.whole()],
    )
    .unwrap();
    let p = Presheaf::constant(space, 1);
    let rho = refinement_map(&single, &two, &[0, 0], &p, 3).unwrap();
    assert!(verify_chain_map(&rho).holds);
    assert_eq!(
        ranks(&cech_cohomology_ranks(&two, &p, 3).unwrap()),
        vec![1, 0, 0]
    );
    assert_eq!(rho.induced_rank(0), 1);
}

#[test]
fn refinement_errors() {
    let (coarse, fine, _) = circle_refinement();
    let p = constant(&coarse);
    assert_eq!(
        refinement_map(&coarse, &fine, &[0, 0, 0, 2], &p, 2).unwrap_err(),
        CechError::NotRefinement { fine: 2, coarse: 0 }
    );
    assert!(matches!(
        refinement_map(&coarse, &fine, &[0], &p, 2),
        Err(CechError::AssignmentLength {
            expected: 4,
            got: 1
        })
    ));
    let other = points_cover(2);
    assert_eq!(
        cech_complex(&other, &p, 2).unwrap_err(),
        CechError::SpaceMismatch
    );
}

#[test]
fn morita_examples() {
    let c = field();
    let r = morita_check(&c, 2, 4, DEFAULT_CEILING).unwrap();
    assert!(r.equal);
    assert_eq!(r.ranks_a.ranks(), Z2Ranks::new(1, 0));
    let r = morita_check(&direct_sum(&c, &c), 2, 4, DEFAULT_CEILING).unwrap();
    assert!(r.equal);
    assert_eq!(r.ranks_amn.ranks(), Z2Ranks::new(2, 0));
    assert!(morita_check(&c, 1, 4, DEFAULT_CEILING).unwrap().equal);
}

#[test]
fn hkr_examples() {
    for n in 1..=3 {
        let r = hkr_compare(n, 4, DEFAULT_CEILING).unwrap();
        assert!(r.matched);
        assert_eq!(r.hp.ranks(), Z2Ranks::new(n, 0));
        assert_eq!(r.cech.ranks(), Z2Ranks::new(n, 0));
    }
}
