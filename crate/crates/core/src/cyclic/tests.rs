use super::*;
use crate::algebra::{
    direct_sum, field, functions_on_points, matrix_algebra, truncated_polynomial,
};
use crate::complexes::z2_totalize;

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[test]
fn b_examples() {
    assert!(hochschild_b(&field(), 1).is_zero());
    let m2 = matrix_algebra(2);
    // e12 ⊗ e21 sits at 1 * 4 + 2
    let image = hochschild_b(&m2, 1).mul_vec(&unit_vec(16, 6)).unwrap();
    let mut expected = unit_vec(4, 0);
    expected[3] = Scalar::from_int(-1);
    assert_eq!(image, expected);
}

#[test]
fn bprime_examples() {
    assert_eq!(hochschild_bprime(&field(), 1), SparseMatrix::identity(1));
    let dual = truncated_polynomial(2);
    // x ⊗ x sits at 1 * 2 + 1
    assert!(hochschild_bprime(&dual, 1)
        .mul_vec(&unit_vec(4, 3))
        .unwrap()
        .iter()
        .all(Scalar::is_zero));
}

#[test]
fn lambda_and_norm() {
    let m2 = matrix_algebra(2);
    assert_eq!(cyclic_lambda(&m2, 0), SparseMatrix::identity(4));
    let l1 = cyclic_lambda(&m2, 1);
    assert_eq!(compose(&l1, &l1), SparseMatrix::identity(16));
    // λ(u ⊗ v) = -v ⊗ u
    assert_eq!(l1.get(2 * 4 + 1, 4 + 2), Scalar::from_int(-1));
    let l2 = cyclic_lambda(&m2, 2);
    assert_eq!(compose(&l2, &compose(&l2, &l2)), SparseMatrix::identity(64));
    assert_eq!(norm_n(&m2, 0), SparseMatrix::identity(4));
    assert!(norm_n(&field(), 1).is_zero());
}

#[test]
fn extra_degeneracy() {
    assert_eq!(extra_degeneracy_s(&field(), 2), SparseMatrix::identity(1));
    let dual = truncated_polynomial(2);
    let s = extra_degeneracy_s(&dual, 0);
    // s(x) = 1 ⊗ x, at index 0 * 2 + 1
    assert_eq!(s.mul_vec(&unit_vec(2, 1)).unwrap(), unit_vec(4, 1));
}

#[test]
fn identities_on_builtins() {
    for a in [
        field(),
        matrix_algebra(2),
        truncated_polynomial(2),
        functions_on_points(3),
    ] {
        let checks = operator_identities(&a, 3, DEFAULT_CEILING).unwrap();
        assert!(!checks.is_empty());
        for c in checks {
            assert!(c.holds, "{} fails at level {}", c.name, c.level);
        }
    }
}

#[test]
fn bicomplex_windows() {
    let b = hp_bicomplex(&field(), 4, 4, DEFAULT_CEILING).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(b.dim(i, j), 1);
        }
    }
    let b = hp_bicomplex(&matrix_algebra(2), 3, 4, DEFAULT_CEILING).unwrap();
    assert_eq!((b.dim(0, 3), b.dim(1, 0), b.dim(2, 1)), (4, 16, 64));
    let b = hp_bicomplex(&truncated_polynomial(2), 4, 4, DEFAULT_CEILING).unwrap();
    assert!(z2_totalize(&b).is_ok());
    assert!(matches!(
        hp_bicomplex(&field(), 3, 3, DEFAULT_CEILING),
        Err(CyclicError::InvalidWindow(_))
    ));
}

#[test]
fn periodic_ranks_of_semisimple_algebras() {
    let c = field();
    let r = hp_ranks(&c, 6, DEFAULT_CEILING).unwrap();
    assert_eq!((r.even, r.odd, r.stabilized), (1, 0, true));
    let r = hp_ranks(&direct_sum(&c, &c), 6, DEFAULT_CEILING).unwrap();
    assert_eq!((r.even, r.odd, r.stabilized), (2, 0, true));
    let r = hp_ranks(&matrix_algebra(2), 4, DEFAULT_CEILING).unwrap();
    assert_eq!((r.even, r.odd, r.stabilized), (1, 0, true));
}

#[test]
fn dual_numbers_stabilize_late() {
    let dual = truncated_polynomial(2);
    let r = hp_ranks(&dual, 4, DEFAULT_CEILING).unwrap();
    assert_eq!((r.even, r.odd, r.stabilized), (1, 0, false));
    let r = hp_ranks(&dual, 6, DEFAULT_CEILING).unwrap();
    assert_eq!((r.even, r.odd, r.stabilized), (1, 0, true));
}

#[test]
fn cutoff_and_ceiling_guards() {
    assert!(matches!(
        hp_ranks(&field(), 2, DEFAULT_CEILING),
        Err(CyclicError::InvalidWindow(_))
    ));
    assert!(matches!(
        hp_ranks(&matrix_algebra(2), 6, 1000),
        Err(CyclicError::DimensionCeiling { level: 4, .. })
    ));
}

#[test]
fn hochschild_ranks() {
    let hh = hochschild_homology_ranks(&field(), 3, DEFAULT_CEILING).unwrap();
    assert_eq!(hh.values().copied().collect::<Vec<_>>(), vec![1, 0, 0, 0]);
    let hh = hochschild_homology_ranks(&functions_on_points(3), 3, DEFAULT_CEILING).unwrap();
    assert_eq!(hh.values().copied().collect::<Vec<_>>(), vec![3, 0, 0, 0]);
    let hh = hochschild_homology_ranks(&truncated_polynomial(2), 4, DEFAULT_CEILING).unwrap();
    assert_eq!(
        hh.values().copied().collect::<Vec<_>>(),
        vec![2, 1, 1, 1, 1]
    );
}

#[test]
fn rows_are_exact() {
    for a in [field(), matrix_algebra(2), truncated_polynomial(2)] {
        for k in 0..=3 {
            let (rn, rl, dim) = row_exactness(&a, k);
            assert_eq!(rn + rl, dim);
        }
    }
}
