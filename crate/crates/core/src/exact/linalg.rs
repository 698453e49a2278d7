//! Exact rank, null spaces and cokernels by sparse Gaussian elimination.
//!
//! Rows are fed into an incremental echelon form in order of increasing
//! support size, which keeps fill-in low on the very sparse operator
//! matrices this crate produces. The pivot order may change with the input
//! layout; the rank never does.

use std::collections::BTreeMap;

use super::sparse::{axpy, SparseRow};
use super::{Scalar, SparseMatrix};

/// Echelon form keyed by leading column; every stored row has leading
/// coefficient one.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    /// Reduces `v` against the stored pivots; returns true if it was
    /// independent (and was stored).
    fn insert(&mut self, mut v: SparseRow) -> bool {
        while let Some((lead, coeff)) = v.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => v = axpy(&v, &(-coeff), p),
                None => {
                    let inv = coeff.inv().expect("nonzero leading coefficient");
                    let normalized: SparseRow =
                        v.into_iter().map(|(c, x)| (c, &x * &inv)).collect();
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back-substitutes so every pivot column is zero outside its pivot row.
    fn into_reduced(mut self) -> BTreeMap<usize, SparseRow> {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &k in &keys {
            let pivot_row = self.pivots[&k].clone();
            for (_, row) in self.pivots.range_mut(..k) {
                if let Ok(pos) = row.binary_search_by_key(&k, |e| e.0) {
                    let coeff = row[pos].1.clone();
                    *row = axpy(row, &(-coeff), &pivot_row);
                }
            }
        }
        self.pivots
    }
}

fn echelon_of_rows(rows: Vec<SparseRow>) -> Echelon {
    let mut order: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    order.sort_by_key(|r| (r.len(), r.first().map(|e| e.0)));
    let mut ech = Echelon::default();
    for r in order {
        ech.insert(r);
    }
    ech
}

/// Exact rank over Q(i).
pub fn rank(m: &SparseMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    // eliminate along the shorter side
    let rows = if m.rows() <= m.cols() {
        m.clone().into_rows()
    } else {
        m.transpose().into_rows()
    };
    echelon_of_rows(rows).rank()
}

/// Null space basis as the columns of a `cols x nullity` matrix.
pub fn kernel_matrix(m: &SparseMatrix) -> SparseMatrix {
    let n = m.cols();
    let reduced = echelon_of_rows(m.clone().into_rows()).into_reduced();
    let free: Vec<usize> = (0..n).filter(|c| !reduced.contains_key(c)).collect();
    let mut free_pos = vec![usize::MAX; n];
    for (k, &c) in free.iter().enumerate() {
        free_pos[c] = k;
    }
    let mut triplets = Vec::new();
    for (k, &c) in free.iter().enumerate() {
        triplets.push((c, k, Scalar::one()));
    }
    for (&pc, row) in &reduced {
        for (c, v) in row.iter().skip(1) {
            // every non-leading entry of a reduced row sits in a free column
            triplets.push((pc, free_pos[*c], -v));
        }
    }
    SparseMatrix::from_triplets(n, free.len(), triplets)
}

/// A basis of `{ v : m v = 0 }` as dense vectors; its size is
/// `cols(m) - rank(m)`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    kernel_matrix(m).transpose().to_dense()
}

/// A matrix `Q` with `ker Q = im m`; multiplying by `Q` realizes the
/// quotient map onto `coker m`.
pub fn cokernel_projection(m: &SparseMatrix) -> SparseMatrix {
    kernel_matrix(&m.transpose()).transpose()
}

/// `dim map(ker d)`: the rank of `map` restricted to the kernel of `d`.
/// Both matrices must share their column space.
pub fn rank_on_kernel(d: &SparseMatrix, map: &SparseMatrix) -> usize {
    assert_eq!(d.cols(), map.cols(), "rank_on_kernel: column spaces differ");
    let stacked = d.vstack(map).expect("same column count");
    rank(&stacked) - rank(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(4, 4)), 0);
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        let m = SparseMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3)).len(), 3);
        let m = SparseMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(!v[0].is_zero());
        assert_eq!(v[0], -v[1].clone());
        assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn complex_rank() {
        // rows (1, i) and (i, -1) are dependent over Q(i)
        let i = Scalar::i();
        let m = SparseMatrix::from_dense(&[
            vec![Scalar::one(), i.clone()],
            vec![i, Scalar::from_int(-1)],
        ]);
        assert_eq!(rank(&m), 1);
        assert_eq!(kernel_basis(&m).len(), 1);
    }

    #[test]
    fn cokernel_kills_image() {
        let m = SparseMatrix::from_int_rows(&[&[1, 0], &[1, 0], &[0, 2]]);
        let q = cokernel_projection(&m);
        assert_eq!(q.rows(), 1);
        assert!(q.mat_mul(&m).unwrap().is_zero());
    }

    #[test]
    fn rank_on_kernel_projection() {
        // ker d = span{(1,-1,0),(0,0,1)}; projecting onto coordinate 0 gives rank 1
        let d = SparseMatrix::from_int_rows(&[&[1, 1, 0]]);
        let proj = SparseMatrix::from_int_rows(&[&[1, 0, 0]]);
        assert_eq!(rank_on_kernel(&d, &proj), 1);
        let proj2 = SparseMatrix::from_int_rows(&[&[1, 1, 0]]);
        assert_eq!(rank_on_kernel(&d, &proj2), 0);
    }
}
