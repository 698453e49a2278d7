//! Row-compressed sparse matrices over [`Scalar`].

use std::fmt;

use super::{ExactError, Scalar};

/// A sparse row: `(column, value)` pairs, strictly increasing in column,
/// no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Exact sparse matrix. Rows are stored sorted by column with no explicit
/// zeros, so structural equality is matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// `a + factor * b` on sorted sparse rows.
pub(crate) fn axpy(a: &[(usize, Scalar)], factor: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = factor * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|k| vec![(k, Scalar::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// zeros dropped. Panics on an out-of-range index.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) outside {rows}x{cols}"
            );
            data[r].push((c, v));
        }
        for row in data.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += &v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        SparseMatrix { rows, cols, data }
    }

    /// Dense row-major input, convenient for small fixtures.
    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged dense matrix");
        Self::from_triplets(
            r,
            c,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| Scalar::from_int(v)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub(crate) fn into_rows(self) -> Vec<SparseRow> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, factor: &Scalar) -> SparseMatrix {
        if factor.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, factor * v)).collect())
                .collect(),
        }
    }

    fn check_same_shape(&self, other: &SparseMatrix) -> Result<(), ExactError> {
        if self.shape() != other.shape() {
            return Err(ExactError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// `self + factor * other`.
    pub fn add_scaled(
        &self,
        factor: &Scalar,
        other: &SparseMatrix,
    ) -> Result<SparseMatrix, ExactError> {
        self.check_same_shape(other)?;
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| axpy(a, factor, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        self.add_scaled(&Scalar::from_int(-1), other)
    }

    /// Matrix product `self * other`.
    pub fn mat_mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseRow = Vec::new();
                for (k, a) in row {
                    if !other.data[*k].is_empty() {
                        acc = axpy(&acc, a, &other.data[*k]);
                    }
                }
                acc
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter().fold(Scalar::zero(), |mut acc, (c, a)| {
                    acc += &(a * &v[*c]);
                    acc
                })
            })
            .collect())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &SparseMatrix) -> Result<SparseMatrix, ExactError> {
        if self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SparseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> SparseMatrix {
        let mut remap = vec![usize::MAX; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        SparseMatrix::from_triplets(
            self.rows,
            keep.len(),
            self.entries()
                .filter(|(_, c, _)| remap[*c] != usize::MAX)
                .map(|(r, c, v)| (r, remap[c], v.clone())),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 64 {
            f.debug_list().entries(self.to_dense()).finish()
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}

/// Assembles a matrix out of blocks placed at row/column offsets.
#[derive(Debug)]
pub struct BlockBuilder {
    rows: usize,
    cols: usize,
    triplets: Vec<(usize, usize, Scalar)>,
}

impl BlockBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        BlockBuilder {
            rows,
            cols,
            triplets: Vec::new(),
        }
    }

    pub fn place(
        &mut self,
        row_offset: usize,
        col_offset: usize,
        block: &SparseMatrix,
        factor: &Scalar,
    ) {
        assert!(row_offset + block.rows <= self.rows && col_offset + block.cols <= self.cols);
        if factor.is_zero() {
            return;
        }
        for (r, c, v) in block.entries() {
            let value = if factor.is_one() {
                v.clone()
            } else {
                factor * v
            };
            self.triplets.push((row_offset + r, col_offset + c, value));
        }
    }

    pub fn build(self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.rows, self.cols, self.triplets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let m = SparseMatrix::from_int_rows(&[&[1, 2, 0], &[0, -1, 5], &[3, 0, 0]]);
        assert_eq!(SparseMatrix::identity(3).mat_mul(&m).unwrap(), m);
        assert_eq!(m.mat_mul(&SparseMatrix::identity(3)).unwrap(), m);
    }

    #[test]
    fn zero_times_anything() {
        let m = SparseMatrix::from_int_rows(&[&[1, 2, 3, 4], &[0, 1, 0, 1], &[7, 0, 0, 2]]);
        let p = SparseMatrix::zeros(2, 3).mat_mul(&m).unwrap();
        assert_eq!(p, SparseMatrix::zeros(2, 4));
        assert!(p.is_zero());
    }

    #[test]
    fn matrix_units() {
        let e12 = SparseMatrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let e21 = SparseMatrix::from_int_rows(&[&[0, 0], &[1, 0]]);
        let e11 = SparseMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(e12.mat_mul(&e21).unwrap(), e11);
    }

    #[test]
    fn dimension_mismatch() {
        let a = SparseMatrix::zeros(2, 3);
        assert!(matches!(
            a.mat_mul(&a),
            Err(ExactError::DimensionMismatch { .. })
        ));
        assert!(a.add(&SparseMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = SparseMatrix::from_int_rows(&[&[1, 2]]);
        let d = a.sub(&a).unwrap();
        assert_eq!(d.nnz(), 0);
        assert_eq!(d, SparseMatrix::zeros(1, 2));
    }

    #[test]
    fn transpose_twice() {
        let m = SparseMatrix::from_int_rows(&[&[0, 2, 0], &[1, 0, 3]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(2, 1), Scalar::from_int(3));
    }
}
