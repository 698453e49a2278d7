//! Finite first-quadrant bicomplexes and their Z/2-graded totalization.
//!
//! Cell `(i, j)` sits in row `i` and column `j`. The vertical map of a cell
//! goes down one row, the horizontal map goes one column to the left, and
//! every square commutes. The total differential multiplies the vertical
//! maps of column `j` by `(-1)^j`, which turns commuting squares into
//! anticommuting ones.

use std::collections::BTreeMap;

use super::{CochainComplex, ComplexError};
use crate::exact::{
    cokernel_projection, compose, rank, rank_on_kernel, BlockBuilder, Scalar, SparseMatrix,
};

/// `(row, column)`.
pub type Cell = (usize, usize);

#[derive(Clone, Debug)]
pub struct Bicomplex {
    height: usize,
    width: usize,
    dims: Vec<usize>,
    vertical: BTreeMap<Cell, SparseMatrix>,
    horizontal: BTreeMap<Cell, SparseMatrix>,
    column_periodic: bool,
}

/// Even/odd ranks of a Z/2-graded cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Z2Ranks {
    pub even: usize,
    pub odd: usize,
}

impl Z2Ranks {
    pub fn new(even: usize, odd: usize) -> Self {
        Z2Ranks { even, odd }
    }
}

impl Bicomplex {
    /// `dims[i][j]` is the dimension of cell `(i, j)`. `vertical[(i, j)]`
    /// maps `(i, j) -> (i-1, j)` and `horizontal[(i, j)]` maps
    /// `(i, j) -> (i, j-1)`; absent maps are zero.
    pub fn new(
        dims: Vec<Vec<usize>>,
        vertical: BTreeMap<Cell, SparseMatrix>,
        horizontal: BTreeMap<Cell, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        let height = dims.len();
        let width = dims.first().map_or(0, Vec::len);
        if dims.iter().any(|row| row.len() != width) {
            return Err(ComplexError::InvalidBicomplex(
                "ragged dimension grid".into(),
            ));
        }
        let b = Bicomplex {
            height,
            width,
            dims: dims.into_iter().flatten().collect(),
            vertical,
            horizontal,
            column_periodic: false,
        };
        b.validate()?;
        Ok(b)
    }

    /// Declares that this window truncates a bicomplex whose columns repeat
    /// with period two. Cohomology is then computed as the stable periodic
    /// image (see [`z2_cohomology`]).
    pub fn into_column_periodic(mut self) -> Result<Self, ComplexError> {
        for i in 0..self.height {
            for j in 0..self.width.saturating_sub(2) {
                let same_dims = self.dim(i, j) == self.dim(i, j + 2);
                let same_v = self.vertical.get(&(i, j)) == self.vertical.get(&(i, j + 2));
                let same_h =
                    j == 0 || self.horizontal.get(&(i, j)) == self.horizontal.get(&(i, j + 2));
                if !(same_dims && same_v && same_h) {
                    return Err(ComplexError::InvalidBicomplex(format!(
                        "columns {j} and {} differ in row {i}",
                        j + 2
                    )));
                }
            }
        }
        self.column_periodic = true;
        Ok(self)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_column_periodic(&self) -> bool {
        self.column_periodic
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        if i < self.height && j < self.width {
            self.dims[i * self.width + j]
        } else {
            0
        }
    }

    pub fn vertical(&self, cell: Cell) -> Option<&SparseMatrix> {
        self.vertical.get(&cell)
    }

    pub fn horizontal(&self, cell: Cell) -> Option<&SparseMatrix> {
        self.horizontal.get(&cell)
    }

    fn vertical_or_zero(&self, (i, j): Cell) -> SparseMatrix {
        self.vertical
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(i.wrapping_sub(1), j), self.dim(i, j)))
    }

    fn horizontal_or_zero(&self, (i, j): Cell) -> SparseMatrix {
        self.horizontal
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(i, j.wrapping_sub(1)), self.dim(i, j)))
    }

    fn validate(&self) -> Result<(), ComplexError> {
        let bad = |msg: String| Err(ComplexError::InvalidBicomplex(msg));
        for (&(i, j), m) in &self.vertical {
            if i == 0 || i >= self.height || j >= self.width {
                return bad(format!("vertical map at ({i},{j}) leaves the grid"));
            }
            if m.shape() != (self.dim(i - 1, j), self.dim(i, j)) {
                return bad(format!(
                    "vertical map at ({i},{j}) has shape {:?}",
                    m.shape()
                ));
            }
        }
        for (&(i, j), m) in &self.horizontal {
            if j == 0 || j >= self.width || i >= self.height {
                return bad(format!("horizontal map at ({i},{j}) leaves the grid"));
            }
            if m.shape() != (self.dim(i, j - 1), self.dim(i, j)) {
                return bad(format!(
                    "horizontal map at ({i},{j}) has shape {:?}",
                    m.shape()
                ));
            }
        }
        for i in 0..self.height {
            for j in 0..self.width {
                if i >= 2
                    && !compose(
                        &self.vertical_or_zero((i - 1, j)),
                        &self.vertical_or_zero((i, j)),
                    )
                    .is_zero()
                {
                    return bad(format!("vertical maps compose to nonzero at ({i},{j})"));
                }
                if j >= 2
                    && !compose(
                        &self.horizontal_or_zero((i, j - 1)),
                        &self.horizontal_or_zero((i, j)),
                    )
                    .is_zero()
                {
                    return bad(format!("horizontal maps compose to nonzero at ({i},{j})"));
                }
                if i >= 1 && j >= 1 {
                    let down_left = compose(
                        &self.horizontal_or_zero((i - 1, j)),
                        &self.vertical_or_zero((i, j)),
                    );
                    let left_down = compose(
                        &self.vertical_or_zero((i, j - 1)),
                        &self.horizontal_or_zero((i, j)),
                    );
                    if down_left != left_down {
                        return bad(format!("square at ({i},{j}) does not commute"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cells of total degree `n` with column at least `min_col`, by column.
    pub fn cells_of_degree(&self, n: i64, min_col: usize) -> Vec<Cell> {
        if n < 0 {
            return Vec::new();
        }
        let n = n as usize;
        (min_col..self.width.min(n + 1))
            .map(|j| (n - j, j))
            .filter(|&(i, _)| i < self.height)
            .collect()
    }

    fn span(&self, cells: &[Cell]) -> (BTreeMap<Cell, usize>, usize) {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for &c in cells {
            offsets.insert(c, total);
            total += self.dim(c.0, c.1);
        }
        (offsets, total)
    }

    /// The part of the total differential running from `src` cells into
    /// `dst` cells.
    pub fn total_block(&self, src: &[Cell], dst: &[Cell]) -> SparseMatrix {
        let (src_off, src_dim) = self.span(src);
        let (dst_off, dst_dim) = self.span(dst);
        let mut bb = BlockBuilder::new(dst_dim, src_dim);
        for (&(i, j), &col) in &src_off {
            if i >= 1 {
                if let (Some(&row), Some(v)) =
                    (dst_off.get(&(i - 1, j)), self.vertical.get(&(i, j)))
                {
                    bb.place(row, col, v, &Scalar::sign(j));
                }
            }
            if j >= 1 {
                if let (Some(&row), Some(h)) =
                    (dst_off.get(&(i, j - 1)), self.horizontal.get(&(i, j)))
                {
                    bb.place(row, col, h, &Scalar::one());
                }
            }
        }
        bb.build()
    }

    fn max_degree(&self) -> i64 {
        (self.height + self.width) as i64 - 2
    }

    /// The Z-graded total complex, `Tot_n` stored in degree `-n`.
    pub fn total_complex(&self) -> Result<CochainComplex, ComplexError> {
        let top = self.max_degree();
        if top < 0 {
            return CochainComplex::new(0, Vec::new(), Vec::new());
        }
        let cells: Vec<Vec<Cell>> = (0..=top).map(|n| self.cells_of_degree(n, 0)).collect();
        let dims: Vec<usize> = (0..=top)
            .rev()
            .map(|n| self.span(&cells[n as usize]).1)
            .collect();
        let diffs: Vec<SparseMatrix> = (1..=top)
            .rev()
            .map(|n| self.total_block(&cells[n as usize], &cells[n as usize - 1]))
            .collect();
        CochainComplex::new(-top, dims, diffs)
            .map_err(|e| ComplexError::TotalNotDifferential(e.to_string()))
    }

    /// Stable ranks of the periodic Z/2 cohomology.
    ///
    /// For each parity take the highest total degree `n` whose neighbours
    /// lie fully inside the window. Deleting the first two columns is a
    /// chain map onto a shifted copy of the window (the columns repeat with
    /// period two), landing in degree `n - 2`. The reported rank is the rank
    /// of the induced map `H_n -> H_{n-2}`: classes that survive one period
    /// shift. When `n < 2` the shift is skipped and `dim H_n` is used.
    fn periodic_z2_ranks(&self) -> Z2Ranks {
        let top = self.height.min(self.width) as i64 - 2;
        let mut out = [0usize; 2];
        for (parity, slot) in out.iter_mut().enumerate() {
            let parity = parity as i64;
            if top < parity {
                continue;
            }
            let n = top - (top - parity) % 2;
            let shift = if n >= 2 { 2 } else { 0 };
            let source = self.cells_of_degree(n, 0);
            let d = self.total_block(&source, &self.cells_of_degree(n - 1, 0));
            let corner = self.cells_of_degree(n, shift);
            let boundary = self.total_block(&self.cells_of_degree(n + 1, shift), &corner);
            let to_homology = cokernel_projection(&boundary);
            let projection = self.total_block_projection(&source, &corner);
            *slot = rank_on_kernel(&d, &compose(&to_homology, &projection));
        }
        Z2Ranks::new(out[0], out[1])
    }

    /// Coordinate projection from the span of `src` onto the span of the
    /// subset `dst`.
    fn total_block_projection(&self, src: &[Cell], dst: &[Cell]) -> SparseMatrix {
        let (src_off, src_dim) = self.span(src);
        let (dst_off, dst_dim) = self.span(dst);
        let mut bb = BlockBuilder::new(dst_dim, src_dim);
        for (c, &row) in &dst_off {
            let n = self.dim(c.0, c.1);
            bb.place(row, src_off[c], &SparseMatrix::identity(n), &Scalar::one());
        }
        bb.build()
    }
}

/// The two-periodic total complex `C_even ⇄ C_odd`.
#[derive(Clone, Debug)]
pub struct Z2Complex {
    pub even_cells: Vec<Cell>,
    pub odd_cells: Vec<Cell>,
    /// `C_even -> C_odd`.
    pub d_even: SparseMatrix,
    /// `C_odd -> C_even`.
    pub d_odd: SparseMatrix,
}

impl Z2Complex {
    pub fn even_dim(&self) -> usize {
        self.d_even.cols()
    }

    pub fn odd_dim(&self) -> usize {
        self.d_odd.cols()
    }

    pub fn ranks(&self) -> Z2Ranks {
        let re = rank(&self.d_even);
        let ro = rank(&self.d_odd);
        Z2Ranks::new(self.even_dim() - re - ro, self.odd_dim() - ro - re)
    }
}

/// Folds the window into `C_even ⊕ C_odd` (cells with `i + j` even / odd)
/// and checks that the assembled differential squares to zero.
pub fn z2_totalize(b: &Bicomplex) -> Result<Z2Complex, ComplexError> {
    let mut even_cells = Vec::new();
    let mut odd_cells = Vec::new();
    for n in 0..=b.max_degree().max(-1) {
        let cells = b.cells_of_degree(n, 0);
        if n % 2 == 0 {
            even_cells.extend(cells);
        } else {
            odd_cells.extend(cells);
        }
    }
    let d_even = b.total_block(&even_cells, &odd_cells);
    let d_odd = b.total_block(&odd_cells, &even_cells);
    if !compose(&d_odd, &d_even).is_zero() {
        return Err(ComplexError::TotalNotDifferential(
            "even -> odd -> even".into(),
        ));
    }
    if !compose(&d_even, &d_odd).is_zero() {
        return Err(ComplexError::TotalNotDifferential(
            "odd -> even -> odd".into(),
        ));
    }
    Ok(Z2Complex {
        even_cells,
        odd_cells,
        d_even,
        d_odd,
    })
}

/// Even/odd cohomology ranks of a bicomplex window.
///
/// A plain window is folded and its two-periodic cohomology is returned. A
/// column-periodic window (a truncation of a bicomplex whose rows extend
/// periodically) returns the stable periodic ranks instead: a plain fold
/// of such a window counts every intermediate degree and the boundary of
/// the window, which is not the periodic theory.
pub fn z2_cohomology(b: &Bicomplex) -> Result<Z2Ranks, ComplexError> {
    let folded = z2_totalize(b)?;
    if b.is_column_periodic() {
        Ok(b.periodic_z2_ranks())
    } else {
        Ok(folded.ranks())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> SparseMatrix {
        SparseMatrix::identity(1)
    }

    #[test]
    fn zero_bicomplex() {
        let b = Bicomplex::new(
            vec![vec![0, 0], vec![0, 0]],
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let z = z2_totalize(&b).unwrap();
        assert_eq!((z.even_dim(), z.odd_dim()), (0, 0));
        assert_eq!(z2_cohomology(&b).unwrap(), Z2Ranks::new(0, 0));
    }

    #[test]
    fn single_cell() {
        let b = Bicomplex::new(vec![vec![1]], BTreeMap::new(), BTreeMap::new()).unwrap();
        let z = z2_totalize(&b).unwrap();
        assert_eq!((z.even_dim(), z.odd_dim()), (1, 0));
        assert_eq!(z2_cohomology(&b).unwrap(), Z2Ranks::new(1, 0));
    }

    #[test]
    fn identity_column() {
        // column 0: (1,0) -> (0,0) identity; column 1 is zero-dimensional
        let b = Bicomplex::new(
            vec![vec![1, 0], vec![1, 0]],
            BTreeMap::from([((1, 0), one())]),
            BTreeMap::new(),
        )
        .unwrap();
        let z = z2_totalize(&b).unwrap();
        // hand assembly: even = {(0,0)}, odd = {(1,0)}, D = [1] one way, 0 back
        assert_eq!(z.d_even, SparseMatrix::zeros(1, 1));
        assert_eq!(z.d_odd, one());
        assert_eq!(z2_cohomology(&b).unwrap(), Z2Ranks::new(0, 0));
    }

    #[test]
    fn square_sign_makes_total_differential() {
        // all-ones commuting square: the (-1)^j sign is what makes D^2 = 0
        let b = Bicomplex::new(
            vec![vec![1, 1], vec![1, 1]],
            BTreeMap::from([((1, 0), one()), ((1, 1), one())]),
            BTreeMap::from([((0, 1), one()), ((1, 1), one())]),
        )
        .unwrap();
        let z = z2_totalize(&b).unwrap();
        assert_eq!(z.ranks(), Z2Ranks::new(0, 0));
        let tot = b.total_complex().unwrap();
        assert!(tot.cohomology_ranks().values().all(|&r| r == 0));
    }

    #[test]
    fn noncommuting_square_rejected() {
        let r = Bicomplex::new(
            vec![vec![1, 1], vec![1, 1]],
            BTreeMap::from([((1, 0), one())]),
            BTreeMap::from([((1, 1), one())]),
        );
        assert!(matches!(r, Err(ComplexError::InvalidBicomplex(_))));
    }

    #[test]
    fn fold_equals_sum_of_graded() {
        let b = Bicomplex::new(
            vec![vec![1, 1, 0], vec![1, 2, 1]],
            BTreeMap::from([((1, 0), one())]),
            BTreeMap::from([((1, 2), SparseMatrix::from_int_rows(&[&[1], &[0]]))]),
        )
        .unwrap();
        let folded = z2_totalize(&b).unwrap().ranks();
        let graded = b.total_complex().unwrap().cohomology_ranks();
        let even: usize = graded
            .iter()
            .filter(|(q, _)| *q % 2 == 0)
            .map(|(_, r)| r)
            .sum();
        let odd: usize = graded
            .iter()
            .filter(|(q, _)| *q % 2 != 0)
            .map(|(_, r)| r)
            .sum();
        assert_eq!(folded, Z2Ranks::new(even, odd));
    }
}
