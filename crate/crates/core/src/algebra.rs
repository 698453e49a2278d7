//! Finite-dimensional unital associative algebras given by structure
//! constants `e_i e_j = Σ_k c_ij^k e_k`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact::{Scalar, SparseMatrix};

/// Sparse coordinate vector, sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one basis element")]
    EmptyBasis,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not associative: (e{0} e{1}) e{2} != e{0} (e{1} e{2})", .triple.0, .triple.1, .triple.2)]
    NotAssociative { triple: (usize, usize, usize) },
    #[error("unit law fails at basis element {index}")]
    NotUnital { index: usize },
    #[error("vector of length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("morphism is not multiplicative on (e{0}, e{1})", .pair.0, .pair.1)]
    NotMultiplicative { pair: (usize, usize) },
    #[error("morphism does not preserve the unit")]
    UnitNotPreserved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    // table[i][j] = e_i e_j
    table: Vec<Vec<SparseVec>>,
    unit: Vec<Scalar>,
}

fn normalize(v: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in v {
        *acc.entry(k).or_default() += &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn dense(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (k, c) in v {
        out[*k] += c;
    }
    out
}

/// Validates and builds an algebra. `mult` holds the nonzero products
/// `e_i e_j`; pairs left out multiply to zero.
pub fn make_algebra(
    labels: Vec<String>,
    mult: BTreeMap<(usize, usize), SparseVec>,
    unit: Vec<Scalar>,
) -> Result<Algebra, AlgebraError> {
    let n = labels.len();
    if n == 0 {
        return Err(AlgebraError::EmptyBasis);
    }
    if unit.len() != n {
        return Err(AlgebraError::LengthMismatch {
            expected: n,
            got: unit.len(),
        });
    }
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for ((i, j), v) in mult {
        if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
            return Err(AlgebraError::Shape(format!(
                "product ({i}, {j}) refers past dimension {n}"
            )));
        }
        table[i][j] = normalize(v);
    }
    let a = Algebra {
        labels,
        table,
        unit,
    };
    a.check_associative()?;
    a.check_unit()?;
    Ok(a)
}

impl Algebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// The unit as a sparse vector.
    pub fn unit_sparse(&self) -> SparseVec {
        normalize(self.unit.iter().cloned().enumerate())
    }

    /// `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    /// Nonzero products `(i, j) -> e_i e_j` in index order.
    pub fn structure_constants(&self) -> BTreeMap<(usize, usize), SparseVec> {
        let mut out = BTreeMap::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_empty() {
                    out.insert((i, j), v.clone());
                }
            }
        }
        out
    }

    fn mul_sparse(&self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in u {
            for (j, b) in v {
                let ab = a * b;
                for (k, c) in &self.table[*i][*j] {
                    terms.push((*k, &ab * c));
                }
            }
        }
        normalize(terms)
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        for w in [u, v] {
            if w.len() != self.dim() {
                return Err(AlgebraError::LengthMismatch {
                    expected: self.dim(),
                    got: w.len(),
                });
            }
        }
        let su = normalize(u.iter().cloned().enumerate());
        let sv = normalize(v.iter().cloned().enumerate());
        Ok(dense(&self.mul_sparse(&su, &sv), self.dim()))
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let one = self.unit_sparse();
        for i in 0..self.dim() {
            let e = vec![(i, Scalar::one())];
            if self.mul_sparse(&one, &e) != e || self.mul_sparse(&e, &one) != e {
                return Err(AlgebraError::NotUnital { index: i });
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul_sparse(ij, &[(k, Scalar::one())]);
                    let right = self.mul_sparse(&[(i, Scalar::one())], &self.table[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative { triple: (i, j, k) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }
}

/// The ground field.
pub fn field() -> Algebra {
    functions_on_points(1)
}

/// `Mat_n` with matrix units `e_pq`, indexed `p * n + q`.
pub fn matrix_algebra(n: usize) -> Algebra {
    assert!(n >= 1, "matrix_algebra needs n >= 1");
    let idx = |p: usize, q: usize| p * n + q;
    let mut labels = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in 1..=n {
            labels.push(if n < 10 {
                format!("e{p}{q}")
            } else {
                format!("e{p}_{q}")
            });
        }
    }
    let mut mult = BTreeMap::new();
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                mult.insert((idx(p, q), idx(q, s)), vec![(idx(p, s), Scalar::one())]);
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n * n];
    for p in 0..n {
        unit[idx(p, p)] = Scalar::one();
    }
    make_algebra(labels, mult, unit).expect("matrix units form an algebra")
}

/// `a ⊗ b` with basis `e_i ⊗ f_j` at index `i * dim(b) + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Algebra {
    let (m, n) = (a.dim(), b.dim());
    let labels = a
        .labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let mut mult = BTreeMap::new();
    for i in 0..m {
        for j in 0..n {
            for k in 0..m {
                for l in 0..n {
                    let mut v = Vec::new();
                    for (p, c) in a.product(i, k) {
                        for (q, d) in b.product(j, l) {
                            v.push((p * n + q, c * d));
                        }
                    }
                    if !v.is_empty() {
                        mult.insert((i * n + j, k * n + l), v);
                    }
                }
            }
        }
    }
    let mut unit = Vec::with_capacity(m * n);
    for x in &a.unit {
        for y in &b.unit {
            unit.push(x * y);
        }
    }
    make_algebra(labels, mult, unit).expect("tensor product of algebras")
}

/// `a ⊕ b` with blockwise product.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let m = a.dim();
    let labels = a
        .labels
        .iter()
        .map(|x| format!("L:{x}"))
        .chain(b.labels.iter().map(|y| format!("R:{y}")))
        .collect();
    let mut mult = a.structure_constants();
    for ((i, j), v) in b.structure_constants() {
        mult.insert(
            (i + m, j + m),
            v.into_iter().map(|(k, c)| (k + m, c)).collect(),
        );
    }
    let unit = a.unit.iter().chain(b.unit.iter()).cloned().collect();
    make_algebra(labels, mult, unit).expect("direct sum of algebras")
}

/// `C^n` with pointwise product.
pub fn functions_on_points(n: usize) -> Algebra {
    assert!(n >= 1, "functions_on_points needs n >= 1");
    let labels = if n == 1 {
        vec!["1".to_string()]
    } else {
        (0..n).map(|i| format!("p{i}")).collect()
    };
    let mult = (0..n).map(|i| ((i, i), vec![(i, Scalar::one())])).collect();
    make_algebra(labels, mult, vec![Scalar::one(); n]).expect("pointwise functions")
}

/// `C[x]/(x^m)` with basis `1, x, ..., x^{m-1}`.
pub fn truncated_polynomial(m: usize) -> Algebra {
    assert!(m >= 2, "truncated_polynomial needs m >= 2");
    let labels = (0..m)
        .map(|p| match p {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{p}"),
        })
        .collect();
    let mut mult = BTreeMap::new();
    for p in 0..m {
        for q in 0..m - p {
            mult.insert((p, q), vec![(p + q, Scalar::one())]);
        }
    }
    let mut unit = vec![Scalar::zero(); m];
    unit[0] = Scalar::one();
    make_algebra(labels, mult, unit).expect("truncated polynomial algebra")
}

/// A unital algebra homomorphism, stored as its `target.dim x source.dim`
/// matrix.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: Algebra,
    pub target: Algebra,
    matrix: SparseMatrix,
}

impl AlgebraMorphism {
    pub fn new(
        source: Algebra,
        target: Algebra,
        matrix: SparseMatrix,
    ) -> Result<Self, AlgebraError> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(AlgebraError::Shape(format!(
                "morphism matrix is {:?}, expected {:?}",
                matrix.shape(),
                (target.dim(), source.dim())
            )));
        }
        let image = |v: &[Scalar]| matrix.mul_vec(v).expect("checked shape");
        let basis = |i: usize| dense(&[(i, Scalar::one())], source.dim());
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = image(&dense(source.product(i, j), source.dim()));
                let rhs = target.multiply(&image(&basis(i)), &image(&basis(j)))?;
                if lhs != rhs {
                    return Err(AlgebraError::NotMultiplicative { pair: (i, j) });
                }
            }
        }
        if image(source.unit()) != target.unit() {
            return Err(AlgebraError::UnitNotPreserved);
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(a: &Algebra, i: usize) -> Vec<Scalar> {
        dense(&[(i, Scalar::one())], a.dim())
    }

    #[test]
    fn field_and_dual_numbers() {
        let c = make_algebra(
            vec!["1".into()],
            BTreeMap::from([((0, 0), vec![(0, Scalar::one())])]),
            vec![Scalar::one()],
        )
        .unwrap();
        assert_eq!(c, field());
        let dual = make_algebra(
            vec!["1".into(), "x".into()],
            BTreeMap::from([
                ((0, 0), vec![(0, Scalar::one())]),
                ((0, 1), vec![(1, Scalar::one())]),
                ((1, 0), vec![(1, Scalar::one())]),
            ]),
            vec![Scalar::one(), Scalar::zero()],
        )
        .unwrap();
        assert_eq!(
            dual.structure_constants(),
            truncated_polynomial(2).structure_constants()
        );
        let x = basis(&dual, 1);
        assert!(dual.multiply(&x, &x).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn non_associative_table_rejected() {
        // (e0 e0) e0 = e1 e0 = e0 but e0 (e0 e0) = e0 e1 = 0
        let one = Scalar::one();
        let mult = BTreeMap::from([
            ((0, 0), vec![(1, one.clone())]),
            ((1, 0), vec![(0, one.clone())]),
        ]);
        let err = make_algebra(
            vec!["a".into(), "b".into()],
            mult,
            vec![one, Scalar::zero()],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::NotAssociative { triple: (0, 0, 0) });
    }

    #[test]
    fn non_unital_rejected() {
        let mult = BTreeMap::from([((0, 0), vec![(0, Scalar::one())])]);
        let err = make_algebra(
            vec!["a".into(), "b".into()],
            mult,
            vec![Scalar::one(), Scalar::zero()],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::NotUnital { index: 1 });
    }

    #[test]
    fn matrix_units() {
        let m2 = matrix_algebra(2);
        assert_eq!(m2.dim(), 4);
        // e12 e21 = e11
        assert_eq!(m2.product(1, 2), &[(0, Scalar::one())]);
        assert_eq!(
            m2.multiply(&basis(&m2, 1), &basis(&m2, 2)).unwrap(),
            basis(&m2, 0)
        );
        assert_eq!(
            matrix_algebra(1).structure_constants(),
            field().structure_constants()
        );
        assert!(!m2.is_commutative());
    }

    #[test]
    fn tensor_and_sums() {
        let c = field();
        let m2 = matrix_algebra(2);
        assert_eq!(
            tensor_product(&c, &m2).structure_constants(),
            m2.structure_constants()
        );
        assert_eq!(tensor_product(&m2, &m2).dim(), 16);
        let dual = truncated_polynomial(2);
        let dd = tensor_product(&dual, &dual);
        assert_eq!(dd.dim(), 4);
        // x⊗1 has index 1*2 + 0
        assert!(dd.product(2, 2).is_empty());
        let cc = direct_sum(&c, &c);
        assert_eq!(cc.dim(), 2);
        assert_eq!(cc.product(0, 0), &[(0, Scalar::one())]);
        assert!(cc.product(0, 1).is_empty());
        assert_eq!(direct_sum(&c, &m2).dim(), 5);
        assert_eq!(
            direct_sum(&c, &cc).structure_constants(),
            functions_on_points(3).structure_constants()
        );
    }

    #[test]
    fn points_and_polynomials() {
        let p3 = functions_on_points(3);
        assert_eq!(p3.unit(), &[Scalar::one(), Scalar::one(), Scalar::one()]);
        assert!(p3.is_commutative());
        let x3 = truncated_polynomial(3);
        assert_eq!(x3.product(1, 1), &[(2, Scalar::one())]);
        assert!(x3.product(2, 1).is_empty());
        let v = x3.multiply(x3.unit(), &basis(&x3, 2)).unwrap();
        assert_eq!(v, basis(&x3, 2));
    }

    #[test]
    fn multiply_length_checked() {
        let c = field();
        assert!(matches!(
            c.multiply(&[Scalar::one()], &[]),
            Err(AlgebraError::LengthMismatch {
                expected: 1,
                got: 0
            })
        ));
    }

    #[test]
    fn morphisms() {
        let c = field();
        let m2 = matrix_algebra(2);
        // scalars into Mat_2
        let incl = SparseMatrix::from_int_rows(&[&[1], &[0], &[0], &[1]]);
        assert!(AlgebraMorphism::new(c.clone(), m2.clone(), incl).is_ok());
        // the corner embedding is multiplicative but not unital
        let corner = SparseMatrix::from_int_rows(&[&[1], &[0], &[0], &[0]]);
        assert_eq!(
            AlgebraMorphism::new(c, m2.clone(), corner).unwrap_err(),
            AlgebraError::UnitNotPreserved
        );
        // transpose is an anti-homomorphism
        let t = SparseMatrix::from_int_rows(&[
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, 1],
        ]);
        assert!(matches!(
            AlgebraMorphism::new(m2.clone(), m2, t),
            Err(AlgebraError::NotMultiplicative { .. })
        ));
    }
}
