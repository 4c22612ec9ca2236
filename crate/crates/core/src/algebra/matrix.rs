//! Dense exact matrices over a field, and matrices of polynomials with
//! memoized maximal minors.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::field::{Elem, Field};
use super::poly::{Poly, RingRef};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Output of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::NotRectangular);
        }
        if rows.iter().flatten().any(|e| !field.contains(e)) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(ExactMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Keeps the listed columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale_column(&mut self, j: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = self.field.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// Reduced row echelon form with exact pivoting.
    pub fn rref(&self) -> RowEchelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
            m.scale_row(row, &inv);
            for i in 0..m.rows {
                if i == row || f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        RowEchelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space `{x : A x = 0}` as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let RowEchelon { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(matrix.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let RowEchelon { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<Elem, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare);
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                return Ok(f.zero());
            };
            if p != col {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, col * m.cols + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(col, col).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in col + 1..m.rows {
                if f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = f.mul(m.get(i, col), &inv);
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact positive-definiteness test over the rationals by symmetric
    /// elimination: every pivot of the LDLᵀ factorization must be positive.
    pub fn is_positive_definite(&self) -> Result<bool, AlgebraError> {
        if self.field != Field::Rationals {
            return Err(AlgebraError::FieldMismatch);
        }
        if !self.is_symmetric() {
            return Err(AlgebraError::NotSymmetric);
        }
        let f = &self.field;
        let mut m = self.clone();
        for k in 0..m.rows {
            let piv = m.get(k, k).clone();
            if f.rational_sign(&piv) != Some(Ordering::Greater) {
                return Ok(false);
            }
            let inv = f.inv(&piv).unwrap();
            for i in k + 1..m.rows {
                let factor = f.mul(m.get(i, k), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in k..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(true)
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Result<Vec<Elem>, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare);
        }
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                let mut sub = Self::zeros(&self.field, k, k);
                for &i in &idx {
                    for &j in &idx {
                        sub.set(i, j, self.get(i, j).clone());
                    }
                }
                sub.determinant()
            })
            .collect()
    }

    /// `Vᵀ A V` where the columns of `V` are the given vectors.
    pub fn congruence(&self, vectors: &[Vec<Elem>]) -> Result<ExactMatrix, AlgebraError> {
        let f = &self.field;
        let mut v = Self::zeros(f, self.cols, vectors.len());
        for (j, vec) in vectors.iter().enumerate() {
            if vec.len() != self.cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.cols,
                    found: vec.len(),
                });
            }
            for (i, e) in vec.iter().enumerate() {
                v.set(i, j, e.clone());
            }
        }
        v.transpose().mul(&self.mul(&v)?)
    }

    pub fn format_entries(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.field.format(e)).collect())
            .collect()
    }
}

/// `r × n` matrix of polynomials from one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ring: &RingRef, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Determinant of the square submatrix on `cols` (in increasing order).
    pub fn minor(&self, cols: &[usize]) -> Result<Poly, AlgebraError> {
        MinorCache::new(self).minor(cols)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

/// Cofactor expansion along the top rows, memoized on the column subset
/// used by the bottom rows, so minors of one matrix share work.
pub struct MinorCache<'a> {
    matrix: &'a PolyMatrix,
    memo: HashMap<u64, Poly>,
}

impl<'a> MinorCache<'a> {
    pub fn new(matrix: &'a PolyMatrix) -> Self {
        MinorCache {
            matrix,
            memo: HashMap::new(),
        }
    }

    pub fn minor(&mut self, cols: &[usize]) -> Result<Poly, AlgebraError> {
        let m = self.matrix;
        if cols.len() != m.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: m.rows,
                found: cols.len(),
            });
        }
        if cols.windows(2).any(|w| w[0] >= w[1]) || cols.iter().any(|&c| c >= m.cols) {
            return Err(AlgebraError::InvalidColumnSet);
        }
        if m.cols > 64 {
            return Err(AlgebraError::InvalidColumnSet);
        }
        let mask = cols.iter().fold(0u64, |acc, &c| acc | (1 << c));
        Ok(self.det_rows_from(mask))
    }

    /// Determinant of rows `r - |mask| .. r` restricted to `mask`'s columns.
    fn det_rows_from(&mut self, mask: u64) -> Poly {
        if mask == 0 {
            return Poly::one(&self.matrix.ring);
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let m = self.matrix;
        let row = m.rows - mask.count_ones() as usize;
        let mut acc = Poly::zero(&m.ring);
        let mut sign_positive = true;
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = m.get(row, c);
            if !entry.is_zero() {
                let sub = self.det_rows_from(mask & !(1 << c));
                let term = entry * &sub;
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
            sign_positive = !sign_positive;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::rational;
    use super::super::poly::{MonomialOrder, PolyRing};
    use super::*;

    fn q(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(&Field::Rationals, rows).unwrap()
    }

    #[test]
    fn rank_and_kernel_of_proportional_rows() {
        let a = q(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k, vec![vec![rational(-2, 1), rational(1, 1)]]);
    }

    #[test]
    fn identity_and_zero() {
        let f = Field::Rationals;
        assert_eq!(ExactMatrix::identity(&f, 4).rank(), 4);
        let z = ExactMatrix::zeros(&f, 3, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 5);
    }

    #[test]
    fn positive_definite_cases() {
        assert!(ExactMatrix::identity(&Field::Rationals, 3)
            .is_positive_definite()
            .unwrap());
        assert!(!q(&[vec![0, 0], vec![0, 1]]).is_positive_definite().unwrap());
        assert!(q(&[vec![2, 1], vec![1, 2]]).is_positive_definite().unwrap());
        assert_eq!(
            q(&[vec![1, 2], vec![0, 1]]).is_positive_definite(),
            Err(AlgebraError::NotSymmetric)
        );
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = q(&[vec![1, 1], vec![1, -1]]);
        let x = a.solve(&[rational(3, 1), rational(1, 1)]).unwrap().unwrap();
        assert_eq!(x, vec![rational(2, 1), rational(1, 1)]);
        let b = q(&[vec![1, 1], vec![2, 2]]);
        assert!(b.solve(&[rational(1, 1), rational(3, 1)]).unwrap().is_none());
    }

    fn symbolic_2x2() -> PolyMatrix {
        let ring = PolyRing::new(
            Field::Rationals,
            vec!["x11".into(), "x21".into()],
            MonomialOrder::DegRevLex,
        );
        let e = vec![
            Poly::var(&ring, 0),
            Poly::one(&ring),
            Poly::var(&ring, 1),
            Poly::zero(&ring),
        ];
        PolyMatrix::new(&ring, 2, 2, e)
    }

    #[test]
    fn symbolic_minor() {
        let m = symbolic_2x2();
        assert_eq!(m.minor(&[0, 1]).unwrap().to_string(), "-x21");
    }

    #[test]
    fn repeated_columns_rejected() {
        let m = symbolic_2x2();
        assert_eq!(m.minor(&[1, 1]), Err(AlgebraError::InvalidColumnSet));
        assert!(m.minor(&[0]).is_err());
    }
}
