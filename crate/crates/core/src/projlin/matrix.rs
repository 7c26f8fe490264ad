use std::fmt;

use crate::error::{Error, Result};
use crate::gfp::PrimeField;

/// Dense row-major matrix over GF(p). Entries are canonical residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let p = field.modulus();
        let data = data.into_iter().map(|v| v % p).collect();
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of equal length; `cols` is needed for the
    /// zero-row case.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[u32]>>(
        field: PrimeField,
        rows: usize,
        columns: &[C],
    ) -> Result<Self> {
        Ok(Matrix::from_rows(field, rows, columns)?.transpose())
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.mul_add(out.data[idx], a, other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product `self · v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect())
    }

    /// Row vector times matrix, `v · self`.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o = f.mul_add(*o, coef, a);
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    /// Reduces in place to reduced row-echelon form and returns the pivot
    /// columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                let v = &mut self.data[r * cols + j];
                *v = f.mul(*v, inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..cols {
                    let src = self.data[r * cols + j];
                    if src != 0 {
                        let idx = i * cols + j;
                        self.data[idx] = f.mul_add(self.data[idx], neg, src);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place().len();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right null space `{ v : self · v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % f.modulus();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1 % f.modulus();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = aug.get(r, n + c);
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Multiplies every entry by a scalar.
    pub fn scaled(&self, s: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.mul(v, s)).collect(),
        }
    }

    /// Scales so that the first nonzero entry in row-major order is 1.
    /// Two matrices are proportional iff their canonical scalings agree.
    pub fn canonical_scaling(&self) -> Matrix {
        match self.data.iter().find(|&&v| v != 0) {
            Some(&lead) => self.scaled(self.field.inv(lead).expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix over {} ({}x{}) [",
            self.field, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    // Leibniz expansion; test-only oracle independent of elimination.
    fn det(f: PrimeField, m: &[Vec<u32>]) -> u32 {
        let n = m.len();
        let mut total = 0u32;
        for perm in (0..n).permutations(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let prod = (0..n).fold(1u32, |acc, i| f.mul(acc, m[i][perm[i]]));
            total = if inversions % 2 == 0 {
                f.add(total, prod)
            } else {
                f.sub(total, prod)
            };
        }
        total
    }

    fn rank_by_minors(f: PrimeField, m: &Matrix) -> usize {
        let max = m.rows().min(m.cols());
        for k in (1..=max).rev() {
            for rs in (0..m.rows()).combinations(k) {
                for cs in (0..m.cols()).combinations(k) {
                    let sub: Vec<Vec<u32>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m.get(r, c)).collect())
                        .collect();
                    if det(f, &sub) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn identity_is_reduced() {
        let f = gf(5);
        let id = Matrix::identity(f, 3);
        assert_eq!(id.rref(), (id.clone(), 3));
    }

    #[test]
    fn proportional_rows_collapse() {
        let f = gf(5);
        let m = Matrix::from_rows(f, 2, &[[1, 2], [2, 4]]).unwrap();
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_rows(f, 2, &[[1, 2], [0, 0]]).unwrap());
    }

    #[test]
    fn rank_matches_minor_expansion() {
        let f = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..200 {
            let rows = 4;
            let cols = 6;
            let mut data: Vec<u32> = (0..rows * cols).map(|_| rng.gen_range(0..7)).collect();
            // Force some low-rank cases.
            if trial % 3 == 0 {
                for c in 0..cols {
                    data[3 * cols + c] = f.add(data[c], f.mul(2, data[cols + c]));
                }
            }
            if trial % 5 == 0 {
                for c in 0..cols {
                    data[2 * cols + c] = f.mul(3, data[c]);
                }
            }
            let m = Matrix::new(f, rows, cols, data).unwrap();
            assert_eq!(m.rank(), rank_by_minors(f, &m), "{m:?}");
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = gf(11);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = Matrix::new(f, 3, 7, (0..21).map(|_| rng.gen_range(0..11)).collect()).unwrap();
            let k = m.kernel();
            assert_eq!(k.len() + m.rank(), 7);
            for v in k {
                assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(13);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 20 {
            let m = Matrix::new(f, 4, 4, (0..16).map(|_| rng.gen_range(0..13)).collect()).unwrap();
            match m.inverse() {
                Some(inv) => {
                    assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, 4));
                    found += 1;
                }
                None => assert_eq!(det(f, &m.row_vecs()), 0),
            }
        }
    }
}
