use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{ExactScalar, Poly, PolyError, PolyVector};

/// Rectangular matrix of polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// Matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[PolyVector]) -> Result<Self, PolyError> {
        let mut m = PolyMatrix::zero(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            v.check_dim(rows)?;
            for r in 0..rows {
                m.set(r, c, v[r].clone());
            }
        }
        Ok(m)
    }

    pub fn from_rows(cols: usize, rows: &[PolyVector]) -> Result<Self, PolyError> {
        let mut m = PolyMatrix::zero(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            v.check_dim(cols)?;
            for c in 0..cols {
                m.set(r, c, v[c].clone());
            }
        }
        Ok(m)
    }

    /// Rows given as integer coefficient lists per entry.
    pub fn from_int_rows(rows: &[&[&[i64]]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vs: Vec<PolyVector> = rows.iter().map(|r| PolyVector::from_int_coeffs(r)).collect();
        PolyMatrix::from_rows(cols, &vs).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> PolyVector {
        PolyVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn columns(&self) -> Vec<PolyVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> PolyVector {
        PolyVector(self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<PolyVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if other.rows != self.rows {
            return Err(PolyError::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(self.rows, &cols)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if other.rows != self.cols {
            return Err(PolyError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &PolyVector) -> Result<PolyVector, PolyError> {
        v.check_dim(self.cols)?;
        let m = self.mul(&PolyMatrix::from_columns(self.cols, std::slice::from_ref(v))?)?;
        Ok(m.column(0))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Exact evaluation at `z`, as rows of scalars.
    pub fn eval(&self, z: &ExactScalar) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).eval(z)).collect()).collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}
