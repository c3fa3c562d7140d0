use num_traits::Zero;

use crate::{ExactScalar, PolyError, PolyMatrix, PolyVector};

/// Row-echelon basis of a subspace of `Q(i)(z)^dim`, kept fraction-free.
///
/// Each stored vector has a distinct pivot (index of its first non-zero
/// entry) and vectors are sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, PolyVector)>,
}

/// `v ← v − (b/a)·row` when `a | b`, else `v ← (a/g)·v − (b/g)·row` with `g = gcd(a, b)`.
fn eliminate(v: &PolyVector, row: &PolyVector, p: usize) -> Result<PolyVector, PolyError> {
    let a = &row[p];
    let b = &v[p];
    if let Some(q) = b.exact_div(a)? {
        let out = v - &row.scale(&q);
        out.check_cap()?;
        return Ok(out);
    }
    let g = a.gcd(b);
    let ag = a.exact_div(&g)?.expect("gcd divides");
    let bg = b.exact_div(&g)?.expect("gcd divides");
    let out = &v.scale(&ag) - &row.scale(&bg);
    out.check_cap()?;
    Ok(out.normalized())
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a PolyVector>) -> Result<Self, PolyError> {
        let mut b = EchelonBasis::new(dim);
        for v in vs {
            b.insert(v)?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &PolyVector> {
        self.rows.iter().map(|(_, v)| v)
    }

    /// Pivot indices, increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Reduction of `v` against the basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &PolyVector) -> Result<PolyVector, PolyError> {
        v.check_dim(self.dim)?;
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                v = eliminate(&v, row, *p)?;
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &PolyVector) -> Result<bool, PolyError> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &PolyVector) -> Result<bool, PolyError> {
        let r = self.reduce(v)?;
        let Some(p) = r.pivot() else {
            return Ok(false);
        };
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r.normalized()));
        Ok(true)
    }

    /// Clears entries above each pivot (fraction-free Gauss-Jordan form).
    pub fn reduced(&self) -> Result<EchelonBasis, PolyError> {
        let mut rows = self.rows.clone();
        for k in (0..rows.len()).rev() {
            let (p, row) = rows[k].clone();
            for (_, other) in rows.iter_mut().take(k) {
                if !other[p].is_zero() {
                    *other = eliminate(other, &row, p)?;
                }
            }
        }
        Ok(EchelonBasis { dim: self.dim, rows })
    }
}

/// Generic rank of `m` over the rational function field.
pub fn rank_ff(m: &PolyMatrix) -> Result<usize, PolyError> {
    let cols = m.columns();
    Ok(EchelonBasis::from_vectors(m.rows(), &cols)?.rank())
}

/// Whether `v` is a rational-function combination of the columns of `m`.
pub fn in_span(v: &PolyVector, m: &PolyMatrix) -> Result<bool, PolyError> {
    v.check_dim(m.rows())?;
    let cols = m.columns();
    EchelonBasis::from_vectors(m.rows(), &cols)?.contains(v)
}

/// Rank of a scalar matrix given as rows, by exact Gaussian elimination.
pub fn scalar_rank(rows: &[Vec<ExactScalar>]) -> usize {
    let mut a: Vec<Vec<ExactScalar>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = a[rank][c].inv().expect("pivot non-zero");
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for (x, p) in row[c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                *x -= &(&f * p);
            }
        }
        rank += 1;
    }
    rank
}
