use std::fmt;

use serde::{Deserialize, Serialize};

use polyalg::{ddz, Poly, PolyError, PolyVector};

/// One summand `lambda^lambda_power * vector`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub lambda_power: i64,
    pub vector: PolyVector,
}

/// Laurent polynomial in `lambda` with polynomial vector coefficients in `z`.
///
/// Terms are kept sorted by power, with distinct powers and no zero vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawLaurent")]
pub struct LaurentVector {
    terms: Vec<Term>,
}

#[derive(Deserialize)]
struct RawLaurent {
    terms: Vec<Term>,
}

impl From<RawLaurent> for LaurentVector {
    fn from(raw: RawLaurent) -> Self {
        LaurentVector::new(raw.terms)
    }
}

impl LaurentVector {
    /// Sums terms with equal powers and drops zeros. Terms of differing
    /// lengths are never merged, so validation can still see them.
    pub fn new(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut ts: Vec<Term> = terms.into_iter().collect();
        ts.sort_by_key(|t| t.lambda_power);
        let mut out: Vec<Term> = Vec::with_capacity(ts.len());
        for t in ts {
            match out.last_mut() {
                Some(l) if l.lambda_power == t.lambda_power && l.vector.dim() == t.vector.dim() => {
                    l.vector = &l.vector + &t.vector;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.vector.is_zero());
        LaurentVector { terms: out }
    }

    pub fn zero() -> Self {
        LaurentVector::default()
    }

    /// `lambda^p * v`.
    pub fn monomial(p: i64, v: PolyVector) -> Self {
        LaurentVector::new([Term { lambda_power: p, vector: v }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_power(&self) -> Option<i64> {
        self.terms.first().map(|t| t.lambda_power)
    }

    pub fn max_power(&self) -> Option<i64> {
        self.terms.last().map(|t| t.lambda_power)
    }

    /// Coefficient of `lambda^p`, if present.
    pub fn coeff(&self, p: i64) -> Option<&PolyVector> {
        self.terms.iter().find(|t| t.lambda_power == p).map(|t| &t.vector)
    }

    pub fn add(&self, o: &LaurentVector) -> LaurentVector {
        LaurentVector::new(self.terms.iter().chain(&o.terms).cloned())
    }

    /// Multiplication by `lambda^j`.
    pub fn shift(&self, j: i64) -> LaurentVector {
        LaurentVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { lambda_power: t.lambda_power + j, vector: t.vector.clone() })
                .collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> LaurentVector {
        LaurentVector::new(self.terms.iter().map(|t| Term { lambda_power: t.lambda_power, vector: t.vector.scale(p) }))
    }

    /// Derivative in `z`.
    pub fn ddz(&self) -> LaurentVector {
        LaurentVector::new(self.terms.iter().map(|t| Term { lambda_power: t.lambda_power, vector: ddz(&t.vector) }))
    }

    /// Substitution `lambda -> -lambda`.
    pub fn flip(&self) -> LaurentVector {
        LaurentVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    lambda_power: t.lambda_power,
                    vector: if t.lambda_power % 2 == 0 { t.vector.clone() } else { -&t.vector },
                })
                .collect(),
        }
    }

    /// Drops every term with power `>= k`.
    pub fn truncate(&self, k: i64) -> LaurentVector {
        LaurentVector { terms: self.terms.iter().filter(|t| t.lambda_power < k).cloned().collect() }
    }

    /// Stacks the coefficients of `lambda^{-s} .. lambda^{k-1}` into one vector of
    /// length `n (s + k)`; higher powers are dropped.
    pub fn to_window(&self, n: usize, s: usize, k: usize) -> Result<PolyVector, PolyError> {
        let lo = -(s as i64);
        let mut out = vec![Poly::zero(); n * (s + k)];
        for t in &self.terms {
            t.vector.check_dim(n)?;
            if t.lambda_power < lo {
                return Err(PolyError::DimensionMismatch { expected: s, got: (-t.lambda_power) as usize });
            }
            if t.lambda_power >= k as i64 {
                continue;
            }
            let b = (t.lambda_power - lo) as usize;
            out[b * n..(b + 1) * n].clone_from_slice(t.vector.entries());
        }
        Ok(PolyVector(out))
    }

    /// Inverse of [`LaurentVector::to_window`].
    pub fn from_window(n: usize, s: usize, v: &PolyVector) -> LaurentVector {
        let lo = -(s as i64);
        LaurentVector::new(
            v.entries()
                .chunks(n)
                .enumerate()
                .map(|(b, c)| Term { lambda_power: lo + b as i64, vector: PolyVector(c.to_vec()) }),
        )
    }
}

impl fmt::Display for LaurentVector {
    /// Writes `l^-1 (1, 1*z) + (0, 1)`; the zero vector is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match t.lambda_power {
                0 => write!(f, "{}", t.vector)?,
                1 => write!(f, "l {}", t.vector)?,
                p => write!(f, "l^{p} {}", t.vector)?,
            }
        }
        Ok(())
    }
}
