use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{degree_cap, ExactScalar, Poly, PolyError};

/// Column vector of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyVector(pub Vec<Poly>);

impl PolyVector {
    pub fn zero(dim: usize) -> Self {
        PolyVector(vec![Poly::zero(); dim])
    }

    /// Standard basis vector `e_j`, 0-based.
    pub fn basis(dim: usize, j: usize) -> Self {
        let mut v = PolyVector::zero(dim);
        v.0[j] = Poly::one();
        v
    }

    /// Entries given as integer coefficient lists, lowest degree first.
    pub fn from_int_coeffs(entries: &[&[i64]]) -> Self {
        PolyVector(entries.iter().map(|c| Poly::from_ints(c)).collect())
    }

    pub fn constant(entries: &[ExactScalar]) -> Self {
        PolyVector(entries.iter().cloned().map(Poly::constant).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(Poly::is_constant)
    }

    /// Largest entry degree; `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().filter_map(Poly::degree).max()
    }

    /// Index of the first non-zero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.0.iter().position(|p| !p.is_zero())
    }

    pub fn scale(&self, p: &Poly) -> PolyVector {
        PolyVector(self.0.iter().map(|x| x * p).collect())
    }

    pub fn scale_scalar(&self, c: &ExactScalar) -> PolyVector {
        PolyVector(self.0.iter().map(|x| x.scale(c)).collect())
    }

    pub fn eval(&self, z: &ExactScalar) -> Vec<ExactScalar> {
        self.0.iter().map(|p| p.eval(z)).collect()
    }

    pub fn derivative(&self) -> PolyVector {
        PolyVector(self.0.iter().map(Poly::derivative).collect())
    }

    pub fn check_dim(&self, expected: usize) -> Result<(), PolyError> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch { expected, got: self.dim() })
        }
    }

    pub(crate) fn check_cap(&self) -> Result<(), PolyError> {
        let cap = degree_cap();
        match self.degree() {
            Some(d) if d > cap => Err(PolyError::DegreeCap { degree: d, cap }),
            _ => Ok(()),
        }
    }

    /// Removes the polynomial content and scales to coprime
    /// integer coefficients with a positive leading pivot coefficient.
    pub fn normalized(&self) -> PolyVector {
        if self.pivot().is_none() {
            return self.clone();
        }
        let mut v = self.clone();
        if !v.0.iter().any(|e| !e.is_zero() && e.is_constant()) {
            let mut g = Poly::zero();
            for e in &v.0 {
                g = g.gcd(e);
                if g.is_constant() {
                    break;
                }
            }
            if !g.is_constant() {
                v = PolyVector(
                    v.0.iter().map(|e| e.exact_div(&g).expect("g non-zero").expect("content divides")).collect(),
                );
            }
        }
        v.integer_scaled()
    }

    /// Scales by a constant to coprime integer coefficients with a positive
    /// leading pivot coefficient; the polynomial content is left alone.
    pub fn integer_scaled(&self) -> PolyVector {
        let Some(p) = self.pivot() else {
            return self.clone();
        };
        let v = self;
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for e in &v.0 {
            for c in e.coeffs() {
                for r in [c.re(), c.im()] {
                    if !r.is_zero() {
                        den = den.lcm(r.denom());
                        num = num.gcd(r.numer());
                    }
                }
            }
        }
        // num is the gcd of numerators, den the lcm of denominators
        let mut factor = num_rational::BigRational::new(den, num);
        let lead = v.0[p].leading().expect("pivot non-zero");
        let lead_sign = if lead.re().is_zero() { lead.im().signum() } else { lead.re().signum() };
        if lead_sign.is_negative() {
            factor = -factor;
        }
        v.scale_scalar(&ExactScalar::new(factor, num_rational::BigRational::zero()))
    }
}

/// Componentwise formal derivative in `z`.
pub fn ddz(v: &PolyVector) -> PolyVector {
    v.derivative()
}

impl Index<usize> for PolyVector {
    type Output = Poly;
    fn index(&self, i: usize) -> &Poly {
        &self.0[i]
    }
}

impl IndexMut<usize> for PolyVector {
    fn index_mut(&mut self, i: usize) -> &mut Poly {
        &mut self.0[i]
    }
}

impl Add<&PolyVector> for &PolyVector {
    type Output = PolyVector;
    fn add(self, o: &PolyVector) -> PolyVector {
        assert_eq!(self.dim(), o.dim(), "vector dimensions differ");
        PolyVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&PolyVector> for &PolyVector {
    type Output = PolyVector;
    fn sub(self, o: &PolyVector) -> PolyVector {
        assert_eq!(self.dim(), o.dim(), "vector dimensions differ");
        PolyVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &PolyVector {
    type Output = PolyVector;
    fn neg(self) -> PolyVector {
        PolyVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
