use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::LatticeError;

/// `xi = sum_i coeffs[i-1] * H_i` for `su(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct LatticeElement {
    n: usize,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct RawElement {
    n: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<RawElement> for LatticeElement {
    type Error = LatticeError;
    fn try_from(raw: RawElement) -> Result<Self, Self::Error> {
        LatticeElement::new(raw.n, raw.coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseLatticeError {
    #[error("bad integer {0:?}")]
    BadInteger(String),
    #[error(transparent)]
    Shape(#[from] LatticeError),
}

impl LatticeElement {
    pub fn new(n: usize, coeffs: Vec<i64>) -> Result<Self, LatticeError> {
        if n < 2 {
            return Err(LatticeError::BadRank(n));
        }
        if coeffs.len() != n - 1 {
            return Err(LatticeError::BadLength { n, expected: n - 1, got: coeffs.len() });
        }
        Ok(LatticeElement { n, coeffs })
    }

    pub fn zero(n: usize) -> Result<Self, LatticeError> {
        Self::new(n, vec![0; n.saturating_sub(1)])
    }

    /// `k * H_i`.
    pub fn basis_multiple(n: usize, i: usize, k: i64) -> Result<Self, LatticeError> {
        if n < 2 {
            return Err(LatticeError::BadRank(n));
        }
        if i == 0 || i >= n {
            return Err(LatticeError::IndexOutOfRange { i, max: n - 1 });
        }
        let mut coeffs = vec![0; n - 1];
        coeffs[i - 1] = k;
        Self::new(n, coeffs)
    }

    /// Parses a comma separated coefficient list such as `"1,2,1"`.
    pub fn parse_csv(n: usize, s: &str) -> Result<Self, ParseLatticeError> {
        let coeffs = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>().map_err(|_| ParseLatticeError::BadInteger(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(n, coeffs)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `H_i`, 1-based.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// All coefficients even, i.e. `gamma_xi(-1)` is central.
    pub fn is_symmetric_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c % 2 == 0)
    }

    /// 1-based indices with non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i + 1).collect()
    }

    pub fn to_csv(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub(crate) fn require_dominant(&self) -> Result<(), LatticeError> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(LatticeError::NotDominant(self.to_string()))
        }
    }
}

impl fmt::Display for LatticeElement {
    /// Writes the element as a sum such as `H1+2H2+H3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let i = idx + 1;
            if !first && c > 0 {
                write!(f, "+")?;
            }
            match c {
                1 => write!(f, "H{i}")?,
                -1 => write!(f, "-H{i}")?,
                _ => write!(f, "{c}H{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for LatticeElement {
    type Err = ParseLatticeError;
    /// Accepts the bare CSV form; `n` is inferred as the length plus one.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let len = s.split(',').count();
        Self::parse_csv(len + 1, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let xi = LatticeElement::parse_csv(4, "1, 2,1").unwrap();
        assert_eq!(xi.coeffs(), &[1, 2, 1]);
        assert_eq!(xi.to_csv(), "1,2,1");
        assert_eq!(xi.to_string(), "H1+2H2+H3");
        assert_eq!("3,0".parse::<LatticeElement>().unwrap().n(), 3);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(LatticeElement::parse_csv(4, "1,2").is_err());
        assert!(LatticeElement::parse_csv(3, "1,x").is_err());
        assert!(LatticeElement::new(1, vec![]).is_err());
    }

    #[test]
    fn json_shape() {
        let xi = LatticeElement::new(4, vec![1, 2, 1]).unwrap();
        let s = serde_json::to_string(&xi).unwrap();
        assert_eq!(s, r#"{"n":4,"coeffs":[1,2,1]}"#);
        let back: LatticeElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xi);
        assert!(serde_json::from_str::<LatticeElement>(r#"{"n":4,"coeffs":[1]}"#).is_err());
    }

    #[test]
    fn support_and_triviality() {
        let xi = LatticeElement::new(5, vec![3, 0, 5, 0]).unwrap();
        assert_eq!(xi.support(), vec![1, 3]);
        assert!(!xi.is_symmetric_trivial());
        assert!(LatticeElement::new(4, vec![0, 2, 0]).unwrap().is_symmetric_trivial());
    }
}
