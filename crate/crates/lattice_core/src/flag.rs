use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::expansion::integral_exponents;
use crate::{LatticeElement, LatticeError};

/// Dimensions `d_{-s} <= ... <= d_r = n` of the flag cut out by `gamma_xi H_+`.
///
/// `d[0]` is `d_{-s}`. The trivial type of the zero element is `s = r = 0, d = [n]`.
/// Types computed from lattice elements also have `d_{r-1} < n`; hand-built ones
/// may repeat `n` at the top, which is how unbalanced test cases are written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFlagType")]
pub struct FlagType {
    n: usize,
    s: usize,
    r: usize,
    d: Vec<usize>,
}

#[derive(Deserialize)]
struct RawFlagType {
    n: usize,
    s: usize,
    r: usize,
    d: Vec<usize>,
}

impl TryFrom<RawFlagType> for FlagType {
    type Error = LatticeError;
    fn try_from(raw: RawFlagType) -> Result<Self, LatticeError> {
        FlagType::new(raw.n, raw.s, raw.r, raw.d)
    }
}

impl FlagType {
    pub fn new(n: usize, s: usize, r: usize, d: Vec<usize>) -> Result<Self, LatticeError> {
        let bad = |m: &str| Err(LatticeError::BadFlagType(m.to_string()));
        if d.len() != s + r + 1 {
            return bad("length must be s + r + 1");
        }
        if *d.last().unwrap() != n {
            return bad("last entry must equal n");
        }
        if d.windows(2).any(|w| w[0] > w[1]) {
            return bad("entries must be non-decreasing");
        }
        if r == 0 {
            if s != 0 {
                return bad("r = 0 only for the trivial type");
            }
        } else {
            if d[0] == 0 {
                return bad("first entry must be positive");
            }
        }
        Ok(FlagType { n, s, r, d })
    }

    pub fn trivial(n: usize) -> Self {
        FlagType { n, s: 0, r: 0, d: vec![n] }
    }

    /// Builds a type from dimensions indexed from `lo`, trimming leading zeros and repeated `n`s.
    pub fn from_window(n: usize, lo: i64, dims: &[usize]) -> Result<Self, LatticeError> {
        let first = dims.iter().position(|&x| x > 0);
        let last_below = dims.iter().rposition(|&x| x < n);
        match (first, last_below) {
            (_, None) => Ok(Self::trivial(n)),
            (None, Some(_)) => Err(LatticeError::BadFlagType("window never reaches n".into())),
            (Some(f), Some(l)) => {
                if l + 1 >= dims.len() {
                    return Err(LatticeError::BadFlagType("window never reaches n".into()));
                }
                let s_idx = lo + f as i64;
                let r_idx = lo + l as i64 + 1;
                if s_idx > 0 || r_idx <= 0 {
                    return Err(LatticeError::BadFlagType(format!("window [{s_idx}, {r_idx}] does not straddle zero")));
                }
                Self::new(n, (-s_idx) as usize, r_idx as usize, dims[f..=l + 1].to_vec())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn dims(&self) -> &[usize] {
        &self.d
    }

    pub fn is_trivial(&self) -> bool {
        self.r == 0
    }

    /// `d_i`, extended by 0 below `-s` and by `n` above `r`.
    pub fn d_at(&self, i: i64) -> usize {
        let lo = -(self.s as i64);
        if i < lo {
            0
        } else if i >= self.r as i64 {
            self.n
        } else {
            self.d[(i - lo) as usize]
        }
    }

    /// Jump `h_i = d_{i+1} - d_i`.
    pub fn jump(&self, i: i64) -> usize {
        self.d_at(i + 1) - self.d_at(i)
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        -(self.s as i64)..=self.r as i64
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) s={} r={}", parts.join(","), self.s, self.r)
    }
}

/// `d_i = #{j : c_j <= i}` for `-s <= i <= r`.
pub fn flag_type(xi: &LatticeElement) -> Result<FlagType, LatticeError> {
    xi.require_dominant()?;
    if xi.is_zero() {
        return Err(LatticeError::ZeroElement);
    }
    let c = integral_exponents(xi)?.c;
    let lo = *c.iter().min().unwrap();
    let hi = *c.iter().max().unwrap();
    let d: Vec<usize> = (lo..=hi).map(|i| c.iter().filter(|&&cj| cj <= i).count()).collect();
    FlagType::new(xi.n(), (-lo) as usize, hi as usize, d)
}

/// `sum_{i<0} d_i = sum_{0<=i<r} (n - d_i)`.
pub fn su_balance(ft: &FlagType) -> bool {
    let neg: usize = (-(ft.s as i64)..0).map(|i| ft.d_at(i)).sum();
    let pos: usize = (0..ft.r as i64).map(|i| ft.n - ft.d_at(i)).sum();
    neg == pos
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenDims {
    pub dims: BTreeMap<i64, usize>,
    /// Largest `i` with a non-zero eigenspace.
    pub r_xi: i64,
}

/// Dimensions of `ad(xi)` eigenspaces on `sl(n)`, indexed by root value.
pub fn eigenspace_dims(xi: &LatticeElement) -> EigenDims {
    let n = xi.n();
    // c_a - c_b telescopes to a sum of H-coefficients, so this works off the lattice too
    let diff = |a: usize, b: usize| -> i64 {
        if a < b {
            (a..b).map(|i| xi.coeffs()[i]).sum()
        } else {
            -(b..a).map(|i| xi.coeffs()[i]).sum::<i64>()
        }
    };
    let mut dims = BTreeMap::new();
    dims.insert(0, n - 1);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                *dims.entry(diff(a, b)).or_insert(0) += 1;
            }
        }
    }
    let r_xi = *dims.keys().next_back().unwrap();
    EigenDims { dims, r_xi }
}

/// Component of the symmetric space containing `gamma_xi(-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Point,
    Grassmannian { k: usize, n: usize },
}

impl Target {
    pub fn k(&self) -> Option<usize> {
        match self {
            Target::Point => None,
            Target::Grassmannian { k, .. } => Some(*k),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Point => write!(f, "point"),
            Target::Grassmannian { k, n } => write!(f, "Gr({k},{n})"),
        }
    }
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "point" {
            return Ok(Target::Point);
        }
        let inner =
            s.strip_prefix("Gr(").and_then(|t| t.strip_suffix(')')).ok_or_else(|| format!("bad target {s:?}"))?;
        let (k, n) = inner.split_once(',').ok_or_else(|| format!("bad target {s:?}"))?;
        let k = k.trim().parse().map_err(|_| format!("bad target {s:?}"))?;
        let n = n.trim().parse().map_err(|_| format!("bad target {s:?}"))?;
        Ok(Target::Grassmannian { k, n })
    }
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `k = #{j : c_j even}`; `gamma_xi(-1)` is central when `k` is `0` or `n`.
pub fn grassmannian_target(xi: &LatticeElement) -> Result<Target, LatticeError> {
    let c = integral_exponents(xi)?.c;
    let n = xi.n();
    let k = c.iter().filter(|&&x| x % 2 == 0).count();
    if k == 0 || k == n {
        Ok(Target::Point)
    } else {
        Ok(Target::Grassmannian { k: k.min(n - k), n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, c: &[i64]) -> LatticeElement {
        LatticeElement::new(n, c.to_vec()).unwrap()
    }

    #[test]
    fn flag_type_examples() {
        let f = flag_type(&el(3, &[1, 1])).unwrap();
        assert_eq!((f.s(), f.r(), f.dims()), (1, 1, &[1, 2, 3][..]));
        let f = flag_type(&el(3, &[3, 0])).unwrap();
        assert_eq!((f.s(), f.r(), f.dims()), (1, 2, &[2, 2, 2, 3][..]));
        let f = flag_type(&el(4, &[1, 2, 1])).unwrap();
        assert_eq!((f.s(), f.r(), f.dims()), (2, 2, &[1, 2, 2, 3, 4][..]));
        assert_eq!(flag_type(&el(3, &[0, 0])), Err(LatticeError::ZeroElement));
    }

    #[test]
    fn balance_examples() {
        assert!(su_balance(&flag_type(&el(4, &[1, 2, 1])).unwrap()));
        assert!(su_balance(&flag_type(&el(3, &[1, 1])).unwrap()));
        // d_{-1} = 1 against n - d_0 = 0
        assert!(!su_balance(&FlagType::new(3, 1, 1, vec![1, 3, 3]).unwrap()));
        assert!(su_balance(&FlagType::trivial(4)));
    }

    #[test]
    fn flag_type_validation() {
        assert!(FlagType::new(3, 1, 1, vec![0, 3]).is_err());
        assert!(FlagType::new(3, 1, 1, vec![2, 1]).is_err());
        assert!(FlagType::new(3, 1, 2, vec![1, 3]).is_err());
    }

    #[test]
    fn from_window_trims() {
        let f = FlagType::from_window(4, -3, &[0, 1, 2, 2, 3, 4, 4]).unwrap();
        assert_eq!(f, flag_type(&el(4, &[1, 2, 1])).unwrap());
        assert!(FlagType::from_window(3, 0, &[3]).unwrap().is_trivial());
    }

    #[test]
    fn eigen_examples() {
        let e = eigenspace_dims(&el(2, &[2]));
        assert_eq!(e.dims, BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        assert_eq!(e.r_xi, 2);
        let e = eigenspace_dims(&el(3, &[1, 1]));
        assert_eq!(e.dims, BTreeMap::from([(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)]));
        assert_eq!(e.r_xi, 2);
        let e = eigenspace_dims(&el(3, &[0, 0]));
        assert_eq!(e.dims, BTreeMap::from([(0, 8)]));
        assert_eq!(e.r_xi, 0);
    }

    #[test]
    fn target_examples() {
        let gr = |k, n| Target::Grassmannian { k, n };
        assert_eq!(grassmannian_target(&el(5, &[5, 0, 0, 0])).unwrap(), gr(1, 5));
        assert_eq!(grassmannian_target(&el(5, &[0, 5, 0, 0])).unwrap(), gr(2, 5));
        assert_eq!(grassmannian_target(&el(5, &[3, 1, 5, 0])).unwrap(), gr(2, 5));
        assert_eq!(grassmannian_target(&el(5, &[5, 3, 0, 1])).unwrap(), gr(2, 5));
        assert_eq!(grassmannian_target(&el(4, &[0, 2, 0])).unwrap(), Target::Point);
        assert_eq!("Gr(2,4)".parse::<Target>().unwrap(), gr(2, 4));
        assert_eq!(gr(2, 4).to_string(), "Gr(2,4)");
    }
}
