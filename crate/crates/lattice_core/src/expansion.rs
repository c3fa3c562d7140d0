use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{LatticeElement, LatticeError};

/// Coordinates `(c_1..c_n)` of an element in the diagonal basis `E_1..E_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EExpansion {
    pub n: usize,
    pub e_coeffs: Vec<Rational64>,
}

impl EExpansion {
    pub fn is_integral(&self) -> bool {
        self.e_coeffs.iter().all(|c| c.is_integer())
    }

    /// Root value `(L_a - L_b)(xi) = c_a - c_b`, 0-based indices.
    pub fn root_value(&self, a: usize, b: usize) -> Rational64 {
        self.e_coeffs[a] - self.e_coeffs[b]
    }
}

/// Exponents of `gamma_xi(lambda) = diag(lambda^{c_1}, ..., lambda^{c_n})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopExponents {
    pub n: usize,
    pub c: Vec<i64>,
}

/// Expands `sum n_i H_i` using `H_i = (n-i)/n (E_1+..+E_i) - i/n (E_{i+1}+..+E_n)`.
pub fn h_to_e(xi: &LatticeElement) -> EExpansion {
    let n = xi.n();
    let nn = n as i64;
    let mut e = vec![Rational64::zero(); n];
    for i in 1..n {
        let ni = xi.coeff(i);
        if ni == 0 {
            continue;
        }
        let hi = Rational64::new((nn - i as i64) * ni, nn);
        let lo = Rational64::new(-(i as i64) * ni, nn);
        for (j, slot) in e.iter_mut().enumerate() {
            *slot += if j < i { hi } else { lo };
        }
    }
    EExpansion { n, e_coeffs: e }
}

/// `sum_i i * n_i` divisible by `n`.
pub fn in_lattice(xi: &LatticeElement) -> bool {
    let n = xi.n() as i64;
    let s: i64 = xi.coeffs().iter().enumerate().map(|(k, &c)| (k as i64 + 1) * c).sum();
    s.mod_floor(&n) == 0
}

/// Least `m` with `m * H_i` in the lattice: `n / gcd(i, n)`.
pub fn min_multiple(n: usize, i: usize) -> Result<usize, LatticeError> {
    if n < 2 {
        return Err(LatticeError::BadRank(n));
    }
    if i == 0 || i >= n {
        return Err(LatticeError::IndexOutOfRange { i, max: n - 1 });
    }
    Ok(n / i.gcd(&n))
}

pub fn loop_exponents(xi: &LatticeElement) -> Result<LoopExponents, LatticeError> {
    xi.require_dominant()?;
    integral_exponents(xi)
}

pub(crate) fn integral_exponents(xi: &LatticeElement) -> Result<LoopExponents, LatticeError> {
    let e = h_to_e(xi);
    if !e.is_integral() {
        return Err(LatticeError::NotInLattice(xi.to_string()));
    }
    let c: Vec<i64> = e.e_coeffs.iter().map(|r| r.to_integer()).collect();
    debug_assert_eq!(c.iter().sum::<i64>(), 0);
    Ok(LoopExponents { n: xi.n(), c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, c: &[i64]) -> LatticeElement {
        LatticeElement::new(n, c.to_vec()).unwrap()
    }

    fn ints(e: &EExpansion) -> Vec<i64> {
        assert!(e.is_integral());
        e.e_coeffs.iter().map(|r| r.to_integer()).collect()
    }

    #[test]
    fn h_to_e_examples() {
        assert_eq!(ints(&h_to_e(&el(3, &[1, 1]))), vec![1, 0, -1]);
        assert_eq!(ints(&h_to_e(&el(3, &[0, 0]))), vec![0, 0, 0]);
        assert_eq!(ints(&h_to_e(&el(4, &[1, 2, 1]))), vec![2, 1, -1, -2]);
        let h1 = h_to_e(&el(2, &[1]));
        assert_eq!(h1.e_coeffs, vec![Rational64::new(1, 2), Rational64::new(-1, 2)]);
    }

    #[test]
    fn membership_examples() {
        assert!(in_lattice(&el(3, &[1, 1])));
        assert!(!in_lattice(&el(3, &[1, 0])));
        assert!(in_lattice(&el(4, &[0, 2, 0])));
    }

    #[test]
    fn min_multiple_examples() {
        assert_eq!(min_multiple(4, 1).unwrap(), 4);
        assert_eq!(min_multiple(4, 2).unwrap(), 2);
        assert_eq!(min_multiple(5, 3).unwrap(), 5);
        assert!(min_multiple(4, 4).is_err());
        assert!(min_multiple(4, 0).is_err());
    }

    #[test]
    fn min_multiple_matches_search() {
        for n in 2..=9 {
            for i in 1..n {
                let least =
                    (1..=n as i64).find(|&k| in_lattice(&LatticeElement::basis_multiple(n, i, k).unwrap())).unwrap();
                assert_eq!(least as usize, min_multiple(n, i).unwrap(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn loop_exponent_examples() {
        assert_eq!(loop_exponents(&el(3, &[3, 0])).unwrap().c, vec![2, -1, -1]);
        assert_eq!(loop_exponents(&el(4, &[1, 2, 1])).unwrap().c, vec![2, 1, -1, -2]);
        assert_eq!(loop_exponents(&el(2, &[0])).unwrap().c, vec![0, 0]);
        assert!(loop_exponents(&el(3, &[1, 0])).is_err());
        assert!(loop_exponents(&el(3, &[-3, 0])).is_err());
    }
}
