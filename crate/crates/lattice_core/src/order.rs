use num_rational::Rational64;
use num_traits::Zero;

use crate::expansion::h_to_e;
use crate::{LatticeElement, LatticeError};

fn check_pair(xi: &LatticeElement, xi2: &LatticeElement) -> Result<(), LatticeError> {
    if xi.n() != xi2.n() {
        return Err(LatticeError::MismatchedN(xi.n(), xi2.n()));
    }
    xi.require_dominant()?;
    xi2.require_dominant()
}

/// `xi ⪯ xi2`, i.e. every coefficient of `xi2` is at most the matching one of `xi`.
pub fn leq(xi: &LatticeElement, xi2: &LatticeElement) -> Result<bool, LatticeError> {
    check_pair(xi, xi2)?;
    Ok(xi2.coeffs().iter().zip(xi.coeffs()).all(|(b, a)| b <= a))
}

/// Same order, decided root by root: `alpha(xi2) <= max(alpha(xi), 0)` for every root.
pub fn leq_root_oracle(xi: &LatticeElement, xi2: &LatticeElement) -> Result<bool, LatticeError> {
    check_pair(xi, xi2)?;
    let e = h_to_e(xi);
    let e2 = h_to_e(xi2);
    let n = xi.n();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let bound = e.root_value(a, b).max(Rational64::zero());
            if e2.root_value(a, b) > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which two-torsion condition `xi - xi2` has to meet in the symmetric order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TwoTorsion {
    /// `exp(pi (xi - xi2))` central: all coefficient differences even.
    #[default]
    Center,
    /// `exp(pi (xi - xi2)) = e`: all diagonal exponents of the difference even.
    Identity,
}

pub fn symmetric_leq(xi: &LatticeElement, xi2: &LatticeElement) -> Result<bool, LatticeError> {
    symmetric_leq_with(xi, xi2, TwoTorsion::Center)
}

pub fn symmetric_leq_with(
    xi: &LatticeElement,
    xi2: &LatticeElement,
    reading: TwoTorsion,
) -> Result<bool, LatticeError> {
    if !leq(xi, xi2)? {
        return Ok(false);
    }
    let parity = match reading {
        TwoTorsion::Center => xi.coeffs().iter().zip(xi2.coeffs()).all(|(a, b)| (a - b) % 2 == 0),
        TwoTorsion::Identity => {
            let diff: Vec<i64> = xi.coeffs().iter().zip(xi2.coeffs()).map(|(a, b)| a - b).collect();
            let d = h_to_e(&LatticeElement::new(xi.n(), diff)?);
            d.e_coeffs.iter().all(|c| c.is_integer() && c.to_integer() % 2 == 0)
        }
    };
    Ok(parity)
}

/// `H_i -> H_{n-i}`.
pub fn chi1(xi: &LatticeElement) -> LatticeElement {
    let mut c = xi.coeffs().to_vec();
    c.reverse();
    LatticeElement::new(xi.n(), c).expect("same shape")
}

/// `H_i -> H_{2i mod n}`, odd `n` only.
pub fn chi2(xi: &LatticeElement) -> Result<LatticeElement, LatticeError> {
    let n = xi.n();
    if n.is_multiple_of(2) {
        return Err(LatticeError::EvenN(n));
    }
    let mut c = vec![0; n - 1];
    for j in 1..n {
        c[(2 * j) % n - 1] = xi.coeff(j);
    }
    LatticeElement::new(n, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, c: &[i64]) -> LatticeElement {
        LatticeElement::new(n, c.to_vec()).unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&el(4, &[1, 2, 1]), &el(4, &[1, 0, 1])).unwrap());
        assert!(!leq(&el(4, &[3, 1, 1]), &el(4, &[1, 2, 1])).unwrap());
        let x = el(4, &[3, 1, 1]);
        assert!(leq(&x, &x).unwrap());
        assert!(leq(&el(3, &[1, 1]), &el(4, &[1, 1, 1])).is_err());
        assert!(leq(&el(3, &[-1, 1]), &el(3, &[1, 1])).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert!(leq_root_oracle(&el(4, &[1, 2, 1]), &el(4, &[1, 0, 1])).unwrap());
        assert!(!leq_root_oracle(&el(4, &[3, 1, 1]), &el(4, &[1, 2, 1])).unwrap());
        let x = el(5, &[4, 2, 1, 1]);
        assert!(leq_root_oracle(&x, &x).unwrap());
    }

    #[test]
    fn symmetric_leq_examples() {
        assert!(symmetric_leq(&el(2, &[2]), &el(2, &[0])).unwrap());
        assert!(symmetric_leq(&el(4, &[1, 2, 1]), &el(4, &[1, 0, 1])).unwrap());
        assert!(!symmetric_leq(&el(3, &[4, 1]), &el(3, &[1, 1])).unwrap());
    }

    #[test]
    fn identity_reading_is_stricter() {
        // 2H2 in SU(4) is diag(1,1,-1,-1): central at -1 but not the identity.
        let a = el(4, &[1, 2, 1]);
        let b = el(4, &[1, 0, 1]);
        assert!(symmetric_leq_with(&a, &b, TwoTorsion::Center).unwrap());
        assert!(!symmetric_leq_with(&a, &b, TwoTorsion::Identity).unwrap());
        assert!(symmetric_leq_with(&el(2, &[4]), &el(2, &[0]), TwoTorsion::Identity).unwrap());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi1(&el(4, &[2, 1, 0])), el(4, &[0, 1, 2]));
        assert_eq!(chi1(&el(4, &[1, 2, 1])), el(4, &[1, 2, 1]));
        assert_eq!(chi2(&el(5, &[5, 0, 0, 0])).unwrap(), el(5, &[0, 5, 0, 0]));
        assert_eq!(chi2(&el(5, &[3, 1, 5, 0])).unwrap(), el(5, &[5, 3, 0, 1]));
        assert!(chi2(&el(4, &[1, 0, 0])).is_err());
    }
}
