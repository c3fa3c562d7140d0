use lattice_core::{in_lattice, leq_root_oracle, LatticeElement};

use crate::Mode;

/// Brute-force maximality: walks the whole down-set of `xi` and asks the
/// root-by-root order about every lattice point in it.
///
/// Plain mode keeps the support fixed; symmetric mode also asks every
/// coefficient difference to be even.
pub fn maximality_oracle(xi: &LatticeElement, mode: Mode) -> bool {
    let n = xi.n();
    let top = xi.coeffs();
    let lo: Vec<i64> = top
        .iter()
        .map(|&x| match mode {
            Mode::Plain if x > 0 => 1,
            _ => 0,
        })
        .collect();
    let mut c = lo.clone();
    loop {
        if c != top {
            let cand = LatticeElement::new(n, c.clone()).expect("same shape");
            let parity_ok = mode == Mode::Plain || c.iter().zip(top).all(|(a, b)| (a - b) % 2 == 0);
            if parity_ok && in_lattice(&cand) && leq_root_oracle(xi, &cand).unwrap_or(false) {
                return false;
            }
        }
        let mut k = c.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            if c[k] < top[k] {
                c[k] += 1;
                break;
            }
            c[k] = lo[k];
        }
    }
}
