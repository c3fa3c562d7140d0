use rayon::prelude::*;

use lattice_core::{min_multiple, LatticeElement};

use crate::{check_n, quotient_by_symmetry, CanonicalSet, EnumError, Mode};

// Search boxes.
//
// Plain mode, support I: n_i ranges over 1..=m_i with m_i = n / gcd(i, n).
// If n_i >= m_i + 1 then xi - m_i H_i is again a lattice element (i m_i is a
// multiple of n), still has support I, and is strictly below xi
// componentwise, so xi is not maximal. Nothing outside the box is lost.
//
// Symmetric mode: n_i ranges over 0..=2 m_i - 1. If n_i >= 2 m_i then
// xi - 2 m_i H_i is a lattice element with the same parities, non-negative
// and strictly smaller, so again xi is not maximal.

/// Inclusive coefficient ranges `(lo, hi)` of the search box, indexed by `i - 1`.
pub fn search_bounds(n: usize, mode: Mode, support: &[usize]) -> Result<Vec<(i64, i64)>, EnumError> {
    check_n(n)?;
    (1..n)
        .map(|i| {
            let m = min_multiple(n, i)? as i64;
            Ok(match mode {
                Mode::Plain if support.contains(&i) => (1, m),
                Mode::Plain => (0, 0),
                Mode::Symmetric => (0, 2 * m - 1),
            })
        })
        .collect()
}

fn rotate(set: u64, k: usize, n: usize) -> u64 {
    let k = k % n;
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if k == 0 {
        return set;
    }
    ((set << k) | (set >> (n - k))) & mask
}

/// Whether some choice `t_j in 0..=bound_j`, not all zero, has
/// `sum t_j step_j = 0 (mod n)`.
fn nonzero_zero_sum(n: usize, moves: &[(usize, i64)]) -> bool {
    // residues reachable by a choice that is not all zero
    let mut any = 0u64;
    for &(step, bound) in moves {
        let reps = bound.min(n as i64) as usize;
        let mut next = any;
        for t in 1..=reps {
            next |= rotate(any, t * step, n);
            next |= 1u64 << ((t * step) % n);
        }
        any = next;
        if any & 1 == 1 {
            return true;
        }
    }
    false
}

/// Plain mode: no lattice `xi - eta` with `0 < eta`, `eta_i <= n_i - 1` on the support.
pub(crate) fn plain_minimal(n: usize, c: &[i64]) -> bool {
    let moves: Vec<(usize, i64)> = c.iter().enumerate().filter(|(_, &x)| x > 1).map(|(k, &x)| (k + 1, x - 1)).collect();
    !nonzero_zero_sum(n, &moves)
}

/// Symmetric mode: no lattice `xi - 2 mu` with `0 < mu`, `2 mu_i <= n_i`.
pub(crate) fn parity_minimal(n: usize, c: &[i64]) -> bool {
    let moves: Vec<(usize, i64)> =
        c.iter().enumerate().filter(|(_, &x)| x > 1).map(|(k, &x)| (2 * (k + 1), x / 2)).collect();
    !nonzero_zero_sum(n, &moves)
}

fn residue(c: &[i64], n: usize) -> i64 {
    c.iter().enumerate().map(|(k, &x)| (k as i64 + 1) * x).sum::<i64>().rem_euclid(n as i64)
}

/// Every point of the box passing `keep`, lexicographically sorted.
/// Sub-boxes with a fixed first coordinate are scanned in parallel.
fn scan_box<F>(bounds: &[(i64, i64)], keep: F) -> Vec<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let Some(&(lo0, hi0)) = bounds.first() else {
        return Vec::new();
    };
    let mut out: Vec<Vec<i64>> = (lo0..=hi0)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut c: Vec<i64> = bounds.iter().map(|b| b.0).collect();
            c[0] = first;
            loop {
                if keep(&c) {
                    found.push(c.clone());
                }
                // odometer over coordinates 1..
                let mut k = bounds.len();
                loop {
                    k -= 1;
                    if k == 0 {
                        return found;
                    }
                    if c[k] < bounds[k].1 {
                        c[k] += 1;
                        break;
                    }
                    c[k] = bounds[k].0;
                }
            }
        })
        .collect();
    out.sort();
    out
}

fn check_support(n: usize, support: &[usize]) -> Result<Vec<usize>, EnumError> {
    if support.is_empty() {
        return Err(EnumError::EmptySupport);
    }
    let mut s = support.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&i) = s.iter().find(|&&i| i == 0 || i >= n) {
        return Err(EnumError::BadSupport { i, max: n - 1 });
    }
    Ok(s)
}

/// Maximal lattice elements with support exactly `support` (1-based indices).
pub fn enumerate_i_canonical(n: usize, support: &[usize]) -> Result<Vec<LatticeElement>, EnumError> {
    check_n(n)?;
    let support = check_support(n, support)?;
    let bounds = search_bounds(n, Mode::Plain, &support)?;
    scan_box(&bounds, |c| residue(c, n) == 0 && plain_minimal(n, c))
        .into_iter()
        .map(|c| Ok(LatticeElement::new(n, c)?))
        .collect()
}

/// Union of the `I`-canonical sets over all non-empty supports, sorted.
pub fn enumerate_all_canonical(n: usize) -> Result<Vec<LatticeElement>, EnumError> {
    check_n(n)?;
    let supports: Vec<Vec<usize>> =
        (1u64..1 << (n - 1)).map(|mask| (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect()).collect();
    let parts: Result<Vec<Vec<LatticeElement>>, EnumError> =
        supports.par_iter().map(|s| enumerate_i_canonical(n, s)).collect();
    let mut all: Vec<LatticeElement> = parts?.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// Non-trivial symmetric canonical elements, sorted.
pub fn enumerate_symmetric_canonical(n: usize) -> Result<Vec<LatticeElement>, EnumError> {
    check_n(n)?;
    let bounds = search_bounds(n, Mode::Symmetric, &[])?;
    scan_box(&bounds, |c| c.iter().any(|x| x % 2 == 1) && residue(c, n) == 0 && parity_minimal(n, c))
        .into_iter()
        .map(|c| Ok(LatticeElement::new(n, c)?))
        .collect()
}

/// Full canonical set for `mode`, with orbits and annotations.
pub fn canonical_set(n: usize, mode: Mode) -> Result<CanonicalSet, EnumError> {
    let elements = match mode {
        Mode::Plain => enumerate_all_canonical(n)?,
        Mode::Symmetric => enumerate_symmetric_canonical(n)?,
    };
    quotient_by_symmetry(n, mode, &elements)
}
