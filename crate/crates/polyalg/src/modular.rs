//! Multi-modular computation of the canonical kernel vectors found by the
//! column scan in `kernel_ff`. Results are reconstructed by CRT and rational
//! reconstruction and accepted only after exact verification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) + 1;
    std::iter::from_fn(move || loop {
        c -= 2;
        if is_prime(c) {
            return Some(c);
        }
    })
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Kernel vector `(t, j, combo)`: `combo` holds coefficients on the shifted
/// columns `(t', j')` with id `t' q + j'`.
type Found = Vec<(usize, usize, Vec<u64>)>;

/// Column scan over `F_p`. `rows[i][j]` are the integer coefficients of `M[i][j]`.
fn scan(rows: &[Vec<Vec<u64>>], q: usize, dm: usize, k: usize, cap: usize, p: u64) -> Option<Found> {
    let pr = rows.len();
    let mut done = vec![false; q];
    let mut found = Vec::new();
    let mut ech: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut t = 0;
    while found.len() < k {
        if t > cap {
            return None;
        }
        for j in 0..q {
            if done[j] {
                continue;
            }
            let id = t * q + j;
            let mut vec = vec![0u64; pr * (t + dm + 1)];
            for (i, row) in rows.iter().enumerate() {
                for (e, &c) in row[j].iter().enumerate() {
                    vec[(t + e) * pr + i] = c;
                }
            }
            let mut combo = vec![0u64; id + 1];
            combo[id] = 1;
            for (pivot, rv, rc) in &ech {
                let f = match vec.get(*pivot) {
                    Some(&x) if x != 0 => p - x,
                    _ => continue,
                };
                for (x, &r) in vec.iter_mut().zip(rv) {
                    if r != 0 {
                        *x = ((*x as u128 + f as u128 * r as u128) % p as u128) as u64;
                    }
                }
                if combo.len() < rc.len() {
                    combo.resize(rc.len(), 0);
                }
                for (x, &r) in combo.iter_mut().zip(rc) {
                    if r != 0 {
                        *x = ((*x as u128 + f as u128 * r as u128) % p as u128) as u64;
                    }
                }
            }
            match vec.iter().position(|&x| x != 0) {
                Some(pivot) => {
                    let inv = inv_mod(vec[pivot], p);
                    vec.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                    combo.iter_mut().for_each(|x| *x = mul_mod(*x, inv, p));
                    let at = ech.partition_point(|r| r.0 < pivot);
                    ech.insert(at, (pivot, vec, combo));
                }
                None => {
                    done[j] = true;
                    found.push((t, j, combo));
                    if found.len() == k {
                        break;
                    }
                }
            }
        }
        t += 1;
    }
    Some(found)
}

/// `a/b` with `|a|, |b| <= sqrt(m/2)` and `a = b r (mod m)`.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Canonical kernel vectors of an integer matrix, as rational coefficient
/// lists indexed like `combo`. `verify` must confirm each candidate exactly.
pub(crate) fn kernel_vectors(
    rows: &[Vec<Vec<BigInt>>],
    q: usize,
    dm: usize,
    k: usize,
    cap: usize,
    verify: impl Fn(usize, &[BigRational]) -> bool,
) -> Option<Vec<(usize, usize, Vec<BigRational>)>> {
    const MAX_PRIMES: usize = 400;
    let mut shape: Option<Vec<(usize, usize, usize)>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut since_check = 0usize;
    let mut next_check = 1usize;
    for p in primes().take(MAX_PRIMES) {
        let rp: Vec<Vec<Vec<u64>>> =
            rows.iter().map(|r| r.iter().map(|e| e.iter().map(|c| reduce(c, p)).collect()).collect()).collect();
        let found = scan(&rp, q, dm, k, cap, p)?;
        let this: Vec<(usize, usize, usize)> = found.iter().map(|(t, j, c)| (*t, *j, c.len())).collect();
        let weight = |s: &[(usize, usize, usize)]| s.iter().map(|x| x.0).sum::<usize>();
        match &shape {
            Some(s) if *s == this => {}
            Some(s) if weight(s) >= weight(&this) => continue,
            _ => {
                // first prime, or a better rank profile than the one accumulated
                shape = Some(this);
                residues = found.iter().map(|(_, _, c)| vec![BigInt::zero(); c.len()]).collect();
                modulus = BigInt::one();
                since_check = 0;
                next_check = 1;
            }
        }
        // CRT: x = x0 + m * ((r - x0) * m^-1 mod p)
        let pb = BigInt::from(p);
        let minv = inv_mod(reduce(&modulus, p), p);
        for (res, (_, _, c)) in residues.iter_mut().zip(&found) {
            for (x, &r) in res.iter_mut().zip(c) {
                let x0 = reduce(x, p);
                let d = mul_mod((r + p - x0) % p, minv, p);
                *x += &modulus * BigInt::from(d);
            }
        }
        modulus *= &pb;
        since_check += 1;
        if since_check < next_check {
            continue;
        }
        since_check = 0;
        next_check = (next_check * 2).min(8);
        let recon: Option<Vec<Vec<BigRational>>> =
            residues.iter().map(|res| res.iter().map(|x| rational_reconstruct(x, &modulus)).collect()).collect();
        let Some(recon) = recon else { continue };
        if recon.iter().enumerate().all(|(i, x)| verify(i, x)) {
            let s = shape.as_ref().expect("shape set");
            return Some(s.iter().zip(recon).map(|(&(t, j, _), x)| (t, j, x)).collect());
        }
    }
    None
}
