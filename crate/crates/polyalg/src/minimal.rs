use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{degree_cap, modular, ExactScalar, Poly, PolyError, PolyMatrix, PolyVector};

/// Scalar row-echelon form with unit pivots, rows sorted by pivot.
#[derive(Clone, Debug, Default)]
pub(crate) struct ScalarEchelon {
    rows: Vec<(usize, Vec<ExactScalar>)>,
}

impl ScalarEchelon {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [ExactScalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*p) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
    }

    /// Adds `v`; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<ExactScalar>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("pivot non-zero");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

fn matrix_degree(m: &PolyMatrix) -> usize {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .filter_map(|(r, c)| m.get(r, c).degree())
        .max()
        .unwrap_or(0)
}

/// Rank over the function field, by evaluation. Every `r x r` minor has degree
/// at most `r * deg M`, so a minor that is non-zero as a polynomial is non-zero
/// at one of the first `min(rows, cols) * deg M + 1` integer points.
pub fn generic_rank(m: &PolyMatrix) -> usize {
    let full = m.rows().min(m.cols());
    if full == 0 {
        return 0;
    }
    let bound = full * matrix_degree(m);
    let mut best = 0;
    for z in 0..=bound as i64 {
        let vals = m.eval(&ExactScalar::from_int(z));
        let mut ech = ScalarEchelon::default();
        for r in vals {
            ech.insert(r);
        }
        best = best.max(ech.rank());
        if best == full {
            break;
        }
    }
    best
}

/// Gaussian integer, the working ring of [`kernel_ff`]: integer arithmetic
/// avoids the gcd that every rational operation pays for.
#[derive(Clone, Debug, Default, PartialEq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

/// `v <- a v - b w`, extending `v` with zeros as needed.
fn cross(v: &mut Vec<GInt>, a: &GInt, b: &GInt, w: &[GInt]) {
    if v.len() < w.len() {
        v.resize(w.len(), GInt::default());
    }
    for (k, x) in v.iter_mut().enumerate() {
        let mut y = if x.is_zero() { GInt::default() } else { a.mul(x) };
        if let Some(r) = w.get(k) {
            if !r.is_zero() {
                let t = b.mul(r);
                y.re -= t.re;
                y.im -= t.im;
            }
        }
        *x = y;
    }
}

/// Divides `a` and `b` by the gcd of all their integer parts.
fn make_primitive(a: &mut [GInt], b: &mut [GInt]) {
    let mut g = BigInt::zero();
    for x in a.iter().chain(b.iter()) {
        for r in [&x.re, &x.im] {
            if !r.is_zero() {
                g = g.gcd(r);
                if g.is_one() {
                    return;
                }
            }
        }
    }
    if g.is_zero() {
        return;
    }
    for x in a.iter_mut().chain(b.iter_mut()) {
        x.re /= &g;
        x.im /= &g;
    }
}

/// Row of an incremental column elimination: a combination `combo` of
/// shifted columns of `M` whose first non-zero entry is at `pivot`.
struct Reduced {
    pivot: usize,
    vec: Vec<GInt>,
    combo: Vec<GInt>,
}

/// Coefficients of `M`, each row scaled by a constant to Gaussian integers.
fn integer_rows(m: &PolyMatrix) -> Vec<Vec<Vec<GInt>>> {
    (0..m.rows())
        .map(|i| {
            let mut den = BigInt::one();
            for j in 0..m.cols() {
                for c in m.get(i, j).coeffs() {
                    den = den.lcm(c.re().denom()).lcm(c.im().denom());
                }
            }
            let den = BigRational::from_integer(den);
            (0..m.cols())
                .map(|j| {
                    m.get(i, j)
                        .coeffs()
                        .iter()
                        .map(|c| GInt { re: (c.re() * &den).to_integer(), im: (c.im() * &den).to_integer() })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Minimal polynomial basis of the right kernel, columns sorted by degree.
///
/// The columns of the block Toeplitz matrix are `z^t M e_j`, scanned in the
/// order `(t, j)`. The first `t` at which `z^t M e_j` depends on earlier
/// columns gives a kernel vector of degree `t` whose top coefficient ends at
/// `j`; later shifts of the same `j` are dependent too and are skipped. The
/// vectors found this way have independent leading coefficients and minimal
/// degrees, so they generate every polynomial kernel vector.
pub fn kernel_ff(m: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
    let q = m.cols();
    let k = q - generic_rank(m);
    if k == 0 {
        return PolyMatrix::from_columns(q, &[]);
    }
    let coeffs = integer_rows(m);
    let dm = matrix_degree(m);
    let cap = degree_cap();
    if coeffs.iter().flatten().flatten().all(|c| c.im.is_zero()) {
        let ints: Vec<Vec<Vec<BigInt>>> =
            coeffs.iter().map(|r| r.iter().map(|e| e.iter().map(|c| c.re.clone()).collect()).collect()).collect();
        let to_vec = |x: &[BigRational]| -> PolyVector {
            PolyVector(
                (0..q)
                    .map(|j| {
                        Poly::new(
                            (j..x.len())
                                .step_by(q)
                                .map(|id| ExactScalar::new(x[id].clone(), BigRational::zero()))
                                .collect(),
                        )
                    })
                    .collect(),
            )
            .integer_scaled()
        };
        let verify = |_: usize, x: &[BigRational]| m.mul_vec(&to_vec(x)).map(|v| v.is_zero()).unwrap_or(false);
        if let Some(found) = modular::kernel_vectors(&ints, q, dm, k, cap, verify) {
            let cols: Vec<PolyVector> = found.iter().map(|(_, _, x)| to_vec(x)).collect();
            return PolyMatrix::from_columns(q, &cols);
        }
    }
    kernel_exact(m, &coeffs, k, dm, cap)
}

/// Column scan in exact Gaussian-integer arithmetic.
fn kernel_exact(
    m: &PolyMatrix,
    coeffs: &[Vec<Vec<GInt>>],
    k: usize,
    dm: usize,
    cap: usize,
) -> Result<PolyMatrix, PolyError> {
    let (p, q) = (m.rows(), m.cols());
    let mut done = vec![false; q];
    let mut found: Vec<PolyVector> = Vec::new();
    let mut ech: Vec<Reduced> = Vec::new();
    let one = GInt { re: BigInt::one(), im: BigInt::zero() };
    let mut t = 0usize;
    while found.len() < k {
        if t > cap {
            return Err(PolyError::DegreeCap { degree: t, cap });
        }
        for j in 0..q {
            if done[j] {
                continue;
            }
            let id = t * q + j;
            let mut vec = vec![GInt::default(); p * (t + dm + 1)];
            for (i, row) in coeffs.iter().enumerate() {
                for (e, c) in row[j].iter().enumerate() {
                    vec[(t + e) * p + i] = c.clone();
                }
            }
            let mut combo = vec![GInt::default(); id + 1];
            combo[id] = one.clone();
            for r in &ech {
                let b = match vec.get(r.pivot) {
                    Some(x) if !x.is_zero() => x.clone(),
                    _ => continue,
                };
                let a = &r.vec[r.pivot];
                cross(&mut vec, a, &b, &r.vec);
                cross(&mut combo, a, &b, &r.combo);
                make_primitive(&mut vec, &mut combo);
            }
            match vec.iter().position(|x| !x.is_zero()) {
                Some(pivot) => {
                    let at = ech.partition_point(|r| r.pivot < pivot);
                    ech.insert(at, Reduced { pivot, vec, combo });
                }
                None => {
                    done[j] = true;
                    let entry = |tt: usize, jj: usize| -> ExactScalar {
                        combo.get(tt * q + jj).map_or_else(ExactScalar::zero, |g| {
                            ExactScalar::new(
                                BigRational::from_integer(g.re.clone()),
                                BigRational::from_integer(g.im.clone()),
                            )
                        })
                    };
                    let x = PolyVector((0..q).map(|jj| Poly::new((0..=t).map(|tt| entry(tt, jj)).collect())).collect());
                    found.push(x.integer_scaled());
                    if found.len() == k {
                        break;
                    }
                }
            }
        }
        t += 1;
    }
    PolyMatrix::from_columns(q, &found)
}
