use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lattice_core::{flag_type, LatticeElement};
use polyalg::{scalar_rank, ExactScalar, PolyVector};

use crate::bundle::{annihilator, osculate, random_subbundle};
use crate::{
    is_superhorizontal, osculate_down, osculate_up, osculation_stats, BundleError, HoloFlag, MeromorphicBundle,
};

/// Attempts per randomized step before giving up.
pub const MAX_RETRIES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagOptions {
    /// Degree of random sections drawn from constant bundles.
    pub degree: usize,
}

impl Default for FlagOptions {
    fn default() -> Self {
        FlagOptions { degree: 2 }
    }
}

fn reseed(seed: u64, attempt: usize) -> u64 {
    seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Constant frames (the ambient bundle in particular) get degree `opts.degree`
/// coefficients; frames that already vary get linear ones to keep degrees small.
fn section_degree(b: &MeromorphicBundle, opts: &FlagOptions) -> usize {
    if b.has_constant_frame() {
        opts.degree
    } else {
        1
    }
}

fn random_sections<R: Rng + ?Sized>(
    b: &MeromorphicBundle,
    k: usize,
    rng: &mut R,
    opts: &FlagOptions,
) -> Vec<PolyVector> {
    let deg = section_degree(b, opts);
    (0..k).map(|_| b.random_section(rng, deg)).collect()
}

/// Super-horizontal `E_{-q} ⊊ ... ⊊ E_0 = E` with `rank E_{-i} = rank E - i g`.
/// `E_{-q}` may be the zero bundle. For `g = 0` the flag is just `E`.
pub fn build_subflag(e: &MeromorphicBundle, g: usize, seed: u64) -> Result<HoloFlag, BundleError> {
    if g == 0 {
        return Ok(HoloFlag::new(0, vec![e.clone()]));
    }
    let ge = osculation_stats(e)?.g;
    if g < ge {
        return Err(BundleError::Precondition(format!("g = {g} is below g_E = {ge}")));
    }
    let q = e.rank() / g;
    let opts = FlagOptions::default();
    'attempt: for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(reseed(seed, attempt));
        let mut members = vec![e.clone()];
        for i in 1..=q {
            let down = osculate_down(members.last().expect("non-empty"), 1)?;
            let target = e.rank() - i * g;
            let next = if down.rank() == target {
                down
            } else if down.rank() > target {
                match random_subbundle(&down, target, &mut rng, section_degree(&down, &opts))? {
                    Some(b) => b,
                    None => continue 'attempt,
                }
            } else {
                continue 'attempt;
            };
            members.push(next);
        }
        members.reverse();
        let flag = HoloFlag::new(-(q as i64), members);
        if is_superhorizontal(&flag)? {
            return Ok(flag);
        }
    }
    Err(BundleError::RetryExhausted { step: "subflag".into(), attempts: MAX_RETRIES })
}

/// Cached osculating bundles `B^(t)` of one bundle.
struct Tower<'a> {
    base: &'a MeromorphicBundle,
    cache: BTreeMap<i64, MeromorphicBundle>,
}

impl<'a> Tower<'a> {
    fn new(base: &'a MeromorphicBundle) -> Self {
        Tower { base, cache: BTreeMap::new() }
    }

    fn at(&mut self, t: i64) -> Result<&MeromorphicBundle, BundleError> {
        if !self.cache.contains_key(&t) {
            let b = osculate(self.base, t)?;
            self.cache.insert(t, b);
        }
        Ok(&self.cache[&t])
    }
}

/// Output of [`interpolate_flag`].
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub f: MeromorphicBundle,
    /// Super-horizontal flag through `f` built along the way: `F_{-k0} ⊊ ... ⊊ F_0 = F`
    /// directly, or `F ⊊ ...` above `F` when the construction ran on annihilators.
    pub flag: HoloFlag,
}

impl Interpolation {
    fn single(f: MeromorphicBundle) -> Self {
        Interpolation { flag: HoloFlag::new(0, vec![f.clone()]), f }
    }
}

/// Finds `F` with `T^(j) ⊆ F ⊆ E^(-i)`, `rank F = d` and `g_F <= g`.
pub fn interpolate_flag(
    t: &MeromorphicBundle,
    e: &MeromorphicBundle,
    i: usize,
    j: usize,
    d: usize,
    g: usize,
    seed: u64,
) -> Result<Interpolation, BundleError> {
    interpolate(t, e, i, j, d, g, seed, &FlagOptions::default())
}

/// `k0 = max { k : d - k g > rank T^(j-k) }`.
fn chain_depth(tt: &mut Tower<'_>, j: i64, d: usize, g: usize) -> Result<i64, BundleError> {
    let (di, gi) = (d as i64, g as i64);
    let mut k0 = 0i64;
    while di - (k0 + 1) * gi > tt.at(j - k0 - 1)?.rank() as i64 {
        k0 += 1;
    }
    Ok(k0)
}

/// `F_{-k0} = T^(j-k0) + r0 sections of E^(-i-k0)`, then
/// `F_{-k0+l} = F_{-k0+l-1}^(1) + r_l sections of E^(-i-k0+l)`.
#[allow(clippy::too_many_arguments)]
fn interpolation_chain(
    tt: &mut Tower<'_>,
    et: &mut Tower<'_>,
    i: i64,
    j: i64,
    d: usize,
    g: usize,
    k0: i64,
    seed: u64,
    opts: &FlagOptions,
) -> Result<HoloFlag, BundleError> {
    let (di, gi) = (d as i64, g as i64);
    let tj = tt.at(j)?.clone();
    let ei = et.at(-i)?.clone();
    let base = tt.at(j - k0)?.clone();
    let sources: Vec<MeromorphicBundle> = (0..=k0).map(|l| et.at(-i - k0 + l).cloned()).collect::<Result<_, _>>()?;
    let r0 = di - k0 * gi - base.rank() as i64;
    if r0 < 0 {
        return Err(BundleError::Precondition(format!("negative r0 = {r0}")));
    }

    'attempt: for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(reseed(seed, attempt));
        let mut f = base.extend(&random_sections(&sources[0], r0 as usize, &mut rng, opts))?;
        if f.rank() as i64 != di - k0 * gi {
            continue;
        }
        let mut members = vec![f.clone()];
        for l in 1..=k0 {
            let f1 = osculate_up(&f, 1)?;
            let want = di - (k0 - l) * gi;
            let rl = want - f1.rank() as i64;
            if rl < 0 {
                continue 'attempt;
            }
            f = f1.extend(&random_sections(&sources[l as usize], rl as usize, &mut rng, opts))?;
            if f.rank() as i64 != want {
                continue 'attempt;
            }
            members.push(f.clone());
        }
        let flag = HoloFlag::new(-k0, members);
        let ok = f.contains_bundle(&tj)?
            && ei.contains_bundle(&f)?
            && osculation_stats(&f)?.g <= g
            && is_superhorizontal(&flag)?;
        if ok {
            return Ok(flag);
        }
    }
    Err(BundleError::RetryExhausted { step: format!("interpolation to rank {d}"), attempts: MAX_RETRIES })
}

#[allow(clippy::too_many_arguments)]
fn interpolate(
    t: &MeromorphicBundle,
    e: &MeromorphicBundle,
    i: usize,
    j: usize,
    d: usize,
    g: usize,
    seed: u64,
    opts: &FlagOptions,
) -> Result<Interpolation, BundleError> {
    let n = t.n();
    let (i, j) = (i as i64, j as i64);
    let mut tt = Tower::new(t);
    let mut et = Tower::new(e);
    let tj = tt.at(j)?.clone();
    let ei = et.at(-i)?.clone();
    if !ei.contains_bundle(&tj)? {
        return Err(BundleError::Precondition("T^(j) is not contained in E^(-i)".into()));
    }
    if d < tj.rank() || d > ei.rank() {
        return Err(BundleError::Precondition(format!("rank {d} outside [{}, {}]", tj.rank(), ei.rank())));
    }
    if d == tj.rank() {
        return Ok(Interpolation::single(tj));
    }
    if d == ei.rank() {
        return Ok(Interpolation::single(ei));
    }
    let (gt, ge) = (osculation_stats(t)?.g, osculation_stats(e)?.g);
    if g < gt.max(ge) {
        return Err(BundleError::Precondition(format!("g = {g} below max(g_T, g_E) = {}", gt.max(ge))));
    }
    if g == 0 {
        return constant_interpolation(t, e, d, seed).map(Interpolation::single);
    }

    let k0 = chain_depth(&mut tt, j, d, g)?;
    if t.is_zero() || k0 <= j {
        let flag = interpolation_chain(&mut tt, &mut et, i, j, d, g, k0, seed, opts)?;
        return Ok(Interpolation { f: flag.top().clone(), flag });
    }

    // For k0 > j the chain starts below T and need not reach T^(j). Annihilators
    // reverse inclusions and keep g, so solve (E^0)^(i) ⊆ F^0 ⊆ (T^0)^(-j) instead.
    let td = annihilator(e)?;
    let ed = annihilator(t)?;
    let mut tdt = Tower::new(&td);
    let mut edt = Tower::new(&ed);
    let kd = chain_depth(&mut tdt, i, n - d, g)?;
    if !(td.is_zero() || kd <= i) {
        return Err(BundleError::Precondition(format!(
            "k0 = {k0} exceeds j = {j} and the dual k0 = {kd} exceeds i = {i}"
        )));
    }
    let dual = interpolation_chain(&mut tdt, &mut edt, j, i, n - d, g, kd, seed, opts)?;
    let members: Vec<MeromorphicBundle> = dual.members.iter().rev().map(annihilator).collect::<Result<_, _>>()?;
    let f = members[0].clone();
    let ok = f.rank() == d && f.contains_bundle(&tj)? && ei.contains_bundle(&f)? && osculation_stats(&f)?.g <= g;
    if !ok {
        return Err(BundleError::RetryExhausted {
            step: format!("dual interpolation to rank {d}"),
            attempts: MAX_RETRIES,
        });
    }
    Ok(Interpolation { f, flag: HoloFlag::new(0, members) })
}

/// `g = 0`: `F` has to be constant, so it sits between the constant hull of
/// `T` and the largest constant subbundle of `E`.
fn constant_interpolation(
    t: &MeromorphicBundle,
    e: &MeromorphicBundle,
    d: usize,
    seed: u64,
) -> Result<MeromorphicBundle, BundleError> {
    let n = t.n();
    let hull = osculate_up(t, n)?;
    let core = osculate_down(e, n)?;
    if !core.contains_bundle(&hull)? || d < hull.rank() || d > core.rank() {
        return Err(BundleError::Precondition(format!("no constant bundle of rank {d} between T and E")));
    }
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(reseed(seed, attempt));
        let z0 = ExactScalar::from_int(rng.gen_range(2..1000));
        let values = core.eval_frame(&z0);
        if scalar_rank(&values) != core.rank() {
            continue;
        }
        let consts: Vec<PolyVector> = values.iter().map(|c| PolyVector::constant(c)).collect();
        let core_const = MeromorphicBundle::from_columns(n, &consts)?;
        let extra = random_sections(&core_const, d - hull.rank(), &mut rng, &FlagOptions { degree: 0 });
        let f = hull.extend(&extra)?;
        if f.rank() == d && core.contains_bundle(&f)? && osculation_stats(&f)?.g == 0 {
            return Ok(f);
        }
    }
    Err(BundleError::RetryExhausted { step: format!("constant bundle of rank {d}"), attempts: MAX_RETRIES })
}

/// Super-horizontal flag `A_{-s} ⊆ ... ⊆ A_{r-1}` with `rank A_i = d_i` from
/// the flag type of `xi`.
pub fn build_canonical_flag(xi: &LatticeElement, seed: u64) -> Result<HoloFlag, BundleError> {
    build_canonical_flag_with(xi, seed, &FlagOptions::default())
}

pub fn build_canonical_flag_with(xi: &LatticeElement, seed: u64, opts: &FlagOptions) -> Result<HoloFlag, BundleError> {
    let ft = flag_type(xi)?;
    let n = xi.n();
    let (s, r) = (ft.s() as i64, ft.r() as i64);
    let d = |i: i64| ft.d_at(i);
    let h = |i: i64| d(i + 1) - d(i);

    let mut last_err = None;
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(reseed(seed, attempt));
        let mut a: BTreeMap<i64, MeromorphicBundle> = BTreeMap::new();
        a.insert(-s - 1, MeromorphicBundle::zero(n));
        a.insert(r, MeromorphicBundle::full(n));
        // intervals (lo, hi) with both ends built; left halves first
        let mut stack = vec![(-s - 1, r)];
        let mut failed = false;
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo <= 1 {
                continue;
            }
            let g = (lo..hi).map(h).min().expect("non-empty interval");
            let inner = lo + 1..hi;
            let m = inner.clone().filter(|&i| h(i) == g).max().unwrap_or_else(|| {
                let gi = inner.clone().map(h).min().expect("non-empty");
                inner.clone().filter(|&i| h(i) == gi).max().expect("attained")
            });
            let step =
                interpolate(&a[&lo], &a[&hi], (hi - m) as usize, (m - lo) as usize, d(m), g, rng.next_u64(), opts);
            match step {
                Ok(f) => {
                    a.insert(m, f.f);
                }
                Err(BundleError::RetryExhausted { .. }) => {
                    last_err = Some(BundleError::RetryExhausted { step: format!("A_{m}"), attempts: MAX_RETRIES });
                    failed = true;
                    break;
                }
                Err(err) => return Err(err),
            }
            stack.push((m, hi));
            stack.push((lo, m));
        }
        if failed {
            continue;
        }
        let members: Vec<MeromorphicBundle> = (-s..=r).map(|i| a[&i].clone()).collect();
        let full = HoloFlag::new(-s, members);
        if !is_superhorizontal(&full)? || full.ranks() != ft.dims() {
            last_err = Some(BundleError::RetryExhausted { step: "final check".into(), attempts: attempt + 1 });
            continue;
        }
        let mut members = full.members;
        members.pop();
        return Ok(HoloFlag::new(-s, members));
    }
    Err(last_err.unwrap_or(BundleError::RetryExhausted { step: "flag".into(), attempts: MAX_RETRIES }))
}
