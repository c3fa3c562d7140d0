use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use bundles::{HoloFlag, MeromorphicBundle};
use lattice_core::FlagType;
use polyalg::{ddz, EchelonBasis, PolyVector};

use crate::model::checked_members;
use crate::{ExtsolError, GradedModel, LaurentVector};

/// Frenet frame `X`: generators in `lambda^r H_+ / lambda^k H_+`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub n: usize,
    pub r: i64,
    pub k: i64,
    pub generators: Vec<LaurentVector>,
}

/// `W = X + lambda X^(1) + ... + lambda^{k-r-1} X^(k-r-1) + lambda^k H_+`.
pub fn frenet_generate(x: &FrenetFrame) -> Result<GradedModel, ExtsolError> {
    if x.k < 1 || x.r >= x.k {
        return Err(ExtsolError::Malformed(format!("bad Frenet window [{}, {}]", x.r, x.k)));
    }
    for g in &x.generators {
        if g.min_power().is_some_and(|p| p < x.r) {
            return Err(ExtsolError::Malformed("Frenet generator below lambda^r".into()));
        }
    }
    let s = (-x.r).max(0) as usize;
    let mut gens = Vec::new();
    for g in &x.generators {
        // derivs[l] = d^l g / dz^l
        let mut derivs = vec![g.truncate(x.k)];
        for j in 0..x.k - x.r {
            while derivs.len() <= j as usize {
                let next = derivs.last().unwrap().ddz();
                derivs.push(next);
            }
            for d in &derivs {
                let t = d.shift(j).truncate(x.k);
                if !t.is_zero() {
                    gens.push(t);
                }
            }
        }
    }
    GradedModel::new(x.n, s, x.k as usize, gens)
}

/// How a frame vector entered the adapted frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    /// Chosen from the next flag member.
    Free,
    /// `d/dz` of an earlier frame vector.
    Derivative(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameVector {
    pub s: PolyVector,
    /// First flag index `i` with `s ∈ A_i`.
    pub level: i64,
    pub origin: Origin,
}

/// Ordered frame `s_1, ..., s_{d_{r-1}}`: the first `d_i` vectors span `A_i`,
/// and the next `g_i` are derivatives completing it to `A_i^(1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptedFrame {
    pub n: usize,
    pub s: usize,
    pub r: usize,
    pub vectors: Vec<FrameVector>,
}

impl AdaptedFrame {
    /// `A_i = span{s_j : level_j <= i}` for `i = -s .. r-1`.
    pub fn flag(&self) -> Result<HoloFlag, ExtsolError> {
        let lo = -(self.s as i64);
        let members = (lo..self.r as i64)
            .map(|i| {
                let cols: Vec<PolyVector> = self.vectors.iter().filter(|v| v.level <= i).map(|v| v.s.clone()).collect();
                MeromorphicBundle::from_columns(self.n, &cols)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HoloFlag::new(lo, members))
    }

    fn check_w(&self, w: &[LaurentVector]) -> Result<(), ExtsolError> {
        if w.len() != self.vectors.len() {
            return Err(ExtsolError::LengthMismatch { expected: self.vectors.len(), got: w.len() });
        }
        Ok(())
    }

    /// `lambda^level s_j + lambda^{level+1} w_j` for free vectors.
    fn free_generator(&self, j: usize, w: &[LaurentVector]) -> LaurentVector {
        let v = &self.vectors[j];
        LaurentVector::monomial(v.level, v.s.clone()).add(&w[j].shift(v.level + 1))
    }
}

/// Adapted frame of a super-horizontal flag; `seed` shuffles the order in
/// which flag frame columns are tried.
pub fn adapted_frame(flag: &HoloFlag, ft: &FlagType, seed: u64) -> Result<AdaptedFrame, ExtsolError> {
    let members = checked_members(flag, ft)?;
    let n = ft.n();
    let lo = -(ft.s() as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span = EchelonBasis::new(n);
    let mut vectors: Vec<FrameVector> = Vec::new();

    for (idx, a) in members.iter().enumerate() {
        let level = lo + idx as i64;
        if idx > 0 {
            let before = vectors.len();
            for m in 0..before {
                let d = ddz(&vectors[m].s);
                if !d.is_zero() && span.insert(&d)? {
                    vectors.push(FrameVector { s: d, level, origin: Origin::Derivative(m) });
                }
            }
        }
        let mut cols: Vec<&PolyVector> = a.frame().iter().collect();
        cols.shuffle(&mut rng);
        for c in cols {
            if span.rank() == a.rank() {
                break;
            }
            if span.insert(c)? {
                vectors.push(FrameVector { s: c.clone(), level, origin: Origin::Free });
            }
        }
        if span.rank() != a.rank() {
            return Err(ExtsolError::NotSuperhorizontal);
        }
    }
    Ok(AdaptedFrame { n, s: ft.s(), r: ft.r(), vectors })
}

/// `X` spanned by `s_j lambda^{i+1} + w_j lambda^{i+2}` over the free frame vectors
/// (the first block sits at `lambda^{-s}`); `w` has one entry per frame vector.
pub fn assemble_frenet_frame(
    flag: &HoloFlag,
    ft: &FlagType,
    w: &[LaurentVector],
    seed: u64,
) -> Result<FrenetFrame, ExtsolError> {
    let frame = adapted_frame(flag, ft, seed)?;
    frame.frenet_frame(w)
}

impl AdaptedFrame {
    pub fn frenet_frame(&self, w: &[LaurentVector]) -> Result<FrenetFrame, ExtsolError> {
        self.check_w(w)?;
        let generators = (0..self.vectors.len())
            .filter(|&j| self.vectors[j].origin == Origin::Free)
            .map(|j| self.free_generator(j, w).truncate(self.r as i64))
            .collect();
        Ok(FrenetFrame { n: self.n, r: -(self.s as i64), k: self.r as i64, generators })
    }

    /// Column generators of `Psi gamma_xi H_+`: free vectors give
    /// `G_j = lambda^level s_j + lambda^{level+1} w_j`, derivative vectors
    /// `G_j = lambda^{level_j - level_m} d/dz G_m`.
    pub fn cell_generators(&self, w: &[LaurentVector]) -> Result<Vec<LaurentVector>, ExtsolError> {
        self.check_w(w)?;
        let mut g: Vec<LaurentVector> = Vec::with_capacity(self.vectors.len());
        for (j, v) in self.vectors.iter().enumerate() {
            let gj = match v.origin {
                Origin::Free => self.free_generator(j, w),
                Origin::Derivative(m) => {
                    if m >= j || self.vectors[m].level >= v.level {
                        return Err(ExtsolError::Malformed(format!("frame vector {j} derives from {m}")));
                    }
                    g[m].ddz().shift(v.level - self.vectors[m].level)
                }
            };
            g.push(gj.truncate(self.r as i64));
        }
        Ok(g)
    }
}

/// `W = sum_j C[lambda] G_j + lambda^r H_+` for the cell generators of `frame`.
///
/// This is `Psi gamma_xi H_+` with `Psi(0)` the adapted frame, so its graded
/// type is that of the flag by construction and constraint data on `w` shows
/// up as a failure of pseudo-horizontality.
pub fn cell_model(frame: &AdaptedFrame, w: &[LaurentVector]) -> Result<GradedModel, ExtsolError> {
    let g = frame.cell_generators(w)?;
    GradedModel::lambda_closure(frame.n, frame.s, frame.r, &g)
}
