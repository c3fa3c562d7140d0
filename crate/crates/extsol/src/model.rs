use serde::{Deserialize, Serialize};

use bundles::{is_superhorizontal, HoloFlag, MeromorphicBundle};
use lattice_core::FlagType;
use polyalg::{generic_rank, kernel_ff, Poly, PolyMatrix, PolyVector};

use crate::{ExtsolError, LaurentVector};

/// `W = span(generators) + lambda^k H_+` inside `lambda^{-s} H_+`.
///
/// The span is taken over the function field; `lambda`-multiples are not
/// added implicitly, so closure under `lambda` is something [`crate::verify`] checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct GradedModel {
    n: usize,
    s: usize,
    k: usize,
    generators: Vec<LaurentVector>,
}

#[derive(Deserialize)]
struct RawModel {
    n: usize,
    s: usize,
    k: usize,
    generators: Vec<LaurentVector>,
}

impl TryFrom<RawModel> for GradedModel {
    type Error = ExtsolError;
    fn try_from(raw: RawModel) -> Result<Self, ExtsolError> {
        GradedModel::new(raw.n, raw.s, raw.k, raw.generators)
    }
}

impl GradedModel {
    /// Validates dimensions and powers; terms at `lambda^k` and above are dropped.
    pub fn new(n: usize, s: usize, k: usize, generators: Vec<LaurentVector>) -> Result<Self, ExtsolError> {
        if n == 0 {
            return Err(ExtsolError::Malformed("n must be positive".into()));
        }
        if k == 0 {
            return Err(ExtsolError::Malformed("k must be at least 1".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            for t in g.terms() {
                if t.vector.dim() != n {
                    return Err(ExtsolError::Malformed(format!(
                        "generator {i} has a coefficient of length {} (n = {n})",
                        t.vector.dim()
                    )));
                }
                if t.lambda_power < -(s as i64) {
                    return Err(ExtsolError::Malformed(format!(
                        "generator {i} has power {} below -s = {}",
                        t.lambda_power,
                        -(s as i64)
                    )));
                }
            }
            gens.push(g.truncate(k as i64));
        }
        Ok(GradedModel { n, s, k, generators: gens })
    }

    /// `span{lambda^j g : j >= 0}` for the given generators.
    pub fn lambda_closure(n: usize, s: usize, k: usize, generators: &[LaurentVector]) -> Result<Self, ExtsolError> {
        let mut all = Vec::new();
        for g in generators {
            let Some(lo) = g.min_power() else { continue };
            for j in 0..(k as i64 - lo).max(0) {
                all.push(g.shift(j));
            }
        }
        GradedModel::new(n, s, k, all)
    }

    /// `H_+` itself.
    pub fn hplus(n: usize) -> Self {
        let gens = (0..n).map(|j| LaurentVector::monomial(0, PolyVector::basis(n, j))).collect();
        GradedModel { n, s: 0, k: 1, generators: gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn generators(&self) -> &[LaurentVector] {
        &self.generators
    }

    /// Same space written in the larger window `[-s2, k2-1]`, with the part of
    /// the tail below `lambda^k2` listed explicitly.
    pub fn widened(&self, s2: usize, k2: usize) -> Result<GradedModel, ExtsolError> {
        let mut gens = self.generators.clone();
        for p in self.k..k2 {
            for j in 0..self.n {
                gens.push(LaurentVector::monomial(p as i64, PolyVector::basis(self.n, j)));
            }
        }
        GradedModel::new(self.n, s2.max(self.s), k2.max(self.k), gens)
    }

    /// The window span as a bundle of rank `dim W / lambda^k H_+`.
    pub fn space(&self) -> Result<WindowSpace, ExtsolError> {
        let cols =
            self.generators.iter().map(|g| g.to_window(self.n, self.s, self.k)).collect::<Result<Vec<_>, _>>()?;
        let bundle = MeromorphicBundle::from_columns(self.window_dim(), &cols)?;
        Ok(WindowSpace { n: self.n, s: self.s, k: self.k, bundle })
    }

    pub fn window_dim(&self) -> usize {
        self.n * (self.s + self.k)
    }

    /// Equality as subspaces of `H^n`.
    pub fn span_eq(&self, other: &GradedModel) -> Result<bool, ExtsolError> {
        if self.n != other.n {
            return Ok(false);
        }
        let (s, k) = (self.s.max(other.s), self.k.max(other.k));
        let a = self.widened(s, k)?.space()?;
        let b = other.widened(s, k)?.space()?;
        Ok(a.bundle == b.bundle)
    }
}

/// Generic dimensions `d_i = dim p_i(W ∩ lambda^i H_+)` for `i = lo ..= lo + dims.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub lo: i64,
    pub dims: Vec<usize>,
}

impl std::fmt::Display for GradedDims {
    /// `d_-1..: 1,2,3`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
        write!(f, "d_{}..: {}", self.lo, d.join(","))
    }
}

impl GradedDims {
    pub fn to_flag_type(&self, n: usize) -> Result<FlagType, ExtsolError> {
        Ok(FlagType::from_window(n, self.lo, &self.dims)?)
    }
}

/// Window span of a model, with exact membership.
#[derive(Clone, Debug)]
pub struct WindowSpace {
    n: usize,
    s: usize,
    k: usize,
    bundle: MeromorphicBundle,
}

impl WindowSpace {
    pub fn bundle(&self) -> &MeromorphicBundle {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn contains(&self, v: &LaurentVector) -> Result<bool, ExtsolError> {
        let w = self.window_of(v)?;
        Ok(self.bundle.contains(&w)?)
    }

    /// Values of the annihilating covectors on `v`; all zero iff `v ∈ W`.
    pub fn residual(&self, v: &LaurentVector) -> Result<Vec<Poly>, ExtsolError> {
        let w = self.window_of(v)?;
        Ok(self
            .bundle
            .annihilator_frame()
            .iter()
            .map(|a| a.entries().iter().zip(w.entries()).fold(Poly::zero(), |acc, (x, y)| &acc + &(x * y)))
            .collect())
    }

    fn window_of(&self, v: &LaurentVector) -> Result<PolyVector, ExtsolError> {
        // powers below the window are never in W
        if v.min_power().is_some_and(|p| p < -(self.s as i64)) {
            return Err(ExtsolError::Malformed("vector reaches below the window".into()));
        }
        Ok(v.to_window(self.n, self.s, self.k)?)
    }

    /// Rank of the projection onto the first `blocks` powers.
    fn head_rank(&self, blocks: usize) -> usize {
        if blocks == 0 || self.bundle.is_zero() {
            return 0;
        }
        let f = self.bundle.frame_matrix();
        let rows: Vec<PolyVector> = (0..blocks * self.n).map(|r| f.row(r)).collect();
        generic_rank(&PolyMatrix::from_rows(f.cols(), &rows).expect("rows have frame width"))
    }

    /// `d_i` for `i = -s ..= k`; `d_k = n` because of the tail.
    pub fn graded_dims(&self) -> GradedDims {
        let blocks = self.s + self.k;
        let ranks: Vec<usize> = (0..=blocks).map(|b| self.head_rank(b)).collect();
        let mut dims: Vec<usize> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        dims.push(self.n);
        GradedDims { lo: -(self.s as i64), dims }
    }

    /// `A_i = p_i(W ∩ lambda^i H_+)` for `-s <= i < k`.
    pub fn piece(&self, i: i64) -> Result<MeromorphicBundle, ExtsolError> {
        let n = self.n;
        let b = (i + self.s as i64) as usize;
        let f = self.bundle.frame_matrix();
        let combos: Vec<PolyVector> = if b == 0 {
            (0..f.cols()).map(|j| PolyVector::basis(f.cols(), j)).collect()
        } else {
            let rows: Vec<PolyVector> = (0..b * n).map(|r| f.row(r)).collect();
            kernel_ff(&PolyMatrix::from_rows(f.cols(), &rows)?)?.columns()
        };
        let block = PolyMatrix::from_rows(f.cols(), &(b * n..(b + 1) * n).map(|r| f.row(r)).collect::<Vec<_>>())?;
        let cols = combos.iter().map(|c| block.mul_vec(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(MeromorphicBundle::from_columns(n, &cols)?)
    }
}

/// Type `(d_{-s}, ..., d_r)` read off `W`; fails when the dimensions do not
/// form a flag type straddling zero (e.g. `W` not in the `SU(n)` Grassmannian).
pub fn graded_type(w: &GradedModel) -> Result<FlagType, ExtsolError> {
    w.space()?.graded_dims().to_flag_type(w.n)
}

fn check_flag(flag: &HoloFlag, ft: &FlagType) -> Result<Vec<MeromorphicBundle>, ExtsolError> {
    if ft.is_trivial() {
        return Err(ExtsolError::Malformed("trivial flag type has no S^1-invariant model".into()));
    }
    let (s, r) = (ft.s() as i64, ft.r() as i64);
    if flag.lo != -s {
        return Err(ExtsolError::Malformed(format!("flag starts at {} but the type at {}", flag.lo, -s)));
    }
    let mut members = flag.members.clone();
    if members.len() == (s + r + 1) as usize && members.last().is_some_and(MeromorphicBundle::is_full) {
        members.pop();
    }
    if members.len() != (s + r) as usize {
        return Err(ExtsolError::LengthMismatch { expected: (s + r) as usize, got: members.len() });
    }
    for (idx, m) in members.iter().enumerate() {
        let i = -s + idx as i64;
        if m.n() != ft.n() || m.rank() != ft.d_at(i) {
            return Err(ExtsolError::RankMismatch { index: i, expected: ft.d_at(i), got: m.rank() });
        }
    }
    let mut full = members.clone();
    full.push(MeromorphicBundle::full(ft.n()));
    if !is_superhorizontal(&HoloFlag::new(-s, full))? {
        return Err(ExtsolError::NotSuperhorizontal);
    }
    Ok(members)
}

pub(crate) fn checked_members(flag: &HoloFlag, ft: &FlagType) -> Result<Vec<MeromorphicBundle>, ExtsolError> {
    check_flag(flag, ft)
}

/// `W = sum_i lambda^i A_i + lambda^r H_+` for a super-horizontal flag of type `ft`.
pub fn s1_invariant_model(flag: &HoloFlag, ft: &FlagType) -> Result<GradedModel, ExtsolError> {
    let members = check_flag(flag, ft)?;
    let lo = -(ft.s() as i64);
    let gens = members
        .iter()
        .enumerate()
        .flat_map(|(idx, a)| a.frame().iter().map(move |c| LaurentVector::monomial(lo + idx as i64, c.clone())))
        .collect();
    GradedModel::new(ft.n(), ft.s(), ft.r(), gens)
}

/// The `S^1`-invariant model with the same pieces `A_i = p_i(W ∩ lambda^i H_+)`.
pub fn u_xi(w: &GradedModel) -> Result<GradedModel, ExtsolError> {
    let space = w.space()?;
    let mut gens = Vec::new();
    for i in -(w.s as i64)..w.k as i64 {
        let a = space.piece(i)?;
        gens.extend(a.frame().iter().map(|c| LaurentVector::monomial(i, c.clone())));
    }
    GradedModel::new(w.n, w.s, w.k, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Term;

    fn v(e: &[&[i64]]) -> PolyVector {
        PolyVector::from_int_coeffs(e)
    }

    #[test]
    fn hplus_has_trivial_type() {
        let w = GradedModel::hplus(3);
        assert_eq!(graded_type(&w).unwrap(), FlagType::trivial(3));
        assert_eq!(u_xi(&w).unwrap(), w);
    }

    #[test]
    fn line_plus_hplus() {
        // lambda^{-1} L + L + lambda H_+ with L = span{e_1}
        let e1 = PolyVector::basis(2, 0);
        let w = GradedModel::lambda_closure(2, 1, 1, &[LaurentVector::monomial(-1, e1.clone())]).unwrap();
        assert_eq!(w.generators().len(), 2);
        let sp = w.space().unwrap();
        assert_eq!(sp.graded_dims(), GradedDims { lo: -1, dims: vec![1, 1, 2] });
        assert!(sp.contains(&LaurentVector::monomial(0, e1.clone())).unwrap());
        assert!(!sp.contains(&LaurentVector::monomial(0, PolyVector::basis(2, 1))).unwrap());
        assert!(sp.contains(&LaurentVector::monomial(5, PolyVector::basis(2, 1))).unwrap());
        let res = sp.residual(&LaurentVector::monomial(-1, PolyVector::basis(2, 1))).unwrap();
        assert!(res.iter().any(|p| !p.is_zero()));
        assert_eq!(graded_type(&w).unwrap(), FlagType::new(2, 1, 1, vec![1, 1, 2]).unwrap());
    }

    #[test]
    fn validation() {
        let g = LaurentVector::monomial(-2, v(&[&[1], &[]]));
        assert!(GradedModel::new(2, 1, 1, vec![g.clone()]).is_err());
        assert!(GradedModel::new(3, 2, 1, vec![g.clone()]).is_err());
        assert!(GradedModel::new(2, 2, 0, vec![g.clone()]).is_err());
        let m = GradedModel::new(2, 2, 1, vec![g.add(&LaurentVector::monomial(3, v(&[&[1], &[1]])))]).unwrap();
        assert_eq!(m.generators()[0].terms().len(), 1);
        let bad = LaurentVector::new([Term { lambda_power: 0, vector: v(&[&[1]]) }]);
        assert!(GradedModel::new(2, 0, 1, vec![bad]).is_err());
    }

    #[test]
    fn widening_keeps_the_space() {
        let e1 = PolyVector::basis(2, 0);
        let w = GradedModel::lambda_closure(2, 1, 1, &[LaurentVector::monomial(-1, e1)]).unwrap();
        let wide = w.widened(2, 3).unwrap();
        assert!(w.span_eq(&wide).unwrap());
        assert_eq!(graded_type(&wide).unwrap(), graded_type(&w).unwrap());
        assert!(!w.span_eq(&GradedModel::hplus(2)).unwrap());
    }

    #[test]
    fn pieces_of_a_twisted_model() {
        // W = span{lambda^{-1} (1, z) + (0, 1), (1, z)} + lambda H_+
        let s = v(&[&[1], &[0, 1]]);
        let g = LaurentVector::monomial(-1, s.clone()).add(&LaurentVector::monomial(0, v(&[&[], &[1]])));
        let w = GradedModel::new(2, 1, 1, vec![g, LaurentVector::monomial(0, s.clone())]).unwrap();
        let sp = w.space().unwrap();
        assert_eq!(sp.piece(-1).unwrap().rank(), 1);
        assert!(sp.piece(-1).unwrap().contains(&s).unwrap());
        assert_eq!(sp.piece(0).unwrap().rank(), 1);
        assert!(sp.piece(0).unwrap().contains(&s).unwrap());
        let u = u_xi(&w).unwrap();
        assert!(u.span_eq(&u_xi(&u).unwrap()).unwrap());
        assert!(!u.span_eq(&w).unwrap());
    }
}
