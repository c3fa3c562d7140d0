use rand::Rng;
use serde::{Deserialize, Serialize};

use polyalg::{ddz, kernel_ff, random_poly_vector_with, ExactScalar, Poly, PolyMatrix, PolyVector};

use crate::BundleError;

/// Subbundle of the trivial rank-`n` bundle. `frame` is a minimal polynomial
/// basis of the polynomial sections and `ann` one of the polynomial covectors
/// vanishing on them, so membership is `ann · v = 0`.
#[derive(Clone, Debug)]
pub struct MeromorphicBundle {
    n: usize,
    frame: Vec<PolyVector>,
    ann: Vec<PolyVector>,
}

impl PartialEq for MeromorphicBundle {
    /// Equality of subbundles, not of frames.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.rank() == other.rank()
            && other.frame.iter().all(|v| self.contains(v).unwrap_or(false))
    }
}

fn dot(w: &PolyVector, v: &PolyVector) -> Poly {
    w.entries().iter().zip(v.entries()).fold(Poly::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Minimal basis of `{ v : w · v = 0 for all rows w }`.
fn orthogonal(n: usize, rows: &[PolyVector]) -> Result<Vec<PolyVector>, BundleError> {
    if rows.iter().all(PolyVector::is_zero) {
        return Ok((0..n).map(|j| PolyVector::basis(n, j)).collect());
    }
    Ok(kernel_ff(&PolyMatrix::from_rows(n, rows)?)?.columns())
}

impl MeromorphicBundle {
    /// Bundle spanned by `cols`; the stored frame is a minimal basis of the span.
    pub fn from_columns(n: usize, cols: &[PolyVector]) -> Result<Self, BundleError> {
        for v in cols {
            v.check_dim(n)?;
        }
        let ann = orthogonal(n, cols)?;
        MeromorphicBundle::from_annihilator(n, &ann)
    }

    /// Bundle of vectors killed by every row of `rows`.
    pub fn from_annihilator(n: usize, rows: &[PolyVector]) -> Result<Self, BundleError> {
        for v in rows {
            v.check_dim(n)?;
        }
        let frame = orthogonal(n, rows)?;
        let ann = if frame.is_empty() { orthogonal(n, &[])? } else { orthogonal(n, &frame)? };
        Ok(MeromorphicBundle { n, frame, ann })
    }

    pub fn zero(n: usize) -> Self {
        MeromorphicBundle { n, frame: Vec::new(), ann: (0..n).map(|j| PolyVector::basis(n, j)).collect() }
    }

    pub fn full(n: usize) -> Self {
        MeromorphicBundle { n, frame: (0..n).map(|j| PolyVector::basis(n, j)).collect(), ann: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[PolyVector] {
        &self.frame
    }

    /// Minimal basis of the annihilating covectors.
    pub fn annihilator_frame(&self) -> &[PolyVector] {
        &self.ann
    }

    pub fn frame_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.n, &self.frame).expect("frame columns have length n")
    }

    pub fn is_zero(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.n
    }

    pub fn contains(&self, v: &PolyVector) -> Result<bool, BundleError> {
        v.check_dim(self.n)?;
        Ok(self.ann.iter().all(|w| dot(w, v).is_zero()))
    }

    pub fn contains_bundle(&self, other: &MeromorphicBundle) -> Result<bool, BundleError> {
        for v in &other.frame {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self + span(cols)`.
    pub fn extend(&self, cols: &[PolyVector]) -> Result<MeromorphicBundle, BundleError> {
        let mut all = self.frame.clone();
        all.extend(cols.iter().cloned());
        MeromorphicBundle::from_columns(self.n, &all)
    }

    /// Whether the frame columns have zero derivative.
    pub fn has_constant_frame(&self) -> bool {
        self.frame.iter().all(PolyVector::is_constant)
    }

    /// Random section `sum c_j(z) frame_j` with coefficient polynomials of degree `deg`.
    pub fn random_section<R: Rng + ?Sized>(&self, rng: &mut R, deg: usize) -> PolyVector {
        let c = random_poly_vector_with(rng, self.rank(), deg);
        let mut v = PolyVector::zero(self.n);
        for (f, col) in c.entries().iter().zip(&self.frame) {
            v = &v + &col.scale(f);
        }
        v
    }

    /// Frame evaluated at `z`, as scalar columns.
    pub fn eval_frame(&self, z: &ExactScalar) -> Vec<Vec<ExactScalar>> {
        self.frame.iter().map(|v| v.eval(z)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RawBundle {
    n: usize,
    frame: Vec<Vec<Poly>>,
}

impl Serialize for MeromorphicBundle {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RawBundle { n: self.n, frame: self.frame.iter().map(|v| v.0.clone()).collect() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MeromorphicBundle {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawBundle::deserialize(de)?;
        let cols: Vec<PolyVector> = raw.frame.into_iter().map(PolyVector).collect();
        if let Some(v) = cols.iter().find(|v| v.dim() != raw.n) {
            return Err(serde::de::Error::custom(format!("column of length {} in rank-{} bundle", v.dim(), raw.n)));
        }
        let b = MeromorphicBundle::from_columns(raw.n, &cols).map_err(serde::de::Error::custom)?;
        if b.rank() != cols.len() {
            return Err(serde::de::Error::custom("frame columns are dependent"));
        }
        Ok(b)
    }
}

/// `E^(i)`: span of the frame and its first `i` derivatives.
pub fn osculate_up(e: &MeromorphicBundle, i: usize) -> Result<MeromorphicBundle, BundleError> {
    let mut cur = e.clone();
    for _ in 0..i {
        let derivs: Vec<PolyVector> = cur.frame.iter().map(ddz).collect();
        if derivs.iter().all(|v| cur.contains(v).unwrap_or(false)) {
            // closed under d/dz, so constant from here on
            break;
        }
        cur = cur.extend(&derivs)?;
    }
    Ok(cur)
}

/// `E^(-i)`: sections whose first `i` derivatives stay in `E`. If `A s = 0`
/// then `A s^(l) = 0` for `l <= i` exactly when `A^(l) s = 0` for `l <= i`, so
/// `E^(-i)` is the kernel of `[A; A'; ...; A^(i)]`.
pub fn osculate_down(e: &MeromorphicBundle, i: usize) -> Result<MeromorphicBundle, BundleError> {
    if i == 0 || e.is_zero() || e.ann.iter().all(PolyVector::is_constant) {
        return Ok(e.clone());
    }
    let mut rows = e.ann.clone();
    let mut cur = e.ann.clone();
    for _ in 0..i {
        cur = cur.iter().map(ddz).collect();
        rows.extend(cur.iter().filter(|v| !v.is_zero()).cloned());
    }
    MeromorphicBundle::from_annihilator(e.n, &rows)
}

/// `E^(t)` for any integer `t`, going down for negative `t`.
pub(crate) fn osculate(e: &MeromorphicBundle, t: i64) -> Result<MeromorphicBundle, BundleError> {
    if t >= 0 {
        osculate_up(e, t as usize)
    } else {
        osculate_down(e, t.unsigned_abs() as usize)
    }
}

/// Annihilator `{ w : w^T v = 0 for v in E }`, as a subbundle of the dual
/// trivial bundle. Reverses inclusions and preserves `g`.
pub fn annihilator(e: &MeromorphicBundle) -> Result<MeromorphicBundle, BundleError> {
    Ok(MeromorphicBundle { n: e.n, frame: e.ann.clone(), ann: e.frame.clone() })
}

/// `g = rank E^(1) - rank E` and `rank E = q g + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsculationStats {
    pub g: usize,
    pub q: usize,
    pub r: usize,
}

/// For constant bundles (`g = 0`) the division is undefined; we report `q = 0, r = rank`.
pub fn osculation_stats(e: &MeromorphicBundle) -> Result<OsculationStats, BundleError> {
    let g = osculate_up(e, 1)?.rank() - e.rank();
    let rank = e.rank();
    Ok(if g == 0 { OsculationStats { g, q: 0, r: rank } } else { OsculationStats { g, q: rank / g, r: rank % g } })
}

/// Random rank-`k` subbundle of `b` (retrying on dependent draws is the caller's job).
pub(crate) fn random_subbundle<R: Rng + ?Sized>(
    b: &MeromorphicBundle,
    k: usize,
    rng: &mut R,
    deg: usize,
) -> Result<Option<MeromorphicBundle>, BundleError> {
    let cols: Vec<PolyVector> = (0..k).map(|_| b.random_section(rng, deg)).collect();
    let s = MeromorphicBundle::from_columns(b.n, &cols)?;
    Ok((s.rank() == k).then_some(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> PolyVector {
        PolyVector::from_int_coeffs(&[&[1], &[0, 1], &[0, 0, 1]])
    }

    fn bundle(cols: &[PolyVector]) -> MeromorphicBundle {
        MeromorphicBundle::from_columns(cols[0].dim(), cols).unwrap()
    }

    #[test]
    fn osculate_up_examples() {
        let e = bundle(&[curve()]);
        let e1 = osculate_up(&e, 1).unwrap();
        assert_eq!(e1, bundle(&[curve(), ddz(&curve())]));
        assert_eq!(osculate_up(&e, 2).unwrap().rank(), 3);
        let c = bundle(&[PolyVector::basis(3, 0), PolyVector::basis(3, 2)]);
        assert_eq!(osculate_up(&c, 3).unwrap(), c);
    }

    #[test]
    fn osculate_down_examples() {
        let e = bundle(&[curve()]);
        assert!(osculate_down(&e, 1).unwrap().is_zero());
        let c = bundle(&[PolyVector::basis(3, 1)]);
        assert_eq!(osculate_down(&c, 2).unwrap(), c);
        let e = bundle(&[curve(), PolyVector::basis(3, 2)]);
        assert_eq!(osculate_down(&e, 1).unwrap(), bundle(&[PolyVector::basis(3, 2)]));
    }

    #[test]
    fn stats_examples() {
        let s = osculation_stats(&bundle(&[curve()])).unwrap();
        assert_eq!(s, OsculationStats { g: 1, q: 1, r: 0 });
        let c = bundle(&[PolyVector::basis(3, 0), PolyVector::basis(3, 1)]);
        assert_eq!(osculation_stats(&c).unwrap(), OsculationStats { g: 0, q: 0, r: 2 });
        let e = bundle(&[curve(), PolyVector::basis(3, 2)]);
        assert_eq!(osculation_stats(&e).unwrap(), OsculationStats { g: 1, q: 2, r: 0 });
    }

    #[test]
    fn frames_are_reduced() {
        let e = bundle(&[curve(), curve().scale(&Poly::z()), PolyVector::basis(3, 2)]);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&curve().scale(&Poly::from_ints(&[3, 0, 1]))).unwrap());
        assert!(MeromorphicBundle::zero(3).is_zero());
        assert!(MeromorphicBundle::full(3).is_full());
    }

    #[test]
    fn json_round_trip() {
        let e = bundle(&[curve(), PolyVector::basis(3, 2)]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"n":3,"frame":[[[],[],["1"]],[["1"],["0","1"],[]]]}"#);
        let back: MeromorphicBundle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.frame(), e.frame());
        assert!(serde_json::from_str::<MeromorphicBundle>(r#"{"n":2,"frame":[[["1"]]]}"#).is_err());
        assert!(serde_json::from_str::<MeromorphicBundle>(r#"{"n":2,"frame":[[["1"],[]],[["2"],[]]]}"#).is_err());
    }
}
