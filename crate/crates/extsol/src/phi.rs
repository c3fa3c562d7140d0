use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use lattice_core::Target;
use polyalg::{scalar_rank, ExactScalar};

use crate::{ExtsolError, GradedModel};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiOptions {
    pub tol: f64,
    /// Also require `phi^2 = I` (for models passing the involution check).
    pub involutive: bool,
}

impl Default for PhiOptions {
    fn default() -> Self {
        PhiOptions { tol: 1e-9, involutive: false }
    }
}

/// Orthonormal basis of `W(z0) ⊖ lambda W(z0)`; each column is a window
/// vector over the powers `-s ..= k`.
#[derive(Clone, Debug)]
pub struct UnitaryLoop {
    n: usize,
    s: usize,
    basis: Vec<DVector<Complex64>>,
    ev1_inv: DMatrix<Complex64>,
}

impl UnitaryLoop {
    fn ev(&self, lambda: Complex64) -> DMatrix<Complex64> {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        for (c, w) in self.basis.iter().enumerate() {
            let blocks = w.len() / n;
            for b in 0..blocks {
                let p = lambda.powi(b as i32 - self.s as i32);
                for i in 0..n {
                    m[(i, c)] += w[b * n + i] * p;
                }
            }
        }
        m
    }

    /// `gamma(lambda) = ev_lambda ∘ ev_1^{-1}`.
    pub fn gamma(&self, lambda: Complex64) -> DMatrix<Complex64> {
        self.ev(lambda) * &self.ev1_inv
    }
}

/// Numerical loop of `W` at `z0`: fails when the window frame drops rank there.
pub fn extract_loop(w: &GradedModel, z0: &ExactScalar) -> Result<UnitaryLoop, ExtsolError> {
    let n = w.n();
    let space = w.space()?;
    let frame = space.bundle().eval_frame(z0);
    let rank = space.rank();
    let got = scalar_rank(&frame);
    if got < rank {
        return Err(ExtsolError::RankDrop { z: z0.to_string(), expected: rank, got });
    }
    let big = w.window_dim() + n;
    let to_c = |col: &[ExactScalar], offset: usize| -> DVector<Complex64> {
        let mut v = DVector::zeros(big);
        for (i, x) in col.iter().enumerate() {
            v[offset + i] = x.to_complex64();
        }
        let norm = v.norm();
        if norm > 0.0 {
            v /= Complex64::new(norm, 0.0);
        }
        v
    };
    // S = W ∩ window = V + lambda^k C^n, and lambda V inside it
    let mut s_cols: Vec<DVector<Complex64>> = frame.iter().map(|c| to_c(c, 0)).collect();
    for j in 0..n {
        let mut e = DVector::zeros(big);
        e[w.window_dim() + j] = Complex64::new(1.0, 0.0);
        s_cols.push(e);
    }
    let lv_cols: Vec<DVector<Complex64>> = frame.iter().map(|c| to_c(c, n)).collect();

    // W ⊖ lambda W = Q1 x for x in the null space of Q2^* Q1
    let q1 = orthonormal(&s_cols);
    let m = q1.ncols();
    let basis_s = if lv_cols.is_empty() {
        q1
    } else {
        let q2 = orthonormal(&lv_cols);
        let c = (q2.adjoint() * &q1).adjoint();
        let full = orthonormal_completion(&c);
        &q1 * full.columns(c.ncols(), m - c.ncols())
    };
    if basis_s.ncols() != n {
        return Err(ExtsolError::RankDrop { z: z0.to_string(), expected: n, got: basis_s.ncols() });
    }
    let basis: Vec<DVector<Complex64>> = basis_s.column_iter().map(|c| c.into_owned()).collect();

    let mut lp = UnitaryLoop { n, s: w.s(), basis, ev1_inv: DMatrix::identity(n, n) };
    let ev1 = lp.ev(Complex64::new(1.0, 0.0));
    lp.ev1_inv = ev1.try_inverse().ok_or_else(|| ExtsolError::Tolerance {
        what: "ev_1 invertibility".into(),
        residual: f64::INFINITY,
        tol: 0.0,
    })?;
    Ok(lp)
}

fn orthonormal(cols: &[DVector<Complex64>]) -> DMatrix<Complex64> {
    DMatrix::from_columns(cols).qr().q()
}

/// Unitary matrix whose leading columns span the (full column rank) `c`.
fn orthonormal_completion(c: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let m = c.nrows();
    let mut a = DMatrix::zeros(m, c.ncols() + m);
    a.columns_mut(0, c.ncols()).copy_from(c);
    a.columns_mut(c.ncols(), m).fill_with_identity();
    a.qr().q()
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub phi: DMatrix<Complex64>,
    /// `||phi^* phi - I||_F`.
    pub unitarity: f64,
    /// `|det phi - 1|`.
    pub det: f64,
    /// `||phi^2 - I||_F`.
    pub involution: f64,
    /// `||gamma(1) - I||_F`.
    pub base_point: f64,
}

/// `phi = ev_{-1} ∘ ev_1^{-1}` on `W(z0) ⊖ lambda W(z0)`, with the residual
/// checks against `opts.tol`.
pub fn evaluate_phi(w: &GradedModel, z0: &ExactScalar, opts: &PhiOptions) -> Result<PhiReport, ExtsolError> {
    let lp = extract_loop(w, z0)?;
    let n = w.n();
    let id = DMatrix::<Complex64>::identity(n, n);
    let phi = lp.gamma(Complex64::new(-1.0, 0.0));
    let unitarity = (phi.adjoint() * &phi - &id).norm();
    let det = (phi.determinant() - Complex64::new(1.0, 0.0)).norm();
    let involution = (&phi * &phi - &id).norm();
    let base_point = (lp.gamma(Complex64::new(1.0, 0.0)) - &id).norm();
    let mut checks = vec![("unitarity", unitarity), ("determinant", det), ("gamma(1) = I", base_point)];
    if opts.involutive {
        checks.push(("phi^2 = I", involution));
    }
    for (what, residual) in checks {
        if residual.is_nan() || residual >= opts.tol {
            return Err(ExtsolError::Tolerance { what: what.into(), residual, tol: opts.tol });
        }
    }
    Ok(PhiReport { phi, unitarity, det, involution, base_point })
}

/// Dimension of the `+1`-eigenspace of an involution, from its trace.
pub fn plus_eigenspace_dim(phi: &DMatrix<Complex64>) -> usize {
    let n = phi.nrows() as f64;
    ((phi.trace().re + n) / 2.0).round().max(0.0) as usize
}

/// Whether a `+1`-eigenspace of dimension `plus` (out of `n`) lies in `target`;
/// `phi` and `-phi` give the same Grassmannian up to complement.
pub fn matches_target(plus: usize, n: usize, target: &Target) -> bool {
    match *target {
        Target::Point => plus == 0 || plus == n,
        Target::Grassmannian { k, n: m } => m == n && (plus == k || plus + k == n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LaurentVector;
    use polyalg::PolyVector;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn hplus_gives_identity() {
        let r = evaluate_phi(&GradedModel::hplus(3), &ExactScalar::from_ratio(1, 2), &PhiOptions::default()).unwrap();
        assert!((r.phi - DMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn line_reflection() {
        // lambda^{-1} A + A + lambda H_+ with A = span{e_1}: gamma = lambda^{-1} pi_A + lambda pi_A^perp
        let e1 = PolyVector::basis(2, 0);
        let w = GradedModel::lambda_closure(2, 1, 1, &[LaurentVector::monomial(-1, e1)]).unwrap();
        let opts = PhiOptions { tol: 1e-9, involutive: true };
        let r = evaluate_phi(&w, &ExactScalar::from_int(3), &opts).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[c(-1.0), c(0.0), c(0.0), c(-1.0)]);
        assert!((&r.phi - expect).norm() < 1e-12, "{}", r.phi);
        let lp = extract_loop(&w, &ExactScalar::from_int(3)).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let g = lp.gamma(i);
        let expect = DMatrix::from_row_slice(2, 2, &[i.inv(), c(0.0), c(0.0), i]);
        assert!((g - expect).norm() < 1e-12);
    }

    #[test]
    fn moving_line_is_unitary() {
        // lambda^{-1} L + L + lambda H_+ with L = span{(1, z)}
        let s = PolyVector::from_int_coeffs(&[&[1], &[0, 1]]);
        let w = GradedModel::lambda_closure(2, 1, 1, &[LaurentVector::monomial(-1, s)]).unwrap();
        for z in [ExactScalar::from_ratio(1, 3), ExactScalar::from_int(-2)] {
            let r = evaluate_phi(&w, &z, &PhiOptions::default()).unwrap();
            assert!(r.unitarity < 1e-12 && r.det < 1e-12);
        }
    }

    #[test]
    fn removable_zero_of_a_generator() {
        // lambda^{-1} (z, 0) spans the same bundle as lambda^{-1} e_1, so z = 0 is harmless
        let s = PolyVector::from_int_coeffs(&[&[0, 1], &[]]);
        let w = GradedModel::lambda_closure(2, 1, 1, &[LaurentVector::monomial(-1, s)]).unwrap();
        let r = evaluate_phi(&w, &ExactScalar::from_int(0), &PhiOptions::default()).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[c(-1.0), c(0.0), c(0.0), c(-1.0)]);
        assert!((r.phi - expect).norm() < 1e-12);
    }

    #[test]
    fn non_su_model_fails_the_determinant() {
        // lambda^{-1} L + H_+ has det gamma = lambda^{-1}
        let e1 = PolyVector::basis(2, 0);
        let w = GradedModel::new(
            2,
            1,
            1,
            vec![
                LaurentVector::monomial(-1, e1.clone()),
                LaurentVector::monomial(0, e1),
                LaurentVector::monomial(0, PolyVector::basis(2, 1)),
            ],
        )
        .unwrap();
        let err = evaluate_phi(&w, &ExactScalar::from_int(1), &PhiOptions::default()).unwrap_err();
        assert!(matches!(err, ExtsolError::Tolerance { ref what, .. } if what == "determinant"));
    }

    #[test]
    fn eigenspace_count() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(-1.0), c(1.0)]));
        assert_eq!(plus_eigenspace_dim(&m), 2);
        assert!(matches_target(2, 3, &Target::Grassmannian { k: 1, n: 3 }));
        assert!(!matches_target(2, 4, &Target::Grassmannian { k: 1, n: 4 }));
        assert!(matches_target(0, 4, &Target::Point));
    }
}
