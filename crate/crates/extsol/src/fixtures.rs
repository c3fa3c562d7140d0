//! Worked examples of extended solutions built from explicit frames.
//!
//! Each builder takes `holds`: with `true` the data satisfies the constraint
//! of its construction and the cell model is an extended solution; with
//! `false` one constraint is broken and pseudo-horizontality fails.

use lattice_core::{flag_type, FlagType, LatticeElement};
use polyalg::PolyVector;

use crate::{
    cell_model, frenet_generate, AdaptedFrame, ExtsolError, FrameVector, GradedModel, LaurentVector, Origin, Term,
    VerifyOptions,
};

#[derive(Clone, Debug)]
pub struct Recipe {
    pub name: &'static str,
    pub xi: LatticeElement,
    pub frame: AdaptedFrame,
    /// One entry per frame vector; ignored for derivative vectors.
    pub w: Vec<LaurentVector>,
    pub involutive: bool,
    pub holds: bool,
}

impl Recipe {
    pub fn flag_type(&self) -> FlagType {
        flag_type(&self.xi).expect("recipe elements are non-trivial")
    }

    /// `Psi gamma_xi H_+` for the frame and `w`.
    pub fn model(&self) -> Result<GradedModel, ExtsolError> {
        cell_model(&self.frame, &self.w)
    }

    /// Model generated by the Frenet frame of the same data.
    pub fn frenet_model(&self) -> Result<GradedModel, ExtsolError> {
        frenet_generate(&self.frame.frenet_frame(&self.w)?)
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { involution: self.involutive }
    }
}

fn v(e: &[&[i64]]) -> PolyVector {
    PolyVector::from_int_coeffs(e)
}

fn lv(terms: Vec<(i64, PolyVector)>) -> LaurentVector {
    LaurentVector::new(terms.into_iter().map(|(lambda_power, vector)| Term { lambda_power, vector }))
}

fn free(s: PolyVector, level: i64) -> FrameVector {
    FrameVector { s, level, origin: Origin::Free }
}

fn derived(frame: &[FrameVector], m: usize, level: i64) -> FrameVector {
    FrameVector { s: polyalg::ddz(&frame[m].s), level, origin: Origin::Derivative(m) }
}

fn recipe(
    name: &'static str,
    n: usize,
    coeffs: Vec<i64>,
    vectors: Vec<FrameVector>,
    w: Vec<LaurentVector>,
    involutive: bool,
    holds: bool,
) -> Recipe {
    let xi = LatticeElement::new(n, coeffs).expect("valid element");
    let ft = flag_type(&xi).expect("non-trivial");
    let frame = AdaptedFrame { n, s: ft.s(), r: ft.r(), vectors };
    Recipe { name, xi, frame, w, involutive, holds }
}

/// `SU(3)`, `H_1 + H_2`: a line `s_3` at `lambda^{-1}` with `A_0 = s_3^(1)`.
///
/// The violated version keeps a moving `s_3` but completes `A_0` by a free
/// constant vector, as if `s_3` were constant.
pub fn su3_xi1(holds: bool) -> Recipe {
    let s3 = v(&[&[1], &[0, 1], &[0, 0, 1]]);
    let mut frame = vec![free(s3, -1)];
    if holds {
        frame.push(derived(&frame, 0, 0));
    } else {
        frame.push(free(PolyVector::basis(3, 2), 0));
    }
    let w = vec![LaurentVector::monomial(0, v(&[&[], &[0, 0, 1], &[3]])), LaurentVector::zero()];
    recipe("SU(3) H1+H2", 3, vec![1, 1], frame, w, false, holds)
}

/// `SU(3)`, `3H_1`: constant `A = span{e_2, e_3}` and `w_j = a_j + lambda b_j`;
/// the first coordinate of each `a_j` must be constant.
pub fn su3_xi2(holds: bool) -> Recipe {
    let frame = vec![free(PolyVector::basis(3, 1), -1), free(PolyVector::basis(3, 2), -1)];
    let a2 = if holds { v(&[&[5], &[0, 0, 1], &[0, 1]]) } else { v(&[&[0, 1], &[0, 0, 1], &[0, 1]]) };
    let w2 = lv(vec![(0, a2), (1, v(&[&[0, 0, 0, 1], &[1], &[]]))]);
    let w3 = lv(vec![(0, v(&[&[-2], &[], &[0, 0, 0, 0, 1]])), (1, v(&[&[0, 1], &[0, 1], &[0, 1]]))]);
    recipe("SU(3) 3H1", 3, vec![3, 0], frame, vec![w2, w3], false, holds)
}

/// `SU(4)`, `H_1 + 2H_2 + H_3`: `s_1` at `lambda^{-2}`, `s_1'` at `lambda^{-1}`,
/// `s_3` at `lambda`, with `w_1 = a + lambda b + lambda^2 c` subject to
/// `a'' - g_1 a - g_2 a' ∈ span{s_1, s_1', s_3}` where `s_1'' = g_1 s_1 + g_2 s_1'`.
///
/// `variant` 0 uses `s_1 = (0, 0, 1, z)` (so `g = 0`), variant 1 uses
/// `s_1 = (0, 0, 1, z^2)` (so `g_2 = 1/z`).
pub fn su4_xi1(variant: usize, holds: bool) -> Recipe {
    let (s1, a) = match (variant, holds) {
        (0, true) => (v(&[&[], &[], &[1], &[0, 1]]), v(&[&[0, 0, 0, 1], &[0, 0, 3], &[0, 0, 0, 0, 1], &[5]])),
        (0, false) => (v(&[&[], &[], &[1], &[0, 1]]), v(&[&[0, 0, 1], &[], &[], &[]])),
        (_, true) => (v(&[&[], &[], &[1], &[0, 0, 1]]), v(&[&[0, 0, 0, 0, 3], &[0, 0, 0, 8], &[0, 1], &[1]])),
        (_, false) => (v(&[&[], &[], &[1], &[0, 0, 1]]), v(&[&[0, 0, 0, 1], &[], &[], &[]])),
    };
    let mut frame = vec![free(s1, -2)];
    frame.push(derived(&frame, 0, -1));
    frame.push(free(v(&[&[0, 1], &[1], &[], &[]]), 1));
    let w1 = lv(vec![(0, a), (1, v(&[&[1], &[0, 1], &[], &[2]])), (2, v(&[&[], &[7], &[0, 1], &[]]))]);
    let w = vec![w1, LaurentVector::zero(), LaurentVector::monomial(0, v(&[&[0, 1], &[], &[1], &[]]))];
    recipe("SU(4) H1+2H2+H3", 4, vec![1, 2, 1], frame, w, false, holds)
}

/// Symmetric `SU(4)`, `2H_1 + H_2`: lines `s_1, s_2` at `lambda^{-1}` whose
/// first osculating space `A_0 = A_1` must be constant, and odd `w_j = lambda c_j`.
pub fn su4_symmetric(holds: bool) -> Recipe {
    let (s1, s2) = if holds {
        (v(&[&[], &[1], &[0, 1], &[]]), v(&[&[], &[], &[1], &[0, 1]]))
    } else {
        (v(&[&[1], &[0, 1], &[], &[]]), v(&[&[], &[], &[1], &[0, 0, 1]]))
    };
    let mut frame = vec![free(s1, -1), free(s2, -1)];
    frame.push(derived(&frame, 0, 0));
    let w = vec![
        LaurentVector::monomial(1, v(&[&[0, 1], &[2], &[], &[1, 1]])),
        LaurentVector::monomial(1, v(&[&[3], &[], &[0, 0, 1], &[]])),
        LaurentVector::zero(),
    ];
    recipe("SU(4) 2H1+H2 (symmetric)", 4, vec![2, 1, 0], frame, w, true, holds)
}

/// Every recipe, in the given direction.
pub fn all(holds: bool) -> Vec<Recipe> {
    vec![su3_xi1(holds), su3_xi2(holds), su4_xi1(0, holds), su4_xi1(1, holds), su4_symmetric(holds)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{graded_type, verify, Witness};

    #[test]
    fn recipes_pass_when_constraints_hold() {
        for r in all(true) {
            let w = r.model().unwrap();
            let rep = verify(&w, &r.verify_options()).unwrap();
            assert!(rep.passed(), "{}: {:?}", r.name, rep.failures());
            assert_eq!(graded_type(&w).unwrap(), r.flag_type(), "{}", r.name);
            assert!(r.frenet_model().unwrap().span_eq(&w).unwrap(), "{}", r.name);
            r.frame.flag().unwrap();
        }
    }

    #[test]
    fn violations_fail_pseudo_horizontality() {
        for r in all(false) {
            let rep = verify(&r.model().unwrap(), &r.verify_options()).unwrap();
            assert!(rep.lambda_module.passed, "{}", r.name);
            assert!(!rep.pseudo_horizontal.passed, "{}", r.name);
            assert!(matches!(rep.pseudo_horizontal.witness, Some(Witness::Membership { .. })));
        }
    }
}
