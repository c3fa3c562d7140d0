use serde::{Deserialize, Serialize};

use lattice_core::{su_balance, FlagType};
use polyalg::Poly;

use crate::{ExtsolError, GradedDims, GradedModel, LaurentVector, WindowSpace};

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `tested` (derived from generator `generator`) is not in `W`; `residual`
    /// lists the non-vanishing values of the annihilating covectors.
    Membership { generator: usize, tested: LaurentVector, residual: Vec<Poly> },
    /// The graded dimensions do not satisfy the condition.
    Dimensions { dims: GradedDims, reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Self {
        Check { passed: true, witness: None }
    }

    pub fn fail(w: Witness) -> Self {
        Check { passed: false, witness: Some(w) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Also test invariance under `lambda -> -lambda`.
    pub involution: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lambda_module: Check,
    pub pseudo_horizontal: Check,
    /// `W_zbar ⊆ W` holds because generators are polynomial in `z`; never computed.
    pub holomorphic: bool,
    pub su_condition: Check,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Check>,
    pub graded_dims: GradedDims,
    pub graded_type: Option<FlagType>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }

    pub fn checks(&self) -> Vec<&Check> {
        let mut v = vec![&self.lambda_module, &self.pseudo_horizontal, &self.su_condition];
        v.extend(self.involution.as_ref());
        v
    }

    /// Names of failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, c) in [
            ("lambda_module", Some(&self.lambda_module)),
            ("pseudo_horizontal", Some(&self.pseudo_horizontal)),
            ("su_condition", Some(&self.su_condition)),
            ("involution", self.involution.as_ref()),
        ] {
            if c.is_some_and(|c| !c.passed) {
                out.push(name);
            }
        }
        out
    }
}

/// First generator whose image under `f` leaves `W`.
fn membership(
    space: &WindowSpace,
    gens: &[LaurentVector],
    f: impl Fn(&LaurentVector) -> LaurentVector,
) -> Result<Check, ExtsolError> {
    for (i, g) in gens.iter().enumerate() {
        let t = f(g);
        if !space.contains(&t)? {
            let residual = space.residual(&t)?.into_iter().filter(|p| !p.is_zero()).collect();
            return Ok(Check::fail(Witness::Membership { generator: i, tested: t, residual }));
        }
    }
    Ok(Check::pass())
}

/// Exact checks of Segal's equations and the `SU(n)` and involution conditions.
pub fn verify(w: &GradedModel, opts: &VerifyOptions) -> Result<VerificationReport, ExtsolError> {
    let space = w.space()?;
    let gens = w.generators();
    let lambda_module = membership(&space, gens, |g| g.shift(1))?;
    // d/dz g ∈ lambda^{-1} W
    let pseudo_horizontal = membership(&space, gens, |g| g.ddz().shift(1))?;
    let involution = if opts.involution { Some(membership(&space, gens, LaurentVector::flip)?) } else { None };

    let dims = space.graded_dims();
    let (graded_type, su_condition) = match dims.to_flag_type(w.n()) {
        Ok(ft) => {
            let c = if su_balance(&ft) {
                Check::pass()
            } else {
                Check::fail(Witness::Dimensions { dims: dims.clone(), reason: "unbalanced graded type".into() })
            };
            (Some(ft), c)
        }
        Err(e) => (None, Check::fail(Witness::Dimensions { dims: dims.clone(), reason: e.to_string() })),
    };
    Ok(VerificationReport {
        lambda_module,
        pseudo_horizontal,
        holomorphic: true,
        su_condition,
        involution,
        graded_dims: dims,
        graded_type,
    })
}
