//! Which groups have only "affine" variety automorphisms (a group
//! automorphism followed by a translation), and explicit witnesses for the
//! ones that do not.
//!
//! Within split presentations `Ga^n × Gm^m × bricks` the answer depends on
//! `(n, m)` only: rigid iff `n = 0`, or `n = 1` and `m = 0`. The verdict is
//! complete only for the split class; non-split antiaffine groups are not
//! representable here.

use crate::error::{Error, Result};
use crate::groups::GroupPresentation;
use crate::laurent::LaurentPoly;
use crate::morphisms::{Homomorphism, VarietyMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigidityReason {
    Antiaffine,
    Semiabelian,
    GaTimesAntiaffineSemiabelian,
    NotRigid,
}

impl RigidityReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RigidityReason::Antiaffine => "antiaffine",
            RigidityReason::Semiabelian => "semiabelian",
            RigidityReason::GaTimesAntiaffineSemiabelian => "Ga_times_antiaffine_semiabelian",
            RigidityReason::NotRigid => "not_rigid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub reason: RigidityReason,
    /// Pointed variety automorphism that is not a homomorphism; present iff
    /// not rigid.
    pub counterexample: Option<VarietyMorphism>,
    /// Its inverse.
    pub counterexample_inverse: Option<VarietyMorphism>,
}

pub fn classify_rigidity(g: &GroupPresentation) -> RigidityVerdict {
    let reason = match (g.n, g.m) {
        (0, 0) => RigidityReason::Antiaffine,
        (0, _) => RigidityReason::Semiabelian,
        (1, 0) => RigidityReason::GaTimesAntiaffineSemiabelian,
        _ => RigidityReason::NotRigid,
    };
    if reason != RigidityReason::NotRigid {
        return RigidityVerdict { rigid: true, reason, counterexample: None, counterexample_inverse: None };
    }
    let (fwd, inv) = counterexample_pair(g);
    RigidityVerdict { rigid: false, reason, counterexample: Some(fwd), counterexample_inverse: Some(inv) }
}

pub fn synthesize_counterexample(g: &GroupPresentation) -> Result<VarietyMorphism> {
    classify_rigidity(g).counterexample.ok_or(Error::GroupIsRigid)
}

/// `id + i∘f∘p` and `id − i∘f∘p`, where `f` is `x₂²` (for `n ≥ 2`) or
/// `y₁ − 1` (for `n = 1`, `m ≥ 1`), placed in the first vector coordinate.
fn counterexample_pair(g: &GroupPresentation) -> (VarietyMorphism, VarietyMorphism) {
    let (n, m) = (g.n, g.m);
    let bump = if n >= 2 {
        LaurentPoly::x(n, m, 1).pow(2)
    } else {
        LaurentPoly::y(n, m, 0).sub(&LaurentPoly::one(n, m)).expect("same ring")
    };
    let id = Homomorphism::identity(g).into_morphism();
    let build = |shift: &LaurentPoly| {
        let mut u = id.u_coords().to_vec();
        u[0] = u[0].add(shift).expect("same ring");
        VarietyMorphism::new(g.clone(), g.clone(), u, id.t_coords().to_vec(), id.brick_blocks().clone())
            .expect("counterexample is a valid morphism")
    };
    (build(&bump), build(&bump.neg()))
}
