//! Exact computation with variety morphisms between connected commutative
//! algebraic groups over ℚ in split presentation
//! `Ga^n × Gm^m × ∏ A_i^{k_i}`.
//!
//! The abelian factors `A_i` ("bricks") are formal: `End(A_i) = ℤ` and there
//! are no homomorphisms between distinct bricks. Over this class every
//! morphism of varieties has a finite exact description:
//!
//! - coordinates into `Ga` are Laurent polynomials in `x_1..x_n, y_1^±..y_m^±`,
//! - coordinates into `Gm` are units `c·y^α`,
//! - coordinates into a brick power are an integer matrix plus a formal
//!   translation point.
//!
//! On top of that representation the crate computes the homomorphism
//! retraction of pointed morphisms ([`retract`]), the translation /
//! homomorphism / torus-to-unipotent decomposition of morphisms out of groups
//! without a vector-group factor ([`decompose`]), and the rigidity verdict
//! with explicit counterexamples ([`rigidity`]).

pub mod decompose;
pub mod error;
pub mod exact;
pub mod groups;
pub mod laurent;
pub mod morphisms;
pub mod oracle;
pub mod random;
pub mod retract;
pub mod rigidity;

pub use decompose::{
    check_mutual_inverse, decompose, is_variety_iso, transfer_iso, verify_uniqueness,
    Decomposition, IsoVerdict, TransferredIso,
};
pub use error::{Error, Result, Violation};
pub use exact::{IntMatrix, Rat, RatMatrix};
pub use groups::{BrickId, GroupPresentation, Predicates, StructuralParts};
pub use laurent::{LaurentPoly, Monomial, Unit};
pub use morphisms::{
    BrickBlock, FormalPointExpr, GroupPoint, Homomorphism, PointCombo, PointRegistry,
    RawMorphism, VarietyMorphism,
};
pub use retract::{retract, retract_general};
pub use rigidity::{classify_rigidity, synthesize_counterexample, RigidityReason, RigidityVerdict};
