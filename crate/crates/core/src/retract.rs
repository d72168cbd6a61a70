//! The homomorphism retraction of pointed variety morphisms.
//!
//! For a pointed `φ: G → H` the retraction is assembled blockwise:
//!
//! - vector part: the Jacobian `∂φ_u/∂x` at the neutral element `(x, y) = (0, 1)`;
//!   the dependence of `φ_u` on `y` is dropped, since there are no nonzero
//!   homomorphisms from a torus to a vector group,
//! - torus part: the character exponents of `φ_t` (coefficients are 1 when
//!   `φ` is pointed),
//! - brick part: the brick matrices, unchanged.
//!
//! This is a functor, additive, and the identity on homomorphisms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Rat, RatMatrix};
use crate::morphisms::{Homomorphism, VarietyMorphism};

/// Jacobian of the vector-group coordinates with respect to `x` at the
/// neutral element.
pub fn unipotent_jacobian(phi: &VarietyMorphism) -> RatMatrix {
    let n = phi.domain().n;
    let rows = phi.u_coords().len();
    let mut j = RatMatrix::zeros(rows, n);
    for (r, f) in phi.u_coords().iter().enumerate() {
        for i in 0..n {
            let d = f.partial_x(i).expect("index below domain rank");
            j.set(r, i, d.value_at_identity());
        }
    }
    j
}

pub fn retract(phi: &VarietyMorphism) -> Result<Homomorphism> {
    if !phi.is_pointed() {
        return Err(Error::NotPointed);
    }
    let unipotent = unipotent_jacobian(phi);
    debug_assert!(phi.t_coords().iter().all(|u| u.coeff() == &Rat::one()));
    let torus_rows: Vec<Vec<i64>> =
        phi.t_coords().iter().map(|u| u.exps().iter().map(|&e| i64::from(e)).collect()).collect();
    let torus = if torus_rows.is_empty() {
        crate::exact::IntMatrix::zeros(0, phi.domain().m)
    } else {
        crate::exact::IntMatrix::from_rows(&torus_rows)?
    };
    let bricks: BTreeMap<_, _> = phi.brick_blocks().iter().map(|(b, blk)| (b.clone(), blk.matrix.clone())).collect();
    Homomorphism::from_blocks(phi.domain(), phi.codomain(), &unipotent, &torus, &bricks)
}

/// `(τ, ψ)` with `τ` the translation by `φ(0)` and `ψ` the retraction of
/// `τ⁻¹ ∘ φ`.
pub fn retract_general(phi: &VarietyMorphism) -> Result<(VarietyMorphism, Homomorphism)> {
    let (tau, pointed) = phi.pointed_normalize()?;
    let psi = retract(&pointed)?;
    Ok((tau, psi))
}
