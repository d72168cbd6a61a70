//! Decomposition `φ = τ ∘ ψ + i ∘ χ ∘ p` of morphisms out of groups with no
//! vector-group factor, and the isomorphism criterion built on it.
//!
//! In a split presentation the torus `T` is the `Gm^m` factor of the domain
//! and `U` is the `Ga^n` factor of the codomain; `p` and `i` are the
//! corresponding projection and inclusion.

use crate::error::{Error, Result};
use crate::groups::GroupPresentation;
use crate::laurent::LaurentPoly;
use crate::morphisms::{translation, Homomorphism, VarietyMorphism};
use crate::retract::{retract, retract_general};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Translation of `H`.
    pub tau: VarietyMorphism,
    pub psi: Homomorphism,
    /// Pointed morphism `T → U`.
    pub chi: VarietyMorphism,
    /// `G → T`.
    pub p: Homomorphism,
    /// `U → H`.
    pub i: Homomorphism,
}

impl Decomposition {
    /// Completes `(τ, ψ, χ)` with the canonical `p` and `i`. Works for any
    /// domain, including ones with a vector-group factor.
    pub fn from_parts(tau: VarietyMorphism, psi: Homomorphism, chi: VarietyMorphism) -> Result<Self> {
        let (g, h) = (psi.domain().clone(), psi.codomain().clone());
        let p = Homomorphism::torus_projection(&g);
        let i = Homomorphism::unipotent_inclusion(&h);
        if tau.domain() != &h || tau.codomain() != &h || chi.domain() != p.codomain() || chi.codomain() != i.domain() {
            return Err(Error::SignatureMismatch("decomposition parts do not fit together".into()));
        }
        Ok(Decomposition { tau, psi, chi, p, i })
    }

    /// `i ∘ χ ∘ p: G → H`.
    pub fn torus_residue(&self) -> Result<VarietyMorphism> {
        self.i.as_morphism().compose(&self.chi)?.compose(self.p.as_morphism())
    }

    /// `τ ∘ ψ + i ∘ χ ∘ p`.
    pub fn recompose(&self) -> Result<VarietyMorphism> {
        self.tau.compose(self.psi.as_morphism())?.add(&self.torus_residue()?)
    }

    /// `ψ⁻¹ ∘ τ⁻¹ ∘ (id − i∘χ∘p∘ψ⁻¹∘τ⁻¹)`, the inverse of [`Self::recompose`]
    /// when `ψ` is a group isomorphism. Fails with [`Error::Singular`] otherwise.
    pub fn inverse(&self) -> Result<VarietyMorphism> {
        let h = self.psi.codomain();
        let psi_inv = self.psi.inverse()?;
        let p0 = self.tau.evaluate_at_identity();
        let tau_inv = translation(h, &p0.neg()?)?;
        let correction = self.torus_residue_of(&psi_inv)?.compose(&tau_inv)?;
        let inner = VarietyMorphism::identity(h).sub(&correction)?;
        psi_inv.as_morphism().compose(&tau_inv)?.compose(&inner)
    }

    /// `i ∘ χ ∘ p ∘ ψ⁻¹`.
    fn torus_residue_of(&self, psi_inv: &Homomorphism) -> Result<VarietyMorphism> {
        self.torus_residue()?.compose(psi_inv.as_morphism())
    }
}

pub fn decompose(phi: &VarietyMorphism) -> Result<Decomposition> {
    let g = phi.domain();
    if g.n != 0 {
        return Err(Error::UnipotentFactorInDomain(g.n));
    }
    let (tau, psi) = retract_general(phi)?;
    // χ_j(y) = φ_j(y) − φ_j(1), read on T = Gm^m (same ring as G when n = 0)
    let t = GroupPresentation::torus(g.m);
    let u = GroupPresentation::vector(phi.codomain().n);
    let chi_coords: Vec<LaurentPoly> = phi
        .u_coords()
        .iter()
        .map(|f| f.sub(&LaurentPoly::constant(0, g.m, f.value_at_identity())))
        .collect::<Result<_>>()?;
    let chi = VarietyMorphism::new(t, u, chi_coords, vec![], Default::default())?;
    let d = Decomposition::from_parts(tau, psi, chi)?;
    debug_assert!(d.recompose().is_ok_and(|r| &r == phi));
    Ok(d)
}

/// Recomputes `τ` from `φ(0)`, `ψ` by retraction, and `i∘χ∘p` as the residue
/// `τ⁻¹∘φ − ψ`, and compares each with `d`.
pub fn verify_uniqueness(phi: &VarietyMorphism, d: &Decomposition) -> bool {
    let check = || -> Result<bool> {
        let h = phi.codomain();
        let p0 = phi.evaluate_at_identity();
        let tau = translation(h, &p0)?;
        let normalized = translation(h, &p0.neg()?)?.compose(phi)?;
        let psi = retract(&normalized)?;
        let residue = normalized.sub(psi.as_morphism())?;
        Ok(tau == d.tau
            && psi == d.psi
            && d.p == Homomorphism::torus_projection(phi.domain())
            && d.i == Homomorphism::unipotent_inclusion(h)
            && d.chi.is_pointed()
            && residue == d.torus_residue()?
            && d.recompose()? == *phi)
    };
    check().unwrap_or(false)
}

#[derive(Debug, Clone)]
pub struct IsoVerdict {
    pub is_iso: bool,
    /// Present when the dimension vectors agree.
    pub decomposition: Option<Decomposition>,
    /// Verified two-sided inverse, present iff `is_iso`.
    pub inverse: Option<VarietyMorphism>,
}

/// `φ` is a variety isomorphism iff its homomorphism part `ψ` is a group
/// isomorphism. Needs a domain without vector-group factor.
pub fn is_variety_iso(phi: &VarietyMorphism) -> Result<IsoVerdict> {
    if phi.domain().n != 0 {
        return Err(Error::UnipotentFactorInDomain(phi.domain().n));
    }
    if phi.domain() != phi.codomain() {
        return Ok(IsoVerdict { is_iso: false, decomposition: None, inverse: None });
    }
    let d = decompose(phi)?;
    if !d.psi.is_group_iso() {
        return Ok(IsoVerdict { is_iso: false, decomposition: Some(d), inverse: None });
    }
    let inverse = d.inverse()?;
    if !check_mutual_inverse(phi, &inverse)? {
        return Err(Error::NotMutuallyInverse);
    }
    Ok(IsoVerdict { is_iso: true, decomposition: Some(d), inverse: Some(inverse) })
}

pub fn check_mutual_inverse(phi: &VarietyMorphism, other: &VarietyMorphism) -> Result<bool> {
    if phi.domain() != other.codomain() || phi.codomain() != other.domain() {
        return Err(Error::SignatureMismatch(format!(
            "{} -> {} and {} -> {} are not opposite",
            phi.domain(),
            phi.codomain(),
            other.domain(),
            other.codomain()
        )));
    }
    Ok(phi.compose(other)? == VarietyMorphism::identity(phi.codomain())
        && other.compose(phi)? == VarietyMorphism::identity(phi.domain()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferredIso {
    pub iso: Homomorphism,
    pub inverse: Homomorphism,
}

/// Group isomorphism induced by a variety isomorphism `φ` with inverse `φ'`.
///
/// `iso` is the retraction of `τ⁻¹∘φ`; `inverse` is the retraction of the
/// pointed inverse `φ'∘τ`.
pub fn transfer_iso(phi: &VarietyMorphism, phi_inv: &VarietyMorphism) -> Result<TransferredIso> {
    if !check_mutual_inverse(phi, phi_inv)? {
        return Err(Error::NotMutuallyInverse);
    }
    let (tau, pointed) = phi.pointed_normalize()?;
    let pointed_inv = phi_inv.compose(&tau)?;
    let iso = retract(&pointed)?;
    let inverse = retract(&pointed_inv)?;
    if iso.compose(&inverse)? != Homomorphism::identity(phi.codomain())
        || inverse.compose(&iso)? != Homomorphism::identity(phi.domain())
    {
        return Err(Error::NotMutuallyInverse);
    }
    Ok(TransferredIso { iso, inverse })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exact::{IntMatrix, Rat, RatMatrix};
    use crate::groups::BrickId;
    use crate::laurent::Unit;
    use crate::morphisms::{BrickBlock, FormalPointExpr, PointCombo};

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn affine(g: GroupPresentation, h: GroupPresentation, u: Vec<LaurentPoly>, t: Vec<Unit>) -> VarietyMorphism {
        VarietyMorphism::new(g, h, u, t, BTreeMap::new()).unwrap()
    }

    /// `Gm → Ga × Gm`, `y ↦ (y + 2, 3y²)`.
    fn torus_map() -> VarietyMorphism {
        let y = LaurentPoly::y(0, 1, 0);
        affine(
            GroupPresentation::torus(1),
            GroupPresentation::new(1, 1, []),
            vec![y.add(&LaurentPoly::constant(0, 1, r(2, 1))).unwrap()],
            vec![Unit::new(r(3, 1), vec![2]).unwrap()],
        )
    }

    #[test]
    fn torus_map_decomposition() {
        let phi = torus_map();
        let d = decompose(&phi).unwrap();
        let p0 = d.tau.evaluate_at_identity();
        assert_eq!((p0.u, p0.t), (vec![r(3, 1)], vec![r(3, 1)]));
        assert_eq!(d.psi.as_morphism().u_coords(), &[LaurentPoly::zero(0, 1)]);
        assert_eq!(d.psi.as_morphism().t_coords(), &[Unit::character(vec![2])]);
        assert_eq!(d.chi.u_coords(), &[LaurentPoly::y(0, 1, 0).sub(&LaurentPoly::one(0, 1)).unwrap()]);
        assert_eq!(d.recompose().unwrap(), phi);
        assert!(verify_uniqueness(&phi, &d));
        assert!(retract(&d.chi).unwrap().is_zero());
    }

    #[test]
    fn homomorphisms_decompose_trivially() {
        let g = GroupPresentation::new(0, 2, [(BrickId::new("E"), 1)]);
        let h = Homomorphism::scalar(&g, &r(3, 1)).unwrap();
        let d = decompose(h.as_morphism()).unwrap();
        assert_eq!(d.tau, VarietyMorphism::identity(&g));
        assert_eq!(d.psi, h);
        assert_eq!(d.chi, VarietyMorphism::zero(d.chi.domain(), d.chi.codomain()));
    }

    #[test]
    fn brick_domain_has_no_torus_residue() {
        let e = BrickId::new("E");
        let g = GroupPresentation::new(0, 0, [(e.clone(), 2)]);
        let h = GroupPresentation::new(1, 0, [(e.clone(), 1)]);
        let block = BrickBlock {
            matrix: IntMatrix::from_rows(&[vec![1, -1]]).unwrap(),
            translation: FormalPointExpr::zero(e.clone(), 1),
        };
        let phi = VarietyMorphism::new(g, h, vec![LaurentPoly::zero(0, 0)], vec![], [(e.clone(), block)].into()).unwrap();
        let d = decompose(&phi).unwrap();
        assert_eq!(d.tau, VarietyMorphism::identity(phi.codomain()));
        assert_eq!(d.psi.as_morphism(), &phi);
        assert!(d.chi.u_coords().iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn unipotent_domain_is_rejected() {
        let ga = GroupPresentation::vector(1);
        let phi = VarietyMorphism::identity(&ga);
        assert_eq!(decompose(&phi), Err(Error::UnipotentFactorInDomain(1)));
        assert!(matches!(is_variety_iso(&phi), Err(Error::UnipotentFactorInDomain(1))));
    }

    #[test]
    fn perturbed_decompositions_are_rejected() {
        let phi = torus_map();
        let d = decompose(&phi).unwrap();
        let mut bad = d.clone();
        let bump = Homomorphism::from_blocks(
            phi.domain(),
            phi.codomain(),
            &RatMatrix::zeros(1, 0),
            &IntMatrix::from_rows(&[vec![1]]).unwrap(),
            &BTreeMap::new(),
        )
        .unwrap();
        bad.psi = d.psi.add(&bump).unwrap();
        assert!(!verify_uniqueness(&phi, &bad));

        // every homomorphism T → U is zero, so shifting χ needs a non-homomorphism
        let (t, u) = (d.chi.domain().clone(), d.chi.codomain().clone());
        let only_hom = Homomorphism::from_blocks(&t, &u, &RatMatrix::zeros(1, 0), &IntMatrix::zeros(0, 1), &BTreeMap::new());
        assert!(only_hom.unwrap().is_zero());
        let y = LaurentPoly::y(0, 1, 0);
        let shift = affine(t, u, vec![y.pow(2).sub(&LaurentPoly::one(0, 1)).unwrap()], vec![]);
        let mut bad = d.clone();
        bad.chi = d.chi.add(&shift).unwrap();
        assert!(!verify_uniqueness(&phi, &bad));
    }

    #[test]
    fn iso_examples() {
        let gm = GroupPresentation::torus(1);
        let five = affine(gm.clone(), gm.clone(), vec![], vec![Unit::new(r(5, 1), vec![1]).unwrap()]);
        let v = is_variety_iso(&five).unwrap();
        assert!(v.is_iso);
        assert!(check_mutual_inverse(&five, v.inverse.as_ref().unwrap()).unwrap());

        let sq = affine(gm.clone(), gm.clone(), vec![], vec![Unit::character(vec![2])]);
        assert!(!is_variety_iso(&sq).unwrap().is_iso);

        // Gm² → Ga × Gm²: dimension vectors differ
        let gm2 = GroupPresentation::torus(2);
        let y1 = LaurentPoly::y(0, 2, 0);
        let wide = affine(
            gm2.clone(),
            GroupPresentation::new(1, 2, []),
            vec![y1.sub(&LaurentPoly::one(0, 2)).unwrap()],
            vec![Unit::character(vec![1, 1]), Unit::character(vec![0, 1])],
        );
        let v = is_variety_iso(&wide).unwrap();
        assert!(!v.is_iso && v.inverse.is_none());

        let phi = affine(
            gm2.clone(),
            gm2.clone(),
            vec![],
            vec![Unit::new(r(3, 1), vec![1, 1]).unwrap(), Unit::new(r(1, 2), vec![0, 1]).unwrap()],
        );
        let v = is_variety_iso(&phi).unwrap();
        assert!(v.is_iso);
        let inv = v.inverse.unwrap();
        let (_, inv_psi) = retract_general(&inv).unwrap();
        assert_eq!(inv_psi.torus_block(), IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]).unwrap());
        assert!(check_mutual_inverse(&phi, &inv).unwrap());
    }

    /// Exhausts the block maps `Ga² → Ga × Gm`: none is square, so no group
    /// isomorphism exists, matching `groups_isomorphic`.
    #[test]
    fn no_group_iso_between_different_dimension_vectors() {
        let g = GroupPresentation::vector(2);
        let h = GroupPresentation::new(1, 1, []);
        for a in -2..=2 {
            for b in -2..=2 {
                let u = RatMatrix::from_rows(&[vec![Rat::from(a), Rat::from(b)]]).unwrap();
                let hom = Homomorphism::from_blocks(&g, &h, &u, &IntMatrix::zeros(1, 0), &BTreeMap::new()).unwrap();
                assert!(!hom.is_group_iso());
            }
        }
        assert!(!crate::groups::groups_isomorphic(&g, &h));
    }

    #[test]
    fn inverse_assembly_handles_nonzero_residue() {
        // G = Ga × Gm, φ = (x + 2(y − 1) + 1/2, 3y): ψ = id, χ = 2(y − 1)
        let g = GroupPresentation::new(1, 1, []);
        let p0 = crate::morphisms::GroupPoint { u: vec![r(1, 2)], t: vec![r(3, 1)], bricks: vec![] };
        let tau = translation(&g, &p0).unwrap();
        let psi = Homomorphism::identity(&g);
        let chi = affine(
            GroupPresentation::torus(1),
            GroupPresentation::vector(1),
            vec![LaurentPoly::y(0, 1, 0).sub(&LaurentPoly::one(0, 1)).unwrap().scale(&r(2, 1))],
            vec![],
        );
        let d = Decomposition::from_parts(tau, psi, chi).unwrap();
        let phi = d.recompose().unwrap();
        let inv = d.inverse().unwrap();
        assert!(check_mutual_inverse(&phi, &inv).unwrap());
    }

    #[test]
    fn mutual_inverse_examples() {
        let ga2 = GroupPresentation::vector(2);
        let x1 = LaurentPoly::x(2, 0, 0);
        let x2 = LaurentPoly::x(2, 0, 1);
        let fwd = affine(ga2.clone(), ga2.clone(), vec![x1.add(&x2.pow(2)).unwrap(), x2.clone()], vec![]);
        let back = affine(ga2.clone(), ga2.clone(), vec![x1.sub(&x2.pow(2)).unwrap(), x2.clone()], vec![]);
        assert!(check_mutual_inverse(&fwd, &back).unwrap());
        let id = VarietyMorphism::identity(&ga2);
        assert!(check_mutual_inverse(&id, &id).unwrap());
        let ga = GroupPresentation::vector(1);
        let two = Homomorphism::scalar(&ga, &r(2, 1)).unwrap().into_morphism();
        let three = Homomorphism::scalar(&ga, &r(3, 1)).unwrap().into_morphism();
        assert!(!check_mutual_inverse(&two, &three).unwrap());
        assert!(check_mutual_inverse(&two, &id).is_err());

        let t = transfer_iso(&fwd, &back).unwrap();
        assert_eq!(t.iso, Homomorphism::identity(&ga2));
        assert_eq!(transfer_iso(&two, &three), Err(Error::NotMutuallyInverse));
    }

    #[test]
    fn transfer_examples() {
        let e = BrickId::new("E");
        let g = GroupPresentation::new(1, 1, [(e.clone(), 1)]);
        let p = crate::morphisms::GroupPoint {
            u: vec![r(4, 1)],
            t: vec![r(-2, 3)],
            bricks: vec![FormalPointExpr { brick: e, coords: vec![PointCombo::symbol("P")] }],
        };
        let tau = translation(&g, &p).unwrap();
        let tau_inv = translation(&g, &p.neg().unwrap()).unwrap();
        let t = transfer_iso(&tau, &tau_inv).unwrap();
        assert_eq!(t.iso, Homomorphism::identity(&g));

        let ga = GroupPresentation::vector(1);
        let h = Homomorphism::scalar(&ga, &r(2, 3)).unwrap();
        let h_inv = h.inverse().unwrap();
        let t = transfer_iso(h.as_morphism(), h_inv.as_morphism()).unwrap();
        assert_eq!(t.iso, h);
        assert_eq!(t.inverse, h_inv);
    }
}
