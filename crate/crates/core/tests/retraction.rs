use cag_core::random::{self, GroupShape, PolyShape};
use cag_core::{retract, GroupPresentation, Homomorphism, LaurentPoly, Rat, VarietyMorphism};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn small() -> GroupShape {
    GroupShape { max_n: 2, max_m: 2, max_bricks: 2, max_power: 2 }
}

fn shape() -> PolyShape {
    PolyShape { max_x_degree: 3, max_terms: 4, max_y_exp: 2 }
}

fn ga_map(u: LaurentPoly) -> VarietyMorphism {
    let ga = GroupPresentation::vector(1);
    VarietyMorphism::new(ga.clone(), ga, vec![u], vec![], Default::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homomorphisms_are_fixed(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random::presentation(&mut rng, GroupShape::default());
        let h = random::presentation(&mut rng, GroupShape::default());
        let hom = random::homomorphism(&mut rng, &g, &h);
        prop_assert_eq!(retract(hom.as_morphism()).unwrap(), hom);
    }

    #[test]
    fn functorial(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [a, b, c] = [(); 3].map(|_| random::presentation(&mut rng, small()));
        let g = random::pointed_morphism(&mut rng, &a, &b, shape());
        let f = random::pointed_morphism(&mut rng, &b, &c, shape());
        let lhs = retract(&f.compose(&g).unwrap()).unwrap();
        let rhs = retract(&f).unwrap().compose(&retract(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random::presentation(&mut rng, GroupShape::default());
        let h = random::presentation(&mut rng, GroupShape::default());
        let f1 = random::pointed_morphism(&mut rng, &g, &h, PolyShape::default());
        let f2 = random::pointed_morphism(&mut rng, &g, &h, PolyShape::default());
        let lhs = retract(&f1.add(&f2).unwrap()).unwrap();
        prop_assert_eq!(lhs, retract(&f1).unwrap().add(&retract(&f2).unwrap()).unwrap());
        prop_assert!(retract(&f1.negate()).unwrap() == retract(&f1).unwrap().negate());
    }

    #[test]
    fn pairing_and_projections(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [g, h1, h2] = [(); 3].map(|_| random::presentation(&mut rng, small()));
        let f1 = random::pointed_morphism(&mut rng, &g, &h1, shape());
        let f2 = random::pointed_morphism(&mut rng, &g, &h2, shape());
        let paired = f1.pairing(&f2).unwrap();
        let (r1, r2) = (retract(&f1).unwrap(), retract(&f2).unwrap());
        prop_assert_eq!(retract(&paired).unwrap().into_morphism(), r1.as_morphism().pairing(r2.as_morphism()).unwrap());
        let pr1 = Homomorphism::projection_first(&h1, &h2);
        let pr2 = Homomorphism::projection_second(&h1, &h2);
        prop_assert_eq!(retract(&pr1.as_morphism().compose(&paired).unwrap()).unwrap(), r1);
        prop_assert_eq!(retract(&pr2.as_morphism().compose(&paired).unwrap()).unwrap(), r2);
    }

    #[test]
    fn idempotent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random::presentation(&mut rng, GroupShape::default());
        let h = random::presentation(&mut rng, GroupShape::default());
        let f = random::pointed_morphism(&mut rng, &g, &h, PolyShape::default());
        let once = retract(&f).unwrap();
        prop_assert_eq!(retract(once.as_morphism()).unwrap(), once);
    }

    /// The vector block of the retraction is the Jacobian at the identity, as
    /// seen by the interpolation oracle.
    #[test]
    fn vector_block_matches_difference_quotients(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random::presentation(&mut rng, GroupShape::default());
        let h = random::presentation(&mut rng, GroupShape::default());
        let f = random::pointed_morphism(&mut rng, &g, &h, PolyShape::default());
        let block = retract(&f).unwrap().unipotent_block();
        let (x0, y0) = (vec![Rat::zero(); g.n], vec![Rat::one(); g.m]);
        for (r, u) in f.u_coords().iter().enumerate() {
            for c in 0..g.n {
                prop_assert_eq!(block.get(r, c), &cag_core::oracle::partial_x_at(u, c, &x0, &y0).unwrap());
            }
        }
    }
}

/// The forcing argument: `φ = c·x^k` commutes as `φ ∘ m₂ = m_{2^k} ∘ φ`, so a
/// functorial retraction `λ` must satisfy `2λ = 2^k λ`, hence `λ = 0`.
#[test]
fn monomial_collapse_by_conjugation() {
    let ga = GroupPresentation::vector(1);
    let x = LaurentPoly::x(1, 0, 0);
    for k in 2..=6u32 {
        for c in [Rat::one(), Rat::from(2), Rat::new(-3, 2).unwrap()] {
            let phi = ga_map(x.pow(k).scale(&c));
            let m2 = Homomorphism::scalar(&ga, &Rat::from(2)).unwrap();
            let m2k = Homomorphism::scalar(&ga, &Rat::from(2).pow(i64::from(k)).unwrap()).unwrap();
            assert_eq!(phi.compose(m2.as_morphism()).unwrap(), m2k.as_morphism().compose(&phi).unwrap());
            let lambda = retract(&phi).unwrap();
            assert_eq!(lambda.compose(&m2).unwrap(), m2k.compose(&lambda).unwrap());
            assert!(lambda.is_zero());
        }
    }
}

#[test]
fn linear_part_survives() {
    let x = LaurentPoly::x(1, 0, 0);
    let phi = ga_map(x.scale(&Rat::new(5, 7).unwrap()).add(&x.pow(3)).unwrap());
    let ga = GroupPresentation::vector(1);
    assert_eq!(retract(&phi).unwrap(), Homomorphism::scalar(&ga, &Rat::new(5, 7).unwrap()).unwrap());
}
