use cag_core::random::{self, GroupShape, PolyShape};
use cag_core::{Homomorphism, VarietyMorphism};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn small() -> GroupShape {
    GroupShape { max_n: 2, max_m: 2, max_bricks: 2, max_power: 2 }
}

fn shape() -> PolyShape {
    PolyShape { max_x_degree: 2, max_terms: 3, max_y_exp: 2 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn identity_and_associativity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [a, b, c, d] = [(); 4].map(|_| random::presentation(&mut rng, small()));
        let f = random::morphism(&mut rng, &a, &b, shape());
        let g = random::morphism(&mut rng, &b, &c, shape());
        let h = random::morphism(&mut rng, &c, &d, shape());
        prop_assert_eq!(&VarietyMorphism::identity(&b).compose(&f).unwrap(), &f);
        prop_assert_eq!(&f.compose(&VarietyMorphism::identity(&a)).unwrap(), &f);
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_stays_valid(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [a, b, c] = [(); 3].map(|_| random::presentation(&mut rng, small()));
        let f = random::morphism(&mut rng, &a, &b, shape());
        let g = random::morphism(&mut rng, &b, &c, shape());
        let reg = random::standard_registry();
        let composed = g.compose(&f).unwrap();
        prop_assert_eq!(composed.to_raw().validate(Some(&reg)).unwrap(), composed.clone());
        prop_assert!(f.add(&f).unwrap().to_raw().validate(Some(&reg)).is_ok());
    }

    #[test]
    fn evaluation_respects_composition_and_addition(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [a, b, c] = [(); 3].map(|_| random::presentation(&mut rng, small()));
        let f = random::morphism(&mut rng, &a, &b, shape());
        let f2 = random::morphism(&mut rng, &a, &b, shape());
        let g = random::morphism(&mut rng, &b, &c, shape());
        let p = random::point(&mut rng, &a);
        let fp = f.evaluate(&p).unwrap();
        prop_assert_eq!(g.compose(&f).unwrap().evaluate(&p).unwrap(), g.evaluate(&fp).unwrap());
        let sum = f.add(&f2).unwrap().evaluate(&p).unwrap();
        let add = Homomorphism::addition(&b);
        let pair = VarietyMorphism::constant(&a, &b, &fp).unwrap().pairing(&f2).unwrap();
        prop_assert_eq!(sum, add.as_morphism().compose(&pair).unwrap().evaluate(&p).unwrap());
    }

    /// `h ∘ (f + g) = h∘f + h∘g` needs `h` to be a homomorphism;
    /// `(f + g) ∘ k = f∘k + g∘k` holds for any `k`.
    #[test]
    fn distributivity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let [a, b, c] = [(); 3].map(|_| random::presentation(&mut rng, small()));
        let f = random::morphism(&mut rng, &a, &b, shape());
        let g = random::morphism(&mut rng, &a, &b, shape());
        let h = random::homomorphism(&mut rng, &b, &c);
        let h = h.as_morphism();
        prop_assert_eq!(h.compose(&f.add(&g).unwrap()).unwrap(), h.compose(&f).unwrap().add(&h.compose(&g).unwrap()).unwrap());
        let k = random::morphism(&mut rng, &c, &a, shape());
        prop_assert_eq!(f.add(&g).unwrap().compose(&k).unwrap(), f.compose(&k).unwrap().add(&g.compose(&k).unwrap()).unwrap());
    }

    #[test]
    fn homomorphism_checks_agree(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random::presentation(&mut rng, small());
        let h = random::presentation(&mut rng, small());
        let hom = random::homomorphism(&mut rng, &g, &h);
        prop_assert!(hom.as_morphism().is_homomorphism() && hom.as_morphism().is_homomorphism_symbolic());
        let f = random::morphism(&mut rng, &g, &h, shape());
        prop_assert_eq!(f.is_homomorphism(), f.is_homomorphism_symbolic());
        prop_assert_eq!(Homomorphism::try_from(f.clone()).is_ok(), f.is_homomorphism());
    }

    #[test]
    fn addition_is_abelian(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random::presentation(&mut rng, small());
        let h = random::presentation(&mut rng, small());
        let [f1, f2, f3] = [(); 3].map(|_| random::morphism(&mut rng, &g, &h, shape()));
        prop_assert_eq!(f1.add(&f2).unwrap(), f2.add(&f1).unwrap());
        prop_assert_eq!(f1.add(&f2).unwrap().add(&f3).unwrap(), f1.add(&f2.add(&f3).unwrap()).unwrap());
        prop_assert_eq!(f1.sub(&f1).unwrap(), VarietyMorphism::zero(&g, &h));
    }
}
