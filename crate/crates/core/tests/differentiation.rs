use cag_core::oracle::{partial_x_at, partial_y_at};
use cag_core::random::{self, PolyShape};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn partials_match_interpolated_difference_quotients(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let f = random::laurent(&mut rng, n, m, PolyShape { max_x_degree: 5, max_terms: 6, max_y_exp: 3 });
        for _ in 0..5 {
            let x: Vec<_> = (0..n).map(|_| random::rat(&mut rng)).collect();
            let y: Vec<_> = (0..m).map(|_| random::nonzero_rat(&mut rng)).collect();
            for i in 0..n {
                prop_assert_eq!(f.partial_x(i).unwrap().evaluate(&x, &y).unwrap(), partial_x_at(&f, i, &x, &y).unwrap());
            }
            for j in 0..m {
                prop_assert_eq!(f.partial_y(j).unwrap().evaluate(&x, &y).unwrap(), partial_y_at(&f, j, &x, &y).unwrap());
            }
        }
    }

    /// Product rule, checked symbolically.
    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let f = random::laurent(&mut rng, n, m, PolyShape::default());
        let g = random::laurent(&mut rng, n, m, PolyShape::default());
        let fg = f.mul(&g).unwrap();
        let dx = |p: &cag_core::LaurentPoly| p.partial_x(0).unwrap();
        let dy = |p: &cag_core::LaurentPoly| p.partial_y(0).unwrap();
        prop_assert_eq!(dx(&fg), dx(&f).mul(&g).unwrap().add(&f.mul(&dx(&g)).unwrap()).unwrap());
        prop_assert_eq!(dy(&fg), dy(&f).mul(&g).unwrap().add(&f.mul(&dy(&g)).unwrap()).unwrap());
    }
}
