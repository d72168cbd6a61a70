//! Seeded generators for presentations, points and morphisms, shared by the
//! property tests, the acceptance suite and the `selftest` command.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::decompose::Decomposition;
use crate::exact::{IntMatrix, Rat, RatMatrix};
use crate::groups::{BrickId, GroupPresentation};
use crate::laurent::{LaurentPoly, Monomial, Unit};
use crate::morphisms::{
    translation, BrickBlock, FormalPointExpr, GroupPoint, Homomorphism, PointCombo, PointRegistry, VarietyMorphism,
};

pub const BRICK_NAMES: [&str; 2] = ["E", "F"];
pub const POINT_NAMES: [&str; 2] = ["P", "Q"];

/// Registry declaring every [`POINT_NAMES`] symbol on every [`BRICK_NAMES`] brick.
pub fn standard_registry() -> PointRegistry {
    let mut reg = PointRegistry::new();
    for b in BRICK_NAMES {
        for p in POINT_NAMES {
            reg.declare(BrickId::new(b), p);
        }
    }
    reg
}

#[derive(Debug, Clone, Copy)]
pub struct PolyShape {
    pub max_x_degree: u32,
    pub max_terms: usize,
    pub max_y_exp: i32,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { max_x_degree: 4, max_terms: 6, max_y_exp: 2 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GroupShape {
    pub max_n: usize,
    pub max_m: usize,
    pub max_bricks: usize,
    pub max_power: usize,
}

impl Default for GroupShape {
    fn default() -> Self {
        GroupShape { max_n: 3, max_m: 3, max_bricks: 2, max_power: 2 }
    }
}

pub fn rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4)).expect("nonzero denominator")
}

pub fn nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let r = rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn presentation<R: Rng>(rng: &mut R, shape: GroupShape) -> GroupPresentation {
    let n = rng.gen_range(0..=shape.max_n);
    let m = rng.gen_range(0..=shape.max_m);
    let count = rng.gen_range(0..=shape.max_bricks.min(BRICK_NAMES.len()));
    let bricks = BRICK_NAMES[..count].iter().map(|b| (BrickId::new(*b), rng.gen_range(1..=shape.max_power)));
    GroupPresentation::new(n, m, bricks.collect::<Vec<_>>())
}

/// Same shape bound, but the domain has no vector-group factor.
pub fn semiabelian_presentation<R: Rng>(rng: &mut R, shape: GroupShape) -> GroupPresentation {
    let mut g = presentation(rng, shape);
    g.n = 0;
    g
}

pub fn laurent<R: Rng>(rng: &mut R, n: usize, m: usize, shape: PolyShape) -> LaurentPoly {
    let terms = rng.gen_range(0..=shape.max_terms);
    LaurentPoly::from_terms(
        n,
        m,
        (0..terms)
            .map(|_| {
                let mut budget = rng.gen_range(0..=shape.max_x_degree);
                let mut x_exps = vec![0u32; n];
                if n > 0 {
                    while budget > 0 {
                        x_exps[rng.gen_range(0..n)] += 1;
                        budget -= 1;
                    }
                }
                let y_exps = (0..m).map(|_| rng.gen_range(-shape.max_y_exp..=shape.max_y_exp)).collect();
                (Monomial { x_exps, y_exps }, rat(rng))
            })
            .collect::<Vec<_>>(),
    )
}

fn int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, entries).expect("entry count matches")
}

/// Product of random elementary matrices and row swaps.
pub fn unimodular<R: Rng>(rng: &mut R, k: usize) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    if k == 0 {
        return IntMatrix::identity(0);
    }
    for _ in 0..rng.gen_range(0..=3 * k) {
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        match rng.gen_range(0..3) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|v| *v = -*v),
            _ if i != j => {
                let c = rng.gen_range(-2i64..=2);
                let src = rows[j].clone();
                rows[i].iter_mut().zip(src).for_each(|(a, b)| *a += c * b);
            }
            _ => {}
        }
    }
    IntMatrix::from_rows(&rows).expect("square")
}

/// Invertible rational matrix `L·U` with nonzero diagonal entries.
pub fn invertible_rat<R: Rng>(rng: &mut R, k: usize) -> RatMatrix {
    let mut lower = RatMatrix::identity(k);
    let mut upper = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            if i > j {
                lower.set(i, j, rat(rng));
            } else if i == j {
                upper.set(i, j, nonzero_rat(rng));
            } else {
                upper.set(i, j, rat(rng));
            }
        }
    }
    lower.mul(&upper).expect("square")
}

fn point_combo<R: Rng>(rng: &mut R) -> PointCombo {
    PointCombo::from_terms(POINT_NAMES.iter().map(|p| (p.to_string(), BigInt::from(rng.gen_range(-2i64..=2)))))
}

pub fn point<R: Rng>(rng: &mut R, g: &GroupPresentation) -> GroupPoint {
    GroupPoint {
        u: (0..g.n).map(|_| rat(rng)).collect(),
        t: (0..g.m).map(|_| nonzero_rat(rng)).collect(),
        bricks: g
            .bricks()
            .iter()
            .map(|(b, &k)| FormalPointExpr { brick: b.clone(), coords: (0..k).map(|_| point_combo(rng)).collect() })
            .collect(),
    }
}

pub fn homomorphism<R: Rng>(rng: &mut R, g: &GroupPresentation, h: &GroupPresentation) -> Homomorphism {
    let mut u = RatMatrix::zeros(h.n, g.n);
    for r in 0..h.n {
        for c in 0..g.n {
            u.set(r, c, rat(rng));
        }
    }
    let t = int_matrix(rng, h.m, g.m, 3);
    let bricks: BTreeMap<_, _> = h
        .bricks()
        .iter()
        .map(|(b, &l)| (b.clone(), int_matrix(rng, l, g.brick_power(b), 3)))
        .collect();
    Homomorphism::from_blocks(g, h, &u, &t, &bricks).expect("block shapes match the presentations")
}

/// Pointed morphism: random Laurent polynomials shifted to vanish at the
/// identity, characters, and brick matrices without translation.
pub fn pointed_morphism<R: Rng>(
    rng: &mut R,
    g: &GroupPresentation,
    h: &GroupPresentation,
    shape: PolyShape,
) -> VarietyMorphism {
    let u = (0..h.n)
        .map(|_| {
            let f = laurent(rng, g.n, g.m, shape);
            f.sub(&LaurentPoly::constant(g.n, g.m, f.value_at_identity())).expect("same ring")
        })
        .collect();
    let t = (0..h.m)
        .map(|_| Unit::character((0..g.m).map(|_| rng.gen_range(-shape.max_y_exp..=shape.max_y_exp)).collect()))
        .collect();
    let blocks = h
        .bricks()
        .iter()
        .map(|(b, &l)| {
            (
                b.clone(),
                BrickBlock {
                    matrix: int_matrix(rng, l, g.brick_power(b), 2),
                    translation: FormalPointExpr::zero(b.clone(), l),
                },
            )
        })
        .collect();
    VarietyMorphism::new(g.clone(), h.clone(), u, t, blocks).expect("generated data is valid")
}

/// Arbitrary morphism: a pointed one followed by a random translation.
pub fn morphism<R: Rng>(rng: &mut R, g: &GroupPresentation, h: &GroupPresentation, shape: PolyShape) -> VarietyMorphism {
    let pointed = pointed_morphism(rng, g, h, shape);
    let p = point(rng, h);
    translation(h, &p).expect("torus components are nonzero").compose(&pointed).expect("composable")
}

/// Group automorphism: invertible rational vector block, unimodular torus
/// and brick blocks.
pub fn automorphism<R: Rng>(rng: &mut R, g: &GroupPresentation) -> Homomorphism {
    let u = invertible_rat(rng, g.n);
    let t = unimodular(rng, g.m);
    let bricks: BTreeMap<_, _> = g.bricks().iter().map(|(b, &k)| (b.clone(), unimodular(rng, k))).collect();
    Homomorphism::from_blocks(g, g, &u, &t, &bricks).expect("square blocks")
}

enum Block {
    Vector,
    Torus,
    Brick(BrickId),
}

/// Endomorphism that fails to be an automorphism in exactly one block:
/// that block gets its first row scaled by 0 or 2. `None` for the trivial group.
pub fn degenerate_endomorphism<R: Rng>(rng: &mut R, g: &GroupPresentation) -> Option<Homomorphism> {
    let h = automorphism(rng, g);
    let mut slots = Vec::new();
    if g.n > 0 {
        slots.push(Block::Vector);
    }
    if g.m > 0 {
        slots.push(Block::Torus);
    }
    slots.extend(g.bricks().keys().cloned().map(Block::Brick));
    if slots.is_empty() {
        return None;
    }
    let factor = if rng.gen_bool(0.5) { 0i64 } else { 2 };
    let scale_row = |m: &mut IntMatrix| {
        for c in 0..m.cols() {
            let v = m.get(0, c) * BigInt::from(factor);
            m.set(0, c, v);
        }
    };
    let mut u = h.unipotent_block();
    let mut t = h.torus_block();
    let mut bricks: BTreeMap<_, _> =
        g.bricks().keys().map(|b| (b.clone(), h.brick_block(b).expect("present").clone())).collect();
    match &slots[rng.gen_range(0..slots.len())] {
        Block::Vector => {
            for c in 0..g.n {
                let v = u.get(0, c) * Rat::from(factor);
                u.set(0, c, v);
            }
        }
        Block::Torus => scale_row(&mut t),
        Block::Brick(b) => scale_row(bricks.get_mut(b).expect("present")),
    }
    Some(Homomorphism::from_blocks(g, g, &u, &t, &bricks).expect("square blocks"))
}

/// Pointed morphism `Gm^m → Ga^n`; nonzero whenever `n, m ≥ 1`.
pub fn torus_to_vector<R: Rng>(rng: &mut R, m: usize, n: usize, shape: PolyShape) -> VarietyMorphism {
    let (t, u) = (GroupPresentation::torus(m), GroupPresentation::vector(n));
    loop {
        let coords: Vec<LaurentPoly> = (0..n)
            .map(|_| {
                let f = laurent(rng, 0, m, shape);
                f.sub(&LaurentPoly::constant(0, m, f.value_at_identity())).expect("same ring")
            })
            .collect();
        if n == 0 || m == 0 || coords.iter().any(|f| !f.is_zero()) {
            return VarietyMorphism::new(t, u, coords, vec![], BTreeMap::new()).expect("valid");
        }
    }
}

/// `(τ, ψ, χ)` with random translation, the given `ψ`, and random `χ`.
pub fn decomposition_with<R: Rng>(rng: &mut R, psi: Homomorphism, shape: PolyShape) -> Decomposition {
    let (g, h) = (psi.domain().clone(), psi.codomain().clone());
    let p = point(rng, &h);
    let tau = translation(&h, &p).expect("torus components are nonzero");
    let chi = torus_to_vector(rng, g.m, h.n, shape);
    Decomposition::from_parts(tau, psi, chi).expect("parts fit")
}
