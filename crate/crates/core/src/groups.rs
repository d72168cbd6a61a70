//! Split presentations `Ga^n × Gm^m × ∏ A^k` and their structural pieces.

use std::collections::BTreeMap;
use std::fmt;

/// A formal abelian variety with `End = ℤ` and no maps to other bricks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrickId(String);

impl BrickId {
    /// Panics on an empty name.
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "brick name must be nonempty");
        BrickId(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BrickId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BrickId {
    fn from(s: &str) -> Self {
        BrickId::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupPresentation {
    /// Rank of the vector-group factor `Ga^n`.
    pub n: usize,
    /// Rank of the torus factor `Gm^m`.
    pub m: usize,
    bricks: BTreeMap<BrickId, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralParts {
    pub affine_part: GroupPresentation,
    pub antiaffine_part: GroupPresentation,
    pub mult_type_part: GroupPresentation,
    pub unipotent_part: GroupPresentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub is_torus: bool,
    pub is_antiaffine: bool,
    pub is_semiabelian: bool,
    pub has_unipotent_direct_factor: bool,
}

impl GroupPresentation {
    pub fn trivial() -> Self {
        GroupPresentation::default()
    }

    /// Zero powers are dropped.
    pub fn new(n: usize, m: usize, bricks: impl IntoIterator<Item = (BrickId, usize)>) -> Self {
        let mut g = GroupPresentation { n, m, bricks: BTreeMap::new() };
        for (b, k) in bricks {
            if k > 0 {
                *g.bricks.entry(b).or_insert(0) += k;
            }
        }
        g
    }

    pub fn vector(n: usize) -> Self {
        GroupPresentation::new(n, 0, [])
    }

    pub fn torus(m: usize) -> Self {
        GroupPresentation::new(0, m, [])
    }

    pub fn with_brick(mut self, brick: impl Into<BrickId>, power: usize) -> Self {
        if power > 0 {
            *self.bricks.entry(brick.into()).or_insert(0) += power;
        }
        self
    }

    pub fn bricks(&self) -> &BTreeMap<BrickId, usize> {
        &self.bricks
    }

    /// Power of `brick`, 0 if absent.
    pub fn brick_power(&self, brick: &BrickId) -> usize {
        self.bricks.get(brick).copied().unwrap_or(0)
    }

    pub fn total_brick_power(&self) -> usize {
        self.bricks.values().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 0 && self.m == 0 && self.bricks.is_empty()
    }

    pub fn structural_parts(&self) -> StructuralParts {
        StructuralParts {
            affine_part: GroupPresentation::new(self.n, self.m, []),
            antiaffine_part: GroupPresentation { n: 0, m: 0, bricks: self.bricks.clone() },
            mult_type_part: GroupPresentation::torus(self.m),
            unipotent_part: GroupPresentation::vector(self.n),
        }
    }

    /// `has_unipotent_direct_factor` is `n ≥ 1`; in a split presentation
    /// every vector-group factor is a direct factor.
    pub fn predicates(&self) -> Predicates {
        Predicates {
            is_torus: self.n == 0 && self.bricks.is_empty(),
            is_antiaffine: self.n == 0 && self.m == 0,
            is_semiabelian: self.n == 0,
            has_unipotent_direct_factor: self.n >= 1,
        }
    }

    pub fn product(&self, other: &GroupPresentation) -> GroupPresentation {
        let mut bricks = self.bricks.clone();
        for (b, k) in &other.bricks {
            *bricks.entry(b.clone()).or_insert(0) += k;
        }
        GroupPresentation { n: self.n + other.n, m: self.m + other.m, bricks }
    }

    /// Bricks of `self` and `other` together, each listed once.
    pub fn brick_union<'a>(&'a self, other: &'a GroupPresentation) -> impl Iterator<Item = &'a BrickId> {
        let mut all: Vec<&BrickId> = self.bricks.keys().chain(other.bricks.keys()).collect();
        all.sort();
        all.dedup();
        all.into_iter()
    }
}

/// Group isomorphism type within the split class is exactly `(n, m, bricks)`.
pub fn groups_isomorphic(g: &GroupPresentation, h: &GroupPresentation) -> bool {
    g == h
}

/// `Ga^2 * Gm^1 * E^1`; the trivial group prints as `1`.
impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.n > 0 {
            factors.push(format!("Ga^{}", self.n));
        }
        if self.m > 0 {
            factors.push(format!("Gm^{}", self.m));
        }
        for (b, k) in &self.bricks {
            factors.push(format!("{b}^{k}"));
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" * "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, m: usize, bricks: &[(&str, usize)]) -> GroupPresentation {
        GroupPresentation::new(n, m, bricks.iter().map(|(b, k)| (BrickId::new(*b), *k)))
    }

    #[test]
    fn structural_parts_examples() {
        let parts = g(2, 1, &[("E", 1)]).structural_parts();
        assert_eq!(parts.affine_part, g(2, 1, &[]));
        assert_eq!(parts.antiaffine_part, g(0, 0, &[("E", 1)]));
        assert_eq!(parts.mult_type_part, g(0, 1, &[]));
        assert_eq!(parts.unipotent_part, g(2, 0, &[]));

        let e2 = g(0, 0, &[("E", 2)]);
        assert!(e2.structural_parts().affine_part.is_trivial());
        assert_eq!(e2.structural_parts().antiaffine_part, e2);

        let ga = g(1, 0, &[]);
        assert_eq!(ga.structural_parts().affine_part, ga);
        assert!(ga.structural_parts().antiaffine_part.is_trivial());
    }

    #[test]
    fn parts_multiply_back() {
        for grp in [g(2, 1, &[("E", 1)]), g(0, 3, &[("E", 2), ("F", 1)]), g(1, 0, &[])] {
            let p = grp.structural_parts();
            let back = p.unipotent_part.product(&p.mult_type_part).product(&p.antiaffine_part);
            assert_eq!(back, grp);
            assert_eq!(p.affine_part.product(&p.antiaffine_part), grp);
        }
    }

    #[test]
    fn predicate_examples() {
        let p = g(0, 2, &[]).predicates();
        assert!(p.is_torus && p.is_semiabelian);
        let p = g(0, 1, &[("E", 1)]).predicates();
        assert!(p.is_semiabelian && !p.is_antiaffine && !p.is_torus);
        let p = g(1, 0, &[("E", 1)]).predicates();
        assert!(p.has_unipotent_direct_factor && !p.is_semiabelian);
        let p = GroupPresentation::trivial().predicates();
        assert!(p.is_torus && p.is_antiaffine && p.is_semiabelian && !p.has_unipotent_direct_factor);
    }

    #[test]
    fn predicates_under_product() {
        let groups = [g(0, 1, &[]), g(0, 0, &[("E", 1)]), g(1, 0, &[]), g(2, 1, &[("F", 2)])];
        for a in &groups {
            for b in &groups {
                let (pa, pb, pab) = (a.predicates(), b.predicates(), a.product(b).predicates());
                if pa.is_semiabelian && pb.is_semiabelian {
                    assert!(pab.is_semiabelian);
                }
                if pa.has_unipotent_direct_factor || pb.has_unipotent_direct_factor {
                    assert!(pab.has_unipotent_direct_factor);
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        assert_eq!(g(1, 0, &[]).product(&g(0, 1, &[])), g(1, 1, &[]));
        let grp = g(2, 1, &[("E", 1)]);
        assert_eq!(grp.product(&GroupPresentation::trivial()), grp);
        assert_eq!(g(0, 1, &[("E", 1)]).product(&g(0, 1, &[("E", 1)])), g(0, 2, &[("E", 2)]));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(groups_isomorphic(&g(1, 1, &[]), &g(1, 1, &[])));
        assert!(!groups_isomorphic(&g(2, 0, &[]), &g(1, 1, &[])));
        assert!(!groups_isomorphic(&g(0, 1, &[("E", 1)]), &g(0, 1, &[("F", 1)])));
    }

    #[test]
    fn display() {
        assert_eq!(g(2, 1, &[("E", 1)]).to_string(), "Ga^2 * Gm^1 * E^1");
        assert_eq!(GroupPresentation::trivial().to_string(), "1");
        assert_eq!(g(0, 0, &[("F", 2), ("E", 1)]).to_string(), "E^1 * F^2");
    }
}
