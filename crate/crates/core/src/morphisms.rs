//! Variety morphisms between split presentations.
//!
//! A morphism `G → H` is stored coordinate-wise on the target:
//!
//! - one Laurent polynomial in the affine coordinates of `G` per `Ga` factor
//!   of `H` (brick coordinates never occur: `O(A) = ℚ` for a brick `A`),
//! - one unit `c·y^α` per `Gm` factor of `H`,
//! - for every brick `B` of `H`, an integer matrix `l × k` (with `k` the
//!   power of `B` in `G`, possibly 0) and a formal translation point.
//!
//! Composition, addition and translation are closed on this representation,
//! so invariants established by [`RawMorphism::validate`] are preserved by
//! every operation here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result, Violation};
use crate::exact::{IntMatrix, Rat, RatMatrix};
use crate::groups::{BrickId, GroupPresentation};
use crate::laurent::{LaurentPoly, Monomial, Unit};

/// A ℤ-linear combination of named points on a brick.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PointCombo(BTreeMap<String, BigInt>);

impl PointCombo {
    pub fn zero() -> Self {
        PointCombo::default()
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        PointCombo::from_terms([(name.into(), BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (String, BigInt)>) -> Self {
        let mut p = PointCombo::zero();
        for (s, c) in terms {
            p.add_term(s, c);
        }
        p
    }

    fn add_term(&mut self, s: String, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(s).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &BigInt)> {
        self.0.iter()
    }

    pub fn add(&self, other: &PointCombo) -> PointCombo {
        let mut out = self.clone();
        for (s, c) in &other.0 {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PointCombo {
        PointCombo(self.0.iter().map(|(s, c)| (s.clone(), -c)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> PointCombo {
        if k.is_zero() {
            return PointCombo::zero();
        }
        PointCombo(self.0.iter().map(|(s, c)| (s.clone(), c * k)).collect())
    }
}

/// `2*Q - R`, `-P`, `0`.
impl fmt::Display for PointCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.0.iter().enumerate() {
            let neg = c < &BigInt::zero();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = if neg { -c } else { c.clone() };
            if abs.is_one() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{abs}*{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PointCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point of `B^l` written in formal point symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalPointExpr {
    pub brick: BrickId,
    pub coords: Vec<PointCombo>,
}

impl FormalPointExpr {
    pub fn zero(brick: BrickId, power: usize) -> Self {
        FormalPointExpr { brick, coords: vec![PointCombo::zero(); power] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PointCombo::is_zero)
    }

    pub fn add(&self, other: &FormalPointExpr) -> FormalPointExpr {
        debug_assert_eq!(self.brick, other.brick);
        FormalPointExpr {
            brick: self.brick.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn neg(&self) -> FormalPointExpr {
        FormalPointExpr { brick: self.brick.clone(), coords: self.coords.iter().map(PointCombo::neg).collect() }
    }

    /// `M · self`, relabelled to `brick`.
    fn apply(m: &IntMatrix, coords: &[PointCombo], brick: &BrickId) -> FormalPointExpr {
        let coords = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .zip(coords)
                    .fold(PointCombo::zero(), |acc, (k, p)| acc.add(&p.scale(k)))
            })
            .collect();
        FormalPointExpr { brick: brick.clone(), coords }
    }
}

/// Point symbols declared per brick.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointRegistry(BTreeMap<BrickId, BTreeSet<String>>);

impl PointRegistry {
    pub fn new() -> Self {
        PointRegistry::default()
    }

    /// Returns false if the symbol was already declared on this brick.
    pub fn declare(&mut self, brick: BrickId, symbol: impl Into<String>) -> bool {
        self.0.entry(brick).or_default().insert(symbol.into())
    }

    pub fn contains(&self, brick: &BrickId, symbol: &str) -> bool {
        self.0.get(brick).is_some_and(|s| s.contains(symbol))
    }

    /// Brick on which `symbol` is declared, if any.
    pub fn brick_of(&self, symbol: &str) -> Option<&BrickId> {
        self.0.iter().find(|(_, s)| s.contains(symbol)).map(|(b, _)| b)
    }
}

/// The brick-target data of a morphism: `z ↦ M·z + t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrickBlock {
    pub matrix: IntMatrix,
    pub translation: FormalPointExpr,
}

/// A point of a split group: affine coordinates plus formal brick points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPoint {
    pub u: Vec<Rat>,
    /// Torus coordinates; nonzero.
    pub t: Vec<Rat>,
    pub bricks: Vec<FormalPointExpr>,
}

impl GroupPoint {
    pub fn identity(g: &GroupPresentation) -> Self {
        GroupPoint {
            u: vec![Rat::zero(); g.n],
            t: vec![Rat::one(); g.m],
            bricks: g.bricks().iter().map(|(b, &k)| FormalPointExpr::zero(b.clone(), k)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.u.iter().all(Rat::is_zero) && self.t.iter().all(Rat::is_one) && self.bricks.iter().all(FormalPointExpr::is_zero)
    }

    /// Group inverse.
    pub fn neg(&self) -> Result<GroupPoint> {
        Ok(GroupPoint {
            u: self.u.iter().map(|v| -v).collect(),
            t: self.t.iter().map(|v| v.inv().map_err(|_| Error::ZeroTorusComponent)).collect::<Result<_>>()?,
            bricks: self.bricks.iter().map(FormalPointExpr::neg).collect(),
        })
    }

    pub fn brick(&self, b: &BrickId) -> Option<&FormalPointExpr> {
        self.bricks.iter().find(|p| &p.brick == b)
    }
}

/// Unchecked morphism data as read from input.
#[derive(Debug, Clone)]
pub struct RawMorphism {
    pub domain: GroupPresentation,
    pub codomain: GroupPresentation,
    pub u_coords: Vec<LaurentPoly>,
    pub t_coords: Vec<LaurentPoly>,
    pub brick_blocks: BTreeMap<BrickId, BrickBlock>,
}

impl RawMorphism {
    /// Checks every representation invariant and reports all violations at
    /// once. Point symbols are checked only when a registry is given.
    pub fn validate(self, registry: Option<&PointRegistry>) -> Result<VarietyMorphism> {
        let mut violations = Vec::new();
        let sig = (self.domain.n, self.domain.m);
        if self.u_coords.len() != self.codomain.n {
            violations.push(Violation::SignatureMismatch(format!(
                "codomain has {} unipotent coordinates, got {}",
                self.codomain.n,
                self.u_coords.len()
            )));
        }
        for (j, f) in self.u_coords.iter().enumerate() {
            if f.signature() != sig {
                violations.push(Violation::SignatureMismatch(format!(
                    "x{} is over ring {:?}, domain ring is {sig:?}",
                    j + 1,
                    f.signature()
                )));
            }
        }
        if self.t_coords.len() != self.codomain.m {
            violations.push(Violation::SignatureMismatch(format!(
                "codomain has {} torus coordinates, got {}",
                self.codomain.m,
                self.t_coords.len()
            )));
        }
        let mut units = Vec::new();
        for (j, f) in self.t_coords.iter().enumerate() {
            if f.signature() != sig {
                violations.push(Violation::SignatureMismatch(format!(
                    "y{} is over ring {:?}, domain ring is {sig:?}",
                    j + 1,
                    f.signature()
                )));
                continue;
            }
            match f.unit_decompose() {
                Some(u) => units.push(u),
                None => violations.push(Violation::NonUnitTorusCoordinate { index: j, found: f.to_string() }),
            }
        }
        for b in self.brick_blocks.keys() {
            if self.codomain.brick_power(b) == 0 {
                violations.push(Violation::BrickMismatch(format!("codomain has no brick {b}")));
            }
        }
        for (b, &l) in self.codomain.bricks() {
            let Some(block) = self.brick_blocks.get(b) else {
                violations.push(Violation::BrickMismatch(format!("no data for codomain brick {b}")));
                continue;
            };
            let k = self.domain.brick_power(b);
            if (block.matrix.rows(), block.matrix.cols()) != (l, k) {
                violations.push(Violation::BrickMismatch(format!(
                    "block for {b} must be {l}x{k}, got {}x{}",
                    block.matrix.rows(),
                    block.matrix.cols()
                )));
            }
            if &block.translation.brick != b || block.translation.coords.len() != l {
                violations.push(Violation::BrickMismatch(format!(
                    "translation for {b} must have {l} coordinates on {b}"
                )));
            }
            if let Some(reg) = registry {
                for c in &block.translation.coords {
                    for (s, _) in c.terms() {
                        if !reg.contains(b, s) {
                            violations.push(Violation::UnknownPointSymbol { brick: b.to_string(), symbol: s.clone() });
                        }
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(VarietyMorphism {
            domain: self.domain,
            codomain: self.codomain,
            u_coords: self.u_coords,
            t_coords: units,
            brick_blocks: self.brick_blocks,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarietyMorphism {
    domain: GroupPresentation,
    codomain: GroupPresentation,
    u_coords: Vec<LaurentPoly>,
    t_coords: Vec<Unit>,
    brick_blocks: BTreeMap<BrickId, BrickBlock>,
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::SignatureMismatch(msg.into())
}

impl VarietyMorphism {
    /// Builds and validates in one step.
    pub fn new(
        domain: GroupPresentation,
        codomain: GroupPresentation,
        u_coords: Vec<LaurentPoly>,
        t_coords: Vec<Unit>,
        brick_blocks: BTreeMap<BrickId, BrickBlock>,
    ) -> Result<Self> {
        let n = domain.n;
        RawMorphism { domain, codomain, u_coords, t_coords: t_coords.iter().map(|u| u.to_poly(n)).collect(), brick_blocks }
            .validate(None)
    }

    pub fn domain(&self) -> &GroupPresentation {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupPresentation {
        &self.codomain
    }

    pub fn u_coords(&self) -> &[LaurentPoly] {
        &self.u_coords
    }

    pub fn t_coords(&self) -> &[Unit] {
        &self.t_coords
    }

    pub fn brick_blocks(&self) -> &BTreeMap<BrickId, BrickBlock> {
        &self.brick_blocks
    }

    pub fn to_raw(&self) -> RawMorphism {
        RawMorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            u_coords: self.u_coords.clone(),
            t_coords: self.t_coords.iter().map(|u| u.to_poly(self.domain.n)).collect(),
            brick_blocks: self.brick_blocks.clone(),
        }
    }

    fn ring(&self) -> (usize, usize) {
        (self.domain.n, self.domain.m)
    }

    pub fn identity(g: &GroupPresentation) -> Self {
        Homomorphism::identity(g).into_morphism()
    }

    pub fn zero(g: &GroupPresentation, h: &GroupPresentation) -> Self {
        Homomorphism::zero(g, h).into_morphism()
    }

    /// The constant morphism `G → H` with value `point`.
    pub fn constant(g: &GroupPresentation, h: &GroupPresentation, point: &GroupPoint) -> Result<Self> {
        translation(h, point)?.compose(&VarietyMorphism::zero(g, h))
    }

    pub fn evaluate_at_identity(&self) -> GroupPoint {
        GroupPoint {
            u: self.u_coords.iter().map(LaurentPoly::value_at_identity).collect(),
            t: self.t_coords.iter().map(|u| u.coeff().clone()).collect(),
            bricks: self.brick_blocks.values().map(|b| b.translation.clone()).collect(),
        }
    }

    /// Image of a point of the domain.
    pub fn evaluate(&self, p: &GroupPoint) -> Result<GroupPoint> {
        if p.u.len() != self.domain.n || p.t.len() != self.domain.m {
            return Err(mismatch("point does not lie on the domain"));
        }
        let u = self.u_coords.iter().map(|f| f.evaluate(&p.u, &p.t)).collect::<Result<_>>()?;
        let t = self.t_coords.iter().map(|f| f.evaluate(&p.t)).collect::<Result<_>>()?;
        let mut bricks = Vec::new();
        for (b, block) in &self.brick_blocks {
            let src = match p.brick(b) {
                Some(src) if src.coords.len() == block.matrix.cols() => src.coords.clone(),
                None if block.matrix.cols() == 0 => Vec::new(),
                _ => return Err(mismatch(format!("point has no coordinates on brick {b}"))),
            };
            bricks.push(FormalPointExpr::apply(&block.matrix, &src, b).add(&block.translation));
        }
        Ok(GroupPoint { u, t, bricks })
    }

    pub fn is_pointed(&self) -> bool {
        self.evaluate_at_identity().is_identity()
    }

    /// Structural shape of a homomorphism: linear forms in x, characters,
    /// and untranslated brick blocks.
    pub fn is_homomorphism(&self) -> bool {
        self.u_coords.iter().all(LaurentPoly::is_linear_form)
            && self.t_coords.iter().all(Unit::is_character)
            && self.brick_blocks.values().all(|b| b.translation.is_zero())
    }

    /// Checks `φ(a + b) = φ(a) + φ(b)` as an identity of morphisms `G × G → H`.
    pub fn is_homomorphism_symbolic(&self) -> bool {
        let g = &self.domain;
        let lhs = self.compose(Homomorphism::addition(g).as_morphism());
        let a = self.compose(Homomorphism::projection_first(g, g).as_morphism());
        let b = self.compose(Homomorphism::projection_second(g, g).as_morphism());
        match (lhs, a, b) {
            (Ok(lhs), Ok(a), Ok(b)) => a.add(&b).is_ok_and(|rhs| rhs == lhs),
            _ => false,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &VarietyMorphism) -> Result<VarietyMorphism> {
        if inner.codomain != self.domain {
            return Err(mismatch(format!(
                "cannot compose: inner codomain {} is not outer domain {}",
                inner.codomain, self.domain
            )));
        }
        let target = inner.ring();
        let u_coords = self
            .u_coords
            .iter()
            .map(|f| f.substitute(target, &inner.u_coords, &inner.t_coords))
            .collect::<Result<_>>()?;
        let t_coords = self
            .t_coords
            .iter()
            .map(|u| u.substitute(target.1, &inner.t_coords))
            .collect::<Result<_>>()?;
        let mut brick_blocks = BTreeMap::new();
        for (b, outer) in &self.brick_blocks {
            let k_src = inner.domain.brick_power(b);
            let block = match inner.brick_blocks.get(b) {
                Some(inner_b) => BrickBlock {
                    matrix: outer.matrix.mul(&inner_b.matrix)?,
                    translation: FormalPointExpr::apply(&outer.matrix, &inner_b.translation.coords, b)
                        .add(&outer.translation),
                },
                None => BrickBlock {
                    matrix: IntMatrix::zeros(outer.matrix.rows(), k_src),
                    translation: outer.translation.clone(),
                },
            };
            brick_blocks.insert(b.clone(), block);
        }
        Ok(VarietyMorphism {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            u_coords,
            t_coords,
            brick_blocks,
        })
    }

    fn check_parallel(&self, other: &VarietyMorphism) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(mismatch(format!(
                "cannot add {} -> {} and {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    /// Pointwise sum in the group law of the codomain.
    pub fn add(&self, other: &VarietyMorphism) -> Result<VarietyMorphism> {
        self.check_parallel(other)?;
        Ok(VarietyMorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            u_coords: self.u_coords.iter().zip(&other.u_coords).map(|(a, b)| a.add(b)).collect::<Result<_>>()?,
            t_coords: self.t_coords.iter().zip(&other.t_coords).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?,
            brick_blocks: self
                .brick_blocks
                .iter()
                .map(|(k, a)| {
                    let b = &other.brick_blocks[k];
                    Ok((
                        k.clone(),
                        BrickBlock { matrix: a.matrix.add(&b.matrix)?, translation: a.translation.add(&b.translation) },
                    ))
                })
                .collect::<Result<_>>()?,
        })
    }

    pub fn negate(&self) -> VarietyMorphism {
        VarietyMorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            u_coords: self.u_coords.iter().map(LaurentPoly::neg).collect(),
            t_coords: self.t_coords.iter().map(Unit::inv).collect(),
            brick_blocks: self
                .brick_blocks
                .iter()
                .map(|(k, b)| (k.clone(), BrickBlock { matrix: b.matrix.neg(), translation: b.translation.neg() }))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VarietyMorphism) -> Result<VarietyMorphism> {
        self.add(&other.negate())
    }

    /// Splits `φ = τ ∘ φ₀` with `τ` the translation by `φ(0)` and `φ₀` pointed.
    pub fn pointed_normalize(&self) -> Result<(VarietyMorphism, VarietyMorphism)> {
        let p = self.evaluate_at_identity();
        let tau = translation(&self.codomain, &p)?;
        let back = translation(&self.codomain, &p.neg()?)?;
        let pointed = back.compose(self)?;
        debug_assert!(pointed.is_pointed());
        Ok((tau, pointed))
    }

    /// `(self, other): G → H₁ × H₂`.
    pub fn pairing(&self, other: &VarietyMorphism) -> Result<VarietyMorphism> {
        if self.domain != other.domain {
            return Err(mismatch("pairing needs a common domain"));
        }
        let codomain = self.codomain.product(&other.codomain);
        let mut brick_blocks = BTreeMap::new();
        for b in codomain.bricks().keys() {
            let parts: Vec<&BrickBlock> =
                [self.brick_blocks.get(b), other.brick_blocks.get(b)].into_iter().flatten().collect();
            let k = self.domain.brick_power(b);
            let rows: Vec<Vec<BigInt>> =
                parts.iter().flat_map(|p| (0..p.matrix.rows()).map(|r| p.matrix.row(r).to_vec())).collect();
            let matrix = IntMatrix::new(rows.len(), k, rows.concat())?;
            let coords = parts.iter().flat_map(|p| p.translation.coords.iter().cloned()).collect();
            brick_blocks.insert(b.clone(), BrickBlock { matrix, translation: FormalPointExpr { brick: b.clone(), coords } });
        }
        Ok(VarietyMorphism {
            domain: self.domain.clone(),
            codomain,
            u_coords: self.u_coords.iter().chain(&other.u_coords).cloned().collect(),
            t_coords: self.t_coords.iter().chain(&other.t_coords).cloned().collect(),
            brick_blocks,
        })
    }
}

/// Translation `h ↦ h + point` on `H`.
pub fn translation(h: &GroupPresentation, point: &GroupPoint) -> Result<VarietyMorphism> {
    if point.u.len() != h.n || point.t.len() != h.m || point.bricks.len() != h.bricks().len() {
        return Err(mismatch("translation point does not lie on the group"));
    }
    let sig = (h.n, h.m);
    let u_coords =
        (0..h.n).map(|i| LaurentPoly::x(sig.0, sig.1, i).add(&LaurentPoly::constant(sig.0, sig.1, point.u[i].clone())));
    let t_coords = point
        .t
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut e = vec![0; h.m];
            e[j] = 1;
            Unit::new(c.clone(), e).map_err(|_| Error::ZeroTorusComponent)
        })
        .collect::<Result<_>>()?;
    let mut brick_blocks = BTreeMap::new();
    for (b, &k) in h.bricks() {
        let p = point.brick(b).filter(|p| p.coords.len() == k).ok_or_else(|| mismatch(format!("bad point on {b}")))?;
        brick_blocks.insert(b.clone(), BrickBlock { matrix: IntMatrix::identity(k), translation: p.clone() });
    }
    Ok(VarietyMorphism {
        domain: h.clone(),
        codomain: h.clone(),
        u_coords: u_coords.collect::<Result<_>>()?,
        t_coords,
        brick_blocks,
    })
}

pub fn compose(outer: &VarietyMorphism, inner: &VarietyMorphism) -> Result<VarietyMorphism> {
    outer.compose(inner)
}

pub fn pairing(f: &VarietyMorphism, g: &VarietyMorphism) -> Result<VarietyMorphism> {
    f.pairing(g)
}

/// A morphism known to be a homomorphism of algebraic groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism(VarietyMorphism);

impl TryFrom<VarietyMorphism> for Homomorphism {
    type Error = VarietyMorphism;

    fn try_from(phi: VarietyMorphism) -> std::result::Result<Self, VarietyMorphism> {
        if phi.is_homomorphism() {
            Ok(Homomorphism(phi))
        } else {
            Err(phi)
        }
    }
}

fn exps_from_row(row: &[BigInt]) -> Result<Vec<i32>> {
    row.iter().map(|v| v.to_i32().ok_or_else(|| mismatch("character exponent out of range"))).collect()
}

impl Homomorphism {
    /// Assembles a homomorphism from its blocks. Bricks of `codomain` missing
    /// from `bricks` get a zero block.
    pub fn from_blocks(
        domain: &GroupPresentation,
        codomain: &GroupPresentation,
        unipotent: &RatMatrix,
        torus: &IntMatrix,
        bricks: &BTreeMap<BrickId, IntMatrix>,
    ) -> Result<Homomorphism> {
        let (n, m) = (domain.n, domain.m);
        if (unipotent.rows(), unipotent.cols()) != (codomain.n, n) {
            return Err(mismatch("unipotent block shape"));
        }
        if (torus.rows(), torus.cols()) != (codomain.m, m) {
            return Err(mismatch("torus block shape"));
        }
        let u_coords = (0..codomain.n)
            .map(|j| {
                LaurentPoly::from_terms(
                    n,
                    m,
                    (0..n).map(|i| {
                        let mut mono = Monomial::one(n, m);
                        mono.x_exps[i] = 1;
                        (mono, unipotent.get(j, i).clone())
                    }),
                )
            })
            .collect();
        let t_coords =
            (0..codomain.m).map(|j| exps_from_row(torus.row(j)).map(Unit::character)).collect::<Result<_>>()?;
        let mut brick_blocks = BTreeMap::new();
        for (b, &l) in codomain.bricks() {
            let k = domain.brick_power(b);
            let matrix = bricks.get(b).cloned().unwrap_or_else(|| IntMatrix::zeros(l, k));
            if (matrix.rows(), matrix.cols()) != (l, k) {
                return Err(mismatch(format!("block for {b} must be {l}x{k}")));
            }
            brick_blocks.insert(b.clone(), BrickBlock { matrix, translation: FormalPointExpr::zero(b.clone(), l) });
        }
        if bricks.keys().any(|b| codomain.brick_power(b) == 0) {
            return Err(mismatch("block for a brick absent from the codomain"));
        }
        Ok(Homomorphism(VarietyMorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            u_coords,
            t_coords,
            brick_blocks,
        }))
    }

    pub fn identity(g: &GroupPresentation) -> Self {
        let bricks = g.bricks().iter().map(|(b, &k)| (b.clone(), IntMatrix::identity(k))).collect();
        Homomorphism::from_blocks(g, g, &RatMatrix::identity(g.n), &IntMatrix::identity(g.m), &bricks)
            .expect("identity blocks have matching shapes")
    }

    pub fn zero(g: &GroupPresentation, h: &GroupPresentation) -> Self {
        Homomorphism::from_blocks(g, h, &RatMatrix::zeros(h.n, g.n), &IntMatrix::zeros(h.m, g.m), &BTreeMap::new())
            .expect("zero blocks have matching shapes")
    }

    /// Multiplication by `λ`. Non-integral `λ` is only defined on vector groups.
    pub fn scalar(g: &GroupPresentation, lambda: &Rat) -> Result<Self> {
        let k = match lambda.to_integer() {
            Some(k) => k,
            None if g.m == 0 && g.bricks().is_empty() => BigInt::zero(),
            None => return Err(mismatch("non-integral scalar on a group with torus or brick factors")),
        };
        let mut u = RatMatrix::zeros(g.n, g.n);
        for i in 0..g.n {
            u.set(i, i, lambda.clone());
        }
        let diag = |d: usize| {
            let mut mat = IntMatrix::zeros(d, d);
            for i in 0..d {
                mat.set(i, i, k.clone());
            }
            mat
        };
        let bricks = g.bricks().iter().map(|(b, &p)| (b.clone(), diag(p))).collect();
        Homomorphism::from_blocks(g, g, &u, &diag(g.m), &bricks)
    }

    /// The group law `H × H → H`.
    pub fn addition(h: &GroupPresentation) -> Self {
        let hh = h.product(h);
        let two = |d: usize| {
            let mut mat = IntMatrix::zeros(d, 2 * d);
            for i in 0..d {
                mat.set(i, i, BigInt::one());
                mat.set(i, d + i, BigInt::one());
            }
            mat
        };
        let u = two(h.n).to_rat();
        let bricks = h.bricks().iter().map(|(b, &k)| (b.clone(), two(k))).collect();
        Homomorphism::from_blocks(&hh, h, &u, &two(h.m), &bricks).expect("addition blocks have matching shapes")
    }

    fn selection(g: &GroupPresentation, h: &GroupPresentation, first: bool, project: bool) -> Self {
        let gh = g.product(h);
        let pick = |dg: usize, dh: usize| {
            let (d, offset) = if first { (dg, 0) } else { (dh, dg) };
            let mut mat = IntMatrix::zeros(d, dg + dh);
            for i in 0..d {
                mat.set(i, offset + i, BigInt::one());
            }
            mat
        };
        let mut bricks = BTreeMap::new();
        for b in gh.bricks().keys() {
            let sel = pick(g.brick_power(b), h.brick_power(b));
            if sel.rows() > 0 {
                bricks.insert(b.clone(), sel);
            }
        }
        let (u, t) = (pick(g.n, h.n), pick(g.m, h.m));
        let factor = if first { g } else { h };
        if project {
            Homomorphism::from_blocks(&gh, factor, &u.to_rat(), &t, &bricks)
        } else {
            let transpose = |mat: &IntMatrix| {
                let mut out = IntMatrix::zeros(mat.cols(), mat.rows());
                for r in 0..mat.rows() {
                    for c in 0..mat.cols() {
                        out.set(c, r, mat.get(r, c).clone());
                    }
                }
                out
            };
            let bricks = bricks.iter().map(|(b, mat)| (b.clone(), transpose(mat))).collect();
            Homomorphism::from_blocks(factor, &gh, &transpose(&u).to_rat(), &transpose(&t), &bricks)
        }
        .expect("selection blocks have matching shapes")
    }

    pub fn projection_first(g: &GroupPresentation, h: &GroupPresentation) -> Self {
        Homomorphism::selection(g, h, true, true)
    }

    pub fn projection_second(g: &GroupPresentation, h: &GroupPresentation) -> Self {
        Homomorphism::selection(g, h, false, true)
    }

    pub fn inclusion_first(g: &GroupPresentation, h: &GroupPresentation) -> Self {
        Homomorphism::selection(g, h, true, false)
    }

    pub fn inclusion_second(g: &GroupPresentation, h: &GroupPresentation) -> Self {
        Homomorphism::selection(g, h, false, false)
    }

    /// `G → Gm^m`, the quotient by the vector-group and brick factors.
    pub fn torus_projection(g: &GroupPresentation) -> Self {
        let t = GroupPresentation::torus(g.m);
        Homomorphism::from_blocks(g, &t, &RatMatrix::zeros(0, g.n), &IntMatrix::identity(g.m), &BTreeMap::new())
            .expect("projection blocks have matching shapes")
    }

    /// `Ga^n → H`, the inclusion of the vector-group factor.
    pub fn unipotent_inclusion(h: &GroupPresentation) -> Self {
        let u = GroupPresentation::vector(h.n);
        Homomorphism::from_blocks(&u, h, &RatMatrix::identity(h.n), &IntMatrix::zeros(h.m, 0), &BTreeMap::new())
            .expect("inclusion blocks have matching shapes")
    }

    pub fn as_morphism(&self) -> &VarietyMorphism {
        &self.0
    }

    pub fn into_morphism(self) -> VarietyMorphism {
        self.0
    }

    pub fn domain(&self) -> &GroupPresentation {
        &self.0.domain
    }

    pub fn codomain(&self) -> &GroupPresentation {
        &self.0.codomain
    }

    /// `J[j][i]` = coefficient of `x_{i+1}` in the `j`-th unipotent coordinate.
    pub fn unipotent_block(&self) -> RatMatrix {
        let (n, m) = self.0.ring();
        let mut out = RatMatrix::zeros(self.0.codomain.n, n);
        for (j, f) in self.0.u_coords.iter().enumerate() {
            for i in 0..n {
                let mut mono = Monomial::one(n, m);
                mono.x_exps[i] = 1;
                out.set(j, i, f.coefficient(&mono));
            }
        }
        out
    }

    /// Row `j` is the character exponent vector of the `j`-th torus coordinate.
    pub fn torus_block(&self) -> IntMatrix {
        let m = self.0.domain.m;
        let entries = self.0.t_coords.iter().flat_map(|u| u.exps().iter().map(|&e| BigInt::from(e))).collect();
        IntMatrix::new(self.0.codomain.m, m, entries).expect("torus block shape")
    }

    pub fn brick_block(&self, b: &BrickId) -> Option<&IntMatrix> {
        self.0.brick_blocks.get(b).map(|blk| &blk.matrix)
    }

    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        Ok(Homomorphism(self.0.compose(&inner.0)?))
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        Ok(Homomorphism(self.0.add(&other.0)?))
    }

    pub fn negate(&self) -> Homomorphism {
        Homomorphism(self.0.negate())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == VarietyMorphism::zero(&self.0.domain, &self.0.codomain)
    }

    /// Inverse as a group isomorphism: every block square and invertible
    /// (over ℚ for the vector part, over ℤ for tori and bricks).
    pub fn inverse(&self) -> Result<Homomorphism> {
        let (g, h) = (&self.0.domain, &self.0.codomain);
        if g != h {
            return Err(Error::Singular);
        }
        let u = self.unipotent_block().invert()?;
        let t = self.torus_block().inverse()?;
        let bricks = self
            .0
            .brick_blocks
            .iter()
            .map(|(b, blk)| Ok((b.clone(), blk.matrix.inverse()?)))
            .collect::<Result<_>>()?;
        Homomorphism::from_blocks(h, g, &u, &t, &bricks)
    }

    pub fn is_group_iso(&self) -> bool {
        self.inverse().is_ok()
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hom {} -> {}: U={:?} T={:?}",
            self.0.domain,
            self.0.codomain,
            self.unipotent_block(),
            self.torus_block()
        )?;
        for (b, blk) in &self.0.brick_blocks {
            write!(f, " {b}={:?}", blk.matrix)?;
        }
        Ok(())
    }
}
