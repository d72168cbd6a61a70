//! The coordinate ring ℚ[x₁..xₙ, y₁^±..yₘ^±] of `Ga^n × Gm^m`.
//!
//! Polynomials are sparse maps from [`Monomial`] to nonzero [`Rat`]. The map
//! is ordered lexicographically on `(x_exps, y_exps)`, so structural equality
//! is mathematical equality and iteration order is deterministic.
//! Serialization walks the terms from largest to smallest, which prints
//! `x1 + x2^2 + y1 - 1` rather than the reverse.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x_exps: Vec<u32>,
    pub y_exps: Vec<i32>,
}

impl Monomial {
    pub fn one(n: usize, m: usize) -> Self {
        Monomial { x_exps: vec![0; n], y_exps: vec![0; m] }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.x_exps.len(), self.y_exps.len())
    }

    pub fn is_one(&self) -> bool {
        self.x_exps.iter().all(|&e| e == 0) && self.y_exps.iter().all(|&e| e == 0)
    }

    pub fn x_degree(&self) -> u32 {
        self.x_exps.iter().sum()
    }

    pub fn is_x_free(&self) -> bool {
        self.x_exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            x_exps: self.x_exps.iter().zip(&other.x_exps).map(|(a, b)| a + b).collect(),
            y_exps: self.y_exps.iter().zip(&other.y_exps).map(|(a, b)| a + b).collect(),
        }
    }
}

/// An element `c·y^α` of the unit group of the coordinate ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unit {
    coeff: Rat,
    exps: Vec<i32>,
}

impl Unit {
    pub fn new(coeff: Rat, exps: Vec<i32>) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Unit { coeff, exps })
    }

    pub fn one(m: usize) -> Self {
        Unit { coeff: Rat::one(), exps: vec![0; m] }
    }

    /// The character `y^α`.
    pub fn character(exps: Vec<i32>) -> Self {
        Unit { coeff: Rat::one(), exps }
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn is_character(&self) -> bool {
        self.coeff.is_one()
    }

    pub fn mul(&self, other: &Unit) -> Result<Unit> {
        check_rank(self.rank(), other.rank())?;
        Ok(Unit {
            coeff: &self.coeff * &other.coeff,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn inv(&self) -> Unit {
        Unit {
            coeff: self.coeff.inv().expect("unit coefficient is nonzero"),
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Unit {
        let k32 = i32::try_from(k).expect("exponent fits in i32");
        Unit {
            coeff: self.coeff.pow(k).expect("unit coefficient is nonzero"),
            exps: self.exps.iter().map(|e| e.checked_mul(k32).expect("exponent overflow")).collect(),
        }
    }

    /// Rescales the coefficient, keeping the character.
    pub fn scaled(&self, c: &Rat) -> Result<Unit> {
        Unit::new(&self.coeff * c, self.exps.clone())
    }

    /// `self(images)`: substitutes unit images for the torus variables.
    pub fn substitute(&self, target_m: usize, images: &[Unit]) -> Result<Unit> {
        check_rank(self.rank(), images.len())?;
        let mut out = Unit { coeff: self.coeff.clone(), exps: vec![0; target_m] };
        for (img, &e) in images.iter().zip(&self.exps) {
            check_rank(img.rank(), target_m)?;
            if e != 0 {
                out = out.mul(&img.pow(e.into()))?;
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, y_vals: &[Rat]) -> Result<Rat> {
        check_rank(self.rank(), y_vals.len())?;
        let mut acc = self.coeff.clone();
        for (v, &e) in y_vals.iter().zip(&self.exps) {
            if v.is_zero() {
                return Err(Error::ZeroInTorusCoordinate);
            }
            acc *= v.pow(e.into())?;
        }
        Ok(acc)
    }

    pub fn to_poly(&self, n: usize) -> LaurentPoly {
        let mono = Monomial { x_exps: vec![0; n], y_exps: self.exps.clone() };
        LaurentPoly::from_terms(n, self.rank(), [(mono, self.coeff.clone())])
    }
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SignatureMismatch(format!("torus rank {a} vs {b}")));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    m: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero(n: usize, m: usize) -> Self {
        LaurentPoly { n, m, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, m: usize, c: Rat) -> Self {
        LaurentPoly::from_terms(n, m, [(Monomial::one(n, m), c)])
    }

    pub fn one(n: usize, m: usize) -> Self {
        LaurentPoly::constant(n, m, Rat::one())
    }

    /// The coordinate `x_{i+1}` (0-based `i`).
    pub fn x(n: usize, m: usize, i: usize) -> Self {
        let mut mono = Monomial::one(n, m);
        mono.x_exps[i] = 1;
        LaurentPoly::from_terms(n, m, [(mono, Rat::one())])
    }

    /// The coordinate `y_{j+1}` (0-based `j`).
    pub fn y(n: usize, m: usize, j: usize) -> Self {
        let mut mono = Monomial::one(n, m);
        mono.y_exps[j] = 1;
        LaurentPoly::from_terms(n, m, [(mono, Rat::one())])
    }

    /// Builds from terms, summing repeated monomials and dropping zeros.
    ///
    /// Panics if a monomial has the wrong signature.
    pub fn from_terms(n: usize, m: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = LaurentPoly::zero(n, m);
        for (mono, c) in terms {
            assert_eq!(mono.signature(), (n, m), "monomial signature");
            p.add_term(mono, c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::one(self.n, self.m))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_x_free)
    }

    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(|m| m.y_exps.iter().all(|&e| e == 0))
    }

    /// Every term has x-degree exactly 1 and no y-dependence.
    pub fn is_linear_form(&self) -> bool {
        self.terms.keys().all(|m| m.x_degree() == 1 && m.y_exps.iter().all(|&e| e == 0))
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    /// Value at the neutral element `x = 0, y = 1`.
    pub fn value_at_identity(&self) -> Rat {
        self.terms.iter().filter(|(m, _)| m.is_x_free()).map(|(_, c)| c.clone()).sum()
    }

    fn check_same(&self, other: &LaurentPoly) -> Result<()> {
        if self.signature() != other.signature() {
            return Err(Error::SignatureMismatch(format!(
                "ring signatures {:?} and {:?}",
                self.signature(),
                other.signature()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n, self.m);
        }
        LaurentPoly {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same(other)?;
        let mut out = LaurentPoly::zero(self.n, self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by a unit of the same ring: shifts y-exponents and rescales.
    pub fn mul_unit(&self, u: &Unit) -> Result<LaurentPoly> {
        check_rank(self.m, u.rank())?;
        Ok(LaurentPoly {
            n: self.n,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k = k.clone();
                    for (e, d) in k.y_exps.iter_mut().zip(u.exps()) {
                        *e += d;
                    }
                    (k, c * u.coeff())
                })
                .collect(),
        })
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.n, self.m);
        let mut sq = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq).expect("same signature");
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq).expect("same signature");
            }
        }
        acc
    }

    /// Image under the ring map `xᵢ ↦ x_images[i]`, `yⱼ ↦ y_images[j]` into the
    /// ring with signature `target`.
    pub fn substitute(
        &self,
        target: (usize, usize),
        x_images: &[LaurentPoly],
        y_images: &[Unit],
    ) -> Result<LaurentPoly> {
        let (tn, tm) = target;
        if x_images.len() != self.n || y_images.len() != self.m {
            return Err(Error::SignatureMismatch(format!(
                "substitution into ring {:?} needs {} x-images and {} y-images, got {} and {}",
                self.signature(),
                self.n,
                self.m,
                x_images.len(),
                y_images.len()
            )));
        }
        for img in x_images {
            if img.signature() != target {
                return Err(Error::SignatureMismatch(format!(
                    "x-image over {:?}, expected {target:?}",
                    img.signature()
                )));
            }
        }
        for img in y_images {
            check_rank(img.rank(), tm)?;
        }
        let mut x_powers: Vec<Vec<LaurentPoly>> =
            x_images.iter().map(|g| vec![LaurentPoly::one(tn, tm), g.clone()]).collect();
        let mut out = LaurentPoly::zero(tn, tm);
        for (mono, c) in &self.terms {
            let mut unit = Unit { coeff: c.clone(), exps: vec![0; tm] };
            for (img, &e) in y_images.iter().zip(&mono.y_exps) {
                if e != 0 {
                    unit = unit.mul(&img.pow(e.into()))?;
                }
            }
            let mut term = LaurentPoly::from_terms(
                tn,
                tm,
                [(Monomial { x_exps: vec![0; tn], y_exps: unit.exps.clone() }, unit.coeff.clone())],
            );
            for (i, &e) in mono.x_exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut x_powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&cache[1])?;
                    cache.push(next);
                }
                term = term.mul(&cache[e as usize])?;
            }
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `x_{i+1}`.
    pub fn partial_x(&self, i: usize) -> Result<LaurentPoly> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, len: self.n });
        }
        let terms = self.terms.iter().filter(|(k, _)| k.x_exps[i] > 0).map(|(k, c)| {
            let e = k.x_exps[i];
            let mut k = k.clone();
            k.x_exps[i] -= 1;
            (k, c * Rat::from(i64::from(e)))
        });
        Ok(LaurentPoly::from_terms(self.n, self.m, terms))
    }

    /// Formal partial derivative with respect to `y_{j+1}`.
    pub fn partial_y(&self, j: usize) -> Result<LaurentPoly> {
        if j >= self.m {
            return Err(Error::IndexOutOfRange { index: j, len: self.m });
        }
        let terms = self.terms.iter().filter(|(k, _)| k.y_exps[j] != 0).map(|(k, c)| {
            let e = k.y_exps[j];
            let mut k = k.clone();
            k.y_exps[j] -= 1;
            (k, c * Rat::from(i64::from(e)))
        });
        Ok(LaurentPoly::from_terms(self.n, self.m, terms))
    }

    pub fn evaluate(&self, x_vals: &[Rat], y_vals: &[Rat]) -> Result<Rat> {
        if x_vals.len() != self.n || y_vals.len() != self.m {
            return Err(Error::SignatureMismatch(format!(
                "evaluation point has {} x- and {} y-values, ring is {:?}",
                x_vals.len(),
                y_vals.len(),
                self.signature()
            )));
        }
        if y_vals.iter().any(Rat::is_zero) {
            return Err(Error::ZeroInTorusCoordinate);
        }
        let mut acc = Rat::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in x_vals.iter().zip(&mono.x_exps) {
                t *= v.pow(e.into())?;
            }
            for (v, &e) in y_vals.iter().zip(&mono.y_exps) {
                t *= v.pow(e.into())?;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `Some(c·y^α)` iff the polynomial is a single x-free term.
    pub fn unit_decompose(&self) -> Option<Unit> {
        let mut it = self.terms.iter();
        let (mono, c) = it.next()?;
        if it.next().is_some() || !mono.is_x_free() {
            return None;
        }
        Some(Unit { coeff: c.clone(), exps: mono.y_exps.clone() })
    }

    /// Negative powers are only defined for units.
    pub fn pow_signed(&self, k: i64) -> Option<LaurentPoly> {
        if k >= 0 {
            return Some(self.pow(u32::try_from(k).ok()?));
        }
        let u = self.unit_decompose()?;
        Some(u.pow(k).to_poly(self.n))
    }
}

pub fn lp_add(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.add(g)
}

pub fn lp_mul(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.mul(g)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, mono: &Monomial, mut first: bool) -> fmt::Result {
    let vars = mono
        .x_exps
        .iter()
        .enumerate()
        .map(|(i, &e)| ('x', i, i64::from(e)))
        .chain(mono.y_exps.iter().enumerate().map(|(j, &e)| ('y', j, i64::from(e))));
    for (name, idx, e) in vars {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{name}{}", idx + 1)?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms in descending monomial order, `+`/`-` separated.
/// The alternate flag (`{:#}`) drops the spaces around the operators.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let compact = f.alternate();
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg, compact) {
                (0, true, _) => write!(f, "-")?,
                (0, false, _) => {}
                (_, true, true) => write!(f, "-")?,
                (_, false, true) => write!(f, "+")?,
                (_, true, false) => write!(f, " - ")?,
                (_, false, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, mono, true)?;
            } else {
                write!(f, "{abs}")?;
                write_monomial(f, mono, false)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly{:?}[{self}]", self.signature())
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(0), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn mono(x: &[u32], y: &[i32]) -> Monomial {
        Monomial { x_exps: x.to_vec(), y_exps: y.to_vec() }
    }

    fn poly(n: usize, m: usize, terms: &[(&[u32], &[i32], Rat)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, m, terms.iter().map(|(x, y, c)| (mono(x, y), c.clone())))
    }

    #[test]
    fn add_mul_examples() {
        let x1 = LaurentPoly::x(1, 1, 0);
        assert!(lp_add(&x1, &x1.neg()).unwrap().is_zero());
        let y1 = LaurentPoly::y(1, 1, 0);
        let y1_inv = poly(1, 1, &[(&[0], &[-1], Rat::one())]);
        assert_eq!(lp_mul(&y1, &y1_inv).unwrap(), LaurentPoly::one(1, 1));
        // term-by-term expansion of (x1 + y1)^2
        let s = x1.add(&y1).unwrap();
        let expected = poly(
            1,
            1,
            &[(&[2], &[0], r(1, 1)), (&[1], &[1], r(2, 1)), (&[0], &[2], r(1, 1))],
        );
        assert_eq!(s.pow(2), expected);
        assert_eq!(s.mul(&s).unwrap(), expected);
    }

    #[test]
    fn mismatched_signatures_are_rejected() {
        let a = LaurentPoly::x(1, 0, 0);
        let b = LaurentPoly::x(1, 1, 0);
        assert!(matches!(a.add(&b), Err(Error::SignatureMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn substitute_examples() {
        let f = LaurentPoly::x(1, 0, 0).pow(2);
        let two_x = LaurentPoly::x(1, 0, 0).scale(&r(2, 1));
        assert_eq!(f.substitute((1, 0), &[two_x], &[]).unwrap(), poly(1, 0, &[(&[2], &[], r(4, 1))]));

        let f = poly(0, 1, &[(&[], &[-1], Rat::one())]);
        let img = Unit::new(r(3, 1), vec![2]).unwrap();
        assert_eq!(f.substitute((0, 1), &[], &[img]).unwrap(), poly(0, 1, &[(&[], &[-2], r(1, 3))]));

        // x1 + y1 over (1,1), x1 -> x1 + x2^2 over (2,1)
        let f = LaurentPoly::x(1, 1, 0).add(&LaurentPoly::y(1, 1, 0)).unwrap();
        let shear = LaurentPoly::x(2, 1, 0).add(&LaurentPoly::x(2, 1, 1).pow(2)).unwrap();
        let got = f.substitute((2, 1), &[shear], &[Unit::character(vec![1])]).unwrap();
        let expected = poly(
            2,
            1,
            &[(&[1, 0], &[0], r(1, 1)), (&[0, 2], &[0], r(1, 1)), (&[0, 0], &[1], r(1, 1))],
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn substitute_checks_arity() {
        let f = LaurentPoly::x(2, 0, 0);
        assert!(f.substitute((1, 0), &[LaurentPoly::x(1, 0, 0)], &[]).is_err());
        assert!(f.substitute((1, 0), &[LaurentPoly::x(1, 0, 0), LaurentPoly::x(1, 1, 0)], &[]).is_err());
    }

    #[test]
    fn partial_examples() {
        let f = LaurentPoly::x(1, 0, 0).pow(2);
        assert_eq!(f.partial_x(0).unwrap(), poly(1, 0, &[(&[1], &[], r(2, 1))]));
        let f = poly(2, 1, &[(&[0, 1], &[1], Rat::one())]);
        assert!(f.partial_x(0).unwrap().is_zero());
        let f = poly(1, 1, &[(&[3], &[-1], Rat::one()), (&[1], &[0], r(5, 1))]);
        let expected = poly(1, 1, &[(&[2], &[-1], r(3, 1)), (&[0], &[0], r(5, 1))]);
        assert_eq!(f.partial_x(0).unwrap(), expected);
        assert_eq!(f.partial_x(1), Err(Error::IndexOutOfRange { index: 1, len: 1 }));
    }

    #[test]
    fn evaluate_examples() {
        let f = LaurentPoly::x(1, 1, 0).add(&LaurentPoly::y(1, 1, 0)).unwrap();
        assert_eq!(f.evaluate(&[Rat::zero()], &[Rat::one()]).unwrap(), Rat::one());
        let f = poly(0, 1, &[(&[], &[-2], Rat::one())]);
        assert_eq!(f.evaluate(&[], &[r(1, 2)]).unwrap(), r(4, 1));
        let f = poly(1, 1, &[(&[2], &[1], Rat::one()), (&[0], &[0], r(-3, 1))]);
        assert_eq!(f.evaluate(&[r(2, 1)], &[r(3, 1)]).unwrap(), r(9, 1));
        assert_eq!(f.evaluate(&[r(2, 1)], &[Rat::zero()]), Err(Error::ZeroInTorusCoordinate));
    }

    #[test]
    fn unit_decompose_examples() {
        let f = poly(0, 2, &[(&[], &[2, -1], r(3, 1))]);
        let u = f.unit_decompose().unwrap();
        assert_eq!(u.coeff(), &r(3, 1));
        assert_eq!(u.exps(), &[2, -1]);
        let f = LaurentPoly::x(1, 0, 0).add(&LaurentPoly::one(1, 0)).unwrap();
        assert!(f.unit_decompose().is_none());
        let f = LaurentPoly::y(0, 2, 0).add(&LaurentPoly::y(0, 2, 1)).unwrap();
        assert!(f.unit_decompose().is_none());
        assert!(LaurentPoly::zero(0, 1).unit_decompose().is_none());
    }

    /// Exhaustive search for an inverse of `y1 + y2` among Laurent polynomials
    /// with exponents in [-2, 2] and coefficients in {-2..2}, supported on at
    /// most two monomials. None exists.
    #[test]
    fn two_term_sum_has_no_small_inverse() {
        let target = LaurentPoly::y(0, 2, 0).add(&LaurentPoly::y(0, 2, 1)).unwrap();
        let monos: Vec<Monomial> =
            (-2..=2).flat_map(|a| (-2..=2).map(move |b| mono(&[], &[a, b]))).collect();
        let coeffs: Vec<Rat> = [-2, -1, 1, 2].into_iter().map(|c| r(c, 1)).collect();
        let one = LaurentPoly::one(0, 2);
        for (i, a) in monos.iter().enumerate() {
            for ca in &coeffs {
                let single = LaurentPoly::from_terms(0, 2, [(a.clone(), ca.clone())]);
                assert_ne!(target.mul(&single).unwrap(), one);
                for b in &monos[i + 1..] {
                    for cb in &coeffs {
                        let g = single.add(&LaurentPoly::from_terms(0, 2, [(b.clone(), cb.clone())])).unwrap();
                        assert_ne!(target.mul(&g).unwrap(), one);
                    }
                }
            }
        }
    }

    #[test]
    fn display_is_canonical() {
        let f = poly(2, 1, &[(&[1, 0], &[0], r(1, 1)), (&[0, 2], &[0], r(1, 1))]);
        assert_eq!(f.to_string(), "x1 + x2^2");
        assert_eq!(format!("{f:#}"), "x1+x2^2");
        let g = poly(1, 1, &[(&[1], &[0], r(1, 1)), (&[0], &[1], r(1, 1)), (&[0], &[0], r(-1, 1))]);
        assert_eq!(g.to_string(), "x1 + y1 - 1");
        let h = poly(1, 1, &[(&[2], &[-1], r(3, 2)), (&[0], &[0], r(-7, 1))]);
        assert_eq!(h.to_string(), "3/2*x1^2*y1^-1 - 7");
        assert_eq!(LaurentPoly::zero(1, 1).to_string(), "0");
        assert_eq!(poly(1, 0, &[(&[1], &[], r(-1, 1))]).to_string(), "-x1");
    }

    fn arb_poly(n: usize, m: usize) -> impl Strategy<Value = LaurentPoly> {
        let term = (
            prop::collection::vec(0u32..3, n),
            prop::collection::vec(-2i32..3, m),
            -5i64..6,
            1i64..4,
        );
        prop::collection::vec(term, 0..5).prop_map(move |ts| {
            LaurentPoly::from_terms(
                n,
                m,
                ts.into_iter().map(|(x, y, c, d)| (Monomial { x_exps: x, y_exps: y }, r(c, d))),
            )
        })
    }

    fn arb_unit(m: usize) -> impl Strategy<Value = Unit> {
        ((1i64..5, any::<bool>()), prop::collection::vec(-2i32..3, m)).prop_map(|((c, neg), e)| {
            Unit::new(r(if neg { -c } else { c }, 1), e).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(f in arb_poly(2, 1), g in arb_poly(2, 1), h in arb_poly(2, 1)) {
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
        }

        #[test]
        fn substitution_is_a_ring_map(
            f in arb_poly(2, 1),
            g in arb_poly(2, 1),
            xs in prop::collection::vec(arb_poly(1, 2), 2),
            ys in prop::collection::vec(arb_unit(2), 1),
        ) {
            let s = |p: &LaurentPoly| p.substitute((1, 2), &xs, &ys).unwrap();
            prop_assert_eq!(s(&f.mul(&g).unwrap()), s(&f).mul(&s(&g)).unwrap());
            prop_assert_eq!(s(&f.add(&g).unwrap()), s(&f).add(&s(&g)).unwrap());
        }

        #[test]
        fn evaluation_is_a_ring_map(
            f in arb_poly(2, 1),
            g in arb_poly(2, 1),
            x in prop::collection::vec((-4i64..5, 1i64..4), 2),
            y in (1i64..5, 1i64..4),
        ) {
            let xv: Vec<Rat> = x.into_iter().map(|(a, b)| r(a, b)).collect();
            let yv = vec![r(y.0, y.1)];
            let e = |p: &LaurentPoly| p.evaluate(&xv, &yv).unwrap();
            prop_assert_eq!(e(&f.mul(&g).unwrap()), e(&f) * e(&g));
            prop_assert_eq!(e(&f.add(&g).unwrap()), e(&f) + e(&g));
        }
    }
}
