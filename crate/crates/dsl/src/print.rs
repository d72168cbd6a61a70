//! Canonical text. `to_text` prints any syntax tree so that parsing the
//! output gives the same tree back; the `*_syntax` functions turn engine
//! objects into syntax, with terms in the polynomial ring's canonical order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use cag_core::{BrickId, FormalPointExpr, GroupPresentation, LaurentPoly, PointCombo, Rat, VarietyMorphism};

use crate::ast::*;

pub fn to_text(file: &SourceFile) -> String {
    let mut out = String::new();
    for item in &file.items {
        match &item.node {
            Item::Group(g) => writeln!(out, "group {} = {};", g.name.node, group_expr(&g.expr)),
            Item::Point(p) => writeln!(out, "point {} on {};", p.name.node, p.brick.node),
            Item::Morphism(m) => {
                let mut s = format!("morphism {} : {} -> {} {{\n", m.name.node, group_expr(&m.domain.node), group_expr(&m.codomain.node));
                for a in &m.assignments {
                    let _ = writeln!(s, "  {};", assignment(&a.node));
                }
                s.push_str("}\n");
                out.push_str(&s);
                Ok(())
            }
        }
        .expect("writing to a String");
    }
    out
}

pub fn group_expr(g: &GroupExpr) -> String {
    if g.factors.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = g
        .factors
        .iter()
        .map(|f| {
            let base = match &f.node.base {
                FactorBase::Ga => "Ga",
                FactorBase::Gm => "Gm",
                FactorBase::One => "1",
                FactorBase::Name(n) => n,
            };
            match f.node.power {
                Some(k) => format!("{base}^{k}"),
                None => base.to_string(),
            }
        })
        .collect();
    parts.join(" * ")
}

pub fn assignment(a: &Assignment) -> String {
    let target = match &a.target.node {
        Target::X(i) => format!("x{i}"),
        Target::Y(j) => format!("y{j}"),
        Target::Brick(b) => b.clone(),
    };
    let value = match &a.value {
        Value::Expr(e) => expr(e),
        Value::Brick(b) => brick_value(b),
    };
    format!("{target} = {value}")
}

fn brick_value(b: &BrickValue) -> String {
    let matrix = b.matrix.as_ref().map(|m| {
        let rows: Vec<String> = m
            .node
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    });
    let translation = b.translation.as_ref().map(|t| format!("[{}]", t.node.iter().map(combo).collect::<Vec<_>>().join(", ")));
    match (matrix, translation) {
        (Some(m), Some(t)) => format!("{m} + {t}"),
        (Some(m), None) => m,
        (None, Some(t)) => t,
        (None, None) => "[]".into(),
    }
}

pub fn combo(c: &Combo) -> String {
    if c.terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in c.terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let abs = t.coeff.abs();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !abs.is_one() {
            let _ = write!(s, "{abs}*");
        }
        s.push_str(&t.symbol.node);
    }
    s
}

fn precedence(e: &ExprKind) -> u8 {
    match e {
        ExprKind::Add(..) | ExprKind::Sub(..) => 0,
        ExprKind::Mul(..) => 1,
        ExprKind::Neg(_) | ExprKind::Pow(..) => 2,
        ExprKind::Num(_) | ExprKind::X(_) | ExprKind::Y(_) => 3,
    }
}

pub fn expr(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, &e.node, 0);
    s
}

fn write_expr(s: &mut String, e: &ExprKind, min: u8) {
    if precedence(e) < min {
        s.push('(');
        write_expr(s, e, 0);
        s.push(')');
        return;
    }
    match e {
        ExprKind::Num(r) => {
            debug_assert!(!r.is_negative(), "literals are non-negative");
            let _ = write!(s, "{r}");
        }
        ExprKind::X(i) => {
            let _ = write!(s, "x{i}");
        }
        ExprKind::Y(j) => {
            let _ = write!(s, "y{j}");
        }
        ExprKind::Neg(inner) => {
            s.push('-');
            write_expr(s, &inner.node, 2);
        }
        ExprKind::Add(l, r) | ExprKind::Sub(l, r) => {
            write_expr(s, &l.node, 0);
            s.push_str(if matches!(e, ExprKind::Add(..)) { " + " } else { " - " });
            write_expr(s, &r.node, 1);
        }
        ExprKind::Mul(l, r) => {
            write_expr(s, &l.node, 1);
            s.push('*');
            write_expr(s, &r.node, 2);
        }
        ExprKind::Pow(base, k) => {
            write_expr(s, &base.node, 3);
            let _ = write!(s, "^{k}");
        }
    }
}

pub fn group_syntax(g: &GroupPresentation) -> GroupExpr {
    let mut factors = Vec::new();
    let mut push = |base, k: usize| factors.push(Spanned::bare(Factor { base, power: Some(k as u64) }));
    if g.n > 0 {
        push(FactorBase::Ga, g.n);
    }
    if g.m > 0 {
        push(FactorBase::Gm, g.m);
    }
    for (b, &k) in g.bricks() {
        push(FactorBase::Name(b.as_str().to_string()), k);
    }
    GroupExpr { factors }
}

/// Canonical expression: terms in descending order, coefficient first, a
/// leading minus folded into the first factor.
pub fn poly_syntax(f: &LaurentPoly) -> Expr {
    let mut acc: Option<Expr> = None;
    for (mono, c) in f.terms().rev() {
        let mut factors: Vec<ExprKind> = Vec::new();
        if !c.abs().is_one() || mono.is_one() {
            factors.push(ExprKind::Num(c.abs()));
        }
        let vars = mono
            .x_exps
            .iter()
            .enumerate()
            .map(|(i, &e)| (ExprKind::X(i + 1), i64::from(e)))
            .chain(mono.y_exps.iter().enumerate().map(|(j, &e)| (ExprKind::Y(j + 1), i64::from(e))));
        for (var, e) in vars {
            match e {
                0 => {}
                1 => factors.push(var),
                _ => factors.push(ExprKind::Pow(Box::new(Spanned::bare(var)), e)),
            }
        }
        let negative = c.is_negative();
        if negative && acc.is_none() {
            factors[0] = ExprKind::Neg(Box::new(Spanned::bare(factors[0].clone())));
        }
        let mut iter = factors.into_iter();
        let first = Spanned::bare(iter.next().expect("at least one factor"));
        let term = iter.fold(first, |l, r| Spanned::bare(ExprKind::Mul(Box::new(l), r.boxed())));
        acc = Some(match acc {
            None => term,
            Some(l) if negative => Spanned::bare(ExprKind::Sub(Box::new(l), Box::new(term))),
            Some(l) => Spanned::bare(ExprKind::Add(Box::new(l), Box::new(term))),
        });
    }
    acc.unwrap_or_else(|| Spanned::bare(ExprKind::Num(Rat::zero())))
}

pub fn combo_syntax(c: &PointCombo) -> Combo {
    Combo {
        terms: c
            .terms()
            .filter(|(_, k)| !k.is_zero())
            .map(|(s, k)| ComboTerm { coeff: k.clone(), symbol: Spanned::bare(s.clone()) })
            .collect(),
    }
}

pub fn morphism_syntax(name: &str, f: &VarietyMorphism) -> MorphismDecl {
    let mut assignments = Vec::new();
    for (i, u) in f.u_coords().iter().enumerate() {
        let a = Assignment { target: Spanned::bare(Target::X(i + 1)), value: Value::Expr(poly_syntax(u)) };
        assignments.push(Spanned::bare(a));
    }
    for (j, t) in f.t_coords().iter().enumerate() {
        let a = Assignment { target: Spanned::bare(Target::Y(j + 1)), value: Value::Expr(poly_syntax(&t.to_poly(0))) };
        assignments.push(Spanned::bare(a));
    }
    for (b, blk) in f.brick_blocks() {
        let matrix = (blk.matrix.cols() > 0).then(|| {
            let rows = (0..blk.matrix.rows()).map(|r| blk.matrix.row(r).to_vec()).collect();
            Spanned::bare(rows)
        });
        let translation = (matrix.is_none() || !blk.translation.is_zero())
            .then(|| Spanned::bare(blk.translation.coords.iter().map(combo_syntax).collect()));
        let a = Assignment {
            target: Spanned::bare(Target::Brick(b.as_str().to_string())),
            value: Value::Brick(BrickValue { matrix, translation }),
        };
        assignments.push(Spanned::bare(a));
    }
    MorphismDecl {
        name: Spanned::bare(name.to_string()),
        domain: Spanned::bare(group_syntax(f.domain())),
        codomain: Spanned::bare(group_syntax(f.codomain())),
        assignments,
    }
}

/// Point symbols occurring in brick translations, per brick.
pub fn symbols_used<'a>(morphisms: impl IntoIterator<Item = &'a VarietyMorphism>) -> BTreeMap<BrickId, BTreeSet<String>> {
    let mut out: BTreeMap<BrickId, BTreeSet<String>> = BTreeMap::new();
    for f in morphisms {
        for (b, blk) in f.brick_blocks() {
            for c in &blk.translation.coords {
                for (s, _) in c.terms() {
                    out.entry(b.clone()).or_default().insert(s.clone());
                }
            }
        }
    }
    out
}

/// Self-contained source: point declarations for every symbol used, then
/// the morphisms with inline group headers.
pub fn morphisms_source(morphisms: &[(&str, &VarietyMorphism)]) -> SourceFile {
    let mut items = Vec::new();
    for (brick, symbols) in symbols_used(morphisms.iter().map(|(_, f)| *f)) {
        for s in symbols {
            let decl = PointDecl { name: Spanned::bare(s), brick: Spanned::bare(brick.as_str().to_string()) };
            items.push(Spanned::bare(Item::Point(decl)));
        }
    }
    for (name, f) in morphisms {
        items.push(Spanned::bare(Item::Morphism(morphism_syntax(name, f))));
    }
    SourceFile { items }
}

pub fn morphism_text(name: &str, f: &VarietyMorphism) -> String {
    to_text(&morphisms_source(&[(name, f)]))
}

fn compact_matrix(rows: impl Iterator<Item = Vec<BigInt>>) -> String {
    let rows: Vec<String> =
        rows.map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}

fn compact_translation(t: &FormalPointExpr) -> String {
    let parts: Vec<String> = t.coords.iter().map(|c| combo(&combo_syntax(c)).replace(' ', "")).collect();
    format!("[{}]", parts.join(","))
}

/// One-line coordinate tuple such as `(x1+x2^2, x2)`; a brick block that is
/// the identity without translation prints as `id_E`.
pub fn compact_tuple(f: &VarietyMorphism) -> String {
    let mut parts: Vec<String> = f.u_coords().iter().map(|u| format!("{u:#}")).collect();
    parts.extend(f.t_coords().iter().map(|t| format!("{t:#}")));
    for (b, blk) in f.brick_blocks() {
        let m = &blk.matrix;
        let is_identity = m.is_square() && *m == cag_core::IntMatrix::identity(m.rows());
        parts.push(match (is_identity, blk.translation.is_zero()) {
            (true, true) => format!("id_{b}"),
            (_, true) => format!("{b}:{}", compact_matrix((0..m.rows()).map(|r| m.row(r).to_vec()))),
            (_, false) => format!(
                "{b}:{}+{}",
                compact_matrix((0..m.rows()).map(|r| m.row(r).to_vec())),
                compact_translation(&blk.translation)
            ),
        });
    }
    format!("({})", parts.join(", "))
}
