//! Random, valid source files for round-trip testing.

use rand::seq::SliceRandom;
use rand::Rng;

use cag_core::random::{self, PolyShape, BRICK_NAMES, POINT_NAMES};
use cag_core::{GroupPresentation, Rat};

use crate::ast::*;
use crate::elab::resolve_group;
use crate::print::morphism_syntax;

fn factor<R: Rng>(rng: &mut R, groups: &[String]) -> Spanned<Factor> {
    let base = match rng.gen_range(0..6) {
        0 | 1 => FactorBase::Ga,
        2 | 3 => FactorBase::Gm,
        4 if !groups.is_empty() => FactorBase::Name(groups.choose(rng).expect("nonempty").clone()),
        _ => FactorBase::Name(BRICK_NAMES.choose(rng).expect("nonempty").to_string()),
    };
    let power = rng.gen_bool(0.7).then(|| rng.gen_range(0..=2));
    Spanned::bare(Factor { base, power })
}

/// Small random group expression; the resolved group has `n, m ≤ 2`.
fn group_expr<R: Rng>(rng: &mut R, groups: &[(String, GroupPresentation)]) -> GroupExpr {
    let names: Vec<String> = groups.iter().map(|(n, _)| n.clone()).collect();
    loop {
        let count = rng.gen_range(0..=3);
        let mut factors: Vec<_> = (0..count).map(|_| factor(rng, &names)).collect();
        if count > 1 && rng.gen_bool(0.1) {
            factors.insert(0, Spanned::bare(Factor { base: FactorBase::One, power: None }));
        }
        let e = GroupExpr { factors };
        let (g, _) = resolve_group(&e, groups).expect("generated names resolve");
        if g.n <= 2 && g.m <= 2 && g.bricks().values().all(|&k| k <= 2) {
            return e;
        }
    }
}

fn literal<R: Rng>(rng: &mut R) -> ExprKind {
    ExprKind::Num(Rat::new(rng.gen_range(0..=9), rng.gen_range(1..=3)).expect("nonzero denominator"))
}

/// Arbitrary expression tree over the given variables; negative powers only
/// on torus variables, so the value is always defined.
fn expr<R: Rng>(rng: &mut R, n: usize, m: usize, depth: u32) -> ExprKind {
    let leaf = |rng: &mut R| match rng.gen_range(0..3) {
        0 if n > 0 => ExprKind::X(rng.gen_range(1..=n)),
        1 if m > 0 => {
            let y = ExprKind::Y(rng.gen_range(1..=m));
            if rng.gen_bool(0.3) {
                ExprKind::Pow(y.boxed(), rng.gen_range(-2..=2))
            } else {
                y
            }
        }
        _ => literal(rng),
    };
    if depth == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut R| expr(rng, n, m, depth - 1).boxed();
    match rng.gen_range(0..7) {
        0 => ExprKind::Add(sub(rng), sub(rng)),
        1 => ExprKind::Sub(sub(rng), sub(rng)),
        2 => ExprKind::Mul(sub(rng), sub(rng)),
        3 => ExprKind::Neg(sub(rng)),
        4 => ExprKind::Pow(sub(rng), rng.gen_range(0..=2)),
        _ => leaf(rng),
    }
}

pub fn source_file<R: Rng>(rng: &mut R) -> SourceFile {
    let mut items = Vec::new();
    let mut groups: Vec<(String, GroupPresentation)> = Vec::new();
    for i in 0..rng.gen_range(0..=2) {
        let name = format!("G{}", i + 1);
        let e = group_expr(rng, &groups);
        let (g, _) = resolve_group(&e, &groups).expect("resolves");
        groups.push((name.clone(), g));
        items.push(Spanned::bare(Item::Group(GroupDecl { name: Spanned::bare(name), expr: e })));
    }
    let mut points: Vec<(&str, &str)> = BRICK_NAMES.iter().flat_map(|b| POINT_NAMES.iter().map(move |p| (*p, *b))).collect();
    points.shuffle(rng);
    for (p, b) in points {
        let decl = PointDecl { name: Spanned::bare(p.to_string()), brick: Spanned::bare(b.to_string()) };
        items.push(Spanned::bare(Item::Point(decl)));
    }
    let shape = PolyShape { max_x_degree: 3, max_terms: 3, max_y_exp: 2 };
    for i in 0..rng.gen_range(1..=3) {
        let (dom, cod) = (group_expr(rng, &groups), group_expr(rng, &groups));
        let (g, _) = resolve_group(&dom, &groups).expect("resolves");
        let (h, _) = resolve_group(&cod, &groups).expect("resolves");
        let f = random::morphism(rng, &g, &h, shape);
        let mut decl = morphism_syntax(&format!("f{}", i + 1), &f);
        decl.domain = Spanned::bare(dom);
        decl.codomain = Spanned::bare(cod);
        for a in &mut decl.assignments {
            match (&a.node.target.node, &mut a.node.value) {
                (Target::X(_), Value::Expr(e)) if rng.gen_bool(0.5) => *e = Spanned::bare(expr(rng, g.n, g.m, 3)),
                (Target::Brick(_), Value::Brick(b)) if b.matrix.is_some() && b.translation.is_none() && rng.gen_bool(0.3) => {
                    let l = b.matrix.as_ref().expect("checked").node.len();
                    b.translation = Some(Spanned::bare(vec![Combo::default(); l]));
                }
                _ => {}
            }
        }
        decl.assignments.shuffle(rng);
        items.push(Spanned::bare(Item::Morphism(decl)));
    }
    SourceFile { items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elab::check;
    use crate::parser::parse;
    use crate::print::to_text;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_files_are_valid_and_round_trip() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..30 {
            let file = source_file(&mut rng);
            let text = to_text(&file);
            let parsed = parse(&text);
            assert!(parsed.diagnostics.is_empty(), "{text}\n{:?}", parsed.diagnostics);
            assert_eq!(parsed.file, file, "{text}");
            check(&text).unwrap_or_else(|d| panic!("{text}\n{d:?}"));
        }
    }
}
