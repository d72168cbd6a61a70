//! Resolution of syntax into engine objects: group names, point symbols,
//! coordinate expressions, and the per-morphism completeness checks.

use std::collections::{BTreeMap, BTreeSet};

use cag_core::{
    BrickBlock, BrickId, FormalPointExpr, GroupPoint, GroupPresentation, IntMatrix, LaurentPoly, PointCombo,
    PointRegistry, Rat, Unit, VarietyMorphism,
};

use crate::ast::*;
use crate::diag::{DiagKind, Diagnostic, Span};
use crate::parser::{coordinate, parse, Parsed};

/// Largest exponent accepted in expressions.
pub const MAX_EXPONENT: i64 = 1000;

#[derive(Debug, Clone)]
pub struct NamedMorphism {
    pub name: String,
    pub morphism: VarietyMorphism,
    pub span: Span,
}

/// Everything declared in a source file, in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Program {
    pub groups: Vec<(String, GroupPresentation)>,
    pub points: Vec<(String, BrickId)>,
    pub registry: PointRegistry,
    pub morphisms: Vec<NamedMorphism>,
}

impl Program {
    pub fn group(&self, name: &str) -> Option<&GroupPresentation> {
        self.groups.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn morphism(&self, name: &str) -> Option<&NamedMorphism> {
        self.morphisms.iter().find(|m| m.name == name)
    }
}

/// Parses and elaborates; any diagnostic makes this an error.
pub fn check(src: &str) -> Result<Program, Vec<Diagnostic>> {
    let parsed = parse(src);
    let (program, mut diags) = elaborate(&parsed);
    let mut all = parsed.diagnostics;
    all.append(&mut diags);
    if all.is_empty() {
        Ok(program)
    } else {
        all.sort_by_key(|d| d.span.start);
        Err(all)
    }
}

pub fn elaborate(parsed: &Parsed) -> (Program, Vec<Diagnostic>) {
    let mut cx = Elab::default();
    for (idx, item) in parsed.file.items.iter().enumerate() {
        let broken = parsed.broken.contains(&idx);
        match &item.node {
            Item::Group(g) => cx.group_decl(g),
            Item::Point(p) => cx.point_decl(p),
            Item::Morphism(m) => cx.morphism_decl(m, item.span, broken),
        }
    }
    (cx.program, cx.diags)
}

#[derive(Default)]
struct Elab {
    program: Program,
    bricks_seen: BTreeSet<String>,
    diags: Vec<Diagnostic>,
}

fn err(kind: DiagKind, span: Span, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(kind, span, msg)
}

/// Resolves a group expression against declared groups; other names are
/// bricks.
pub fn resolve_group(
    g: &GroupExpr,
    groups: &[(String, GroupPresentation)],
) -> Result<(GroupPresentation, Vec<String>), Vec<Diagnostic>> {
    let mut out = GroupPresentation::trivial();
    let mut bricks = Vec::new();
    let mut diags = Vec::new();
    for f in &g.factors {
        let k = f.node.power.unwrap_or(1);
        let Ok(k) = usize::try_from(k) else {
            diags.push(err(DiagKind::InvalidExpression, f.span, "power too large"));
            continue;
        };
        let part = match &f.node.base {
            FactorBase::Ga => GroupPresentation::vector(k),
            FactorBase::Gm => GroupPresentation::torus(k),
            FactorBase::One => GroupPresentation::trivial(),
            FactorBase::Name(name) => {
                if let Some((_, grp)) = groups.iter().find(|(n, _)| n == name) {
                    (0..k).fold(GroupPresentation::trivial(), |acc, _| acc.product(grp))
                } else if coordinate(name).is_some() {
                    diags.push(err(DiagKind::InvalidExpression, f.span, format!("`{name}` names a coordinate, not a brick")));
                    continue;
                } else {
                    bricks.push(name.clone());
                    GroupPresentation::trivial().with_brick(name.as_str(), k)
                }
            }
        };
        out = out.product(&part);
    }
    if diags.is_empty() {
        Ok((out, bricks))
    } else {
        Err(diags)
    }
}

impl Elab {
    fn group(&mut self, g: &Spanned<GroupExpr>) -> Option<GroupPresentation> {
        match resolve_group(&g.node, &self.program.groups) {
            Ok((grp, bricks)) => {
                self.bricks_seen.extend(bricks);
                Some(grp)
            }
            Err(mut d) => {
                self.diags.append(&mut d);
                None
            }
        }
    }

    fn group_decl(&mut self, g: &GroupDecl) {
        let name = &g.name.node;
        if self.program.group(name).is_some() {
            self.diags.push(err(DiagKind::DuplicateDeclaration, g.name.span, format!("group `{name}` is already declared")));
            return;
        }
        if self.bricks_seen.contains(name) {
            self.diags.push(err(
                DiagKind::DuplicateDeclaration,
                g.name.span,
                format!("`{name}` is already in use as a brick"),
            ));
            return;
        }
        if matches!(name.as_str(), "Ga" | "Gm") || coordinate(name).is_some() {
            self.diags.push(err(DiagKind::InvalidExpression, g.name.span, format!("`{name}` is reserved")));
            return;
        }
        if let Some(grp) = self.group(&Spanned::bare(g.expr.clone())) {
            self.program.groups.push((name.clone(), grp));
        }
    }

    fn point_decl(&mut self, p: &PointDecl) {
        let brick = &p.brick.node;
        if self.program.group(brick).is_some() || matches!(brick.as_str(), "Ga" | "Gm") || coordinate(brick).is_some() {
            self.diags.push(err(DiagKind::InvalidExpression, p.brick.span, format!("`{brick}` is not a brick")));
            return;
        }
        self.bricks_seen.insert(brick.clone());
        let id = BrickId::new(brick.as_str());
        if !self.program.registry.declare(id.clone(), p.name.node.as_str()) {
            self.diags.push(err(
                DiagKind::DuplicateDeclaration,
                p.name.span,
                format!("point `{}` is already declared on `{brick}`", p.name.node),
            ));
            return;
        }
        self.program.points.push((p.name.node.clone(), id));
    }

    fn morphism_decl(&mut self, m: &MorphismDecl, span: Span, broken: bool) {
        let name = &m.name.node;
        let duplicate = self.program.morphism(name).is_some();
        if duplicate {
            self.diags.push(err(DiagKind::DuplicateDeclaration, m.name.span, format!("morphism `{name}` is already declared")));
        }
        let (Some(g), Some(h)) = (self.group(&m.domain), self.group(&m.codomain)) else {
            return;
        };
        let before = self.diags.len();
        let mut u: Vec<Option<LaurentPoly>> = vec![None; h.n];
        let mut t: Vec<Option<Unit>> = vec![None; h.m];
        let mut blocks: BTreeMap<BrickId, BrickBlock> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for a in &m.assignments {
            let target = &a.node.target;
            if !seen.insert(target.node.clone()) {
                self.diags.push(err(DiagKind::DuplicateDeclaration, target.span, "coordinate assigned twice"));
                continue;
            }
            match (&target.node, &a.node.value) {
                (Target::X(i), Value::Expr(e)) => {
                    if *i > h.n {
                        self.diags.push(err(DiagKind::UndeclaredIdentifier, target.span, format!("codomain {h} has no coordinate x{i}")));
                        continue;
                    }
                    if let Some(p) = self.expr(e, g.n, g.m) {
                        u[i - 1] = Some(p);
                    }
                }
                (Target::Y(j), Value::Expr(e)) => {
                    if *j > h.m {
                        self.diags.push(err(DiagKind::UndeclaredIdentifier, target.span, format!("codomain {h} has no coordinate y{j}")));
                        continue;
                    }
                    let Some(p) = self.expr(e, g.n, g.m) else { continue };
                    match p.unit_decompose() {
                        Some(unit) => t[j - 1] = Some(unit),
                        None => self.diags.push(err(
                            DiagKind::NonUnitTorusCoordinate,
                            e.span,
                            format!("y{j} = {p} is not a unit c*y^a"),
                        )),
                    }
                }
                (Target::Brick(b), Value::Brick(v)) => {
                    let id = BrickId::new(b.as_str());
                    let l = h.brick_power(&id);
                    if l == 0 {
                        self.diags.push(err(DiagKind::UndeclaredIdentifier, target.span, format!("codomain {h} has no brick `{b}`")));
                        continue;
                    }
                    if let Some(blk) = self.brick_block(&id, v, l, g.brick_power(&id)) {
                        blocks.insert(id, blk);
                    }
                }
                _ => unreachable!("the parser pairs targets with values"),
            }
        }
        if self.diags.len() > before {
            return;
        }
        let mut missing: Vec<String> = Vec::new();
        missing.extend(u.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(i, _)| format!("x{}", i + 1)));
        missing.extend(t.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(j, _)| format!("y{}", j + 1)));
        missing.extend(h.bricks().keys().filter(|b| !blocks.contains_key(*b)).map(ToString::to_string));
        if !missing.is_empty() {
            if !broken {
                self.diags.push(err(
                    DiagKind::MissingAssignment,
                    m.name.span,
                    format!("morphism `{name}` does not assign {}", missing.join(", ")),
                ));
            }
            return;
        }
        let u = u.into_iter().map(Option::unwrap).collect();
        let t = t.into_iter().map(Option::unwrap).collect();
        match VarietyMorphism::new(g, h, u, t, blocks) {
            Ok(morphism) if !duplicate => self.program.morphisms.push(NamedMorphism { name: name.clone(), morphism, span }),
            Ok(_) => {}
            Err(e) => self.diags.push(err(DiagKind::Engine, span, e.to_string())),
        }
    }

    fn brick_block(&mut self, brick: &BrickId, v: &BrickValue, l: usize, k: usize) -> Option<BrickBlock> {
        let before = self.diags.len();
        let matrix = match &v.matrix {
            None => IntMatrix::zeros(l, k),
            Some(m) => {
                if m.node.len() != l || m.node.iter().any(|r| r.len() != k) {
                    self.diags.push(err(DiagKind::ShapeMismatch, m.span, format!("`{brick}` block must be {l}x{k}")));
                    IntMatrix::zeros(l, k)
                } else {
                    IntMatrix::new(l, k, m.node.iter().flatten().cloned().collect()).expect("shape checked")
                }
            }
        };
        let translation = match &v.translation {
            None => FormalPointExpr::zero(brick.clone(), l),
            Some(tr) => {
                if tr.node.len() != l {
                    self.diags.push(err(DiagKind::ShapeMismatch, tr.span, format!("`{brick}` translation needs {l} entries")));
                }
                let coords = tr.node.iter().map(|c| self.combo(brick, c)).collect();
                FormalPointExpr { brick: brick.clone(), coords }
            }
        };
        (self.diags.len() == before).then_some(BrickBlock { matrix, translation })
    }

    fn combo(&mut self, brick: &BrickId, c: &Combo) -> PointCombo {
        combo_value(brick, c, &self.program.registry, &mut self.diags)
    }

    fn expr(&mut self, e: &Expr, n: usize, m: usize) -> Option<LaurentPoly> {
        eval_expr(e, n, m, &mut self.diags)
    }
}

fn combo_value(brick: &BrickId, c: &Combo, registry: &PointRegistry, diags: &mut Vec<Diagnostic>) -> PointCombo {
    for t in &c.terms {
        if !registry.contains(brick, &t.symbol.node) {
            diags.push(err(
                DiagKind::UndeclaredIdentifier,
                t.symbol.span,
                format!("point `{}` is not declared on `{brick}`", t.symbol.node),
            ));
        }
    }
    PointCombo::from_terms(c.terms.iter().map(|t| (t.symbol.node.clone(), t.coeff.clone())))
}

/// Value of an expression in the Laurent ring with `n` polynomial and `m`
/// invertible variables.
pub fn eval_expr(e: &Expr, n: usize, m: usize, diags: &mut Vec<Diagnostic>) -> Option<LaurentPoly> {
    let bin = |l: &Expr, r: &Expr, diags: &mut Vec<Diagnostic>| Some((eval_expr(l, n, m, diags), eval_expr(r, n, m, diags)));
    match &e.node {
        ExprKind::Num(r) => Some(LaurentPoly::constant(n, m, r.clone())),
        ExprKind::X(i) if *i <= n => Some(LaurentPoly::x(n, m, i - 1)),
        ExprKind::Y(j) if *j <= m => Some(LaurentPoly::y(n, m, j - 1)),
        ExprKind::X(i) => {
            diags.push(err(DiagKind::UndeclaredIdentifier, e.span, format!("the domain has no coordinate x{i}")));
            None
        }
        ExprKind::Y(j) => {
            diags.push(err(DiagKind::UndeclaredIdentifier, e.span, format!("the domain has no coordinate y{j}")));
            None
        }
        ExprKind::Neg(inner) => eval_expr(inner, n, m, diags).map(|p| p.neg()),
        ExprKind::Add(l, r) => match bin(l, r, diags)? {
            (Some(a), Some(b)) => a.add(&b).ok(),
            _ => None,
        },
        ExprKind::Sub(l, r) => match bin(l, r, diags)? {
            (Some(a), Some(b)) => a.sub(&b).ok(),
            _ => None,
        },
        ExprKind::Mul(l, r) => match bin(l, r, diags)? {
            (Some(a), Some(b)) => a.mul(&b).ok(),
            _ => None,
        },
        ExprKind::Pow(base, k) => {
            let b = eval_expr(base, n, m, diags)?;
            if k.abs() > MAX_EXPONENT {
                diags.push(err(DiagKind::InvalidExpression, e.span, format!("exponent {k} exceeds {MAX_EXPONENT}")));
                return None;
            }
            let p = b.pow_signed(*k);
            if p.is_none() {
                diags.push(err(DiagKind::InvalidExpression, e.span, format!("negative power of `{b}`, which is not a unit")));
            }
            p
        }
    }
}

/// Point of `g` from `eval --at` assignments; unassigned coordinates take
/// their value at the neutral element.
pub fn resolve_point(
    assignments: &[Spanned<Assignment>],
    g: &GroupPresentation,
    registry: &PointRegistry,
) -> Result<GroupPoint, Vec<Diagnostic>> {
    let mut p = GroupPoint::identity(g);
    let mut diags = Vec::new();
    let mut seen = BTreeSet::new();
    let constant = |e: &Expr, diags: &mut Vec<Diagnostic>| -> Option<Rat> {
        let v = eval_expr(e, 0, 0, diags)?;
        Some(v.constant_term())
    };
    for a in assignments {
        let target = &a.node.target;
        if !seen.insert(target.node.clone()) {
            diags.push(err(DiagKind::DuplicateDeclaration, target.span, "coordinate given twice"));
            continue;
        }
        match (&target.node, &a.node.value) {
            (Target::X(i), Value::Expr(e)) if *i <= g.n => {
                if let Some(v) = constant(e, &mut diags) {
                    p.u[i - 1] = v;
                }
            }
            (Target::Y(j), Value::Expr(e)) if *j <= g.m => match constant(e, &mut diags) {
                Some(v) if v.is_zero() => {
                    diags.push(err(DiagKind::NonUnitTorusCoordinate, e.span, format!("y{j} must be nonzero")));
                }
                Some(v) => p.t[j - 1] = v,
                None => {}
            },
            (Target::Brick(b), Value::Brick(v)) if g.brick_power(&BrickId::new(b.as_str())) > 0 => {
                let id = BrickId::new(b.as_str());
                let l = g.brick_power(&id);
                match (&v.matrix, &v.translation) {
                    (None, Some(tr)) if tr.node.len() == l => {
                        let coords = tr.node.iter().map(|c| combo_value(&id, c, registry, &mut diags)).collect();
                        let slot = p.bricks.iter_mut().find(|e| e.brick == id).expect("identity has every brick");
                        *slot = FormalPointExpr { brick: id, coords };
                    }
                    _ => diags.push(err(DiagKind::ShapeMismatch, target.span, format!("`{b}` needs a list of {l} point combinations"))),
                }
            }
            _ => diags.push(err(DiagKind::UndeclaredIdentifier, target.span, format!("{g} has no such coordinate"))),
        }
    }
    if diags.is_empty() {
        Ok(p)
    } else {
        Err(diags)
    }
}

/// Inverse of [`resolve_point`] for printing: `x1 = 2, y1 = 3, E = [P, 0]`.
pub fn point_text(p: &GroupPoint) -> String {
    let mut parts: Vec<String> = p.u.iter().enumerate().map(|(i, v)| format!("x{} = {v}", i + 1)).collect();
    parts.extend(p.t.iter().enumerate().map(|(j, v)| format!("y{} = {v}", j + 1)));
    for e in &p.bricks {
        let coords: Vec<String> = e.coords.iter().map(|c| crate::print::combo(&crate::print::combo_syntax(c))).collect();
        parts.push(format!("{} = [{}]", e.brick, coords.join(", ")));
    }
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diags(src: &str) -> Vec<Diagnostic> {
        check(src).expect_err("should fail")
    }

    #[test]
    fn shear_and_groups() {
        let p = check("group G = Ga^2 * Gm^1;\nmorphism f : G -> G { x1 = x1 + x2^2; x2 = x2; y1 = y1; }").unwrap();
        assert_eq!(p.group("G"), Some(&GroupPresentation::new(2, 1, [])));
        let f = &p.morphism("f").unwrap().morphism;
        let x = |i| LaurentPoly::x(2, 1, i);
        assert_eq!(f.u_coords()[0], x(0).add(&x(1).pow(2)).unwrap());
        assert!(f.is_pointed() && !f.is_homomorphism());
    }

    #[test]
    fn non_unit_torus_coordinate_is_located() {
        let src = "group G = Gm;\nmorphism f : G -> G {\n  y1 = y1 + 1;\n}";
        let d = diags(src);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagKind::NonUnitTorusCoordinate);
        assert_eq!((d[0].span.line, d[0].span.col), (3, 8));
        assert_eq!(&src[d[0].span.start..d[0].span.end], "y1 + 1");
    }

    #[test]
    fn declaration_errors() {
        let d = diags("group G = Ga;\ngroup G = Gm;\npoint P on E;\npoint P on E;\nmorphism f : G -> Ga^2 { x1 = x3; }");
        let kinds: Vec<_> = d.iter().map(|d| d.kind).collect();
        assert_eq!(
            kinds,
            vec![DiagKind::DuplicateDeclaration, DiagKind::DuplicateDeclaration, DiagKind::UndeclaredIdentifier]
        );
        let d = diags("morphism f : Ga -> Ga^2 { x1 = x1; }");
        assert_eq!(d[0].kind, DiagKind::MissingAssignment);
        assert!(d[0].message.contains("x2"));
        let d = diags("morphism f : E -> E { E = [[1]] + [P]; }");
        assert_eq!(d[0].kind, DiagKind::UndeclaredIdentifier);
        let d = diags("morphism f : E^2 -> E { E = [[1]]; }");
        assert_eq!(d[0].kind, DiagKind::ShapeMismatch);
        let d = diags("morphism f : Ga -> Ga { x1 = (x1 + 1)^-1; }");
        assert_eq!(d[0].kind, DiagKind::InvalidExpression);
        let d = diags("group G = E; group E = Ga;");
        assert_eq!(d[0].kind, DiagKind::DuplicateDeclaration);
    }

    #[test]
    fn bricks_and_translations() {
        let src = "point P on E; point Q on E;\nmorphism f : E^2 -> E * Gm { E = [[1, -1]] + [2*P - Q]; y1 = 3; }\nmorphism c : 1 -> E { E = [P]; }";
        let p = check(src).unwrap();
        let f = &p.morphism("f").unwrap().morphism;
        let blk = &f.brick_blocks()[&BrickId::new("E")];
        assert_eq!(blk.matrix, IntMatrix::from_rows(&[vec![1, -1]]).unwrap());
        assert_eq!(blk.translation.coords[0].to_string(), "2*P - Q");
        assert_eq!(f.t_coords()[0], Unit::new(Rat::from(3), vec![]).unwrap());
        assert_eq!(p.morphism("c").unwrap().morphism.brick_blocks()[&BrickId::new("E")].matrix.cols(), 0);
    }

    #[test]
    fn points() {
        let g = GroupPresentation::new(1, 1, [(BrickId::new("E"), 1)]);
        let mut reg = PointRegistry::new();
        reg.declare(BrickId::new("E"), "P");
        let a = crate::parser::parse_point("x1 = -2/3, E = [2*P]").unwrap();
        let p = resolve_point(&a, &g, &reg).unwrap();
        assert_eq!(point_text(&p), "x1 = -2/3, y1 = 1, E = [2*P]");
        let a = crate::parser::parse_point("y1 = 0").unwrap();
        assert_eq!(resolve_point(&a, &g, &reg).unwrap_err()[0].kind, DiagKind::NonUnitTorusCoordinate);
        let a = crate::parser::parse_point("x1 = x1").unwrap();
        assert!(resolve_point(&a, &g, &reg).is_err());
    }
}
