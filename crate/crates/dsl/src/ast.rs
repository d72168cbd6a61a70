//! Abstract syntax. Every node that diagnostics may point at carries a span;
//! spans never take part in equality, so parsed and generated trees compare
//! by content alone.

use num_bigint::BigInt;

use cag_core::Rat;

use crate::diag::Span;

#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub node: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: Span) -> Self {
        Spanned { node, span }
    }

    /// Node with an empty span, for trees built in code.
    pub fn bare(node: T) -> Self {
        Spanned { node, span: Span::default() }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceFile {
    pub items: Vec<Spanned<Item>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Group(GroupDecl),
    Point(PointDecl),
    Morphism(MorphismDecl),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDecl {
    pub name: Spanned<String>,
    pub expr: GroupExpr,
}

/// Product of factors; empty means the trivial group, written `1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupExpr {
    pub factors: Vec<Spanned<Factor>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub base: FactorBase,
    /// Exponent as written; `None` when omitted.
    pub power: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorBase {
    Ga,
    Gm,
    /// The literal `1`.
    One,
    /// A declared group or, failing that, a brick.
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointDecl {
    pub name: Spanned<String>,
    pub brick: Spanned<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: Spanned<String>,
    /// Header groups; a lone name resolves like any other factor.
    pub domain: Spanned<GroupExpr>,
    pub codomain: Spanned<GroupExpr>,
    pub assignments: Vec<Spanned<Assignment>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    /// 1-based, as written.
    X(usize),
    Y(usize),
    Brick(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub target: Spanned<Target>,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Expr(Expr),
    Brick(BrickValue),
}

/// `[[..], ..] + [..]`, either half optional but not both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickValue {
    pub matrix: Option<Spanned<Vec<Vec<BigInt>>>>,
    pub translation: Option<Spanned<Vec<Combo>>>,
}

/// Integer combination of point symbols; empty is written `0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Combo {
    pub terms: Vec<ComboTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComboTerm {
    pub coeff: BigInt,
    pub symbol: Spanned<String>,
}

pub type Expr = Spanned<ExprKind>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// Non-negative literal; signs are [`ExprKind::Neg`].
    Num(Rat),
    /// `x<i>`, 1-based.
    X(usize),
    /// `y<j>`, 1-based.
    Y(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl ExprKind {
    pub fn boxed(self) -> Box<Expr> {
        Box::new(Spanned::bare(self))
    }
}
