//! Recursive-descent parser. Errors are collected rather than fatal: a bad
//! declaration is skipped up to the next `group`/`point`/`morphism`
//! keyword, and a bad assignment inside a morphism body up to its `;`.

use std::str::FromStr;

use num_bigint::BigInt;

use cag_core::Rat;

use crate::ast::*;
use crate::diag::{DiagKind, Diagnostic, Span};
use crate::lexer::{lex, Tok, Token};

#[derive(Debug, Clone, Default)]
pub struct Parsed {
    pub file: SourceFile,
    pub diagnostics: Vec<Diagnostic>,
    /// Indices into `file.items` of declarations that contained syntax errors.
    pub broken: Vec<usize>,
}

pub fn parse(src: &str) -> Parsed {
    let (toks, diags) = lex(src);
    let mut p = Parser { toks, pos: 0, diags };
    let mut file = SourceFile::default();
    let mut broken = Vec::new();
    loop {
        let start = p.span();
        let before = p.diags.len();
        let item = match p.peek() {
            Tok::Eof => break,
            Tok::Group => p.group_decl().map(Item::Group),
            Tok::Point => p.point_decl().map(Item::Point),
            Tok::Morphism => p.morphism_decl().map(Item::Morphism),
            other => {
                let msg = format!("expected `group`, `point` or `morphism`, found {}", other.describe());
                Err(p.error(msg))
            }
        };
        match item {
            Ok(item) => {
                if p.diags.len() > before {
                    broken.push(file.items.len());
                }
                file.items.push(Spanned::new(item, start.to(p.prev_span())));
            }
            Err(Abort) => p.recover_to_decl(),
        }
    }
    Parsed { file, diagnostics: p.diags, broken }
}

/// A group expression on its own, e.g. a CLI argument.
pub fn parse_group_expr(src: &str) -> Result<Spanned<GroupExpr>, Vec<Diagnostic>> {
    let (toks, diags) = lex(src);
    let mut p = Parser { toks, pos: 0, diags };
    let out = p.group_expr();
    p.finish(out)
}

/// A comma-separated list of coordinate assignments, as accepted by
/// `eval --at`: `x1 = 2, y1 = 3, E = [P, 0]`.
pub fn parse_point(src: &str) -> Result<Vec<Spanned<Assignment>>, Vec<Diagnostic>> {
    let (toks, diags) = lex(src);
    let mut p = Parser { toks, pos: 0, diags };
    let mut out = Vec::new();
    let result = (|| {
        if p.peek() == &Tok::Eof {
            return Ok(());
        }
        loop {
            out.push(p.assignment()?);
            if !p.eat(&Tok::Comma) {
                return Ok(());
            }
        }
    })();
    p.finish(result.map(|()| out))
}

struct Abort;

type PResult<T> = Result<T, Abort>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&mut self, msg: impl Into<String>) -> Abort {
        let span = self.span();
        self.diags.push(Diagnostic::new(DiagKind::SyntaxError, span, msg));
        Abort
    }

    fn expect(&mut self, tok: &Tok) -> PResult<Span> {
        if self.peek() == tok {
            Ok(self.bump().span)
        } else {
            let msg = format!("expected {}, found {}", tok.describe(), self.peek().describe());
            Err(self.error(msg))
        }
    }

    fn finish<T>(mut self, out: PResult<T>) -> Result<T, Vec<Diagnostic>> {
        if out.is_ok() && self.peek() != &Tok::Eof {
            let msg = format!("unexpected {}", self.peek().describe());
            self.error(msg);
        }
        match out {
            Ok(v) if self.diags.is_empty() => Ok(v),
            _ => Err(self.diags),
        }
    }

    fn recover_to_decl(&mut self) {
        while !matches!(self.peek(), Tok::Group | Tok::Point | Tok::Morphism | Tok::Eof) {
            self.bump();
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Spanned<String>> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok(Spanned::new(name, span))
            }
            other => Err(self.error(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn integer(&mut self) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Num(text) if !text.contains('/') => {
                self.bump();
                Ok(BigInt::from_str(&text).expect("lexer yields digits"))
            }
            other => Err(self.error(format!("expected an integer, found {}", other.describe()))),
        }
    }

    fn signed_integer(&mut self) -> PResult<BigInt> {
        let neg = self.eat(&Tok::Minus);
        let v = self.integer()?;
        Ok(if neg { -v } else { v })
    }

    fn small_integer<T: TryFrom<BigInt>>(&mut self, signed: bool) -> PResult<T> {
        let span = self.span();
        let v = if signed { self.signed_integer()? } else { self.integer()? };
        T::try_from(v).map_err(|_| {
            self.diags.push(Diagnostic::new(DiagKind::SyntaxError, span.to(self.prev_span()), "exponent out of range"));
            Abort
        })
    }

    fn group_decl(&mut self) -> PResult<GroupDecl> {
        self.expect(&Tok::Group)?;
        let name = self.ident("a group name")?;
        self.expect(&Tok::Eq)?;
        let expr = self.group_expr()?.node;
        self.eat(&Tok::Semi);
        Ok(GroupDecl { name, expr })
    }

    fn group_expr(&mut self) -> PResult<Spanned<GroupExpr>> {
        let start = self.span();
        let mut factors = vec![self.factor()?];
        while self.eat(&Tok::Star) {
            factors.push(self.factor()?);
        }
        if let [f] = factors.as_slice() {
            if f.node == (Factor { base: FactorBase::One, power: None }) {
                factors.clear();
            }
        }
        Ok(Spanned::new(GroupExpr { factors }, start.to(self.prev_span())))
    }

    fn factor(&mut self) -> PResult<Spanned<Factor>> {
        let start = self.span();
        let base = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "Ga" => FactorBase::Ga,
                    "Gm" => FactorBase::Gm,
                    _ => FactorBase::Name(name),
                }
            }
            Tok::Num(text) if text == "1" => {
                self.bump();
                FactorBase::One
            }
            other => return Err(self.error(format!("expected a group factor, found {}", other.describe()))),
        };
        let power = if self.eat(&Tok::Caret) { Some(self.small_integer::<u64>(false)?) } else { None };
        Ok(Spanned::new(Factor { base, power }, start.to(self.prev_span())))
    }

    fn point_decl(&mut self) -> PResult<PointDecl> {
        self.expect(&Tok::Point)?;
        let name = self.ident("a point name")?;
        self.expect(&Tok::On)?;
        let brick = self.ident("a brick name")?;
        self.eat(&Tok::Semi);
        Ok(PointDecl { name, brick })
    }

    fn morphism_decl(&mut self) -> PResult<MorphismDecl> {
        self.expect(&Tok::Morphism)?;
        let name = self.ident("a morphism name")?;
        self.expect(&Tok::Colon)?;
        let domain = self.group_expr()?;
        self.expect(&Tok::Arrow)?;
        let codomain = self.group_expr()?;
        self.expect(&Tok::LBrace)?;
        let mut assignments = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Eof | Tok::Group | Tok::Point | Tok::Morphism => {
                    let msg = format!("expected `}}`, found {}", self.peek().describe());
                    self.error(msg);
                    break;
                }
                _ => {}
            }
            match self.assignment().and_then(|a| self.expect(&Tok::Semi).map(|_| a)) {
                Ok(a) => assignments.push(a),
                Err(Abort) => {
                    while !matches!(self.peek(), Tok::Semi | Tok::RBrace | Tok::Eof | Tok::Group | Tok::Point | Tok::Morphism) {
                        self.bump();
                    }
                    self.eat(&Tok::Semi);
                }
            }
        }
        self.eat(&Tok::Semi);
        Ok(MorphismDecl { name, domain, codomain, assignments })
    }

    fn assignment(&mut self) -> PResult<Spanned<Assignment>> {
        let start = self.span();
        let name = self.ident("a coordinate or brick name")?;
        let target = Spanned::new(
            match coordinate(&name.node) {
                Some(('x', i)) => Target::X(i),
                Some((_, i)) => Target::Y(i),
                None => Target::Brick(name.node.clone()),
            },
            name.span,
        );
        self.expect(&Tok::Eq)?;
        let value = match target.node {
            Target::Brick(_) => Value::Brick(self.brick_value()?),
            _ => Value::Expr(self.expr()?),
        };
        Ok(Spanned::new(Assignment { target, value }, start.to(self.prev_span())))
    }

    fn brick_value(&mut self) -> PResult<BrickValue> {
        if self.peek() != &Tok::LBracket {
            let msg = format!("expected `[`, found {}", self.peek().describe());
            return Err(self.error(msg));
        }
        if self.peek_at(1) == &Tok::LBracket {
            let matrix = Some(self.matrix()?);
            let translation = if self.eat(&Tok::Plus) { Some(self.translation()?) } else { None };
            Ok(BrickValue { matrix, translation })
        } else {
            Ok(BrickValue { matrix: None, translation: Some(self.translation()?) })
        }
    }

    /// Comma-separated items between `[` and `]`, possibly none.
    fn bracketed<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Spanned<Vec<T>>> {
        let start = self.expect(&Tok::LBracket)?;
        let mut out = Vec::new();
        if !self.eat(&Tok::RBracket) {
            loop {
                out.push(item(self)?);
                if self.eat(&Tok::RBracket) {
                    break;
                }
                self.expect(&Tok::Comma)?;
            }
        }
        Ok(Spanned::new(out, start.to(self.prev_span())))
    }

    fn matrix(&mut self) -> PResult<Spanned<Vec<Vec<BigInt>>>> {
        self.bracketed(|p| p.bracketed(|p| p.signed_integer()).map(|row| row.node))
    }

    fn translation(&mut self) -> PResult<Spanned<Vec<Combo>>> {
        self.bracketed(|p| p.combo())
    }

    /// `0`, or signed terms `k*P` / `P`.
    fn combo(&mut self) -> PResult<Combo> {
        if matches!(self.peek(), Tok::Num(t) if t == "0") && matches!(self.peek_at(1), Tok::Comma | Tok::RBracket) {
            self.bump();
            return Ok(Combo::default());
        }
        let mut terms = Vec::new();
        let mut neg = self.eat(&Tok::Minus);
        loop {
            let coeff = if matches!(self.peek(), Tok::Num(_)) {
                let k = self.integer()?;
                self.expect(&Tok::Star)?;
                k
            } else {
                BigInt::from(1)
            };
            let symbol = self.ident("a point symbol")?;
            terms.push(ComboTerm { coeff: if neg { -coeff } else { coeff }, symbol });
            neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(Combo { terms }),
            };
            self.bump();
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let add = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            let (l, r) = (Box::new(lhs), Box::new(rhs));
            lhs = Spanned::new(if add { ExprKind::Add(l, r) } else { ExprKind::Sub(l, r) }, span);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            let rhs = self.unary()?;
            let span = lhs.span.to(rhs.span);
            lhs = Spanned::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek() == &Tok::Minus {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.to(inner.span);
            return Ok(Spanned::new(ExprKind::Neg(Box::new(inner)), span));
        }
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let k = self.small_integer::<i64>(true)?;
        let span = base.span.to(self.prev_span());
        Ok(Spanned::new(ExprKind::Pow(Box::new(base), k), span))
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Num(text) => {
                self.bump();
                match Rat::from_str(&text) {
                    Ok(r) => Ok(Spanned::new(ExprKind::Num(r), span)),
                    Err(_) => {
                        self.diags.push(Diagnostic::new(DiagKind::SyntaxError, span, format!("invalid rational `{text}`")));
                        Err(Abort)
                    }
                }
            }
            Tok::Ident(name) => {
                self.bump();
                match coordinate(&name) {
                    Some(('x', i)) => Ok(Spanned::new(ExprKind::X(i), span)),
                    Some((_, j)) => Ok(Spanned::new(ExprKind::Y(j), span)),
                    None => {
                        self.diags.push(Diagnostic::new(
                            DiagKind::UndeclaredIdentifier,
                            span,
                            format!("`{name}` is not a coordinate (expected x<i> or y<j>)"),
                        ));
                        Err(Abort)
                    }
                }
            }
            Tok::LParen => {
                self.bump();
                let mut inner = self.expr()?;
                let end = self.expect(&Tok::RParen)?;
                inner.span = span.to(end);
                Ok(inner)
            }
            other => Err(self.error(format!("expected an expression, found {}", other.describe()))),
        }
    }
}

/// `x3` → `('x', 3)`; indices are 1-based without leading zeros.
pub fn coordinate(name: &str) -> Option<(char, usize)> {
    let mut chars = name.chars();
    let kind = chars.next().filter(|c| *c == 'x' || *c == 'y')?;
    let digits = chars.as_str();
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(|i| (kind, i))
}
