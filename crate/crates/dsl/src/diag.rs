use std::fmt;

/// Location of a piece of source text. Line and column are 1-based and refer
/// to `start`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn to(self, other: Span) -> Span {
        Span { end: other.end.max(self.end), ..self }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagKind {
    SyntaxError,
    UndeclaredIdentifier,
    DuplicateDeclaration,
    NonUnitTorusCoordinate,
    MissingAssignment,
    ShapeMismatch,
    InvalidExpression,
    /// An engine operation refused its input (not pointed, wrong signature, ...).
    Engine,
}

impl DiagKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagKind::SyntaxError => "SyntaxError",
            DiagKind::UndeclaredIdentifier => "UndeclaredIdentifier",
            DiagKind::DuplicateDeclaration => "DuplicateDeclaration",
            DiagKind::NonUnitTorusCoordinate => "NonUnitTorusCoordinate",
            DiagKind::MissingAssignment => "MissingAssignment",
            DiagKind::ShapeMismatch => "ShapeMismatch",
            DiagKind::InvalidExpression => "InvalidExpression",
            DiagKind::Engine => "Engine",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagKind,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { kind, span, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}] {}: {}", self.kind.as_str(), self.span, self.message)
    }
}

impl std::error::Error for Diagnostic {}
