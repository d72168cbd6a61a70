use crate::diag::{DiagKind, Diagnostic, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `p` or `p/q`, unsigned, as written.
    Num(String),
    Group,
    Point,
    Morphism,
    On,
    Eq,
    Semi,
    Colon,
    Comma,
    Arrow,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Group => "`group`".into(),
            Tok::Point => "`point`".into(),
            Tok::Morphism => "`morphism`".into(),
            Tok::On => "`on`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

/// Splits `src` into tokens. Unknown characters are reported and skipped;
/// `#` and `//` start line comments. The result always ends with `Eof`.
pub fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let offset = |i: usize| chars.get(i).map_or(src.len(), |&(o, _)| o);
    while i < chars.len() {
        let (start, c) = chars[i];
        let span_from = |j: usize| Span { start, end: offset(j), line, col };
        let peek = |k: usize| chars.get(i + k).map(|&(_, c)| c);
        let mut j = i + 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                col += 1;
                i += 1;
                continue;
            }
            '#' => {
                while j < chars.len() && chars[j].1 != '\n' {
                    j += 1;
                }
                col += j - i;
                i = j;
                continue;
            }
            '/' if peek(1) == Some('/') => {
                while j < chars.len() && chars[j].1 != '\n' {
                    j += 1;
                }
                col += j - i;
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
                match word.as_str() {
                    "group" => Tok::Group,
                    "point" => Tok::Point,
                    "morphism" => Tok::Morphism,
                    "on" => Tok::On,
                    _ => Tok::Ident(word),
                }
            }
            c if c.is_ascii_digit() => {
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j].1 == '/' && chars[j + 1].1.is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < chars.len() && (chars[j].1 == '.' || chars[j].1.is_ascii_alphabetic()) {
                    let mut k = j;
                    while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '.') {
                        k += 1;
                    }
                    let text: String = chars[i..k].iter().map(|&(_, c)| c).collect();
                    diags.push(Diagnostic::new(
                        DiagKind::SyntaxError,
                        span_from(k),
                        format!("malformed number `{text}` (decimals are not accepted; write p/q)"),
                    ));
                    col += k - i;
                    i = k;
                    continue;
                }
                Tok::Num(chars[i..j].iter().map(|&(_, c)| c).collect())
            }
            '-' if peek(1) == Some('>') => {
                j += 1;
                Tok::Arrow
            }
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            other => {
                diags.push(Diagnostic::new(DiagKind::SyntaxError, span_from(j), format!("unexpected character `{other}`")));
                col += 1;
                i += 1;
                continue;
            }
        };
        tokens.push(Token { tok, span: span_from(j) });
        col += j - i;
        i = j;
    }
    tokens.push(Token { tok: Tok::Eof, span: Span { start: src.len(), end: src.len(), line, col } });
    (tokens, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).0.into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn tokens_and_positions() {
        let (toks, diags) = lex("group G = Ga^2;\n  y1 -> 3/2 # note\n-x");
        assert!(diags.is_empty());
        assert_eq!(toks[0].tok, Tok::Group);
        assert_eq!(toks[4].tok, Tok::Caret);
        let y1 = &toks[7];
        assert_eq!((y1.tok.clone(), y1.span.line, y1.span.col), (Tok::Ident("y1".into()), 2, 3));
        assert_eq!(toks[8].tok, Tok::Arrow);
        assert_eq!(toks[9].tok, Tok::Num("3/2".into()));
        assert_eq!(toks[10].tok, Tok::Minus);
        assert_eq!(toks[10].span.line, 3);
    }

    #[test]
    fn decimals_and_stray_characters_are_reported() {
        let (toks, diags) = lex("x = 1.5 @ 2");
        assert_eq!(diags.len(), 2);
        assert!(diags[0].message.contains("1.5"));
        assert_eq!(diags[1].span.col, 9);
        assert_eq!(toks.iter().filter(|t| matches!(t.tok, Tok::Num(_))).count(), 1);
    }

    #[test]
    fn slash_needs_digits_on_both_sides() {
        assert_eq!(kinds("1 / 2"), vec![Tok::Num("1".into()), Tok::Num("2".into()), Tok::Eof]);
        assert_eq!(lex("1 / 2").1.len(), 1);
        assert_eq!(kinds("// all comment"), vec![Tok::Eof]);
    }
}
