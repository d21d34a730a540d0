//! Recursive-descent parser for the finite-sum expression language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" atom)?
//! atom   := INT | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
//!         | "sum" "(" IDENT "," expr "," expr "," expr ")"
//!         | "floor" "(" expr ")"
//! ```
//!
//! `p/q` with integer `p`, `q` is ordinary division, which yields the same
//! value as a rational literal.

use num_bigint::BigInt;
use thiserror::Error;

use super::ast::{BinOp, Builtin, Expr, ExprKind, Span};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{column}: expected {}, found {found}", .expected.join(" or "))]
    Unexpected {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{column}: {name} takes {arity} argument(s), got {got}")]
    Arity {
        line: usize,
        column: usize,
        name: String,
        arity: String,
        got: usize,
    },
    #[error("{line}:{column}: unexpected character `{ch}`")]
    BadChar { line: usize, column: usize, ch: char },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Unexpected { line, column, .. }
            | ParseError::Arity { line, column, .. }
            | ParseError::BadChar { line, column, .. } => (*line, *column),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Token {
    tok: Tok,
    span: Span,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, c)) = chars.peek() {
        let (tl, tc) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
                col += 1;
            }
            Tok::Int(src[start..end].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
                col += 1;
            }
            Tok::Ident(src[start..end].to_string())
        } else {
            chars.next();
            col += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ch => {
                    return Err(ParseError::BadChar {
                        line: tl,
                        column: tc,
                        ch,
                    })
                }
            }
        };
        let end = chars.peek().map_or(src.len(), |&(i, _)| i);
        out.push(Token {
            tok,
            span: Span {
                start,
                end,
                line: tl,
                column: tc,
            },
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span {
            start: src.len(),
            end: src.len(),
            line,
            column: col,
        },
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = Token {
            tok: self.toks[self.pos].tok.clone(),
            span: self.toks[self.pos].span,
        };
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let span = self.span();
        ParseError::Unexpected {
            line: span.line,
            column: span.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn join(a: Span, b: Span) -> Span {
        Span {
            start: a.start,
            end: b.end,
            line: a.line,
            column: a.column,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = Self::join(lhs.span, rhs.span);
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            let span = Self::join(lhs.span, rhs.span);
            lhs = Expr {
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let start = self.bump().span;
            let inner = self.factor()?;
            let span = Self::join(start, inner.span);
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.atom()?;
            let span = Self::join(base.span, exp.span);
            return Ok(Expr {
                kind: ExprKind::Pow(Box::new(base), Box::new(exp)),
                span,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                let span = self.bump().span;
                Ok(Expr {
                    kind: ExprKind::Lit(Rational::from(v)),
                    span,
                })
            }
            Tok::LParen => {
                let open = self.bump().span;
                let mut inner = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                inner.span = Self::join(open, close);
                Ok(inner)
            }
            Tok::Ident(name) => {
                let start = self.bump().span;
                if *self.peek() != Tok::LParen {
                    return Ok(Expr {
                        kind: ExprKind::Var(name),
                        span: start,
                    });
                }
                self.bump();
                match name.as_str() {
                    "sum" => self.sum_call(start),
                    _ => self.call(name, start),
                }
            }
            _ => Err(self.unexpected(&["integer", "identifier", "`(`", "`-`"])),
        }
    }

    fn sum_call(&mut self, start: Span) -> Result<Expr, ParseError> {
        let index = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                s
            }
            _ => return Err(self.unexpected(&["index identifier"])),
        };
        self.expect(Tok::Comma, "`,`")?;
        let lo = self.expr()?;
        self.expect(Tok::Comma, "`,`")?;
        let hi = self.expr()?;
        self.expect(Tok::Comma, "`,`")?;
        let body = self.expr()?;
        let close = self.expect(Tok::RParen, "`)`")?;
        Ok(Expr {
            kind: ExprKind::Sum {
                index,
                lo: Box::new(lo),
                hi: Box::new(hi),
                body: Box::new(body),
            },
            span: Self::join(start, close),
        })
    }

    fn call(&mut self, name: String, start: Span) -> Result<Expr, ParseError> {
        let mut args = vec![self.expr()?];
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                    args.push(self.expr()?);
                }
                Tok::RParen => break,
                _ => return Err(self.unexpected(&["`,`", "`)`"])),
            }
        }
        let close = self.bump().span;
        let span = Self::join(start, close);
        let arity_error = |arity: String, got: usize| ParseError::Arity {
            line: start.line,
            column: start.column,
            name: name.clone(),
            arity,
            got,
        };
        let kind = if name == "floor" {
            if args.len() != 1 {
                return Err(arity_error("1".into(), args.len()));
            }
            ExprKind::Floor(Box::new(args.pop().expect("one argument")))
        } else if let Some(b) = Builtin::from_name(&name) {
            let (lo, hi) = b.arity();
            if args.len() < lo || args.len() > hi {
                let arity = if lo == hi {
                    lo.to_string()
                } else {
                    format!("{lo} to {hi}")
                };
                return Err(arity_error(arity, args.len()));
            }
            ExprKind::Kernel(b, args)
        } else {
            ExprKind::Apply(name, args)
        };
        Ok(Expr { kind, span })
    }
}

/// Parse a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected(&["operator", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(s: &str) -> Expr {
        Expr::new(ExprKind::Var(s.into()))
    }

    fn int(v: i64) -> Expr {
        Expr::lit(Rational::from(v))
    }

    #[test]
    fn single_sum() {
        let e = parse("sum(k,1,n, 1/k)").unwrap();
        let expected = Expr::new(ExprKind::Sum {
            index: "k".into(),
            lo: Box::new(int(1)),
            hi: Box::new(var("n")),
            body: Box::new(Expr::binary(BinOp::Div, int(1), var("k"))),
        });
        assert_eq!(e, expected);
        assert_eq!(e.to_string(), "sum(k, 1, n, 1 / k)");
    }

    #[test]
    fn nested_sum() {
        let e = parse("sum(k,1,n, sum(j,0,k-1, 1/(n-j)^2))").unwrap();
        let ExprKind::Sum { body, .. } = &e.kind else {
            panic!("outer sum")
        };
        let ExprKind::Sum { index, hi, body, .. } = &body.kind else {
            panic!("inner sum")
        };
        assert_eq!(index, "j");
        assert_eq!(**hi, Expr::binary(BinOp::Sub, var("k"), int(1)));
        assert!(matches!(&body.kind, ExprKind::Binary(BinOp::Div, _, d) if matches!(d.kind, ExprKind::Pow(..))));
    }

    #[test]
    fn unclosed_paren_reports_position() {
        let err = parse("sum(k,1,n, 1/k").unwrap_err();
        match &err {
            ParseError::Unexpected {
                line,
                column,
                expected,
                found,
            } => {
                assert_eq!((*line, *column), (1, 15));
                assert!(expected.contains(&"`)`".to_string()));
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn multiline_positions() {
        let err = parse("1 +\n  * 2").unwrap_err();
        assert_eq!(err.position(), (2, 3));
        let err = parse("1 + $").unwrap_err();
        assert_eq!(err, ParseError::BadChar { line: 1, column: 5, ch: '$' });
    }

    #[test]
    fn kernel_arity_is_checked() {
        assert!(matches!(parse("H(n, 2, 3)"), Err(ParseError::Arity { got: 3, .. })));
        assert!(matches!(parse("floor(1, 2)"), Err(ParseError::Arity { .. })));
        assert!(parse("H(n, 2) + O(n) + G(n, 1, 1)").is_ok());
    }

    #[test]
    fn unknown_calls_are_applications() {
        let e = parse("a(n - j)").unwrap();
        assert!(matches!(&e.kind, ExprKind::Apply(name, args) if name == "a" && args.len() == 1));
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse("-2^2").unwrap().to_string(), "-2^2");
        assert_eq!(parse("(-1)^(k-j+1)").unwrap().to_string(), "(-1)^(k - j + 1)");
        assert_eq!(parse("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse("(a - b) - c").unwrap().to_string(), "a - b - c");
        assert_eq!(parse("x / (y * z)").unwrap().to_string(), "x / (y * z)");
        assert!(parse("2^-1").is_err());
        assert!(parse("x^2^3").is_err());
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        assert!(parse("1 2").is_err());
        assert!(parse("").is_err());
        assert!(parse("sum(1, 1, n, k)").is_err());
    }
}
