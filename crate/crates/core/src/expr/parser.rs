//! Recursive-descent parser for the expression language.
//!
//! ```text
//! toplevel := expr ("where" IDENT "=" expr ("," IDENT "=" expr)*)? ;
//! expr     := term (("+" | "-") term)* ;
//! term     := factor ("*" factor)* ;
//! factor   := "-" factor | base ("^" NAT)? ;
//! base     := "q" | "q0" | "q1" | "q2" | "q3" | "conj" "(" expr ")"
//!           | NUMBER | "i" | "j" | "k" | IDENT | "(" expr ")" ;
//! NUMBER   := digits | digits "/" digits | digits "." digits ;
//! ```
//!
//! Multiplication is always explicit. `where` bindings are substituted at
//! parse time; a binding may refer to bindings listed before it.

use std::collections::HashMap;

use crate::error::{ExprError, Span};
use crate::expr::ast::{Expr, ExprKind};
use crate::quaternion::{Quaternion, Unit};
use crate::scalar::{Mode, Scalar};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

const RESERVED: [&str; 10] = ["q", "q0", "q1", "q2", "q3", "conj", "i", "j", "k", "where"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(src: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, span: Span::new(start, start + 1) });
            pos += 1;
        } else if c.is_ascii_whitespace() {
            pos += 1;
        } else if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos < bytes.len() && (bytes[pos] == b'.' || bytes[pos] == b'/') {
                let sep = bytes[pos];
                pos += 1;
                let frac_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == frac_start {
                    let what = if sep == b'.' { "digits after `.`" } else { "a denominator after `/`" };
                    return Err(ExprError::Lex {
                        span: Span::new(start, pos),
                        message: format!("expected {what}"),
                    });
                }
            }
            out.push(Token { tok: Tok::Num(src[start..pos].to_string()), span: Span::new(start, pos) });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push(Token { tok: Tok::Ident(src[start..pos].to_string()), span: Span::new(start, pos) });
        } else {
            let ch = src[start..].chars().next().expect("in bounds");
            return Err(ExprError::Lex {
                span: Span::new(start, start + ch.len_utf8()),
                message: format!("unexpected character {ch:?}"),
            });
        }
    }
    out.push(Token { tok: Tok::Eof, span: Span::new(src.len(), src.len()) });
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    mode: Mode,
    env: HashMap<String, Expr>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, span: Span, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { span, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ExprError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            let t = self.peek();
            self.syntax(t.span, format!("expected {what}, found {}", describe(&t.tok)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let negate = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            let op = self.bump();
            let mut rhs = self.term()?;
            if negate {
                let span = op.span.join(rhs.span);
                rhs = Expr::new(ExprKind::Neg(Box::new(rhs)), span);
            }
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Sum(Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let first = self.factor()?;
        if self.peek().tok != Tok::Star {
            return Ok(first);
        }
        let mut factors = vec![first];
        while self.peek().tok == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        let span = factors[0].span.join(factors[factors.len() - 1].span);
        Ok(Expr::new(ExprKind::Prod(factors), span))
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek().tok == Tok::Minus {
            let op = self.bump();
            let inner = self.factor()?;
            let span = op.span.join(inner.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span));
        }
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let Tok::Num(text) = &t.tok else {
            return self.syntax(t.span, format!("expected a natural exponent, found {}", describe(&t.tok)));
        };
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            return self.syntax(t.span, "exponent must be a natural number");
        }
        let n = match text.parse::<u32>() {
            Ok(n) if n <= MAX_EXPONENT => n,
            _ => {
                return Err(ExprError::ExponentOverflow { span: t.span, value: text.clone(), cap: MAX_EXPONENT })
            }
        };
        let span = base.span.join(t.span);
        Ok(Expr::new(ExprKind::Pow(Box::new(base), n), span))
    }

    fn base(&mut self) -> Result<Expr, ExprError> {
        let t = self.bump();
        let kind = match &t.tok {
            Tok::Num(text) => {
                let s = Scalar::parse(text, self.mode)
                    .map_err(|e| ExprError::Lex { span: t.span, message: e.to_string() })?;
                ExprKind::Const(Quaternion::real(s))
            }
            Tok::LParen => {
                let mut inner = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                inner.span = t.span.join(close.span);
                return Ok(inner);
            }
            Tok::Ident(name) => match name.as_str() {
                "q" => ExprKind::VarQ,
                "q0" | "q1" | "q2" | "q3" => ExprKind::Component(usize::from(name.as_bytes()[1] - b'0')),
                "i" => ExprKind::Const(Quaternion::unit(Unit::I, self.mode)),
                "j" => ExprKind::Const(Quaternion::unit(Unit::J, self.mode)),
                "k" => ExprKind::Const(Quaternion::unit(Unit::K, self.mode)),
                "conj" => {
                    self.expect(Tok::LParen, "`(` after conj")?;
                    let inner = self.expr()?;
                    let close = self.expect(Tok::RParen, "`)`")?;
                    return Ok(Expr::new(ExprKind::Conj(Box::new(inner)), t.span.join(close.span)));
                }
                "where" => return self.syntax(t.span, "expected an operand, found `where`"),
                other => match self.env.get(other) {
                    Some(bound) => {
                        let mut e = bound.clone();
                        e.span = t.span;
                        return Ok(e);
                    }
                    None => return Err(ExprError::Unbound { span: t.span, name: other.to_string() }),
                },
            },
            other => return self.syntax(t.span, format!("expected an operand, found {}", describe(other))),
        };
        Ok(Expr::new(kind, t.span))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses with exact rational constants.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    parse_with_mode(text, Mode::Exact)
}

/// Parses with numeric literals and units built in `mode`.
pub fn parse_with_mode(text: &str, mode: Mode) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    // Bindings come after the body textually but must be known before it is
    // built, so split at the first `where` and parse the bindings first.
    let split = toks.iter().position(|t| t.tok == Tok::Ident("where".into()));
    let (body, bindings) = match split {
        Some(at) => (&toks[..at], Some(&toks[at + 1..])),
        None => (&toks[..toks.len() - 1], None),
    };

    let mut env = HashMap::new();
    if let Some(bind_toks) = bindings {
        let mut p = Parser { toks: bind_toks, pos: 0, mode, env: HashMap::new() };
        loop {
            let name_tok = p.bump();
            let name = match &name_tok.tok {
                Tok::Ident(n) if !RESERVED.contains(&n.as_str()) => n.clone(),
                Tok::Ident(n) => return p.syntax(name_tok.span, format!("`{n}` is reserved and cannot be bound")),
                other => return p.syntax(name_tok.span, format!("expected a binding name, found {}", describe(other))),
            };
            if p.env.contains_key(&name) {
                return p.syntax(name_tok.span, format!("`{name}` is bound twice"));
            }
            p.expect(Tok::Eq, "`=`")?;
            let value = p.expr()?;
            p.env.insert(name, value);
            match p.bump().tok {
                Tok::Comma => continue,
                Tok::Eof => break,
                ref other => {
                    let span = p.toks[p.pos.saturating_sub(1)].span;
                    return p.syntax(span, format!("expected `,` or end of input, found {}", describe(other)));
                }
            }
        }
        env = p.env;
    }

    // Body tokens end where `where` starts; give the parser an explicit end.
    let mut body_toks = body.to_vec();
    let end = split.map(|at| toks[at].span).unwrap_or(toks[toks.len() - 1].span);
    body_toks.push(Token { tok: Tok::Eof, span: Span::new(end.start, end.start) });
    let mut p = Parser { toks: &body_toks, pos: 0, mode, env };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::Eof {
        let msg = match t.tok {
            Tok::Ident(_) | Tok::Num(_) | Tok::LParen => {
                format!("unexpected {}; multiplication must be written with `*`", describe(&t.tok))
            }
            _ => format!("unexpected {}", describe(&t.tok)),
        };
        return p.syntax(t.span, msg);
    }
    Ok(e)
}
