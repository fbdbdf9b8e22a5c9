use std::fmt;

use thiserror::Error;

use crate::scalar::Mode;

/// Byte range into the source text of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Errors raised by scalar and quaternion arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("scalar mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not supported in exact rational mode")]
    Unsupported(&'static str),
    #[error("cannot parse scalar literal {0:?}")]
    BadLiteral(String),
    #[error("non-finite float value")]
    NonFinite,
}

/// Errors from lexing, parsing, expanding or evaluating expressions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("lexical error at {span}: {message}")]
    Lex { span: Span, message: String },
    #[error("syntax error at {span}: {message}")]
    Syntax { span: Span, message: String },
    #[error("exponent overflow at {span}: {value} exceeds the cap of {cap}")]
    ExponentOverflow { span: Span, value: String, cap: u32 },
    #[error("unbound identifier `{name}` at {span}")]
    Unbound { span: Span, name: String },
    #[error("degree cap exceeded: exponent {exponent} on q{variable} is above {cap}")]
    DegreeCap { variable: usize, exponent: u32, cap: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl ExprError {
    /// Source position of the error, when it has one.
    pub fn span(&self) -> Option<Span> {
        match self {
            ExprError::Lex { span, .. }
            | ExprError::Syntax { span, .. }
            | ExprError::ExponentOverflow { span, .. }
            | ExprError::Unbound { span, .. } => Some(*span),
            _ => None,
        }
    }

    /// Renders the error with a caret line under the offending source range.
    pub fn render(&self, source: &str) -> String {
        match self.span() {
            Some(span) => {
                let start = span.start.min(source.len());
                let width = span.end.saturating_sub(span.start).max(1);
                let pad: String = source[..start].chars().map(|_| ' ').collect();
                format!("{self}\n  {source}\n  {pad}{}", "^".repeat(width))
            }
            None => self.to_string(),
        }
    }
}

/// Errors from the numeric operators (finite differences, sampling).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("function evaluation produced a non-finite value at {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numeric operators require float mode")]
    RequiresFloat,
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors from structure-table handling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("invalid structure table: {0}")]
    InvalidTable(String),
    #[error("product {left}*{right} is not determined by the rules")]
    UnknownProduct { left: String, right: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
