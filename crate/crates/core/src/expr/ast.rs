use std::fmt;

use crate::error::{AlgebraError, Span};
use crate::quaternion::Quaternion;
use crate::scalar::Mode;

/// Node kinds of a parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Const(Quaternion),
    /// The variable `q`.
    VarQ,
    /// A real component `q0..q3` of the variable.
    Component(usize),
    Conj(Box<Expr>),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    /// Ordered product; factor order is significant.
    Prod(Vec<Expr>),
    Pow(Box<Expr>, u32),
    /// `Σ_{n ≤ truncation} coeffs[n] q^n`, coefficients to the left of the
    /// powers. Missing coefficients count as zero.
    Series { coeffs: Vec<Quaternion>, truncation: usize },
}

/// An expression with the source range it was parsed from.
///
/// Equality ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn constant(q: Quaternion) -> Self {
        Expr::new(ExprKind::Const(q), Span::default())
    }

    pub fn var() -> Self {
        Expr::new(ExprKind::VarQ, Span::default())
    }

    pub fn component(t: usize) -> Self {
        assert!(t < 4, "component index out of range");
        Expr::new(ExprKind::Component(t), Span::default())
    }

    pub fn conj(e: Expr) -> Self {
        Expr::new(ExprKind::Conj(Box::new(e)), Span::default())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Self {
        Expr::new(ExprKind::Neg(Box::new(e)), Span::default())
    }

    pub fn sum(a: Expr, b: Expr) -> Self {
        Expr::new(ExprKind::Sum(Box::new(a), Box::new(b)), Span::default())
    }

    pub fn prod(factors: Vec<Expr>) -> Self {
        Expr::new(ExprKind::Prod(factors), Span::default())
    }

    pub fn pow(e: Expr, n: u32) -> Self {
        Expr::new(ExprKind::Pow(Box::new(e), n), Span::default())
    }

    pub fn series(coeffs: Vec<Quaternion>, truncation: usize) -> Self {
        Expr::new(ExprKind::Series { coeffs, truncation }, Span::default())
    }

    fn for_each_const<'a>(&'a self, f: &mut impl FnMut(&'a Quaternion)) {
        match &self.kind {
            ExprKind::Const(q) => f(q),
            ExprKind::VarQ | ExprKind::Component(_) => {}
            ExprKind::Conj(e) | ExprKind::Neg(e) | ExprKind::Pow(e, _) => e.for_each_const(f),
            ExprKind::Sum(a, b) => {
                a.for_each_const(f);
                b.for_each_const(f);
            }
            ExprKind::Prod(fs) => fs.iter().for_each(|e| e.for_each_const(f)),
            ExprKind::Series { coeffs, .. } => coeffs.iter().for_each(f),
        }
    }

    /// Scalar mode of the constants, `None` if there are none. Fails if
    /// constants of both modes appear.
    pub fn mode(&self) -> Result<Option<Mode>, AlgebraError> {
        let mut found: Option<Mode> = None;
        let mut clash = None;
        self.for_each_const(&mut |q| match found {
            None => found = Some(q.mode()),
            Some(m) if m != q.mode() => clash = Some((m, q.mode())),
            _ => {}
        });
        match clash {
            Some((left, right)) => Err(AlgebraError::ModeMismatch { left, right }),
            None => Ok(found),
        }
    }

    /// Converts every constant into `mode` (explicit, possibly lossy).
    pub fn to_mode(&self, mode: Mode) -> Result<Expr, AlgebraError> {
        let kind = match &self.kind {
            ExprKind::Const(q) => ExprKind::Const(q.to_mode(mode)?),
            ExprKind::VarQ => ExprKind::VarQ,
            ExprKind::Component(t) => ExprKind::Component(*t),
            ExprKind::Conj(e) => ExprKind::Conj(Box::new(e.to_mode(mode)?)),
            ExprKind::Neg(e) => ExprKind::Neg(Box::new(e.to_mode(mode)?)),
            ExprKind::Pow(e, n) => ExprKind::Pow(Box::new(e.to_mode(mode)?), *n),
            ExprKind::Sum(a, b) => ExprKind::Sum(Box::new(a.to_mode(mode)?), Box::new(b.to_mode(mode)?)),
            ExprKind::Prod(fs) => ExprKind::Prod(fs.iter().map(|e| e.to_mode(mode)).collect::<Result<_, _>>()?),
            ExprKind::Series { coeffs, truncation } => ExprKind::Series {
                coeffs: coeffs.iter().map(|q| q.to_mode(mode)).collect::<Result<_, _>>()?,
                truncation: *truncation,
            },
        };
        Ok(Expr::new(kind, self.span))
    }

    /// Upper bound on the total degree in `q0..q3`.
    pub fn degree(&self) -> u64 {
        match &self.kind {
            ExprKind::Const(_) => 0,
            ExprKind::VarQ | ExprKind::Component(_) => 1,
            ExprKind::Conj(e) | ExprKind::Neg(e) => e.degree(),
            ExprKind::Pow(e, n) => e.degree() * u64::from(*n),
            ExprKind::Sum(a, b) => a.degree().max(b.degree()),
            ExprKind::Prod(fs) => fs.iter().map(Expr::degree).sum(),
            ExprKind::Series { coeffs, truncation } => {
                (0..=*truncation).rev().find(|&n| coeffs.get(n).is_some_and(|c| !c.is_zero())).unwrap_or(0) as u64
            }
        }
    }
}

fn write_atom(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match &e.kind {
        ExprKind::VarQ | ExprKind::Component(_) | ExprKind::Conj(_) => write!(f, "{e}"),
        ExprKind::Const(q) => {
            let s = q.to_string();
            if s.chars().all(|c| c.is_ascii_alphanumeric() || c == '.') {
                f.write_str(&s)
            } else {
                write!(f, "({s})")
            }
        }
        _ => write!(f, "({e})"),
    }
}

/// Prints in the input syntax; the output parses back to an equal expression
/// (series are printed as their truncated sums).
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Const(q) => write!(f, "{q}"),
            ExprKind::VarQ => f.write_str("q"),
            ExprKind::Component(t) => write!(f, "q{t}"),
            ExprKind::Conj(e) => write!(f, "conj({e})"),
            ExprKind::Neg(e) => {
                f.write_str("-")?;
                write_atom(f, e)
            }
            ExprKind::Sum(a, b) => match b.kind {
                ExprKind::Sum(..) => write!(f, "{a}+({b})"),
                _ => write!(f, "{a}+{b}"),
            },
            ExprKind::Prod(fs) => {
                for (n, e) in fs.iter().enumerate() {
                    if n > 0 {
                        f.write_str("*")?;
                    }
                    write_atom(f, e)?;
                }
                Ok(())
            }
            ExprKind::Pow(e, n) => {
                write_atom(f, e)?;
                write!(f, "^{n}")
            }
            ExprKind::Series { coeffs, truncation } => {
                let mut first = true;
                for (n, c) in coeffs.iter().enumerate().take(truncation + 1) {
                    if !first {
                        f.write_str("+")?;
                    }
                    first = false;
                    write!(f, "({c})*q^{n}")?;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
    }
}
