use std::collections::BTreeMap;
use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::StructureError;
use crate::structure::symbolic::SymPoly;

/// An algebra element: one (possibly symbolic) coefficient per basis element.
pub type Element = Vec<SymPoly>;

pub(crate) fn basis_element(dim: usize, b: usize) -> Element {
    (0..dim).map(|t| if t == b { SymPoly::int(1) } else { SymPoly::zero() }).collect()
}

pub(crate) fn element_from_rationals(c: &[BigRational]) -> Element {
    c.iter().cloned().map(SymPoly::constant).collect()
}

/// Products of basis elements, possibly only partially known.
///
/// Basis element 0 is always the identity and is handled implicitly; other
/// products are looked up and an undetermined product is an error, so a
/// derivation can only use the facts it was given.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductRules {
    basis: Vec<String>,
    params: Vec<String>,
    products: BTreeMap<(usize, usize), Element>,
}

impl ProductRules {
    pub fn new(basis: &[&str], params: &[&str]) -> Self {
        ProductRules {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            params: params.iter().map(|s| s.to_string()).collect(),
            products: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, a: usize, b: usize, value: Element) {
        assert!(a > 0 && b > 0, "products with the identity are implicit");
        assert_eq!(value.len(), self.dim());
        self.products.insert((a, b), value);
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn known_products(&self) -> &BTreeMap<(usize, usize), Element> {
        &self.products
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn basis_product(&self, a: usize, b: usize) -> Result<Element, StructureError> {
        if a == 0 {
            return Ok(basis_element(self.dim(), b));
        }
        if b == 0 {
            return Ok(basis_element(self.dim(), a));
        }
        self.products.get(&(a, b)).cloned().ok_or_else(|| StructureError::UnknownProduct {
            left: self.basis[a].clone(),
            right: self.basis[b].clone(),
        })
    }

    /// Bilinear extension of the basis products. Only pairs with two
    /// non-zero coefficients are looked up.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, StructureError> {
        let mut out = vec![SymPoly::zero(); self.dim()];
        for (a, ca) in x.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in y.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let coeff = ca * cb;
                for (t, v) in self.basis_product(a, b)?.iter().enumerate() {
                    out[t] = &out[t] + &(&coeff * v);
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, e: &AlgExpr) -> Result<Element, StructureError> {
        let dim = self.dim();
        Ok(match e {
            AlgExpr::Basis(b) => basis_element(dim, *b),
            AlgExpr::Scalar(c) => {
                let mut v = vec![SymPoly::zero(); dim];
                v[0] = c.clone();
                v
            }
            AlgExpr::Scale(c, inner) => self.eval(inner)?.iter().map(|v| c * v).collect(),
            AlgExpr::Neg(inner) => self.eval(inner)?.iter().map(|v| -v).collect(),
            AlgExpr::Sum(parts) => {
                let mut acc = vec![SymPoly::zero(); dim];
                for p in parts {
                    for (t, v) in self.eval(p)?.iter().enumerate() {
                        acc[t] = &acc[t] + v;
                    }
                }
                acc
            }
            AlgExpr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
        })
    }

    /// Renders an element as `c0 + c1 e1 + ...`, e.g. `1-k` or `-β+αγ+γ^2j`.
    pub fn render_element(&self, x: &Element) -> String {
        let mut out = String::new();
        for (t, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = if t == 0 { "" } else { self.basis[t].as_str() };
            let text = c.render(&self.params);
            let single = c.term_count() == 1;
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            match (name.is_empty(), single, body.as_str()) {
                (true, _, _) => out.push_str(if neg { &body } else { &text }),
                (false, true, "1") => out.push_str(name),
                (false, true, _) => {
                    let _ = write!(out, "{body}{name}");
                }
                (false, false, _) => {
                    let _ = write!(out, "({text}){name}");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn render_expr(&self, e: &AlgExpr) -> String {
        e.render(&self.basis, &self.params)
    }
}

/// A bracketed algebraic expression over basis symbols. Multiplication keeps
/// its bracketing, which is what lets a derivation expose an associativity
/// clash.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgExpr {
    Basis(usize),
    /// A real (possibly symbolic) multiple of the identity.
    Scalar(SymPoly),
    Scale(SymPoly, Box<AlgExpr>),
    Neg(Box<AlgExpr>),
    Sum(Vec<AlgExpr>),
    Mul(Box<AlgExpr>, Box<AlgExpr>),
}

impl AlgExpr {
    pub fn mul(a: AlgExpr, b: AlgExpr) -> AlgExpr {
        AlgExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn int(n: i64) -> AlgExpr {
        AlgExpr::Scalar(SymPoly::int(n))
    }

    /// Normal form `Σ c_t e_t` of an element.
    pub fn from_element(x: &Element) -> AlgExpr {
        let mut parts = Vec::new();
        for (t, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let part = if t == 0 {
                AlgExpr::Scalar(c.clone())
            } else if c.as_constant().is_some_and(|v| v.is_one()) {
                AlgExpr::Basis(t)
            } else if c.as_constant().is_some_and(|v| (-v).is_one()) {
                AlgExpr::Neg(Box::new(AlgExpr::Basis(t)))
            } else {
                AlgExpr::Scale(c.clone(), Box::new(AlgExpr::Basis(t)))
            };
            parts.push(part);
        }
        match parts.len() {
            0 => AlgExpr::int(0),
            1 => parts.pop().expect("one part"),
            _ => AlgExpr::Sum(parts),
        }
    }

    /// The multiplicative leaves in order, ignoring brackets; two products
    /// with equal leaves are rebracketings of the same word.
    pub fn leaves(&self) -> Vec<&AlgExpr> {
        match self {
            AlgExpr::Mul(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
            other => vec![other],
        }
    }

    fn is_atom(&self) -> bool {
        match self {
            AlgExpr::Basis(_) => true,
            AlgExpr::Scalar(c) => c.term_count() <= 1 && !c.as_constant().is_some_and(|v| v.is_negative()),
            _ => false,
        }
    }

    pub fn render(&self, basis: &[String], params: &[String]) -> String {
        match self {
            AlgExpr::Basis(b) => basis[*b].clone(),
            AlgExpr::Scalar(c) => c.render(params),
            AlgExpr::Scale(c, inner) => {
                let ct = c.render(params);
                let ct = if c.term_count() > 1 { format!("({ct})") } else { ct };
                let it = inner.render(basis, params);
                if inner.is_atom() {
                    format!("{ct}{it}")
                } else {
                    format!("{ct}({it})")
                }
            }
            AlgExpr::Neg(inner) => {
                let it = inner.render(basis, params);
                if inner.is_atom() || matches!(**inner, AlgExpr::Mul(..)) {
                    format!("-{it}")
                } else {
                    format!("-({it})")
                }
            }
            AlgExpr::Sum(parts) => {
                let mut out = String::new();
                for (n, p) in parts.iter().enumerate() {
                    let t = p.render(basis, params);
                    if n > 0 && !t.starts_with('-') {
                        out.push('+');
                    }
                    out.push_str(&t);
                }
                out
            }
            AlgExpr::Mul(a, b) => {
                let wrap = |e: &AlgExpr| {
                    let t = e.render(basis, params);
                    if e.is_atom() {
                        t
                    } else {
                        format!("({t})")
                    }
                };
                format!("{}{}", wrap(a), wrap(b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triplet_rules() -> ProductRules {
        let mut r = ProductRules::new(&["1", "i", "j"], &[]);
        r.set(1, 1, vec![SymPoly::int(-1), SymPoly::zero(), SymPoly::zero()]);
        r.set(2, 2, vec![SymPoly::int(-1), SymPoly::zero(), SymPoly::zero()]);
        r
    }

    #[test]
    fn unknown_products_are_errors() {
        let r = triplet_rules();
        let ij = AlgExpr::mul(AlgExpr::Basis(1), AlgExpr::Basis(2));
        assert!(matches!(r.eval(&ij), Err(StructureError::UnknownProduct { .. })));
        let ii = AlgExpr::mul(AlgExpr::Basis(1), AlgExpr::Basis(1));
        assert_eq!(r.eval(&ii).unwrap(), vec![SymPoly::int(-1), SymPoly::zero(), SymPoly::zero()]);
    }

    #[test]
    fn rendering_shows_brackets() {
        let r = triplet_rules();
        let i = || AlgExpr::Basis(1);
        let j = || AlgExpr::Basis(2);
        assert_eq!(r.render_expr(&AlgExpr::mul(i(), AlgExpr::mul(i(), j()))), "i(ij)");
        assert_eq!(r.render_expr(&AlgExpr::mul(AlgExpr::mul(i(), i()), j())), "(ii)j");
        assert_eq!(r.render_expr(&AlgExpr::mul(AlgExpr::int(-1), j())), "(-1)j");
        let x = vec![SymPoly::int(1), SymPoly::zero(), SymPoly::int(-1)];
        assert_eq!(r.render_element(&x), "1-j");
        assert_eq!(r.render_expr(&AlgExpr::from_element(&x)), "1-j");
    }
}
