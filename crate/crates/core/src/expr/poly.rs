//! Canonical form of quaternionic polynomials.
//!
//! A polynomial is stored as a sum of real monomials `q0^e0 q1^e1 q2^e2 q3^e3`
//! each carrying one quaternion coefficient, written to the right of the
//! monomial. Because the `q_t` are real they commute with every quaternion, so
//! any product of constants and components can be collapsed into this form,
//! and two polynomials agree on all of ℍ exactly when their term maps are
//! identical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, ExprError};
use crate::quaternion::{write_terms, Quaternion, Unit};
use crate::scalar::{Mode, Scalar};

/// Per-variable exponent cap during expansion.
pub const MAX_VARIABLE_DEGREE: u32 = 64;

/// Exponents of `(q0, q1, q2, q3)`.
pub type Monomial = [u32; 4];

/// Sparse polynomial with right-hand quaternion coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CanonicalPoly {
    terms: BTreeMap<Monomial, Quaternion>,
}

impl CanonicalPoly {
    pub fn zero() -> Self {
        CanonicalPoly::default()
    }

    pub fn constant(c: Quaternion) -> Self {
        CanonicalPoly::monomial([0; 4], c)
    }

    pub fn monomial(m: Monomial, c: Quaternion) -> Self {
        let mut p = CanonicalPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `q = q0 + q1 i + q2 j + q3 k`.
    pub fn variable(mode: Mode) -> Self {
        let mut p = CanonicalPoly::zero();
        for (t, u) in Unit::ALL.into_iter().enumerate() {
            let mut m = [0; 4];
            m[t] = 1;
            p.add_term(m, Quaternion::unit(u, mode));
        }
        p
    }

    /// The real component `q_t`.
    pub fn component(t: usize, mode: Mode) -> Self {
        let mut m = [0; 4];
        m[t] = 1;
        CanonicalPoly::monomial(m, Quaternion::one(mode))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Quaternion)>) -> Self {
        let mut p = CanonicalPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c` to the coefficient of `m`, dropping the term if it cancels.
    /// Panics on mixed scalar modes.
    pub fn add_term(&mut self, m: Monomial, c: Quaternion) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Quaternion> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Quaternion> {
        self.terms.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mode(&self) -> Option<Mode> {
        self.terms.values().next().map(Quaternion::mode)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Multiplies every coefficient by `a` on the left.
    pub fn left_mul(&self, a: &Quaternion) -> Self {
        CanonicalPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, a * c)))
    }

    /// Multiplies every coefficient by `a` on the right.
    pub fn right_mul(&self, a: &Quaternion) -> Self {
        CanonicalPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c * a)))
    }

    pub fn conjugate(&self) -> Self {
        CanonicalPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c.conjugate())))
    }

    /// `∂/∂q_t` by the power rule on the real monomials.
    pub fn derivative(&self, t: usize) -> Self {
        let mut out = CanonicalPoly::zero();
        for (m, c) in &self.terms {
            if m[t] == 0 {
                continue;
            }
            let mut dm = *m;
            dm[t] -= 1;
            let factor = Scalar::from_int(i64::from(m[t]), c.mode());
            out.add_term(dm, c.scale(&factor).expect("same mode"));
        }
        out
    }

    /// Product with a per-variable degree check.
    pub fn checked_mul(&self, other: &CanonicalPoly) -> Result<CanonicalPoly, ExprError> {
        if let (Some(a), Some(b)) = (self.mode(), other.mode()) {
            if a != b {
                return Err(AlgebraError::ModeMismatch { left: a, right: b }.into());
            }
        }
        for v in 0..4 {
            let a = self.terms.keys().map(|m| m[v]).max().unwrap_or(0);
            let b = other.terms.keys().map(|m| m[v]).max().unwrap_or(0);
            if a + b > MAX_VARIABLE_DEGREE {
                return Err(ExprError::DegreeCap { variable: v, exponent: a + b, cap: MAX_VARIABLE_DEGREE });
            }
        }
        let mut out = CanonicalPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = std::array::from_fn(|t| ma[t] + mb[t]);
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    /// `Σ (q0^e0 q1^e1 q2^e2 q3^e3) · c` at the point `q`.
    pub fn eval(&self, q: &Quaternion) -> Result<Quaternion, AlgebraError> {
        let mut acc = Quaternion::zero(q.mode());
        for (m, c) in &self.terms {
            let mut mono = Scalar::one(q.mode());
            for (t, e) in m.iter().enumerate() {
                if *e > 0 {
                    mono = &mono * &q.component(t).pow(*e);
                }
            }
            acc = acc.checked_add(&c.scale(&mono)?)?;
        }
        Ok(acc)
    }

    /// Splits `p = p0 + p1 i + p2 j + p3 k` into four real-coefficient
    /// polynomials (returned with real quaternion coefficients).
    pub fn real_components(&self) -> [CanonicalPoly; 4] {
        std::array::from_fn(|t| {
            CanonicalPoly::from_terms(
                self.terms
                    .iter()
                    .map(|(m, c)| (*m, Quaternion::real(c.component(t).clone()))),
            )
        })
    }

    pub fn to_mode(&self, mode: Mode) -> Result<CanonicalPoly, AlgebraError> {
        let mut out = CanonicalPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.to_mode(mode)?);
        }
        Ok(out)
    }
}

impl Add for &CanonicalPoly {
    type Output = CanonicalPoly;

    fn add(self, rhs: &CanonicalPoly) -> CanonicalPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &CanonicalPoly {
    type Output = CanonicalPoly;

    fn sub(self, rhs: &CanonicalPoly) -> CanonicalPoly {
        self + &(-rhs)
    }
}

impl Neg for &CanonicalPoly {
    type Output = CanonicalPoly;

    fn neg(self) -> CanonicalPoly {
        CanonicalPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &CanonicalPoly {
    type Output = CanonicalPoly;

    /// Panics if the degree cap is exceeded or modes are mixed; see
    /// [`CanonicalPoly::checked_mul`].
    fn mul(self, rhs: &CanonicalPoly) -> CanonicalPoly {
        self.checked_mul(rhs).expect("polynomial product")
    }
}

fn monomial_text(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(t, e)| if *e == 1 { format!("q{t}") } else { format!("q{t}^{e}") })
        .collect();
    parts.join("*")
}

/// Prints in the expression syntax, lowest degree first, e.g.
/// `q0^2+q1^2+q2^2+q3^2` or `-2`. Multi-component coefficients are
/// parenthesised after their monomial: `q0*(1+i)`.
impl fmt::Display for CanonicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<(&Monomial, &Quaternion)> = self.terms.iter().collect();
        order.sort_by_key(|(m, _)| (m.iter().sum::<u32>(), std::cmp::Reverse(**m)));
        let mut out = String::new();
        let mut first = true;
        let units = ["", "i", "j", "k"];
        for (m, c) in order {
            let mono = monomial_text(m);
            let nonzero: Vec<usize> = (0..4).filter(|t| !c.component(*t).is_zero()).collect();
            if mono.is_empty() {
                let terms: Vec<(&Scalar, &str)> = c.components().iter().zip(units).collect();
                write_terms(&mut out, &terms, &mut first)?;
            } else if nonzero.len() == 1 {
                let t = nonzero[0];
                let s = c.component(t);
                let mag = s.abs();
                if s.is_negative() {
                    out.push('-');
                } else if !first {
                    out.push('+');
                }
                let mut parts = Vec::new();
                if !mag.is_one() {
                    parts.push(mag.to_string());
                }
                parts.push(mono);
                if t > 0 {
                    parts.push(units[t].to_string());
                }
                out.push_str(&parts.join("*"));
                first = false;
            } else {
                if !first {
                    out.push('+');
                }
                out.push_str(&format!("{mono}*({c})"));
                first = false;
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let mut p = CanonicalPoly::variable(Mode::Exact);
        p.add_term([1, 0, 0, 0], Quaternion::exact(-1, 0, 0, 0));
        assert_eq!(p.len(), 3);
        assert!(p.coefficient(&[1, 0, 0, 0]).is_none());
        let z = &p - &p;
        assert!(z.is_zero());
    }

    #[test]
    fn derivative_power_rule() {
        let p = CanonicalPoly::monomial([3, 1, 0, 0], Quaternion::exact(0, 0, 2, 0));
        let d = p.derivative(0);
        assert_eq!(d, CanonicalPoly::monomial([2, 1, 0, 0], Quaternion::exact(0, 0, 6, 0)));
        assert!(p.derivative(3).is_zero());
    }

    #[test]
    fn degree_cap() {
        let a = CanonicalPoly::monomial([40, 0, 0, 0], Quaternion::exact(1, 0, 0, 0));
        assert!(matches!(a.checked_mul(&a), Err(ExprError::DegreeCap { variable: 0, exponent: 80, .. })));
    }

    #[test]
    fn empty_poly_evaluates_to_zero() {
        let q = Quaternion::exact(1, 2, 3, 4);
        assert_eq!(CanonicalPoly::zero().eval(&q).unwrap(), Quaternion::zero(Mode::Exact));
        assert_eq!(CanonicalPoly::variable(Mode::Exact).eval(&q).unwrap(), q);
    }

    #[test]
    fn display() {
        assert_eq!(CanonicalPoly::zero().to_string(), "0");
        assert_eq!(CanonicalPoly::variable(Mode::Exact).to_string(), "q0+q1*i+q2*j+q3*k");
        let p = CanonicalPoly::from_terms([
            ([0, 0, 0, 0], Quaternion::exact(-2, 0, 0, 0)),
            ([1, 1, 0, 0], Quaternion::exact(0, 2, 0, 0)),
            ([0, 0, 2, 0], Quaternion::exact(1, 1, 0, 0)),
        ]);
        assert_eq!(p.to_string(), "-2+2*q0*q1*i+q2^2*(1+i)");
    }
}
