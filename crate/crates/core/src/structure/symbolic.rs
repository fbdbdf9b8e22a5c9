//! Commutative polynomials with rational coefficients in a few named real
//! parameters, used as structure constants when a product is only known up
//! to unknowns (`ij = α + βi + γj`).

use std::collections::BTreeMap;
use std::fmt::Write;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in parameters `x_0, x_1, ...`; exponent vectors carry no
/// trailing zeros so the representation is unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        SymPoly::constant(BigRational::from_integer(n.into()))
    }

    /// The parameter `x_index`.
    pub fn param(index: usize) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = 1;
        let mut p = SymPoly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no parameters.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// True when every monomial has only even exponents, every coefficient
    /// is positive and the constant term is positive: such a polynomial is
    /// strictly positive for all real parameter values.
    pub fn is_positive_definite_sum_of_squares(&self) -> bool {
        let has_positive_constant = self.terms.get(&Vec::new()).is_some_and(|c| c.is_positive());
        has_positive_constant
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_positive() && e.iter().all(|x| x % 2 == 0))
    }

    /// Renders with the given parameter names, lowest degree first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut order: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| {
            let padded: Vec<u32> = (0..names.len().max(e.len())).map(|t| e.get(t).copied().unwrap_or(0)).collect();
            (e.iter().sum::<u32>(), std::cmp::Reverse(padded))
        });
        let mut out = String::new();
        for (n, (e, c)) in order.into_iter().enumerate() {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(t, x)| {
                    let name = names.get(t).cloned().unwrap_or_else(|| format!("x{t}"));
                    if *x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            let mag = c.abs();
            if c.is_negative() {
                out.push('-');
            } else if n > 0 {
                out.push('+');
            }
            let mag_text = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
            if mono.is_empty() {
                out.push_str(&mag_text);
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{mag_text}{mono}");
            }
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;

    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;

    fn neg(self) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;

    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self + &(-rhs)
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;

    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let e = (0..len)
                    .map(|t| ea.get(t).copied().unwrap_or(0) + eb.get(t).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["α", "β", "γ"].map(String::from).to_vec()
    }

    #[test]
    fn arithmetic_and_rendering() {
        let a = SymPoly::param(0);
        let b = SymPoly::param(1);
        let g = SymPoly::param(2);
        let p = &(-&b) + &(&g * &a);
        assert_eq!(p.render(&names()), "-β+αγ");
        let sq = &(&g * &g) + &SymPoly::int(1);
        assert_eq!(sq.render(&names()), "1+γ^2");
        assert!(sq.is_positive_definite_sum_of_squares());
        assert!(!p.is_positive_definite_sum_of_squares());
        assert!(!(&g * &g).is_positive_definite_sum_of_squares());
        assert!((&p - &p).is_zero());
        assert_eq!(SymPoly::int(-3).as_constant(), Some(BigRational::from_integer((-3).into())));
        assert_eq!(a.as_constant(), None);
    }
}
