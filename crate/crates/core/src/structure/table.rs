use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::scalar::{Mode, Scalar};
use crate::structure::linalg::RationalMatrix;
use crate::structure::rules::{element_from_rationals, ProductRules};

/// Multiplication table (structure constants) of a finite-dimensional real
/// algebra with exact rational entries. `constants[a][b]` is the product of
/// basis elements `a` and `b` expanded in the basis; basis element 0 is the
/// identity.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    basis: Vec<String>,
    constants: Vec<Vec<Vec<BigRational>>>,
}

impl StructureTable {
    pub fn new(basis: Vec<String>, constants: Vec<Vec<Vec<BigRational>>>) -> Result<Self, StructureError> {
        let t = StructureTable { basis, constants };
        t.validate()?;
        Ok(t)
    }

    /// Checks shape and the identity axiom `e0·b = b·e0 = b`.
    pub fn validate(&self) -> Result<(), StructureError> {
        let n = self.basis.len();
        if n == 0 {
            return Err(StructureError::InvalidTable("dimension must be at least 1".into()));
        }
        if self.constants.len() != n || self.constants.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(StructureError::InvalidTable(format!("table must be {n}×{n} with {n}-vectors")));
        }
        for b in 0..n {
            let unit: Vec<BigRational> =
                (0..n).map(|t| if t == b { BigRational::one() } else { BigRational::zero() }).collect();
            if self.constants[0][b] != unit || self.constants[b][0] != unit {
                return Err(StructureError::InvalidTable(format!(
                    "basis element {:?} is not the identity for {:?}",
                    self.basis[0], self.basis[b]
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn product(&self, a: usize, b: usize) -> &[BigRational] {
        &self.constants[a][b]
    }

    pub fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (t, v) in self.constants[a][b].iter().enumerate() {
                    out[t] += &c * v;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y` in the basis (column `b` is `x·e_b`).
    pub fn left_mul_matrix(&self, x: &[BigRational]) -> RationalMatrix {
        let n = self.dim();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for b in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[b] = BigRational::one();
            for (r, v) in self.mul(x, &e).into_iter().enumerate() {
                m[r][b] = v;
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.constants[a][b] == self.constants[b][a]))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let e = |b: usize| -> Vec<BigRational> {
            (0..n).map(|t| if t == b { BigRational::one() } else { BigRational::zero() }).collect()
        };
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let left = self.mul(&self.mul(&e(a), &e(b)), &e(c));
                    let right = self.mul(&e(a), &self.mul(&e(b), &e(c)));
                    left == right
                })
            })
        })
    }

    pub fn to_rules(&self) -> ProductRules {
        let names: Vec<&str> = self.basis.iter().map(String::as_str).collect();
        let mut rules = ProductRules::new(&names, &[]);
        for a in 1..self.dim() {
            for b in 1..self.dim() {
                rules.set(a, b, element_from_rationals(&self.constants[a][b]));
            }
        }
        rules
    }

    /// Renders an element like `1+k` or `2-1/2i`.
    pub fn render(&self, x: &[BigRational]) -> String {
        self.to_rules().render_element(&element_from_rationals(x))
    }

    /// The four-dimensional algebra on `{1, i, j, k}` with `k := ij`,
    /// `i² = j² = -1` and `ji = sign·ij`, assuming associativity.
    ///
    /// Every basis element is a word in the generators (`k` is the word
    /// `ij`); a product is the concatenated word rewritten with `ii → -1`,
    /// `jj → -1` and `ji → sign·ij` until it is one of `1, i, j, ij`.
    pub fn from_generator_relations(ji_sign: i8) -> Self {
        assert!(ji_sign == 1 || ji_sign == -1);
        let words: [&[u8]; 4] = [b"", b"i", b"j", b"ij"];
        let basis = ["1", "i", "j", "k"].map(String::from).to_vec();
        let constants = (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| {
                        let mut word: Vec<u8> = words[a].iter().chain(words[b]).copied().collect();
                        let mut sign: i64 = 1;
                        loop {
                            let Some(pos) = word.windows(2).position(|w| w == b"ii" || w == b"jj" || w == b"ji") else {
                                break;
                            };
                            if word[pos] == word[pos + 1] {
                                word.drain(pos..pos + 2);
                                sign = -sign;
                            } else {
                                word.swap(pos, pos + 1);
                                sign *= i64::from(ji_sign);
                            }
                        }
                        let idx = words.iter().position(|w| *w == word.as_slice()).expect("normal word");
                        (0..4)
                            .map(|t| BigRational::from_integer(if t == idx { sign.into() } else { 0.into() }))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        StructureTable { basis, constants }
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            dim: self.dim(),
            basis: self.basis.clone(),
            table: self
                .constants
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(|c| Scalar::Exact(c.clone())).collect()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: TableJson) -> Result<Self, StructureError> {
        if j.basis.len() != j.dim {
            return Err(StructureError::InvalidTable(format!(
                "dim is {} but {} basis names were given",
                j.dim,
                j.basis.len()
            )));
        }
        let mut constants = Vec::with_capacity(j.dim);
        for row in j.table {
            let mut r = Vec::with_capacity(row.len());
            for v in row {
                let mut out = Vec::with_capacity(v.len());
                for c in v {
                    match c.to_mode(Mode::Exact) {
                        Ok(Scalar::Exact(x)) => out.push(x),
                        _ => return Err(StructureError::InvalidTable("non-finite structure constant".into())),
                    }
                }
                r.push(out);
            }
            constants.push(r);
        }
        StructureTable::new(j.basis, constants)
    }
}

/// JSON form `{"dim": n, "basis": [names], "table": [[[coeffs]]]}`; exact
/// coefficients are `"n/d"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<Scalar>>>,
}

/// `{1, i, j, k}` with `i² = j² = k² = ijk = -1`, i.e. `ji = -k`.
pub fn quaternion_table() -> StructureTable {
    StructureTable::from_generator_relations(-1)
}

/// The table forced by `ij = ji = k`.
pub fn ji_plus_k_table() -> StructureTable {
    StructureTable::from_generator_relations(1)
}

/// Bicomplex numbers: `i² = j² = -1` with commuting `i, j` and `k = ij`,
/// so `k² = +1`.
pub fn bicomplex_table() -> StructureTable {
    StructureTable::from_generator_relations(1)
}
