use std::fmt;

use crate::error::AlgebraError;
use crate::scalar::{Mode, Scalar};

/// A 4×4 matrix of scalars sharing one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix4 {
    entries: [[Scalar; 4]; 4],
}

impl Matrix4 {
    pub fn new(entries: [[Scalar; 4]; 4]) -> Result<Self, AlgebraError> {
        let mode = entries[0][0].mode();
        for s in entries.iter().flatten() {
            if s.mode() != mode {
                return Err(AlgebraError::ModeMismatch { left: mode, right: s.mode() });
            }
        }
        Ok(Matrix4 { entries })
    }

    pub fn identity(mode: Mode) -> Self {
        let entries = std::array::from_fn(|r| {
            std::array::from_fn(|c| if r == c { Scalar::one(mode) } else { Scalar::zero(mode) })
        });
        Matrix4 { entries }
    }

    pub fn mode(&self) -> Mode {
        self.entries[0][0].mode()
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[[Scalar; 4]; 4] {
        &self.entries
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[Scalar; 4]) -> Result<[Scalar; 4], AlgebraError> {
        if let Some(bad) = v.iter().find(|s| s.mode() != self.mode()) {
            return Err(AlgebraError::ModeMismatch { left: self.mode(), right: bad.mode() });
        }
        Ok(std::array::from_fn(|r| {
            let row = &self.entries[r];
            let mut acc = &row[0] * &v[0];
            for c in 1..4 {
                acc = &acc + &(&row[c] * &v[c]);
            }
            acc
        }))
    }

    /// Determinant by Gaussian elimination (partial pivoting in float mode,
    /// first non-zero pivot in exact mode).
    pub fn determinant(&self) -> Scalar {
        let mode = self.mode();
        let mut m = self.entries.clone();
        let mut det = Scalar::one(mode);
        for col in 0..4 {
            let pivot = match mode {
                Mode::Exact => (col..4).find(|&r| !m[r][col].is_zero()),
                Mode::Float => (col..4)
                    .filter(|&r| !m[r][col].is_zero())
                    .max_by(|&a, &b| {
                        m[a][col].to_f64().abs().total_cmp(&m[b][col].to_f64().abs())
                    }),
            };
            let Some(p) = pivot else {
                return Scalar::zero(mode);
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det = &det * &m[col][col];
            for r in col + 1..4 {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col]
                    .checked_div(&m[col][col])
                    .expect("pivot is non-zero");
                for c in col..4 {
                    let t = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        det
    }

    pub fn transpose(&self) -> Matrix4 {
        Matrix4 {
            entries: std::array::from_fn(|r| std::array::from_fn(|c| self.entries[c][r].clone())),
        }
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(rows: [[i64; 4]; 4]) -> Matrix4 {
        Matrix4::new(rows.map(|r| r.map(|v| Scalar::from_int(v, Mode::Exact)))).unwrap()
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(Matrix4::identity(Mode::Exact).determinant(), Scalar::from_int(1, Mode::Exact));
    }

    #[test]
    fn singular_and_permuted() {
        let singular = exact([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1], [1, 0, 0, 0]]);
        assert!(singular.determinant().is_zero());
        // Needs a row swap: det of the anti-diagonal permutation (two transpositions) is +1.
        let anti = exact([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]);
        assert_eq!(anti.determinant(), Scalar::from_int(1, Mode::Exact));
    }

    #[test]
    fn mixed_entries_rejected() {
        let mut rows = Matrix4::identity(Mode::Exact).rows().clone();
        rows[2][3] = Scalar::Float(1.0);
        assert!(Matrix4::new(rows).is_err());
    }
}
