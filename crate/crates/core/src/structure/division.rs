use num_rational::BigRational;
use num_traits::{One, Zero};

use serde_json::{json, Value};

use crate::error::StructureError;
use crate::scalar::Scalar;
use crate::sampling::{Sampler, RATIONAL_BOUND};
use crate::structure::linalg::{determinant, kernel_vector};
use crate::structure::table::StructureTable;

#[derive(Debug, Clone, PartialEq)]
pub enum DivisionVerdict {
    /// No zero divisor found: every scanned and sampled element has an
    /// invertible left-multiplication matrix. `samples` holds each random
    /// element with its determinant.
    Certified {
        trials: usize,
        scanned: usize,
        samples: Vec<(Vec<BigRational>, BigRational)>,
    },
    /// Non-zero `a`, `b` with `a·b = 0`.
    ZeroDivisorWitness(Vec<BigRational>, Vec<BigRational>),
}

impl DivisionVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, DivisionVerdict::Certified { .. })
    }

    /// JSON form; elements are rendered in the table's basis and listed as
    /// exact coefficient strings.
    pub fn to_json(&self, table: &StructureTable) -> Value {
        let coeffs = |v: &[BigRational]| -> Vec<String> { v.iter().map(|c| Scalar::Exact(c.clone()).to_string()).collect() };
        match self {
            DivisionVerdict::Certified { trials, scanned, samples } => json!({
                "verdict": "Certified",
                "trials": trials,
                "scanned": scanned,
                "samples": samples.iter().map(|(a, det)| json!({
                    "element": table.render(a),
                    "coefficients": coeffs(a),
                    "determinant": Scalar::Exact(det.clone()).to_string(),
                })).collect::<Vec<_>>(),
            }),
            DivisionVerdict::ZeroDivisorWitness(a, b) => json!({
                "verdict": "ZeroDivisorWitness",
                "left": table.render(a),
                "right": table.render(b),
                "left_coefficients": coeffs(a),
                "right_coefficients": coeffs(b),
                "left_determinant": Scalar::Exact(determinant(&table.left_mul_matrix(a))).to_string(),
            }),
        }
    }
}

/// Elements with coefficients in {-1, 0, 1} whose first non-zero
/// coefficient is +1, ordered by support size, then support, then sign
/// pattern (+ before -).
pub fn sign_elements(dim: usize) -> Vec<Vec<BigRational>> {
    let mut out = Vec::new();
    for size in 1..=dim {
        for support in combinations(dim, size) {
            for mask in 0..(1u64 << (size - 1)) {
                let mut v = vec![BigRational::zero(); dim];
                for (n, &b) in support.iter().enumerate() {
                    let negative = n > 0 && (mask >> (size - 1 - n)) & 1 == 1;
                    v[b] = if negative { -BigRational::one() } else { BigRational::one() };
                }
                out.push(v);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for b in start..n {
            cur.push(b);
            go(b + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn witness(table: &StructureTable, a: Vec<BigRational>, scan: &[Vec<BigRational>]) -> DivisionVerdict {
    let b = scan
        .iter()
        .find(|b| table.mul(&a, b).iter().all(Zero::is_zero))
        .cloned()
        .or_else(|| kernel_vector(&table.left_mul_matrix(&a)))
        .expect("singular matrix has a kernel");
    DivisionVerdict::ZeroDivisorWitness(a, b)
}

/// Looks for zero divisors in a multiplication table.
///
/// First scans every {-1, 0, 1}-coefficient element (up to sign) for a
/// singular left-multiplication matrix, then tests `trials` seeded random
/// non-zero elements. A singular element `a` is returned with a partner `b`,
/// taken from the scan when possible and from the kernel otherwise.
pub fn division_check(table: &StructureTable, trials: usize, seed: u64) -> Result<DivisionVerdict, StructureError> {
    if trials < 1 {
        return Err(StructureError::InvalidArgument("trials must be at least 1".into()));
    }
    table.validate()?;
    let scan = sign_elements(table.dim());
    for a in &scan {
        if determinant(&table.left_mul_matrix(a)).is_zero() {
            return Ok(witness(table, a.clone(), &scan));
        }
    }
    let mut sampler = Sampler::new(seed);
    let mut samples = Vec::with_capacity(trials);
    while samples.len() < trials {
        let a: Vec<BigRational> = (0..table.dim()).map(|_| sampler.rational(RATIONAL_BOUND)).collect();
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let det = determinant(&table.left_mul_matrix(&a));
        if det.is_zero() {
            return Ok(witness(table, a, &scan));
        }
        samples.push((a, det));
    }
    Ok(DivisionVerdict::Certified { trials, scanned: scan.len(), samples })
}
