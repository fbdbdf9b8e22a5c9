//! Exact dense linear algebra over the rationals.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type RationalMatrix = Vec<Vec<BigRational>>;

/// Row-reduces in place; returns the pivot columns and the number of row swaps.
fn row_reduce(m: &mut RationalMatrix) -> (Vec<usize>, usize) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let inv = BigRational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (pivots, swaps)
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &RationalMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[i][k] -= t;
            }
        }
    }
    det
}

/// A non-zero kernel vector with coprime integer entries, if the kernel is
/// non-trivial.
pub fn kernel_vector(m: &RationalMatrix) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let (pivots, _) = row_reduce(&mut a);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![BigRational::zero(); cols];
    v[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    // Clear denominators and common factors.
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    Some(ints.into_iter().map(|x| BigRational::from_integer(x * sign / &g)).collect())
}

pub fn mat_vec(m: &RationalMatrix, v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}
