//! Quaternions `q = q0 + q1 i + q2 j + q3 k` over a [`Scalar`] mode.
//!
//! The Hamilton product is implemented three times, with no shared code:
//!
//! * [`Quaternion::mul_components`]: the regrouped four-component formula,
//! * [`Quaternion::mul_matrix`]: the left-multiplication matrix `M(p)` applied
//!   to the coefficient vector of `q`,
//! * [`Quaternion::mul_vector_form`]: `p0 q0 - p·q + p0 q + q0 p + p × q`.
//!
//! In exact mode all three must agree bit for bit, which the tests check on
//! seeded random inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::matrix::Matrix4;
use crate::scalar::{Mode, Scalar};

/// One of the four basis units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::J, Unit::K];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(t: usize) -> Option<Unit> {
        Unit::ALL.get(t).copied()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::One => "1",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        }
    }
}

/// `±u` for a basis unit `u`; the entries of the unit multiplication table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedUnit {
    pub negative: bool,
    pub unit: Unit,
}

impl SignedUnit {
    pub fn to_quaternion(self, mode: Mode) -> Quaternion {
        let q = Quaternion::unit(self.unit, mode);
        if self.negative {
            -q
        } else {
            q
        }
    }
}

impl fmt::Display for SignedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(self.unit.symbol())
    }
}

/// A quaternion whose four components share one scalar mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Quaternion {
    c: [Scalar; 4],
}

impl Quaternion {
    /// Builds `w + x i + y j + z k`; all four components must share a mode.
    pub fn new(w: Scalar, x: Scalar, y: Scalar, z: Scalar) -> Result<Self, AlgebraError> {
        Quaternion::from_components([w, x, y, z])
    }

    pub fn from_components(c: [Scalar; 4]) -> Result<Self, AlgebraError> {
        let mode = c[0].mode();
        if let Some(bad) = c.iter().find(|s| s.mode() != mode) {
            return Err(AlgebraError::ModeMismatch { left: mode, right: bad.mode() });
        }
        Ok(Quaternion { c })
    }

    /// Exact quaternion with integer components.
    pub fn exact(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion { c: [w, x, y, z].map(|v| Scalar::from_int(v, Mode::Exact)) }
    }

    pub fn float(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { c: [w, x, y, z].map(Scalar::Float) }
    }

    pub fn zero(mode: Mode) -> Self {
        Quaternion { c: std::array::from_fn(|_| Scalar::zero(mode)) }
    }

    pub fn one(mode: Mode) -> Self {
        Quaternion::unit(Unit::One, mode)
    }

    pub fn unit(u: Unit, mode: Mode) -> Self {
        let mut q = Quaternion::zero(mode);
        q.c[u.index()] = Scalar::one(mode);
        q
    }

    pub fn real(s: Scalar) -> Self {
        let mode = s.mode();
        let mut q = Quaternion::zero(mode);
        q.c[0] = s;
        q
    }

    pub fn mode(&self) -> Mode {
        self.c[0].mode()
    }

    pub fn w(&self) -> &Scalar {
        &self.c[0]
    }

    pub fn x(&self) -> &Scalar {
        &self.c[1]
    }

    pub fn y(&self) -> &Scalar {
        &self.c[2]
    }

    pub fn z(&self) -> &Scalar {
        &self.c[3]
    }

    pub fn component(&self, t: usize) -> &Scalar {
        &self.c[t]
    }

    pub fn components(&self) -> &[Scalar; 4] {
        &self.c
    }

    /// Vector part `(q1, q2, q3)`.
    pub fn vector(&self) -> [Scalar; 3] {
        [self.c[1].clone(), self.c[2].clone(), self.c[3].clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.c[1..].iter().all(Scalar::is_zero)
    }

    pub fn to_float(&self) -> Quaternion {
        Quaternion { c: self.c.clone().map(|s| s.to_float()) }
    }

    pub fn to_exact(&self) -> Result<Quaternion, AlgebraError> {
        let [w, x, y, z] = &self.c;
        Ok(Quaternion { c: [w.to_exact()?, x.to_exact()?, y.to_exact()?, z.to_exact()?] })
    }

    pub fn to_mode(&self, mode: Mode) -> Result<Quaternion, AlgebraError> {
        match mode {
            Mode::Exact => self.to_exact(),
            Mode::Float => Ok(self.to_float()),
        }
    }

    /// `[w, x, y, z]` as floats (lossy).
    pub fn to_f64_array(&self) -> [f64; 4] {
        std::array::from_fn(|t| self.c[t].to_f64())
    }

    fn check(&self, other: &Quaternion) -> Result<(), AlgebraError> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(AlgebraError::ModeMismatch { left: self.mode(), right: other.mode() })
        }
    }

    pub fn checked_add(&self, other: &Quaternion) -> Result<Quaternion, AlgebraError> {
        self.check(other)?;
        Ok(Quaternion { c: std::array::from_fn(|t| &self.c[t] + &other.c[t]) })
    }

    pub fn checked_sub(&self, other: &Quaternion) -> Result<Quaternion, AlgebraError> {
        self.check(other)?;
        Ok(Quaternion { c: std::array::from_fn(|t| &self.c[t] - &other.c[t]) })
    }

    /// Multiplies every component by a real scalar.
    pub fn scale(&self, s: &Scalar) -> Result<Quaternion, AlgebraError> {
        if s.mode() != self.mode() {
            return Err(AlgebraError::ModeMismatch { left: self.mode(), right: s.mode() });
        }
        Ok(Quaternion { c: std::array::from_fn(|t| &self.c[t] * s) })
    }

    /// Hamilton product from the regrouped component formula.
    pub fn mul_components(&self, q: &Quaternion) -> Result<Quaternion, AlgebraError> {
        self.check(q)?;
        let [p0, p1, p2, p3] = &self.c;
        let [q0, q1, q2, q3] = &q.c;
        let r0 = &(p0 * q0) - &(&(&(p1 * q1) + &(p2 * q2)) + &(p3 * q3));
        let r1 = &(&(&(p0 * q1) + &(p1 * q0)) + &(p2 * q3)) - &(p3 * q2);
        let r2 = &(&(&(p0 * q2) - &(p1 * q3)) + &(p2 * q0)) + &(p3 * q1);
        let r3 = &(&(&(p0 * q3) + &(p1 * q2)) - &(p2 * q1)) + &(p3 * q0);
        Ok(Quaternion { c: [r0, r1, r2, r3] })
    }

    /// Hamilton product as `M(p) · [q0, q1, q2, q3]ᵀ`.
    pub fn mul_matrix(&self, q: &Quaternion) -> Result<Quaternion, AlgebraError> {
        self.check(q)?;
        let r = self.left_mul_matrix().apply(&q.c)?;
        Ok(Quaternion { c: r })
    }

    /// Hamilton product in scalar/vector form.
    pub fn mul_vector_form(&self, q: &Quaternion) -> Result<Quaternion, AlgebraError> {
        self.check(q)?;
        let (p0, pv) = (&self.c[0], self.vector());
        let (q0, qv) = (&q.c[0], q.vector());
        let dot = &(&(&pv[0] * &qv[0]) + &(&pv[1] * &qv[1])) + &(&pv[2] * &qv[2]);
        let cross = [
            &(&pv[1] * &qv[2]) - &(&pv[2] * &qv[1]),
            &(&pv[2] * &qv[0]) - &(&pv[0] * &qv[2]),
            &(&pv[0] * &qv[1]) - &(&pv[1] * &qv[0]),
        ];
        let real = &(p0 * q0) - &dot;
        let v: [Scalar; 3] =
            std::array::from_fn(|t| &(&(p0 * &qv[t]) + &(q0 * &pv[t])) + &cross[t]);
        let [x, y, z] = v;
        Ok(Quaternion { c: [real, x, y, z] })
    }

    /// The matrix `M(p)` with `p q = M(p) · q` on coefficient vectors.
    pub fn left_mul_matrix(&self) -> Matrix4 {
        let [p0, p1, p2, p3] = &self.c;
        Matrix4::new([
            [p0.clone(), -p1, -p2, -p3],
            [p1.clone(), p0.clone(), -p3, p2.clone()],
            [p2.clone(), p3.clone(), p0.clone(), -p1],
            [p3.clone(), -p2, p1.clone(), p0.clone()],
        ])
        .expect("components share a mode")
    }

    /// The matrix `R(p)` with `q p = R(p) · q` on coefficient vectors.
    pub fn right_mul_matrix(&self) -> Matrix4 {
        let [p0, p1, p2, p3] = &self.c;
        Matrix4::new([
            [p0.clone(), -p1, -p2, -p3],
            [p1.clone(), p0.clone(), p3.clone(), -p2],
            [p2.clone(), -p3, p0.clone(), p1.clone()],
            [p3.clone(), p2.clone(), -p1, p0.clone()],
        ])
        .expect("components share a mode")
    }

    pub fn conjugate(&self) -> Quaternion {
        let [w, x, y, z] = &self.c;
        Quaternion { c: [w.clone(), -x, -y, -z] }
    }

    /// `q0² + q1² + q2² + q3²`, exact in exact mode.
    pub fn norm_squared(&self) -> Scalar {
        let [w, x, y, z] = &self.c;
        &(&(&(w * w) + &(x * x)) + &(y * y)) + &(z * z)
    }

    /// `|q|`; needs a square root, so float mode only.
    pub fn norm(&self) -> Result<Scalar, AlgebraError> {
        self.norm_squared().sqrt()
    }

    /// Euclidean norm as a float, whatever the mode.
    pub fn norm_f64(&self) -> f64 {
        self.to_f64_array().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `conj(q) / |q|²`.
    pub fn inverse(&self) -> Result<Quaternion, AlgebraError> {
        let n = self.norm_squared();
        if n.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let conj = self.conjugate();
        let [w, x, y, z] = &conj.c;
        Ok(Quaternion {
            c: [w.checked_div(&n)?, x.checked_div(&n)?, y.checked_div(&n)?, z.checked_div(&n)?],
        })
    }

    /// `self^n` by repeated multiplication; `q^0 = 1`.
    pub fn powu(&self, n: u32) -> Quaternion {
        let mut acc = Quaternion::one(self.mode());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// The 16-entry table of products of `{1, i, j, k}`, computed with
/// [`Quaternion::mul_components`]. Row is the left factor.
pub fn unit_table() -> [[SignedUnit; 4]; 4] {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let p = Quaternion::unit(Unit::ALL[a], Mode::Exact)
                .mul_components(&Quaternion::unit(Unit::ALL[b], Mode::Exact))
                .expect("same mode");
            let (t, s) = p
                .components()
                .iter()
                .enumerate()
                .find(|(_, s)| !s.is_zero())
                .expect("product of units is a unit");
            SignedUnit { negative: s.is_negative(), unit: Unit::ALL[t] }
        })
    })
}

macro_rules! quat_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Quaternion> for &'a Quaternion {
            type Output = Quaternion;

            fn $method(self, rhs: &'a Quaternion) -> Quaternion {
                self.$checked(rhs).expect("mixed scalar modes")
            }
        }

        impl $trait for Quaternion {
            type Output = Quaternion;

            fn $method(self, rhs: Quaternion) -> Quaternion {
                (&self).$method(&rhs)
            }
        }
    };
}

quat_binop!(Add, add, checked_add);
quat_binop!(Sub, sub, checked_sub);
quat_binop!(Mul, mul, mul_components);

impl Neg for &Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion { c: std::array::from_fn(|t| -&self.c[t]) }
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        -&self
    }
}

/// Writes `coeff * unit` terms in the expression syntax, e.g. `1-1/2*i+3*k`.
pub(crate) fn write_terms(
    f: &mut impl fmt::Write,
    terms: &[(&Scalar, &str)],
    first: &mut bool,
) -> fmt::Result {
    for (s, unit) in terms {
        if s.is_zero() {
            continue;
        }
        let mag = s.abs();
        if s.is_negative() {
            f.write_str("-")?;
        } else if !*first {
            f.write_str("+")?;
        }
        match (unit.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{mag}")?,
            (false, true) => f.write_str(unit)?,
            (false, false) => write!(f, "{mag}*{unit}")?,
        }
        *first = false;
    }
    Ok(())
}

/// Renders in the expression syntax, so the output parses back to the
/// same value (`-1`, `1-i`, `1/2*j+k`).
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let units = ["", "i", "j", "k"];
        let terms: Vec<(&Scalar, &str)> = self.c.iter().zip(units).collect();
        let mut out = String::new();
        write_terms(&mut out, &terms, &mut first)?;
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// JSON form `{"w": .., "x": .., "y": .., "z": ..}`.
impl Serialize for Quaternion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Quaternion", 4)?;
        st.serialize_field("w", &self.c[0])?;
        st.serialize_field("x", &self.c[1])?;
        st.serialize_field("y", &self.c[2])?;
        st.serialize_field("z", &self.c[3])?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            w: Scalar,
            x: Scalar,
            y: Scalar,
            z: Scalar,
        }
        let r = Repr::deserialize(d)?;
        Quaternion::new(r.w, r.x, r.y, r.z).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        Quaternion::exact(w, x, y, z)
    }

    #[test]
    fn addition_is_componentwise() {
        assert_eq!(&q(1, 2, 0, 0) + &q(3, 0, 0, 4), q(4, 2, 0, 4));
        let p = q(5, -1, 2, 7);
        assert_eq!(&p + &Quaternion::zero(Mode::Exact), p);
    }

    #[test]
    fn basic_unit_products() {
        let (i, j, k) = (q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1));
        assert_eq!(i.mul_components(&j).unwrap(), k);
        assert_eq!(j.mul_components(&i).unwrap(), -&k);
        let ijk = i.mul_components(&j).unwrap().mul_components(&k).unwrap();
        assert_eq!(ijk, q(-1, 0, 0, 0));
        let p = q(3, -2, 5, 1);
        assert_eq!(p.mul_components(&Quaternion::one(Mode::Exact)).unwrap(), p);
    }

    #[test]
    fn matrix_rows_by_hand() {
        // M(i) has p1 = 1: columns map 1 -> i, i -> -1, j -> k, k -> -j.
        let m = q(0, 1, 0, 0).left_mul_matrix();
        let r = m.apply(q(0, 0, 1, 0).components()).unwrap();
        assert_eq!(Quaternion::from_components(r).unwrap(), q(0, 0, 0, 1));
        assert_eq!(Quaternion::one(Mode::Exact).left_mul_matrix(), Matrix4::identity(Mode::Exact));
        let expected = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
        for (r, row) in expected.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(*m.get(r, c), Scalar::from_int(*v, Mode::Exact), "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn vector_form_pure_vectors() {
        let i = q(0, 1, 0, 0);
        let j = q(0, 0, 1, 0);
        assert_eq!(i.mul_vector_form(&j).unwrap(), q(0, 0, 0, 1));
        // p = 2i + j, r = i - 3k: -p.r + p x r
        let p = q(0, 2, 1, 0);
        let r = q(0, 1, 0, -3);
        assert_eq!(p.mul_vector_form(&r).unwrap(), q(-2, -3, 6, -1));
    }

    #[test]
    fn conjugate_and_norm() {
        let a = q(1, 1, 1, 1);
        assert_eq!(a.conjugate(), q(1, -1, -1, -1));
        assert_eq!(a.conjugate().conjugate(), a);
        assert_eq!(a.norm_squared(), Scalar::from_int(4, Mode::Exact));
        assert_eq!(&a * &a.conjugate(), q(4, 0, 0, 0));
        assert!(Quaternion::zero(Mode::Exact).norm_squared().is_zero());
        assert!(a.norm().is_err());
        assert_eq!(a.to_float().norm().unwrap(), Scalar::Float(2.0));
    }

    #[test]
    fn inverses() {
        let i = q(0, 1, 0, 0);
        assert_eq!(i.inverse().unwrap(), q(0, -1, 0, 0));
        let half = Scalar::ratio(1, 2, Mode::Exact);
        let expected = Quaternion::new(half.clone(), -&half, Scalar::zero(Mode::Exact), Scalar::zero(Mode::Exact)).unwrap();
        assert_eq!(q(1, 1, 0, 0).inverse().unwrap(), expected);
        assert_eq!(Quaternion::zero(Mode::Exact).inverse(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let a = q(1, 0, 0, 0);
        let b = Quaternion::float(1.0, 0.0, 0.0, 0.0);
        for r in [a.checked_add(&b), a.mul_components(&b), a.mul_matrix(&b), a.mul_vector_form(&b)] {
            assert!(matches!(r, Err(AlgebraError::ModeMismatch { .. })));
        }
        assert!(Quaternion::new(
            Scalar::from_int(1, Mode::Exact),
            Scalar::Float(0.0),
            Scalar::Float(0.0),
            Scalar::Float(0.0)
        )
        .is_err());
    }

    #[test]
    fn table_entries() {
        let t = unit_table();
        let s = |a: Unit, b: Unit| t[a.index()][b.index()].to_string();
        assert_eq!(s(Unit::I, Unit::J), "k");
        assert_eq!(s(Unit::J, Unit::I), "-k");
        assert_eq!(s(Unit::K, Unit::K), "-1");
        assert_eq!(s(Unit::J, Unit::K), "i");
        assert_eq!(s(Unit::K, Unit::I), "j");
        assert_eq!(s(Unit::K, Unit::J), "-i");
        assert_eq!(s(Unit::One, Unit::One), "1");
        for a in [Unit::I, Unit::J, Unit::K] {
            for b in [Unit::I, Unit::J, Unit::K] {
                if a != b {
                    let (ab, ba) = (t[a.index()][b.index()], t[b.index()][a.index()]);
                    assert_eq!(ab.unit, ba.unit);
                    assert_ne!(ab.negative, ba.negative);
                }
            }
        }
    }

    #[test]
    fn display_is_parseable_syntax() {
        assert_eq!(q(-1, 0, 0, 0).to_string(), "-1");
        assert_eq!(q(0, 0, 0, 0).to_string(), "0");
        assert_eq!(q(1, -1, 0, 2).to_string(), "1-i+2*k");
        assert_eq!(q(1, 0, -1, 0).inverse().unwrap().to_string(), "1/2+1/2*j");
        assert_eq!(Quaternion::float(0.0, 0.5, 0.0, -1.0).to_string(), "0.5*i-k");
    }

    #[test]
    fn json_round_trip() {
        let a = q(1, 0, -1, 0).inverse().unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"w":"1/2","x":"0","y":"1/2","z":"0"}"#);
        let back: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let f = Quaternion::float(1.5, 0.0, 0.0, -2.0);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"w":1.5,"x":0.0,"y":0.0,"z":-2.0}"#);
    }
}
