//! Arithmetic in prime fields GF(p) and on the projective parameter line
//! GF(p) ∪ {∞}.
//!
//! Hot loops (row reduction, curve evaluation) work on raw `u32` residues
//! through the methods on [`PrimeField`]. The [`Fp`] type carries its modulus
//! and is used at API boundaries where mixing fields must be caught.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field GF(p) for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Exclusive upper bound on the modulus; products of two residues fit in a `u64`.
    pub const MODULUS_LIMIT: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::MODULUS_LIMIT).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Number of points of the parameter line, `p + 1`.
    pub fn line_size(self) -> usize {
        self.p as usize + 1
    }

    /// Reduces an arbitrary signed integer to its canonical residue.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn elem(self, v: i64) -> Fp {
        Fp {
            value: self.reduce(v),
            modulus: self.p,
        }
    }

    pub fn zero(self) -> Fp {
        self.elem(0)
    }

    pub fn one(self) -> Fp {
        self.elem(1)
    }

    /// All field elements in increasing order of representative.
    pub fn elements(self) -> impl Iterator<Item = Fp> {
        let p = self.p;
        (0..p).map(move |value| Fp { value, modulus: p })
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a + b * c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    fn check(self, a: Fp) -> Result<()> {
        if a.modulus != self.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: a.modulus,
            });
        }
        Ok(())
    }

    /// Checked binary arithmetic on field elements.
    pub fn arith(self, a: Fp, b: Fp, op: ArithOp) -> Result<Fp> {
        self.check(a)?;
        self.check(b)?;
        let value = match op {
            ArithOp::Add => self.add(a.value, b.value),
            ArithOp::Sub => self.sub(a.value, b.value),
            ArithOp::Mul => self.mul(a.value, b.value),
        };
        Ok(Fp {
            value,
            modulus: self.p,
        })
    }

    pub fn inverse(self, a: Fp) -> Result<Fp> {
        self.check(a)?;
        let value = self.inv(a.value).ok_or(Error::DivisionByZero)?;
        Ok(Fp {
            value,
            modulus: self.p,
        })
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p as u64
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A field element together with its modulus.
///
/// The operator impls panic when the moduli differ; use
/// [`PrimeField::arith`] for a checked variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Fp> {
        self.field().inverse(self)
    }

    fn same_field(self, other: Fp) -> PrimeField {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in field arithmetic"
        );
        self.field()
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let f = self.same_field(rhs);
        f.elem(f.add(self.value, rhs.value) as i64)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let f = self.same_field(rhs);
        f.elem(f.sub(self.value, rhs.value) as i64)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let f = self.same_field(rhs);
        f.elem(f.mul(self.value, rhs.value) as i64)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let f = self.field();
        f.elem(f.neg(self.value) as i64)
    }
}

/// A point of the parameter line GF(p) ∪ {∞}.
///
/// Finite parameters sort before infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjParam {
    Finite(Fp),
    Infinity,
}

impl ProjParam {
    /// All `p + 1` parameters: `0, 1, …, p-1, ∞`.
    pub fn all(field: PrimeField) -> impl Iterator<Item = ProjParam> {
        field
            .elements()
            .map(ProjParam::Finite)
            .chain(std::iter::once(ProjParam::Infinity))
    }

    /// Homogeneous coordinates `(s, t)` with `t/s` the parameter; ∞ is `(0, 1)`.
    ///
    /// This matches the curve parametrization `t ↦ ν(1, t)`, `∞ ↦ ν(0, 1)`.
    pub fn homogeneous(self, field: PrimeField) -> [u32; 2] {
        match self {
            ProjParam::Finite(t) => [1, t.value() % field.modulus()],
            ProjParam::Infinity => [0, 1],
        }
    }

    /// Inverse of [`ProjParam::homogeneous`]. `None` for `(0, 0)`.
    pub fn from_homogeneous(field: PrimeField, s: u32, t: u32) -> Option<ProjParam> {
        match (s % field.modulus(), t % field.modulus()) {
            (0, 0) => None,
            (0, _) => Some(ProjParam::Infinity),
            (s, t) => {
                let inv = field.inv(s)?;
                Some(ProjParam::Finite(field.elem(field.mul(t, inv) as i64)))
            }
        }
    }

    /// Applies the Möbius map `t ↦ (a t + b) / (c t + d)`.
    pub fn mobius(self, field: PrimeField, [a, b, c, d]: [u32; 4]) -> Option<ProjParam> {
        let [s, t] = self.homogeneous(field);
        let num = field.add(field.mul(a, t), field.mul(b, s));
        let den = field.add(field.mul(c, t), field.mul(d, s));
        ProjParam::from_homogeneous(field, den, num)
    }
}

impl fmt::Display for ProjParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjParam::Finite(t) => write!(f, "{t}"),
            ProjParam::Infinity => f.write_str("inf"),
        }
    }
}

// `t_i - t_j` up to the factor `1/(s_i s_j)`, which cancels in the cross-ratio.
fn bracket(field: PrimeField, a: [u32; 2], b: [u32; 2]) -> u32 {
    field.sub(field.mul(a[1], b[0]), field.mul(b[1], a[0]))
}

/// Cross-ratio `((t1−t3)(t2−t4)) / ((t1−t4)(t2−t3))` with the usual limits at ∞.
pub fn crossratio_params(field: PrimeField, t: [ProjParam; 4]) -> Result<ProjParam> {
    for (i, a) in t.iter().enumerate() {
        if let ProjParam::Finite(v) = a {
            field.check(*v)?;
        }
        if t[i + 1..].contains(a) {
            return Err(Error::RepeatedParameter);
        }
    }
    let h = t.map(|x| x.homogeneous(field));
    let num = field.mul(bracket(field, h[0], h[2]), bracket(field, h[1], h[3]));
    let den = field.mul(bracket(field, h[0], h[3]), bracket(field, h[1], h[2]));
    ProjParam::from_homogeneous(field, den, num).ok_or(Error::RepeatedParameter)
}

/// Cross-ratio of four points of a line given in homogeneous coordinates.
pub(crate) fn crossratio_homogeneous(field: PrimeField, h: [[u32; 2]; 4]) -> Result<ProjParam> {
    let t = h.map(|[s, t]| ProjParam::from_homogeneous(field, s, t));
    let mut params = [ProjParam::Infinity; 4];
    for (slot, v) in params.iter_mut().zip(t) {
        *slot = v.ok_or(Error::ZeroVector)?;
    }
    crossratio_params(field, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn modular_examples() {
        let f = gf(5);
        assert_eq!(
            f.arith(f.elem(3), f.elem(4), ArithOp::Add).unwrap(),
            f.elem(2)
        );
        assert_eq!(
            f.arith(f.elem(2), f.elem(3), ArithOp::Mul).unwrap(),
            f.elem(1)
        );
        let g = gf(7);
        assert_eq!(
            g.arith(g.elem(0), g.elem(6), ArithOp::Mul).unwrap(),
            g.elem(0)
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(gf(5).inverse(gf(5).elem(2)).unwrap().value(), 3);
        assert_eq!(gf(7).inverse(gf(7).elem(3)).unwrap().value(), 5);
        assert_eq!(gf(5).inverse(gf(5).elem(1)).unwrap().value(), 1);
        assert_eq!(gf(5).inverse(gf(5).elem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        let (f5, f7) = (gf(5), gf(7));
        assert!(matches!(
            f5.arith(f5.elem(1), f7.elem(1), ArithOp::Add),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    #[should_panic(expected = "mixed moduli")]
    fn operator_panics_on_mixed_moduli() {
        let _ = gf(5).elem(1) + gf(7).elem(1);
    }

    #[test]
    fn construction_rejects_composites_and_range() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::ModulusOutOfRange(1)));
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = gf(p);
            let els: Vec<Fp> = f.elements().collect();
            for &a in &els {
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a + (-a), f.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), f.one());
                }
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!(a - b, a + (-b));
                    for &c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn crossratio_normalization() {
        let f = gf(7);
        for l in 2..7 {
            let lambda = ProjParam::Finite(f.elem(l));
            let cr = crossratio_params(
                f,
                [
                    ProjParam::Infinity,
                    ProjParam::Finite(f.elem(0)),
                    ProjParam::Finite(f.elem(1)),
                    lambda,
                ],
            )
            .unwrap();
            assert_eq!(cr, lambda);
        }
    }

    #[test]
    fn crossratio_direct_evaluation() {
        // ((2-4)(3-0)) / ((2-0)(3-4)) = 9/8 = 3 in GF(5)
        let f = gf(5);
        let t = [2, 3, 4, 0].map(|v| ProjParam::Finite(f.elem(v)));
        assert_eq!(
            crossratio_params(f, t).unwrap(),
            ProjParam::Finite(f.elem(3))
        );
    }

    #[test]
    fn crossratio_rejects_repeats() {
        let f = gf(5);
        let t = [1, 1, 2, 3].map(|v| ProjParam::Finite(f.elem(v)));
        assert_eq!(crossratio_params(f, t), Err(Error::RepeatedParameter));
    }

    #[test]
    fn crossratio_never_degenerate() {
        let f = gf(5);
        let all: Vec<ProjParam> = ProjParam::all(f).collect();
        for quad in itertools::Itertools::permutations(all.iter().copied(), 4) {
            let cr = crossratio_params(f, [quad[0], quad[1], quad[2], quad[3]]).unwrap();
            assert_ne!(cr, ProjParam::Infinity);
            assert_ne!(cr, ProjParam::Finite(f.zero()));
            assert_ne!(cr, ProjParam::Finite(f.one()));
        }
    }

    #[test]
    fn homogeneous_round_trip() {
        let f = gf(11);
        for t in ProjParam::all(f) {
            let [s, u] = t.homogeneous(f);
            assert_eq!(ProjParam::from_homogeneous(f, s, u), Some(t));
            assert_eq!(
                ProjParam::from_homogeneous(f, f.mul(s, 7), f.mul(u, 7)),
                Some(t)
            );
        }
    }
}
