//! Exact scalar fields: the rationals with arbitrary-precision numerators and
//! denominators, and prime fields `F_p`.
//!
//! A session fixes one [`Field`]; every [`FieldElement`] produced inside it
//! carries the same variant. Mixing elements of different fields is a
//! programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field with `p` elements. Rejects composite `p` and moduli
    /// that do not fit the 63-bit residue representation.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::one()),
            Field::Prime(p) => FieldElement::Residue {
                value: 1 % p,
                modulus: p,
            },
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElement::Residue {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `num/den` in this field; `None` when the denominator vanishes.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<FieldElement> {
        match *self {
            Field::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(p) => {
                let n = reduce_big(num, p);
                let d = reduce_big(den, p);
                let d = FieldElement::Residue { value: d, modulus: p }.inv()?;
                Some(&FieldElement::Residue { value: n, modulus: p } * &d)
            }
        }
    }

    /// Parses `a`, `-a`, `a/b` or `-a/b` into this field.
    pub fn parse_literal(&self, text: &str) -> Option<FieldElement> {
        let text = text.trim();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, text),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (body.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if num.is_negative() || den.is_negative() {
            return None;
        }
        let num = if neg { -num } else { num };
        self.from_ratio(&num, &den)
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {}", p),
        }
    }
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    n.mod_floor(&m).to_u64().expect("residue fits in u64")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
    /// Always reduced, `value < modulus`.
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rational(q.recip()))
                }
            }
            FieldElement::Residue { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(FieldElement::Residue {
                        value: pow_mod(*value, modulus - 2, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    /// The image of `self` in `target`: reduction of a rational into `F_p`,
    /// `None` when `p` divides the denominator.
    pub fn reduce_into(&self, target: Field) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(r) => target.from_ratio(r.numer(), r.denom()),
            FieldElement::Residue { .. } => (self.field() == target).then(|| self.clone()),
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &FieldElement) {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a += b,
            (FieldElement::Residue { value, modulus }, FieldElement::Residue { value: b, modulus: m }) => {
                debug_assert_eq!(modulus, m);
                let s = *value + b;
                *value = if s >= *modulus { s - *modulus } else { s };
            }
            _ => panic!("mixed fields"),
        }
    }

    /// `self += a * b`, the inner loop of every elimination.
    pub fn add_product(&mut self, a: &FieldElement, b: &FieldElement) {
        match (self, a, b) {
            (
                FieldElement::Residue { value, modulus },
                FieldElement::Residue { value: x, .. },
                FieldElement::Residue { value: y, .. },
            ) => {
                *value = ((*value as u128 + *x as u128 * *y as u128) % *modulus as u128) as u64;
            }
            (FieldElement::Rational(acc), FieldElement::Rational(x), FieldElement::Rational(y)) => {
                if !x.is_zero() && !y.is_zero() {
                    *acc += x * y;
                }
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{}", value),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let neg = -rhs;
        self + &neg
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse_literal("2/4").unwrap();
        let b = q.parse_literal("-1/2").unwrap();
        assert_eq!(a.to_string(), "1/2");
        assert!((&a + &b).is_zero());
        assert_eq!(q.parse_literal("6/-3"), None);
        assert_eq!(q.parse_literal("1/0"), None);
        assert_eq!((&a * &a).to_string(), "1/4");
    }

    #[test]
    fn residues_reduce_and_invert() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_i64(-1).to_string(), "4");
        assert_eq!(f5.parse_literal("1/2").unwrap().to_string(), "3");
        assert_eq!(f5.parse_literal("1/5"), None);
        for v in 1..5 {
            let x = f5.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f5.zero().inv().is_none());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn add_product_matches_mul_then_add() {
        let f7 = Field::prime(7).unwrap();
        let mut acc = f7.from_i64(3);
        acc.add_product(&f7.from_i64(4), &f7.from_i64(5));
        assert_eq!(acc, f7.from_i64(23));
    }
}
