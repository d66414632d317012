//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field: characteristic 0 means the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::RATIONALS
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    /// Validates the characteristic (0 or a prime below 2^31).
    pub fn new(characteristic: u32) -> Result<Self> {
        if characteristic == 0 || (characteristic < (1 << 31) && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::Precondition(format!(
                "characteristic {characteristic} is neither 0 nor a prime below 2^31"
            )))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::P {
                v: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// Maps a rational into this field; fails if the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.characteristic {
            0 => Ok(Scalar::Q(q.clone())),
            p => {
                let pb = BigInt::from(p);
                let n = q.numer().mod_floor(&pb).to_u32().unwrap_or(0);
                let d = q.denom().mod_floor(&pb).to_u32().unwrap_or(0);
                if d == 0 {
                    return Err(Error::Parse(format!("denominator of {q} vanishes mod {p}")));
                }
                Ok(&Scalar::P { v: n, p } * &Scalar::P { v: d, p }.inv())
            }
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let q = BigRational::from_str(t)
            .map_err(|_| Error::Parse(format!("bad scalar `{t}`")))?;
        self.from_rational(&q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P { v: u32, p: u32 },
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::RATIONALS,
            Scalar::P { p, .. } => FieldSpec { characteristic: *p },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P { v, p } => Scalar::P {
                v: mod_pow(*v as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
        }
    }

    /// True when the value prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::P { .. } => false,
        }
    }

    /// Small integer view, when the value is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::P { v, .. } => Some(*v as i64),
        }
    }

    fn same_field(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "mixed-field arithmetic");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::P { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.same_field(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, .. }) => Scalar::P {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.same_field(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, .. }) => Scalar::P {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("mixed-field arithmetic"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P { v, p } => Scalar::P {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::new(7).unwrap();
        for v in 1..7 {
            let a = f.from_i64(v);
            assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(9).is_err());
        assert!(FieldSpec::new(2).is_ok());
    }

    #[test]
    fn parse_fraction_mod_p() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("1/5").is_err());
    }
}
