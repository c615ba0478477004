//! Exact ground-field scalars.
//!
//! Two fields are supported and selected at runtime: arbitrary-precision
//! rationals and prime fields `GF(p)` with `p < 2^31`. Mixing scalars from
//! different fields in one operation is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Integer;

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "gf:{p} (need a prime below 2^31)"
            )));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Small { num: 0, den: 1 }),
            Field::Prime(p) => Scalar(Repr::Modular { residue: 0, modulus: p }),
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::small(n as i128, 1),
            Field::Prime(p) => Scalar(Repr::Modular {
                residue: n.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
        }
    }

    /// `num / den` as a field element.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_bigints(&BigInt::from(num), &BigInt::from(den))
    }

    pub fn from_bigints(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::big(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.reduce_bigint(den);
                if d.is_zero() {
                    return Err(Error::NotRepresentable {
                        value: format!("{num}/{den}"),
                        field: self.to_string(),
                    });
                }
                Ok(self.reduce_bigint(num) * d.inv()?)
            }
        }
    }

    /// Maps a rational into this field (reduction mod p for prime fields).
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        self.from_bigints(q.numer(), q.denom())
    }

    fn reduce_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::big(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar(Repr::Modular {
                    residue: r.to_u32().expect("residue below modulus"),
                    modulus: p,
                })
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("gf:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}

/// An element of [`Field::Rational`] or [`Field::Prime`]. Rationals whose
/// reduced numerator and denominator fit in 64 bits are stored inline and
/// promoted to big integers on overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

// Invariant: a rational is `Small` exactly when it fits, so equal values
// have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
    Modular { residue: u32, modulus: u32 },
}

fn fits(n: i128) -> bool {
    n > i64::MIN as i128 && n <= i64::MAX as i128
}

impl Scalar {
    /// `num / den` with `den > 0`.
    fn small(num: i128, den: i128) -> Scalar {
        let g = num.gcd(&den);
        let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if fits(num) && fits(den) {
            Scalar(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Scalar(Repr::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))))
        }
    }

    fn big(q: BigRational) -> Scalar {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) if fits(n as i128) && fits(d as i128) => Scalar(Repr::Small { num: n, den: d }),
            _ => Scalar(Repr::Big(q)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(q) => q.clone(),
            Repr::Modular { .. } => panic!("scalar field mismatch"),
        }
    }

    pub fn field(&self) -> Field {
        match self.0 {
            Repr::Small { .. } | Repr::Big(_) => Field::Rational,
            Repr::Modular { modulus, .. } => Field::Prime(modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num == 0,
            Repr::Big(q) => q.is_zero(),
            Repr::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small { num, den } => *num == 1 && *den == 1,
            Repr::Big(q) => q.is_one(),
            Repr::Modular { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small { num, den } if *num < 0 => Scalar::small(-(*den as i128), -(*num as i128)),
            Repr::Small { num, den } => Scalar::small(*den as i128, *num as i128),
            Repr::Big(q) => Scalar::big(q.recip()),
            Repr::Modular { residue, modulus } => Scalar(Repr::Modular {
                residue: pow_mod(*residue as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            }),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    /// The value of a rational scalar; `None` for prime fields.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Modular { .. } => None,
            _ => Some(self.to_big()),
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match self.0 {
            Repr::Modular { residue, .. } => Some(residue),
            _ => None,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn same_modulus(a: u32, b: u32) -> u32 {
    assert_eq!(a, b, "scalar field mismatch: gf:{a} vs gf:{b}");
    a
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Scalar::small(a + c, b)
                } else {
                    Scalar::small(a * d + c * b, b * d)
                }
            }
            (
                Repr::Modular { residue: a, modulus: p },
                Repr::Modular { residue: b, modulus: q },
            ) => {
                let m = same_modulus(*p, *q);
                Scalar(Repr::Modular {
                    residue: ((*a as u64 + *b as u64) % m as u64) as u32,
                    modulus: m,
                })
            }
            _ => Scalar::big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let (g1, g2) = (a.gcd(&d).max(1), c.gcd(&b).max(1));
                Scalar::small((a / g1) * (c / g2), (b / g2) * (d / g1))
            }
            (
                Repr::Modular { residue: a, modulus: p },
                Repr::Modular { residue: b, modulus: q },
            ) => {
                let m = same_modulus(*p, *q);
                Scalar(Repr::Modular {
                    residue: ((*a as u64 * *b as u64) % m as u64) as u32,
                    modulus: m,
                })
            }
            _ => Scalar::big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar(match &self.0 {
            Repr::Small { num, den } => Repr::Small { num: -num, den: *den },
            Repr::Big(q) => return Scalar::big(-q),
            Repr::Modular { residue, modulus } => Repr::Modular {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        })
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// Sign helper used by the serializers.
pub fn rational_parts(q: &BigRational) -> (BigInt, BigInt) {
    let (n, d) = (q.numer().clone(), q.denom().clone());
    if d.is_negative() {
        (-n, -d)
    } else {
        (n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("gf:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("gf:8".parse::<Field>().is_err());
        assert!("gf:2147483659".parse::<Field>().is_err());
        assert!("real".parse::<Field>().is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        for f in [Field::Rational, Field::Prime(7)] {
            assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
            assert!(matches!(f.ratio(1, 0), Err(Error::DivisionByZero)));
        }
        assert!(matches!(
            Field::Prime(7).ratio(1, 14),
            Err(Error::NotRepresentable { .. })
        ));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let half = f.ratio(1, 2).unwrap();
        assert_eq!(half, f.int(4));
        assert_eq!(&half * &f.int(2), f.one());
        assert_eq!(-f.int(3), f.int(4));
        assert_eq!(f.int(-1), f.int(6));
        assert_eq!(f.int(3).inv().unwrap(), f.int(5));
    }

    #[test]
    fn rational_arithmetic() {
        let f = Field::Rational;
        let a = f.ratio(1, 2).unwrap();
        let b = f.ratio(-1, 3).unwrap();
        assert_eq!(&a + &b, f.ratio(1, 6).unwrap());
        assert_eq!(&a * &b, f.ratio(-1, 6).unwrap());
        assert_eq!(a.checked_div(&b).unwrap(), f.ratio(-3, 2).unwrap());
        assert_eq!(f.ratio(2, -4).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn small_rationals_promote_and_demote() {
        let f = Field::Rational;
        let big = f.int(i64::MAX);
        let square = &big * &big;
        assert!(matches!(square.0, Repr::Big(_)));
        assert_eq!(square.to_string(), (BigInt::from(i64::MAX) * BigInt::from(i64::MAX)).to_string());
        let back = square.checked_div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let tiny = f.ratio(1, i64::MAX).unwrap();
        assert_eq!(&(&tiny * &tiny) * &square, f.one());
        assert_eq!(&f.int(i64::MIN + 1) - &f.one(), f.from_bigints(&BigInt::from(i64::MIN), &BigInt::from(1)).unwrap());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(5).one();
    }
}
