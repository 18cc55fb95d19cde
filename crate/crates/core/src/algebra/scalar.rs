use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient domain of a scalar, polynomial or matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    Rational,
    Integer,
    /// Integers modulo a prime.
    Modular(u64),
}

impl Domain {
    pub fn modular(p: u64) -> Result<Domain> {
        if is_prime(p) {
            Ok(Domain::Modular(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Domain::Modular(p) => p,
            _ => 0,
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Domain::Integer)
    }

    /// `QQ` for characteristic 0, `ZZ/p` otherwise.
    pub fn field_of_characteristic(ch: u64) -> Result<Domain> {
        if ch == 0 {
            Ok(Domain::Rational)
        } else {
            Domain::modular(ch)
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "QQ"),
            Domain::Integer => write!(f, "ZZ"),
            Domain::Modular(p) => write!(f, "ZZ/{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar: a rational number, an integer, or a residue mod a prime.
///
/// Rationals are kept in lowest terms with positive denominator (the
/// `num-rational` invariant); residues lie in `[0, p)`. Arithmetic between
/// different domains is a logic error and panics; the checked entry points
/// live on [`Polynomial`](super::Polynomial).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Integer(BigInt),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Integer(_) => Domain::Integer,
            Scalar::Modular { modulus, .. } => Domain::Modular(*modulus),
        }
    }

    pub fn zero(d: Domain) -> Scalar {
        Scalar::from_int(d, 0)
    }

    pub fn one(d: Domain) -> Scalar {
        Scalar::from_int(d, 1)
    }

    pub fn from_int(d: Domain, v: i64) -> Scalar {
        Scalar::from_bigint(d, &BigInt::from(v))
    }

    pub fn from_bigint(d: Domain, v: &BigInt) -> Scalar {
        match d {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Domain::Integer => Scalar::Integer(v.clone()),
            Domain::Modular(p) => Scalar::Modular {
                value: reduce(v, p),
                modulus: p,
            },
        }
    }

    pub fn rational(r: BigRational) -> Scalar {
        Scalar::Rational(r)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Integer(i) => i.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Integer(i) => i.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero and for non-unit integers.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if !r.is_zero() => Some(Scalar::Rational(r.recip())),
            Scalar::Integer(i) if i.abs().is_one() => Some(self.clone()),
            Scalar::Modular { value, modulus } if *value != 0 => Some(Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
            _ => None,
        }
    }

    /// The rational value, for rational and integer scalars.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Integer(i) => Some(BigRational::from_integer(i.clone())),
            Scalar::Modular { .. } => None,
        }
    }

    /// Reinterprets the scalar in another domain: integers embed in `QQ`,
    /// integers and integral rationals reduce mod p.
    pub fn convert(&self, d: Domain) -> Result<Scalar> {
        match (self, d) {
            (s, d) if s.domain() == d => Ok(s.clone()),
            (Scalar::Integer(i), d) => Ok(Scalar::from_bigint(d, i)),
            (Scalar::Rational(r), Domain::Integer) if r.is_integer() => Ok(Scalar::Integer(r.to_integer())),
            (Scalar::Rational(r), Domain::Modular(p)) => {
                let den = reduce(r.denom(), p);
                if den == 0 {
                    return Err(Error::DomainMismatch(Domain::Rational, d));
                }
                let num = reduce(r.numer(), p);
                Ok(Scalar::Modular {
                    value: mul_mod(num, pow_mod(den, p - 2, p), p),
                    modulus: p,
                })
            }
            (s, d) => Err(Error::DomainMismatch(s.domain(), d)),
        }
    }

    pub fn parse(s: &str, d: Domain) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient {s:?}"));
        let r = if let Some((n, q)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, q)
        } else {
            BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)
        };
        Scalar::Rational(r).convert(d)
    }

    pub(crate) fn assert_same(&self, other: &Scalar) {
        assert_eq!(self.domain(), other.domain(), "scalar arithmetic across domains");
    }
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Integer(i) => write!(f, "{i}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.assert_same(o);
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
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

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.assert_same(o);
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Integer(a), Scalar::Integer(b)) => Scalar::Integer(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => Scalar::Modular {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_stay_in_range() {
        let d = Domain::Modular(5);
        let a = Scalar::from_int(d, -7);
        assert_eq!(a, Scalar::Modular { value: 3, modulus: 5 });
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one(d));
        assert!(Scalar::from_int(Domain::Modular(2), 2).is_zero());
    }

    #[test]
    fn rational_lowest_terms() {
        let s = Scalar::parse("-2/4", Domain::Rational).unwrap();
        assert_eq!(s.to_string(), "-1/2");
        assert_eq!(Scalar::parse("3/-6", Domain::Rational).unwrap().to_string(), "-1/2");
        assert!(Scalar::parse("1/2", Domain::Integer).is_err());
        assert_eq!(Scalar::parse("1/2", Domain::Modular(3)).unwrap().to_string(), "2");
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(2_147_483_647));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
        assert_eq!(Domain::modular(4), Err(Error::NotPrime(4)));
    }
}
