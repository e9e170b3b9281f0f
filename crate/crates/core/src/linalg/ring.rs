use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact scalar. Entries of integer and `F_p` matrices are kept as integral
/// rationals (reduced to `0..p` over `F_p`).
pub type Scalar = BigRational;

/// Coefficient ring `k`: the integers, the rationals, or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
    Fp(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn fp(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::Fp(p))
        } else {
            Err(Error::Ring(format!("{p} is not prime")))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Z)
    }

    pub fn require_field(self, what: &str) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::Ring(format!("{what} requires field coefficients, got Z")))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Fp(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    /// Brings a scalar into canonical form for this ring.
    ///
    /// Panics over `Z` on a non-integral value, and over `F_p` on a value whose
    /// denominator is divisible by `p`.
    pub fn normalize(self, x: Scalar) -> Scalar {
        match self {
            Ring::Z => {
                assert!(x.is_integer(), "non-integral value {x} in a Z-matrix");
                x
            }
            Ring::Q => x,
            Ring::Fp(p) => Scalar::from_integer(BigInt::from(reduce_mod(&x, p))),
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }
}

/// Residue of a rational number modulo a prime not dividing its denominator.
pub(crate) fn reduce_mod(x: &Scalar, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    assert!(!den.is_zero(), "denominator of {x} vanishes mod {p}");
    let num = u64::try_from(num).unwrap();
    let den = u64::try_from(den).unwrap();
    mul_mod(num, inv_mod(den, p), p)
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "z"),
            Ring::Q => write!(f, "q"),
            Ring::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" => Ok(Ring::Z),
            "q" => Ok(Ring::Q),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .or_else(|| other.strip_prefix('f'))
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| Error::Ring(format!("unknown ring '{s}' (use z, q or fp:P)")))?;
                Ring::fp(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn scalar_to_string(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn scalar_from_str(s: &str) -> Result<Scalar> {
    let bad = || Error::InvalidArgument(format!("bad scalar '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}
