//! Exact scalar fields used by the linear-algebra kernels.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus for prime-field builds.
pub const DEFAULT_PRIME: u64 = 32003;

/// A field with exact arithmetic. Elements are plain values; the field
/// object carries any runtime parameters (the modulus).
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero; callers only invert pivots.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a rational number. Fails when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn spec(&self) -> FieldSpec;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime { p: DEFAULT_PRIME }
    }
}

impl FieldSpec {
    /// Parses `q` or `p:<prime>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            _ => {
                let p = s
                    .strip_prefix("p:")
                    .or_else(|| s.strip_prefix("prime:"))
                    .ok_or_else(|| Error::Config(format!("unknown field '{s}'")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Config(format!("bad prime '{p}'")))?;
                let f = FieldSpec::Prime { p };
                f.validate()?;
                Ok(f)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let FieldSpec::Prime { p } = *self {
            if !is_prime(p) || p > u32::MAX as u64 {
                return Err(Error::Config(format!("{p} is not a prime below 2^32")));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rationals => "q".into(),
            FieldSpec::Prime { p } => format!("p:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Prime { p }.validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.reduce_big(q.denom());
        if den == 0 {
            return Err(Error::Config(format!(
                "denominator of {q} vanishes modulo {}",
                self.p
            )));
        }
        Ok(self.mul(&self.reduce_big(q.numer()), &self.inv(&den)))
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
}

/// Parses `num/den` or `num` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Config(format!("bad coefficient '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.denom().is_negative() {
        format!("{}/{}", -q.numer(), -q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
