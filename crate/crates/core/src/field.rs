//! Exact coefficient fields.
//!
//! A [`Field`] is a context object: elements are plain values and every
//! operation goes through the field, so a prime field can carry its modulus
//! without storing it in each element.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of `num/den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn config(&self) -> FieldConfig;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `y += a * x`, elementwise.
    fn axpy(&self, y: &mut [Self::Elem], a: &Self::Elem, x: &[Self::Elem]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(a, xi));
            }
        }
    }

    fn scale(&self, y: &mut [Self::Elem], a: &Self::Elem) {
        for yi in y.iter_mut() {
            *yi = self.mul(a, yi);
        }
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
        self.from_ratio(&num, &den)
    }
}

/// The field choice as written in configuration files and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum FieldConfig {
    Gfp { p: u64 },
    Rational,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig::Gfp { p: 101 }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Gfp { p } => write!(f, "gfp:{p}"),
            FieldConfig::Rational => write!(f, "rational"),
        }
    }
}

impl std::str::FromStr for FieldConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" || s == "q" || s == "Q" {
            return Ok(FieldConfig::Rational);
        }
        if let Some(p) = s.strip_prefix("gfp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in `{s}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldConfig::Gfp { p });
        }
        Err(Error::Parse(format!(
            "unknown field `{s}` (expected gfp:<p> or rational)"
        )))
    }
}

/// GF(p) for a prime `p < 2^61`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub const MAX_PRIME_BITS: u32 = 61;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << MAX_PRIME_BITS {
            return Err(Error::InvalidField(format!("{p} is not below 2^61")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        if self.p < 1 << 32 {
            a * b % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: 101 }
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
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        Some(acc)
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let d = self.reduce_big(den);
        let dinv = self
            .inv(&d)
            .ok_or_else(|| Error::InvalidField(format!("denominator {den} vanishes mod {}", self.p)))?;
        Ok(self.mulmod(self.reduce_big(num), dinv))
    }
    fn format(&self, a: &u64) -> String {
        // Symmetric representative keeps signs readable (p - 1 prints as -1).
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn config(&self) -> FieldConfig {
        FieldConfig::Gfp { p: self.p }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn axpy(&self, y: &mut [u64], a: &u64, x: &[u64]) {
        let a = *a;
        if a == 0 {
            return;
        }
        let p = self.p;
        if p < 1 << 32 {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = (*yi + a * xi) % p;
            }
        } else {
            let (a, p) = (a as u128, p as u128);
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = ((*yi as u128 + a * xi as u128) % p) as u64;
            }
        }
    }
}

/// The rationals, always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn config(&self) -> FieldConfig {
        FieldConfig::Rational
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=3);
        BigRational::new(n.into(), d.into())
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_round_trip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u64 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn large_prime_arithmetic() {
        let p = (1u64 << 61) - 1;
        let f = PrimeField::new(p).unwrap();
        let a = p - 3;
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), 1);
        let mut y = vec![p - 1, 5];
        f.axpy(&mut y, &2, &[1, p - 2]);
        assert_eq!(y, vec![1, 1]);
    }

    #[test]
    fn rejects_composites_and_huge() {
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(1 << 61).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(!is_prime(3215031751));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn parse_scalars() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 100);
        assert_eq!(f.mul(&f.parse("1/2").unwrap(), &2), 1);
        assert!(f.parse("1/101").is_err());
        let q = RationalField;
        assert_eq!(q.format(&q.parse("6/-4").unwrap()), "-3/2");
    }

    #[test]
    fn field_config_strings() {
        assert_eq!("gfp:7".parse::<FieldConfig>().unwrap(), FieldConfig::Gfp { p: 7 });
        assert_eq!("rational".parse::<FieldConfig>().unwrap(), FieldConfig::Rational);
        assert!("gfp:9".parse::<FieldConfig>().is_err());
        let json = serde_json::to_string(&FieldConfig::Gfp { p: 101 }).unwrap();
        assert_eq!(json, r#"{"field":"gfp","p":101}"#);
    }
}
