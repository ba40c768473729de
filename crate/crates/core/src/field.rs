//! Exact coefficient fields: prime fields `F_p` and the rationals.
//!
//! The field is chosen at runtime, so a [`Scalar`] carries enough of its
//! field to do arithmetic on its own. Mixing scalars from different fields
//! is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    /// Integers modulo a prime.
    Fp(u32),
    /// Rational numbers, exact.
    Q,
}

impl Default for Field {
    fn default() -> Self {
        Field::Fp(2)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, Error> {
        if is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { v: 0, p },
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Embeds a rational number. Fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, Error> {
        match self {
            Field::Q => Ok(Scalar::Q(q.clone())),
            Field::Fp(p) => {
                let pm = BigInt::from(p);
                let num = (q.numer() % &pm + &pm) % &pm;
                let den = (q.denom() % &pm + &pm) % &pm;
                let num = self.from_i64(num.to_i64().unwrap_or(0));
                let den = self.from_i64(den.to_i64().unwrap_or(0));
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("denominator of {q} vanishes in F_{p}")))?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses a coefficient: an integer, `a/b`, or a decimal literal.
    pub fn parse(self, s: &str) -> Result<Scalar, Error> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }

    /// Sign `(-1)^k` as a field element.
    pub fn sign(self, k: usize) -> Scalar {
        if k.is_multiple_of(2) {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Uniform element of `F_p`, or an integer in `[-2, 2]` over `Q`.
    pub fn random<R: rand::Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Fp(p) => self.from_i64(rng.gen_range(0..p as i64)),
            Field::Q => self.from_i64(rng.gen_range(-2..=2)),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Fp(p) => p,
            Field::Q => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F{p}"),
            Field::Q => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `F2`, `F_5`, `Fp5`, `GF(3)` style names and `Q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Q);
        }
        let digits: String = t.chars().filter(|c| c.is_ascii_digit()).collect();
        let head = t.trim_end_matches(|c: char| c.is_ascii_digit() || c == ')');
        let head_ok = matches!(
            head.to_ascii_lowercase().as_str(),
            "f" | "f_" | "fp" | "f_p" | "gf(" | "gf"
        );
        if !head_ok || digits.is_empty() {
            return Err(Error::Parse(format!("unknown field `{s}`")));
        }
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
        Field::prime(p)
    }
}

/// Parses `a`, `a/b` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        let b: BigInt = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        if b.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(a, b));
    }
    if let Ok(n) = t.parse::<BigInt>() {
        return Ok(BigRational::from_integer(n));
    }
    let x: f64 = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
    BigRational::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite number `{s}`")))
}

/// An element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Q(_) => Field::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v as u64, (*p - 2) as u64, *p as u64) as u32,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    /// Rational value for display; residues are shown as their representative.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
            Scalar::Q(q) => q.clone(),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Fp { v, .. } => s.serialize_u32(*v),
            Scalar::Q(q) if q.is_integer() && q.numer().abs() < BigInt::from(1i64 << 53) => {
                s.serialize_i64(q.numer().to_i64().unwrap_or(0))
            }
            Scalar::Q(_) => s.serialize_str(&self.to_string()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $fp:expr, $q:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                        assert_eq!(p, q, "scalars from different prime fields");
                        let f: fn(u64, u64, u64) -> u64 = $fp;
                        Scalar::Fp {
                            v: f(*a as u64, *b as u64, *p as u64) as u32,
                            p: *p,
                        }
                    }
                    (Scalar::Q(a), Scalar::Q(b)) => {
                        let f: fn(&BigRational, &BigRational) -> BigRational = $q;
                        Scalar::Q(f(a, b))
                    }
                    _ => panic!("scalars from different fields"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, p| (a + b) % p, |a, b| a + b);
binop!(Sub, sub, |a, b, p| (a + p - b) % p, |a, b| a - b);
binop!(Mul, mul, |a, b, p| a * b % p, |a, b| a * b);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
