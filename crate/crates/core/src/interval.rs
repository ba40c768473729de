//! Extended reals, half-open intervals `(lower, upper]` and the interval
//! metric `d̃`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::field::parse_rational;

/// A point of `ℝ ∪ {−∞, +∞}`. Finite values are exact rationals; doubles are
/// converted bit-exactly on the way in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtValue {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(a: i64, b: i64) -> Self {
        ExtValue::Finite(BigRational::new(a.into(), b.into()))
    }

    /// Exact value of a double; NaN is rejected.
    pub fn from_f64(x: f64) -> Result<Self, Error> {
        if x.is_nan() {
            return Err(Error::Parse("NaN filtration value".into()));
        }
        Ok(if x == f64::INFINITY {
            ExtValue::PosInf
        } else if x == f64::NEG_INFINITY {
            ExtValue::NegInf
        } else {
            ExtValue::Finite(BigRational::from_float(x).expect("finite"))
        })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Nearest double, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtValue::NegInf => f64::NEG_INFINITY,
            ExtValue::PosInf => f64::INFINITY,
            ExtValue::Finite(q) => q.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Exact double if the rational is one.
    pub fn as_exact_f64(&self) -> Option<f64> {
        let q = self.finite()?;
        let x = q.to_f64()?;
        (BigRational::from_float(x).as_ref() == Some(q)).then_some(x)
    }

    /// `self − other` for `self ≥ other`; the caller guarantees no `∞ − ∞`.
    pub fn minus(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a - b),
            (ExtValue::PosInf, ExtValue::PosInf) | (ExtValue::NegInf, ExtValue::NegInf) => {
                panic!("indeterminate ∞ − ∞")
            }
            (ExtValue::PosInf, _) | (_, ExtValue::NegInf) => ExtValue::PosInf,
            _ => ExtValue::NegInf,
        }
    }

    pub fn plus(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            (ExtValue::PosInf, ExtValue::NegInf) | (ExtValue::NegInf, ExtValue::PosInf) => {
                panic!("indeterminate ∞ − ∞")
            }
            (ExtValue::PosInf, _) | (_, ExtValue::PosInf) => ExtValue::PosInf,
            _ => ExtValue::NegInf,
        }
    }

    pub fn half(&self) -> ExtValue {
        match self {
            ExtValue::Finite(q) => ExtValue::Finite(q / BigRational::from_integer(2.into())),
            other => other.clone(),
        }
    }

    /// Parses a number, `a/b`, or `±inf`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(ExtValue::PosInf),
            "-inf" | "-infinity" => Ok(ExtValue::NegInf),
            t => Ok(ExtValue::Finite(parse_rational(t)?)),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::NegInf => f.write_str("-inf"),
            ExtValue::PosInf => f.write_str("+inf"),
            ExtValue::Finite(q) => match self.as_exact_f64() {
                Some(_) if q.is_integer() => write!(f, "{}", q.numer()),
                Some(x) => write!(f, "{x}"),
                None => write!(f, "{}/{}", q.numer(), q.denom()),
            },
        }
    }
}

/// The interval `{p : lower < p ≤ upper}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lower: ExtValue,
    pub upper: ExtValue,
}

impl Interval {
    pub fn new(lower: ExtValue, upper: ExtValue) -> Result<Self, Error> {
        if lower >= upper {
            return Err(Error::Input(format!("empty interval ({lower}, {upper}]")));
        }
        Ok(Interval { lower, upper })
    }

    pub fn contains(&self, p: &ExtValue) -> bool {
        &self.lower < p && p <= &self.upper
    }

    pub fn length(&self) -> ExtValue {
        self.upper.minus(&self.lower)
    }

    pub fn is_bounded_below(&self) -> bool {
        self.lower != ExtValue::NegInf
    }

    pub fn is_bounded_above(&self) -> bool {
        self.upper != ExtValue::PosInf
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lower: self.lower.clone().min(other.lower.clone()),
            upper: self.upper.clone().max(other.upper.clone()),
        }
    }

    /// `K ∖ self` for a hull `K ⊇ self`, as at most two pieces.
    pub fn complement_in(&self, k: &Interval) -> Vec<Interval> {
        let mut out = Vec::new();
        if k.lower < self.lower {
            out.push(Interval {
                lower: k.lower.clone(),
                upper: self.lower.clone(),
            });
        }
        if self.upper < k.upper {
            out.push(Interval {
                lower: self.upper.clone(),
                upper: k.upper.clone(),
            });
        }
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lower, self.upper)
    }
}

/// `ℓ` of a disjoint union of intervals: the largest piece, `0` when empty.
pub fn length(pieces: &[Interval]) -> ExtValue {
    pieces
        .iter()
        .map(Interval::length)
        .max()
        .unwrap_or_else(ExtValue::zero)
}

/// `d̃` on intervals, with `None` standing for the dummy element `★`.
pub fn tilde_d(i: Option<&Interval>, j: Option<&Interval>) -> ExtValue {
    match (i, j) {
        (None, None) => ExtValue::zero(),
        (Some(a), None) | (None, Some(a)) => a.length().half(),
        (Some(a), Some(b)) => {
            let k = a.hull(b);
            length(&a.complement_in(&k)).max(length(&b.complement_in(&k)))
        }
    }
}

/// Whether `i` has good intersection with `j`: they meet, every point of `i`
/// lies below some point of `j`, and every point of `j` lies above some point
/// of `i`. On half-open real intervals this is `i ∩ j ≠ ∅`, `j.upper ≥ i.upper`
/// and `j.lower ≥ i.lower`. The relation is not symmetric.
pub fn good_intersection(i: &Interval, j: &Interval) -> bool {
    let meet = i.lower.clone().max(j.lower.clone()) < i.upper.clone().min(j.upper.clone());
    meet && j.upper >= i.upper && j.lower >= i.lower
}

pub fn cmp_opt(a: &Option<Interval>, b: &Option<Interval>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => x.cmp(y),
    }
}
