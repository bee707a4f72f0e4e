//! Exact rational scalars and vectors.
//!
//! Everything in this crate is computed over `BigRational`; there is no
//! floating point on any counting path.

use std::fmt::Write as _;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(xs: &[i64]) -> RatVec {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Parses a rational literal: optional sign, digits, optionally `/` and a
/// positive denominator. Decimal notation is rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_part
        .strip_prefix('-')
        .or_else(|| num_part.strip_prefix('+'))
        .unwrap_or(num_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if num_part.starts_with('-') {
        num = -num;
    }
    let den: BigInt = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Canonical literal: `"-2"`, `"3/4"`.
pub fn format_rat(x: &Rat) -> String {
    let mut out = String::new();
    if x.is_integer() {
        write!(out, "{}", x.numer()).unwrap();
    } else {
        write!(out, "{}/{}", x.numer(), x.denom()).unwrap();
    }
    out
}

pub fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn parse_vec<S: AsRef<str>>(v: &[S]) -> Result<RatVec> {
    v.iter().map(|s| parse_rat(s.as_ref())).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a vector by its common denominator and returns the integer
/// numerators, or `None` if any entry does not fit in `i64`.
pub fn to_scaled_i64(v: &[Rat]) -> Option<Vec<i64>> {
    let l = common_denominator(v);
    scale_to_i64(v, &l)
}

pub(crate) fn scale_to_i64(v: &[Rat], l: &BigInt) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| (x.numer() * (l / x.denom())).to_i64())
        .collect()
}

/// Dimension of the affine hull of `points`: the rank of `p_i - p_0`,
/// computed by exact elimination with first-nonzero pivoting.
pub fn affine_rank(points: &[RatVec]) -> Result<usize> {
    let first = points.first().ok_or(Error::Empty("affine_rank"))?;
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.len(),
        });
    }
    // Echelon basis: (pivot column, row normalised to 1 at the pivot).
    let mut basis: Vec<(usize, RatVec)> = Vec::new();
    for p in &points[1..] {
        if basis.len() == d {
            break;
        }
        let mut row: RatVec = p.iter().zip(first).map(|(a, b)| a - b).collect();
        for (col, b) in &basis {
            if !row[*col].is_zero() {
                let f = row[*col].clone();
                for (r, bv) in row.iter_mut().zip(b) {
                    *r -= &f * bv;
                }
            }
        }
        if let Some(col) = row.iter().position(|x| !x.is_zero()) {
            let piv = row[col].clone();
            for r in row.iter_mut() {
                *r /= &piv;
            }
            // keep older rows reduced in the new pivot column
            for (_, b) in basis.iter_mut() {
                if !b[col].is_zero() {
                    let f = b[col].clone();
                    for (x, r) in b.iter_mut().zip(&row) {
                        *x -= &f * r;
                    }
                }
            }
            basis.push((col, row));
        }
    }
    Ok(basis.len())
}

pub fn is_nonnegative_integer(x: &Rat) -> bool {
    x.is_integer() && !x.is_negative()
}

pub(crate) mod serde_rat {
    use super::{format_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_rat_vec {
    use super::{format_rat, parse_rat, Rat};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_rat(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
