//! Polynomials and quasipolynomials with exact rational coefficients.

use num::{Integer, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rat, rat, Rat};

/// Coefficients stored constant term first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "crate::exact::serde_rat_vec")]
    coefficients: Vec<Rat>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<Rat>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coefficients
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rat {
        self.eval(&rat(x))
    }

    /// Lagrange interpolation through distinct nodes, via Newton divided
    /// differences expanded into the monomial basis.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Polynomial> {
        if points.is_empty() {
            return Err(Error::Empty("interpolate"));
        }
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::InvalidArgument(format!(
                    "repeated interpolation node {}",
                    format_rat(xi)
                )));
            }
        }
        let n = points.len();
        let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num / den;
            }
        }
        // Horner on the Newton form: p = dd[n-1]; p = p * (x - x_i) + dd[i]
        let mut acc = vec![dd[n - 1].clone()];
        for i in (0..n - 1).rev() {
            let xi = &points[i].0;
            let mut next = vec![Rat::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xi;
            }
            next[0] += &dd[i];
            acc = next;
        }
        Ok(Polynomial::new(acc))
    }

    /// Interpolates integer-valued samples `f(x)` at the given integer nodes.
    pub fn interpolate_ints(nodes: &[i64], mut f: impl FnMut(i64) -> Result<u64>) -> Result<Polynomial> {
        let pts = nodes
            .iter()
            .map(|&x| Ok((rat(x), rat(f(x)? as i64))))
            .collect::<Result<Vec<_>>>()?;
        Self::interpolate(&pts)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(format_rat).collect()
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rat::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let coeff = if a.is_one() && k > 0 {
                String::new()
            } else if a.is_integer() {
                format_rat(&a)
            } else {
                format!("({})", format_rat(&a))
            };
            match k {
                0 => write!(f, "{}", format_rat(&a))?,
                1 => write!(f, "{coeff}m")?,
                _ => write!(f, "{coeff}m^{k}")?,
            }
        }
        Ok(())
    }
}

/// `eval(t) = constituents[t mod period](t)` with the nonnegative residue,
/// for every integer `t`, negative ones included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    period: u32,
    #[serde(with = "constituent_serde")]
    constituents: Vec<Polynomial>,
}

impl QuasiPolynomial {
    pub fn new(constituents: Vec<Polynomial>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::Empty("quasipolynomial"));
        }
        Ok(QuasiPolynomial {
            period: constituents.len() as u32,
            constituents,
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        QuasiPolynomial {
            period: 1,
            constituents: vec![p],
        }
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn constituents(&self) -> &[Polynomial] {
        &self.constituents
    }

    pub fn constituent_for(&self, t: i64) -> &Polynomial {
        &self.constituents[t.mod_floor(&(self.period as i64)) as usize]
    }

    pub fn eval(&self, t: i64) -> Rat {
        self.constituent_for(t).eval_int(t)
    }

    /// Interpolates a quasipolynomial of the declared degree and period
    /// from samples `f(t)`, `t >= 1`: per residue class `r` it uses the
    /// `degree + 1` smallest admissible `t ≡ r` and checks one further node.
    pub fn interpolate(
        degree: usize,
        period: u32,
        mut f: impl FnMut(i64) -> Result<u64>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        let p = period as i64;
        let mut constituents = Vec::with_capacity(period as usize);
        for r in 0..p {
            let first = if r == 0 { p } else { r };
            let nodes: Vec<i64> = (0..=degree as i64).map(|j| first + j * p).collect();
            let poly = Polynomial::interpolate_ints(&nodes, &mut f)?;
            let extra = first + (degree as i64 + 1) * p;
            let count = f(extra)?;
            let model = poly.eval_int(extra);
            if model != rat(count as i64) {
                return Err(Error::InterpolationMismatch {
                    t: extra,
                    model: format_rat(&model),
                    count: count.to_string(),
                });
            }
            constituents.push(poly);
        }
        QuasiPolynomial::new(constituents)
    }

    /// Collapses to a single polynomial when all constituents agree.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        let first = &self.constituents[0];
        self.constituents.iter().all(|c| c == first).then_some(first)
    }
}

mod constituent_serde {
    use super::Polynomial;
    use crate::exact::{parse_rat, format_rat, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Polynomial], s: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<Vec<String>> = v
            .iter()
            .map(|p| p.coefficients().iter().map(format_rat).collect())
            .collect();
        lists.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Polynomial>, D::Error> {
        let lists = Vec::<Vec<String>>::deserialize(d)?;
        lists
            .into_iter()
            .map(|l| {
                l.iter()
                    .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
                    .collect::<Result<Vec<Rat>, _>>()
                    .map(Polynomial::new)
            })
            .collect()
    }
}
