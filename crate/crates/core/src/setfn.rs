//! Set functions on the subsets of a ground set `{0, .., d-1}`.
//!
//! Subsets are bitmasks: bit `i` is ground element `i` (element `i + 1` in
//! one-based notation). A [`SetFn`] with `z(∅) = 0` that is submodular
//! determines a generalized permutahedron, its base polytope
//! `{x : Σ_T x ≤ z(T), Σ x = z(ground)}`.

use std::collections::BTreeSet;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, Rat, RatVec};

pub const MAX_D: usize = 8;

/// Bitmask subset of the ground set.
pub type Subset = u16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFn {
    d: usize,
    values: Vec<Rat>,
}

impl SetFn {
    pub fn new(d: usize, values: Vec<Rat>) -> Result<Self> {
        check_d(d)?;
        if values.len() != 1 << d {
            return Err(Error::DimensionMismatch {
                expected: 1 << d,
                found: values.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(Error::NonzeroAtEmptySet);
        }
        Ok(SetFn { d, values })
    }

    pub fn from_fn(d: usize, f: impl Fn(Subset) -> Rat) -> Result<Self> {
        check_d(d)?;
        Self::new(d, (0..1u32 << d).map(|a| f(a as Subset)).collect())
    }

    pub fn zero(d: usize) -> Result<Self> {
        Self::from_fn(d, |_| Rat::zero())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ground(&self) -> Subset {
        ((1u32 << self.d) - 1) as Subset
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn get(&self, a: Subset) -> &Rat {
        &self.values[a as usize]
    }

    /// Submodularity via the local criterion
    /// `z(A+i) + z(A+j) >= z(A+i+j) + z(A)` for `i != j` outside `A`.
    pub fn is_submodular(&self) -> bool {
        let n = 1usize << self.d;
        for a in 0..n {
            for i in 0..self.d {
                if a & (1 << i) != 0 {
                    continue;
                }
                for j in (i + 1)..self.d {
                    if a & (1 << j) != 0 {
                        continue;
                    }
                    let ai = a | 1 << i;
                    let aj = a | 1 << j;
                    let aij = ai | 1 << j;
                    if &self.values[ai] + &self.values[aj] < &self.values[aij] + &self.values[a] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn require_submodular(&self) -> Result<()> {
        if self.is_submodular() {
            Ok(())
        } else {
            Err(Error::NotSubmodular)
        }
    }

    pub fn sum(&self, other: &SetFn) -> Result<SetFn> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        SetFn::new(self.d, values)
    }

    pub fn scale(&self, c: &Rat) -> SetFn {
        SetFn {
            d: self.d,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The vertex produced by the greedy rule along the chain
    /// `C_j = {perm[0], .., perm[j-1]}`: coordinate `perm[j]` gets
    /// `z(C_{j+1}) - z(C_j)`.
    pub fn greedy_vertex(&self, perm: &[usize]) -> Result<RatVec> {
        self.require_submodular()?;
        check_permutation(self.d, perm)?;
        Ok(self.greedy_vertex_unchecked(perm))
    }

    pub(crate) fn greedy_vertex_unchecked(&self, perm: &[usize]) -> RatVec {
        let mut x = vec![Rat::zero(); self.d];
        let mut chain: usize = 0;
        for &i in perm {
            let next = chain | 1 << i;
            x[i] = &self.values[next] - &self.values[chain];
            chain = next;
        }
        x
    }

    /// Reconstructs `z_P(A) = max_{v in V} Σ_{i in A} v_i`.
    pub fn from_vertices(vertices: &[RatVec]) -> Result<SetFn> {
        let first = vertices.first().ok_or(Error::Empty("setfn_from_vertices"))?;
        let d = first.len();
        check_d(d)?;
        let total: Rat = first.iter().sum();
        for v in vertices {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            if v.iter().sum::<Rat>() != total {
                return Err(Error::UnequalCoordinateSums);
            }
        }
        SetFn::from_fn(d, |a| {
            if a == 0 {
                return Rat::zero();
            }
            vertices
                .iter()
                .map(|v| subset_sum(v, a))
                .max()
                .expect("nonempty")
        })
    }

    /// `z(T) = 1` if `T` meets `edge`, else 0.
    pub fn edge_indicator(d: usize, edge: Subset) -> Result<SetFn> {
        SetFn::from_fn(d, |t| if t & edge != 0 { rat(1) } else { rat(0) })
    }

    /// `z(A) = d + (d-1) + .. + (d-|A|+1)`; its base polytope is the
    /// standard permutahedron, the convex hull of the permutations of `(1, .., d)`.
    pub fn standard_permutahedron(d: usize) -> Result<SetFn> {
        check_d(d)?;
        SetFn::from_fn(d, |a| {
            let k = a.count_ones() as i64;
            let d = d as i64;
            rat((0..k).map(|j| d - j).sum())
        })
    }
}

pub fn subset_sum(x: &[Rat], a: Subset) -> Rat {
    x.iter()
        .enumerate()
        .filter(|(i, _)| a & (1 << i) != 0)
        .map(|(_, v)| v)
        .sum()
}

fn check_d(d: usize) -> Result<()> {
    if (1..=MAX_D).contains(&d) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange { d, min: 1, max: MAX_D })
    }
}

pub(crate) fn check_permutation(d: usize, perm: &[usize]) -> Result<()> {
    let seen: BTreeSet<usize> = perm.iter().copied().collect();
    if perm.len() != d || seen.len() != d || seen.iter().any(|&i| i >= d) {
        return Err(Error::InvalidPermutation(d));
    }
    Ok(())
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..d).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..d).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..d).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// JSON form: `{ "d": 3, "values": ["0", "3", ...] }`, indexed by bitmask.
#[derive(Serialize, Deserialize)]
struct SetFnJson {
    d: usize,
    #[serde(with = "crate::exact::serde_rat_vec")]
    values: Vec<Rat>,
}

impl Serialize for SetFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetFnJson {
            d: self.d,
            values: self.values.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SetFnJson::deserialize(d)?;
        SetFn::new(j.d, j.values).map_err(serde::de::Error::custom)
    }
}
