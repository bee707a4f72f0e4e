//! Generalized permutahedra as base polytopes of submodular functions.
//!
//! Vertices come from the greedy rule over all permutations. Faces are
//! enumerated through braid cones: every ordered set composition of the
//! ground set picks out one face as the maximizer of a direction whose
//! level sets are the blocks. Faces are identified by their sorted vertex
//! index sets.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{affine_rank, common_denominator, format_vec, Rat, RatVec};
use crate::par;
use crate::poly::Polynomial;
use crate::report::Report;
use crate::setfn::{permutations, SetFn, Subset};

/// Largest ground set for face-lattice and direction enumeration.
pub const MAX_LATTICE_D: usize = 6;
/// Default largest number of levels per coordinate; larger values log a warning.
pub const DEFAULT_MAX_M: i64 = 8;
/// Upper bound on the number of enumerated directions `m^d`.
pub const DIRECTION_BUDGET: u64 = 10_000_000;

/// Ordered set composition: disjoint nonempty blocks covering `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    d: usize,
    blocks: Vec<Subset>,
}

impl Composition {
    pub fn new(d: usize, blocks: Vec<Subset>) -> Result<Self> {
        let mut union: Subset = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidComposition("empty block".into()));
            }
            if union & b != 0 {
                return Err(Error::InvalidComposition("overlapping blocks".into()));
            }
            union |= b;
        }
        if d == 0 || d > 16 || union as u32 != (1u32 << d) - 1 {
            return Err(Error::InvalidComposition(format!(
                "blocks do not cover the ground set of size {d}"
            )));
        }
        Ok(Composition { d, blocks })
    }

    /// Level sets of `y`, ordered by strictly decreasing value.
    pub fn of_direction(y: &[Rat]) -> Result<Self> {
        let levels: BTreeSet<&Rat> = y.iter().collect();
        let blocks = levels
            .into_iter()
            .rev()
            .map(|v| {
                y.iter()
                    .enumerate()
                    .filter(|(_, x)| *x == v)
                    .fold(0 as Subset, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Composition::new(y.len(), blocks)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block `l` (0-based) gets level `#blocks - l`.
    pub fn representative_direction(&self) -> Vec<i64> {
        let k = self.blocks.len() as i64;
        let mut y = vec![0; self.d];
        for (l, &b) in self.blocks.iter().enumerate() {
            for (i, yi) in y.iter_mut().enumerate() {
                if b & (1 << i) != 0 {
                    *yi = k - l as i64;
                }
            }
        }
        y
    }

    /// True if every block of `self` is a union of consecutive blocks of `finer`.
    pub fn coarsens(&self, finer: &Composition) -> bool {
        let mut it = finer.blocks.iter();
        for &b in &self.blocks {
            let mut acc: Subset = 0;
            while acc != b {
                match it.next() {
                    Some(&f) if f & !b == 0 => acc |= f,
                    _ => return false,
                }
            }
        }
        it.next().is_none()
    }

    fn rank_key(&self) -> u64 {
        let mut key = 0u64;
        for (l, &b) in self.blocks.iter().enumerate() {
            for i in 0..self.d {
                if b & (1 << i) != 0 {
                    key |= (l as u64) << (3 * i);
                }
            }
        }
        key
    }

    /// One-based rendering, e.g. `({1,2},{3})`.
    pub fn display_one_based(&self) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                let elems: Vec<String> = (0..self.d)
                    .filter(|i| b & (1 << i) != 0)
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect();
        format!("({})", blocks.join(","))
    }
}

/// All compositions of `0..d` (ordered Bell many).
pub fn compositions(d: usize) -> Vec<Composition> {
    fn rec(remaining: Subset, prefix: &mut Vec<Subset>, d: usize, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition {
                d,
                blocks: prefix.clone(),
            });
            return;
        }
        // nonempty submasks of `remaining`
        let mut s = remaining;
        while s != 0 {
            prefix.push(s);
            rec(remaining & !s, prefix, d, out);
            prefix.pop();
            s = (s - 1) & remaining;
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(((1u32 << d) - 1) as Subset, &mut Vec::new(), d, &mut out);
    }
    out.sort();
    out
}

/// Rank of each coordinate among the distinct values of `y` (0 = largest),
/// packed three bits per coordinate. Equal keys mean equal compositions.
fn direction_key(y: &[i64]) -> u64 {
    let mut key = 0u64;
    for (i, yi) in y.iter().enumerate() {
        let mut greater: BTreeSet<i64> = BTreeSet::new();
        for yj in y {
            if yj > yi {
                greater.insert(*yj);
            }
        }
        key |= (greater.len() as u64) << (3 * i);
    }
    key
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    #[serde(rename = "vertices")]
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug)]
struct FaceLattice {
    faces: Vec<Face>,
    by_vertices: HashMap<Vec<usize>, usize>,
    by_composition: HashMap<Composition, usize>,
    by_key: HashMap<u64, usize>,
    /// `k_faces[f][k]`: number of `k`-dimensional faces contained in face `f`.
    k_faces: Vec<Vec<u64>>,
}

/// A generalized permutahedron with its exact vertex set and (lazily)
/// its face lattice.
#[derive(Debug)]
pub struct GPerm {
    z: SetFn,
    vertices: Vec<RatVec>,
    /// Vertices times their common denominator, when every entry fits `i64`.
    scaled: Option<Vec<Vec<i64>>>,
    lattice: OnceLock<FaceLattice>,
}

impl GPerm {
    pub fn new(z: SetFn) -> Result<Self> {
        let vertices = vertices(&z)?;
        let denom = common_denominator(vertices.iter().flatten());
        let scaled: Option<Vec<Vec<i64>>> = vertices
            .iter()
            .map(|v| crate::exact::scale_to_i64(v, &denom))
            .collect();
        Ok(GPerm {
            z,
            vertices,
            scaled,
            lattice: OnceLock::new(),
        })
    }

    pub fn standard(d: usize) -> Result<Self> {
        Self::new(SetFn::standard_permutahedron(d)?)
    }

    pub fn d(&self) -> usize {
        self.z.d()
    }

    pub fn setfn(&self) -> &SetFn {
        &self.z
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        affine_rank(&self.vertices).expect("nonempty vertex set")
    }

    /// Indices of the vertices maximizing `y`, computed directly.
    pub fn maximal_vertices(&self, y: &[Rat]) -> Result<Vec<usize>> {
        if y.len() != self.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                found: y.len(),
            });
        }
        if let (Some(scaled), Some(yi)) = (&self.scaled, crate::exact::to_scaled_i64(y)) {
            return Ok(argmax_i64(scaled, &yi));
        }
        let vals: Vec<Rat> = self
            .vertices
            .iter()
            .map(|v| crate::exact::dot(v, y))
            .collect();
        let best = vals.iter().max().expect("nonempty");
        Ok((0..vals.len()).filter(|&i| &vals[i] == best).collect())
    }

    fn maximal_vertices_int(&self, y: &[i64]) -> Vec<usize> {
        match &self.scaled {
            Some(scaled) => argmax_i64(scaled, y),
            None => {
                let yr: RatVec = y.iter().map(|&v| crate::exact::rat(v)).collect();
                self.maximal_vertices(&yr).expect("matching length")
            }
        }
    }

    fn face_from_ids(&self, ids: Vec<usize>) -> Face {
        let pts: Vec<RatVec> = ids.iter().map(|&i| self.vertices[i].clone()).collect();
        let dim = affine_rank(&pts).expect("nonempty face");
        Face { vertex_ids: ids, dim }
    }

    fn lattice(&self) -> Result<&FaceLattice> {
        check_lattice_d(self.d())?;
        Ok(self.lattice.get_or_init(|| self.build_lattice()))
    }

    fn build_lattice(&self) -> FaceLattice {
        let mut faces: Vec<Face> = Vec::new();
        let mut by_vertices: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut by_composition = HashMap::new();
        let mut by_key = HashMap::new();
        for c in compositions(self.d()) {
            let ids = self.maximal_vertices_int(&c.representative_direction());
            let idx = match by_vertices.get(&ids) {
                Some(&i) => i,
                None => {
                    let face = self.face_from_ids(ids.clone());
                    faces.push(face);
                    by_vertices.insert(ids, faces.len() - 1);
                    faces.len() - 1
                }
            };
            by_key.insert(c.rank_key(), idx);
            by_composition.insert(c, idx);
        }
        let max_dim = faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let sets: Vec<BTreeSet<usize>> = faces
            .iter()
            .map(|f| f.vertex_ids.iter().copied().collect())
            .collect();
        let k_faces = sets
            .iter()
            .map(|outer| {
                let mut counts = vec![0u64; max_dim.max(self.d()) + 1];
                for (g, inner) in sets.iter().enumerate() {
                    if inner.is_subset(outer) {
                        counts[faces[g].dim] += 1;
                    }
                }
                counts
            })
            .collect();
        FaceLattice {
            faces,
            by_vertices,
            by_composition,
            by_key,
            k_faces,
        }
    }

    /// The `y`-maximal face `P_y`. Looked up through the composition of `y`
    /// when the face lattice is available, computed directly otherwise.
    pub fn face_of_direction(&self, y: &[Rat]) -> Result<Face> {
        let comp = Composition::of_direction(y)?;
        if comp.d() != self.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                found: comp.d(),
            });
        }
        if self.d() <= MAX_LATTICE_D {
            let lat = self.lattice()?;
            return Ok(lat.faces[lat.by_composition[&comp]].clone());
        }
        let ids = self.maximal_vertices(y)?;
        Ok(self.face_from_ids(ids))
    }

    pub fn face_of_composition(&self, c: &Composition) -> Result<&Face> {
        let lat = self.lattice()?;
        lat.by_composition
            .get(c)
            .map(|&i| &lat.faces[i])
            .ok_or_else(|| Error::InvalidComposition("wrong ground set size".into()))
    }

    /// Every nonempty face exactly once, the polytope itself included.
    pub fn face_lattice(&self) -> Result<&[Face]> {
        Ok(&self.lattice()?.faces)
    }

    /// Compositions mapped to each face, in face order.
    pub fn compositions_by_face(&self) -> Result<Vec<Vec<Composition>>> {
        let lat = self.lattice()?;
        let mut out = vec![Vec::new(); lat.faces.len()];
        let mut comps: Vec<(&Composition, &usize)> = lat.by_composition.iter().collect();
        comps.sort();
        for (c, &i) in comps {
            out[i].push(c.clone());
        }
        Ok(out)
    }

    fn face_index(&self, f: &Face) -> Result<usize> {
        let lat = self.lattice()?;
        lat.by_vertices
            .get(&f.vertex_ids)
            .copied()
            .filter(|&i| lat.faces[i].dim == f.dim)
            .ok_or(Error::NotAFace)
    }

    /// Number of `k`-faces of `P` contained in `f`; `f` counts as its own face.
    pub fn count_k_faces(&self, f: &Face, k: usize) -> Result<u64> {
        let i = self.face_index(f)?;
        Ok(self.lattice()?.k_faces[i].get(k).copied().unwrap_or(0))
    }

    /// Number of directions in `[m]^d` landing in each face.
    fn direction_histogram(&self, m: i64) -> Result<Vec<u64>> {
        let lat = self.lattice()?;
        check_direction_budget(self.d(), m)?;
        let d = self.d();
        let lo = vec![1i64; d];
        let hi = vec![m; d];
        let shards = par::map_shards(1..=m, |first| {
            let mut hist = vec![0u64; lat.faces.len()];
            par::for_each_in_box(&lo, &hi, first, |y| {
                hist[lat.by_key[&direction_key(y)]] += 1;
            });
            hist
        });
        let mut total = vec![0u64; lat.faces.len()];
        for h in shards {
            for (t, x) in total.iter_mut().zip(h) {
                *t += x;
            }
        }
        Ok(total)
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k >= self.d() {
            return Err(Error::KOutOfRange {
                k,
                max: self.d() - 1,
            });
        }
        Ok(())
    }

    /// `#{y in [m]^d : dim P_y = k}`.
    pub fn chi_dk(&self, k: usize, m: i64) -> Result<u64> {
        self.check_k(k)?;
        let lat = self.lattice()?;
        let hist = self.direction_histogram(m)?;
        Ok(hist
            .iter()
            .zip(&lat.faces)
            .filter(|(_, f)| f.dim == k)
            .map(|(n, _)| n)
            .sum())
    }

    /// Interpolant of `chi_dk` through `m = 1..=d-k+1`.
    pub fn chi_dk_polynomial(&self, k: usize) -> Result<Polynomial> {
        self.check_k(k)?;
        let n = (self.d() - k + 1) as i64;
        let nodes: Vec<i64> = (1..=n).collect();
        Polynomial::interpolate_ints(&nodes, |m| self.chi_dk(k, m))
    }

    /// `Σ_{y in [m]^d} #(k-faces of P_y)`.
    pub fn reciprocity_rhs(&self, k: usize, m: i64) -> Result<u64> {
        self.check_k(k)?;
        let lat = self.lattice()?;
        let hist = self.direction_histogram(m)?;
        Ok(hist
            .iter()
            .zip(&lat.k_faces)
            .map(|(n, kf)| n * kf.get(k).copied().unwrap_or(0))
            .sum())
    }

    /// Checks the interpolant against direct counts for `m = 1..=m_max` and
    /// two nodes past the interpolation range, and the reciprocity
    /// `(-1)^(d-k) p(-m) = Σ_y #(k-faces of P_y)` for `m = 1..=m_max`.
    pub fn verify_reciprocity(&self, k: usize, m_max: i64) -> Result<Report> {
        let p = self.chi_dk_polynomial(k)?;
        let mut report = reciprocity_report(
            &p,
            self.d(),
            k,
            m_max,
            |m| self.chi_dk(k, m),
            |m| self.reciprocity_rhs(k, m),
        )?;
        report.set_result("polynomial", p.to_strings());
        Ok(report)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let faces = self.face_lattice()?;
        let vertices: Vec<Vec<String>> = self.vertices.iter().map(|v| format_vec(v)).collect();
        Ok(serde_json::json!({
            "d": self.d(),
            "vertices": vertices,
            "faces": faces,
        }))
    }
}

/// Builds the reciprocity report for an interpolant `p` from the two
/// counting routes; exposed so checkers can be exercised on perturbed data.
pub fn reciprocity_report(
    p: &Polynomial,
    d: usize,
    k: usize,
    m_max: i64,
    mut chi: impl FnMut(i64) -> Result<u64>,
    mut rhs: impl FnMut(i64) -> Result<u64>,
) -> Result<Report> {
    if m_max < 1 {
        return Err(Error::InvalidArgument("m-max must be at least 1".into()));
    }
    let deg = (d - k) as i64;
    let mut nodes: BTreeSet<i64> = (1..=m_max).collect();
    nodes.insert(deg + 2);
    nodes.insert(deg + 3);
    let mut report = Report::new();
    for m in nodes {
        if m > DEFAULT_MAX_M && m > m_max {
            continue;
        }
        let count = Rat::from_integer(BigInt::from(chi(m)?));
        report.check(format!("chi_{d},{k}: p({m}) = count"), p.eval_int(m), count);
    }
    let sign = if deg % 2 == 0 { Rat::one() } else { -Rat::one() };
    for m in 1..=m_max {
        let lhs = &sign * p.eval_int(-m);
        let r = Rat::from_integer(BigInt::from(rhs(m)?));
        report.check(format!("chi_{d},{k}: (-1)^{deg} p(-{m}) = sum of {k}-faces"), lhs, r);
    }
    Ok(report)
}

fn argmax_i64(vertices: &[Vec<i64>], y: &[i64]) -> Vec<usize> {
    let vals: Vec<i128> = vertices
        .iter()
        .map(|v| v.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum())
        .collect();
    let best = *vals.iter().max().expect("nonempty");
    (0..vals.len()).filter(|&i| vals[i] == best).collect()
}

/// `{greedy_vertex(z, σ)}` over all permutations, deduplicated and sorted.
pub fn vertices(z: &SetFn) -> Result<Vec<RatVec>> {
    z.require_submodular()?;
    let set: BTreeSet<RatVec> = permutations(z.d())
        .iter()
        .map(|p| z.greedy_vertex_unchecked(p))
        .collect();
    Ok(set.into_iter().collect())
}

fn check_lattice_d(d: usize) -> Result<()> {
    if d > MAX_LATTICE_D {
        return Err(Error::DimensionOutOfRange {
            d,
            min: 1,
            max: MAX_LATTICE_D,
        });
    }
    Ok(())
}

fn check_direction_budget(d: usize, m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("m must be positive, got {m}")));
    }
    let needed = (m as u128).pow(d as u32);
    if needed > DIRECTION_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: DIRECTION_BUDGET,
        });
    }
    if m > DEFAULT_MAX_M {
        log::warn!("enumerating {m}^{d} directions, above the default level cap {DEFAULT_MAX_M}");
    }
    Ok(())
}

/// Exact ratio of two counts as a rational, for reporting.
pub fn count_to_rat(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
