//! Lattice-point counting in dilated rational polytopes and in pruned
//! inside-out polytopes, plus the reciprocity checkers built on it.
//!
//! An [`HPolytope`] is a list of rows `a·x (<= | < | =) b` together with an
//! integer bounding box that the caller vouches for. Dilation by `t` scales
//! every right-hand side and the box. A [`FullDimFan`] is a list of closed
//! full-dimensional cones `{y : a·y <= 0}`; the multiplicity of a point is
//! the number of cones containing it, and a point is interior to some cone
//! exactly when its multiplicity is one.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{common_denominator, rat, scale_to_i64, Rat, RatVec};
use crate::par;
use crate::permutahedron::GPerm;
use crate::poly::QuasiPolynomial;
use crate::report::Report;

/// Upper bound on the number of box points visited by one count.
pub const LATTICE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    #[serde(with = "crate::exact::serde_rat_vec")]
    pub a: RatVec,
    pub rel: Rel,
    #[serde(with = "crate::exact::serde_rat")]
    pub b: Rat,
}

impl Row {
    pub fn new(a: RatVec, rel: Rel, b: Rat) -> Self {
        Row { a, rel, b }
    }

    fn to_int(&self) -> Result<IntRow> {
        let l = common_denominator(self.a.iter().chain(std::iter::once(&self.b)));
        let a = scale_to_i64(&self.a, &l).ok_or(Error::Overflow)?;
        let b = scale_to_i64(std::slice::from_ref(&self.b), &l).ok_or(Error::Overflow)?[0];
        Ok(IntRow { a, rel: self.rel, b })
    }
}

#[derive(Clone, Debug)]
struct IntRow {
    a: Vec<i64>,
    rel: Rel,
    b: i64,
}

impl IntRow {
    fn holds(&self, x: &[i64], t: i64) -> bool {
        let lhs: i128 = self.a.iter().zip(x).map(|(&a, &x)| a as i128 * x as i128).sum();
        let rhs = self.b as i128 * t as i128;
        match self.rel {
            Rel::Le => lhs <= rhs,
            Rel::Lt => lhs < rhs,
            Rel::Eq => lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub d: usize,
    pub rows: Vec<Row>,
    pub bbox: Vec<(i64, i64)>,
}

impl HPolytope {
    pub fn new(d: usize, rows: Vec<Row>, bbox: Vec<(i64, i64)>) -> Result<Self> {
        let q = HPolytope { d, rows, bbox };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        if self.bbox.len() != self.d {
            return Err(Error::InvalidPolytope(format!(
                "bbox has {} intervals, expected {}",
                self.bbox.len(),
                self.d
            )));
        }
        if self.bbox.iter().any(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidPolytope("empty bbox interval".into()));
        }
        for r in &self.rows {
            if r.a.len() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    found: r.a.len(),
                });
            }
        }
        Ok(())
    }

    /// Axis-parallel box `lo <= x <= hi`.
    pub fn rational_box(lo: &[Rat], hi: &[Rat]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let d = lo.len();
        let mut rows = Vec::with_capacity(2 * d);
        for i in 0..d {
            rows.push(Row::new(unit(d, i, -1), Rel::Le, -lo[i].clone()));
            rows.push(Row::new(unit(d, i, 1), Rel::Le, hi[i].clone()));
        }
        let bbox = lo.iter().zip(hi).map(|(l, h)| (floor(l), ceil(h))).collect();
        Self::new(d, rows, bbox)
    }

    /// Closed unit cube `[0,1]^d`.
    pub fn unit_cube(d: usize) -> Result<Self> {
        Self::rational_box(&vec![Rat::zero(); d], &vec![Rat::one(); d])
    }

    /// Simplex `x >= 0, Σ x <= s` for `s >= 0`.
    pub fn simplex(d: usize, s: &Rat) -> Result<Self> {
        let mut rows: Vec<Row> = (0..d).map(|i| Row::new(unit(d, i, -1), Rel::Le, Rat::zero())).collect();
        rows.push(Row::new(vec![Rat::one(); d], Rel::Le, s.clone()));
        Self::new(d, rows, vec![(0, ceil(s)); d])
    }

    /// The origin, cut out by equations.
    pub fn origin(d: usize) -> Result<Self> {
        let rows = (0..d).map(|i| Row::new(unit(d, i, 1), Rel::Eq, Rat::zero())).collect();
        Self::new(d, rows, vec![(0, 0); d])
    }

    /// Relative interior of an irredundant closed description: inequality
    /// rows become strict, equations stay.
    pub fn interior(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| Row {
                rel: if r.rel == Rel::Le { Rel::Lt } else { r.rel },
                ..r.clone()
            })
            .collect();
        HPolytope { rows, ..self.clone() }
    }

    /// `self ∩ cone`, or `self ∩ interior(cone)` when `open`.
    pub fn intersect_cone(&self, cone: &Cone, open: bool) -> Result<Self> {
        if cone.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: cone.d,
            });
        }
        let rel = if open { Rel::Lt } else { Rel::Le };
        let mut rows = self.rows.clone();
        rows.extend(cone.rows.iter().map(|a| Row::new(a.clone(), rel, Rat::zero())));
        Ok(HPolytope { rows, ..self.clone() })
    }

    fn int_rows(&self) -> Result<Vec<IntRow>> {
        self.rows.iter().map(Row::to_int).collect()
    }

    /// Folds `f` over the lattice points of `tQ`, sharded by first
    /// coordinate; shard results are combined in order.
    fn sum_over_points(
        &self,
        t: i64,
        f: impl Fn(&[i64]) -> Result<u64> + Sync + Send,
    ) -> Result<u64> {
        self.validate()?;
        if t < 1 {
            return Err(Error::InvalidArgument(format!("dilation must be positive, got {t}")));
        }
        let rows = self.int_rows()?;
        let lo: Vec<i64> = self.bbox.iter().map(|b| b.0 * t).collect();
        let hi: Vec<i64> = self.bbox.iter().map(|b| b.1 * t).collect();
        let volume: u128 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as u128).product();
        if volume > LATTICE_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                needed: volume,
                budget: LATTICE_BUDGET,
            });
        }
        let shards = par::map_shards(lo[0]..=hi[0], |first| {
            let mut total = 0u64;
            let mut err = None;
            par::for_each_in_box(&lo, &hi, first, |x| {
                if err.is_some() || !rows.iter().all(|r| r.holds(x, t)) {
                    return;
                }
                match f(x) {
                    Ok(n) => total += n,
                    Err(e) => err = Some(e),
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(total),
            }
        });
        shards.into_iter().sum()
    }

    /// `#(Z^d ∩ tQ)`.
    pub fn count_lattice(&self, t: i64) -> Result<u64> {
        self.sum_over_points(t, |_| Ok(1))
    }
}

fn unit(d: usize, i: usize, sign: i64) -> RatVec {
    (0..d).map(|j| if j == i { rat(sign) } else { Rat::zero() }).collect()
}

fn floor(x: &Rat) -> i64 {
    num::ToPrimitive::to_i64(&x.floor().to_integer()).expect("bbox bound fits i64")
}

fn ceil(x: &Rat) -> i64 {
    num::ToPrimitive::to_i64(&x.ceil().to_integer()).expect("bbox bound fits i64")
}

/// Closed cone `{y : a·y <= 0 for every row a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub d: usize,
    pub rows: Vec<RatVec>,
}

impl Cone {
    pub fn new(d: usize, rows: Vec<RatVec>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.len(),
            });
        }
        Ok(Cone { d, rows })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullDimFan {
    pub d: usize,
    pub cones: Vec<Cone>,
}

impl FullDimFan {
    pub fn new(d: usize, cones: Vec<Cone>) -> Result<Self> {
        if cones.is_empty() {
            return Err(Error::Empty("fan"));
        }
        if let Some(c) = cones.iter().find(|c| c.d != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: c.d,
            });
        }
        Ok(FullDimFan { d, cones })
    }

    /// The whole space as a single cone.
    pub fn trivial(d: usize) -> Self {
        FullDimFan {
            d,
            cones: vec![Cone { d, rows: vec![] }],
        }
    }

    fn int_cones(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        self.cones
            .iter()
            .map(|c| {
                c.rows
                    .iter()
                    .map(|a| crate::exact::to_scaled_i64(a).ok_or(Error::Overflow))
                    .collect()
            })
            .collect()
    }

    /// Number of closed cones containing `y`.
    pub fn multiplicity(&self, y: &[i64]) -> Result<usize> {
        Ok(multiplicity(&self.int_cones()?, y))
    }
}

fn multiplicity(cones: &[Vec<Vec<i64>>], y: &[i64]) -> usize {
    cones
        .iter()
        .filter(|rows| {
            rows.iter()
                .all(|a| a.iter().zip(y).map(|(&a, &y)| a as i128 * y as i128).sum::<i128>() <= 0)
        })
        .count()
}

/// Normal fan of `P`: the cone of vertex `v` is `{y : (u - v)·y <= 0 for all u}`.
pub fn normal_fan_of(p: &GPerm) -> FullDimFan {
    let vs = p.vertices();
    let d = p.d();
    let cones = vs
        .iter()
        .enumerate()
        .map(|(i, v)| Cone {
            d,
            rows: vs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, u)| u.iter().zip(v).map(|(a, b)| a - b).collect())
                .collect(),
        })
        .collect();
    FullDimFan { d, cones }
}

fn check_fan(q: &HPolytope, fan: &FullDimFan) -> Result<Vec<Vec<Vec<i64>>>> {
    if q.d != fan.d {
        return Err(Error::DimensionMismatch {
            expected: q.d,
            found: fan.d,
        });
    }
    fan.int_cones()
}

/// Lattice points of `tQ` interior to some cone of `fan` (multiplicity one).
pub fn inner_pruned_count(q: &HPolytope, fan: &FullDimFan, t: i64) -> Result<u64> {
    let cones = check_fan(q, fan)?;
    q.sum_over_points(t, |y| match multiplicity(&cones, y) {
        0 => Err(Error::FanNotComplete(y.to_vec())),
        1 => Ok(1),
        _ => Ok(0),
    })
}

/// Lattice points of `tQ` weighted by the number of closed cones containing them.
pub fn cumulative_pruned_count(q: &HPolytope, fan: &FullDimFan, t: i64) -> Result<u64> {
    let cones = check_fan(q, fan)?;
    q.sum_over_points(t, |y| match multiplicity(&cones, y) {
        0 => Err(Error::FanNotComplete(y.to_vec())),
        n => Ok(n as u64),
    })
}

pub fn ehrhart_quasipoly(q: &HPolytope, degree: usize, period: u32) -> Result<QuasiPolynomial> {
    QuasiPolynomial::interpolate(degree, period, |t| q.count_lattice(t))
}

fn sign(degree: usize) -> Rat {
    if degree.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Checks `(-1)^degree Ehr_Q(-t) = #(Z^d ∩ t·relint Q)` for `t = 1..=t_max`.
/// `Q` must be given by an irredundant description; that is not verified.
pub fn em_reciprocity_check(q: &HPolytope, degree: usize, period: u32, t_max: i64) -> Result<Report> {
    let ehr = ehrhart_quasipoly(q, degree, period)?;
    let open = q.interior();
    let s = sign(degree);
    let mut report = Report::new();
    for t in 1..=t_max {
        let lhs = &s * ehr.eval(-t);
        let rhs = rat(open.count_lattice(t)? as i64);
        report.check(format!("(-1)^{degree} Ehr_Q(-{t}) = Ehr_Qo({t})"), lhs, rhs);
    }
    report.set_result("ehrhart", &ehr);
    Ok(report)
}

/// Interpolates the inner pruned function of `Q°` and the cumulative one of
/// `Q` with the declared degree and period, then checks
/// `(-1)^degree O(-t) = Ex(t)` for `t = 1..=t_max`.
pub fn pio_reciprocity_check(
    q: &HPolytope,
    fan: &FullDimFan,
    degree: usize,
    period: u32,
    t_max: i64,
) -> Result<Report> {
    let open = q.interior();
    let inner = QuasiPolynomial::interpolate(degree, period, |t| inner_pruned_count(&open, fan, t))?;
    let cumulative = QuasiPolynomial::interpolate(degree, period, |t| cumulative_pruned_count(q, fan, t))?;
    let s = sign(degree);
    let mut report = Report::new();
    for t in 1..=t_max {
        let lhs = &s * inner.eval(-t);
        let rhs = rat(cumulative_pruned_count(q, fan, t)? as i64);
        report.check(format!("(-1)^{degree} O(-{t}) = Ex({t})"), lhs, rhs);
    }
    report.set_result("inner", &inner);
    report.set_result("cumulative", &cumulative);
    Ok(report)
}

/// `{ "cones": [ { "d": 2, "rows": [ {"a": [...], "rel": "<=", "b": "0"} ] } ] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanJson {
    pub cones: Vec<ConeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeJson {
    pub d: usize,
    pub rows: Vec<Row>,
}

impl TryFrom<FanJson> for FullDimFan {
    type Error = Error;

    fn try_from(j: FanJson) -> Result<Self> {
        let d = j.cones.first().map(|c| c.d).ok_or(Error::Empty("fan"))?;
        let cones = j
            .cones
            .into_iter()
            .map(|c| {
                if c.rows.iter().any(|r| r.rel != Rel::Le || !r.b.is_zero()) {
                    return Err(Error::InvalidPolytope(
                        "fan cones must use rows of the form a·y <= 0".into(),
                    ));
                }
                Cone::new(c.d, c.rows.into_iter().map(|r| r.a).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        FullDimFan::new(d, cones)
    }
}

impl From<&FullDimFan> for FanJson {
    fn from(f: &FullDimFan) -> Self {
        FanJson {
            cones: f
                .cones
                .iter()
                .map(|c| ConeJson {
                    d: c.d,
                    rows: c.rows.iter().map(|a| Row::new(a.clone(), Rel::Le, Rat::zero())).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, rat_vec};
    use crate::poly::Polynomial;
    use crate::setfn::SetFn;

    fn square() -> HPolytope {
        HPolytope::unit_cube(2).unwrap()
    }

    fn diagonal_fan() -> FullDimFan {
        FullDimFan::new(
            2,
            vec![
                Cone::new(2, vec![rat_vec(&[1, -1])]).unwrap(),
                Cone::new(2, vec![rat_vec(&[-1, 1])]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn half_segment() -> HPolytope {
        HPolytope::rational_box(&[rat(0)], &[ratio(1, 2)]).unwrap()
    }

    #[test]
    fn count_lattice_examples() {
        assert_eq!(square().count_lattice(2).unwrap(), 9);
        assert_eq!(square().interior().count_lattice(3).unwrap(), 4);
        assert_eq!(half_segment().count_lattice(1).unwrap(), 1);
        assert_eq!(half_segment().count_lattice(2).unwrap(), 2);
        assert!(square().count_lattice(0).is_err());
    }

    #[test]
    fn ehrhart_examples() {
        let q = ehrhart_quasipoly(&square(), 2, 1).unwrap();
        assert_eq!(q.as_polynomial().unwrap(), &Polynomial::from_i64(&[1, 2, 1]));
        let q = ehrhart_quasipoly(&half_segment(), 1, 2).unwrap();
        assert_eq!(q.constituents()[0], Polynomial::new(vec![rat(1), ratio(1, 2)]));
        assert_eq!(q.constituents()[1], Polynomial::new(vec![ratio(1, 2), ratio(1, 2)]));
        let q = ehrhart_quasipoly(&HPolytope::origin(2).unwrap(), 0, 1).unwrap();
        assert_eq!(q.as_polynomial().unwrap(), &Polynomial::from_i64(&[1]));
        // wrong period for the half segment
        assert!(matches!(
            ehrhart_quasipoly(&half_segment(), 1, 1),
            Err(Error::InterpolationMismatch { .. })
        ));
    }

    #[test]
    fn em_examples() {
        let r = em_reciprocity_check(&square(), 2, 1, 3).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.checks[2].lhs, "4");
        let tri = HPolytope::simplex(2, &rat(1)).unwrap();
        let r = em_reciprocity_check(&tri, 2, 1, 3).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.checks[2].rhs, "1");
        let r = em_reciprocity_check(&HPolytope::origin(3).unwrap(), 0, 1, 4).unwrap();
        assert!(r.all_pass());
        assert!(r.checks.iter().all(|c| c.lhs == "1"));
    }

    #[test]
    fn normal_fan_examples() {
        let f = normal_fan_of(&GPerm::standard(2).unwrap());
        assert_eq!(f.cones.len(), 2);
        // vertices (1,2), (2,1): cone of (1,2) is y1 <= y2
        assert_eq!(f.cones[0].rows, vec![rat_vec(&[1, -1])]);
        assert_eq!(f.multiplicity(&[3, 3]).unwrap(), 2);
        assert_eq!(f.multiplicity(&[1, 3]).unwrap(), 1);

        let pt = normal_fan_of(&GPerm::new(SetFn::zero(2).unwrap()).unwrap());
        assert_eq!(pt.cones.len(), 1);
        assert!(pt.cones[0].rows.is_empty());

        let f3 = normal_fan_of(&GPerm::standard(3).unwrap());
        assert_eq!(f3.cones.len(), 6);
        // generic points lie in exactly one cone
        for y in [[1, 2, 3], [3, 1, 2], [5, -1, 0]] {
            assert_eq!(f3.multiplicity(&y).unwrap(), 1);
        }
        assert_eq!(f3.multiplicity(&[1, 1, 0]).unwrap(), 2);
        assert_eq!(f3.multiplicity(&[0, 0, 0]).unwrap(), 6);
    }

    #[test]
    fn inner_pruned_examples() {
        let open = square().interior();
        assert_eq!(inner_pruned_count(&open, &diagonal_fan(), 2).unwrap(), 0);
        assert_eq!(inner_pruned_count(&open, &diagonal_fan(), 3).unwrap(), 2);
        assert_eq!(inner_pruned_count(&square(), &diagonal_fan(), 2).unwrap(), 6);
    }

    #[test]
    fn cumulative_pruned_examples() {
        assert_eq!(cumulative_pruned_count(&square(), &diagonal_fan(), 1).unwrap(), 6);
        assert_eq!(cumulative_pruned_count(&square(), &diagonal_fan(), 2).unwrap(), 12);
        assert_eq!(cumulative_pruned_count(&square(), &FullDimFan::trivial(2), 1).unwrap(), 4);
    }

    #[test]
    fn incomplete_fan_is_an_error() {
        let half = FullDimFan::new(2, vec![Cone::new(2, vec![rat_vec(&[1, -1])]).unwrap()]).unwrap();
        assert!(matches!(
            inner_pruned_count(&square(), &half, 1),
            Err(Error::FanNotComplete(_))
        ));
    }

    #[test]
    fn pio_examples() {
        let r = pio_reciprocity_check(&square(), &diagonal_fan(), 2, 1, 5).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.results["inner"]["constituents"][0], serde_json::json!(["2", "-3", "1"]));
        assert_eq!(r.results["cumulative"]["constituents"][0], serde_json::json!(["2", "3", "1"]));

        let cube = HPolytope::unit_cube(3).unwrap();
        let fan = normal_fan_of(&GPerm::standard(3).unwrap());
        assert!(pio_reciprocity_check(&cube, &fan, 3, 1, 4).unwrap().all_pass());

        let r = pio_reciprocity_check(&square(), &FullDimFan::trivial(2), 2, 1, 3).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.results["inner"]["constituents"][0], serde_json::json!(["1", "-2", "1"]));
    }

    #[test]
    fn json_formats() {
        let q: HPolytope = serde_json::from_str(
            r#"{"d":2,"rows":[{"a":["1","0"],"rel":"<=","b":"1"},{"a":["-1","0"],"rel":"<=","b":"0"},
                {"a":["0","1"],"rel":"<","b":"1"},{"a":["0","-1"],"rel":"<=","b":"0"}],"bbox":[[0,1],[0,1]]}"#,
        )
        .unwrap();
        assert_eq!(q.count_lattice(1).unwrap(), 2);
        let fan: FanJson = serde_json::from_str(
            r#"{"cones":[{"d":2,"rows":[{"a":["1","-1"],"rel":"<=","b":"0"}]},
                         {"d":2,"rows":[{"a":["-1","1"],"rel":"<=","b":"0"}]}]}"#,
        )
        .unwrap();
        assert_eq!(FullDimFan::try_from(fan).unwrap(), diagonal_fan());
        let bad: FanJson = serde_json::from_str(
            r#"{"cones":[{"d":2,"rows":[{"a":["1","-1"],"rel":"<=","b":"1"}]}]}"#,
        )
        .unwrap();
        assert!(FullDimFan::try_from(bad).is_err());
        let bad_box = r#"{"d":2,"rows":[],"bbox":[[0,1]]}"#;
        let q: HPolytope = serde_json::from_str(bad_box).unwrap();
        assert!(q.validate().is_err());
    }
}
