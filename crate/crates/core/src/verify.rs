//! Seeded random instances and the all-in-one consistency run.
//!
//! Every generator draws from a caller-supplied RNG, so a fixed seed fixes
//! the whole instance stream and the resulting report.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ehrhart::{em_reciprocity_check, normal_fan_of, pio_reciprocity_check, HPolytope};
use crate::error::{Error, Result};
use crate::exact::{format_vec, rat, rat_vec, ratio, Rat, RatVec};
use crate::hypergraph::{Hypergraph, HypergraphJson};
use crate::permutahedron::{count_to_rat, vertices, GPerm};
use crate::report::Report;
use crate::setfn::{permutations, subset_sum, SetFn, Subset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hypergraph on `2..=max_d` nodes with up to `max_edges` nonempty edges.
pub fn random_hypergraph(rng: &mut impl Rng, max_d: usize, max_edges: usize) -> Hypergraph {
    let d = rng.gen_range(2..=max_d);
    let n = rng.gen_range(0..=max_edges);
    let edges: Vec<Subset> = (0..n).map(|_| rng.gen_range(1..(1u32 << d)) as Subset).collect();
    Hypergraph::from_masks(d, edges).expect("valid random hypergraph")
}

/// `Σ w_e · [T meets e]` with weights in `0..=3` over a random edge list,
/// on `2..=max_d` nodes.
pub fn random_hypergraphic_setfn(rng: &mut impl Rng, max_d: usize) -> SetFn {
    let d = rng.gen_range(2..=max_d);
    let n = rng.gen_range(1..=d + 2);
    let mut z = SetFn::zero(d).expect("d in range");
    for _ in 0..n {
        let edge = rng.gen_range(1..(1u32 << d)) as Subset;
        let w = rng.gen_range(0..=3i64);
        let e = SetFn::edge_indicator(d, edge).expect("d in range");
        z = z.sum(&e.scale(&rat(w))).expect("same dimension");
    }
    z
}

/// A random rational polytope with its dimension and a period that the
/// Ehrhart quasipolynomial is known to divide.
#[derive(Clone, Debug, Serialize)]
pub struct RandomPolytope {
    pub kind: &'static str,
    pub polytope: HPolytope,
    pub degree: usize,
    pub period: u32,
}

/// Full-dimensional box with all bounds in `(1/q)Z ∩ [-1, 2]`, `q <= max_den`.
pub fn random_box(rng: &mut impl Rng, max_d: usize, max_den: i64) -> RandomPolytope {
    let d = rng.gen_range(1..=max_d);
    let q = rng.gen_range(1..=max_den);
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for _ in 0..d {
        let a = rng.gen_range(-q..2 * q);
        let b = rng.gen_range(a + 1..=2 * q);
        lo.push(ratio(a, q));
        hi.push(ratio(b, q));
    }
    RandomPolytope {
        kind: "box",
        polytope: HPolytope::rational_box(&lo, &hi).expect("valid box"),
        degree: d,
        period: q as u32,
    }
}

/// Simplex `x >= 0, Σx <= a/q` with `0 < a/q <= 2`, `q <= max_den`.
pub fn random_simplex(rng: &mut impl Rng, max_d: usize, max_den: i64) -> RandomPolytope {
    let d = rng.gen_range(1..=max_d);
    let q = rng.gen_range(1..=max_den);
    let a = rng.gen_range(1..=2 * q);
    RandomPolytope {
        kind: "simplex",
        polytope: HPolytope::simplex(d, &ratio(a, q)).expect("valid simplex"),
        degree: d,
        period: q as u32,
    }
}

/// `x(A) <= z(A)` for every `A`, with equality on the ground set.
pub fn in_base_polytope(z: &SetFn, x: &[Rat]) -> bool {
    let ground = z.ground();
    (0..=ground).all(|a| {
        let s = subset_sum(x, a);
        if a == ground {
            &s == z.get(a)
        } else {
            &s <= z.get(a)
        }
    })
}

fn values(z: &SetFn) -> String {
    format!("[{}]", format_vec(z.values()).join(", "))
}

fn sign(n: usize) -> Rat {
    if n.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Round trip, greedy membership and all-`k` reciprocity for one set function.
pub fn check_setfn(z: &SetFn, m_max: i64, rng: &mut impl Rng) -> Result<Report> {
    let mut report = Report::new();
    let vs = vertices(z)?;
    report.check("round trip", values(&SetFn::from_vertices(&vs)?), values(z));
    let mut perms = permutations(z.d());
    perms.shuffle(rng);
    for p in perms.iter().take(3) {
        let x = z.greedy_vertex(p)?;
        report.check(format!("greedy vertex of {p:?} in P(z)"), in_base_polytope(z, &x), true);
    }
    let gp = GPerm::new(z.clone())?;
    for k in 0..z.d() {
        report.extend(gp.verify_reciprocity(k, m_max)?);
    }
    Ok(report)
}

/// Vertex description, coloring dictionary and both hypergraph reciprocities.
pub fn check_hypergraph(h: &Hypergraph) -> Result<Report> {
    let mut report = Report::new();
    let z = h.setfn();
    let by_headings: BTreeSet<RatVec> = h.vertices_via_headings()?.iter().map(|v| rat_vec(v)).collect();
    let by_greedy: BTreeSet<RatVec> = vertices(&z)?.into_iter().collect();
    report.check("heading vertices = greedy vertices", by_headings == by_greedy, true);

    let gp = GPerm::new(z)?;
    let chi = h.chromatic_polynomial()?;
    for m in 1..=3 {
        report.check(
            format!("chromatic count({m}) = chi_d,0({m})"),
            h.chromatic_count(m as u32)?,
            gp.chi_dk(0, m)?,
        );
    }
    let s = sign(h.d());
    for m in 1..=2 {
        report.check(
            format!("(-1)^d chi(-{m}) = compatible pairs({m})"),
            &s * chi.eval_int(-m),
            count_to_rat(h.compatible_pairs_count(m as u32)?),
        );
    }
    report.check(
        "(-1)^d chi(-1) = acyclic headings",
        &s * chi.eval_int(-1),
        count_to_rat(h.acyclic_headings()?.len() as u64),
    );
    Ok(report)
}

/// Pruned reciprocity on the unit cube for the normal fan of `P(h)`.
pub fn check_hypergraphic_fan(h: &Hypergraph, t_max: i64) -> Result<Report> {
    let gp = GPerm::new(h.setfn())?;
    let fan = normal_fan_of(&gp);
    let cube = HPolytope::unit_cube(h.d())?;
    pio_reciprocity_check(&cube, &fan, h.d(), 1, t_max)
}

#[derive(Serialize)]
struct TrialInstances {
    setfn: SetFn,
    hypergraph: HypergraphJson,
    polytope: RandomPolytope,
    fan_hypergraph: HypergraphJson,
}

/// Runs `trials` rounds of every library check on instances drawn from `seed`.
pub fn verify_all(seed: u64, trials: usize) -> Result<Report> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut rng = rng(seed);
    let mut report = Report::new();
    let mut instances = Vec::with_capacity(trials);
    for i in 0..trials {
        let z = random_hypergraphic_setfn(&mut rng, 5);
        let h = random_hypergraph(&mut rng, 5, 5);
        let poly = if i % 2 == 0 {
            random_box(&mut rng, 3, 3)
        } else {
            random_simplex(&mut rng, 3, 3)
        };
        let fan_h = random_hypergraph(&mut rng, 3, 4);

        report.extend_prefixed(&format!("trial {i} setfn: "), check_setfn(&z, 3, &mut rng)?);
        report.extend_prefixed(&format!("trial {i} hypergraph: "), check_hypergraph(&h)?);
        report.extend_prefixed(
            &format!("trial {i} {}: ", poly.kind),
            em_reciprocity_check(&poly.polytope, poly.degree, poly.period, 4)?,
        );
        report.extend_prefixed(&format!("trial {i} fan: "), check_hypergraphic_fan(&fan_h, 4)?);

        instances.push(TrialInstances {
            setfn: z,
            hypergraph: HypergraphJson::from(&h),
            polytope: poly,
            fan_hypergraph: HypergraphJson::from(&fan_h),
        });
    }
    report.set_result("seed", seed);
    report.set_result("trials", trials);
    report.set_result("instances", &instances);
    Ok(report)
}
