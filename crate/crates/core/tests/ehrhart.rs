use gperm::ehrhart::{
    cumulative_pruned_count, em_reciprocity_check, inner_pruned_count, normal_fan_of,
    pio_reciprocity_check, FullDimFan, HPolytope,
};
use gperm::verify::{random_box, random_hypergraph, random_hypergraphic_setfn, random_simplex, rng};
use gperm::GPerm;
use proptest::prelude::*;
use rand::Rng;

fn hypergraphic_fan(seed: u64, max_d: usize) -> (GPerm, FullDimFan) {
    let p = GPerm::new(random_hypergraph(&mut rng(seed), max_d, 4).setfn()).unwrap();
    let fan = normal_fan_of(&p);
    (p, fan)
}

#[test]
fn unit_square_counts() {
    let q = HPolytope::unit_cube(2).unwrap();
    let open = q.interior();
    for t in 1..=6u64 {
        assert_eq!(q.count_lattice(t as i64).unwrap(), (t + 1).pow(2));
        assert_eq!(open.count_lattice(t as i64).unwrap(), (t - 1).pow(2));
    }
}

#[test]
fn cube_with_braid_fan_has_polynomial_pruned_functions() {
    for d in 2..=4 {
        let q = HPolytope::unit_cube(d).unwrap();
        let fan = normal_fan_of(&GPerm::standard(d).unwrap());
        let r = pio_reciprocity_check(&q, &fan, d, 1, 4).unwrap();
        assert!(r.all_pass(), "d={d}");
        assert_eq!(r.results["inner"]["period"], 1);
        assert_eq!(r.results["cumulative"]["period"], 1);
    }
}

#[test]
fn single_cone_fan_is_plain_ehrhart() {
    let q = HPolytope::simplex(2, &gperm::exact::ratio(3, 2)).unwrap();
    let fan = FullDimFan::trivial(2);
    for t in 1..=5 {
        assert_eq!(cumulative_pruned_count(&q, &fan, t).unwrap(), q.count_lattice(t).unwrap());
        let open = q.interior();
        assert_eq!(inner_pruned_count(&open, &fan, t).unwrap(), open.count_lattice(t).unwrap());
    }
    assert!(pio_reciprocity_check(&q, &fan, 2, 2, 5).unwrap().all_pass());
}

#[test]
fn face_counts_are_pruned_cube_counts() {
    let mut r = rng(21);
    for _ in 0..10 {
        let z = random_hypergraphic_setfn(&mut r, 3);
        let p = GPerm::new(z).unwrap();
        let fan = normal_fan_of(&p);
        let open_cube = HPolytope::unit_cube(p.d()).unwrap().interior();
        for m in 1..=3 {
            assert_eq!(p.chi_dk(0, m).unwrap(), inner_pruned_count(&open_cube, &fan, m + 1).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn open_regions_decompose_the_inner_count(seed in any::<u64>(), t in 1i64..5) {
        let (_, fan) = hypergraphic_fan(seed, 3);
        let d = fan.d;
        let q = HPolytope::unit_cube(d).unwrap();
        let open = q.interior();
        let by_regions: u64 = fan
            .cones
            .iter()
            .map(|c| open.intersect_cone(c, true).unwrap().count_lattice(t).unwrap())
            .sum();
        prop_assert_eq!(inner_pruned_count(&open, &fan, t).unwrap(), by_regions);
    }

    #[test]
    fn closed_regions_decompose_the_cumulative_count(seed in any::<u64>(), t in 1i64..5) {
        let (_, fan) = hypergraphic_fan(seed, 3);
        let q = random_box(&mut rng(seed), fan.d, 3).polytope;
        let q = if q.d == fan.d { q } else { HPolytope::unit_cube(fan.d).unwrap() };
        let by_regions: u64 = fan
            .cones
            .iter()
            .map(|c| q.intersect_cone(c, false).unwrap().count_lattice(t).unwrap())
            .sum();
        prop_assert_eq!(cumulative_pruned_count(&q, &fan, t).unwrap(), by_regions);
    }

    #[test]
    fn multiplicity_is_invariant_along_the_all_ones_line(seed in any::<u64>(), y in prop::collection::vec(-4i64..5, 3), lambda in -6i64..7) {
        let (p, fan) = hypergraphic_fan(seed, 3);
        let y = &y[..p.d()];
        let shifted: Vec<i64> = y.iter().map(|v| v + lambda).collect();
        prop_assert_eq!(fan.multiplicity(y).unwrap(), fan.multiplicity(&shifted).unwrap());
    }

    #[test]
    fn random_polytopes_satisfy_ehrhart_macdonald(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = if r.gen_bool(0.5) { random_box(&mut r, 3, 3) } else { random_simplex(&mut r, 3, 3) };
        let rep = em_reciprocity_check(&inst.polytope, inst.degree, inst.period, 5).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn hypergraphic_fans_satisfy_pruned_reciprocity(seed in any::<u64>()) {
        let (_, fan) = hypergraphic_fan(seed, 3);
        let q = HPolytope::unit_cube(fan.d).unwrap();
        let rep = pio_reciprocity_check(&q, &fan, fan.d, 1, 4).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
