use std::collections::BTreeSet;

use gperm::exact::{affine_rank, dot, rat, rat_vec, Rat};
use gperm::permutahedron::{compositions, vertices};
use gperm::setfn::permutations;
use gperm::verify::{random_hypergraphic_setfn, rng};
use gperm::{GPerm, SetFn};
use proptest::prelude::*;

fn corpus(max_d: usize, n: usize, seed: u64) -> Vec<GPerm> {
    let mut r = rng(seed);
    let mut out: Vec<GPerm> = (2..=max_d).map(|d| GPerm::standard(d).unwrap()).collect();
    out.extend((0..n).map(|_| GPerm::new(random_hypergraphic_setfn(&mut r, max_d)).unwrap()));
    out
}

#[test]
fn longest_composition_of_a_face_has_codimension_many_blocks() {
    for p in corpus(4, 15, 11) {
        let faces = p.face_lattice().unwrap();
        for (f, comps) in faces.iter().zip(p.compositions_by_face().unwrap()) {
            let longest = comps.iter().map(|c| c.len()).max().unwrap();
            assert_eq!(longest, p.d() - f.dim, "face {:?}", f.vertex_ids);
        }
    }
}

#[test]
fn larger_faces_have_coarser_compositions() {
    for p in corpus(4, 10, 12) {
        let faces = p.face_lattice().unwrap();
        let by_face = p.compositions_by_face().unwrap();
        for (i, f) in faces.iter().enumerate() {
            for (j, g) in faces.iter().enumerate() {
                let contained = f.vertex_ids.iter().all(|v| g.vertex_ids.contains(v));
                if i == j || !contained {
                    continue;
                }
                for cg in &by_face[j] {
                    assert!(
                        by_face[i].iter().any(|cf| cg.coarsens(cf)),
                        "{} has no refinement mapped to {:?}",
                        cg.display_one_based(),
                        f.vertex_ids
                    );
                }
            }
        }
    }
}

#[test]
fn constant_direction_selects_the_whole_polytope() {
    for p in corpus(5, 10, 13) {
        let y = vec![rat(7); p.d()];
        let f = p.face_of_direction(&y).unwrap();
        assert_eq!(f.vertex_ids, (0..p.vertices().len()).collect::<Vec<_>>());
        assert_eq!(f.dim, p.dim());
    }
}

#[test]
fn face_dimension_classes_partition_the_directions() {
    for p in corpus(4, 10, 14) {
        for m in 1..=3 {
            let total: u64 = (0..p.d()).map(|k| p.chi_dk(k, m).unwrap()).sum();
            assert_eq!(total, (m as u64).pow(p.d() as u32));
        }
    }
}

#[test]
fn standard_face_polynomials_have_full_degree() {
    for d in 2..=5 {
        let p = GPerm::standard(d).unwrap();
        for k in 0..d {
            assert_eq!(p.chi_dk_polynomial(k).unwrap().degree(), Some(d - k), "d={d} k={k}");
        }
    }
}

#[test]
fn face_lattice_sizes_of_standard_permutahedra() {
    // faces of π_d correspond to compositions of [d]
    for (d, n) in [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)] {
        assert_eq!(compositions(d).len(), n);
        if d >= 2 {
            assert_eq!(GPerm::standard(d).unwrap().face_lattice().unwrap().len(), n);
        }
    }
}

/// Sorting `y` decreasingly and applying the greedy rule yields a maximizer.
fn greedy_maximizes(z: &SetFn, y: &[Rat]) -> bool {
    let mut perm: Vec<usize> = (0..z.d()).collect();
    perm.sort_by(|&a, &b| y[b].cmp(&y[a]));
    let x = z.greedy_vertex(&perm).unwrap();
    let best = vertices(z).unwrap().iter().map(|v| dot(v, y)).max().unwrap();
    dot(&x, y) == best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn greedy_is_optimal(seed in any::<u64>(), y in prop::collection::vec(-5i64..5, 5)) {
        let z = random_hypergraphic_setfn(&mut rng(seed), 5);
        prop_assert!(greedy_maximizes(&z, &rat_vec(&y[..z.d()])));
    }

    #[test]
    fn vertices_round_trip(seed in any::<u64>()) {
        let z = random_hypergraphic_setfn(&mut rng(seed), 6);
        prop_assert_eq!(SetFn::from_vertices(&vertices(&z).unwrap()).unwrap(), z);
    }

    #[test]
    fn sum_of_set_functions_is_minkowski_sum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_hypergraphic_setfn(&mut r, 4);
        let b = loop {
            let b = random_hypergraphic_setfn(&mut r, 4);
            if b.d() == a.d() {
                break b;
            }
        };
        let sum = a.sum(&b).unwrap();
        let va = vertices(&a).unwrap();
        let vb = vertices(&b).unwrap();
        let pairwise: Vec<Vec<Rat>> = va
            .iter()
            .flat_map(|u| vb.iter().map(move |v| u.iter().zip(v).map(|(x, y)| x + y).collect()))
            .collect();
        prop_assert_eq!(SetFn::from_vertices(&pairwise).unwrap(), sum.clone());
        let vs: BTreeSet<Vec<Rat>> = vertices(&sum).unwrap().into_iter().collect();
        let ps: BTreeSet<Vec<Rat>> = pairwise.into_iter().collect();
        prop_assert!(vs.is_subset(&ps));
        for p in permutations(a.d()) {
            let g: Vec<Rat> = a
                .greedy_vertex(&p)
                .unwrap()
                .iter()
                .zip(b.greedy_vertex(&p).unwrap())
                .map(|(x, y)| x + y)
                .collect();
            prop_assert_eq!(sum.greedy_vertex(&p).unwrap(), g);
        }
    }

    #[test]
    fn lookup_agrees_with_direct_argmax(seed in any::<u64>(), y in prop::collection::vec(-3i64..4, 5)) {
        let z = random_hypergraphic_setfn(&mut rng(seed), 5);
        let p = GPerm::new(z).unwrap();
        let y = rat_vec(&y[..p.d()]);
        let f = p.face_of_direction(&y).unwrap();
        prop_assert_eq!(&f.vertex_ids, &p.maximal_vertices(&y).unwrap());
        let pts: Vec<_> = f.vertex_ids.iter().map(|&i| p.vertices()[i].clone()).collect();
        prop_assert_eq!(f.dim, affine_rank(&pts).unwrap());
    }

    #[test]
    fn reciprocity_holds_for_every_k(seed in any::<u64>()) {
        let z = random_hypergraphic_setfn(&mut rng(seed), 4);
        let p = GPerm::new(z).unwrap();
        for k in 0..p.d() {
            let r = p.verify_reciprocity(k, 3).unwrap();
            prop_assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
