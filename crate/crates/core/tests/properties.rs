use std::collections::BTreeSet;

use monocert::cases::{enumerate_cases, enumerate_rooted_trees, tetra_decomposition, CaseDescriptor};
use monocert::exact::{rat, rat_int, Rational};
use monocert::graph::{automorphism_classes, builtin, parse_graph, validate_triangulation, PolyhedralGraph, BUILTIN_IDS};
use monocert::system::assemble_system;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_cases(id: &str) -> (PolyhedralGraph, Vec<CaseDescriptor>) {
    let g = builtin(id).unwrap();
    let cases = enumerate_cases(&g, &automorphism_classes(&g).unwrap()).unwrap();
    (g, cases)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-30..=30), rng.gen_range(1..=9))
}

fn neighbor_degrees(g: &PolyhedralGraph, v: usize) -> Vec<usize> {
    let mut d: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
    d.sort_unstable();
    d
}

#[test]
fn tetrahedron_file_parses() {
    let json = r#"{"id": "k4", "V": 4, "faces": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#;
    let g = parse_graph(json, "inline").unwrap();
    assert!(validate_triangulation(&g).is_valid());
    assert_eq!((g.faces().len(), g.edge_count()), (4, 6));
}

#[test]
fn orbits_refine_neighbor_degrees() {
    for id in BUILTIN_IDS {
        let g = builtin(id).unwrap();
        for class in automorphism_classes(&g).unwrap().classes {
            let first = (g.degree(class[0]), neighbor_degrees(&g, class[0]));
            for &v in &class[1..] {
                assert_eq!((g.degree(v), neighbor_degrees(&g, v)), first, "{id} vertex {v}");
            }
        }
    }
}

#[test]
fn case_totals() {
    let total: usize = ["bipyramid5", "octahedron6", "irregular-octahedron6"]
        .iter()
        .map(|id| all_cases(id).1.len())
        .sum();
    assert_eq!(total, 5943);
}

#[test]
fn system_shape_and_coefficients() {
    let allowed: BTreeSet<Rational> = [rat_int(0), rat_int(1), rat_int(-1), rat(1, 2), rat(-1, 2)].into();
    for id in ["bipyramid5", "octahedron6", "irregular-octahedron6"] {
        let (g, cases) = all_cases(id);
        let v = g.vertex_count();
        for case in cases.iter().step_by(7) {
            let s = assemble_system(case, &g).unwrap();
            assert_eq!((s.len(), s.dimension()), (v, 3 * (v - 1)));
            let with_constant = s.inequalities().iter().filter(|q| !q.constant().is_zero()).count();
            assert_eq!(with_constant, 1, "{}", case.stem());
            assert!(s.inequalities().iter().any(|q| q.linear().iter().any(|b| !b.is_zero())));
            for m in s.augmented_matrices() {
                for i in 0..m.dim() {
                    for j in 0..m.dim() {
                        // the augmented border carries b/2
                        let x = &m[(i, j)];
                        let scaled = if i == 0 || j == 0 { x * rat_int(2) } else { x.clone() };
                        assert!(allowed.contains(&scaled) || allowed.contains(x), "{} entry {x}", case.stem());
                    }
                }
            }
        }
    }
}

#[test]
fn evaluate_matches_augmented_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in ["bipyramid5", "irregular-octahedron6"] {
        let (g, cases) = all_cases(id);
        for _ in 0..40 {
            let case = &cases[rng.gen_range(0..cases.len())];
            let s = assemble_system(case, &g).unwrap();
            let x: Vec<Rational> = (0..s.dimension()).map(|_| random_rational(&mut rng)).collect();
            let mut lifted = vec![Rational::one()];
            lifted.extend(x.iter().cloned());
            for q in s.inequalities() {
                assert_eq!(q.evaluate(&x).unwrap(), q.augmented().quadratic_form(&lifted).unwrap());
            }
        }
    }
}

#[test]
fn shadowed_vertex_is_closer_to_center() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 2000 {
        let ri: Vec<Rational> = (0..3).map(|_| random_rational(&mut rng)).collect();
        let rp: Vec<Rational> = (0..3).map(|_| random_rational(&mut rng)).collect();
        if ri == rp {
            continue;
        }
        let dot = |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
        let diff: Vec<Rational> = ri.iter().zip(&rp).map(|(a, b)| a - b).collect();
        if dot(&diff, &ri).is_positive() {
            continue;
        }
        assert!(dot(&ri, &ri) < dot(&rp, &rp));
        checked += 1;
    }
}

fn relabeling() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..BUILTIN_IDS.len()).prop_flat_map(|k| {
        let n = builtin(BUILTIN_IDS[k]).unwrap().vertex_count();
        (Just(k), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_survive_relabeling((k, perm) in relabeling()) {
        let g = builtin(BUILTIN_IDS[k]).unwrap();
        let h = g.relabeled(&perm);
        prop_assert!(validate_triangulation(&h).is_valid());
        for v in g.vertices() {
            let w = perm[v - 1];
            prop_assert_eq!(g.degree(v), h.degree(w));
            prop_assert_eq!(
                enumerate_rooted_trees(&g, v).unwrap().len(),
                enumerate_rooted_trees(&h, w).unwrap().len()
            );
            prop_assert_eq!(tetra_decomposition(&g, v).unwrap().len(), tetra_decomposition(&h, w).unwrap().len());
        }
        let mut sizes_g: Vec<usize> = automorphism_classes(&g).unwrap().classes.iter().map(Vec::len).collect();
        let mut sizes_h: Vec<usize> = automorphism_classes(&h).unwrap().classes.iter().map(Vec::len).collect();
        sizes_g.sort_unstable();
        sizes_h.sort_unstable();
        prop_assert_eq!(sizes_g, sizes_h);
    }
}
