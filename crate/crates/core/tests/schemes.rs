mod common;

use std::sync::Arc;

use delsarte_core::construct::{collapse, ordered_hamming, parse_cycles, schurian_scheme, thin_abelian, thin_scheme};
use delsarte_core::{verify_scheme, AxiomViolation, Error, Scheme};
use proptest::prelude::*;

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn dense_matrices(s: &Scheme) -> Vec<Vec<Vec<u64>>> {
    let n = s.len();
    (0..s.rank())
        .map(|i| (0..n).map(|x| (0..n).map(|y| (s.relation(x, y) == i) as u64).collect()).collect())
        .collect()
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n)
        .map(|x| (0..n).map(|y| (0..n).map(|z| a[x][z] * b[z][y]).sum()).collect())
        .collect()
}

/// Commutativity read off the dense adjacency matrices.
fn matrices_commute(s: &Scheme) -> bool {
    let m = dense_matrices(s);
    (0..m.len()).all(|i| (0..m.len()).all(|j| matmul(&m[i], &m[j]) == matmul(&m[j], &m[i])))
}

#[test]
fn pentagon_table_is_a_scheme() {
    let n = 5;
    let map: Vec<u32> = (0..n * n)
        .map(|k| {
            let d = ((k % n) + n - k / n) % n;
            d.min(n - d) as u32
        })
        .collect();
    let s = verify_scheme(labels("x", n), labels("d", 3), map).unwrap();
    assert_eq!(s.valencies(), &[1, 2, 2]);
    assert!(s.is_symmetric());
    assert_eq!(s.intersection_number(1, 1, 2), 1);
}

#[test]
fn broken_tables_name_a_witness() {
    // Path on 3 vertices: distance is not a scheme (valencies differ).
    let map = vec![0, 1, 2, 1, 0, 1, 2, 1, 0];
    match verify_scheme(labels("x", 3), labels("d", 3), map) {
        Err(Error::Axiom(AxiomViolation::IntersectionInconsistent(_))) => {}
        other => panic!("expected an intersection witness, got {other:?}"),
    }
    let diag = verify_scheme(labels("x", 2), labels("r", 2), vec![0, 1, 1, 1]);
    assert!(matches!(diag, Err(Error::Axiom(_))));
    let unused = verify_scheme(labels("x", 2), labels("r", 3), vec![0, 1, 1, 0]);
    assert!(matches!(unused, Err(Error::Axiom(AxiomViolation::NotSurjective { .. }))));
    let short = verify_scheme(labels("x", 2), labels("r", 2), vec![0, 1, 1]);
    assert!(matches!(short, Err(Error::MapShape { expected: 4, found: 3 })));
}

#[test]
fn non_commutative_scheme_is_detected() {
    // Thin scheme of S3 as a permutation table.
    let perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![1, 0, 2],
        vec![0, 2, 1],
        vec![2, 1, 0],
    ];
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..3).map(|i| a[b[i]]).collect() };
    let table: Vec<u32> = perms
        .iter()
        .flat_map(|a| perms.iter().map(|b| perms.iter().position(|p| *p == compose(a, b)).unwrap() as u32).collect::<Vec<_>>())
        .collect();
    let s = thin_scheme(labels("g", 6), table).unwrap();
    assert!(!s.is_commutative());
    assert!(!matrices_commute(&s));
    assert!(matches!(s.spectral_data(), Err(Error::NotCommutative)));
}

#[test]
fn schurian_commutativity_matches_the_matrices() {
    let cases: &[(usize, &[&str])] = &[
        (3, &["(1 2 3)", "(1 2)"]),
        (4, &["(1 2 3 4)", "(1 3)"]),
        (4, &["(1 2 3 4)"]),
        (4, &["(1 2)", "(3 4)", "(1 3)(2 4)"]),
        (5, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
        (6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
        (6, &["(1 2 3)(4 5 6)", "(1 4)(2 6)(3 5)"]),
        (6, &["(1 2 3 4 5 6)", "(1 2)"]),
        (8, &["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"]),
        (10, &["(1 2 3 4 5 6 7 8 9 10)"]),
        (12, &["(1 2 3 4 5 6 7 8 9 10 11 12)", "(2 12)(3 11)(4 10)(5 9)(6 8)"]),
    ];
    for (n, gens) in cases {
        let g: Vec<Vec<usize>> = gens.iter().map(|c| parse_cycles(c, *n).unwrap()).collect();
        let s = schurian_scheme(*n, &g).unwrap();
        assert_eq!(s.is_commutative(), matrices_commute(&s), "{gens:?}");
        if s.is_commutative() {
            s.spectral_data().unwrap();
        }
    }
    // S3 acting regularly on itself (6 points) is not commutative.
    let regular = [parse_cycles("(1 2 3)(4 6 5)", 6).unwrap(), parse_cycles("(1 4)(2 5)(3 6)", 6).unwrap()];
    let s = schurian_scheme(6, &regular).unwrap();
    assert_eq!(s.rank(), 6);
    assert!(!s.is_commutative());
    assert!(!matrices_commute(&s));
}

#[test]
fn petersen_spectrum() {
    let s = common::petersen();
    assert_eq!(s.rank(), 3);
    let e = s.spectral_data().unwrap();
    assert!(e.is_exact());
    let mut m = e.multiplicities().to_vec();
    m.sort_unstable();
    assert_eq!(m, vec![1, 4, 5]);
}

#[test]
fn collapse_is_surjective() {
    let h = Arc::new(ordered_hamming(2, 2, 2).unwrap());
    let c = collapse(h.clone()).unwrap();
    assert!(c.is_surjective());
    assert_eq!(c.target().relation_labels(), &["0", "1"]);
    assert_eq!(c.target().len(), h.len());
    assert_eq!(c.target().valencies(), &[1, h.len() as u64 - 1]);
}

/// Relabel the points of a scheme by `perm` through its dense table.
fn relabeled(s: &Scheme, perm: &[usize]) -> Scheme {
    let n = s.len();
    let mut inv = vec![0; n];
    for (x, &px) in perm.iter().enumerate() {
        inv[px] = x;
    }
    let map = (0..n * n).map(|k| s.relation(inv[k / n], inv[k % n]) as u32).collect();
    Scheme::from_relation_map(labels("x", n), s.relation_labels().to_vec(), None, map).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_relabeling_preserves_everything(orders in proptest::collection::vec(2u32..5, 1..3), seed in any::<u64>()) {
        let s = thin_abelian(orders).unwrap();
        let n = s.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let t = relabeled(&s, &perm);
        prop_assert_eq!(s.valencies(), t.valencies());
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                for k in 0..s.rank() {
                    prop_assert_eq!(s.intersection_number(i, j, k), t.intersection_number(i, j, k));
                }
            }
        }
        let (a, b) = (s.spectral_data().unwrap(), t.spectral_data().unwrap());
        let mut ma = a.multiplicities().to_vec();
        let mut mb = b.multiplicities().to_vec();
        ma.sort_unstable();
        mb.sort_unstable();
        prop_assert_eq!(ma, mb);
        t.spectral_data().unwrap().check_invariants(&t, 1e-9).unwrap();
    }

    #[test]
    fn thin_spectra_are_exact(orders in proptest::collection::vec(2u32..6, 1..3)) {
        let s = thin_abelian(orders).unwrap();
        let e = s.spectral_data().unwrap();
        prop_assert!(e.is_exact());
        prop_assert!(e.multiplicities().iter().all(|&m| m == 1));
        e.check_invariants(&s, 0.0).unwrap();
    }
}
