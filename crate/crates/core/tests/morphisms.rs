use std::sync::Arc;

use delsarte_core::construct::{
    collapse, kernel_scheme, kernel_truncation, ordered_hamming, ordered_hamming_truncation, thin_abelian,
};
use delsarte_core::morphism::{compose_partial, functor_j, verify_morphism, PartialSurjection, SchemeMorphism};
use delsarte_core::{Error, Scheme};

fn z(n: u32) -> Arc<Scheme> {
    Arc::new(thin_abelian(vec![n]).unwrap())
}

/// Relation index of the group element `x` (the relation from 0 to x).
fn element(s: &Scheme, x: usize) -> usize {
    s.relation(0, x)
}

fn quotient_z4_z2() -> SchemeMorphism {
    let (a, b) = (z(4), z(2));
    let f: Vec<usize> = (0..4).map(|x| x % 2).collect();
    let mut g = vec![0; 4];
    for x in 0..4 {
        g[element(&a, x)] = element(&b, x % 2);
    }
    verify_morphism(a, b, f, g).unwrap()
}

#[test]
fn quotient_pulls_back_the_even_characters() {
    let m = quotient_z4_z2();
    assert!(m.is_surjective());
    assert_eq!(m.fiber_size(), Some(2));
    let j = functor_j(&m).unwrap();
    let es = m.source().spectral_data().unwrap();
    let two = element(m.source(), 2);
    // Oracle: chi factors through Z4 -> Z2 iff chi(2) = 1.
    for jj in 0..es.len() {
        let even = es.q(jj, two).to_complex().re > 0.0;
        assert_eq!(j.get(jj).is_some(), even, "{}", es.labels()[jj]);
    }
    assert!(j.is_surjective());
    assert_eq!(j.domain().len(), 2);
    assert_eq!(j.get(es.trivial()), Some(m.target().spectral_data().unwrap().trivial()));
}

#[test]
fn non_commuting_square_names_the_pair() {
    let (a, b) = (z(4), z(2));
    let f = vec![0, 0, 1, 1];
    let mut g = vec![0; 4];
    for x in 0..4 {
        g[element(&a, x)] = element(&b, x % 2);
    }
    match verify_morphism(a, b, f, g) {
        Err(Error::MorphismNotCommuting { x, y, .. }) => assert_ne!(x, y),
        other => panic!("expected a witness pair, got {other:?}"),
    }
}

#[test]
fn malformed_maps_are_input_errors() {
    let (a, b) = (z(4), z(2));
    assert!(matches!(verify_morphism(a.clone(), b.clone(), vec![0; 3], vec![0; 4]), Err(Error::InvalidInput(_))));
    assert!(matches!(verify_morphism(a.clone(), b.clone(), vec![0, 1, 0, 5], vec![0; 4]), Err(Error::InvalidInput(_))));
    assert!(matches!(verify_morphism(a, b, vec![0; 4], vec![0, 7, 0, 0]), Err(Error::InvalidInput(_))));
}

#[test]
fn inclusion_is_not_surjective() {
    let (a, b) = (z(2), z(4));
    let mut g = vec![0; 2];
    for x in 0..2 {
        g[element(&a, x)] = element(&b, 2 * x);
    }
    let m = verify_morphism(a, b, vec![0, 2], g).unwrap();
    assert!(!m.is_surjective());
    assert_eq!(m.fiber_size(), None);
    assert!(matches!(functor_j(&m), Err(Error::NotSurjective)));
}

#[test]
fn truncation_fibers() {
    for v in [2u32, 3] {
        let k3 = Arc::new(kernel_scheme(3, v).unwrap());
        let k2 = Arc::new(kernel_scheme(2, v).unwrap());
        assert_eq!(kernel_truncation(k3, k2, v).unwrap().fiber_size(), Some(v as usize));
    }
    for s in [1usize, 2, 3] {
        let h2 = Arc::new(ordered_hamming(s, 2, 2).unwrap());
        let h1 = Arc::new(ordered_hamming(s, 1, 2).unwrap());
        let m = ordered_hamming_truncation(h2, h1, 2).unwrap();
        assert_eq!(m.fiber_size(), Some(2usize.pow(s as u32)));
    }
}

#[test]
fn pullback_of_the_all_ones_element() {
    let h2 = Arc::new(ordered_hamming(2, 2, 2).unwrap());
    let h1 = Arc::new(ordered_hamming(2, 1, 2).unwrap());
    let m = ordered_hamming_truncation(h2.clone(), h1.clone(), 2).unwrap();
    let e1 = h1.spectral_data().unwrap();
    let pulled = m.psi(&e1.projector(e1.trivial())).unwrap();
    let e2 = h2.spectral_data().unwrap();
    assert_eq!(pulled, e2.projector(e2.trivial()));
}

#[test]
fn composition_matches_the_composite_morphism() {
    let k: Vec<Arc<Scheme>> = (1..=3).map(|n| Arc::new(kernel_scheme(n, 2).unwrap())).collect();
    let m32 = kernel_truncation(k[2].clone(), k[1].clone(), 2).unwrap();
    let m21 = kernel_truncation(k[1].clone(), k[0].clone(), 2).unwrap();
    let direct = functor_j(&m32.then(&m21).unwrap()).unwrap();
    let composed = compose_partial(&functor_j(&m32).unwrap(), &functor_j(&m21).unwrap()).unwrap();
    assert_eq!(direct, composed);
    assert!(m21.then(&m32).is_err());
    let c = collapse(k[2].clone()).unwrap();
    assert_eq!(c.point_map(), (0..8).collect::<Vec<_>>().as_slice());
    let i0 = k[2].identity();
    for i in 0..k[2].rank() {
        assert_eq!(c.relation_map()[i] == c.target().identity(), i == i0);
    }
}

#[test]
fn partial_surjections_compose_on_preimages() {
    let labels = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let p = PartialSurjection::new(labels(&["a", "b", "c"]), labels(&["x", "y"]), vec![Some(0), Some(1), None]).unwrap();
    let q = PartialSurjection::new(labels(&["x", "y"]), labels(&["u"]), vec![None, Some(0)]).unwrap();
    let pq = compose_partial(&p, &q).unwrap();
    assert_eq!(pq.map(), &[None, Some(0), None]);
    assert_eq!(pq.preimage(0), vec![1]);
    assert!(matches!(compose_partial(&q, &p), Err(Error::SetMismatch(_))));
    let id = PartialSurjection::identity(labels(&["x", "y"]));
    assert_eq!(compose_partial(&p, &id).unwrap(), p);
    assert!(p.is_surjective());
    assert!(!PartialSurjection::new(labels(&["a"]), labels(&["x", "y"]), vec![Some(0)]).unwrap().is_surjective());
    assert!(PartialSurjection::new(labels(&["a"]), labels(&["x"]), vec![Some(3)]).is_err());
}
