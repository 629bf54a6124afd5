use std::sync::Arc;

use delsarte_core::arith::Rational;
use delsarte_core::construct::{shape, thin_abelian};
use delsarte_core::morphism::{verify_morphism, SchemeMorphism};
use delsarte_core::tower::{build_tower, isolate, j_chain, TowerFamily, TowerKind};
use delsarte_core::{Error, Result, Scheme};

/// `Z / 2^lambda` with reduction steps.
struct Cyclic2;

impl TowerFamily for Cyclic2 {
    fn name(&self) -> String {
        "cyclic-2".into()
    }

    fn level(&self, lambda: usize) -> Result<Scheme> {
        thin_abelian(vec![1 << lambda])
    }

    fn step(&self, upper: Arc<Scheme>, lower: Arc<Scheme>, _lambda: usize) -> Result<SchemeMorphism> {
        let n = lower.len();
        let f: Vec<usize> = (0..upper.len()).map(|x| x % n).collect();
        let mut g = vec![0; upper.rank()];
        for x in 0..upper.len() {
            g[upper.relation(0, x)] = lower.relation(0, x % n);
        }
        verify_morphism(upper, lower, f, g)
    }
}

/// Steps that ignore the levels they are handed.
struct Detached;

impl TowerFamily for Detached {
    fn name(&self) -> String {
        "detached".into()
    }

    fn level(&self, lambda: usize) -> Result<Scheme> {
        Cyclic2.level(lambda)
    }

    fn step(&self, _upper: Arc<Scheme>, _lower: Arc<Scheme>, lambda: usize) -> Result<SchemeMorphism> {
        let up = Arc::new(Cyclic2.level(lambda + 1)?);
        let low = Arc::new(Cyclic2.level(lambda)?);
        Cyclic2.step(up, low, lambda)
    }
}

#[test]
fn ordered_hamming_chain_keeps_small_shapes() {
    let mut t = build_tower(TowerKind::OrderedHamming { s: 2, v: 2 }, 4).unwrap();
    let chain = j_chain(&mut t, 4).unwrap();
    assert_eq!(chain.len(), 3);
    for (l, p) in chain.iter().enumerate() {
        let n = l + 1;
        // Unordered shapes: multisets of size 2 from 0..=n+1.
        assert_eq!(p.source().len(), (n + 2) * (n + 3) / 2);
        for (j, label) in p.source().iter().enumerate() {
            let sh = shape(label).unwrap();
            let want = sh.iter().all(|&e| e as usize <= n).then(|| label.clone());
            assert_eq!(p.get(j).map(|k| p.target()[k].clone()), want, "level {} {label}", n + 1);
        }
        assert!(p.is_surjective());
    }
}

#[test]
fn step_fibers() {
    for (kind, fiber) in [
        (TowerKind::Kernel { v: 3 }, 3),
        (TowerKind::OrderedHamming { s: 2, v: 2 }, 4),
        (TowerKind::OrderedHamming { s: 3, v: 2 }, 8),
    ] {
        let mut t = build_tower(kind, 3).unwrap();
        for l in 1..3 {
            assert_eq!(t.step(l).unwrap().fiber_size(), Some(fiber));
        }
        let m = t.morphism(3, 1).unwrap();
        assert_eq!(m.fiber_size(), Some(fiber * fiber));
    }
}

#[test]
fn kernel_ball_measures_are_level_independent() {
    let mut t = build_tower(TowerKind::Kernel { v: 2 }, 5).unwrap();
    for lambda in 1..=5 {
        let x = t.level(lambda).unwrap();
        for i in 1..=lambda {
            let r = x.relation_index(&i.to_string()).unwrap();
            let want = Rational::new(1.into(), (1i64 << i).into());
            assert_eq!(t.ball_measure(lambda, r).unwrap(), want);
        }
        let inf = x.relation_index("inf").unwrap();
        assert_eq!(t.ball_measure(lambda, inf).unwrap(), Rational::new(1.into(), (1i64 << lambda).into()));
    }
    assert!(t.ball_measure(2, 99).is_err());
}

#[test]
fn kernel_isolated_labels_cover_the_depth() {
    let d = 4;
    let mut t = build_tower(TowerKind::Kernel { v: 2 }, 1).unwrap();
    let mut isolated = Vec::new();
    for j in 0..=d {
        if let Some(r) = isolate(&mut t, &j.to_string(), d + 1).unwrap() {
            assert_eq!(r.isolated_at, j.max(1));
            assert_eq!(r.j_lambda, j.to_string());
            assert_eq!(r.multiplicity, if j == 0 { 1 } else { 1 << (j - 1) });
            isolated.push(j);
        }
    }
    assert_eq!(isolated, (0..=d).collect::<Vec<_>>());
    assert_eq!(t.depth(), d + 1);
    assert!(isolate(&mut t, "nope", 3).is_err());
}

#[test]
fn custom_family() {
    let mut t = build_tower(TowerKind::Custom(Box::new(Cyclic2)), 4).unwrap();
    assert_eq!(format!("{:?}", t.kind()), "Custom(cyclic-2)");
    let chain = j_chain(&mut t, 4).unwrap();
    for (l, p) in chain.iter().enumerate() {
        // Characters of Z/2^l pull back to the even characters above.
        assert_eq!(p.domain().len(), 1 << (l + 1));
        assert!(p.is_surjective());
    }
    let x1 = t.level(1).unwrap();
    let triv = x1.spectral_data().unwrap();
    let label = triv.labels()[triv.trivial()].clone();
    let r = isolate(&mut t, &label, 4).unwrap().unwrap();
    assert_eq!((r.isolated_at, r.multiplicity), (1, 1));
}

#[test]
fn detached_steps_are_refused() {
    let err = build_tower(TowerKind::Custom(Box::new(Detached)), 2).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_)));
    assert!(build_tower(TowerKind::Kernel { v: 2 }, 0).is_err());
    let mut t = build_tower(TowerKind::Kernel { v: 2 }, 2).unwrap();
    assert!(t.morphism(1, 2).is_err());
    assert!(t.level(0).is_err());
    assert!(t.built_level(3).is_none());
    t.realize(3).unwrap();
    assert!(t.built_level(3).is_some());
}
