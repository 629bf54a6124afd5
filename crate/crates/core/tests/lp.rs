mod common;

use std::sync::Arc;

use delsarte_core::arith::Rational;
use delsarte_core::construct::{kernel_scheme, ordered_hamming, thin_abelian};
use delsarte_core::delsarte::{
    direct_transform, inner_distribution, is_code, is_cone_feasible, is_design, lp_bound, verify_certificate,
    ConeSpec, LpStatus, MultiSubset, Sense,
};
use delsarte_core::{Error, Scheme};
use proptest::prelude::*;

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect())
}

fn nontrivial(s: &Scheme) -> Vec<usize> {
    (0..s.rank()).filter(|&i| i != s.identity()).collect()
}

/// Largest code avoiding `ic`, by exhaustion.
fn brute_code(s: &Scheme, ic: &[usize]) -> usize {
    subsets(s.len())
        .filter(|y| y.iter().all(|&x| y.iter().all(|&z| !ic.contains(&s.relation(x, z)))))
        .map(|y| y.len())
        .max()
        .unwrap()
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn code_bounds_dominate_exhaustive_search() {
    let schemes = [kernel_scheme(3, 2).unwrap(), ordered_hamming(1, 3, 2).unwrap(), thin_abelian(vec![2, 2, 2]).unwrap()];
    for s in &schemes {
        let rest = nontrivial(s);
        for mask in 0u32..(1 << rest.len()) {
            let ic: Vec<usize> = rest.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
            let cone = ConeSpec { codes: ic.clone(), designs: vec![] };
            let sol = lp_bound(s, &cone, Sense::Maximize).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal);
            let bound = sol.optimum.clone().unwrap();
            let best = brute_code(s, &ic);
            assert!(bound >= rat(best as i64), "{ic:?}: {bound} < {best}");
            assert_eq!(verify_certificate(s, &cone, Sense::Maximize, &sol.dual).unwrap(), bound);
            assert!(is_cone_feasible(s, &cone, &sol.primal).unwrap());
        }
    }
}

#[test]
fn kernel_code_bound_is_tight() {
    // Points agreeing on the first two digits are in relation "3".
    let s = kernel_scheme(3, 2).unwrap();
    let ic = vec![s.relation_index("3").unwrap()];
    let cone = ConeSpec { codes: ic.clone(), designs: vec![] };
    let sol = lp_bound(&s, &cone, Sense::Maximize).unwrap();
    assert_eq!(sol.optimum, Some(rat(4)));
    assert_eq!(brute_code(&s, &ic), 4);
}

#[test]
fn design_bounds_stay_below_every_design() {
    let s = ordered_hamming(1, 3, 2).unwrap();
    let eig = s.spectral_data().unwrap();
    let rest: Vec<usize> = (0..eig.len()).filter(|&j| j != eig.trivial()).collect();
    for mask in 1u32..(1 << rest.len()) {
        let jd: Vec<usize> = rest.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &j)| j).collect();
        let cone = ConeSpec { codes: vec![], designs: jd.clone() };
        let sol = lp_bound(&s, &cone, Sense::Minimize).unwrap();
        let bound = sol.optimum.clone().unwrap();
        let smallest = subsets(s.len())
            .filter(|y| is_design(&s, &MultiSubset::from_points(&s, y).unwrap(), &jd).unwrap().holds)
            .map(|y| y.len())
            .min()
            .unwrap();
        assert!(bound <= rat(smallest as i64), "{jd:?}");
        assert_eq!(verify_certificate(&s, &cone, Sense::Minimize, &sol.dual).unwrap(), bound);
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let s = ordered_hamming(2, 2, 2).unwrap();
    let cone = ConeSpec { codes: vec![s.relation_index("(inf,1)").unwrap()], designs: vec![] };
    let sol = lp_bound(&s, &cone, Sense::Maximize).unwrap();
    let bound = verify_certificate(&s, &cone, Sense::Maximize, &sol.dual).unwrap();
    let mut y = sol.dual.clone();
    let j = (0..y.len()).find(|&j| y[j] > rat(0)).unwrap();
    y[j] = -y[j].clone();
    assert!(verify_certificate(&s, &cone, Sense::Maximize, &y).is_err());
    let zero = vec![rat(0); sol.dual.len()];
    assert!(verify_certificate(&s, &cone, Sense::Maximize, &zero).is_err());
    assert!(verify_certificate(&s, &cone, Sense::Maximize, &sol.dual[1..]).is_err());
    assert_eq!(bound, sol.optimum.unwrap());
}

#[test]
fn contradictory_cone_is_infeasible() {
    let s = kernel_scheme(2, 2).unwrap();
    let eig = s.spectral_data().unwrap();
    let cone = ConeSpec {
        codes: nontrivial(&s),
        designs: (0..eig.len()).filter(|&j| j != eig.trivial()).collect(),
    };
    assert_eq!(lp_bound(&s, &cone, Sense::Maximize).unwrap().status, LpStatus::Infeasible);
    let bad = ConeSpec { codes: vec![s.identity()], designs: vec![] };
    assert!(matches!(lp_bound(&s, &bad, Sense::Maximize), Err(Error::InvalidInput(_))));
}

#[test]
fn irrational_schemes_are_refused() {
    let d5 = common::commutative_corpus().into_iter().find(|(n, _)| n == "D5 on 5").unwrap().1;
    let err = lp_bound(&d5, &ConeSpec::default(), Sense::Maximize).unwrap_err();
    assert!(matches!(err, Error::IrrationalCoefficients(_)));
}

#[test]
fn codes_report_an_offending_pair() {
    let s = kernel_scheme(2, 2).unwrap();
    let i2 = s.relation_index("2").unwrap();
    let y = MultiSubset::from_points(&s, &[0, 1, 2]).unwrap();
    let v = is_code(&s, &y, &[i2]).unwrap();
    assert!(!v.holds);
    let (x, z) = v.witness.unwrap();
    assert_eq!(s.relation(x, z), i2);
    let y = MultiSubset::from_points(&s, &[0, 2]).unwrap();
    assert!(is_code(&s, &y, &[i2]).unwrap().holds);
    let other = Arc::new(kernel_scheme(2, 2).unwrap());
    assert!(matches!(is_code(&other, &y, &[i2]), Err(Error::SchemeMismatch)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn macwilliams_matches_pair_sums(entries in proptest::collection::vec((0usize..16, 1u64..4), 1..8), which in 0usize..3) {
        let s = match which {
            0 => ordered_hamming(2, 2, 2).unwrap(),
            1 => kernel_scheme(4, 2).unwrap(),
            _ => thin_abelian(vec![4, 4]).unwrap(),
        };
        let y = MultiSubset::new(&s, entries).unwrap();
        let d = inner_distribution(&s, &y).unwrap();
        let direct = direct_transform(&s, &y).unwrap();
        prop_assert_eq!(&d.b, &direct);
        let sum = d.a.iter().fold(rat(0), |acc, a| acc + a);
        prop_assert_eq!(sum, rat(1));
        for b in &d.b {
            let c = b.to_complex();
            prop_assert!(c.re >= -1e-12 && c.im.abs() < 1e-12);
        }
        // Sets scale to a feasible point with a_{i0} = 1.
        let mut pts: Vec<usize> = y.entries().iter().map(|e| e.0).collect();
        pts.sort_unstable();
        pts.dedup();
        let set = MultiSubset::from_points(&s, &pts).unwrap();
        let a = inner_distribution(&s, &set).unwrap().a;
        let scaled: Vec<Rational> = a.iter().map(|v| v * rat(pts.len() as i64)).collect();
        prop_assert!(is_cone_feasible(&s, &ConeSpec::default(), &scaled).unwrap());
    }
}
