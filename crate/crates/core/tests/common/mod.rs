#![allow(dead_code)]

use std::sync::Arc;

use delsarte_core::construct::{
    extend_scheme, kernel_scheme, ordered_hamming, schurian_scheme, thin_abelian, translation_scheme, TranslationSpec,
};
use delsarte_core::AbelianGroup;
use delsarte_core::nets::DigitalPointSet;
use delsarte_core::Scheme;

/// The base-2 Hammersley set with 4 points in `X_2^2`.
pub fn hammersley() -> DigitalPointSet {
    let pts = [[0, 0, 0, 0], [1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]];
    DigitalPointSet::new(2, 2, 2, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

/// Image of `pair` (a 2-subset of `0..5`, given by index) under `perm`.
fn pair_action(perm: &[usize]) -> Vec<usize> {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
            pairs.iter().position(|&p| p == (x, y)).unwrap()
        })
        .collect()
}

/// `S_5` on the 10 pairs of a 5-set: the Petersen graph scheme.
pub fn petersen() -> Scheme {
    let gens = [pair_action(&[1, 2, 3, 4, 0]), pair_action(&[1, 0, 2, 3, 4])];
    schurian_scheme(10, &gens).unwrap()
}

fn cycles(text: &str, n: usize) -> Vec<usize> {
    delsarte_core::construct::parse_cycles(text, n).unwrap()
}

/// Distance scheme of the `n`-cycle as a translation scheme on `Z/n`.
pub fn cycle_distance(n: u32) -> Scheme {
    let relations = (0..=n / 2).map(|d| d.to_string()).collect();
    let sphere = (0..n).map(|a| a.min(n - a)).collect();
    translation_scheme(TranslationSpec {
        group: AbelianGroup::new(vec![n]).unwrap(),
        relations,
        sphere,
    })
    .unwrap()
}

/// Named commutative schemes with at most 256 points.
pub fn commutative_corpus() -> Vec<(String, Arc<Scheme>)> {
    let mut out: Vec<(String, Arc<Scheme>)> = Vec::new();
    for v in [2u32, 3, 4, 5] {
        for n in 1..=5usize {
            if (v as usize).pow(n as u32) <= 256 {
                out.push((format!("k({n},{v})"), Arc::new(kernel_scheme(n, v).unwrap())));
            }
        }
    }
    for (s, n, v) in [(2, 1, 2), (2, 2, 2), (2, 3, 2), (2, 4, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (2, 1, 3), (2, 2, 3), (3, 1, 3), (2, 1, 5)] {
        out.push((format!("H({s},{n},{v})"), Arc::new(ordered_hamming(s, n, v).unwrap())));
    }
    for orders in [vec![1], vec![2], vec![3], vec![4], vec![5], vec![6], vec![7], vec![8], vec![9], vec![12], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2, 2], vec![4, 4], vec![5, 5]] {
        out.push((format!("thin{orders:?}"), Arc::new(thin_abelian(orders).unwrap())));
    }
    for n in [5, 7, 8, 10, 12] {
        out.push((format!("C{n} distances"), Arc::new(cycle_distance(n))));
    }
    let z3 = Arc::new(thin_abelian(vec![3]).unwrap());
    out.push(("ext(Z3,2)".into(), Arc::new(extend_scheme(z3, 2).unwrap())));
    out.push(("S3 on 3".into(), Arc::new(schurian_scheme(3, &[cycles("(1 2 3)", 3), cycles("(1 2)", 3)]).unwrap())));
    out.push(("D4 on 4".into(), Arc::new(schurian_scheme(4, &[cycles("(1 2 3 4)", 4), cycles("(1 3)", 4)]).unwrap())));
    out.push(("D5 on 5".into(), Arc::new(schurian_scheme(5, &[cycles("(1 2 3 4 5)", 5), cycles("(2 5)(3 4)", 5)]).unwrap())));
    out.push(("D6 on 6".into(), Arc::new(schurian_scheme(6, &[cycles("(1 2 3 4 5 6)", 6), cycles("(2 6)(3 5)", 6)]).unwrap())));
    out.push(("petersen".into(), Arc::new(petersen())));
    out
}

/// Dyadic box count: points of `p` inside the box whose coordinate `c`
/// is `[a_c / 2^{d_c}, (a_c + 1) / 2^{d_c})`, via real coordinates.
pub fn box_count(p: &DigitalPointSet, d: &[u32], a: &[u64]) -> usize {
    let n = p.precision();
    (0..p.len())
        .filter(|&k| {
            (0..p.dimension()).all(|c| {
                // Coordinate as the integer x * 2^n.
                let x = p.coordinate(k, c).iter().fold(0u64, |acc, &dig| acc * 2 + dig as u64);
                let lo = a[c] << (n as u32 - d[c]);
                let hi = (a[c] + 1) << (n as u32 - d[c]);
                lo <= x && x < hi
            })
        })
        .count()
}

/// Brute-force base-2 net test over every dyadic box of volume `2^{t-m}`.
pub fn dyadic_net_oracle(p: &DigitalPointSet, t: u32, m: u32) -> bool {
    let s = p.dimension();
    let mut d = vec![0u32; s];
    loop {
        if d.iter().sum::<u32>() == m - t {
            let mut a = vec![0u64; s];
            loop {
                if box_count(p, &d, &a) != 1 << t {
                    return false;
                }
                let mut c = 0;
                loop {
                    if c == s {
                        break;
                    }
                    a[c] += 1;
                    if a[c] < 1 << d[c] {
                        break;
                    }
                    a[c] = 0;
                    c += 1;
                }
                if c == s {
                    break;
                }
            }
        }
        let mut c = 0;
        loop {
            if c == s {
                return true;
            }
            d[c] += 1;
            if d[c] <= (m - t).min(p.precision() as u32) {
                break;
            }
            d[c] = 0;
            c += 1;
        }
    }
}
