//! Extensions of length `s` and the ordered Hamming schemes
//! `H(s, n, v) = ext_s(k(n, v))`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::morphism::{verify_morphism, SchemeMorphism};
use crate::scheme::{distinct_permutations, multisets_desc, ExtensionMap, PointNaming, RelationMap, Scheme};

use super::kernel::kernel_scheme;

/// Extension of length `s`: points `X^s`, relations the `S_s`-orbits of
/// `I^s`. A relation is labeled by its canonical tuple, sorted with the
/// identity highest and the other relations in reverse index order, e.g.
/// `(inf,1)` in `H(2, n, v)`.
pub fn extend_scheme(base: Arc<Scheme>, s: usize) -> Result<Scheme> {
    if s == 0 {
        return Err(Error::InvalidInput("extension length must be positive".into()));
    }
    if !base.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let nb = base.len();
    let n = nb
        .checked_pow(s as u32)
        .ok_or_else(|| Error::InvalidInput("extension too large".into()))?;
    let r = base.rank();
    let i0 = base.identity();
    let rank: Vec<u32> = (0..r).map(|i| if i == i0 { r as u32 } else { i as u32 }).collect();
    // Relation indices in increasing rank.
    let mut by_rank: Vec<usize> = (0..r).collect();
    by_rank.sort_by_key(|&i| rank[i]);
    let mut reps: Vec<Vec<u32>> = multisets_desc(r as u32, s)
        .into_iter()
        .map(|t| t.into_iter().map(|p| by_rank[p as usize] as u32).collect())
        .collect();
    reps.reverse();
    let orbit_of: BTreeMap<Vec<u32>, u32> = reps
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), k as u32))
        .collect();
    let ext = ExtensionMap {
        base: base.clone(),
        s,
        orbit_of,
        rank,
    };
    let labels: Vec<String> = reps
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().map(|&i| base.relation_labels()[i as usize].as_str()).collect();
            alloc::format!("({})", parts.join(","))
        })
        .collect();

    let big_r = reps.len();
    let identity = big_r - 1;
    let transpose: Vec<usize> = reps
        .iter()
        .map(|t| {
            let mut tt: Vec<u32> = t.iter().map(|&i| base.transpose(i as usize) as u32).collect();
            ext.canonical(&mut tt);
            ext.orbit_of[&tt] as usize
        })
        .collect();
    let orbits: Vec<Vec<Vec<u32>>> = reps.iter().map(|t| distinct_permutations(t)).collect();
    let mut table = vec![0u64; big_r * big_r * big_r];
    for a in 0..big_r {
        for b in 0..big_r {
            for (k, kt) in reps.iter().enumerate() {
                let mut total = 0u64;
                for at in &orbits[a] {
                    for bt in &orbits[b] {
                        let mut prod = 1u64;
                        for t in 0..s {
                            prod *= base.intersection_number(at[t] as usize, bt[t] as usize, kt[t] as usize);
                            if prod == 0 {
                                break;
                            }
                        }
                        total += prod;
                    }
                }
                table[(a * big_r + b) * big_r + k] = total;
            }
        }
    }
    Scheme::assemble(
        PointNaming::Product { base, s },
        n,
        labels,
        RelationMap::Extension(ext),
        Some((identity, transpose, table)),
    )
}

/// `H(s, n, v)`. Idempotents are labeled by shapes such as `[2,0]`.
pub fn ordered_hamming(s: usize, n: usize, v: u32) -> Result<Scheme> {
    extend_scheme(Arc::new(kernel_scheme(n, v)?), s)
}

/// Parse a shape label `[a,b,...]`.
pub fn shape(label: &str) -> Option<Vec<u32>> {
    let inner = label.strip_prefix('[')?.strip_suffix(']')?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// Sum of the entries of a shape label.
pub fn height(label: &str) -> Option<u32> {
    shape(label).map(|v| v.iter().sum())
}

/// NRT weight of relation `i` of `H(s, n, v)`: a component labeled `k`
/// contributes `n + 1 - k`, the identity `inf` contributes 0.
pub fn nrt_weight(scheme: &Scheme, i: usize) -> Option<u32> {
    let ext = scheme.extension_data()?;
    let n = ext.base.rank() as u32 - 1;
    let label = scheme.relation_labels().get(i)?;
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    inner
        .split(',')
        .map(|c| match c.trim() {
            "inf" => Some(0),
            k => k.parse::<u32>().ok().filter(|&k| (1..=n).contains(&k)).map(|k| n + 1 - k),
        })
        .sum()
}

/// Apply a base morphism componentwise to extensions of equal length.
pub fn extension_morphism(
    base: &SchemeMorphism,
    source: Arc<Scheme>,
    target: Arc<Scheme>,
) -> Result<SchemeMorphism> {
    let (se, te) = match (source.extension_data(), target.extension_data()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidInput("extension morphism needs extension schemes".into())),
    };
    if se.s != te.s || se.base.id() != base.source().id() || te.base.id() != base.target().id() {
        return Err(Error::SchemeMismatch);
    }
    let s = se.s;
    let (nb, nt) = (se.base.len(), te.base.len());
    let f = (0..source.len())
        .map(|mut x| {
            let mut digits = vec![0usize; s];
            for d in digits.iter_mut().rev() {
                *d = x % nb;
                x /= nb;
            }
            digits.iter().fold(0usize, |acc, &d| acc * nt + base.point_map()[d])
        })
        .collect();
    let mut g = vec![0usize; source.rank()];
    for (tuple, &k) in &se.orbit_of {
        let mut img: Vec<u32> = tuple.iter().map(|&i| base.relation_map()[i as usize] as u32).collect();
        te.canonical(&mut img);
        g[k as usize] = te.orbit_of[&img] as usize;
    }
    verify_morphism(source, target, f, g)
}

/// The digit drop `H(s, n + 1, v) -> H(s, n, v)`.
pub fn ordered_hamming_truncation(upper: Arc<Scheme>, lower: Arc<Scheme>, v: u32) -> Result<SchemeMorphism> {
    let (ub, lb) = match (upper.extension_data(), lower.extension_data()) {
        (Some(a), Some(b)) => (a.base.clone(), b.base.clone()),
        _ => return Err(Error::InvalidInput("not ordered Hamming schemes".into())),
    };
    let base = super::kernel_truncation(ub, lb, v)?;
    extension_morphism(&base, upper, lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        let h = ordered_hamming(2, 2, 2).unwrap();
        let w: Vec<u32> = (0..h.rank()).map(|i| nrt_weight(&h, i).unwrap()).collect();
        for (i, l) in h.relation_labels().iter().enumerate() {
            let expect = match l.as_str() {
                "(inf,inf)" => 0,
                "(2,inf)" | "(inf,2)" => 1,
                "(1,inf)" | "(inf,1)" | "(2,2)" => 2,
                "(1,2)" | "(2,1)" => 3,
                "(1,1)" => 4,
                _ => unreachable!("{l}"),
            };
            assert_eq!(w[i], expect, "{l}");
        }
    }

    #[test]
    fn hamming_2_2() {
        let h = extend_scheme(Arc::new(kernel_scheme(1, 2).unwrap()), 2).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.relation_labels(), &["(1,1)", "(inf,1)", "(inf,inf)"]);
        assert_eq!(h.valencies(), &[1, 2, 1]);
        h.verify_exhaustive().unwrap();
    }

    #[test]
    fn h222_counts() {
        let h = ordered_hamming(2, 2, 2).unwrap();
        assert_eq!(h.len(), 16);
        assert_eq!(h.rank(), 6);
        h.verify_exhaustive().unwrap();
        let e = h.spectral_data().unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e.multiplicities().iter().sum::<u64>(), 16);
        let j = e.index_of("[1,0]").unwrap();
        assert_eq!(e.multiplicity(j), 2);
        e.check_invariants(&h, 0.0).unwrap();
    }

    #[test]
    fn shapes_parse() {
        assert_eq!(shape("[2,0]"), Some(vec![2, 0]));
        assert_eq!(height("[2,1]"), Some(3));
        assert_eq!(shape("2,0"), None);
    }
}
