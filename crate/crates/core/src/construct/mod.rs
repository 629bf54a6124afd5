//! Concrete scheme families.

mod extension;
mod kernel;
mod schurian;

pub use extension::{extend_scheme, extension_morphism, height, nrt_weight, ordered_hamming, ordered_hamming_truncation, shape};
pub use kernel::{kernel_closed_form, kernel_scheme, kernel_truncation};
pub use schurian::{parse_cycles, schurian_scheme};

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::morphism::{verify_morphism, SchemeMorphism};
use crate::scheme::{AbelianGroup, PointNaming, RelationMap, Scheme};

/// A translation scheme `R(x,y) = S(y - x)` on a finite abelian group.
#[derive(Debug, Clone)]
pub struct TranslationSpec {
    pub group: AbelianGroup,
    pub relations: Vec<String>,
    /// `sphere[a]` is the index of `S(a)` in `relations`.
    pub sphere: Vec<u32>,
}

pub fn translation_scheme(spec: TranslationSpec) -> Result<Scheme> {
    let TranslationSpec { group, relations, sphere } = spec;
    if sphere.len() != group.order() {
        return Err(Error::MapShape {
            expected: group.order(),
            found: sphere.len(),
        });
    }
    if sphere.iter().any(|&i| i as usize >= relations.len()) {
        return Err(Error::InvalidInput("sphere index out of range".into()));
    }
    Scheme::assemble(
        PointNaming::Group(group.clone()),
        group.order(),
        relations,
        RelationMap::Translation { group, sphere },
        None,
    )
}

/// Thin scheme of a finite abelian group given by its cyclic orders:
/// relations are the group elements themselves.
pub fn thin_abelian(orders: Vec<u32>) -> Result<Scheme> {
    let group = AbelianGroup::new(orders)?;
    let relations = (0..group.order()).map(|a| group.label(a)).collect();
    let sphere = (0..group.order() as u32).collect();
    translation_scheme(TranslationSpec { group, relations, sphere })
}

/// Thin scheme of a group given by its multiplication table
/// (`table[a * n + b] = ab`): `R(x,y) = x^{-1} y`.
pub fn thin_scheme(elements: Vec<String>, table: Vec<u32>) -> Result<Scheme> {
    let n = elements.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if table.len() != n * n || table.iter().any(|&c| c as usize >= n) {
        return Err(Error::InvalidInput("malformed multiplication table".into()));
    }
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let e = (0..n)
        .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
        .ok_or_else(|| Error::InvalidInput("no identity element".into()))?;
    let mut inv = Vec::with_capacity(n);
    for a in 0..n {
        let b = (0..n)
            .find(|&b| mul(a, b) == e)
            .ok_or_else(|| Error::InvalidInput(alloc::format!("{} has no inverse", elements[a])))?;
        inv.push(b);
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::InvalidInput("multiplication is not associative".into()));
                }
            }
        }
    }
    let mut map = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            map.push(mul(inv[x], y) as u32);
        }
    }
    Scheme::from_relation_map(elements.clone(), elements, None, map)
}

/// The morphism `(X, R, I) -> (X, g o R, {0, 1})` that keeps only
/// "equal or not".
pub fn collapse(scheme: Arc<Scheme>) -> Result<SchemeMorphism> {
    let n = scheme.len();
    let points: Vec<String> = (0..n).map(|x| scheme.point_label(x)).collect();
    let relations: Vec<String> = if n == 1 {
        alloc::vec![String::from("0")]
    } else {
        alloc::vec![String::from("0"), String::from("1")]
    };
    let mut map = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            map.push((x != y) as u32);
        }
    }
    let target = Arc::new(Scheme::from_relation_map(points, relations, Some("0"), map)?);
    let i0 = scheme.identity();
    let g = (0..scheme.rank()).map(|i| (i != i0) as usize).collect();
    verify_morphism(scheme, target, (0..n).collect(), g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> (Vec<String>, Vec<u32>) {
        // Permutations of {0,1,2} in one-line notation, composed as (ab)(x) = a(b(x)).
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let mut table = Vec::new();
        for a in perms.iter() {
            for b in perms.iter() {
                table.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        let names = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"];
        (names.iter().map(|s| String::from(*s)).collect(), table)
    }

    #[test]
    fn thin_s3_is_not_commutative() {
        let (el, t) = s3_table();
        let s = thin_scheme(el, t).unwrap();
        assert_eq!(s.rank(), 6);
        assert!(!s.is_commutative());
        assert!(s.spectral_data().is_err());
    }

    #[test]
    fn thin_trivial_group() {
        let s = thin_abelian(alloc::vec![1]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn collapse_is_surjective() {
        let s = Arc::new(kernel_scheme(2, 2).unwrap());
        let m = collapse(s).unwrap();
        assert!(m.is_surjective());
        assert_eq!(m.target().rank(), 2);
    }
}
