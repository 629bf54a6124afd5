//! Schurian schemes: orbitals of a transitive permutation group.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scheme::Scheme;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// The scheme of orbits of `<generators>` on `X x X`, for a transitive
/// action on `n` points (`gen[x]` is the image of `x`).
///
/// Points are labeled `1..n`. The diagonal orbital is `id`; the others are
/// `o1, o2, ...` in the order of their first pair `(0, y)`.
pub fn schurian_scheme(n: usize, generators: &[Vec<usize>]) -> Result<Scheme> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    for g in generators {
        let mut seen = vec![false; n];
        if g.len() != n || g.iter().any(|&y| y >= n || core::mem::replace(&mut seen[y], true)) {
            return Err(Error::InvalidInput("generator is not a permutation of the points".into()));
        }
    }
    let mut pts: Vec<usize> = (0..n).collect();
    for g in generators {
        for x in 0..n {
            union(&mut pts, x, g[x]);
        }
    }
    if (0..n).any(|x| find(&mut pts, x) != 0) {
        return Err(Error::InvalidInput("action is not transitive".into()));
    }
    let mut pairs: Vec<usize> = (0..n * n).collect();
    for g in generators {
        for x in 0..n {
            for y in 0..n {
                union(&mut pairs, x * n + y, g[x] * n + g[y]);
            }
        }
    }
    // Every orbital meets row 0 by transitivity.
    let mut class_of_root = alloc::collections::BTreeMap::new();
    for y in 0..n {
        let root = find(&mut pairs, y);
        let next = class_of_root.len() as u32;
        class_of_root.entry(root).or_insert(next);
    }
    let mut relations: Vec<String> = vec![String::from("id")];
    relations.extend((1..class_of_root.len()).map(|k| alloc::format!("o{k}")));
    let map = (0..n * n)
        .map(|p| class_of_root[&find(&mut pairs, p)])
        .collect();
    let points = (1..=n).map(|x| alloc::format!("{x}")).collect();
    Scheme::from_relation_map(points, relations, Some("id"), map)
}

/// Parse a permutation of `1..=n` in cycle notation, e.g. `(1 2 3)(4 5)`;
/// commas may separate entries. The result is 0-based.
pub fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rest = text.trim();
    let mut moved = vec![false; n];
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidInput(alloc::format!("expected `(` in `{text}`")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::InvalidInput(alloc::format!("unclosed cycle in `{text}`")))?;
        let cycle: Vec<usize> = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| match p.parse::<usize>() {
                Ok(x) if x >= 1 && x <= n => Ok(x - 1),
                _ => Err(Error::InvalidInput(alloc::format!("bad point `{p}` in `{text}`"))),
            })
            .collect::<Result<_>>()?;
        for &x in &cycle {
            if core::mem::replace(&mut moved[x], true) {
                return Err(Error::InvalidInput(alloc::format!("point {} repeated in `{text}`", x + 1)));
            }
        }
        for k in 0..cycle.len() {
            perm[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_on_three_points() {
        let gens = [parse_cycles("(1 2 3)", 3).unwrap(), parse_cycles("(1 2)", 3).unwrap()];
        let s = schurian_scheme(3, &gens).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(s.is_commutative());
    }

    #[test]
    fn d4_on_square() {
        let gens = [parse_cycles("(1 2 3 4)", 4).unwrap(), parse_cycles("(2 4)", 4).unwrap()];
        let s = schurian_scheme(4, &gens).unwrap();
        assert_eq!(s.rank(), 3);
        assert!(s.is_commutative());
    }

    #[test]
    fn intransitive_refused() {
        let gens = [parse_cycles("(1 2)", 4).unwrap()];
        assert!(schurian_scheme(4, &gens).is_err());
    }

    #[test]
    fn cycle_syntax() {
        assert_eq!(parse_cycles("(1,3)(2)", 3).unwrap(), vec![2, 1, 0]);
        assert_eq!(parse_cycles("", 2).unwrap(), vec![0, 1]);
        assert!(parse_cycles("(1 1)", 2).is_err());
        assert!(parse_cycles("(1 5)", 2).is_err());
    }
}
