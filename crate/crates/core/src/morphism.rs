//! Morphisms of association schemes, the pullback `Psi` on Bose–Mesner
//! algebras, and the functor `J` to partial surjections between sets of
//! primitive idempotents.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::arith::{Rational, Scalar, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::scheme::{AlgebraElement, Scheme};

/// A pair `(f, g)` with `g(R(x,y)) = R'(f(x), f(y))` for all `x, y`.
#[derive(Debug, Clone)]
pub struct SchemeMorphism {
    source: Arc<Scheme>,
    target: Arc<Scheme>,
    f: Vec<usize>,
    g: Vec<usize>,
    surjective: bool,
}

/// Check that `(f, g)` is a morphism `source -> target`.
///
/// `f` maps point indices, `g` relation indices. When `f` is onto, every
/// fiber must have `|X| / |X'|` points; a violation means the inputs are
/// inconsistent, since a commuting square forces equal fibers.
pub fn verify_morphism(
    source: Arc<Scheme>,
    target: Arc<Scheme>,
    f: Vec<usize>,
    g: Vec<usize>,
) -> Result<SchemeMorphism> {
    if f.len() != source.len() {
        return Err(Error::InvalidInput(alloc::format!(
            "f has {} entries for {} points",
            f.len(),
            source.len()
        )));
    }
    if g.len() != source.rank() {
        return Err(Error::InvalidInput(alloc::format!(
            "g has {} entries for {} relations",
            g.len(),
            source.rank()
        )));
    }
    if let Some(x) = f.iter().position(|&y| y >= target.len()) {
        return Err(Error::InvalidInput(alloc::format!(
            "f({}) = {} is not a target point",
            source.point_label(x),
            f[x]
        )));
    }
    if let Some(i) = g.iter().position(|&k| k >= target.rank()) {
        return Err(Error::InvalidInput(alloc::format!(
            "g({}) is not a target relation",
            source.relation_labels()[i]
        )));
    }
    for x in 0..source.len() {
        for y in 0..source.len() {
            let left = g[source.relation(x, y)];
            let right = target.relation(f[x], f[y]);
            if left != right {
                return Err(Error::MorphismNotCommuting {
                    x,
                    y,
                    left: target.relation_labels()[left].clone(),
                    right: target.relation_labels()[right].clone(),
                });
            }
        }
    }
    let mut fiber = vec![0usize; target.len()];
    for &y in &f {
        fiber[y] += 1;
    }
    let surjective = fiber.iter().all(|&c| c > 0);
    if surjective {
        let expect = source.len() / target.len();
        if !source.len().is_multiple_of(target.len()) || fiber.iter().any(|&c| c != expect) {
            return Err(Error::MorphismInconsistent(alloc::format!(
                "surjective f has fibers of sizes {:?}",
                fiber
            )));
        }
    }
    Ok(SchemeMorphism {
        source,
        target,
        f,
        g,
        surjective,
    })
}

impl SchemeMorphism {
    pub fn source(&self) -> &Arc<Scheme> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Scheme> {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.f
    }

    pub fn relation_map(&self) -> &[usize] {
        &self.g
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Common fiber size `|X| / |X'|` of a surjective morphism.
    pub fn fiber_size(&self) -> Option<usize> {
        self.surjective.then(|| self.source.len() / self.target.len())
    }

    /// The identity morphism of `scheme`.
    pub fn identity(scheme: Arc<Scheme>) -> SchemeMorphism {
        let f = (0..scheme.len()).collect();
        let g = (0..scheme.rank()).collect();
        SchemeMorphism {
            target: scheme.clone(),
            source: scheme,
            f,
            g,
            surjective: true,
        }
    }

    /// `next . self`, for `self: X -> X'` and `next: X' -> X''`.
    pub fn then(&self, next: &SchemeMorphism) -> Result<SchemeMorphism> {
        if self.target.id() != next.source.id() {
            return Err(Error::SchemeMismatch);
        }
        Ok(SchemeMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            f: self.f.iter().map(|&y| next.f[y]).collect(),
            g: self.g.iter().map(|&i| next.g[i]).collect(),
            surjective: self.surjective && next.surjective,
        })
    }

    /// `Psi(a)`: pull an element of the target algebra back along `g`, so
    /// that `Psi(A)(x,z) = A(f(x), f(z))`.
    pub fn psi(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.scheme_id() != self.target.id() {
            return Err(Error::SchemeMismatch);
        }
        AlgebraElement::new(
            &self.source,
            self.g.iter().map(|&k| a.coeff(k).clone()).collect(),
        )
    }
}

/// A partial function between finite labeled sets, with a record of
/// whether it is onto.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSurjection {
    source: Vec<String>,
    target: Vec<String>,
    map: Vec<Option<usize>>,
    surjective: bool,
}

impl PartialSurjection {
    pub fn new(source: Vec<String>, target: Vec<String>, map: Vec<Option<usize>>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::InvalidInput("partial map length differs from its source".into()));
        }
        if map.iter().flatten().any(|&t| t >= target.len()) {
            return Err(Error::InvalidInput("partial map value outside its target".into()));
        }
        let mut hit = vec![false; target.len()];
        for &t in map.iter().flatten() {
            hit[t] = true;
        }
        let surjective = hit.into_iter().all(|h| h);
        Ok(PartialSurjection {
            source,
            target,
            map,
            surjective,
        })
    }

    /// Identity on `labels`.
    pub fn identity(labels: Vec<String>) -> Self {
        let map = (0..labels.len()).map(Some).collect();
        PartialSurjection {
            target: labels.clone(),
            source: labels,
            map,
            surjective: true,
        }
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn get(&self, j: usize) -> Option<usize> {
        self.map[j]
    }

    pub fn map(&self) -> &[Option<usize>] {
        &self.map
    }

    /// Source indices on which the map is defined.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&j| self.map[j].is_some()).collect()
    }

    pub fn preimage(&self, t: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&j| self.map[j] == Some(t)).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }
}

/// `q . p`: defined on `p^{-1}(dom q)`. Requires `p.target = q.source`.
pub fn compose_partial(p: &PartialSurjection, q: &PartialSurjection) -> Result<PartialSurjection> {
    if p.target != q.source {
        return Err(Error::SetMismatch(alloc::format!(
            "target {:?} is not source {:?}",
            p.target,
            q.source
        )));
    }
    let map = p.map.iter().map(|m| m.and_then(|t| q.map[t])).collect();
    PartialSurjection::new(p.source.clone(), q.target.clone(), map)
}

/// The induced partial surjection `J(source) -> J(target)`.
///
/// Each `Psi(E_{j'})` is split into primitive idempotents of the source by
/// the pairing `<A, B> = (1/|X|) sum_i k_i a_i conj(b_i)`: the summands are
/// exactly the `E_j` whose pairing equals `m_j`, every other pairing must
/// vanish, and the summands must add back up to `Psi(E_{j'})`.
pub fn functor_j(m: &SchemeMorphism) -> Result<PartialSurjection> {
    if !m.surjective {
        return Err(Error::NotSurjective);
    }
    let (src, tgt) = (&m.source, &m.target);
    if !src.is_commutative() || !tgt.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let es = src.spectral_data()?;
    let et = tgt.spectral_data()?;
    let n = src.len() as i64;
    let r = src.rank();
    let weights: Vec<Rational> = (0..r)
        .map(|i| Rational::new((src.valency(i) as i64).into(), n.into()))
        .collect();
    let mut map: Vec<Option<usize>> = vec![None; es.len()];
    for jt in 0..et.len() {
        let pulled: Vec<Scalar> = m.g.iter().map(|&k| et.q(jt, k).clone()).collect();
        let mut members = Vec::new();
        for j in 0..es.len() {
            let pairing: Scalar = (0..r)
                .map(|i| (&pulled[i] * &es.q(j, i).conj()).scale(&weights[i]))
                .sum();
            let mj = es.multiplicity(j) as f64;
            let tol = DEFAULT_TOLERANCE * mj;
            if pairing.is_zero_within(tol) {
                continue;
            }
            if pairing.eq_within(&Scalar::from_integer(es.multiplicity(j) as i64), tol)
                && is_exact_or_close(&pairing, es.multiplicity(j))
            {
                if let Some(prev) = map[j] {
                    return Err(Error::Decomposition(alloc::format!(
                        "E_{} occurs under both {} and {}",
                        es.labels()[j],
                        et.labels()[prev],
                        et.labels()[jt]
                    )));
                }
                map[j] = Some(jt);
                members.push(j);
            } else {
                return Err(Error::Decomposition(alloc::format!(
                    "pairing of Psi(E_{}) with E_{} is {} (neither 0 nor m = {})",
                    et.labels()[jt],
                    es.labels()[j],
                    pairing,
                    es.multiplicity(j)
                )));
            }
        }
        if members.is_empty() {
            return Err(Error::Decomposition(alloc::format!(
                "Psi(E_{}) contains no primitive idempotent",
                et.labels()[jt]
            )));
        }
        // The summands must reproduce Psi(E_{j'}).
        for i in 0..r {
            let s: Scalar = members.iter().map(|&j| es.q(j, i).clone()).sum();
            let ok = match (&s, &pulled[i]) {
                (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
                _ => s.eq_within(&pulled[i], DEFAULT_TOLERANCE * (src.len() as f64)),
            };
            if !ok {
                return Err(Error::Decomposition(alloc::format!(
                    "Psi(E_{}) is not the sum of its primitive summands",
                    et.labels()[jt]
                )));
            }
        }
        let rank: u64 = members.iter().map(|&j| es.multiplicity(j)).sum();
        let pulled_rank = pulled[src.identity()].clone();
        let expect = Scalar::from_integer(rank as i64);
        if !pulled_rank.eq_within(&expect, DEFAULT_TOLERANCE * rank as f64) {
            return Err(Error::Decomposition("trace additivity fails".into()));
        }
    }
    PartialSurjection::new(es.labels().to_vec(), et.labels().to_vec(), map)
}

fn is_exact_or_close(pairing: &Scalar, m: u64) -> bool {
    match pairing.as_rational() {
        Some(r) => r.is_integer() && r.to_integer().to_u64() == Some(m),
        None => !pairing.is_exact(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| String::from(*s)).collect()
    }

    #[test]
    fn compose_with_identity_is_unchanged() {
        let p = PartialSurjection::new(labels(&["a", "b", "c"]), labels(&["x", "y"]), vec![Some(0), None, Some(1)])
            .unwrap();
        let id = PartialSurjection::identity(labels(&["x", "y"]));
        assert_eq!(compose_partial(&p, &id).unwrap(), p);
        let id0 = PartialSurjection::identity(labels(&["a", "b", "c"]));
        assert_eq!(compose_partial(&id0, &p).unwrap(), p);
    }

    #[test]
    fn empty_domain_composes_to_empty_domain() {
        let p = PartialSurjection::new(labels(&["a"]), labels(&["x"]), vec![None]).unwrap();
        assert!(!p.is_surjective());
        let q = PartialSurjection::identity(labels(&["x"]));
        let c = compose_partial(&p, &q).unwrap();
        assert!(c.domain().is_empty());
        assert!(!c.is_surjective());
    }

    #[test]
    fn mismatched_sets_refused() {
        let p = PartialSurjection::identity(labels(&["a"]));
        let q = PartialSurjection::identity(labels(&["b"]));
        assert!(matches!(compose_partial(&p, &q), Err(Error::SetMismatch(_))));
    }
}
