//! Finite association schemes and their Bose–Mesner algebras.
//!
//! A [`Scheme`] is a surjective coloring `R: X x X -> I`. Construction always
//! checks the axioms and tabulates the intersection numbers
//! `p_ij^k = #{z : R(x,z) = i, R(z,y) = j}` for `R(x,y) = k`, which is all the
//! algebra needs afterwards: convolution, valencies and commutativity are
//! read off the table.
//!
//! Convolution carries the `1/|X|` factor throughout, so the convolution
//! unit is `E_X = |X| A_{i0}` and the primitive idempotents `E_j` are `|X|`
//! times the classical ones.

mod algebra;
mod group;
mod spectral;

pub use algebra::AlgebraElement;
pub use group::AbelianGroup;
pub use spectral::{EigData, SpectralMethod};
pub(crate) use spectral::{distinct_permutations, multisets_desc};


use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use once_cell::race::OnceBox;

use crate::error::{AxiomViolation, Error, IntersectionWitness, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a constructed scheme; algebra elements remember which scheme
/// they belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchemeId(u64);

impl SchemeId {
    fn fresh() -> Self {
        SchemeId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone)]
pub(crate) enum PointNaming {
    Explicit(Vec<String>),
    Group(AbelianGroup),
    Product { base: Arc<Scheme>, s: usize },
}

/// How `R(x,y)` is evaluated.
#[derive(Debug, Clone)]
pub(crate) enum RelationMap {
    Dense(Vec<u32>),
    /// `R(x,y) = sphere[y - x]`.
    Translation { group: AbelianGroup, sphere: Vec<u32> },
    Extension(ExtensionMap),
}

#[derive(Debug, Clone)]
pub(crate) struct ExtensionMap {
    pub(crate) base: Arc<Scheme>,
    pub(crate) s: usize,
    /// Canonical (sorted) relation tuple -> relation index.
    pub(crate) orbit_of: BTreeMap<Vec<u32>, u32>,
    /// Sort key of each base relation; canonical tuples are sorted by it,
    /// descending.
    pub(crate) rank: Vec<u32>,
}

impl ExtensionMap {
    pub(crate) fn canonical(&self, tuple: &mut [u32]) {
        let rank = &self.rank;
        tuple.sort_by(|a, b| rank[*b as usize].cmp(&rank[*a as usize]));
    }

    fn split(&self, mut x: usize) -> Vec<usize> {
        let nb = self.base.len();
        let mut out = vec![0usize; self.s];
        for slot in out.iter_mut().rev() {
            *slot = x % nb;
            x /= nb;
        }
        out
    }

    fn relation(&self, x: usize, y: usize) -> usize {
        let xs = self.split(x);
        let ys = self.split(y);
        let mut tuple: Vec<u32> = xs
            .iter()
            .zip(ys.iter())
            .map(|(&a, &b)| self.base.relation(a, b) as u32)
            .collect();
        self.canonical(&mut tuple);
        self.orbit_of[&tuple] as usize
    }
}

/// Which exact structure, if any, the scheme carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    /// Only the relation table is known.
    Plain,
    /// A translation scheme on an abelian group; characters diagonalize it.
    Translation,
    /// Extension of length `s` of a commutative base scheme.
    Extension { s: usize },
}

/// A finite association scheme `(X, R, I)` with its intersection numbers.
pub struct Scheme {
    id: SchemeId,
    n_points: usize,
    naming: PointNaming,
    relations: Vec<String>,
    identity: usize,
    map: RelationMap,
    transpose: Vec<usize>,
    valency: Vec<u64>,
    intersection: Vec<u64>,
    commutative: bool,
    symmetric: bool,
    pub(crate) spectral: OnceBox<EigData>,
}

impl core::fmt::Debug for Scheme {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Scheme")
            .field("points", &self.n_points)
            .field("relations", &self.relations)
            .field("identity", &self.relations[self.identity])
            .field("commutative", &self.commutative)
            .finish()
    }
}

impl Clone for Scheme {
    fn clone(&self) -> Self {
        let spectral = OnceBox::new();
        if let Some(e) = self.spectral.get() {
            let _ = spectral.set(alloc::boxed::Box::new(e.clone()));
        }
        Scheme {
            id: self.id,
            n_points: self.n_points,
            naming: self.naming.clone(),
            relations: self.relations.clone(),
            identity: self.identity,
            map: self.map.clone(),
            transpose: self.transpose.clone(),
            valency: self.valency.clone(),
            intersection: self.intersection.clone(),
            commutative: self.commutative,
            symmetric: self.symmetric,
            spectral,
        }
    }
}

/// Tabulated structure constants found while checking the axioms.
struct Analysis {
    identity: usize,
    transpose: Vec<usize>,
    intersection: Vec<u64>,
}

/// Check the axioms for `rel` on `n` points with `r` relations, using the
/// rows `x in rows` as base points. Passing every row is the exhaustive
/// check; translation schemes only need row 0.
fn analyze(
    n: usize,
    labels: &[String],
    rel: &dyn Fn(usize, usize) -> usize,
    rows: &[usize],
) -> core::result::Result<Analysis, AxiomViolation> {
    let r = labels.len();
    let mut seen = vec![false; r];
    for &x in rows {
        for y in 0..n {
            seen[rel(x, y)] = true;
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(AxiomViolation::NotSurjective {
            relation: labels[i].clone(),
        });
    }

    let identity = rel(0, 0);
    for &x in rows {
        let d = rel(x, x);
        if d != identity {
            return Err(AxiomViolation::DiagonalNotConstant {
                x,
                found: labels[d].clone(),
                identity: labels[identity].clone(),
            });
        }
        for y in 0..n {
            if y != x && rel(x, y) == identity {
                return Err(AxiomViolation::IdentityOffDiagonal {
                    x,
                    y,
                    identity: labels[identity].clone(),
                });
            }
        }
    }

    let mut transpose: Vec<Option<usize>> = vec![None; r];
    for &x in rows {
        for y in 0..n {
            let i = rel(x, y);
            let t = rel(y, x);
            match transpose[i] {
                None => transpose[i] = Some(t),
                Some(e) if e != t => {
                    return Err(AxiomViolation::TransposeNotClosed {
                        x,
                        y,
                        relation: labels[i].clone(),
                        expected: labels[e].clone(),
                        found: labels[t].clone(),
                    })
                }
                _ => {}
            }
        }
    }
    let transpose: Vec<usize> = transpose.into_iter().map(|t| t.unwrap()).collect();
    for i in 0..r {
        if transpose[transpose[i]] != i {
            // A pair (x,y) in i with (y,x) in i* and (x,y) reversed in a
            // different class; locate a witness.
            for &x in rows {
                for y in 0..n {
                    if rel(x, y) == transpose[i] {
                        return Err(AxiomViolation::TransposeNotClosed {
                            x,
                            y,
                            relation: labels[transpose[i]].clone(),
                            expected: labels[transpose[transpose[i]]].clone(),
                            found: labels[i].clone(),
                        });
                    }
                }
            }
        }
    }

    // Intersection numbers from the first base pair of each relation,
    // compared against every other pair in the checked rows.
    let mut base: Vec<Option<(usize, usize)>> = vec![None; r];
    let mut table = vec![0u64; r * r * r];
    let mut counts = vec![0u64; r * r];
    for &x in rows {
        for y in 0..n {
            let k = rel(x, y);
            counts.iter_mut().for_each(|c| *c = 0);
            for z in 0..n {
                counts[rel(x, z) * r + rel(z, y)] += 1;
            }
            match base[k] {
                None => {
                    base[k] = Some((x, y));
                    for ij in 0..r * r {
                        table[ij * r + k] = counts[ij];
                    }
                }
                Some((bx, by)) => {
                    for ij in 0..r * r {
                        if table[ij * r + k] != counts[ij] {
                            let (i, j) = (ij / r, ij % r);
                            let z = (0..n)
                                .find(|&z| rel(x, z) == i && rel(z, y) == j)
                                .or_else(|| (0..n).find(|&z| rel(bx, z) == i && rel(z, by) == j))
                                .unwrap_or(0);
                            return Err(AxiomViolation::IntersectionInconsistent(Box::new(IntersectionWitness {
                                i: labels[i].clone(),
                                j: labels[j].clone(),
                                k: labels[k].clone(),
                                bx,
                                by,
                                x,
                                y,
                                z,
                                expected: table[ij * r + k],
                                found: counts[ij],
                            })));
                        }
                    }
                }
            }
        }
    }
    Ok(Analysis {
        identity,
        transpose,
        intersection: table,
    })
}

impl Scheme {
    /// Build a scheme from an explicit relation table, checking every axiom
    /// exhaustively.
    ///
    /// `map` is row-major, `map[x * n + y]` being the index of `R(x,y)` in
    /// `relations`. If `identity` is given it must name the diagonal
    /// relation.
    pub fn from_relation_map(
        points: Vec<String>,
        relations: Vec<String>,
        identity: Option<&str>,
        map: Vec<u32>,
    ) -> Result<Scheme> {
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyPointSet);
        }
        if map.len() != n * n {
            return Err(Error::MapShape {
                expected: n * n,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&i| i as usize >= relations.len()) {
            return Err(Error::InvalidInput(alloc::format!(
                "relation index {bad} out of range"
            )));
        }
        let scheme = Self::assemble(
            PointNaming::Explicit(points),
            n,
            relations,
            RelationMap::Dense(map),
            None,
        )?;
        if let Some(id) = identity {
            if scheme.relations[scheme.identity] != id {
                return Err(Error::InvalidInput(alloc::format!(
                    "declared identity `{id}` is not the diagonal relation `{}`",
                    scheme.relations[scheme.identity]
                )));
            }
        }
        Ok(scheme)
    }

    /// Assemble from parts. `intersection` may be supplied by constructions
    /// that know it from structure (extensions); otherwise it is computed
    /// and the axioms are checked.
    pub(crate) fn assemble(
        naming: PointNaming,
        n: usize,
        relations: Vec<String>,
        map: RelationMap,
        known: Option<(usize, Vec<usize>, Vec<u64>)>,
    ) -> Result<Scheme> {
        if n == 0 {
            return Err(Error::EmptyPointSet);
        }
        let analysis = match known {
            Some((identity, transpose, intersection)) => Analysis {
                identity,
                transpose,
                intersection,
            },
            None => {
                let rows: Vec<usize> = match &map {
                    RelationMap::Translation { .. } => vec![0],
                    _ => (0..n).collect(),
                };
                let rel = |x: usize, y: usize| Self::eval(&map, n, x, y);
                analyze(n, &relations, &rel, &rows)?
            }
        };
        let r = relations.len();
        let p = &analysis.intersection;
        let valency: Vec<u64> = (0..r)
            .map(|i| p[(i * r + analysis.transpose[i]) * r + analysis.identity])
            .collect();
        let mut commutative = true;
        'outer: for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if p[(i * r + j) * r + k] != p[(j * r + i) * r + k] {
                        commutative = false;
                        break 'outer;
                    }
                }
            }
        }
        let symmetric = (0..r).all(|i| analysis.transpose[i] == i);
        Ok(Scheme {
            id: SchemeId::fresh(),
            n_points: n,
            naming,
            relations,
            identity: analysis.identity,
            map,
            transpose: analysis.transpose,
            valency,
            intersection: analysis.intersection,
            commutative,
            symmetric,
            spectral: OnceBox::new(),
        })
    }

    fn eval(map: &RelationMap, n: usize, x: usize, y: usize) -> usize {
        match map {
            RelationMap::Dense(m) => m[x * n + y] as usize,
            RelationMap::Translation { group, sphere } => sphere[group.sub(y, x)] as usize,
            RelationMap::Extension(e) => e.relation(x, y),
        }
    }

    pub fn id(&self) -> SchemeId {
        self.id
    }

    /// `|X|`.
    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    /// `|I|`.
    pub fn rank(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_labels(&self) -> &[String] {
        &self.relations
    }

    pub fn relation_index(&self, label: &str) -> Option<usize> {
        self.relations.iter().position(|l| l == label)
    }

    /// Index of the identity relation `i0`.
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// `R(x,y)`.
    pub fn relation(&self, x: usize, y: usize) -> usize {
        Self::eval(&self.map, self.n_points, x, y)
    }

    pub fn point_label(&self, x: usize) -> String {
        match &self.naming {
            PointNaming::Explicit(v) => v[x].clone(),
            PointNaming::Group(g) => g.label(x),
            PointNaming::Product { base, s } => {
                let nb = base.len();
                let mut parts = vec![String::new(); *s];
                let mut rest = x;
                for slot in parts.iter_mut().rev() {
                    *slot = base.point_label(rest % nb);
                    rest /= nb;
                }
                parts.join(",")
            }
        }
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        match &self.naming {
            PointNaming::Explicit(v) => v.iter().position(|l| l == label),
            PointNaming::Group(g) => g.parse_label(label),
            PointNaming::Product { base, s } => {
                let parts: Vec<&str> = label.split(',').map(|p| p.trim()).collect();
                if parts.len() != *s {
                    return None;
                }
                parts.iter().try_fold(0usize, |acc, p| {
                    Some(acc * base.len() + base.point_index(p)?)
                })
            }
        }
    }

    /// Index of `i*`, the relation of the transposed pairs.
    pub fn transpose(&self, i: usize) -> usize {
        self.transpose[i]
    }

    /// Valency `k_i`, the number of `y` with `R(x,y) = i`.
    pub fn valency(&self, i: usize) -> u64 {
        self.valency[i]
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valency
    }

    /// Intersection number `p_ij^k`.
    pub fn intersection_number(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.rank();
        self.intersection[(i * r + j) * r + k]
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn structure(&self) -> Structure {
        match &self.map {
            RelationMap::Dense(_) => Structure::Plain,
            RelationMap::Translation { .. } => Structure::Translation,
            RelationMap::Extension(e) => Structure::Extension { s: e.s },
        }
    }

    pub(crate) fn translation_data(&self) -> Option<(&AbelianGroup, &[u32])> {
        match &self.map {
            RelationMap::Translation { group, sphere } => Some((group, sphere)),
            _ => None,
        }
    }

    pub(crate) fn extension_data(&self) -> Option<&ExtensionMap> {
        match &self.map {
            RelationMap::Extension(e) => Some(e),
            _ => None,
        }
    }

    /// Row-major table of relation indices. Materializes the whole map.
    pub fn relation_table(&self) -> Vec<u32> {
        let n = self.n_points;
        let mut out = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                out.push(self.relation(x, y) as u32);
            }
        }
        out
    }

    /// Re-run the exhaustive axiom check over every pair and compare the
    /// intersection numbers with the stored table. Cost `O(|X|^3)`.
    pub fn verify_exhaustive(&self) -> core::result::Result<(), AxiomViolation> {
        let n = self.n_points;
        let rows: Vec<usize> = (0..n).collect();
        let rel = |x: usize, y: usize| self.relation(x, y);
        let a = analyze(n, &self.relations, &rel, &rows)?;
        let r = self.rank();
        for idx in 0..r * r * r {
            if a.intersection[idx] != self.intersection[idx] {
                let k = idx % r;
                let ij = idx / r;
                return Err(AxiomViolation::IntersectionInconsistent(Box::new(IntersectionWitness {
                    i: self.relations[ij / r].clone(),
                    j: self.relations[ij % r].clone(),
                    k: self.relations[k].clone(),
                    bx: 0,
                    by: 0,
                    x: 0,
                    y: 0,
                    z: 0,
                    expected: self.intersection[idx],
                    found: a.intersection[idx],
                })));
            }
        }
        Ok(())
    }

    /// Spectral data, computed on first use with [`SpectralMethod::Auto`]
    /// and seed 0, then cached.
    pub fn spectral_data(&self) -> Result<&EigData> {
        if let Some(e) = self.spectral.get() {
            return Ok(e);
        }
        let computed = self.spectral_data_with(SpectralMethod::Auto, 0)?;
        Ok(self.spectral.get_or_init(|| alloc::boxed::Box::new(computed)))
    }

    /// Install precomputed spectral data (closed forms).
    pub(crate) fn seed_spectral(&self, e: EigData) {
        let _ = self.spectral.set(alloc::boxed::Box::new(e));
    }

    pub fn spectral_data_with(&self, method: SpectralMethod, seed: u64) -> Result<EigData> {
        spectral::compute(self, method, seed)
    }
}

/// Check the axioms on an explicit relation table (see
/// [`Scheme::from_relation_map`]).
pub fn verify_scheme(
    points: Vec<String>,
    relations: Vec<String>,
    map: Vec<u32>,
) -> Result<Scheme> {
    Scheme::from_relation_map(points, relations, None, map)
}
