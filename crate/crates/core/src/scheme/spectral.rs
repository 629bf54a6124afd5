//! Primitive idempotents and eigenmatrices of commutative schemes.
//!
//! Conventions: `A_i . E_j = p_i(j) E_j` under the normalized convolution,
//! `E_j = sum_i q_j(i) A_i`, so `q_j(i)` is the value of `E_j` on any pair
//! in relation `i` and `q_j(i0) = m_j`. The two tables determine each other
//! through `p_i(j) = k_i conj(q_j(i)) / (|X| m_j)`.
//!
//! Three routes produce [`EigData`]:
//! - characters, for translation schemes (exact, cyclotomic);
//! - tensor sums, for extensions of length `s` (exact whenever the base is);
//! - a seeded floating diagonalization for everything else, followed by an
//!   attempt to round `p_i(j)` to rationals with denominator `|X|` and
//!   re-verify exactly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraElement, Scheme, SchemeId};
use crate::arith::{int, Cyclotomic, Rational, Scalar, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

/// Retries of the randomized diagonalization after the first draw.
const MAX_RETRIES: u64 = 8;

/// Which route [`Scheme::spectral_data_with`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMethod {
    /// Characters for translation schemes, tensors for extensions, numeric
    /// otherwise.
    Auto,
    Characters,
    Tensor,
    Numeric,
}

/// Spectral data of a commutative scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct EigData {
    scheme: SchemeId,
    n_points: u64,
    labels: Vec<String>,
    j0: usize,
    /// `p[i][j]`
    p: Vec<Vec<Scalar>>,
    /// `q[j][i]`
    q: Vec<Vec<Scalar>>,
    m: Vec<u64>,
    k: Vec<u64>,
}

impl EigData {
    /// Assemble from explicit tables. `p` is indexed `[i][j]`, `q` `[j][i]`.
    pub fn from_tables(
        scheme: &Scheme,
        labels: Vec<String>,
        j0: usize,
        p: Vec<Vec<Scalar>>,
        q: Vec<Vec<Scalar>>,
        m: Vec<u64>,
    ) -> Result<Self> {
        let r = scheme.rank();
        let nj = labels.len();
        if p.len() != r
            || p.iter().any(|row| row.len() != nj)
            || q.len() != nj
            || q.iter().any(|row| row.len() != r)
            || m.len() != nj
            || j0 >= nj
        {
            return Err(Error::InvalidInput("eigen table shapes disagree".into()));
        }
        Ok(EigData {
            scheme: scheme.id(),
            n_points: scheme.len() as u64,
            labels,
            j0,
            p,
            q,
            m,
            k: scheme.valencies().to_vec(),
        })
    }

    /// Assemble from the dual values `q_j(i)` alone; `m_j = q_j(i0)` and
    /// `p` follows from the orthogonality relation.
    pub fn from_dual_values(
        scheme: &Scheme,
        labels: Vec<String>,
        j0: usize,
        q: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let i0 = scheme.identity();
        let m = q
            .iter()
            .map(|row| multiplicity_of(&row[i0]))
            .collect::<Result<Vec<u64>>>()?;
        let p = p_from_q(scheme, &q, &m);
        Self::from_tables(scheme, labels, j0, p, q, m)
    }

    pub fn scheme_id(&self) -> SchemeId {
        self.scheme
    }

    /// `|J|`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of `j0`, the idempotent equal to the all-ones matrix.
    pub fn trivial(&self) -> usize {
        self.j0
    }

    pub fn n_points(&self) -> u64 {
        self.n_points
    }

    /// `p_i(j)`.
    pub fn p(&self, i: usize, j: usize) -> &Scalar {
        &self.p[i][j]
    }

    /// `q_j(i)`, the value of `E_j` on relation `i`.
    pub fn q(&self, j: usize, i: usize) -> &Scalar {
        &self.q[j][i]
    }

    pub fn p_table(&self) -> &[Vec<Scalar>] {
        &self.p
    }

    pub fn q_table(&self) -> &[Vec<Scalar>] {
        &self.q
    }

    /// `m_j`, the rank of `E_j`.
    pub fn multiplicity(&self, j: usize) -> u64 {
        self.m[j]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.m
    }

    pub fn valency(&self, i: usize) -> u64 {
        self.k[i]
    }

    pub fn valencies(&self) -> &[u64] {
        &self.k
    }

    pub fn is_exact(&self) -> bool {
        self.p.iter().chain(self.q.iter()).flatten().all(Scalar::is_exact)
    }

    /// `E_j` as an algebra element.
    pub fn projector(&self, j: usize) -> AlgebraElement {
        AlgebraElement::from_parts(self.scheme, self.q[j].clone())
    }

    /// Values `p_i(j)` for fixed `j`, i.e. the eigenvalue vector of class `j`.
    pub fn eigenvalue_vector(&self, j: usize) -> Vec<Scalar> {
        self.p.iter().map(|row| row[j].clone()).collect()
    }

    /// Rename the idempotent classes.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::InvalidInput("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Match the idempotents of `other` (same scheme) to those of `self`:
    /// returns `perm` with `self` class `j` equal to `other` class `perm[j]`,
    /// comparing `q` and `m` exactly on exact data and to `tol` otherwise.
    pub fn match_classes(&self, other: &EigData, tol: f64) -> Option<Vec<usize>> {
        if self.scheme != other.scheme || self.len() != other.len() {
            return None;
        }
        let same = |a: &Scalar, b: &Scalar| match (a, b) {
            (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
            _ => a.eq_within(b, tol),
        };
        let mut used = vec![false; other.len()];
        let mut perm = Vec::with_capacity(self.len());
        for j in 0..self.len() {
            let hit = (0..other.len()).find(|&k| {
                !used[k]
                    && self.m[j] == other.m[k]
                    && self.q[j].iter().zip(other.q[k].iter()).all(|(a, b)| same(a, b))
                    && (0..self.p.len()).all(|i| same(&self.p[i][j], &other.p[i][k]))
            })?;
            used[hit] = true;
            perm.push(hit);
        }
        Some(perm)
    }

    /// Check every spectral identity: multiplicity and valency sums, the
    /// idempotent laws under the normalized convolution, `sum_j E_j = E_X`,
    /// `E_{j0} = J_X`, `A_i = sum_j p_i(j) E_j`, and both orthogonality
    /// relations. Exact on exact data, tolerance `tol` otherwise.
    pub fn check_invariants(&self, scheme: &Scheme, tol: f64) -> Result<()> {
        if scheme.id() != self.scheme {
            return Err(Error::SchemeMismatch);
        }
        let n = scheme.len() as u64;
        let r = scheme.rank();
        let nj = self.len();
        let fail = |what: String| Err(Error::Tolerance(what));
        if self.m.iter().sum::<u64>() != n {
            return fail(alloc::format!("multiplicities sum to {} != {n}", self.m.iter().sum::<u64>()));
        }
        if self.k.iter().sum::<u64>() != n {
            return fail("valencies do not sum to |X|".into());
        }
        if nj != r {
            return fail(alloc::format!("|J| = {nj} but |I| = {r}"));
        }
        let close = |a: &Scalar, b: &Scalar| -> bool {
            match (a, b) {
                (Scalar::Exact(x), Scalar::Exact(y)) => x == y,
                _ => {
                    let (x, y) = (a.to_complex(), b.to_complex());
                    (x - y).norm() <= tol * y.norm().max(1.0)
                }
            }
        };
        // Idempotent laws.
        for j in 0..nj {
            let ej = self.projector(j);
            for j2 in j..nj {
                let prod = scheme.convolve(&ej, &self.projector(j2))?;
                let expect = if j == j2 { ej.clone() } else { AlgebraElement::zero(scheme) };
                for i in 0..r {
                    if !close(prod.coeff(i), expect.coeff(i)) {
                        return fail(alloc::format!(
                            "E_{} . E_{} differs at relation {}",
                            self.labels[j], self.labels[j2], scheme.relation_labels()[i]
                        ));
                    }
                }
            }
        }
        // Sum of idempotents and the trivial one.
        let unit = AlgebraElement::convolution_unit(scheme);
        for i in 0..r {
            let s: Scalar = (0..nj).map(|j| self.q[j][i].clone()).sum();
            if !close(&s, unit.coeff(i)) {
                return fail("sum of idempotents is not E_X".into());
            }
            if !close(&self.q[self.j0][i], &Scalar::one()) {
                return fail("E_j0 is not the all-ones matrix".into());
            }
        }
        // A_i = sum_j p_i(j) E_j.
        for i in 0..r {
            for i2 in 0..r {
                let s: Scalar = (0..nj).map(|j| &self.p[i][j] * &self.q[j][i2]).sum();
                let expect = Scalar::from_integer((i == i2) as i64);
                if !close(&s, &expect) {
                    return fail(alloc::format!(
                        "A_{} is not sum_j p(j) E_j",
                        scheme.relation_labels()[i]
                    ));
                }
            }
        }
        // Row orthogonality: sum_j p_i(j) conj p_i'(j) m_j = delta k_i / |X|.
        for i in 0..r {
            for i2 in 0..r {
                let s: Scalar = (0..nj)
                    .map(|j| (&self.p[i][j] * &self.p[i2][j].conj()).scale(&int(self.m[j] as i64)))
                    .sum();
                let expect = if i == i2 {
                    Scalar::from_rational(Rational::new(
                        (self.k[i] as i64).into(),
                        (n as i64).into(),
                    ))
                } else {
                    Scalar::zero()
                };
                if !close(&s, &expect) {
                    return fail("row orthogonality fails".into());
                }
            }
        }
        // Column orthogonality: sum_i q_j(i) conj q_j'(i) k_i / |X| = delta m_j.
        for j in 0..nj {
            for j2 in 0..nj {
                let s: Scalar = (0..r)
                    .map(|i| {
                        (&self.q[j][i] * &self.q[j2][i].conj())
                            .scale(&Rational::new((self.k[i] as i64).into(), (n as i64).into()))
                    })
                    .sum();
                let expect = Scalar::from_integer(if j == j2 { self.m[j] as i64 } else { 0 });
                if !close(&s, &expect) {
                    return fail("column orthogonality fails".into());
                }
            }
        }
        Ok(())
    }
}

fn multiplicity_of(v: &Scalar) -> Result<u64> {
    match v.as_rational() {
        Some(r) if r.is_integer() && r.is_positive() => Ok(r.to_integer().to_u64().unwrap()),
        Some(r) => Err(Error::Tolerance(alloc::format!("multiplicity {r} is not a positive integer"))),
        None => {
            let z = v.to_complex();
            let m = libm::round(z.re);
            if m >= 1.0 && (z - Complex64::new(m, 0.0)).norm() <= 1e-6 {
                Ok(m as u64)
            } else {
                Err(Error::Tolerance(alloc::format!("multiplicity {z} is not a positive integer")))
            }
        }
    }
}

fn p_from_q(scheme: &Scheme, q: &[Vec<Scalar>], m: &[u64]) -> Vec<Vec<Scalar>> {
    let n = scheme.len() as i64;
    (0..scheme.rank())
        .map(|i| {
            (0..q.len())
                .map(|j| {
                    let f = Rational::new(
                        (scheme.valency(i) as i64).into(),
                        (n * m[j] as i64).into(),
                    );
                    q[j][i].conj().scale(&f)
                })
                .collect()
        })
        .collect()
}

fn scalar_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x.canonical_cmp(y),
        _ => {
            let (x, y) = (a.to_complex(), b.to_complex());
            if (x - y).norm() <= DEFAULT_TOLERANCE {
                Ordering::Equal
            } else {
                x.re.partial_cmp(&y.re)
                    .unwrap_or(Ordering::Equal)
                    .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal))
            }
        }
    }
}

/// Order idempotent classes: `j0` first, then by multiplicity and the
/// eigenvalue vector, lexicographically. Returns the permutation.
pub(crate) fn sort_classes(p: &[Vec<Scalar>], m: &[u64], j0: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&a, &b| {
        (a != j0)
            .cmp(&(b != j0))
            .then(m[a].cmp(&m[b]))
            .then_with(|| {
                for row in p {
                    match scalar_cmp(&row[a], &row[b]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    });
    order
}

fn generic_labels(count: usize) -> Vec<String> {
    (0..count)
        .map(|j| if j == 0 { String::from("triv") } else { alloc::format!("j{j}") })
        .collect()
}

/// Put classes into canonical order and label them `triv, j1, j2, ...`.
fn finish_generic(scheme: &Scheme, q: Vec<Vec<Scalar>>, p: Option<Vec<Vec<Scalar>>>) -> Result<EigData> {
    let i0 = scheme.identity();
    let m = q
        .iter()
        .map(|row| multiplicity_of(&row[i0]))
        .collect::<Result<Vec<u64>>>()?;
    let p = p.unwrap_or_else(|| p_from_q(scheme, &q, &m));
    let j0 = q
        .iter()
        .position(|row| row.iter().all(|v| v.eq_within(&Scalar::one(), 1e-7)))
        .ok_or_else(|| Error::Tolerance("no idempotent equals the all-ones matrix".into()))?;
    let order = sort_classes(&p, &m, j0);
    let q2: Vec<Vec<Scalar>> = order.iter().map(|&j| q[j].clone()).collect();
    let p2: Vec<Vec<Scalar>> = p
        .iter()
        .map(|row| order.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let m2: Vec<u64> = order.iter().map(|&j| m[j]).collect();
    EigData::from_tables(scheme, generic_labels(order.len()), 0, p2, q2, m2)
}

pub(crate) fn compute(scheme: &Scheme, method: SpectralMethod, seed: u64) -> Result<EigData> {
    if !scheme.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let method = match method {
        SpectralMethod::Auto => match scheme.structure() {
            super::Structure::Translation => SpectralMethod::Characters,
            super::Structure::Extension { .. } => SpectralMethod::Tensor,
            super::Structure::Plain => SpectralMethod::Numeric,
        },
        m => m,
    };
    match method {
        SpectralMethod::Characters => by_characters(scheme),
        SpectralMethod::Tensor => by_tensor(scheme),
        SpectralMethod::Numeric => numeric_spectrum(scheme, seed),
        SpectralMethod::Auto => unreachable!(),
    }
}

/// Translation schemes: every character is a common eigenvector, with
/// eigenvalue `(1/|X|) sum_{a in S_i} xi(a)` for `A_i`; classes of characters
/// with equal eigenvalue vectors are the primitive idempotents.
fn by_characters(scheme: &Scheme) -> Result<EigData> {
    let (group, sphere) = scheme
        .translation_data()
        .ok_or_else(|| Error::InvalidInput("character route needs a translation scheme".into()))?;
    let n = group.order();
    let r = scheme.rank();
    let big_n = group.exponent();
    let weights: Vec<u64> = group
        .orders()
        .iter()
        .map(|&o| (big_n / o) as u64)
        .collect();
    let coords: Vec<Vec<u32>> = (0..n).map(|a| group.coords(a)).collect();
    let exponent = |c: &[u32], a: &[u32]| -> usize {
        let mut e = 0u64;
        for t in 0..c.len() {
            e += c[t] as u64 * a[t] as u64 * weights[t];
        }
        (e % big_n as u64) as usize
    };

    type Key = Vec<(u32, Vec<Rational>)>;
    let mut classes: BTreeMap<Key, (Vec<Cyclotomic>, Vec<usize>)> = BTreeMap::new();
    let mut hist = vec![0i64; r * big_n as usize];
    for c in 0..n {
        hist.iter_mut().for_each(|h| *h = 0);
        let cc = &coords[c];
        for a in 0..n {
            hist[sphere[a] as usize * big_n as usize + exponent(cc, &coords[a])] += 1;
        }
        let sums: Vec<Cyclotomic> = (0..r)
            .map(|i| {
                Cyclotomic::from_exponent_counts(
                    big_n,
                    &hist[i * big_n as usize..(i + 1) * big_n as usize],
                )
            })
            .collect();
        let key: Key = sums
            .iter()
            .map(|s| (s.order(), s.coordinates().to_vec()))
            .collect();
        classes.entry(key).or_insert_with(|| (sums, Vec::new())).1.push(c);
    }
    if classes.len() != r {
        return Err(Error::Decomposition(alloc::format!(
            "{} character classes for {} relations",
            classes.len(),
            r
        )));
    }

    // One representative a_i in each sphere S_i.
    let mut rep = vec![usize::MAX; r];
    for a in 0..n {
        if rep[sphere[a] as usize] == usize::MAX {
            rep[sphere[a] as usize] = a;
        }
    }
    let inv_n = Rational::new(1.into(), (n as i64).into());
    let mut q = Vec::with_capacity(r);
    let mut p_cols = Vec::with_capacity(r);
    for (_, (sums, chars)) in classes {
        // q_j(i) = E_j(x,y) = sum_{xi in class} xi(x - y), with y - x in S_i.
        let qrow: Vec<Scalar> = (0..r)
            .map(|i| {
                let mut counts = vec![0i64; big_n as usize];
                for &c in &chars {
                    let e = exponent(&coords[c], &coords[rep[i]]);
                    counts[(big_n as usize - e) % big_n as usize] += 1;
                }
                Scalar::Exact(Cyclotomic::from_exponent_counts(big_n, &counts))
            })
            .collect();
        q.push(qrow);
        p_cols.push(sums.iter().map(|s| Scalar::Exact(s.scale(&inv_n))).collect::<Vec<_>>());
    }
    let p: Vec<Vec<Scalar>> = (0..r)
        .map(|i| p_cols.iter().map(|col| col[i].clone()).collect())
        .collect();
    finish_generic(scheme, q, Some(p))
}

/// All distinct permutations of `tuple`.
pub(crate) fn distinct_permutations(tuple: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(sorted.clone());
        // next lexicographic permutation
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
    }
    out
}

/// Non-increasing tuples of length `s` over `0..count`.
pub(crate) fn multisets_desc(count: u32, s: usize) -> Vec<Vec<u32>> {
    fn rec(max: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (0..=max).rev() {
            cur.push(v);
            rec(v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if count == 0 {
        return out;
    }
    rec(count - 1, s, &mut Vec::new(), &mut out);
    out
}

/// Extensions of length `s`: `E_{jbar}` is the orbit sum of tensor products
/// `E_{j1} x ... x E_{js}`, and `A_{ibar}` acts on it by the symmetrized
/// product of base eigenvalues.
fn by_tensor(scheme: &Scheme) -> Result<EigData> {
    let ext = scheme
        .extension_data()
        .ok_or_else(|| Error::InvalidInput("tensor route needs an extension scheme".into()))?;
    let base = &ext.base;
    let be = base.spectral_data()?;
    let s = ext.s;
    let r = scheme.rank();
    // Relation orbits by index, as canonical base tuples.
    let mut i_reps = vec![Vec::new(); r];
    for (tuple, &idx) in &ext.orbit_of {
        i_reps[idx as usize] = tuple.clone();
    }
    let i_orbits: Vec<Vec<Vec<u32>>> = i_reps.iter().map(|t| distinct_permutations(t)).collect();
    // Idempotent orbits: descending tuples of base J indices.
    let j_reps = multisets_desc(be.len() as u32, s);
    let j_orbits: Vec<Vec<Vec<u32>>> = j_reps.iter().map(|t| distinct_permutations(t)).collect();

    let prod = |f: &dyn Fn(usize, usize) -> Scalar, a: &[u32], b: &[u32]| -> Scalar {
        let mut acc = Scalar::one();
        for t in 0..s {
            acc = &acc * &f(a[t] as usize, b[t] as usize);
        }
        acc
    };
    let qf = |j: usize, i: usize| be.q(j, i).clone();
    let pf = |i: usize, j: usize| be.p(i, j).clone();

    let q: Vec<Vec<Scalar>> = j_orbits
        .iter()
        .map(|jorb| {
            (0..r)
                .map(|ib| jorb.iter().map(|jt| prod(&qf, jt, &i_reps[ib])).sum())
                .collect()
        })
        .collect();
    let p: Vec<Vec<Scalar>> = (0..r)
        .map(|ib| {
            j_reps
                .iter()
                .map(|jrep| i_orbits[ib].iter().map(|it| prod(&pf, it, jrep)).sum())
                .collect()
        })
        .collect();
    let m: Vec<u64> = j_orbits
        .iter()
        .map(|jorb| {
            jorb.iter()
                .map(|jt| jt.iter().map(|&j| be.multiplicity(j as usize)).product::<u64>())
                .sum()
        })
        .collect();
    let j0t = vec![be.trivial() as u32; s];
    let j0 = j_reps
        .iter()
        .position(|t| *t == j0t)
        .ok_or_else(|| Error::Decomposition("trivial idempotent orbit missing".into()))?;
    let labels: Vec<String> = j_reps
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().map(|&j| be.labels()[j as usize].as_str()).collect();
            alloc::format!("[{}]", parts.join(","))
        })
        .collect();
    EigData::from_tables(scheme, labels, j0, p, q, m)
}

/// Seeded floating diagonalization in the regular representation.
///
/// In the orthonormal basis `A_i / sqrt(|X| k_i)` left multiplication by
/// `A_{i*}` is the transpose of left multiplication by `A_i`, so a random
/// combination `H + iK` of the Hermitian parts is Hermitian. Its real
/// `2r x 2r` embedding is symmetric; each simple eigenvalue of `H + iK`
/// shows up twice there, and an eigenvector `[a; b]` gives the primitive
/// idempotent direction `a + ib`. Coefficient collisions (clusters of the
/// wrong size, or directions that are not common eigenvectors of every
/// `A_i`) trigger a redraw with the next seed.
pub(crate) fn numeric_spectrum(scheme: &Scheme, seed: u64) -> Result<EigData> {
    if !scheme.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let r = scheme.rank();
    let n = scheme.len() as f64;
    let k: Vec<f64> = scheme.valencies().iter().map(|&v| v as f64).collect();
    let sk: Vec<f64> = k.iter().map(|v| libm::sqrt(*v)).collect();
    // lt[i][a*r + b] = p_{i b}^a sqrt(k_a / k_b)
    let lt: Vec<Vec<f64>> = (0..r)
        .map(|i| {
            let mut mat = vec![0.0; r * r];
            for a in 0..r {
                for b in 0..r {
                    let pv = scheme.intersection_number(i, b, a);
                    if pv != 0 {
                        mat[a * r + b] = pv as f64 * sk[a] / sk[b];
                    }
                }
            }
            mat
        })
        .collect();

    let mut last_err = Error::Tolerance("diagonalization did not converge".into());
    for attempt in 0..=MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let c: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let d: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let dim = 2 * r;
        let mut big = vec![0.0; dim * dim];
        for a in 0..r {
            for b in 0..r {
                let mut h = 0.0;
                let mut kk = 0.0;
                for i in 0..r {
                    let (x, y) = (lt[i][a * r + b], lt[i][b * r + a]);
                    h += c[i] * (x + y) / k[i];
                    kk += d[i] * (x - y) / k[i];
                }
                big[a * dim + b] = h;
                big[(a + r) * dim + (b + r)] = h;
                big[a * dim + (b + r)] = -kk;
                big[(a + r) * dim + b] = kk;
            }
        }
        let eig = symmetric_eigen(&big, dim);
        let spread = eig
            .values
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
            .max(1e-12);
        let gap_tol = 1e-8 * spread;
        // Eigenvalues come in equal pairs; consecutive pairs must separate.
        let mut ok = true;
        for t in 0..r {
            let (a, b) = (eig.values[2 * t], eig.values[2 * t + 1]);
            if (a - b).abs() > gap_tol {
                ok = false;
            }
            if t + 1 < r && (eig.values[2 * t + 2] - b).abs() <= 1e3 * gap_tol {
                ok = false;
            }
        }
        if !ok {
            last_err = Error::Tolerance("eigenvalue collision in random combination".into());
            continue;
        }
        let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(r);
        for t in 0..r {
            let v = &eig.vectors[2 * t];
            let u: Vec<Complex64> = (0..r).map(|a| Complex64::new(v[a], v[a + r])).collect();
            // Coefficients over A_i.
            let cvec: Vec<Complex64> = (0..r).map(|a| u[a] / sk[a]).collect();
            match common_eigenvector_check(scheme, &cvec) {
                Ok(()) => {}
                Err(e) => {
                    last_err = e;
                    ok = false;
                    break;
                }
            }
            // Normalize to an idempotent: E = alpha C, alpha = c_{i0} / (C.C)_{i0}.
            let i0 = scheme.identity();
            let cc: Complex64 = (0..r)
                .map(|i| cvec[i] * cvec[scheme.transpose(i)] * k[i])
                .sum::<Complex64>()
                / n;
            if cc.norm() < 1e-300 {
                ok = false;
                break;
            }
            let alpha = cvec[i0] / cc;
            q.push(cvec.iter().map(|x| x * alpha).collect());
        }
        if !ok {
            continue;
        }
        return finish_numeric(scheme, q);
    }
    Err(last_err)
}

/// `A_i C` must be proportional to `C` for every relation `i`.
fn common_eigenvector_check(scheme: &Scheme, cvec: &[Complex64]) -> Result<()> {
    let r = scheme.rank();
    let norm: f64 = libm::sqrt(cvec.iter().map(|x| x.norm_sqr()).sum::<f64>());
    for i in 0..r {
        let img: Vec<Complex64> = (0..r)
            .map(|kk| {
                (0..r)
                    .map(|j| cvec[j] * scheme.intersection_number(i, j, kk) as f64)
                    .sum()
            })
            .collect();
        let num: Complex64 = (0..r).map(|a| img[a] * cvec[a].conj()).sum();
        let lambda = num / (norm * norm);
        let resid: f64 = libm::sqrt(
            (0..r)
                .map(|a| (img[a] - cvec[a] * lambda).norm_sqr())
                .sum::<f64>(),
        );
        let scale = (scheme.valency(i) as f64).max(1.0) * norm;
        if resid > 1e-7 * scale {
            return Err(Error::Tolerance(alloc::format!(
                "eigenspace not invariant under A_{} (residual {resid:e})",
                scheme.relation_labels()[i]
            )));
        }
    }
    Ok(())
}

/// Try to round `p` to rationals with denominator `|X|` and verify exactly;
/// otherwise keep the floating values and verify to tolerance.
fn finish_numeric(scheme: &Scheme, q: Vec<Vec<Complex64>>) -> Result<EigData> {
    // Rational eigenvalues P_i(j) = |X| p_i(j) = k_i conj(q_j(i)) / m_j are
    // algebraic integers, hence integers; q_j(i) = P_i(j) m_j / k_i follows.
    let i0 = scheme.identity();
    let near_int = |z: Complex64| -> Option<i64> {
        let r = libm::round(z.re);
        ((z - Complex64::new(r, 0.0)).norm() <= 1e-7 * z.norm().max(1.0)).then_some(r as i64)
    };
    let rounded: Option<Vec<Vec<Scalar>>> = q
        .iter()
        .map(|row| {
            let m = near_int(row[i0]).filter(|&m| m > 0)?;
            (0..row.len())
                .map(|i| {
                    let k = scheme.valency(i) as i64;
                    let eig = near_int(row[i].conj() * (k as f64) / (m as f64))?;
                    Some(Scalar::from_rational(Rational::new((eig * m).into(), k.into())))
                })
                .collect::<Option<Vec<Scalar>>>()
        })
        .collect();
    if let Some(exact) = rounded {
        if let Ok(e) = finish_generic(scheme, exact, None) {
            if e.check_invariants(scheme, 0.0).is_ok() {
                return Ok(e);
            }
        }
    }
    let approx: Vec<Vec<Scalar>> = q
        .into_iter()
        .map(|row| row.into_iter().map(Scalar::Approx).collect())
        .collect();
    let e = finish_generic(scheme, approx, None)?;
    e.check_invariants(scheme, DEFAULT_TOLERANCE)?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_and_multisets() {
        assert_eq!(distinct_permutations(&[1, 0]).len(), 2);
        assert_eq!(distinct_permutations(&[1, 1]).len(), 1);
        assert_eq!(distinct_permutations(&[2, 1, 1]).len(), 3);
        let ms = multisets_desc(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|t| t[0] >= t[1]));
    }
}
