//! `(t,m,s)`-nets and `(t,s)`-sequence prefixes in digit space `X_n^s`.
//!
//! A point is `s` coordinates of `n` base-`v` digits each, most significant
//! digit first, stored flat. Three independent checkers decide the net
//! property: elementary-interval counting, vanishing of character sums of
//! NRT weight at most `m - t`, and the design property in `H(s, n, v)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{parse_rational, Cyclotomic, Rational};
use crate::construct::{height, ordered_hamming};
use crate::delsarte::{is_design, MultiSubset};
use crate::error::{Error, Result};
use crate::scheme::Scheme;

/// A multiset of points of `X_n^s`, repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalPointSet {
    v: u32,
    s: usize,
    n: usize,
    points: Vec<Vec<u32>>,
}

impl DigitalPointSet {
    /// `points[k]` holds `s * n` digits, coordinate by coordinate.
    pub fn new(v: u32, s: usize, n: usize, points: Vec<Vec<u32>>) -> Result<Self> {
        if v < 2 || s == 0 {
            return Err(Error::InvalidInput("need v >= 2 and s >= 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        for (k, p) in points.iter().enumerate() {
            if p.len() != s * n {
                return Err(Error::InvalidInput(alloc::format!(
                    "point {k} has {} digits, expected {}",
                    p.len(),
                    s * n
                )));
            }
            if let Some(d) = p.iter().find(|&&d| d >= v) {
                return Err(Error::InvalidInput(alloc::format!("point {k} has digit {d} >= {v}")));
            }
        }
        Ok(DigitalPointSet { v, s, n, points })
    }

    /// Build from per-coordinate digit vectors.
    pub fn from_coordinates(v: u32, n: usize, points: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let s = points.first().map(|p| p.len()).unwrap_or(0);
        let mut flat = Vec::with_capacity(points.len());
        for (k, p) in points.into_iter().enumerate() {
            if p.len() != s || p.iter().any(|c| c.len() != n) {
                return Err(Error::InvalidInput(alloc::format!("point {k} has the wrong shape")));
            }
            flat.push(p.into_iter().flatten().collect());
        }
        Self::new(v, s, n, flat)
    }

    pub fn base(&self) -> u32 {
        self.v
    }

    pub fn dimension(&self) -> usize {
        self.s
    }

    pub fn precision(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    /// Digits `0..n` of coordinate `c` of point `k`.
    pub fn coordinate(&self, k: usize, c: usize) -> &[u32] {
        &self.points[k][c * self.n..(c + 1) * self.n]
    }

    /// Keep the first `n' <= n` digits of every coordinate.
    pub fn truncate(&self, n2: usize) -> Self {
        let n2 = n2.min(self.n);
        let points = self
            .points
            .iter()
            .map(|p| (0..self.s).flat_map(|c| p[c * self.n..c * self.n + n2].iter().copied()).collect())
            .collect();
        DigitalPointSet {
            v: self.v,
            s: self.s,
            n: n2,
            points,
        }
    }

    /// Swap coordinate axes: coordinate `c` of the result is `perm[c]` here.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.s];
        if perm.len() != self.s || perm.iter().any(|&c| c >= self.s || core::mem::replace(&mut seen[c], true)) {
            return Err(Error::InvalidInput("not a permutation of the axes".into()));
        }
        let points = self
            .points
            .iter()
            .map(|p| perm.iter().flat_map(|&c| p[c * self.n..(c + 1) * self.n].iter().copied()).collect())
            .collect();
        Ok(DigitalPointSet {
            v: self.v,
            s: self.s,
            n: self.n,
            points,
        })
    }

    /// Index of point `k` in `H(s, n, v)`: coordinates as base-`v`
    /// numbers, combined with the first coordinate most significant.
    fn scheme_index(&self, k: usize) -> usize {
        self.points[k].iter().fold(0usize, |acc, &d| acc * self.v as usize + d as usize)
    }
}

/// Which checker produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Intervals,
    Characters,
    Design,
}

/// Why a point set is not a net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetWitness {
    /// Elementary interval of type `d` (digits fixed per coordinate) whose
    /// cell `cell` holds `count` points instead of `v^t`.
    Interval { d: Vec<u32>, cell: Vec<Vec<u32>>, count: u64 },
    /// Character with coefficient digits `coefficients` (per coordinate)
    /// and NRT weight `weight` whose average over the points is nonzero.
    Character { coefficients: Vec<Vec<u32>>, weight: u32 },
    /// Idempotent of `H(s, n, v)` of height at most `m - t` with `b_j != 0`.
    Shape { shape: String, height: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetVerdict {
    pub is_net: bool,
    pub criterion: Criterion,
    pub witness: Option<NetWitness>,
}

impl NetVerdict {
    fn pass(criterion: Criterion) -> Self {
        NetVerdict {
            is_net: true,
            criterion,
            witness: None,
        }
    }

    fn fail(criterion: Criterion, w: NetWitness) -> Self {
        NetVerdict {
            is_net: false,
            criterion,
            witness: Some(w),
        }
    }
}

fn check_preconditions(p: &DigitalPointSet, t: u32, m: u32) -> Result<()> {
    if t > m {
        return Err(Error::NetPrecondition(alloc::format!("t = {t} exceeds m = {m}")));
    }
    let want = (p.v as u128).checked_pow(m);
    if want != Some(p.len() as u128) {
        return Err(Error::NetPrecondition(alloc::format!(
            "{} points, expected {}^{m}",
            p.len(),
            p.v
        )));
    }
    if (p.n as u32) < m - t {
        return Err(Error::NetPrecondition(alloc::format!(
            "precision {} is below m - t = {}",
            p.n,
            m - t
        )));
    }
    Ok(())
}

/// Compositions of `total` into `s` parts, each at most `cap`, in
/// lexicographic order.
fn compositions(total: u32, s: usize, cap: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            if left <= cap {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for d in 0..=left.min(cap) {
            cur.push(d);
            rec(left - d, slots - 1, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, s, cap, &mut Vec::new(), &mut out);
    out
}

/// Every elementary interval of volume `v^{t-m}` holds exactly `v^t`
/// points.
pub fn check_net_intervals(p: &DigitalPointSet, t: u32, m: u32) -> Result<NetVerdict> {
    check_preconditions(p, t, m)?;
    let v = p.v as usize;
    let per_cell = (p.v as u64).pow(t);
    let cells = v.pow(m - t);
    let mut counts = vec![0u64; cells];
    for d in compositions(m - t, p.s, p.n as u32) {
        counts.iter_mut().for_each(|c| *c = 0);
        for k in 0..p.len() {
            let mut key = 0usize;
            for (c, &dc) in d.iter().enumerate() {
                for &digit in &p.coordinate(k, c)[..dc as usize] {
                    key = key * v + digit as usize;
                }
            }
            counts[key] += 1;
        }
        if let Some(key) = counts.iter().position(|&c| c != per_cell) {
            // Unpack the cell key into per-coordinate digit prefixes.
            let mut digits = Vec::with_capacity((m - t) as usize);
            let mut rest = key;
            for _ in 0..(m - t) {
                digits.push((rest % v) as u32);
                rest /= v;
            }
            digits.reverse();
            let mut cell = Vec::with_capacity(p.s);
            let mut at = 0usize;
            for &dc in &d {
                cell.push(digits[at..at + dc as usize].to_vec());
                at += dc as usize;
            }
            return Ok(NetVerdict::fail(
                Criterion::Intervals,
                NetWitness::Interval {
                    count: counts[key],
                    d,
                    cell,
                },
            ));
        }
    }
    Ok(NetVerdict::pass(Criterion::Intervals))
}

/// Top tuples `(h_1, ..., h_s)` with `1 <= sum <= w`, by weight then
/// lexicographically.
fn top_tuples(w: u32, s: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for weight in 1..=w {
        out.extend(compositions(weight, s, cap));
    }
    out
}

/// `avg_P(xi) = 0` for every nontrivial character `xi` of NRT weight
/// `sum_c top(xi_c) <= m - t`, with exact sums in `Q(zeta_v)`.
pub fn check_net_characters(p: &DigitalPointSet, t: u32, m: u32) -> Result<NetVerdict> {
    check_preconditions(p, t, m)?;
    let v = p.v;
    let n = p.n;
    let mut hist = vec![0i64; v as usize];
    for tops in top_tuples(m - t, p.s, n as u32) {
        // Free digit positions: for top h, positions 0..h-1 with the last
        // one nonzero.
        let mut coeffs: Vec<Vec<u32>> = tops
            .iter()
            .map(|&h| {
                let mut c = vec![0u32; n];
                if h > 0 {
                    c[h as usize - 1] = 1;
                }
                c
            })
            .collect();
        loop {
            hist.iter_mut().for_each(|h| *h = 0);
            for k in 0..p.len() {
                let mut e = 0u64;
                for (c, cc) in coeffs.iter().enumerate() {
                    let x = p.coordinate(k, c);
                    for (a, b) in cc.iter().zip(x.iter()) {
                        e += (*a as u64) * (*b as u64);
                    }
                }
                hist[(e % v as u64) as usize] += 1;
            }
            if !Cyclotomic::from_exponent_counts(v, &hist).is_zero() {
                return Ok(NetVerdict::fail(
                    Criterion::Characters,
                    NetWitness::Character {
                        coefficients: coeffs,
                        weight: tops.iter().sum(),
                    },
                ));
            }
            if !next_character(&mut coeffs, &tops, v) {
                break;
            }
        }
    }
    Ok(NetVerdict::pass(Criterion::Characters))
}

/// Odometer over characters with the given tops.
fn next_character(coeffs: &mut [Vec<u32>], tops: &[u32], v: u32) -> bool {
    for (c, &h) in tops.iter().enumerate().rev() {
        if h == 0 {
            continue;
        }
        for pos in (0..h as usize).rev() {
            let lo = if pos + 1 == h as usize { 1 } else { 0 };
            if coeffs[c][pos] + 1 < v {
                coeffs[c][pos] += 1;
                return true;
            }
            coeffs[c][pos] = lo;
        }
    }
    false
}

/// Is `p` a `J_D`-design in `scheme = H(s, n, v)` for
/// `J_D = {shape != j0 : height <= m - t}`.
pub fn check_net_design_in(scheme: &Scheme, p: &DigitalPointSet, t: u32, m: u32) -> Result<NetVerdict> {
    check_preconditions(p, t, m)?;
    let expect = (p.v as usize).checked_pow((p.s * p.n) as u32);
    let ext_ok = scheme
        .extension_data()
        .map(|e| e.s == p.s && e.base.len() == (p.v as usize).pow(p.n as u32))
        .unwrap_or(false);
    if expect != Some(scheme.len()) || !ext_ok {
        return Err(Error::InvalidInput("scheme is not H(s, n, v) for this point set".into()));
    }
    let eig = scheme.spectral_data()?;
    let jd: Vec<usize> = (0..eig.len())
        .filter(|&j| j != eig.trivial() && height(&eig.labels()[j]).is_some_and(|h| h <= m - t))
        .collect();
    let indices: Vec<usize> = (0..p.len()).map(|k| p.scheme_index(k)).collect();
    let y = MultiSubset::from_points(scheme, &indices)?;
    let verdict = is_design(scheme, &y, &jd)?;
    Ok(match verdict.offending.first() {
        None => NetVerdict::pass(Criterion::Design),
        Some((j, _)) => {
            let label = eig.labels()[*j].clone();
            NetVerdict::fail(
                Criterion::Design,
                NetWitness::Shape {
                    height: height(&label).unwrap_or(0),
                    shape: label,
                },
            )
        }
    })
}

/// [`check_net_design_in`] with `H(s, n, v)` built on the spot.
pub fn check_net_design(p: &DigitalPointSet, t: u32, m: u32) -> Result<NetVerdict> {
    check_preconditions(p, t, m)?;
    let scheme = ordered_hamming(p.s, p.n, p.v)?;
    check_net_design_in(&scheme, p, t, m)
}

/// Least `t` for which `p` is a `(t, m, s)`-net. Needs precision `n >= m`
/// so that every `t` can be decided.
pub fn t_value(p: &DigitalPointSet, m: u32) -> Result<u32> {
    if (p.n as u32) < m {
        return Err(Error::NetPrecondition(alloc::format!(
            "precision {} is below m = {m}; small t values cannot be decided",
            p.n
        )));
    }
    for t in 0..=m {
        if check_net_intervals(p, t, m)?.is_net {
            return Ok(t);
        }
    }
    unreachable!("t = m always passes")
}

/// Outcome of one `(k, m)` block of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockStatus {
    Pass,
    Fail(NetWitness),
    /// Not decided; never counted as a pass.
    Unchecked(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVerdict {
    pub m: u32,
    pub k: u64,
    pub status: BlockStatus,
}

/// Incremental `(t, s)`-sequence prefix checker: each completed block of
/// `v^m` consecutive points, truncated to `m` digits, must be a
/// `(t, m, s)`-net, for `t < m <= m_max`.
#[derive(Debug, Clone)]
pub struct SequenceChecker {
    v: u32,
    s: usize,
    depth: usize,
    t: u32,
    m_max: u32,
    points: Vec<Vec<u32>>,
}

impl SequenceChecker {
    /// Points carry `depth` digits per coordinate.
    pub fn new(v: u32, s: usize, depth: usize, t: u32, m_max: u32) -> Result<Self> {
        if v < 2 || s == 0 {
            return Err(Error::InvalidInput("need v >= 2 and s >= 1".into()));
        }
        Ok(SequenceChecker {
            v,
            s,
            depth,
            t,
            m_max,
            points: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Add the next point; returns verdicts for blocks it completes.
    pub fn push(&mut self, point: Vec<u32>) -> Result<Vec<BlockVerdict>> {
        if point.len() != self.s * self.depth || point.iter().any(|&d| d >= self.v) {
            return Err(Error::InvalidInput(alloc::format!(
                "sequence point {} is malformed",
                self.points.len()
            )));
        }
        self.points.push(point);
        let len = self.points.len() as u64;
        let mut out = Vec::new();
        for m in (self.t + 1)..=self.m_max {
            let Some(block) = (self.v as u64).checked_pow(m) else { break };
            if !len.is_multiple_of(block) {
                continue;
            }
            let k = len / block - 1;
            out.push(self.check_block(m, k, block)?);
        }
        Ok(out)
    }

    fn check_block(&self, m: u32, k: u64, block: u64) -> Result<BlockVerdict> {
        if (self.depth as u32) < m - self.t {
            return Ok(BlockVerdict {
                m,
                k,
                status: BlockStatus::Unchecked(alloc::format!(
                    "depth {} is below m - t = {}",
                    self.depth,
                    m - self.t
                )),
            });
        }
        let lo = (k * block) as usize;
        let pts = self.points[lo..lo + block as usize].to_vec();
        let set = DigitalPointSet::new(self.v, self.s, self.depth, pts)?.truncate(m as usize);
        let v = check_net_intervals(&set, self.t, m)?;
        Ok(BlockVerdict {
            m,
            k,
            status: match v.witness {
                None => BlockStatus::Pass,
                Some(w) => BlockStatus::Fail(w),
            },
        })
    }

    /// Verdicts for trailing incomplete blocks, one per `m`.
    pub fn finish(&self) -> Vec<BlockVerdict> {
        let len = self.points.len() as u64;
        let mut out = Vec::new();
        for m in (self.t + 1)..=self.m_max {
            let block = (self.v as u64).checked_pow(m);
            match block {
                Some(b) if len.is_multiple_of(b) => {}
                Some(b) => out.push(BlockVerdict {
                    m,
                    k: len / b,
                    status: BlockStatus::Unchecked(alloc::format!(
                        "stream ends after {} of {b} points",
                        len % b
                    )),
                }),
                None => out.push(BlockVerdict {
                    m,
                    k: 0,
                    status: BlockStatus::Unchecked("block size overflows".into()),
                }),
            }
        }
        out
    }
}

/// Summary of a sequence prefix check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub verdicts: Vec<BlockVerdict>,
}

impl SequenceReport {
    pub fn passed(&self) -> usize {
        self.verdicts.iter().filter(|v| v.status == BlockStatus::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.verdicts.iter().filter(|v| matches!(v.status, BlockStatus::Fail(_))).count()
    }

    pub fn unchecked(&self) -> usize {
        self.verdicts.iter().filter(|v| matches!(v.status, BlockStatus::Unchecked(_))).count()
    }

    /// No checked block failed. Says nothing about blocks beyond the
    /// stream or unchecked ones.
    pub fn all_checked_pass(&self) -> bool {
        self.failed() == 0
    }
}

/// Check a finite stream in one go.
pub fn check_sequence_prefix(
    v: u32,
    s: usize,
    depth: usize,
    points: &[Vec<u32>],
    t: u32,
    m_max: u32,
) -> Result<SequenceReport> {
    let mut checker = SequenceChecker::new(v, s, depth, t, m_max)?;
    let mut verdicts = Vec::new();
    for p in points {
        verdicts.extend(checker.push(p.clone())?);
    }
    verdicts.extend(checker.finish());
    Ok(SequenceReport { verdicts })
}

/// The first `count` points of the base-`v` van der Corput sequence with
/// `depth` digits: the digits of `k` reversed.
pub fn van_der_corput(v: u32, depth: usize, count: usize) -> Vec<Vec<u32>> {
    (0..count as u64)
        .map(|k| {
            let mut rest = k;
            (0..depth)
                .map(|_| {
                    let d = (rest % v as u64) as u32;
                    rest /= v as u64;
                    d
                })
                .collect()
        })
        .collect()
}

/// Which base-`v` expansion to take for a number with two of them
/// (`k / v^j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// Ending in zeros; requires `x < 1`.
    Terminating,
    /// Ending in `v - 1`s; requires `x > 0`.
    Trailing,
}

/// First `n` base-`v` digits of a decimal string in `[0, 1]`, such as
/// `"0.625"` or `"5/8"`. Lossy when the expansion is longer than `n`.
pub fn digits_from_decimal(text: &str, v: u32, n: usize, expansion: Expansion) -> Result<Vec<u32>> {
    let x = parse_decimal(text).ok_or_else(|| Error::InvalidInput(alloc::format!("bad number `{text}`")))?;
    if x.is_negative() || x > Rational::one() {
        return Err(Error::InvalidInput(alloc::format!("`{text}` is outside [0, 1]")));
    }
    let vb = BigInt::from(v);
    let mut out = Vec::with_capacity(n);
    match expansion {
        Expansion::Terminating => {
            if x == Rational::one() {
                return Err(Error::InvalidInput("1 has no terminating expansion in [0, 1)".into()));
            }
            let mut r = x;
            for _ in 0..n {
                r *= Rational::from_integer(vb.clone());
                let d = r.floor();
                out.push(d.to_integer().to_u32().unwrap_or(0));
                r -= d;
            }
        }
        Expansion::Trailing => {
            if x.is_zero() {
                return Err(Error::InvalidInput("0 has no expansion ending in v - 1".into()));
            }
            // Largest digit string whose value stays strictly below x.
            let mut r = x;
            for _ in 0..n {
                r *= Rational::from_integer(vb.clone());
                let mut d = r.floor();
                if d == r {
                    d -= Rational::one();
                }
                out.push(d.to_integer().to_u32().unwrap_or(0));
                r -= d;
            }
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.contains('/') {
        return parse_rational(t);
    }
    let (int_part, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let whole: BigInt = if int_part.is_empty() { BigInt::zero() } else { int_part.parse().ok()? };
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let f: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().ok()? };
    let num = whole * &scale + f;
    let g = num.gcd(&scale);
    Some(Rational::new(num / &g, scale / g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hammersley() -> DigitalPointSet {
        let pts = [[0, 0, 0, 0], [1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]];
        DigitalPointSet::new(2, 2, 2, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn hammersley_is_a_net_three_ways() {
        let p = hammersley();
        assert!(check_net_intervals(&p, 0, 2).unwrap().is_net);
        assert!(check_net_characters(&p, 0, 2).unwrap().is_net);
        assert!(check_net_design(&p, 0, 2).unwrap().is_net);
        assert_eq!(t_value(&p, 2).unwrap(), 0);
    }

    #[test]
    fn duplicate_point_breaks_the_net() {
        let mut pts = hammersley().points().to_vec();
        pts[3] = pts[0].clone();
        let p = DigitalPointSet::new(2, 2, 2, pts).unwrap();
        let v = check_net_intervals(&p, 0, 2).unwrap();
        assert!(!v.is_net);
        assert!(matches!(v.witness, Some(NetWitness::Interval { .. })));
        assert!(!check_net_characters(&p, 0, 2).unwrap().is_net);
        assert!(!check_net_design(&p, 0, 2).unwrap().is_net);
    }

    #[test]
    fn t_equal_m_is_vacuous() {
        let p = DigitalPointSet::new(2, 2, 2, vec![vec![1, 1, 0, 1]; 4]).unwrap();
        for check in [check_net_intervals, check_net_characters, check_net_design] {
            assert!(check(&p, 2, 2).unwrap().is_net);
        }
        assert!(!check_net_characters(&p, 1, 2).unwrap().is_net);
        assert_eq!(t_value(&p, 2).unwrap(), 2);
    }

    #[test]
    fn wrong_size_is_a_precondition_error() {
        let p = DigitalPointSet::new(2, 1, 2, vec![vec![0, 0]; 3]).unwrap();
        assert!(matches!(check_net_intervals(&p, 0, 2), Err(Error::NetPrecondition(_))));
    }

    #[test]
    fn van_der_corput_prefix() {
        let pts = van_der_corput(2, 4, 16);
        assert_eq!(pts[1], vec![1, 0, 0, 0]);
        assert_eq!(pts[6], vec![0, 1, 1, 0]);
        let r = check_sequence_prefix(2, 1, 4, &pts, 0, 4).unwrap();
        assert_eq!(r.failed(), 0);
        assert_eq!(r.unchecked(), 0);
        assert_eq!(r.passed(), 8 + 4 + 2 + 1);
    }

    #[test]
    fn constant_sequence_fails_first_block() {
        let pts = vec![vec![0, 0]; 4];
        let r = check_sequence_prefix(2, 1, 2, &pts, 0, 2).unwrap();
        let first = &r.verdicts[0];
        assert_eq!((first.m, first.k), (1, 0));
        assert!(matches!(first.status, BlockStatus::Fail(_)));
    }

    #[test]
    fn vacuous_sequence_check() {
        let r = check_sequence_prefix(2, 1, 2, &van_der_corput(2, 2, 3), 2, 2).unwrap();
        assert!(r.verdicts.is_empty());
    }

    #[test]
    fn decimal_expansions() {
        assert_eq!(digits_from_decimal("0.5", 2, 3, Expansion::Terminating).unwrap(), vec![1, 0, 0]);
        assert_eq!(digits_from_decimal("0.5", 2, 3, Expansion::Trailing).unwrap(), vec![0, 1, 1]);
        assert_eq!(digits_from_decimal("1", 2, 2, Expansion::Trailing).unwrap(), vec![1, 1]);
        assert!(digits_from_decimal("1", 2, 2, Expansion::Terminating).is_err());
        assert_eq!(digits_from_decimal("1/3", 3, 2, Expansion::Terminating).unwrap(), vec![1, 0]);
    }
}
