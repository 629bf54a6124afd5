//! Delsarte theory: averaging functionals, inner distributions and their
//! MacWilliams transforms, codes and designs in a cone `(I_C; J_D)`, and
//! exact linear-programming bounds with dual certificates.
//!
//! `Q_j(i)` is the value of `E_j` on a pair in relation `i`, i.e. the
//! stored `q_j(i)`. With this normalization a singleton has `b_j = m_j`
//! and the full set has `b_j = 0` for `j != j0`.

pub mod simplex;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arith::{int, Rational, Scalar, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::scheme::{EigData, Scheme, SchemeId};

use simplex::{LinearProgram, Outcome, Relation};

/// A finite multiset of points, as (point, multiplicity) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSubset {
    scheme: SchemeId,
    entries: Vec<(usize, u64)>,
    total: u64,
}

impl MultiSubset {
    /// Duplicates are merged; multiplicities must be positive.
    pub fn new(scheme: &Scheme, entries: Vec<(usize, u64)>) -> Result<Self> {
        let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
        for (x, k) in entries {
            if x >= scheme.len() {
                return Err(Error::InvalidInput(alloc::format!("point index {x} out of range")));
            }
            if k == 0 {
                return Err(Error::InvalidInput("multiplicities must be positive".into()));
            }
            *merged.entry(x).or_insert(0) += k;
        }
        if merged.is_empty() {
            return Err(Error::InvalidInput("empty multiset".into()));
        }
        let entries: Vec<(usize, u64)> = merged.into_iter().collect();
        let total = entries.iter().map(|e| e.1).sum();
        Ok(MultiSubset {
            scheme: scheme.id(),
            entries,
            total,
        })
    }

    /// One copy per listed point, repeats counted.
    pub fn from_points(scheme: &Scheme, points: &[usize]) -> Result<Self> {
        Self::new(scheme, points.iter().map(|&x| (x, 1)).collect())
    }

    /// All of `X`, once each.
    pub fn full(scheme: &Scheme) -> Self {
        MultiSubset {
            scheme: scheme.id(),
            entries: (0..scheme.len()).map(|x| (x, 1)).collect(),
            total: scheme.len() as u64,
        }
    }

    /// `#Y`, counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.total
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn scheme_id(&self) -> SchemeId {
        self.scheme
    }

    fn check(&self, scheme: &Scheme) -> Result<()> {
        if self.scheme != scheme.id() {
            return Err(Error::SchemeMismatch);
        }
        Ok(())
    }
}

/// `avg_Y(f) = (1/#Y) sum_{x in Y} f(x)`.
pub fn averaging(y: &MultiSubset, f: &[Scalar]) -> Result<Scalar> {
    if let Some(&(x, _)) = y.entries.iter().find(|e| e.0 >= f.len()) {
        return Err(Error::InvalidInput(alloc::format!("function undefined at point {x}")));
    }
    let s: Scalar = y
        .entries
        .iter()
        .map(|&(x, k)| f[x].scale(&int(k as i64)))
        .sum();
    Ok(s.scale(&Rational::new(1.into(), (y.total as i64).into())))
}

/// `a_i(Y)` over `I` and `b_j(Y)` over `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerDistribution {
    pub a: Vec<Rational>,
    pub b: Vec<Scalar>,
}

/// Normalized pair counts `a_i(Y) = #{(x,y) in Y^2 : R(x,y) = i} / #Y^2`.
pub fn pair_distribution(scheme: &Scheme, y: &MultiSubset) -> Result<Vec<Rational>> {
    y.check(scheme)?;
    let mut counts = vec![0u64; scheme.rank()];
    for &(x, kx) in &y.entries {
        for &(z, kz) in &y.entries {
            counts[scheme.relation(x, z)] += kx * kz;
        }
    }
    let denom = (y.total as i64) * (y.total as i64);
    Ok(counts
        .into_iter()
        .map(|c| Rational::new((c as i64).into(), denom.into()))
        .collect())
}

/// MacWilliams transform `b_j = sum_i a_i Q_j(i)`.
pub fn macwilliams(eig: &EigData, a: &[Rational]) -> Vec<Scalar> {
    (0..eig.len())
        .map(|j| {
            a.iter()
                .enumerate()
                .filter(|(_, ai)| !ai.is_zero())
                .map(|(i, ai)| eig.q(j, i).scale(ai))
                .sum()
        })
        .collect()
}

/// Inner distribution and its MacWilliams transform.
pub fn inner_distribution(scheme: &Scheme, y: &MultiSubset) -> Result<InnerDistribution> {
    let a = pair_distribution(scheme, y)?;
    let eig = scheme.spectral_data()?;
    let b = macwilliams(eig, &a);
    Ok(InnerDistribution { a, b })
}

/// `b_j(Y) = (1/#Y^2) sum_{x,y in Y} E_j(x,y)`, summed pair by pair.
pub fn direct_transform(scheme: &Scheme, y: &MultiSubset) -> Result<Vec<Scalar>> {
    y.check(scheme)?;
    let eig = scheme.spectral_data()?;
    let inv = Rational::new(1.into(), ((y.total * y.total) as i64).into());
    Ok((0..eig.len())
        .map(|j| {
            let mut s = Scalar::zero();
            for &(x, kx) in &y.entries {
                for &(z, kz) in &y.entries {
                    s = &s + &eig.q(j, scheme.relation(x, z)).scale(&int((kx * kz) as i64));
                }
            }
            s.scale(&inv)
        })
        .collect())
}

/// Result of [`is_design`]: the offending `j` with their `b_j` if any.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignVerdict {
    pub holds: bool,
    pub offending: Vec<(usize, Scalar)>,
}

/// `Y` is a `J_D`-design iff `b_j(Y) = 0` for every `j` in `J_D`
/// (exactly, or within `1e-9 m_j` on floating data).
pub fn is_design(scheme: &Scheme, y: &MultiSubset, jd: &[usize]) -> Result<DesignVerdict> {
    let eig = scheme.spectral_data()?;
    if let Some(&j) = jd.iter().find(|&&j| j >= eig.len() || j == eig.trivial()) {
        return Err(Error::InvalidInput(alloc::format!("J_D may not contain index {j}")));
    }
    let dist = inner_distribution(scheme, y)?;
    let offending: Vec<(usize, Scalar)> = jd
        .iter()
        .filter(|&&j| !dist.b[j].is_zero_within(DEFAULT_TOLERANCE * eig.multiplicity(j) as f64))
        .map(|&j| (j, dist.b[j].clone()))
        .collect();
    Ok(DesignVerdict {
        holds: offending.is_empty(),
        offending,
    })
}

/// Result of [`is_code`]: an offending pair if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeVerdict {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

/// `Y` is an `I_C`-free code iff no pair of `Y` lies in a relation of `I_C`.
pub fn is_code(scheme: &Scheme, y: &MultiSubset, ic: &[usize]) -> Result<CodeVerdict> {
    y.check(scheme)?;
    if let Some(&i) = ic.iter().find(|&&i| i >= scheme.rank() || i == scheme.identity()) {
        return Err(Error::InvalidInput(alloc::format!("I_C may not contain index {i}")));
    }
    let mut forbidden = vec![false; scheme.rank()];
    for &i in ic {
        forbidden[i] = true;
    }
    for &(x, _) in &y.entries {
        for &(z, _) in &y.entries {
            if forbidden[scheme.relation(x, z)] {
                return Ok(CodeVerdict {
                    holds: false,
                    witness: Some((x, z)),
                });
            }
        }
    }
    Ok(CodeVerdict {
        holds: true,
        witness: None,
    })
}

/// The cone `(I_C; J_D)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConeSpec {
    pub codes: Vec<usize>,
    pub designs: Vec<usize>,
}

impl ConeSpec {
    pub fn validate(&self, scheme: &Scheme, eig: &EigData) -> Result<()> {
        if self.codes.iter().any(|&i| i >= scheme.rank() || i == scheme.identity()) {
            return Err(Error::InvalidInput("I_C must be a subset of I without i0".into()));
        }
        if self.designs.iter().any(|&j| j >= eig.len() || j == eig.trivial()) {
            return Err(Error::InvalidInput("J_D must be a subset of J without j0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// LP result. `primal` is `a` over `I` with `a_{i0} = 1`; `dual` is the
/// certificate `y` over `J` (see [`verify_certificate`]).
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub optimum: Option<Rational>,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

/// Real rational `Q_j(i)` (averaged over `{i, i*}`), or an error if some
/// value is irrational or only known approximately.
fn rational_q(scheme: &Scheme, eig: &EigData) -> Result<Vec<Vec<Rational>>> {
    (0..eig.len())
        .map(|j| {
            (0..scheme.rank())
                .map(|i| {
                    let t = scheme.transpose(i);
                    let v = if t == i {
                        eig.q(j, i).clone()
                    } else {
                        (eig.q(j, i) + eig.q(j, t)).scale(&Rational::new(1.into(), 2.into()))
                    };
                    v.as_rational().cloned().ok_or_else(|| {
                        Error::IrrationalCoefficients(alloc::format!(
                            "Q_{}({}) = {}",
                            eig.labels()[j],
                            scheme.relation_labels()[i],
                            v
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

/// Variables: one per class `{i, i*}` of relations outside `I_C + {i0}`.
struct Reduced {
    classes: Vec<Vec<usize>>,
    lp: LinearProgram,
}

fn reduced_lp(scheme: &Scheme, eig: &EigData, cone: &ConeSpec, sense: Sense) -> Result<Reduced> {
    cone.validate(scheme, eig)?;
    let q = rational_q(scheme, eig)?;
    let i0 = scheme.identity();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..scheme.rank() {
        let t = scheme.transpose(i);
        if i == i0 || cone.codes.contains(&i) || cone.codes.contains(&t) || t < i {
            continue;
        }
        classes.push(if t == i { vec![i] } else { vec![i, t] });
    }
    let sign = match sense {
        Sense::Maximize => int(1),
        Sense::Minimize => int(-1),
    };
    let objective = classes.iter().map(|c| &sign * int(c.len() as i64)).collect();
    let rows = (0..eig.len())
        .map(|j| {
            let a: Vec<Rational> = classes
                .iter()
                .map(|c| c.iter().fold(Rational::zero(), |acc, &i| acc + &q[j][i]))
                .collect();
            let rel = if cone.designs.contains(&j) { Relation::Eq } else { Relation::Ge };
            (a, rel, -q[j][i0].clone())
        })
        .collect();
    Ok(Reduced {
        classes,
        lp: LinearProgram { objective, rows },
    })
}

/// Delsarte LP over the cone: `a >= 0`, `a_{i0} = 1`, `a = 0` on `I_C`,
/// `sum_i a_i Q_j(i) >= 0` for all `j` and `= 0` on `J_D`, objective
/// `sum_i a_i`. Non-symmetric schemes get `a_i = a_{i*}`, which every
/// inner distribution satisfies.
pub fn lp_bound(scheme: &Scheme, cone: &ConeSpec, sense: Sense) -> Result<LpSolution> {
    let eig = scheme.spectral_data()?;
    let red = reduced_lp(scheme, eig, cone, sense)?;
    let i0 = scheme.identity();
    let expand = |x: &[Rational]| {
        let mut a = vec![Rational::zero(); scheme.rank()];
        a[i0] = int(1);
        for (c, v) in red.classes.iter().zip(x.iter()) {
            for &i in c {
                a[i] = v.clone();
            }
        }
        a
    };
    Ok(match simplex::solve(&red.lp) {
        Outcome::Optimal { x, y, .. } => {
            let a = expand(&x);
            let total = a.iter().fold(Rational::zero(), |acc, v| acc + v);
            LpSolution {
                status: LpStatus::Optimal,
                optimum: Some(total),
                primal: a,
                dual: y.iter().map(|v| -v).collect(),
            }
        }
        Outcome::Infeasible { y } => LpSolution {
            status: LpStatus::Infeasible,
            optimum: None,
            primal: Vec::new(),
            dual: y,
        },
        Outcome::Unbounded { x, .. } => LpSolution {
            status: LpStatus::Unbounded,
            optimum: None,
            primal: expand(&x),
            dual: Vec::new(),
        },
    })
}

/// Check a dual certificate `y` over `J` without the solver and return the
/// bound it proves.
///
/// Maximize: `y_j >= 0` off `J_D` and `1 + sum_j y_j Q_j(i) <= 0` for every
/// `i` outside `I_C + {i0}` give `sum_i a_i <= 1 + sum_j y_j m_j`.
/// Minimize: `y_j >= 0` off `J_D` and `sum_j y_j Q_j(i) <= 1` give
/// `sum_i a_i >= 1 - sum_j y_j m_j`.
pub fn verify_certificate(scheme: &Scheme, cone: &ConeSpec, sense: Sense, y: &[Rational]) -> Result<Rational> {
    let eig = scheme.spectral_data()?;
    cone.validate(scheme, eig)?;
    let q = rational_q(scheme, eig)?;
    if y.len() != eig.len() {
        return Err(Error::InvalidInput("certificate length differs from |J|".into()));
    }
    for (j, yj) in y.iter().enumerate() {
        if !cone.designs.contains(&j) && yj.is_negative() {
            return Err(Error::InvalidInput(alloc::format!(
                "certificate entry {} is negative off J_D",
                eig.labels()[j]
            )));
        }
    }
    let i0 = scheme.identity();
    for i in 0..scheme.rank() {
        if i == i0 || cone.codes.contains(&i) || cone.codes.contains(&scheme.transpose(i)) {
            continue;
        }
        let f = (0..eig.len()).fold(Rational::zero(), |acc, j| acc + &y[j] * &q[j][i]);
        let ok = match sense {
            Sense::Maximize => (int(1) + f) <= Rational::zero(),
            Sense::Minimize => f <= int(1),
        };
        if !ok {
            return Err(Error::InvalidInput(alloc::format!(
                "certificate fails at relation {}",
                scheme.relation_labels()[i]
            )));
        }
    }
    let ym = (0..eig.len()).fold(Rational::zero(), |acc, j| acc + &y[j] * int(eig.multiplicity(j) as i64));
    Ok(match sense {
        Sense::Maximize => int(1) + ym,
        Sense::Minimize => int(1) - ym,
    })
}

/// Is `a` (over `I`, with `a_{i0} = 1`) a feasible point of the cone LP?
pub fn is_cone_feasible(scheme: &Scheme, cone: &ConeSpec, a: &[Rational]) -> Result<bool> {
    let eig = scheme.spectral_data()?;
    cone.validate(scheme, eig)?;
    let q = rational_q(scheme, eig)?;
    if a.len() != scheme.rank() || a[scheme.identity()] != int(1) || a.iter().any(|v| v.is_negative()) {
        return Ok(false);
    }
    if cone.codes.iter().any(|&i| !a[i].is_zero()) {
        return Ok(false);
    }
    for j in 0..eig.len() {
        let b = (0..scheme.rank()).fold(Rational::zero(), |acc, i| acc + &a[i] * &q[j][i]);
        if b.is_negative() || (cone.designs.contains(&j) && !b.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
