//! JSON documents for schemes, spectra, morphisms, LP results, verdicts
//! and towers. Exact values are written as `"p/q"` strings; elements of
//! `Q(zeta_n)` as coordinate lists over a named root `"zeta_n"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use delsarte_core::arith::{format_rational, parse_rational, Cyclotomic, Rational};
use delsarte_core::delsarte::{CodeVerdict, DesignVerdict, LpSolution, LpStatus};
use delsarte_core::morphism::{verify_morphism, PartialSurjection, SchemeMorphism};
use delsarte_core::nets::{BlockStatus, BlockVerdict, Criterion, NetVerdict, NetWitness};
use delsarte_core::tower::{IsolationRecord, TowerKind};
use delsarte_core::{EigData, Error, Result, Scheme};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn rational(s: &str, field: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| bad(format!("{field}: `{s}` is not a rational")))
}

/// A scalar: exact rational, exact cyclotomic, or approximate complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Rational(String),
    Cyclotomic { root: String, coeffs: Vec<String> },
    Approx { re: f64, im: f64 },
}

impl ScalarDoc {
    pub fn from_scalar(s: &delsarte_core::arith::Scalar) -> Self {
        use delsarte_core::arith::Scalar;
        match s {
            Scalar::Exact(c) => match c.as_rational() {
                Some(r) => ScalarDoc::Rational(format_rational(r)),
                None => ScalarDoc::Cyclotomic {
                    root: format!("zeta_{}", c.order()),
                    coeffs: c.coordinates().iter().map(format_rational).collect(),
                },
            },
            Scalar::Approx(z) => ScalarDoc::Approx { re: z.re, im: z.im },
        }
    }

    pub fn to_scalar(&self) -> Result<delsarte_core::arith::Scalar> {
        use delsarte_core::arith::Scalar;
        Ok(match self {
            ScalarDoc::Rational(s) => Scalar::from_rational(rational(s, "scalar")?),
            ScalarDoc::Cyclotomic { root, coeffs } => {
                let order: u32 = root
                    .strip_prefix("zeta_")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| bad(format!("root `{root}` is not zeta_n")))?;
                let coords = coeffs
                    .iter()
                    .map(|c| rational(c, "coeffs"))
                    .collect::<Result<Vec<_>>>()?;
                Scalar::Exact(
                    Cyclotomic::from_coordinates(order, coords)
                        .ok_or_else(|| bad(format!("wrong number of coefficients for {root}")))?,
                )
            }
            ScalarDoc::Approx { re, im } => Scalar::Approx(Complex64::new(*re, *im)),
        })
    }
}

/// `{points, relations, identity, map}` with `map[x][y]` the label of
/// `R(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDoc {
    pub points: Vec<String>,
    pub relations: Vec<String>,
    pub identity: String,
    pub map: Vec<Vec<String>>,
}

impl SchemeDoc {
    pub fn from_scheme(s: &Scheme) -> Self {
        let labels = s.relation_labels();
        let n = s.len();
        SchemeDoc {
            points: (0..n).map(|x| s.point_label(x)).collect(),
            relations: labels.to_vec(),
            identity: labels[s.identity()].clone(),
            map: (0..n)
                .map(|x| (0..n).map(|y| labels[s.relation(x, y)].clone()).collect())
                .collect(),
        }
    }

    /// Rebuild, checking every axiom.
    pub fn to_scheme(&self) -> Result<Scheme> {
        let n = self.points.len();
        if self.map.len() != n {
            return Err(bad(format!("map has {} rows, expected {n}", self.map.len())));
        }
        let index: BTreeMap<&str, u32> = self
            .relations
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();
        if index.len() != self.relations.len() {
            return Err(bad("relation labels repeat"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (x, row) in self.map.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("map row {x} has {} entries, expected {n}", row.len())));
            }
            for (y, l) in row.iter().enumerate() {
                let i = index
                    .get(l.as_str())
                    .ok_or_else(|| bad(format!("map[{x}][{y}]: unknown relation `{l}`")))?;
                flat.push(*i);
            }
        }
        Scheme::from_relation_map(self.points.clone(), self.relations.clone(), Some(&self.identity), flat)
    }
}

/// Spectral data: `p[i][j]` with `A_i = sum_j p_i(j) E_j`, `q[j][i]` with
/// `E_j = sum_i q_j(i) A_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigDoc {
    pub points: u64,
    pub relations: Vec<String>,
    pub idempotents: Vec<String>,
    pub trivial: String,
    pub exact: bool,
    pub valencies: Vec<u64>,
    pub multiplicities: Vec<u64>,
    pub p: Vec<Vec<ScalarDoc>>,
    pub q: Vec<Vec<ScalarDoc>>,
}

impl EigDoc {
    pub fn from_eig(scheme: &Scheme, e: &EigData) -> Self {
        let table = |t: &[Vec<delsarte_core::arith::Scalar>]| -> Vec<Vec<ScalarDoc>> {
            t.iter().map(|row| row.iter().map(ScalarDoc::from_scalar).collect()).collect()
        };
        EigDoc {
            points: e.n_points(),
            relations: scheme.relation_labels().to_vec(),
            idempotents: e.labels().to_vec(),
            trivial: e.labels()[e.trivial()].clone(),
            exact: e.is_exact(),
            valencies: e.valencies().to_vec(),
            multiplicities: e.multiplicities().to_vec(),
            p: table(e.p_table()),
            q: table(e.q_table()),
        }
    }

    /// Attach to `scheme`, whose relation labels must match.
    pub fn to_eig(&self, scheme: &Scheme) -> Result<EigData> {
        if self.relations != scheme.relation_labels() || self.points != scheme.len() as u64 {
            return Err(bad("spectral data belongs to a different scheme"));
        }
        let j0 = self
            .idempotents
            .iter()
            .position(|l| *l == self.trivial)
            .ok_or_else(|| bad(format!("trivial idempotent `{}` is not listed", self.trivial)))?;
        let table = |t: &[Vec<ScalarDoc>]| -> Result<Vec<Vec<delsarte_core::arith::Scalar>>> {
            t.iter().map(|row| row.iter().map(ScalarDoc::to_scalar).collect()).collect()
        };
        EigData::from_tables(
            scheme,
            self.idempotents.clone(),
            j0,
            table(&self.p)?,
            table(&self.q)?,
            self.multiplicities.clone(),
        )
    }
}

/// `{f, g}`: target point labels by source point, target relation labels
/// by source relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub f: Vec<String>,
    pub g: Vec<String>,
}

impl MorphismDoc {
    pub fn from_morphism(m: &SchemeMorphism) -> Self {
        let t = m.target();
        MorphismDoc {
            f: m.point_map().iter().map(|&y| t.point_label(y)).collect(),
            g: m.relation_map().iter().map(|&i| t.relation_labels()[i].clone()).collect(),
        }
    }

    pub fn to_morphism(&self, source: Arc<Scheme>, target: Arc<Scheme>) -> Result<SchemeMorphism> {
        let f = self
            .f
            .iter()
            .enumerate()
            .map(|(x, l)| {
                target
                    .point_index(l)
                    .ok_or_else(|| bad(format!("f[{x}]: unknown target point `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = self
            .g
            .iter()
            .enumerate()
            .map(|(i, l)| {
                target
                    .relation_index(l)
                    .ok_or_else(|| bad(format!("g[{i}]: unknown target relation `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        verify_morphism(source, target, f, g)
    }
}

/// A partial surjection with its domain listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSurjectionDoc {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub domain: Vec<String>,
    pub map: BTreeMap<String, String>,
}

impl PartialSurjectionDoc {
    pub fn from_partial(p: &PartialSurjection) -> Self {
        let domain: Vec<String> = p.domain().into_iter().map(|j| p.source()[j].clone()).collect();
        let map = p
            .domain()
            .into_iter()
            .map(|j| (p.source()[j].clone(), p.target()[p.get(j).unwrap()].clone()))
            .collect();
        PartialSurjectionDoc {
            source: p.source().to_vec(),
            target: p.target().to_vec(),
            domain,
            map,
        }
    }

    pub fn to_partial(&self) -> Result<PartialSurjection> {
        let mut map = vec![None; self.source.len()];
        for d in &self.domain {
            let j = self
                .source
                .iter()
                .position(|l| l == d)
                .ok_or_else(|| bad(format!("domain label `{d}` is not in the source")))?;
            let t = self.map.get(d).ok_or_else(|| bad(format!("no image for `{d}`")))?;
            map[j] = Some(
                self.target
                    .iter()
                    .position(|l| l == t)
                    .ok_or_else(|| bad(format!("image `{t}` is not in the target")))?,
            );
        }
        if self.map.len() != self.domain.len() {
            return Err(bad("map keys differ from the domain"));
        }
        PartialSurjection::new(self.source.clone(), self.target.clone(), map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpDoc {
    pub status: String,
    pub optimum: Option<String>,
    pub primal: Vec<String>,
    pub dual: Vec<String>,
    pub relations: Vec<String>,
    pub idempotents: Vec<String>,
}

impl LpDoc {
    pub fn from_solution(scheme: &Scheme, eig: &EigData, s: &LpSolution) -> Self {
        LpDoc {
            status: match s.status {
                LpStatus::Optimal => "optimal",
                LpStatus::Infeasible => "infeasible",
                LpStatus::Unbounded => "unbounded",
            }
            .into(),
            optimum: s.optimum.as_ref().map(format_rational),
            primal: s.primal.iter().map(format_rational).collect(),
            dual: s.dual.iter().map(format_rational).collect(),
            relations: scheme.relation_labels().to_vec(),
            idempotents: eig.labels().to_vec(),
        }
    }

    pub fn to_solution(&self) -> Result<LpSolution> {
        let status = match self.status.as_str() {
            "optimal" => LpStatus::Optimal,
            "infeasible" => LpStatus::Infeasible,
            "unbounded" => LpStatus::Unbounded,
            other => return Err(bad(format!("status `{other}`"))),
        };
        let list = |v: &[String], f: &str| v.iter().map(|s| rational(s, f)).collect::<Result<Vec<_>>>();
        Ok(LpSolution {
            status,
            optimum: self.optimum.as_deref().map(|s| rational(s, "optimum")).transpose()?,
            primal: list(&self.primal, "primal")?,
            dual: list(&self.dual, "dual")?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignDoc {
    pub holds: bool,
    /// Offending idempotents with their `b_j`.
    pub offending: BTreeMap<String, ScalarDoc>,
}

impl DesignDoc {
    pub fn from_verdict(eig: &EigData, v: &DesignVerdict) -> Self {
        DesignDoc {
            holds: v.holds,
            offending: v
                .offending
                .iter()
                .map(|(j, b)| (eig.labels()[*j].clone(), ScalarDoc::from_scalar(b)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDoc {
    pub holds: bool,
    pub witness: Option<(String, String)>,
}

impl CodeDoc {
    pub fn from_verdict(scheme: &Scheme, v: &CodeVerdict) -> Self {
        CodeDoc {
            holds: v.holds,
            witness: v.witness.map(|(x, y)| (scheme.point_label(x), scheme.point_label(y))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDoc {
    Interval { d: Vec<u32>, cell: Vec<Vec<u32>>, count: u64 },
    Character { coefficients: Vec<Vec<u32>>, weight: u32 },
    Shape { shape: String, height: u32 },
}

impl From<&NetWitness> for WitnessDoc {
    fn from(w: &NetWitness) -> Self {
        match w.clone() {
            NetWitness::Interval { d, cell, count } => WitnessDoc::Interval { d, cell, count },
            NetWitness::Character { coefficients, weight } => WitnessDoc::Character { coefficients, weight },
            NetWitness::Shape { shape, height } => WitnessDoc::Shape { shape, height },
        }
    }
}

impl From<&WitnessDoc> for NetWitness {
    fn from(w: &WitnessDoc) -> Self {
        match w.clone() {
            WitnessDoc::Interval { d, cell, count } => NetWitness::Interval { d, cell, count },
            WitnessDoc::Character { coefficients, weight } => NetWitness::Character { coefficients, weight },
            WitnessDoc::Shape { shape, height } => NetWitness::Shape { shape, height },
        }
    }
}

pub fn criterion_name(c: Criterion) -> &'static str {
    match c {
        Criterion::Intervals => "intervals",
        Criterion::Characters => "characters",
        Criterion::Design => "design",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetVerdictDoc {
    pub criterion: String,
    pub is_net: bool,
    pub witness: Option<WitnessDoc>,
}

impl NetVerdictDoc {
    pub fn from_verdict(v: &NetVerdict) -> Self {
        NetVerdictDoc {
            criterion: criterion_name(v.criterion).into(),
            is_net: v.is_net,
            witness: v.witness.as_ref().map(WitnessDoc::from),
        }
    }

    pub fn to_verdict(&self) -> Result<NetVerdict> {
        let criterion = match self.criterion.as_str() {
            "intervals" => Criterion::Intervals,
            "characters" => Criterion::Characters,
            "design" => Criterion::Design,
            other => return Err(bad(format!("criterion `{other}`"))),
        };
        Ok(NetVerdict {
            is_net: self.is_net,
            criterion,
            witness: self.witness.as_ref().map(NetWitness::from),
        })
    }
}

/// One NDJSON line of a sequence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub m: u32,
    pub k: u64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl BlockDoc {
    pub fn from_verdict(b: &BlockVerdict) -> Self {
        let (status, witness, reason) = match &b.status {
            BlockStatus::Pass => ("pass", None, None),
            BlockStatus::Fail(w) => ("fail", Some(WitnessDoc::from(w)), None),
            BlockStatus::Unchecked(r) => ("unchecked", None, Some(r.clone())),
        };
        BlockDoc {
            m: b.m,
            k: b.k,
            status: status.into(),
            witness,
            reason,
        }
    }

    pub fn to_verdict(&self) -> Result<BlockVerdict> {
        let status = match (self.status.as_str(), &self.witness, &self.reason) {
            ("pass", None, None) => BlockStatus::Pass,
            ("fail", Some(w), None) => BlockStatus::Fail(w.into()),
            ("unchecked", None, Some(r)) => BlockStatus::Unchecked(r.clone()),
            _ => return Err(bad(format!("block status `{}` is inconsistent", self.status))),
        };
        Ok(BlockVerdict {
            m: self.m,
            k: self.k,
            status,
        })
    }
}

/// `{kind, params, depth}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub kind: String,
    pub params: BTreeMap<String, u64>,
    pub depth: usize,
}

impl TowerDescriptor {
    pub fn kernel(v: u32, depth: usize) -> Self {
        TowerDescriptor {
            kind: "kernel".into(),
            params: [("v".to_string(), v as u64)].into(),
            depth,
        }
    }

    pub fn ordered_hamming(s: usize, v: u32, depth: usize) -> Self {
        TowerDescriptor {
            kind: "ordered_hamming".into(),
            params: [("s".to_string(), s as u64), ("v".to_string(), v as u64)].into(),
            depth,
        }
    }

    pub fn to_kind(&self) -> Result<TowerKind> {
        let param = |name: &str| -> Result<u64> {
            self.params
                .get(name)
                .copied()
                .ok_or_else(|| bad(format!("tower parameter `{name}` missing")))
        };
        let small = |x: u64, name: &str| -> Result<u32> {
            u32::try_from(x).map_err(|_| bad(format!("tower parameter `{name}` too large")))
        };
        match self.kind.as_str() {
            "kernel" => Ok(TowerKind::Kernel {
                v: small(param("v")?, "v")?,
            }),
            "ordered_hamming" => Ok(TowerKind::OrderedHamming {
                s: param("s")? as usize,
                v: small(param("v")?, "v")?,
            }),
            other => Err(bad(format!("tower kind `{other}` (custom towers have no descriptor)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStepDoc {
    /// The step is `J_{level + 1} -> J_level`.
    pub level: usize,
    pub map: PartialSurjectionDoc,
    /// `m_j` of the source idempotents.
    pub source_multiplicities: Vec<u64>,
    pub target_multiplicities: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationDoc {
    pub j: String,
    pub isolated: bool,
    pub isolated_at: Option<usize>,
    pub j_lambda: Option<String>,
    pub multiplicity: Option<u64>,
    pub checked_through: usize,
}

impl IsolationDoc {
    pub fn from_record(j: &str, r: Option<&IsolationRecord>, checked_through: usize) -> Self {
        IsolationDoc {
            j: j.into(),
            isolated: r.is_some(),
            isolated_at: r.map(|r| r.isolated_at),
            j_lambda: r.map(|r| r.j_lambda.clone()),
            multiplicity: r.map(|r| r.multiplicity),
            checked_through,
        }
    }
}
