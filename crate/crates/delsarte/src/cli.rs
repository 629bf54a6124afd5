//! Command-line dispatch. Exit codes: 0 success or true, 1 verified false
//! (with a witness), 2 input error, 3 numerical tolerance failure.

use std::ffi::OsString;
use std::io::{BufRead, BufReader, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use delsarte_core::arith::format_rational;
use delsarte_core::construct::{height, kernel_truncation, nrt_weight, ordered_hamming_truncation};
use delsarte_core::delsarte::{
    inner_distribution, is_code, is_design, lp_bound, verify_certificate, ConeSpec, LpStatus, Sense,
};
use delsarte_core::morphism::{functor_j, SchemeMorphism};
use delsarte_core::nets::{
    check_net_characters, check_net_design, check_net_intervals, t_value, BlockStatus, DigitalPointSet,
    NetVerdict, SequenceChecker,
};
use delsarte_core::tower::{build_tower, isolate, j_chain, Tower, TowerKind};
use delsarte_core::{EigData, Error, Scheme, SpectralMethod};
use rayon::prelude::*;
use serde::Serialize;

use crate::dto::{
    criterion_name, BlockDoc, ChainStepDoc, CodeDoc, DesignDoc, EigDoc, IsolationDoc, LpDoc, MorphismDoc,
    NetVerdictDoc, PartialSurjectionDoc, SchemeDoc, ScalarDoc, TowerDescriptor,
};
use crate::formats::{for_each_point, parse_multiset, read_points, FormatError, PointShape};
use crate::shorthand::{self, Family};

#[derive(Debug, Parser)]
#[command(name = "delsarte", version, about = "Association schemes, Delsarte LP bounds and digital nets")]
pub struct Cli {
    /// Emit JSON (NDJSON for `seq check`) instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized diagonalization.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, verify and diagonalize schemes.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Verify morphisms and apply the J functor.
    #[command(subcommand)]
    Morphism(MorphismCmd),
    /// Delsarte linear-programming bounds.
    #[command(subcommand)]
    Lp(LpCmd),
    /// Check that a point multiset is a design.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Check that a point multiset is a code.
    #[command(subcommand)]
    Code(CodeCmd),
    /// (t,m,s)-net checks.
    #[command(subcommand)]
    Net(NetCmd),
    /// (t,s)-sequence prefix checks.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Projective towers of schemes.
    #[command(subcommand)]
    Tower(TowerCmd),
}

#[derive(Debug, Subcommand)]
pub enum SchemeCmd {
    /// Build a scheme from shorthand and print it.
    Build {
        /// kernel:n,v | oh:s,n,v | thin:c1xc2 | schurian:n:gens | file:path
        scheme: String,
        /// Also write the scheme JSON to this file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check every axiom of a scheme JSON document.
    Verify {
        /// Scheme JSON file.
        file: String,
    },
    /// Eigenmatrices, multiplicities and valencies.
    Spectrum {
        /// Scheme shorthand.
        scheme: Option<String>,
        /// Shorthand for `kernel:n,v`.
        #[arg(long, value_name = "N,V")]
        kernel: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Auto,
    Characters,
    Tensor,
    Numeric,
}

#[derive(Debug, Args)]
pub struct MorphismArgs {
    /// Source scheme shorthand.
    #[arg(long)]
    source: String,
    /// Target scheme shorthand.
    #[arg(long)]
    target: String,
    /// Morphism JSON `{f, g}`; defaults to the digit drop between
    /// consecutive kernel or ordered Hamming levels.
    #[arg(long)]
    map: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum MorphismCmd {
    /// Check that the maps commute with the relation maps.
    Verify(MorphismArgs),
    /// The induced partial surjection on primitive idempotents.
    J(MorphismArgs),
}

#[derive(Debug, Args)]
pub struct ConeArgs {
    /// Scheme shorthand.
    #[arg(long)]
    scheme: String,
    /// Forbidden relations I_C, by label.
    #[arg(long, value_delimiter = ',')]
    codes: Vec<String>,
    /// Forbid NRT weights 1..d-1 (ordered Hamming schemes).
    #[arg(long)]
    min_distance: Option<u32>,
    /// Vanishing idempotents J_D, by label.
    #[arg(long, value_delimiter = ',')]
    designs: Vec<String>,
    /// J_D = every nontrivial shape of height <= h (ordered Hamming schemes).
    #[arg(long)]
    design_height: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum LpCmd {
    /// Solve the LP exactly and re-verify its dual certificate.
    Bound {
        #[command(flatten)]
        cone: ConeArgs,
        #[arg(long, conflicts_with = "minimize")]
        maximize: bool,
        #[arg(long)]
        minimize: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum DesignCmd {
    Check {
        #[command(flatten)]
        cone: ConeArgs,
        /// Point multiset file.
        points: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodeCmd {
    Check {
        #[command(flatten)]
        cone: ConeArgs,
        /// Point multiset file.
        points: String,
    },
}

#[derive(Debug, Args)]
pub struct NetArgs {
    /// Base.
    #[arg(long)]
    v: u32,
    /// Dimension.
    #[arg(long)]
    s: usize,
    /// The set has v^m points.
    #[arg(long)]
    m: u32,
    /// Digits per coordinate (defaults to m).
    #[arg(long)]
    n: Option<usize>,
    /// Point stream file.
    points: String,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum CriterionArg {
    Intervals,
    Characters,
    Design,
    All,
}

#[derive(Debug, Subcommand)]
pub enum NetCmd {
    /// Decide the (t,m,s)-net property.
    Check {
        #[command(flatten)]
        net: NetArgs,
        /// Quality parameter.
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = CriterionArg::Intervals)]
        criterion: CriterionArg,
    },
    /// The least t for which the points form a net.
    Tvalue {
        #[command(flatten)]
        net: NetArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqCmd {
    /// Check every complete block of a point stream (`-` for stdin).
    Check {
        /// Base.
        #[arg(long)]
        v: u32,
        /// Dimension.
        #[arg(long)]
        s: usize,
        /// Digits per coordinate.
        #[arg(long)]
        n: usize,
        /// Quality parameter.
        #[arg(long)]
        t: u32,
        /// Check blocks of v^m points for t < m <= m_max.
        #[arg(long)]
        m_max: u32,
        /// Point stream file, or `-` for stdin.
        points: String,
    },
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    /// Tower descriptor JSON `{kind, params, depth}`.
    #[arg(long, conflicts_with_all = ["kind", "v", "s"])]
    descriptor: Option<String>,
    /// Family, when no descriptor is given.
    #[arg(long, value_enum)]
    kind: Option<TowerKindArg>,
    /// Base.
    #[arg(long)]
    v: Option<u32>,
    /// Dimension (ordered Hamming towers).
    #[arg(long)]
    s: Option<usize>,
    /// Deepest level.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TowerKindArg {
    Kernel,
    Oh,
}

#[derive(Debug, Subcommand)]
pub enum TowerCmd {
    /// Build and verify every level and step.
    Build(TowerArgs),
    /// The chain of partial surjections J_{l+1} -> J_l.
    JChain(TowerArgs),
    /// Find where an idempotent label becomes isolated.
    Isolate {
        #[command(flatten)]
        tower: TowerArgs,
        /// Idempotent label.
        #[arg(long)]
        j: String,
    },
}

/// A failed run, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Tolerance(String),
    /// Output pipe closed.
    Closed,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Tolerance(_) => 3,
            Failure::Closed => 0,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Tolerance(_) | Error::Decomposition(_) => Failure::Tolerance(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parse `args` (program name first) and run. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match dispatch(&cli, &pool, out) {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Input(m) | Failure::Tolerance(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::Closed => {}
            }
            f.code()
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn dispatch(cli: &Cli, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Scheme(c) => scheme_cmd(cli, c, out),
        Command::Morphism(c) => morphism_cmd(cli, c, out),
        Command::Lp(LpCmd::Bound { cone, minimize, .. }) => {
            let sense = if *minimize { Sense::Minimize } else { Sense::Maximize };
            lp_cmd(cli, cone, sense, out)
        }
        Command::Design(DesignCmd::Check { cone, points }) => design_cmd(cli, cone, points, out),
        Command::Code(CodeCmd::Check { cone, points }) => code_cmd(cli, cone, points, out),
        Command::Net(c) => net_cmd(cli, pool, c, out),
        Command::Seq(SeqCmd::Check { v, s, n, t, m_max, points }) => {
            seq_cmd(cli, *v, *s, *n, *t, *m_max, points, out)
        }
        Command::Tower(c) => tower_cmd(cli, c, out),
    }
}

fn method(m: MethodArg) -> SpectralMethod {
    match m {
        MethodArg::Auto => SpectralMethod::Auto,
        MethodArg::Characters => SpectralMethod::Characters,
        MethodArg::Tensor => SpectralMethod::Tensor,
        MethodArg::Numeric => SpectralMethod::Numeric,
    }
}

fn scalar_text(d: &ScalarDoc) -> String {
    match d {
        ScalarDoc::Rational(s) => s.clone(),
        ScalarDoc::Cyclotomic { root, coeffs } => {
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.as_str() != "0")
                .map(|(k, c)| match k {
                    0 => c.clone(),
                    1 => format!("({c})*{root}"),
                    _ => format!("({c})*{root}^{k}"),
                })
                .collect();
            terms.join(" + ")
        }
        ScalarDoc::Approx { re, im } => {
            if im.abs() < 1e-12 {
                format!("{re:.9}")
            } else {
                format!("{re:.9}{im:+.9}i")
            }
        }
    }
}

fn print_table(out: &mut dyn Write, title: &str, rows: &[String], cols: &[String], cells: &[Vec<String>]) -> Result<(), Failure> {
    writeln!(out, "{title}")?;
    let w0 = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols.len())
        .map(|c| cells.iter().map(|r| r[c].len()).chain([cols[c].len()]).max().unwrap_or(0))
        .collect();
    let mut head = format!("  {:w0$}", "");
    for (c, w) in cols.iter().zip(&widths) {
        head.push_str(&format!("  {c:>w$}"));
    }
    writeln!(out, "{head}")?;
    for (r, row) in rows.iter().zip(cells) {
        let mut line = format!("  {r:w0$}");
        for (v, w) in row.iter().zip(&widths) {
            line.push_str(&format!("  {v:>w$}"));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn scheme_cmd(cli: &Cli, c: &SchemeCmd, out: &mut dyn Write) -> Outcome {
    match c {
        SchemeCmd::Build { scheme, out: path } => {
            let b = shorthand::build(scheme)?;
            let doc = SchemeDoc::from_scheme(&b.scheme);
            if let Some(p) = path {
                let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Input(e.to_string()))?;
                std::fs::write(p, text + "\n").map_err(|e| Failure::Input(format!("{p}: {e}")))?;
            }
            if cli.json {
                emit(out, &doc)?;
            } else {
                let s = &b.scheme;
                writeln!(out, "points: {}", s.len())?;
                writeln!(out, "relations: {}", s.relation_labels().join(" "))?;
                writeln!(out, "identity: {}", s.relation_labels()[s.identity()])?;
                let k: Vec<String> = s.valencies().iter().map(|k| k.to_string()).collect();
                writeln!(out, "valencies: {}", k.join(" "))?;
                writeln!(out, "commutative: {}", s.is_commutative())?;
                writeln!(out, "symmetric: {}", s.is_symmetric())?;
            }
            Ok(0)
        }
        SchemeCmd::Verify { file } => {
            let text = read_file(file)?;
            let doc: SchemeDoc =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{file}: {e}")))?;
            match doc.to_scheme() {
                Ok(s) => {
                    if cli.json {
                        emit(
                            out,
                            &serde_json::json!({"valid": true, "commutative": s.is_commutative(), "rank": s.rank()}),
                        )?;
                    } else {
                        writeln!(out, "valid association scheme: {} points, rank {}", s.len(), s.rank())?;
                    }
                    Ok(0)
                }
                Err(Error::Axiom(v)) => {
                    if cli.json {
                        emit(out, &serde_json::json!({"valid": false, "witness": v.to_string()}))?;
                    } else {
                        writeln!(out, "not an association scheme: {v}")?;
                    }
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        SchemeCmd::Spectrum { scheme, kernel, method: m } => {
            let text = match (scheme, kernel) {
                (Some(s), None) => s.clone(),
                (None, Some(k)) => format!("kernel:{k}"),
                _ => return Err(Failure::Input("give exactly one of SCHEME and --kernel".into())),
            };
            let b = shorthand::build(&text)?;
            let eig = match m {
                MethodArg::Auto => b.scheme.spectral_data()?.clone(),
                _ => relabel(&b.scheme, b.scheme.spectral_data_with(method(*m), cli.seed)?)?,
            };
            let doc = EigDoc::from_eig(&b.scheme, &eig);
            if cli.json {
                emit(out, &doc)?;
            } else {
                print_eig(out, &doc)?;
            }
            Ok(0)
        }
    }
}

/// Carry the cached labels over to spectral data from another route.
fn relabel(scheme: &Scheme, eig: EigData) -> Result<EigData, Failure> {
    let Ok(cached) = scheme.spectral_data() else { return Ok(eig) };
    match eig.match_classes(cached, 1e-9) {
        Some(perm) => {
            let labels = perm.iter().map(|&k| cached.labels()[k].clone()).collect();
            Ok(eig.with_labels(labels)?)
        }
        None => Err(Failure::Tolerance("spectral routes disagree".into())),
    }
}

fn print_eig(out: &mut dyn Write, doc: &EigDoc) -> Result<(), Failure> {
    let cells = |t: &[Vec<ScalarDoc>]| -> Vec<Vec<String>> {
        t.iter().map(|r| r.iter().map(scalar_text).collect()).collect()
    };
    print_table(out, "p[i][j]", &doc.relations, &doc.idempotents, &cells(&doc.p))?;
    print_table(out, "q[j][i]", &doc.idempotents, &doc.relations, &cells(&doc.q))?;
    let k: Vec<String> = doc.valencies.iter().map(|k| k.to_string()).collect();
    let m: Vec<String> = doc.multiplicities.iter().map(|k| k.to_string()).collect();
    writeln!(out, "valencies: {}", k.join(" "))?;
    writeln!(out, "multiplicities: {}", m.join(" "))?;
    writeln!(out, "exact: {}", doc.exact)?;
    Ok(())
}

fn build_morphism(a: &MorphismArgs) -> Result<SchemeMorphism, Error> {
    let src = shorthand::build(&a.source)?;
    let tgt = shorthand::build(&a.target)?;
    if let Some(path) = &a.map {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
        let doc: MorphismDoc =
            serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
        return doc.to_morphism(src.scheme, tgt.scheme);
    }
    match (&src.family, &tgt.family) {
        (Family::Kernel { n: a, v }, Family::Kernel { n: b, v: w }) if v == w && *a == b + 1 => {
            kernel_truncation(src.scheme, tgt.scheme, *v)
        }
        (Family::OrderedHamming { s, n: a, v }, Family::OrderedHamming { s: t, n: b, v: w })
            if s == t && v == w && *a == b + 1 =>
        {
            ordered_hamming_truncation(src.scheme, tgt.scheme, *v)
        }
        _ => Err(Error::InvalidInput(
            "--map is required unless the schemes are consecutive kernel or ordered Hamming levels".into(),
        )),
    }
}

fn morphism_cmd(cli: &Cli, c: &MorphismCmd, out: &mut dyn Write) -> Outcome {
    match c {
        MorphismCmd::Verify(a) => {
            let m = match build_morphism(a) {
                Ok(m) => m,
                Err(e @ (Error::MorphismNotCommuting { .. } | Error::MorphismInconsistent(_))) => {
                    if cli.json {
                        emit(out, &serde_json::json!({"valid": false, "witness": e.to_string()}))?;
                    } else {
                        writeln!(out, "not a morphism: {e}")?;
                    }
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            if cli.json {
                emit(
                    out,
                    &serde_json::json!({
                        "valid": true,
                        "surjective": m.is_surjective(),
                        "fiber_size": m.fiber_size(),
                        "morphism": MorphismDoc::from_morphism(&m),
                    }),
                )?;
            } else {
                writeln!(out, "valid morphism; surjective: {}", m.is_surjective())?;
                if let Some(f) = m.fiber_size() {
                    writeln!(out, "fiber size: {f}")?;
                }
            }
            Ok(0)
        }
        MorphismCmd::J(a) => {
            let m = build_morphism(a)?;
            let p = functor_j(&m)?;
            let doc = PartialSurjectionDoc::from_partial(&p);
            if cli.json {
                emit(out, &doc)?;
            } else {
                for (j, l) in p.source().iter().enumerate() {
                    match p.get(j) {
                        Some(t) => writeln!(out, "{l} -> {}", p.target()[t])?,
                        None => writeln!(out, "{l} -> (outside domain)")?,
                    }
                }
            }
            Ok(0)
        }
    }
}

fn cone_spec(scheme: &Scheme, eig: &EigData, a: &ConeArgs) -> Result<ConeSpec, Failure> {
    let mut codes = Vec::new();
    for l in &a.codes {
        codes.push(
            scheme
                .relation_index(l)
                .ok_or_else(|| Failure::Input(format!("--codes: unknown relation `{l}`")))?,
        );
    }
    if let Some(d) = a.min_distance {
        for i in 0..scheme.rank() {
            let w = nrt_weight(scheme, i)
                .ok_or_else(|| Failure::Input("--min-distance needs an ordered Hamming scheme".into()))?;
            if w > 0 && w < d {
                codes.push(i);
            }
        }
    }
    let mut designs = Vec::new();
    for l in &a.designs {
        designs.push(
            eig.index_of(l)
                .ok_or_else(|| Failure::Input(format!("--designs: unknown idempotent `{l}`")))?,
        );
    }
    if let Some(h) = a.design_height {
        for (j, l) in eig.labels().iter().enumerate() {
            let lh = height(l)
                .ok_or_else(|| Failure::Input("--design-height needs an ordered Hamming scheme".into()))?;
            if j != eig.trivial() && lh <= h {
                designs.push(j);
            }
        }
    }
    codes.sort_unstable();
    codes.dedup();
    designs.sort_unstable();
    designs.dedup();
    let cone = ConeSpec { codes, designs };
    cone.validate(scheme, eig)?;
    Ok(cone)
}

#[derive(Serialize)]
struct LpReport {
    #[serde(flatten)]
    solution: LpDoc,
    /// The bound re-derived from the dual certificate alone.
    certified: Option<String>,
}

fn lp_cmd(cli: &Cli, a: &ConeArgs, sense: Sense, out: &mut dyn Write) -> Outcome {
    let b = shorthand::build(&a.scheme)?;
    let scheme = &b.scheme;
    let eig = scheme.spectral_data()?;
    let cone = cone_spec(scheme, eig, a)?;
    let sol = lp_bound(scheme, &cone, sense)?;
    let certified = if sol.status == LpStatus::Optimal {
        let bound = verify_certificate(scheme, &cone, sense, &sol.dual)?;
        if Some(&bound) != sol.optimum.as_ref() {
            return Err(Failure::Input("dual certificate does not reproduce the optimum".into()));
        }
        Some(format_rational(&bound))
    } else {
        None
    };
    let doc = LpDoc::from_solution(scheme, eig, &sol);
    if cli.json {
        emit(out, &LpReport { solution: doc, certified })?;
    } else {
        writeln!(out, "status: {}", doc.status)?;
        if let Some(o) = &doc.optimum {
            writeln!(out, "optimum: {o}")?;
        }
        if let Some(c) = &certified {
            writeln!(out, "certificate re-verified: {c}")?;
        }
        if !doc.primal.is_empty() {
            writeln!(out, "primal:")?;
            for (l, v) in doc.relations.iter().zip(&doc.primal) {
                writeln!(out, "  a[{l}] = {v}")?;
            }
        }
        if !doc.dual.is_empty() {
            writeln!(out, "dual:")?;
            for (l, v) in doc.idempotents.iter().zip(&doc.dual) {
                writeln!(out, "  y[{l}] = {v}")?;
            }
        }
    }
    Ok(0)
}

fn design_cmd(cli: &Cli, a: &ConeArgs, points: &str, out: &mut dyn Write) -> Outcome {
    let b = shorthand::build(&a.scheme)?;
    let scheme = &b.scheme;
    let eig = scheme.spectral_data()?;
    let cone = cone_spec(scheme, eig, a)?;
    let y = parse_multiset(&read_file(points)?, scheme)?;
    let v = is_design(scheme, &y, &cone.designs)?;
    let doc = DesignDoc::from_verdict(eig, &v);
    if cli.json {
        let dist = inner_distribution(scheme, &y)?;
        emit(
            out,
            &serde_json::json!({
                "verdict": doc,
                "inner_distribution": dist.a.iter().map(format_rational).collect::<Vec<_>>(),
            }),
        )?;
    } else if v.holds {
        writeln!(out, "design: yes")?;
    } else {
        writeln!(out, "design: no")?;
        for (l, b) in &doc.offending {
            writeln!(out, "  b[{l}] = {}", scalar_text(b))?;
        }
    }
    Ok(if v.holds { 0 } else { 1 })
}

fn code_cmd(cli: &Cli, a: &ConeArgs, points: &str, out: &mut dyn Write) -> Outcome {
    let b = shorthand::build(&a.scheme)?;
    let scheme = &b.scheme;
    let eig = scheme.spectral_data()?;
    let cone = cone_spec(scheme, eig, a)?;
    let y = parse_multiset(&read_file(points)?, scheme)?;
    let v = is_code(scheme, &y, &cone.codes)?;
    let doc = CodeDoc::from_verdict(scheme, &v);
    if cli.json {
        emit(out, &doc)?;
    } else if let Some((x, z)) = &doc.witness {
        writeln!(out, "code: no (pair {x} / {z})")?;
    } else {
        writeln!(out, "code: yes")?;
    }
    Ok(if v.holds { 0 } else { 1 })
}

fn load_net(a: &NetArgs) -> Result<DigitalPointSet, Failure> {
    let n = a.n.unwrap_or(a.m as usize);
    let shape = PointShape { v: a.v, s: a.s, n };
    let file = std::fs::File::open(&a.points).map_err(|e| Failure::Input(format!("{}: {e}", a.points)))?;
    let pts = read_points(BufReader::new(file), shape).map_err(|e| Failure::Input(format!("{}: {e}", a.points)))?;
    Ok(DigitalPointSet::new(a.v, a.s, n, pts)?)
}

fn net_cmd(cli: &Cli, pool: &rayon::ThreadPool, c: &NetCmd, out: &mut dyn Write) -> Outcome {
    match c {
        NetCmd::Check { net, t, criterion } => {
            let p = load_net(net)?;
            let chosen: Vec<CriterionArg> = match criterion {
                CriterionArg::All => vec![CriterionArg::Intervals, CriterionArg::Characters, CriterionArg::Design],
                c => vec![*c],
            };
            let (t, m) = (*t, net.m);
            let verdicts: Vec<NetVerdict> = pool.install(|| {
                chosen
                    .par_iter()
                    .map(|c| match c {
                        CriterionArg::Intervals => check_net_intervals(&p, t, m),
                        CriterionArg::Characters => check_net_characters(&p, t, m),
                        _ => check_net_design(&p, t, m),
                    })
                    .collect::<Result<_, Error>>()
            })?;
            let agree = verdicts.iter().all(|v| v.is_net == verdicts[0].is_net);
            if !agree {
                return Err(Failure::Tolerance("net criteria disagree".into()));
            }
            let docs: Vec<NetVerdictDoc> = verdicts.iter().map(NetVerdictDoc::from_verdict).collect();
            if cli.json {
                emit(out, &docs)?;
            } else {
                for v in &verdicts {
                    let name = criterion_name(v.criterion);
                    match &v.witness {
                        None => writeln!(out, "{name}: ({t},{m},{})-net", net.s)?,
                        Some(w) => writeln!(out, "{name}: not a net; witness {w:?}")?,
                    }
                }
            }
            Ok(if verdicts[0].is_net { 0 } else { 1 })
        }
        NetCmd::Tvalue { net } => {
            let p = load_net(net)?;
            let t = t_value(&p, net.m)?;
            if cli.json {
                emit(out, &serde_json::json!({"t": t, "m": net.m, "s": net.s}))?;
            } else {
                writeln!(out, "t = {t}")?;
            }
            Ok(0)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn seq_cmd(cli: &Cli, v: u32, s: usize, n: usize, t: u32, m_max: u32, points: &str, out: &mut dyn Write) -> Outcome {
    let mut checker = SequenceChecker::new(v, s, n, t, m_max)?;
    let shape = PointShape { v, s, n };
    let reader: Box<dyn BufRead> = if points == "-" {
        Box::new(BufReader::new(std::io::stdin()))
    } else {
        Box::new(BufReader::new(
            std::fs::File::open(points).map_err(|e| Failure::Input(format!("{points}: {e}")))?,
        ))
    };
    let (mut pass, mut fail, mut unchecked) = (0usize, 0usize, 0usize);
    let mut report = |b: &delsarte_core::nets::BlockVerdict, out: &mut dyn Write| -> Result<(), Failure> {
        match b.status {
            BlockStatus::Pass => pass += 1,
            BlockStatus::Fail(_) => fail += 1,
            BlockStatus::Unchecked(_) => unchecked += 1,
        }
        if cli.json {
            let line = serde_json::to_string(&BlockDoc::from_verdict(b)).map_err(|e| Failure::Input(e.to_string()))?;
            writeln!(out, "{line}")?;
        } else {
            match &b.status {
                BlockStatus::Pass => writeln!(out, "m={} k={}: pass", b.m, b.k)?,
                BlockStatus::Fail(w) => writeln!(out, "m={} k={}: fail {w:?}", b.m, b.k)?,
                BlockStatus::Unchecked(r) => writeln!(out, "m={} k={}: unchecked ({r})", b.m, b.k)?,
            }
        }
        out.flush()?;
        Ok(())
    };
    let mut inner: Option<Failure> = None;
    for_each_point(reader, shape, |p| {
        let verdicts = checker.push(p).map_err(|e| FormatError::Scheme(e.to_string()))?;
        for b in &verdicts {
            if let Err(f) = report(b, out) {
                inner = Some(f);
                return Err(FormatError::Io("write failed".into()));
            }
        }
        Ok(())
    })
    .map_err(|e| inner.take().unwrap_or_else(|| Failure::Input(format!("{points}: {e}"))))?;
    for b in checker.finish() {
        report(&b, out)?;
    }
    if !cli.json {
        let summary = if fail > 0 {
            format!("not a ({t},{s})-sequence: {fail} block(s) fail")
        } else {
            format!("verified for all checked blocks ({pass} pass, {unchecked} unchecked)")
        };
        writeln!(out, "{summary}")?;
    }
    Ok(if fail > 0 { 1 } else { 0 })
}

fn tower_from(a: &TowerArgs) -> Result<(TowerDescriptor, Tower), Failure> {
    let desc = match (&a.descriptor, a.kind) {
        (Some(path), _) => {
            let text = read_file(path)?;
            let mut d: TowerDescriptor =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            if let Some(depth) = a.depth {
                d.depth = depth;
            }
            d
        }
        (None, Some(kind)) => {
            let v = a.v.ok_or_else(|| Failure::Input("--v is required".into()))?;
            let depth = a.depth.ok_or_else(|| Failure::Input("--depth is required".into()))?;
            match kind {
                TowerKindArg::Kernel => TowerDescriptor::kernel(v, depth),
                TowerKindArg::Oh => TowerDescriptor::ordered_hamming(
                    a.s.ok_or_else(|| Failure::Input("--s is required for ordered Hamming towers".into()))?,
                    v,
                    depth,
                ),
            }
        }
        (None, None) => return Err(Failure::Input("give --descriptor or --kind".into())),
    };
    let kind: TowerKind = desc.to_kind()?;
    let tower = build_tower(kind, desc.depth)?;
    Ok((desc, tower))
}

fn tower_cmd(cli: &Cli, c: &TowerCmd, out: &mut dyn Write) -> Outcome {
    match c {
        TowerCmd::Build(a) => {
            let (desc, mut tower) = tower_from(a)?;
            let mut levels = Vec::new();
            for l in 1..=desc.depth {
                let x = tower.level(l)?;
                let fiber = if l < desc.depth { tower.step(l)?.fiber_size() } else { None };
                levels.push(serde_json::json!({
                    "level": l,
                    "points": x.len(),
                    "rank": x.rank(),
                    "fiber_to_previous": if l > 1 { tower.step(l - 1)?.fiber_size() } else { None },
                    "fiber_from_next": fiber,
                }));
            }
            if cli.json {
                emit(out, &serde_json::json!({"descriptor": desc, "levels": levels, "verified": true}))?;
            } else {
                for l in 1..=desc.depth {
                    let x = tower.level(l)?;
                    writeln!(out, "level {l}: {} points, rank {}", x.len(), x.rank())?;
                }
                writeln!(out, "all {} step(s) verified", desc.depth - 1)?;
            }
            Ok(0)
        }
        TowerCmd::JChain(a) => {
            let (desc, mut tower) = tower_from(a)?;
            let chain = j_chain(&mut tower, desc.depth)?;
            let mut steps = Vec::new();
            for (k, p) in chain.iter().enumerate() {
                let lambda = k + 1;
                let upper = tower.level(lambda + 1)?;
                let lower = tower.level(lambda)?;
                steps.push(ChainStepDoc {
                    level: lambda,
                    map: PartialSurjectionDoc::from_partial(p),
                    source_multiplicities: upper.spectral_data()?.multiplicities().to_vec(),
                    target_multiplicities: lower.spectral_data()?.multiplicities().to_vec(),
                });
            }
            if cli.json {
                emit(out, &steps)?;
            } else {
                for s in &steps {
                    writeln!(out, "J_{} -> J_{}:", s.level + 1, s.level)?;
                    for l in &s.map.source {
                        match s.map.map.get(l) {
                            Some(t) => writeln!(out, "  {l} -> {t}")?,
                            None => writeln!(out, "  {l} -> (outside domain)")?,
                        }
                    }
                }
            }
            Ok(0)
        }
        TowerCmd::Isolate { tower: a, j } => {
            let (desc, mut tower) = tower_from(a)?;
            let r = isolate(&mut tower, j, desc.depth)?;
            let doc = IsolationDoc::from_record(j, r.as_ref(), desc.depth);
            if cli.json {
                emit(out, &doc)?;
            } else {
                match &r {
                    Some(r) => writeln!(
                        out,
                        "{} isolated at level {} to {} (m = {}), checked through level {}",
                        r.j, r.isolated_at, r.j_lambda, r.multiplicity, r.checked_through
                    )?,
                    None => writeln!(out, "{j} is not isolated within depth {}", desc.depth)?,
                }
            }
            Ok(if r.is_some() { 0 } else { 1 })
        }
    }
}
