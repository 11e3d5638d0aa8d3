//! Command-line driver. Every subcommand prints one conclusion line first,
//! then witness or certificate lines.
//!
//! Exit codes: 0 the property holds or the object was produced, 1 the
//! property fails, 2 input error, 3 a bounded procedure could not decide.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::algebra::{check_axioms, validate, Axiom, AxiomReport, ElemId, FiniteMvs, Limits, MvsError, OrderClass, RawTable};
use crate::congruence::{is_congruence, mutual_order_congruence, quotient, CongruenceWitness};
use crate::format::{self, Document, FormatError, QuasimetricDoc};
use crate::iso::find_isomorphism;
use crate::metrize::{search_metrizable, SearchOptions};
use crate::morphism::{hom_violation, HomError, MvsMap};
use crate::quasimetric::{canonical_quasimetric, quotient_metrize, DistanceTable, QuasimetricTable, TopologyError};
use crate::relation::{ElemRelation, EquivalenceFailure};
use crate::sub::adjoin_infinity;
use crate::topology::FiniteTopology;
use crate::words::{
    check_m4, close_with_budget, find_separating_model, present_mvs, verify_representation, Presentation,
    Refutation, RepresentationFailure, StepKind, Tri, WordError,
};

#[derive(Debug, Parser)]
#[command(name = "mvs", version, about = "Finite metric value sets, induced topologies and word presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Maximal word length for bounded word procedures.
    #[arg(long, global = true, default_value_t = 4)]
    bound: usize,
    /// Search budget: tables for `metrize`, words for word procedures.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Only look for symmetric tables in `metrize`.
    #[arg(long, global = true)]
    symmetric: bool,
    /// Largest monoid tried by `words-eq` when the closure is inconclusive; 0 disables.
    #[arg(long, global = true, default_value_t = 3)]
    max_model_size: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the MVS axioms of a table.
    Check { mvs: PathBuf },
    /// Classify the relation ⊴ of an MVS.
    Order { mvs: PathBuf },
    /// Quotient by the equivalence generated by a relation file, or by the
    /// mutual-order congruence when no relation is given.
    Quotient { mvs: PathBuf, relation: Option<PathBuf> },
    /// Check that a map is a homomorphism.
    HomCheck { map: PathBuf },
    /// Kernel classes of a homomorphism.
    HomKernel { map: PathBuf },
    /// Image of a homomorphism as a sub-MVS.
    HomImage { map: PathBuf },
    /// Search for an isomorphism between two MVSs.
    Iso { first: PathBuf, second: PathBuf },
    /// Check that a homomorphism is fine.
    Fine { map: PathBuf },
    /// Adjoin an absorbing infinity element.
    AdjoinInf { mvs: PathBuf },
    /// Check (f1)-(f3) for a distance table.
    QmCheck { quasimetric: PathBuf },
    /// Topology induced by a quasimetric function.
    Topology { quasimetric: PathBuf },
    /// Check that the first function's topology contains the second's.
    Finer { fine: PathBuf, coarse: PathBuf },
    /// Search for a quasimetric function inducing a topology.
    Metrize { topology: PathBuf, mvs: PathBuf },
    /// The quasimetric `(m, n) ↦ least k with m + k = n` on an ordered MVS.
    CanonicalQm { mvs: PathBuf },
    /// Push a quasimetric function into the mutual-order quotient.
    QuotientMetrize { quasimetric: PathBuf },
    /// Decide whether two words are related.
    WordsEq { presentation: PathBuf, u: String, v: String },
    /// Check the common left factor condition for a presentation.
    WordsM4 { presentation: PathBuf },
    /// Presentation of an MVS by its own addition table.
    Present { mvs: PathBuf },
    /// Check that an MVS is recovered from its presentation.
    VerifyRep { mvs: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: expected a {expected} document, found {found}")]
    WrongKind {
        path: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("{path}: not an MVS: {report}")]
    NotMvs { path: String, report: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Mvs(#[from] MvsError),
    #[error("output: {0}")]
    Output(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    fn code(self) -> i32 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Unknown => 3,
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

/// Runs the driver on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Check { mvs } => cmd_check(mvs, out),
        Command::Order { mvs } => cmd_order(mvs, out),
        Command::Quotient { mvs, relation } => cmd_quotient(mvs, relation.as_deref(), out),
        Command::HomCheck { map } => cmd_hom_check(map, out),
        Command::HomKernel { map } => cmd_hom_kernel(map, out),
        Command::HomImage { map } => cmd_hom_image(map, out),
        Command::Iso { first, second } => cmd_iso(first, second, out),
        Command::Fine { map } => cmd_fine(map, out),
        Command::AdjoinInf { mvs } => cmd_adjoin_inf(mvs, out),
        Command::QmCheck { quasimetric } => cmd_qm_check(quasimetric, out),
        Command::Topology { quasimetric } => cmd_topology(quasimetric, out),
        Command::Finer { fine, coarse } => cmd_finer(fine, coarse, out),
        Command::Metrize { topology, mvs } => cmd_metrize(cli, topology, mvs, out),
        Command::CanonicalQm { mvs } => cmd_canonical_qm(mvs, out),
        Command::QuotientMetrize { quasimetric } => cmd_quotient_metrize(quasimetric, out),
        Command::WordsEq { presentation, u, v } => cmd_words_eq(cli, presentation, u, v, out),
        Command::WordsM4 { presentation } => cmd_words_m4(cli, presentation, out),
        Command::Present { mvs } => cmd_present(mvs, out),
        Command::VerifyRep { mvs } => cmd_verify_rep(cli, mvs, out),
    }
}

fn show(path: &Path) -> String {
    path.display().to_string()
}

fn load(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: show(path),
        source,
    })?;
    format::parse(&text).map_err(|source| CliError::Format {
        path: show(path),
        source,
    })
}

fn wrong_kind(path: &Path, expected: &'static str, doc: &Document) -> CliError {
    CliError::WrongKind {
        path: show(path),
        expected,
        found: doc.kind(),
    }
}

fn load_raw(path: &Path) -> Result<RawTable, CliError> {
    match load(path)? {
        Document::Mvs(raw) => Ok(raw),
        other => Err(wrong_kind(path, "mvs", &other)),
    }
}

fn load_mvs(path: &Path) -> Result<FiniteMvs, CliError> {
    let raw = load_raw(path)?;
    validate(&raw).map_err(|e| match e {
        MvsError::AxiomViolation(report) => CliError::NotMvs {
            path: show(path),
            report: describe_axioms(&report),
        },
        other => CliError::NotMvs {
            path: show(path),
            report: other.to_string(),
        },
    })
}

/// Resolves a path written inside `doc_path`.
fn relative(doc_path: &Path, inner: &str) -> PathBuf {
    doc_path.parent().unwrap_or(Path::new("")).join(inner)
}

fn element(m: &FiniteMvs, name: &str, path: &Path) -> Result<ElemId, CliError> {
    m.index_of(name)
        .ok_or_else(|| CliError::Input(format!("{}: unknown element `{name}`", show(path))))
}

/// Domain, codomain and the mapping listed in a map document.
fn load_map_parts(path: &Path) -> Result<(FiniteMvs, FiniteMvs, Vec<ElemId>), CliError> {
    let doc = match load(path)? {
        Document::Map(m) => m,
        other => return Err(wrong_kind(path, "map", &other)),
    };
    let domain = load_mvs(&relative(path, &doc.from))?;
    let codomain = load_mvs(&relative(path, &doc.to))?;
    let mut mapping = vec![None; domain.card()];
    for (a, b) in &doc.sends {
        let x = element(&domain, a, path)?;
        let y = element(&codomain, b, path)?;
        if mapping[x.0].replace(y).is_some() {
            return Err(CliError::Input(format!("{}: `{a}` is sent twice", show(path))));
        }
    }
    let mapping = mapping
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| CliError::Input(format!("{}: no image for `{}`", show(path), domain.name(ElemId(i))))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((domain, codomain, mapping))
}

fn load_hom(path: &Path) -> Result<MvsMap, CliError> {
    let (d, c, mapping) = load_map_parts(path)?;
    MvsMap::new(d, c, mapping).map_err(|e| CliError::Input(format!("{}: not a homomorphism: {e}", show(path))))
}

fn load_distance_table(path: &Path) -> Result<(QuasimetricDoc, DistanceTable), CliError> {
    let doc = match load(path)? {
        Document::Quasimetric(q) => q,
        other => return Err(wrong_kind(path, "quasimetric", &other)),
    };
    let m = load_mvs(&relative(path, &doc.mvs))?;
    let rows = doc
        .rows
        .iter()
        .map(|r| r.iter().map(|v| element(&m, v, path)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let table = DistanceTable::new(doc.points.clone(), m, rows)?;
    Ok((doc, table))
}

fn load_quasimetric(path: &Path) -> Result<(QuasimetricDoc, QuasimetricTable), CliError> {
    let (doc, table) = load_distance_table(path)?;
    let q = QuasimetricTable::try_from(table)
        .map_err(|e| CliError::Input(format!("{}: {e}", show(path))))?;
    Ok((doc, q))
}

fn load_presentation(path: &Path) -> Result<Presentation, CliError> {
    match load(path)? {
        Document::Presentation(p) => Ok(p),
        other => Err(wrong_kind(path, "presentation", &other)),
    }
}

fn names(m: &FiniteMvs, items: &[ElemId]) -> String {
    items.iter().map(|&x| m.name(x)).collect::<Vec<_>>().join(" ")
}

fn describe_axioms(report: &AxiomReport) -> String {
    let failed: Vec<String> = report.failed().iter().map(|a| a.to_string()).collect();
    format!("{} fails", failed.join(", "))
}

fn quasimetric_text(q: &QuasimetricTable, mvs_path: &str) -> String {
    let m = q.mvs();
    let doc = Document::Quasimetric(QuasimetricDoc {
        points: q.points().to_vec(),
        mvs: mvs_path.to_string(),
        rows: q
            .rows()
            .iter()
            .map(|r| r.iter().map(|&v| m.name(v).to_string()).collect())
            .collect(),
    });
    format::serialize(&doc)
}

fn cmd_check(path: &Path, out: &mut dyn Write) -> CmdResult {
    let raw = load_raw(path)?;
    let report = check_axioms(&raw);
    if report.is_mvs() {
        let m = validate(&raw)?;
        writeln!(out, "MVS: axioms M1-M4 hold")?;
        writeln!(out, "neutral: {}", m.name(m.neutral()))?;
        writeln!(out, "commutative: {}", if m.is_commutative() { "yes" } else { "no" })?;
        return Ok(Outcome::Holds);
    }
    writeln!(out, "NOT AN MVS: {}", describe_axioms(&report))?;
    for (axiom, witness) in &report.witnesses {
        let w: Vec<&str> = witness.iter().map(|&x| raw.names()[x.0].as_str()).collect();
        let explanation = match axiom {
            Axiom::Card => "carrier has fewer than two elements",
            Axiom::M1 => "(a+b)+c != a+(b+c)",
            Axiom::M2 => "each candidate neutral is refuted by the listed element",
            Axiom::M3 => "a+b is neutral with a, b not both neutral",
            Axiom::M4 => "no common nonzero left divisor",
        };
        if w.is_empty() {
            writeln!(out, "{axiom}: cannot be stated without a neutral element")?;
        } else {
            writeln!(out, "{axiom} witness: {} ({explanation})", w.join(" "))?;
        }
    }
    Ok(Outcome::Fails)
}

fn cmd_order(path: &Path, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(path)?;
    let outcome = match m.order_class() {
        OrderClass::TotallyOrdered => {
            writeln!(out, "TOTALLY ORDERED")?;
            Outcome::Holds
        }
        OrderClass::PartiallyOrdered => {
            writeln!(out, "PARTIALLY ORDERED")?;
            Outcome::Holds
        }
        OrderClass::NotAntisymmetric(a, b) => {
            writeln!(out, "NOT ANTISYMMETRIC: {0} ⊴ {1} and {1} ⊴ {0}", m.name(a), m.name(b))?;
            Outcome::Fails
        }
    };
    for a in m.elements() {
        let above: Vec<ElemId> = m.elements().filter(|&b| m.leq(a, b)).collect();
        writeln!(out, "{} ⊴ {}", m.name(a), names(&m, &above))?;
    }
    Ok(outcome)
}

fn congruence_witness(m: &FiniteMvs, w: &CongruenceWitness) -> String {
    match *w {
        CongruenceWitness::NotEquivalence(EquivalenceFailure::NotReflexive(a)) => {
            format!("{} is not related to itself", m.name(a))
        }
        CongruenceWitness::NotEquivalence(EquivalenceFailure::NotSymmetric(a, b)) => {
            format!("{} R {} but not conversely", m.name(a), m.name(b))
        }
        CongruenceWitness::NotEquivalence(EquivalenceFailure::NotTransitive(a, b, c)) => {
            format!("{} R {} R {} but not {} R {}", m.name(a), m.name(b), m.name(c), m.name(a), m.name(c))
        }
        CongruenceWitness::Incompatible { m: a, m2: a2, n, n2 } => format!(
            "{} R {} and {} R {} but {}+{} = {} is not related to {}+{} = {}",
            m.name(a),
            m.name(a2),
            m.name(n),
            m.name(n2),
            m.name(a),
            m.name(n),
            m.name(m.add(a, n)),
            m.name(a2),
            m.name(n2),
            m.name(m.add(a2, n2))
        ),
    }
}

fn cmd_quotient(path: &Path, relation: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(path)?;
    let r = match relation {
        Some(rp) => {
            let pairs = match load(rp)? {
                Document::Relation(p) => p,
                other => return Err(wrong_kind(rp, "relation", &other)),
            };
            let ids = pairs
                .iter()
                .map(|(a, b)| Ok((element(&m, a, rp)?, element(&m, b, rp)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            ElemRelation::from_pairs(m.card(), ids).equivalence_closure()
        }
        None => mutual_order_congruence(&m)
            .map_err(|e| CliError::Input(format!("{}: {e}", show(path))))?,
    };
    match quotient(&m, &r) {
        Ok(q) => {
            writeln!(out, "QUOTIENT: {} classes", q.mvs.card())?;
            for class in r.classes() {
                writeln!(out, "class {}: {}", m.name(class[0]), names(&m, &class))?;
            }
            writeln!(out)?;
            write!(out, "{}", format::serialize(&format::mvs_document(&q.mvs)))?;
            Ok(Outcome::Holds)
        }
        Err(MvsError::NeutralClassNotTrivial(class)) => {
            let e = m.name(m.neutral());
            writeln!(out, "NO QUOTIENT MVS: class of {e} is {{{}}}, not {{{e}}}", names(&m, &class))?;
            Ok(Outcome::Fails)
        }
        Err(MvsError::NotACongruence(w)) => {
            writeln!(out, "NOT A CONGRUENCE: {}", congruence_witness(&m, &w))?;
            Ok(Outcome::Fails)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_hom_check(path: &Path, out: &mut dyn Write) -> CmdResult {
    let (d, c, mapping) = load_map_parts(path)?;
    match hom_violation(&d, &c, &mapping) {
        Ok(()) => {
            writeln!(out, "HOMOMORPHISM: H1 and H2 hold")?;
            Ok(Outcome::Holds)
        }
        Err(HomError::H1Violation(x)) => {
            writeln!(
                out,
                "NOT A HOMOMORPHISM: H1 fails at {}: {} -> {}",
                d.name(x),
                d.name(x),
                c.name(mapping[x.0])
            )?;
            Ok(Outcome::Fails)
        }
        Err(HomError::H2Violation(x, y)) => {
            let s = d.add(x, y);
            writeln!(out, "NOT A HOMOMORPHISM: H2 fails at ({}, {})", d.name(x), d.name(y))?;
            writeln!(
                out,
                "h({}) = {} but h({}) + h({}) = {}",
                d.name(s),
                c.name(mapping[s.0]),
                d.name(x),
                d.name(y),
                c.name(c.add(mapping[x.0], mapping[y.0]))
            )?;
            Ok(Outcome::Fails)
        }
        Err(e) => Err(CliError::Input(format!("{}: {e}", show(path)))),
    }
}

fn cmd_hom_kernel(path: &Path, out: &mut dyn Write) -> CmdResult {
    let h = load_hom(path)?;
    let k = h.kernel();
    let classes = k.classes();
    writeln!(out, "KERNEL: {} classes, congruence with trivial neutral class", classes.len())?;
    debug_assert!(is_congruence(h.domain(), &k).is_ok());
    for class in classes {
        writeln!(out, "class {}: {}", h.domain().name(class[0]), names(h.domain(), &class))?;
    }
    Ok(Outcome::Holds)
}

fn cmd_hom_image(path: &Path, out: &mut dyn Write) -> CmdResult {
    let h = load_hom(path)?;
    let image = h.image_mvs();
    writeln!(out, "IMAGE: sub-MVS with {} elements", image.mvs.card())?;
    writeln!(out, "elements: {}", names(h.codomain(), &image.embedding))?;
    writeln!(out)?;
    write!(out, "{}", format::serialize(&format::mvs_document(&image.mvs)))?;
    Ok(Outcome::Holds)
}

fn cmd_iso(first: &Path, second: &Path, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(first)?;
    let n = load_mvs(second)?;
    match find_isomorphism(&m, &n) {
        Some(h) => {
            writeln!(out, "ISOMORPHIC")?;
            for x in m.elements() {
                writeln!(out, "send {} -> {}", m.name(x), n.name(h.apply(x)))?;
            }
            Ok(Outcome::Holds)
        }
        None => {
            writeln!(out, "NOT ISOMORPHIC")?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_fine(path: &Path, out: &mut dyn Write) -> CmdResult {
    let h = load_hom(path)?;
    match h.is_fine() {
        Ok(()) => {
            writeln!(out, "FINE: every nonzero element dominates a nonzero image")?;
            Ok(Outcome::Holds)
        }
        Err(n) => {
            writeln!(out, "NOT FINE: {} dominates no nonzero image", h.codomain().name(n))?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_adjoin_inf(path: &Path, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(path)?;
    let ext = adjoin_infinity(&m);
    writeln!(out, "EXTENDED: adjoined absorbing element {}", ext.mvs.name(ext.infinity))?;
    writeln!(out)?;
    write!(out, "{}", format::serialize(&format::mvs_document(&ext.mvs)))?;
    Ok(Outcome::Holds)
}

fn cmd_qm_check(path: &Path, out: &mut dyn Write) -> CmdResult {
    let (doc, table) = load_distance_table(path)?;
    let report = table.check();
    let p = &doc.points;
    if report.is_quasimetric() {
        if report.is_metric() {
            writeln!(out, "METRIC: f1, f2, f3 hold")?;
        } else {
            writeln!(out, "QUASIMETRIC: f1, f2 hold")?;
            let (x, y) = report.f3.unwrap();
            writeln!(out, "not symmetric at ({}, {})", p[x], p[y])?;
        }
        return Ok(Outcome::Holds);
    }
    writeln!(out, "NOT QUASIMETRIC")?;
    if let Some((x, y, z)) = report.f1 {
        writeln!(out, "f1 fails at ({}, {}, {})", p[x], p[y], p[z])?;
    }
    if let Some(x) = report.f2 {
        writeln!(out, "f2 fails at {}", p[x])?;
    }
    Ok(Outcome::Fails)
}

fn cmd_topology(path: &Path, out: &mut dyn Write) -> CmdResult {
    let (_, q) = load_quasimetric(path)?;
    let t = q.induced_topology();
    writeln!(out, "TOPOLOGY: {} open sets", t.opens().len())?;
    writeln!(out)?;
    write!(out, "{}", format::serialize(&Document::Topology(t)))?;
    Ok(Outcome::Holds)
}

fn set_text(t: &FiniteTopology, u: crate::topology::PointSet) -> String {
    let names: Vec<&str> = u.iter().map(|x| t.points()[x].as_str()).collect();
    format!("{{{}}}", names.join(" "))
}

fn cmd_finer(fine: &Path, coarse: &Path, out: &mut dyn Write) -> CmdResult {
    let (_, q1) = load_quasimetric(fine)?;
    let (_, q2) = load_quasimetric(coarse)?;
    if q1.points() != q2.points() {
        return Err(TopologyError::PointSetMismatch.into());
    }
    let t1 = q1.induced_topology();
    let t2 = q2.induced_topology();
    match t2.opens().iter().find(|u| !t1.is_open(**u)) {
        None => {
            let same = t1 == t2;
            writeln!(out, "FINER: every open set of the second function is open for the first")?;
            writeln!(out, "equivalent: {}", if same { "yes" } else { "no" })?;
            Ok(Outcome::Holds)
        }
        Some(&u) => {
            writeln!(out, "NOT FINER: {} is open for the second function only", set_text(&t2, u))?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_metrize(cli: &Cli, topology: &Path, mvs: &Path, out: &mut dyn Write) -> CmdResult {
    let t = match load(topology)? {
        Document::Topology(t) => t,
        other => return Err(wrong_kind(topology, "topology", &other)),
    };
    let m = load_mvs(mvs)?;
    let options = SearchOptions {
        symmetric: cli.symmetric,
        budget: cli.budget.unwrap_or(Limits::default().search_budget),
    };
    let kind = if cli.symmetric { "metric" } else { "quasimetric" };
    match search_metrizable(&t, &m, options) {
        Ok(Some(q)) => {
            writeln!(out, "METRIZABLE: found a {kind} function inducing the topology")?;
            writeln!(out)?;
            let file = mvs.file_name().map_or_else(|| show(mvs), |f| f.to_string_lossy().into_owned());
            write!(out, "{}", quasimetric_text(&q, &file))?;
            Ok(Outcome::Holds)
        }
        Ok(None) => {
            writeln!(out, "NOT METRIZABLE: no {kind} function into this MVS induces the topology")?;
            Ok(Outcome::Fails)
        }
        Err(TopologyError::BudgetExceeded { needed, budget }) => {
            writeln!(out, "UNKNOWN: search space of {needed} tables exceeds the budget of {budget}")?;
            Ok(Outcome::Unknown)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_canonical_qm(path: &Path, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(path)?;
    match canonical_quasimetric(&m) {
        Ok(q) => {
            writeln!(out, "CANONICAL QUASIMETRIC: {} points", q.len())?;
            writeln!(out)?;
            let file = path.file_name().map_or_else(|| show(path), |f| f.to_string_lossy().into_owned());
            write!(out, "{}", quasimetric_text(&q, &file))?;
            Ok(Outcome::Holds)
        }
        Err(TopologyError::Mvs(MvsError::NotCommutative(a, b))) => {
            writeln!(out, "NO CANONICAL QUASIMETRIC: {} + {} differs from {} + {}", m.name(a), m.name(b), m.name(b), m.name(a))?;
            Ok(Outcome::Fails)
        }
        Err(e) => {
            writeln!(out, "NO CANONICAL QUASIMETRIC: {e}")?;
            Ok(Outcome::Fails)
        }
    }
}

fn cmd_quotient_metrize(path: &Path, out: &mut dyn Write) -> CmdResult {
    let (doc, q) = load_quasimetric(path)?;
    let target = quotient_metrize(&q).map_err(|e| CliError::Input(format!("{}: {e}", show(path))))?;
    writeln!(out, "QUOTIENT METRIC: same topology, values in a partially ordered MVS")?;
    writeln!(out)?;
    write!(out, "{}", format::serialize(&format::mvs_document(target.mvs())))?;
    writeln!(out)?;
    let quotient_file = format!("{}.quotient.mvs", doc.mvs.trim_end_matches(".mvs"));
    write!(out, "{}", quasimetric_text(&target, &quotient_file))?;
    Ok(Outcome::Holds)
}

fn cmd_words_eq(cli: &Cli, path: &Path, u: &str, v: &str, out: &mut dyn Write) -> CmdResult {
    let p = load_presentation(path)?;
    let wu = p.parse_word(u)?;
    let wv = p.parse_word(v)?;
    let budget = cli.budget.unwrap_or(Limits::default().word_budget);
    let cong = match close_with_budget(&p, cli.bound, budget) {
        Ok(c) => c,
        Err(e @ WordError::SizeExceeded { .. }) => {
            writeln!(out, "UNKNOWN: {e}")?;
            return Ok(Outcome::Unknown);
        }
        Err(e) => return Err(e.into()),
    };
    let (su, sv) = (p.format_word(&wu), p.format_word(&wv));
    match cong.equal(&wu, &wv)? {
        Tri::Proved(chain) => {
            writeln!(out, "PROVED: {su} ~ {sv} in {} steps", chain.len())?;
            for s in &chain.steps {
                let dir = match s.kind {
                    StepKind::Shorten => "",
                    StepKind::Lengthen => " (reversed)",
                };
                writeln!(
                    out,
                    "{} → {} via {}{dir}",
                    p.format_word(&s.from),
                    p.format_word(&s.to),
                    p.format_relation(s.relation)
                )?;
            }
            Ok(Outcome::Holds)
        }
        Tri::Refuted(Refutation::ExactClass(w)) => {
            let class = cong.class_of(&w)?;
            writeln!(out, "REFUTED: class of {} is exact and disjoint", p.format_word(&w))?;
            let members: Vec<String> = cong.members(class).map(|m| p.format_word(&m)).collect();
            writeln!(out, "class: {}", members.join(" "))?;
            Ok(Outcome::Fails)
        }
        Tri::Refuted(Refutation::Model(_)) => unreachable!("closures only refute by exactness"),
        Tri::Unknown => {
            if let Some(model) = find_separating_model(&p, &wu, &wv, cli.max_model_size) {
                writeln!(out, "REFUTED: separated by a monoid model of size {}", model.size)?;
                for x in 0..model.size {
                    let row: Vec<String> = (0..model.size).map(|y| model.mul(x, y).to_string()).collect();
                    writeln!(out, "row {x}: {}", row.join(" "))?;
                }
                let assignment: Vec<String> = p
                    .alphabet()
                    .iter()
                    .zip(&model.assignment)
                    .map(|(l, v)| format!("{l} -> {v}"))
                    .collect();
                writeln!(out, "assignment: {}", assignment.join(", "))?;
                writeln!(out, "value of {su}: {}, value of {sv}: {}", model.eval(&wu), model.eval(&wv))?;
                return Ok(Outcome::Fails);
            }
            writeln!(out, "UNKNOWN: not decided at bound {}", cli.bound)?;
            Ok(Outcome::Unknown)
        }
    }
}

fn cmd_words_m4(cli: &Cli, path: &Path, out: &mut dyn Write) -> CmdResult {
    let p = load_presentation(path)?;
    let l = p.alphabet();
    match check_m4(&p, cli.bound)? {
        Tri::Proved(witnesses) => {
            writeln!(out, "M4: every two letters have a common left factor")?;
            for w in witnesses {
                writeln!(
                    out,
                    "{}, {}: {}*{} and {}*{}",
                    l[w.a],
                    l[w.b],
                    l[w.c],
                    p.format_word(&w.u_bar),
                    l[w.c],
                    p.format_word(&w.v_bar)
                )?;
            }
            Ok(Outcome::Holds)
        }
        Tri::Refuted((a, b)) => {
            writeln!(out, "M4 FAILS: classes of {} and {} are exact with no common left factor", l[a], l[b])?;
            Ok(Outcome::Fails)
        }
        Tri::Unknown => {
            writeln!(out, "UNKNOWN: not decided at bound {}", cli.bound)?;
            Ok(Outcome::Unknown)
        }
    }
}

fn cmd_present(path: &Path, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(path)?;
    let p = present_mvs(&m);
    writeln!(out, "PRESENTATION: {} letters, {} relations", p.alphabet().len(), p.relations().len())?;
    writeln!(out)?;
    write!(out, "{}", format::serialize(&Document::Presentation(p)))?;
    Ok(Outcome::Holds)
}

fn cmd_verify_rep(cli: &Cli, path: &Path, out: &mut dyn Write) -> CmdResult {
    let m = load_mvs(path)?;
    let report = verify_representation(&m, cli.bound)?;
    let p = &report.presentation;
    match &report.failure {
        None => {
            writeln!(out, "REPRESENTATION: verified at bound {}", cli.bound)?;
            for (x, w) in m.elements().zip(&report.classes) {
                writeln!(out, "{} -> [{}]", m.name(x), p.format_word(w))?;
            }
            Ok(Outcome::Holds)
        }
        Some(f) => {
            let text = match f {
                RepresentationFailure::Unreduced(w) => format!("{} is not related to a word of length at most 1", p.format_word(w)),
                RepresentationFailure::NotInjective(a, b) => format!("{} and {} share a class", m.name(*a), m.name(*b)),
                RepresentationFailure::SumMismatch(a, b) => format!("class of {}*{} is not the class of the sum", m.name(*a), m.name(*b)),
            };
            writeln!(out, "REPRESENTATION FAILS: {text}")?;
            Ok(Outcome::Fails)
        }
    }
}
