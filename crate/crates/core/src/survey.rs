//! Exhaustive and sampled verification runs over families of graphs and
//! posets, with deterministic JSON and CSV reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checks::{Check, Mode};
use crate::chromatic::chromatic_decomposition;
use crate::error::{Error, Result, SkipReason};
use crate::flows::flow_polynomials;
use crate::graph::{connected_simple_graphs, Multigraph, DEFAULT_ORIENTATION_EDGE_CAP};
use crate::order::analyze_poset;
use crate::poly::JsonInt;
use crate::poset::{all_posets, Poset};
use crate::stapledon::AuditReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurveyKind {
    Graphs,
    Posets,
    Flows,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurveyMode {
    #[default]
    Exhaustive,
    Sample,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub kind: SurveyKind,
    pub mode: SurveyMode,
    /// Largest vertex or element count.
    pub max_size: usize,
    /// Largest cyclomatic number for flow surveys.
    pub max_xi: usize,
    pub seed: u64,
    /// Random instances in sample mode.
    pub samples: usize,
    /// Edge cap for orientation enumeration; larger instances are skipped.
    pub cap_edges: usize,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Instance files replacing the generated family.
    #[serde(skip)]
    pub files: Vec<PathBuf>,
}

impl SurveyConfig {
    pub fn new(kind: SurveyKind, max_size: usize) -> Self {
        Self {
            kind,
            mode: SurveyMode::Exhaustive,
            max_size,
            max_xi: 5,
            seed: 0,
            samples: 50,
            cap_edges: DEFAULT_ORIENTATION_EDGE_CAP,
            threads: None,
            files: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Subject {
    Graph(Multigraph),
    Poset(Poset),
}

impl Subject {
    fn size(&self) -> usize {
        match self {
            Subject::Graph(g) => g.vertex_count(),
            Subject::Poset(p) => p.len(),
        }
    }

    fn text(&self) -> String {
        match self {
            Subject::Graph(g) => g.to_text(),
            Subject::Poset(p) => p.to_text(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub subject: Subject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceVerdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: String,
    pub size: usize,
    /// The instance in its plain-text input format.
    pub input: String,
    pub verdict: InstanceVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<SkipReason>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Star vectors and split parts, by name.
    pub vectors: BTreeMap<String, Vec<JsonInt>>,
    pub failed_checks: Vec<Check>,
    pub audits: Vec<AuditReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub skipped_by_reason: BTreeMap<SkipReason, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurveyReport {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub scope: SurveyConfig,
    /// SHA-256 of every input file, or of the generated instance list.
    pub input_hashes: BTreeMap<String, String>,
    pub totals: Totals,
    pub counterexamples: Vec<String>,
    pub instances: Vec<InstanceReport>,
    /// Wall-clock time; excluded from [`SurveyReport::digest`].
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl SurveyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// JSON with the timing field removed.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = None;
        serde_json::to_string_pretty(&copy).expect("report serializes")
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.deterministic_json().as_bytes())
    }

    /// One row per audit row of every instance.
    pub fn write_audit_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for inst in &self.instances {
            write_audit_rows(&mut w, &inst.id, &inst.audits)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    instance: &'a str,
    family: String,
    degree: usize,
    j: usize,
    lhs: String,
    relation: &'a str,
    rhs: String,
    holds: bool,
}

pub(crate) fn write_audit_rows<W: std::io::Write>(
    w: &mut csv::Writer<W>,
    instance: &str,
    audits: &[AuditReport],
) -> Result<()> {
    for audit in audits {
        let degree = audit.parameters.values().next().copied().unwrap_or(0);
        for row in &audit.rows {
            w.serialize(CsvRow {
                instance,
                family: audit.family.to_string(),
                degree,
                j: row.j,
                lhs: row.lhs.to_string(),
                relation: &audit.relation,
                rhs: row.rhs.to_string(),
                holds: row.holds,
            })
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        }
    }
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Multigraphs always added to flow surveys: dipoles with 2 to 5 parallel
/// edges, the theta graph, and `K4` with one edge doubled.
pub fn flow_fixtures() -> Vec<(String, Multigraph)> {
    let mut out: Vec<(String, Multigraph)> = (2..=5)
        .map(|k| (format!("fixture:dipole-{k}"), Multigraph::dipole(k)))
        .collect();
    out.push(("fixture:theta".into(), Multigraph::theta()));
    let mut edges = Multigraph::complete(4).edges().to_vec();
    edges.push((0, 1));
    out.push(("fixture:k4-doubled-edge".into(), Multigraph::new(4, edges).expect("valid fixture")));
    out
}

fn graph_id(prefix: &str, g: &Multigraph) -> String {
    match g.canonical_certificate() {
        Ok(cert) => format!("{prefix}:v{}:{cert:016x}", g.vertex_count()),
        Err(_) => format!("{prefix}:v{}:{}", g.vertex_count(), &sha256_hex(g.to_text().as_bytes())[..16]),
    }
}

fn poset_id(prefix: &str, p: &Poset) -> String {
    match p.canonical_certificate() {
        Ok(cert) => format!("{prefix}:e{}:{cert:016x}", p.len()),
        Err(_) => format!("{prefix}:e{}:{}", p.len(), &sha256_hex(p.to_text().as_bytes())[..16]),
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Multigraph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Multigraph::new(n, edges).expect("valid random graph")
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Result<Poset> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.3))
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Poset::from_relations(n, &pairs)
}

/// The instance family selected by `config`.
pub fn generate_instances(config: &SurveyConfig) -> Result<Vec<Instance>> {
    if !config.files.is_empty() {
        return config
            .files
            .iter()
            .map(|path| {
                let subject = match config.kind {
                    SurveyKind::Posets => Subject::Poset(Poset::from_file(path)?),
                    _ => Subject::Graph(Multigraph::from_file(path)?),
                };
                Ok(Instance { id: format!("file:{}", path.display()), subject })
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    match (config.kind, config.mode) {
        (SurveyKind::Graphs, SurveyMode::Exhaustive) | (SurveyKind::Flows, SurveyMode::Exhaustive) => {
            for d in 1..=config.max_size {
                for g in connected_simple_graphs(d)? {
                    out.push(Instance { id: graph_id("graph", &g), subject: Subject::Graph(g) });
                }
            }
        }
        (SurveyKind::Posets, SurveyMode::Exhaustive) => {
            for d in 1..=config.max_size {
                for p in all_posets(d)? {
                    out.push(Instance { id: poset_id("poset", &p), subject: Subject::Poset(p) });
                }
            }
        }
        (SurveyKind::Graphs, SurveyMode::Sample) | (SurveyKind::Flows, SurveyMode::Sample) => {
            for d in 3..=config.max_size {
                for (name, g) in [
                    ("complete", Multigraph::complete(d)),
                    ("cycle", Multigraph::cycle(d)),
                    ("wheel", Multigraph::wheel(d - 1)),
                ] {
                    out.push(Instance { id: format!("family:{name}-{d}"), subject: Subject::Graph(g) });
                }
            }
            for i in 0..config.samples {
                let d = rng.gen_range(1..=config.max_size.max(1));
                let g = random_graph(&mut rng, d);
                out.push(Instance { id: graph_id(&format!("sample-{i:04}"), &g), subject: Subject::Graph(g) });
            }
        }
        (SurveyKind::Posets, SurveyMode::Sample) => {
            for i in 0..config.samples {
                let d = rng.gen_range(1..=config.max_size.max(1));
                let p = random_poset(&mut rng, d)?;
                out.push(Instance { id: poset_id(&format!("sample-{i:04}"), &p), subject: Subject::Poset(p) });
            }
        }
    }
    if config.kind == SurveyKind::Flows {
        out.extend(
            flow_fixtures()
                .into_iter()
                .map(|(id, g)| Instance { id, subject: Subject::Graph(g) }),
        );
    }
    Ok(out)
}

fn vec_entry(name: &str, v: &[BigInt]) -> (String, Vec<JsonInt>) {
    (name.to_string(), v.iter().cloned().map(JsonInt).collect())
}

type Findings = (Vec<Check>, BTreeMap<String, Vec<JsonInt>>, Vec<AuditReport>);

/// Runs every check for one instance in explore mode and classifies it.
fn run_instance(kind: SurveyKind, inst: &Instance, config: &SurveyConfig) -> InstanceReport {
    let mut report = InstanceReport {
        id: inst.id.clone(),
        size: inst.subject.size(),
        input: inst.subject.text(),
        verdict: InstanceVerdict::Pass,
        reason: None,
        error: None,
        vectors: BTreeMap::new(),
        failed_checks: vec![],
        audits: vec![],
    };
    let outcome: Result<Findings> =
        match (&inst.subject, kind) {
            (Subject::Graph(g), _) if g.edge_count() > config.cap_edges => Err(Error::CapExceeded {
                what: "edges",
                value: g.edge_count() as u128,
                cap: config.cap_edges as u128,
            }),
            (Subject::Graph(g), SurveyKind::Flows) if g.cyclomatic_number() > config.max_xi && g.is_bridgeless() => {
                Err(Error::CapExceeded {
                    what: "cyclomatic number",
                    value: g.cyclomatic_number() as u128,
                    cap: config.max_xi as u128,
                })
            }
            (Subject::Graph(g), SurveyKind::Flows) => flow_polynomials(g, Mode::Explore).map(|r| {
                let vectors = BTreeMap::from([
                    vec_entry("phi_star", r.phi_star.entries()),
                    vec_entry("f_star", r.f_star.entries()),
                    vec_entry("alpha", &r.phi_split.p),
                    vec_entry("beta", &r.phi_split.q),
                    vec_entry("c", &r.f_split.p),
                    vec_entry("d", &r.f_split.q),
                ]);
                (r.checks, vectors, r.audits)
            }),
            (Subject::Graph(g), _) => chromatic_decomposition(g, Mode::Explore).map(|r| {
                let vectors = BTreeMap::from([
                    vec_entry("chi_star", r.chi_star.entries()),
                    vec_entry("a", &r.split.p),
                    vec_entry("b", &r.split.q),
                ]);
                (r.checks, vectors, r.audits)
            }),
            (Subject::Poset(p), _) => analyze_poset(p, Mode::Explore).map(|r| {
                let vectors = BTreeMap::from([
                    vec_entry("omega_star", r.omega_star.entries()),
                    vec_entry("a", &r.split.p),
                    vec_entry("b", &r.split.q),
                    vec_entry("hstar", r.hstar.entries()),
                    vec_entry("hstar_interior", r.hstar_interior.entries()),
                ]);
                (r.checks, vectors, r.audits)
            }),
        };
    match outcome {
        Ok((checks, vectors, audits)) => {
            report.failed_checks = checks.into_iter().filter(|c| !c.holds).collect();
            if !report.failed_checks.is_empty() {
                report.verdict = InstanceVerdict::Fail;
            }
            report.vectors = vectors;
            report.audits = audits;
        }
        Err(e) => match e.skip_reason() {
            Some(reason) => {
                report.verdict = InstanceVerdict::Skipped;
                report.reason = Some(reason);
                report.error = Some(e.to_string());
            }
            None => {
                report.verdict = InstanceVerdict::Fail;
                report.error = Some(e.to_string());
            }
        },
    }
    report
}

/// Runs a survey. Instances are processed in parallel and the report is
/// sorted by instance id, so it is independent of scheduling.
pub fn cmd_survey(config: &SurveyConfig) -> Result<SurveyReport> {
    let start = Instant::now();
    let instances = generate_instances(config)?;
    let mut input_hashes = BTreeMap::new();
    if config.files.is_empty() {
        let listing: String = instances.iter().map(|i| format!("{}\n{}", i.id, i.subject.text())).collect();
        input_hashes.insert("generated".to_string(), sha256_hex(listing.as_bytes()));
    } else {
        for path in &config.files {
            input_hashes.insert(path.display().to_string(), sha256_hex(&std::fs::read(path)?));
        }
    }

    let run = || -> Vec<InstanceReport> {
        instances
            .par_iter()
            .map(|inst| run_instance(config.kind, inst, config))
            .collect()
    };
    let mut reports = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(run),
        None => run(),
    };
    reports.sort_by(|a, b| a.id.cmp(&b.id));

    let mut totals = Totals { instances: reports.len(), ..Totals::default() };
    let mut counterexamples = Vec::new();
    for r in &reports {
        match r.verdict {
            InstanceVerdict::Pass => totals.passed += 1,
            InstanceVerdict::Fail => {
                totals.failed += 1;
                counterexamples.push(r.id.clone());
            }
            InstanceVerdict::Skipped => {
                totals.skipped += 1;
                *totals.skipped_by_reason.entry(r.reason.expect("skips carry a reason")).or_default() += 1;
            }
        }
    }
    Ok(SurveyReport {
        schema: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scope: config.clone(),
        input_hashes,
        totals,
        counterexamples,
        instances: reports,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_survey() {
        let report = cmd_survey(&SurveyConfig::new(SurveyKind::Graphs, 4)).unwrap();
        assert_eq!(report.totals.instances, 10);
        assert_eq!(report.totals.passed, 10);
        assert!(report.passed());
    }

    #[test]
    fn poset_survey_counts() {
        let report = cmd_survey(&SurveyConfig::new(SurveyKind::Posets, 4)).unwrap();
        assert_eq!(report.totals.instances, 1 + 2 + 5 + 16);
        assert!(report.passed());
    }

    #[test]
    fn flow_survey_skips_bridges() {
        let report = cmd_survey(&SurveyConfig::new(SurveyKind::Flows, 4)).unwrap();
        assert!(report.passed());
        // triangle, square, diamond, K4
        assert_eq!(report.totals.passed, 4 + flow_fixtures().len());
        assert!(report.instances.iter().all(|i| i.verdict != InstanceVerdict::Skipped || i.reason.is_some()));
        let single = report.instances.iter().find(|i| i.size == 1).unwrap();
        assert_eq!(single.reason, Some(SkipReason::Empty));
    }

    #[test]
    fn sampled_runs_are_deterministic() {
        let mut config = SurveyConfig::new(SurveyKind::Graphs, 6);
        config.mode = SurveyMode::Sample;
        config.samples = 12;
        config.seed = 7;
        let a = cmd_survey(&config).unwrap();
        config.threads = Some(1);
        let b = cmd_survey(&config).unwrap();
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert!(a.passed());
        config.seed = 8;
        let c = cmd_survey(&config).unwrap();
        assert_ne!(a.digest(), c.digest());
    }

    #[test]
    fn csv_export() {
        let report = cmd_survey(&SurveyConfig::new(SurveyKind::Posets, 3)).unwrap();
        let mut buf = Vec::new();
        report.write_audit_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("instance,family,degree,j,lhs,relation,rhs,holds"));
    }
}
