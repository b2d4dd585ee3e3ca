//! End-to-end runs: enumerate cases, search for certificates, check them
//! exactly, persist them, and audit a certificate directory without the
//! solver.

pub mod files;
mod report;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub use report::{render_report, run_report, ReportRow};

use crate::cases::{enumerate_cases, CaseDescriptor, RootedTree, TetraSelection};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::graph::{
    automorphism_classes, builtin, builtins_with_vertices, load_graph_dir, PolyhedralGraph,
};
use crate::sdp::{rationalize, solve_certificate_sdp, CertificateStatus, SdpProblem, SolverOptions};
use crate::system::{assemble_system, QuadraticSystem};
use crate::verify::{verify, RationalCertificate};
use files::{
    CertificateFile, ManifestGraph, ManifestOptions, RunManifest, SummaryRow, CERTIFICATE_DIR,
    CERTIFICATE_SCHEMA, MANIFEST_FILE, SUMMARY_FILE,
};

/// Knobs for certifying a single case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub solver: SolverOptions,
    pub max_den: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            solver: SolverOptions::default(),
            max_den: 1_000_000,
        }
    }
}

/// Result of certifying one case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub case: CaseDescriptor,
    pub m: usize,
    pub n: usize,
    pub y: Vec<Rational>,
    pub achieved_z: f64,
    pub verified: bool,
    pub attempts: usize,
    pub elapsed_ms: u64,
}

impl CaseOutcome {
    pub fn certificate_file(&self) -> CertificateFile {
        CertificateFile {
            schema: CERTIFICATE_SCHEMA,
            graph: self.case.graph_id.clone(),
            root: self.case.root(),
            parents: self.case.tree.parents().to_vec(),
            tetra_base: self.case.tetra.base(),
            m: self.m,
            n: self.n,
            y: self.y.iter().map(format_rational).collect(),
            achieved_z: self.achieved_z,
            verified: self.verified,
        }
    }

    pub fn summary_row(&self) -> SummaryRow {
        SummaryRow {
            graph: self.case.graph_id.clone(),
            root: self.case.root(),
            tree_index: self.case.tree_index,
            tetra_index: self.case.tetra_index,
            z: self.achieved_z,
            verified: self.verified,
            ms: self.elapsed_ms,
        }
    }
}

/// Solve, round, and check one case.
///
/// Escalation on failure: round again with a 1000× larger denominator
/// bound, then re-solve with 4× the iterations at that bound. Three attempts
/// in total; a case that still fails is reported as unverified.
pub fn certify_case(
    case: &CaseDescriptor,
    g: &PolyhedralGraph,
    opts: &CertifyOptions,
) -> Result<CaseOutcome> {
    let started = Instant::now();
    let system = assemble_system(case, g)?;
    let problem = SdpProblem::from_system(&system)?;

    let attempts = [
        (opts.solver.max_iters, opts.max_den),
        (opts.solver.max_iters, opts.max_den.saturating_mul(1000)),
        (
            opts.solver.max_iters.saturating_mul(4),
            opts.max_den.saturating_mul(1000),
        ),
    ];
    let mut solved: Option<(usize, crate::sdp::FloatCertificate)> = None;
    let mut best_z = 0.0_f64;
    let mut last_y = vec![Rational::from_integer(0.into()); system.len()];
    for (attempt, &(iters, max_den)) in attempts.iter().enumerate() {
        let cert = match &solved {
            Some((done_iters, cert)) if *done_iters == iters => cert.clone(),
            _ => {
                let solver = SolverOptions {
                    max_iters: iters,
                    ..opts.solver
                };
                let cert = solve_certificate_sdp(&problem, &solver);
                solved = Some((iters, cert.clone()));
                cert
            }
        };
        best_z = best_z.max(cert.z);
        if cert.status != CertificateStatus::Positive {
            continue;
        }
        let y = rationalize(&cert, max_den);
        let report = verify(&system, &RationalCertificate { y: y.clone() })?;
        if report.verified {
            return Ok(CaseOutcome {
                case: case.clone(),
                m: system.len(),
                n: system.dimension(),
                y,
                achieved_z: cert.z,
                verified: true,
                attempts: attempt + 1,
                elapsed_ms: started.elapsed().as_millis() as u64,
            });
        }
        last_y = y;
    }
    Ok(CaseOutcome {
        case: case.clone(),
        m: system.len(),
        n: system.dimension(),
        y: last_y,
        achieved_z: best_z,
        verified: false,
        attempts: attempts.len(),
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Certifies `cases` on `workers` threads. Case `i` goes to the worker whose
/// contiguous slice contains it; results come back in input order.
pub fn certify_cases(
    cases: &[CaseDescriptor],
    graphs: &HashMap<String, PolyhedralGraph>,
    opts: &CertifyOptions,
    workers: usize,
) -> Result<Vec<CaseOutcome>> {
    let workers = workers.max(1).min(cases.len().max(1));
    let run_slice = |slice: &[CaseDescriptor]| -> Result<Vec<CaseOutcome>> {
        slice
            .iter()
            .map(|case| {
                let g = graphs
                    .get(&case.graph_id)
                    .ok_or_else(|| Error::UnknownGraph(case.graph_id.clone()))?;
                certify_case(case, g, opts)
            })
            .collect()
    };
    if workers == 1 {
        return run_slice(cases);
    }
    let bounds: Vec<usize> = (0..=workers).map(|w| w * cases.len() / workers).collect();
    let parts: Vec<Result<Vec<CaseOutcome>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .windows(2)
            .map(|w| {
                let slice = &cases[w[0]..w[1]];
                scope.spawn(move || run_slice(slice))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(cases.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// Which vertex counts to process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexSelection {
    All,
    Only(usize),
}

impl VertexSelection {
    pub fn counts(&self) -> Vec<usize> {
        match self {
            VertexSelection::All => vec![5, 6],
            VertexSelection::Only(v) => vec![*v],
        }
    }
}

impl std::str::FromStr for VertexSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(VertexSelection::All);
        }
        match s.parse::<usize>() {
            Ok(v) if v >= 4 => Ok(VertexSelection::Only(v)),
            _ => Err(Error::Config(format!(
                "--vertices expects an integer >= 4 or `all`, got `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProveOptions {
    pub vertices: VertexSelection,
    pub graphs_dir: Option<PathBuf>,
    pub out: PathBuf,
    pub workers: usize,
    pub certify: CertifyOptions,
}

impl ProveOptions {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            vertices: VertexSelection::All,
            graphs_dir: None,
            out: out.into(),
            workers: default_workers(),
            certify: CertifyOptions::default(),
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Aggregates for one vertex count.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexStats {
    pub cases: usize,
    pub verified: usize,
    pub min_z: f64,
}

#[derive(Debug, Clone)]
pub struct ProveSummary {
    pub outcomes: Vec<CaseOutcome>,
    pub per_vertex_count: BTreeMap<usize, VertexStats>,
    pub manifest: RunManifest,
}

impl ProveSummary {
    pub fn total(&self) -> usize {
        self.outcomes.len()
    }

    pub fn verified(&self) -> usize {
        self.outcomes.iter().filter(|o| o.verified).count()
    }

    pub fn all_verified(&self) -> bool {
        self.verified() == self.total()
    }
}

fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis())
}

/// Graphs with `v` vertices, from `dir` when given, else the built-in catalog.
pub fn catalog_graphs(v: usize, dir: Option<&Path>) -> Result<Vec<PolyhedralGraph>> {
    let graphs = match dir {
        Some(dir) => load_graph_dir(dir)?
            .into_iter()
            .filter(|g| g.vertex_count() == v)
            .collect(),
        None => builtins_with_vertices(v),
    };
    if graphs.is_empty() {
        return Err(Error::Config(format!("no graphs with {v} vertices")));
    }
    Ok(graphs)
}

/// Runs the full certification and writes certificates, the summary CSV,
/// and the manifest under `opts.out`.
pub fn run_prove(opts: &ProveOptions) -> Result<ProveSummary> {
    let started = unix_ms();
    let mut graphs = Vec::new();
    for v in opts.vertices.counts() {
        graphs.extend(catalog_graphs(v, opts.graphs_dir.as_deref())?);
    }

    let mut cases = Vec::new();
    let mut manifest_graphs = Vec::new();
    for g in &graphs {
        let partition = automorphism_classes(g)?;
        let graph_cases = enumerate_cases(g, &partition)?;
        manifest_graphs.push(ManifestGraph {
            id: g.id().to_string(),
            vertex_count: g.vertex_count(),
            representatives: partition.representatives(),
            cases: graph_cases.len(),
        });
        cases.extend(graph_cases);
    }
    let by_id: HashMap<String, PolyhedralGraph> =
        graphs.iter().map(|g| (g.id().to_string(), g.clone())).collect();

    let outcomes = certify_cases(&cases, &by_id, &opts.certify, opts.workers)?;

    let cert_dir = opts.out.join(CERTIFICATE_DIR);
    std::fs::create_dir_all(&cert_dir).map_err(|e| Error::io(&cert_dir, e))?;
    for o in &outcomes {
        o.certificate_file()
            .write(&cert_dir.join(format!("{}.json", o.case.stem())))?;
    }
    let rows: Vec<SummaryRow> = outcomes.iter().map(CaseOutcome::summary_row).collect();
    files::write_summary(&opts.out.join(SUMMARY_FILE), &rows)?;

    let mut per_vertex_count: BTreeMap<usize, VertexStats> = BTreeMap::new();
    for o in &outcomes {
        let v = by_id[&o.case.graph_id].vertex_count();
        let s = per_vertex_count.entry(v).or_insert(VertexStats {
            cases: 0,
            verified: 0,
            min_z: f64::INFINITY,
        });
        s.cases += 1;
        s.verified += usize::from(o.verified);
        s.min_z = s.min_z.min(o.achieved_z);
    }

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        graphs: manifest_graphs,
        options: ManifestOptions {
            z_threshold: opts.certify.solver.z_threshold,
            max_iters: opts.certify.solver.max_iters,
            max_den: opts.certify.max_den,
            workers: opts.workers,
        },
        started_unix_ms: started,
        finished_unix_ms: unix_ms(),
        total_cases: outcomes.len(),
        verified_cases: outcomes.iter().filter(|o| o.verified).count(),
    };
    manifest.write(&opts.out.join(MANIFEST_FILE))?;

    Ok(ProveSummary {
        outcomes,
        per_vertex_count,
        manifest,
    })
}

/// Rebuilds the case described by a certificate file. Nothing but the case
/// description is taken from the file.
pub fn case_from_certificate(
    file: &CertificateFile,
    g: &PolyhedralGraph,
) -> Result<(CaseDescriptor, QuadraticSystem)> {
    let tree = RootedTree::new(g, file.root, file.parents.clone())?;
    let tetra = TetraSelection::new(g, file.root, file.tetra_base)?;
    let case = CaseDescriptor {
        graph_id: g.id().to_string(),
        tree,
        tetra,
        tree_index: 0,
        tetra_index: 0,
        index: 0,
    };
    let system = assemble_system(&case, g)?;
    if system.len() != file.m || system.dimension() != file.n {
        return Err(Error::InvalidCase(format!(
            "stored shape m={}, n={} differs from regenerated m={}, n={}",
            file.m,
            file.n,
            system.len(),
            system.dimension()
        )));
    }
    Ok((case, system))
}

/// One audit failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Offending file, or `None` for a missing certificate.
    pub file: Option<PathBuf>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditSummary {
    pub checked: usize,
    pub rejections: Vec<Rejection>,
}

impl AuditSummary {
    pub fn passed(&self) -> bool {
        self.rejections.is_empty()
    }
}

/// Re-verifies every certificate in `certs_dir` from regenerated systems
/// and checks that each graph's enumerated cases are all covered.
///
/// Unreadable or malformed input is an `Err`; a certificate that fails to
/// prove its case, or a missing case, is a [`Rejection`].
pub fn run_verify(certs_dir: &Path, graphs_dir: Option<&Path>) -> Result<AuditSummary> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(certs_dir)
        .map_err(|e| Error::io(certs_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::Config(format!(
            "no certificate files in {}",
            certs_dir.display()
        )));
    }

    let extra: HashMap<String, PolyhedralGraph> = match graphs_dir {
        Some(dir) => load_graph_dir(dir)?
            .into_iter()
            .map(|g| (g.id().to_string(), g))
            .collect(),
        None => HashMap::new(),
    };
    let lookup = |id: &str| -> Result<PolyhedralGraph> {
        extra
            .get(id)
            .cloned()
            .or_else(|| builtin(id))
            .ok_or_else(|| Error::UnknownGraph(id.to_string()))
    };

    let mut rejections = Vec::new();
    let mut covered: BTreeMap<String, BTreeSet<(usize, Vec<usize>, [usize; 3])>> = BTreeMap::new();
    let mut graphs: BTreeMap<String, PolyhedralGraph> = BTreeMap::new();
    for path in &paths {
        let file = CertificateFile::read(path)?;
        if !graphs.contains_key(&file.graph) {
            graphs.insert(file.graph.clone(), lookup(&file.graph)?);
        }
        let g = &graphs[&file.graph];
        let reject = |reason: String| Rejection {
            file: Some(path.clone()),
            reason,
        };
        let (case, system) = match case_from_certificate(&file, g) {
            Ok(x) => x,
            Err(e) => {
                rejections.push(reject(e.to_string()));
                continue;
            }
        };
        let y = file
            .y
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        match verify(&system, &RationalCertificate { y }) {
            Ok(report) if report.verified => {
                covered.entry(file.graph.clone()).or_default().insert((
                    case.root(),
                    case.tree.parents().to_vec(),
                    case.tetra.base(),
                ));
            }
            Ok(report) => rejections.push(reject(format!("certificate rejected: {:?}", report.witness))),
            Err(e) => rejections.push(reject(e.to_string())),
        }
    }

    for (id, g) in &graphs {
        let partition = automorphism_classes(g)?;
        let done = covered.get(id);
        let missing: Vec<CaseDescriptor> = enumerate_cases(g, &partition)?
            .into_iter()
            .filter(|c| {
                !done.is_some_and(|d| {
                    d.contains(&(c.root(), c.tree.parents().to_vec(), c.tetra.base()))
                })
            })
            .collect();
        for c in missing {
            rejections.push(Rejection {
                file: None,
                reason: format!("no verified certificate for case {}", c.stem()),
            });
        }
    }

    Ok(AuditSummary {
        checked: paths.len(),
        rejections,
    })
}
