use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monocert::exact::parse_rational;
use monocert::pipeline::{
    default_workers, run_prove, run_report, run_verify, CertifyOptions, ProveOptions,
    VertexSelection,
};
use monocert::sdp::{SolverMethod, SolverOptions};
use monocert::system::QuadraticSystem;
use monocert::verify::{verify, RationalCertificate};

#[derive(Parser)]
#[command(version, about = "Certify that no mono-unstable polyhedron has 5 or 6 vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all cases, find certificates, and verify them exactly.
    Prove {
        /// 5, 6, or all.
        #[arg(long, default_value = "all")]
        vertices: String,
        /// Directory of graph JSON files (default: built-in catalog).
        #[arg(long)]
        graphs: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads (default: logical cores).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 1e-3)]
        z_threshold: f64,
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_den: u64,
        /// Use projected subgradient ascent instead of the interior-point solver.
        #[arg(long)]
        subgradient: bool,
    },
    /// Re-verify a certificate directory from regenerated systems.
    Verify {
        #[arg(long)]
        certs: PathBuf,
        #[arg(long)]
        graphs: Option<PathBuf>,
    },
    /// Render the case table and z statistics from a prove run.
    Report {
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check one certificate against one serialized system.
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Prove {
            vertices,
            graphs,
            out,
            workers,
            z_threshold,
            max_iters,
            max_den,
            subgradient,
        } => {
            let vertices = match vertices.parse::<VertexSelection>() {
                Ok(v) => v,
                Err(e) => return fail(2, &e),
            };
            let opts = ProveOptions {
                vertices,
                graphs_dir: graphs,
                out,
                workers: workers.unwrap_or_else(default_workers),
                certify: CertifyOptions {
                    solver: SolverOptions {
                        z_threshold,
                        max_iters,
                        method: if subgradient {
                            SolverMethod::Subgradient
                        } else {
                            SolverMethod::Barrier
                        },
                    },
                    max_den,
                },
            };
            match run_prove(&opts) {
                Ok(summary) => {
                    for (v, s) in &summary.per_vertex_count {
                        println!(
                            "V = {v}: {} cases, {} verified, min z = {:.4}",
                            s.cases, s.verified, s.min_z
                        );
                    }
                    println!(
                        "total: {} cases, {} verified",
                        summary.total(),
                        summary.verified()
                    );
                    for o in summary.outcomes.iter().filter(|o| !o.verified) {
                        eprintln!("unverified: {}", o.case.stem());
                    }
                    if summary.all_verified() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(3)
                    }
                }
                Err(e) => fail(2, &e),
            }
        }
        Command::Verify { certs, graphs } => match run_verify(&certs, graphs.as_deref()) {
            Ok(audit) if audit.passed() => {
                println!("{} certificates verified", audit.checked);
                ExitCode::SUCCESS
            }
            Ok(audit) => {
                for r in &audit.rejections {
                    match &r.file {
                        Some(f) => eprintln!("rejected {}: {}", f.display(), r.reason),
                        None => eprintln!("{}", r.reason),
                    }
                }
                ExitCode::from(1)
            }
            Err(e) => fail(2, &e),
        },
        Command::Report { out } => match run_report(&out) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(2, &e),
        },
        Command::Check { system, cert } => match check(&system, &cert) {
            Ok(true) => {
                println!("verified");
                ExitCode::SUCCESS
            }
            Ok(false) => ExitCode::from(1),
            Err(e) => fail(2, &*e),
        },
    }
}

fn check(system: &PathBuf, cert: &PathBuf) -> Result<bool, Box<dyn std::error::Error>> {
    let system = QuadraticSystem::from_json(&std::fs::read_to_string(system)?)?;
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(cert)?)?;
    let y = cert["y"]
        .as_array()
        .ok_or("certificate has no `y` array")?
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| "`y` entries must be strings".into())
                .and_then(|s| parse_rational(s).map_err(Into::into))
        })
        .collect::<Result<Vec<_>, Box<dyn std::error::Error>>>()?;
    let report = verify(&system, &RationalCertificate { y })?;
    if !report.verified {
        eprintln!("rejected: {:?}", report.witness);
    }
    Ok(report.verified)
}

fn fail(code: u8, e: &dyn std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(code)
}
