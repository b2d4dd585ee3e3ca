//! Solves the certificate problem for one case and verifies the rounded
//! weights exactly.
//!
//! ```bash
//! cargo run --release --example solve_case -- octahedron6 1 100 2
//! ```

use std::time::Instant;

use monocert::cases::enumerate_cases;
use monocert::graph::{automorphism_classes, builtin};
use monocert::sdp::{rationalize, solve_certificate_sdp, SdpProblem, SolverMethod, SolverOptions};
use monocert::system::assemble_system;
use monocert::verify::{verify, RationalCertificate};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map_or("bipyramid5", String::as_str);
    let num = |k: usize, default: usize| args.get(k).and_then(|s| s.parse().ok()).unwrap_or(default);
    let (root, tree, tetra) = (num(1, 1), num(2, 0), num(3, 0));

    let g = builtin(id).unwrap_or_else(|| panic!("unknown graph {id}"));
    let case = enumerate_cases(&g, &automorphism_classes(&g).expect("small graph"))
        .expect("valid graph")
        .into_iter()
        .find(|c| c.root() == root && c.tree_index == tree && c.tetra_index == tetra)
        .expect("root must be a class representative and indices in range");
    let system = assemble_system(&case, &g).expect("consistent case");
    let problem = SdpProblem::from_system(&system).expect("square symmetric matrices");

    for method in [SolverMethod::Barrier, SolverMethod::Subgradient] {
        let opts = SolverOptions {
            method,
            ..SolverOptions::default()
        };
        let start = Instant::now();
        let cert = solve_certificate_sdp(&problem, &opts);
        let solve_time = start.elapsed();
        let y = rationalize(&cert, 1_000_000);
        let start = Instant::now();
        let report = verify(&system, &RationalCertificate { y: y.clone() }).expect("shapes agree");
        println!(
            "{method:?}: z = {:.6} after {} iterations ({solve_time:.2?}); status {:?}",
            cert.z, cert.iterations, cert.status
        );
        println!(
            "  y = [{}]",
            y.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        );
        println!("  exact check: {} ({:.2?})", report.verified, start.elapsed());
    }
}
