//! Re-checks a certificate directory without the solver. With no argument,
//! first certifies the V=5 cases into a scratch directory.

use std::path::PathBuf;

use monocert::pipeline::{run_prove, run_verify, ProveOptions, VertexSelection};

fn main() -> monocert::Result<()> {
    let scratch = tempfile::tempdir().expect("temp dir");
    let certs = match std::env::args().nth(1) {
        Some(dir) => PathBuf::from(dir),
        None => {
            let mut opts = ProveOptions::new(scratch.path());
            opts.vertices = VertexSelection::Only(5);
            run_prove(&opts)?;
            scratch.path().join("certificates")
        }
    };
    let audit = run_verify(&certs, None)?;
    for r in &audit.rejections {
        match &r.file {
            Some(f) => println!("rejected {}: {}", f.display(), r.reason),
            None => println!("{}", r.reason),
        }
    }
    println!("{} checked, {} rejected", audit.checked, audit.rejections.len());
    Ok(())
}
