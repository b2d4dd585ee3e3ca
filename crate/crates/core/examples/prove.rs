//! Full certification run followed by the markdown report.
//!
//! ```bash
//! cargo run --release --example prove -- out-dir [5|6|all]
//! ```

use monocert::pipeline::{run_prove, run_report, ProveOptions};

fn main() -> monocert::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "out".into());
    let mut opts = ProveOptions::new(&out);
    if let Some(v) = args.next() {
        opts.vertices = v.parse()?;
    }
    let summary = run_prove(&opts)?;
    print!("{}", run_report(opts.out.as_path())?);
    if !summary.all_verified() {
        for o in summary.outcomes.iter().filter(|o| !o.verified) {
            eprintln!("unverified: {}", o.case.stem());
        }
        std::process::exit(3);
    }
    Ok(())
}
