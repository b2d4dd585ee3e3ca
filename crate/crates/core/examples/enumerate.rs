//! Case table: rooted spanning trees and tetrahedra per representative root.
//!
//! ```bash
//! cargo run --example enumerate -- 6
//! ```

use monocert::cases::{enumerate_cases, enumerate_rooted_trees, spanning_tree_count, tetra_decomposition};
use monocert::graph::{automorphism_classes, builtins_with_vertices};

fn main() -> monocert::Result<()> {
    let counts: Vec<usize> = match std::env::args().nth(1) {
        Some(v) => vec![v.parse().expect("vertex count")],
        None => vec![5, 6],
    };
    let mut total = 0;
    for v in counts {
        for g in builtins_with_vertices(v) {
            let classes = automorphism_classes(&g)?;
            println!("{} (Kirchhoff: {} spanning trees)", g.id(), spanning_tree_count(&g));
            for root in classes.representatives() {
                let trees = enumerate_rooted_trees(&g, root)?.len();
                let tetra = tetra_decomposition(&g, root)?;
                let bases: Vec<[usize; 3]> = tetra.iter().map(|t| t.base()).collect();
                println!("  v={root}: {trees} trees x {} tetrahedra {bases:?}", tetra.len());
            }
            let cases = enumerate_cases(&g, &classes)?;
            println!("  {} cases, first {} last {}", cases.len(), cases[0].stem(), cases[cases.len() - 1].stem());
            total += cases.len();
        }
    }
    println!("total cases: {total}");
    Ok(())
}
