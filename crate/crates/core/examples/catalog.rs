//! Lists the built-in triangulations with their degrees and vertex orbits,
//! or loads graph files from a directory given as the first argument.

use std::path::Path;

use monocert::graph::{automorphism_classes, automorphisms, builtin, load_graph_dir, BUILTIN_IDS};

fn main() -> monocert::Result<()> {
    let graphs = match std::env::args().nth(1) {
        Some(dir) => load_graph_dir(Path::new(&dir))?,
        None => BUILTIN_IDS.iter().filter_map(|id| builtin(id)).collect(),
    };
    for g in &graphs {
        let classes = automorphism_classes(g)?;
        let degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        println!(
            "{}: V={} E={} F={} |Aut|={}",
            g.id(),
            g.vertex_count(),
            g.edge_count(),
            g.faces().len(),
            automorphisms(g)?.len()
        );
        println!("  degrees {degrees:?}");
        for class in &classes.classes {
            println!("  orbit {class:?} (degree {})", g.degree(class[0]));
        }
    }
    Ok(())
}
