//! Prints the serialized quadratic system for one case.
//!
//! ```bash
//! cargo run --example export_system -- bipyramid5 3 28 1
//! ```

use monocert::cases::enumerate_cases;
use monocert::graph::{automorphism_classes, builtin};
use monocert::system::assemble_system;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id = args.first().map_or("bipyramid5", String::as_str);
    let num = |k: usize, default: usize| args.get(k).and_then(|s| s.parse().ok()).unwrap_or(default);
    let (root, tree, tetra) = (num(1, 1), num(2, 0), num(3, 0));

    let g = builtin(id).unwrap_or_else(|| panic!("unknown graph {id}"));
    let partition = automorphism_classes(&g).expect("small graph");
    let case = enumerate_cases(&g, &partition)
        .expect("valid graph")
        .into_iter()
        .find(|c| c.root() == root && c.tree_index == tree && c.tetra_index == tetra)
        .expect("root must be a class representative and indices in range");
    eprintln!("case {} parents {:?} base {:?}", case.stem(), case.tree.parents(), case.tetra.base());
    println!("{}", assemble_system(&case, &g).expect("consistent case").to_json());
}
