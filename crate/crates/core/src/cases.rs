//! Case enumeration: rooted spanning trees, tetrahedral decompositions, and
//! their product over the representative root vertices.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::bareiss_determinant;
use crate::graph::{PolyhedralGraph, VertexClassPartition};

/// Spanning tree oriented toward `root`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    root: usize,
    /// `parents[i - 1]` is the parent of vertex `i`; 0 at the root.
    parents: Vec<usize>,
}

impl RootedTree {
    /// Validates a parent map against `g`: every non-root vertex hangs off an
    /// adjacent parent, and following parents from any vertex reaches `root`.
    pub fn new(g: &PolyhedralGraph, root: usize, parents: Vec<usize>) -> Result<Self> {
        let v = g.vertex_count();
        if !(1..=v).contains(&root) {
            return Err(Error::VertexOutOfRange(root));
        }
        if parents.len() != v {
            return Err(Error::DimensionMismatch {
                expected: v,
                got: parents.len(),
            });
        }
        if parents[root - 1] != 0 {
            return Err(Error::InvalidCase(format!("root {root} has a parent")));
        }
        for i in g.vertices().filter(|&i| i != root) {
            let p = parents[i - 1];
            if !g.are_adjacent(i, p) {
                return Err(Error::NotAdjacent(i, p));
            }
        }
        for start in g.vertices() {
            let mut cur = start;
            let mut steps = 0;
            while cur != root {
                cur = parents[cur - 1];
                steps += 1;
                if steps > v {
                    return Err(Error::InvalidCase(format!(
                        "parent map has a cycle through vertex {start}"
                    )));
                }
            }
        }
        Ok(Self { root, parents })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    /// Parent of a non-root vertex.
    pub fn parent(&self, i: usize) -> Option<usize> {
        match self.parents.get(i.wrapping_sub(1)) {
            Some(0) | None => None,
            Some(&p) => Some(p),
        }
    }
}

/// Every spanning tree of `g` as a sorted edge list, found by backtracking
/// over edge inclusion. Including an edge is skipped when it closes a cycle;
/// excluding it is skipped when the remaining edges can no longer connect
/// the graph.
pub fn spanning_trees(g: &PolyhedralGraph) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(g.vertex_count());
    let components: Vec<usize> = (0..g.vertex_count()).collect();
    backtrack_trees(g, &edges, 0, &mut chosen, components, &mut out);
    out
}

fn find(comp: &[usize], mut x: usize) -> usize {
    while comp[x] != x {
        x = comp[x];
    }
    x
}

fn backtrack_trees(
    g: &PolyhedralGraph,
    edges: &[(usize, usize)],
    next: usize,
    chosen: &mut Vec<(usize, usize)>,
    components: Vec<usize>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let v = g.vertex_count();
    if chosen.len() == v - 1 {
        out.push(chosen.clone());
        return;
    }
    if next == edges.len() || edges.len() - next < v - 1 - chosen.len() {
        return;
    }
    let (a, b) = edges[next];
    let (ra, rb) = (find(&components, a - 1), find(&components, b - 1));
    if ra != rb {
        let mut merged = components.clone();
        merged[ra] = rb;
        chosen.push((a, b));
        backtrack_trees(g, edges, next + 1, chosen, merged, out);
        chosen.pop();
    }
    if still_connectable(v, chosen, &edges[next + 1..]) {
        backtrack_trees(g, edges, next + 1, chosen, components, out);
    }
}

fn still_connectable(v: usize, chosen: &[(usize, usize)], rest: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..v).collect();
    let mut joined = 1;
    for &(a, b) in chosen.iter().chain(rest) {
        let (ra, rb) = (find(&comp, a - 1), find(&comp, b - 1));
        if ra != rb {
            comp[ra] = rb;
            joined += 1;
        }
    }
    joined == v
}

fn orient(g: &PolyhedralGraph, edges: &[(usize, usize)], root: usize) -> RootedTree {
    let v = g.vertex_count();
    let mut adj = vec![Vec::new(); v];
    for &(a, b) in edges {
        adj[a - 1].push(b);
        adj[b - 1].push(a);
    }
    let mut parents = vec![0; v];
    let mut seen = vec![false; v];
    seen[root - 1] = true;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for &w in &adj[u - 1] {
            if !seen[w - 1] {
                seen[w - 1] = true;
                parents[w - 1] = u;
                stack.push(w);
            }
        }
    }
    RootedTree { root, parents }
}

/// All spanning trees oriented toward `root`, sorted by parent vector.
pub fn enumerate_rooted_trees(g: &PolyhedralGraph, root: usize) -> Result<Vec<RootedTree>> {
    if !(1..=g.vertex_count()).contains(&root) {
        return Err(Error::VertexOutOfRange(root));
    }
    let mut trees: Vec<RootedTree> = spanning_trees(g)
        .iter()
        .map(|edges| orient(g, edges, root))
        .collect();
    trees.sort();
    Ok(trees)
}

/// Matrix-tree theorem: the determinant of the Laplacian with the last row
/// and column removed, in exact integer arithmetic.
pub fn spanning_tree_count(g: &PolyhedralGraph) -> BigInt {
    let n = g.vertex_count() - 1;
    let minor: Vec<Vec<BigInt>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.are_adjacent(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect()
        })
        .collect();
    bareiss_determinant(minor)
}

/// Tetrahedron spanned by the apex and a face not containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TetraSelection {
    apex: usize,
    base: [usize; 3],
}

impl TetraSelection {
    pub fn new(g: &PolyhedralGraph, apex: usize, base: [usize; 3]) -> Result<Self> {
        let mut sorted = base;
        sorted.sort_unstable();
        if sorted.contains(&apex) {
            return Err(Error::BaseContainsApex { apex, base });
        }
        let is_face = g.faces().iter().any(|f| {
            let mut s = *f;
            s.sort_unstable();
            s == sorted
        });
        if !is_face {
            return Err(Error::InvalidCase(format!("{base:?} is not a face")));
        }
        Ok(Self { apex, base: sorted })
    }

    pub fn apex(&self) -> usize {
        self.apex
    }

    /// Sorted base triple.
    pub fn base(&self) -> [usize; 3] {
        self.base
    }
}

/// One tetrahedron per face avoiding `apex`, sorted by base triple.
pub fn tetra_decomposition(g: &PolyhedralGraph, apex: usize) -> Result<Vec<TetraSelection>> {
    if !(1..=g.vertex_count()).contains(&apex) {
        return Err(Error::VertexOutOfRange(apex));
    }
    let mut out: Vec<TetraSelection> = g
        .faces()
        .iter()
        .filter(|f| !f.contains(&apex))
        .map(|f| {
            let mut base = *f;
            base.sort_unstable();
            TetraSelection { apex, base }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// One system to certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseDescriptor {
    pub graph_id: String,
    pub tree: RootedTree,
    pub tetra: TetraSelection,
    /// Position of the tree among the trees rooted at the same vertex.
    pub tree_index: usize,
    /// Position of the tetrahedron in the decomposition for the root.
    pub tetra_index: usize,
    /// Ordinal over the whole graph.
    pub index: usize,
}

impl CaseDescriptor {
    pub fn root(&self) -> usize {
        self.tree.root()
    }

    /// `<graph>_v<root>_t<tree>_k<tetra>`
    pub fn stem(&self) -> String {
        format!(
            "{}_v{}_t{}_k{}",
            self.graph_id,
            self.root(),
            self.tree_index,
            self.tetra_index
        )
    }
}

/// Product over representatives, trees rooted there, and tetrahedra.
pub fn enumerate_cases(
    g: &PolyhedralGraph,
    partition: &VertexClassPartition,
) -> Result<Vec<CaseDescriptor>> {
    let mut reps = partition.representatives();
    reps.sort_unstable();
    let mut cases = Vec::new();
    for root in reps {
        let trees = enumerate_rooted_trees(g, root)?;
        let tetras = tetra_decomposition(g, root)?;
        for (tree_index, tree) in trees.iter().enumerate() {
            for (tetra_index, tetra) in tetras.iter().enumerate() {
                cases.push(CaseDescriptor {
                    graph_id: g.id().to_string(),
                    tree: tree.clone(),
                    tetra: *tetra,
                    tree_index,
                    tetra_index,
                    index: cases.len(),
                });
            }
        }
    }
    Ok(cases)
}
