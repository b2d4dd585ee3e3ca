//! Maximal planar graphs given by their triangular faces.
//!
//! A graph is entered as a face list; adjacency is derived from it. Vertex
//! ids are 1-based throughout the crate. The face list is the only input, so
//! acceptance is a consistency check on the faces (Euler counts, every edge on
//! exactly two triangles, connectivity, minimum degree) rather than a
//! planarity test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex triple bounding one triangular face.
pub type Face = [usize; 3];

/// Graph of a simplicial convex polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralGraph {
    id: String,
    vertex_count: usize,
    faces: Vec<Face>,
    adjacency: Vec<BTreeSet<usize>>,
}

/// On-disk graph description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub id: String,
    #[serde(rename = "V")]
    pub vertex_count: usize,
    pub faces: Vec<Face>,
}

impl PolyhedralGraph {
    /// Builds and validates a graph.
    pub fn new(id: impl Into<String>, vertex_count: usize, faces: Vec<Face>) -> Result<Self> {
        let g = Self::from_faces_unchecked(id, vertex_count, faces);
        let report = validate_triangulation(&g);
        if report.is_valid() {
            Ok(g)
        } else {
            Err(Error::InvalidGraph {
                id: g.id,
                violations: report.violations.iter().map(ToString::to_string).collect(),
            })
        }
    }

    /// Builds a graph without validating it. Face entries outside `1..=V`
    /// are kept in the face list but contribute no adjacency.
    pub fn from_faces_unchecked(
        id: impl Into<String>,
        vertex_count: usize,
        faces: Vec<Face>,
    ) -> Self {
        let mut adjacency = vec![BTreeSet::new(); vertex_count];
        let in_range = |x: usize| (1..=vertex_count).contains(&x);
        for f in &faces {
            for (a, b) in face_edges(f) {
                if a != b && in_range(a) && in_range(b) {
                    adjacency[a - 1].insert(b);
                    adjacency[b - 1].insert(a);
                }
            }
        }
        Self {
            id: id.into(),
            vertex_count,
            faces,
            adjacency,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.vertex_count
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        (1..=self.vertex_count).contains(&a) && self.adjacency[a - 1].contains(&b)
    }

    /// All edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for &b in self.neighbors(a) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Returns the same graph with every vertex `i` renamed to `perm[i - 1]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let faces = self
            .faces
            .iter()
            .map(|f| [perm[f[0] - 1], perm[f[1] - 1], perm[f[2] - 1]])
            .collect();
        Self::from_faces_unchecked(self.id.clone(), self.vertex_count, faces)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            id: self.id.clone(),
            vertex_count: self.vertex_count,
            faces: self.faces.clone(),
        }
    }
}

fn face_edges(f: &Face) -> [(usize, usize); 3] {
    [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])]
}

fn sorted_face(f: &Face) -> Face {
    let mut s = *f;
    s.sort_unstable();
    s
}

/// One broken graph invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices(usize),
    VertexOutOfRange { face: Face },
    DegenerateFace { face: Face },
    DuplicateFace { face: Face },
    FaceCount { expected: usize, got: usize },
    EdgeCount { expected: usize, got: usize },
    EdgeFaceCount { edge: (usize, usize), faces: usize },
    Disconnected,
    LowDegree { vertex: usize, degree: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices(v) => write!(f, "V = {v} < 4"),
            Violation::VertexOutOfRange { face } => {
                write!(f, "face {face:?} references a vertex outside 1..=V")
            }
            Violation::DegenerateFace { face } => write!(f, "face {face:?} repeats a vertex"),
            Violation::DuplicateFace { face } => write!(f, "face {face:?} is listed twice"),
            Violation::FaceCount { expected, got } => {
                write!(f, "face count F = {got}, expected 2V - 4 = {expected}")
            }
            Violation::EdgeCount { expected, got } => {
                write!(f, "edge count E = {got}, expected 3V - 6 = {expected}")
            }
            Violation::EdgeFaceCount { edge, faces } => write!(
                f,
                "edge {{{}, {}}} lies on {faces} faces, expected exactly 2",
                edge.0, edge.1
            ),
            Violation::Disconnected => write!(f, "graph is not connected"),
            Violation::LowDegree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} < 3")
            }
        }
    }
}

/// Outcome of [`validate_triangulation`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every triangulation invariant and reports all of the broken ones.
pub fn validate_triangulation(g: &PolyhedralGraph) -> Validation {
    let v = g.vertex_count;
    let mut violations = Vec::new();
    if v < 4 {
        violations.push(Violation::TooFewVertices(v));
    }

    let mut seen = BTreeSet::new();
    let mut edge_faces: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for face in &g.faces {
        if face.iter().any(|&x| x == 0 || x > v) {
            violations.push(Violation::VertexOutOfRange { face: *face });
            continue;
        }
        let s = sorted_face(face);
        if s[0] == s[1] || s[1] == s[2] {
            violations.push(Violation::DegenerateFace { face: *face });
            continue;
        }
        if !seen.insert(s) {
            violations.push(Violation::DuplicateFace { face: *face });
            continue;
        }
        for (a, b) in face_edges(&s) {
            *edge_faces.entry((a, b)).or_default() += 1;
        }
    }

    if v >= 4 {
        let expected_faces = 2 * v - 4;
        if g.faces.len() != expected_faces {
            violations.push(Violation::FaceCount {
                expected: expected_faces,
                got: g.faces.len(),
            });
        }
        let expected_edges = 3 * v - 6;
        if g.edge_count() != expected_edges {
            violations.push(Violation::EdgeCount {
                expected: expected_edges,
                got: g.edge_count(),
            });
        }
    }
    for (&edge, &faces) in &edge_faces {
        if faces != 2 {
            violations.push(Violation::EdgeFaceCount { edge, faces });
        }
    }

    if v > 0 && !is_connected(g) {
        violations.push(Violation::Disconnected);
    }
    for vertex in g.vertices() {
        let degree = g.degree(vertex);
        if degree < 3 {
            violations.push(Violation::LowDegree { vertex, degree });
        }
    }
    Validation { violations }
}

fn is_connected(g: &PolyhedralGraph) -> bool {
    let mut seen = vec![false; g.vertex_count];
    let mut stack = vec![1];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w - 1] {
                seen[w - 1] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub const BUILTIN_IDS: [&str; 4] = [
    "tetrahedron4",
    "bipyramid5",
    "octahedron6",
    "irregular-octahedron6",
];

/// Looks up a built-in catalog graph.
pub fn builtin(id: &str) -> Option<PolyhedralGraph> {
    let (v, faces): (usize, Vec<Face>) = match id {
        "tetrahedron4" => (4, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]),
        // Apexes 1, 2 over the equator 3-4-5.
        "bipyramid5" => (
            5,
            vec![
                [1, 3, 4],
                [1, 4, 5],
                [1, 3, 5],
                [2, 3, 4],
                [2, 4, 5],
                [2, 3, 5],
            ],
        ),
        // Opposite pairs {1,2}, {3,4}, {5,6}.
        "octahedron6" => (
            6,
            vec![
                [1, 3, 5],
                [1, 3, 6],
                [1, 4, 5],
                [1, 4, 6],
                [2, 3, 5],
                [2, 3, 6],
                [2, 4, 5],
                [2, 4, 6],
            ],
        ),
        // Bipyramid (apexes 1, 2; equator 3, 5, 6) with vertex 4 stacked on
        // face {1, 5, 6}. Degrees (4, 3, 4, 3, 5, 5); orbits {1,3}, {2,4}, {5,6}.
        "irregular-octahedron6" => (
            6,
            vec![
                [1, 3, 6],
                [1, 3, 5],
                [2, 5, 6],
                [2, 3, 6],
                [2, 3, 5],
                [1, 4, 5],
                [4, 5, 6],
                [1, 4, 6],
            ],
        ),
        _ => return None,
    };
    Some(PolyhedralGraph::new(id, v, faces).expect("builtin catalog graph is valid"))
}

/// Built-in graphs with the given vertex count.
pub fn builtins_with_vertices(v: usize) -> Vec<PolyhedralGraph> {
    BUILTIN_IDS
        .iter()
        .filter_map(|id| builtin(id))
        .filter(|g| g.vertex_count() == v)
        .collect()
}

/// Parses and validates a graph from JSON text.
pub fn parse_graph(json: &str, context: &str) -> Result<PolyhedralGraph> {
    let file: GraphFile = serde_json::from_str(json).map_err(|e| Error::json(context, e))?;
    PolyhedralGraph::new(file.id, file.vertex_count, file.faces)
}

/// Where a graph comes from.
#[derive(Debug, Clone, Copy)]
pub enum GraphSource<'a> {
    Builtin(&'a str),
    File(&'a Path),
}

pub fn load_graph(source: GraphSource<'_>) -> Result<PolyhedralGraph> {
    match source {
        GraphSource::Builtin(id) => builtin(id).ok_or_else(|| Error::UnknownGraph(id.to_string())),
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_graph(&text, &path.display().to_string())
        }
    }
}

/// Loads every `*.json` graph in a directory, sorted by id.
pub fn load_graph_dir(dir: &Path) -> Result<Vec<PolyhedralGraph>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut graphs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|ext| ext == "json") {
            graphs.push(load_graph(GraphSource::File(&path))?);
        }
    }
    graphs.sort_by(|a, b| a.id().cmp(b.id()));
    Ok(graphs)
}

/// Orbits of the vertices under the automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassPartition {
    /// Each class sorted ascending; classes ordered by their smallest member.
    pub classes: Vec<Vec<usize>>,
}

impl VertexClassPartition {
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_of(&self, v: usize) -> Option<&[usize]> {
        self.classes
            .iter()
            .find(|c| c.contains(&v))
            .map(Vec::as_slice)
    }
}

const MAX_BRUTE_FORCE_VERTICES: usize = 8;

/// Every automorphism of `g` as a 1-based image vector (`perm[i - 1]` is the
/// image of `i`). Exhaustive search over degree-preserving permutations.
pub fn automorphisms(g: &PolyhedralGraph) -> Result<Vec<Vec<usize>>> {
    let v = g.vertex_count();
    if v > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::TooManyVertices(v));
    }
    let mut found = Vec::new();
    let mut image = vec![0usize; v];
    let mut used = vec![false; v];
    extend_automorphism(g, 1, &mut image, &mut used, &mut found);
    Ok(found)
}

fn extend_automorphism(
    g: &PolyhedralGraph,
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
    found: &mut Vec<Vec<usize>>,
) {
    let v = g.vertex_count();
    if next > v {
        found.push(image.to_vec());
        return;
    }
    for candidate in 1..=v {
        if used[candidate - 1] || g.degree(candidate) != g.degree(next) {
            continue;
        }
        // adjacency to already placed vertices must be preserved
        let consistent = (1..next)
            .all(|u| g.are_adjacent(u, next) == g.are_adjacent(image[u - 1], candidate));
        if !consistent {
            continue;
        }
        image[next - 1] = candidate;
        used[candidate - 1] = true;
        extend_automorphism(g, next + 1, image, used, found);
        used[candidate - 1] = false;
    }
}

/// Exact orbit partition of the vertices under the full automorphism group.
pub fn automorphism_classes(g: &PolyhedralGraph) -> Result<VertexClassPartition> {
    let autos = automorphisms(g)?;
    let v = g.vertex_count();
    let mut class_id: Vec<usize> = (0..v).collect();
    // orbit of i = { perm(i) }, so every vertex joins the class of its smallest image
    for i in 1..=v {
        let smallest = autos.iter().map(|p| p[i - 1]).min().unwrap_or(i);
        class_id[i - 1] = smallest;
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 1..=v {
        classes.entry(class_id[i - 1]).or_default().push(i);
    }
    Ok(VertexClassPartition {
        classes: classes.into_values().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &PolyhedralGraph) -> Vec<usize> {
        g.vertices().map(|v| g.degree(v)).collect()
    }

    #[test]
    fn bipyramid_shape() {
        let g = builtin("bipyramid5").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.faces().len(), 6);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(degrees(&g), vec![3, 3, 4, 4, 4]);
    }

    #[test]
    fn octahedron_shape() {
        let g = builtin("octahedron6").unwrap();
        assert_eq!((g.faces().len(), g.edge_count()), (8, 12));
        assert!(degrees(&g).iter().all(|&d| d == 4));
    }

    #[test]
    fn irregular_octahedron_degrees() {
        let g = builtin("irregular-octahedron6").unwrap();
        assert_eq!(degrees(&g), vec![4, 3, 4, 3, 5, 5]);
    }

    #[test]
    fn tetrahedron_from_json() {
        let json = r#"{"id": "k4", "V": 4, "faces": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#;
        let g = parse_graph(json, "inline").unwrap();
        assert_eq!((g.faces().len(), g.edge_count()), (4, 6));
    }

    #[test]
    fn deleted_face_breaks_edge_multiplicity() {
        let g = builtin("bipyramid5").unwrap();
        let faces = g.faces()[1..].to_vec();
        let broken = PolyhedralGraph::from_faces_unchecked("broken", 5, faces);
        let report = validate_triangulation(&broken);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::EdgeFaceCount { faces: 1, .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FaceCount { expected: 6, got: 5 })));
    }

    #[test]
    fn wrong_face_count_is_reported() {
        let g = builtin("octahedron6").unwrap();
        let faces = g.faces()[..7].to_vec();
        let report = validate_triangulation(&PolyhedralGraph::from_faces_unchecked("x", 6, faces));
        assert!(report
            .violations
            .contains(&Violation::FaceCount { expected: 8, got: 7 }));
    }

    #[test]
    fn duplicate_face_rejected() {
        let json = r#"{"id": "dup", "V": 4, "faces": [[1,2,3],[3,2,1],[1,3,4],[2,3,4]]}"#;
        let err = parse_graph(json, "inline").unwrap_err();
        assert!(err.to_string().contains("listed twice"), "{err}");
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            parse_graph("{\"id\": 3}", "inline"),
            Err(Error::Json { .. })
        ));
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(
            load_graph(GraphSource::Builtin("cube8")),
            Err(Error::UnknownGraph(_))
        ));
    }

    #[test]
    fn orbit_partitions_of_catalog() {
        let p = automorphism_classes(&builtin("bipyramid5").unwrap()).unwrap();
        assert_eq!(p.classes, vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(p.representatives(), vec![1, 3]);

        let p = automorphism_classes(&builtin("octahedron6").unwrap()).unwrap();
        assert_eq!(p.classes, vec![vec![1, 2, 3, 4, 5, 6]]);

        let p = automorphism_classes(&builtin("irregular-octahedron6").unwrap()).unwrap();
        assert_eq!(p.representatives(), vec![1, 2, 5]);
        assert_eq!(p.classes, vec![vec![1, 3], vec![2, 4], vec![5, 6]]);
    }

    #[test]
    fn group_orders() {
        let order = |id| automorphisms(&builtin(id).unwrap()).unwrap().len();
        assert_eq!(order("tetrahedron4"), 24);
        assert_eq!(order("bipyramid5"), 12);
        assert_eq!(order("octahedron6"), 48);
        assert_eq!(order("irregular-octahedron6"), 4);
    }

    #[test]
    fn too_large_for_brute_force() {
        let g = PolyhedralGraph::from_faces_unchecked("big", 9, vec![]);
        assert!(matches!(automorphisms(&g), Err(Error::TooManyVertices(9))));
    }
}
