//! Quadratic inequality systems `a + bᵀx + xᵀQx <= 0` for one case.
//!
//! The root vertex is pinned at `(1, 0, 0)` and eliminated, leaving
//! `3(V - 1)` unknowns: the coordinates of the remaining vertices in
//! increasing id order, three consecutive slots each.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cases::{CaseDescriptor, TetraSelection};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, rat, to_f64, Rational, RationalMatrix};
use crate::graph::PolyhedralGraph;

/// Maps each non-root vertex to its coordinate block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariableLayout {
    root: usize,
    vertex_count: usize,
}

impl VariableLayout {
    pub fn new(vertex_count: usize, root: usize) -> Result<Self> {
        if !(1..=vertex_count).contains(&root) {
            return Err(Error::VertexOutOfRange(root));
        }
        Ok(Self { root, vertex_count })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn dimension(&self) -> usize {
        3 * (self.vertex_count - 1)
    }

    /// First coordinate slot of vertex `k`; `None` for the root.
    pub fn block(&self, k: usize) -> Option<usize> {
        if k == self.root || !(1..=self.vertex_count).contains(&k) {
            None
        } else if k < self.root {
            Some(3 * (k - 1))
        } else {
            Some(3 * (k - 2))
        }
    }
}

/// `a + bᵀx + xᵀQx <= 0` with exact coefficients and symmetric `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticInequality {
    constant: Rational,
    linear: Vec<Rational>,
    quadratic: RationalMatrix,
}

impl QuadraticInequality {
    pub fn new(constant: Rational, linear: Vec<Rational>, quadratic: RationalMatrix) -> Result<Self> {
        if linear.len() != quadratic.dim() {
            return Err(Error::DimensionMismatch {
                expected: quadratic.dim(),
                got: linear.len(),
            });
        }
        if !quadratic.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self {
            constant,
            linear,
            quadratic,
        })
    }

    fn zero(n: usize) -> Self {
        Self {
            constant: Rational::zero(),
            linear: vec![Rational::zero(); n],
            quadratic: RationalMatrix::zeros(n),
        }
    }

    pub fn dimension(&self) -> usize {
        self.linear.len()
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn linear(&self) -> &[Rational] {
        &self.linear
    }

    pub fn quadratic(&self) -> &RationalMatrix {
        &self.quadratic
    }

    /// `[[a, bᵀ/2], [b/2, Q]]`, so that `(1, x)ᵀ M (1, x) = a + bᵀx + xᵀQx`.
    pub fn augmented(&self) -> RationalMatrix {
        let n = self.dimension();
        let half = rat(1, 2);
        let mut m = RationalMatrix::zeros(n + 1);
        m[(0, 0)] = self.constant.clone();
        for i in 0..n {
            let b = &self.linear[i] * &half;
            m[(0, i + 1)] = b.clone();
            m[(i + 1, 0)] = b;
            for j in 0..n {
                m[(i + 1, j + 1)] = self.quadratic[(i, j)].clone();
            }
        }
        m
    }

    /// Exact value of the left-hand side at `x`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.check_len(x.len())?;
        let mut value = self.constant.clone();
        for (b, xi) in self.linear.iter().zip(x) {
            if !b.is_zero() {
                value += b * xi;
            }
        }
        value += self.quadratic.quadratic_form(x)?;
        Ok(value)
    }

    /// Floating-point value of the left-hand side at `x`.
    pub fn evaluate_f64(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        let n = self.dimension();
        let mut value = to_f64(&self.constant);
        for i in 0..n {
            value += to_f64(&self.linear[i]) * x[i];
            for j in 0..n {
                let q = &self.quadratic[(i, j)];
                if !q.is_zero() {
                    value += to_f64(q) * x[i] * x[j];
                }
            }
        }
        Ok(value)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got == self.dimension() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got,
            })
        }
    }
}

/// Shadow condition `(r_i - r_p)ᵀ r_i <= 0` for vertex `i` with parent `p`.
///
/// When `p` is the root, `r_p = (1, 0, 0)` turns `-r_pᵀr_i` into the linear
/// term `-x_{i,1}`; otherwise the cross term is split evenly over the two
/// off-diagonal blocks.
pub fn build_shadow_inequality(
    g: &PolyhedralGraph,
    layout: &VariableLayout,
    i: usize,
    p: usize,
) -> Result<QuadraticInequality> {
    if i == layout.root() {
        return Err(Error::RootVertex(i));
    }
    if !g.are_adjacent(i, p) {
        return Err(Error::NotAdjacent(i, p));
    }
    let bi = layout.block(i).ok_or(Error::VertexOutOfRange(i))?;
    let mut q = QuadraticInequality::zero(layout.dimension());
    for c in 0..3 {
        q.quadratic[(bi + c, bi + c)] = Rational::one();
    }
    match layout.block(p) {
        None => q.linear[bi] = -Rational::one(),
        Some(bp) => {
            let minus_half = rat(-1, 2);
            for c in 0..3 {
                q.quadratic[(bi + c, bp + c)] = minus_half.clone();
                q.quadratic[(bp + c, bi + c)] = minus_half.clone();
            }
        }
    }
    Ok(q)
}

/// `1 + Σ_{k in base} x_{k,1} <= 0`: the tetrahedron's first-coordinate sum
/// is nonpositive, with the apex contributing the constant 1.
pub fn build_tetra_inequality(
    tetra: &TetraSelection,
    layout: &VariableLayout,
) -> Result<QuadraticInequality> {
    let base = tetra.base();
    if tetra.apex() != layout.root() || base.contains(&layout.root()) {
        return Err(Error::BaseContainsApex {
            apex: layout.root(),
            base,
        });
    }
    let mut q = QuadraticInequality::zero(layout.dimension());
    q.constant = Rational::one();
    for k in base {
        let bk = layout.block(k).ok_or(Error::VertexOutOfRange(k))?;
        q.linear[bk] = Rational::one();
    }
    Ok(q)
}

/// The full system for one case: `V - 1` shadow inequalities in increasing
/// vertex order followed by the tetrahedron inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSystem {
    dimension: usize,
    inequalities: Vec<QuadraticInequality>,
}

impl QuadraticSystem {
    pub fn new(dimension: usize, inequalities: Vec<QuadraticInequality>) -> Result<Self> {
        for q in &inequalities {
            if q.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: q.dimension(),
                });
            }
        }
        Ok(Self {
            dimension,
            inequalities,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn inequalities(&self) -> &[QuadraticInequality] {
        &self.inequalities
    }

    pub fn augmented_matrices(&self) -> Vec<RationalMatrix> {
        self.inequalities.iter().map(QuadraticInequality::augmented).collect()
    }

    /// Floating copies of the augmented matrices, row-major.
    pub fn augmented_f64(&self) -> Vec<Vec<Vec<f64>>> {
        self.inequalities
            .iter()
            .map(|q| q.augmented().to_f64_rows())
            .collect()
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            n: self.dimension,
            m: self.len(),
            inequalities: self
                .inequalities
                .iter()
                .map(|q| InequalityFile {
                    a: format_rational(&q.constant),
                    b: q.linear.iter().map(format_rational).collect(),
                    q: (0..self.dimension)
                        .flat_map(|i| (i..self.dimension).map(move |j| (i, j)))
                        .map(|(i, j)| format_rational(&q.quadratic[(i, j)]))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &SystemFile) -> Result<Self> {
        let n = file.n;
        if file.m != file.inequalities.len() {
            return Err(Error::DimensionMismatch {
                expected: file.m,
                got: file.inequalities.len(),
            });
        }
        let upper = n * (n + 1) / 2;
        let mut inequalities = Vec::with_capacity(file.m);
        for ineq in &file.inequalities {
            if ineq.b.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: ineq.b.len(),
                });
            }
            if ineq.q.len() != upper {
                return Err(Error::DimensionMismatch {
                    expected: upper,
                    got: ineq.q.len(),
                });
            }
            let linear = ineq
                .b
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            let mut quadratic = RationalMatrix::zeros(n);
            let mut entries = ineq.q.iter();
            for i in 0..n {
                for j in i..n {
                    let v = parse_rational(entries.next().expect("length checked"))?;
                    quadratic[(j, i)] = v.clone();
                    quadratic[(i, j)] = v;
                }
            }
            inequalities.push(QuadraticInequality::new(
                parse_rational(&ineq.a)?,
                linear,
                quadratic,
            )?);
        }
        Self::new(n, inequalities)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("system serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(json).map_err(|e| Error::json("system", e))?;
        Self::from_file(&file)
    }
}

/// Serialized system; `Q` holds the row-major upper triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub n: usize,
    pub m: usize,
    pub inequalities: Vec<InequalityFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityFile {
    pub a: String,
    pub b: Vec<String>,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
}

/// Builds the system for `case` on graph `g`.
pub fn assemble_system(case: &CaseDescriptor, g: &PolyhedralGraph) -> Result<QuadraticSystem> {
    if case.graph_id != g.id() {
        return Err(Error::InvalidCase(format!(
            "case belongs to `{}`, not `{}`",
            case.graph_id,
            g.id()
        )));
    }
    let root = case.root();
    if case.tetra.apex() != root {
        return Err(Error::InvalidCase(format!(
            "tetrahedron apex {} differs from root {root}",
            case.tetra.apex()
        )));
    }
    let layout = VariableLayout::new(g.vertex_count(), root)?;
    let mut inequalities = Vec::with_capacity(g.vertex_count());
    for i in g.vertices().filter(|&i| i != root) {
        let p = case
            .tree
            .parent(i)
            .ok_or_else(|| Error::InvalidCase(format!("vertex {i} has no parent")))?;
        inequalities.push(build_shadow_inequality(g, &layout, i, p)?);
    }
    inequalities.push(build_tetra_inequality(&case.tetra, &layout)?);
    QuadraticSystem::new(layout.dimension(), inequalities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::{enumerate_cases, TetraSelection};
    use crate::exact::rat_int;
    use crate::graph::{automorphism_classes, builtin};

    fn bipyramid() -> PolyhedralGraph {
        builtin("bipyramid5").unwrap()
    }

    #[test]
    fn layout_skips_root() {
        let l = VariableLayout::new(5, 3).unwrap();
        assert_eq!(l.dimension(), 12);
        let blocks: Vec<_> = (1..=5).map(|k| l.block(k)).collect();
        assert_eq!(blocks, vec![Some(0), Some(3), None, Some(6), Some(9)]);
    }

    #[test]
    fn shadow_on_root_parent_is_linear() {
        let g = bipyramid();
        let layout = VariableLayout::new(5, 1).unwrap();
        // vertex 3 sits in block 3..6
        let q = build_shadow_inequality(&g, &layout, 3, 1).unwrap();
        assert!(q.constant().is_zero());
        for (k, b) in q.linear().iter().enumerate() {
            assert_eq!(*b, if k == 3 { rat_int(-1) } else { rat_int(0) });
        }
        for i in 0..12 {
            for j in 0..12 {
                let expect = if i == j && (3..6).contains(&i) { 1 } else { 0 };
                assert_eq!(q.quadratic()[(i, j)], rat_int(expect));
            }
        }
    }

    #[test]
    fn shadow_between_free_vertices_has_half_cross_blocks() {
        let g = bipyramid();
        let layout = VariableLayout::new(5, 1).unwrap();
        let q = build_shadow_inequality(&g, &layout, 3, 4).unwrap();
        assert!(q.linear().iter().all(Zero::is_zero));
        let (bi, bp) = (3, 6);
        for c in 0..3 {
            assert_eq!(q.quadratic()[(bi + c, bi + c)], rat_int(1));
            assert_eq!(q.quadratic()[(bi + c, bp + c)], rat(-1, 2));
            assert_eq!(q.quadratic()[(bp + c, bi + c)], rat(-1, 2));
            assert_eq!(q.quadratic()[(bp + c, bp + c)], rat_int(0));
        }
        assert_eq!(q.quadratic()[(bi, bp + 1)], rat_int(0));
    }

    #[test]
    fn shadowed_vertex_evaluates_negative() {
        let g = bipyramid();
        let layout = VariableLayout::new(5, 1).unwrap();
        let q = build_shadow_inequality(&g, &layout, 3, 4).unwrap();
        let mut x = vec![rat_int(0); 12];
        x[3] = rat_int(1); // r_3 = (1, 0, 0)
        x[6] = rat_int(2); // r_4 = (2, 0, 0)
        assert_eq!(q.evaluate(&x).unwrap(), rat_int(-1));
    }

    #[test]
    fn shadow_errors() {
        let g = bipyramid();
        let layout = VariableLayout::new(5, 1).unwrap();
        assert!(matches!(
            build_shadow_inequality(&g, &layout, 1, 3),
            Err(Error::RootVertex(1))
        ));
        assert!(matches!(
            build_shadow_inequality(&g, &layout, 2, 1),
            Err(Error::NotAdjacent(2, 1))
        ));
    }

    #[test]
    fn tetra_inequality() {
        let g = bipyramid();
        let layout = VariableLayout::new(5, 1).unwrap();
        let t = TetraSelection::new(&g, 1, [2, 3, 4]).unwrap();
        let q = build_tetra_inequality(&t, &layout).unwrap();
        assert_eq!(*q.constant(), rat_int(1));
        assert!(q.quadratic().is_zero());
        let ones: Vec<usize> = (0..12).filter(|&k| !q.linear()[k].is_zero()).collect();
        assert_eq!(ones, vec![0, 3, 6]);

        let mut x = vec![rat_int(0); 12];
        assert_eq!(q.evaluate(&x).unwrap(), rat_int(1));
        for k in [0, 3, 6] {
            x[k] = rat_int(-1);
        }
        assert_eq!(q.evaluate(&x).unwrap(), rat_int(-2));
    }

    #[test]
    fn tetra_with_root_in_base_is_rejected() {
        let g = bipyramid();
        let layout = VariableLayout::new(5, 3).unwrap();
        let t = TetraSelection::new(&g, 1, [2, 3, 4]).unwrap();
        assert!(build_tetra_inequality(&t, &layout).is_err());
    }

    #[test]
    fn augmented_blocks() {
        let q = QuadraticInequality::new(rat_int(1), vec![rat_int(0)], RationalMatrix::zeros(1)).unwrap();
        assert_eq!(q.augmented(), RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]).unwrap());

        let q = QuadraticInequality::new(
            rat_int(0),
            vec![rat_int(-1)],
            RationalMatrix::identity(1),
        )
        .unwrap();
        let m = q.augmented();
        assert_eq!(m[(0, 1)], rat(-1, 2));
        assert_eq!(m[(1, 0)], rat(-1, 2));
        assert_eq!(m[(1, 1)], rat_int(1));
        let x = [rat_int(3)];
        assert_eq!(q.evaluate(&x).unwrap(), rat_int(6));
        assert_eq!(m.quadratic_form(&[rat_int(1), rat_int(3)]).unwrap(), rat_int(6));
        assert_eq!(q.evaluate_f64(&[3.0]).unwrap(), 6.0);
    }

    #[test]
    fn asymmetric_quadratic_rejected() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(matches!(
            QuadraticInequality::new(rat_int(0), vec![rat_int(0); 2], m),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let q = QuadraticInequality::new(rat_int(1), vec![rat_int(0)], RationalMatrix::zeros(1)).unwrap();
        assert!(q.evaluate(&[rat_int(0), rat_int(0)]).is_err());
        assert!(q.evaluate_f64(&[]).is_err());
    }

    #[test]
    fn system_shapes_and_json_round_trip() {
        for (id, v) in [("bipyramid5", 5), ("irregular-octahedron6", 6)] {
            let g = builtin(id).unwrap();
            let cases = enumerate_cases(&g, &automorphism_classes(&g).unwrap()).unwrap();
            let sys = assemble_system(&cases[7], &g).unwrap();
            assert_eq!(sys.len(), v);
            assert_eq!(sys.dimension(), 3 * (v - 1));
            let back = QuadraticSystem::from_json(&sys.to_json()).unwrap();
            assert_eq!(back, sys);
        }
    }

    #[test]
    fn malformed_system_json() {
        assert!(QuadraticSystem::from_json("{\"n\": 1}").is_err());
        let bad = r#"{"n":1,"m":1,"inequalities":[{"a":"1/0","b":["0/1"],"Q":["1/1"]}]}"#;
        assert!(matches!(QuadraticSystem::from_json(bad), Err(Error::BadRational(_))));
    }
}
