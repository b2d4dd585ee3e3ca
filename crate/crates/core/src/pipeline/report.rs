use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use super::files::{read_summary, RunManifest, SummaryRow, MANIFEST_FILE, REPORT_FILE, SUMMARY_FILE};
use crate::error::{Error, Result};
use crate::graph::builtin;

/// One line of the case-count table: a graph and a representative root.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub vertex_count: Option<usize>,
    pub graph: String,
    pub root: usize,
    pub trees: usize,
    pub tetrahedra: usize,
    pub cases: usize,
    pub verified: usize,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn fmt_z(z: Option<f64>) -> String {
    z.map_or_else(|| "-".to_string(), |z| format!("{z:.4}"))
}

/// Renders the markdown report for a set of summary rows. `vertex_counts`
/// maps graph ids to `V`; unknown graphs show `?`.
pub fn render_report(rows: &[SummaryRow], vertex_counts: &BTreeMap<String, usize>) -> (Vec<ReportRow>, String) {
    // keep graph order of first appearance
    let mut graph_order: Vec<String> = Vec::new();
    let mut by_root: BTreeMap<(String, usize), (BTreeSet<usize>, BTreeSet<usize>, usize, usize)> =
        BTreeMap::new();
    let mut z_by_graph: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in rows {
        if !graph_order.contains(&r.graph) {
            graph_order.push(r.graph.clone());
        }
        let e = by_root.entry((r.graph.clone(), r.root)).or_default();
        e.0.insert(r.tree_index);
        e.1.insert(r.tetra_index);
        e.2 += 1;
        e.3 += usize::from(r.verified);
        z_by_graph.entry(r.graph.clone()).or_default().push(r.z);
    }

    let mut table = Vec::new();
    for graph in &graph_order {
        for ((g, root), (trees, tetras, cases, verified)) in &by_root {
            if g == graph {
                table.push(ReportRow {
                    vertex_count: vertex_counts.get(g).copied(),
                    graph: g.clone(),
                    root: *root,
                    trees: trees.len(),
                    tetrahedra: tetras.len(),
                    cases: *cases,
                    verified: *verified,
                });
            }
        }
    }

    let mut out = String::new();
    out.push_str("# Certification summary\n\n");
    out.push_str("| V | graph | v | # trees | # tetrahedra | cases | verified |\n");
    out.push_str("|---|-------|---|---------|--------------|-------|----------|\n");
    for r in &table {
        let v = r.vertex_count.map_or_else(|| "?".to_string(), |v| v.to_string());
        let _ = writeln!(
            out,
            "| {v} | {} | {} | {} | {} | {} | {} |",
            r.graph, r.root, r.trees, r.tetrahedra, r.cases, r.verified
        );
    }
    let total: usize = table.iter().map(|r| r.cases).sum();
    let verified: usize = table.iter().map(|r| r.verified).sum();
    let _ = writeln!(out, "\nTotal cases: {total}, verified: {verified}\n");

    out.push_str("| graph | min z | median z |\n");
    out.push_str("|-------|-------|----------|\n");
    for graph in &graph_order {
        let mut zs = z_by_graph[graph].clone();
        zs.sort_by(f64::total_cmp);
        let _ = writeln!(
            out,
            "| {graph} | {} | {} |",
            fmt_z(zs.first().copied()),
            fmt_z(Some(median(&zs)))
        );
    }

    let mut min_by_v: BTreeMap<usize, f64> = BTreeMap::new();
    for r in rows {
        if let Some(&v) = vertex_counts.get(&r.graph) {
            let e = min_by_v.entry(v).or_insert(f64::INFINITY);
            *e = e.min(r.z);
        }
    }
    if !min_by_v.is_empty() {
        out.push('\n');
        for (v, z) in &min_by_v {
            let _ = writeln!(out, "Minimum achieved z for V = {v}: {z:.4}");
        }
    }
    (table, out)
}

/// Reads `summary.csv` (and `manifest.json` when present) from `out_dir`,
/// writes `report.md` next to them, and returns the rendered text.
pub fn run_report(out_dir: &Path) -> Result<String> {
    let summary = out_dir.join(SUMMARY_FILE);
    if !summary.is_file() {
        return Err(Error::Config(format!("missing {}", summary.display())));
    }
    let rows = read_summary(&summary)?;
    let mut vertex_counts: BTreeMap<String, usize> = BTreeMap::new();
    let manifest = out_dir.join(MANIFEST_FILE);
    if manifest.is_file() {
        for g in RunManifest::read(&manifest)?.graphs {
            vertex_counts.insert(g.id, g.vertex_count);
        }
    }
    for r in &rows {
        if !vertex_counts.contains_key(&r.graph) {
            if let Some(g) = builtin(&r.graph) {
                vertex_counts.insert(r.graph.clone(), g.vertex_count());
            }
        }
    }
    let (_, text) = render_report(&rows, &vertex_counts);
    let path = out_dir.join(REPORT_FILE);
    std::fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_has_headers() {
        let (table, text) = render_report(&[], &BTreeMap::new());
        assert!(table.is_empty());
        assert!(text.contains("| V | graph | v | # trees | # tetrahedra |"));
        assert!(text.contains("Total cases: 0"));
    }

    #[test]
    fn counts_trees_and_tetrahedra() {
        let row = |root, t, k, z| SummaryRow {
            graph: "g".into(),
            root,
            tree_index: t,
            tetra_index: k,
            z,
            verified: true,
            ms: 0,
        };
        let rows = vec![row(1, 0, 0, 0.3), row(1, 0, 1, 0.1), row(1, 1, 0, 0.2), row(1, 1, 1, 0.4), row(2, 0, 0, 0.5)];
        let vc = BTreeMap::from([("g".to_string(), 5)]);
        let (table, text) = render_report(&rows, &vc);
        assert_eq!(table.len(), 2);
        assert_eq!((table[0].trees, table[0].tetrahedra, table[0].cases), (2, 2, 4));
        assert_eq!((table[1].trees, table[1].tetrahedra), (1, 1));
        assert!(text.contains("| g | 0.1000 | 0.3000 |"), "{text}");
        assert!(text.contains("Minimum achieved z for V = 5: 0.1000"));
    }

    #[test]
    fn missing_summary_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(run_report(dir.path()).is_err());
    }
}
