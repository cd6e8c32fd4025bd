//! On-disk formats: embedding files, Poincare coordinates, corpus dumps,
//! the structural-distance cache, classification reports, and the SVG
//! scatter figure.
//!
//! Floating-point values are written with Rust's shortest round-trip
//! formatting, so every file reloads bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hyperstruc::eval::EvalReport;
use hyperstruc::manifold::{repair, to_poincare};
use hyperstruc::structdist::StructuralDistanceTable;
use hyperstruc::trainer::EmbeddingMatrix;
use hyperstruc::walker::Corpus;
use hyperstruc::Graph;

/// Embedding file: header `#dim n`, then one row per node with the
/// external token and n+1 tab-separated ambient coordinates.
pub fn render_embedding(emb: &EmbeddingMatrix, tokens: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "#dim {}", emb.spatial_dim()).unwrap();
    for (token, point) in tokens.iter().zip(emb.points()) {
        out.push_str(token);
        for c in point.coords() {
            write!(out, "\t{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parse an embedding file into its token list and point matrix. Rows are
/// repaired onto the sheet only if they drifted past tolerance, which a
/// file written by [`render_embedding`] never has.
pub fn parse_embedding(text: &str) -> Result<(Vec<String>, EmbeddingMatrix)> {
    let mut lines = text.lines();
    let header = lines.next().context("embedding file is empty")?;
    let dim: usize = header
        .strip_prefix("#dim ")
        .and_then(|d| d.parse().ok())
        .with_context(|| format!("bad embedding header {header:?}, expected `#dim n`"))?;
    let mut tokens = Vec::new();
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let token = parts.next().unwrap().to_string();
        let coords: Vec<f64> = parts
            .map(|p| {
                p.parse()
                    .with_context(|| format!("row {}: bad coordinate {p:?}", i + 2))
            })
            .collect::<Result<_>>()?;
        if coords.len() != dim + 1 {
            bail!(
                "row {}: expected {} coordinates, got {}",
                i + 2,
                dim + 1,
                coords.len()
            );
        }
        let point = repair(&coords);
        if (point.time() - coords[dim]).abs() > 1e-6 {
            bail!("row {}: point is far off the hyperboloid", i + 2);
        }
        tokens.push(token);
        points.push(point);
    }
    if points.is_empty() {
        bail!("embedding file has no rows");
    }
    Ok((tokens, EmbeddingMatrix::from_points(points)))
}

/// Poincare-disk coordinates: token plus n tab-separated values per row.
pub fn render_poincare(emb: &EmbeddingMatrix, tokens: &[String]) -> String {
    let mut out = String::new();
    for (token, point) in tokens.iter().zip(emb.points()) {
        out.push_str(token);
        for c in to_poincare(point) {
            write!(out, "\t{c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Corpus dump: one walk per line, space-separated external tokens.
pub fn render_corpus(corpus: &Corpus, graph: &Graph) -> String {
    let mut out = String::new();
    for walk in &corpus.walks {
        let mut first = true;
        for &node in walk {
            if !first {
                out.push(' ');
            }
            out.push_str(graph.token(node));
            first = false;
        }
        out.push('\n');
    }
    out
}

const DIST_CACHE_MAGIC: &str = "#hyperstruc distance table v1";

/// Structural-distance cache: header, eccentricity list, then one line of
/// cumulative layer distances per canonical pair.
pub fn render_distance_table(table: &StructuralDistanceTable) -> String {
    let n = table.node_count();
    let mut out = String::new();
    writeln!(out, "{DIST_CACHE_MAGIC}").unwrap();
    writeln!(out, "#nodes {n}").unwrap();
    out.push_str("#ecc");
    for &e in table.eccentricities() {
        write!(out, " {e}").unwrap();
    }
    out.push('\n');
    for u in 0..n {
        for v in (u + 1)..n {
            write!(out, "{u} {v}").unwrap();
            for d in table.pair_layers(u, v) {
                write!(out, " {d}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_distance_table(text: &str) -> Result<StructuralDistanceTable> {
    let mut lines = text.lines();
    if lines.next() != Some(DIST_CACHE_MAGIC) {
        bail!("not a distance cache file");
    }
    let n: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("#nodes "))
        .and_then(|l| l.parse().ok())
        .context("bad node-count header")?;
    let ecc: Vec<usize> = lines
        .next()
        .and_then(|l| l.strip_prefix("#ecc"))
        .context("missing eccentricity header")?
        .split_whitespace()
        .map(|t| t.parse().context("bad eccentricity"))
        .collect::<Result<_>>()?;
    if ecc.len() != n {
        bail!("expected {n} eccentricities, got {}", ecc.len());
    }
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (_u, _v) = (
            parts.next().context("missing pair id")?,
            parts.next().context("missing pair id")?,
        );
        let layers: Vec<f64> = parts
            .map(|t| t.parse().context("bad distance value"))
            .collect::<Result<_>>()?;
        pairs.push(layers.into_boxed_slice());
    }
    StructuralDistanceTable::from_parts(ecc, pairs).map_err(|e| anyhow::anyhow!(e))
}

/// Classification report as a key-value file: the aggregate micro-F1
/// followed by one line per fold.
pub fn render_report(report: &EvalReport) -> String {
    let mut out = String::new();
    writeln!(out, "micro_f1 {}", report.micro_f1).unwrap();
    for (i, score) in report.fold_scores.iter().enumerate() {
        writeln!(out, "fold_{} {}", i + 1, score).unwrap();
    }
    out
}

/// Human-readable report: scores plus the confusion matrix.
pub fn format_report_text(report: &EvalReport) -> String {
    let mut out = String::new();
    writeln!(out, "micro-F1: {:.4}", report.micro_f1).unwrap();
    writeln!(
        out,
        "per-fold: [{}]",
        report
            .fold_scores
            .iter()
            .map(|s| format!("{s:.4}"))
            .collect::<Vec<_>>()
            .join(", ")
    )
    .unwrap();
    writeln!(out, "confusion (rows = truth):").unwrap();
    for row in &report.confusion {
        writeln!(
            out,
            "  {}",
            row.iter()
                .map(|c| format!("{c:5}"))
                .collect::<Vec<_>>()
                .join(" ")
        )
        .unwrap();
    }
    out
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Scatter figure of a 2-dimensional embedding on the Poincare disk:
/// the unit circle plus one marker per node, colored by class when given.
pub fn render_disk_svg(emb: &EmbeddingMatrix, classes: &[Option<usize>]) -> Result<String> {
    if emb.spatial_dim() != 2 {
        bail!(
            "figure requires a 2-dimensional embedding, got {}",
            emb.spatial_dim()
        );
    }
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" \
         viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
    );
    out.push_str(
        "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#333\" stroke-width=\"0.004\"/>\n",
    );
    for (i, point) in emb.points().iter().enumerate() {
        let disk = to_poincare(point);
        let color = classes
            .get(i)
            .copied()
            .flatten()
            .map_or("#555555", |c| PALETTE[c % PALETTE.len()]);
        writeln!(
            out,
            "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.015\" fill=\"{}\" fill-opacity=\"0.85\"/>",
            disk[0], -disk[1], color
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Hex-encoded SHA-256 of a file's bytes, used as the cache key.
pub fn content_hash(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("cannot create {}", parent.display()))?;
        }
    }
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}
