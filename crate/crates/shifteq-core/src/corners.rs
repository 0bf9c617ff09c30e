//! Corner decompositions of inflation graphs and the Morita verdict.
//!
//! For a witness pair `(R, S)` the inflation graph contains the graph of
//! `RS` on its row side and the graph of `SR` on its column side: every
//! edge of either graph corresponds to a length-2 path through the opposite
//! side. [`corner_maps`] realizes both correspondences as explicit, bijective
//! generator maps in a canonical order; [`morita_verdict`] combines the
//! verified equivalence with the regularity profile of both graphs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::sse::{inflate_graph, ElementaryPair, Mismatch, ProductSide, SseError};

/// One side of the corner decomposition: where the side's graph lands
/// inside the inflation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerMap {
    /// The inflation-graph vertices spanning this corner, in order.
    pub corner_vertices: Vec<String>,
    /// Graph vertex name -> inflation vertex name (identity by naming).
    pub vertex_map: Vec<(String, String)>,
    /// Graph edge name -> the two inflation edge names of its length-2
    /// path, in the side graph's edge order.
    pub edge_map: Vec<(String, (String, String))>,
}

/// Both corner maps together with the three graphs they connect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerDecomposition {
    pub e_side: CornerMap,
    pub f_side: CornerMap,
    /// The inflation graph of `(R, S)`.
    pub inflation: Graph,
    /// The graph of `RS` on the row vertices.
    pub e: Graph,
    /// The graph of `SR` on the column vertices.
    pub f: Graph,
}

/// Builds the corner decomposition of the witness pair `(R, S)`.
///
/// Edges of the `RS` graph are paired with paths (row -> column -> row)
/// and edges of the `SR` graph with paths (column -> row -> column).
/// Candidate paths are ordered by middle vertex, then first-edge name,
/// then second-edge name; parallel graph edges in generated order. Both
/// sequences have the same length per vertex pair (a product entry), so
/// the pairing is a bijection.
pub fn corner_maps(
    r: &Matrix,
    s: &Matrix,
    row_names: &[String],
    col_names: &[String],
) -> Result<CornerDecomposition, SseError> {
    let inflation = inflate_graph(r, s, row_names, col_names)?;
    let rs = r.multiply(s)?;
    let sr = s.multiply(r)?;
    let e = Graph::from_matrix(&rs, Some(row_names))?;
    let f = Graph::from_matrix(&sr, Some(col_names))?;
    let m = r.rows();
    let n = r.cols();
    let row_ids: Vec<usize> = (0..m).collect();
    let col_ids: Vec<usize> = (m..m + n).collect();
    let e_side = build_side(&inflation, &e, &row_ids, &col_ids);
    let f_side = build_side(&inflation, &f, &col_ids, &row_ids);
    Ok(CornerDecomposition {
        e_side,
        f_side,
        inflation,
        e,
        f,
    })
}

fn build_side(g: &Graph, side: &Graph, corner_g: &[usize], mid_g: &[usize]) -> CornerMap {
    let corner_vertices: Vec<String> = corner_g
        .iter()
        .map(|&v| g.vertex_name(v).into())
        .collect();
    let vertex_map: Vec<(String, String)> = side
        .vertices()
        .iter()
        .zip(&corner_vertices)
        .map(|(sv, gv)| (sv.clone(), gv.clone()))
        .collect();
    let mut edge_map = Vec::with_capacity(side.edge_count());
    for i in 0..side.vertex_count() {
        for ip in 0..side.vertex_count() {
            let parallel: Vec<&str> = side
                .edges()
                .iter()
                .filter(|e| e.source == i && e.range == ip)
                .map(|e| e.name.as_str())
                .collect();
            if parallel.is_empty() {
                continue;
            }
            let mut paths: Vec<(usize, &str, &str)> = Vec::new();
            for &mid in mid_g {
                for &ea in g.out_edges(corner_g[i]) {
                    let first = &g.edges()[ea];
                    if first.range != mid {
                        continue;
                    }
                    for &eb in g.out_edges(mid) {
                        let second = &g.edges()[eb];
                        if second.range == corner_g[ip] {
                            paths.push((mid, first.name.as_str(), second.name.as_str()));
                        }
                    }
                }
            }
            paths.sort();
            assert_eq!(
                paths.len(),
                parallel.len(),
                "length-2 path count must equal the product entry"
            );
            for (edge, path) in parallel.into_iter().zip(paths) {
                edge_map.push((edge.into(), (path.1.into(), path.2.into())));
            }
        }
    }
    CornerMap {
        corner_vertices,
        vertex_map,
        edge_map,
    }
}

/// Regularity and essentiality of a graph's correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrespondenceProfile {
    /// Always true: every finite graph is row-finite.
    pub row_finite: bool,
    pub has_sinks: bool,
    pub has_sources: bool,
    /// Row-finite with no sinks.
    pub regular: bool,
    /// Always true: graph correspondences are essential.
    pub essential: bool,
}

/// Computes the correspondence profile of a graph.
pub fn profile(g: &Graph) -> CorrespondenceProfile {
    let n = g.vertex_count();
    let has_sinks = (0..n).any(|v| g.out_edges(v).is_empty());
    let has_sources = (0..n).any(|v| g.in_edges(v).is_empty());
    CorrespondenceProfile {
        row_finite: true,
        has_sinks,
        has_sources,
        regular: !has_sinks,
        essential: true,
    }
}

/// The two possible conclusions of [`morita_verdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    MoritaEquivalentViaInflation,
    TheoremNotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::MoritaEquivalentViaInflation => "morita-equivalent-via-inflation",
            Verdict::TheoremNotApplicable => "theorem-not-applicable",
        }
    }
}

/// Result of checking the Morita-equivalence hypotheses on a witness pair
/// of graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaVerdict {
    /// Whether `RS` and `SR` reproduce the two vertex matrices.
    pub esse_verified: bool,
    pub profile_e: CorrespondenceProfile,
    pub profile_f: CorrespondenceProfile,
    /// Verified equivalence and both correspondences regular.
    pub applicable: bool,
    pub conclusion: Verdict,
    /// One line per failed hypothesis; coordinates are 1-based.
    pub obstructions: Vec<String>,
}

fn mismatch_line(mismatch: &Mismatch) -> String {
    let (product, target) = match mismatch.side {
        ProductSide::Rs => ("RS", "A"),
        ProductSide::Sr => ("SR", "B"),
    };
    format!(
        "{product}={target} fails at ({},{}): expected {}, found {}",
        mismatch.row + 1,
        mismatch.col + 1,
        mismatch.expected,
        mismatch.found
    )
}

fn sink_line(role: &str, g: &Graph) -> String {
    let sinks: Vec<&str> = (0..g.vertex_count())
        .filter(|&v| g.out_edges(v).is_empty())
        .map(|v| g.vertex_name(v))
        .collect();
    format!(
        "{role} has sinks: {} (correspondence not regular)",
        sinks.join(", ")
    )
}

/// Checks the hypotheses of the graph Morita theorem for `E`, `F` and the
/// witness `(R, S)`: the pair must verify against the vertex matrices and
/// both correspondences must be regular. Essentiality is automatic.
pub fn morita_verdict(
    e: &Graph,
    f: &Graph,
    r: &Matrix,
    s: &Matrix,
) -> Result<MoritaVerdict, SseError> {
    let ae = e.vertex_matrix()?;
    let af = f.vertex_matrix()?;
    let pair = ElementaryPair::new(ae, af, r.clone(), s.clone())?;
    let check = pair.verify()?;
    let esse_verified = check.holds();
    let profile_e = profile(e);
    let profile_f = profile(f);
    let applicable = esse_verified && profile_e.regular && profile_f.regular;
    let mut obstructions = Vec::new();
    if let Some(mismatch) = &check.mismatch {
        obstructions.push(mismatch_line(mismatch));
    }
    if !profile_e.regular {
        obstructions.push(sink_line("E", e));
    }
    if !profile_f.regular {
        obstructions.push(sink_line("F", f));
    }
    let conclusion = if applicable {
        Verdict::MoritaEquivalentViaInflation
    } else {
        Verdict::TheoremNotApplicable
    };
    Ok(MoritaVerdict {
        esse_verified,
        profile_e,
        profile_f,
        applicable,
        conclusion,
        obstructions,
    })
}
