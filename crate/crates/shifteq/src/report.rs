//! Deterministic text reports: verification verdicts, graph analyses,
//! ideal lattices, corner generator tables, and the Morita verdict. All
//! coordinates in reports are 1-based; all output is LF-terminated.

use std::fmt::Write as _;

use shifteq_core::{
    CornerDecomposition, CorrespondenceProfile, ElementaryPair, Graph, IdealLattice, Matrix,
    MatrixError, Mismatch, MoritaVerdict, ProductSide, SseChain,
};

/// Renders a mismatch as `RS=A fails at (i,j): expected x, found y` with
/// 1-based coordinates.
pub fn mismatch_text(mismatch: &Mismatch) -> String {
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

fn side_line(side: ProductSide, product: &Matrix, target: &Matrix) -> String {
    let (name, goal) = match side {
        ProductSide::Rs => ("RS", "A"),
        ProductSide::Sr => ("SR", "B"),
    };
    for row in 0..target.rows() {
        for col in 0..target.cols() {
            let expected = target.get(row, col);
            let found = product.get(row, col);
            if expected != found {
                return mismatch_text(&Mismatch {
                    side,
                    row,
                    col,
                    expected,
                    found,
                });
            }
        }
    }
    format!("{name}={goal}: ok")
}

/// One line per product side: `RS=A: ok` or the first failing entry.
/// Returns the report and whether both sides hold.
pub fn verify_report(pair: &ElementaryPair) -> Result<(String, bool), MatrixError> {
    let rs = pair.r().multiply(pair.s())?;
    let sr = pair.s().multiply(pair.r())?;
    let holds = rs == *pair.a() && sr == *pair.b();
    let report = format!(
        "{}\n{}\n",
        side_line(ProductSide::Rs, &rs, pair.a()),
        side_line(ProductSide::Sr, &sr, pair.b())
    );
    Ok((report, holds))
}

/// One line per link (`link <k>: ok` or the first failing entry), then a
/// summary line. Returns the report and whether every link holds.
pub fn chain_report(chain: &SseChain) -> Result<(String, bool), MatrixError> {
    let mut out = String::new();
    let mut failed = None;
    for (i, pair) in chain.witnesses().iter().enumerate() {
        let rs = pair.r().multiply(pair.s())?;
        let sr = pair.s().multiply(pair.r())?;
        let line = if rs != *pair.a() {
            side_line(ProductSide::Rs, &rs, pair.a())
        } else if sr != *pair.b() {
            side_line(ProductSide::Sr, &sr, pair.b())
        } else {
            "ok".into()
        };
        if line != "ok" && failed.is_none() {
            failed = Some(i + 1);
        }
        let _ = writeln!(out, "link {}: {}", i + 1, line);
    }
    match failed {
        None => {
            let _ = writeln!(
                out,
                "chain verified: {} matrices, {} witnesses",
                chain.matrices().len(),
                chain.witnesses().len()
            );
            Ok((out, true))
        }
        Some(k) => {
            let _ = writeln!(out, "chain failed at link {k}");
            Ok((out, false))
        }
    }
}

fn name_list(g: &Graph, indices: &[usize]) -> String {
    if indices.is_empty() {
        return "none".into();
    }
    indices
        .iter()
        .map(|&v| g.vertex_name(v))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Structural analysis of a graph: counts, sinks, sources, first-return
/// counts (capped at 2), Condition (K), and the correspondence profile.
pub fn analysis_report(g: &Graph) -> String {
    let analysis = g.analyze();
    let profile = shifteq_core::corners::profile(g);
    let returns = (0..g.vertex_count())
        .map(|v| format!("{}:{}", g.vertex_name(v), analysis.return_paths[v]))
        .collect::<Vec<_>>()
        .join(", ");
    let mut out = String::new();
    let _ = writeln!(out, "vertices={}", g.vertex_count());
    let _ = writeln!(out, "edges={}", g.edge_count());
    let _ = writeln!(out, "sinks={}", name_list(g, &analysis.sinks));
    let _ = writeln!(out, "sources={}", name_list(g, &analysis.sources));
    let _ = writeln!(out, "first_returns={returns}");
    let _ = writeln!(out, "condition_K={}", analysis.condition_k);
    let _ = writeln!(out, "row_finite={}", analysis.row_finite);
    let _ = writeln!(out, "regular={}", profile.regular);
    let _ = writeln!(out, "essential={}", profile.essential);
    out
}

/// One line per proper saturated hereditary subset (`{}` or `{v, w}`,
/// vertices in index order), then the two counts and the simplicity flag.
pub fn lattice_report(g: &Graph, lattice: &IdealLattice) -> String {
    let mut out = String::new();
    for subset in &lattice.subsets {
        let names = subset
            .iter()
            .map(|&v| g.vertex_name(v))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "{{{names}}}");
    }
    let _ = writeln!(out, "proper_with_empty={}", lattice.count_with_empty);
    let _ = writeln!(out, "proper_nonzero={}", lattice.count_nonzero);
    let _ = writeln!(out, "simple={}", lattice.simple);
    out
}

/// Both corner tables: a header line per side, then one `<edge> ->
/// <first>.<second>` line per generator assignment.
pub fn corner_report(deco: &CornerDecomposition) -> String {
    let mut out = String::new();
    for (label, side) in [("E", &deco.e_side), ("F", &deco.f_side)] {
        let _ = writeln!(
            out,
            "corner {label}: vertices {}",
            side.corner_vertices.join(", ")
        );
        for (edge, (first, second)) in &side.edge_map {
            let _ = writeln!(out, "{edge} -> {first}.{second}");
        }
    }
    out
}

fn profile_line(label: &str, p: &CorrespondenceProfile) -> String {
    format!(
        "{label}: row_finite={} sinks={} sources={} regular={} essential={}",
        p.row_finite, p.has_sinks, p.has_sources, p.regular, p.essential
    )
}

/// The Morita verdict: verification flag, both profiles, applicability,
/// any obstructions, and the conclusion line.
pub fn verdict_report(verdict: &MoritaVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "esse_verified={}", verdict.esse_verified);
    let _ = writeln!(out, "{}", profile_line("E", &verdict.profile_e));
    let _ = writeln!(out, "{}", profile_line("F", &verdict.profile_f));
    let _ = writeln!(out, "applicable={}", verdict.applicable);
    for obstruction in &verdict.obstructions {
        let _ = writeln!(out, "obstruction: {obstruction}");
    }
    let _ = writeln!(out, "conclusion={}", verdict.conclusion.as_str());
    out
}
