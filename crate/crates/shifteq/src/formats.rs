//! Text file formats: `.mat` matrices, `.graph` multigraphs, `.esse`
//! witness manifests, and `.chain` equivalence chains. Parsers report the
//! offending line; serializers emit the canonical form, which round-trips
//! byte-identically.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use shifteq_core::{Graph, Matrix};
use thiserror::Error;

/// A parse failure inside a text, before it is tied to a file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseIssue {
    /// 1-based line number of the offending line.
    pub line: usize,
    pub message: String,
}

impl ParseIssue {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseIssue {
            line,
            message: message.into(),
        }
    }
}

/// A file-level format error: IO failure or parse failure with position.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl FormatError {
    fn from_issue(path: &Path, issue: ParseIssue) -> Self {
        FormatError::Parse {
            path: path.to_path_buf(),
            line: issue.line,
            message: issue.message,
        }
    }
}

/// Yields `(1-based line number, line)` for content lines, skipping blank
/// lines and `#`-prefixed comment lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parses the `.mat` format: a `<rows> <cols>` header line, then `rows`
/// lines of `cols` space-separated non-negative decimal entries.
pub fn parse_matrix_str(text: &str) -> Result<Matrix, ParseIssue> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseIssue::new(1, "missing '<rows> <cols>' header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(ParseIssue::new(
            header_line,
            format!("expected '<rows> <cols>' header, found '{header}'"),
        ));
    }
    let rows: usize = dims[0]
        .parse()
        .map_err(|_| ParseIssue::new(header_line, format!("invalid row count '{}'", dims[0])))?;
    let cols: usize = dims[1]
        .parse()
        .map_err(|_| ParseIssue::new(header_line, format!("invalid column count '{}'", dims[1])))?;
    let mut entries = Vec::with_capacity(rows.saturating_mul(cols));
    let mut seen_rows = 0usize;
    let mut last_line = header_line;
    for (line_no, line) in lines {
        if seen_rows == rows {
            return Err(ParseIssue::new(
                line_no,
                format!("unexpected content after {rows} rows"),
            ));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(ParseIssue::new(
                line_no,
                format!("expected {cols} entries, found {}", tokens.len()),
            ));
        }
        for token in tokens {
            let value: u64 = token.parse().map_err(|_| {
                ParseIssue::new(line_no, format!("invalid entry '{token}'"))
            })?;
            entries.push(value);
        }
        seen_rows += 1;
        last_line = line_no;
    }
    if seen_rows != rows {
        return Err(ParseIssue::new(
            last_line,
            format!("expected {rows} rows, found {seen_rows}"),
        ));
    }
    Matrix::new(rows, cols, entries)
        .map_err(|e| ParseIssue::new(header_line, e.to_string()))
}

/// Serializes a matrix into the canonical `.mat` form.
pub fn write_matrix_string(m: &Matrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.row_iter() {
        let mut first = true;
        for &value in row {
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{value}");
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Parses the `.graph` format: `vertex <name>` lines, then `edge <name>
/// <source> <range>` lines referencing already-declared vertices.
pub fn parse_graph_str(text: &str) -> Result<Graph, ParseIssue> {
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_seen: BTreeSet<&str> = BTreeSet::new();
    let mut edge_seen: BTreeSet<&str> = BTreeSet::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for (line_no, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(ParseIssue::new(line_no, "expected 'vertex <name>'"));
                }
                if !vertex_seen.insert(tokens[1]) {
                    return Err(ParseIssue::new(
                        line_no,
                        format!("duplicate vertex '{}'", tokens[1]),
                    ));
                }
                vertices.push(tokens[1].to_string());
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(ParseIssue::new(
                        line_no,
                        "expected 'edge <name> <source> <range>'",
                    ));
                }
                if !edge_seen.insert(tokens[1]) {
                    return Err(ParseIssue::new(
                        line_no,
                        format!("duplicate edge '{}'", tokens[1]),
                    ));
                }
                for endpoint in [tokens[2], tokens[3]] {
                    if !vertex_seen.contains(endpoint) {
                        return Err(ParseIssue::new(
                            line_no,
                            format!("unknown vertex '{endpoint}'"),
                        ));
                    }
                }
                edges.push((
                    tokens[1].to_string(),
                    tokens[2].to_string(),
                    tokens[3].to_string(),
                ));
            }
            other => {
                return Err(ParseIssue::new(
                    line_no,
                    format!("expected 'vertex' or 'edge', found '{other}'"),
                ));
            }
        }
    }
    Graph::new(vertices, edges).map_err(|e| ParseIssue::new(0, e.to_string()))
}

/// Serializes a graph into the canonical `.graph` form, vertices first,
/// both in declaration order.
pub fn write_graph_string(g: &Graph) -> String {
    let mut out = String::new();
    for name in g.vertices() {
        let _ = writeln!(out, "vertex {name}");
    }
    for edge in g.edges() {
        let _ = writeln!(
            out,
            "edge {} {} {}",
            edge.name,
            g.vertex_name(edge.source),
            g.vertex_name(edge.range)
        );
    }
    out
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and parses a `.mat` file.
pub fn read_matrix(path: &Path) -> Result<Matrix, FormatError> {
    let text = read_text(path)?;
    parse_matrix_str(&text).map_err(|issue| FormatError::from_issue(path, issue))
}

/// Reads and parses a `.graph` file.
pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    let text = read_text(path)?;
    parse_graph_str(&text).map_err(|issue| FormatError::from_issue(path, issue))
}

/// Resolves `target` relative to the directory containing `manifest`.
fn resolve(manifest: &Path, target: &str) -> PathBuf {
    let target = Path::new(target);
    if target.is_absolute() {
        target.to_path_buf()
    } else {
        match manifest.parent() {
            Some(dir) => dir.join(target),
            None => target.to_path_buf(),
        }
    }
}

/// Reads a `.esse` witness manifest: four lines naming the `.mat` files of
/// `A`, `B`, `R`, `S`, resolved relative to the manifest's directory.
pub fn read_esse(path: &Path) -> Result<(Matrix, Matrix, Matrix, Matrix), FormatError> {
    let text = read_text(path)?;
    let lines: Vec<(usize, &str)> = content_lines(&text).collect();
    if lines.len() != 4 {
        let line = lines.last().map(|&(n, _)| n).unwrap_or(1);
        return Err(FormatError::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("expected 4 matrix paths (A, B, R, S), found {}", lines.len()),
        });
    }
    let mut loaded = Vec::with_capacity(4);
    for &(_, target) in &lines {
        loaded.push(read_matrix(&resolve(path, target))?);
    }
    let s = loaded.pop().expect("four entries");
    let r = loaded.pop().expect("four entries");
    let b = loaded.pop().expect("four entries");
    let a = loaded.pop().expect("four entries");
    Ok((a, b, r, s))
}

/// Reads a `.chain` file: `matrix <path>` lines and `witness <r-path>
/// <s-path>` lines in order, paths resolved relative to the chain file.
/// Returns the matrices and the witness pairs in declaration order.
#[allow(clippy::type_complexity)]
pub fn read_chain(path: &Path) -> Result<(Vec<Matrix>, Vec<(Matrix, Matrix)>), FormatError> {
    let text = read_text(path)?;
    let mut matrices = Vec::new();
    let mut witnesses = Vec::new();
    for (line_no, line) in content_lines(&text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "matrix" => {
                if tokens.len() != 2 {
                    return Err(FormatError::Parse {
                        path: path.to_path_buf(),
                        line: line_no,
                        message: "expected 'matrix <path>'".into(),
                    });
                }
                matrices.push(read_matrix(&resolve(path, tokens[1]))?);
            }
            "witness" => {
                if tokens.len() != 3 {
                    return Err(FormatError::Parse {
                        path: path.to_path_buf(),
                        line: line_no,
                        message: "expected 'witness <r-path> <s-path>'".into(),
                    });
                }
                let r = read_matrix(&resolve(path, tokens[1]))?;
                let s = read_matrix(&resolve(path, tokens[2]))?;
                witnesses.push((r, s));
            }
            other => {
                return Err(FormatError::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: format!("expected 'matrix' or 'witness', found '{other}'"),
                });
            }
        }
    }
    Ok((matrices, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trips_byte_identically() {
        let text = "2 3\n1 1 0\n0 0 1\n";
        let m = parse_matrix_str(text).unwrap();
        assert_eq!(m, Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap());
        assert_eq!(write_matrix_string(&m), text);
    }

    #[test]
    fn matrix_parse_skips_comments_and_blanks() {
        let text = "# witness\n\n2 2\n1 1\n# middle\n0 1\n";
        let m = parse_matrix_str(text).unwrap();
        assert_eq!(m.entries(), &[1, 1, 0, 1]);
    }

    #[test]
    fn negative_entry_is_rejected_with_its_line() {
        let err = parse_matrix_str("2 2\n1 1\n0 -1\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("-1"), "{}", err.message);
    }

    #[test]
    fn short_and_long_matrices_are_rejected() {
        let err = parse_matrix_str("2 2\n1 1\n").unwrap_err();
        assert!(err.message.contains("expected 2 rows"), "{}", err.message);
        let err = parse_matrix_str("1 2\n1 1\n0 1\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_matrix_str("2 2\n1 1 1\n1 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("expected 2 entries"), "{}", err.message);
    }

    #[test]
    fn zero_dimension_header_is_rejected() {
        let err = parse_matrix_str("0 2\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn graph_round_trips_byte_identically() {
        let text = "vertex v\nvertex w\nedge a v v\nedge b v w\nedge c w w\n";
        let g = parse_graph_str(text).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(write_graph_string(&g), text);
    }

    #[test]
    fn graph_names_with_hash_marks_survive() {
        let text = "vertex v\nvertex w\nedge e:v->w#1 v w\n";
        let g = parse_graph_str(text).unwrap();
        assert_eq!(g.edges()[0].name, "e:v->w#1");
        assert_eq!(write_graph_string(&g), text);
    }

    #[test]
    fn dangling_edge_endpoint_is_rejected_with_its_line() {
        let err = parse_graph_str("vertex v\nedge a v ghost\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("ghost"), "{}", err.message);
    }

    #[test]
    fn duplicate_names_are_rejected_with_their_lines() {
        let err = parse_graph_str("vertex v\nvertex v\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_graph_str("vertex v\nedge a v v\nedge a v v\n").unwrap_err();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn unknown_keyword_is_rejected() {
        let err = parse_graph_str("node v\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("node"), "{}", err.message);
    }

    #[test]
    fn esse_manifest_resolves_relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, body: &str| {
            let p = dir.path().join(name);
            fs::write(&p, body).unwrap();
            p
        };
        write("a.mat", "1 1\n2\n");
        write("b.mat", "1 1\n2\n");
        write("r.mat", "1 1\n1\n");
        write("s.mat", "1 1\n2\n");
        let manifest = write("w.esse", "# A B R S\na.mat\nb.mat\nr.mat\ns.mat\n");
        let (a, b, r, s) = read_esse(&manifest).unwrap();
        assert_eq!(a.get(0, 0), 2);
        assert_eq!(b.get(0, 0), 2);
        assert_eq!(r.get(0, 0), 1);
        assert_eq!(s.get(0, 0), 2);
    }

    #[test]
    fn esse_manifest_with_wrong_arity_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dir.path().join("w.esse");
        fs::write(&manifest, "a.mat\nb.mat\n").unwrap();
        let err = read_esse(&manifest).unwrap_err();
        assert!(err.to_string().contains("expected 4"), "{err}");
    }

    #[test]
    fn chain_file_loads_matrices_and_witnesses_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, body: &str| {
            fs::write(dir.path().join(name), body).unwrap();
        };
        write("a.mat", "1 1\n4\n");
        write("b.mat", "1 1\n4\n");
        write("r.mat", "1 1\n2\n");
        write("s.mat", "1 1\n2\n");
        let chain = dir.path().join("c.chain");
        fs::write(&chain, "matrix a.mat\nmatrix b.mat\nwitness r.mat s.mat\n").unwrap();
        let (matrices, witnesses) = read_chain(&chain).unwrap();
        assert_eq!(matrices.len(), 2);
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].0.get(0, 0), 2);
    }

    #[test]
    fn missing_file_reports_the_path() {
        let err = read_matrix(Path::new("/nonexistent/x.mat")).unwrap_err();
        assert!(err.to_string().contains("x.mat"), "{err}");
    }
}
