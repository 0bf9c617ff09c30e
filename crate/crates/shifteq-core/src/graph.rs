//! Finite directed multigraphs with named vertices and edges.
//!
//! Vertex and edge order is declaration order and is preserved by every
//! derived construction, so all outputs are deterministic. Names are
//! non-empty, whitespace-free and unique within their kind; an edge knows
//! its source and range vertex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::{Matrix, MatrixError};

/// A directed edge between vertex indices of its graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

/// A finite directed multigraph with ordered, named vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: BTreeMap<String, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

/// Errors from graph construction and matrix conversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Names must be non-empty and contain no whitespace.
    InvalidName { name: String },
    DuplicateVertex { name: String },
    DuplicateEdge { name: String },
    UnknownVertex { name: String },
    /// Vertex name list length differs from the matrix dimension.
    NameCount { expected: usize, found: usize },
    /// Graph construction from a matrix needs a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// A graph with no vertices has no vertex matrix.
    EmptyGraph,
    /// A matrix entry is too large to expand into edges.
    CountOverflow { row: usize, col: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidName { name } => {
                write!(f, "invalid name {name:?}: names are non-empty and whitespace-free")
            }
            GraphError::DuplicateVertex { name } => write!(f, "duplicate vertex {name:?}"),
            GraphError::DuplicateEdge { name } => write!(f, "duplicate edge {name:?}"),
            GraphError::UnknownVertex { name } => write!(f, "unknown vertex {name:?}"),
            GraphError::NameCount { expected, found } => {
                write!(f, "expected {expected} vertex names, found {found}")
            }
            GraphError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            GraphError::EmptyGraph => write!(f, "graph has no vertices"),
            GraphError::CountOverflow { row, col } => {
                write!(f, "entry at ({row},{col}) is too large to expand into edges")
            }
        }
    }
}

fn check_name(name: &str) -> Result<(), GraphError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(GraphError::InvalidName {
            name: name.to_string(),
        });
    }
    Ok(())
}

/// The canonical name of the `k`-th generated edge from `src` to `dst`
/// (`k` starts at 1).
pub fn generated_edge_name(src: &str, dst: &str, k: u64) -> String {
    format!("e:{src}->{dst}#{k}")
}

impl Graph {
    /// Builds a graph from vertex names and `(name, source, range)` edges.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self, GraphError> {
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            check_name(v)?;
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex { name: v.clone() });
            }
        }
        let mut edge_names = BTreeSet::new();
        let mut built = Vec::with_capacity(edges.len());
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (name, src, dst) in edges {
            check_name(&name)?;
            if !edge_names.insert(name.clone()) {
                return Err(GraphError::DuplicateEdge { name });
            }
            let source = *vertex_index
                .get(&src)
                .ok_or(GraphError::UnknownVertex { name: src })?;
            let range = *vertex_index
                .get(&dst)
                .ok_or(GraphError::UnknownVertex { name: dst })?;
            out[source].push(built.len());
            inc[range].push(built.len());
            built.push(Edge {
                name,
                source,
                range,
            });
        }
        Ok(Graph {
            vertices,
            edges: built,
            vertex_index,
            out,
            inc,
        })
    }

    /// Expands a square matrix into a graph with `A(v,w)` parallel edges
    /// from `v` to `w`, named `e:<v>-><w>#<k>` with `k = 1..=A(v,w)`.
    ///
    /// Vertices default to `v1..vn` when no names are given.
    pub fn from_matrix(a: &Matrix, names: Option<&[String]>) -> Result<Self, GraphError> {
        if !a.is_square() {
            return Err(GraphError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let vertices: Vec<String> = match names {
            Some(ns) => {
                if ns.len() != n {
                    return Err(GraphError::NameCount {
                        expected: n,
                        found: ns.len(),
                    });
                }
                ns.to_vec()
            }
            None => (1..=n).map(|i| format!("v{i}")).collect(),
        };
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let count = a.get(i, j);
                if usize::try_from(count).is_err() {
                    return Err(GraphError::CountOverflow { row: i, col: j });
                }
                for k in 1..=count {
                    edges.push((
                        generated_edge_name(&vertices[i], &vertices[j], k),
                        vertices[i].clone(),
                        vertices[j].clone(),
                    ));
                }
            }
        }
        Graph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, index: usize) -> &str {
        &self.vertices[index]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of the edges leaving `v`, in declaration order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Indices of the edges entering `v`, in declaration order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// Resolves vertex names to an index set, rejecting unknown names.
    pub fn vertex_set(&self, names: &[&str]) -> Result<BTreeSet<usize>, GraphError> {
        names
            .iter()
            .map(|name| {
                self.vertex_index(name).ok_or(GraphError::UnknownVertex {
                    name: name.to_string(),
                })
            })
            .collect()
    }

    /// The vertex matrix: entry `(v,w)` counts edges from `v` to `w`.
    pub fn vertex_matrix(&self) -> Result<Matrix, GraphError> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut entries = vec![0u64; n * n];
        for e in &self.edges {
            entries[e.source * n + e.range] += 1;
        }
        match Matrix::new(n, n, entries) {
            Ok(m) => Ok(m),
            Err(MatrixError::Overflow) => Err(GraphError::CountOverflow { row: 0, col: 0 }),
            Err(_) => unreachable!("shape is valid by construction"),
        }
    }

    /// Structural analysis: sinks, sources, first-return path counts and
    /// the derived flags.
    pub fn analyze(&self) -> GraphAnalysis {
        let n = self.vertices.len();
        let sinks: Vec<usize> = (0..n).filter(|&v| self.out[v].is_empty()).collect();
        let sources: Vec<usize> = (0..n).filter(|&v| self.inc[v].is_empty()).collect();
        let return_paths: Vec<u8> = (0..n).map(|v| self.count_first_return(v)).collect();
        let condition_k = return_paths.iter().all(|&c| c != 1);
        GraphAnalysis {
            sinks,
            sources,
            return_paths,
            condition_k,
            row_finite: true,
        }
    }

    /// Counts first-return paths based at `v`, capped at 2.
    ///
    /// A first-return path leaves `v`, never visits `v` in between, and ends
    /// on its first arrival back at `v`. The count is 0, 1, or 2, where 2
    /// stands for "two or more".
    ///
    /// Simple first-return paths are enumerated by depth-first search with an
    /// early stop at two. When exactly one simple path exists, the total is
    /// still infinite as soon as a cycle avoiding `v` can be spliced into it:
    /// the shortest second return walk is always the unique simple path with
    /// one simple cycle inserted at one of its vertices, so it suffices to
    /// test each intermediate vertex of the witness path for a cycle in the
    /// graph with `v` removed.
    fn count_first_return(&self, v: usize) -> u8 {
        let mut count = 0u8;
        let mut witness: Vec<usize> = Vec::new();
        let mut path: Vec<usize> = Vec::new();
        let mut on_path = vec![false; self.vertices.len()];
        self.dfs_simple_returns(v, v, &mut path, &mut on_path, &mut count, &mut witness);
        if count >= 2 {
            return 2;
        }
        if count == 0 {
            return 0;
        }
        for &u in &witness {
            if self.on_cycle_avoiding(u, v) {
                return 2;
            }
        }
        1
    }

    fn dfs_simple_returns(
        &self,
        u: usize,
        base: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        count: &mut u8,
        witness: &mut Vec<usize>,
    ) {
        for &e in &self.out[u] {
            if *count >= 2 {
                return;
            }
            let w = self.edges[e].range;
            if w == base {
                *count += 1;
                if *count == 1 {
                    witness.clone_from(path);
                }
            } else if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                self.dfs_simple_returns(w, base, path, on_path, count, witness);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    /// Whether `u` lies on a cycle that never visits `avoid`.
    fn on_cycle_avoiding(&self, u: usize, avoid: usize) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack: Vec<usize> = Vec::new();
        for &e in &self.out[u] {
            let w = self.edges[e].range;
            if w == u {
                return true;
            }
            if w != avoid && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
        while let Some(x) = stack.pop() {
            for &e in &self.out[x] {
                let w = self.edges[e].range;
                if w == u {
                    return true;
                }
                if w != avoid && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

/// The result of [`Graph::analyze`]. Vertex indices are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAnalysis {
    /// Vertices with no outgoing edge.
    pub sinks: Vec<usize>,
    /// Vertices with no incoming edge.
    pub sources: Vec<usize>,
    /// Per vertex: first-return path count capped at 2 (2 means two or more).
    pub return_paths: Vec<u8>,
    /// True iff every vertex has zero or at least two first-return paths.
    pub condition_k: bool,
    /// Always true for finite graphs; kept explicit for profile reports.
    pub row_finite: bool,
}
