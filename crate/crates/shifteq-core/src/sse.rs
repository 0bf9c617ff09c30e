//! Elementary strong shift equivalences: verification, chains, bounded
//! witness search, and the bipartite inflation graphs of a witness pair.
//!
//! An elementary equivalence between square matrices `A` and `B` is a pair
//! `(R, S)` with `A = RS` and `B = SR`. A chain strings such witnesses
//! through a sequence of square matrices. The search for a witness is
//! exhaustive up to an entry bound and deterministic: it returns the
//! lexicographically first pair (row-major on `R`, then `S`) and
//! distinguishes "none exists up to the bound" from "gave up at the
//! resource cap".

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError};
use crate::matrix::{Matrix, MatrixError};

/// Errors from equivalence verification, search, and graph construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SseError {
    Matrix(MatrixError),
    Graph(GraphError),
    /// The named operand must be square.
    SquareRequired {
        role: &'static str,
        rows: usize,
        cols: usize,
    },
    /// Witness shapes must be `R: m x n`, `S: n x m` for `A: m x m`,
    /// `B: n x n`.
    WitnessShape {
        a: usize,
        b: usize,
        r: (usize, usize),
        s: (usize, usize),
    },
    /// A chain needs at least one matrix.
    EmptyChain,
    /// A chain of `n` matrices needs exactly `n - 1` witnesses.
    ChainArity { matrices: usize, witnesses: usize },
    /// A witness does not fit the matrices it is supposed to link.
    LinkShape { index: usize, cause: Box<SseError> },
    /// A vertex name sequence has the wrong length.
    NameCount {
        side: &'static str,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for SseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SseError::Matrix(e) => write!(f, "{e}"),
            SseError::Graph(e) => write!(f, "{e}"),
            SseError::SquareRequired { role, rows, cols } => {
                write!(f, "{role} must be square, got {rows}x{cols}")
            }
            SseError::WitnessShape { a, b, r, s } => write!(
                f,
                "witness shapes must be {a}x{b} and {b}x{a}, got {}x{} and {}x{}",
                r.0, r.1, s.0, s.1
            ),
            SseError::EmptyChain => write!(f, "chain needs at least one matrix"),
            SseError::ChainArity {
                matrices,
                witnesses,
            } => write!(
                f,
                "chain of {matrices} matrices needs {} witnesses, found {witnesses}",
                matrices - 1
            ),
            SseError::LinkShape { index, cause } => {
                write!(f, "witness {index} does not fit its link: {cause}")
            }
            SseError::NameCount {
                side,
                expected,
                found,
            } => write!(f, "expected {expected} {side} names, found {found}"),
        }
    }
}

impl From<MatrixError> for SseError {
    fn from(e: MatrixError) -> Self {
        SseError::Matrix(e)
    }
}

impl From<GraphError> for SseError {
    fn from(e: GraphError) -> Self {
        SseError::Graph(e)
    }
}

/// Which product a mismatch was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductSide {
    Rs,
    Sr,
}

/// The first failing entry of a product comparison, zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub side: ProductSide,
    pub row: usize,
    pub col: usize,
    /// Target entry (of `A` for `RS`, of `B` for `SR`).
    pub expected: u64,
    /// Product entry actually computed.
    pub found: u64,
}

/// Outcome of verifying one elementary pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub rs_ok: bool,
    pub sr_ok: bool,
    /// First failing entry, scanning `RS` row-major and then `SR`.
    pub mismatch: Option<Mismatch>,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.rs_ok && self.sr_ok
    }
}

/// A shape-checked witness candidate `(A, B, R, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryPair {
    a: Matrix,
    b: Matrix,
    r: Matrix,
    s: Matrix,
}

impl ElementaryPair {
    /// Checks shape compatibility only; `verify` checks the products.
    pub fn new(a: Matrix, b: Matrix, r: Matrix, s: Matrix) -> Result<Self, SseError> {
        if !a.is_square() {
            return Err(SseError::SquareRequired {
                role: "A",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !b.is_square() {
            return Err(SseError::SquareRequired {
                role: "B",
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        let m = a.rows();
        let n = b.rows();
        if r.rows() != m || r.cols() != n || s.rows() != n || s.cols() != m {
            return Err(SseError::WitnessShape {
                a: m,
                b: n,
                r: (r.rows(), r.cols()),
                s: (s.rows(), s.cols()),
            });
        }
        Ok(ElementaryPair { a, b, r, s })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn r(&self) -> &Matrix {
        &self.r
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    /// Checks `RS = A` and `SR = B` exactly.
    pub fn verify(&self) -> Result<PairCheck, SseError> {
        let rs = self.r.multiply(&self.s)?;
        let sr = self.s.multiply(&self.r)?;
        let rs_mismatch = first_mismatch(&rs, &self.a, ProductSide::Rs);
        let sr_mismatch = first_mismatch(&sr, &self.b, ProductSide::Sr);
        Ok(PairCheck {
            rs_ok: rs_mismatch.is_none(),
            sr_ok: sr_mismatch.is_none(),
            mismatch: rs_mismatch.or(sr_mismatch),
        })
    }
}

fn first_mismatch(product: &Matrix, target: &Matrix, side: ProductSide) -> Option<Mismatch> {
    for row in 0..target.rows() {
        for col in 0..target.cols() {
            let expected = target.get(row, col);
            let found = product.get(row, col);
            if expected != found {
                return Some(Mismatch {
                    side,
                    row,
                    col,
                    expected,
                    found,
                });
            }
        }
    }
    None
}

/// Shape-checks and verifies `(A, B, R, S)` in one call.
pub fn verify_elementary(
    a: &Matrix,
    b: &Matrix,
    r: &Matrix,
    s: &Matrix,
) -> Result<PairCheck, SseError> {
    ElementaryPair::new(a.clone(), b.clone(), r.clone(), s.clone())?.verify()
}

/// A chain `A_1 .. A_n` with a witness pair for each consecutive link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseChain {
    matrices: Vec<Matrix>,
    witnesses: Vec<ElementaryPair>,
}

impl SseChain {
    /// Builds a chain from matrices and `(R_i, S_i)` witnesses, checking
    /// arity and all link shapes.
    pub fn new(matrices: Vec<Matrix>, witnesses: Vec<(Matrix, Matrix)>) -> Result<Self, SseError> {
        if matrices.is_empty() {
            return Err(SseError::EmptyChain);
        }
        if witnesses.len() != matrices.len() - 1 {
            return Err(SseError::ChainArity {
                matrices: matrices.len(),
                witnesses: witnesses.len(),
            });
        }
        let mut built = Vec::with_capacity(witnesses.len());
        for (i, (r, s)) in witnesses.into_iter().enumerate() {
            let pair = ElementaryPair::new(matrices[i].clone(), matrices[i + 1].clone(), r, s)
                .map_err(|cause| SseError::LinkShape {
                    index: i,
                    cause: Box::new(cause),
                })?;
            built.push(pair);
        }
        Ok(SseChain {
            matrices,
            witnesses: built,
        })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn witnesses(&self) -> &[ElementaryPair] {
        &self.witnesses
    }

    /// Verifies every link; a length-1 chain is vacuously true.
    pub fn verify(&self) -> Result<ChainCheck, SseError> {
        let mut links = Vec::with_capacity(self.witnesses.len());
        for pair in &self.witnesses {
            links.push(pair.verify()?);
        }
        Ok(ChainCheck { links })
    }
}

/// Per-link results of verifying a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub links: Vec<PairCheck>,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.links.iter().all(PairCheck::holds)
    }

    /// Index of the first failing witness, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.links.iter().position(|c| !c.holds())
    }
}

/// Entry bound and resource cap for [`find_elementary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Inclusive upper bound for every entry of `R` and `S`.
    pub bound: u64,
    /// Maximum number of search nodes (one node per entry-value trial).
    pub max_nodes: u64,
}

impl SearchConfig {
    pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

    pub fn with_bound(bound: u64) -> Self {
        SearchConfig {
            bound,
            max_nodes: Self::DEFAULT_MAX_NODES,
        }
    }
}

/// Result of a bounded witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The lexicographically first valid pair within the bound.
    Found(ElementaryPair),
    /// The whole space was searched; no pair with entries `<= bound` exists.
    Exhausted,
    /// The node cap was hit before the space was exhausted.
    CapExceeded { nodes: u64 },
}

/// Exhaustive backtracking search for an elementary equivalence witness
/// with all entries of `R` and `S` bounded by `cfg.bound`.
///
/// `R` is enumerated row-major in ascending entry order; for each complete
/// `R`, `S` is enumerated the same way under exact constraint propagation
/// (partial `RS` column sums may never exceed `A`, remaining capacity must
/// still be able to reach `A`, and each completed row of `S` must already
/// reproduce its row of `B`). All prunes are sound, so `Exhausted` proves
/// that no witness with entries up to the bound exists.
pub fn find_elementary(
    a: &Matrix,
    b: &Matrix,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SseError> {
    if !a.is_square() {
        return Err(SseError::SquareRequired {
            role: "A",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !b.is_square() {
        return Err(SseError::SquareRequired {
            role: "B",
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let mut search = Search {
        a,
        b,
        m: a.rows(),
        n: b.rows(),
        bound: cfg.bound,
        max_nodes: cfg.max_nodes,
        nodes: 0,
        r: vec![0; a.rows() * b.rows()],
        s: vec![0; b.rows() * a.rows()],
        part: vec![0; a.rows() * a.rows()],
        rcap: vec![0; a.rows() * (b.rows() + 1)],
        result: None,
    };
    match search.assign_r(0) {
        Flow::Found => {
            let pair = search.result.expect("search flagged a result");
            Ok(SearchOutcome::Found(pair))
        }
        Flow::Capped => Ok(SearchOutcome::CapExceeded {
            nodes: search.nodes,
        }),
        Flow::NotFound => Ok(SearchOutcome::Exhausted),
    }
}

enum Flow {
    Found,
    Capped,
    NotFound,
}

struct Search<'a> {
    a: &'a Matrix,
    b: &'a Matrix,
    m: usize,
    n: usize,
    bound: u64,
    max_nodes: u64,
    nodes: u64,
    r: Vec<u64>,
    s: Vec<u64>,
    /// Partial `RS` built from the filled rows of `S`.
    part: Vec<u64>,
    /// `rcap[x * (n+1) + k]`: upper bound for contributions of `S` rows
    /// `k..` to any entry of row `x` of `RS`.
    rcap: Vec<u128>,
    result: Option<ElementaryPair>,
}

impl Search<'_> {
    fn assign_r(&mut self, idx: usize) -> Flow {
        if idx == self.m * self.n {
            if !self.col_capacity_ok() {
                return Flow::NotFound;
            }
            self.compute_rcap();
            return self.assign_s(0);
        }
        let i = idx / self.n;
        let last_in_row = idx % self.n == self.n - 1;
        for val in 0..=self.bound {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Flow::Capped;
            }
            self.r[idx] = val;
            if last_in_row && !self.row_capacity_ok(i) {
                continue;
            }
            match self.assign_r(idx + 1) {
                Flow::NotFound => {}
                flow => return flow,
            }
        }
        self.r[idx] = 0;
        Flow::NotFound
    }

    /// Row `i` of `R` is complete; `(RS)(i,j) <= bound * rowsum` must still
    /// be able to reach every `A(i,j)`.
    fn row_capacity_ok(&self, i: usize) -> bool {
        let rowsum: u128 = (0..self.n).map(|k| self.r[i * self.n + k] as u128).sum();
        let cap = rowsum.saturating_mul(self.bound as u128);
        (0..self.m).all(|j| self.a.get(i, j) as u128 <= cap)
    }

    /// `R` is complete; `(SR)(k,l) <= bound * colsum_l(R)` must still be
    /// able to reach every `B(k,l)`.
    fn col_capacity_ok(&self) -> bool {
        for l in 0..self.n {
            let colsum: u128 = (0..self.m).map(|i| self.r[i * self.n + l] as u128).sum();
            let cap = colsum.saturating_mul(self.bound as u128);
            if (0..self.n).any(|k| self.b.get(k, l) as u128 > cap) {
                return false;
            }
        }
        true
    }

    fn compute_rcap(&mut self) {
        let n = self.n;
        for x in 0..self.m {
            self.rcap[x * (n + 1) + n] = 0;
            for k in (0..n).rev() {
                let term = (self.r[x * n + k] as u128).saturating_mul(self.bound as u128);
                self.rcap[x * (n + 1) + k] = self.rcap[x * (n + 1) + k + 1].saturating_add(term);
            }
        }
    }

    fn assign_s(&mut self, idx: usize) -> Flow {
        if idx == self.n * self.m {
            let r = Matrix::new(self.m, self.n, self.r.clone()).expect("valid shape");
            let s = Matrix::new(self.n, self.m, self.s.clone()).expect("valid shape");
            let pair = ElementaryPair::new(self.a.clone(), self.b.clone(), r, s)
                .expect("shapes fit by construction");
            self.result = Some(pair);
            return Flow::Found;
        }
        let k = idx / self.m;
        let y = idx % self.m;
        let last_in_row = y == self.m - 1;
        for val in 0..=self.bound {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Flow::Capped;
            }
            if !self.apply_s(k, y, val) {
                continue;
            }
            self.s[idx] = val;
            if !last_in_row || self.sr_row_ok(k) {
                match self.assign_s(idx + 1) {
                    Flow::NotFound => {}
                    flow => return flow,
                }
            }
            self.unapply_s(k, y, val);
            self.s[idx] = 0;
        }
        Flow::NotFound
    }

    /// Adds `S(k,y) = val`'s contribution to column `y` of the partial `RS`,
    /// rejecting the value (and leaving the state untouched) when any entry
    /// would exceed `A` or could no longer reach it.
    fn apply_s(&mut self, k: usize, y: usize, val: u64) -> bool {
        for x in 0..self.m {
            let delta = (self.r[x * self.n + k] as u128) * (val as u128);
            let cand = self.part[x * self.m + y] as u128 + delta;
            let target = self.a.get(x, y) as u128;
            if cand > target {
                return false;
            }
            if cand.saturating_add(self.rcap[x * (self.n + 1) + k + 1]) < target {
                return false;
            }
        }
        for x in 0..self.m {
            let delta = self.r[x * self.n + k] * val;
            self.part[x * self.m + y] += delta;
        }
        true
    }

    fn unapply_s(&mut self, k: usize, y: usize, val: u64) {
        for x in 0..self.m {
            let delta = self.r[x * self.n + k] * val;
            self.part[x * self.m + y] -= delta;
        }
    }

    /// Row `k` of `S` is complete; row `k` of `SR` must equal row `k` of `B`.
    fn sr_row_ok(&self, k: usize) -> bool {
        for l in 0..self.n {
            let target = self.b.get(k, l) as u128;
            let mut acc: u128 = 0;
            for i in 0..self.m {
                acc += (self.s[k * self.m + i] as u128) * (self.r[i * self.n + l] as u128);
                if acc > target {
                    return false;
                }
            }
            if acc != target {
                return false;
            }
        }
        true
    }
}

/// True iff the first `kmax` trace powers of `A` and `B` agree; `false`
/// certifies that `A` and `B` are not strong shift equivalent. Defaults to
/// `kmax = max(size A, size B)`, a heuristic cutoff only.
pub fn trace_obstruction(a: &Matrix, b: &Matrix, kmax: Option<usize>) -> Result<bool, SseError> {
    if !a.is_square() {
        return Err(SseError::SquareRequired {
            role: "A",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !b.is_square() {
        return Err(SseError::SquareRequired {
            role: "B",
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let k = kmax.unwrap_or_else(|| a.rows().max(b.rows()));
    Ok(a.trace_powers(k)? == b.trace_powers(k)?)
}

fn check_side_names(
    side: &'static str,
    names: &[String],
    expected: usize,
) -> Result<(), SseError> {
    if names.len() != expected {
        return Err(SseError::NameCount {
            side,
            expected,
            found: names.len(),
        });
    }
    Ok(())
}

fn expand_edges(
    m: &Matrix,
    prefix: &str,
    sources: &[String],
    ranges: &[String],
    edges: &mut Vec<(String, String, String)>,
) -> Result<(), SseError> {
    use alloc::format;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let count = m.get(i, j);
            if usize::try_from(count).is_err() {
                return Err(SseError::Graph(GraphError::CountOverflow { row: i, col: j }));
            }
            for k in 1..=count {
                edges.push((
                    format!("{prefix}:{}->{}#{k}", sources[i], ranges[j]),
                    sources[i].clone(),
                    ranges[j].clone(),
                ));
            }
        }
    }
    Ok(())
}

/// The bipartite inflation graph of a witness pair: row vertices, column
/// vertices, `R(v,w)` edges `v -> w` named `r:<v>-><w>#<k>` and `S(w,v)`
/// edges `w -> v` named `s:<w>-><v>#<k>`.
///
/// Its vertex matrix is `block_bipartite(R, S)`, so its square is the block
/// diagonal of `RS` and `SR`.
pub fn inflate_graph(
    r: &Matrix,
    s: &Matrix,
    row_names: &[String],
    col_names: &[String],
) -> Result<Graph, SseError> {
    if s.rows() != r.cols() || s.cols() != r.rows() {
        return Err(SseError::Matrix(MatrixError::DimensionMismatch {
            left: (r.rows(), r.cols()),
            right: (s.rows(), s.cols()),
        }));
    }
    check_side_names("row", row_names, r.rows())?;
    check_side_names("column", col_names, r.cols())?;
    let mut vertices = row_names.to_vec();
    vertices.extend_from_slice(col_names);
    let mut edges = Vec::new();
    expand_edges(r, "r", row_names, col_names, &mut edges)?;
    expand_edges(s, "s", col_names, row_names, &mut edges)?;
    Ok(Graph::new(vertices, edges)?)
}

/// The bipartite graph of a single rectangular matrix: `R(i,j)` edges from
/// row vertex `i` to column vertex `j`, named `r:<v>-><w>#<k>`.
pub fn rect_graph(
    r: &Matrix,
    row_names: &[String],
    col_names: &[String],
) -> Result<Graph, SseError> {
    check_side_names("row", row_names, r.rows())?;
    check_side_names("column", col_names, r.cols())?;
    let mut vertices = row_names.to_vec();
    vertices.extend_from_slice(col_names);
    let mut edges = Vec::new();
    expand_edges(r, "r", row_names, col_names, &mut edges)?;
    Ok(Graph::new(vertices, edges)?)
}
