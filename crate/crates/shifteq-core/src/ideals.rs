//! Saturated hereditary vertex sets and the Toeplitz outsplit.
//!
//! A vertex set is hereditary when it is closed under edge ranges, and
//! saturated when it absorbs every non-sink vertex all of whose edge ranges
//! already lie inside. The proper subsets with both properties, ordered
//! canonically, form the ideal lattice reported by
//! [`enumerate_saturated_hereditary`]; under Condition (K) they classify the
//! ideals of the associated algebra, which is why the lattice carries a
//! `simple` flag combining both facts.
//!
//! Vertex sets are index sets into the graph's vertex order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphError};

/// Errors from vertex-set operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    /// A vertex index does not exist in the graph.
    VertexOutOfRange { index: usize, vertices: usize },
    /// `saturate` requires a hereditary input; this vertex has an edge
    /// leaving the set.
    NotHereditary { vertex: usize },
    /// The exhaustive subset scan is limited to small graphs.
    TooLarge { vertices: usize, max: usize },
}

impl core::fmt::Display for IdealError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            IdealError::VertexOutOfRange { index, vertices } => {
                write!(f, "vertex index {index} out of range for {vertices} vertices")
            }
            IdealError::NotHereditary { vertex } => {
                write!(f, "set is not hereditary: vertex {vertex} has an edge leaving it")
            }
            IdealError::TooLarge { vertices, max } => {
                write!(f, "exhaustive scan supports at most {max} vertices, got {vertices}")
            }
        }
    }
}

fn check_range(g: &Graph, h: &BTreeSet<usize>) -> Result<(), IdealError> {
    if let Some(&index) = h.iter().next_back() {
        if index >= g.vertex_count() {
            return Err(IdealError::VertexOutOfRange {
                index,
                vertices: g.vertex_count(),
            });
        }
    }
    Ok(())
}

/// Smallest superset of `h` closed under edge ranges.
pub fn hereditary_closure(g: &Graph, h: &BTreeSet<usize>) -> Result<BTreeSet<usize>, IdealError> {
    check_range(g, h)?;
    let mut closed = h.clone();
    let mut work: Vec<usize> = h.iter().copied().collect();
    while let Some(v) = work.pop() {
        for &e in g.out_edges(v) {
            let w = g.edges()[e].range;
            if closed.insert(w) {
                work.push(w);
            }
        }
    }
    Ok(closed)
}

/// Whether `h` is closed under edge ranges.
pub fn is_hereditary(g: &Graph, h: &BTreeSet<usize>) -> Result<bool, IdealError> {
    check_range(g, h)?;
    Ok(first_escaping_vertex(g, h).is_none())
}

fn first_escaping_vertex(g: &Graph, h: &BTreeSet<usize>) -> Option<usize> {
    h.iter()
        .copied()
        .find(|&v| g.out_edges(v).iter().any(|&e| !h.contains(&g.edges()[e].range)))
}

/// Smallest saturated superset of a hereditary set `h`: repeatedly absorbs
/// every non-sink vertex whose edge ranges all lie inside. The result is
/// still hereditary.
pub fn saturate(g: &Graph, h: &BTreeSet<usize>) -> Result<BTreeSet<usize>, IdealError> {
    check_range(g, h)?;
    if let Some(vertex) = first_escaping_vertex(g, h) {
        return Err(IdealError::NotHereditary { vertex });
    }
    let mut closed = h.clone();
    loop {
        let mut grew = false;
        for v in 0..g.vertex_count() {
            if closed.contains(&v) || g.out_edges(v).is_empty() {
                continue;
            }
            if g.out_edges(v)
                .iter()
                .all(|&e| closed.contains(&g.edges()[e].range))
            {
                closed.insert(v);
                grew = true;
            }
        }
        if !grew {
            return Ok(closed);
        }
    }
}

/// Whether every non-sink vertex with all edge ranges in `h` is in `h`.
pub fn is_saturated(g: &Graph, h: &BTreeSet<usize>) -> Result<bool, IdealError> {
    check_range(g, h)?;
    for v in 0..g.vertex_count() {
        if h.contains(&v) || g.out_edges(v).is_empty() {
            continue;
        }
        if g.out_edges(v)
            .iter()
            .all(|&e| h.contains(&g.edges()[e].range))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The proper saturated hereditary subsets of a graph, canonically ordered,
/// with both counting conventions and the simplicity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    /// Sorted by size, then lexicographically on the sorted index sequence.
    pub subsets: Vec<BTreeSet<usize>>,
    /// Number of proper subsets counting the empty set.
    pub count_with_empty: usize,
    /// Number of proper subsets not counting the empty set.
    pub count_nonzero: usize,
    /// True iff the empty set is the only proper subset and the graph
    /// satisfies Condition (K).
    pub simple: bool,
}

fn build_lattice(g: &Graph, collected: BTreeSet<BTreeSet<usize>>) -> IdealLattice {
    let mut subsets: Vec<BTreeSet<usize>> = collected.into_iter().collect();
    subsets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().cmp(y.iter())));
    let count_with_empty = subsets.len();
    let count_nonzero = subsets.iter().filter(|s| !s.is_empty()).count();
    let simple = subsets.len() == 1
        && subsets[0].is_empty()
        && g.analyze().condition_k;
    IdealLattice {
        subsets,
        count_with_empty,
        count_nonzero,
        simple,
    }
}

/// Enumerates all proper saturated hereditary subsets.
///
/// Hereditary sets are exactly the unions of principal closures (the
/// closure of a single vertex), so they are generated by a worklist over
/// "add one more principal closure"; each one is then saturated and the
/// results deduplicated. Saturation preserves heredity and every saturated
/// hereditary set is a fixed point, so the image is the full answer. The
/// exhaustive subset scan [`enumerate_saturated_hereditary_brute`] is the
/// independent cross-check.
pub fn enumerate_saturated_hereditary(g: &Graph) -> IdealLattice {
    let n = g.vertex_count();
    let mut principal: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut seed = BTreeSet::new();
        seed.insert(v);
        principal.push(hereditary_closure(g, &seed).expect("index in range"));
    }
    principal.sort();
    principal.dedup();

    let mut hereditary: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    hereditary.insert(BTreeSet::new());
    let mut work: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new()];
    while let Some(current) = work.pop() {
        for p in &principal {
            if p.is_subset(&current) {
                continue;
            }
            let mut bigger = current.clone();
            bigger.extend(p.iter().copied());
            if hereditary.insert(bigger.clone()) {
                work.push(bigger);
            }
        }
    }

    let full: BTreeSet<usize> = (0..n).collect();
    let mut collected = BTreeSet::new();
    for h in hereditary {
        let saturated = saturate(g, &h).expect("closure output is hereditary");
        if saturated != full {
            collected.insert(saturated);
        }
    }
    build_lattice(g, collected)
}

/// Largest graph accepted by the exhaustive subset scan.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 20;

/// Filters all `2^|V|` subsets by the hereditary and saturated predicates.
///
/// This is the oracle the fast enumeration is checked against; it stays
/// available for graphs up to [`BRUTE_FORCE_MAX_VERTICES`] vertices.
pub fn enumerate_saturated_hereditary_brute(g: &Graph) -> Result<IdealLattice, IdealError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(IdealError::TooLarge {
            vertices: n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut collected = BTreeSet::new();
    for mask in 0..(1u64 << n) {
        if n > 0 && mask == (1u64 << n) - 1 {
            continue;
        }
        let subset: BTreeSet<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if is_hereditary(g, &subset)? && is_saturated(g, &subset)? {
            collected.insert(subset);
        }
    }
    if n == 0 {
        collected.remove(&BTreeSet::new());
    }
    Ok(build_lattice(g, collected))
}

/// Outsplits every vertex: each vertex `v` gains a sink twin `v'`, and each
/// edge `e: v -> w` gains a twin `e': v -> w'`. Original vertices and edges
/// come first, twins follow in the same order.
///
/// Deleting all primed vertices and edges recovers the input graph, and
/// Condition (K) is preserved (the twins are sinks, so first-return paths
/// at original vertices are untouched).
pub fn outsplit_toeplitz(g: &Graph) -> Result<Graph, GraphError> {
    let primed = |name: &str| format!("{name}'");
    let mut vertices: Vec<String> = g.vertices().to_vec();
    vertices.extend(g.vertices().iter().map(|v| primed(v)));
    let mut edges: Vec<(String, String, String)> = Vec::with_capacity(2 * g.edge_count());
    for e in g.edges() {
        edges.push((
            e.name.clone(),
            g.vertex_name(e.source).into(),
            g.vertex_name(e.range).into(),
        ));
    }
    for e in g.edges() {
        edges.push((
            primed(&e.name),
            g.vertex_name(e.source).into(),
            primed(g.vertex_name(e.range)),
        ));
    }
    Graph::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::testdata;

    fn set(indices: &[usize]) -> BTreeSet<usize> {
        indices.iter().copied().collect()
    }

    fn name_sets(g: &Graph, lattice: &IdealLattice) -> Vec<Vec<String>> {
        lattice
            .subsets
            .iter()
            .map(|s| s.iter().map(|&v| g.vertex_name(v).into()).collect())
            .collect()
    }

    fn names(list: &[&str]) -> Vec<String> {
        testdata::names(list)
    }

    #[test]
    fn closure_follows_edges() {
        let (e, _) = testdata::single_loop_graphs();
        assert_eq!(hereditary_closure(&e, &set(&[0])).unwrap(), set(&[0, 1]));
        assert_eq!(hereditary_closure(&e, &set(&[1])).unwrap(), set(&[1]));
        assert_eq!(hereditary_closure(&e, &set(&[])).unwrap(), set(&[]));
    }

    #[test]
    fn closure_in_outsplit_adds_the_twin() {
        let (e, _) = testdata::double_loop_graphs();
        let split = outsplit_toeplitz(&e).unwrap();
        let w = split.vertex_index("w").unwrap();
        let w_twin = split.vertex_index("w'").unwrap();
        assert_eq!(
            hereditary_closure(&split, &set(&[w])).unwrap(),
            set(&[w, w_twin])
        );
    }

    #[test]
    fn closure_rejects_out_of_range_indices() {
        let (e, _) = testdata::single_loop_graphs();
        assert_eq!(
            hereditary_closure(&e, &set(&[7])),
            Err(IdealError::VertexOutOfRange {
                index: 7,
                vertices: 2
            })
        );
    }

    #[test]
    fn saturate_absorbs_forced_vertices() {
        let (_, e2) = testdata::sink_graphs();
        let z = e2.vertex_index("z").unwrap();
        let y = e2.vertex_index("y").unwrap();
        assert_eq!(saturate(&e2, &set(&[z])).unwrap(), set(&[y, z]));
        assert_eq!(saturate(&e2, &set(&[])).unwrap(), set(&[]));
    }

    #[test]
    fn saturate_leaves_loop_vertices_alone() {
        let (e, _) = testdata::double_loop_graphs();
        let split = outsplit_toeplitz(&e).unwrap();
        let h = split.vertex_set(&["w", "w'"]).unwrap();
        assert_eq!(saturate(&split, &h).unwrap(), h);
    }

    #[test]
    fn saturate_rejects_non_hereditary_input() {
        let (e, _) = testdata::single_loop_graphs();
        assert_eq!(
            saturate(&e, &set(&[0])),
            Err(IdealError::NotHereditary { vertex: 0 })
        );
    }

    #[test]
    fn lattice_of_outsplit_double_loops_has_six_subsets() {
        let (e, _) = testdata::double_loop_graphs();
        let split = outsplit_toeplitz(&e).unwrap();
        let lattice = enumerate_saturated_hereditary(&split);
        let expected = vec![
            vec![],
            vec!["v'".to_string()],
            vec!["w'".to_string()],
            vec!["w".to_string(), "w'".to_string()],
            vec!["v'".to_string(), "w'".to_string()],
            vec!["w".to_string(), "v'".to_string(), "w'".to_string()],
        ];
        assert_eq!(name_sets(&split, &lattice), expected);
        assert_eq!(lattice.count_with_empty, 6);
        assert_eq!(lattice.count_nonzero, 5);
        assert!(!lattice.simple);
    }

    #[test]
    fn lattice_of_single_sink_vertex_is_trivial_and_simple() {
        let g = Graph::new(names(&["v"]), alloc::vec![]).unwrap();
        let lattice = enumerate_saturated_hereditary(&g);
        assert_eq!(lattice.subsets, alloc::vec![BTreeSet::new()]);
        assert_eq!(lattice.count_with_empty, 1);
        assert_eq!(lattice.count_nonzero, 0);
        assert!(lattice.simple);
    }

    #[test]
    fn lattice_of_sink_graphs_matches_both_counting_conventions() {
        let (e1, e2) = testdata::sink_graphs();
        let l1 = enumerate_saturated_hereditary(&e1);
        assert_eq!(
            name_sets(&e1, &l1),
            vec![
                Vec::<String>::new(),
                vec!["v".to_string()],
                vec!["x".to_string()]
            ]
        );
        assert_eq!(l1.count_with_empty, 3);
        assert_eq!(l1.count_nonzero, 2);
        assert!(!l1.simple);

        let l2 = enumerate_saturated_hereditary(&e2);
        assert_eq!(l2.subsets, alloc::vec![BTreeSet::new()]);
        assert!(l2.simple);
    }

    #[test]
    fn lattice_of_outsplit_triple_graph_contains_the_expected_twelve() {
        let (_, f) = testdata::double_loop_graphs();
        let split = outsplit_toeplitz(&f).unwrap();
        let fast = enumerate_saturated_hereditary(&split);
        let brute = enumerate_saturated_hereditary_brute(&split).unwrap();
        assert_eq!(fast, brute);
        assert_eq!(fast.count_with_empty, 12);
        let listed: BTreeSet<Vec<String>> = name_sets(&split, &fast).into_iter().collect();
        let required: Vec<Vec<&str>> = vec![
            vec![],
            vec!["z'"],
            vec!["y'", "z'"],
            vec!["y", "z", "z'"],
            vec!["y", "y'", "z", "z'"],
            vec!["x'"],
            vec!["x'", "z'"],
            vec!["x'", "y'", "z'"],
            vec!["y", "x'", "z", "z'"],
            vec!["y", "x'", "y'", "z", "z'"],
        ];
        for want in required {
            let want: Vec<String> = want.into_iter().map(String::from).collect();
            let mut sorted_by_index: Vec<String> = want.clone();
            sorted_by_index.sort_by_key(|n| split.vertex_index(n).unwrap());
            assert!(
                listed.contains(&sorted_by_index),
                "missing subset {want:?}"
            );
        }
    }

    #[test]
    fn fast_enumeration_matches_brute_force_on_fixtures() {
        let (e1, e2) = testdata::sink_graphs();
        let (e, f) = testdata::double_loop_graphs();
        for g in [&e1, &e2, &e, &f] {
            assert_eq!(
                enumerate_saturated_hereditary(g),
                enumerate_saturated_hereditary_brute(g).unwrap()
            );
        }
    }

    #[test]
    fn brute_force_rejects_large_graphs() {
        let vertices: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let g = Graph::new(vertices, alloc::vec![]).unwrap();
        assert_eq!(
            enumerate_saturated_hereditary_brute(&g),
            Err(IdealError::TooLarge {
                vertices: 21,
                max: BRUTE_FORCE_MAX_VERTICES
            })
        );
    }

    #[test]
    fn outsplit_doubles_vertices_and_edges() {
        let (e, f) = testdata::double_loop_graphs();
        let se = outsplit_toeplitz(&e).unwrap();
        assert_eq!(se.vertices(), names(&["v", "w", "v'", "w'"]).as_slice());
        assert_eq!(se.edge_count(), 10);
        let analysis = se.analyze();
        assert_eq!(analysis.sinks, vec![2, 3]);
        assert!(analysis.condition_k);

        let sf = outsplit_toeplitz(&f).unwrap();
        assert_eq!(sf.vertex_count(), 6);
        assert_eq!(sf.edge_count(), 14);
    }

    #[test]
    fn outsplit_twin_edges_point_at_twin_sinks() {
        let (e, _) = testdata::double_loop_graphs();
        let se = outsplit_toeplitz(&e).unwrap();
        let expected: Vec<(&str, &str, &str)> = vec![
            ("e:v->v#1", "v", "v"),
            ("e:v->v#2", "v", "v"),
            ("e:v->w#1", "v", "w"),
            ("e:w->w#1", "w", "w"),
            ("e:w->w#2", "w", "w"),
            ("e:v->v#1'", "v", "v'"),
            ("e:v->v#2'", "v", "v'"),
            ("e:v->w#1'", "v", "w'"),
            ("e:w->w#1'", "w", "w'"),
            ("e:w->w#2'", "w", "w'"),
        ];
        let got: Vec<(&str, &str, &str)> = se
            .edges()
            .iter()
            .map(|e| {
                (
                    e.name.as_str(),
                    se.vertex_name(e.source),
                    se.vertex_name(e.range),
                )
            })
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn outsplit_of_edgeless_vertex_adds_one_sink() {
        let g = Graph::new(names(&["v"]), alloc::vec![]).unwrap();
        let split = outsplit_toeplitz(&g).unwrap();
        assert_eq!(split.vertex_count(), 2);
        assert_eq!(split.edge_count(), 0);
    }

    #[test]
    fn outsplit_rejects_primed_name_collisions() {
        let g = Graph::new(names(&["v", "v'"]), alloc::vec![]).unwrap();
        assert!(matches!(
            outsplit_toeplitz(&g),
            Err(GraphError::DuplicateVertex { .. })
        ));
    }

    #[test]
    fn outsplit_keeps_failing_condition_k_failing() {
        let (e, _) = testdata::single_loop_graphs();
        assert!(!e.analyze().condition_k);
        let split = outsplit_toeplitz(&e).unwrap();
        assert!(!split.analyze().condition_k);
    }

    #[test]
    fn lattice_respects_multiplicity_via_matrix_fixture() {
        // The lattice only sees reachability, not multiplicities: the
        // double-loop graph E and its single-loop counterpart share one.
        let (e, _) = testdata::double_loop_graphs();
        let single = Graph::from_matrix(
            &Matrix::from_rows(alloc::vec![alloc::vec![1, 1], alloc::vec![0, 1]]).unwrap(),
            Some(&names(&["v", "w"])),
        )
        .unwrap();
        assert_eq!(
            enumerate_saturated_hereditary(&e).subsets,
            enumerate_saturated_hereditary(&single).subsets
        );
    }
}
