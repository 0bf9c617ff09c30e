//! Shared fixtures for the unit tests: small witnessed matrix pairs and the
//! graphs they present.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::matrix::Matrix;

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// A 2x2 / 3x3 pair with single loops, `A = RS` and `B = SR`.
pub fn single_loop_pair() -> (Matrix, Matrix, Matrix, Matrix) {
    let a = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
    let b = Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]).unwrap();
    let r = Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
    let s = Matrix::from_rows(vec![vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap();
    (a, b, r, s)
}

/// The graphs of the single-loop pair, with handwritten edge names.
pub fn single_loop_graphs() -> (Graph, Graph) {
    let e = Graph::new(
        names(&["v", "w"]),
        vec![
            ("a".to_string(), "v".to_string(), "v".to_string()),
            ("b".to_string(), "v".to_string(), "w".to_string()),
            ("c".to_string(), "w".to_string(), "w".to_string()),
        ],
    )
    .unwrap();
    let f = Graph::new(
        names(&["x", "y", "z"]),
        vec![
            ("d".to_string(), "x".to_string(), "x".to_string()),
            ("e".to_string(), "x".to_string(), "y".to_string()),
            ("f".to_string(), "y".to_string(), "z".to_string()),
            ("g".to_string(), "z".to_string(), "z".to_string()),
        ],
    )
    .unwrap();
    (e, f)
}

/// A 3x3 / 2x2 pair whose graphs have sinks, `A = RS` and `B = SR`.
pub fn sink_pair() -> (Matrix, Matrix, Matrix, Matrix) {
    let a = Matrix::from_rows(vec![vec![0, 0, 0], vec![1, 0, 1], vec![0, 0, 0]]).unwrap();
    let b = Matrix::from_rows(vec![vec![0, 1], vec![0, 0]]).unwrap();
    let r = Matrix::from_rows(vec![vec![0, 0], vec![0, 1], vec![0, 0]]).unwrap();
    let s = Matrix::from_rows(vec![vec![0, 1, 0], vec![1, 0, 1]]).unwrap();
    (a, b, r, s)
}

/// The graphs of the sink pair, with handwritten edge names.
pub fn sink_graphs() -> (Graph, Graph) {
    let e1 = Graph::new(
        names(&["v", "w", "x"]),
        vec![
            ("e".to_string(), "w".to_string(), "v".to_string()),
            ("f".to_string(), "w".to_string(), "x".to_string()),
        ],
    )
    .unwrap();
    let e2 = Graph::new(
        names(&["y", "z"]),
        vec![("g".to_string(), "y".to_string(), "z".to_string())],
    )
    .unwrap();
    (e1, e2)
}

/// A 2x2 / 3x3 pair with double loops, `A = RS` and `B = SR`.
pub fn double_loop_pair() -> (Matrix, Matrix, Matrix, Matrix) {
    let a = Matrix::from_rows(vec![vec![2, 1], vec![0, 2]]).unwrap();
    let b = Matrix::from_rows(vec![vec![2, 1, 0], vec![0, 0, 2], vec![0, 0, 2]]).unwrap();
    let r = Matrix::from_rows(vec![vec![2, 1, 0], vec![0, 0, 2]]).unwrap();
    let s = Matrix::from_rows(vec![vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap();
    (a, b, r, s)
}

/// The graphs of the double-loop pair, with generated edge names.
pub fn double_loop_graphs() -> (Graph, Graph) {
    let (a, b, _, _) = double_loop_pair();
    let e = Graph::from_matrix(&a, Some(&names(&["v", "w"]))).unwrap();
    let f = Graph::from_matrix(&b, Some(&names(&["x", "y", "z"]))).unwrap();
    (e, f)
}
