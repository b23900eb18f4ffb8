//! Hand-built graphs and sections the tests refer to over and over.
//!
//! The workhorse is the two-rung ladder: six vertices in two rows, a direct
//! edge from source to sink on the left, and a square of four edges on the
//! right whose cycle avoids both. It is the smallest graph that exhibits
//! every interesting behaviour at once: multiple source-to-sink paths and a
//! global section whose active subgraph carries a cycle disjoint from its
//! path.

use sheafpath_core::rational::{int, Rational};
use sheafpath_core::sheaf::{Assignment, Cell, EdgePair, StalkValue};
use sheafpath_core::{EdgeSpec, Graph, VertexId};

/// ```text
///   v_S --e_2-- v_3 --e_5-- v_5
///    |           |           |
///   e_1         e_4         e_7
///    |           |           |
///   v_T --e_3-- v_4 --e_6-- v_6
/// ```
/// All weights 1.
pub fn ladder() -> Graph {
    ladder_with_direct_weight(int(1))
}

/// The ladder with the direct source-sink edge `e_1` reweighted; with a
/// heavy `e_1` the shortest path becomes `e_2 e_4 e_3`.
pub fn ladder_with_direct_weight(direct: Rational) -> Graph {
    Graph::build(
        ["v_S", "v_T", "v_3", "v_4", "v_5", "v_6"].map(VertexId::from),
        [
            EdgeSpec::new("e_1", "v_S", "v_T", direct),
            EdgeSpec::new("e_2", "v_S", "v_3", int(1)),
            EdgeSpec::new("e_3", "v_T", "v_4", int(1)),
            EdgeSpec::new("e_4", "v_3", "v_4", int(1)),
            EdgeSpec::new("e_5", "v_3", "v_5", int(1)),
            EdgeSpec::new("e_6", "v_4", "v_6", int(1)),
            EdgeSpec::new("e_7", "v_5", "v_6", int(1)),
        ],
        VertexId::from("v_S"),
        VertexId::from("v_T"),
    )
    .expect("ladder fixture is valid")
}

/// The single-edge graph: source and sink joined by one edge of weight 5.
pub fn single_edge() -> Graph {
    Graph::build(
        ["v_S", "v_T"].map(VertexId::from),
        [EdgeSpec::new("e", "v_S", "v_T", int(5))],
        VertexId::from("v_S"),
        VertexId::from("v_T"),
    )
    .expect("single-edge fixture is valid")
}

/// Two disjoint triangles, source in one and sink in the other; valid by
/// the degree rules but with no source-to-sink path.
pub fn split_triangles() -> Graph {
    Graph::build(
        ["v_S", "a", "b", "v_T", "c", "d"].map(VertexId::from),
        [
            EdgeSpec::new("s1", "v_S", "a", int(1)),
            EdgeSpec::new("s2", "a", "b", int(1)),
            EdgeSpec::new("s3", "b", "v_S", int(1)),
            EdgeSpec::new("t1", "v_T", "c", int(1)),
            EdgeSpec::new("t2", "c", "d", int(1)),
            EdgeSpec::new("t3", "d", "v_T", int(1)),
        ],
        VertexId::from("v_S"),
        VertexId::from("v_T"),
    )
    .expect("split fixture is valid")
}

/// The ladder section activating the upper path `e_2 e_4 e_3`: both
/// endpoints choose their path edge, `v_3` and `v_4` pair their path
/// edges, and the right square stays inactive.
pub fn upper_path_section() -> Assignment {
    let pair = |a: &str, b: &str| {
        StalkValue::EdgePair(EdgePair::new(a.into(), b.into()).expect("distinct"))
    };
    let mut s = Assignment::new();
    s.insert(Cell::vertex("v_S"), StalkValue::ChosenEdge("e_2".into()));
    s.insert(Cell::vertex("v_T"), StalkValue::ChosenEdge("e_3".into()));
    s.insert(Cell::vertex("v_3"), pair("e_2", "e_4"));
    s.insert(Cell::vertex("v_4"), pair("e_3", "e_4"));
    s.insert(Cell::vertex("v_5"), StalkValue::Bottom);
    s.insert(Cell::vertex("v_6"), StalkValue::Bottom);
    for (e, value) in [
        ("e_1", StalkValue::Bottom),
        ("e_2", StalkValue::Top),
        ("e_3", StalkValue::Top),
        ("e_4", StalkValue::Top),
        ("e_5", StalkValue::Bottom),
        ("e_6", StalkValue::Bottom),
        ("e_7", StalkValue::Bottom),
    ] {
        s.insert(Cell::edge(e), value);
    }
    s
}

/// The ladder section whose path is the direct edge `e_1` while the right
/// square `e_4 e_6 e_7 e_5` is active as a cycle disjoint from it.
pub fn direct_with_cycle_section() -> Assignment {
    let pair = |a: &str, b: &str| {
        StalkValue::EdgePair(EdgePair::new(a.into(), b.into()).expect("distinct"))
    };
    let mut s = Assignment::new();
    s.insert(Cell::vertex("v_S"), StalkValue::ChosenEdge("e_1".into()));
    s.insert(Cell::vertex("v_T"), StalkValue::ChosenEdge("e_1".into()));
    s.insert(Cell::vertex("v_3"), pair("e_4", "e_5"));
    s.insert(Cell::vertex("v_4"), pair("e_4", "e_6"));
    s.insert(Cell::vertex("v_5"), pair("e_5", "e_7"));
    s.insert(Cell::vertex("v_6"), pair("e_6", "e_7"));
    for (e, value) in [
        ("e_1", StalkValue::Top),
        ("e_2", StalkValue::Bottom),
        ("e_3", StalkValue::Bottom),
        ("e_4", StalkValue::Top),
        ("e_5", StalkValue::Top),
        ("e_6", StalkValue::Top),
        ("e_7", StalkValue::Top),
    ] {
        s.insert(Cell::edge(e), value);
    }
    s
}
