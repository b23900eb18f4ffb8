//! Fixtures shared by the unit tests (the integration suites use the
//! `sheafpath-testkit` crate instead; these mirror its ladder fixture).

use alloc::vec::Vec;

use crate::graph::{EdgeSpec, Graph, VertexId};
use crate::rational::{int, Rational};
use crate::sheaf::{Assignment, Cell, EdgePair, StalkValue};

/// ```text
///   v_S --e_2-- v_3 --e_5-- v_5
///    |           |           |
///   e_1         e_4         e_7
///    |           |           |
///   v_T --e_3-- v_4 --e_6-- v_6
/// ```
/// All weights 1.
pub(crate) fn ladder() -> Graph {
    ladder_with_direct_weight(int(1))
}

pub(crate) fn ladder_with_direct_weight(direct: Rational) -> Graph {
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

pub(crate) fn single_edge() -> Graph {
    Graph::build(
        ["v_S", "v_T"].map(VertexId::from),
        [EdgeSpec::new("e", "v_S", "v_T", int(5))],
        VertexId::from("v_S"),
        VertexId::from("v_T"),
    )
    .expect("single-edge fixture is valid")
}

pub(crate) fn split_triangles() -> Graph {
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

pub(crate) fn pair(a: &str, b: &str) -> StalkValue {
    StalkValue::EdgePair(EdgePair::new(a.into(), b.into()).expect("distinct"))
}

/// The ladder section activating the upper path `e_2 e_4 e_3`.
pub(crate) fn upper_path_section() -> Assignment {
    let mut s = Assignment::new();
    s.insert(Cell::vertex("v_S"), StalkValue::ChosenEdge("e_2".into()));
    s.insert(Cell::vertex("v_T"), StalkValue::ChosenEdge("e_3".into()));
    s.insert(Cell::vertex("v_3"), pair("e_2", "e_4"));
    s.insert(Cell::vertex("v_4"), pair("e_3", "e_4"));
    s.insert(Cell::vertex("v_5"), StalkValue::Bottom);
    s.insert(Cell::vertex("v_6"), StalkValue::Bottom);
    for (e, value) in ladder_edges(&["e_2", "e_3", "e_4"]) {
        s.insert(Cell::edge(e), value);
    }
    s
}

/// The ladder section whose path is `e_1` with the right square active as
/// a disjoint cycle.
pub(crate) fn direct_with_cycle_section() -> Assignment {
    let mut s = Assignment::new();
    s.insert(Cell::vertex("v_S"), StalkValue::ChosenEdge("e_1".into()));
    s.insert(Cell::vertex("v_T"), StalkValue::ChosenEdge("e_1".into()));
    s.insert(Cell::vertex("v_3"), pair("e_4", "e_5"));
    s.insert(Cell::vertex("v_4"), pair("e_4", "e_6"));
    s.insert(Cell::vertex("v_5"), pair("e_5", "e_7"));
    s.insert(Cell::vertex("v_6"), pair("e_6", "e_7"));
    for (e, value) in ladder_edges(&["e_1", "e_4", "e_5", "e_6", "e_7"]) {
        s.insert(Cell::edge(e), value);
    }
    s
}

fn ladder_edges(active: &[&str]) -> Vec<(&'static str, StalkValue)> {
    ["e_1", "e_2", "e_3", "e_4", "e_5", "e_6", "e_7"]
        .iter()
        .map(|e| {
            let value = if active.contains(e) { StalkValue::Top } else { StalkValue::Bottom };
            (*e, value)
        })
        .collect()
}
