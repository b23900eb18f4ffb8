//! Brute-force reference implementations used as ground truth in tests:
//! exhaustive global-section enumeration, simple-path and cycle
//! enumeration, and a textbook Dijkstra written directly against the graph
//! with no sheaf machinery involved.
//!
//! These are desk-scale tools. Every entry point guards its input size
//! explicitly and reports [`OracleError::TooLarge`] rather than truncating.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::distance_sheaf::DistancePathSheaf;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::path_sheaf::PathSheaf;
use crate::rational::Rational;
use crate::sheaf::{Assignment, Cell, EdgePair, Sheaf, StalkValue};

/// Hard ceiling on the vertex-stalk product for section enumeration.
const MAX_STALK_PRODUCT: u128 = 10_000_000;
/// Hard ceiling on vertices for path/cycle enumeration.
const MAX_VERTICES: usize = 12;
/// Safety ceiling on enumerated walks.
const MAX_RESULTS: usize = 1_000_000;

/// The input exceeds the documented enumeration bounds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state space too large to enumerate ({detail})")]
    TooLarge { detail: &'static str },
}

const fn too_large(detail: &'static str) -> OracleError {
    OracleError::TooLarge { detail }
}

/// Every global section of the path sheaf, in ascending assignment order.
///
/// Walks all combinations of vertex-stalk values (the stalks over vertices
/// are finite), derives each edge value through the restriction maps, and
/// keeps the combinations where both endpoints agree. Guard: the product of
/// vertex-stalk sizes must not exceed 10^7.
pub fn enumerate_global_sections_p(
    sheaf: &PathSheaf<'_>,
) -> Result<Vec<Assignment>, OracleError> {
    let graph = sheaf.graph();
    let vertices: Vec<&VertexId> = graph.vertices().collect();
    let mut stalks: Vec<Vec<StalkValue>> = Vec::with_capacity(vertices.len());
    let mut product: u128 = 1;
    for v in &vertices {
        let values = vertex_stalk_p(graph, v);
        product = product.saturating_mul(values.len() as u128);
        if product > MAX_STALK_PRODUCT {
            return Err(too_large("vertex-stalk product exceeds 10^7"));
        }
        stalks.push(values);
    }

    // Depth-first over vertex choices, pruning on every edge whose two
    // endpoints are both chosen; at a full assignment all edge values are
    // already forced and consistent.
    let index: BTreeMap<&VertexId, usize> =
        vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut chosen: Vec<StalkValue> = Vec::with_capacity(vertices.len());
    let mut sections = Vec::new();
    let mut cursor: Vec<usize> = alloc::vec![0];
    while let Some(next) = cursor.last().copied() {
        let depth = cursor.len() - 1;
        if next >= stalks[depth].len() {
            cursor.pop();
            chosen.pop();
            if let Some(last) = cursor.last_mut() {
                *last += 1;
            }
            continue;
        }
        let candidate = stalks[depth][next].clone();
        let consistent = graph
            .incident_edges(vertices[depth])
            .expect("known vertex")
            .iter()
            .all(|e| {
                let edge = graph.edge(e).expect("known edge");
                let other = edge.other_endpoint(vertices[depth]).expect("no self-loops");
                let other_depth = index[other];
                if other_depth >= depth {
                    return true;
                }
                let ours = sheaf
                    .restrict(vertices[depth], e, &candidate)
                    .expect("stalk values restrict");
                let theirs = sheaf
                    .restrict(other, e, &chosen[other_depth])
                    .expect("stalk values restrict");
                ours == theirs
            });
        if !consistent {
            *cursor.last_mut().expect("nonempty") += 1;
            continue;
        }
        chosen.push(candidate);
        if chosen.len() == vertices.len() {
            let mut section = Assignment::new();
            for (v, value) in vertices.iter().zip(&chosen) {
                section.insert(Cell::Vertex((*v).clone()), value.clone());
            }
            for edge in graph.edges() {
                let (a, _) = edge.endpoints();
                let value = sheaf
                    .restrict(a, edge.id(), &chosen[index[a]])
                    .expect("stalk values restrict");
                section.insert(Cell::Edge(edge.id().clone()), value);
            }
            sections.push(section);
            chosen.pop();
            *cursor.last_mut().expect("nonempty") += 1;
        } else {
            cursor.push(0);
        }
    }
    sections.sort();
    Ok(sections)
}

/// All values in the path-sheaf stalk over `v`, in a fixed order.
fn vertex_stalk_p(graph: &Graph, v: &VertexId) -> Vec<StalkValue> {
    let incident: Vec<&EdgeId> =
        graph.incident_edges(v).expect("known vertex").iter().collect();
    if graph.is_source_or_sink(v) {
        incident.iter().map(|e| StalkValue::ChosenEdge((*e).clone())).collect()
    } else {
        let mut values = alloc::vec![StalkValue::Bottom];
        for (i, a) in incident.iter().enumerate() {
            for b in &incident[i + 1..] {
                values.push(StalkValue::EdgePair(
                    EdgePair::new((*a).clone(), (*b).clone()).expect("distinct edges"),
                ));
            }
        }
        values
    }
}

/// Every global section of the distance sheaf, one per simple
/// source-to-sink path, in ascending assignment order.
///
/// The distance stalks are infinite, so enumeration is indexed by paths
/// instead: active cycles are impossible (weights accumulate strictly), so
/// a global section's active subgraph is exactly a simple source-to-sink
/// path, and the path forces every distance label along it.
pub fn enumerate_global_sections_dp(
    sheaf: &DistancePathSheaf<'_>,
) -> Result<Vec<Assignment>, OracleError> {
    let mut sections: Vec<Assignment> = enumerate_simple_paths(sheaf.graph())?
        .iter()
        .map(|p| {
            sheaf
                .directed_path_to_section(p, true)
                .expect("enumerated paths run source to sink")
        })
        .collect();
    sections.sort();
    Ok(sections)
}

/// All simple source-to-sink paths, sorted. Guard: at most 12 vertices.
pub fn enumerate_simple_paths(graph: &Graph) -> Result<Vec<Path>, OracleError> {
    if graph.vertex_count() > MAX_VERTICES {
        return Err(too_large("more than 12 vertices"));
    }
    let mut paths = Vec::new();
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut vertices = alloc::vec![graph.source().clone()];
    dfs_paths(graph, &mut vertices, &mut edges, &mut paths)?;
    paths.sort();
    Ok(paths)
}

fn dfs_paths(
    graph: &Graph,
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    out: &mut Vec<Path>,
) -> Result<(), OracleError> {
    let here = vertices.last().expect("nonempty walk").clone();
    if here == *graph.sink() {
        if out.len() >= MAX_RESULTS {
            return Err(too_large("more than 10^6 simple paths"));
        }
        out.push(Path::new(edges.clone(), vertices.clone()));
        return Ok(());
    }
    for e in graph.incident_edges(&here).expect("known vertex") {
        let next = graph
            .edge(e)
            .expect("known edge")
            .other_endpoint(&here)
            .expect("no self-loops")
            .clone();
        if vertices.contains(&next) {
            continue;
        }
        vertices.push(next);
        edges.push(e.clone());
        dfs_paths(graph, vertices, edges, out)?;
        edges.pop();
        vertices.pop();
    }
    Ok(())
}

/// All cycles avoiding the source and sink, each reported once in its
/// canonical orientation (least vertex first, heading toward its smaller
/// neighbour), sorted. Guard: at most 12 vertices.
pub fn enumerate_cycles(graph: &Graph) -> Result<Vec<Path>, OracleError> {
    if graph.vertex_count() > MAX_VERTICES {
        return Err(too_large("more than 12 vertices"));
    }
    let mut cycles = Vec::new();
    for base in graph.vertices() {
        if graph.is_source_or_sink(base) {
            continue;
        }
        let mut vertices = alloc::vec![base.clone()];
        let mut edges: Vec<EdgeId> = Vec::new();
        dfs_cycles(graph, base, &mut vertices, &mut edges, &mut cycles)?;
    }
    cycles.sort();
    Ok(cycles)
}

/// Extends a walk of vertices all strictly greater than `base` (the walk's
/// designated least vertex); closing back to `base` over at least three
/// edges with the second vertex smaller than the last counts the cycle
/// exactly once.
fn dfs_cycles(
    graph: &Graph,
    base: &VertexId,
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    out: &mut Vec<Path>,
) -> Result<(), OracleError> {
    let here = vertices.last().expect("nonempty walk").clone();
    for e in graph.incident_edges(&here).expect("known vertex") {
        let next = graph
            .edge(e)
            .expect("known edge")
            .other_endpoint(&here)
            .expect("no self-loops")
            .clone();
        if next == *base {
            if edges.len() >= 2 && vertices[1] < here {
                if out.len() >= MAX_RESULTS {
                    return Err(too_large("more than 10^6 cycles"));
                }
                let mut cycle_vertices = vertices.clone();
                cycle_vertices.push(base.clone());
                let mut cycle_edges = edges.clone();
                cycle_edges.push(e.clone());
                out.push(Path::new(cycle_edges, cycle_vertices));
            }
            continue;
        }
        if next < *base || graph.is_source_or_sink(&next) || vertices.contains(&next) {
            continue;
        }
        vertices.push(next);
        edges.push(e.clone());
        dfs_cycles(graph, base, vertices, edges, out)?;
        edges.pop();
        vertices.pop();
    }
    Ok(())
}

/// Result of [`classical_dijkstra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassicalResult {
    Reached { distance: Rational, path: Path },
    Unreachable,
}

/// Textbook Dijkstra, array-based extract-min over the graph alone, with
/// the same tie-break rule as the sheaf solvers: least distance first, then
/// lexicographic vertex id, and strict improvement on relaxation.
pub fn classical_dijkstra(graph: &Graph) -> ClassicalResult {
    let source = graph.source();
    let sink = graph.sink();
    let mut dist: BTreeMap<VertexId, Rational> = BTreeMap::new();
    let mut prev: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
    let mut visited: BTreeSet<VertexId> = BTreeSet::new();
    dist.insert(source.clone(), Rational::zero());

    loop {
        let Some((next, _)) = dist
            .iter()
            .filter(|(v, _)| !visited.contains(*v))
            .map(|(v, d)| (v.clone(), d.clone()))
            .min_by(|(v1, d1), (v2, d2)| (d1, v1).cmp(&(d2, v2)))
        else {
            return ClassicalResult::Unreachable;
        };
        if next == *sink {
            let mut edges = Vec::new();
            let mut current = sink.clone();
            while current != *source {
                let e = prev.get(&current).expect("relaxed vertices have predecessors");
                edges.push(e.clone());
                current = graph
                    .edge(e)
                    .expect("known edge")
                    .other_endpoint(&current)
                    .expect("no self-loops")
                    .clone();
            }
            edges.reverse();
            let path = graph
                .path_from_edges(source, &edges)
                .expect("predecessor chain is a path");
            return ClassicalResult::Reached { distance: dist[sink].clone(), path };
        }
        visited.insert(next.clone());
        for e in graph.incident_edges(&next).expect("known vertex") {
            let edge = graph.edge(e).expect("known edge");
            let neighbour = edge.other_endpoint(&next).expect("no self-loops");
            if visited.contains(neighbour) {
                continue;
            }
            let candidate = dist[&next].clone() + edge.weight();
            let improves = dist.get(neighbour).map_or(true, |d| candidate < *d);
            if improves {
                dist.insert(neighbour.clone(), candidate);
                prev.insert(neighbour.clone(), e.clone());
            }
        }
    }
}


/// Exact shortest distance from `origin` to every reachable vertex
/// (undirected, so this also serves as distance *to* `origin`). Useful as
/// an exact A* heuristic when run from the sink.
pub fn shortest_distances(
    graph: &Graph,
    origin: &VertexId,
) -> Result<BTreeMap<VertexId, Rational>, crate::graph::GraphError> {
    graph.incident_edges(origin)?;
    let mut dist: BTreeMap<VertexId, Rational> = BTreeMap::new();
    let mut visited: BTreeSet<VertexId> = BTreeSet::new();
    dist.insert(origin.clone(), Rational::zero());
    while let Some((next, base)) = dist
        .iter()
        .filter(|(v, _)| !visited.contains(*v))
        .map(|(v, d)| (v.clone(), d.clone()))
        .min_by(|(v1, d1), (v2, d2)| (d1, v1).cmp(&(d2, v2)))
    {
        visited.insert(next.clone());
        for e in graph.incident_edges(&next).expect("known vertex") {
            let edge = graph.edge(e).expect("known edge");
            let neighbour = edge.other_endpoint(&next).expect("no self-loops");
            let candidate = base.clone() + edge.weight();
            let improves = dist.get(neighbour).map_or(true, |d| candidate < *d);
            if improves && !visited.contains(neighbour) {
                dist.insert(neighbour.clone(), candidate);
            }
        }
    }
    Ok(dist)
}
