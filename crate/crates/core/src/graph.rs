//! Finite weighted undirected graphs with a distinguished source and sink.
//!
//! Graphs are validated once at construction and immutable afterwards, so
//! they can be shared freely by everything built on top of them. Besides the
//! usual simple-graph rules (no self-loops, no parallel edges, strictly
//! positive weights) construction enforces the degree requirements the
//! sheaves rely on: every vertex other than the source and sink must have
//! degree at least two, and the source and sink at least one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rational;

/// Identifier of a vertex, unique within a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(id: &str) -> Self {
        Self::new(id)
    }
}

impl From<String> for VertexId {
    fn from(id: String) -> Self {
        Self(id)
    }
}

/// Identifier of an edge, unique within a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(id: &str) -> Self {
        Self::new(id)
    }
}

impl From<String> for EdgeId {
    fn from(id: String) -> Self {
        Self(id)
    }
}

/// An undirected edge between two distinct vertices, with a strictly
/// positive rational weight. Endpoints are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    id: EdgeId,
    endpoints: (VertexId, VertexId),
    weight: Rational,
}

impl Edge {
    pub fn id(&self) -> &EdgeId {
        &self.id
    }

    /// Both endpoints, in sorted order.
    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.endpoints.0, &self.endpoints.1)
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn touches(&self, v: &VertexId) -> bool {
        self.endpoints.0 == *v || self.endpoints.1 == *v
    }

    /// The endpoint opposite `v`, or `None` if `v` is not an endpoint.
    pub fn other_endpoint(&self, v: &VertexId) -> Option<&VertexId> {
        if self.endpoints.0 == *v {
            Some(&self.endpoints.1)
        } else if self.endpoints.1 == *v {
            Some(&self.endpoints.0)
        } else {
            None
        }
    }
}

/// Input description of one edge for [`Graph::build`].
#[derive(Debug, Clone)]
pub struct EdgeSpec {
    pub id: EdgeId,
    pub a: VertexId,
    pub b: VertexId,
    pub weight: Rational,
}

impl EdgeSpec {
    pub fn new(
        id: impl Into<EdgeId>,
        a: impl Into<VertexId>,
        b: impl Into<VertexId>,
        weight: Rational,
    ) -> Self {
        Self { id: id.into(), a: a.into(), b: b.into(), weight }
    }
}

/// Why [`Graph::build`] or a lookup rejected its input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(EdgeId),
    #[error("edge `{0}` has a non-positive weight")]
    NonPositiveWeight(EdgeId),
    #[error("edges `{0}` and `{1}` connect the same pair of vertices")]
    ParallelEdge(EdgeId, EdgeId),
    #[error("vertex `{vertex}` has degree {degree} but needs at least {minimum}")]
    DegreeViolation {
        vertex: VertexId,
        degree: usize,
        minimum: usize,
    },
    #[error("source and sink must be distinct vertices")]
    SourceEqualsSink,
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
}

/// A validated weighted simple graph with source and sink. Immutable after
/// construction; all lookups are read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    source: VertexId,
    sink: VertexId,
}

impl Graph {
    /// Validates and freezes a graph.
    ///
    /// Checks, in order: unique ids (shared namespace for vertices and
    /// edges, so section documents stay unambiguous), source distinct from
    /// sink and both present, edge endpoints known and distinct, weights
    /// positive, no parallel edges, and the degree rule (at least 2
    /// everywhere except source and sink, which need at least 1).
    pub fn build(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = EdgeSpec>,
        source: VertexId,
        sink: VertexId,
    ) -> Result<Self, GraphError> {
        let mut vertex_set = BTreeSet::new();
        for v in vertices {
            if !vertex_set.insert(v.clone()) {
                return Err(GraphError::DuplicateId(v.0));
            }
        }
        if source == sink {
            return Err(GraphError::SourceEqualsSink);
        }
        for v in [&source, &sink] {
            if !vertex_set.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }

        let mut edge_map: BTreeMap<EdgeId, Edge> = BTreeMap::new();
        let mut seen_pairs: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        let mut incidence: BTreeMap<VertexId, BTreeSet<EdgeId>> =
            vertex_set.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for spec in edges {
            let EdgeSpec { id, a, b, weight } = spec;
            if vertex_set.contains(&VertexId(id.0.clone())) || edge_map.contains_key(&id) {
                return Err(GraphError::DuplicateId(id.0));
            }
            for endpoint in [&a, &b] {
                if !vertex_set.contains(endpoint) {
                    return Err(GraphError::UnknownEndpoint {
                        edge: id,
                        vertex: endpoint.clone(),
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(id));
            }
            if weight <= Rational::zero() {
                return Err(GraphError::NonPositiveWeight(id));
            }
            let endpoints = if a <= b { (a, b) } else { (b, a) };
            if let Some(prev) = seen_pairs.get(&endpoints) {
                return Err(GraphError::ParallelEdge(prev.clone(), id));
            }
            seen_pairs.insert(endpoints.clone(), id.clone());
            incidence.get_mut(&endpoints.0).unwrap().insert(id.clone());
            incidence.get_mut(&endpoints.1).unwrap().insert(id.clone());
            edge_map.insert(id.clone(), Edge { id, endpoints, weight });
        }

        for (v, incident) in &incidence {
            let minimum = if *v == source || *v == sink { 1 } else { 2 };
            if incident.len() < minimum {
                return Err(GraphError::DegreeViolation {
                    vertex: v.clone(),
                    degree: incident.len(),
                    minimum,
                });
            }
        }

        Ok(Self { vertices: vertex_set, edges: edge_map, incidence, source, sink })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn sink(&self) -> &VertexId {
        &self.sink
    }

    pub fn is_source_or_sink(&self, v: &VertexId) -> bool {
        self.source == *v || self.sink == *v
    }

    /// All edges containing `v`, sorted by id. The size of this set is the
    /// degree of `v`.
    pub fn incident_edges(&self, v: &VertexId) -> Result<&BTreeSet<EdgeId>, GraphError> {
        self.incidence.get(v).ok_or_else(|| GraphError::UnknownVertex(v.clone()))
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        Ok(self.incident_edges(v)?.len())
    }

    /// True iff `p` is a path (or a cycle of length at least three) in this
    /// graph. Ill-formed input yields `false`, never an error.
    pub fn validate_path(&self, p: &Path) -> bool {
        let vertices = p.vertices();
        let edges = p.edges();
        if vertices.len() != edges.len() + 1 {
            return false;
        }
        if !vertices.iter().all(|v| self.vertices.contains(v)) {
            return false;
        }
        for (i, e) in edges.iter().enumerate() {
            let Some(edge) = self.edges.get(e) else {
                return false;
            };
            let step = if vertices[i] <= vertices[i + 1] {
                (&vertices[i], &vertices[i + 1])
            } else {
                (&vertices[i + 1], &vertices[i])
            };
            if (step.0, step.1) != edge.endpoints() {
                return false;
            }
        }
        let closed = !edges.is_empty() && vertices[0] == vertices[vertices.len() - 1];
        if closed {
            // A cycle revisits only its base vertex, and a simple graph has
            // no cycles shorter than a triangle.
            edges.len() >= 3 && all_distinct(&vertices[..vertices.len() - 1])
        } else {
            all_distinct(vertices)
        }
    }

    /// Reconstructs the vertex sequence of an edge walk beginning at
    /// `start`. Returns `None` when the edges do not chain from `start`.
    pub fn path_from_edges(&self, start: &VertexId, edges: &[EdgeId]) -> Option<Path> {
        if !self.vertices.contains(start) {
            return None;
        }
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        vertices.push(start.clone());
        let mut current = start.clone();
        for id in edges {
            let edge = self.edges.get(id)?;
            let next = edge.other_endpoint(&current)?;
            vertices.push(next.clone());
            current = next.clone();
        }
        Some(Path::new(edges.to_vec(), vertices))
    }
}

fn all_distinct(vertices: &[VertexId]) -> bool {
    let mut seen = BTreeSet::new();
    vertices.iter().all(|v| seen.insert(v))
}

/// A walk through a graph: an edge sequence together with the vertex
/// sequence it connects. Orderable so path collections have a canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Path {
    /// Panics if `vertices.len() != edges.len() + 1`; semantic validity
    /// against a particular graph is [`Graph::validate_path`]'s job.
    pub fn new(edges: Vec<EdgeId>, vertices: Vec<VertexId>) -> Self {
        assert_eq!(
            vertices.len(),
            edges.len() + 1,
            "a path over n edges visits n + 1 vertices"
        );
        Self { edges, vertices }
    }

    /// The zero-length path sitting at a single vertex.
    pub fn trivial(vertex: VertexId) -> Self {
        Self { edges: Vec::new(), vertices: alloc::vec![vertex] }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first_vertex(&self) -> &VertexId {
        &self.vertices[0]
    }

    pub fn last_vertex(&self) -> &VertexId {
        &self.vertices[self.vertices.len() - 1]
    }

    /// First vertex equals last and there is at least one edge.
    pub fn is_closed(&self) -> bool {
        !self.edges.is_empty() && self.first_vertex() == self.last_vertex()
    }

    pub fn reversed(&self) -> Path {
        let mut edges = self.edges.clone();
        let mut vertices = self.vertices.clone();
        edges.reverse();
        vertices.reverse();
        Self { edges, vertices }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(e.as_str())?;
        }
        Ok(())
    }
}
