//! The path sheaf: edges are active or inactive, and global sections are
//! exactly the assignments whose active subgraph is a source-to-sink path,
//! possibly together with cycles disjoint from it.
//!
//! Stalks:
//! * over the source or sink, the incident edges (the one active edge);
//! * over any other vertex, the unordered pairs of distinct incident edges,
//!   plus inactive;
//! * over every edge, active / inactive.
//!
//! The restriction map from a vertex sends its value to active exactly on
//! the edges the value names, and inactive elsewhere; an inactive vertex
//! restricts to inactive everywhere.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::rational::Rational;
use crate::sheaf::{Assignment, Cell, EdgePair, Sheaf, SheafError, StalkValue};

/// The path sheaf over a graph.
#[derive(Debug, Clone, Copy)]
pub struct PathSheaf<'g> {
    graph: &'g Graph,
}

/// Failures of path-sheaf operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathSheafError {
    #[error("assignment is not a global section")]
    NotGlobalSection,
    #[error("assignment is not a section")]
    NotASection,
    #[error("path visits the source or sink at an interior vertex")]
    PathTouchesSourceOrSinkInteriorly,
    #[error("path does not run from source to sink")]
    NotSourceToSink,
    #[error("not a valid path in this graph")]
    InvalidPath,
    #[error("path has no edges")]
    EmptyPath,
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

/// The active path and any disjoint active cycles of a global section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveComponents {
    /// The source-to-sink path traced from the source's chosen edge.
    pub path: Path,
    /// Cycles of active edges untouched by the path, each in canonical
    /// orientation (least vertex first, toward its smaller neighbour).
    pub cycles: Vec<Path>,
}

impl<'g> PathSheaf<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph }
    }

    /// Extracts the source-to-sink path carved out by a global section:
    /// start along the edge chosen at the source and follow the other
    /// member of each interior pair until the sink. Active cycles disjoint
    /// from the path are ignored; [`PathSheaf::active_components`] reports
    /// them.
    pub fn section_to_path(&self, s: &Assignment) -> Result<Path, PathSheafError> {
        if !self.is_global_section(s)? {
            return Err(PathSheafError::NotGlobalSection);
        }
        Ok(self.trace_active_path(s))
    }

    /// The section activating exactly the edges of `p`, per the standard
    /// construction: interior path vertices take the pair of adjacent path
    /// edges; a source/sink endpoint takes its path edge; any other
    /// endpoint pairs its path edge with the lexicographically smallest
    /// other incident edge. Closed walks (cycles avoiding source and sink)
    /// are accepted and need no endpoint choice. With `make_global` the
    /// path must run source to sink (either direction; the result is
    /// normalized source-first) and every remaining cell is set inactive.
    pub fn path_to_section(
        &self,
        p: &Path,
        make_global: bool,
    ) -> Result<Assignment, PathSheafError> {
        let p = self.check_path_endpoints(p, make_global)?;
        let vertices = p.vertices();
        let edges = p.edges();
        let mut s = Assignment::new();
        for e in edges {
            s.insert(Cell::Edge(e.clone()), StalkValue::Top);
        }
        if p.is_closed() {
            let n = edges.len();
            for i in 0..n {
                let before = &edges[(i + n - 1) % n];
                let pair = EdgePair::new(before.clone(), edges[i].clone())
                    .expect("validated cycle edges are distinct");
                s.insert(Cell::Vertex(vertices[i].clone()), StalkValue::EdgePair(pair));
            }
        } else {
            for i in 1..vertices.len() - 1 {
                let pair = EdgePair::new(edges[i - 1].clone(), edges[i].clone())
                    .expect("validated path edges are distinct");
                s.insert(Cell::Vertex(vertices[i].clone()), StalkValue::EdgePair(pair));
            }
            let last = vertices.len() - 1;
            s.insert(
                Cell::Vertex(vertices[0].clone()),
                self.endpoint_value(&vertices[0], &edges[0]),
            );
            s.insert(
                Cell::Vertex(vertices[last].clone()),
                self.endpoint_value(&vertices[last], &edges[edges.len() - 1]),
            );
        }
        if make_global {
            pad_bottom(self.graph, &mut s);
        }
        Ok(s)
    }

    /// Total weight of the active edges in a local section's domain.
    pub fn cost(&self, s: &Assignment) -> Result<Rational, PathSheafError> {
        if !self.is_section(s)? {
            return Err(PathSheafError::NotASection);
        }
        Ok(active_weight(self.graph, s))
    }

    /// Splits a global section's active subgraph into the source-to-sink
    /// path and the active cycles disjoint from it.
    pub fn active_components(
        &self,
        s: &Assignment,
    ) -> Result<ActiveComponents, PathSheafError> {
        if !self.is_global_section(s)? {
            return Err(PathSheafError::NotGlobalSection);
        }
        let path = self.trace_active_path(s);
        let mut remaining: Vec<EdgeId> = s
            .assigned_edges()
            .filter(|(_, value)| **value == StalkValue::Top)
            .map(|(e, _)| e.clone())
            .filter(|e| !path.edges().contains(e))
            .collect();
        let mut cycles = Vec::new();
        while !remaining.is_empty() {
            let cycle = self.pop_cycle(&mut remaining);
            cycles.push(cycle);
        }
        cycles.sort();
        Ok(ActiveComponents { path, cycles })
    }

    /// Walks the active path of a verified global section.
    pub(crate) fn trace_active_path(&self, s: &Assignment) -> Path {
        let source = self.graph.source();
        let sink = self.graph.sink();
        let mut vertices = alloc::vec![source.clone()];
        let mut edges: Vec<EdgeId> = Vec::new();
        let mut current = source.clone();
        let mut incoming: Option<EdgeId> = None;
        for _ in 0..=self.graph.edge_count() {
            if current == *sink {
                return Path::new(edges, vertices);
            }
            let next = match s.vertex(&current) {
                Some(StalkValue::ChosenEdge(e)) => e.clone(),
                Some(StalkValue::EdgePair(pair)) => pair
                    .other(incoming.as_ref().expect("interior vertex has an incoming edge"))
                    .expect("section pairs the incoming edge")
                    .clone(),
                _ => unreachable!("active vertex of a global section"),
            };
            current = self
                .graph
                .edge(&next)
                .and_then(|e| e.other_endpoint(&current))
                .expect("restriction maps force incident active edges")
                .clone();
            edges.push(next.clone());
            vertices.push(current.clone());
            incoming = Some(next);
        }
        unreachable!("active path of a global section reaches the sink")
    }

    /// Removes one active cycle from `remaining` and returns it in
    /// canonical orientation. In a global section every active vertex off
    /// the path has exactly two active edges, so the walk is forced.
    fn pop_cycle(&self, remaining: &mut Vec<EdgeId>) -> Path {
        let incident = |v: &VertexId, pool: &[EdgeId]| -> Vec<EdgeId> {
            pool.iter()
                .filter(|e| self.graph.edge(e).expect("known edge").touches(v))
                .cloned()
                .collect()
        };
        let base = remaining
            .iter()
            .flat_map(|e| {
                let (a, b) = self.graph.edge(e).expect("known edge").endpoints();
                [a.clone(), b.clone()]
            })
            .min()
            .expect("nonempty remainder");
        let mut choices = incident(&base, remaining);
        choices.sort_by_key(|e| {
            self.graph
                .edge(e)
                .expect("known edge")
                .other_endpoint(&base)
                .expect("no self-loops")
                .clone()
        });
        // Walk toward the smaller of the two neighbours of the base vertex.
        let mut vertices = alloc::vec![base.clone()];
        let mut edges = Vec::new();
        let mut current = base.clone();
        let mut next_edge = choices[0].clone();
        loop {
            remaining.retain(|e| *e != next_edge);
            current = self
                .graph
                .edge(&next_edge)
                .expect("known edge")
                .other_endpoint(&current)
                .expect("no self-loops")
                .clone();
            edges.push(next_edge.clone());
            vertices.push(current.clone());
            if current == base {
                return Path::new(edges, vertices);
            }
            let onward = incident(&current, remaining);
            next_edge = onward
                .first()
                .expect("every active cycle vertex has a second active edge")
                .clone();
        }
    }

    fn endpoint_value(&self, v: &VertexId, path_edge: &EdgeId) -> StalkValue {
        if self.graph.is_source_or_sink(v) {
            StalkValue::ChosenEdge(path_edge.clone())
        } else {
            let partner = smallest_other_edge(self.graph, v, path_edge)
                .expect("interior vertices have degree at least two");
            StalkValue::EdgePair(
                EdgePair::new(path_edge.clone(), partner).expect("edges differ"),
            )
        }
    }

    /// Shared path validation: well-formed, interior vertices avoid source
    /// and sink, and (for `make_global`) endpoints are source and sink,
    /// normalized source-first.
    fn check_path_endpoints(
        &self,
        p: &Path,
        make_global: bool,
    ) -> Result<Path, PathSheafError> {
        if !self.graph.validate_path(p) {
            return Err(PathSheafError::InvalidPath);
        }
        if p.is_empty() {
            return Err(PathSheafError::EmptyPath);
        }
        let vertices = p.vertices();
        let interior = if p.is_closed() {
            // A cycle "passes through" every one of its vertices.
            &vertices[..vertices.len() - 1]
        } else {
            &vertices[1..vertices.len() - 1]
        };
        if interior.iter().any(|v| self.graph.is_source_or_sink(v)) {
            return Err(PathSheafError::PathTouchesSourceOrSinkInteriorly);
        }
        if make_global {
            let (first, last) = (p.first_vertex(), p.last_vertex());
            let source = self.graph.source();
            let sink = self.graph.sink();
            if first == source && last == sink {
                Ok(p.clone())
            } else if first == sink && last == source {
                Ok(p.reversed())
            } else {
                Err(PathSheafError::NotSourceToSink)
            }
        } else {
            Ok(p.clone())
        }
    }
}

impl Sheaf for PathSheaf<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn stalk_check(&self, cell: &Cell, value: &StalkValue) -> bool {
        match cell {
            Cell::Vertex(v) => {
                let Ok(incident) = self.graph.incident_edges(v) else {
                    return false;
                };
                if self.graph.is_source_or_sink(v) {
                    matches!(value, StalkValue::ChosenEdge(e) if incident.contains(e))
                } else {
                    match value {
                        StalkValue::Bottom => true,
                        StalkValue::EdgePair(p) => {
                            incident.contains(p.first()) && incident.contains(p.second())
                        }
                        _ => false,
                    }
                }
            }
            Cell::Edge(e) => {
                self.graph.edge(e).is_some()
                    && matches!(value, StalkValue::Bottom | StalkValue::Top)
            }
        }
    }

    fn restrict(
        &self,
        v: &VertexId,
        e: &EdgeId,
        value: &StalkValue,
    ) -> Result<StalkValue, SheafError> {
        check_incident(self.graph, v, e)?;
        if !self.stalk_check(&Cell::Vertex(v.clone()), value) {
            return Err(SheafError::StalkMismatch { cell: Cell::Vertex(v.clone()) });
        }
        Ok(match value {
            StalkValue::ChosenEdge(chosen) => activation(chosen == e),
            StalkValue::EdgePair(pair) => activation(pair.contains(e)),
            StalkValue::Bottom => StalkValue::Bottom,
            _ => unreachable!("stalk_check admits no other variants"),
        })
    }
}

fn activation(active: bool) -> StalkValue {
    if active {
        StalkValue::Top
    } else {
        StalkValue::Bottom
    }
}

pub(crate) fn check_incident(
    graph: &Graph,
    v: &VertexId,
    e: &EdgeId,
) -> Result<(), SheafError> {
    match graph.edge(e) {
        Some(edge) if edge.touches(v) => Ok(()),
        _ => Err(SheafError::NotIncident { vertex: v.clone(), edge: e.clone() }),
    }
}

/// The lexicographically smallest edge at `v` other than `excluded`.
pub(crate) fn smallest_other_edge(
    graph: &Graph,
    v: &VertexId,
    excluded: &EdgeId,
) -> Option<EdgeId> {
    graph
        .incident_edges(v)
        .ok()?
        .iter()
        .find(|e| *e != excluded)
        .cloned()
}

/// Sets every unassigned cell of the graph to inactive.
pub(crate) fn pad_bottom(graph: &Graph, s: &mut Assignment) {
    for v in graph.vertices() {
        if s.vertex(v).is_none() {
            s.insert(Cell::Vertex(v.clone()), StalkValue::Bottom);
        }
    }
    for e in graph.edges() {
        if s.edge(e.id()).is_none() {
            s.insert(Cell::Edge(e.id().clone()), StalkValue::Bottom);
        }
    }
}

/// Total weight of edges assigned active (`Top` for the path sheaf, a
/// distance for the distance sheaf).
pub(crate) fn active_weight(graph: &Graph, s: &Assignment) -> Rational {
    use num_traits::Zero;
    let mut total = Rational::zero();
    for (e, value) in s.assigned_edges() {
        if !matches!(value, StalkValue::Bottom) {
            total += graph.edge(e).expect("known edge").weight().clone();
        }
    }
    total
}
