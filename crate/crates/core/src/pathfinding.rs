//! Shortest-path search expressed as section extension.
//!
//! [`dijkstra_dp`] runs Dijkstra's algorithm over the distance sheaf: one
//! tentative local section per vertex, each pairing the best known path to
//! that vertex with its distance, grown one edge and one vertex at a time
//! until the sink's section cannot be beaten. [`search_p`] is the
//! corresponding cost-guided best-first search over path-sheaf sections;
//! with the plain section cost it is Dijkstra again, and with a heuristic
//! added to the cost it is A*.
//!
//! Everything here is deterministic: ties are broken lexicographically on
//! identifiers, both in the choice of the next current vertex and in the
//! frontier ordering.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use num_traits::Zero;

use crate::distance_sheaf::DistancePathSheaf;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::path_sheaf::{active_weight, pad_bottom, smallest_other_edge, PathSheaf};
use crate::rational::Rational;
use crate::sheaf::{Assignment, Cell, EdgePair, Sheaf, StalkValue};

/// Outcome of a shortest-path solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// A shortest path exists; `section` is the witnessing global section,
    /// `path` its active source-to-sink path, and `length` the exact total
    /// weight (the numeric component at the sink for the distance sheaf).
    ShortestPath {
        section: Assignment,
        path: Path,
        length: Rational,
    },
    /// Source and sink are not connected, so no global section exists.
    NoPath,
}

/// One snapshot of Dijkstra's state, taken after each vertex is finished:
/// the vertex just processed with the section it was expanded from, the
/// visited set, and every tentative section defined so far (keyed by the
/// vertex it reaches; entries for visited vertices are final).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TentativeState {
    pub current: VertexId,
    pub current_section: Assignment,
    pub visited: BTreeSet<VertexId>,
    pub tentative: BTreeMap<VertexId, Assignment>,
}

/// Orders the frontier of [`search_p`]. For Dijkstra use [`SectionCost`];
/// for A* use [`AStarCost`], whose heuristic must never overestimate the
/// remaining distance for the optimality guarantee to hold (that admissibility
/// is the caller's responsibility).
pub trait CostFunction {
    fn evaluate(&self, section: &Assignment, frontier: &VertexId) -> Rational;
}

/// Plain section cost: the total weight of active edges.
#[derive(Debug, Clone, Copy)]
pub struct SectionCost<'g> {
    graph: &'g Graph,
}

impl<'g> SectionCost<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph }
    }
}

impl CostFunction for SectionCost<'_> {
    fn evaluate(&self, section: &Assignment, _frontier: &VertexId) -> Rational {
        active_weight(self.graph, section)
    }
}

/// Section cost plus a per-vertex heuristic estimate of the remaining
/// distance to the sink. Vertices missing from the table count as zero.
#[derive(Debug, Clone)]
pub struct AStarCost<'g> {
    graph: &'g Graph,
    heuristic: BTreeMap<VertexId, Rational>,
}

impl<'g> AStarCost<'g> {
    pub fn new(graph: &'g Graph, heuristic: BTreeMap<VertexId, Rational>) -> Self {
        Self { graph, heuristic }
    }
}

impl CostFunction for AStarCost<'_> {
    fn evaluate(&self, section: &Assignment, frontier: &VertexId) -> Rational {
        let mut cost = active_weight(self.graph, section);
        if let Some(estimate) = self.heuristic.get(frontier) {
            cost += estimate.clone();
        }
        cost
    }
}

/// Dijkstra's algorithm over the distance sheaf. `NoPath` is a result, not
/// an error.
pub fn dijkstra_dp(sheaf: &DistancePathSheaf<'_>) -> SolveResult {
    run_dijkstra(sheaf, false).0
}

/// The same run as [`dijkstra_dp`], returning one [`TentativeState`]
/// snapshot per finished vertex. The final snapshot's tentative map is the
/// state the result was read from.
pub fn tentative_trace(sheaf: &DistancePathSheaf<'_>) -> Vec<TentativeState> {
    run_dijkstra(sheaf, true).1
}

fn run_dijkstra(
    sheaf: &DistancePathSheaf<'_>,
    record: bool,
) -> (SolveResult, Vec<TentativeState>) {
    let graph = sheaf.graph();
    let source = graph.source();
    let sink = graph.sink();

    // Initialization: all vertices unvisited, the source's tentative
    // section defined only on the source itself. Its edge component is a
    // placeholder for the first edge considered below.
    let first_edge = graph
        .incident_edges(source)
        .expect("known vertex")
        .iter()
        .next()
        .expect("source has degree at least one")
        .clone();
    let mut tentative: BTreeMap<VertexId, Assignment> = BTreeMap::new();
    tentative.insert(
        source.clone(),
        Assignment::new().with(
            Cell::Vertex(source.clone()),
            StalkValue::ChosenEdgeWithDist(first_edge, Rational::zero()),
        ),
    );
    let mut visited: BTreeSet<VertexId> = BTreeSet::new();
    let mut current = source.clone();
    let mut trace = Vec::new();

    loop {
        let current_section = tentative.get(&current).expect("current is defined").clone();

        // Extend the current section along each edge to an unvisited
        // neighbour, rewriting the outgoing-edge component of the current
        // vertex's value first (the chosen edge at the source, the second
        // pair component elsewhere; the sink is never current).
        for edge_id in graph.incident_edges(&current).expect("known vertex") {
            let edge = graph.edge(edge_id).expect("known edge");
            let neighbour = edge.other_endpoint(&current).expect("no self-loops");
            if visited.contains(neighbour) {
                continue;
            }
            let (rewritten, along) = match current_section
                .vertex(&current)
                .expect("tentative sections reach their key vertex")
            {
                StalkValue::ChosenEdgeWithDist(_, dist) => (
                    StalkValue::ChosenEdgeWithDist(edge_id.clone(), dist.clone()),
                    dist.clone(),
                ),
                StalkValue::OrderedPairWithDist { incoming, dist, .. } => (
                    StalkValue::OrderedPairWithDist {
                        incoming: incoming.clone(),
                        outgoing: edge_id.clone(),
                        dist: dist.clone(),
                    },
                    dist.clone(),
                ),
                _ => unreachable!("current vertex is active in its own section"),
            };
            let reached = along + edge.weight();
            let neighbour_value = if neighbour == sink {
                StalkValue::ChosenEdgeWithDist(edge_id.clone(), reached.clone())
            } else {
                // deg >= 2 guarantees some other edge to leave through.
                let outgoing = smallest_other_edge(graph, neighbour, edge_id)
                    .expect("interior vertices have degree at least two");
                StalkValue::OrderedPairWithDist {
                    incoming: edge_id.clone(),
                    outgoing,
                    dist: reached.clone(),
                }
            };
            let improves = match tentative.get(neighbour) {
                None => true,
                Some(previous) => reached < *numeric_component(previous, neighbour),
            };
            if improves {
                let mut grown = current_section.clone();
                grown.insert(Cell::Vertex(current.clone()), rewritten);
                grown.insert(Cell::Edge(edge_id.clone()), StalkValue::Dist(reached));
                grown.insert(Cell::Vertex(neighbour.clone()), neighbour_value);
                tentative.insert(neighbour.clone(), grown);
            }
        }

        visited.insert(current.clone());
        if record {
            trace.push(TentativeState {
                current: current.clone(),
                current_section,
                visited: visited.clone(),
                tentative: tentative.clone(),
            });
        }

        // Termination: stop with no path once every unvisited vertex is
        // undefined; stop with the sink's section once it is no worse than
        // every defined unvisited one; otherwise continue from the least.
        let mut best: Option<(&Rational, &VertexId)> = None;
        for (v, section) in &tentative {
            if visited.contains(v) {
                continue;
            }
            let dist = numeric_component(section, v);
            if best.map_or(true, |(b, bv)| (dist, v) < (b, bv)) {
                best = Some((dist, v));
            }
        }
        let Some((least, least_vertex)) = best else {
            return (SolveResult::NoPath, trace);
        };
        if let Some(sink_section) = tentative.get(sink) {
            let sink_dist = numeric_component(sink_section, sink);
            if sink_dist <= least {
                let mut section = sink_section.clone();
                pad_bottom(graph, &mut section);
                let path = sheaf
                    .active_path(&section)
                    .expect("tentative sections are sections");
                return (
                    SolveResult::ShortestPath { section, path, length: sink_dist.clone() },
                    trace,
                );
            }
        }
        current = least_vertex.clone();
    }
}

/// The distance a tentative section stores for `v` (the numeric component
/// of its value there).
fn numeric_component<'a>(section: &'a Assignment, v: &VertexId) -> &'a Rational {
    match section.vertex(v) {
        Some(StalkValue::ChosenEdgeWithDist(_, dist)) => dist,
        Some(StalkValue::OrderedPairWithDist { dist, .. }) => dist,
        _ => unreachable!("tentative sections assign their key vertex"),
    }
}

/// A solve together with how many sections the search expanded; exposed so
/// heuristics can be compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SolveResult,
    pub expanded: usize,
}

/// Best-first search over local sections of the path sheaf, ordered by
/// `cost_fn` with lexicographic tie-breaking on the path's edge sequence.
/// Extensions that would revisit a vertex are excluded, so every frontier
/// section corresponds to a simple path out of the source. With
/// [`SectionCost`] this agrees exactly with [`dijkstra_dp`]; with an
/// admissible [`AStarCost`] it returns the same length.
pub fn search_p<C: CostFunction + ?Sized>(
    sheaf: &PathSheaf<'_>,
    cost_fn: &C,
) -> SolveResult {
    search_p_instrumented(sheaf, cost_fn).result
}

/// [`search_p`] plus the expanded-section count.
pub fn search_p_instrumented<C: CostFunction + ?Sized>(
    sheaf: &PathSheaf<'_>,
    cost_fn: &C,
) -> SearchOutcome {
    let graph = sheaf.graph();
    let source = graph.source();
    let sink = graph.sink();

    let first_edge = graph
        .incident_edges(source)
        .expect("known vertex")
        .iter()
        .next()
        .expect("source has degree at least one")
        .clone();
    let initial_section = Assignment::new()
        .with(Cell::Vertex(source.clone()), StalkValue::ChosenEdge(first_edge));
    let initial = FrontierEntry {
        priority: cost_fn.evaluate(&initial_section, source),
        edges: Vec::new(),
        vertices: alloc::vec![source.clone()],
        travelled: Rational::zero(),
        section: initial_section,
    };

    let mut frontier = BinaryHeap::new();
    frontier.push(Reverse(initial));
    let mut best: BTreeMap<VertexId, Rational> = BTreeMap::new();
    best.insert(source.clone(), Rational::zero());
    let mut expanded = 0usize;

    while let Some(Reverse(entry)) = frontier.pop() {
        let end = entry.vertices.last().expect("paths are nonempty").clone();
        if best.get(&end).is_some_and(|b| entry.travelled > *b) {
            continue; // superseded by a cheaper path to the same vertex
        }
        if end == *sink {
            let mut section = entry.section;
            pad_bottom(graph, &mut section);
            return SearchOutcome {
                result: SolveResult::ShortestPath {
                    section,
                    path: Path::new(entry.edges, entry.vertices),
                    length: entry.travelled,
                },
                expanded,
            };
        }
        expanded += 1;

        for edge_id in graph.incident_edges(&end).expect("known vertex") {
            let edge = graph.edge(edge_id).expect("known edge");
            let neighbour = edge.other_endpoint(&end).expect("no self-loops");
            if entry.vertices.contains(neighbour) {
                continue; // never close a cycle
            }
            let travelled = entry.travelled.clone() + edge.weight();
            if best.get(neighbour).is_some_and(|b| travelled >= *b) {
                continue;
            }
            best.insert(neighbour.clone(), travelled.clone());

            let mut section = entry.section.clone();
            let end_value = if end == *source {
                StalkValue::ChosenEdge(edge_id.clone())
            } else {
                let incoming = entry.edges.last().expect("non-source end has an incoming edge");
                StalkValue::EdgePair(
                    EdgePair::new(incoming.clone(), edge_id.clone())
                        .expect("cycle exclusion keeps these distinct"),
                )
            };
            section.insert(Cell::Vertex(end.clone()), end_value);
            section.insert(Cell::Edge(edge_id.clone()), StalkValue::Top);
            let neighbour_value = if neighbour == sink {
                StalkValue::ChosenEdge(edge_id.clone())
            } else {
                let partner = smallest_other_edge(graph, neighbour, edge_id)
                    .expect("interior vertices have degree at least two");
                StalkValue::EdgePair(
                    EdgePair::new(edge_id.clone(), partner).expect("edges differ"),
                )
            };
            section.insert(Cell::Vertex(neighbour.clone()), neighbour_value);

            let mut edges = entry.edges.clone();
            edges.push(edge_id.clone());
            let mut vertices = entry.vertices.clone();
            vertices.push(neighbour.clone());
            let priority = cost_fn.evaluate(&section, neighbour);
            frontier.push(Reverse(FrontierEntry {
                priority,
                edges,
                vertices,
                travelled,
                section,
            }));
        }
    }

    SearchOutcome { result: SolveResult::NoPath, expanded }
}

/// Frontier entry ordered by (priority, edge sequence); the remaining
/// fields ride along.
#[derive(Debug, Clone)]
struct FrontierEntry {
    priority: Rational,
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
    travelled: Rational,
    section: Assignment,
}

impl PartialEq for FrontierEntry {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority && self.edges == other.edges
    }
}

impl Eq for FrontierEntry {}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority
            .cmp(&other.priority)
            .then_with(|| self.edges.cmp(&other.edges))
    }
}
