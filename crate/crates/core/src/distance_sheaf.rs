//! The distance path sheaf: stalk values carry the exact distance
//! accumulated from the source, which orients sections (each interior value
//! names its incoming and outgoing edge) and makes active cycles impossible
//! — a loop would keep accumulating strictly positive weight and could
//! never match its starting vertex again.
//!
//! Stalks:
//! * over the source, incident edges paired with distance zero exactly;
//! * over the sink, incident edges paired with a positive distance;
//! * over any other vertex, ordered pairs of distinct incident edges with a
//!   positive distance, plus inactive;
//! * over every edge, a positive distance or inactive.
//!
//! Restriction maps: the source sends `(e, 0)` to `w(e)` on `e`; the sink
//! sends `(e, x)` to `x` on `e`; an interior `(in, out, x)` sends `x` to the
//! incoming edge and `x + w(out)` to the outgoing one; everything else, and
//! every inactive vertex, restricts to inactive.

use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::path_sheaf::{check_incident, pad_bottom, smallest_other_edge};
use crate::rational::Rational;
use crate::sheaf::{Assignment, Cell, Sheaf, SheafError, StalkValue};

/// The distance path sheaf over a weighted graph.
#[derive(Debug, Clone, Copy)]
pub struct DistancePathSheaf<'g> {
    graph: &'g Graph,
}

/// Failures of distance-sheaf operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceSheafError {
    #[error("assignment is not a global section")]
    NotGlobalSection,
    #[error("assignment is not a section")]
    NotASection,
    #[error("path does not start at the source")]
    PathDoesNotStartAtSource,
    #[error("path visits the source or sink at an interior vertex")]
    PathTouchesSourceOrSinkInteriorly,
    #[error("path does not run from source to sink")]
    NotSourceToSink,
    #[error("not a valid path in this graph")]
    InvalidPath,
    #[error("section does not assign the source vertex")]
    SourceUnassigned,
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

impl<'g> DistancePathSheaf<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph }
    }

    /// The unique consistent assignment along a path out of the source:
    /// each edge carries the distance accumulated on crossing it and each
    /// vertex pairs its incoming and outgoing edges with the distance on
    /// arrival. A vertex needing an outgoing edge beyond the path's end
    /// takes the lexicographically smallest other incident edge; the
    /// zero-length path at the source chooses its smallest incident edge.
    /// With `make_global` the path must end at the sink and all remaining
    /// cells are set inactive.
    pub fn directed_path_to_section(
        &self,
        p: &Path,
        make_global: bool,
    ) -> Result<Assignment, DistanceSheafError> {
        if !self.graph.validate_path(p) || p.is_closed() {
            return Err(DistanceSheafError::InvalidPath);
        }
        let source = self.graph.source();
        let sink = self.graph.sink();
        if p.first_vertex() != source {
            return Err(DistanceSheafError::PathDoesNotStartAtSource);
        }
        let vertices = p.vertices();
        let edges = p.edges();
        let interior = vertices.get(1..vertices.len() - 1).unwrap_or(&[]);
        if interior.iter().any(|v| self.graph.is_source_or_sink(v)) {
            return Err(DistanceSheafError::PathTouchesSourceOrSinkInteriorly);
        }
        if make_global && p.last_vertex() != sink {
            return Err(DistanceSheafError::NotSourceToSink);
        }

        let mut s = Assignment::new();
        let first_edge = match edges.first() {
            Some(e) => e.clone(),
            None => smallest_other_edge_or_any(self.graph, source),
        };
        s.insert(
            Cell::Vertex(source.clone()),
            StalkValue::ChosenEdgeWithDist(first_edge, Rational::zero()),
        );
        let mut reached = Rational::zero();
        for (i, e) in edges.iter().enumerate() {
            reached += self.graph.edge(e).expect("validated edge").weight();
            s.insert(Cell::Edge(e.clone()), StalkValue::Dist(reached.clone()));
            let v = &vertices[i + 1];
            let value = if v == sink {
                StalkValue::ChosenEdgeWithDist(e.clone(), reached.clone())
            } else {
                let outgoing = match edges.get(i + 1) {
                    Some(next) => next.clone(),
                    None => smallest_other_edge(self.graph, v, e)
                        .expect("interior vertices have degree at least two"),
                };
                StalkValue::OrderedPairWithDist {
                    incoming: e.clone(),
                    outgoing,
                    dist: reached.clone(),
                }
            };
            s.insert(Cell::Vertex(v.clone()), value);
        }
        if make_global {
            pad_bottom(self.graph, &mut s);
        }
        Ok(s)
    }

    /// Re-verifies that a global section's active subgraph contains no
    /// cycle. Positive weights make this always true; the check exists as
    /// an independent diagnostic.
    pub fn verify_no_active_cycle(&self, s: &Assignment) -> Result<bool, DistanceSheafError> {
        if !self.is_global_section(s)? {
            return Err(DistanceSheafError::NotGlobalSection);
        }
        // Union the endpoints of every active edge; a cycle shows up as an
        // edge joining two vertices already connected.
        let mut component: alloc::collections::BTreeMap<&VertexId, usize> =
            alloc::collections::BTreeMap::new();
        let mut fresh = 0usize;
        for (e, value) in s.assigned_edges() {
            if matches!(value, StalkValue::Bottom) {
                continue;
            }
            let (a, b) = self.graph.edge(e).expect("known edge").endpoints();
            let ca = component.get(a).copied();
            let cb = component.get(b).copied();
            match (ca, cb) {
                (Some(x), Some(y)) if x == y => return Ok(false),
                (Some(x), Some(y)) => {
                    for c in component.values_mut() {
                        if *c == y {
                            *c = x;
                        }
                    }
                }
                (Some(x), None) => {
                    component.insert(b, x);
                }
                (None, Some(y)) => {
                    component.insert(a, y);
                }
                (None, None) => {
                    component.insert(a, fresh);
                    component.insert(b, fresh);
                    fresh += 1;
                }
            }
        }
        Ok(true)
    }

    /// The directed walk a local section encodes: from the source along
    /// each value's outgoing edge, stopping at the sink or at the first
    /// outgoing edge outside the domain. The source must be assigned.
    pub fn active_path(&self, s: &Assignment) -> Result<Path, DistanceSheafError> {
        if !self.is_section(s)? {
            return Err(DistanceSheafError::NotASection);
        }
        let source = self.graph.source();
        let mut current = match s.vertex(source) {
            Some(_) => source.clone(),
            None => return Err(DistanceSheafError::SourceUnassigned),
        };
        let mut vertices = alloc::vec![current.clone()];
        let mut edges: Vec<EdgeId> = Vec::new();
        for _ in 0..=self.graph.edge_count() {
            if current == *self.graph.sink() {
                break;
            }
            let outgoing = match s.vertex(&current) {
                Some(StalkValue::ChosenEdgeWithDist(e, _)) => e.clone(),
                Some(StalkValue::OrderedPairWithDist { outgoing, .. }) => outgoing.clone(),
                _ => break,
            };
            if s.edge(&outgoing).is_none() {
                break; // tentative sections end where their domain does
            }
            current = self
                .graph
                .edge(&outgoing)
                .expect("stalk membership keeps edges incident")
                .other_endpoint(&current)
                .expect("no self-loops")
                .clone();
            edges.push(outgoing.clone());
            vertices.push(current.clone());
        }
        Ok(Path::new(edges, vertices))
    }
}

fn smallest_other_edge_or_any(graph: &Graph, v: &VertexId) -> EdgeId {
    graph
        .incident_edges(v)
        .expect("known vertex")
        .iter()
        .next()
        .expect("source has degree at least one")
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::testutil::{ladder, single_edge};

    fn ordered(incoming: &str, outgoing: &str, dist: i64) -> StalkValue {
        StalkValue::OrderedPairWithDist {
            incoming: incoming.into(),
            outgoing: outgoing.into(),
            dist: int(dist),
        }
    }

    fn chosen(e: &str, dist: i64) -> StalkValue {
        StalkValue::ChosenEdgeWithDist(e.into(), int(dist))
    }

    #[test]
    fn restriction_accumulates_weight_downstream() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let restrict = |v: &str, e: &str, value: &StalkValue| {
            sheaf.restrict(&v.into(), &e.into(), value).unwrap()
        };
        // Source: the chosen edge picks up its own weight.
        assert_eq!(restrict("v_S", "e_2", &chosen("e_2", 0)), StalkValue::Dist(int(1)));
        assert_eq!(restrict("v_S", "e_1", &chosen("e_2", 0)), StalkValue::Bottom);
        // Interior: the incoming edge carries the arrival distance, the
        // outgoing edge adds its weight, everything else is inactive.
        assert_eq!(
            restrict("v_3", "e_2", &ordered("e_2", "e_4", 1)),
            StalkValue::Dist(int(1))
        );
        assert_eq!(
            restrict("v_3", "e_4", &ordered("e_2", "e_4", 1)),
            StalkValue::Dist(int(2))
        );
        assert_eq!(
            restrict("v_3", "e_5", &ordered("e_2", "e_4", 1)),
            StalkValue::Bottom
        );
        // Sink: the chosen edge passes the distance through unchanged.
        assert_eq!(restrict("v_T", "e_3", &chosen("e_3", 3)), StalkValue::Dist(int(3)));
        assert_eq!(restrict("v_3", "e_2", &StalkValue::Bottom), StalkValue::Bottom);
    }

    #[test]
    fn stalks_pin_the_distance_signs() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        // The source carries distance zero exactly; the sink strictly more.
        assert!(sheaf.stalk_check(&Cell::vertex("v_S"), &chosen("e_1", 0)));
        assert!(!sheaf.stalk_check(&Cell::vertex("v_S"), &chosen("e_1", 2)));
        assert!(sheaf.stalk_check(&Cell::vertex("v_T"), &chosen("e_1", 2)));
        assert!(!sheaf.stalk_check(&Cell::vertex("v_T"), &chosen("e_1", 0)));
        // Interior pairs are ordered pairs of distinct incident edges.
        assert!(sheaf.stalk_check(&Cell::vertex("v_3"), &ordered("e_4", "e_2", 1)));
        assert!(!sheaf.stalk_check(&Cell::vertex("v_3"), &ordered("e_4", "e_4", 1)));
        assert!(!sheaf.stalk_check(&Cell::vertex("v_3"), &ordered("e_1", "e_2", 1)));
        // Edges carry strictly positive distances or nothing.
        assert!(sheaf.stalk_check(&Cell::edge("e_1"), &StalkValue::Dist(int(2))));
        assert!(!sheaf.stalk_check(&Cell::edge("e_1"), &StalkValue::Dist(int(0))));
        assert!(sheaf.stalk_check(&Cell::edge("e_1"), &StalkValue::Bottom));
        assert!(!sheaf.stalk_check(&Cell::edge("e_1"), &StalkValue::Top));
    }

    #[test]
    fn directed_paths_force_their_labels() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let p = g
            .path_from_edges(&"v_S".into(), &["e_2".into(), "e_4".into(), "e_3".into()])
            .unwrap();
        let s = sheaf.directed_path_to_section(&p, true).unwrap();
        assert!(sheaf.is_global_section(&s).unwrap());
        assert_eq!(s.vertex(&"v_S".into()), Some(&chosen("e_2", 0)));
        assert_eq!(s.edge(&"e_2".into()), Some(&StalkValue::Dist(int(1))));
        assert_eq!(s.vertex(&"v_3".into()), Some(&ordered("e_2", "e_4", 1)));
        assert_eq!(s.edge(&"e_4".into()), Some(&StalkValue::Dist(int(2))));
        assert_eq!(s.vertex(&"v_4".into()), Some(&ordered("e_4", "e_3", 2)));
        assert_eq!(s.edge(&"e_3".into()), Some(&StalkValue::Dist(int(3))));
        assert_eq!(s.vertex(&"v_T".into()), Some(&chosen("e_3", 3)));
        assert_eq!(s.vertex(&"v_5".into()), Some(&StalkValue::Bottom));
        assert_eq!(s.edge(&"e_7".into()), Some(&StalkValue::Bottom));
    }

    #[test]
    fn the_direct_edge_makes_a_two_cell_path() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let p = g.path_from_edges(&"v_S".into(), &["e_1".into()]).unwrap();
        let s = sheaf.directed_path_to_section(&p, true).unwrap();
        assert_eq!(s.vertex(&"v_S".into()), Some(&chosen("e_1", 0)));
        assert_eq!(s.edge(&"e_1".into()), Some(&StalkValue::Dist(int(1))));
        assert_eq!(s.vertex(&"v_T".into()), Some(&chosen("e_1", 1)));
        assert!(sheaf.is_global_section(&s).unwrap());
    }

    #[test]
    fn paths_must_start_at_the_source() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let p = g.path_from_edges(&"v_3".into(), &["e_4".into()]).unwrap();
        assert_eq!(
            sheaf.directed_path_to_section(&p, false).unwrap_err(),
            DistanceSheafError::PathDoesNotStartAtSource
        );
    }

    #[test]
    fn dangling_paths_pick_the_smallest_outgoing_edge() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let p = g.path_from_edges(&"v_S".into(), &["e_2".into()]).unwrap();
        let s = sheaf.directed_path_to_section(&p, false).unwrap();
        // v_3's outgoing slot is a placeholder: its smallest other edge.
        assert_eq!(s.vertex(&"v_3".into()), Some(&ordered("e_2", "e_4", 1)));
        assert!(sheaf.is_section(&s).unwrap());
        assert_eq!(
            sheaf.directed_path_to_section(&p, true).unwrap_err(),
            DistanceSheafError::NotSourceToSink
        );

        // The zero-length path at the source chooses its smallest edge.
        let trivial = Path::trivial("v_S".into());
        let s0 = sheaf.directed_path_to_section(&trivial, false).unwrap();
        assert_eq!(s0.vertex(&"v_S".into()), Some(&chosen("e_1", 0)));
        assert_eq!(s0.len(), 1);
    }

    #[test]
    fn global_sections_never_loop() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let p = g.path_from_edges(&"v_S".into(), &["e_1".into()]).unwrap();
        let s = sheaf.directed_path_to_section(&p, true).unwrap();
        assert!(sheaf.verify_no_active_cycle(&s).unwrap());
        assert_eq!(
            sheaf.verify_no_active_cycle(&Assignment::new()).unwrap_err(),
            DistanceSheafError::NotGlobalSection
        );

        let single = single_edge();
        let single_sheaf = DistancePathSheaf::new(&single);
        let q = single.path_from_edges(&"v_S".into(), &["e".into()]).unwrap();
        let unique = single_sheaf.directed_path_to_section(&q, true).unwrap();
        assert!(single_sheaf.verify_no_active_cycle(&unique).unwrap());
    }

    #[test]
    fn active_path_walks_back_out() {
        let g = ladder();
        let sheaf = DistancePathSheaf::new(&g);
        let p = g
            .path_from_edges(&"v_S".into(), &["e_2".into(), "e_4".into(), "e_3".into()])
            .unwrap();
        for make_global in [false, true] {
            let s = sheaf.directed_path_to_section(&p, make_global).unwrap();
            assert_eq!(sheaf.active_path(&s).unwrap(), p);
        }
        // A tentative section ends where its domain does.
        let partial = g.path_from_edges(&"v_S".into(), &["e_2".into()]).unwrap();
        let s = sheaf.directed_path_to_section(&partial, false).unwrap();
        assert_eq!(sheaf.active_path(&s).unwrap(), partial);
        assert_eq!(
            sheaf.active_path(&Assignment::new()).unwrap_err(),
            DistanceSheafError::SourceUnassigned
        );
    }
}

impl Sheaf for DistancePathSheaf<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn stalk_check(&self, cell: &Cell, value: &StalkValue) -> bool {
        match cell {
            Cell::Vertex(v) => {
                let Ok(incident) = self.graph.incident_edges(v) else {
                    return false;
                };
                if v == self.graph.source() {
                    matches!(value, StalkValue::ChosenEdgeWithDist(e, d)
                        if incident.contains(e) && d.is_zero())
                } else if v == self.graph.sink() {
                    matches!(value, StalkValue::ChosenEdgeWithDist(e, d)
                        if incident.contains(e) && *d > Rational::zero())
                } else {
                    match value {
                        StalkValue::Bottom => true,
                        StalkValue::OrderedPairWithDist { incoming, outgoing, dist } => {
                            incoming != outgoing
                                && incident.contains(incoming)
                                && incident.contains(outgoing)
                                && *dist > Rational::zero()
                        }
                        _ => false,
                    }
                }
            }
            Cell::Edge(e) => {
                self.graph.edge(e).is_some()
                    && match value {
                        StalkValue::Bottom => true,
                        StalkValue::Dist(d) => *d > Rational::zero(),
                        _ => false,
                    }
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
        let weight = || self.graph.edge(e).expect("checked incident").weight().clone();
        Ok(match value {
            StalkValue::ChosenEdgeWithDist(chosen, dist) if chosen == e => {
                if v == self.graph.source() {
                    StalkValue::Dist(weight())
                } else {
                    StalkValue::Dist(dist.clone())
                }
            }
            StalkValue::OrderedPairWithDist { incoming, dist, .. } if incoming == e => {
                StalkValue::Dist(dist.clone())
            }
            StalkValue::OrderedPairWithDist { outgoing, dist, .. } if outgoing == e => {
                StalkValue::Dist(dist.clone() + weight())
            }
            _ => StalkValue::Bottom,
        })
    }
}
