//! The forgetful morphism from the distance path sheaf to the path sheaf:
//! per-cell maps that drop the numeric component, turning chosen edges into
//! chosen edges, ordered pairs into unordered pairs, and distances into
//! plain activation.
//!
//! A sheaf morphism must commute with restriction on every incident
//! vertex/edge pair; [`SheafMorphism::check_naturality`] verifies those
//! squares, and [`naturality_violations`] exposes the same check for an
//! arbitrary component map so tests can confirm it catches corruption.

use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::distance_sheaf::DistancePathSheaf;
use crate::graph::{EdgeId, VertexId};
use crate::path_sheaf::PathSheaf;
use crate::rational::Rational;
use crate::sheaf::{Assignment, Cell, EdgePair, Sheaf, SheafError, StalkValue};

/// Failures of morphism operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("the two sheaves live over different graphs")]
    GraphMismatch,
    #[error("assignment is not a section of the source sheaf")]
    NotASection,
    #[error("value is not in the source-sheaf stalk over `{cell}`")]
    StalkMismatch { cell: Cell },
    #[error("naturality probe distances must be strictly positive")]
    InvalidProbe,
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

/// One failed naturality square: restricting then mapping disagrees with
/// mapping then restricting for this vertex value over this edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityViolation {
    pub vertex: VertexId,
    pub edge: EdgeId,
    pub value: StalkValue,
}

/// The forgetful morphism from [`DistancePathSheaf`] to [`PathSheaf`] over
/// one shared graph.
#[derive(Debug, Clone, Copy)]
pub struct SheafMorphism<'a, 'g> {
    source: &'a DistancePathSheaf<'g>,
    target: &'a PathSheaf<'g>,
}

impl<'a, 'g> SheafMorphism<'a, 'g> {
    /// Errors unless both sheaves are built over the same graph.
    pub fn forgetful(
        source: &'a DistancePathSheaf<'g>,
        target: &'a PathSheaf<'g>,
    ) -> Result<Self, MorphismError> {
        if source.graph() != target.graph() {
            return Err(MorphismError::GraphMismatch);
        }
        Ok(Self { source, target })
    }

    pub fn source_sheaf(&self) -> &DistancePathSheaf<'g> {
        self.source
    }

    pub fn target_sheaf(&self) -> &PathSheaf<'g> {
        self.target
    }

    /// The per-cell component map: drops the numeric data and forgets the
    /// order of edge pairs. Errors if `value` is not in the source-sheaf
    /// stalk over `cell`.
    pub fn component(
        &self,
        cell: &Cell,
        value: &StalkValue,
    ) -> Result<StalkValue, MorphismError> {
        if !self.source.stalk_check(cell, value) {
            return Err(MorphismError::StalkMismatch { cell: cell.clone() });
        }
        Ok(match value {
            StalkValue::Bottom => StalkValue::Bottom,
            StalkValue::ChosenEdgeWithDist(e, _) => StalkValue::ChosenEdge(e.clone()),
            StalkValue::OrderedPairWithDist { incoming, outgoing, .. } => {
                StalkValue::EdgePair(
                    EdgePair::new(incoming.clone(), outgoing.clone())
                        .expect("stalk members have distinct edges"),
                )
            }
            StalkValue::Dist(_) => StalkValue::Top,
            _ => unreachable!("stalk_check admits no other variants"),
        })
    }

    /// Applies the component maps cell-wise to a local section of the
    /// distance sheaf; the image is a local section of the path sheaf on
    /// the same domain.
    pub fn push_section(&self, s: &Assignment) -> Result<Assignment, MorphismError> {
        if !self.source.is_section(s)? {
            return Err(MorphismError::NotASection);
        }
        let mut out = Assignment::new();
        for (cell, value) in s.iter() {
            let mapped = self.component(&cell, value)?;
            out.insert(cell, mapped);
        }
        Ok(out)
    }

    /// Checks every naturality square of this morphism. Edge-pair structure
    /// is covered exhaustively; the distance coordinate is sampled at
    /// `probe_dists` (each strictly positive). The expected result is an
    /// empty list.
    pub fn check_naturality(
        &self,
        probe_dists: &[Rational],
    ) -> Result<Vec<NaturalityViolation>, MorphismError> {
        naturality_violations(self.source, self.target, probe_dists, |cell, value| {
            self.component(cell, value)
        })
    }
}

/// Verifies the naturality squares of an arbitrary component map from the
/// distance sheaf to the path sheaf: for every incident vertex/edge pair
/// and every sampled vertex value, mapping after restricting must equal
/// restricting after mapping. Returns the failing triples.
pub fn naturality_violations<F>(
    source: &DistancePathSheaf<'_>,
    target: &PathSheaf<'_>,
    probe_dists: &[Rational],
    component: F,
) -> Result<Vec<NaturalityViolation>, MorphismError>
where
    F: Fn(&Cell, &StalkValue) -> Result<StalkValue, MorphismError>,
{
    if source.graph() != target.graph() {
        return Err(MorphismError::GraphMismatch);
    }
    if probe_dists.iter().any(|d| *d <= Rational::zero()) {
        return Err(MorphismError::InvalidProbe);
    }
    let graph = source.graph();
    let mut violations = Vec::new();
    for v in graph.vertices() {
        for value in sample_vertex_stalk(source, v, probe_dists) {
            let vertex_cell = Cell::Vertex(v.clone());
            let mapped_vertex = component(&vertex_cell, &value)?;
            for e in graph.incident_edges(v).expect("known vertex") {
                let edge_cell = Cell::Edge(e.clone());
                let restricted = source.restrict(v, e, &value)?;
                let through_source = component(&edge_cell, &restricted)?;
                let through_target = target.restrict(v, e, &mapped_vertex)?;
                if through_source != through_target {
                    violations.push(NaturalityViolation {
                        vertex: v.clone(),
                        edge: e.clone(),
                        value: value.clone(),
                    });
                }
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::testutil::{ladder, pair, single_edge, upper_path_section};

    fn sheaves(graph: &crate::graph::Graph) -> (DistancePathSheaf<'_>, PathSheaf<'_>) {
        (DistancePathSheaf::new(graph), PathSheaf::new(graph))
    }

    #[test]
    fn components_forget_the_numbers() {
        let g = ladder();
        let (dps, ps) = sheaves(&g);
        let phi = SheafMorphism::forgetful(&dps, &ps).unwrap();
        assert_eq!(
            phi.component(
                &Cell::vertex("v_3"),
                &StalkValue::OrderedPairWithDist {
                    incoming: "e_2".into(),
                    outgoing: "e_4".into(),
                    dist: int(1),
                },
            )
            .unwrap(),
            pair("e_2", "e_4")
        );
        assert_eq!(
            phi.component(&Cell::edge("e_4"), &StalkValue::Dist(int(2))).unwrap(),
            StalkValue::Top
        );
        assert_eq!(
            phi.component(&Cell::vertex("v_4"), &StalkValue::Bottom).unwrap(),
            StalkValue::Bottom
        );
        assert_eq!(
            phi.component(
                &Cell::vertex("v_S"),
                &StalkValue::ChosenEdgeWithDist("e_1".into(), int(0)),
            )
            .unwrap(),
            StalkValue::ChosenEdge("e_1".into())
        );
        // Values outside the source stalk are refused.
        assert_eq!(
            phi.component(&Cell::vertex("v_3"), &StalkValue::Top).unwrap_err(),
            MorphismError::StalkMismatch { cell: Cell::vertex("v_3") }
        );
    }

    #[test]
    fn the_morphism_requires_one_shared_graph() {
        let g = ladder();
        let other = single_edge();
        let dps = DistancePathSheaf::new(&g);
        let ps = PathSheaf::new(&other);
        assert_eq!(
            SheafMorphism::forgetful(&dps, &ps).unwrap_err(),
            MorphismError::GraphMismatch
        );
    }

    #[test]
    fn naturality_squares_commute() {
        // Both composites send a vertex value to active exactly on the pair
        // of edges it names and to inactive elsewhere, independently of the
        // numeric component; a single positive probe per structural case
        // therefore already covers the infinite stalk. Several are used
        // anyway.
        for g in [ladder(), single_edge()] {
            let (dps, ps) = sheaves(&g);
            let phi = SheafMorphism::forgetful(&dps, &ps).unwrap();
            let violations =
                phi.check_naturality(&[int(1), ratio(1, 2), int(7)]).unwrap();
            assert!(violations.is_empty());
        }
    }

    #[test]
    fn probes_must_be_positive() {
        let g = ladder();
        let (dps, ps) = sheaves(&g);
        let phi = SheafMorphism::forgetful(&dps, &ps).unwrap();
        assert_eq!(
            phi.check_naturality(&[int(0)]).unwrap_err(),
            MorphismError::InvalidProbe
        );
    }

    #[test]
    fn a_corrupted_edge_component_fails_every_active_square() {
        let g = ladder();
        let (dps, ps) = sheaves(&g);
        let phi = SheafMorphism::forgetful(&dps, &ps).unwrap();
        let corrupted = |cell: &Cell, value: &StalkValue| match cell {
            Cell::Edge(_) => Ok(StalkValue::Bottom),
            _ => phi.component(cell, value),
        };
        let violations =
            naturality_violations(&dps, &ps, &[int(1)], corrupted).unwrap();
        // One violation per (vertex value, incident edge) pair the value
        // activates: 1 edge per chosen-edge value at the two endpoints
        // (2 + 2 with one probe), 2 edges per ordered pair elsewhere
        // (6 pairs at the degree-3 vertices, 2 at the degree-2 ones).
        assert_eq!(violations.len(), 2 + 2 + 12 + 12 + 4 + 4);
        assert!(violations.iter().all(|v| {
            dps.restrict(&v.vertex, &v.edge, &v.value).unwrap() != StalkValue::Bottom
        }));
    }

    #[test]
    fn sections_push_forward_cell_by_cell() {
        let g = ladder();
        let (dps, ps) = sheaves(&g);
        let phi = SheafMorphism::forgetful(&dps, &ps).unwrap();

        let upper = g
            .path_from_edges(&"v_S".into(), &["e_2".into(), "e_4".into(), "e_3".into()])
            .unwrap();
        let s = dps.directed_path_to_section(&upper, true).unwrap();
        assert_eq!(phi.push_section(&s).unwrap(), upper_path_section());

        let direct = g.path_from_edges(&"v_S".into(), &["e_1".into()]).unwrap();
        let s = dps.directed_path_to_section(&direct, true).unwrap();
        let pushed = phi.push_section(&s).unwrap();
        assert!(ps.is_global_section(&pushed).unwrap());
        assert_eq!(pushed.edge(&"e_1".into()), Some(&StalkValue::Top));
        assert_eq!(pushed.edge(&"e_2".into()), Some(&StalkValue::Bottom));

        assert_eq!(phi.push_section(&Assignment::new()).unwrap(), Assignment::new());
    }

    #[test]
    fn push_section_requires_a_section() {
        let g = ladder();
        let (dps, ps) = sheaves(&g);
        let phi = SheafMorphism::forgetful(&dps, &ps).unwrap();
        let broken = Assignment::new()
            .with(Cell::vertex("v_S"), StalkValue::ChosenEdgeWithDist("e_1".into(), int(0)))
            .with(Cell::edge("e_1"), StalkValue::Dist(int(9)));
        assert_eq!(phi.push_section(&broken).unwrap_err(), MorphismError::NotASection);
    }
}

/// All distance-sheaf values over `v` up to the distance coordinate, which
/// runs over `probes`: every chosen edge at the source and sink, and every
/// ordered pair of distinct incident edges (plus inactive) elsewhere.
fn sample_vertex_stalk(
    sheaf: &DistancePathSheaf<'_>,
    v: &VertexId,
    probes: &[Rational],
) -> Vec<StalkValue> {
    let graph = sheaf.graph();
    let incident = graph.incident_edges(v).expect("known vertex");
    let mut values = Vec::new();
    if v == graph.source() {
        for e in incident {
            values.push(StalkValue::ChosenEdgeWithDist(e.clone(), Rational::zero()));
        }
    } else if v == graph.sink() {
        for e in incident {
            for probe in probes {
                values.push(StalkValue::ChosenEdgeWithDist(e.clone(), probe.clone()));
            }
        }
    } else {
        values.push(StalkValue::Bottom);
        for incoming in incident {
            for outgoing in incident {
                if incoming == outgoing {
                    continue;
                }
                for probe in probes {
                    values.push(StalkValue::OrderedPairWithDist {
                        incoming: incoming.clone(),
                        outgoing: outgoing.clone(),
                        dist: probe.clone(),
                    });
                }
            }
        }
    }
    values
}
