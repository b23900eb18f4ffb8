//! Generic cellular-sheaf machinery shared by both concrete sheaves: cells,
//! stalk values, partial assignments, and the section condition.
//!
//! A sheaf here assigns a set of admissible values (a stalk) to every vertex
//! and edge of a graph, plus a restriction map from each vertex stalk to the
//! stalk of every incident edge. An [`Assignment`] picks values over part of
//! the graph; it is a *section* when every restriction map defined inside
//! its domain is respected, and a *global* section when it also covers
//! every cell. Stalks may be infinite (the distance sheaf carries arbitrary
//! rationals), so the framework only ever checks membership and evaluates
//! restrictions; it never enumerates a stalk.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::rational::{format_rational, Rational};

/// A cell of the underlying graph: one vertex or one edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl Cell {
    pub fn vertex(id: impl Into<VertexId>) -> Self {
        Cell::Vertex(id.into())
    }

    pub fn edge(id: impl Into<EdgeId>) -> Self {
        Cell::Edge(id.into())
    }

    pub fn id(&self) -> &str {
        match self {
            Cell::Vertex(v) => v.as_str(),
            Cell::Edge(e) => e.as_str(),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// An unordered pair of two distinct edges, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePair {
    first: EdgeId,
    second: EdgeId,
}

impl EdgePair {
    /// `None` when the edges coincide.
    pub fn new(a: EdgeId, b: EdgeId) -> Option<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(Self { first: a, second: b }),
            core::cmp::Ordering::Equal => None,
            core::cmp::Ordering::Greater => Some(Self { first: b, second: a }),
        }
    }

    pub fn first(&self) -> &EdgeId {
        &self.first
    }

    pub fn second(&self) -> &EdgeId {
        &self.second
    }

    pub fn contains(&self, e: &EdgeId) -> bool {
        self.first == *e || self.second == *e
    }

    /// The member other than `e`, or `None` if `e` is not a member.
    pub fn other(&self, e: &EdgeId) -> Option<&EdgeId> {
        if self.first == *e {
            Some(&self.second)
        } else if self.second == *e {
            Some(&self.first)
        } else {
            None
        }
    }
}

/// One value over one cell. A single union serves both sheaves; which
/// variants are admissible over which cell is the owning sheaf's
/// [`Sheaf::stalk_check`] decision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum StalkValue {
    /// Inactive vertex or edge.
    Bottom,
    /// Active edge (path sheaf).
    Top,
    /// The single active edge at a source or sink vertex (path sheaf).
    ChosenEdge(EdgeId),
    /// The two active edges at an interior vertex (path sheaf).
    EdgePair(EdgePair),
    /// Active edge plus distance from the source at a source or sink vertex
    /// (distance sheaf); the source carries distance zero exactly.
    ChosenEdgeWithDist(EdgeId, Rational),
    /// Incoming and outgoing active edges plus the distance accumulated on
    /// arrival at an interior vertex (distance sheaf).
    OrderedPairWithDist {
        incoming: EdgeId,
        outgoing: EdgeId,
        dist: Rational,
    },
    /// Distance carried by an active edge (distance sheaf).
    Dist(Rational),
}

impl fmt::Display for StalkValue {
    /// The textual value grammar used by section documents: `bot`, `top`,
    /// a bare edge id, `[a,b]`, `(e,x)`, `(a,b,x)`, or a bare rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StalkValue::Bottom => f.write_str("bot"),
            StalkValue::Top => f.write_str("top"),
            StalkValue::ChosenEdge(e) => f.write_str(e.as_str()),
            StalkValue::EdgePair(p) => write!(f, "[{},{}]", p.first(), p.second()),
            StalkValue::ChosenEdgeWithDist(e, d) => {
                write!(f, "({},{})", e, format_rational(d))
            }
            StalkValue::OrderedPairWithDist { incoming, outgoing, dist } => {
                write!(f, "({},{},{})", incoming, outgoing, format_rational(dist))
            }
            StalkValue::Dist(d) => f.write_str(&format_rational(d)),
        }
    }
}

/// A partial map from cells to stalk values.
///
/// Assignments are plain values: extension copies, it never mutates, so a
/// search can hold many tentative sections at once without coordination.
/// Insertion itself performs no stalk checking; membership is enforced
/// wherever a sheaf operation receives the assignment.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assignment {
    vertices: BTreeMap<VertexId, StalkValue>,
    edges: BTreeMap<EdgeId, StalkValue>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, cell: &Cell) -> Option<&StalkValue> {
        match cell {
            Cell::Vertex(v) => self.vertices.get(v),
            Cell::Edge(e) => self.edges.get(e),
        }
    }

    pub fn vertex(&self, v: &VertexId) -> Option<&StalkValue> {
        self.vertices.get(v)
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&StalkValue> {
        self.edges.get(e)
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.get(cell).is_some()
    }

    /// Unchecked insert; replaces any existing value.
    pub fn insert(&mut self, cell: Cell, value: StalkValue) -> Option<StalkValue> {
        match cell {
            Cell::Vertex(v) => self.vertices.insert(v, value),
            Cell::Edge(e) => self.edges.insert(e, value),
        }
    }

    /// Builder-style [`Assignment::insert`].
    pub fn with(mut self, cell: Cell, value: StalkValue) -> Self {
        self.insert(cell, value);
        self
    }

    /// Number of assigned cells.
    pub fn len(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn assigned_vertices(&self) -> impl Iterator<Item = (&VertexId, &StalkValue)> {
        self.vertices.iter()
    }

    pub fn assigned_edges(&self) -> impl Iterator<Item = (&EdgeId, &StalkValue)> {
        self.edges.iter()
    }

    /// Domain and values in canonical order: vertices first, then edges,
    /// each sorted by id.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, &StalkValue)> {
        self.vertices
            .iter()
            .map(|(v, value)| (Cell::Vertex(v.clone()), value))
            .chain(self.edges.iter().map(|(e, value)| (Cell::Edge(e.clone()), value)))
    }

    /// The sub-assignment over the cells `keep` accepts.
    pub fn restrict_domain(&self, mut keep: impl FnMut(&Cell) -> bool) -> Assignment {
        let mut out = Assignment::new();
        for (cell, value) in self.iter() {
            if keep(&cell) {
                out.insert(cell, value.clone());
            }
        }
        out
    }
}

impl FromIterator<(Cell, StalkValue)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (Cell, StalkValue)>>(iter: T) -> Self {
        let mut out = Assignment::new();
        for (cell, value) in iter {
            out.insert(cell, value);
        }
        out
    }
}

/// Failures of the generic section machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    /// A value is not a member of the stalk over its cell (this includes
    /// cells that do not exist in the graph at all).
    #[error("value is not in the stalk over `{cell}`")]
    StalkMismatch { cell: Cell },
    /// A restriction map was requested for a non-incident vertex/edge pair.
    #[error("vertex `{vertex}` is not an endpoint of edge `{edge}`")]
    NotIncident { vertex: VertexId, edge: EdgeId },
    /// [`Sheaf::extend`] refuses to overwrite.
    #[error("cell `{cell}` is already assigned")]
    CellAlreadyAssigned { cell: Cell },
}

/// Result of [`Sheaf::extend`]: the grown assignment plus whether it still
/// satisfies the section condition on its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub assignment: Assignment,
    pub consistent: bool,
}

/// A concrete cellular sheaf on a concrete graph: a stalk membership test
/// plus restriction-map evaluation. Both must be pure; everything else is
/// provided generically.
pub trait Sheaf {
    fn graph(&self) -> &Graph;

    /// Is `value` a member of the stalk over `cell`?
    fn stalk_check(&self, cell: &Cell, value: &StalkValue) -> bool;

    /// Evaluates the restriction map from vertex `v` to incident edge `e`
    /// on `value`. Defined exactly when `v` is an endpoint of `e` and
    /// `value` lies in the stalk over `v`; the output lies in the stalk
    /// over `e`.
    fn restrict(
        &self,
        v: &VertexId,
        e: &EdgeId,
        value: &StalkValue,
    ) -> Result<StalkValue, SheafError>;

    /// True iff `a` respects every restriction map between cells of its
    /// domain. Errors if any stored value fails [`Sheaf::stalk_check`].
    fn is_section(&self, a: &Assignment) -> Result<bool, SheafError> {
        self.check_values(a)?;
        for (v, value) in a.assigned_vertices() {
            for e in self.graph().incident_edges(v).expect("checked vertex") {
                if let Some(edge_value) = a.edge(e) {
                    if self.restrict(v, e, value)? != *edge_value {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// [`Sheaf::is_section`] plus the requirement that the domain is every
    /// cell of the graph.
    fn is_global_section(&self, a: &Assignment) -> Result<bool, SheafError> {
        let graph = self.graph();
        let covers = a.assigned_vertices().count() == graph.vertex_count()
            && a.assigned_edges().count() == graph.edge_count()
            && graph.vertices().all(|v| a.vertex(v).is_some())
            && graph.edges().all(|e| a.edge(e.id()).is_some());
        Ok(covers && self.is_section(a)?)
    }

    /// Grows `a` by one cell without touching the original, reporting
    /// (without failing) whether the result is still a section.
    fn extend(
        &self,
        a: &Assignment,
        cell: Cell,
        value: StalkValue,
    ) -> Result<Extension, SheafError> {
        if a.contains(&cell) {
            return Err(SheafError::CellAlreadyAssigned { cell });
        }
        if !self.stalk_check(&cell, &value) {
            return Err(SheafError::StalkMismatch { cell });
        }
        let mut assignment = a.clone();
        assignment.insert(cell, value);
        let consistent = self.is_section(&assignment)?;
        Ok(Extension { assignment, consistent })
    }

    /// Every incident `(vertex, edge)` pair inside the domain whose
    /// restriction equality fails, in vertex-major sorted order. Empty iff
    /// [`Sheaf::is_section`].
    fn inconsistent_pairs(
        &self,
        a: &Assignment,
    ) -> Result<Vec<(VertexId, EdgeId)>, SheafError> {
        self.check_values(a)?;
        let mut out = Vec::new();
        for (v, value) in a.assigned_vertices() {
            for e in self.graph().incident_edges(v).expect("checked vertex") {
                if let Some(edge_value) = a.edge(e) {
                    if self.restrict(v, e, value)? != *edge_value {
                        out.push((v.clone(), e.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Errors with [`SheafError::StalkMismatch`] unless every stored value
    /// is a member of the stalk over its cell.
    fn check_values(&self, a: &Assignment) -> Result<(), SheafError> {
        for (cell, value) in a.iter() {
            if !self.stalk_check(&cell, value) {
                return Err(SheafError::StalkMismatch { cell });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_sheaf::PathSheaf;
    use crate::testutil::{ladder, pair, upper_path_section};

    #[test]
    fn edge_pairs_are_unordered_and_distinct() {
        let p = EdgePair::new("b".into(), "a".into()).unwrap();
        assert_eq!(p, EdgePair::new("a".into(), "b".into()).unwrap());
        assert_eq!(p.first().as_str(), "a");
        assert!(p.contains(&"b".into()));
        assert_eq!(p.other(&"a".into()), Some(&"b".into()));
        assert_eq!(p.other(&"c".into()), None);
        assert!(EdgePair::new("a".into(), "a".into()).is_none());
    }

    #[test]
    fn the_ladder_section_is_global() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let s = upper_path_section();
        assert!(sheaf.is_section(&s).unwrap());
        assert!(sheaf.is_global_section(&s).unwrap());
    }

    #[test]
    fn breaking_one_edge_value_breaks_the_section() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let mut s = upper_path_section();
        s.insert(Cell::edge("e_4"), StalkValue::Bottom);
        assert!(!sheaf.is_section(&s).unwrap());
        assert!(!sheaf.is_global_section(&s).unwrap());
        assert_eq!(
            sheaf.inconsistent_pairs(&s).unwrap(),
            vec![
                ("v_3".into(), "e_4".into()),
                ("v_4".into(), "e_4".into()),
            ]
        );
    }

    #[test]
    fn empty_assignments_are_vacuously_consistent() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let empty = Assignment::new();
        assert!(sheaf.is_section(&empty).unwrap());
        assert!(!sheaf.is_global_section(&empty).unwrap());
        assert!(sheaf.inconsistent_pairs(&empty).unwrap().is_empty());
    }

    #[test]
    fn extend_reports_consistency_without_failing() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let start = Assignment::new()
            .with(Cell::vertex("v_S"), StalkValue::ChosenEdge("e_2".into()))
            .with(Cell::edge("e_2"), StalkValue::Top);

        let good = sheaf
            .extend(&start, Cell::vertex("v_3"), pair("e_2", "e_4"))
            .unwrap();
        assert!(good.consistent);
        assert_eq!(good.assignment.len(), 3);

        // The pair skipping e_2 restricts e_2 to inactive, clashing with the
        // stored activation; the extension exists but is not a section.
        let bad = sheaf
            .extend(&start, Cell::vertex("v_3"), pair("e_4", "e_5"))
            .unwrap();
        assert!(!bad.consistent);

        // Extending the original again proves it was never touched.
        assert_eq!(start.len(), 2);
        assert!(sheaf.is_section(&start).unwrap());
    }

    #[test]
    fn extending_an_empty_assignment_is_vacuous() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let out = sheaf
            .extend(&Assignment::new(), Cell::edge("e_1"), StalkValue::Top)
            .unwrap();
        assert!(out.consistent);
    }

    #[test]
    fn extend_rejects_occupied_cells_and_alien_values() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let start = Assignment::new().with(Cell::edge("e_1"), StalkValue::Top);
        assert_eq!(
            sheaf.extend(&start, Cell::edge("e_1"), StalkValue::Bottom).unwrap_err(),
            SheafError::CellAlreadyAssigned { cell: Cell::edge("e_1") }
        );
        assert_eq!(
            sheaf.extend(&start, Cell::vertex("v_3"), StalkValue::Top).unwrap_err(),
            SheafError::StalkMismatch { cell: Cell::vertex("v_3") }
        );
    }

    #[test]
    fn stalk_mismatches_surface_as_errors_not_false() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let bogus = Assignment::new().with(Cell::vertex("v_3"), StalkValue::Top);
        assert_eq!(
            sheaf.is_section(&bogus).unwrap_err(),
            SheafError::StalkMismatch { cell: Cell::vertex("v_3") }
        );
        let unknown = Assignment::new().with(Cell::vertex("ghost"), StalkValue::Bottom);
        assert!(matches!(
            sheaf.is_section(&unknown).unwrap_err(),
            SheafError::StalkMismatch { .. }
        ));
    }

    #[test]
    fn restriction_to_a_subdomain_keeps_sections_sections() {
        let g = ladder();
        let sheaf = PathSheaf::new(&g);
        let s = upper_path_section();
        let sub = s.restrict_domain(|cell| cell.id() < "v_4");
        assert!(sub.len() < s.len());
        assert!(sheaf.is_section(&sub).unwrap());
    }

    #[test]
    fn assignments_iterate_vertices_before_edges() {
        let s = Assignment::new()
            .with(Cell::edge("e_9"), StalkValue::Top)
            .with(Cell::vertex("z"), StalkValue::Bottom)
            .with(Cell::edge("e_1"), StalkValue::Bottom);
        let order: alloc::vec::Vec<_> =
            s.iter().map(|(cell, _)| alloc::string::ToString::to_string(&cell)).collect();
        assert_eq!(order, ["z", "e_1", "e_9"]);
    }

    #[test]
    fn stalk_values_render_the_document_grammar() {
        use crate::rational::ratio;
        let rendered = |v: StalkValue| alloc::string::ToString::to_string(&v);
        assert_eq!(rendered(StalkValue::Bottom), "bot");
        assert_eq!(rendered(StalkValue::Top), "top");
        assert_eq!(rendered(StalkValue::ChosenEdge("e_2".into())), "e_2");
        assert_eq!(rendered(pair("e_4", "e_2")), "[e_2,e_4]");
        assert_eq!(
            rendered(StalkValue::ChosenEdgeWithDist("e_1".into(), ratio(0, 1))),
            "(e_1,0)"
        );
        assert_eq!(
            rendered(StalkValue::OrderedPairWithDist {
                incoming: "e_2".into(),
                outgoing: "e_4".into(),
                dist: ratio(3, 2),
            }),
            "(e_2,e_4,3/2)"
        );
        assert_eq!(rendered(StalkValue::Dist(ratio(5, 1))), "5");
    }
}
