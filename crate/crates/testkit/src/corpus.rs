//! Seeded random graph corpora.
//!
//! All generators keep degrees small (at most 4) so exhaustive section
//! enumeration stays cheap, and every graph satisfies the degree rules by
//! construction: interior vertices get patched up to degree 2, and
//! components never contain parallel edges or self-loops.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sheafpath_core::rational::{ratio, Rational};
use sheafpath_core::sheaf::{Assignment, Cell, EdgePair, StalkValue};
use sheafpath_core::{EdgeSpec, Graph, VertexId};

const MAX_DEGREE: usize = 4;

/// The seeded generator all corpora use.
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

/// A random assignment over the path sheaf with every value stalk-valid;
/// deliberately free to violate the section condition so both outcomes of
/// the section check get exercised.
pub fn random_path_assignment(rng: &mut TestRng, graph: &Graph) -> Assignment {
    let mut s = Assignment::new();
    for v in graph.vertices() {
        if !rng.random_bool(0.8) {
            continue;
        }
        let incident: Vec<_> = graph.incident_edges(v).unwrap().iter().cloned().collect();
        let value = if graph.is_source_or_sink(v) {
            StalkValue::ChosenEdge(incident[rng.random_range(0..incident.len())].clone())
        } else if rng.random_bool(0.3) {
            StalkValue::Bottom
        } else {
            let a = rng.random_range(0..incident.len());
            let mut b = a;
            while b == a {
                b = rng.random_range(0..incident.len());
            }
            StalkValue::EdgePair(
                EdgePair::new(incident[a].clone(), incident[b].clone()).expect("distinct"),
            )
        };
        s.insert(Cell::Vertex(v.clone()), value);
    }
    for e in graph.edges() {
        if !rng.random_bool(0.8) {
            continue;
        }
        let value = if rng.random_bool(0.5) { StalkValue::Top } else { StalkValue::Bottom };
        s.insert(Cell::Edge(e.id().clone()), value);
    }
    s
}

/// A rational weight in `(0, 10]` with a small denominator.
pub fn random_weight(rng: &mut ChaCha8Rng) -> Rational {
    let denom = rng.random_range(1..=6);
    let numer = rng.random_range(1..=10 * denom);
    ratio(numer, denom)
}

/// Degree-valid graphs of at most 8 vertices for exhaustive enumeration;
/// roughly a quarter also carry a disjoint 3- or 4-cycle component away
/// from source and sink, so sections with active far cycles show up.
pub fn small_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let extra_cycle = rng.random_bool(0.25);
            let n = rng.random_range(2..=if extra_cycle { 4 } else { 8 });
            random_graph(&mut rng, n, extra_cycle)
        })
        .collect()
}

/// Connected weighted graphs of at most 12 vertices for solver comparison.
pub fn solver_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(2..=12);
            random_graph(&mut rng, n, false)
        })
        .collect()
}

/// Graphs whose source and sink lie in different components (so there is
/// no source-to-sink path), small enough to enumerate.
pub fn disconnected_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_disconnected(&mut rng)).collect()
}

/// One connected degree-valid graph on `n` vertices, optionally with a
/// disjoint cycle component appended.
fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra_cycle: bool) -> Graph {
    let mut builder = Builder::new();
    let core: Vec<usize> = (0..n).map(|_| builder.add_vertex()).collect();
    builder.connect_spanning_tree(rng, &core);
    let extra = rng.random_range(0..=3);
    builder.add_extra_edges(rng, &core, extra);
    let source = core[rng.random_range(0..core.len())];
    let mut sink = source;
    while sink == source {
        sink = core[rng.random_range(0..core.len())];
    }
    builder.patch_degrees(rng, &core, source, sink);
    if extra_cycle {
        let len = rng.random_range(3..=4);
        let cycle: Vec<usize> = (0..len).map(|_| builder.add_vertex()).collect();
        for i in 0..len {
            builder.add_edge(rng, cycle[i], cycle[(i + 1) % len]);
        }
    }
    builder.build(source, sink)
}

/// Two disjoint blobs, each a cycle of 3 to 5 vertices with optional
/// chords; the source lives in the first, the sink in the second.
fn random_disconnected(rng: &mut ChaCha8Rng) -> Graph {
    let mut builder = Builder::new();
    let blob = |builder: &mut Builder, rng: &mut ChaCha8Rng| -> Vec<usize> {
        let len = rng.random_range(3..=5);
        let vertices: Vec<usize> = (0..len).map(|_| builder.add_vertex()).collect();
        for i in 0..len {
            builder.add_edge(rng, vertices[i], vertices[(i + 1) % len]);
        }
        if len >= 4 && rng.random_bool(0.4) {
            builder.add_edge(rng, vertices[0], vertices[2]);
        }
        vertices
    };
    let first = blob(&mut builder, rng);
    let second = blob(&mut builder, rng);
    builder.build(first[0], second[0])
}

struct Builder {
    vertex_count: usize,
    edges: Vec<(usize, usize, Rational)>,
    degree: Vec<usize>,
}

impl Builder {
    fn new() -> Self {
        Self { vertex_count: 0, edges: Vec::new(), degree: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.degree.push(0);
        self.vertex_count - 1
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.iter().any(|(x, y, _)| (*x, *y) == key)
    }

    fn add_edge(&mut self, rng: &mut ChaCha8Rng, a: usize, b: usize) {
        assert_ne!(a, b);
        let key = (a.min(b), a.max(b));
        self.edges.push((key.0, key.1, random_weight(rng)));
        self.degree[a] += 1;
        self.degree[b] += 1;
    }

    fn connect_spanning_tree(&mut self, rng: &mut ChaCha8Rng, vertices: &[usize]) {
        for i in 1..vertices.len() {
            // Attach to any earlier vertex with spare degree; one always
            // exists because a saturated tree prefix has spare leaves.
            let candidates: Vec<usize> = vertices[..i]
                .iter()
                .copied()
                .filter(|v| self.degree[*v] < MAX_DEGREE)
                .collect();
            let anchor = candidates[rng.random_range(0..candidates.len())];
            self.add_edge(rng, vertices[i], anchor);
        }
    }

    fn add_extra_edges(&mut self, rng: &mut ChaCha8Rng, vertices: &[usize], tries: usize) {
        for _ in 0..tries {
            if vertices.len() < 2 {
                return;
            }
            let a = vertices[rng.random_range(0..vertices.len())];
            let b = vertices[rng.random_range(0..vertices.len())];
            if a != b
                && !self.adjacent(a, b)
                && self.degree[a] < MAX_DEGREE
                && self.degree[b] < MAX_DEGREE
            {
                self.add_edge(rng, a, b);
            }
        }
    }

    /// Raises every interior vertex to degree 2 by linking it to some
    /// non-adjacent vertex (allowed to exceed MAX_DEGREE as a last resort;
    /// a complete neighbourhood already implies degree 2 or more).
    fn patch_degrees(
        &mut self,
        rng: &mut ChaCha8Rng,
        vertices: &[usize],
        source: usize,
        sink: usize,
    ) {
        for &v in vertices {
            if v == source || v == sink {
                continue;
            }
            while self.degree[v] < 2 {
                let mut candidates: Vec<usize> = vertices
                    .iter()
                    .copied()
                    .filter(|w| *w != v && !self.adjacent(v, *w) && self.degree[*w] < MAX_DEGREE)
                    .collect();
                if candidates.is_empty() {
                    candidates = vertices
                        .iter()
                        .copied()
                        .filter(|w| *w != v && !self.adjacent(v, *w))
                        .collect();
                }
                let w = candidates[rng.random_range(0..candidates.len())];
                self.add_edge(rng, v, w);
            }
        }
    }

    fn build(self, source: usize, sink: usize) -> Graph {
        let name = |i: usize| format!("v{:02}", i + 1);
        let vertices = (0..self.vertex_count).map(|i| VertexId::new(name(i)));
        let edges = self.edges.iter().enumerate().map(|(i, (a, b, w))| {
            EdgeSpec::new(format!("e{:02}", i + 1), name(*a), name(*b), w.clone())
        });
        Graph::build(vertices, edges, VertexId::new(name(source)), VertexId::new(name(sink)))
            .expect("generated graphs satisfy the construction rules")
    }
}
