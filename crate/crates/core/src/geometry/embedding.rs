//! Spatial embeddings with exact coordinates and their exact validity check.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::rational::{
    closed_segments_meet, collinear, cross, dot, is_zero, point_on_segment, sub, to_common_integer_scale, IPoint,
    RationalPoint3,
};
use crate::combinatorics::{complete_graph, Cycle, GraphError, SimpleGraph};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("expected {expected} vertex positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("edge {0}-{1} is not an edge of the graph")]
    UnknownEdge(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A segment of the embedding: `sub`-th piece of edge `edge` (1-based vertex ids).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SegmentLabel {
    pub edge: (usize, usize),
    pub sub: usize,
}

impl std::fmt::Display for SegmentLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}#{}", self.edge.0, self.edge.1, self.sub)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    #[error("vertices {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("vertices {0}, {1}, {2} are collinear")]
    CollinearVertices(usize, usize, usize),
    #[error("segments {0} and {1} meet away from a shared vertex")]
    SegmentsMeet(SegmentLabel, SegmentLabel),
    #[error("vertex {0} lies on segment {1}")]
    VertexOnSegment(usize, SegmentLabel),
    #[error("interior points of edge {0:?} coincide with other points")]
    DegenerateEdge((usize, usize)),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityCertificate {
    pub vertices: usize,
    pub segments: usize,
    pub segment_pairs_checked: usize,
    pub rectilinear: bool,
}

/// Index of a segment inside [`SegmentModel`] together with the direction
/// in which a curve traverses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegRef {
    pub seg: usize,
    pub reversed: bool,
}

/// Integer-scaled geometry: graph vertices are points `0..n`, polyline
/// interiors follow. Every edge is a chain of point ids from its lower to its
/// higher endpoint.
#[derive(Debug, Clone)]
pub struct SegmentModel {
    pub points: Vec<IPoint>,
    pub edge_chains: Vec<Vec<usize>>,
    pub segments: Vec<(usize, usize)>,
    pub segment_edge: Vec<usize>,
    edge_first_segment: Vec<usize>,
}

impl SegmentModel {
    pub fn segment_points(&self, seg: usize) -> (&IPoint, &IPoint) {
        let (a, b) = self.segments[seg];
        (&self.points[a], &self.points[b])
    }

    pub fn share_endpoint(&self, s: usize, t: usize) -> bool {
        let (a, b) = self.segments[s];
        let (c, d) = self.segments[t];
        a == c || a == d || b == c || b == d
    }

    fn edge_segments(&self, edge: usize, reversed: bool) -> impl Iterator<Item = SegRef> + '_ {
        let start = self.edge_first_segment[edge];
        let m = self.edge_chains[edge].len() - 1;
        (0..m).map(move |i| SegRef {
            seg: if reversed { start + m - 1 - i } else { start + i },
            reversed,
        })
    }
}

#[derive(Debug, Clone)]
pub struct SpatialEmbedding {
    graph: SimpleGraph,
    positions: Vec<RationalPoint3>,
    edge_paths: Vec<Vec<RationalPoint3>>,
    model: SegmentModel,
}

impl SpatialEmbedding {
    /// `edge_paths` maps 0-based edges to their interior points, listed from
    /// the lower vertex towards the higher one. Validity is checked separately
    /// by [`validate_embedding`].
    pub fn new(
        graph: SimpleGraph,
        positions: Vec<RationalPoint3>,
        edge_paths: BTreeMap<(usize, usize), Vec<RationalPoint3>>,
    ) -> Result<Self, EmbeddingError> {
        if positions.len() != graph.vertex_count() {
            return Err(EmbeddingError::PositionCount {
                expected: graph.vertex_count(),
                got: positions.len(),
            });
        }
        let mut paths = vec![Vec::new(); graph.edge_count()];
        for ((a, b), pts) in edge_paths {
            let idx = graph
                .edge_index(a, b)
                .ok_or(EmbeddingError::UnknownEdge(a + 1, b + 1))?;
            paths[idx] = if a < b { pts } else { pts.into_iter().rev().collect() };
        }
        let model = build_model(&graph, &positions, &paths);
        Ok(SpatialEmbedding {
            graph,
            positions,
            edge_paths: paths,
            model,
        })
    }

    pub fn rectilinear(graph: SimpleGraph, positions: Vec<RationalPoint3>) -> Result<Self, EmbeddingError> {
        SpatialEmbedding::new(graph, positions, BTreeMap::new())
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn positions(&self) -> &[RationalPoint3] {
        &self.positions
    }

    /// Interior points of the edge with the given index (lower to higher vertex).
    pub fn edge_path(&self, edge: usize) -> &[RationalPoint3] {
        &self.edge_paths[edge]
    }

    pub fn is_rectilinear(&self) -> bool {
        self.edge_paths.iter().all(Vec::is_empty)
    }

    pub fn model(&self) -> &SegmentModel {
        &self.model
    }

    /// The same positions and paths on another graph with the same vertex set,
    /// keeping only paths of edges that survive.
    pub fn restrict_to(&self, graph: SimpleGraph) -> Result<SpatialEmbedding, EmbeddingError> {
        let mut paths = BTreeMap::new();
        for (i, &(a, b)) in self.graph.edges().iter().enumerate() {
            if graph.is_adjacent(a, b) && !self.edge_paths[i].is_empty() {
                paths.insert((a, b), self.edge_paths[i].clone());
            }
        }
        SpatialEmbedding::new(graph, self.positions.clone(), paths)
    }

    /// Segments of the closed curve realizing `cycle`, in traversal order.
    pub fn cycle_segments(&self, cycle: &Cycle) -> Vec<SegRef> {
        let mut out = Vec::new();
        for (a, b) in cycle.oriented_edges() {
            let edge = self
                .graph
                .edge_index(a, b)
                .expect("cycle edges belong to the embedded graph");
            out.extend(self.model.edge_segments(edge, a > b));
        }
        out
    }

    pub fn segment_label(&self, seg: usize) -> SegmentLabel {
        let edge = self.model.segment_edge[seg];
        let (a, b) = self.graph.edges()[edge];
        SegmentLabel {
            edge: (a + 1, b + 1),
            sub: seg - self.model.edge_first_segment[edge],
        }
    }
}

fn build_model(graph: &SimpleGraph, positions: &[RationalPoint3], paths: &[Vec<RationalPoint3>]) -> SegmentModel {
    let all = positions.iter().chain(paths.iter().flatten());
    let points = to_common_integer_scale(all);
    let mut next = positions.len();
    let mut edge_chains = Vec::with_capacity(graph.edge_count());
    let mut segments = Vec::new();
    let mut segment_edge = Vec::new();
    let mut edge_first_segment = Vec::new();
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        let mut chain = vec![a];
        for _ in &paths[e] {
            chain.push(next);
            next += 1;
        }
        chain.push(b);
        edge_first_segment.push(segments.len());
        for w in chain.windows(2) {
            segments.push((w[0], w[1]));
            segment_edge.push(e);
        }
        edge_chains.push(chain);
    }
    SegmentModel {
        points,
        edge_chains,
        segments,
        segment_edge,
        edge_first_segment,
    }
}

/// Vertex `i` (1-based) at `(i, i^2, i^3)` with straight edges.
pub fn moment_curve_embedding(n: usize) -> Result<SpatialEmbedding, EmbeddingError> {
    let graph = complete_graph(n)?;
    SpatialEmbedding::rectilinear(graph, moment_curve_points(n))
}

pub fn moment_curve_points(n: usize) -> Vec<RationalPoint3> {
    (1..=n as i64)
        .map(|t| RationalPoint3::from_ints(t, t * t, t * t * t))
        .collect()
}

/// Exact validity check: distinct points, no three graph vertices collinear,
/// and segments meeting only at shared endpoints without folding back.
pub fn validate_embedding(e: &SpatialEmbedding) -> Result<ValidityCertificate, Violation> {
    let m = &e.model;
    let n = e.graph.vertex_count();
    for i in 0..m.points.len() {
        for j in i + 1..m.points.len() {
            if m.points[i] == m.points[j] {
                if i < n && j < n {
                    return Err(Violation::CoincidentPoints(i + 1, j + 1));
                }
                // j >= n here, so it is an interior point of some edge.
                let edge = m.edge_chains.iter().position(|c| c.contains(&j)).unwrap_or(0);
                let (a, b) = e.graph.edges()[edge];
                return Err(Violation::DegenerateEdge((a + 1, b + 1)));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if collinear(&m.points[a], &m.points[b], &m.points[c]) {
                    return Err(Violation::CollinearVertices(a + 1, b + 1, c + 1));
                }
            }
        }
    }
    let mut pairs = 0usize;
    for s in 0..m.segments.len() {
        for t in s + 1..m.segments.len() {
            pairs += 1;
            let (a, b) = m.segments[s];
            let (c, d) = m.segments[t];
            let meets = if let Some((shared, x, y)) = shared_endpoint((a, b), (c, d)) {
                let p = &m.points[shared];
                let u = sub(&m.points[x], p);
                let v = sub(&m.points[y], p);
                is_zero(&cross(&u, &v)) && dot(&u, &v) > 0.into()
            } else {
                closed_segments_meet(&m.points[a], &m.points[b], &m.points[c], &m.points[d])
            };
            if meets {
                return Err(Violation::SegmentsMeet(e.segment_label(s), e.segment_label(t)));
            }
        }
    }
    // Isolated vertices are not endpoints of any segment and need their own check.
    for v in 0..n {
        for (s, &(a, b)) in m.segments.iter().enumerate() {
            if a != v && b != v && point_on_segment(&m.points[v], &m.points[a], &m.points[b]) {
                return Err(Violation::VertexOnSegment(v + 1, e.segment_label(s)));
            }
        }
    }
    Ok(ValidityCertificate {
        vertices: n,
        segments: m.segments.len(),
        segment_pairs_checked: pairs,
        rectilinear: e.is_rectilinear(),
    })
}

/// For segments sharing exactly one endpoint: (shared, other end of first,
/// other end of second).
fn shared_endpoint(s: (usize, usize), t: (usize, usize)) -> Option<(usize, usize, usize)> {
    let (a, b) = s;
    let (c, d) = t;
    if a == c {
        Some((a, b, d))
    } else if a == d {
        Some((a, b, c))
    } else if b == c {
        Some((b, a, d))
    } else if b == d {
        Some((b, a, c))
    } else {
        None
    }
}

/// The closed polygon realizing a cycle, as its corner points in traversal
/// order. Segment `i` joins corner `i` to corner `i + 1` (cyclically).
pub fn cycle_curve(e: &SpatialEmbedding, cycle: &Cycle) -> Vec<RationalPoint3> {
    let mut out = Vec::new();
    for (a, b) in cycle.oriented_edges() {
        out.push(e.positions[a].clone());
        let idx = e.graph.edge_index(a, b).expect("cycle edge in graph");
        let path = &e.edge_paths[idx];
        if a < b {
            out.extend(path.iter().cloned());
        } else {
            out.extend(path.iter().rev().cloned());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_cycles, SimpleGraph};
    use crate::geometry::rational::orient3d;

    #[test]
    fn moment_curve_coordinates() {
        let e = moment_curve_embedding(6).unwrap();
        assert_eq!(e.positions()[1], RationalPoint3::from_ints(2, 4, 8));
        let e8 = moment_curve_embedding(8).unwrap();
        assert_eq!(e8.positions()[7], RationalPoint3::from_ints(8, 64, 512));
        assert!(e8.is_rectilinear());
    }

    #[test]
    fn moment_curve_has_no_four_coplanar_points() {
        let m = moment_curve_embedding(6).unwrap();
        let p = &m.model().points;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    for d in c + 1..6 {
                        assert_ne!(orient3d(&p[a], &p[b], &p[c], &p[d]), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn moment_curve_valid_up_to_twelve() {
        for n in 3..=12 {
            let cert = validate_embedding(&moment_curve_embedding(n).unwrap()).unwrap();
            assert_eq!(cert.segments, n * (n - 1) / 2);
        }
    }

    #[test]
    fn crossing_segments_rejected() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![
            RationalPoint3::from_ints(-1, 0, 0),
            RationalPoint3::from_ints(1, 0, 0),
            RationalPoint3::from_ints(0, -1, 0),
            RationalPoint3::from_ints(0, 1, 0),
        ];
        let e = SpatialEmbedding::rectilinear(g, pts).unwrap();
        let err = validate_embedding(&e).unwrap_err();
        assert_eq!(
            err,
            Violation::SegmentsMeet(
                SegmentLabel { edge: (1, 2), sub: 0 },
                SegmentLabel { edge: (3, 4), sub: 0 }
            )
        );
    }

    #[test]
    fn bent_edge_touching_other_edge_rejected() {
        let g = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![
            RationalPoint3::from_ints(0, 0, 0),
            RationalPoint3::from_ints(4, 0, 0),
            RationalPoint3::from_ints(0, 5, 3),
            RationalPoint3::from_ints(4, 5, 3),
        ];
        let ok = SpatialEmbedding::rectilinear(g.clone(), pts.clone()).unwrap();
        assert!(validate_embedding(&ok).is_ok());
        // bend edge 3-4 down through the point (2, 0, 0) of edge 1-2
        let mut paths = BTreeMap::new();
        paths.insert((2, 3), vec![RationalPoint3::from_ints(2, 0, 0)]);
        let bad = SpatialEmbedding::new(g, pts, paths).unwrap();
        assert!(matches!(validate_embedding(&bad), Err(Violation::SegmentsMeet(..))));
    }

    #[test]
    fn collinear_vertices_rejected() {
        let g = complete_graph(3).unwrap();
        let pts = vec![
            RationalPoint3::from_ints(0, 0, 0),
            RationalPoint3::from_ints(1, 1, 1),
            RationalPoint3::from_ints(2, 2, 2),
        ];
        let e = SpatialEmbedding::rectilinear(g, pts).unwrap();
        assert_eq!(validate_embedding(&e), Err(Violation::CollinearVertices(1, 2, 3)));
    }

    #[test]
    fn polyline_fold_back_rejected() {
        let g = complete_graph(3).unwrap();
        let pts = vec![
            RationalPoint3::from_ints(0, 0, 0),
            RationalPoint3::from_ints(4, 0, 0),
            RationalPoint3::from_ints(0, 4, 0),
        ];
        let mut paths = BTreeMap::new();
        // 1 -> (6,0,0) -> 2 doubles back over itself
        paths.insert((0, 1), vec![RationalPoint3::from_ints(6, 0, 0)]);
        let e = SpatialEmbedding::new(g, pts, paths).unwrap();
        assert!(validate_embedding(&e).is_err());
    }

    #[test]
    fn cycle_curves_count_segments() {
        let e = moment_curve_embedding(8).unwrap();
        let ham = &enumerate_cycles(e.graph(), 8)[0];
        assert_eq!(cycle_curve(&e, ham).len(), 8);
        assert_eq!(e.cycle_segments(ham).len(), 8);
        let tri = &enumerate_cycles(e.graph(), 3)[0];
        assert_eq!(cycle_curve(&e, tri).len(), 3);

        let mut paths = BTreeMap::new();
        paths.insert(
            (0, 1),
            vec![RationalPoint3::from_ints(1, 9, 9), RationalPoint3::from_ints(2, 9, 10)],
        );
        let g = complete_graph(6).unwrap();
        let bent = SpatialEmbedding::new(g, moment_curve_points(6), paths).unwrap();
        let c = Cycle::new(&[0, 1, 2]).unwrap();
        assert_eq!(bent.cycle_segments(&c).len(), 5);
        assert_eq!(cycle_curve(&bent, &c).len(), 5);
        // traversing 2 -> 1 reverses the interior points
        let c_rev = Cycle::new(&[1, 0, 2]).unwrap();
        assert_eq!(c_rev, c);
    }
}
