//! Simple graphs with their cycles and vertex-disjoint cycle pairs.
//!
//! Vertices are `0..n` internally and rendered 1-based in keys and files.
//! Vertex sets are tracked as `u64` masks, so graphs are limited to 64
//! vertices.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} references a vertex out of range")]
    OutOfRange(usize, usize),
    #[error("vertex sequence {0:?} is not a cycle of the graph")]
    NotACycle(Vec<usize>),
}

/// Vertex tags of K_{3,3,1}: the two parts of the K_{3,3} and the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexLabel {
    Black,
    White,
    Square,
}

/// Which family a graph belongs to. Drives which identities apply to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Complete,
    K331,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    adjacency: Vec<u64>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<VertexLabel>>,
    kind: GraphKind,
}

impl SimpleGraph {
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 || vertex_count > MAX_VERTICES {
            return Err(GraphError::VertexCount(vertex_count));
        }
        let mut adjacency = vec![0u64; vertex_count];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(GraphError::OutOfRange(a, b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if adjacency[a] >> b & 1 == 1 {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            adjacency[a] |= 1 << b;
            adjacency[b] |= 1 << a;
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        Ok(SimpleGraph {
            vertex_count,
            adjacency,
            edges: list,
            labels: None,
            kind: GraphKind::Other,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges as `(lo, hi)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        a < self.vertex_count && b < self.vertex_count && self.adjacency[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.adjacency[v];
        (0..self.vertex_count).filter(move |&u| mask >> u & 1 == 1)
    }

    /// Position of edge `{a, b}` in [`Self::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// The K_{3,3} subgraph of K_{3,3,1} avoiding the square vertex.
    ///
    /// Keeps all seven vertex ids so its cycles are cycles of the parent.
    pub fn h_subgraph(&self) -> Option<SimpleGraph> {
        let labels = self.labels.as_ref()?;
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| labels[a] != VertexLabel::Square && labels[b] != VertexLabel::Square);
        let mut h = SimpleGraph::from_edges(self.vertex_count, edges).ok()?;
        h.labels = Some(labels.clone());
        Some(h)
    }
}

/// The complete graph K_n.
pub fn complete_graph(n: usize) -> Result<SimpleGraph, GraphError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(GraphError::VertexCount(n));
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    let mut g = SimpleGraph::from_edges(n, edges)?;
    g.kind = GraphKind::Complete;
    Ok(g)
}

/// K_{3,3,1} on vertices 1..7 (1-based): 1,3,5 black, 2,4,6 white, 7 the
/// square apex.
pub fn k331_graph() -> SimpleGraph {
    let labels: Vec<VertexLabel> = (0..7)
        .map(|v| match v {
            6 => VertexLabel::Square,
            v if v % 2 == 0 => VertexLabel::Black,
            _ => VertexLabel::White,
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            if labels[a] != labels[b] {
                edges.push((a, b));
            }
        }
    }
    let mut g = SimpleGraph::from_edges(7, edges).expect("static K331 edge list");
    g.labels = Some(labels);
    g.kind = GraphKind::K331;
    g
}

/// A cycle stored in canonical form: minimum vertex first, then the
/// direction whose second vertex is the smaller neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
    mask: u64,
}

impl Cycle {
    /// Canonicalizes any rotation or reflection of a vertex cycle. Does not
    /// check adjacency; see [`Cycle::in_graph`].
    pub fn new(vertices: &[usize]) -> Result<Self, GraphError> {
        let k = vertices.len();
        let mut mask = 0u64;
        for &v in vertices {
            if v >= MAX_VERTICES || mask >> v & 1 == 1 {
                return Err(GraphError::NotACycle(vertices.to_vec()));
            }
            mask |= 1 << v;
        }
        if k < 3 {
            return Err(GraphError::NotACycle(vertices.to_vec()));
        }
        let start = (0..k).min_by_key(|&i| vertices[i]).unwrap_or(0);
        let next = vertices[(start + 1) % k];
        let prev = vertices[(start + k - 1) % k];
        let canonical: Vec<usize> = if next < prev {
            (0..k).map(|i| vertices[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| vertices[(start + k - i) % k]).collect()
        };
        Ok(Cycle {
            vertices: canonical,
            mask,
        })
    }

    pub fn in_graph(vertices: &[usize], g: &SimpleGraph) -> Result<Self, GraphError> {
        let k = vertices.len();
        let ok = (0..k).all(|i| g.is_adjacent(vertices[i], vertices[(i + 1) % k]));
        if !ok {
            return Err(GraphError::NotACycle(vertices.to_vec()));
        }
        Cycle::new(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask >> v & 1 == 1
    }

    /// Edges in traversal order as `(from, to)`.
    pub fn oriented_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Parses a 1-based key such as `1-3-5-7-2-4-6`.
    pub fn parse_key(s: &str) -> Result<Self, GraphError> {
        let vertices: Option<Vec<usize>> = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(['-', ',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().and_then(|v| v.checked_sub(1)))
            .collect();
        match vertices {
            Some(v) => Cycle::new(&v),
            None => Err(GraphError::NotACycle(Vec::new())),
        }
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

/// Unordered pair of vertex-disjoint cycles, shorter (or smaller key) first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisjointCyclePair {
    first: Cycle,
    second: Cycle,
}

impl DisjointCyclePair {
    pub fn new(a: Cycle, b: Cycle) -> Result<Self, GraphError> {
        if a.mask & b.mask != 0 {
            let mut v = a.vertices.clone();
            v.extend_from_slice(&b.vertices);
            return Err(GraphError::NotACycle(v));
        }
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        Ok(DisjointCyclePair { first, second })
    }

    pub fn first(&self) -> &Cycle {
        &self.first
    }

    pub fn second(&self) -> &Cycle {
        &self.second
    }

    /// Parses `1-2-3:4-5-6`.
    pub fn parse_key(s: &str) -> Result<Self, GraphError> {
        let (a, b) = s
            .split_once([':', '|'])
            .ok_or_else(|| GraphError::NotACycle(Vec::new()))?;
        DisjointCyclePair::new(Cycle::parse_key(a)?, Cycle::parse_key(b)?)
    }
}

impl fmt::Display for DisjointCyclePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.first, self.second)
    }
}

/// All k-cycles of `g` in canonical form, sorted by key.
pub fn enumerate_cycles(g: &SimpleGraph, k: usize) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if k < 3 || k > n {
        return out;
    }
    let mut path = Vec::with_capacity(k);
    for start in 0..n {
        path.clear();
        path.push(start);
        extend_path(g, start, k, &mut path, 1u64 << start, &mut out);
    }
    out.sort_unstable();
    out
}

fn extend_path(g: &SimpleGraph, start: usize, k: usize, path: &mut Vec<usize>, used: u64, out: &mut Vec<Cycle>) {
    let last = *path.last().expect("path is never empty");
    if path.len() == k {
        // Each cycle is met twice from its minimum vertex; keep one direction.
        if g.is_adjacent(last, start) && path[1] < last {
            out.push(Cycle {
                vertices: path.clone(),
                mask: used,
            });
        }
        return;
    }
    // Only vertices above `start` may appear, so `start` is the minimum.
    let candidates = g.adjacency[last] & !used & !((2u64 << start) - 1);
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        path.push(v);
        extend_path(g, start, k, path, used | 1 << v, out);
        path.pop();
    }
}

/// All pairs of disjoint cycles made of a k-cycle and an l-cycle.
pub fn enumerate_disjoint_pairs(g: &SimpleGraph, k: usize, l: usize) -> Vec<DisjointCyclePair> {
    let (k, l) = (k.min(l), k.max(l));
    if k < 3 || k + l > g.vertex_count() {
        return Vec::new();
    }
    let small = enumerate_cycles(g, k);
    let large = if k == l { small.clone() } else { enumerate_cycles(g, l) };
    let mut out = Vec::new();
    for (i, a) in small.iter().enumerate() {
        let tail = if k == l { &large[i + 1..] } else { &large[..] };
        for b in tail {
            if a.mask & b.mask == 0 {
                out.push(DisjointCyclePair {
                    first: a.clone(),
                    second: b.clone(),
                });
            }
        }
    }
    out.sort_unstable();
    out
}

/// |Γ_k(K_n)| = C(n,k)(k-1)!/2.
pub fn complete_cycle_count(n: u64, k: u64) -> u128 {
    if k < 3 || k > n {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    let mut f: u128 = 1;
    for i in 2..k {
        f *= i as u128;
    }
    c * f / 2
}
