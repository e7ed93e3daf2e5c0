//! Finite simple graphs with cached closed balls, plus the generators used
//! throughout the crate: hypercubes, paths, cycles, complete bipartite graphs,
//! two small fixture graphs and toroidal wraps of the four planar grids.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense bit-indexed vertex set. Capacity is always the vertex count.
pub type VertexSet = FixedBitSet;

/// Largest hypercube dimension accepted by [`Graph::hypercube`].
pub const MAX_HYPERCUBE_DIM: u32 = 20;
/// Smallest torus period; radius-2 balls embed injectively from here on.
pub const MIN_TORUS_PERIOD: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("hypercube dimension {0} out of range 1..={MAX_HYPERCUBE_DIM}")]
    HypercubeDim(u32),
    #[error("invalid size for {family}: {detail}")]
    Size { family: &'static str, detail: String },
    #[error("torus periods must be at least {MIN_TORUS_PERIOD}, got {px}x{py}")]
    TorusTooSmall { px: usize, py: usize },
    #[error("hexagonal torus needs even periods, got {px}x{py}")]
    HexParity { px: usize, py: usize },
    #[error("unknown figure graph `{0}`")]
    UnknownFigure(String),
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// One of the four infinite planar grids on `Z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridFamily {
    Square,
    Hexagonal,
    Triangular,
    King,
}

impl GridFamily {
    pub const ALL: [GridFamily; 4] = [
        GridFamily::Square,
        GridFamily::Hexagonal,
        GridFamily::Triangular,
        GridFamily::King,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GridFamily::Square => "square",
            GridFamily::Hexagonal => "hexagonal",
            GridFamily::Triangular => "triangular",
            GridFamily::King => "king",
        }
    }

    pub fn parse(s: &str) -> Option<GridFamily> {
        match s.to_ascii_lowercase().as_str() {
            "square" | "s" => Some(GridFamily::Square),
            "hexagonal" | "hex" | "h" => Some(GridFamily::Hexagonal),
            "triangular" | "tri" | "t" => Some(GridFamily::Triangular),
            "king" | "k" => Some(GridFamily::King),
            _ => None,
        }
    }

    /// Neighbour offsets of the point `(i, j)` in the infinite grid.
    ///
    /// Only the hexagonal grid depends on the point: `(i, j)` is joined to
    /// `(i, j + (-1)^(i+j))`, so `u - v = (0, (-1)^(i+j+1))`.
    pub fn offsets(self, i: i64, j: i64) -> Vec<(i64, i64)> {
        match self {
            GridFamily::Square => vec![(1, 0), (-1, 0), (0, 1), (0, -1)],
            GridFamily::Hexagonal => {
                let vertical = if (i + j).rem_euclid(2) == 0 { 1 } else { -1 };
                vec![(1, 0), (-1, 0), (0, vertical)]
            }
            GridFamily::Triangular => vec![(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)],
            GridFamily::King => vec![
                (1, 0),
                (-1, 0),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, -1),
                (-1, 1),
                (-1, -1),
            ],
        }
    }

    /// Whether translation by `(dx, dy)` is an automorphism of the grid.
    pub fn translation_preserves(self, dx: i64, dy: i64) -> bool {
        match self {
            GridFamily::Hexagonal => (dx + dy).rem_euclid(2) == 0,
            _ => true,
        }
    }

    pub fn is_triangle_free(self) -> bool {
        matches!(self, GridFamily::Square | GridFamily::Hexagonal)
    }
}

impl fmt::Display for GridFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rectangular torus realisation of an infinite grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusSpec {
    pub family: GridFamily,
    pub px: usize,
    pub py: usize,
}

impl TorusSpec {
    pub fn new(family: GridFamily, px: usize, py: usize) -> Result<Self, GraphError> {
        let spec = TorusSpec { family, px, py };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.px < MIN_TORUS_PERIOD || self.py < MIN_TORUS_PERIOD {
            return Err(GraphError::TorusTooSmall { px: self.px, py: self.py });
        }
        if self.family == GridFamily::Hexagonal && (self.px % 2 != 0 || self.py % 2 != 0) {
            return Err(GraphError::HexParity { px: self.px, py: self.py });
        }
        Ok(())
    }

    /// Vertex index of the torus point `(i, j)`, coordinates taken modulo the periods.
    pub fn index(&self, i: i64, j: i64) -> usize {
        let i = i.rem_euclid(self.px as i64) as usize;
        let j = j.rem_euclid(self.py as i64) as usize;
        j * self.px + i
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v % self.px, v / self.px)
    }
}

/// Which fixture graph [`Graph::figure`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FigureId {
    /// Path `v1..v5` with a pendant `u` on `v2`; `v1` and `u` are 2-twins.
    Fig1,
    /// Path `v1..v4` with a pendant `u` on `v2`.
    Fig2,
}

/// How a graph was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Hypercube { dim: u32 },
    Path { n: usize },
    Cycle { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Figure { id: FigureId },
    Torus { spec: TorusSpec },
    Custom,
}

type BallCache = RwLock<HashMap<usize, Arc<Vec<VertexSet>>>>;

/// Immutable finite simple graph on the vertices `0..n`.
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<String>,
    family: Family,
    balls: BallCache,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.edge_count())
            .field("family", &self.family)
            .finish()
    }
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            adjacency: self.adjacency.clone(),
            labels: self.labels.clone(),
            family: self.family.clone(),
            balls: RwLock::default(),
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged; labels
    /// default to the decimal vertex index.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<String>>,
        family: Family,
    ) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|v| v.to_string()).collect());
        assert_eq!(labels.len(), n, "one label per vertex");
        Ok(Graph { adjacency, labels, family, balls: RwLock::default() })
    }

    /// The binary `dim`-cube. Vertex `i` is the word whose big-endian binary
    /// expansion is `i`, so the label of vertex 4 in `Q_4` is `0100`.
    pub fn hypercube(dim: u32) -> Result<Graph, GraphError> {
        if !(1..=MAX_HYPERCUBE_DIM).contains(&dim) {
            return Err(GraphError::HypercubeDim(dim));
        }
        let n = 1usize << dim;
        let edges = (0..n).flat_map(|v| {
            (0..dim).map(move |b| (v, v ^ (1 << b))).filter(|&(u, w)| u < w)
        });
        let labels = (0..n).map(|v| word_label(v as u64, dim)).collect();
        Graph::from_edges(n, edges, Some(labels), Family::Hypercube { dim })
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n < 1 {
            return Err(GraphError::Size { family: "path", detail: "n must be at least 1".into() });
        }
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)), None, Family::Path { n })
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::Size { family: "cycle", detail: "n must be at least 3".into() });
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)), None, Family::Cycle { n })
    }

    /// `K_{a,b}`: part A is `0..a` (labels `a0..`), part B is `a..a+b` (labels `b0..`).
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
        if a < 1 || b < 1 {
            return Err(GraphError::Size {
                family: "complete_bipartite",
                detail: format!("both parts must be nonempty, got {a},{b}"),
            });
        }
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        let labels = (0..a).map(|i| format!("a{i}")).chain((0..b).map(|i| format!("b{i}"))).collect();
        Graph::from_edges(a + b, edges, Some(labels), Family::CompleteBipartite { a, b })
    }

    pub fn figure(id: FigureId) -> Graph {
        let (path_len, labels) = match id {
            FigureId::Fig1 => (5, vec!["v1", "v2", "v3", "v4", "v5", "u"]),
            FigureId::Fig2 => (4, vec!["v1", "v2", "v3", "v4", "u"]),
        };
        let pendant = path_len;
        let edges = (1..path_len).map(|v| (v - 1, v)).chain(std::iter::once((1, pendant)));
        Graph::from_edges(
            path_len + 1,
            edges,
            Some(labels.into_iter().map(String::from).collect()),
            Family::Figure { id },
        )
        .expect("fixture graphs are well formed")
    }

    pub fn figure_by_name(name: &str) -> Result<Graph, GraphError> {
        match name {
            "1" | "fig1" => Ok(Graph::figure(FigureId::Fig1)),
            "2" | "fig2" => Ok(Graph::figure(FigureId::Fig2)),
            other => Err(GraphError::UnknownFigure(other.to_string())),
        }
    }

    /// Torus quotient of a grid. Vertex `(i, j)` has index `j * px + i` and label `i,j`.
    pub fn torus(spec: TorusSpec) -> Result<Graph, GraphError> {
        spec.validate()?;
        let mut edges = Vec::new();
        for j in 0..spec.py as i64 {
            for i in 0..spec.px as i64 {
                let u = spec.index(i, j);
                for (dx, dy) in spec.family.offsets(i, j) {
                    let v = spec.index(i + dx, j + dy);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        let labels = (0..spec.px * spec.py)
            .map(|v| {
                let (i, j) = spec.coords(v);
                format!("{i},{j}")
            })
            .collect();
        Graph::from_edges(spec.px * spec.py, edges, Some(labels), Family::Torus { spec })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn torus_spec(&self) -> Option<TorusSpec> {
        match self.family {
            Family::Torus { spec } => Some(spec),
            _ => None,
        }
    }

    pub fn hypercube_dim(&self) -> Option<u32> {
        match self.family {
            Family::Hypercube { dim } => Some(dim),
            _ => None,
        }
    }

    /// True for generators whose automorphism group acts transitively on vertices.
    ///
    /// Hexagonal tori are left out: their parity classes are not swapped by
    /// any translation.
    pub fn is_vertex_transitive(&self) -> bool {
        match self.family {
            Family::Hypercube { .. } | Family::Cycle { .. } => true,
            Family::Torus { spec } => spec.family != GridFamily::Hexagonal,
            _ => false,
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n() })
        }
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Graph distance, or `None` when `u` and `v` lie in different components.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.distances_from(u)[v]
    }

    fn compute_ball(&self, v: usize, r: usize) -> VertexSet {
        let mut ball = VertexSet::with_capacity(self.n());
        ball.insert(v);
        let mut frontier = vec![v];
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adjacency[u] {
                    if !ball.put(w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        ball
    }

    /// All closed `r`-balls `N_r[v]`, computed once per radius and shared.
    pub fn balls(&self, r: usize) -> Arc<Vec<VertexSet>> {
        if let Some(b) = self.balls.read().unwrap().get(&r) {
            return Arc::clone(b);
        }
        let computed: Arc<Vec<VertexSet>> =
            Arc::new((0..self.n()).map(|v| self.compute_ball(v, r)).collect());
        self.balls.write().unwrap().entry(r).or_insert(computed).clone()
    }

    /// `N_r[v]`.
    pub fn closed_ball(&self, v: usize, r: usize) -> VertexSet {
        self.balls(r)[v].clone()
    }

    /// No three pairwise adjacent vertices.
    pub fn is_triangle_free(&self) -> bool {
        let balls = self.balls(1);
        self.edges().all(|(u, v)| {
            let mut common = balls[u].clone();
            common.intersect_with(&balls[v]);
            // u and v themselves are always in both closed balls.
            common.count_ones(..) == 2
        })
    }

    /// Vertices reachable from 0 cover the whole graph.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }
}

/// Big-endian binary word of `value` with `dim` letters.
pub fn word_label(value: u64, dim: u32) -> String {
    (0..dim).rev().map(|b| if value >> b & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse of [`word_label`].
pub fn parse_word(word: &str) -> Option<u64> {
    if word.is_empty() || word.len() > 64 {
        return None;
    }
    word.chars().try_fold(0u64, |acc, ch| match ch {
        '0' => Some(acc << 1),
        '1' => Some(acc << 1 | 1),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, members: &[usize]) -> VertexSet {
        let mut s = VertexSet::with_capacity(n);
        members.iter().for_each(|&m| s.insert(m));
        s
    }

    #[test]
    fn hypercube_sizes() {
        let q1 = Graph::hypercube(1).unwrap();
        assert_eq!((q1.n(), q1.edge_count()), (2, 1));
        let q3 = Graph::hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.edge_count()), (8, 12));
        assert!((0..8).all(|v| q3.degree(v) == 3));
        assert_eq!(Graph::hypercube(0).unwrap_err(), GraphError::HypercubeDim(0));
        assert!(Graph::hypercube(21).is_err());
    }

    #[test]
    fn hypercube_distance_is_hamming() {
        let q4 = Graph::hypercube(4).unwrap();
        let a = q4.vertex_by_label("0000").unwrap();
        let b = q4.vertex_by_label("1111").unwrap();
        assert_eq!(q4.distance(a, b), Some(4));
        for dim in 1..=6 {
            let q = Graph::hypercube(dim).unwrap();
            for u in 0..q.n() {
                let dist = q.distances_from(u);
                for (v, d) in dist.iter().enumerate() {
                    assert_eq!(*d, Some((u ^ v).count_ones() as usize));
                }
            }
        }
    }

    #[test]
    fn small_families() {
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        assert_eq!((k23.n(), k23.edge_count()), (5, 6));
        let p5 = Graph::path(5).unwrap();
        assert_eq!((p5.degree(0), p5.degree(4)), (1, 1));
        let c4 = Graph::cycle(4).unwrap();
        assert!((0..4).all(|v| c4.degree(v) == 2));
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::path(0).is_err());
        assert!(Graph::complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn figure_graphs() {
        let f2 = Graph::figure(FigureId::Fig2);
        assert_eq!((f2.n(), f2.edge_count()), (5, 4));
        let f1 = Graph::figure(FigureId::Fig1);
        assert_eq!((f1.n(), f1.edge_count()), (6, 5));
        let v1 = f1.vertex_by_label("v1").unwrap();
        let u = f1.vertex_by_label("u").unwrap();
        assert_eq!(f1.closed_ball(v1, 2), f1.closed_ball(u, 2));
        assert!(Graph::figure_by_name("3").is_err());
    }

    #[test]
    fn torus_regularity() {
        for (family, deg) in [
            (GridFamily::Square, 4),
            (GridFamily::King, 8),
            (GridFamily::Triangular, 6),
            (GridFamily::Hexagonal, 3),
        ] {
            let g = Graph::torus(TorusSpec::new(family, 6, 6).unwrap()).unwrap();
            assert_eq!(g.n(), 36);
            assert!((0..g.n()).all(|v| g.degree(v) == deg), "{family}");
        }
        let sq = Graph::torus(TorusSpec::new(GridFamily::Square, 5, 5).unwrap()).unwrap();
        assert_eq!(sq.n(), 25);
        assert!(TorusSpec::new(GridFamily::Square, 4, 9).is_err());
        assert_eq!(
            TorusSpec::new(GridFamily::Hexagonal, 6, 7).unwrap_err(),
            GraphError::HexParity { px: 6, py: 7 }
        );
    }

    #[test]
    fn balls_and_triangles() {
        let q3 = Graph::hypercube(3).unwrap();
        let expect: Vec<usize> =
            ["000", "001", "010", "100"].iter().map(|l| q3.vertex_by_label(l).unwrap()).collect();
        assert_eq!(q3.closed_ball(0, 1), set(8, &expect));
        assert_eq!(q3.closed_ball(0, 0), set(8, &[0]));
        for dim in 1..=6 {
            assert!(Graph::hypercube(dim).unwrap().is_triangle_free());
        }
        let tri = Graph::torus(TorusSpec::new(GridFamily::Triangular, 6, 6).unwrap()).unwrap();
        assert!(!tri.is_triangle_free());
    }

    #[test]
    fn disconnected_distance() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)], None, Family::Custom).unwrap();
        assert_eq!(g.distance(0, 1), Some(1));
        assert_eq!(g.distance(0, 3), None);
        assert!(!g.is_connected());
        assert_eq!(
            Graph::from_edges(2, [(0, 0)], None, Family::Custom).unwrap_err(),
            GraphError::SelfLoop(0)
        );
    }

    #[test]
    fn ball_monotone_and_diameter() {
        let g = Graph::torus(TorusSpec::new(GridFamily::Hexagonal, 6, 8).unwrap()).unwrap();
        for v in [0, 7, 20] {
            let mut prev = g.closed_ball(v, 0);
            for r in 1..12 {
                let ball = g.closed_ball(v, r);
                assert!(prev.is_subset(&ball));
                prev = ball;
            }
            assert_eq!(prev.count_ones(..), g.n());
        }
    }

    /// Unfolds the radius-2 ball of the infinite grid around `(i, j)` and
    /// checks it maps bijectively onto the torus ball.
    #[test]
    fn torus_balls_match_infinite_grid() {
        use std::collections::HashSet;
        for family in GridFamily::ALL {
            for (px, py) in [(6, 6), (8, 10), (10, 6)] {
                let spec = TorusSpec::new(family, px, py).unwrap();
                let g = Graph::torus(spec).unwrap();
                for v in 0..g.n() {
                    let (i, j) = spec.coords(v);
                    let mut seen: HashSet<(i64, i64)> = HashSet::from([(i as i64, j as i64)]);
                    let mut frontier = vec![(i as i64, j as i64)];
                    for _ in 0..2 {
                        let mut next = Vec::new();
                        for &(a, b) in &frontier {
                            for (dx, dy) in family.offsets(a, b) {
                                if seen.insert((a + dx, b + dy)) {
                                    next.push((a + dx, b + dy));
                                }
                            }
                        }
                        frontier = next;
                    }
                    let image: HashSet<usize> = seen.iter().map(|&(a, b)| spec.index(a, b)).collect();
                    assert_eq!(image.len(), seen.len(), "{family} {px}x{py} not injective");
                    let ball: HashSet<usize> = g.closed_ball(v, 2).ones().collect();
                    assert_eq!(image, ball);
                }
            }
        }
    }
}
