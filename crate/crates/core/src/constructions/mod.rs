//! Explicit codes: Hamming codes and their lifts, small named codes, and
//! periodic grid patterns.

pub mod linear;
pub mod patterns;

use thiserror::Error;

use crate::codes::{ClassKind, Code, CodeClass, CodeError, VerificationReport};
use crate::graph::{Graph, GraphError, GridFamily};
use patterns::Lattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("word {word:#b} does not fit in {dim} bits")]
    WordOutOfRange { word: u64, dim: u32 },
    #[error("`{0}` is not a binary word")]
    BadWord(String),
    #[error("code lives in F^{expected}, graph does not match")]
    DimensionMismatch { expected: u32 },
    #[error("dimension {0} is too large")]
    TooLarge(u32),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("input is not a {} code", .0.short_name())]
    NotClass(ClassKind),
    #[error("period vectors {v1:?} and {v2:?} are linearly dependent")]
    DegenerateLattice { v1: (i64, i64), v2: (i64, i64) },
    #[error("lattice {lattice:?} does not act by automorphisms on the {} grid", .family.name())]
    LatticeBreaksGrid { family: GridFamily, lattice: Lattice },
    #[error("a pattern needs at least one residue")]
    EmptyPattern,
    #[error("torus {px}x{py} is not a quotient of the pattern lattice")]
    IncompatiblePeriods { px: usize, py: usize },
    #[error("pattern needs a torus graph")]
    NotTorus,
    #[error("pattern lives on the {} grid, graph is {}", .expected.name(), .found.name())]
    FamilyMismatch { expected: GridFamily, found: GridFamily },
    #[error("lattice determinant {det} is too large to search")]
    Intractable { det: i64 },
    #[error("unknown construction `{0}`")]
    UnknownId(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A named code on a named graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitCode {
    pub id: &'static str,
    pub graph_uri: &'static str,
    pub labels: Vec<&'static str>,
    pub class: CodeClass,
    pub size: usize,
}

impl ExplicitCode {
    pub fn graph(&self) -> Result<Graph, ConstructionError> {
        let (scheme, arg) = self.graph_uri.split_once(':').expect("registry uris are well formed");
        Ok(match scheme {
            "hypercube" => Graph::hypercube(arg.parse().expect("registry uris are well formed"))?,
            _ => Graph::figure_by_name(arg)?,
        })
    }

    pub fn code<'g>(&self, graph: &'g Graph) -> Result<Code<'g>, ConstructionError> {
        Ok(Code::from_labels(graph, &self.labels)?)
    }

    pub fn verify(&self) -> Result<VerificationReport, ConstructionError> {
        let graph = self.graph()?;
        Ok(self.code(&graph)?.verify(self.class))
    }
}

pub const EXPLICIT_IDS: [&str; 5] = ["f2-lid", "f4-lid6", "f6-lid15", "fig1-l2id", "fig2-cover"];

/// Looks up a named code. Every entry is checked against its class.
pub fn explicit(id: &str) -> Result<ExplicitCode, ConstructionError> {
    let lid = CodeClass::unit(ClassKind::LocalIdentifying);
    let (graph_uri, labels, class): (&'static str, Vec<&'static str>, CodeClass) = match id {
        "f2-lid" => ("hypercube:2", vec!["00", "11"], lid),
        "f4-lid6" => ("hypercube:4", vec!["0000", "0100", "0010", "0111", "1111", "1101"], lid),
        "f6-lid15" => (
            "hypercube:6",
            vec![
                "100000", "010000", "110000", "001100", "001110", "001101", "000011", "100011", "010011", "111110",
                "111010", "110110", "111101", "011101", "101101",
            ],
            lid,
        ),
        "fig1-l2id" => (
            "fig:1",
            vec!["v1", "v2", "v3", "v4", "v5"],
            CodeClass::new(ClassKind::LocalIdentifying, 2)?,
        ),
        "fig2-cover" => ("fig:2", vec!["v1", "v2", "v3", "v4"], CodeClass::unit(ClassKind::Covering)),
        _ => return Err(ConstructionError::UnknownId(id.to_string())),
    };
    let id = EXPLICIT_IDS.into_iter().find(|&k| k == id).expect("matched above");
    let entry = ExplicitCode { id, graph_uri, size: labels.len(), labels, class };
    debug_assert!(entry.verify().map(|r| r.valid).unwrap_or(false), "{id} fails its own class");
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_self_test() {
        for id in EXPLICIT_IDS {
            let e = explicit(id).unwrap();
            assert!(e.verify().unwrap().valid, "{id}");
        }
        assert!(matches!(explicit("nope"), Err(ConstructionError::UnknownId(_))));
    }

    #[test]
    fn f6_induced_paths() {
        let e = explicit("f6-lid15").unwrap();
        let g = e.graph().unwrap();
        let c = e.code(&g).unwrap();
        assert_eq!(c.len(), 15);
        let members = c.vertices();
        let sub = Graph::from_edges(
            members.len(),
            g.edges()
                .filter(|&(u, v)| c.contains(u) && c.contains(v))
                .map(|(u, v)| (members.binary_search(&u).unwrap(), members.binary_search(&v).unwrap())),
            None,
            crate::graph::Family::Custom,
        )
        .unwrap();
        // Three 3-vertex paths, plus 001101 joining two of the listed triples
        // through 011101 and 101101 into a 6-vertex component with a 4-cycle.
        assert_eq!(sub.edge_count(), 12);
        let mut seen = vec![false; 15];
        let mut shapes = Vec::new();
        for s in 0..15 {
            if seen[s] {
                continue;
            }
            let dist = sub.distances_from(s);
            let comp: Vec<usize> = (0..15).filter(|&v| dist[v].is_some()).collect();
            comp.iter().for_each(|&v| seen[v] = true);
            shapes.push((comp.len(), comp.iter().map(|&v| sub.degree(v)).sum::<usize>() / 2));
        }
        shapes.sort();
        assert_eq!(shapes, vec![(3, 2), (3, 2), (3, 2), (6, 6)]);
    }
}
