//! Codes, I-sets and class verification.
//!
//! A code is a nonempty vertex subset of a particular graph. For a radius `r`
//! the I-set of `v` is `N_r[v] ∩ C`; every class checked here is a covering
//! condition on I-sets plus a separation condition on some family of pairs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("codes must be nonempty")]
    Empty,
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown code class `{0}` (expected covering, total, id, ld, lid or lld)")]
    UnknownClass(String),
    #[error("no vertex labelled `{0}`")]
    UnknownLabel(String),
    #[error("classes must share a radius, got {0} and {1}")]
    RadiusMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Covering,
    TotalDominating,
    Identifying,
    LocatingDominating,
    LocalIdentifying,
    LocalLocatingDominating,
}

impl ClassKind {
    pub const ALL: [ClassKind; 6] = [
        ClassKind::Covering,
        ClassKind::TotalDominating,
        ClassKind::Identifying,
        ClassKind::LocatingDominating,
        ClassKind::LocalIdentifying,
        ClassKind::LocalLocatingDominating,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ClassKind::Covering => "covering",
            ClassKind::TotalDominating => "total",
            ClassKind::Identifying => "id",
            ClassKind::LocatingDominating => "ld",
            ClassKind::LocalIdentifying => "lid",
            ClassKind::LocalLocatingDominating => "lld",
        }
    }

    /// Which pairs of vertices the class must separate.
    pub fn pair_scope(self) -> Option<PairScope> {
        match self {
            ClassKind::Covering | ClassKind::TotalDominating => None,
            ClassKind::Identifying => Some(PairScope { adjacent_only: false, codewords_exempt: false }),
            ClassKind::LocatingDominating => Some(PairScope { adjacent_only: false, codewords_exempt: true }),
            ClassKind::LocalIdentifying => Some(PairScope { adjacent_only: true, codewords_exempt: false }),
            ClassKind::LocalLocatingDominating => {
                Some(PairScope { adjacent_only: true, codewords_exempt: true })
            }
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ClassKind {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "covering" | "cover" | "dominating" => ClassKind::Covering,
            "total" | "totaldominating" | "td" => ClassKind::TotalDominating,
            "id" | "identifying" => ClassKind::Identifying,
            "ld" | "locatingdominating" => ClassKind::LocatingDominating,
            "lid" | "localidentifying" => ClassKind::LocalIdentifying,
            "lld" | "locallocatingdominating" => ClassKind::LocalLocatingDominating,
            _ => return Err(CodeError::UnknownClass(s.to_string())),
        };
        Ok(kind)
    }
}

/// Pairs a class must separate: all pairs or only edges, and whether pairs
/// containing a codeword are exempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairScope {
    pub adjacent_only: bool,
    pub codewords_exempt: bool,
}

/// A code class at a given radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeClass {
    pub kind: ClassKind,
    pub r: usize,
}

impl CodeClass {
    pub fn new(kind: ClassKind, r: usize) -> Result<Self, CodeError> {
        if r == 0 {
            return Err(CodeError::ZeroRadius);
        }
        Ok(CodeClass { kind, r })
    }

    /// Radius-1 class.
    pub fn unit(kind: ClassKind) -> Self {
        CodeClass { kind, r: 1 }
    }
}

impl fmt::Display for CodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(r={})", self.kind, self.r)
    }
}

/// A nonempty vertex subset bound to its graph.
#[derive(Clone)]
pub struct Code<'g> {
    graph: &'g Graph,
    members: VertexSet,
}

impl fmt::Debug for Code<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.members.ones().map(|v| self.graph.label(v))).finish()
    }
}

impl<'g> Code<'g> {
    pub fn new(graph: &'g Graph, members: impl IntoIterator<Item = usize>) -> Result<Self, CodeError> {
        let mut set = VertexSet::with_capacity(graph.n());
        for v in members {
            graph.check_vertex(v)?;
            set.insert(v);
        }
        Code::from_set(graph, set)
    }

    pub fn from_set(graph: &'g Graph, members: VertexSet) -> Result<Self, CodeError> {
        assert_eq!(members.len(), graph.n(), "member set capacity must equal the vertex count");
        if members.is_clear() {
            return Err(CodeError::Empty);
        }
        Ok(Code { graph, members })
    }

    /// The code made of every vertex.
    pub fn full(graph: &'g Graph) -> Result<Self, CodeError> {
        Code::new(graph, 0..graph.n())
    }

    pub fn from_labels<S: AsRef<str>>(graph: &'g Graph, labels: &[S]) -> Result<Self, CodeError> {
        let mut members = Vec::with_capacity(labels.len());
        for l in labels {
            let v = graph
                .vertex_by_label(l.as_ref())
                .ok_or_else(|| CodeError::UnknownLabel(l.as_ref().to_string()))?;
            members.push(v);
        }
        Code::new(graph, members)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.ones().map(|v| self.graph.label(v).to_string()).collect()
    }

    /// `I_{C,r}(v) = N_r[v] ∩ C`.
    pub fn iset(&self, v: usize, r: usize) -> VertexSet {
        let mut s = self.graph.balls(r)[v].clone();
        s.intersect_with(&self.members);
        s
    }

    pub fn iset_size(&self, v: usize, r: usize) -> usize {
        self.graph.balls(r)[v].intersection_count(&self.members)
    }

    pub fn verify(&self, class: CodeClass) -> VerificationReport {
        verify(self, class)
    }
}

/// Why a code fails its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    /// The vertex has no codeword in its (closed, or open for total domination) ball.
    UncoveredVertex { v: usize },
    /// Both vertices have the same I-set.
    UnseparatedPair { u: usize, v: usize, shared: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub class: CodeClass,
    pub valid: bool,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    fn ok(class: CodeClass) -> Self {
        VerificationReport { class, valid: true, failure: None }
    }

    fn fail(class: CodeClass, failure: Failure) -> Self {
        VerificationReport { class, valid: false, failure: Some(failure) }
    }

    /// Re-checks the witness against the code: the failure must be genuine.
    pub fn witness_is_sound(&self, code: &Code<'_>) -> bool {
        let class = self.class;
        match (&self.failure, self.valid) {
            (None, true) => true,
            (Some(Failure::UncoveredVertex { v }), false) => match class.kind {
                ClassKind::TotalDominating => {
                    let mut open = code.iset(*v, class.r);
                    open.set(*v, false);
                    open.is_clear()
                }
                _ => code.iset(*v, class.r).is_clear(),
            },
            (Some(Failure::UnseparatedPair { u, v, shared }), false) => {
                let Some(scope) = class.kind.pair_scope() else { return false };
                let a = code.iset(*u, class.r);
                let in_scope = u != v
                    && (!scope.adjacent_only || code.graph().is_adjacent(*u, *v))
                    && (!scope.codewords_exempt || (!code.contains(*u) && !code.contains(*v)));
                in_scope && a == code.iset(*v, class.r) && a.ones().collect::<Vec<_>>() == *shared
            }
            _ => false,
        }
    }
}

/// Checks `code` against `class` and returns the smallest failure witness.
///
/// Covering is checked before separation, vertices in index order and pairs
/// lexicographically, so the witness is deterministic.
pub fn verify(code: &Code<'_>, class: CodeClass) -> VerificationReport {
    let graph = code.graph();
    let balls = graph.balls(class.r);
    let members = code.members();

    for v in 0..graph.n() {
        let hits = balls[v].intersection_count(members);
        let covered = if class.kind == ClassKind::TotalDominating {
            hits > usize::from(members.contains(v))
        } else {
            hits > 0
        };
        if !covered {
            return VerificationReport::fail(class, Failure::UncoveredVertex { v });
        }
    }

    let Some(scope) = class.kind.pair_scope() else {
        return VerificationReport::ok(class);
    };
    let isets: Vec<VertexSet> = (0..graph.n())
        .map(|v| {
            let mut s = balls[v].clone();
            s.intersect_with(members);
            s
        })
        .collect();
    let exempt = |v: usize| scope.codewords_exempt && members.contains(v);

    if scope.adjacent_only {
        for (u, v) in graph.edges() {
            if exempt(u) || exempt(v) {
                continue;
            }
            if isets[u] == isets[v] {
                let shared = isets[u].ones().collect();
                return VerificationReport::fail(class, Failure::UnseparatedPair { u, v, shared });
            }
        }
    } else {
        // Pairs further apart than 2r have disjoint balls; with covering
        // already established their I-sets are distinct.
        let far = graph.balls(2 * class.r);
        for u in 0..graph.n() {
            if exempt(u) {
                continue;
            }
            for v in far[u].ones().filter(|&v| v > u) {
                if exempt(v) {
                    continue;
                }
                if isets[u] == isets[v] {
                    let shared = isets[u].ones().collect();
                    return VerificationReport::fail(class, Failure::UnseparatedPair { u, v, shared });
                }
            }
        }
    }
    VerificationReport::ok(class)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Admissibility {
    Admits,
    /// Two vertices (adjacent ones for the local class) with equal closed `r`-balls.
    Twins { u: usize, v: usize },
}

impl Admissibility {
    pub fn admits(&self) -> bool {
        matches!(self, Admissibility::Admits)
    }
}

/// Whether some (local) `r`-identifying code exists: no two distinct
/// (adjacent) vertices may share their closed `r`-ball.
///
/// Any other kind is always admissible (the whole vertex set works).
pub fn admits(graph: &Graph, kind: ClassKind, r: usize) -> Admissibility {
    let balls = graph.balls(r);
    match kind {
        ClassKind::Identifying => {
            let far = graph.balls(2 * r);
            for u in 0..graph.n() {
                for v in far[u].ones().filter(|&v| v > u) {
                    if balls[u] == balls[v] {
                        return Admissibility::Twins { u, v };
                    }
                }
            }
            Admissibility::Admits
        }
        ClassKind::LocalIdentifying => graph
            .edges()
            .find(|&(u, v)| balls[u] == balls[v])
            .map_or(Admissibility::Admits, |(u, v)| Admissibility::Twins { u, v }),
        _ => Admissibility::Admits,
    }
}

/// Outcome of comparing two classes over many codes of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Equivalence {
    /// Every nonempty subset was checked and the classes agree on all of them.
    Equivalent { codes_checked: u64 },
    /// A code valid for exactly one of the two classes.
    Counterexample { code: Vec<usize>, valid_a: bool, valid_b: bool },
    /// Random sampling found no disagreement; not a proof.
    Inconclusive { codes_checked: u64 },
}

/// Exhaustive comparison is used up to this many vertices.
pub const EXHAUSTIVE_LIMIT: usize = 25;

/// Compares `a` and `b` on every nonempty subset of `V` when the graph has at
/// most [`EXHAUSTIVE_LIMIT`] vertices and `2^n - 1 <= budget`; otherwise
/// samples `budget` random codes from a seeded generator.
pub fn classes_equivalent_on(
    graph: &Graph,
    a: CodeClass,
    b: CodeClass,
    budget: u64,
    seed: u64,
) -> Result<Equivalence, CodeError> {
    if a.r != b.r {
        return Err(CodeError::RadiusMismatch(a.r, b.r));
    }
    let n = graph.n();
    let check = |set: VertexSet| -> Option<Equivalence> {
        let code = Code::from_set(graph, set).ok()?;
        let (va, vb) = (verify(&code, a).valid, verify(&code, b).valid);
        (va != vb).then(|| Equivalence::Counterexample { code: code.vertices(), valid_a: va, valid_b: vb })
    };

    let total = if n < 64 { (1u64 << n) - 1 } else { u64::MAX };
    if n <= EXHAUSTIVE_LIMIT && total <= budget {
        for mask in 1..=total {
            let mut set = VertexSet::with_capacity(n);
            (0..n).filter(|&i| mask >> i & 1 == 1).for_each(|i| set.insert(i));
            if let Some(cex) = check(set) {
                return Ok(cex);
            }
        }
        return Ok(Equivalence::Equivalent { codes_checked: total });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < budget {
        let density: f64 = rng.gen_range(0.1..0.9);
        let mut set = VertexSet::with_capacity(n);
        (0..n).filter(|_| rng.gen_bool(density)).for_each(|i| set.insert(i));
        if set.is_clear() {
            continue;
        }
        checked += 1;
        if let Some(cex) = check(set) {
            return Ok(cex);
        }
    }
    Ok(Equivalence::Inconclusive { codes_checked: checked })
}
