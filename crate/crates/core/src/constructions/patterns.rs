//! Lattice-periodic codes in the infinite grids.
//!
//! A pattern is a sublattice `L ⊂ Z²` together with a set of residues modulo
//! `L`; its density is `|residues| / det(L)`. Patterns are realised on
//! rectangular tori whose period vectors lie in `L`. With both periods at
//! least 5 every pair of vertices within distance 2 keeps its two closed
//! neighbourhoods injective under the quotient, so a radius-1 class holds on
//! the torus exactly when it holds for the periodic code on the whole grid.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::bounds::Rational;
use crate::codes::{ClassKind, Code, CodeClass};
use crate::graph::{Graph, GridFamily, TorusSpec, MIN_TORUS_PERIOD};

/// Largest lattice determinant accepted by [`pattern_search`].
pub const MAX_SEARCH_DET: i64 = 24;

/// A sublattice of `Z²` in Hermite normal form: basis `(a, 0)`, `(b, d)`
/// with `a, d > 0` and `0 ≤ b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lattice {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        (x.abs(), x.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(y, x.rem_euclid(y));
        (g, t, s - x.div_euclid(y) * t)
    }
}

impl Lattice {
    pub fn from_basis(v1: (i64, i64), v2: (i64, i64)) -> Result<Lattice, ConstructionError> {
        let det = v1.0 * v2.1 - v1.1 * v2.0;
        if det == 0 {
            return Err(ConstructionError::DegenerateLattice { v1, v2 });
        }
        let (g, s, t) = ext_gcd(v1.1, v2.1);
        // s·v1 + t·v2 has second coordinate g.
        let w = (s * v1.0 + t * v2.0, s * v1.1 + t * v2.1);
        debug_assert_eq!(w.1, g);
        // (v2.1/g)·v1 − (v1.1/g)·v2 lies on the first axis.
        let a = ((v2.1 / g) * v1.0 - (v1.1 / g) * v2.0).abs();
        debug_assert_eq!(a * g, det.abs());
        Ok(Lattice { a, b: w.0.rem_euclid(a), d: g })
    }

    pub fn det(&self) -> i64 {
        self.a * self.d
    }

    pub fn basis(&self) -> ((i64, i64), (i64, i64)) {
        ((self.a, 0), (self.b, self.d))
    }

    /// Canonical representative of `p + L` in `[0, a) × [0, d)`.
    pub fn reduce(&self, p: (i64, i64)) -> (i64, i64) {
        let t = p.1.div_euclid(self.d);
        let y = p.1.rem_euclid(self.d);
        ((p.0 - t * self.b).rem_euclid(self.a), y)
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.reduce(p) == (0, 0)
    }

    /// All `det` representatives, ordered by second then first coordinate.
    pub fn representatives(&self) -> Vec<(i64, i64)> {
        (0..self.d).flat_map(|y| (0..self.a).map(move |x| (x, y))).collect()
    }

    /// Translations by lattice vectors must be grid automorphisms.
    pub fn respects(&self, family: GridFamily) -> bool {
        let (u, v) = self.basis();
        family.translation_preserves(u.0, u.1) && family.translation_preserves(v.0, v.1)
    }

    /// Whether the rectangular torus `px × py` is a quotient of `Z² / L`.
    pub fn tiles(&self, px: usize, py: usize) -> bool {
        self.contains((px as i64, 0)) && self.contains((0, py as i64))
    }

    /// Smallest periods `(px, py)`, each at least 5 (and even on the
    /// hexagonal grid), such that `L` contains `(px, 0)` and `(0, py)`.
    pub fn base_torus(&self, family: GridFamily) -> (usize, usize) {
        let ok = |p: usize| p >= MIN_TORUS_PERIOD && (family != GridFamily::Hexagonal || p % 2 == 0);
        let px = (1..).map(|m| m * self.a as usize).find(|&p| ok(p)).unwrap();
        let py = (1..).find(|&p| ok(p) && self.contains((0, p as i64))).unwrap();
        (px, py)
    }

    /// Every lattice of the given determinant, in `(a, b)` order.
    pub fn all_with_det(det: i64) -> Vec<Lattice> {
        (1..=det)
            .filter(|a| det % a == 0)
            .flat_map(|a| (0..a).map(move |b| Lattice { a, b, d: det / a }))
            .collect()
    }
}

/// A lattice-periodic code in an infinite grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicPattern {
    pub family: GridFamily,
    pub v1: (i64, i64),
    pub v2: (i64, i64),
    /// Canonical representatives (see [`Lattice::reduce`]), sorted.
    pub residues: Vec<(i64, i64)>,
}

impl PeriodicPattern {
    pub fn new(
        family: GridFamily,
        v1: (i64, i64),
        v2: (i64, i64),
        residues: impl IntoIterator<Item = (i64, i64)>,
    ) -> Result<Self, ConstructionError> {
        let lattice = Lattice::from_basis(v1, v2)?;
        if !lattice.respects(family) {
            return Err(ConstructionError::LatticeBreaksGrid { family, lattice });
        }
        let mut residues: Vec<(i64, i64)> = residues.into_iter().map(|p| lattice.reduce(p)).collect();
        residues.sort_by_key(|&(x, y)| (y, x));
        residues.dedup();
        if residues.is_empty() {
            return Err(ConstructionError::EmptyPattern);
        }
        Ok(PeriodicPattern { family, v1, v2, residues })
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::from_basis(self.v1, self.v2).expect("validated on construction")
    }

    pub fn density(&self) -> Rational {
        crate::bounds::ratio(self.residues.len() as i64, self.lattice().det())
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        let r = self.lattice().reduce(p);
        self.residues.binary_search_by_key(&(r.1, r.0), |&(x, y)| (y, x)).is_ok()
    }

    pub fn base_torus(&self) -> (usize, usize) {
        self.lattice().base_torus(self.family)
    }

    pub fn torus_spec(&self, px: usize, py: usize) -> Result<TorusSpec, ConstructionError> {
        let spec = TorusSpec::new(self.family, px, py)?;
        if !self.lattice().tiles(px, py) {
            return Err(ConstructionError::IncompatiblePeriods { px, py });
        }
        Ok(spec)
    }

    /// The torus graph for periods `px × py`.
    pub fn torus(&self, px: usize, py: usize) -> Result<Graph, ConstructionError> {
        Ok(Graph::torus(self.torus_spec(px, py)?)?)
    }

    /// Marks every lattice translate of the residues on a compatible torus.
    pub fn code_on<'g>(&self, graph: &'g Graph) -> Result<Code<'g>, ConstructionError> {
        let spec = graph.torus_spec().ok_or(ConstructionError::NotTorus)?;
        if spec.family != self.family {
            return Err(ConstructionError::FamilyMismatch { expected: self.family, found: spec.family });
        }
        self.torus_spec(spec.px, spec.py)?;
        let lattice = self.lattice();
        let members = (0..graph.n()).filter(|&v| {
            let (i, j) = spec.coords(v);
            let r = lattice.reduce((i as i64, j as i64));
            self.residues.binary_search_by_key(&(r.1, r.0), |&(x, y)| (y, x)).is_ok()
        });
        Ok(Code::new(graph, members)?)
    }
}

fn pattern_valid_on(graph: &Graph, pattern: &PeriodicPattern, class: CodeClass) -> bool {
    pattern.code_on(graph).map(|c| c.verify(class).valid).unwrap_or(false)
}

/// First residue set of size `count` (in lexicographic order of
/// representatives) whose periodic code is valid for `class`, or `None`:
/// a certificate that no such pattern exists for this particular lattice.
pub fn pattern_search(
    family: GridFamily,
    v1: (i64, i64),
    v2: (i64, i64),
    count: usize,
    class: CodeClass,
) -> Result<Option<PeriodicPattern>, ConstructionError> {
    let lattice = Lattice::from_basis(v1, v2)?;
    if lattice.det() > MAX_SEARCH_DET {
        return Err(ConstructionError::Intractable { det: lattice.det() });
    }
    if class.r != 1 {
        return Err(ConstructionError::Parameter("pattern search handles radius 1 only".into()));
    }
    if !lattice.respects(family) {
        return Err(ConstructionError::LatticeBreaksGrid { family, lattice });
    }
    let (px, py) = lattice.base_torus(family);
    let graph = Graph::torus(TorusSpec::new(family, px, py)?)?;
    let found = lattice.representatives().into_iter().combinations(count).find_map(|residues| {
        let pattern = PeriodicPattern::new(family, v1, v2, residues).ok()?;
        pattern_valid_on(&graph, &pattern, class).then_some(pattern)
    });
    Ok(found)
}

/// Runs [`pattern_search`] over every admissible lattice of determinant
/// `det`, returning the first hit in lattice order. Lattices are searched
/// in parallel; the answer does not depend on the thread count.
pub fn search_lattices(
    family: GridFamily,
    det: i64,
    count: usize,
    class: CodeClass,
) -> Result<Option<PeriodicPattern>, ConstructionError> {
    if !(1..=MAX_SEARCH_DET).contains(&det) {
        return Err(ConstructionError::Intractable { det });
    }
    let lattices: Vec<Lattice> = Lattice::all_with_det(det).into_iter().filter(|l| l.respects(family)).collect();
    lattices
        .par_iter()
        .map(|l| {
            let (u, v) = l.basis();
            pattern_search(family, u, v, count, class)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

/// A pattern shipped with the crate, with the class it realises and its
/// density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPattern {
    pub id: &'static str,
    pub class: CodeClass,
    pub pattern: PeriodicPattern,
}

pub const BUILTIN_IDS: [&str; 8] = [
    "hex-cover-1/4",
    "tri-lld-2/9",
    "sq-cover-1/5",
    "sq-lid-3/11",
    "hex-lid-3/8",
    "king-lld-3/16",
    "king-lid-2/9",
    "tri-lid-1/4",
];

/// Looks up a shipped pattern. The last five were produced by
/// [`search_lattices`] and are regenerated by the test suite.
pub fn builtin_pattern(id: &str) -> Result<NamedPattern, ConstructionError> {
    use ClassKind::*;
    use GridFamily::*;
    let (family, v1, v2, residues, kind): (_, _, _, Vec<(i64, i64)>, _) = match id {
        "hex-cover-1/4" => (Hexagonal, (4, 0), (0, 2), vec![(0, 0), (2, 1)], LocalLocatingDominating),
        "tri-lld-2/9" => (
            Triangular,
            (3, 0),
            (0, 9),
            (0..9)
                .step_by(3)
                .flat_map(|j| (0..3).filter(move |i| (i + j / 3) % 3 != 2).map(move |i| (i, j)))
                .collect(),
            LocalLocatingDominating,
        ),
        "sq-cover-1/5" => (Square, (1, 2), (2, -1), vec![(0, 0)], Covering),
        "sq-lid-3/11" => (Square, (11, 0), (3, 1), vec![(0, 0), (3, 0), (6, 0)], LocalIdentifying),
        "hex-lid-3/8" => (
            Hexagonal,
            (8, 0),
            (0, 2),
            vec![(0, 0), (1, 0), (2, 0), (4, 1), (5, 1), (6, 1)],
            LocalIdentifying,
        ),
        "king-lld-3/16" => (King, (4, 0), (2, 4), vec![(0, 0), (2, 1), (0, 2)], LocalLocatingDominating),
        "king-lid-2/9" => (King, (6, 0), (3, 3), vec![(0, 0), (2, 0), (4, 1), (1, 2)], LocalIdentifying),
        "tri-lid-1/4" => (Triangular, (2, 0), (0, 2), vec![(0, 0)], LocalIdentifying),
        _ => return Err(ConstructionError::UnknownId(id.to_string())),
    };
    let id = BUILTIN_IDS.into_iter().find(|&k| k == id).expect("matched above");
    Ok(NamedPattern { id, class: CodeClass::unit(kind), pattern: PeriodicPattern::new(family, v1, v2, residues)? })
}

/// Verifies `pattern` for `class` on the base torus scaled by each factor.
pub fn verify_at_scales(
    pattern: &PeriodicPattern,
    class: CodeClass,
    scales: &[usize],
) -> Result<Vec<((usize, usize), bool)>, ConstructionError> {
    let (px, py) = pattern.base_torus();
    scales
        .iter()
        .map(|&m| {
            let graph = pattern.torus(px * m, py * m)?;
            Ok(((px * m, py * m), pattern.code_on(&graph)?.verify(class).valid))
        })
        .collect()
}
