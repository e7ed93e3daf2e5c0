//! The reproduction matrix: every published value this crate can recompute,
//! grouped as `hypercube`, `grids` and `general`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{self, format_rational, ratio};
use crate::codes::{admits, classes_equivalent_on, Admissibility, ClassKind, Code, CodeClass, Equivalence};
use crate::constructions::linear::{self, WordCode};
use crate::constructions::patterns::{builtin_pattern, verify_at_scales, BUILTIN_IDS};
use crate::constructions::{explicit, ConstructionError};
use crate::graph::{Graph, GridFamily, TorusSpec, VertexSet};
use crate::solver::{solve_min, SolveBudget};

pub const GROUPS: [&str; 3] = ["hypercube", "grids", "general"];

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub id: String,
    pub group: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Outcome = Result<(bool, String), Box<dyn std::error::Error + Send + Sync>>;

struct Spec {
    id: String,
    group: &'static str,
    run: Box<dyn Fn() -> Outcome>,
}

fn row(id: impl Into<String>, group: &'static str, run: impl Fn() -> Outcome + 'static) -> Spec {
    Spec { id: id.into(), group, run: Box::new(run) }
}

fn optimum(graph: &Graph, kind: ClassKind) -> Result<(usize, bool), crate::solver::SolveError> {
    let res = solve_min(graph, CodeClass::unit(kind), &SolveBudget::default())?;
    Ok((res.optimal_size, res.exhausted_below))
}

fn hypercube_optima(kind: ClassKind, expected: [usize; 4]) -> Outcome {
    let mut got = Vec::new();
    let mut certified = true;
    for dim in 2..=5 {
        let (size, exact) = optimum(&Graph::hypercube(dim)?, kind)?;
        got.push(size);
        certified &= exact;
    }
    Ok((certified && got == expected, format!("n=2..5: {got:?}, expected {expected:?}")))
}

fn lid() -> CodeClass {
    CodeClass::unit(ClassKind::LocalIdentifying)
}

fn hypercube_rows(seed: u64) -> Vec<Spec> {
    let mut rows = vec![
        row("optima-covering", "hypercube", || hypercube_optima(ClassKind::Covering, [2, 2, 4, 7])),
        row("optima-local-id", "hypercube", || hypercube_optima(ClassKind::LocalIdentifying, [2, 4, 6, 8])),
        row("optima-id", "hypercube", || hypercube_optima(ClassKind::Identifying, [3, 4, 7, 10])),
        row("optima-ld", "hypercube", || hypercube_optima(ClassKind::LocatingDominating, [2, 4, 6, 10])),
        row("f3-id-equals-local-id", "hypercube", || {
            let q3 = Graph::hypercube(3)?;
            let eq = classes_equivalent_on(&q3, CodeClass::unit(ClassKind::Identifying), lid(), 1 << 8, 0)?;
            Ok((matches!(eq, Equivalence::Equivalent { .. }), format!("{eq:?}")))
        }),
    ];
    for (id, size) in [("f2-lid", 2), ("f4-lid6", 6), ("f6-lid15", 15)] {
        rows.push(row(format!("explicit-{id}"), "hypercube", move || {
            let e = explicit(id)?;
            let report = e.verify()?;
            Ok((report.valid && e.size == size, format!("size {}, valid {}", e.size, report.valid)))
        }));
    }
    rows.push(row("f6-lid15-induced-paths", "hypercube", || {
        let shapes = induced_components(&explicit("f6-lid15")?)?;
        let ok = shapes.len() == 5 && shapes.iter().all(|&s| s == (3, 2));
        Ok((ok, format!("components (vertices, edges): {shapes:?}")))
    }));
    rows.push(row("hamming-3-partition", "hypercube", || {
        let code = linear::hamming(3)?.codewords();
        let mut hits = vec![0u32; 128];
        for &c in &code.words {
            hits[c as usize] += 1;
            (0..7).for_each(|b| hits[(c ^ 1 << b) as usize] += 1);
        }
        let ok = code.len() == 16 && hits.iter().all(|&h| h == 1);
        Ok((ok, format!("{} codewords, every word covered once: {ok}", code.len())))
    }));
    rows.push(row("hamming-lift-2-2", "hypercube", || {
        let code = linear::hamming_lift(2, 2)?.codewords();
        let formula = bounds::hypercube_lid_upper_bound(2, 2)?;
        let valid = code.is_valid(ClassKind::LocalIdentifying)?;
        Ok((valid && code.len() as u64 == formula, format!("size {} (formula {formula}), valid {valid}", code.len())))
    }));
    rows.push(row("lift-covering", "hypercube", || {
        let mut sizes = Vec::new();
        let mut ok = true;
        for dim in [3u32, 4] {
            let g = Graph::hypercube(dim)?;
            let res = solve_min(&g, CodeClass::unit(ClassKind::Covering), &SolveBudget::default())?;
            let cover = WordCode::new(dim, res.witness.iter().map(|&v| v as u64))?;
            let lifted = linear::lift_covering_to_lid(&cover)?;
            ok &= lifted.is_valid(ClassKind::LocalIdentifying)?;
            sizes.push(lifted.len());
        }
        Ok((ok && sizes == [8, 16], format!("sizes {sizes:?}")))
    }));
    rows.push(row("lid-lower-formula", "hypercube", || {
        let vals: Vec<u64> =
            [3, 4, 5, 9].into_iter().map(bounds::hypercube_lid_lower_bound).collect::<Result<_, _>>()?;
        let mut ok = vals == [4, 5, 8, 62];
        for (dim, &f) in (3..=5).zip(&vals) {
            let (opt, _) = optimum(&Graph::hypercube(dim)?, ClassKind::LocalIdentifying)?;
            ok &= f <= opt as u64;
            if dim == 5 {
                ok &= f == opt as u64;
            }
        }
        Ok((ok, format!("n=3,4,5,9: {vals:?}")))
    }));
    rows.push(row("dimension-lift", "hypercube", move || {
        let (agree, total) = dimension_lift_agreement(200, seed)?;
        Ok((agree == total, format!("{agree}/{total} codes agree")))
    }));
    rows
}

/// Sizes `(vertices, edges)` of the components induced by the codewords.
fn induced_components(e: &crate::constructions::ExplicitCode) -> Result<Vec<(usize, usize)>, ConstructionError> {
    let g = e.graph()?;
    let code = e.code(&g)?;
    let mut seen = VertexSet::with_capacity(g.n());
    let mut shapes = Vec::new();
    for s in code.vertices() {
        if seen.contains(s) {
            continue;
        }
        let (mut stack, mut verts, mut degree_sum) = (vec![s], 0, 0);
        seen.insert(s);
        while let Some(v) = stack.pop() {
            verts += 1;
            for &u in g.neighbors(v).iter().filter(|&&u| code.contains(u)) {
                degree_sum += 1;
                if !seen.put(u) {
                    stack.push(u);
                }
            }
        }
        shapes.push((verts, degree_sum / 2));
    }
    shapes.sort();
    Ok(shapes)
}

/// Samples random local identifying codes in `F^4` and compares the lift
/// predicate with direct verification of `F ⊕ C` in `F^5`.
pub fn dimension_lift_agreement(samples: usize, seed: u64) -> Result<(usize, usize), ConstructionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agree, mut total) = (0, 0);
    while total < samples {
        let words = (0..16u64).filter(|_| rng.gen_bool(0.5));
        let code = match WordCode::new(4, words) {
            Ok(c) if !c.is_empty() && c.is_valid(ClassKind::LocalIdentifying)? => c,
            _ => continue,
        };
        let predicate = linear::dimension_lift_valid(&code)?;
        let lifted = linear::direct_sum(&WordCode::full_space(1), &code)?;
        total += 1;
        agree += usize::from(predicate == lifted.is_valid(ClassKind::LocalIdentifying)?);
    }
    Ok((agree, total))
}

fn grid_rows(seed: u64) -> Vec<Spec> {
    let mut rows: Vec<Spec> = BUILTIN_IDS
        .iter()
        .map(|&id| {
            row(format!("pattern-{id}"), "grids", move || {
                let named = builtin_pattern(id)?;
                let claimed = id.rsplit('-').next().unwrap_or_default();
                let density = format_rational(&named.pattern.density());
                let scales = verify_at_scales(&named.pattern, named.class, &[1, 2])?;
                let (px, py) = scales[0].0;
                let g = named.pattern.torus(px, py)?;
                let count = named.pattern.code_on(&g)?.len();
                let exact = count as i64 * named.pattern.lattice().det()
                    == (named.pattern.residues.len() * px * py) as i64;
                let ok = density == claimed && exact && scales.iter().all(|s| s.1);
                Ok((ok, format!("density {density}, {} on tori {scales:?}", named.class)))
            })
        })
        .collect();
    rows.push(row("tri-lld-2/9-square-tori", "grids", || {
        let named = builtin_pattern("tri-lld-2/9")?;
        let mut counts = Vec::new();
        let mut ok = true;
        for p in [9, 18] {
            let g = named.pattern.torus(p, p)?;
            let code = named.pattern.code_on(&g)?;
            ok &= code.verify(named.class).valid && code.len() * 9 == 2 * p * p;
            counts.push(code.len());
        }
        Ok((ok, format!("codewords on 9x9 and 18x18: {counts:?}")))
    }));
    rows.push(row("sq-cover-1/5-perfect", "grids", || {
        let p = builtin_pattern("sq-cover-1/5")?.pattern;
        let g = p.torus(10, 10)?;
        let code = p.code_on(&g)?;
        let once = (0..g.n()).all(|v| code.iset_size(v, 1) == 1);
        Ok((once && code.len() == 20, format!("{} codewords, each vertex covered once: {once}", code.len())))
    }));
    rows.push(row("king-window-3/16", "grids", || {
        let p = builtin_pattern("king-lld-3/16")?.pattern;
        let g = p.torus(8, 8)?;
        let code = p.code_on(&g)?;
        let rep = bounds::window_count_bound(&code, 4, 3)?;
        let spec = g.torus_spec().expect("torus");
        let implied = rep.implied_lower_bound(&spec);
        let ok = rep.holds && implied == Some(ratio(code.len() as i64, 1)) && code.len() == 12;
        Ok((ok, format!("min window count {}, implied bound {:?}, |C| = {}", rep.min_count, implied.map(|q| format_rational(&q)), code.len())))
    }));
    rows.push(row("triangle-free-tori", "grids", move || {
        let mut checked = 0;
        for family in [GridFamily::Square, GridFamily::Hexagonal] {
            for (px, py) in [(6, 6), (6, 8), (8, 8), (10, 6)] {
                let g = Graph::torus(TorusSpec::new(family, px, py)?)?;
                let eq = classes_equivalent_on(
                    &g,
                    CodeClass::unit(ClassKind::Covering),
                    CodeClass::unit(ClassKind::LocalLocatingDominating),
                    200,
                    seed.wrapping_add(checked),
                )?;
                if let Equivalence::Counterexample { .. } = eq {
                    return Ok((false, format!("{family:?} {px}x{py}: {eq:?}")));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} tori, 200 codes each")))
    }));
    rows
}

fn general_rows(seed: u64) -> Vec<Spec> {
    vec![
        row("complete-bipartite", "general", || {
            let mut got = Vec::new();
            let mut ok = true;
            for n in 3..=5 {
                let g = Graph::complete_bipartite(2, n)?;
                let sizes: Vec<usize> = [
                    ClassKind::Identifying,
                    ClassKind::LocatingDominating,
                    ClassKind::LocalIdentifying,
                    ClassKind::LocalLocatingDominating,
                ]
                .into_iter()
                .map(|k| optimum(&g, k).map(|r| r.0))
                .collect::<Result<_, _>>()?;
                ok &= sizes == [n, n, 2, 2];
                got.push(sizes);
            }
            Ok((ok, format!("n=3..5 (id, ld, lid, lld): {got:?}")))
        }),
        row("share-fig2", "general", || {
            let e = explicit("fig2-cover")?;
            let g = e.graph()?;
            let code = e.code(&g)?;
            let c = g.vertex_by_label("v2").expect("fig2 has v2");
            let s = bounds::share(&code, c)?;
            Ok((s == ratio(13, 6), format!("s(c) = {}", format_rational(&s))))
        }),
        row("share-identity", "general", move || {
            let (ok, total) = share_identity_sample(100, seed)?;
            Ok((ok == total, format!("{ok}/{total} random covering codes sum to |V|")))
        }),
        row("fig1-admissibility", "general", || {
            let g = Graph::figure_by_name("1")?;
            let id = admits(&g, ClassKind::Identifying, 2);
            let local = admits(&g, ClassKind::LocalIdentifying, 2);
            let code = explicit("fig1-l2id")?;
            let valid = code.verify()?.valid;
            let ok = matches!(id, Admissibility::Twins { .. }) && local.admits() && valid;
            Ok((ok, format!("id: {id:?}, local id: {local:?}, darkened code valid: {valid}")))
        }),
        row("triangle-free-bipartite", "general", move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..50 {
                let g = random_bipartite(&mut rng, 14);
                let eq = classes_equivalent_on(
                    &g,
                    CodeClass::unit(ClassKind::Covering),
                    CodeClass::unit(ClassKind::LocalLocatingDominating),
                    300,
                    seed.wrapping_add(i),
                )?;
                if let Equivalence::Counterexample { .. } = eq {
                    return Ok((false, format!("graph {i}: {eq:?}")));
                }
            }
            let c6 = Graph::cycle(6)?;
            let eq = classes_equivalent_on(
                &c6,
                CodeClass::unit(ClassKind::Covering),
                CodeClass::unit(ClassKind::LocalLocatingDominating),
                1 << 6,
                0,
            )?;
            Ok((matches!(eq, Equivalence::Equivalent { .. }), format!("50 random graphs agree; C6 exhaustive: {eq:?}")))
        }),
    ]
}

/// A random bipartite graph on at most `max_n` vertices.
pub fn random_bipartite(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let split = rng.gen_range(1..n);
    let p = rng.gen_range(0.2..0.8);
    let edges: Vec<(usize, usize)> =
        (0..split).flat_map(|u| (split..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges, None, crate::graph::Family::Custom).expect("indices in range")
}

/// Draws random covering codes on a fixed corpus and checks that the shares
/// of each sum to `|V|`. Returns `(agreeing, total)`.
pub fn share_identity_sample(samples: usize, seed: u64) -> Result<(usize, usize), Box<dyn std::error::Error + Send + Sync>> {
    let corpus = [
        Graph::hypercube(3)?,
        Graph::hypercube(4)?,
        Graph::cycle(9)?,
        Graph::path(7)?,
        Graph::complete_bipartite(2, 5)?,
        Graph::figure_by_name("1")?,
        Graph::torus(TorusSpec::new(GridFamily::Square, 6, 6)?)?,
        Graph::torus(TorusSpec::new(GridFamily::King, 5, 5)?)?,
        Graph::torus(TorusSpec::new(GridFamily::Triangular, 5, 6)?)?,
        Graph::torus(TorusSpec::new(GridFamily::Hexagonal, 6, 6)?)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for i in 0..samples {
        let g = &corpus[i % corpus.len()];
        let code = random_covering(g, &mut rng);
        let total = bounds::share_profile(&code)?.total();
        ok += usize::from(total == ratio(g.n() as i64, 1));
    }
    Ok((ok, samples))
}

/// A random subset, completed to a covering code by adding every uncovered
/// vertex.
pub fn random_covering<'g>(graph: &'g Graph, rng: &mut impl Rng) -> Code<'g> {
    let p = rng.gen_range(0.05..0.6);
    let mut set = VertexSet::with_capacity(graph.n());
    (0..graph.n()).filter(|_| rng.gen_bool(p)).for_each(|v| set.insert(v));
    let balls = graph.balls(1);
    for v in 0..graph.n() {
        if balls[v].is_disjoint(&set) {
            set.insert(v);
        }
    }
    Code::from_set(graph, set).expect("covering codes are nonempty")
}

/// Runs the rows whose group equals, or whose id contains, `only` (all rows
/// when `None`). Sampled rows draw from `seed`.
pub fn run(only: Option<&str>, seed: u64) -> Vec<CheckRow> {
    let specs = hypercube_rows(seed).into_iter().chain(grid_rows(seed)).chain(general_rows(seed));
    specs
        .filter(|s| only.is_none_or(|f| s.group == f || s.id.contains(f)))
        .map(|s| {
            let start = Instant::now();
            let (passed, detail) = match (s.run)() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckRow { id: s.id, group: s.group, passed, detail, millis: start.elapsed().as_millis() }
        })
        .collect()
}
