mod common;

use std::collections::BTreeSet;

use loccodes::bounds::{self, ratio};
use loccodes::codes::{classes_equivalent_on, ClassKind, Code, CodeClass, Equivalence};
use loccodes::constructions::linear::{self, WordCode};
use loccodes::graph::{Family, Graph, GridFamily, TorusSpec};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, edges, None, Family::Custom).unwrap()
        })
    })
}

fn graph_and_code(max_n: usize) -> impl Strategy<Value = (Graph, BTreeSet<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::btree_set(0..n, 1..=n))
    })
}

fn valid(g: &Graph, set: &BTreeSet<usize>, kind: ClassKind, r: usize) -> bool {
    Code::new(g, set.iter().copied()).unwrap().verify(CodeClass::new(kind, r).unwrap()).valid
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hierarchy((g, set) in graph_and_code(10), r in 1usize..=2) {
        let v = |k| valid(&g, &set, k, r);
        use ClassKind::*;
        if v(Identifying) {
            prop_assert!(v(LocatingDominating) && v(LocalIdentifying));
        }
        if v(LocatingDominating) || v(LocalIdentifying) {
            prop_assert!(v(LocalLocatingDominating));
        }
        for k in [Identifying, LocatingDominating, LocalIdentifying, LocalLocatingDominating, TotalDominating] {
            if v(k) {
                prop_assert!(v(Covering));
            }
        }
    }

    #[test]
    fn covering_is_monotone((g, set) in graph_and_code(10), extra in proptest::collection::btree_set(0usize..10, 0..5)) {
        let bigger: BTreeSet<usize> = set.iter().copied().chain(extra.into_iter().filter(|&v| v < g.n())).collect();
        if valid(&g, &set, ClassKind::Covering, 1) {
            prop_assert!(valid(&g, &bigger, ClassKind::Covering, 1));
        }
    }

    #[test]
    fn witnesses_are_sound((g, set) in graph_and_code(10), r in 1usize..=2) {
        let code = Code::new(&g, set.iter().copied()).unwrap();
        for kind in common::KINDS {
            let report = code.verify(CodeClass::new(kind, r).unwrap());
            prop_assert_eq!(report.valid, report.failure.is_none());
            prop_assert!(report.witness_is_sound(&code));
        }
    }

    #[test]
    fn shares_sum_to_order((g, set) in graph_and_code(10)) {
        let code = Code::new(&g, set.iter().copied()).unwrap();
        if let Ok(profile) = bounds::share_profile(&code) {
            prop_assert_eq!(profile.total(), ratio(g.n() as i64, 1));
            let lower = bounds::max_share_lower_bound(&code).unwrap();
            prop_assert!(lower <= ratio(code.len() as i64, 1));
            for s in profile.shares.values() {
                prop_assert!(*s > ratio(0, 1) && *s <= ratio(g.max_degree() as i64 + 1, 1));
            }
        } else {
            prop_assert!(!code.verify(CodeClass::unit(ClassKind::Covering)).valid);
        }
    }

    #[test]
    fn bipartite_covering_equals_local_ld(
        (a, b) in (1usize..7, 1usize..7),
        bits in proptest::collection::vec(any::<bool>(), 36),
        code in proptest::collection::btree_set(0usize..14, 1..14),
    ) {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)))
            .zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e).collect();
        let g = Graph::from_edges(a + b, edges, None, Family::Custom).unwrap();
        prop_assert!(g.is_triangle_free());
        let code: BTreeSet<usize> = code.into_iter().filter(|&v| v < a + b).collect();
        prop_assume!(!code.is_empty());
        prop_assert_eq!(valid(&g, &code, ClassKind::Covering, 1), valid(&g, &code, ClassKind::LocalLocatingDominating, 1));
    }

    #[test]
    fn hamming_lift_is_linear(s in 2u32..=3, k in 2u32..=3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let lifted = linear::hamming_lift(s, k).unwrap();
        let words: Vec<u64> = lifted.codewords().words.into_iter().collect();
        let (x, y) = (words[i.index(words.len())], words[j.index(words.len())]);
        prop_assert!(lifted.contains(x ^ y));
    }

    #[test]
    fn direct_sum_sizes_multiply(
        a in proptest::collection::btree_set(0u64..8, 1..8),
        b in proptest::collection::btree_set(0u64..16, 1..16),
    ) {
        let (ca, cb) = (WordCode::new(3, a).unwrap(), WordCode::new(4, b).unwrap());
        prop_assert_eq!(linear::direct_sum(&ca, &cb).unwrap().len(), ca.len() * cb.len());
    }
}

#[test]
fn f3_local_id_closed_under_supersets() {
    let q3 = Graph::hypercube(3).unwrap();
    let lid = |m: u32| {
        Code::new(&q3, (0..8).filter(|&v| m >> v & 1 == 1)).unwrap().verify(CodeClass::unit(ClassKind::LocalIdentifying)).valid
    };
    let valid: Vec<bool> = (0..256).map(|m| m > 0 && lid(m)).collect();
    for m in 1..256u32 {
        if valid[m as usize] {
            for extra in 0..8 {
                assert!(valid[(m | 1 << extra) as usize], "{m:08b} + {extra}");
            }
        }
    }
}

#[test]
fn triangle_free_grids_sampled() {
    for family in [GridFamily::Square, GridFamily::Hexagonal] {
        assert!(family.is_triangle_free());
        for (px, py) in [(6, 6), (8, 10), (12, 6)] {
            let g = Graph::torus(TorusSpec::new(family, px, py).unwrap()).unwrap();
            let eq = classes_equivalent_on(
                &g,
                CodeClass::unit(ClassKind::Covering),
                CodeClass::unit(ClassKind::LocalLocatingDominating),
                150,
                px as u64 * 31 + py as u64,
            )
            .unwrap();
            assert!(matches!(eq, Equivalence::Inconclusive { .. }), "{family:?} {px}x{py}: {eq:?}");
        }
    }
    let c8 = Graph::cycle(8).unwrap();
    let eq = classes_equivalent_on(
        &c8,
        CodeClass::unit(ClassKind::Covering),
        CodeClass::unit(ClassKind::LocalLocatingDominating),
        1 << 8,
        0,
    )
    .unwrap();
    assert_eq!(eq, Equivalence::Equivalent { codes_checked: 255 });
}

#[test]
fn triangle_breaks_equivalence() {
    let k3 = Graph::cycle(3).unwrap();
    let code = Code::new(&k3, [0]).unwrap();
    assert!(code.verify(CodeClass::unit(ClassKind::Covering)).valid);
    assert!(!code.verify(CodeClass::unit(ClassKind::LocalLocatingDominating)).valid);
}

#[test]
fn dimension_lift_on_random_f4_codes() {
    let mut rng = common::XorShift(2024);
    let (mut seen, mut with_isolated) = (0, 0);
    while seen < 200 {
        let words: Vec<u64> = (0..16).filter(|_| rng.chance(1, 2)).collect();
        let Ok(code) = WordCode::new(4, words) else { continue };
        if code.is_empty() || !code.is_valid(ClassKind::LocalIdentifying).unwrap() {
            continue;
        }
        seen += 1;
        let predicate = linear::dimension_lift_valid(&code).unwrap();
        with_isolated += usize::from(!predicate);
        let lifted = linear::direct_sum(&WordCode::full_space(1), &code).unwrap();
        assert_eq!(predicate, lifted.is_valid(ClassKind::LocalIdentifying).unwrap(), "{:?}", code.labels());
    }
    assert!(with_isolated > 0, "sample should exercise both sides");
}
