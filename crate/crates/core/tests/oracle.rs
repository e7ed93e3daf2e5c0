mod common;

use common::{brute_min, dist_matrix, random_graph, subset, valid, XorShift, KINDS};
use loccodes::codes::{admits, ClassKind, Code, CodeClass};
use loccodes::graph::Graph;
use loccodes::solver::{solve_min, SolveBudget, SolveError};

#[test]
fn verify_matches_definitions() {
    let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
    for round in 0..150 {
        let n = 2 + rng.below(9) as usize;
        let g = random_graph(&mut rng, n, 2 + round % 3, 6);
        let d = dist_matrix(&g);
        for _ in 0..6 {
            let mask = 1 + rng.below((1 << n) - 1);
            let set = subset(mask, n);
            let code = Code::new(&g, set.iter().copied()).unwrap();
            for kind in KINDS {
                for r in 1..=2 {
                    let report = code.verify(CodeClass::new(kind, r).unwrap());
                    assert_eq!(report.valid, valid(&g, &d, &set, kind, r), "{kind} r={r} on {:?} code {set:?}", g.edges().collect::<Vec<_>>());
                    assert!(report.witness_is_sound(&code));
                }
            }
        }
    }
}

fn agree(g: &Graph, kind: ClassKind, r: usize) {
    let class = CodeClass::new(kind, r).unwrap();
    let expected = brute_min(g, kind, r);
    match solve_min(g, class, &SolveBudget::default()) {
        Ok(res) => {
            assert!(res.exhausted_below);
            assert_eq!(Some(res.optimal_size), expected, "{kind} r={r} on {:?}", g.family());
            let witness = Code::new(g, res.witness.iter().copied()).unwrap();
            assert!(witness.verify(class).valid);
        }
        Err(SolveError::Inadmissible { .. } | SolveError::Isolated(_)) => {
            assert_eq!(expected, None, "{kind} r={r}");
            if matches!(kind, ClassKind::Identifying | ClassKind::LocalIdentifying) {
                assert!(!admits(g, kind, r).admits());
            }
        }
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn solver_matches_brute_force_on_named_graphs() {
    let graphs = [
        Graph::hypercube(3).unwrap(),
        Graph::hypercube(4).unwrap(),
        Graph::path(9).unwrap(),
        Graph::cycle(11).unwrap(),
        Graph::complete_bipartite(2, 5).unwrap(),
        Graph::complete_bipartite(3, 4).unwrap(),
        Graph::figure_by_name("1").unwrap(),
        Graph::figure_by_name("2").unwrap(),
    ];
    for g in &graphs {
        for kind in KINDS {
            agree(g, kind, 1);
        }
    }
    for g in &graphs[2..] {
        for kind in [ClassKind::Covering, ClassKind::Identifying, ClassKind::LocalIdentifying, ClassKind::LocatingDominating] {
            agree(g, kind, 2);
        }
    }
}

#[test]
fn solver_matches_brute_force_on_random_graphs() {
    let mut rng = XorShift(77);
    for round in 0..40 {
        let n = 4 + rng.below(8) as usize;
        let g = random_graph(&mut rng, n, 1 + round % 3, 5);
        for kind in KINDS {
            agree(&g, kind, 1 + (round as usize % 4 == 0) as usize);
        }
    }
}
