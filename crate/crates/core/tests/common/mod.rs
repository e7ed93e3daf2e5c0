//! Naive reference implementations, written straight from the definitions
//! and sharing nothing with the library beyond the graph adjacency.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use loccodes::codes::ClassKind;
use loccodes::graph::Graph;

pub fn dist_matrix(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &u in g.neighbors(v) {
                    if d[u] == usize::MAX {
                        d[u] = d[v] + 1;
                        q.push_back(u);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn iset(d: &[Vec<usize>], code: &BTreeSet<usize>, v: usize, r: usize) -> BTreeSet<usize> {
    code.iter().copied().filter(|&c| d[v][c] <= r).collect()
}

/// The class condition checked pair by pair over all of `V × V`.
pub fn valid(g: &Graph, d: &[Vec<usize>], code: &BTreeSet<usize>, kind: ClassKind, r: usize) -> bool {
    let n = g.n();
    if kind == ClassKind::TotalDominating {
        return (0..n).all(|v| code.iter().any(|&c| c != v && d[v][c] <= r));
    }
    if (0..n).any(|v| iset(d, code, v, r).is_empty()) {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            let relevant = match kind {
                ClassKind::Covering | ClassKind::TotalDominating => false,
                ClassKind::Identifying => true,
                ClassKind::LocatingDominating => !code.contains(&u) && !code.contains(&v),
                ClassKind::LocalIdentifying => d[u][v] == 1,
                ClassKind::LocalLocatingDominating => d[u][v] == 1 && !code.contains(&u) && !code.contains(&v),
            };
            if relevant && iset(d, code, u, r) == iset(d, code, v, r) {
                return false;
            }
        }
    }
    true
}

pub fn subset(mask: u64, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Smallest valid code by enumerating all subsets; `None` if no subset works.
/// The same definitions as [`valid`], on bitmasks.
pub fn brute_min(g: &Graph, kind: ClassKind, r: usize) -> Option<usize> {
    let n = g.n();
    assert!(n <= 20);
    let d = dist_matrix(g);
    let ball: Vec<u32> = (0..n).map(|v| (0..n).filter(|&u| d[v][u] <= r).fold(0, |m, u| m | 1 << u)).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| match kind {
            ClassKind::LocalIdentifying | ClassKind::LocalLocatingDominating => d[u][v] == 1,
            ClassKind::Identifying | ClassKind::LocatingDominating => true,
            _ => false,
        })
        .collect();
    let exempt = matches!(kind, ClassKind::LocatingDominating | ClassKind::LocalLocatingDominating);
    let ok = |m: u32| {
        if kind == ClassKind::TotalDominating {
            return (0..n).all(|v| ball[v] & m & !(1 << v) != 0);
        }
        (0..n).all(|v| ball[v] & m != 0)
            && pairs.iter().all(|&(u, v)| {
                (exempt && (m >> u & 1 == 1 || m >> v & 1 == 1)) || ball[u] & m != ball[v] & m
            })
    };
    (1u32..1 << n).filter(|&m| ok(m)).map(|m| m.count_ones() as usize).min()
}

pub const KINDS: [ClassKind; 6] = [
    ClassKind::Covering,
    ClassKind::TotalDominating,
    ClassKind::Identifying,
    ClassKind::LocatingDominating,
    ClassKind::LocalIdentifying,
    ClassKind::LocalLocatingDominating,
];

/// Simple xorshift so the oracle does not share a generator with the library.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

pub fn random_graph(rng: &mut XorShift, n: usize, num: u64, den: u64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.chance(num, den)).collect();
    Graph::from_edges(n, edges, None, loccodes::graph::Family::Custom).unwrap()
}
