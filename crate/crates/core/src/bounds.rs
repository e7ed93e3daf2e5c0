//! Shares and counting lower bounds.
//!
//! The share of a codeword `c` of a covering code is `Σ_{u ∈ N[c]} 1/|I(u)|`.
//! Summed over all codewords it counts every vertex exactly once, so a bound
//! `α` on every share forces `|C| ≥ |V| / α`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::Code;
use crate::graph::TorusSpec;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("vertex {0} is not a codeword")]
    NotCodeword(usize),
    #[error("code is not covering: vertex {0} has an empty I-set")]
    NotCovering(usize),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("window bounds need a torus graph")]
    NotTorus,
    #[error("window size {w} exceeds the torus periods {px}x{py}")]
    WindowTooLarge { w: usize, px: usize, py: usize },
}

fn check_covering(code: &Code<'_>) -> Result<(), BoundsError> {
    match (0..code.graph().n()).find(|&v| code.iset_size(v, 1) == 0) {
        Some(v) => Err(BoundsError::NotCovering(v)),
        None => Ok(()),
    }
}

fn share_unchecked(code: &Code<'_>, c: usize) -> Rational {
    code.graph().balls(1)[c]
        .ones()
        .map(|u| Rational::new(BigInt::one(), BigInt::from(code.iset_size(u, 1))))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Exact share of codeword `c` (radius 1). The code must be covering.
pub fn share(code: &Code<'_>, c: usize) -> Result<Rational, BoundsError> {
    if !code.contains(c) {
        return Err(BoundsError::NotCodeword(c));
    }
    check_covering(code)?;
    Ok(share_unchecked(code, c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareProfile {
    pub shares: BTreeMap<usize, Rational>,
    pub max_share: Rational,
}

impl ShareProfile {
    pub fn total(&self) -> Rational {
        self.shares.values().fold(Rational::zero(), |acc, s| acc + s)
    }
}

/// Shares of every codeword. Fails on the first uncovered vertex.
pub fn share_profile(code: &Code<'_>) -> Result<ShareProfile, BoundsError> {
    check_covering(code)?;
    let shares: BTreeMap<usize, Rational> =
        code.vertices().into_iter().map(|c| (c, share_unchecked(code, c))).collect();
    let max_share = shares.values().max().cloned().expect("codes are nonempty");
    Ok(ShareProfile { shares, max_share })
}

/// `|V| / max_share(C)`: no covering code whose shares stay below this
/// code's maximum can be smaller.
pub fn max_share_lower_bound(code: &Code<'_>) -> Result<Rational, BoundsError> {
    let profile = share_profile(code)?;
    Ok(Rational::from_integer(BigInt::from(code.graph().n())) / profile.max_share)
}

/// `⌈3·2^n / (3n − 2)⌉`, a lower bound on local identifying codes in `F^n`.
pub fn hypercube_lid_lower_bound(n: u32) -> Result<u64, BoundsError> {
    if !(3..=60).contains(&n) {
        return Err(BoundsError::Parameter(format!("n = {n} must lie in 3..=60")));
    }
    let num = 3u128 << n;
    let den = 3 * n as u128 - 2;
    Ok(num.div_ceil(den) as u64)
}

/// `2^(2^s + k − s − 1)`: the size of `H_s ⊕ F^k` in `F^(2^s + k − 1)`.
pub fn hypercube_lid_upper_bound(s: u32, k: u32) -> Result<u64, BoundsError> {
    if s < 2 || k < 2 {
        return Err(BoundsError::Parameter(format!("need s >= 2 and k >= 2, got s={s}, k={k}")));
    }
    let exp = (1u64 << s.min(63)) + k as u64 - s as u64 - 1;
    if s > 6 || exp > 63 {
        return Err(BoundsError::Parameter(format!("2^{exp} does not fit in 64 bits")));
    }
    Ok(1u64 << exp)
}

/// Result of sliding a `w × w` window over a torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub w: usize,
    pub kmin: usize,
    pub holds: bool,
    /// Fewest codewords seen in any window.
    pub min_count: usize,
    /// Lower-left corner `(i, j)` of the first window attaining `min_count`
    /// when the bound fails.
    pub witness: Option<(usize, usize)>,
}

impl WindowReport {
    /// When every window holds at least `kmin` codewords, averaging over all
    /// `px·py` translates gives `|C| ≥ kmin·px·py / w²`.
    pub fn implied_lower_bound(&self, spec: &TorusSpec) -> Option<Rational> {
        self.holds.then(|| {
            Rational::new(BigInt::from(self.kmin * spec.px * spec.py), BigInt::from(self.w * self.w))
        })
    }
}

/// Checks that every axis-aligned `w × w` window of the torus (all `px·py`
/// wrapped translates) contains at least `kmin` codewords.
pub fn window_count_bound(code: &Code<'_>, w: usize, kmin: usize) -> Result<WindowReport, BoundsError> {
    let spec = code.graph().torus_spec().ok_or(BoundsError::NotTorus)?;
    if w == 0 || w > spec.px.min(spec.py) {
        return Err(BoundsError::WindowTooLarge { w, px: spec.px, py: spec.py });
    }
    let mut min_count = usize::MAX;
    let mut witness = None;
    for j in 0..spec.py {
        for i in 0..spec.px {
            let count = (0..w)
                .flat_map(|dy| (0..w).map(move |dx| (dx, dy)))
                .filter(|&(dx, dy)| code.contains(spec.index((i + dx) as i64, (j + dy) as i64)))
                .count();
            if count < min_count {
                min_count = count;
                if count < kmin {
                    witness = Some((i, j));
                }
            }
        }
    }
    let holds = min_count >= kmin;
    Ok(WindowReport { w, kmin, holds, min_count, witness: if holds { None } else { witness } })
}

/// `p/q` rendering used in JSON output.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
