//! Hypercube codes as sets of binary words: Hamming codes, direct sums and
//! the lifts that turn covering codes into local identifying codes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::codes::{ClassKind, Code, CodeClass};
use crate::graph::{word_label, Graph};

/// A code in `F^dim`. Word bits are big-endian: the first letter of the
/// label is bit `dim - 1`, matching vertex indices of [`Graph::hypercube`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordCode {
    pub dim: u32,
    pub words: BTreeSet<u64>,
}

impl WordCode {
    pub fn new(dim: u32, words: impl IntoIterator<Item = u64>) -> Result<Self, ConstructionError> {
        let words: BTreeSet<u64> = words.into_iter().collect();
        if let Some(&w) = words.iter().find(|&&w| dim < 64 && w >> dim != 0) {
            return Err(ConstructionError::WordOutOfRange { word: w, dim });
        }
        Ok(WordCode { dim, words })
    }

    /// The whole space `F^dim`.
    pub fn full_space(dim: u32) -> Self {
        WordCode { dim, words: (0..1u64 << dim).collect() }
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self, ConstructionError> {
        let dim = labels.first().map_or(0, |l| l.as_ref().len()) as u32;
        let mut words = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            match crate::graph::parse_word(l) {
                Some(w) if l.len() as u32 == dim => words.push(w),
                _ => return Err(ConstructionError::BadWord(l.to_string())),
            }
        }
        WordCode::new(dim, words)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.words.iter().map(|&w| word_label(w, self.dim)).collect()
    }

    pub fn graph(&self) -> Result<Graph, ConstructionError> {
        Ok(Graph::hypercube(self.dim)?)
    }

    /// Binds the words to `graph`, which must be the hypercube of this dimension.
    pub fn on<'g>(&self, graph: &'g Graph) -> Result<Code<'g>, ConstructionError> {
        if graph.hypercube_dim() != Some(self.dim) {
            return Err(ConstructionError::DimensionMismatch { expected: self.dim });
        }
        Ok(Code::new(graph, self.words.iter().map(|&w| w as usize))?)
    }

    /// `|I(c)|` at radius 1 for a word `c`.
    pub fn iset_size(&self, c: u64) -> usize {
        usize::from(self.words.contains(&c))
            + (0..self.dim).filter(|&b| self.words.contains(&(c ^ 1 << b))).count()
    }

    /// Smallest `|I(c)|` over codewords.
    pub fn min_codeword_iset(&self) -> usize {
        self.words.iter().map(|&c| self.iset_size(c)).min().unwrap_or(0)
    }

    pub fn is_valid(&self, kind: ClassKind) -> Result<bool, ConstructionError> {
        let g = self.graph()?;
        Ok(self.on(&g)?.verify(CodeClass::unit(kind)).valid)
    }
}

/// `C1 ⊕ C2 = {(c1, c2)}`; `c1` occupies the leading coordinates.
pub fn direct_sum(first: &WordCode, second: &WordCode) -> Result<WordCode, ConstructionError> {
    let dim = first.dim + second.dim;
    if dim > crate::graph::MAX_HYPERCUBE_DIM {
        return Err(ConstructionError::TooLarge(dim));
    }
    let words = first.words.iter().flat_map(|&a| second.words.iter().map(move |&b| a << second.dim | b));
    WordCode::new(dim, words)
}

/// A binary linear code given by its parity-check columns and a generator basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    pub length: u32,
    pub dimension: u32,
    /// Column `j` of the parity-check matrix for coordinate `j` (leftmost letter first).
    pub parity_columns: Vec<u64>,
    pub generators: Vec<u64>,
}

impl LinearCode {
    pub fn syndrome(&self, word: u64) -> u64 {
        (0..self.length)
            .filter(|&j| word >> (self.length - 1 - j) & 1 == 1)
            .fold(0, |acc, j| acc ^ self.parity_columns[j as usize])
    }

    pub fn contains(&self, word: u64) -> bool {
        self.syndrome(word) == 0
    }

    /// All `2^dimension` codewords, spanned by the generators.
    pub fn codewords(&self) -> WordCode {
        let mut words = BTreeSet::from([0u64]);
        for &g in &self.generators {
            let shifted: Vec<u64> = words.iter().map(|&w| w ^ g).collect();
            words.extend(shifted);
        }
        WordCode { dim: self.length, words }
    }

    /// `self ⊕ F^k`: `k` free coordinates appended on the right.
    pub fn extend_free(&self, k: u32) -> LinearCode {
        let mut parity_columns = self.parity_columns.clone();
        parity_columns.extend(std::iter::repeat_n(0, k as usize));
        let mut generators: Vec<u64> = self.generators.iter().map(|&g| g << k).collect();
        generators.extend((0..k).rev().map(|b| 1u64 << b));
        LinearCode { length: self.length + k, dimension: self.dimension + k, parity_columns, generators }
    }
}

/// Kernel basis of the parity-check map by Gaussian elimination over GF(2).
fn kernel_basis(length: u32, columns: &[u64]) -> Vec<u64> {
    // Rows of the augmented matrix [column_j | e_j]; reducing the column part
    // to zero leaves kernel vectors in the identity part.
    let mut rows: Vec<(u64, u64)> =
        (0..length).map(|j| (columns[j as usize], 1u64 << (length - 1 - j))).collect();
    let mut pivot_row = 0;
    for bit in (0..64).rev() {
        if let Some(p) = (pivot_row..rows.len()).find(|&i| rows[i].0 >> bit & 1 == 1) {
            rows.swap(pivot_row, p);
            let pivot = rows[pivot_row];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != pivot_row && row.0 >> bit & 1 == 1 {
                    row.0 ^= pivot.0;
                    row.1 ^= pivot.1;
                }
            }
            pivot_row += 1;
        }
    }
    rows.into_iter().filter(|r| r.0 == 0).map(|r| r.1).collect()
}

/// The Hamming code of length `2^s − 1`: parity-check column `j` is the
/// binary expansion of `j + 1`.
pub fn hamming(s: u32) -> Result<LinearCode, ConstructionError> {
    if s < 2 {
        return Err(ConstructionError::Parameter(format!("hamming needs s >= 2, got {s}")));
    }
    if s > 6 {
        return Err(ConstructionError::TooLarge((1 << s.min(31)) - 1));
    }
    let length = (1u32 << s) - 1;
    let parity_columns: Vec<u64> = (1..=length as u64).collect();
    let generators = kernel_basis(length, &parity_columns);
    debug_assert_eq!(generators.len() as u32, length - s);
    Ok(LinearCode { length, dimension: length - s, parity_columns, generators })
}

/// `H_s ⊕ F^k`, a linear local identifying code in `F^(2^s − 1 + k)`.
pub fn hamming_lift(s: u32, k: u32) -> Result<LinearCode, ConstructionError> {
    if s < 2 || k < 2 {
        return Err(ConstructionError::Parameter(format!("need s >= 2 and k >= 2, got s={s}, k={k}")));
    }
    let lifted = hamming(s)?.extend_free(k);
    if lifted.length > crate::graph::MAX_HYPERCUBE_DIM {
        return Err(ConstructionError::TooLarge(lifted.length));
    }
    Ok(lifted)
}

/// `F² ⊕ C` for a covering code `C`: every codeword then has `|I(c)| ≥ 3`,
/// which makes the result local identifying.
pub fn lift_covering_to_lid(code: &WordCode) -> Result<WordCode, ConstructionError> {
    if !code.is_valid(ClassKind::Covering)? {
        return Err(ConstructionError::NotClass(ClassKind::Covering));
    }
    direct_sum(&WordCode::full_space(2), code)
}

/// For a local identifying code `C`, `F ⊕ C` is local identifying iff every
/// codeword has `|I(c)| ≥ 2`. Returns that predicate.
pub fn dimension_lift_valid(code: &WordCode) -> Result<bool, ConstructionError> {
    if !code.is_valid(ClassKind::LocalIdentifying)? {
        return Err(ConstructionError::NotClass(ClassKind::LocalIdentifying));
    }
    Ok(code.min_codeword_iset() >= 2)
}
