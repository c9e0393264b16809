//! Deterministic enumeration of the labels indexing faces and diagonals.
//!
//! All streams are lazy iterators with a fixed lexicographic emission
//! order, so reports and golden tests are reproducible. Closed-form
//! counts: an N-parallelotope has `2^(N-k) * C(N,k)` k-dimensional faces
//! and `2^(N-k) * C(N, N-k+1)` k-dimensional diagonals.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("k={k} out of range for n={n}: expected {min_k} <= k <= {max_k}")]
    InvalidRange {
        n: usize,
        k: usize,
        min_k: usize,
        max_k: usize,
    },
    #[error("label count overflows u128 for n={n}, k={k}")]
    CountOverflow { n: usize, k: usize },
    #[error("partition parts overlap at index {index}")]
    OverlappingParts { index: usize },
    #[error("partition must cover at least one index")]
    EmptyPartition,
}

/// Strictly increasing set of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset {
    indices: Vec<usize>,
}

impl IndexSubset {
    /// Callers must pass strictly increasing indices.
    pub fn from_sorted(indices: Vec<usize>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must be strictly increasing"
        );
        IndexSubset { indices }
    }

    pub fn empty() -> Self {
        IndexSubset { indices: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn first(&self) -> Option<usize> {
        self.indices.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    /// Indices in `[0, n)` not contained in this subset, ascending.
    pub fn complement(&self, n: usize) -> IndexSubset {
        IndexSubset {
            indices: (0..n).filter(|i| !self.contains(*i)).collect(),
        }
    }

    /// Sorted union of two disjoint subsets.
    pub fn union(&self, other: &IndexSubset) -> IndexSubset {
        let mut merged: Vec<usize> = self.indices.iter().chain(&other.indices).copied().collect();
        merged.sort_unstable();
        merged.dedup();
        IndexSubset { indices: merged }
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, idx) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "}}")
    }
}

/// A k-dimensional face: the spanning subset plus the translation bits of
/// the generators outside it (one bit per absent index, ascending).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceLabel {
    pub subset: IndexSubset,
    pub translation: Vec<bool>,
}

impl FaceLabel {
    pub fn translation_string(&self) -> String {
        self.translation.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.subset, self.translation_string())
    }
}

/// A k-dimensional diagonal: an (N-k+1)-subset T split into two disjoint
/// parts. The diagonal direction is the signed sum `sum(part1) - sum(part2)`.
///
/// Swapping the parts names the same diagonal, so labels are canonical:
/// the minimum index of T always sits in part 1 (hence part 1 is never
/// empty, while part 2 may be).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalLabel {
    part1: IndexSubset,
    part2: IndexSubset,
}

impl DiagonalLabel {
    /// Builds a canonical label, swapping the parts if needed.
    pub fn new(part1: IndexSubset, part2: IndexSubset) -> Result<Self, CombinatoricsError> {
        for idx in part1.iter() {
            if part2.contains(idx) {
                return Err(CombinatoricsError::OverlappingParts { index: idx });
            }
        }
        let min1 = part1.first();
        let min2 = part2.first();
        match (min1, min2) {
            (None, None) => Err(CombinatoricsError::EmptyPartition),
            (Some(_), None) => Ok(DiagonalLabel { part1, part2 }),
            (None, Some(_)) => Ok(DiagonalLabel { part1: part2, part2: part1 }),
            (Some(a), Some(b)) => {
                if a < b {
                    Ok(DiagonalLabel { part1, part2 })
                } else {
                    Ok(DiagonalLabel { part1: part2, part2: part1 })
                }
            }
        }
    }

    pub fn part1(&self) -> &IndexSubset {
        &self.part1
    }

    pub fn part2(&self) -> &IndexSubset {
        &self.part2
    }

    /// The underlying subset T = part1 u part2.
    pub fn support(&self) -> IndexSubset {
        self.part1.union(&self.part2)
    }
}

impl fmt::Display for DiagonalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.part1, self.part2)
    }
}

/// Lexicographic stream of all k-subsets of `{0, ..., n-1}`.
pub fn k_subsets(n: usize, k: usize) -> Result<KSubsets, CombinatoricsError> {
    if k > n {
        return Err(CombinatoricsError::InvalidRange { n, k, min_k: 0, max_k: n });
    }
    Ok(KSubsets {
        n,
        k,
        next: Some((0..k).collect()),
    })
}

pub struct KSubsets {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = IndexSubset;

    fn next(&mut self) -> Option<IndexSubset> {
        let current = self.next.take()?;
        // lexicographic successor: bump the rightmost index that can move
        let mut succ = current.clone();
        let mut pos = self.k;
        while pos > 0 {
            pos -= 1;
            if succ[pos] < self.n - self.k + pos {
                succ[pos] += 1;
                for j in (pos + 1)..self.k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(IndexSubset::from_sorted(current))
    }
}

fn check_face_dimension(n: usize, k: usize) -> Result<(), CombinatoricsError> {
    if n < 2 || k == 0 || k > n - 1 {
        return Err(CombinatoricsError::InvalidRange {
            n,
            k,
            min_k: 1,
            max_k: n.saturating_sub(1),
        });
    }
    if n - k >= 128 {
        return Err(CombinatoricsError::CountOverflow { n, k });
    }
    Ok(())
}

/// Stream of all `2^(n-k) * C(n,k)` face labels, subset-major, translation
/// bits counting up in binary.
pub fn face_labels(n: usize, k: usize) -> Result<FaceLabels, CombinatoricsError> {
    check_face_dimension(n, k)?;
    Ok(FaceLabels {
        subsets: k_subsets(n, k)?,
        current: None,
        bits: 0,
        total: 1u128 << (n - k),
        width: n - k,
    })
}

pub struct FaceLabels {
    subsets: KSubsets,
    current: Option<IndexSubset>,
    bits: u128,
    total: u128,
    width: usize,
}

fn bit_vector(bits: u128, width: usize) -> Vec<bool> {
    (0..width).map(|j| bits >> (width - 1 - j) & 1 == 1).collect()
}

impl Iterator for FaceLabels {
    type Item = FaceLabel;

    fn next(&mut self) -> Option<FaceLabel> {
        if self.current.is_none() {
            self.current = Some(self.subsets.next()?);
            self.bits = 0;
        }
        let subset = self.current.clone().expect("set above");
        let label = FaceLabel {
            subset,
            translation: bit_vector(self.bits, self.width),
        };
        self.bits += 1;
        if self.bits == self.total {
            self.current = None;
        }
        Some(label)
    }
}

/// Stream of all `2^(n-k) * C(n, n-k+1)` canonical diagonal labels. For
/// each support T (lexicographic), part 2 runs over the subsets of
/// T minus its minimum, bits counting up in binary.
pub fn diagonal_labels(n: usize, k: usize) -> Result<DiagonalLabels, CombinatoricsError> {
    check_face_dimension(n, k)?;
    Ok(DiagonalLabels {
        supports: k_subsets(n, n - k + 1)?,
        current: None,
        bits: 0,
        total: 1u128 << (n - k),
        width: n - k,
    })
}

pub struct DiagonalLabels {
    supports: KSubsets,
    current: Option<IndexSubset>,
    bits: u128,
    total: u128,
    width: usize,
}

impl Iterator for DiagonalLabels {
    type Item = DiagonalLabel;

    fn next(&mut self) -> Option<DiagonalLabel> {
        if self.current.is_none() {
            self.current = Some(self.supports.next()?);
            self.bits = 0;
        }
        let support = self.current.clone().expect("set above");
        let elems = support.as_slice();
        let chosen = bit_vector(self.bits, self.width);
        let mut part1 = vec![elems[0]];
        let mut part2 = Vec::new();
        for (slot, &idx) in elems[1..].iter().enumerate() {
            if chosen[slot] {
                part2.push(idx);
            } else {
                part1.push(idx);
            }
        }
        self.bits += 1;
        if self.bits == self.total {
            self.current = None;
        }
        Some(DiagonalLabel {
            part1: IndexSubset::from_sorted(part1),
            part2: IndexSubset::from_sorted(part2),
        })
    }
}

/// `C(n, r)` in exact integer arithmetic.
pub fn binomial(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc.checked_mul((n - r + i) as u128)? / i as u128;
    }
    Some(acc)
}

/// Closed-form face count `2^(n-k) * C(n,k)`.
pub fn count_faces(n: usize, k: usize) -> Result<u128, CombinatoricsError> {
    check_face_dimension(n, k)?;
    let overflow = CombinatoricsError::CountOverflow { n, k };
    let pow = 1u128.checked_shl((n - k) as u32).ok_or(overflow.clone())?;
    let choose = binomial(n, k).ok_or(overflow.clone())?;
    pow.checked_mul(choose).ok_or(overflow)
}

/// Closed-form diagonal count `2^(n-k) * C(n, n-k+1)`.
pub fn count_diagonals(n: usize, k: usize) -> Result<u128, CombinatoricsError> {
    check_face_dimension(n, k)?;
    let overflow = CombinatoricsError::CountOverflow { n, k };
    let pow = 1u128.checked_shl((n - k) as u32).ok_or(overflow.clone())?;
    let choose = binomial(n, n - k + 1).ok_or(overflow.clone())?;
    pow.checked_mul(choose).ok_or(overflow)
}
