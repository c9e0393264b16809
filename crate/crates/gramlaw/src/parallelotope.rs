//! Parallelotope model: face and diagonal measures, quadratic means, and
//! the ratio-law verifier.
//!
//! For an N-parallelotope with generators `a_0, ..., a_{N-1}` and a face
//! dimension `1 <= k <= N-1`:
//!
//! * a face labeled `(S, I)` has squared measure `det(gram(a_i : i in S))`,
//!   independent of the translation bits `I`;
//! * a diagonal labeled `(T1, T2)` has squared measure
//!   `det(gram({V} u {a_w : w not in T}))` with `V = sum(T1) - sum(T2)`;
//! * the mean of the squared diagonal measures divided by the mean of the
//!   squared face measures equals `N - k + 1`, exactly over the rationals.
//!
//! [`Generators::verify`] recomputes both means by full enumeration and
//! reports the ratio next to its expected value.

use thiserror::Error;

use crate::combinatorics::{
    self, CombinatoricsError, DiagonalLabel, FaceLabel, IndexSubset,
};
use crate::exec;
use crate::measure::{self, GramMatrix, MeasureError, Vector};
use crate::scalar::{ArithmeticMode, Scalar};

/// Default float-mode verification tolerance, relative to the expected
/// ratio: pass when `|ratio_sq - (N-k+1)| <= tol * (N-k+1)`.
pub const DEFAULT_REL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("generator family is empty")]
    NoGenerators,
    #[error("generator {index} has {got} coordinates, expected {expected}")]
    RaggedGenerators {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("{count} generators cannot be independent in ambient dimension {ambient}")]
    TooManyGenerators { count: usize, ambient: usize },
    #[error("generators are linearly dependent")]
    DegenerateGenerators,
    #[error("face dimension k={k} out of range: expected 1 <= k <= {max_k}")]
    InvalidDimension { k: usize, max_k: usize },
    #[error("label index {index} out of range for {count} generators")]
    LabelOutOfRange { index: usize, count: usize },
    #[error("face label carries {got} translation bits, expected {expected}")]
    TranslationLength { got: usize, expected: usize },
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Ordered family of N linearly independent generators in R^n.
///
/// Independence is checked once at construction, and so is the full
/// pairwise Gram matrix: every face or diagonal Gram matrix is a
/// principal submatrix of it, or assembles from it by signed sums
/// (inner products are bilinear), so labels never re-dot the vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators<S: Scalar> {
    vectors: Vec<Vector<S>>,
    ambient: usize,
    gram: GramMatrix<S>,
    /// Integer image of the Gram matrix when every entry fits; label
    /// measures then run on machine integers with overflow checks.
    gram_int: Option<Vec<i128>>,
}

impl<S: Scalar> Generators<S> {
    pub fn new(vectors: Vec<Vector<S>>) -> Result<Self, ModelError> {
        let count = vectors.len();
        if count == 0 {
            return Err(ModelError::NoGenerators);
        }
        let ambient = vectors[0].len();
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(ModelError::RaggedGenerators {
                    index,
                    got: v.len(),
                    expected: ambient,
                });
            }
        }
        if count > ambient {
            return Err(ModelError::TooManyGenerators { count, ambient });
        }
        let gram = measure::gram(&vectors)?;
        if measure::dependent_from_gram(&gram) {
            return Err(ModelError::DegenerateGenerators);
        }
        let gram_int = gram.entries().iter().map(Scalar::to_i128_exact).collect();
        Ok(Generators {
            vectors,
            ambient,
            gram,
            gram_int,
        })
    }

    /// Number of generators N (the parallelotope dimension).
    pub fn intrinsic_dim(&self) -> usize {
        self.vectors.len()
    }

    /// Dimension n of the surrounding space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vector<S>] {
        &self.vectors
    }

    /// Pairwise inner products of the generators.
    pub fn gram(&self) -> &GramMatrix<S> {
        &self.gram
    }

    fn check_k(&self, k: usize) -> Result<(), ModelError> {
        let n = self.intrinsic_dim();
        if n < 2 || k == 0 || k > n - 1 {
            return Err(ModelError::InvalidDimension {
                k,
                max_k: n.saturating_sub(1),
            });
        }
        Ok(())
    }

    fn check_subset(&self, subset: &IndexSubset) -> Result<(), ModelError> {
        if let Some(max) = subset.last() {
            if max >= self.intrinsic_dim() {
                return Err(ModelError::LabelOutOfRange {
                    index: max,
                    count: self.intrinsic_dim(),
                });
            }
        }
        Ok(())
    }

    /// Signed diagonal direction `V = sum(part1) - sum(part2)`.
    pub fn diagonal_vector(&self, label: &DiagonalLabel) -> Result<Vector<S>, ModelError> {
        self.check_subset(label.part1())?;
        self.check_subset(label.part2())?;
        let mut v = Vector::zeros(self.ambient);
        for i in label.part1().iter() {
            v = v.add(&self.vectors[i]);
        }
        for i in label.part2().iter() {
            v = v.sub(&self.vectors[i]);
        }
        Ok(v)
    }

    fn measure_sq_of(&self, family: &[&Vector<S>]) -> S {
        measure::k_measure_sq_refs(family).expect("validated family")
    }

    fn subset_measure_sq(&self, subset: &IndexSubset) -> S {
        if let Some(gi) = &self.gram_int {
            let n = self.intrinsic_dim();
            let dim = subset.len();
            let mut entries = Vec::with_capacity(dim * dim);
            for r in subset.iter() {
                for c in subset.iter() {
                    entries.push(gi[r * n + c]);
                }
            }
            if let Some(det) = measure::det_i128(dim, entries) {
                return S::from_int(det);
            }
        }
        measure::determinant(&self.gram.submatrix(subset.as_slice()))
    }

    /// Squared measure of a labeled face; the translation bits do not
    /// enter (every translate is congruent to the spanning subset).
    pub fn face_measure_sq(&self, label: &FaceLabel) -> Result<S, ModelError> {
        self.check_subset(&label.subset)?;
        if label.subset.is_empty() {
            return Err(ModelError::Measure(MeasureError::EmptyFamily));
        }
        let expected = self.intrinsic_dim() - label.subset.len();
        if label.translation.len() != expected {
            return Err(ModelError::TranslationLength {
                got: label.translation.len(),
                expected,
            });
        }
        Ok(self.subset_measure_sq(&label.subset))
    }

    /// Squared measure of a labeled diagonal: the family is the diagonal
    /// direction together with the generators outside the support.
    pub fn diagonal_measure_sq(&self, label: &DiagonalLabel) -> Result<S, ModelError> {
        self.check_subset(label.part1())?;
        self.check_subset(label.part2())?;
        Ok(self.diagonal_measure_sq_inner(label))
    }

    fn diagonal_measure_sq_inner(&self, label: &DiagonalLabel) -> S {
        match S::MODE {
            ArithmeticMode::Float => {
                let direction = self
                    .diagonal_vector(label)
                    .expect("indices already validated");
                let support = label.support();
                let mut family: Vec<&Vector<S>> = vec![&direction];
                for (i, v) in self.vectors.iter().enumerate() {
                    if !support.contains(i) {
                        family.push(v);
                    }
                }
                self.measure_sq_of(&family)
            }
            ArithmeticMode::Exact => {
                if let Some(gi) = &self.gram_int {
                    if let Some(det) = self.diagonal_det_int(gi, label) {
                        return S::from_int(det);
                    }
                }
                measure::determinant(&self.diagonal_gram(label))
            }
        }
    }

    fn complement_of(&self, support: &IndexSubset) -> Vec<usize> {
        (0..self.intrinsic_dim())
            .filter(|i| !support.contains(*i))
            .collect()
    }

    /// Gram matrix of `{V} u complement` assembled by bilinearity from the
    /// stored generator Gram matrix: with `V = sum(T1) - sum(T2)`,
    /// `<V, a_j> = sum(<a_p, a_j> : p in T1) - sum(: p in T2)` and
    /// `<V, V>` is the same signed sum of `<V, a_p>` over the support.
    fn diagonal_gram(&self, label: &DiagonalLabel) -> GramMatrix<S> {
        let comp = self.complement_of(&label.support());
        let v_dot: Vec<S> = (0..self.intrinsic_dim())
            .map(|j| {
                let mut acc = S::zero();
                for q in label.part1().iter() {
                    acc = acc + self.gram.get(j, q).clone();
                }
                for q in label.part2().iter() {
                    acc = acc - self.gram.get(j, q).clone();
                }
                acc
            })
            .collect();
        let mut v_norm_sq = S::zero();
        for p in label.part1().iter() {
            v_norm_sq = v_norm_sq + v_dot[p].clone();
        }
        for p in label.part2().iter() {
            v_norm_sq = v_norm_sq - v_dot[p].clone();
        }
        let mut rows = Vec::with_capacity(1 + comp.len());
        let mut first = Vec::with_capacity(1 + comp.len());
        first.push(v_norm_sq);
        first.extend(comp.iter().map(|&w| v_dot[w].clone()));
        rows.push(first);
        for &r in &comp {
            let mut row = Vec::with_capacity(1 + comp.len());
            row.push(v_dot[r].clone());
            row.extend(comp.iter().map(|&c| self.gram.get(r, c).clone()));
            rows.push(row);
        }
        GramMatrix::from_rows(rows).expect("rows are square by construction")
    }

    /// Same assembly as [`Self::diagonal_gram`] on the integer image, with
    /// overflow checks; `None` sends the caller to the exact path.
    fn diagonal_det_int(&self, gi: &[i128], label: &DiagonalLabel) -> Option<i128> {
        let n = self.intrinsic_dim();
        let comp = self.complement_of(&label.support());
        let mut v_dot = vec![0i128; n];
        for (j, slot) in v_dot.iter_mut().enumerate() {
            let mut acc = 0i128;
            for q in label.part1().iter() {
                acc = acc.checked_add(gi[j * n + q])?;
            }
            for q in label.part2().iter() {
                acc = acc.checked_sub(gi[j * n + q])?;
            }
            *slot = acc;
        }
        let mut v_norm_sq = 0i128;
        for p in label.part1().iter() {
            v_norm_sq = v_norm_sq.checked_add(v_dot[p])?;
        }
        for p in label.part2().iter() {
            v_norm_sq = v_norm_sq.checked_sub(v_dot[p])?;
        }
        let dim = 1 + comp.len();
        let mut entries = Vec::with_capacity(dim * dim);
        entries.push(v_norm_sq);
        for &w in &comp {
            entries.push(v_dot[w]);
        }
        for &r in &comp {
            entries.push(v_dot[r]);
            for &c in &comp {
                entries.push(gi[r * n + c]);
            }
        }
        measure::det_i128(dim, entries)
    }

    /// Sum of squared face measures over all `2^(N-k) * C(N,k)` labeled
    /// faces, with the enumerated count.
    pub fn face_sq_sum(&self, k: usize) -> Result<(S, u64), ModelError> {
        self.check_k(k)?;
        let labels = combinatorics::face_labels(self.intrinsic_dim(), k)?;
        let (sum, count) =
            exec::sum_ordered(labels, |label: FaceLabel| self.subset_measure_sq(&label.subset));
        debug_assert_eq!(
            count as u128,
            combinatorics::count_faces(self.intrinsic_dim(), k)?
        );
        Ok((sum, count))
    }

    /// Sum of squared face measures per spanning subset only (each labeled
    /// face appears `2^(N-k)` times in [`Self::face_sq_sum`]).
    pub fn subset_sq_sum(&self, k: usize) -> Result<S, ModelError> {
        self.check_k(k)?;
        let subsets = combinatorics::k_subsets(self.intrinsic_dim(), k)?;
        let (sum, _) =
            exec::sum_ordered(subsets, |subset: IndexSubset| self.subset_measure_sq(&subset));
        Ok(sum)
    }

    /// Shortcut for [`Self::face_sq_sum`]: `2^(N-k)` copies of each
    /// spanning subset. Equality with the enumerated sum is part of the
    /// test suite.
    pub fn face_sq_sum_fast(&self, k: usize) -> Result<S, ModelError> {
        let copies = self.face_copies(k)?;
        Ok(S::from_int(copies) * self.subset_sq_sum(k)?)
    }

    fn face_copies(&self, k: usize) -> Result<i128, ModelError> {
        self.check_k(k)?;
        let width = (self.intrinsic_dim() - k) as u32;
        1i128.checked_shl(width).filter(|_| width < 127).ok_or(ModelError::Combinatorics(
            CombinatoricsError::CountOverflow {
                n: self.intrinsic_dim(),
                k,
            },
        ))
    }

    /// Sum of squared diagonal measures over all canonical labels, with
    /// the enumerated count.
    pub fn diag_sq_sum(&self, k: usize) -> Result<(S, u64), ModelError> {
        self.check_k(k)?;
        let labels = combinatorics::diagonal_labels(self.intrinsic_dim(), k)?;
        let (sum, count) = exec::sum_ordered(labels, |label: DiagonalLabel| {
            self.diagonal_measure_sq_inner(&label)
        });
        debug_assert_eq!(
            count as u128,
            combinatorics::count_diagonals(self.intrinsic_dim(), k)?
        );
        Ok((sum, count))
    }

    /// Mean of the squared k-face measures (square of the quadratic mean).
    pub fn face_mean_sq(&self, k: usize) -> Result<S, ModelError> {
        let (sum, count) = self.face_sq_sum(k)?;
        Ok(sum / S::from_int(count as i128))
    }

    /// Mean of the squared k-diagonal measures.
    pub fn diag_mean_sq(&self, k: usize) -> Result<S, ModelError> {
        let (sum, count) = self.diag_sq_sum(k)?;
        Ok(sum / S::from_int(count as i128))
    }

    /// Brute-force check of the bilinear expansion behind the ratio law:
    /// the squared diagonal measures, summed over every canonical label,
    /// collapse to `2^(N-k) * k` copies of each spanning-subset measure.
    /// Returns `diag_sq_sum - 2^(N-k) * k * subset_sq_sum`, which must be
    /// exactly zero in exact mode.
    pub fn expansion_identity_gap(&self, k: usize) -> Result<S, ModelError> {
        let (diag_sum, _) = self.diag_sq_sum(k)?;
        let copies = self.face_copies(k)?;
        let factor = S::from_int(copies * k as i128);
        Ok(diag_sum - factor * self.subset_sq_sum(k)?)
    }

    /// Verifies the ratio law at dimension k: the ratio of the diagonal
    /// mean to the face mean must be `N - k + 1`.
    pub fn verify(&self, k: usize) -> Result<VerificationReport<S>, ModelError> {
        self.check_k(k)?;
        let n = self.intrinsic_dim();
        let (face_sq_sum, face_count) = self.face_sq_sum(k)?;
        let (diag_sq_sum, diagonal_count) = self.diag_sq_sum(k)?;
        let face_mean_sq = face_sq_sum.clone() / S::from_int(face_count as i128);
        let diag_mean_sq = diag_sq_sum.clone() / S::from_int(diagonal_count as i128);
        let ratio_sq = diag_mean_sq.clone() / face_mean_sq.clone();
        let expected = n - k + 1;
        let residual = (ratio_sq.clone() - S::from_int(expected as i128)).abs();
        Ok(VerificationReport {
            intrinsic_dim: n,
            ambient_dim: self.ambient,
            k,
            face_count,
            diagonal_count,
            face_sq_sum,
            diag_sq_sum,
            face_mean_sq,
            diag_mean_sq,
            ratio_sq,
            expected,
            residual,
            mode: S::MODE,
        })
    }

    /// One report per face dimension, k ascending from 1 to N-1.
    pub fn verify_all(&self) -> Result<Vec<VerificationReport<S>>, ModelError> {
        let n = self.intrinsic_dim();
        if n < 2 {
            return Err(ModelError::InvalidDimension { k: 1, max_k: 0 });
        }
        (1..n).map(|k| self.verify(k)).collect()
    }
}

/// Outcome of one ratio-law verification.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<S> {
    pub intrinsic_dim: usize,
    pub ambient_dim: usize,
    pub k: usize,
    pub face_count: u64,
    pub diagonal_count: u64,
    pub face_sq_sum: S,
    pub diag_sq_sum: S,
    pub face_mean_sq: S,
    pub diag_mean_sq: S,
    /// `diag_mean_sq / face_mean_sq`; the law says this is `expected`.
    pub ratio_sq: S,
    pub expected: usize,
    pub residual: S,
    pub mode: ArithmeticMode,
}

impl<S: Scalar> VerificationReport<S> {
    /// Exact mode passes only on a residual of exactly zero; float mode
    /// within `rel_tol * expected`.
    pub fn passed(&self, rel_tol: f64) -> bool {
        match self.mode {
            ArithmeticMode::Exact => self.residual.is_zero(),
            ArithmeticMode::Float => {
                self.residual.approx_f64() <= rel_tol * self.expected as f64
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{diagonal_labels, face_labels};
    use crate::scalar::Rational;
    use num_traits::Zero;

    fn rat(v: i128) -> Rational {
        Rational::from_int(v)
    }

    fn gens(rows: &[&[i128]]) -> Generators<Rational> {
        Generators::new(rows.iter().map(|r| Vector::from_ints(r)).collect()).unwrap()
    }

    fn unit_axes(n: usize) -> Generators<Rational> {
        let rows: Vec<Vector<Rational>> = (0..n)
            .map(|i| {
                let mut coords = vec![0i128; n];
                coords[i] = 1;
                Vector::from_ints(&coords)
            })
            .collect();
        Generators::new(rows).unwrap()
    }

    fn split(part1: &[usize], part2: &[usize]) -> DiagonalLabel {
        DiagonalLabel::new(
            IndexSubset::from_sorted(part1.to_vec()),
            IndexSubset::from_sorted(part2.to_vec()),
        )
        .unwrap()
    }

    #[test]
    fn construction_validates() {
        assert_eq!(
            Generators::<Rational>::new(vec![]).unwrap_err(),
            ModelError::NoGenerators
        );
        let ragged = Generators::<Rational>::new(vec![
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[1, 0, 0]),
        ]);
        assert!(matches!(ragged, Err(ModelError::RaggedGenerators { .. })));
        let too_many = Generators::<Rational>::new(vec![
            Vector::from_ints(&[1]),
            Vector::from_ints(&[2]),
        ]);
        assert!(matches!(too_many, Err(ModelError::TooManyGenerators { .. })));
        let dependent = Generators::<Rational>::new(vec![
            Vector::from_ints(&[1, 2]),
            Vector::from_ints(&[2, 4]),
        ]);
        assert_eq!(dependent.unwrap_err(), ModelError::DegenerateGenerators);
    }

    #[test]
    fn diagonal_vectors() {
        let g = unit_axes(2);
        assert_eq!(
            g.diagonal_vector(&split(&[0, 1], &[])).unwrap(),
            Vector::from_ints(&[1, 1])
        );
        assert_eq!(
            g.diagonal_vector(&split(&[0], &[1])).unwrap(),
            Vector::from_ints(&[1, -1])
        );

        let g = gens(&[&[1, 2], &[3, 5]]);
        assert_eq!(
            g.diagonal_vector(&split(&[0], &[1])).unwrap(),
            Vector::from_ints(&[-2, -3])
        );
    }

    #[test]
    fn face_measure_ignores_translation() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        let labels: Vec<FaceLabel> = face_labels(2, 1).unwrap().collect();
        // labels 0,1 share subset {0}; labels 2,3 share subset {1}
        assert_eq!(g.face_measure_sq(&labels[0]).unwrap(), rat(1));
        assert_eq!(g.face_measure_sq(&labels[1]).unwrap(), rat(1));
        assert_eq!(g.face_measure_sq(&labels[2]).unwrap(), rat(2));
        assert_eq!(g.face_measure_sq(&labels[3]).unwrap(), rat(2));
    }

    #[test]
    fn face_measure_of_full_subset() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        let label = FaceLabel {
            subset: IndexSubset::from_sorted(vec![0, 1]),
            translation: vec![],
        };
        assert_eq!(g.face_measure_sq(&label).unwrap(), rat(1));
    }

    #[test]
    fn diagonal_measures() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        assert_eq!(g.diagonal_measure_sq(&split(&[0, 1], &[])).unwrap(), rat(5));
        assert_eq!(g.diagonal_measure_sq(&split(&[0], &[1])).unwrap(), rat(1));

        let g = unit_axes(3);
        assert_eq!(g.diagonal_measure_sq(&split(&[0], &[1])).unwrap(), rat(2));
    }

    #[test]
    fn mean_values_of_reference_parallelogram() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        assert_eq!(g.face_mean_sq(1).unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(g.diag_mean_sq(1).unwrap(), rat(3));
    }

    #[test]
    fn unit_cube_means() {
        for n in 2..=4 {
            let g = unit_axes(n);
            for k in 1..n {
                assert_eq!(g.face_mean_sq(k).unwrap(), rat(1));
            }
        }
        assert_eq!(unit_axes(2).diag_mean_sq(1).unwrap(), rat(2));
        assert_eq!(unit_axes(3).diag_mean_sq(2).unwrap(), rat(2));
    }

    #[test]
    fn scaling_generators_scales_means() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        let doubled = Generators::new(
            g.vectors().iter().map(|v| v.scaled(&rat(2))).collect(),
        )
        .unwrap();
        assert_eq!(doubled.face_mean_sq(1).unwrap(), rat(6));
    }

    #[test]
    fn expansion_gap_vanishes() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        let (diag_sum, _) = g.diag_sq_sum(1).unwrap();
        assert_eq!(diag_sum, rat(6));
        assert_eq!(g.expansion_identity_gap(1).unwrap(), rat(0));

        for n in 2..=5 {
            let g = unit_axes(n);
            for k in 1..n {
                assert_eq!(g.expansion_identity_gap(k).unwrap(), rat(0));
            }
        }
    }

    #[test]
    fn fast_face_sum_matches_enumeration() {
        let g = gens(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        for k in 1..3 {
            let (enumerated, _) = g.face_sq_sum(k).unwrap();
            assert_eq!(enumerated, g.face_sq_sum_fast(k).unwrap());
        }
    }

    #[test]
    fn verify_reference_cases() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        let report = g.verify(1).unwrap();
        assert_eq!(report.ratio_sq, rat(2));
        assert_eq!(report.expected, 2);
        assert!(report.residual.is_zero());
        assert_eq!(report.face_count, 4);
        assert_eq!(report.diagonal_count, 2);
        assert!(report.passed(0.0));

        let g = gens(&[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]);
        assert_eq!(g.verify(2).unwrap().ratio_sq, rat(2));
        assert_eq!(g.verify(1).unwrap().ratio_sq, rat(3));

        let g = gens(&[
            &[1, 0, 2, 0, 1],
            &[0, 1, 1, 3, 0],
            &[2, 0, 1, 0, 0],
            &[0, 4, 0, 1, 2],
            &[1, 1, 0, 0, 3],
        ]);
        assert_eq!(g.verify(3).unwrap().ratio_sq, rat(3));
    }

    #[test]
    fn verify_all_covers_every_k() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        assert_eq!(g.verify_all().unwrap().len(), 1);

        let g = gens(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[1, 1, 1, 0],
            &[1, 1, 1, 1],
        ]);
        let reports = g.verify_all().unwrap();
        let expected: Vec<usize> = reports.iter().map(|r| r.expected).collect();
        assert_eq!(expected, vec![4, 3, 2]);
        for report in &reports {
            assert!(report.residual.is_zero());
        }
    }

    #[test]
    fn float_mode_verifies_within_tolerance() {
        let g = Generators::<f64>::new(vec![
            Vector::from_ints(&[3, 1, -2]),
            Vector::from_ints(&[0, 5, 4]),
            Vector::from_ints(&[7, -1, 2]),
        ])
        .unwrap();
        for k in 1..3 {
            let report = g.verify(k).unwrap();
            assert!(report.passed(DEFAULT_REL_TOLERANCE), "k={k}: {report:?}");
        }
    }

    #[test]
    fn range_and_label_errors() {
        let g = gens(&[&[1, 0], &[1, 1]]);
        assert!(matches!(g.verify(0), Err(ModelError::InvalidDimension { .. })));
        assert!(matches!(g.verify(2), Err(ModelError::InvalidDimension { .. })));

        let out_of_range = split(&[0], &[5]);
        assert!(matches!(
            g.diagonal_measure_sq(&out_of_range),
            Err(ModelError::LabelOutOfRange { index: 5, count: 2 })
        ));

        let bad_translation = FaceLabel {
            subset: IndexSubset::from_sorted(vec![0]),
            translation: vec![false, true],
        };
        assert!(matches!(
            g.face_measure_sq(&bad_translation),
            Err(ModelError::TranslationLength { got: 2, expected: 1 })
        ));
    }

    #[test]
    fn permuting_generators_preserves_means() {
        let g = gens(&[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]);
        let permuted = Generators::new(vec![
            g.vectors()[2].clone(),
            g.vectors()[0].clone(),
            g.vectors()[1].clone(),
        ])
        .unwrap();
        for k in 1..3 {
            assert_eq!(g.face_mean_sq(k).unwrap(), permuted.face_mean_sq(k).unwrap());
            assert_eq!(g.diag_mean_sq(k).unwrap(), permuted.diag_mean_sq(k).unwrap());
        }
    }

    #[test]
    fn fractional_generators_take_the_generic_path() {
        // entries outside the integers disable the machine-integer image
        let half = Rational::new(1.into(), 2.into());
        let g = Generators::new(vec![
            Vector::new(vec![half.clone(), rat(0)]),
            Vector::new(vec![rat(0), half]),
        ])
        .unwrap();
        let report = g.verify(1).unwrap();
        assert_eq!(report.ratio_sq, rat(2));
        assert!(report.residual.is_zero());
        assert_eq!(g.expansion_identity_gap(1).unwrap(), rat(0));
    }

    #[test]
    fn huge_entries_take_the_generic_path() {
        let big = 1i128 << 70; // squared norm exceeds i128
        let g = gens(&[&[big, 0], &[big, big]]);
        let report = g.verify(1).unwrap();
        assert_eq!(report.ratio_sq, rat(2));
        assert!(report.residual.is_zero());
    }

    #[test]
    fn exact_and_float_diagonal_measures_agree() {
        let rows: [&[i128]; 3] = [&[2, -1, 3, 0], &[0, 4, 1, 2], &[5, 2, -2, 1]];
        let exact = gens(&rows);
        let float = Generators::<f64>::new(
            rows.iter().map(|r| Vector::from_ints(r)).collect(),
        )
        .unwrap();
        for k in 1..3 {
            for label in diagonal_labels(3, k).unwrap() {
                let e = exact.diagonal_measure_sq(&label).unwrap();
                let f = float.diagonal_measure_sq(&label).unwrap();
                assert!((e.approx_f64() - f).abs() <= 1e-9 * f.abs().max(1.0));
            }
        }
    }

    #[test]
    fn diagonal_count_on_cube_matches_spec_examples() {
        // the 4 space diagonals of a parallelepiped, each of squared norm 3
        let g = unit_axes(3);
        let labels: Vec<DiagonalLabel> = diagonal_labels(3, 1).unwrap().collect();
        assert_eq!(labels.len(), 4);
        for label in &labels {
            assert_eq!(g.diagonal_measure_sq(label).unwrap(), rat(3));
        }
    }
}
