//! Squared k-dimensional measures of vector families via Gram determinants.
//!
//! The squared measure of the parallelotope spanned by `v_1, ..., v_m` is
//! `det(G)` where `G[p][q] = <v_p, v_q>`. In exact mode the determinant is
//! evaluated by fraction-free (Bareiss) elimination, in float mode by
//! Gaussian elimination with partial pivoting.

use thiserror::Error;

use crate::scalar::{ArithmeticMode, Scalar};

/// Float-mode dependence cutoff for the scale-invariant ratio
/// `det(gram) / prod(gram[i][i])`.
pub const DEPENDENCE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("vector length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("measure of an empty vector family is undefined")]
    EmptyFamily,
}

/// A vector in the ambient space, all coordinates in one scalar mode.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    /// A vector must have at least one coordinate.
    pub fn new(coords: Vec<S>) -> Self {
        assert!(!coords.is_empty(), "vector needs at least one coordinate");
        Vector { coords }
    }

    pub fn from_ints(coords: &[i128]) -> Self {
        Vector::new(coords.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Vector::new(vec![S::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    /// Componentwise sum; lengths must already agree.
    pub fn add(&self, other: &Vector<S>) -> Vector<S> {
        assert_eq!(self.len(), other.len());
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    /// Componentwise difference; lengths must already agree.
    pub fn sub(&self, other: &Vector<S>) -> Vector<S> {
        assert_eq!(self.len(), other.len());
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scaled(&self, factor: &S) -> Vector<S> {
        Vector::new(self.coords.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn negated(&self) -> Vector<S> {
        Vector::new(self.coords.iter().map(|c| -c.clone()).collect())
    }
}

/// Euclidean inner product.
pub fn dot<S: Scalar>(u: &Vector<S>, v: &Vector<S>) -> Result<S, MeasureError> {
    if u.len() != v.len() {
        return Err(MeasureError::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// Symmetric matrix of pairwise inner products, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> GramMatrix<S> {
    /// Builds a square matrix from rows; rows must all have length
    /// equal to the row count.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MeasureError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(MeasureError::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(GramMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub(crate) fn entries(&self) -> &[S] {
        &self.entries
    }

    /// Principal submatrix picked out by row/column indices.
    pub fn submatrix(&self, indices: &[usize]) -> GramMatrix<S> {
        let dim = indices.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &r in indices {
            for &c in indices {
                entries.push(self.get(r, c).clone());
            }
        }
        GramMatrix { dim, entries }
    }

    /// Determinants of the leading principal minors, sizes `1..=dim`.
    /// All are nonnegative exactly when the matrix is positive
    /// semidefinite.
    pub fn leading_principal_minors(&self) -> Vec<S> {
        (1..=self.dim)
            .map(|size| {
                let rows = (0..size)
                    .map(|r| (0..size).map(|c| self.get(r, c).clone()).collect())
                    .collect();
                determinant(&GramMatrix::from_rows(rows).expect("square by construction"))
            })
            .collect()
    }
}

/// Gram matrix of a family; the empty family yields the 0x0 matrix.
pub fn gram<S: Scalar>(family: &[Vector<S>]) -> Result<GramMatrix<S>, MeasureError> {
    let refs: Vec<&Vector<S>> = family.iter().collect();
    gram_refs(&refs)
}

pub(crate) fn gram_refs<S: Scalar>(family: &[&Vector<S>]) -> Result<GramMatrix<S>, MeasureError> {
    let dim = family.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for u in family {
        for v in family {
            entries.push(dot(u, v)?);
        }
    }
    Ok(GramMatrix { dim, entries })
}

/// Determinant; the 0x0 matrix has determinant 1 (empty wedge convention).
///
/// Exact mode runs fraction-free elimination (all divisions exact), on
/// `i128` while the entries and every intermediate minor fit, otherwise on
/// the scalar type. Float mode runs partial-pivoted Gaussian elimination.
pub fn determinant<S: Scalar>(matrix: &GramMatrix<S>) -> S {
    match S::MODE {
        ArithmeticMode::Exact => {
            let ints: Option<Vec<i128>> =
                matrix.entries.iter().map(Scalar::to_i128_exact).collect();
            if let Some(det) = ints.and_then(|e| det_i128(matrix.dim, e)) {
                return S::from_int(det);
            }
            det_fraction_free(matrix)
        }
        ArithmeticMode::Float => det_partial_pivot(matrix),
    }
}

/// Fraction-free elimination over machine integers with overflow checks;
/// `None` means some intermediate left the `i128` range and the caller
/// must fall back to exact arithmetic. Divisions in this scheme are exact,
/// so a nonzero remainder is impossible once overflow is ruled out.
pub(crate) fn det_i128(dim: usize, mut a: Vec<i128>) -> Option<i128> {
    let n = dim;
    if n == 0 {
        return Some(1);
    }
    let mut flipped = false;
    let mut prev = 1i128;
    for col in 0..n {
        if a[col * n + col] == 0 {
            let swap = ((col + 1)..n).find(|&r| a[r * n + col] != 0);
            match swap {
                None => return Some(0),
                Some(r) => {
                    for c in 0..n {
                        a.swap(col * n + c, r * n + c);
                    }
                    flipped = !flipped;
                }
            }
        }
        let pivot = a[col * n + col];
        for r in (col + 1)..n {
            let lead = a[r * n + col];
            for c in (col + 1)..n {
                let left = pivot.checked_mul(a[r * n + c])?;
                let right = lead.checked_mul(a[col * n + c])?;
                let num = left.checked_sub(right)?;
                debug_assert_eq!(num % prev, 0);
                a[r * n + c] = num / prev;
            }
            a[r * n + col] = 0;
        }
        prev = pivot;
    }
    let det = a[n * n - 1];
    Some(if flipped { -det } else { det })
}

/// Bareiss one-step fraction-free elimination. Every intermediate entry is
/// a minor of the input, which keeps integer inputs integral and bounds
/// coefficient growth.
fn det_fraction_free<S: Scalar>(matrix: &GramMatrix<S>) -> S {
    let n = matrix.dim;
    if n == 0 {
        return S::one();
    }
    let mut a = matrix.entries.clone();
    let mut flipped = false;
    let mut prev = S::one();
    for col in 0..n {
        if a[col * n + col].is_zero() {
            let swap = ((col + 1)..n).find(|&r| !a[r * n + col].is_zero());
            match swap {
                None => return S::zero(),
                Some(r) => {
                    for c in 0..n {
                        a.swap(col * n + c, r * n + c);
                    }
                    flipped = !flipped;
                }
            }
        }
        let pivot = a[col * n + col].clone();
        for r in (col + 1)..n {
            let lead = a[r * n + col].clone();
            for c in (col + 1)..n {
                let value = (pivot.clone() * a[r * n + c].clone()
                    - lead.clone() * a[col * n + c].clone())
                    / prev.clone();
                a[r * n + c] = value;
            }
            a[r * n + col] = S::zero();
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if flipped {
        -det
    } else {
        det
    }
}

/// Gaussian elimination with partial pivoting.
fn det_partial_pivot<S: Scalar>(matrix: &GramMatrix<S>) -> S {
    let n = matrix.dim;
    if n == 0 {
        return S::one();
    }
    let mut a = matrix.entries.clone();
    let mut det = S::one();
    for col in 0..n {
        let mut best = col;
        for r in (col + 1)..n {
            if a[r * n + col].abs() > a[best * n + col].abs() {
                best = r;
            }
        }
        if a[best * n + col].is_zero() {
            return S::zero();
        }
        if best != col {
            for c in 0..n {
                a.swap(col * n + c, best * n + c);
            }
            det = -det;
        }
        let pivot = a[col * n + col].clone();
        for r in (col + 1)..n {
            let factor = a[r * n + col].clone() / pivot.clone();
            for c in (col + 1)..n {
                let value = a[r * n + c].clone() - factor.clone() * a[col * n + c].clone();
                a[r * n + c] = value;
            }
            a[r * n + col] = S::zero();
        }
        det = det * pivot;
    }
    det
}

/// Squared k-dimensional measure of the parallelotope spanned by the
/// family: `det(gram(family))`. Zero exactly on linearly dependent
/// families (up to [`DEPENDENCE_THRESHOLD`] in float mode).
pub fn k_measure_sq<S: Scalar>(family: &[Vector<S>]) -> Result<S, MeasureError> {
    let refs: Vec<&Vector<S>> = family.iter().collect();
    k_measure_sq_refs(&refs)
}

pub(crate) fn k_measure_sq_refs<S: Scalar>(family: &[&Vector<S>]) -> Result<S, MeasureError> {
    if family.is_empty() {
        return Err(MeasureError::EmptyFamily);
    }
    Ok(determinant(&gram_refs(family)?))
}

/// Linear dependence test. Exact mode asks whether the Gram determinant is
/// exactly zero; float mode compares the scale-invariant ratio
/// `det(gram) / prod(gram[i][i])` against [`DEPENDENCE_THRESHOLD`], with
/// the ratio taken as 0 when any diagonal entry vanishes.
pub fn is_dependent<S: Scalar>(family: &[Vector<S>]) -> Result<bool, MeasureError> {
    if family.is_empty() {
        return Err(MeasureError::EmptyFamily);
    }
    Ok(dependent_from_gram(&gram(family)?))
}

pub(crate) fn dependent_from_gram<S: Scalar>(g: &GramMatrix<S>) -> bool {
    let det = determinant(g);
    match S::MODE {
        ArithmeticMode::Exact => det.is_zero(),
        ArithmeticMode::Float => {
            let mut scale = S::one();
            for i in 0..g.dim() {
                let d = g.get(i, i);
                if d.is_zero() {
                    return true;
                }
                scale = scale * d.clone();
            }
            (det / scale).approx_f64() <= DEPENDENCE_THRESHOLD
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn rvec(coords: &[i128]) -> Vector<Rational> {
        Vector::from_ints(coords)
    }

    fn fvec(coords: &[i128]) -> Vector<f64> {
        Vector::from_ints(coords)
    }

    fn rat(v: i128) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn dot_products() {
        assert_eq!(dot(&rvec(&[1, 0]), &rvec(&[0, 1])).unwrap(), rat(0));
        assert_eq!(dot(&rvec(&[1, 2]), &rvec(&[3, 4])).unwrap(), rat(11));
        assert_eq!(dot(&rvec(&[3, 4]), &rvec(&[3, 4])).unwrap(), rat(25));
        assert_eq!(dot(&fvec(&[1, 2]), &fvec(&[3, 4])).unwrap(), 11.0);
    }

    #[test]
    fn dot_rejects_mismatched_lengths() {
        let err = dot(&rvec(&[1, 2]), &rvec(&[1, 2, 3])).unwrap_err();
        assert_eq!(err, MeasureError::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn gram_of_pairs() {
        let g = gram(&[rvec(&[1, 0]), rvec(&[0, 1])]).unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(*g.get(0, 0), rat(1));
        assert_eq!(*g.get(0, 1), rat(0));

        let g = gram(&[rvec(&[1, 2]), rvec(&[3, 4])]).unwrap();
        assert_eq!(*g.get(0, 0), rat(5));
        assert_eq!(*g.get(0, 1), rat(11));
        assert_eq!(*g.get(1, 0), rat(11));
        assert_eq!(*g.get(1, 1), rat(25));
    }

    #[test]
    fn gram_of_empty_family_is_zero_by_zero() {
        let g = gram::<Rational>(&[]).unwrap();
        assert_eq!(g.dim(), 0);
        assert_eq!(determinant(&g), rat(1));
    }

    #[test]
    fn determinant_small_cases() {
        let m = GramMatrix::from_rows(vec![vec![rat(2)]]).unwrap();
        assert_eq!(determinant(&m), rat(2));

        let m = GramMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(1), rat(2)]]).unwrap();
        assert_eq!(determinant(&m), rat(1));

        let m =
            GramMatrix::from_rows(vec![vec![rat(5), rat(11)], vec![rat(11), rat(25)]]).unwrap();
        assert_eq!(determinant(&m), rat(4));
    }

    #[test]
    fn determinant_needs_row_swap() {
        // zero pivot forces an interchange and a sign flip
        let m = GramMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        assert_eq!(determinant(&m), rat(-1));

        let m = GramMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(determinant(&m), -1.0);
    }

    #[test]
    fn determinant_float_matches_exact_on_integer_input() {
        let rows_i = [[3, 1, 4], [1, 5, 9], [2, 6, 5]];
        let exact = GramMatrix::from_rows(
            rows_i.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(),
        )
        .unwrap();
        let float = GramMatrix::from_rows(
            rows_i
                .iter()
                .map(|r| r.iter().map(|&v| v as f64).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(determinant(&exact).approx_f64(), determinant(&float));
    }

    #[test]
    fn integer_fast_path_matches_generic_elimination() {
        let m = GramMatrix::from_rows(vec![
            vec![rat(5), rat(11), rat(2)],
            vec![rat(11), rat(25), rat(0)],
            vec![rat(2), rat(0), rat(9)],
        ])
        .unwrap();
        assert_eq!(determinant(&m), det_fraction_free(&m));
        assert_eq!(det_i128(2, vec![0, 1, 1, 0]), Some(-1));
        assert_eq!(det_i128(2, vec![1, 2, 2, 4]), Some(0));
    }

    #[test]
    fn fast_path_declines_on_overflow_and_fractions() {
        // inputs fit i128 but the 2^64 * 2^64 product does not
        let p = 1i128 << 64;
        assert_eq!(det_i128(2, vec![p, 1, 1, p]), None);
        let big = Rational::from_int(p);
        let m = GramMatrix::from_rows(vec![
            vec![big.clone(), rat(1)],
            vec![rat(1), big.clone()],
        ])
        .unwrap();
        assert_eq!(determinant(&m), big.clone() * big - rat(1));

        let half = Rational::new(1.into(), 2.into());
        let m = GramMatrix::from_rows(vec![
            vec![half.clone(), rat(0)],
            vec![rat(0), half.clone()],
        ])
        .unwrap();
        assert_eq!(determinant(&m), Rational::new(1.into(), 4.into()));
    }

    #[test]
    fn submatrix_picks_principal_block() {
        let m = GramMatrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(5), rat(6)],
            vec![rat(3), rat(6), rat(9)],
        ])
        .unwrap();
        let sub = m.submatrix(&[0, 2]);
        assert_eq!(sub.dim(), 2);
        assert_eq!(*sub.get(0, 0), rat(1));
        assert_eq!(*sub.get(0, 1), rat(3));
        assert_eq!(*sub.get(1, 1), rat(9));
    }

    #[test]
    fn k_measure_sq_oracle_values() {
        assert_eq!(k_measure_sq(&[rvec(&[1, 0]), rvec(&[0, 1])]).unwrap(), rat(1));
        assert_eq!(k_measure_sq(&[rvec(&[1, 0]), rvec(&[1, 1])]).unwrap(), rat(1));
        assert_eq!(
            k_measure_sq(&[rvec(&[1, 0, 0]), rvec(&[1, 1, 0]), rvec(&[1, 1, 1])]).unwrap(),
            rat(1)
        );
        assert_eq!(k_measure_sq(&[rvec(&[1, 2]), rvec(&[2, 4])]).unwrap(), rat(0));
    }

    #[test]
    fn k_measure_sq_rejects_empty_family() {
        assert_eq!(
            k_measure_sq::<Rational>(&[]).unwrap_err(),
            MeasureError::EmptyFamily
        );
    }

    #[test]
    fn measure_scales_quadratically_and_ignores_sign_and_order() {
        let a = rvec(&[2, 3, -1]);
        let b = rvec(&[0, 1, 4]);
        let base = k_measure_sq(&[a.clone(), b.clone()]).unwrap();

        let scaled = k_measure_sq(&[a.scaled(&rat(3)), b.clone()]).unwrap();
        assert_eq!(scaled, base.clone() * rat(9));

        let negated = k_measure_sq(&[a.negated(), b.clone()]).unwrap();
        assert_eq!(negated, base);

        let swapped = k_measure_sq(&[b, a]).unwrap();
        assert_eq!(swapped, base);
    }

    // independent oracle: cofactor-expansion determinant of the coordinate
    // matrix, squared, for square families
    fn cofactor_det(rows: &[Vec<Rational>]) -> Rational {
        let n = rows.len();
        if n == 0 {
            return rat(1);
        }
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = rat(0);
        for (j, entry) in rows[0].iter().enumerate() {
            let minor: Vec<Vec<Rational>> = rows[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = entry.clone() * cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn square_family_measure_matches_coordinate_determinant_squared() {
        let families: [&[&[i128]]; 3] = [
            &[&[1, 0], &[1, 1]],
            &[&[2, -3, 1], &[0, 4, 7], &[5, 1, 1]],
            &[&[1, 2, 3, 4], &[0, -1, 2, 0], &[3, 3, 1, -2], &[2, 0, 0, 5]],
        ];
        for family in families {
            let vectors: Vec<Vector<Rational>> =
                family.iter().map(|c| Vector::from_ints(c)).collect();
            let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
            let coord_det = cofactor_det(&rows);
            assert_eq!(
                k_measure_sq(&vectors).unwrap(),
                coord_det.clone() * coord_det
            );
        }
    }

    #[test]
    fn leading_minors_of_gram_are_nonnegative() {
        let g = gram(&[rvec(&[3, -1, 2]), rvec(&[0, 4, 1]), rvec(&[1, 1, 1])]).unwrap();
        for minor in g.leading_principal_minors() {
            assert!(minor >= rat(0));
        }
    }

    #[test]
    fn dependence_detection() {
        assert!(is_dependent(&[rvec(&[1, 2]), rvec(&[2, 4])]).unwrap());
        assert!(!is_dependent(&[rvec(&[1, 2]), rvec(&[2, 5])]).unwrap());

        assert!(is_dependent(&[fvec(&[1, 2]), fvec(&[2, 4])]).unwrap());
        assert!(!is_dependent(&[fvec(&[1, 2]), fvec(&[2, 5])]).unwrap());
        // zero vector: ratio defined as 0
        assert!(is_dependent(&[fvec(&[0, 0]), fvec(&[1, 1])]).unwrap());
    }
}
