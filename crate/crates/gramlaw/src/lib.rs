//! Face and diagonal measures of N-dimensional parallelotopes.
//!
//! A parallelotope spanned by generators `a_0, ..., a_{N-1}` has, for each
//! `1 <= k <= N-1`, a family of k-dimensional faces and a family of
//! k-dimensional diagonals (cross-sections through face centers). Squared
//! measures of both are Gram determinants. The quadratic means of the two
//! families obey a ratio law that generalizes the parallelogram law:
//!
//! ```text
//! mean(diagonal measure^2) / mean(face measure^2) = N - k + 1
//! ```
//!
//! For N = 2, k = 1 this says the diagonals of a parallelogram satisfy
//! `d_1^2 + d_2^2 = 2(a^2 + b^2)`, the classical identity.
//!
//! The crate verifies the law two ways:
//!
//! * **exact**: generators over [`scalar::Rational`], residuals compared
//!   to zero with no tolerance;
//! * **float**: generators over `f64`, residuals compared against a
//!   relative tolerance.
//!
//! The mode is the scalar type. Mixing modes in one computation is a type
//! error, not a runtime error.
//!
//! ```
//! use gramlaw::{Generators, Rational, Scalar, Vector};
//!
//! let g = Generators::<Rational>::new(vec![
//!     Vector::from_ints(&[1, 0]),
//!     Vector::from_ints(&[1, 1]),
//! ])
//! .unwrap();
//! let report = g.verify(1).unwrap();
//! assert_eq!(report.ratio_sq, Rational::from_int(2));
//! assert_eq!(report.residual, Rational::from_int(0));
//! assert!(report.passed(0.0));
//! ```
//!
//! Enumeration loops are data-parallel when the `parallel` feature
//! (default) is on, with an identical-output sequential fallback.

pub mod combinatorics;
pub mod exec;
pub mod harness;
pub mod measure;
pub mod parallelotope;
pub mod scalar;

pub use combinatorics::{
    count_diagonals, count_faces, diagonal_labels, face_labels, k_subsets, CombinatoricsError,
    DiagonalLabel, FaceLabel, IndexSubset,
};
pub use harness::{
    derive_seed, random_generators, sweep, HarnessError, InstanceSpec, SweepConfig, SweepSummary,
};
pub use measure::{dot, gram, k_measure_sq, GramMatrix, MeasureError, Vector};
pub use parallelotope::{
    Generators, ModelError, VerificationReport, DEFAULT_REL_TOLERANCE,
};
pub use scalar::{ArithmeticMode, Rational, Scalar};
