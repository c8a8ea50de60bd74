//! Exact enumeration of minimal permutations with `d` descents and their
//! overlap-`h` generalizations, via skew Young tableaux.
//!
//! The crate provides three independent routes to every count and checks
//! them against each other:
//!
//! * determinant sums over row compositions (exact rational arithmetic),
//! * closed formulas for the small-row cases,
//! * brute-force oracles (scans of `S_n` and exhaustive tableau generation).

pub mod bijection;
pub mod count;
pub mod error;
pub mod exact;
pub mod perm;
pub mod shape;
pub mod verify;

pub use bijection::{perm_to_tableau, tableau_to_perm};
pub use count::{
    catalan_det, closed_formula, composition_matrix, count_by_brute_force, count_by_determinants,
    count_by_tableaux, determinant_summands, stirling_surjections, unit_overlap_det, CountMethod,
    CountResult, DetRoute,
};
pub use error::Error;
pub use exact::{det_exact, factorial, BigInt, ExactMatrix, Factorials, Rational};
pub use perm::{
    brute_force_count, brute_force_count_with_limit, des_h_histogram, DesMethod, Permutation,
    DEFAULT_ORACLE_LIMIT,
};
pub use shape::{
    aitken_count, aitken_matrix, compositions, count_tableaux, generate_tableaux,
    generate_tableaux_with_limit, Composition, IntegerPartition, SkewShape, SkewTableau,
    DEFAULT_CELL_LIMIT,
};
