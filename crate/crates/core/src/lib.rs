//! Exact combinatorics on q-valued cubes `E_q^n`.
//!
//! Computes subset ranks, Hamming distance sums, face-intersection
//! distributions `V(A, k, e)` and both sides of the binomial identities that
//! relate them. Every closed form is paired with an exhaustive oracle that
//! does not depend on it, and all arithmetic is exact.

pub mod binom;
pub mod cube;
pub mod error;
pub mod faces;
pub mod families;
pub mod identity;
pub mod io;
pub mod isometry;
pub mod limits;
pub mod rank;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use binom::{binom, binom_checked};
pub use cube::{hamming, CubeParams, Face, Point, PointSet};
pub use error::{Error, Result};
pub use faces::{
    distribution, enumerate_faces, face_contains, face_count, faces_containing_bruteforce, faces_containing_count,
    max_intersection, FaceDistribution,
};
pub use families::{
    check_chu_vandermonde_generalized, check_evenweight_identity, check_vandermonde, evenweight_distribution_closed,
    face_distribution_closed, face_pair_counts_closed, gen_even_weight, gen_face_subset, gen_random_subset,
    EvenWeightForm, FamilyKind, FamilySpec,
};
pub use identity::{
    corollary_s1, corollary_s2, corollary_s3, lemma_face_count, main_lhs, main_rhs, rank_bounds_report, verify_main,
    verify_main_with, EvalOptions, IdentityKind, IdentityReport, Params, Term,
};
pub use io::{parse_pointset, read_pointset, serialize_pointset, ParsedPointSet};
pub use isometry::{isometric, random_isometry_image, Isometry};
pub use limits::Limits;
pub use rank::{column_distance_sum, distance_sum, rank, rank_bounds, rank_closed_small, DistanceProfile, RankBounds};
