/// Resource guards for the exhaustive computations.
///
/// Exceeding a guard is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of face-membership tests (faces scanned times `|A|`).
    pub max_face_tests: u64,
    /// Maximum number of s-element subsets enumerated on the rank side.
    pub max_subsets: u64,
}

impl Limits {
    pub const DEFAULT_MAX_FACE_TESTS: u64 = 10_000_000;
    pub const DEFAULT_MAX_SUBSETS: u64 = 10_000_000;

    /// Same guard for both kinds of work.
    pub fn uniform(max_ops: u64) -> Self {
        Limits { max_face_tests: max_ops, max_subsets: max_ops }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_face_tests: Self::DEFAULT_MAX_FACE_TESTS, max_subsets: Self::DEFAULT_MAX_SUBSETS }
    }
}
