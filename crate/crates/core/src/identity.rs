//! Both sides of the face-distribution identity and its small-`s` corollaries.
//!
//! For a non-empty `A ⊂ E_q^n`, `0 <= k <= n` and `1 <= s <= p(k)`:
//!
//! ```text
//! sum_{e=s}^{p(k)} C(e, s) V(A, k, e) = sum_{B ⊆ A, |B| = s} C(n - R(B), k - R(B))
//! ```
//!
//! The left side is evaluated from the brute-force face scan, the right side
//! from ranks and Hamming distances only. The two paths share nothing beyond
//! the cube types and the binomial, so agreement is evidence rather than
//! tautology.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::binom::binom;
use crate::cube::PointSet;
use crate::error::{Error, Result};
use crate::faces::{
    distribution, faces_containing_bruteforce, faces_containing_count, max_intersection, FaceDistribution,
};
use crate::io::format_point;
use crate::limits::Limits;
use crate::rank::{distance_sum, rank, rank_bounds, rank_of, triple_rank};

/// Registered identity names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityKind {
    Main,
    Corollary1,
    Corollary2,
    Corollary3,
    Vandermonde,
    ChuVandermondeGeneralized,
    EvenweightPrinted,
    EvenweightCorrected,
    Bounds,
    LemmaFaceCount,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 10] = [
        IdentityKind::Main,
        IdentityKind::Corollary1,
        IdentityKind::Corollary2,
        IdentityKind::Corollary3,
        IdentityKind::Vandermonde,
        IdentityKind::ChuVandermondeGeneralized,
        IdentityKind::EvenweightPrinted,
        IdentityKind::EvenweightCorrected,
        IdentityKind::Bounds,
        IdentityKind::LemmaFaceCount,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityKind::Main => "main",
            IdentityKind::Corollary1 => "corollary1",
            IdentityKind::Corollary2 => "corollary2",
            IdentityKind::Corollary3 => "corollary3",
            IdentityKind::Vandermonde => "vandermonde",
            IdentityKind::ChuVandermondeGeneralized => "chu_vandermonde_generalized",
            IdentityKind::EvenweightPrinted => "evenweight_printed",
            IdentityKind::EvenweightCorrected => "evenweight_corrected",
            IdentityKind::Bounds => "bounds",
            IdentityKind::LemmaFaceCount => "lemma_face_count",
        }
    }

    /// Whether the check is evaluated on a point set (as opposed to closed forms only).
    pub fn needs_point_set(self) -> bool {
        matches!(
            self,
            IdentityKind::Main
                | IdentityKind::Corollary1
                | IdentityKind::Corollary2
                | IdentityKind::Corollary3
                | IdentityKind::Bounds
                | IdentityKind::LemmaFaceCount
        )
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::out_of_range(format!("unknown identity {s:?}")))
    }
}

/// Named integer parameters of a report, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(Vec<(&'static str, u64)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &'static str, value: impl TryInto<u64>) -> Self {
        self.set(name, value);
        self
    }

    /// Inserts or overwrites a parameter.
    pub fn set(&mut self, name: &'static str, value: impl TryInto<u64>) {
        let value = value.try_into().unwrap_or(u64::MAX);
        match self.0.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.0.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, u64)> + '_ {
        self.0.iter().copied()
    }
}

/// One summand of a report side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub label: String,
    pub value: BigInt,
}

impl Term {
    pub fn new(label: impl Into<String>, value: BigInt) -> Self {
        Term { label: label.into(), value }
    }
}

/// Exact evaluation of both sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub params: Params,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub equal: bool,
    pub lhs_terms: Vec<Term>,
    pub rhs_terms: Vec<Term>,
}

impl IdentityReport {
    /// Builds a report whose sides are the sums of the given terms.
    pub fn from_terms(identity: IdentityKind, params: Params, lhs_terms: Vec<Term>, rhs_terms: Vec<Term>) -> Self {
        let lhs: BigInt = lhs_terms.iter().map(|t| &t.value).sum();
        let rhs: BigInt = rhs_terms.iter().map(|t| &t.value).sum();
        IdentityReport { identity, params, equal: lhs == rhs, lhs, rhs, lhs_terms, rhs_terms }
    }
}

/// Limits plus presentation options for the identity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub limits: Limits,
    /// Per-subset terms on the rank side instead of per-rank groups.
    pub breakdown: bool,
}

fn check_main_args(a: &PointSet, k: usize, s: usize) -> Result<()> {
    a.require_nonempty()?;
    let n = a.params().n();
    if k > n {
        return Err(Error::out_of_range(format!("k = {k} exceeds n = {n}")));
    }
    let p = max_intersection(a.len(), a.params().q(), k);
    if s == 0 || s as u64 > p {
        return Err(Error::out_of_range(format!("s = {s} outside 1..=p(k) = 1..={p}")));
    }
    Ok(())
}

fn base_params(a: &PointSet, k: usize) -> Params {
    Params::new().with("q", a.params().q()).with("n", a.params().n()).with("size", a.len()).with("k", k)
}

fn moment_terms(dist: &FaceDistribution, s: u64) -> Vec<Term> {
    dist.iter().filter(|&(e, _)| e >= s).map(|(e, c)| Term::new(format!("e={e}"), binom(e, s as i64) * c)).collect()
}

fn grouped_terms(prefix: &str, n: usize, k: usize, groups: &BTreeMap<usize, u64>) -> Vec<Term> {
    groups
        .iter()
        .map(|(&r, &count)| {
            let value = BigInt::from(count) * binom((n - r) as u64, k as i64 - r as i64);
            Term::new(format!("{prefix}={r} x{count}"), value)
        })
        .collect()
}

fn check_subset_guard(size: usize, s: usize, limits: &Limits) -> Result<()> {
    let subsets = binom(size as u64, s as i64);
    if subsets > BigInt::from(limits.max_subsets) {
        return Err(Error::GuardExceeded {
            what: "subset enumeration",
            required: u128::try_from(subsets).unwrap_or(u128::MAX),
            limit: limits.max_subsets,
        });
    }
    Ok(())
}

/// `sum_{e=s}^{p(k)} C(e, s) V(A, k, e)` from the face scan.
pub fn main_lhs(a: &PointSet, k: usize, s: usize, limits: &Limits) -> Result<BigInt> {
    check_main_args(a, k, s)?;
    Ok(distribution(a, k, limits)?.binomial_moment(s as u64))
}

/// `sum_{B ⊆ A, |B| = s} C(n - R(B), k - R(B))` over s-subsets in canonical order.
pub fn main_rhs(a: &PointSet, k: usize, s: usize, limits: &Limits) -> Result<BigInt> {
    check_main_args(a, k, s)?;
    Ok(main_rhs_terms(a, k, s, false, limits)?.iter().map(|t| &t.value).sum())
}

fn main_rhs_terms(a: &PointSet, k: usize, s: usize, breakdown: bool, limits: &Limits) -> Result<Vec<Term>> {
    check_subset_guard(a.len(), s, limits)?;
    let n = a.params().n();
    let pts = a.points();
    let mut groups: BTreeMap<usize, u64> = BTreeMap::new();
    let mut per_subset = Vec::new();
    for subset in (0..pts.len()).combinations(s) {
        let r = rank_of(subset.iter().map(|&i| pts[i].coords()));
        *groups.entry(r).or_default() += 1;
        if breakdown {
            let label = subset.iter().map(|&i| format_point(&pts[i])).join(" ");
            per_subset.push(Term::new(label, binom((n - r) as u64, k as i64 - r as i64)));
        }
    }
    Ok(if breakdown { per_subset } else { grouped_terms("R", n, k, &groups) })
}

/// Evaluates both sides of the main identity. A report with `equal == false`
/// for valid input indicates a defect in one of the two evaluation paths.
pub fn verify_main(a: &PointSet, k: usize, s: usize, opts: &EvalOptions) -> Result<IdentityReport> {
    check_main_args(a, k, s)?;
    let dist = distribution(a, k, &opts.limits)?;
    verify_main_with(a, &dist, s, opts)
}

/// As [`verify_main`], reusing a distribution already computed for `A` and `k`.
pub fn verify_main_with(a: &PointSet, dist: &FaceDistribution, s: usize, opts: &EvalOptions) -> Result<IdentityReport> {
    let k = dist.k();
    check_main_args(a, k, s)?;
    let lhs = moment_terms(dist, s as u64);
    let rhs = main_rhs_terms(a, k, s, opts.breakdown, &opts.limits)?;
    Ok(IdentityReport::from_terms(IdentityKind::Main, base_params(a, k).with("s", s), lhs, rhs))
}

/// `sum_e e V(A, k, e) = |A| C(n, k)`, valid for every `q`.
pub fn corollary_s1(a: &PointSet, k: usize, limits: &Limits) -> Result<IdentityReport> {
    a.require_nonempty()?;
    let dist = distribution(a, k, limits)?;
    corollary_s1_with(a, &dist)
}

pub fn corollary_s1_with(a: &PointSet, dist: &FaceDistribution) -> Result<IdentityReport> {
    a.require_nonempty()?;
    let k = dist.k();
    let n = a.params().n();
    let rhs = vec![Term::new(format!("|A|*C({n},{k})"), BigInt::from(a.len()) * binom(n as u64, k as i64))];
    Ok(IdentityReport::from_terms(IdentityKind::Corollary1, base_params(a, k), moment_terms(dist, 1), rhs))
}

/// `sum_e C(e, 2) V(A, k, e) = sum_{i<j} C(n - d_ij, k - d_ij)`, valid for every `q`.
///
/// The right side uses pairwise distances directly.
pub fn corollary_s2(a: &PointSet, k: usize, opts: &EvalOptions) -> Result<IdentityReport> {
    require_size(a, 2)?;
    let dist = distribution(a, k, &opts.limits)?;
    corollary_s2_with(a, &dist, opts)
}

pub fn corollary_s2_with(a: &PointSet, dist: &FaceDistribution, opts: &EvalOptions) -> Result<IdentityReport> {
    require_size(a, 2)?;
    let k = dist.k();
    let n = a.params().n();
    let profile = distance_sum(a)?;
    let rhs = if opts.breakdown {
        profile
            .pairs()
            .map(|((i, j), d)| Term::new(format!("d({i},{j})={d}"), binom((n - d) as u64, k as i64 - d as i64)))
            .collect()
    } else {
        grouped_terms("d", n, k, &profile.histogram())
    };
    Ok(IdentityReport::from_terms(IdentityKind::Corollary2, base_params(a, k), moment_terms(dist, 2), rhs))
}

/// Binary case `s = 3`, with triple ranks `(d_ij + d_it + d_jt) / 2`.
pub fn corollary_s3(a: &PointSet, k: usize, opts: &EvalOptions) -> Result<IdentityReport> {
    a.require_binary("triple corollary")?;
    require_size(a, 3)?;
    let dist = distribution(a, k, &opts.limits)?;
    corollary_s3_with(a, &dist, opts)
}

pub fn corollary_s3_with(a: &PointSet, dist: &FaceDistribution, opts: &EvalOptions) -> Result<IdentityReport> {
    a.require_binary("triple corollary")?;
    require_size(a, 3)?;
    check_subset_guard(a.len(), 3, &opts.limits)?;
    let k = dist.k();
    let n = a.params().n();
    let profile = distance_sum(a)?;
    let mut groups: BTreeMap<usize, u64> = BTreeMap::new();
    let mut per_triple = Vec::new();
    for t in (0..a.len()).combinations(3) {
        let (i, j, l) = (t[0], t[1], t[2]);
        let d = triple_rank(profile.get(i, j), profile.get(i, l), profile.get(j, l))?;
        *groups.entry(d).or_default() += 1;
        if opts.breakdown {
            per_triple.push(Term::new(format!("d({i},{j},{l})={d}"), binom((n - d) as u64, k as i64 - d as i64)));
        }
    }
    let rhs = if opts.breakdown { per_triple } else { grouped_terms("d", n, k, &groups) };
    Ok(IdentityReport::from_terms(IdentityKind::Corollary3, base_params(a, k), moment_terms(dist, 3), rhs))
}

fn require_size(a: &PointSet, min: usize) -> Result<()> {
    if a.len() < min {
        return Err(Error::out_of_range(format!("needs |A| >= {min} (got {})", a.len())));
    }
    Ok(())
}

/// Brute-force face-containment count (left) against `C(n - R(A), k - R(A))` (right).
pub fn lemma_face_count(a: &PointSet, k: usize, limits: &Limits) -> Result<IdentityReport> {
    let lhs = faces_containing_bruteforce(a, k, limits)?;
    let r = rank(a)?;
    let rhs = faces_containing_count(a, k)?;
    Ok(IdentityReport::from_terms(
        IdentityKind::LemmaFaceCount,
        base_params(a, k),
        vec![Term::new("scan", lhs)],
        vec![Term::new(format!("C(n-{r},k-{r})"), rhs)],
    ))
}

/// Binary rank bounds as a report: left is `R(A)`, right is the integer of
/// `[lower, upper]` nearest to `R(A)`, so the sides agree iff the bounds hold.
pub fn rank_bounds_report(a: &PointSet) -> Result<IdentityReport> {
    let bounds = rank_bounds(a)?;
    let r = rank(a)?;
    let params = Params::new().with("q", a.params().q()).with("n", a.params().n()).with("size", a.len());
    Ok(IdentityReport::from_terms(
        IdentityKind::Bounds,
        params,
        vec![Term::new("R(A)", BigInt::from(r))],
        vec![Term::new(format!("clamp[{}, {}]", bounds.lower, bounds.upper), bounds.clamp(r))],
    ))
}

/// Sanity check used by tests: breakdowns sum to their sides.
pub fn terms_consistent(report: &IdentityReport) -> bool {
    report.lhs == report.lhs_terms.iter().map(|t| &t.value).sum::<BigInt>()
        && report.rhs == report.rhs_terms.iter().map(|t| &t.value).sum::<BigInt>()
        && report.equal == (report.lhs == report.rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::CubeParams;
    use crate::io::parse_pointset;

    fn set(text: &str, q: u32, n: usize) -> PointSet {
        parse_pointset(text, CubeParams::new(q, n).unwrap()).unwrap().set
    }

    fn even3() -> PointSet {
        set("000\n011\n101\n110", 2, 3)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn main_sides_examples() {
        let l = Limits::default();
        assert_eq!(main_lhs(&even3(), 2, 2, &l).unwrap(), big(6));
        assert_eq!(main_rhs(&even3(), 2, 2, &l).unwrap(), big(6));
        let vertex = set("000", 2, 3);
        assert_eq!(main_lhs(&vertex, 1, 1, &l).unwrap(), big(3));
        assert_eq!(main_rhs(&vertex, 1, 1, &l).unwrap(), big(3));
        let triple = set("000\n011\n101", 2, 3);
        assert_eq!(main_rhs(&triple, 3, 3, &l).unwrap(), big(1));
    }

    #[test]
    fn main_rejects_bad_parameters() {
        let l = Limits::default();
        // p(1) = min(1, 2) = 1
        assert!(main_lhs(&set("000", 2, 3), 1, 2, &l).is_err());
        assert!(main_rhs(&set("000", 2, 3), 1, 0, &l).is_err());
        // k = 0 admits only s = 1
        assert!(main_rhs(&even3(), 0, 2, &l).is_err());
        assert!(main_rhs(&even3(), 4, 1, &l).is_err());
        assert!(matches!(main_rhs(&PointSet::empty(CubeParams::binary(3)), 1, 1, &l), Err(Error::EmptySet)));
    }

    #[test]
    fn verify_main_examples() {
        let opts = EvalOptions::default();
        let r = verify_main(&even3(), 2, 2, &opts).unwrap();
        assert!(r.equal && r.lhs == big(6));

        let singleton = set("0110", 2, 4);
        for k in 0..=4 {
            let r = verify_main(&singleton, k, 1, &opts).unwrap();
            assert!(r.equal);
            assert_eq!(r.lhs, binom(4, k as i64));
        }

        let square = PointSet::full(CubeParams::binary(2)).unwrap();
        let r = verify_main(&square, 1, 2, &opts).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.equal), (big(4), big(4), true));
        assert!(terms_consistent(&r));
    }

    #[test]
    fn breakdown_lists_every_subset() {
        let opts = EvalOptions { breakdown: true, ..EvalOptions::default() };
        let r = verify_main(&even3(), 2, 2, &opts).unwrap();
        assert_eq!(r.rhs_terms.len(), 6);
        assert_eq!(r.rhs_terms[0].label, "000 011");
        assert!(terms_consistent(&r));
    }

    #[test]
    fn corollary_examples() {
        let l = Limits::default();
        let opts = EvalOptions::default();

        let r = corollary_s1(&set("00\n11", 2, 2), 1, &l).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (big(4), big(4)));

        let edge = set("00\n01\n02", 3, 2);
        let r = corollary_s1(&edge, 1, &l).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (big(6), big(6)));

        let even4 = set("0000\n0011\n0101\n0110\n1001\n1010\n1100\n1111", 2, 4);
        let r = corollary_s2(&even4, 2, &opts).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (big(24), big(24)));

        let line = set("0\n1\n2", 3, 1);
        let r = corollary_s2(&line, 1, &opts).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (big(3), big(3)));

        let triple = set("000\n011\n101", 2, 3);
        let r = corollary_s3(&triple, 3, &opts).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (big(1), big(1)));
        let r = corollary_s3(&triple, 2, &opts).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (big(0), big(0)));
        assert_eq!(r.rhs_terms.len(), 1);

        assert!(corollary_s3(&edge, 1, &opts).is_err());
        assert!(corollary_s2(&set("01", 2, 2), 1, &opts).is_err());
    }

    #[test]
    fn corollary_rhs_agree_with_main_rhs() {
        let opts = EvalOptions::default();
        let a = set("00101\n11100\n01010\n00000\n11111", 2, 5);
        for k in 0..=5 {
            let c2 = corollary_s2(&a, k, &opts).unwrap();
            let c3 = corollary_s3(&a, k, &opts).unwrap();
            let rhs2: BigInt = main_rhs_terms(&a, k, 2, false, &opts.limits).unwrap().iter().map(|t| &t.value).sum();
            let rhs3: BigInt = main_rhs_terms(&a, k, 3, false, &opts.limits).unwrap().iter().map(|t| &t.value).sum();
            assert_eq!(c2.rhs, rhs2);
            assert_eq!(c3.rhs, rhs3);
            assert!(c2.equal && c3.equal);
        }
    }

    #[test]
    fn lemma_and_bounds_reports() {
        let a = set("000\n011", 2, 3);
        let r = lemma_face_count(&a, 2, &Limits::default()).unwrap();
        assert!(r.equal && r.lhs == big(1));
        let r = rank_bounds_report(&set("0000\n1111\n0011\n1100", 2, 4)).unwrap();
        assert!(r.equal && r.lhs == big(4));
    }

    #[test]
    fn subset_guard() {
        let tight = Limits { max_subsets: 3, ..Limits::default() };
        let err = main_rhs(&even3(), 2, 2, &tight).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn identity_names_round_trip() {
        for kind in IdentityKind::ALL {
            assert_eq!(kind.as_str().parse::<IdentityKind>().unwrap(), kind);
        }
        assert!("nope".parse::<IdentityKind>().is_err());
    }
}
