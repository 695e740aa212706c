//! Enumeration of k-dimensional faces and face-intersection distributions.
//!
//! `V(A, k, e)` is the number of k-faces meeting `A` in exactly `e` points;
//! it is computed here by scanning every face and filtering `A` against it.
//! Nothing in this module relies on the rank of `A`, so the scan serves as an
//! oracle for the rank-based face-count formula.

use std::collections::BTreeMap;
use std::ops::Range;

use itertools::{Combinations, Itertools};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::binom::{binom, pow, pow_saturating, pow_u64};
use crate::cube::{CubeParams, Face, Point, PointSet};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rank::rank;

// Below this many membership tests the scan stays on the calling thread.
const PARALLEL_THRESHOLD: u128 = 1 << 18;

fn check_dimension(params: CubeParams, k: usize) -> Result<()> {
    if k > params.n() {
        return Err(Error::out_of_range(format!("face dimension k = {k} exceeds n = {}", params.n())));
    }
    Ok(())
}

/// Total number of k-faces of the cube, `C(n, k) * q^(n-k)`.
pub fn face_count(params: CubeParams, k: usize) -> BigInt {
    let n = params.n() as u64;
    binom(n, k as i64) * pow(params.q() as u64, n.saturating_sub(k as u64))
}

/// `p(k) = min(|A|, q^k)`, the largest possible intersection of `A` with a k-face.
pub fn max_intersection(size: usize, q: u32, k: usize) -> u64 {
    (size as u64).min(pow_saturating(q as u64, k as u64))
}

/// Iterator over all k-faces, ordered by free-position set and then by the
/// fixed values (both lexicographically).
pub struct FaceIter {
    params: CubeParams,
    combos: Combinations<Range<usize>>,
    current: Option<Vec<usize>>,
    values: Vec<u32>,
}

impl Iterator for FaceIter {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        if self.current.is_none() {
            self.current = Some(self.combos.next()?);
            self.values = vec![0; self.params.n() - self.current.as_ref().unwrap().len()];
        }
        let free = self.current.as_ref().unwrap();
        let face = Face::new(self.params, free, &self.values).expect("enumerated face is valid");
        // odometer over the fixed values, last position fastest
        let q = self.params.q();
        let mut carry = true;
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < q {
                carry = false;
                break;
            }
            *v = 0;
        }
        if carry {
            self.current = None;
        }
        Some(face)
    }
}

pub fn enumerate_faces(params: CubeParams, k: usize) -> Result<FaceIter> {
    check_dimension(params, k)?;
    Ok(FaceIter { params, combos: (0..params.n()).combinations(k), current: None, values: Vec::new() })
}

pub fn face_contains(face: &Face, p: &Point) -> Result<bool> {
    face.contains(p)
}

/// `v(A, k) = C(n - R(A), k - R(A))`, the number of k-faces containing `A`.
pub fn faces_containing_count(a: &PointSet, k: usize) -> Result<BigInt> {
    check_dimension(a.params(), k)?;
    let r = rank(a)?;
    Ok(binom((a.params().n() - r) as u64, k as i64 - r as i64))
}

/// Counts the k-faces containing `A` by scanning every face.
pub fn faces_containing_bruteforce(a: &PointSet, k: usize, limits: &Limits) -> Result<BigInt> {
    a.require_nonempty()?;
    let tally = scan(a, k, limits, "face containment scan")?;
    Ok(BigInt::from(tally[a.len()]))
}

/// `e -> V(A, k, e)` for one face dimension `k`.
///
/// Only non-zero counts are stored, except that `e = 0` is always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDistribution {
    params: CubeParams,
    k: usize,
    counts: BTreeMap<u64, BigInt>,
}

impl FaceDistribution {
    pub fn new(params: CubeParams, k: usize, counts: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut map: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e, c) in counts {
            *map.entry(e).or_default() += c;
        }
        map.retain(|&e, c| e == 0 || !c.is_zero());
        map.entry(0).or_default();
        FaceDistribution { params, k, counts: map }
    }

    pub fn params(&self) -> CubeParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `V(A, k, e)`; zero for absent `e`.
    pub fn get(&self, e: u64) -> BigInt {
        self.counts.get(&e).cloned().unwrap_or_default()
    }

    /// Stored `(e, count)` entries in increasing `e`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> + '_ {
        self.counts.iter().map(|(&e, c)| (e, c))
    }

    /// `sum_e V(A, k, e)`.
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Every k-face counted exactly once.
    pub fn is_conserved(&self) -> bool {
        self.total() == face_count(self.params, self.k)
    }

    /// `sum_{e >= s} C(e, s) V(A, k, e)`.
    pub fn binomial_moment(&self, s: u64) -> BigInt {
        self.counts.iter().filter(|(&e, _)| e >= s).map(|(&e, c)| binom(e, s as i64) * c).sum()
    }

    /// Largest `e` with a non-zero count.
    pub fn max_e(&self) -> u64 {
        self.counts.iter().rev().find(|(_, c)| !c.is_zero()).map_or(0, |(&e, _)| e)
    }
}

/// Exact `V(A, k, e)` for every `e`, by scanning all k-faces.
pub fn distribution(a: &PointSet, k: usize, limits: &Limits) -> Result<FaceDistribution> {
    let tally = scan(a, k, limits, "face distribution")?;
    let counts = tally.into_iter().enumerate().map(|(e, c)| (e as u64, BigInt::from(c)));
    Ok(FaceDistribution::new(a.params(), k, counts))
}

/// Histogram of `|A ∩ F|` over all k-faces `F`, indexed by intersection size.
fn scan(a: &PointSet, k: usize, limits: &Limits, what: &'static str) -> Result<Vec<u64>> {
    let params = a.params();
    check_dimension(params, k)?;
    let (q, n) = (params.q() as u64, params.n());
    let fixed_len = n - k;

    let too_large = |required: u128| Error::GuardExceeded { what, required, limit: limits.max_face_tests };
    let per_free_set = pow_u64(q, fixed_len as u64).ok_or_else(|| too_large(u128::MAX))?;
    let free_sets = binom(n as u64, k as i64);
    let faces = u128::try_from(free_sets * per_free_set).unwrap_or(u128::MAX);
    let tests = faces.saturating_mul(a.len().max(1) as u128);
    if tests > limits.max_face_tests as u128 {
        return Err(too_large(tests));
    }

    let width = a.len() + 1;
    let tally_free_set = |free: Vec<usize>| -> Vec<u64> {
        let fixed: Vec<usize> = (0..n).filter(|i| !free.contains(i)).collect();
        // A face with free set T is addressed by its fixed values, read as a
        // base-q number; a point lies in exactly the face sharing its key.
        let keys: Vec<u64> =
            a.iter().map(|p| fixed.iter().fold(0u64, |acc, &pos| acc * q + p.coords()[pos] as u64)).collect();
        let mut tally = vec![0u64; width];
        for face_key in 0..per_free_set {
            let hits = keys.iter().filter(|&&key| key == face_key).count();
            tally[hits] += 1;
        }
        tally
    };
    let merge = |mut x: Vec<u64>, y: Vec<u64>| {
        x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
        x
    };

    let combos = (0..n).combinations(k);
    let tally = if tests > PARALLEL_THRESHOLD {
        combos.collect::<Vec<_>>().into_par_iter().map(tally_free_set).reduce(|| vec![0; width], merge)
    } else {
        combos.map(tally_free_set).fold(vec![0; width], merge)
    };
    Ok(tally)
}
