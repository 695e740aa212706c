//! Subset rank, Hamming distance sums and the binary rank bounds.
//!
//! The rank `R(A)` of a point set is the dimension of the smallest face
//! containing it, i.e. the number of coordinate positions on which the points
//! of `A` do not all agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cube::{hamming_unchecked, PointSet};
use crate::error::{Error, Result};

/// Number of variable columns among `rows`; `0` for fewer than two rows.
pub(crate) fn rank_of<'a, I>(rows: I) -> usize
where
    I: IntoIterator<Item = &'a [u32]>,
{
    let mut rows = rows.into_iter();
    let Some(first) = rows.next() else { return 0 };
    let mut variable = vec![false; first.len()];
    for row in rows {
        for ((v, a), b) in variable.iter_mut().zip(first).zip(row) {
            *v |= a != b;
        }
    }
    variable.into_iter().filter(|&v| v).count()
}

/// Dimension of the smallest face containing `a`.
pub fn rank(a: &PointSet) -> Result<usize> {
    a.require_nonempty()?;
    Ok(rank_of(a.iter().map(|p| p.coords())))
}

/// Pairwise Hamming distances of a point set, indexed by canonical position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    size: usize,
    // Row-major upper triangle: (0,1), (0,2), ..., (1,2), ...
    pairwise: Vec<usize>,
    total: u64,
}

impl DistanceProfile {
    /// `D_A`: sum over unordered pairs of distinct points.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Distance between the `i`-th and `j`-th points (`i != j`).
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(i != j && i < self.size && j < self.size, "pair ({i}, {j}) out of range");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.pairwise[self.offset(i) + (j - i - 1)]
    }

    fn offset(&self, i: usize) -> usize {
        // pairs preceding row i: sum_{r<i} (size - 1 - r)
        i * (2 * self.size - i - 1) / 2
    }

    /// `((i, j), d_ij)` for every pair `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        (0..self.size).flat_map(move |i| (i + 1..self.size).map(move |j| (i, j))).zip(self.pairwise.iter().copied())
    }

    /// Number of pairs at each distance.
    pub fn histogram(&self) -> BTreeMap<usize, u64> {
        let mut hist = BTreeMap::new();
        for &d in &self.pairwise {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }
}

pub fn distance_sum(a: &PointSet) -> Result<DistanceProfile> {
    a.require_nonempty()?;
    let pts = a.points();
    let size = pts.len();
    let mut pairwise = Vec::with_capacity(size * (size - 1) / 2);
    for i in 0..size {
        for j in i + 1..size {
            pairwise.push(hamming_unchecked(pts[i].coords(), pts[j].coords()));
        }
    }
    let total = pairwise.iter().map(|&d| d as u64).sum();
    Ok(DistanceProfile { size, pairwise, total })
}

/// `D_A` computed column by column as `sum_j x_j * y_j` (zeros times ones).
pub fn column_distance_sum(a: &PointSet) -> Result<BigInt> {
    a.require_binary("column distance sum")?;
    a.require_nonempty()?;
    let size = a.len() as u64;
    let total: u64 = (0..a.params().n())
        .map(|col| {
            let ones = a.iter().filter(|p| p.coords()[col] == 1).count() as u64;
            ones * (size - ones)
        })
        .sum();
    Ok(BigInt::from(total))
}

/// Lower and upper bounds on the rank of a binary point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBounds {
    pub lower: BigRational,
    pub upper: BigRational,
    pub exact_rank: Option<usize>,
}

impl RankBounds {
    pub fn contains(&self, rank: usize) -> bool {
        let r = BigRational::from_integer(BigInt::from(rank));
        self.lower <= r && r <= self.upper
    }

    /// The integer in `[lower, upper]` closest to `rank`.
    pub fn clamp(&self, rank: usize) -> BigInt {
        let r = BigRational::from_integer(BigInt::from(rank));
        if r < self.lower {
            self.lower.ceil().to_integer()
        } else if r > self.upper {
            self.upper.floor().to_integer()
        } else {
            r.to_integer()
        }
    }
}

/// Refined bounds for `A ⊂ E_2^n`: `4 D_A / |A|^2` (even `|A|`) or
/// `4 D_A / (|A|^2 - 1)` (odd `|A|`) below, `D_A / (|A| - 1)` above.
pub fn rank_bounds(a: &PointSet) -> Result<RankBounds> {
    a.require_binary("refined rank bounds")?;
    let exact = rank(a)?;
    let m = a.len() as i64;
    if m == 1 {
        let zero = BigRational::from_integer(BigInt::from(0));
        return Ok(RankBounds { lower: zero.clone(), upper: zero, exact_rank: Some(exact) });
    }
    let d = BigInt::from(distance_sum(a)?.total());
    let lower_den = if m % 2 == 0 { m * m } else { m * m - 1 };
    let lower = BigRational::new(4 * d.clone(), BigInt::from(lower_den));
    let upper = BigRational::new(d, BigInt::from(m - 1));
    Ok(RankBounds { lower, upper, exact_rank: Some(exact) })
}

/// Closed-form rank for binary sets of at most three points.
///
/// `|A| = 1` gives 0, `|A| = 2` gives `d_12`, `|A| = 3` gives
/// `(d_12 + d_13 + d_23) / 2`; larger sets return `None`.
pub fn rank_closed_small(a: &PointSet) -> Result<Option<usize>> {
    a.require_binary("closed-form small rank")?;
    a.require_nonempty()?;
    let profile = distance_sum(a)?;
    match a.len() {
        1 => Ok(Some(0)),
        2 => Ok(Some(profile.get(0, 1))),
        3 => triple_rank(profile.get(0, 1), profile.get(0, 2), profile.get(1, 2)).map(Some),
        _ => Ok(None),
    }
}

/// `(d_ij + d_it + d_jt) / 2`; an odd sum cannot occur in a binary cube.
pub(crate) fn triple_rank(d_ij: usize, d_it: usize, d_jt: usize) -> Result<usize> {
    let sum = d_ij + d_it + d_jt;
    if sum % 2 != 0 {
        return Err(Error::Internal(format!("binary triple with odd distance sum {d_ij} + {d_it} + {d_jt}")));
    }
    Ok(sum / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::CubeParams;
    use crate::io::parse_pointset;

    fn set(text: &str, q: u32, n: usize) -> PointSet {
        parse_pointset(text, CubeParams::new(q, n).unwrap()).unwrap().set
    }

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&set("000", 2, 3)).unwrap(), 0);
        assert_eq!(rank(&set("000\n011", 2, 3)).unwrap(), 2);
        assert_eq!(rank(&set("000\n011\n101", 2, 3)).unwrap(), 3);
        assert_eq!(rank(&set("0120\n0221", 3, 4)).unwrap(), 2);
        assert!(matches!(rank(&PointSet::empty(CubeParams::binary(2))), Err(Error::EmptySet)));
    }

    #[test]
    fn distance_sum_examples() {
        assert_eq!(distance_sum(&set("000", 2, 3)).unwrap().total(), 0);
        assert_eq!(distance_sum(&set("000\n011\n101", 2, 3)).unwrap().total(), 6);
        let square = distance_sum(&set("00\n01\n10\n11", 2, 2)).unwrap();
        assert_eq!(square.total(), 8);
        assert_eq!(square.histogram(), BTreeMap::from([(1, 4), (2, 2)]));
        assert_eq!(square.get(0, 3), 2);
        assert_eq!(square.get(2, 1), 2);
        assert_eq!(square.pairs().count(), 6);
    }

    #[test]
    fn column_sum_examples() {
        assert_eq!(column_distance_sum(&set("000\n011\n101", 2, 3)).unwrap(), BigInt::from(6));
        assert_eq!(column_distance_sum(&set("00\n11", 2, 2)).unwrap(), BigInt::from(2));
        assert_eq!(column_distance_sum(&set("0", 2, 1)).unwrap(), BigInt::from(0));
        assert!(matches!(column_distance_sum(&set("0", 3, 1)), Err(Error::BinaryOnly(..))));
    }

    #[test]
    fn bounds_examples() {
        let b = rank_bounds(&set("000\n011\n101", 2, 3)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone(), b.exact_rank), (ratio(3, 1), ratio(3, 1), Some(3)));

        let b = rank_bounds(&set("00\n11", 2, 2)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone(), b.exact_rank), (ratio(2, 1), ratio(2, 1), Some(2)));

        let b = rank_bounds(&set("0000\n1111\n0011\n1100", 2, 4)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone(), b.exact_rank), (ratio(4, 1), ratio(16, 3), Some(4)));
        assert!(b.contains(4) && b.contains(5) && !b.contains(6));

        let b = rank_bounds(&set("0101", 2, 4)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone(), b.exact_rank), (ratio(0, 1), ratio(0, 1), Some(0)));

        assert!(rank_bounds(&set("02", 3, 2)).is_err());
    }

    #[test]
    fn clamp_reports_nearest_admissible_value() {
        let b = RankBounds { lower: ratio(7, 2), upper: ratio(16, 3), exact_rank: None };
        assert_eq!(b.clamp(2), BigInt::from(4));
        assert_eq!(b.clamp(5), BigInt::from(5));
        assert_eq!(b.clamp(9), BigInt::from(5));
    }

    #[test]
    fn closed_small_examples() {
        assert_eq!(rank_closed_small(&set("000\n011", 2, 3)).unwrap(), Some(2));
        assert_eq!(rank_closed_small(&set("000\n011\n101", 2, 3)).unwrap(), Some(3));
        assert_eq!(rank_closed_small(&set("0000", 2, 4)).unwrap(), Some(0));
        assert_eq!(rank_closed_small(&set("00\n01\n10\n11", 2, 2)).unwrap(), None);
        assert!(triple_rank(1, 1, 1).is_err());
    }
}
