//! Points, point sets and faces of the cube `E_q^n`.

use std::fmt;

use crate::binom::pow_u64;
use crate::error::{Error, Result};

/// Alphabet size `q` and dimension `n` of a cube `E_q^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeParams {
    q: u32,
    n: usize,
}

impl CubeParams {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("alphabet size q must be >= 2 (got {q})")));
        }
        Ok(CubeParams { q, n })
    }

    /// Binary cube `E_2^n`.
    pub fn binary(n: usize) -> Self {
        CubeParams { q: 2, n }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q^n`, or `None` if it does not fit in a u64.
    pub fn point_count(&self) -> Option<u64> {
        pow_u64(self.q as u64, self.n as u64)
    }

    /// Validates `coords` against this cube and builds a point.
    pub fn point(&self, coords: impl Into<Vec<u32>>) -> Result<Point> {
        let coords = coords.into();
        if coords.len() != self.n {
            return Err(Error::out_of_range(format!("vector has length {}, expected {}", coords.len(), self.n)));
        }
        if let Some((pos, &c)) = coords.iter().enumerate().find(|(_, &c)| c >= self.q) {
            return Err(Error::out_of_range(format!(
                "coordinate {c} at position {pos} out of range for q = {}",
                self.q
            )));
        }
        Ok(Point { coords: coords.into_boxed_slice(), params: *self })
    }

    /// The point with mixed-radix index `index` (first coordinate most significant).
    pub(crate) fn point_from_index(&self, mut index: u64) -> Point {
        let q = self.q as u64;
        let mut coords = vec![0u32; self.n];
        for c in coords.iter_mut().rev() {
            *c = (index % q) as u32;
            index /= q;
        }
        Point { coords: coords.into_boxed_slice(), params: *self }
    }

    fn check_same(&self, other: &CubeParams) -> Result<()> {
        if self != other {
            return Err(Error::MismatchedCube { left: self.to_string(), right: other.to_string() });
        }
        Ok(())
    }
}

impl fmt::Display for CubeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{}^{}", self.q, self.n)
    }
}

/// A vector of `E_q^n`. Ordering is lexicographic on coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Box<[u32]>,
    params: CubeParams,
}

impl Point {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn params(&self) -> CubeParams {
        self.params
    }

    /// Number of non-zero coordinates.
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::format_point(self))
    }
}

/// Hamming distance between two points of the same cube.
pub fn hamming(a: &Point, b: &Point) -> Result<usize> {
    a.params.check_same(&b.params)?;
    Ok(hamming_unchecked(a.coords(), b.coords()))
}

#[inline]
pub(crate) fn hamming_unchecked(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// A set of distinct points of one cube, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    params: CubeParams,
    points: Vec<Point>,
}

impl PointSet {
    pub fn empty(params: CubeParams) -> Self {
        PointSet { params, points: Vec::new() }
    }

    /// Builds a set, dropping duplicates. Fails if any point lives in another cube.
    pub fn new(params: CubeParams, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        Self::with_duplicate_count(params, points).map(|(set, _)| set)
    }

    /// As [`PointSet::new`], also reporting how many duplicates were dropped.
    pub fn with_duplicate_count(params: CubeParams, points: impl IntoIterator<Item = Point>) -> Result<(Self, usize)> {
        let mut points: Vec<Point> = points.into_iter().collect();
        for p in &points {
            params.check_same(&p.params)?;
        }
        let before = points.len();
        points.sort_unstable();
        points.dedup();
        let dropped = before - points.len();
        Ok((PointSet { params, points }, dropped))
    }

    /// Builds a set from raw coordinate vectors.
    pub fn from_coords<I, V>(params: CubeParams, coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<u32>>,
    {
        let points = coords.into_iter().map(|c| params.point(c)).collect::<Result<Vec<_>>>()?;
        Self::new(params, points)
    }

    /// The whole cube `E_q^n`.
    pub fn full(params: CubeParams) -> Result<Self> {
        let count =
            params.point_count().ok_or_else(|| Error::Overflow(format!("{params} has more than 2^64 points")))?;
        let points = (0..count).map(|i| params.point_from_index(i)).collect();
        Ok(PointSet { params, points })
    }

    pub fn params(&self) -> CubeParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.points.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_binary(&self, what: &'static str) -> Result<()> {
        if self.params.q != 2 {
            Err(Error::BinaryOnly(what, self.params.q))
        } else {
            Ok(())
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A face of `E_q^n`: some positions are free, the rest carry fixed values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    params: CubeParams,
    // `None` marks a free position.
    pattern: Box<[Option<u32>]>,
}

impl Face {
    /// Builds a face from its free positions; `fixed` lists the values of the
    /// remaining positions in increasing position order.
    pub fn new(params: CubeParams, free: &[usize], fixed: &[u32]) -> Result<Self> {
        let mut pattern = vec![Some(0u32); params.n];
        for &pos in free {
            if pos >= params.n {
                return Err(Error::out_of_range(format!("free position {pos} out of range for n = {}", params.n)));
            }
            if pattern[pos].is_none() {
                return Err(Error::out_of_range(format!("free position {pos} listed twice")));
            }
            pattern[pos] = None;
        }
        let fixed_slots = pattern.iter().filter(|p| p.is_some()).count();
        if fixed.len() != fixed_slots {
            return Err(Error::out_of_range(format!("face needs {fixed_slots} fixed values, got {}", fixed.len())));
        }
        let mut values = fixed.iter();
        for slot in pattern.iter_mut().filter(|p| p.is_some()) {
            *slot = values.next().copied();
        }
        Self::from_pattern(params, pattern)
    }

    /// Builds a face from a per-position pattern (`None` = free).
    pub fn from_pattern(params: CubeParams, pattern: impl Into<Vec<Option<u32>>>) -> Result<Self> {
        let pattern = pattern.into();
        if pattern.len() != params.n {
            return Err(Error::out_of_range(format!(
                "face pattern has length {}, expected {}",
                pattern.len(),
                params.n
            )));
        }
        if let Some(v) = pattern.iter().flatten().find(|&&v| v >= params.q) {
            return Err(Error::out_of_range(format!("fixed value {v} out of range for q = {}", params.q)));
        }
        Ok(Face { params, pattern: pattern.into_boxed_slice() })
    }

    pub fn params(&self) -> CubeParams {
        self.params
    }

    pub fn dimension(&self) -> usize {
        self.pattern.iter().filter(|p| p.is_none()).count()
    }

    pub fn free_positions(&self) -> Vec<usize> {
        self.pattern.iter().enumerate().filter(|(_, p)| p.is_none()).map(|(i, _)| i).collect()
    }

    /// `(position, value)` for every fixed position.
    pub fn fixed_values(&self) -> Vec<(usize, u32)> {
        self.pattern.iter().enumerate().filter_map(|(i, p)| p.map(|v| (i, v))).collect()
    }

    pub fn pattern(&self) -> &[Option<u32>] {
        &self.pattern
    }

    /// Whether `p` agrees with every fixed value of the face.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        self.params.check_same(&p.params)?;
        Ok(self.pattern.iter().zip(p.coords()).all(|(f, &c)| f.map_or(true, |v| v == c)))
    }

    /// All `q^k` points of the face as a point set.
    pub fn to_point_set(&self) -> Result<PointSet> {
        let free = self.free_positions();
        let sub = CubeParams::new(self.params.q, free.len())?;
        let count = sub.point_count().ok_or_else(|| Error::Overflow("face has more than 2^64 points".into()))?;
        let mut points = Vec::with_capacity(usize::try_from(count).unwrap_or(0));
        for i in 0..count {
            let inner = sub.point_from_index(i);
            let mut coords: Vec<u32> = self.pattern.iter().map(|p| p.unwrap_or(0)).collect();
            for (&pos, &c) in free.iter().zip(inner.coords()) {
                coords[pos] = c;
            }
            points.push(Point { coords: coords.into_boxed_slice(), params: self.params });
        }
        PointSet::new(self.params, points)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.params.q > 10 { "," } else { "" };
        let parts: Vec<String> =
            self.pattern.iter().map(|p| p.map_or_else(|| "*".to_string(), |v| v.to_string())).collect();
        f.write_str(&parts.join(sep))
    }
}
