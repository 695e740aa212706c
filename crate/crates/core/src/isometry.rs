//! Hamming isometries between point sets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::{hamming_unchecked, Point, PointSet};
use crate::error::Result;

/// A distance-preserving bijection: `image[i]` is the index in `B` of the
/// image of the `i`-th point of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub image: Vec<usize>,
}

impl Isometry {
    /// Checks the bijection against both sets.
    pub fn preserves_distances(&self, a: &PointSet, b: &PointSet) -> bool {
        let (pa, pb) = (a.points(), b.points());
        if pa.len() != pb.len() || self.image.len() != pa.len() {
            return false;
        }
        let mut seen = vec![false; pb.len()];
        for &j in &self.image {
            if j >= pb.len() || std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        (0..pa.len()).all(|i| {
            (i + 1..pa.len()).all(|l| {
                hamming_unchecked(pa[i].coords(), pa[l].coords())
                    == hamming_unchecked(pb[self.image[i]].coords(), pb[self.image[l]].coords())
            })
        })
    }
}

fn distance_matrix(points: &[Point]) -> Vec<Vec<usize>> {
    points.iter().map(|x| points.iter().map(|y| hamming_unchecked(x.coords(), y.coords())).collect()).collect()
}

/// Finds a Hamming-distance-preserving bijection `A -> B`, if any.
///
/// The sets may live in cubes of different dimension or alphabet. Search is
/// backtracking over candidates whose sorted distance rows agree.
pub fn isometric(a: &PointSet, b: &PointSet) -> Option<Isometry> {
    let m = a.len();
    if m != b.len() {
        return None;
    }
    let da = distance_matrix(a.points());
    let db = distance_matrix(b.points());
    let signature = |row: &Vec<usize>| {
        let mut s = row.clone();
        s.sort_unstable();
        s
    };
    let sig_a: Vec<Vec<usize>> = da.iter().map(signature).collect();
    let sig_b: Vec<Vec<usize>> = db.iter().map(signature).collect();

    let mut all_a = sig_a.clone();
    let mut all_b = sig_b.clone();
    all_a.sort();
    all_b.sort();
    if all_a != all_b {
        return None;
    }

    let candidates: Vec<Vec<usize>> = sig_a.iter().map(|s| (0..m).filter(|&j| &sig_b[j] == s).collect()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; m];
    if assign(0, &order, &candidates, &da, &db, &mut image, &mut used) {
        Some(Isometry { image })
    } else {
        None
    }
}

fn assign(
    depth: usize,
    order: &[usize],
    candidates: &[Vec<usize>],
    da: &[Vec<usize>],
    db: &[Vec<usize>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&i) = order.get(depth) else { return true };
    for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&l| da[i][l] == db[j][image[l]]);
        if !consistent {
            continue;
        }
        image[i] = j;
        used[j] = true;
        if assign(depth + 1, order, candidates, da, db, image, used) {
            return true;
        }
        used[j] = false;
        image[i] = usize::MAX;
    }
    false
}

/// Image of `a` under a seeded coordinate permutation composed with an
/// independent value permutation of `E_q` on each coordinate.
pub fn random_isometry_image(a: &PointSet, seed: u64) -> Result<PointSet> {
    let params = a.params();
    let (q, n) = (params.q(), params.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(&mut rng);
    let relabel: Vec<Vec<u32>> = (0..n)
        .map(|_| {
            let mut values: Vec<u32> = (0..q).collect();
            values.shuffle(&mut rng);
            values
        })
        .collect();
    let points = a
        .iter()
        .map(|p| {
            let c = p.coords();
            let coords: Vec<u32> = (0..n).map(|i| relabel[i][c[positions[i]] as usize]).collect();
            params.point(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(params, points)
}
