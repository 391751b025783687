//! Numeric volume of the convex hull of an exact point set.
//!
//! Facets are found by exact gift-wrapping inside the affine hull and the
//! volume is summed over pyramids from the centroid, recursively. All
//! hyperplanes and heights are exact integers; floating point enters only
//! through square roots.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Float, ToPrimitive};

use crate::error::Error;
use crate::exactnum::{ExactScalar, ExactVector};
use crate::linalg;

/// `k`-dimensional volume of the convex hull, `k` being the affine rank.
pub fn numeric_volume_oracle(vertices: &[ExactVector]) -> Result<f64, Error> {
    let mut pts = vertices.to_vec();
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return Err(Error::DegenerateInput("no vertices".into()));
    }
    let (scale, rows) = linalg::common_integer_frame(&pts);
    let mut hull = Hull::new(rows);
    let all: Vec<usize> = (0..pts.len()).collect();
    let k = hull.rank(&all);
    if k == 0 {
        return Err(Error::DegenerateInput("affine rank 0".into()));
    }
    let vol = hull.volume(&all, k);
    let s = scale.to_f64().expect("finite scale");
    Ok(vol / Float::powi(s, k as i32))
}

/// Facets of the convex hull inside its affine hull, as sorted index lists
/// into the deduplicated, sorted input.
pub fn hull_facets(vertices: &[ExactVector]) -> Result<Vec<Vec<usize>>, Error> {
    let mut pts = vertices.to_vec();
    pts.sort();
    pts.dedup();
    let (_, rows) = linalg::common_integer_frame(&pts);
    let mut hull = Hull::new(rows);
    let all: Vec<usize> = (0..pts.len()).collect();
    let k = hull.rank(&all);
    if k == 0 {
        return Err(Error::DegenerateInput("affine rank 0".into()));
    }
    Ok(hull.facets(&all, k).into_iter().map(|f| f.idx).collect())
}

#[derive(Clone)]
struct Facet {
    idx: Vec<usize>,
    normal: Vec<i64>,
}

struct Hull {
    rows: Vec<Vec<i64>>,
    facet_memo: BTreeMap<Vec<usize>, Vec<Facet>>,
    volume_memo: BTreeMap<Vec<usize>, f64>,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn primitive(v: Vec<i128>) -> Vec<i64> {
    let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
    v.into_iter()
        .map(|x| {
            let y = if g > 1 { x / g } else { x };
            i64::try_from(y).expect("hull normal exceeds i64")
        })
        .collect()
}

fn to_int_row(v: &ExactVector) -> Vec<i64> {
    linalg::integer_row(v)
        .iter()
        .map(|x| x.to_i64().expect("hull direction exceeds i64"))
        .collect()
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl Hull {
    fn new(rows: Vec<Vec<i64>>) -> Self {
        Hull {
            rows,
            facet_memo: BTreeMap::new(),
            volume_memo: BTreeMap::new(),
        }
    }

    fn diffs(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        let base = &self.rows[idx[0]];
        idx[1..].iter().map(|&i| sub(&self.rows[i], base)).collect()
    }

    fn rank(&self, idx: &[usize]) -> usize {
        if idx.len() < 2 {
            return 0;
        }
        linalg::int_rank(&self.diffs(idx))
    }

    fn argmax(&self, idx: &[usize], a: &[i64]) -> Vec<usize> {
        let vals: Vec<i128> = idx.iter().map(|&i| dot(&self.rows[i], a)).collect();
        let best = *vals.iter().max().expect("nonempty");
        idx.iter()
            .zip(&vals)
            .filter(|(_, &v)| v == best)
            .map(|(&i, _)| i)
            .collect()
    }

    /// Tilts the supporting normal `a` (maximal on a face through `r0`)
    /// about that face towards `e` until it meets another point.
    fn rotate(&self, idx: &[usize], a: &[i64], e: &[i64], r0: usize) -> Vec<i64> {
        let origin = &self.rows[r0];
        let mut best: Option<(i128, i128)> = None;
        for &p in idx {
            let d = sub(&self.rows[p], origin);
            let x = dot(&d, a);
            if x >= 0 {
                continue;
            }
            let y = dot(&d, e);
            // smallest angle of (y, -x) in the upper half plane
            best = match best {
                None => Some((x, y)),
                Some((bx, by)) => {
                    if x * by - y * bx > 0 {
                        Some((x, y))
                    } else {
                        Some((bx, by))
                    }
                }
            };
        }
        let (x, y) = best.expect("full-dimensional set has a point below the face");
        primitive(
            a.iter()
                .zip(e)
                .map(|(&ai, &ei)| y * ai as i128 - x * ei as i128)
                .collect(),
        )
    }

    /// Facets of the hull of `idx`, which has affine rank `k ≥ 1`.
    fn facets(&mut self, idx: &[usize], k: usize) -> Vec<Facet> {
        if let Some(f) = self.facet_memo.get(idx) {
            return f.clone();
        }
        let result = if k == 1 {
            self.segment_ends(idx)
        } else {
            self.wrap(idx, k)
        };
        self.facet_memo.insert(idx.to_vec(), result.clone());
        result
    }

    fn segment_ends(&self, idx: &[usize]) -> Vec<Facet> {
        let dir = self
            .diffs(idx)
            .into_iter()
            .find(|d| d.iter().any(|&x| x != 0))
            .expect("rank 1");
        let dir = primitive(dir.into_iter().map(i128::from).collect());
        let neg: Vec<i64> = dir.iter().map(|x| -x).collect();
        [dir, neg]
            .into_iter()
            .map(|a| Facet {
                idx: self.argmax(idx, &a),
                normal: a,
            })
            .collect()
    }

    fn wrap(&mut self, idx: &[usize], k: usize) -> Vec<Facet> {
        let diffs: Vec<ExactVector> = self
            .diffs(idx)
            .iter()
            .map(|d| ExactVector::from_integers(d))
            .collect();
        let span = linalg::orthogonal_basis(&diffs);

        // first facet: tilt a supporting normal until its face has rank k-1
        let mut a = to_int_row(&span[0]);
        let mut face = self.argmax(idx, &a);
        while self.rank(&face) + 1 < k {
            let mut fixed: Vec<ExactVector> = self
                .diffs(&face)
                .iter()
                .map(|d| ExactVector::from_integers(d))
                .collect();
            fixed.push(ExactVector::from_integers(&a));
            let ortho = linalg::orthogonal_basis(&fixed);
            let with_norms: Vec<(ExactVector, ExactScalar)> = ortho
                .into_iter()
                .map(|b| {
                    let n2 = b.norm_squared();
                    (b, n2)
                })
                .collect();
            let e = span
                .iter()
                .map(|b| linalg::residual_against(b, &with_norms))
                .find(|r| !r.is_zero())
                .expect("span exceeds the face");
            a = self.rotate(idx, &a, &to_int_row(&e), face[0]);
            face = self.argmax(idx, &a);
        }

        let mut found: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
        let mut queue = alloc::vec![(face.clone(), a.clone())];
        found.insert(face, a);
        while let Some((f, a)) = queue.pop() {
            for ridge in self.facets(&f, k - 1) {
                let next = self.rotate(idx, &a, &ridge.normal, ridge.idx[0]);
                let g = self.argmax(idx, &next);
                if !found.contains_key(&g) {
                    found.insert(g.clone(), next.clone());
                    queue.push((g, next));
                }
            }
        }
        found
            .into_iter()
            .map(|(idx, normal)| Facet { idx, normal })
            .collect()
    }

    /// Volume of the hull of `idx` in integer-frame units.
    fn volume(&mut self, idx: &[usize], k: usize) -> f64 {
        if let Some(&v) = self.volume_memo.get(idx) {
            return v;
        }
        let v = if idx.len() == k + 1 {
            self.simplex_volume(idx, k)
        } else if k == 1 {
            let ends = self.segment_ends(idx);
            let d = sub(&self.rows[ends[0].idx[0]], &self.rows[ends[1].idx[0]]);
            Float::sqrt(dot(&d, &d) as f64)
        } else {
            let m = idx.len() as i128;
            let dim = self.rows[0].len();
            let mut sum = alloc::vec![0i128; dim];
            for &i in idx {
                sum.iter_mut()
                    .zip(&self.rows[i])
                    .for_each(|(s, &x)| *s += x as i128);
            }
            let mut total = 0.0;
            for facet in self.facets(idx, k) {
                let f0 = &self.rows[facet.idx[0]];
                // height = (a, f0 - c) / |a| with c = sum / m
                let num: i128 = facet
                    .normal
                    .iter()
                    .zip(f0.iter().zip(&sum))
                    .map(|(&a, (&f, &s))| a as i128 * (m * f as i128 - s))
                    .sum();
                let a2 = dot(&facet.normal, &facet.normal) as f64;
                let height = num as f64 / (m as f64 * Float::sqrt(a2));
                let base = self.volume(&facet.idx, k - 1);
                total += height * base / k as f64;
            }
            total
        };
        self.volume_memo.insert(idx.to_vec(), v);
        v
    }

    fn simplex_volume(&self, idx: &[usize], k: usize) -> f64 {
        let edges: Vec<ExactVector> = self
            .diffs(idx)
            .iter()
            .map(|d| ExactVector::from_integers(d))
            .collect();
        let det = linalg::determinant(&linalg::gram(&edges));
        Float::sqrt(det.to_f64().max(0.0)) / factorial(k)
    }
}
