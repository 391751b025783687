//! Small exact linear-algebra kernels over rationals and machine integers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactnum::{dot, ExactScalar, ExactVector};

/// Exact determinant by Gaussian elimination with rational pivots.
pub fn determinant(matrix: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = matrix.len();
    let mut a: Vec<Vec<ExactScalar>> = matrix.to_vec();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
        }
    }
    det
}

/// Exact inverse by Gauss-Jordan; `None` when singular.
pub fn inverse(matrix: &[Vec<ExactScalar>]) -> Option<Vec<Vec<ExactScalar>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<ExactScalar>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    ExactScalar::one()
                } else {
                    ExactScalar::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col].recip().ok()?;
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Gram matrix `G_ij = (v_i, v_j)`.
pub fn gram(vectors: &[ExactVector]) -> Vec<Vec<ExactScalar>> {
    vectors
        .iter()
        .map(|u| {
            vectors
                .iter()
                .map(|v| dot(u, v).expect("gram: dimension mismatch"))
                .collect()
        })
        .collect()
}

/// Orthogonal (unnormalized) basis of the span of `vectors`, by exact
/// Gram-Schmidt. Zero residuals are skipped.
pub fn orthogonal_basis(vectors: &[ExactVector]) -> Vec<ExactVector> {
    let mut basis: Vec<(ExactVector, ExactScalar)> = Vec::new();
    for v in vectors {
        let r = residual_against(v, &basis);
        if !r.is_zero() {
            let n2 = r.norm_squared();
            basis.push((r, n2));
        }
    }
    basis.into_iter().map(|(b, _)| b).collect()
}

/// `v` minus its orthogonal projection onto the span of an orthogonal basis
/// given with squared norms.
pub fn residual_against(v: &ExactVector, basis: &[(ExactVector, ExactScalar)]) -> ExactVector {
    let mut r = v.clone();
    for (b, n2) in basis {
        let c = dot(&r, b).expect("residual: dimension mismatch");
        if !c.is_zero() {
            r = &r - &b.scale(&(&c / n2));
        }
    }
    r
}

/// Rank of a set of rational vectors.
pub fn rank(vectors: &[ExactVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(integer_row).collect();
    bigint_rank(rows)
}

/// Affine rank (dimension of the affine hull) of a point set; `None` when
/// empty.
pub fn affine_rank(points: &[ExactVector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<ExactVector> = rest.iter().map(|p| p - first).collect();
    Some(rank(&diffs))
}

/// Scales a rational vector to a primitive integer row (same direction).
pub fn integer_row(v: &ExactVector) -> Vec<BigInt> {
    let d = v.common_denominator();
    let row: Vec<BigInt> = v
        .coords()
        .iter()
        .map(|c| c.numerator() * (&d / c.denominator()))
        .collect();
    primitive(row)
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in &mut row {
            *x = &*x / &g;
        }
    }
    row
}

/// Fraction-free row reduction over the integers.
pub fn bigint_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let prow = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            let new_row: Vec<BigInt> = rows[r]
                .iter()
                .zip(&prow)
                .map(|(x, p)| x * &prow[col] - &f * p)
                .collect();
            rows[r] = primitive(new_row);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over machine integers with per-row gcd reduction; falls back to
/// arbitrary precision on overflow.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut work: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match i128_rank(&mut work) {
        Some(r) => r,
        None => bigint_rank(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        ),
    }
}

fn i128_rank(rows: &mut [Vec<i128>]) -> Option<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let prow = rows[rank].clone();
        let p = prow[col];
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let mut g: i128 = 0;
            for (x, &q) in row.iter_mut().zip(&prow) {
                *x = x.checked_mul(p)?.checked_sub(f.checked_mul(q)?)?;
                g = g.gcd(x);
            }
            if g > 1 {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

/// Converts a set of rational vectors to integer rows sharing one scale
/// factor: `coords[i] = scale · v_i`.
pub fn common_integer_frame(vectors: &[ExactVector]) -> (BigInt, Vec<Vec<i64>>) {
    let scale = vectors
        .iter()
        .fold(BigInt::from(1), |acc, v| acc.lcm(&v.common_denominator()));
    let rows = vectors
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| {
                    (c.numerator() * (&scale / c.denominator()))
                        .to_i64()
                        .expect("coordinate exceeds i64 in integer frame")
                })
                .collect()
        })
        .collect();
    (scale, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<ExactScalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_integer(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            determinant(&m(&[&[2, -1], &[-1, 2]])),
            ExactScalar::from_integer(3)
        );
        assert_eq!(
            determinant(&m(&[&[0, 1], &[1, 0]])),
            ExactScalar::from_integer(-1)
        );
        assert!(determinant(&m(&[&[1, 2], &[2, 4]])).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], ExactScalar::new(3, 4).unwrap());
        assert_eq!(inv[1][1], ExactScalar::from_integer(1));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn ranks_agree() {
        let rows = [&[1i64, 2, 3][..], &[2, 4, 6], &[0, 1, 1]];
        assert_eq!(int_rank(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()), 2);
        let vs: Vec<ExactVector> = rows.iter().map(|r| ExactVector::from_integers(r)).collect();
        assert_eq!(rank(&vs), 2);
        assert_eq!(affine_rank(&vs), Some(2));
    }
}
