//! Exact rational vectors and small integer/rational matrices.
//!
//! Everything here is construction-time machinery: root realizations,
//! basis conversions and lattice indices are computed once per root system
//! with `BigRational` coordinates, after which the hot paths work with
//! integer coordinate vectors only.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational coordinate vector.
pub type QVec = Vec<BigRational>;

pub fn qvec_from_i64(v: &[i64]) -> QVec {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

pub fn qvec_zero(dim: usize) -> QVec {
    vec![BigRational::zero(); dim]
}

pub fn qvec_add(a: &[BigRational], b: &[BigRational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qvec_sub(a: &[BigRational], b: &[BigRational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qvec_neg(a: &[BigRational]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn qvec_scale(c: &BigRational, a: &[BigRational]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

/// Plain dot product; callers multiply by the ambient form scale.
pub fn qvec_dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rational_is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// Converts to `i64`, panicking if the value is not a (small) integer.
pub fn rational_to_i64(x: &BigRational) -> i64 {
    assert!(rational_is_integer(x), "expected integer, got {}", x);
    let n: BigInt = x.to_integer();
    i64::try_from(&n).expect("integer out of i64 range")
}

/// Dense square integer matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub n: usize,
    /// Row-major entries.
    pub a: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        IMat { n, a }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n);
            a.extend(r);
        }
        IMat { n, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += x * other.at(k, j);
                }
            }
        }
        IMat { n, a }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }
}

/// Exact determinant of a rational matrix by Gaussian elimination.
pub fn qmat_det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Solves `M x = b` exactly; `None` when the matrix is singular.
pub fn qmat_solve(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<QVec> {
    let n = m.len();
    assert_eq!(b.len(), n);
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let pv = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &pv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of an exactly invertible rational matrix.
pub fn qmat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = qvec_zero(n);
        e[j] = BigRational::one();
        cols.push(qmat_solve(m, &e)?);
    }
    // cols[j] is the j-th column of the inverse.
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Rational rank via row elimination.
pub fn qmat_rank(m: &[Vec<BigRational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(p, row);
        let pv = a[row][col].clone();
        for r in row + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..cols {
                let sub = &factor * &a[row][c];
                a[r][c] -= sub;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Membership of `b` in the integer column span of `m` (a lattice basis).
pub fn in_integer_span(m: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    match qmat_solve(m, b) {
        Some(x) => x.iter().all(rational_is_integer),
        None => false,
    }
}

pub fn qrat_abs(x: &BigRational) -> BigRational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn det_and_solve() {
        let m = vec![vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]];
        assert_eq!(qmat_det(&m), q(3, 1));
        let x = qmat_solve(&m, &[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 3), q(1, 3)]);
        let inv = qmat_inverse(&m).unwrap();
        assert_eq!(inv[0][0], q(2, 3));
        assert_eq!(inv[0][1], q(1, 3));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(qmat_det(&m), q(0, 1));
        assert!(qmat_solve(&m, &[q(1, 1), q(0, 1)]).is_none());
        assert_eq!(qmat_rank(&m), 1);
    }

    #[test]
    fn integer_matrix_apply() {
        let m = IMat::from_rows(vec![vec![0, -1], vec![1, 1]]);
        assert_eq!(m.apply(&[2, 3]), vec![-3, 5]);
        let id = IMat::identity(2);
        assert_eq!(m.mul(&id), m);
    }
}
