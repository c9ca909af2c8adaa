//! Rank, kernels and inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::SparseMatrix;
use super::snf::smith_internal;
use crate::error::{Error, Result};
use crate::scalar::{RingKind, Scalar};
#[cfg(test)]
use crate::scalar::Ring;

/// Fraction-free elimination over ZZ; rows are gcd-reduced after each step.
fn integer_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let piv = &head[rank];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let pc = &piv[c];
            let mut g = BigInt::zero();
            for (x, y) in row.iter_mut().zip(piv.iter()) {
                *x = &*x * pc - &f * y;
                g = g.gcd(x);
            }
            if !g.is_zero() && g != BigInt::from(1) {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn modular_rank(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let e = (a as i128).extended_gcd(&(p as i128));
        e.x.rem_euclid(p as i128) as u64
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pi) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pi);
        let pinv = inv(rows[rank][c]);
        let piv = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = mul(row[c], pinv);
            for (x, y) in row.iter_mut().zip(&piv) {
                *x = (*x + p - mul(f, *y)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the fraction field (ZZ, ZLoc and QQ share QQ; GF(p) is itself).
pub fn rank(a: &SparseMatrix) -> Result<usize> {
    if a.is_zero() {
        return Ok(0);
    }
    match a.ring().kind() {
        RingKind::Finite(p) => {
            let mut rows = vec![vec![0u64; a.cols()]; a.rows()];
            for (i, j, s) in a.iter() {
                rows[i][j] = s.as_residue().unwrap();
            }
            Ok(modular_rank(rows, a.cols(), p))
        }
        RingKind::Integers | RingKind::Rationals | RingKind::Local(_) => {
            let mut dense: Vec<Vec<num_rational::BigRational>> = vec![vec![Zero::zero(); a.cols()]; a.rows()];
            for (i, j, s) in a.iter() {
                dense[i][j] = s.as_rational().unwrap();
            }
            let rows = dense
                .into_iter()
                .map(|r| {
                    let l = r.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
                    r.into_iter().map(|q| (q * &l).to_integer()).collect()
                })
                .collect();
            Ok(integer_rank(rows, a.cols()))
        }
        RingKind::Graded(_) => Err(Error::unsupported("rank", a.ring())),
    }
}

/// Reduced row echelon form over a field; returns the pivot columns.
pub fn rref(a: &SparseMatrix) -> Result<(SparseMatrix, Vec<usize>)> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::unsupported("row reduction", ring));
    }
    let mut m = a.to_dense();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse()?;
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let piv = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&piv) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok((SparseMatrix::from_dense(ring, rows, cols, m)?, pivots))
}

/// Columns spanning the null space of `a`, over QQ or GF(p).
pub fn kernel_basis(a: &SparseMatrix) -> Result<SparseMatrix> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::unsupported("kernel basis", ring));
    }
    let (r, pivots) = rref(a)?;
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut k = SparseMatrix::zero(ring, a.cols(), free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, ring.one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = r.get(row, f);
            if !v.is_zero() {
                k.set(p, col, -&v);
            }
        }
    }
    Ok(k)
}

/// Inverse over the ring, or `None` when the matrix is not invertible.
///
/// ZZ goes through Smith normal form. Every other backend is local (or
/// graded-local for degree-preserving maps), where invertibility is decided
/// by Gauss–Jordan elimination with unit pivots.
pub fn inverse(a: &SparseMatrix) -> Result<Option<SparseMatrix>> {
    if !a.is_square() {
        return Ok(None);
    }
    let ring = a.ring().clone();
    let n = a.rows();
    if matches!(ring.kind(), RingKind::Integers) {
        let (u, diag, v) = smith_internal(a, true)?;
        if diag.len() != n || diag.iter().any(|d| !d.is_unit()) {
            return Ok(None);
        }
        let mut dinv = SparseMatrix::zero(&ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            dinv.set(i, i, d.inverse()?);
        }
        return Ok(Some(v.unwrap().matmul(&dinv)?.matmul(&u.unwrap())?));
    }
    let mut m = a.to_dense();
    let mut inv: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| m[i][c].is_unit()) else {
            return Ok(None);
        };
        m.swap(c, p);
        inv.swap(c, p);
        let pinv = m[c][c].inverse()?;
        for x in m[c].iter_mut() {
            *x = &*x * &pinv;
        }
        for x in inv[c].iter_mut() {
            *x = &*x * &pinv;
        }
        let (prow, pinvrow) = (m[c].clone(), inv[c].clone());
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for (x, y) in m[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
            for (x, y) in inv[i].iter_mut().zip(&pinvrow) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Ok(Some(SparseMatrix::from_dense(&ring, n, n, inv)?))
}

pub fn is_invertible(a: &SparseMatrix) -> Result<bool> {
    Ok(inverse(a)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_block() {
        let q = Ring::rationals();
        let a = SparseMatrix::from_ints(&q, &[&[1, 1], &[1, 1]]);
        let k = kernel_basis(&a).unwrap();
        assert_eq!(k, SparseMatrix::from_ints(&q, &[&[-1], &[1]]));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let q = Ring::rationals();
        assert_eq!(kernel_basis(&SparseMatrix::identity(&q, 3)).unwrap().cols(), 0);
    }

    #[test]
    fn kernel_needs_a_field() {
        let a = SparseMatrix::identity(&Ring::integers(), 2);
        assert!(matches!(kernel_basis(&a), Err(Error::UnsupportedRing { .. })));
    }

    #[test]
    fn ranks() {
        let z = Ring::integers();
        assert_eq!(rank(&SparseMatrix::from_ints(&z, &[&[2, 4], &[6, 8]])).unwrap(), 2);
        assert_eq!(rank(&SparseMatrix::from_ints(&z, &[&[2, 4], &[1, 2]])).unwrap(), 1);
        let f = Ring::finite_field(2).unwrap();
        assert_eq!(rank(&SparseMatrix::from_ints(&f, &[&[1, 1], &[1, 1]])).unwrap(), 1);
    }

    #[test]
    fn unimodular_integer_matrix_without_unit_entries() {
        let z = Ring::integers();
        let a = SparseMatrix::from_ints(&z, &[&[2, 5], &[3, 8]]);
        let inv = inverse(&a).unwrap().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), SparseMatrix::identity(&z, 2));
        assert!(inverse(&SparseMatrix::from_ints(&z, &[&[2]])).unwrap().is_none());
    }

    #[test]
    fn local_inverse() {
        let r = Ring::localized(3).unwrap();
        let a = SparseMatrix::from_ints(&r, &[&[3, 1], &[1, 0]]);
        let inv = inverse(&a).unwrap().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), SparseMatrix::identity(&r, 2));
        assert!(inverse(&SparseMatrix::from_ints(&r, &[&[3]])).unwrap().is_none());
    }
}
