//! Internal-degree slices of graded matrices.
//!
//! A free module ⊕ R(−aⱼ) over a polynomial ring in `k` variables has, in
//! internal degree `d`, the QQ-basis of pairs (j, m) with m a monomial of
//! degree d − aⱼ. A homogeneous matrix restricts to a QQ-matrix on these
//! slices.

use std::collections::HashMap;

use num_traits::Zero;

use super::field::kernel_basis;
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Monomial, Poly, Ring, Scalar};

/// Monomials of total degree `d` in `nvars` variables, lex descending.
pub fn monomials(nvars: usize, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    let d = d as u32;
    if nvars == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    // binom(d + n - 1, n - 1)
    let (n, d) = (nvars as u128, d as u128);
    if n == 0 {
        return usize::from(d == 0);
    }
    let mut num = 1u128;
    for k in 0..(n - 1) {
        num = num * (d + 1 + k) / (k + 1);
    }
    num as usize
}

/// Dimension over QQ of the degree-`d` slice of ⊕ R(−aⱼ).
pub fn slice_dim(nvars: usize, gen_degrees: &[i64], d: i64) -> usize {
    gen_degrees.iter().map(|&a| monomial_count(nvars, d - a)).sum()
}

#[derive(Default)]
struct MonomialIndex {
    by_degree: HashMap<i64, (Vec<Monomial>, HashMap<Monomial, usize>)>,
}

impl MonomialIndex {
    fn get(&mut self, nvars: usize, d: i64) -> &(Vec<Monomial>, HashMap<Monomial, usize>) {
        self.by_degree.entry(d).or_insert_with(|| {
            let list = monomials(nvars, d);
            let idx = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            (list, idx)
        })
    }
}

fn offsets(nvars: usize, degs: &[i64], d: i64) -> Vec<usize> {
    let mut off = Vec::with_capacity(degs.len() + 1);
    let mut acc = 0;
    off.push(0);
    for &a in degs {
        acc += monomial_count(nvars, d - a);
        off.push(acc);
    }
    off
}

/// The QQ-matrix of `a` restricted to internal degree `d`.
pub fn slice(a: &SparseMatrix, row_degs: &[i64], col_degs: &[i64], d: i64) -> Result<SparseMatrix> {
    let ring = a.ring();
    if !ring.is_graded() {
        return Err(Error::unsupported("graded slice", ring));
    }
    if row_degs.len() != a.rows() || col_degs.len() != a.cols() {
        return Err(Error::dims("generator degree lists do not match the matrix"));
    }
    let n = ring.nvars();
    let q = Ring::rationals();
    let roff = offsets(n, row_degs, d);
    let coff = offsets(n, col_degs, d);
    let mut out = SparseMatrix::zero(&q, roff[row_degs.len()], coff[col_degs.len()]);
    let mut index = MonomialIndex::default();
    for (i, j, s) in a.iter() {
        let poly = s.as_poly().expect("graded scalar");
        let src_deg = d - col_degs[j];
        if src_deg < 0 {
            continue;
        }
        let tgt_deg = d - row_degs[i];
        let cols: Vec<Monomial> = index.get(n, src_deg).0.clone();
        for (k, m) in cols.iter().enumerate() {
            for (t, c) in poly.terms() {
                let tm: Monomial = t.iter().zip(m).map(|(a, b)| a + b).collect();
                let (_, idx) = index.get(n, tgt_deg);
                let Some(&r) = idx.get(&tm) else {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({i},{j}) = {s} does not have degree {}",
                        col_degs[j] - row_degs[i]
                    )));
                };
                let v = Scalar::from_rational(&q, c.clone())?;
                out.add_at(roff[i] + r, coff[j] + k, &v);
            }
        }
    }
    Ok(out)
}

/// Kernel of a homogeneous matrix in internal degree `d`, returned as
/// columns of polynomials (each column homogeneous of degree d − aⱼ in slot j).
pub fn kernel_slice(a: &SparseMatrix, row_degs: &[i64], col_degs: &[i64], d: i64) -> Result<SparseMatrix> {
    let ring = a.ring().clone();
    let n = ring.nvars();
    let s = slice(a, row_degs, col_degs, d)?;
    let k = kernel_basis(&s)?;
    let coff = offsets(n, col_degs, d);
    let mut out = SparseMatrix::zero(&ring, a.cols(), k.cols());
    let mut index = MonomialIndex::default();
    let mut cols: Vec<Vec<Poly>> = vec![vec![Poly::zero(); a.cols()]; k.cols()];
    for (row, col, v) in k.iter() {
        let j = coff.partition_point(|&o| o <= row) - 1;
        let mono = index.get(n, d - col_degs[j]).0[row - coff[j]].clone();
        let c = v.as_rational().unwrap();
        if !c.is_zero() {
            let cur = std::mem::take(&mut cols[col][j]);
            let add = Poly::from_terms([(mono, c)]);
            cols[col][j] = Poly::from_terms(cur.terms().chain(add.terms()).map(|(m, c)| (m.clone(), c.clone())));
        }
    }
    for (col, entries) in cols.into_iter().enumerate() {
        for (j, p) in entries.into_iter().enumerate() {
            out.set(j, col, Scalar::from_poly(&ring, p)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::rank;

    #[test]
    fn monomial_counts_match_enumeration() {
        for n in 1..4 {
            for d in -1..6 {
                assert_eq!(monomials(n, d).len(), monomial_count(n, d));
            }
        }
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn degree_one_kernel_of_repeated_row() {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let x = Scalar::variable(&r, "x").unwrap();
        let y = Scalar::variable(&r, "y").unwrap();
        let a = SparseMatrix::from_dense(&r, 2, 2, vec![vec![x.clone(), y.clone()], vec![x.clone(), y.clone()]])
            .unwrap();
        let rows = [0, 0];
        let cols = [1, 1];
        let s = slice(&a, &rows, &cols, 2).unwrap();
        assert_eq!(s.cols() - rank(&s).unwrap(), 1);
        let k = kernel_slice(&a, &rows, &cols, 2).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(a.matmul(&k).unwrap().is_zero());
        // proportional to (y, -x)
        let (k0, k1) = (k.get(0, 0), k.get(1, 0));
        assert_eq!(&(&k0 * &x) + &(&k1 * &y), r.zero());
        assert_eq!(k0.degree(), Some(1));
    }

    #[test]
    fn inhomogeneous_entries_are_rejected() {
        let r = Ring::graded(&["x"]).unwrap();
        let e = Scalar::parse(&r, "x + 1").unwrap();
        let a = SparseMatrix::from_dense(&r, 1, 1, vec![vec![e]]).unwrap();
        assert!(matches!(slice(&a, &[0], &[1], 3), Err(Error::NotHomogeneous(_))));
    }
}
