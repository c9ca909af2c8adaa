use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// Exact sparse matrix over a single ring. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        SparseMatrix { ring: ring.clone(), rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.entries.insert((i, i), ring.one());
        }
        m
    }

    pub fn from_dense(ring: &Ring, rows: usize, cols: usize, data: Vec<Vec<Scalar>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::dims(format!("dense data does not have shape {rows}x{cols}")));
        }
        let mut m = Self::zero(ring, rows, cols);
        for (i, row) in data.into_iter().enumerate() {
            for (j, s) in row.into_iter().enumerate() {
                if s.ring() != ring {
                    return Err(Error::mismatch(ring, s.ring()));
                }
                m.set(i, j, s);
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(ring: &Ring, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zero(ring, rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_int(ring, v));
            }
        }
        m
    }

    pub fn column_vector(ring: &Ring, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let mut m = Self::zero(ring, n, 1);
        for (i, s) in entries.into_iter().enumerate() {
            m.set(i, 0, s);
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.entries.get(&(i, j))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Sets an entry, dropping it when zero.
    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) outside {}x{}", self.rows, self.cols);
        if s.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), s);
        }
    }

    /// Adds `s` to entry (i, j).
    pub fn add_at(&mut self, i: usize, j: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let v = match self.entries.get(&(i, j)) {
            Some(e) => e + s,
            None => s.clone(),
        };
        self.set(i, j, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), s)| (i, j, s))
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), s)| ((j, i), s.clone())).collect(),
        }
    }

    fn same_ring(&self, other: &SparseMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::mismatch(&self.ring, &other.ring));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); other.rows];
        for (&(k, j), s) in &other.entries {
            by_row[k].push((j, s));
        }
        let mut out = SparseMatrix::zero(&self.ring, self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_at(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn mat_add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::dims(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (&(i, j), s) in &other.entries {
            out.add_at(i, j, s);
        }
        Ok(out)
    }

    pub fn mat_sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.mat_add(&other.neg())
    }

    pub fn neg(&self) -> SparseMatrix {
        SparseMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, s)| (k, -s)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<SparseMatrix> {
        if c.ring() != &self.ring {
            return Err(Error::mismatch(&self.ring, c.ring()));
        }
        let mut out = SparseMatrix::zero(&self.ring, self.rows, self.cols);
        for (&(i, j), s) in &self.entries {
            out.set(i, j, s * c);
        }
        Ok(out)
    }

    /// Entrywise image under `f`, landing in `ring`.
    pub fn try_map(&self, ring: &Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<SparseMatrix> {
        let mut out = SparseMatrix::zero(ring, self.rows, self.cols);
        for (&(i, j), s) in &self.entries {
            out.set(i, j, f(s)?);
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut rmap = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            rmap[r] = k;
        }
        let mut cmap = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            cmap[c] = k;
        }
        let mut out = SparseMatrix::zero(&self.ring, rows.len(), cols.len());
        for (&(i, j), s) in &self.entries {
            if rmap[i] != usize::MAX && cmap[j] != usize::MAX {
                out.entries.insert((rmap[i], cmap[j]), s.clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> SparseMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, &[j])
    }

    /// Places `other` with its top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, other: &SparseMatrix) {
        assert!(r0 + other.rows <= self.rows && c0 + other.cols <= self.cols);
        for (&(i, j), s) in &other.entries {
            self.set(r0 + i, c0 + j, s.clone());
        }
    }

    pub fn hstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::dims("hstack row counts differ"));
        }
        let mut out = SparseMatrix::zero(&self.ring, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        Ok(out)
    }

    pub fn vstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::dims("vstack column counts differ"));
        }
        let mut out = SparseMatrix::zero(&self.ring, self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        Ok(out)
    }

    pub fn block_diag(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_ring(other)?;
        let mut out = SparseMatrix::zero(&self.ring, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        Ok(out)
    }

    /// Kronecker product: entry ((i, k), (j, l)) = a_ij * b_kl, row-major.
    pub fn kron(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_ring(other)?;
        let mut out = SparseMatrix::zero(&self.ring, self.rows * other.rows, self.cols * other.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &other.entries {
                out.set(i * other.rows + k, j * other.cols + l, a * b);
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for (&(i, j), s) in &self.entries {
            d[i][j] = s.clone();
        }
        d
    }

    /// Dense row-major scalar strings (the document representation).
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_dense().into_iter().map(|r| r.into_iter().map(|s| s.to_string()).collect()).collect()
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_strings().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `a * b` with dimension and ring checks.
pub fn matmul(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    a.matmul(b)
}

pub fn mat_add(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix> {
    a.mat_add(b)
}

pub fn scale(c: &Scalar, a: &SparseMatrix) -> Result<SparseMatrix> {
    a.scale(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let z = Ring::integers();
        let a = SparseMatrix::from_ints(&z, &[&[1, 2, 0], &[0, -3, 4]]);
        assert_eq!(SparseMatrix::identity(&z, 2).matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&SparseMatrix::identity(&z, 3)).unwrap(), a);
    }

    #[test]
    fn koszul_composite_vanishes() {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let x = Scalar::variable(&r, "x").unwrap();
        let y = Scalar::variable(&r, "y").unwrap();
        let row = SparseMatrix::from_dense(&r, 1, 2, vec![vec![x.clone(), y.clone()]]).unwrap();
        let col = SparseMatrix::column_vector(&r, vec![y, -&x]);
        assert!(row.matmul(&col).unwrap().is_zero());
    }

    #[test]
    fn half_scaling() {
        let q = Ring::rationals();
        let a = SparseMatrix::from_ints(&q, &[&[2]]);
        let half = Scalar::from_fraction(&q, 1, 2).unwrap();
        assert_eq!(a.scale(&half).unwrap(), SparseMatrix::identity(&q, 1));
    }

    #[test]
    fn shape_errors() {
        let z = Ring::integers();
        let a = SparseMatrix::zero(&z, 2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
        let b = SparseMatrix::zero(&Ring::rationals(), 2, 3);
        assert!(matches!(a.mat_add(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn no_explicit_zeros() {
        let z = Ring::integers();
        let mut a = SparseMatrix::from_ints(&z, &[&[1, -1]]);
        a.add_at(0, 0, &Scalar::from_int(&z, -1));
        assert_eq!(a.nnz(), 1);
        let s = a.mat_add(&a.neg()).unwrap();
        assert!(s.is_zero());
    }
}
