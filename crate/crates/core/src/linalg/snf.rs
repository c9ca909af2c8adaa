//! Smith normal form over ZZ and ZLoc(p), with the convention `D = U·A·V`.

use num_bigint::BigInt;

use super::matrix::SparseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: SparseMatrix,
    pub d: SparseMatrix,
    pub v: SparseMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries d₁ | d₂ | …
    pub fn invariant_factors(&self) -> Vec<Scalar> {
        (0..self.d.rows().min(self.d.cols())).filter_map(|i| self.d.entry(i, i).cloned()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    a: Vec<Vec<Scalar>>,
    u: Option<Vec<Vec<Scalar>>>,
    v: Option<Vec<Vec<Scalar>>>,
    m: usize,
    n: usize,
}

fn dense_identity(ring: &Ring, n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_target -= q * row_src
    fn row_axpy(&mut self, target: usize, src: usize, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        fn apply(mat: &mut [Vec<Scalar>], target: usize, src: usize, q: &Scalar) {
            let (s, t) = if src < target {
                let (lo, hi) = mat.split_at_mut(target);
                (&lo[src], &mut hi[0])
            } else {
                let (lo, hi) = mat.split_at_mut(src);
                (&hi[0], &mut lo[target])
            };
            for (x, y) in t.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x = &*x - &(q * y);
                }
            }
        }
        apply(&mut self.a, target, src, q);
        if let Some(u) = &mut self.u {
            apply(u, target, src, q);
        }
    }

    /// col_target -= q * col_src
    fn col_axpy(&mut self, target: usize, src: usize, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        fn apply(mat: &mut [Vec<Scalar>], target: usize, src: usize, q: &Scalar) {
            for row in mat.iter_mut() {
                if !row[src].is_zero() {
                    let d = q * &row[src];
                    row[target] = &row[target] - &d;
                }
            }
        }
        apply(&mut self.a, target, src, q);
        if let Some(v) = &mut self.v {
            apply(v, target, src, q);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        for x in &mut self.a[i] {
            *x = &*x * c;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = &*x * c;
            }
        }
    }

    fn min_in(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, (usize, usize))> = None;
        for (i, j) in cells {
            if let Some(s) = self.a[i][j].euclid_size() {
                if best.as_ref().is_none_or(|(b, _)| s < *b) {
                    best = Some((s, (i, j)));
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn run(&mut self) {
        let (m, n) = (self.m, self.n);
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_in((t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let (q, r) = self.a[i][t].div_rem(&self.a[t][t]);
                        self.row_axpy(i, t, &q);
                        clean &= r.is_zero();
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let (q, r) = self.a[t][j].div_rem(&self.a[t][t]);
                        self.col_axpy(j, t, &q);
                        clean &= r.is_zero();
                    }
                }
                if !clean {
                    let cells = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                    let (pi, pj) = self.min_in(cells).expect("pivot is nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let piv = self.a[t][t].clone();
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[i][j].is_zero() && self.a[i][j].div_exact(&piv).is_none())
                });
                match bad {
                    Some(i) => {
                        let minus_one = -&piv.ring().one();
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            let unit = self.a[t][t].normalizing_unit();
            if !unit.is_one() {
                self.scale_row(t, &unit);
            }
        }
    }
}

fn to_sparse(ring: &Ring, d: Vec<Vec<Scalar>>, rows: usize, cols: usize) -> SparseMatrix {
    SparseMatrix::from_dense(ring, rows, cols, d).expect("shape preserved")
}

/// Diagonalization with optional transforms. Works over ZZ, ZLoc(p) and
/// fields; the public entry point restricts to the principal ideal rings.
pub(crate) fn smith_internal(a: &SparseMatrix, track: bool) -> Result<(Option<SparseMatrix>, Vec<Scalar>, Option<SparseMatrix>)> {
    let ring = a.ring().clone();
    if ring.is_graded() {
        return Err(Error::unsupported("smith normal form", &ring));
    }
    let (m, n) = a.shape();
    let mut w = Work {
        a: a.to_dense(),
        u: track.then(|| dense_identity(&ring, m)),
        v: track.then(|| dense_identity(&ring, n)),
        m,
        n,
    };
    w.run();
    let diag: Vec<Scalar> = (0..m.min(n)).map(|i| w.a[i][i].clone()).filter(|s| !s.is_zero()).collect();
    let u = w.u.map(|u| to_sparse(&ring, u, m, m));
    let v = w.v.map(|v| to_sparse(&ring, v, n, n));
    Ok((u, diag, v))
}

pub fn smith_normal_form(a: &SparseMatrix) -> Result<SmithForm> {
    if !a.ring().is_pid() {
        return Err(Error::unsupported("smith normal form", a.ring()));
    }
    let (u, diag, v) = smith_internal(a, true)?;
    let mut d = SparseMatrix::zero(a.ring(), a.rows(), a.cols());
    for (i, s) in diag.into_iter().enumerate() {
        d.set(i, i, s);
    }
    Ok(SmithForm { u: u.unwrap(), d, v: v.unwrap() })
}

/// Nonzero invariant factors without computing transforms.
pub fn invariant_factors(a: &SparseMatrix) -> Result<Vec<Scalar>> {
    if !a.ring().is_pid() && !a.ring().is_field() {
        return Err(Error::unsupported("invariant factors", a.ring()));
    }
    Ok(smith_internal(a, false)?.1)
}

/// Basis of the kernel over a PID or field: the columns of V past the rank.
pub fn kernel_over_pid(a: &SparseMatrix) -> Result<SparseMatrix> {
    let (_, diag, v) = smith_internal(a, true)?;
    let v = v.unwrap();
    let cols: Vec<usize> = (diag.len()..a.cols()).collect();
    let rows: Vec<usize> = (0..a.cols()).collect();
    Ok(v.submatrix(&rows, &cols))
}

/// Solves `a · x = b` over a PID or field, column by column.
pub fn solve(a: &SparseMatrix, b: &SparseMatrix) -> Result<Option<SparseMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::dims("solve: row counts differ"));
    }
    let (u, diag, v) = smith_internal(a, true)?;
    let (u, v) = (u.unwrap(), v.unwrap());
    let ub = u.matmul(b)?;
    let ring = a.ring();
    let mut y = SparseMatrix::zero(ring, a.cols(), b.cols());
    for (i, j, s) in ub.iter() {
        if i >= diag.len() {
            return Ok(None);
        }
        match s.div_exact(&diag[i]) {
            Some(q) => y.set(i, j, q),
            None => return Ok(None),
        }
    }
    Ok(Some(v.matmul(&y)?))
}

/// Whether every column of `b` lies in the column span of `a`.
pub fn in_column_span(a: &SparseMatrix, b: &SparseMatrix) -> Result<bool> {
    Ok(solve(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(data: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_ints(&Ring::integers(), data)
    }

    fn check(a: &SparseMatrix) -> SmithForm {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.matmul(a).unwrap().matmul(&s.v).unwrap(), s.d);
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].div_exact(&w[0]).is_some(), "divisibility chain broken: {f:?}");
        }
        s
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&z(&[&[2, 4], &[6, 8]]));
        let f: Vec<String> = s.invariant_factors().iter().map(|x| x.to_string()).collect();
        assert_eq!(f, ["2", "4"]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&SparseMatrix::identity(&Ring::integers(), 3));
        assert_eq!(s.d, SparseMatrix::identity(&Ring::integers(), 3));
    }

    #[test]
    fn localized_units_disappear() {
        let r = Ring::localized(3).unwrap();
        let s = smith_normal_form(&SparseMatrix::from_ints(&r, &[&[3]])).unwrap();
        assert_eq!(s.invariant_factors()[0].to_string(), "3");
        let s = smith_normal_form(&SparseMatrix::from_ints(&r, &[&[2]])).unwrap();
        assert!(s.invariant_factors()[0].is_one());
        let s = smith_normal_form(&SparseMatrix::from_ints(&r, &[&[6, 0], &[0, 18]])).unwrap();
        let f: Vec<String> = s.invariant_factors().iter().map(|x| x.to_string()).collect();
        assert_eq!(f, ["3", "9"]);
    }

    #[test]
    fn fields_are_rejected() {
        let a = SparseMatrix::from_ints(&Ring::rationals(), &[&[1]]);
        assert!(matches!(smith_normal_form(&a), Err(Error::UnsupportedRing { .. })));
    }

    #[test]
    fn non_divisible_submatrix_forces_mixing() {
        let s = check(&z(&[&[2, 0], &[0, 3]]));
        let f: Vec<String> = s.invariant_factors().iter().map(|x| x.to_string()).collect();
        assert_eq!(f, ["1", "6"]);
    }

    #[test]
    fn solve_and_membership() {
        let a = z(&[&[2, 0], &[0, 3]]);
        let b = z(&[&[4], &[9]]);
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.matmul(&x).unwrap(), b);
        assert!(!in_column_span(&a, &z(&[&[1], &[0]])).unwrap());
    }

    #[test]
    fn integer_kernel() {
        let a = z(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_over_pid(&a).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(a.matmul(&k).unwrap().is_zero());
    }
}
