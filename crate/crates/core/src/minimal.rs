//! Minimal complexes over local backends: Gaussian elimination of unit pivots.
//!
//! If ∂_n = [[φ, δ], [γ, ε]] with φ a unit, the complex splits off
//! 0 → R → R → 0 and the remaining differential in degree n is ε − γφ⁻¹δ.

use crate::complex::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::{Ring, Scalar};
use crate::sym2::sym2;

fn require_local(ring: &Ring) -> Result<()> {
    if ring.is_local() || ring.is_field() || ring.is_graded() {
        Ok(())
    } else {
        Err(Error::unsupported("minimalization", ring))
    }
}

/// For graded rings the units are the nonzero constants.
fn is_unit(s: &Scalar) -> bool {
    s.is_unit()
}

/// No differential entry is a unit.
pub fn is_minimal(x: &FreeComplex) -> Result<bool> {
    require_local(x.ring())?;
    Ok(x.differentials().iter().all(|d| d.iter().all(|(_, _, s)| !is_unit(s))))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    /// Degrees, rows and columns ascending.
    #[default]
    Forward,
    /// Degrees, rows and columns descending.
    Reverse,
}

#[derive(Clone, Debug)]
pub struct Minimization {
    /// The minimal complex, trimmed to its support.
    pub complex: FreeComplex,
    /// Projection X → M (a homotopy equivalence).
    pub q: ChainMap,
    /// Embedding M → X with q ∘ ι = id.
    pub iota: ChainMap,
    /// Number of contractible summands split off.
    pub eliminations: usize,
}

struct State {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    degrees: Option<Vec<Vec<i64>>>,
    /// diffs[k] = ∂_{lo+k+1}
    diffs: Vec<SparseMatrix>,
    /// q[k]: X_{lo+k} → current_{lo+k}
    q: Vec<SparseMatrix>,
    /// iota[k]: current_{lo+k} → X_{lo+k}
    iota: Vec<SparseMatrix>,
}

fn without(n: usize, skip: usize) -> Vec<usize> {
    (0..n).filter(|&k| k != skip).collect()
}

impl State {
    fn find_pivot(&self, order: PivotOrder) -> Option<(usize, usize, usize)> {
        let ks: Vec<usize> = match order {
            PivotOrder::Forward => (0..self.diffs.len()).collect(),
            PivotOrder::Reverse => (0..self.diffs.len()).rev().collect(),
        };
        for k in ks {
            let d = &self.diffs[k];
            let mut cells: Vec<(usize, usize)> = d.iter().filter(|(_, _, s)| is_unit(s)).map(|(i, j, _)| (i, j)).collect();
            if order == PivotOrder::Reverse {
                cells.reverse();
            }
            if let Some(&(i, j)) = cells.first() {
                return Some((k, i, j));
            }
        }
        None
    }

    /// Eliminates the unit at (i, j) of diffs[k] = ∂_n, n = lo + k + 1.
    fn eliminate(&mut self, k: usize, i: usize, j: usize) -> Result<()> {
        let ring = self.ring.clone();
        let d = self.diffs[k].clone();
        let (r, c) = d.shape();
        let phi_inv = d.get(i, j).inverse()?;
        let rows_e = without(r, i);
        let cols_d = without(c, j);
        let delta = d.submatrix(&[i], &cols_d);
        let gamma = d.submatrix(&rows_e, &[j]);
        let eps = d.submatrix(&rows_e, &cols_d);
        let g_phi = gamma.scale(&phi_inv)?;
        self.diffs[k] = eps.mat_sub(&g_phi.matmul(&delta)?)?;
        // ∂_{n+1} loses row j; ∂_{n−1} loses column i
        if k + 1 < self.diffs.len() {
            let up = &self.diffs[k + 1];
            self.diffs[k + 1] = up.submatrix(&cols_d, &(0..up.cols()).collect::<Vec<_>>());
        }
        if k > 0 {
            let down = &self.diffs[k - 1];
            self.diffs[k - 1] = down.submatrix(&(0..down.rows()).collect::<Vec<_>>(), &rows_e);
        }
        // q_n = [0 I] (drop j); q_{n−1} = [−γφ⁻¹ I] (column i)
        let mut q_low = SparseMatrix::zero(&ring, r - 1, r);
        for (a, &row) in rows_e.iter().enumerate() {
            q_low.set(a, row, ring.one());
        }
        q_low.paste(0, i, &g_phi.neg());
        let q_high = SparseMatrix::identity(&ring, c).submatrix(&cols_d, &(0..c).collect::<Vec<_>>());
        // ι_n = [−φ⁻¹δ; I] (row j); ι_{n−1} = [0; I]
        let mut i_high = SparseMatrix::zero(&ring, c, c - 1);
        for (b, &col) in cols_d.iter().enumerate() {
            i_high.set(col, b, ring.one());
        }
        i_high.paste(j, 0, &delta.scale(&phi_inv)?.neg());
        let i_low = SparseMatrix::identity(&ring, r).submatrix(&(0..r).collect::<Vec<_>>(), &rows_e);
        self.q[k] = q_low.matmul(&self.q[k])?;
        self.q[k + 1] = q_high.matmul(&self.q[k + 1])?;
        self.iota[k] = self.iota[k].matmul(&i_low)?;
        self.iota[k + 1] = self.iota[k + 1].matmul(&i_high)?;
        self.ranks[k] -= 1;
        self.ranks[k + 1] -= 1;
        if let Some(g) = &mut self.degrees {
            g[k].remove(i);
            g[k + 1].remove(j);
        }
        Ok(())
    }
}

pub fn minimize(x: &FreeComplex) -> Result<Minimization> {
    minimize_with(x, PivotOrder::Forward)
}

pub fn minimize_with(x: &FreeComplex, order: PivotOrder) -> Result<Minimization> {
    require_local(x.ring())?;
    let ring = x.ring().clone();
    let mut st = State {
        ring: ring.clone(),
        lo: x.lo(),
        ranks: x.ranks().to_vec(),
        degrees: x.all_gen_degrees().map(|g| g.to_vec()),
        diffs: x.differentials().to_vec(),
        q: x.ranks().iter().map(|&r| SparseMatrix::identity(&ring, r)).collect(),
        iota: x.ranks().iter().map(|&r| SparseMatrix::identity(&ring, r)).collect(),
    };
    let mut eliminations = 0;
    while let Some((k, i, j)) = st.find_pivot(order) {
        st.eliminate(k, i, j)?;
        eliminations += 1;
    }
    let full = FreeComplex::new(&ring, st.lo, st.ranks.clone(), st.diffs.clone(), st.degrees.clone())?;
    let m = full.trimmed();
    let comps = |mats: &[SparseMatrix]| -> Vec<(i64, SparseMatrix)> {
        mats.iter()
            .enumerate()
            .map(|(k, a)| (st.lo + k as i64, a.clone()))
            .filter(|(n, _)| m.rank(*n) > 0)
            .collect()
    };
    let q = ChainMap::new(x, &m, comps(&st.q))?;
    let iota = ChainMap::new(&m, x, comps(&st.iota))?;
    Ok(Minimization { complex: m, q, iota, eliminations })
}

/// Length (hi − lo) of the support, or `None` for the zero complex.
pub fn length(x: &FreeComplex) -> Option<i64> {
    x.support().map(|(a, b)| b - a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    /// Length of the minimal model of X.
    pub length: Option<i64>,
    /// Length of the minimal model of S²(X).
    pub sym2_length: Option<i64>,
    /// rank S²(M)_{p+q} ≥ r_p r_q for all p < q in the support of the minimal M.
    pub rank_inequality: bool,
}

/// Projective dimension is always finite here (complexes are bounded); this
/// reports the minimal lengths and checks the rank inequality that drives
/// unboundedness in the infinite case.
pub fn pd_finite(x: &FreeComplex) -> Result<PdReport> {
    let m = minimize(x)?.complex;
    let s = sym2(&m)?.complex;
    let sym2_length = length(&minimize(&sym2(x)?.complex)?.complex);
    let mut ok = true;
    if let Some((a, b)) = m.support() {
        for p in a..=b {
            for q in p + 1..=b {
                ok &= s.rank(p + q) >= m.rank(p) * m.rank(q);
            }
        }
    }
    Ok(PdReport { length: length(&m), sym2_length, rank_inequality: ok })
}

/// Exactly one nonzero module, of rank 1, sitting in the returned degree.
pub fn single_rank_one_degree(x: &FreeComplex) -> Option<i64> {
    let (a, b) = x.support()?;
    (a == b && x.rank(a) == 1).then_some(a)
}
