//! Complexes of finitely presented modules: M_n = coker(Rel_n), with the
//! differential given on generators.

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::linalg::{in_column_span, SparseMatrix};
use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedComplex {
    ring: Ring,
    lo: i64,
    gens: Vec<usize>,
    relations: Vec<SparseMatrix>,
    diffs: Vec<SparseMatrix>,
}

impl PresentedComplex {
    /// `relations[k]` has `gens[k]` rows; `diffs[k]` is ∂_{lo+k+1} on generators.
    pub fn new(ring: &Ring, lo: i64, gens: Vec<usize>, relations: Vec<SparseMatrix>, diffs: Vec<SparseMatrix>) -> Result<Self> {
        if relations.len() != gens.len() || diffs.len() != gens.len().saturating_sub(1) {
            return Err(Error::dims("presented complex: list lengths disagree"));
        }
        for (k, r) in relations.iter().enumerate() {
            if r.ring() != ring {
                return Err(Error::mismatch(ring, r.ring()));
            }
            if r.rows() != gens[k] {
                return Err(Error::dims(format!("relations in degree {} have {} rows", lo + k as i64, r.rows())));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::mismatch(ring, d.ring()));
            }
            if d.shape() != (gens[k], gens[k + 1]) {
                return Err(Error::dims(format!("d{} has the wrong shape", lo + k as i64 + 1)));
            }
        }
        Ok(PresentedComplex { ring: ring.clone(), lo, gens, relations, diffs })
    }

    /// A free complex, presented with no relations.
    pub fn from_free(x: &FreeComplex) -> Self {
        let relations = x.ranks().iter().map(|&r| SparseMatrix::zero(x.ring(), r, 0)).collect();
        PresentedComplex {
            ring: x.ring().clone(),
            lo: x.lo(),
            gens: x.ranks().to_vec(),
            relations,
            diffs: x.differentials().to_vec(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.gens.len() as i64 - 1
    }

    fn slot(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn generators(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.gens[k])
    }

    pub fn relations(&self, n: i64) -> SparseMatrix {
        match self.slot(n) {
            Some(k) => self.relations[k].clone(),
            None => SparseMatrix::zero(&self.ring, 0, 0),
        }
    }

    pub fn diff(&self, n: i64) -> SparseMatrix {
        if n > self.lo && n <= self.hi() {
            return self.diffs[(n - self.lo - 1) as usize].clone();
        }
        SparseMatrix::zero(&self.ring, self.generators(n - 1), self.generators(n))
    }

    /// Checks that ∂ maps relations into relations and ∂∂ lands in them.
    pub fn validate(&self) -> Result<()> {
        if self.ring.is_graded() {
            return Err(Error::unsupported("presented complex validation", &self.ring));
        }
        for n in self.lo + 1..=self.hi() {
            let d = self.diff(n);
            let rel_below = self.relations(n - 1);
            if !in_column_span(&rel_below, &d.matmul(&self.relations(n))?)? {
                return Err(Error::InvalidComplex(format!("d{n} does not preserve relations")));
            }
            if n - 1 > self.lo {
                let dd = self.diff(n - 1).matmul(&d)?;
                if !in_column_span(&self.relations(n - 2), &dd)? {
                    return Err(Error::InvalidComplex(format!("d{}*d{n} is not zero modulo relations", n - 1)));
                }
            }
        }
        Ok(())
    }
}
