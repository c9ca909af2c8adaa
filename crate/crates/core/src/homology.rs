//! Homology of free and presented complexes, exactness and quasi-isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::complex::{cone, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::graded::{slice, slice_dim};
use crate::linalg::snf::{kernel_over_pid, smith_internal, solve};
use crate::linalg::{rank, SparseMatrix};
use crate::parallel::{try_map_collect, Execution};
use crate::presented::PresentedComplex;
use crate::scalar::{Ring, RingKind, Scalar};

/// R^r ⊕ R/(d₁) ⊕ … with d₁ | d₂ | … non-units (ZZ or ZLoc(p)).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FpAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FpAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(r: usize) -> Self {
        FpAbelianGroup { free_rank: r, torsion: Vec::new() }
    }

    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        FpAbelianGroup { free_rank: 0, torsion: vec![d.into()] }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Builds the canonical form from a rank and raw invariant factors.
    pub(crate) fn from_factors(free_rank: usize, factors: &[Scalar]) -> Self {
        let torsion = factors
            .iter()
            .filter(|d| !d.is_unit())
            .map(|d| d.normalized().as_rational().expect("numeric ring").numer().clone())
            .collect();
        FpAbelianGroup { free_rank, torsion }
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, base: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(base.to_string()),
            r => parts.push(format!("{base}^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("{base}/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for FpAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "Z")
    }
}

/// One homology module, in the form the backend can compute exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyModule {
    Group(FpAbelianGroup),
    /// Dimension over a field.
    Dimension(usize),
    /// Internal degree → dimension over QQ (nonzero entries only).
    Hilbert(BTreeMap<i64, usize>),
}

impl HomologyModule {
    pub fn is_zero(&self) -> bool {
        match self {
            HomologyModule::Group(g) => g.is_zero(),
            HomologyModule::Dimension(d) => *d == 0,
            HomologyModule::Hilbert(h) => h.is_empty(),
        }
    }
}

/// +∞ for acyclic complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Inf {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Inf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inf::Finite(n) => write!(f, "{n}"),
            Inf::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub ring: Ring,
    /// Degrees outside this map are zero.
    pub modules: BTreeMap<i64, HomologyModule>,
    /// Internal-degree bound used over a graded ring.
    pub bound: Option<i64>,
}

impl HomologyReport {
    pub fn get(&self, n: i64) -> HomologyModule {
        self.modules.get(&n).cloned().unwrap_or_else(|| zero_module(&self.ring))
    }

    pub fn inf(&self) -> Inf {
        self.modules.iter().find(|(_, m)| !m.is_zero()).map_or(Inf::Infinite, |(&n, _)| Inf::Finite(n))
    }

    pub fn is_exact(&self) -> bool {
        self.inf() == Inf::Infinite
    }

    /// Where exactness first fails: the lowest nonzero homology.
    pub fn witness(&self) -> Option<String> {
        let (n, m) = self.modules.iter().find(|(_, m)| !m.is_zero())?;
        Some(match m {
            HomologyModule::Group(g) => format!("H{n} = {g}"),
            HomologyModule::Dimension(d) => format!("H{n} has dimension {d}"),
            HomologyModule::Hilbert(h) => {
                let (d, k) = h.iter().next().expect("nonzero table");
                format!("H{n} has dimension {k} in internal degree {d}")
            }
        })
    }

    /// H_n as a group (ZZ / ZLoc only).
    pub fn group(&self, n: i64) -> Option<FpAbelianGroup> {
        match self.get(n) {
            HomologyModule::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn dimension(&self, n: i64) -> Option<usize> {
        match self.get(n) {
            HomologyModule::Dimension(d) => Some(d),
            _ => None,
        }
    }

    pub fn hilbert(&self, n: i64) -> Option<BTreeMap<i64, usize>> {
        match self.get(n) {
            HomologyModule::Hilbert(h) => Some(h),
            _ => None,
        }
    }

    /// Whether a zero verdict is only known up to the internal-degree bound.
    pub fn is_bounded(&self) -> bool {
        self.bound.is_some()
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.ring.kind() {
            RingKind::Integers => "Z".to_string(),
            _ => "R".to_string(),
        };
        for (n, m) in &self.modules {
            write!(f, "H{n}: ")?;
            match m {
                HomologyModule::Group(g) => g.write_with(f, &base)?,
                HomologyModule::Dimension(d) => write!(f, "{d}")?,
                HomologyModule::Hilbert(h) => {
                    if h.is_empty() {
                        write!(f, "0")?;
                    } else {
                        let terms: Vec<String> = h.iter().map(|(d, k)| format!("{d}:{k}")).collect();
                        write!(f, "{{{}}}", terms.join(", "))?;
                    }
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn zero_module(ring: &Ring) -> HomologyModule {
    if ring.is_graded() {
        HomologyModule::Hilbert(BTreeMap::new())
    } else if ring.is_field() {
        HomologyModule::Dimension(0)
    } else {
        HomologyModule::Group(FpAbelianGroup::zero())
    }
}

/// D = (largest internal generator degree of X ⊗ X) + (total rank of X) + 2.
pub fn default_bound(x: &FreeComplex) -> i64 {
    let max = x.all_gen_degrees().into_iter().flatten().flatten().copied().max().unwrap_or(0);
    2 * max + x.total_rank() as i64 + 2
}

pub fn homology(x: &FreeComplex) -> Result<HomologyReport> {
    homology_with(x, None, Execution::default())
}

/// Homology with an explicit internal-degree bound for graded complexes
/// (`None` uses [`default_bound`]; ignored otherwise).
pub fn homology_bounded(x: &FreeComplex, bound: Option<i64>) -> Result<HomologyReport> {
    homology_with(x, bound, Execution::default())
}

pub fn homology_with(x: &FreeComplex, bound: Option<i64>, exec: Execution) -> Result<HomologyReport> {
    let ring = x.ring().clone();
    let Some((lo, hi)) = x.support() else {
        let bound = ring.is_graded().then(|| bound.unwrap_or_else(|| default_bound(x)));
        return Ok(HomologyReport { ring, modules: BTreeMap::new(), bound });
    };
    if ring.is_graded() {
        return graded_homology(x, bound.unwrap_or_else(|| default_bound(x)), exec);
    }
    // rank and invariant factors of every differential that touches the support
    let facts = try_map_collect(exec, (lo..=hi + 1).collect(), |n| -> Result<(usize, Vec<Scalar>)> {
        let d = x.diff(n);
        if ring.is_field() {
            Ok((rank(&d)?, Vec::new()))
        } else {
            let f = smith_internal(&d, false)?.1;
            Ok((f.len(), f))
        }
    })?;
    let mut modules = BTreeMap::new();
    for n in lo..=hi {
        let (r_in, _) = &facts[(n - lo) as usize];
        let (r_out, factors) = &facts[(n - lo + 1) as usize];
        let free = x.rank(n) - r_in - r_out;
        let m = if ring.is_field() {
            HomologyModule::Dimension(free)
        } else {
            HomologyModule::Group(FpAbelianGroup::from_factors(free, factors))
        };
        modules.insert(n, m);
    }
    Ok(HomologyReport { ring, modules, bound: None })
}

fn graded_homology(x: &FreeComplex, bound: i64, exec: Execution) -> Result<HomologyReport> {
    let ring = x.ring().clone();
    let (lo, hi) = x.support().expect("nonzero complex");
    let nvars = ring.nvars();
    let dmin = x.all_gen_degrees().into_iter().flatten().flatten().copied().min().unwrap_or(0);
    let mut jobs = Vec::new();
    for n in lo..=hi + 1 {
        for d in dmin..=bound {
            jobs.push((n, d));
        }
    }
    let ranks = try_map_collect(exec, jobs.clone(), |(n, d)| -> Result<usize> {
        let m = x.diff(n);
        if m.is_zero() {
            return Ok(0);
        }
        rank(&slice(&m, x.gen_degrees(n - 1), x.gen_degrees(n), d)?)
    })?;
    let table: BTreeMap<(i64, i64), usize> = jobs.into_iter().zip(ranks).collect();
    let mut modules = BTreeMap::new();
    for n in lo..=hi {
        let mut h = BTreeMap::new();
        for d in dmin..=bound {
            let dim = slice_dim(nvars, x.gen_degrees(n), d) - table[&(n, d)] - table[&(n + 1, d)];
            if dim > 0 {
                h.insert(d, dim);
            }
        }
        modules.insert(n, HomologyModule::Hilbert(h));
    }
    Ok(HomologyReport { ring, modules, bound: Some(bound) })
}

/// Columns of `c` replaced by a basis of their span (full column rank).
fn span_basis(c: &SparseMatrix) -> Result<SparseMatrix> {
    let (_, diag, v) = smith_internal(c, true)?;
    let v = v.expect("tracked");
    let cols: Vec<usize> = (0..diag.len()).collect();
    let rows: Vec<usize> = (0..v.rows()).collect();
    c.matmul(&v.submatrix(&rows, &cols))
}

/// Homology of a complex of finitely presented modules over ZZ, ZLoc(p) or a field.
pub fn homology_presented(p: &PresentedComplex) -> Result<HomologyReport> {
    let ring = p.ring().clone();
    if ring.is_graded() {
        return Err(Error::unsupported("presented homology", &ring));
    }
    let mut modules = BTreeMap::new();
    for n in p.lo()..=p.hi() {
        let g = p.generators(n);
        if g == 0 {
            modules.insert(n, zero_module(&ring));
            continue;
        }
        // cycles: v with ∂v ∈ span(Rel_{n−1})
        let d = p.diff(n);
        let rel_below = p.relations(n - 1);
        let stacked = if d.rows() == 0 {
            SparseMatrix::identity(&ring, g)
        } else {
            let k = kernel_over_pid(&d.hstack(&rel_below)?)?;
            let rows: Vec<usize> = (0..g).collect();
            let cols: Vec<usize> = (0..k.cols()).collect();
            k.submatrix(&rows, &cols)
        };
        let z = span_basis(&stacked)?;
        let b = p.diff(n + 1).hstack(&p.relations(n))?;
        let coords = solve(&z, &b)?.ok_or_else(|| Error::InvalidComplex(format!("boundaries in degree {n} are not cycles")))?;
        let factors = smith_internal(&coords, false)?.1;
        let free = z.cols() - factors.len();
        let m = if ring.is_field() {
            HomologyModule::Dimension(free)
        } else {
            HomologyModule::Group(FpAbelianGroup::from_factors(free, &factors))
        };
        modules.insert(n, m);
    }
    Ok(HomologyReport { ring, modules, bound: None })
}

/// Outcome of a check that may only be verifiable up to an internal-degree bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    HoldsUpToBound(i64),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self != Verdict::Fails
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::HoldsUpToBound(a), Verdict::HoldsUpToBound(b)) => Verdict::HoldsUpToBound(a.min(b)),
            (Verdict::HoldsUpToBound(a), _) | (_, Verdict::HoldsUpToBound(a)) => Verdict::HoldsUpToBound(a),
            _ => Verdict::Holds,
        }
    }
}

impl serde::Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "true"),
            Verdict::Fails => write!(f, "false"),
            Verdict::HoldsUpToBound(d) => write!(f, "true-up-to-bound-{d}"),
        }
    }
}

fn exactness(report: &HomologyReport) -> Verdict {
    match (report.is_exact(), report.bound) {
        (false, _) => Verdict::Fails,
        (true, Some(d)) => Verdict::HoldsUpToBound(d),
        (true, None) => Verdict::Holds,
    }
}

pub fn is_exact(x: &FreeComplex, bound: Option<i64>) -> Result<Verdict> {
    Ok(exactness(&homology_bounded(x, bound)?))
}

pub fn inf_h(x: &FreeComplex, bound: Option<i64>) -> Result<Inf> {
    Ok(homology_bounded(x, bound)?.inf())
}

/// Homology of the mapping cone of f.
pub fn cone_homology(f: &ChainMap, bound: Option<i64>) -> Result<HomologyReport> {
    if f.source().ring() != f.target().ring() {
        return Err(Error::mismatch(f.source().ring(), f.target().ring()));
    }
    let c = cone(f)?;
    let bound = match (c.is_graded(), bound) {
        (true, None) => Some(default_bound(f.source()).max(default_bound(f.target()))),
        (_, b) => b,
    };
    homology_bounded(&c, bound)
}

/// f is a quasi-isomorphism iff its mapping cone is exact.
pub fn is_quasi_iso(f: &ChainMap, bound: Option<i64>) -> Result<Verdict> {
    Ok(exactness(&cone_homology(f, bound)?))
}

/// Verdict of exactness for an already computed report.
pub fn exactness_of(report: &HomologyReport) -> Verdict {
    exactness(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;

    #[test]
    fn koszul_of_three() {
        let z = Ring::integers();
        let h = homology(&koszul(&[Scalar::from_int(&z, 3)]).unwrap()).unwrap();
        assert_eq!(h.group(0).unwrap(), FpAbelianGroup::cyclic(3));
        assert!(h.group(1).unwrap().is_zero());
        assert_eq!(h.to_string(), "H0: Z/3\nH1: 0\n");
    }

    #[test]
    fn graded_koszul() {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let k = koszul(&[Scalar::variable(&r, "x").unwrap(), Scalar::variable(&r, "y").unwrap()]).unwrap();
        let h = homology_bounded(&k, Some(6)).unwrap();
        assert_eq!(h.hilbert(0).unwrap(), BTreeMap::from([(0, 1)]));
        assert!(h.hilbert(1).unwrap().is_empty() && h.hilbert(2).unwrap().is_empty());
        assert_eq!(h.inf(), Inf::Finite(0));
    }

    #[test]
    fn presented_matches_free() {
        let z = Ring::integers();
        let k = koszul(&[Scalar::from_int(&z, 6), Scalar::from_int(&z, 4)]).unwrap();
        assert_eq!(homology_presented(&PresentedComplex::from_free(&k)).unwrap(), homology(&k).unwrap());
    }

    #[test]
    fn local_torsion() {
        let r = Ring::localized(3).unwrap();
        let k = koszul(&[Scalar::from_int(&r, 18)]).unwrap();
        assert_eq!(homology(&k).unwrap().group(0).unwrap(), FpAbelianGroup::cyclic(9));
        let unit = koszul(&[Scalar::from_int(&r, 2)]).unwrap();
        assert!(homology(&unit).unwrap().is_exact());
    }

    #[test]
    fn quasi_isomorphisms() {
        let q = Ring::rationals();
        let k = koszul(&[Scalar::from_int(&q, 1), Scalar::from_int(&q, 1)]).unwrap();
        assert_eq!(is_quasi_iso(&ChainMap::identity(&k), None).unwrap(), Verdict::Holds);
        let zero = FreeComplex::zero(&q);
        assert_eq!(is_quasi_iso(&ChainMap::zero(&k, &zero).unwrap(), None).unwrap(), Verdict::Holds);
        let r = FreeComplex::concentrated(&q, 0, 1, None).unwrap();
        assert_eq!(is_quasi_iso(&ChainMap::zero(&r, &r).unwrap(), None).unwrap(), Verdict::Fails);
    }

    #[test]
    fn infimum_of_suspension() {
        let q = Ring::rationals();
        let s2 = FreeComplex::concentrated(&q, 2, 1, None).unwrap();
        assert_eq!(inf_h(&s2, None).unwrap(), Inf::Finite(2));
        assert_eq!(inf_h(&FreeComplex::zero(&q), None).unwrap(), Inf::Infinite);
    }
}
