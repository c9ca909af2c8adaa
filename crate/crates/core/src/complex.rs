//! Bounded complexes of finite-rank free modules and maps between them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::parallel::{try_map_collect, Execution};
use crate::scalar::{Ring, Scalar};

/// A complex X with X_n free of rank `ranks[n - lo]` and ∂_n: X_n → X_{n−1}.
///
/// Over a graded ring every generator carries an internal degree; the entry
/// (i, j) of ∂_n is then homogeneous of degree gdeg(X_n, j) − gdeg(X_{n−1}, i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    degrees: Option<Vec<Vec<i64>>>,
    diffs: Vec<SparseMatrix>,
}

/// First failing invariant found by [`FreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// ∂_{n−1}∂_n has a nonzero entry.
    SquareNonzero(String),
    /// ∂_n has an entry of the wrong internal degree.
    Inhomogeneous(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::SquareNonzero(v) => write!(
                f,
                "d{}*d{} has entry {} at ({}, {})",
                self.degree - 1,
                self.degree,
                v,
                self.row,
                self.col
            ),
            ViolationKind::Inhomogeneous(v) => {
                write!(f, "d{} entry ({}, {}) = {} has the wrong internal degree", self.degree, self.row, self.col, v)
            }
        }
    }
}

impl FreeComplex {
    /// `diffs[k]` is ∂_{lo+k+1}. Shapes, rings and the presence of a grading
    /// are checked here; ∂² = 0 is left to [`validate`](Self::validate).
    pub fn new(
        ring: &Ring,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<SparseMatrix>,
        degrees: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::dims(format!("{} ranks need {} differentials", ranks.len(), ranks.len().saturating_sub(1))));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::mismatch(ring, d.ring()));
            }
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::dims(format!(
                    "d{} is {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        match (&degrees, ring.is_graded()) {
            (None, true) => return Err(Error::MissingGrading),
            (Some(_), false) => return Err(Error::UnexpectedGrading),
            (Some(g), true) => {
                if g.len() != ranks.len() || g.iter().zip(&ranks).any(|(g, &r)| g.len() != r) {
                    return Err(Error::dims("generator degrees do not match the ranks"));
                }
            }
            (None, false) => {}
        }
        Ok(FreeComplex { ring: ring.clone(), lo, ranks, degrees, diffs })
    }

    /// Builds a complex from its differentials, reading ranks off their shapes.
    pub fn from_differentials(ring: &Ring, lo: i64, diffs: Vec<SparseMatrix>, degrees: Option<Vec<Vec<i64>>>) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::dims("no differentials given"));
        }
        let mut ranks = vec![diffs[0].rows()];
        for (k, d) in diffs.iter().enumerate() {
            if k > 0 && d.rows() != diffs[k - 1].cols() {
                return Err(Error::dims(format!("d{} and d{} do not compose", lo + k as i64, lo + k as i64 + 1)));
            }
            ranks.push(d.cols());
        }
        Self::new(ring, lo, ranks, diffs, degrees)
    }

    pub fn zero(ring: &Ring) -> Self {
        FreeComplex { ring: ring.clone(), lo: 0, ranks: Vec::new(), degrees: ring.is_graded().then(Vec::new), diffs: Vec::new() }
    }

    /// R^rank in degree n, with the given internal degrees when graded.
    pub fn concentrated(ring: &Ring, n: i64, rank: usize, degrees: Option<Vec<i64>>) -> Result<Self> {
        Self::new(ring, n, vec![rank], Vec::new(), degrees.map(|d| vec![d]))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top of the stored interval; `lo − 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.ranks[k])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_rank() == 0
    }

    /// Lowest and highest degrees with a nonzero module.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = self.ranks.iter().position(|&r| r > 0)?;
        let last = self.ranks.iter().rposition(|&r| r > 0)?;
        Some((self.lo + first as i64, self.lo + last as i64))
    }

    /// Internal degrees of the generators of X_n (empty when ungraded).
    pub fn gen_degrees(&self, n: i64) -> &[i64] {
        match (&self.degrees, self.slot(n)) {
            (Some(g), Some(k)) => &g[k],
            _ => &[],
        }
    }

    pub fn all_gen_degrees(&self) -> Option<&[Vec<i64>]> {
        self.degrees.as_deref()
    }

    /// The stored ∂_n, if lo < n ≤ hi.
    pub fn differential(&self, n: i64) -> Option<&SparseMatrix> {
        if n <= self.lo || n > self.hi() {
            return None;
        }
        self.diffs.get((n - self.lo - 1) as usize)
    }

    /// ∂_n as a (possibly empty or zero) matrix of shape rank(n−1) × rank(n).
    pub fn diff(&self, n: i64) -> SparseMatrix {
        self.differential(n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(&self.ring, self.rank(n - 1), self.rank(n)))
    }

    pub fn differentials(&self) -> &[SparseMatrix] {
        &self.diffs
    }

    fn slot(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if let Some(g) = &self.degrees {
            for (k, d) in self.diffs.iter().enumerate() {
                for (i, j, s) in d.iter() {
                    let want = g[k + 1][j] - g[k][i];
                    if !s.is_homogeneous() || s.degree() != Some(want) {
                        return Err(Violation {
                            degree: self.lo + k as i64 + 1,
                            row: i,
                            col: j,
                            kind: ViolationKind::Inhomogeneous(s.to_string()),
                        });
                    }
                }
            }
        }
        for k in 1..self.diffs.len() {
            let c = self.diffs[k - 1].matmul(&self.diffs[k]).expect("shapes checked on construction");
            let first = c.iter().next().map(|(i, j, s)| (i, j, s.to_string()));
            if let Some((row, col, s)) = first {
                return Err(Violation { degree: self.lo + k as i64 + 1, row, col, kind: ViolationKind::SquareNonzero(s) });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Drops zero modules at both ends.
    pub fn trimmed(&self) -> FreeComplex {
        match self.support() {
            None => FreeComplex::zero(&self.ring),
            Some((a, b)) => self.restrict(a, b),
        }
    }

    /// The same complex stored on the interval [a, b] (zeros are padded).
    pub fn restrict(&self, a: i64, b: i64) -> FreeComplex {
        if b < a {
            return FreeComplex::zero(&self.ring);
        }
        let ranks = (a..=b).map(|n| self.rank(n)).collect();
        let diffs = (a + 1..=b).map(|n| self.diff(n)).collect();
        let degrees = self.degrees.as_ref().map(|_| (a..=b).map(|n| self.gen_degrees(n).to_vec()).collect());
        FreeComplex { ring: self.ring.clone(), lo: a, ranks, degrees, diffs }
    }

    /// Σ^i X: (Σ^i X)_n = X_{n−i} with ∂ multiplied by (−1)^i.
    pub fn shift(&self, i: i64) -> FreeComplex {
        let diffs = if i.rem_euclid(2) == 1 { self.diffs.iter().map(|d| d.neg()).collect() } else { self.diffs.clone() };
        FreeComplex { lo: self.lo + i, diffs, ..self.clone() }
    }

    /// Degree-wise base change along ZZ → QQ, ZZ → GF(p), ZLoc(p) → QQ, …
    pub fn base_change(&self, target: &Ring) -> Result<FreeComplex> {
        if target.is_graded() != self.ring.is_graded() {
            return Err(Error::UnsupportedRingMap { source_ring: self.ring.to_string(), target_ring: target.to_string() });
        }
        let diffs = self.diffs.iter().map(|d| d.try_map(target, |s| s.map_to(target))).collect::<Result<_>>()?;
        Ok(FreeComplex { ring: target.clone(), diffs, ..self.clone() })
    }
}

fn union_interval(x: &FreeComplex, y: &FreeComplex) -> Option<(i64, i64)> {
    match (x.ranks.is_empty(), y.ranks.is_empty()) {
        (true, true) => None,
        (true, false) => Some((y.lo, y.hi())),
        (false, true) => Some((x.lo, x.hi())),
        (false, false) => Some((x.lo.min(y.lo), x.hi().max(y.hi()))),
    }
}

fn check_same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if a != b {
        return Err(Error::mismatch(a, b));
    }
    Ok(())
}

/// X ⊕ Y with X's generators first in every degree.
pub fn direct_sum(x: &FreeComplex, y: &FreeComplex) -> Result<FreeComplex> {
    check_same_ring(&x.ring, &y.ring)?;
    let Some((a, b)) = union_interval(x, y) else {
        return Ok(FreeComplex::zero(&x.ring));
    };
    let ranks = (a..=b).map(|n| x.rank(n) + y.rank(n)).collect();
    let diffs = (a + 1..=b).map(|n| x.diff(n).block_diag(&y.diff(n))).collect::<Result<_>>()?;
    let degrees = x.degrees.as_ref().map(|_| {
        (a..=b).map(|n| x.gen_degrees(n).iter().chain(y.gen_degrees(n)).copied().collect()).collect()
    });
    FreeComplex::new(&x.ring, a, ranks, diffs, degrees)
}

/// A basis element x_{p,i} ⊗ y_{q,j} of (X ⊗ Y)_{p+q}.
pub type TensorIndex = (i64, usize, i64, usize);

/// Ordered bases of X ⊗ Y: in degree n the blocks X_p ⊗ Y_{n−p} appear by
/// decreasing p, and within a block x_i ⊗ y_j is at position i·rank(Y_q) + j.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    lo: i64,
    elems: Vec<Vec<TensorIndex>>,
    index: HashMap<TensorIndex, usize>,
}

impl TensorBasis {
    pub fn new(x: &FreeComplex, y: &FreeComplex) -> Self {
        if x.ranks.is_empty() || y.ranks.is_empty() {
            return TensorBasis { lo: 0, elems: Vec::new(), index: HashMap::new() };
        }
        let lo = x.lo + y.lo;
        let hi = x.hi() + y.hi();
        let mut elems = Vec::with_capacity((hi - lo + 1) as usize);
        let mut index = HashMap::new();
        for n in lo..=hi {
            let mut here = Vec::new();
            for p in (x.lo..=x.hi()).rev() {
                let q = n - p;
                for i in 0..x.rank(p) {
                    for j in 0..y.rank(q) {
                        index.insert((p, i, q, j), here.len());
                        here.push((p, i, q, j));
                    }
                }
            }
            elems.push(here);
        }
        TensorBasis { lo, elems, index }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.elems.len() as i64 - 1
    }

    pub fn degree(&self, n: i64) -> &[TensorIndex] {
        if n < self.lo || n > self.hi() {
            return &[];
        }
        &self.elems[(n - self.lo) as usize]
    }

    /// Position of x_{p,i} ⊗ y_{q,j} inside degree p + q.
    pub fn position(&self, p: i64, i: usize, q: i64, j: usize) -> Option<usize> {
        self.index.get(&(p, i, q, j)).copied()
    }
}

/// X ⊗ Y with ∂(x ⊗ y) = ∂x ⊗ y + (−1)^{|x|} x ⊗ ∂y.
pub fn tensor(x: &FreeComplex, y: &FreeComplex) -> Result<FreeComplex> {
    tensor_with(x, y, Execution::default())
}

pub fn tensor_with(x: &FreeComplex, y: &FreeComplex, exec: Execution) -> Result<FreeComplex> {
    check_same_ring(&x.ring, &y.ring)?;
    let basis = TensorBasis::new(x, y);
    if basis.elems.is_empty() {
        return Ok(FreeComplex::zero(&x.ring));
    }
    let (lo, hi) = (basis.lo(), basis.hi());
    let ring = x.ring.clone();
    let diffs = try_map_collect(exec, (lo + 1..=hi).collect(), |n| -> Result<SparseMatrix> {
        let src = basis.degree(n);
        let mut d = SparseMatrix::zero(&ring, basis.degree(n - 1).len(), src.len());
        for (col, &(p, i, q, j)) in src.iter().enumerate() {
            if let Some(dx) = x.differential(p) {
                for r in 0..dx.rows() {
                    if let Some(c) = dx.entry(r, i) {
                        d.add_at(basis.position(p - 1, r, q, j).expect("basis element"), col, c);
                    }
                }
            }
            if let Some(dy) = y.differential(q) {
                for r in 0..dy.rows() {
                    if let Some(c) = dy.entry(r, j) {
                        let c = if p.rem_euclid(2) == 1 { -c } else { c.clone() };
                        d.add_at(basis.position(p, i, q - 1, r).expect("basis element"), col, &c);
                    }
                }
            }
        }
        Ok(d)
    })?;
    let ranks = (lo..=hi).map(|n| basis.degree(n).len()).collect();
    let degrees = (x.is_graded()).then(|| {
        (lo..=hi)
            .map(|n| basis.degree(n).iter().map(|&(p, i, q, j)| x.gen_degrees(p)[i] + y.gen_degrees(q)[j]).collect())
            .collect()
    });
    FreeComplex::new(&ring, lo, ranks, diffs, degrees)
}

/// Koszul complex on a nonempty list of elements.
///
/// One element gives 0 → R → R → 0 with matrix (x); two give
/// 0 → R → R² → R → 0 with ∂₂ = (y, −x)ᵗ and ∂₁ = (x y); longer lists are
/// the iterated tensor product (…(K(x₁) ⊗ K(x₂)) ⊗ …) ⊗ K(x_k).
pub fn koszul(elements: &[Scalar]) -> Result<FreeComplex> {
    let Some(first) = elements.first() else {
        return Err(Error::EmptyKoszul);
    };
    let ring = first.ring().clone();
    for e in elements {
        check_same_ring(&ring, e.ring())?;
        if ring.is_graded() && !e.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("Koszul element {e}")));
        }
    }
    let deg = |e: &Scalar| e.degree().unwrap_or(0);
    let single = |e: &Scalar| -> Result<FreeComplex> {
        let degrees = ring.is_graded().then(|| vec![vec![0], vec![deg(e)]]);
        FreeComplex::new(&ring, 0, vec![1, 1], vec![SparseMatrix::from_dense(&ring, 1, 1, vec![vec![e.clone()]])?], degrees)
    };
    match elements {
        [x] => single(x),
        [x, y] => {
            let d2 = SparseMatrix::from_dense(&ring, 2, 1, vec![vec![y.clone()], vec![-x]])?;
            let d1 = SparseMatrix::from_dense(&ring, 1, 2, vec![vec![x.clone(), y.clone()]])?;
            let degrees = ring.is_graded().then(|| vec![vec![0], vec![deg(x), deg(y)], vec![deg(x) + deg(y)]]);
            FreeComplex::new(&ring, 0, vec![1, 2, 1], vec![d1, d2], degrees)
        }
        _ => {
            let mut k = single(first)?;
            for e in &elements[1..] {
                k = tensor(&k, &single(e)?)?;
            }
            Ok(k)
        }
    }
}

/// A degree-preserving map f: X → Y, stored only where it can be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    maps: BTreeMap<i64, SparseMatrix>,
}

fn collect_components(
    source: &FreeComplex,
    target: &FreeComplex,
    offset: i64,
    comps: impl IntoIterator<Item = (i64, SparseMatrix)>,
) -> Result<BTreeMap<i64, SparseMatrix>> {
    check_same_ring(&source.ring, &target.ring)?;
    let mut maps = BTreeMap::new();
    for (n, m) in comps {
        check_same_ring(&source.ring, m.ring())?;
        let want = (target.rank(n + offset), source.rank(n));
        if m.shape() != want {
            return Err(Error::dims(format!(
                "component in degree {n} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                want.0,
                want.1
            )));
        }
        if !m.is_zero() {
            maps.insert(n, m);
        }
    }
    Ok(maps)
}

impl ChainMap {
    pub fn new(source: &FreeComplex, target: &FreeComplex, maps: impl IntoIterator<Item = (i64, SparseMatrix)>) -> Result<Self> {
        let maps = collect_components(source, target, 0, maps)?;
        Ok(ChainMap { source: source.clone(), target: target.clone(), maps })
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Result<Self> {
        Self::new(source, target, [])
    }

    pub fn identity(x: &FreeComplex) -> Self {
        let maps = (x.lo..=x.hi()).filter(|&n| x.rank(n) > 0).map(|n| (n, SparseMatrix::identity(&x.ring, x.rank(n))));
        ChainMap { source: x.clone(), target: x.clone(), maps: maps.collect() }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn ring(&self) -> &Ring {
        &self.source.ring
    }

    /// f_n as a matrix of shape rank(Y_n) × rank(X_n).
    pub fn map(&self, n: i64) -> SparseMatrix {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(&self.source.ring, self.target.rank(n), self.source.rank(n)))
    }

    /// Degrees with a stored nonzero component.
    pub fn components(&self) -> impl Iterator<Item = (i64, &SparseMatrix)> {
        self.maps.iter().map(|(&n, m)| (n, m))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    fn span(&self) -> Option<(i64, i64)> {
        union_interval(&self.source, &self.target)
    }

    pub fn is_chain_map(&self) -> bool {
        let Some((a, b)) = self.span() else { return true };
        (a..=b + 1).all(|n| {
            let left = self.map(n - 1).matmul(&self.source.diff(n)).expect("shapes");
            let right = self.target.diff(n).matmul(&self.map(n)).expect("shapes");
            left == right
        })
    }

    /// Whether every component is homogeneous of internal degree 0.
    pub fn is_homogeneous(&self) -> bool {
        if !self.source.is_graded() {
            return true;
        }
        self.maps.iter().all(|(&n, m)| {
            m.iter().all(|(i, j, s)| {
                s.is_homogeneous() && s.degree() == Some(self.source.gen_degrees(n)[j] - self.target.gen_degrees(n)[i])
            })
        })
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { maps: self.maps.iter().map(|(&n, m)| (n, m.neg())).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<ChainMap> {
        let comps = self.maps.iter().map(|(&n, m)| Ok((n, m.scale(c)?))).collect::<Result<Vec<_>>>()?;
        ChainMap::new(&self.source, &self.target, comps)
    }
}

fn same_shape(a: &FreeComplex, b: &FreeComplex) -> Result<()> {
    check_same_ring(&a.ring, &b.ring)?;
    let Some((lo, hi)) = union_interval(a, b) else { return Ok(()) };
    if (lo..=hi).any(|n| a.rank(n) != b.rank(n)) {
        return Err(Error::dims("complexes have different ranks"));
    }
    Ok(())
}

/// g ∘ f for f: X → Y and g: Y → Z.
pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap> {
    same_shape(&f.target, &g.source)?;
    let mut comps = Vec::new();
    for (&n, fm) in &f.maps {
        if let Some(gm) = g.maps.get(&n) {
            comps.push((n, gm.matmul(fm)?));
        }
    }
    ChainMap::new(&f.source, &g.target, comps)
}

pub fn identity(x: &FreeComplex) -> ChainMap {
    ChainMap::identity(x)
}

pub fn map_add(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    same_shape(&f.source, &g.source)?;
    same_shape(&f.target, &g.target)?;
    let mut maps = f.maps.clone();
    for (&n, m) in &g.maps {
        let sum = match maps.get(&n) {
            Some(a) => a.mat_add(m)?,
            None => m.clone(),
        };
        maps.insert(n, sum);
    }
    ChainMap::new(&f.source, &f.target, maps)
}

pub fn map_sub(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    map_add(f, &g.neg())
}

pub fn is_chain_map(f: &ChainMap) -> bool {
    f.is_chain_map()
}

/// f ⊗ g: X ⊗ Y → X' ⊗ Y', acting as f_p ⊗ g_q on each block (no sign).
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let source = tensor(&f.source, &g.source)?;
    let target = tensor(&f.target, &g.target)?;
    let sb = TensorBasis::new(&f.source, &g.source);
    let tb = TensorBasis::new(&f.target, &g.target);
    let ring = f.ring().clone();
    let mut comps = Vec::new();
    if !sb.elems.is_empty() && !tb.elems.is_empty() {
        for n in sb.lo()..=sb.hi() {
            let mut m = SparseMatrix::zero(&ring, target.rank(n), source.rank(n));
            for (&p, fp) in &f.maps {
                let q = n - p;
                let Some(gq) = g.maps.get(&q) else { continue };
                let (Some(c0), Some(r0)) = (sb.position(p, 0, q, 0), tb.position(p, 0, q, 0)) else { continue };
                m.paste(r0, c0, &fp.kron(gq)?);
            }
            comps.push((n, m));
        }
    }
    ChainMap::new(&source, &target, comps)
}

/// Mapping cone: cone_n = X_{n−1} ⊕ Y_n with ∂ = [[−∂^X, 0], [f, ∂^Y]].
pub fn cone(f: &ChainMap) -> Result<FreeComplex> {
    let (x, y) = (&f.source, &f.target);
    let ring = x.ring.clone();
    let shifted_lo = if x.ranks.is_empty() { None } else { Some((x.lo + 1, x.hi() + 1)) };
    let ylo = if y.ranks.is_empty() { None } else { Some((y.lo, y.hi())) };
    let (a, b) = match (shifted_lo, ylo) {
        (None, None) => return Ok(FreeComplex::zero(&ring)),
        (Some(s), None) | (None, Some(s)) => s,
        (Some(s), Some(t)) => (s.0.min(t.0), s.1.max(t.1)),
    };
    let ranks = (a..=b).map(|n| x.rank(n - 1) + y.rank(n)).collect();
    let mut diffs = Vec::new();
    for n in a + 1..=b {
        let (xr, xc) = (x.rank(n - 2), x.rank(n - 1));
        let (yr, yc) = (y.rank(n - 1), y.rank(n));
        let mut d = SparseMatrix::zero(&ring, xr + yr, xc + yc);
        d.paste(0, 0, &x.diff(n - 1).neg());
        d.paste(xr, 0, &f.map(n - 1));
        d.paste(xr, xc, &y.diff(n));
        diffs.push(d);
    }
    let degrees = x.is_graded().then(|| {
        (a..=b).map(|n| x.gen_degrees(n - 1).iter().chain(y.gen_degrees(n)).copied().collect()).collect()
    });
    FreeComplex::new(&ring, a, ranks, diffs, degrees)
}

/// Maps s_n: X_n → Y_{n+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: FreeComplex,
    target: FreeComplex,
    maps: BTreeMap<i64, SparseMatrix>,
}

impl Homotopy {
    pub fn new(source: &FreeComplex, target: &FreeComplex, maps: impl IntoIterator<Item = (i64, SparseMatrix)>) -> Result<Self> {
        let maps = collect_components(source, target, 1, maps)?;
        Ok(Homotopy { source: source.clone(), target: target.clone(), maps })
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Result<Self> {
        Self::new(source, target, [])
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    /// s_n as a matrix of shape rank(Y_{n+1}) × rank(X_n).
    pub fn map(&self, n: i64) -> SparseMatrix {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(&self.source.ring, self.target.rank(n + 1), self.source.rank(n)))
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &SparseMatrix)> {
        self.maps.iter().map(|(&n, m)| (n, m))
    }

    /// ∂s + s∂, the null-homotopic map this homotopy produces.
    pub fn boundary(&self) -> Result<ChainMap> {
        let Some((a, b)) = union_interval(&self.source, &self.target) else {
            return ChainMap::zero(&self.source, &self.target);
        };
        let comps = (a..=b)
            .map(|n| {
                let m = self.target.diff(n + 1).matmul(&self.map(n))?.mat_add(&self.map(n - 1).matmul(&self.source.diff(n))?)?;
                Ok((n, m))
            })
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(&self.source, &self.target, comps)
    }
}

/// Whether f − g = ∂s + s∂ in every degree.
pub fn is_homotopy(s: &Homotopy, f: &ChainMap, g: &ChainMap) -> Result<bool> {
    for m in [f, g] {
        same_shape(&s.source, &m.source)?;
        same_shape(&s.target, &m.target)?;
    }
    let b = s.boundary()?;
    Ok(map_sub(f, g)?.maps == b.maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(ring: &Ring, rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_ints(ring, rows)
    }

    fn qxy() -> (Ring, Scalar, Scalar) {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let x = Scalar::variable(&r, "x").unwrap();
        let y = Scalar::variable(&r, "y").unwrap();
        (r, x, y)
    }

    fn strings(m: &SparseMatrix) -> Vec<Vec<String>> {
        m.to_strings()
    }

    #[test]
    fn koszul_two_elements() {
        let (_, x, y) = qxy();
        let k = koszul(&[x, y]).unwrap();
        assert!(k.is_valid());
        assert_eq!(strings(&k.diff(2)), [["y"], ["-x"]]);
        assert_eq!(strings(&k.diff(1)), [["x", "y"]]);
        assert_eq!(k.gen_degrees(2), [2]);
    }

    #[test]
    fn composite_of_units_is_flagged() {
        let z = Ring::integers();
        let c = FreeComplex::from_differentials(&z, 0, vec![int_matrix(&z, &[&[1]]), int_matrix(&z, &[&[1]])], None).unwrap();
        let v = c.validate().unwrap_err();
        assert_eq!((v.degree, v.row, v.col), (2, 0, 0));
        assert!(FreeComplex::zero(&z).is_valid());
    }

    #[test]
    fn inhomogeneous_differential_is_flagged() {
        let (r, x, _) = qxy();
        let c = FreeComplex::new(&r, 0, vec![1, 1], vec![SparseMatrix::from_dense(&r, 1, 1, vec![vec![x]]).unwrap()], Some(vec![vec![0], vec![2]]))
            .unwrap();
        assert!(matches!(c.validate().unwrap_err().kind, ViolationKind::Inhomogeneous(_)));
    }

    #[test]
    fn grading_is_mandatory_exactly_for_graded_rings() {
        let (r, _, _) = qxy();
        assert!(matches!(FreeComplex::concentrated(&r, 0, 1, None), Err(Error::MissingGrading)));
        let z = Ring::integers();
        assert!(matches!(FreeComplex::concentrated(&z, 0, 1, Some(vec![0])), Err(Error::UnexpectedGrading)));
    }

    #[test]
    fn shift_signs() {
        let z = Ring::integers();
        let k = koszul(&[Scalar::from_int(&z, 3)]).unwrap();
        assert_eq!(strings(&k.shift(1).diff(2)), [["-3"]]);
        assert_eq!(k.shift(2).diff(3), k.diff(1));
        let r = FreeComplex::concentrated(&z, 0, 1, None).unwrap().shift(1);
        assert_eq!((r.rank(1), r.rank(0)), (1, 0));
    }

    #[test]
    fn sums() {
        let z = Ring::integers();
        let a = FreeComplex::concentrated(&z, 1, 1, None).unwrap();
        let b = FreeComplex::concentrated(&z, 3, 1, None).unwrap();
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!((s.rank(1), s.rank(2), s.rank(3)), (1, 0, 1));
        let k = koszul(&[Scalar::from_int(&z, 2), Scalar::from_int(&z, 5)]).unwrap();
        assert_eq!(direct_sum(&k, &FreeComplex::zero(&z)).unwrap(), k);
    }

    #[test]
    fn koszul_tensor_square_in_the_example_basis() {
        let (_, x, y) = qxy();
        let k = koszul(&[x, y]).unwrap();
        let kk = tensor(&k, &k).unwrap();
        assert!(kk.is_valid());
        assert_eq!(strings(&kk.diff(4)), [["y"], ["-x"], ["y"], ["-x"]]);
        assert_eq!(
            strings(&kk.diff(3)),
            [
                ["x", "y", "0", "0"],
                ["y", "0", "-y", "0"],
                ["0", "y", "x", "0"],
                ["-x", "0", "0", "-y"],
                ["0", "-x", "0", "x"],
                ["0", "0", "x", "y"]
            ]
        );
        assert_eq!(
            strings(&kk.diff(2)),
            [
                ["y", "-x", "-y", "0", "0", "0"],
                ["-x", "0", "0", "-x", "-y", "0"],
                ["0", "x", "0", "y", "0", "y"],
                ["0", "0", "x", "0", "y", "-x"]
            ]
        );
        assert_eq!(strings(&kk.diff(1)), [["x", "y", "x", "y"]]);
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let z = Ring::integers();
        let k = koszul(&[Scalar::from_int(&z, 2), Scalar::from_int(&z, 3), Scalar::from_int(&z, 5)]).unwrap();
        let r = FreeComplex::concentrated(&z, 0, 1, None).unwrap();
        assert_eq!(tensor(&r, &k).unwrap(), k);
        assert_eq!(tensor(&k, &r).unwrap(), k);
    }

    #[test]
    fn maps_and_homotopies() {
        let z = Ring::integers();
        let k = koszul(&[Scalar::from_int(&z, 1)]).unwrap();
        let id = identity(&k);
        assert!(id.is_chain_map());
        let zero = ChainMap::zero(&k, &k).unwrap();
        assert!(is_homotopy(&Homotopy::zero(&k, &k).unwrap(), &id, &id).unwrap());
        // K(1) is contractible: s_0 = (1)
        let s = Homotopy::new(&k, &k, [(0, int_matrix(&z, &[&[1]]))]).unwrap();
        assert!(is_homotopy(&s, &id, &zero).unwrap());
        assert!(!is_homotopy(&Homotopy::zero(&k, &k).unwrap(), &id, &zero).unwrap());
    }

    #[test]
    fn identity_tensor_identity() {
        let (_, x, y) = qxy();
        let k = koszul(&[x, y]).unwrap();
        let t = tensor_map(&identity(&k), &identity(&k)).unwrap();
        assert_eq!(t, identity(&tensor(&k, &k).unwrap()));
        let z = tensor_map(&ChainMap::zero(&k, &k).unwrap(), &identity(&k)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn cone_of_identity_is_exact_shape() {
        let z = Ring::integers();
        let k = koszul(&[Scalar::from_int(&z, 6)]).unwrap();
        let c = cone(&identity(&k)).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.ranks(), [1, 2, 1]);
    }
}
