//! The map α, the symmetric squares S²(X) and s²(X), and their structure maps.
//!
//! S²(X)_n has one generator per pair ((p,i),(q,j)) with p + q = n and
//! (p,i) ≤ (q,j) lexicographically, where the squares x ⊗ x of odd-degree
//! basis elements are dropped. The reduction ρ rewrites x′ ⊗ x as
//! (−1)^{|x||x′|} x ⊗ x′, and the section σ picks the lex-least tensor with
//! coefficient 1.

use std::collections::HashMap;

use crate::complex::{direct_sum, is_homotopy, tensor, tensor_map, ChainMap, FreeComplex, Homotopy, TensorBasis};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::parallel::{try_map_collect, Execution};
use crate::presented::PresentedComplex;
use crate::scalar::{Ring, Scalar};

/// A basis element x_{p,i}: homological degree and index.
pub type Label = (i64, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymGen {
    pub left: Label,
    pub right: Label,
}

impl SymGen {
    pub fn is_diagonal(&self) -> bool {
        self.left == self.right
    }

    pub fn is_odd_diagonal(&self) -> bool {
        self.is_diagonal() && self.left.0.rem_euclid(2) == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// S²: odd-degree squares are killed.
    Strict,
    /// s²: odd-degree squares stay as generators (of order 2).
    Weak,
}

fn sign(p: i64, q: i64) -> i64 {
    if (p * q).rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug)]
pub struct SymBasis {
    flavor: Flavor,
    lo: i64,
    gens: Vec<Vec<SymGen>>,
    index: HashMap<SymGen, usize>,
}

impl SymBasis {
    pub fn new(x: &FreeComplex, flavor: Flavor) -> Self {
        let mut basis = SymBasis { flavor, lo: 2 * x.lo(), gens: Vec::new(), index: HashMap::new() };
        if x.ranks().is_empty() {
            return basis;
        }
        for n in 2 * x.lo()..=2 * x.hi() {
            let mut here = Vec::new();
            for p in x.lo()..=x.hi() {
                let q = n - p;
                if q < p {
                    break;
                }
                for i in 0..x.rank(p) {
                    let start = if q == p { i } else { 0 };
                    for j in start..x.rank(q) {
                        let g = SymGen { left: (p, i), right: (q, j) };
                        if flavor == Flavor::Strict && g.is_odd_diagonal() {
                            continue;
                        }
                        basis.index.insert(g, here.len());
                        here.push(g);
                    }
                }
            }
            basis.gens.push(here);
        }
        basis
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.gens.len() as i64 - 1
    }

    pub fn degree(&self, n: i64) -> &[SymGen] {
        if n < self.lo || n > self.hi() {
            return &[];
        }
        &self.gens[(n - self.lo) as usize]
    }

    pub fn position(&self, g: &SymGen) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Class of x_{p,i} ⊗ x_{q,j}: a generator position with its sign, or
    /// `None` when the class is zero.
    pub fn canonical(&self, p: i64, i: usize, q: i64, j: usize) -> Option<(usize, i64)> {
        let (g, s) = if (p, i) <= (q, j) {
            (SymGen { left: (p, i), right: (q, j) }, 1)
        } else {
            (SymGen { left: (q, j), right: (p, i) }, sign(p, q))
        };
        self.position(&g).map(|k| (k, s))
    }
}

/// The reduction ρ_n: (X⊗X)_n → S²_n and the section σ_n with ρ·σ = id.
#[derive(Clone, Debug)]
pub struct SymReduction {
    pub basis: SymBasis,
    pub tensor_basis: TensorBasis,
    rho: Vec<SparseMatrix>,
    sigma: Vec<SparseMatrix>,
    ring: Ring,
}

impl SymReduction {
    pub fn new(x: &FreeComplex, flavor: Flavor) -> Self {
        let basis = SymBasis::new(x, flavor);
        let tb = TensorBasis::new(x, x);
        let ring = x.ring().clone();
        let one = ring.one();
        let minus = -&one;
        let mut rho = Vec::new();
        let mut sigma = Vec::new();
        for n in basis.lo()..=basis.hi() {
            let gens = basis.degree(n);
            let elems = tb.degree(n);
            let mut r = SparseMatrix::zero(&ring, gens.len(), elems.len());
            for (c, &(p, i, q, j)) in elems.iter().enumerate() {
                if let Some((k, s)) = basis.canonical(p, i, q, j) {
                    r.set(k, c, if s == 1 { one.clone() } else { minus.clone() });
                }
            }
            let mut s = SparseMatrix::zero(&ring, elems.len(), gens.len());
            for (k, g) in gens.iter().enumerate() {
                let pos = tb.position(g.left.0, g.left.1, g.right.0, g.right.1).expect("tensor element");
                s.set(pos, k, one.clone());
            }
            rho.push(r);
            sigma.push(s);
        }
        SymReduction { basis, tensor_basis: tb, rho, sigma, ring }
    }

    fn slot(&self, n: i64) -> Option<usize> {
        (n >= self.basis.lo() && n <= self.basis.hi()).then(|| (n - self.basis.lo()) as usize)
    }

    pub fn rho(&self, n: i64) -> SparseMatrix {
        match self.slot(n) {
            Some(k) => self.rho[k].clone(),
            None => SparseMatrix::zero(&self.ring, 0, 0),
        }
    }

    pub fn sigma(&self, n: i64) -> SparseMatrix {
        match self.slot(n) {
            Some(k) => self.sigma[k].clone(),
            None => SparseMatrix::zero(&self.ring, 0, 0),
        }
    }
}

/// S²(X) with the projection X⊗X → S²(X) and the reduction data.
#[derive(Clone, Debug)]
pub struct Sym2 {
    pub complex: FreeComplex,
    pub proj: ChainMap,
    pub reduction: SymReduction,
}

/// α(x ⊗ x′) = x ⊗ x′ − (−1)^{|x||x′|} x′ ⊗ x.
pub fn alpha(x: &FreeComplex) -> Result<ChainMap> {
    let xx = tensor(x, x)?;
    let tb = TensorBasis::new(x, x);
    let ring = x.ring();
    let mut comps = Vec::new();
    if !x.ranks().is_empty() {
        for n in tb.lo()..=tb.hi() {
            let elems = tb.degree(n);
            let mut m = SparseMatrix::zero(ring, elems.len(), elems.len());
            for (c, &(p, i, q, j)) in elems.iter().enumerate() {
                m.add_at(c, c, &ring.one());
                let r = tb.position(q, j, p, i).expect("swapped element");
                m.add_at(r, c, &Scalar::from_int(ring, -sign(p, q)));
            }
            comps.push((n, m));
        }
    }
    ChainMap::new(&xx, &xx, comps)
}

fn gen_degrees(x: &FreeComplex, basis: &SymBasis) -> Option<Vec<Vec<i64>>> {
    x.is_graded().then(|| {
        (basis.lo()..=basis.hi())
            .map(|n| {
                basis.degree(n).iter().map(|g| x.gen_degrees(g.left.0)[g.left.1] + x.gen_degrees(g.right.0)[g.right.1]).collect()
            })
            .collect()
    })
}

/// ρ_{n−1} ∂_n σ_n for every n.
fn reduced_differentials(xx: &FreeComplex, red: &SymReduction, exec: Execution) -> Result<Vec<SparseMatrix>> {
    let (lo, hi) = (red.basis.lo(), red.basis.hi());
    try_map_collect(exec, (lo + 1..=hi).collect(), |n| red.rho(n - 1).matmul(&xx.diff(n))?.matmul(&red.sigma(n)))
}

pub fn sym2(x: &FreeComplex) -> Result<Sym2> {
    sym2_with(x, Execution::default())
}

pub fn sym2_with(x: &FreeComplex, exec: Execution) -> Result<Sym2> {
    let ring = x.ring().clone();
    let red = SymReduction::new(x, Flavor::Strict);
    let xx = crate::complex::tensor_with(x, x, exec)?;
    if x.ranks().is_empty() {
        let zero = FreeComplex::zero(&ring);
        return Ok(Sym2 { proj: ChainMap::zero(&xx, &zero)?, complex: zero, reduction: red });
    }
    let diffs = reduced_differentials(&xx, &red, exec)?;
    let (lo, hi) = (red.basis.lo(), red.basis.hi());
    let ranks = (lo..=hi).map(|n| red.basis.degree(n).len()).collect();
    let complex = FreeComplex::new(&ring, lo, ranks, diffs, gen_degrees(x, &red.basis))?;
    let proj = ChainMap::new(&xx, &complex, (lo..=hi).map(|n| (n, red.rho(n))))?;
    Ok(Sym2 { complex, proj, reduction: red })
}

/// Rank of S²(X)_n from the ranks of X alone.
pub fn sym2_rank_formula(x: &FreeComplex, n: i64) -> usize {
    let r = |m: i64| x.rank(m);
    let mut total = 0;
    let mut m = x.lo().min(n - x.hi());
    while 2 * m < n {
        total += r(m) * r(n - m);
        m += 1;
    }
    if n.rem_euclid(2) == 0 {
        let h = r(n / 2);
        total += if n.rem_euclid(4) == 0 { h * (h + 1) / 2 } else { h * h.saturating_sub(1) / 2 };
    }
    total
}

/// s²(X): equal to S²(X) when 2 is a unit, otherwise a complex of
/// finitely presented modules in which each odd-degree square has order 2.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum WeakSym2 {
    Free(Sym2),
    Presented { complex: PresentedComplex, reduction: SymReduction },
}

pub fn weak_sym2(x: &FreeComplex) -> Result<WeakSym2> {
    let ring = x.ring().clone();
    if ring.two_is_unit() {
        return Ok(WeakSym2::Free(sym2(x)?));
    }
    let red = SymReduction::new(x, Flavor::Weak);
    if x.ranks().is_empty() {
        return Ok(WeakSym2::Presented { complex: PresentedComplex::new(&ring, 0, vec![], vec![], vec![])?, reduction: red });
    }
    let xx = tensor(x, x)?;
    let diffs = reduced_differentials(&xx, &red, Execution::default())?;
    let (lo, hi) = (red.basis.lo(), red.basis.hi());
    let gens: Vec<usize> = (lo..=hi).map(|n| red.basis.degree(n).len()).collect();
    let two = Scalar::from_int(&ring, 2);
    let relations = (lo..=hi)
        .map(|n| {
            let odd: Vec<usize> =
                red.basis.degree(n).iter().enumerate().filter(|(_, g)| g.is_odd_diagonal()).map(|(k, _)| k).collect();
            let cols = if two.is_zero() { 0 } else { odd.len() };
            let mut m = SparseMatrix::zero(&ring, red.basis.degree(n).len(), cols);
            if !two.is_zero() {
                for (c, &k) in odd.iter().enumerate() {
                    m.set(k, c, two.clone());
                }
            }
            m
        })
        .collect();
    let complex = PresentedComplex::new(&ring, lo, gens, relations, diffs)?;
    Ok(WeakSym2::Presented { complex, reduction: red })
}

/// Whether ρ_{n−1}∂_n kills Im(α_n) and the odd-degree squares, so that the
/// induced differential does not depend on the section.
pub fn reduction_is_well_defined(x: &FreeComplex) -> Result<bool> {
    let xx = tensor(x, x)?;
    let a = alpha(x)?;
    let red = SymReduction::new(x, Flavor::Strict);
    if x.ranks().is_empty() {
        return Ok(true);
    }
    for n in red.basis.lo() + 1..=red.basis.hi() {
        let rd = red.rho(n - 1).matmul(&xx.diff(n))?;
        if !rd.matmul(&a.map(n))?.is_zero() {
            return Ok(false);
        }
        for (c, &(p, i, q, j)) in red.tensor_basis.degree(n).iter().enumerate() {
            if (p, i) == (q, j) && p.rem_euclid(2) == 1 && !rd.column(c).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// S²(f)_n = ρ^Y_n (f ⊗ f)_n σ^X_n.
pub fn sym2_map(f: &ChainMap) -> Result<ChainMap> {
    let sx = sym2(f.source())?;
    let sy = sym2(f.target())?;
    let ff = tensor_map(f, f)?;
    let comps = (sx.complex.lo()..=sx.complex.hi())
        .filter(|&n| sx.complex.rank(n) > 0 && sy.complex.rank(n) > 0)
        .map(|n| Ok((n, sy.reduction.rho(n).matmul(&ff.map(n))?.matmul(&sx.reduction.sigma(n))?)))
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(&sx.complex, &sy.complex, comps)
}

fn half(ring: &Ring) -> Result<Scalar> {
    if !ring.two_is_unit() {
        return Err(Error::TwoNotUnit(ring.to_string()));
    }
    Scalar::from_int(ring, 2).inverse()
}

/// The pieces of X⊗X ≅ Im(α) ⊕ S²(X) ≅ Im(α) ⊕ ker(α) when 2 is a unit.
#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    /// ½α, an idempotent endomorphism of X⊗X.
    pub e: ChainMap,
    pub im_alpha: FreeComplex,
    pub ker_alpha: FreeComplex,
    pub sym2: FreeComplex,
    /// Inclusion Im(α) → X⊗X.
    pub iota: ChainMap,
    /// X⊗X → Im(α) induced by α.
    pub q: ChainMap,
    /// Inclusion ker(α) → X⊗X.
    pub j: ChainMap,
    /// X⊗X → S²(X).
    pub p: ChainMap,
    /// (½q, p): X⊗X → Im(α) ⊕ S²(X).
    pub iso: ChainMap,
}

/// Columns b ⊗ b′ ∓ b′ ⊗ b spanning Im(α) (`image`) or ker(α), with the
/// matching left inverse that reads the lex-least coordinate.
/// (degree, columns spanning the piece, left inverse)
type PieceParts = Vec<(i64, SparseMatrix, SparseMatrix)>;

fn alpha_piece(x: &FreeComplex, image: bool) -> Result<(FreeComplex, PieceParts)> {
    let ring = x.ring().clone();
    let weak = SymBasis::new(x, Flavor::Weak);
    let tb = TensorBasis::new(x, x);
    let xx = tensor(x, x)?;
    if x.ranks().is_empty() {
        return Ok((FreeComplex::zero(&ring), Vec::new()));
    }
    let mut parts = Vec::new();
    let mut ranks = Vec::new();
    let mut degrees = Vec::new();
    for n in weak.lo()..=weak.hi() {
        let chosen: Vec<&SymGen> = weak
            .degree(n)
            .iter()
            .filter(|g| !g.is_diagonal() || (g.left.0.rem_euclid(2) == 1) == image)
            .collect();
        let rows = tb.degree(n).len();
        let mut b = SparseMatrix::zero(&ring, rows, chosen.len());
        let mut l = SparseMatrix::zero(&ring, chosen.len(), rows);
        for (k, g) in chosen.iter().enumerate() {
            let ((p, i), (q, j)) = (g.left, g.right);
            let lead = tb.position(p, i, q, j).expect("tensor element");
            b.set(lead, k, ring.one());
            l.set(k, lead, ring.one());
            if !g.is_diagonal() {
                let s = if image { -sign(p, q) } else { sign(p, q) };
                b.set(tb.position(q, j, p, i).expect("tensor element"), k, Scalar::from_int(&ring, s));
            }
        }
        ranks.push(chosen.len());
        if x.is_graded() {
            degrees.push(chosen.iter().map(|g| x.gen_degrees(g.left.0)[g.left.1] + x.gen_degrees(g.right.0)[g.right.1]).collect());
        }
        parts.push((n, b, l));
    }
    let mut diffs = Vec::new();
    for k in 1..parts.len() {
        let n = parts[k].0;
        diffs.push(parts[k - 1].2.matmul(&xx.diff(n))?.matmul(&parts[k].1)?);
    }
    let c = FreeComplex::new(&ring, weak.lo(), ranks, diffs, x.is_graded().then_some(degrees))?;
    Ok((c, parts))
}

pub fn split_decomposition(x: &FreeComplex) -> Result<SplitDecomposition> {
    let ring = x.ring().clone();
    let h = half(&ring)?;
    let xx = tensor(x, x)?;
    let a = alpha(x)?;
    let e = a.scale(&h)?;
    let s = sym2(x)?;
    let (im, im_parts) = alpha_piece(x, true)?;
    let (ker, ker_parts) = alpha_piece(x, false)?;
    let iota = ChainMap::new(&im, &xx, im_parts.iter().map(|(n, b, _)| (*n, b.clone())))?;
    let q = ChainMap::new(
        &xx,
        &im,
        im_parts.iter().map(|(n, _, l)| Ok((*n, l.matmul(&a.map(*n))?))).collect::<Result<Vec<_>>>()?,
    )?;
    let j = ChainMap::new(&ker, &xx, ker_parts.iter().map(|(n, b, _)| (*n, b.clone())))?;
    let target = direct_sum(&im, &s.complex)?;
    let mut comps = Vec::new();
    if let Some((lo, hi)) = xx.support() {
        for n in lo..=hi {
            comps.push((n, q.map(n).scale(&h)?.vstack(&s.proj.map(n))?));
        }
    }
    let iso = ChainMap::new(&xx, &target, comps)?;
    Ok(SplitDecomposition { e, im_alpha: im, ker_alpha: ker, sym2: s.complex, iota, q, j, p: s.proj, iso })
}

/// S²(X ⊕ Y) → S²(X) ⊕ (X ⊗ Y) ⊕ S²(Y), sending the class of
/// (x,y) ⊗ (x′,y′) to (x⊗x′, x⊗y′ + (−1)^{|x′||y|} x′⊗y, y⊗y′).
pub fn sum_decomposition_iso(x: &FreeComplex, y: &FreeComplex) -> Result<ChainMap> {
    let ring = x.ring().clone();
    let z = direct_sum(x, y)?;
    let sz = sym2(&z)?;
    let sx = SymBasis::new(x, Flavor::Strict);
    let sy = SymBasis::new(y, Flavor::Strict);
    let xy_basis = TensorBasis::new(x, y);
    let s2x = sym2(x)?.complex;
    let s2y = sym2(y)?.complex;
    let xy = tensor(x, y)?;
    let target = direct_sum(&s2x, &direct_sum(&xy, &s2y)?)?;
    let side = |p: i64, i: usize| if i < x.rank(p) { (true, i) } else { (false, i - x.rank(p)) };
    let mut comps = Vec::new();
    let Some((lo, hi)) = sz.complex.support() else {
        return ChainMap::zero(&sz.complex, &target);
    };
    for n in lo..=hi {
        let (ox, oxy) = (s2x.rank(n), s2x.rank(n) + xy.rank(n));
        let mut m = SparseMatrix::zero(&ring, target.rank(n), sz.complex.rank(n));
        for (c, g) in sz.reduction.basis.degree(n).iter().enumerate() {
            let ((p, i), (q, j)) = (g.left, g.right);
            let (lx, li) = side(p, i);
            let (rx, rj) = side(q, j);
            let (row, s) = match (lx, rx) {
                (true, true) => match sx.canonical(p, li, q, rj) {
                    Some((k, s)) => (k, s),
                    None => continue,
                },
                (false, false) => match sy.canonical(p, li, q, rj) {
                    Some((k, s)) => (oxy + k, s),
                    None => continue,
                },
                (true, false) => (ox + xy_basis.position(p, li, q, rj).expect("x⊗y element"), 1),
                (false, true) => (ox + xy_basis.position(q, rj, p, li).expect("x⊗y element"), sign(p, q)),
            };
            m.set(row, c, Scalar::from_int(&ring, s));
        }
        comps.push((n, m));
    }
    ChainMap::new(&sz.complex, &target, comps)
}

/// S²(Σ^{2n} X) → Σ^{4n} S²(X): the identity on canonical generators.
pub fn shift_iso(x: &FreeComplex, n: i64) -> Result<ChainMap> {
    let source = sym2(&x.shift(2 * n))?.complex;
    let target = sym2(x)?.complex.shift(4 * n);
    let comps = (source.lo()..=source.hi())
        .filter(|&k| source.rank(k) > 0)
        .map(|k| (k, SparseMatrix::identity(x.ring(), source.rank(k))));
    ChainMap::new(&source, &target, comps)
}

/// (A ⊗ B)(x ⊗ x′) = (−1)^{|B||x|} A(x) ⊗ B(x′) from (X⊗X)_n to (Y⊗Y)_{n+da+db}.
#[allow(clippy::too_many_arguments)]
fn graded_tensor_component(
    src: &TensorBasis,
    tgt: &TensorBasis,
    ring: &Ring,
    a: &dyn Fn(i64) -> SparseMatrix,
    da: i64,
    b: &dyn Fn(i64) -> SparseMatrix,
    db: i64,
    n: i64,
) -> Result<SparseMatrix> {
    let mut m = SparseMatrix::zero(ring, tgt.degree(n + da + db).len(), src.degree(n).len());
    for (c, &(p, i, q, j)) in src.degree(n).iter().enumerate() {
        let (ap, bq) = (a(p), b(q));
        let s = Scalar::from_int(ring, sign(db, p));
        for r in 0..ap.rows() {
            let Some(x) = ap.entry(r, i) else { continue };
            for t in 0..bq.rows() {
                let Some(y) = bq.entry(t, j) else { continue };
                let row = tgt.position(p + da, r, q + db, t).expect("target element");
                m.add_at(row, c, &(&(x * y) * &s));
            }
        }
    }
    Ok(m)
}

/// From a homotopy s between f and g, the homotopy
/// σ = ½(f⊗s + s⊗g + g⊗s + s⊗f) between f⊗f and g⊗g, and its image σ̄
/// between S²(f) and S²(g).
pub fn induced_homotopy(f: &ChainMap, g: &ChainMap, s: &Homotopy) -> Result<(Homotopy, Homotopy)> {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring().clone();
    let h = half(&ring)?;
    if !is_homotopy(s, f, g)? {
        return Err(Error::NotHomotopy("f - g != ds + sd".into()));
    }
    let xx = tensor(x, x)?;
    let yy = tensor(y, y)?;
    let sb = TensorBasis::new(x, x);
    let tb = TensorBasis::new(y, y);
    let (fm, gm, sm) = (|n| f.map(n), |n| g.map(n), |n| s.map(n));
    let mut sigma = Vec::new();
    if let Some((lo, hi)) = xx.support() {
        for n in lo..=hi {
            let mut m = graded_tensor_component(&sb, &tb, &ring, &fm, 0, &sm, 1, n)?;
            for (a, da, b, db) in [(&sm as &dyn Fn(i64) -> SparseMatrix, 1, &gm as &dyn Fn(i64) -> SparseMatrix, 0), (&gm, 0, &sm, 1), (&sm, 1, &fm, 0)] {
                m = m.mat_add(&graded_tensor_component(&sb, &tb, &ring, a, da, b, db, n)?)?;
            }
            sigma.push((n, m.scale(&h)?));
        }
    }
    let sx = sym2(x)?;
    let sy = sym2(y)?;
    let bar = sigma
        .iter()
        .filter(|(n, _)| sx.complex.rank(*n) > 0 && sy.complex.rank(n + 1) > 0)
        .map(|(n, m)| Ok((*n, sy.reduction.rho(n + 1).matmul(m)?.matmul(&sx.reduction.sigma(*n))?)))
        .collect::<Result<Vec<_>>>()?;
    let sigma = Homotopy::new(&xx, &yy, sigma)?;
    let bar = Homotopy::new(&sx.complex, &sy.complex, bar)?;
    Ok((sigma, bar))
}

/// The identification S²(φ∗X) ≅ φ∗S²(X) for a supported base change φ; it is
/// the identity on canonical generators.
pub fn base_change_iso(x: &FreeComplex, target: &Ring) -> Result<ChainMap> {
    let left = sym2(&x.base_change(target)?)?.complex;
    let right = sym2(x)?.complex.base_change(target)?;
    let comps = (left.lo()..=left.hi())
        .filter(|&n| left.rank(n) > 0)
        .map(|n| (n, SparseMatrix::identity(target, left.rank(n))));
    ChainMap::new(&left, &right, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;

    fn kxy() -> FreeComplex {
        let r = Ring::graded(&["x", "y"]).unwrap();
        koszul(&[Scalar::variable(&r, "x").unwrap(), Scalar::variable(&r, "y").unwrap()]).unwrap()
    }

    #[test]
    fn koszul_symmetric_square() {
        let s = sym2(&kxy()).unwrap();
        let c = &s.complex;
        assert_eq!(c.ranks(), [1, 2, 2, 2, 1]);
        assert_eq!(c.diff(4).to_strings(), [["2*y"], ["-2*x"]]);
        assert_eq!(c.diff(3).to_strings(), [["x", "y"], ["x", "y"]]);
        assert_eq!(c.diff(2).to_strings(), [["y", "-y"], ["-x", "x"]]);
        assert_eq!(c.diff(1).to_strings(), [["x", "y"]]);
        assert!(c.is_valid());
        assert!(s.proj.is_chain_map());
    }

    #[test]
    fn alpha_in_degree_two() {
        let a = alpha(&kxy()).unwrap();
        let d: Vec<Vec<String>> = a.map(2).to_strings();
        let want = [
            ["1", "0", "0", "0", "0", "-1"],
            ["0", "2", "0", "0", "0", "0"],
            ["0", "0", "1", "1", "0", "0"],
            ["0", "0", "1", "1", "0", "0"],
            ["0", "0", "0", "0", "2", "0"],
            ["-1", "0", "0", "0", "0", "1"],
        ];
        assert_eq!(d, want);
        assert!(a.map(4).is_zero() && a.map(0).is_zero());
    }

    #[test]
    fn odd_unit_complex() {
        let q = Ring::rationals();
        let sr = FreeComplex::concentrated(&q, 1, 1, None).unwrap();
        assert!(sym2(&sr).unwrap().complex.is_zero());
        assert_eq!(alpha(&sr).unwrap().map(2).to_strings(), [["2"]]);
        let r = FreeComplex::concentrated(&q, 0, 1, None).unwrap();
        assert!(alpha(&r).unwrap().is_zero());
    }

    #[test]
    fn rank_profile_two_three() {
        let z = Ring::integers();
        let x = FreeComplex::new(&z, 0, vec![3, 2], vec![SparseMatrix::zero(&z, 3, 2)], None).unwrap();
        let s = sym2(&x).unwrap().complex;
        assert_eq!(s.ranks(), [6, 6, 1]);
        for n in 0..=2 {
            assert_eq!(s.rank(n), sym2_rank_formula(&x, n));
        }
    }

    #[test]
    fn weak_square_of_odd_unit_has_order_two() {
        let z = Ring::integers();
        let sr = FreeComplex::concentrated(&z, 1, 1, None).unwrap();
        let WeakSym2::Presented { complex, .. } = weak_sym2(&sr).unwrap() else { panic!("expected presentation") };
        assert_eq!(complex.generators(2), 1);
        assert_eq!(complex.relations(2).to_strings(), [["2"]]);
        complex.validate().unwrap();
    }

    #[test]
    fn well_defined_on_koszul() {
        assert!(reduction_is_well_defined(&kxy()).unwrap());
    }

    #[test]
    fn split_pieces() {
        let d = split_decomposition(&kxy()).unwrap();
        assert_eq!(d.im_alpha.ranks(), [0, 2, 4, 2, 0]);
        assert!(d.im_alpha.is_valid() && d.ker_alpha.is_valid());
        for m in [&d.iota, &d.q, &d.j, &d.p, &d.iso, &d.e] {
            assert!(m.is_chain_map());
        }
        let z = Ring::integers();
        assert!(matches!(
            split_decomposition(&FreeComplex::concentrated(&z, 0, 1, None).unwrap()),
            Err(Error::TwoNotUnit(_))
        ));
    }

    #[test]
    fn shift_iso_is_chain_map() {
        let f = shift_iso(&kxy(), 1).unwrap();
        assert!(f.is_chain_map());
        assert_eq!(f.source().lo(), 4);
    }
}
