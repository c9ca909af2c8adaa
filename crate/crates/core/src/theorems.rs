//! The structural theorems as executable checks.
//!
//! Every condition is computed on its own code path (homology of a cone, a
//! split summand, a minimal model, ...) and never derived from another
//! condition, so the agreement asserted by each theorem is a real test.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complex::{direct_sum, map_add, tensor, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::homology::{
    cone_homology, default_bound, exactness_of, homology_bounded, FpAbelianGroup, HomologyModule, HomologyReport, Inf,
    Verdict,
};
use crate::linalg::graded::{slice, slice_dim};
use crate::linalg::snf::smith_internal;
use crate::linalg::{rank, SparseMatrix};
use crate::minimal::{minimize, single_rank_one_degree};
use crate::scalar::Ring;
use crate::series::rank_series;
use crate::sym2::{alpha, split_decomposition, sym2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assertion {
    /// All conditions agree.
    Equivalent,
    /// Every condition holds.
    AllHold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub label: String,
    pub statement: String,
    pub verdict: Verdict,
    /// Where the condition fails, when it does.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub theorem: String,
    pub ring: String,
    /// Internal-degree bound used for graded homology.
    pub bound: Option<i64>,
    pub assertion: Assertion,
    pub conditions: Vec<Condition>,
    /// Derived quantities worth reporting (e.g. the suspension degree j).
    pub values: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl VerdictReport {
    fn new(theorem: &str, ring: &Ring, bound: Option<i64>, assertion: Assertion) -> Self {
        VerdictReport {
            theorem: theorem.to_string(),
            ring: ring.to_string(),
            bound,
            assertion,
            conditions: Vec::new(),
            values: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, label: &str, statement: &str, verdict: Verdict, witness: Option<String>) {
        let witness = if verdict.holds() { None } else { witness };
        self.conditions.push(Condition { label: label.into(), statement: statement.into(), verdict, witness });
    }

    /// `TTFF`-style summary of the condition vector.
    pub fn vector(&self) -> String {
        self.conditions.iter().map(|c| if c.verdict.holds() { 'T' } else { 'F' }).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.conditions.windows(2).all(|w| w[0].verdict.holds() == w[1].verdict.holds())
    }

    /// The theorem's assertion holds for this input.
    pub fn passed(&self) -> bool {
        match self.assertion {
            Assertion::Equivalent => self.is_constant(),
            Assertion::AllHold => self.conditions.iter().all(|c| c.verdict.holds()),
        }
    }

    /// Some verdict is only known up to the degree bound.
    pub fn is_bounded(&self) -> bool {
        self.conditions.iter().any(|c| matches!(c.verdict, Verdict::HoldsUpToBound(_)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem: {}", self.theorem)?;
        writeln!(f, "ring: {}", self.ring)?;
        match self.bound {
            Some(d) => writeln!(f, "bound: {d}")?,
            None => writeln!(f, "bound: none")?,
        }
        writeln!(f, "conditions: {}", self.vector())?;
        for c in &self.conditions {
            write!(f, "({}) {}: {}", c.label, c.statement, c.verdict)?;
            if let Some(w) = &c.witness {
                write!(f, " [{w}]")?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.values {
            writeln!(f, "{k}: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let verdict = match (self.assertion, self.passed()) {
            (Assertion::Equivalent, true) => "equivalent",
            (Assertion::Equivalent, false) => "NOT equivalent",
            (Assertion::AllHold, true) => "holds",
            (Assertion::AllHold, false) => "fails",
        };
        writeln!(f, "verdict: {verdict}")
    }
}

/// Local ring (or field, or graded-local) in which 2 is invertible.
fn require_hypotheses(ring: &Ring, theorem: &'static str) -> Result<()> {
    if !ring.is_local() {
        return Err(Error::unsupported(theorem, ring));
    }
    if !ring.two_is_unit() {
        return Err(Error::TwoNotUnit(ring.to_string()));
    }
    Ok(())
}

/// The internal-degree bound for a theorem check on X (graded rings only).
fn theorem_bound(x: &FreeComplex, bound: Option<i64>) -> Option<i64> {
    x.is_graded().then(|| bound.unwrap_or_else(|| default_bound(x)))
}

fn quasi_iso(f: &ChainMap, bound: Option<i64>) -> Result<(Verdict, Option<String>)> {
    let h = cone_homology(f, bound)?;
    Ok((exactness_of(&h), h.witness().map(|w| format!("cone: {w}"))))
}

fn acyclic(x: &FreeComplex, bound: Option<i64>) -> Result<(Verdict, Option<String>)> {
    let h = homology_bounded(x, bound)?;
    Ok((exactness_of(&h), h.witness()))
}

fn shape_witness(m: &FreeComplex) -> Option<String> {
    Some(format!("minimal model has rank series {}", rank_series(m)))
}

/// Thm. (i)–(iv): when is X ⊗ X → S²(X) a quasi-isomorphism.
pub fn check_symm07(x: &FreeComplex, bound: Option<i64>) -> Result<VerdictReport> {
    require_hypotheses(x.ring(), "check symm07")?;
    let d = theorem_bound(x, bound);
    let mut r = VerdictReport::new("symm07", x.ring(), d, Assertion::Equivalent);
    let s = sym2(x)?;
    let split = split_decomposition(x)?;
    let (v, w) = quasi_iso(&s.proj, d)?;
    r.push("i", "the projection X⊗X → S²(X) is a quasi-isomorphism", v, w);
    let (v, w) = acyclic(&split.im_alpha, d)?;
    r.push("ii", "Im(α) ≃ 0", v, w);
    let (v, w) = quasi_iso(&split.j, d)?;
    r.push("iii", "the inclusion ker(α) → X⊗X is a quasi-isomorphism", v, w);
    let m = minimize(x)?.complex;
    let ok = m.is_zero() || single_rank_one_degree(&m).is_some_and(|n| n.rem_euclid(2) == 0);
    r.push("iv", "X ≃ 0 or X ≃ Σ^{2n}R", Verdict::from_bool(ok), shape_witness(&m));
    Ok(r)
}

/// Thm. (i)–(vi): when is α a quasi-isomorphism.
pub fn check_symm07pp(x: &FreeComplex, bound: Option<i64>) -> Result<VerdictReport> {
    require_hypotheses(x.ring(), "check symm07pp")?;
    let d = theorem_bound(x, bound);
    let mut r = VerdictReport::new("symm07pp", x.ring(), d, Assertion::Equivalent);
    let split = split_decomposition(x)?;
    let (v, w) = quasi_iso(&alpha(x)?, d)?;
    r.push("i", "α: X⊗X → X⊗X is a quasi-isomorphism", v, w);
    let (v, w) = quasi_iso(&split.q, d)?;
    r.push("ii", "the surjection X⊗X → Im(α) is a quasi-isomorphism", v, w);
    let (v, w) = quasi_iso(&split.iota, d)?;
    r.push("iii", "the injection Im(α) → X⊗X is a quasi-isomorphism", v, w);
    let (v, w) = acyclic(&sym2(x)?.complex, d)?;
    r.push("iv", "S²(X) ≃ 0", v, w);
    let (v, w) = acyclic(&split.ker_alpha, d)?;
    r.push("v", "ker(α) ≃ 0", v, w);
    let m = minimize(x)?.complex;
    let ok = m.is_zero() || single_rank_one_degree(&m).is_some_and(|n| n.rem_euclid(2) == 1);
    r.push("vi", "X ≃ 0 or X ≃ Σ^{2n+1}R", Verdict::from_bool(ok), shape_witness(&m));
    Ok(r)
}

/// Finite projective dimension of X and of S²(X), together with the rank
/// inequality behind the converse direction.
pub fn check_s2fpd01(x: &FreeComplex) -> Result<VerdictReport> {
    require_hypotheses(x.ring(), "check s2fpd01")?;
    let mut r = VerdictReport::new("s2fpd01", x.ring(), None, Assertion::Equivalent);
    let pd = crate::minimal::pd_finite(x)?;
    let show = |l: Option<i64>| l.map_or("zero complex".to_string(), |l| l.to_string());
    r.push("i", "X has finite projective dimension", Verdict::Holds, None);
    r.push("ii", "S²(X) has finite projective dimension", Verdict::Holds, None);
    r.push(
        "iii",
        "rank S²(M)_{p+q} ≥ r_p r_q for p < q in the minimal model M",
        Verdict::from_bool(pd.rank_inequality),
        Some("rank inequality violated".into()),
    );
    r.values.insert("minimal length of X".into(), show(pd.length));
    r.values.insert("minimal length of S²(X)".into(), show(pd.sym2_length));
    r.notes.push("bounded complexes: both minimal models are bounded, so (i) and (ii) hold by construction".into());
    Ok(r)
}

/// Cor.: S²(X) ≃ Σ^j R exactly when X ≃ Σ^{2n}R or X ≃ Σ^{2n+1}R ⊕ Σ^{2m+1}R.
pub fn check_s2fpd02(x: &FreeComplex) -> Result<VerdictReport> {
    require_hypotheses(x.ring(), "check s2fpd02")?;
    let mut r = VerdictReport::new("s2fpd02", x.ring(), None, Assertion::Equivalent);
    let m = minimize(x)?.complex;
    let even_line = single_rank_one_degree(&m).filter(|n| n.rem_euclid(2) == 0);
    let odd_pair: Option<i64> = m.support().and_then(|(a, b)| {
        let odd: Vec<i64> = (a..=b).flat_map(|n| std::iter::repeat_n(n, m.rank(n))).collect();
        (odd.len() == 2 && odd.iter().all(|n| n.rem_euclid(2) == 1)).then(|| odd[0] + odd[1])
    });
    let predicted = even_line.map(|n| 2 * n).or(odd_pair);
    r.push(
        "i",
        "X ≃ Σ^{2n}R or X ≃ Σ^{2n+1}R ⊕ Σ^{2m+1}R",
        Verdict::from_bool(predicted.is_some()),
        shape_witness(&m),
    );
    let n = minimize(&sym2(x)?.complex)?.complex;
    let j = single_rank_one_degree(&n);
    let sw = Some(format!("minimal model of S²(X) has rank series {}", rank_series(&n)));
    r.push("ii", "S²(X) ≃ Σ^j R with j even", Verdict::from_bool(j.is_some_and(|j| j.rem_euclid(2) == 0)), sw.clone());
    r.push("iii", "S²(X) ≃ Σ^j R for some j", Verdict::from_bool(j.is_some()), sw);
    if let Some(j) = j {
        r.values.insert("j".into(), j.to_string());
    }
    if let Some(p) = predicted {
        r.values.insert("predicted j".into(), p.to_string());
        if j != Some(p) {
            r.notes.push(format!("j differs from the value {p} predicted by the shape of X"));
        }
    }
    Ok(r)
}

/// Generators of S²(M) (even) or of M⊗M/⟨x⊗y + y⊗x⟩ (odd) for M = coker(A),
/// as a presentation matrix with the internal degrees of its rows and columns.
fn square_presentation(a: &SparseMatrix, degs: &[i64], col_degs: &[i64], even: bool) -> (SparseMatrix, Vec<i64>, Vec<i64>) {
    let ring = a.ring().clone();
    let g = a.rows();
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).filter(|&(i, j)| even || i < j).collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut rel = SparseMatrix::zero(&ring, pairs.len(), a.cols() * g);
    let mut rel_degs = Vec::new();
    for c in 0..a.cols() {
        for j in 0..g {
            let col = c * g + j;
            rel_degs.push(col_degs.get(c).copied().unwrap_or(0) + degs.get(j).copied().unwrap_or(0));
            // (Σ_i a_ic e_i) · e_j
            for i in 0..g {
                let Some(s) = a.entry(i, c) else { continue };
                if even {
                    rel.add_at(index[&(i.min(j), i.max(j))], col, s);
                } else if i < j {
                    rel.add_at(index[&(i, j)], col, s);
                } else if i > j {
                    rel.add_at(index[&(j, i)], col, &-s);
                }
            }
        }
    }
    let row_degs = pairs.iter().map(|&(i, j)| degs.get(i).copied().unwrap_or(0) + degs.get(j).copied().unwrap_or(0)).collect();
    (rel, row_degs, rel_degs)
}

/// The module presented by `rel`, in the form a homology report uses.
fn presented_module(
    rel: &SparseMatrix,
    row_degs: &[i64],
    col_degs: &[i64],
    bound: Option<i64>,
) -> Result<HomologyModule> {
    let ring = rel.ring();
    if ring.is_graded() {
        let bound = bound.expect("graded reports carry a bound");
        let mut h = BTreeMap::new();
        let lo = row_degs.iter().copied().min().unwrap_or(0);
        for d in lo..=bound {
            let dim = slice_dim(ring.nvars(), row_degs, d) - rank(&slice(rel, row_degs, col_degs, d)?)?;
            if dim > 0 {
                h.insert(d, dim);
            }
        }
        Ok(HomologyModule::Hilbert(h))
    } else if ring.is_field() {
        Ok(HomologyModule::Dimension(rel.rows() - rank(rel)?))
    } else {
        let factors = smith_internal(rel, false)?.1;
        Ok(HomologyModule::Group(FpAbelianGroup::from_factors(rel.rows() - factors.len(), &factors)))
    }
}

/// Prop.: inf S²(X) ≥ 2 inf X, with H_{2i}(S²X) computed from H_i(X).
pub fn check_symm09(x: &FreeComplex, bound: Option<i64>) -> Result<VerdictReport> {
    require_hypotheses(x.ring(), "check symm09")?;
    let d = theorem_bound(x, bound);
    let mut r = VerdictReport::new("symm09", x.ring(), d, Assertion::AllHold);
    let hx = homology_bounded(x, d)?;
    let bounded = |ok: bool| match (ok, d) {
        (true, Some(b)) => Verdict::HoldsUpToBound(b),
        (ok, _) => Verdict::from_bool(ok),
    };
    let Inf::Finite(i) = hx.inf() else {
        for (label, s) in [("a", "inf S²(X) ≥ 2 inf X"), ("a'", "H_{2i}(S²X) from H_i(X)"), ("b", "equality for even inf")] {
            r.push(label, s, bounded(true), None);
        }
        r.notes.push("X ≃ 0: inf X = ∞ and every statement is vacuous".into());
        return Ok(r);
    };
    let s2 = sym2(x)?.complex;
    let hs: HomologyReport = homology_bounded(&s2, d)?;
    let inf_s = hs.inf();
    r.values.insert("inf X".into(), i.to_string());
    r.values.insert("inf S²(X)".into(), inf_s.to_string());
    let ge = match inf_s {
        Inf::Infinite => true,
        Inf::Finite(k) => k >= 2 * i,
    };
    r.push("a", "inf S²(X) ≥ 2 inf X", bounded(ge), Some(format!("inf S²(X) = {inf_s}")));
    // H_i(X) = coker(∂_{i+1}) on the minimal model, whose lowest degree is i
    let m = minimize(x)?.complex;
    if m.support().map(|s| s.0) != Some(i) {
        r.notes.push(format!("minimal model starts in degree {:?}, not at inf X", m.support().map(|s| s.0)));
    }
    let a = m.diff(i + 1);
    let even = i.rem_euclid(2) == 0;
    let (rel, row_degs, col_degs) = square_presentation(&a, m.gen_degrees(i), m.gen_degrees(i + 1), even);
    let expected = presented_module(&rel, &row_degs, &col_degs, d)?;
    let actual = hs.get(2 * i);
    let label = if even { "H_{2i}(S²X) ≅ S²(H_i X)" } else { "H_{2i}(S²X) ≅ H_i X ⊗ H_i X / ⟨x⊗y + y⊗x⟩" };
    r.push("a'", label, bounded(expected == actual), Some(format!("expected {expected:?}, found {actual:?}")));
    let eq = !even || inf_s == Inf::Finite(2 * i);
    r.push("b", "inf S²(X) = 2 inf X when inf X is even", bounded(eq), Some(format!("inf S²(X) = {inf_s}")));
    Ok(r)
}

pub mod corpus {
    //! The worked examples, replayed against stored canonical documents.

    use super::*;
    use crate::complex::{koszul, TensorBasis};
    use crate::homology::{homology, homology_presented, is_quasi_iso};
    use crate::io::{serialize_complex, serialize_map};
    use crate::parallel::{map_collect, Execution};
    use crate::scalar::Scalar;
    use crate::sym2::{sym2_map, weak_sym2, WeakSym2};

    pub const KOSZUL01_K: &str = include_str!("../fixtures/koszul01_k.json");
    pub const KOSZUL01_TENSOR: &str = include_str!("../fixtures/koszul01_tensor.json");
    pub const KOSZUL01_ALPHA: &str = include_str!("../fixtures/koszul01_alpha.json");
    pub const KOSZUL01_S2: &str = include_str!("../fixtures/koszul01_s2.json");
    pub const SYMM03_TENSOR: &str = include_str!("../fixtures/symm03_tensor.json");
    pub const SYMM03_ALPHA: &str = include_str!("../fixtures/symm03_alpha.json");
    pub const SYMM03_S2: &str = include_str!("../fixtures/symm03_s2.json");

    /// Every stored document, by file name.
    pub const DOCUMENTS: [(&str, &str); 7] = [
        ("koszul01_k.json", KOSZUL01_K),
        ("koszul01_tensor.json", KOSZUL01_TENSOR),
        ("koszul01_alpha.json", KOSZUL01_ALPHA),
        ("koszul01_s2.json", KOSZUL01_S2),
        ("symm03_tensor.json", SYMM03_TENSOR),
        ("symm03_alpha.json", SYMM03_ALPHA),
        ("symm03_s2.json", SYMM03_S2),
    ];

    #[derive(Clone, Debug, PartialEq, Eq, Serialize)]
    pub struct FixtureResult {
        pub id: String,
        pub passed: bool,
        pub detail: String,
    }

    type Check = fn() -> Result<(bool, String)>;

    fn graded(vars: &[&str]) -> (Ring, Vec<Scalar>) {
        let r = Ring::graded(vars).expect("valid variables");
        let v = vars.iter().map(|n| Scalar::variable(&r, n).expect("declared")).collect();
        (r, v)
    }

    fn same(label: &str, actual: &str, stored: &str) -> (bool, String) {
        if actual == stored {
            (true, format!("{label}: identical"))
        } else {
            (false, format!("{label}: differs from the stored document"))
        }
    }

    fn all(parts: Vec<(bool, String)>) -> (bool, String) {
        let ok = parts.iter().all(|p| p.0);
        (ok, parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; "))
    }

    /// The permutation taking X⊗Y in decreasing-left-degree block order to
    /// increasing order (the layout used in the rank-one worked example).
    pub fn increasing_order(x: &FreeComplex, y: &FreeComplex, n: i64) -> SparseMatrix {
        let tb = TensorBasis::new(x, y);
        let ours = tb.degree(n);
        let mut theirs = ours.to_vec();
        theirs.sort_by_key(|&(p, i, _, j)| (p, i, j));
        let mut m = SparseMatrix::zero(x.ring(), theirs.len(), ours.len());
        for (k, t) in theirs.iter().enumerate() {
            let c = ours.iter().position(|o| o == t).expect("same basis");
            m.set(k, c, x.ring().one());
        }
        m
    }

    fn koszul01() -> Result<(bool, String)> {
        let (_, v) = graded(&["x", "y"]);
        let k = koszul(&v)?;
        let kk = tensor(&k, &k)?;
        Ok(all(vec![
            same("K", &serialize_complex(&k), KOSZUL01_K),
            same("K⊗K", &serialize_complex(&kk), KOSZUL01_TENSOR),
            same("α", &serialize_map(&alpha(&k)?), KOSZUL01_ALPHA),
            same("S²(K)", &serialize_complex(&sym2(&k)?.complex), KOSZUL01_S2),
        ]))
    }

    fn symm03() -> Result<(bool, String)> {
        let (_, v) = graded(&["x"]);
        let k = koszul(&v)?;
        let kk = tensor(&k, &k)?;
        let (lo, hi) = kk.support().expect("nonzero");
        let p: BTreeMap<i64, SparseMatrix> = (lo..=hi).map(|n| (n, increasing_order(&k, &k, n))).collect();
        let diffs = (lo + 1..=hi)
            .map(|n| p[&(n - 1)].matmul(&kk.diff(n))?.matmul(&p[&n].transpose()))
            .collect::<Result<Vec<_>>>()?;
        let reordered = FreeComplex::new(kk.ring(), lo, kk.ranks().to_vec(), diffs, kk.all_gen_degrees().map(<[_]>::to_vec))?;
        let a = alpha(&k)?;
        let a2 = ChainMap::new(
            &reordered,
            &reordered,
            (lo..=hi).map(|n| Ok((n, p[&n].matmul(&a.map(n))?.matmul(&p[&n].transpose())?))).collect::<Result<Vec<_>>>()?,
        )?;
        let z = Ring::integers();
        let weak = match weak_sym2(&koszul(&[Scalar::from_int(&z, 3)])?)? {
            WeakSym2::Presented { complex, .. } => homology_presented(&complex)?,
            WeakSym2::Free(s) => homology(&s.complex)?,
        };
        let groups_ok = weak.group(0) == Some(FpAbelianGroup::cyclic(3))
            && weak.group(1).is_some_and(|g| g.is_zero())
            && weak.group(2) == Some(FpAbelianGroup::cyclic(2));
        Ok(all(vec![
            same("K⊗K (increasing order)", &serialize_complex(&reordered), SYMM03_TENSOR),
            same("α", &serialize_map(&a2), SYMM03_ALPHA),
            same("S²(K)", &serialize_complex(&sym2(&k)?.complex), SYMM03_S2),
            (groups_ok, format!("H(s²(K(3))) over ZZ: {}", weak.to_string().trim().replace('\n', ", "))),
        ]))
    }

    fn koszul01_homology() -> Result<(bool, String)> {
        let (_, v) = graded(&["x", "y"]);
        let s = sym2(&koszul(&v)?)?.complex;
        let h = homology_bounded(&s, Some(6))?;
        let single = |d: i64| Some(BTreeMap::from([(d, 1usize)]));
        let ok = (h.hilbert(0) == single(0))
            && (h.hilbert(2) == single(2))
            && [1, 3, 4].iter().all(|&n| h.get(n).is_zero());
        Ok((ok, format!("Hilbert tables to degree 6: {}", h.to_string().trim().replace('\n', ", "))))
    }

    fn koszul01_not_qi() -> Result<(bool, String)> {
        let (_, v) = graded(&["x", "y"]);
        let k = koszul(&v)?;
        let s = sym2(&k)?;
        let qi = is_quasi_iso(&s.proj, None)?;
        let h2 = homology(&s.complex)?.get(2);
        Ok((!qi.holds() && !h2.is_zero(), format!("projection quasi-isomorphism: {qi}; H2(S²K) nonzero: {}", !h2.is_zero())))
    }

    fn symm05c() -> Result<(bool, String)> {
        let z = Ring::integers();
        let k = koszul(&[z.one(), z.one()])?;
        let s = sym2(&k)?;
        let h3 = homology(&s.complex)?.group(3);
        let zero = ChainMap::zero(&k, &k)?;
        let zero_qi = is_quasi_iso(&zero, None)?;
        let s_zero_qi = is_quasi_iso(&sym2_map(&zero)?, None)?;
        let ok = h3 == Some(FpAbelianGroup::cyclic(2)) && zero_qi.holds() && !s_zero_qi.holds();
        let h3 = h3.map_or("?".into(), |g| g.to_string());
        Ok((ok, format!("H3 = {h3}; zero map quasi-isomorphism: {zero_qi}; S²(zero) quasi-isomorphism: {s_zero_qi}")))
    }

    fn notadd01() -> Result<(bool, String)> {
        let q = Ring::rationals();
        let r = FreeComplex::concentrated(&q, 0, 1, None)?;
        let sum = direct_sum(&r, &r)?;
        let proj = |k: usize| -> Result<ChainMap> {
            let mut m = SparseMatrix::zero(&q, 2, 2);
            m.set(k, k, q.one());
            ChainMap::new(&sum, &sum, [(0, m)])
        };
        let (f1, f2) = (proj(0)?, proj(1)?);
        let id_ok = map_add(&f1, &f2)? == ChainMap::identity(&sum);
        let s = map_add(&sym2_map(&f1)?, &sym2_map(&f2)?)?;
        let id = ChainMap::identity(s.source());
        Ok((id_ok && s != id, format!("f1 + f2 = id: {id_ok}; S²(f1) + S²(f2) = id: {}", s == id)))
    }

    fn ex0401() -> Result<(bool, String)> {
        // 0 → R^m → R^n → 0 with (m, n) = (2, 3): ranks (binom(m,2), mn, binom(n+1,2))
        let q = Ring::rationals();
        let x = FreeComplex::new(&q, 0, vec![3, 2], vec![SparseMatrix::zero(&q, 3, 2)], None)?;
        let s = sym2(&x)?.complex;
        let got = [s.rank(2), s.rank(1), s.rank(0)];
        Ok((got == [1, 6, 6], format!("ranks in degrees 2, 1, 0: {got:?}")))
    }

    fn symm045() -> Result<(bool, String)> {
        let q = Ring::rationals();
        let sr = FreeComplex::concentrated(&q, 1, 1, None)?;
        let vanishes = sym2(&sr)?.complex.is_zero();
        let z = Ring::integers();
        let sz = FreeComplex::concentrated(&z, 1, 1, None)?;
        let h = match weak_sym2(&sz)? {
            WeakSym2::Presented { complex, .. } => homology_presented(&complex)?,
            WeakSym2::Free(s) => homology(&s.complex)?,
        };
        let ok = vanishes && h.group(2) == Some(FpAbelianGroup::cyclic(2)) && h.modules.iter().all(|(&n, m)| n == 2 || m.is_zero());
        Ok((ok, format!("S²(ΣR) = 0: {vanishes}; H(s²(ΣZ)): {}", h.to_string().trim().replace('\n', ", "))))
    }

    pub const FIXTURES: [(&str, Check); 8] = [
        ("ex0401", ex0401),
        ("koszul01", koszul01),
        ("koszul01'", koszul01_homology),
        ("koszul01''", koszul01_not_qi),
        ("notadd01", notadd01),
        ("symm03", symm03),
        ("symm045", symm045),
        ("symm05c", symm05c),
    ];

    pub fn run_paper_corpus() -> Vec<FixtureResult> {
        run_paper_corpus_with(Execution::default())
    }

    /// Fixtures run independently; results come back ordered by id.
    pub fn run_paper_corpus_with(exec: Execution) -> Vec<FixtureResult> {
        let mut out = map_collect(exec, FIXTURES.to_vec(), |(id, check)| match check() {
            Ok((passed, detail)) => FixtureResult { id: id.to_string(), passed, detail },
            Err(e) => FixtureResult { id: id.to_string(), passed: false, detail: format!("error: {e}") },
        });
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }
}

pub use corpus::{run_paper_corpus, FixtureResult};

/// The curated family {0, R, ΣR, Σ²R, R², ΣR ⊕ Σ³R} over `ring`, plus K(x,y) over
/// QQ[x,y] (which is not defined over the numeric rings).
pub fn curated_family(ring: &Ring) -> Result<Vec<(String, FreeComplex)>> {
    let line = |n: i64, r: usize| FreeComplex::concentrated(ring, n, r, ring.is_graded().then(|| vec![0; r]));
    let mut out = vec![
        ("0".to_string(), FreeComplex::zero(ring)),
        ("R".into(), line(0, 1)?),
        ("ΣR".into(), line(1, 1)?),
        ("Σ²R".into(), line(2, 1)?),
        ("R²".into(), line(0, 2)?),
        ("ΣR⊕Σ³R".into(), direct_sum(&line(1, 1)?, &line(3, 1)?)?),
    ];
    let g = Ring::graded(&["x", "y"])?;
    let v = [crate::scalar::Scalar::variable(&g, "x")?, crate::scalar::Scalar::variable(&g, "y")?];
    out.push(("K(x,y)".into(), crate::complex::koszul(&v)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul;
    use crate::scalar::Scalar;

    fn zloc3() -> Ring {
        Ring::localized(3).unwrap()
    }

    #[test]
    fn symm07_examples() {
        let r = zloc3();
        let s2r = FreeComplex::concentrated(&r, 2, 1, None).unwrap();
        assert_eq!(check_symm07(&s2r, None).unwrap().vector(), "TTTT");
        let sr = FreeComplex::concentrated(&r, 1, 1, None).unwrap();
        assert_eq!(check_symm07(&sr, None).unwrap().vector(), "FFFF");
        let g = Ring::graded(&["x", "y"]).unwrap();
        let k = koszul(&[Scalar::variable(&g, "x").unwrap(), Scalar::variable(&g, "y").unwrap()]).unwrap();
        let rep = check_symm07(&k, None).unwrap();
        assert_eq!(rep.vector(), "FFFF");
        assert!(rep.passed());
    }

    #[test]
    fn symm07pp_examples() {
        let q = Ring::rationals();
        let sr = FreeComplex::concentrated(&q, 1, 1, None).unwrap();
        assert_eq!(check_symm07pp(&sr, None).unwrap().vector(), "TTTTTT");
        let r = FreeComplex::concentrated(&q, 0, 1, None).unwrap();
        assert_eq!(check_symm07pp(&r, None).unwrap().vector(), "FFFFFF");
        let x = direct_sum(&sr, &FreeComplex::concentrated(&q, 3, 1, None).unwrap()).unwrap();
        assert_eq!(check_symm07pp(&x, None).unwrap().vector(), "FFFFFF");
    }

    #[test]
    fn s2fpd02_examples() {
        let q = Ring::rationals();
        let x = direct_sum(&FreeComplex::concentrated(&q, 1, 1, None).unwrap(), &FreeComplex::concentrated(&q, 3, 1, None).unwrap())
            .unwrap();
        let rep = check_s2fpd02(&x).unwrap();
        assert_eq!(rep.vector(), "TTT");
        assert_eq!(rep.values["j"], "4");
        let rep = check_s2fpd02(&FreeComplex::concentrated(&q, 2, 1, None).unwrap()).unwrap();
        assert_eq!(rep.values["j"], "4");
    }

    #[test]
    fn symm09_examples() {
        let g = Ring::graded(&["x", "y"]).unwrap();
        let k = koszul(&[Scalar::variable(&g, "x").unwrap(), Scalar::variable(&g, "y").unwrap()]).unwrap();
        let rep = check_symm09(&k, None).unwrap();
        assert!(rep.passed(), "{rep}");
        let q = Ring::rationals();
        let rep = check_symm09(&FreeComplex::concentrated(&q, 1, 1, None).unwrap(), None).unwrap();
        assert!(rep.passed(), "{rep}");
        let rep = check_symm09(&FreeComplex::concentrated(&q, 2, 1, None).unwrap(), None).unwrap();
        assert_eq!(rep.values["inf S²(X)"], "4");
    }

    #[test]
    fn hypotheses_are_enforced() {
        let z = Ring::integers();
        assert!(check_symm07(&FreeComplex::zero(&z), None).is_err());
        let f2 = Ring::finite_field(2).unwrap();
        assert!(matches!(check_symm07pp(&FreeComplex::zero(&f2), None), Err(Error::TwoNotUnit(_))));
    }

    #[test]
    fn corpus_passes() {
        for r in run_paper_corpus() {
            assert!(r.passed, "{}: {}", r.id, r.detail);
        }
    }
}
