//! Seeded generators of random complexes, chain maps and homotopies.
//!
//! Complexes are direct sums of small pieces (free modules, 0 → R → R → 0,
//! two-element Koszul complexes) conjugated degreewise by random unitriangular
//! changes of basis, so d² = 0 holds by construction while the matrices look
//! generic. Maps are built on top of a shared base complex.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{compose, direct_sum, koszul, map_add, map_sub, ChainMap, FreeComplex, Homotopy};
use crate::error::Result;
use crate::linalg::graded::monomials;
use crate::linalg::SparseMatrix;
use crate::scalar::{Poly, Ring, RingKind, Scalar};

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random element; for graded rings a homogeneous polynomial of degree `d`.
pub fn element(ring: &Ring, rng: &mut Rand, d: i64) -> Scalar {
    if ring.is_graded() {
        let terms: Vec<_> = monomials(ring.nvars(), d)
            .into_iter()
            .filter_map(|m| {
                let c = rng.gen_range(-2i64..=2);
                (c != 0).then(|| (m, BigRational::from_integer(BigInt::from(c))))
            })
            .collect();
        return Scalar::from_poly(ring, Poly::from_terms(terms)).expect("homogeneous");
    }
    match ring.kind() {
        RingKind::Rationals | RingKind::Local(_) if rng.gen_bool(0.25) => {
            let den = [2i64, 4, 5, 7][rng.gen_range(0..4)];
            Scalar::from_fraction(ring, rng.gen_range(-4..=4), den).unwrap_or_else(|_| ring.one())
        }
        _ => Scalar::from_int(ring, rng.gen_range(-3..=3)),
    }
}

/// A random nonzero element of the maximal ideal (zero for fields), of degree `d` if graded.
pub fn nonunit(ring: &Ring, rng: &mut Rand, d: i64) -> Scalar {
    match ring.kind() {
        RingKind::Local(p) => {
            let k = [1i64, -1, 2, -2, 3][rng.gen_range(0..5)];
            Scalar::from_int(ring, k * p as i64)
        }
        RingKind::Graded(_) => loop {
            let e = element(ring, rng, d.max(1));
            if !e.is_zero() {
                return e;
            }
        },
        RingKind::Integers => Scalar::from_int(ring, [0i64, 2, -2, 3, 6][rng.gen_range(0..5)]),
        _ => ring.zero(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Maximal rank of any module.
    pub max_rank: usize,
    /// Maximal number of degrees in the support.
    pub max_length: usize,
    /// Keep every differential entry in the maximal ideal.
    pub minimal: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_rank: 3, max_length: 4, minimal: false }
    }
}

enum Piece {
    Free { n: i64, g: i64 },
    Arrow { n: i64, g: i64, a: Scalar },
    Koszul { n: i64, g: i64, a: Scalar, b: Scalar },
}

impl Piece {
    /// (degree, count) of the generators this piece adds.
    fn footprint(&self) -> Vec<(i64, usize)> {
        match self {
            Piece::Free { n, .. } => vec![(*n, 1)],
            Piece::Arrow { n, .. } => vec![(*n, 1), (n + 1, 1)],
            Piece::Koszul { n, .. } => vec![(*n, 1), (n + 1, 2), (n + 2, 1)],
        }
    }

    fn complex(&self, ring: &Ring) -> Result<FreeComplex> {
        let with_twist = |k: FreeComplex, n: i64, g: i64| -> Result<FreeComplex> {
            let degrees = k.all_gen_degrees().map(|gs| gs.iter().map(|v| v.iter().map(|d| d + g).collect()).collect());
            Ok(FreeComplex::new(ring, k.lo(), k.ranks().to_vec(), k.differentials().to_vec(), degrees)?.shift(n))
        };
        match self {
            Piece::Free { n, g } => FreeComplex::concentrated(ring, *n, 1, ring.is_graded().then(|| vec![*g])),
            Piece::Arrow { n, g, a } => with_twist(koszul(std::slice::from_ref(a))?, *n, *g),
            Piece::Koszul { n, g, a, b } => with_twist(koszul(&[a.clone(), b.clone()])?, *n, *g),
        }
    }
}

fn random_pieces(ring: &Ring, rng: &mut Rand, lo: i64, shape: Shape) -> Vec<Piece> {
    let len = rng.gen_range(1..=shape.max_length.max(1)) as i64;
    let mut used = vec![0usize; len as usize];
    let mut pieces = Vec::new();
    let graded = ring.is_graded();
    let attempts = rng.gen_range(1..=2 * shape.max_rank.max(1) * len as usize);
    for _ in 0..attempts {
        let n = lo + rng.gen_range(0..len);
        let g = if graded { rng.gen_range(0..=1) } else { 0 };
        let kind = rng.gen_range(0..6);
        let piece = if kind < 2 || len == 1 {
            Piece::Free { n, g }
        } else if kind < 5 || len == 2 {
            let a = if graded {
                // occasionally a constant, i.e. a unit pivot
                if !shape.minimal && rng.gen_bool(0.2) {
                    element(ring, rng, 0)
                } else {
                    let e = rng.gen_range(1..=2);
                    nonunit(ring, rng, e)
                }
            } else if shape.minimal {
                nonunit(ring, rng, 0)
            } else {
                element(ring, rng, 0)
            };
            Piece::Arrow { n, g, a }
        } else {
            let (a, b) = if shape.minimal || graded {
                (nonunit(ring, rng, 1), nonunit(ring, rng, 1))
            } else {
                (element(ring, rng, 0), element(ring, rng, 0))
            };
            Piece::Koszul { n, g, a, b }
        };
        let fits = piece.footprint().iter().all(|&(m, c)| {
            let k = (m - lo) as usize;
            m - lo < len && used[k] + c <= shape.max_rank
        });
        if fits {
            for (m, c) in piece.footprint() {
                used[(m - lo) as usize] += c;
            }
            pieces.push(piece);
        }
    }
    pieces
}

/// Direct sum of random pieces, before any change of basis.
pub fn random_split_complex(ring: &Ring, rng: &mut Rand, shape: Shape) -> Result<FreeComplex> {
    let lo = rng.gen_range(-1..=2);
    let mut x = FreeComplex::zero(ring);
    for p in random_pieces(ring, rng, lo, shape) {
        x = direct_sum(&x, &p.complex(ring)?)?;
    }
    Ok(x)
}

/// A random automorphism of the free module with the given generator
/// degrees: a permuted unitriangular matrix, returned with its inverse.
fn automorphism(ring: &Ring, rng: &mut Rand, degs: &[i64]) -> Result<(SparseMatrix, SparseMatrix)> {
    let r = degs.len();
    let mut order: Vec<usize> = (0..r).collect();
    order.shuffle(rng);
    // unitriangular in an order with nondecreasing internal degree
    order.sort_by_key(|&k| degs[k]);
    let mut n = SparseMatrix::zero(ring, r, r);
    for a in 0..r {
        for b in a + 1..r {
            let (i, j) = (order[a], order[b]);
            let d = degs[j] - degs[i];
            if rng.gen_bool(0.5) && (ring.is_graded() || d == 0) && d >= 0 {
                n.set(i, j, element(ring, rng, d));
            }
        }
    }
    let id = SparseMatrix::identity(ring, r);
    let u = id.mat_add(&n)?;
    // (I + N)⁻¹ = Σ (−N)^k, N nilpotent
    let mut inv = id.clone();
    let mut power = id;
    let minus_n = n.neg();
    for _ in 1..r {
        power = power.matmul(&minus_n)?;
        if power.is_zero() {
            break;
        }
        inv = inv.mat_add(&power)?;
    }
    Ok((u, inv))
}

/// X with ∂′_n = P_{n−1} ∂_n P_n⁻¹, together with the isomorphism P: X → X′.
pub fn conjugate(x: &FreeComplex, rng: &mut Rand) -> Result<(FreeComplex, ChainMap, ChainMap)> {
    let ring = x.ring().clone();
    let Some((lo, hi)) = x.support() else {
        return Ok((x.clone(), ChainMap::identity(x), ChainMap::identity(x)));
    };
    let mut p = Vec::new();
    for n in lo..=hi {
        let degs: Vec<i64> = if x.is_graded() { x.gen_degrees(n).to_vec() } else { vec![0; x.rank(n)] };
        p.push(automorphism(&ring, rng, &degs)?);
    }
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let k = (n - lo) as usize;
            p[k - 1].0.matmul(&x.diff(n))?.matmul(&p[k].1)
        })
        .collect::<Result<Vec<_>>>()?;
    let y = FreeComplex::new(&ring, lo, x.ranks().to_vec(), diffs, x.all_gen_degrees().map(<[_]>::to_vec))?;
    let fwd = ChainMap::new(x, &y, (lo..=hi).map(|n| (n, p[(n - lo) as usize].0.clone())))?;
    let back = ChainMap::new(&y, x, (lo..=hi).map(|n| (n, p[(n - lo) as usize].1.clone())))?;
    Ok((y, fwd, back))
}

pub fn random_complex(ring: &Ring, rng: &mut Rand, shape: Shape) -> Result<FreeComplex> {
    let x = random_split_complex(ring, rng, shape)?;
    Ok(conjugate(&x, rng)?.0)
}

/// Random homogeneous maps s_n: X_n → Y_{n+deg}.
fn random_components(x: &FreeComplex, y: &FreeComplex, deg: i64, rng: &mut Rand) -> Vec<(i64, SparseMatrix)> {
    let ring = x.ring();
    let Some((lo, hi)) = x.support() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for n in lo..=hi {
        let (r, c) = (y.rank(n + deg), x.rank(n));
        if r == 0 || c == 0 {
            continue;
        }
        let mut m = SparseMatrix::zero(ring, r, c);
        for i in 0..r {
            for j in 0..c {
                if !rng.gen_bool(0.6) {
                    continue;
                }
                let d = if x.is_graded() { x.gen_degrees(n)[j] - y.gen_degrees(n + deg)[i] } else { 0 };
                if d >= 0 {
                    m.set(i, j, element(ring, rng, d));
                }
            }
        }
        out.push((n, m));
    }
    out
}

pub fn random_homotopy(x: &FreeComplex, y: &FreeComplex, rng: &mut Rand) -> Result<Homotopy> {
    Homotopy::new(x, y, random_components(x, y, 1, rng))
}

/// A random chain map that factors through the shared summand `base`:
/// X = P(base ⊕ E) → base → Q(base ⊕ E′) = Y, scaled, plus ∂h + h∂.
fn through_base(
    x: &(FreeComplex, ChainMap),
    y: &(FreeComplex, ChainMap),
    base: &FreeComplex,
    rng: &mut Rand,
) -> Result<ChainMap> {
    let ring = base.ring().clone();
    let (xs, x_back) = x;
    let (ys, y_fwd) = y;
    let proj = summand_projection(x_back.target(), base)?;
    let incl = summand_inclusion(base, y_fwd.source())?;
    let c = element(&ring, rng, 0);
    let core = compose(y_fwd, &compose(&incl, &compose(&proj, x_back)?)?)?.scale(&c)?;
    let h = random_homotopy(xs, ys, rng)?;
    map_add(&core, &h.boundary()?)
}

/// Projection base ⊕ E → base onto the leading generators in each degree.
fn summand_projection(sum: &FreeComplex, base: &FreeComplex) -> Result<ChainMap> {
    let comps = base
        .support()
        .map(|(lo, hi)| {
            (lo..=hi)
                .map(|n| {
                    let rows: Vec<usize> = (0..base.rank(n)).collect();
                    let cols: Vec<usize> = (0..sum.rank(n)).collect();
                    (n, SparseMatrix::identity(base.ring(), sum.rank(n)).submatrix(&rows, &cols))
                })
                .collect::<Vec<_>>()
        })
        .unwrap_or_default();
    ChainMap::new(sum, base, comps)
}

fn summand_inclusion(base: &FreeComplex, sum: &FreeComplex) -> Result<ChainMap> {
    let p = summand_projection(sum, base)?;
    ChainMap::new(base, sum, p.components().map(|(n, m)| (n, m.transpose())).collect::<Vec<_>>())
}

/// `count` composable random maps X₀ → X₁ → … → X_count over a common base.
pub fn random_maps(ring: &Ring, rng: &mut Rand, shape: Shape, count: usize) -> Result<Vec<ChainMap>> {
    let base = random_split_complex(ring, rng, shape)?;
    let small = Shape { max_rank: 1, max_length: shape.max_length, minimal: shape.minimal };
    let mut objects = Vec::new();
    for _ in 0..=count {
        let extra = if rng.gen_bool(0.5) { random_split_complex(ring, rng, small)? } else { FreeComplex::zero(ring) };
        let sum = direct_sum(&base, &extra)?;
        let (c, fwd, back) = conjugate(&sum, rng)?;
        objects.push((c, fwd, back));
    }
    let mut maps = Vec::new();
    for k in 0..count {
        let x = (objects[k].0.clone(), objects[k].2.clone());
        let y = (objects[k + 1].0.clone(), objects[k + 1].1.clone());
        maps.push(through_base(&x, &y, &base, rng)?);
    }
    Ok(maps)
}

pub fn random_map(ring: &Ring, rng: &mut Rand, shape: Shape) -> Result<ChainMap> {
    Ok(random_maps(ring, rng, shape, 1)?.remove(0))
}

/// (f, g, s) with f − g = ∂s + s∂.
pub fn random_homotopic_pair(ring: &Ring, rng: &mut Rand, shape: Shape) -> Result<(ChainMap, ChainMap, Homotopy)> {
    let f = random_map(ring, rng, shape)?;
    let s = random_homotopy(f.source(), f.target(), rng)?;
    let g = map_sub(&f, &s.boundary()?)?;
    Ok((f, g, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_homotopy;
    use crate::minimal::is_minimal;

    fn rings() -> Vec<Ring> {
        vec![
            Ring::integers(),
            Ring::rationals(),
            Ring::finite_field(5).unwrap(),
            Ring::localized(3).unwrap(),
            Ring::graded(&["x", "y"]).unwrap(),
        ]
    }

    #[test]
    fn complexes_are_valid_and_bounded() {
        let mut r = rng(1);
        for ring in rings() {
            for _ in 0..30 {
                let shape = Shape { max_rank: 4, max_length: 5, minimal: false };
                let x = random_complex(&ring, &mut r, shape).unwrap();
                assert!(x.is_valid(), "{ring}: {x:?}");
                assert!(x.ranks().iter().all(|&k| k <= 4));
                assert!(x.ranks().len() <= 5);
            }
        }
    }

    #[test]
    fn minimal_shapes_are_minimal() {
        let mut r = rng(2);
        for ring in [Ring::localized(3).unwrap(), Ring::graded(&["x", "y"]).unwrap()] {
            for _ in 0..20 {
                let x = random_complex(&ring, &mut r, Shape { minimal: true, ..Shape::default() }).unwrap();
                assert!(is_minimal(&x).unwrap());
            }
        }
    }

    #[test]
    fn maps_and_homotopies() {
        let mut r = rng(3);
        for ring in rings() {
            for _ in 0..10 {
                let fs = random_maps(&ring, &mut r, Shape::default(), 2).unwrap();
                assert!(fs.iter().all(|f| f.is_chain_map() && f.is_homogeneous()));
                let (f, g, s) = random_homotopic_pair(&ring, &mut r, Shape::default()).unwrap();
                assert!(g.is_chain_map());
                assert!(is_homotopy(&s, &f, &g).unwrap());
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let ring = Ring::localized(3).unwrap();
        let a = random_complex(&ring, &mut rng(9), Shape::default()).unwrap();
        let b = random_complex(&ring, &mut rng(9), Shape::default()).unwrap();
        assert_eq!(a, b);
    }
}
