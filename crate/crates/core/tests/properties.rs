use proptest::prelude::*;
use symchain::complex::{compose, direct_sum, is_chain_map, tensor, tensor_with};
use symchain::homology::{default_bound, homology, homology_with, is_quasi_iso};
use symchain::io::{parse_complex, parse_map, serialize_complex, serialize_map};
use symchain::minimal::{is_minimal, minimize, minimize_with, PivotOrder};
use symchain::random::{random_complex, random_map, rng, Shape};
use symchain::series::verify_series_identity;
use symchain::sym2::{alpha, split_decomposition, sum_decomposition_iso, sym2, sym2_rank_formula, sym2_with};
use symchain::{ChainMap, Execution, FreeComplex, Ring, Scalar};

fn backend(k: usize) -> Ring {
    match k % 5 {
        0 => Ring::integers(),
        1 => Ring::rationals(),
        2 => Ring::finite_field(5).unwrap(),
        3 => Ring::localized(3).unwrap(),
        _ => Ring::graded(&["x", "y"]).unwrap(),
    }
}

fn complex(k: usize, seed: u64) -> FreeComplex {
    random_complex(&backend(k), &mut rng(seed), Shape::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sym2_is_a_complex_with_predicted_ranks(k in 0usize..5, seed in any::<u64>()) {
        let x = complex(k, seed);
        let s = sym2(&x).unwrap();
        prop_assert!(s.complex.is_valid());
        prop_assert!(s.proj.is_chain_map());
        for n in 2 * x.lo()..=2 * x.hi() {
            prop_assert_eq!(s.complex.rank(n), sym2_rank_formula(&x, n));
        }
        prop_assert!(verify_series_identity(&x).unwrap().holds());
    }

    #[test]
    fn alpha_squares_to_twice_alpha(k in 0usize..5, seed in any::<u64>()) {
        // α = 1 − τ with τ² = 1
        let x = complex(k, seed);
        let a = alpha(&x).unwrap();
        prop_assert!(a.is_chain_map());
        let two = Scalar::from_int(x.ring(), 2);
        prop_assert_eq!(compose(&a, &a).unwrap(), a.scale(&two).unwrap());
    }

    #[test]
    fn documents_round_trip(k in 0usize..5, seed in any::<u64>()) {
        let x = complex(k, seed);
        let text = serialize_complex(&x);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&back, &x.trimmed());
        prop_assert_eq!(serialize_complex(&back), text);
        let f = random_map(&backend(k), &mut rng(seed ^ 1), Shape::default()).unwrap();
        let text = serialize_map(&f);
        prop_assert_eq!(serialize_map(&parse_map(&text).unwrap()), text);
    }

    #[test]
    fn execution_modes_agree(k in 0usize..5, seed in any::<u64>()) {
        let x = complex(k, seed);
        prop_assert_eq!(
            tensor_with(&x, &x, Execution::Sequential).unwrap(),
            tensor_with(&x, &x, Execution::Parallel).unwrap()
        );
        prop_assert_eq!(
            sym2_with(&x, Execution::Sequential).unwrap().complex,
            sym2_with(&x, Execution::Parallel).unwrap().complex
        );
        prop_assert_eq!(
            homology_with(&x, None, Execution::Sequential).unwrap(),
            homology_with(&x, None, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn minimal_models(k in 1usize..5, seed in any::<u64>()) {
        let x = complex(k, seed);
        let m = minimize(&x).unwrap();
        prop_assert!(is_minimal(&m.complex).unwrap());
        prop_assert!(is_chain_map(&m.q) && is_chain_map(&m.iota));
        prop_assert_eq!(compose(&m.q, &m.iota).unwrap(), ChainMap::identity(&m.complex));
        prop_assert!(is_quasi_iso(&m.q, None).unwrap().holds());
        // same ranks whichever pivots are taken first
        let r = minimize_with(&x, PivotOrder::Reverse).unwrap().complex;
        prop_assert_eq!(r.ranks(), m.complex.ranks());
        prop_assert_eq!(r.lo(), m.complex.lo());
    }

    #[test]
    fn sym2_of_a_sum(k in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (x, y) = (complex(k, s1), complex(k, s2));
        let f = sum_decomposition_iso(&x, &y).unwrap();
        prop_assert!(f.is_chain_map());
        let z = direct_sum(&x, &y).unwrap();
        let xy = tensor(&x, &y).unwrap();
        for n in f.source().lo()..=f.source().hi() {
            let parts = sym2(&x).unwrap().complex.rank(n) + xy.rank(n) + sym2(&y).unwrap().complex.rank(n);
            prop_assert_eq!(sym2(&z).unwrap().complex.rank(n), parts);
        }
    }

    #[test]
    fn split_decomposition_pieces(k in 1usize..5, seed in any::<u64>()) {
        let x = complex(k, seed);
        let d = split_decomposition(&x).unwrap();
        for f in [&d.iota, &d.q, &d.j, &d.p, &d.iso] {
            prop_assert!(f.is_chain_map());
        }
        // α acts as 2 on its image
        let two = Scalar::from_int(x.ring(), 2);
        prop_assert_eq!(compose(&d.q, &d.iota).unwrap(), ChainMap::identity(&d.im_alpha).scale(&two).unwrap());
        // bounded by D(X), as the theorem checks do; D(X⊗X) would be far larger
        let bound = x.is_graded().then(|| default_bound(&x));
        prop_assert!(is_quasi_iso(&d.iso, bound).unwrap().holds());
    }

    #[test]
    fn universal_coefficients(seed in any::<u64>()) {
        // free rank over ZZ is the QQ dimension; GF(3) sees the 3-torsion twice
        let z = Ring::integers();
        let x = random_complex(&z, &mut rng(seed), Shape::default()).unwrap();
        let hz = homology(&x).unwrap();
        let hq = homology(&x.base_change(&Ring::rationals()).unwrap()).unwrap();
        let h3 = homology(&x.base_change(&Ring::finite_field(3).unwrap()).unwrap()).unwrap();
        let three = |n: i64| hz.group(n).map_or(0, |g| g.torsion.iter().filter(|d| *d % 3u32 == 0u32.into()).count());
        for n in x.lo()..=x.hi() {
            let free = hz.group(n).unwrap().free_rank;
            prop_assert_eq!(hq.dimension(n), Some(free));
            prop_assert_eq!(h3.dimension(n), Some(free + three(n) + three(n - 1)));
        }
    }
}
