use symchain::io::{parse_document, serialize_complex, serialize_map, Document};
use symchain::parallel::Execution;
use symchain::theorems::corpus::{run_paper_corpus_with, DOCUMENTS};
use symchain::theorems::{check_s2fpd01, check_s2fpd02, check_symm07, check_symm09, curated_family};
use symchain::homology::Verdict;
use symchain::{FreeComplex, Ring};

#[test]
fn stored_documents_are_canonical() {
    for (name, text) in DOCUMENTS {
        let again = match parse_document(text).unwrap_or_else(|e| panic!("{name}: {e}")) {
            Document::Complex(x) => serialize_complex(&x),
            Document::Map(f) => serialize_map(&f),
        };
        assert_eq!(again, text, "{name}");
    }
}

#[test]
fn corpus_is_deterministic_across_modes() {
    let seq = run_paper_corpus_with(Execution::Sequential);
    let par = run_paper_corpus_with(Execution::Parallel);
    assert_eq!(seq, par);
    let ids: Vec<&str> = seq.iter().map(|r| r.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(seq.iter().all(|r| r.passed), "{seq:#?}");
}

#[test]
fn curated_family_over_a_field() {
    let q = Ring::rationals();
    for (name, x) in curated_family(&q).unwrap() {
        let r = check_symm07(&x, None).unwrap();
        assert!(r.passed(), "{name}: {r}");
        let r = check_s2fpd02(&x).unwrap();
        assert!(r.passed(), "{name}: {r}");
        let r = check_s2fpd01(&x).unwrap();
        assert!(r.passed(), "{name}: {r}");
    }
}

#[test]
fn graded_verdicts_are_bounded() {
    let g = Ring::graded(&["x"]).unwrap();
    let x = FreeComplex::concentrated(&g, 2, 1, Some(vec![0])).unwrap();
    let r = check_symm07(&x, Some(5)).unwrap();
    assert_eq!(r.vector(), "TTTT");
    assert!(r.conditions[..3].iter().all(|c| c.verdict == Verdict::HoldsUpToBound(5)));
    assert!(r.to_string().contains("true-up-to-bound-5"));
    let r = check_symm09(&x, Some(5)).unwrap();
    assert!(r.passed() && r.is_bounded());
}

#[test]
fn report_json_shape() {
    let q = Ring::rationals();
    let r = check_symm07(&FreeComplex::concentrated(&q, 1, 1, None).unwrap(), None).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["theorem"], "symm07");
    assert_eq!(v["assertion"], "equivalent");
    assert_eq!(v["conditions"][0]["verdict"], "false");
    assert!(v["conditions"][3]["witness"].as_str().unwrap().contains("rank series t"));
}
