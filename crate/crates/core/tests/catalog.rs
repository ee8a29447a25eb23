use arrfree_core::arrangement::{parse_arrangement, write_arrangement};
use arrfree_core::catalog::{catalog, expectations, ENTRIES};
use arrfree_core::{classify, Verdict};

#[test]
fn expected_classifications() {
    for (name, want) in expectations() {
        let r = classify(&catalog(name).unwrap()).unwrap();
        assert_eq!(r.verdict.as_str(), want.verdict, "{name}");
        if r.verdict != Verdict::NeitherAtBound {
            assert_eq!(r.exponents().unwrap(), want.exponents, "{name}");
        }
        assert_eq!(r.level(), want.level, "{name}");
    }
}

#[test]
#[ignore = "about 20 s in release"]
fn shi_b3_is_free() {
    let r = classify(&catalog("shi-b:3").unwrap()).unwrap();
    assert_eq!(r.exponents(), Some(vec![1, 6, 6, 6]));
}

#[test]
fn files_round_trip() {
    for e in ENTRIES {
        let a = catalog(e.name).unwrap();
        let text = write_arrangement(&a, None);
        let back = parse_arrangement(&text).unwrap();
        assert_eq!(back.arrangement, a, "{}", e.name);
        assert_eq!(write_arrangement(&back.arrangement, None), text);
    }
}

#[test]
fn shi_sizes() {
    for (l, size) in [(1, 3), (2, 9), (3, 19)] {
        let a = catalog(&format!("shi-b:{l}")).unwrap();
        assert_eq!((a.len(), a.nvars()), (size, l + 1));
    }
    assert!(catalog("shi-b:4").is_err());
}
