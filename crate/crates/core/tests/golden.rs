use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use spslab::equivalence::functor_g;
use spslab::fixtures;
use spslab::format::{parse_instance, serialize_instance, serialize_space, serialize_sps};
use spslab::oracle::{enumerate_closure_spaces, random_closure_space};
use spslab::Instance;

/// Closure spaces on n points, frozen from the enumerator and checked
/// against a separate subfamily scan.
const ENUMERATION_COUNTS: [(usize, usize); 4] = [(1, 1), (2, 4), (3, 45), (4, 2271)];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden(name: &str) -> String {
    fs::read_to_string(golden_dir().join(name)).unwrap()
}

fn golden_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("cls" | "sps")))
        .collect();
    files.sort();
    files
}

#[test]
fn golden_files_are_canonical_and_roundtrip() {
    let files = golden_files();
    assert!(files.len() >= 12);
    for path in files {
        let text = fs::read_to_string(&path).unwrap();
        let parsed = parse_instance(&text).unwrap();
        let again = serialize_instance(&parsed);
        assert_eq!(again, text, "{} is not canonical", path.display());
        let reparsed = parse_instance(&again).unwrap();
        match (parsed, reparsed) {
            (Instance::Space(a), Instance::Space(b)) => assert_eq!(a, b),
            (Instance::Sps(a), Instance::Sps(b)) => assert_eq!(a, b),
            _ => panic!("kind changed on {}", path.display()),
        }
    }
}

#[test]
fn fixtures_match_golden_files() {
    for (name, space) in fixtures::named() {
        assert_eq!(
            serialize_space(&space),
            golden(&format!("{name}.cls")),
            "{name}"
        );
        assert_eq!(
            serialize_sps(&functor_g(&space)),
            golden(&format!("{name}.sps")),
            "{name}"
        );
    }
}

#[test]
fn random_space_is_frozen() {
    let space = random_closure_space(6, 0.3, 42).unwrap();
    assert_eq!(serialize_space(&space), golden("random_n6_d0.3_s42.cls"));
    let space = random_closure_space(6, 0.2, 65).unwrap();
    assert_eq!(
        serialize_space(&space),
        golden("quotient_counterexample.cls")
    );
}

fn enumeration_digest(n: usize) -> String {
    let mut hasher = Sha256::new();
    for space in enumerate_closure_spaces(n).unwrap() {
        hasher.update(serialize_space(&space).as_bytes());
    }
    hex::encode(hasher.finalize())
}

#[test]
fn enumeration_counts_and_digests_are_frozen() {
    let frozen: serde_json::Value = serde_json::from_str(&golden("enumeration.json")).unwrap();
    for (n, count) in ENUMERATION_COUNTS {
        assert_eq!(
            enumerate_closure_spaces(n).unwrap().count(),
            count,
            "n = {n}"
        );
        let entry = &frozen[n.to_string()];
        assert_eq!(entry["count"].as_u64(), Some(count as u64));
        assert_eq!(
            entry["sha256"].as_str().unwrap(),
            enumeration_digest(n),
            "enumeration order or content drifted for n = {n}"
        );
    }
}

#[test]
fn enumeration_count_matches_subfamily_scan() {
    // every subfamily of proper nonempty subsets, closed under pairwise ∩
    for (n, count) in ENUMERATION_COUNTS {
        let full = (1u64 << n) - 1;
        let proper: Vec<u64> = (1..full).collect();
        let mut found = 0;
        for m in 0u64..(1 << proper.len()) {
            let mut fam = vec![0, full];
            fam.extend(
                (0..proper.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| proper[i]),
            );
            if fam
                .iter()
                .all(|a| fam.iter().all(|b| fam.contains(&(a & b))))
            {
                found += 1;
            }
        }
        assert_eq!(found, count, "n = {n}");
    }
}
