use std::fs;

use tri_core::complex::Triple;
use tri_core::data::{catalog, connector_torus, CATALOG_FILES};
use tri_core::solve::satisfying_count;
use tri_core::*;

#[test]
fn bundled_catalog_has_exactly_four_supporting_entries() {
    let reports = scan_catalog(&catalog(), DEFAULT_MAX_REMOVAL);
    let supporting: Vec<&str> = reports
        .iter()
        .filter(|r| r.supporting)
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(
        supporting,
        [
            "torus-n08-03",
            "torus-n08-04",
            "torus-n09-14",
            "torus-n09-15"
        ]
    );
    for r in &reports {
        assert_eq!(
            r.supporting,
            r.base_satisfying_count == 2 && !r.removable_sets.is_empty()
        );
    }
}

#[test]
fn every_removable_set_recertifies() {
    for entry in catalog() {
        let report = scan_supportability(&entry, 2);
        for set in &report.removable_sets {
            let t = certify_supporting(&entry.complex, &set.faces).unwrap();
            assert_eq!(t.complex.holes(), &set.cycles[..]);
            assert_eq!(t.fundamental_edges, set.fundamental_edges);
            assert_eq!(Some(&t.witness), report.witness.as_ref());
            assert_eq!(t.is_connector(), set.connector);
        }
    }
}

#[test]
fn removal_never_decreases_the_count() {
    for entry in catalog() {
        let c = &entry.complex;
        let base = satisfying_count(c);
        let n = c.faces().len();
        for i in 0..n {
            for j in i..n {
                if let Ok(p) = remove_faces(c, &[i, j]) {
                    assert!(satisfying_count(&p) >= base, "{} {i} {j}", entry.name);
                }
            }
        }
    }
}

#[test]
fn connector_torus_scan_finds_the_connector_pair() {
    let c = connector_torus();
    let entry = tri_core::catalog::entry_from_complex(
        "fig",
        c.clone(),
        "bundled".into(),
        &LoadOptions::default(),
    )
    .unwrap();
    let report = scan_supportability(&entry, 2);
    assert!(report.supporting);
    let pair = vec![Triple::new(0, 1, 7), Triple::new(3, 5, 6)];
    let set = report
        .removable_sets
        .iter()
        .find(|s| s.cycles == pair)
        .unwrap();
    assert!(set.connector);
    assert!(report.is_connector());
}

#[test]
fn non_unique_base_is_not_searched() {
    let entry = &catalog()[0];
    let r = scan_supportability(entry, 2);
    assert_eq!(r.base_satisfying_count, 0);
    assert_eq!(r.subsets_scanned, 0);
    assert!(!r.supporting);
}

#[test]
fn scan_is_deterministic() {
    let entry = &catalog()[4];
    assert_eq!(scan_supportability(entry, 2), scan_supportability(entry, 2));
    let sets = scan_supportability(entry, 2).removable_sets;
    assert!(sets
        .windows(2)
        .all(|w| (w[0].faces.len(), &w[0].faces) < (w[1].faces.len(), &w[1].faces)));
}

#[test]
fn load_from_directory() {
    let dir = tempdir("load");
    for (name, text) in CATALOG_FILES.iter().rev().take(3) {
        fs::write(dir.join(format!("{name}.tri")), text).unwrap();
    }
    fs::write(dir.join("notes.txt"), "ignored").unwrap();
    let entries = load_catalog(
        &dir,
        &LoadOptions {
            check_minimality: true,
        },
    )
    .unwrap();
    let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names, ["torus-n09-14", "torus-n09-15", "torus-n10-01"]);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn all_bundled_entries_pass_the_minimality_check() {
    assert!(catalog()
        .iter()
        .all(|e| e.complex.every_edge_in_nonfacial_triangle()));
}

#[test]
fn sphere_is_a_genus_mismatch() {
    let dir = tempdir("sphere");
    fs::write(
        dir.join("k4.tri"),
        r#"{"schema": "tri/1", "vertices": 4, "faces": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]}"#,
    )
    .unwrap();
    let err = load_catalog(&dir, &LoadOptions::default()).unwrap_err();
    assert!(matches!(err, CatalogError::GenusMismatch { genus: 0, .. }));
    assert!(err.to_string().contains("k4.tri"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn broken_file_is_named() {
    let dir = tempdir("broken");
    fs::write(dir.join("bad.tri"), "{").unwrap();
    let err = load_catalog(&dir, &LoadOptions::default()).unwrap_err();
    assert!(matches!(err, CatalogError::File { .. }));
    assert!(err.to_string().contains("bad.tri"));
    fs::remove_dir_all(&dir).unwrap();
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("tri-catalog-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}
