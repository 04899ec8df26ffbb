mod common;

use clusteralg::catalog::{
    self, catalog_dir, export, generate, list, load, load_from, random_form, random_matrix,
    random_rational, random_tensor2, rng, shipped, EXTRA, MANDATORY,
};
use clusteralg::cluster::{check_axioms, identities, project, projections};
use clusteralg::linalg::int;
use clusteralg::{Bundle, Error, Level, Parity};
use std::path::PathBuf;

fn scratch(tag: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("clusteralg-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&p);
    std::fs::create_dir_all(&p).unwrap();
    p
}

#[test]
fn shipped_files_equal_the_generators() {
    let names = list(&catalog_dir()).unwrap();
    for name in shipped() {
        assert!(names.iter().any(|n| n == name), "{name} missing from data/catalog");
        let loaded = load(name).unwrap();
        let generated = generate(name).unwrap();
        assert_eq!(loaded.bundle, generated.bundle, "{name}");
        assert_eq!(loaded.provenance, generated.provenance);
        assert!(!loaded.oracle.is_empty());
    }
    assert_eq!(MANDATORY.len(), 10);
    assert_eq!(shipped().count(), MANDATORY.len() + EXTRA.len());
}

#[test]
fn export_reproduces_the_files_byte_for_byte() {
    let dir = scratch("export");
    export(&dir).unwrap();
    for name in shipped() {
        let want = std::fs::read_to_string(catalog_dir().join(format!("{name}.json"))).unwrap();
        let got = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(got, want, "{name}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mandatory_entries_pass_their_checks() {
    for name in MANDATORY {
        let e = generate(name).unwrap();
        assert!(e.bundle.verify_all().unwrap().is_empty(), "{name}");
        let a = e.algebra().unwrap();
        assert!(check_axioms(a).is_ok(), "{name}");
        if e.is_map() {
            assert_eq!(e.map().unwrap().matrix().rows(), a.dim());
        }
    }
}

#[test]
fn bundles_roundtrip_through_text() {
    for name in shipped() {
        let b = generate(name).unwrap().bundle;
        let text = b.to_json_string();
        let back = Bundle::parse(&text).unwrap();
        assert_eq!(back, b, "{name}");
        assert_eq!(back.to_json_string(), text);
    }
}

#[test]
fn corrupted_bundle_fails_with_an_identity_id() {
    let text = std::fs::read_to_string(catalog_dir().join("trunc3.json")).unwrap();
    // x·1 = 2x, so (x·1)·x = 2x² ≠ x·(1·x)
    let bad = text.replacen("[\"star\",1,0,1,\"1\"]", "[\"star\",1,0,1,\"2\"]", 1);
    assert_ne!(bad, text);
    let dir = scratch("corrupt");
    std::fs::write(dir.join("trunc3.json"), &bad).unwrap();
    match load_from(&dir, "trunc3") {
        Err(Error::PostVerification(rep)) => {
            assert!(!rep.is_ok());
            let assoc = &identities(Level::Assoc)[0].id;
            assert!(rep.failed_ids().iter().all(|id| id == assoc), "{:?}", rep.failed_ids());
        }
        other => panic!("expected a verification failure, got {other:?}"),
    }
    // a corrupted map entry breaks the claimed Rota-Baxter identity
    let text = std::fs::read_to_string(catalog_dir().join("int3.json")).unwrap();
    let bad = text.replacen("[2,1,\"1/2\"]", "[2,1,\"1\"]", 1);
    std::fs::write(dir.join("int3.json"), &bad).unwrap();
    match load_from(&dir, "int3") {
        Err(Error::PostVerification(rep)) => assert!(rep.failed_ids().iter().all(|id| id.starts_with("2.1"))),
        other => panic!("expected a verification failure, got {other:?}"),
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_bundles_are_parse_errors() {
    let good = generate("nil2").unwrap().bundle.to_json_string();
    let cases = [
        good.replacen("\"Q\"", "\"R\"", 1),
        good.replacen("\"1\"]", "\"1/0\"]", 1),
        good.replacen("\"star\",0,0", "\"succ\",0,0", 1),
        good.replacen("\"star\",0,0,0", "\"star\",0,0,7", 1),
        good.replacen("\"dim\": 2", "\"dim\": 2, \"colour\": 1", 1),
        "{".to_string(),
    ];
    for (k, text) in cases.iter().enumerate() {
        assert_ne!(text, &good, "case {k} did not change the text");
        assert!(Bundle::parse(text).is_err(), "case {k}");
    }
}

#[test]
fn claims_in_tensor_and_form_records_are_checked() {
    let nil2 = generate("nil2").unwrap().bundle.to_json_string();
    let with = |extra: &str| nil2.replacen("\"tensors\": {}", extra, 1);
    // e0⊗e1 − e1⊗e0 is skew but does not solve the AYBE on nil2
    let skew = with(
        "\"tensors\": {\"r\": {\"dim\": 2, \"algebra\": \"nil2\", \"parity\": \"skew\", \"solves\": true, \
         \"entries\": [[0,1,\"1\"],[1,0,\"-1\"]]}}",
    );
    let b = Bundle::parse(&skew).unwrap();
    let rep = b.check("r").unwrap();
    assert!(rep.failed_ids().iter().all(|id| id.starts_with("2.2")), "{:?}", rep.failed_ids());
    assert!(!rep.is_ok());
    let wrong_parity = skew.replacen("\"skew\"", "\"sym\"", 1).replacen(", \"solves\": true", "", 1);
    let rep = Bundle::parse(&wrong_parity).unwrap().check("r").unwrap();
    assert_eq!(rep.failed_ids(), vec!["parity-sym"]);
    let zero_tensor = with("\"tensors\": {\"r\": {\"dim\": 2, \"algebra\": \"nil2\", \"solves\": true, \"entries\": []}}");
    assert!(Bundle::parse(&zero_tensor).unwrap().check("r").unwrap().is_ok());

    let form = nil2.replacen(
        "\"forms\": {}",
        "\"forms\": {\"w\": {\"dim\": 2, \"algebra\": \"nil2\", \"require\": [\"skew\", \"nondegenerate\"], \
         \"entries\": [[0,1,\"1\"],[1,0,\"-1\"]]}}",
        1,
    );
    assert!(Bundle::parse(&form).unwrap().check("w").unwrap().is_ok());
    let sym = form.replacen("\"-1\"", "\"1\"", 1);
    assert_eq!(Bundle::parse(&sym).unwrap().check("w").unwrap().failed_ids(), vec!["skew"]);
    let unknown = form.replacen("\"nondegenerate\"", "\"purple\"", 1);
    assert!(Bundle::parse(&unknown).unwrap().check("w").is_err());
}

#[test]
fn zero_entries_are_generated() {
    let e = load_from(&scratch("zero"), "zero_4_3").unwrap();
    let a = e.algebra().unwrap();
    assert_eq!((a.level(), a.dim()), (Level::Quadri, 3));
    assert!(a.is_zero());
    assert_eq!(generate("zero_3").unwrap().algebra().unwrap().level(), Level::Assoc);
    assert!(matches!(generate("zero_5_2"), Err(Error::UnknownEntry(_))));
    assert!(matches!(load("no_such_entry"), Err(Error::UnknownEntry(_))));
}

#[test]
fn random_generation_is_seeded() {
    assert_eq!(random_tensor2(4, Parity::Skew, 3), random_tensor2(4, Parity::Skew, 3));
    assert_ne!(random_tensor2(4, Parity::Skew, 3), random_tensor2(4, Parity::Skew, 4));
    assert_eq!(random_form(3, Parity::Sym, 1), random_form(3, Parity::Sym, 1));
    assert!(random_tensor2(5, Parity::Skew, 9).is_skew());
    assert!(random_tensor2(5, Parity::Sym, 9).is_symmetric());
    assert!(random_form(4, Parity::Skew, 2).is_skew());
    let (mut a, mut b) = (rng(17), rng(17));
    assert_eq!(random_matrix(3, 2, &mut a), random_matrix(3, 2, &mut b));
    let mut r = rng(0);
    for _ in 0..500 {
        let x = random_rational(&mut r);
        assert!(x >= int(-4) && x <= int(4) && (&x * int(6)).is_integer(), "{x}");
    }
    assert!(catalog::random_nonzero(&mut r) != int(0));
}

#[test]
fn projections_are_closed() {
    let mut octo = 0;
    for (name, a) in common::catalog_algebras() {
        for target in projections(a.level()) {
            let p = project(&a, target).unwrap();
            assert!(check_axioms(&p).is_ok(), "{name} → {target}");
            assert!(p.level().value() < a.level().value());
        }
        if a.level() == Level::Octo {
            octo += 1;
            assert_eq!(projections(a.level()).len(), 7);
        }
    }
    assert!(octo >= 3);
    let a = catalog::octo_from_int3_triple().unwrap();
    for target in projections(Level::Octo) {
        assert!(check_axioms(&project(&a, target).unwrap()).is_ok(), "{target}");
    }
}
