use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clusteralg::catalog::{self, shipped};
use clusteralg::cluster::check_axioms;
use clusteralg::operators::rb_finer;
use clusteralg::yang_baxter::check_aybe;
use clusteralg::{Bundle, Level};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], catalog: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_clusteralg"));
    c.args(args).env_remove("CLUSTERALG_CATALOG");
    if let Some(dir) = catalog {
        c.env("CLUSTERALG_CATALOG", dir);
    }
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn bundle(o: &Output) -> Bundle {
    Bundle::parse(&stdout(o)).unwrap()
}

fn failed_ids(doc: &Value) -> Vec<String> {
    let mut ids: Vec<String> = doc["objects"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|o| o["violations"].as_array().unwrap().iter())
        .map(|v| v["identity_id"].as_str().unwrap().to_string())
        .collect();
    ids.dedup();
    ids
}

fn scratch(tag: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("clusteralg-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&p);
    std::fs::create_dir_all(&p).unwrap();
    p
}

#[test]
fn check_passes_on_the_catalog() {
    let o = run(&["check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    for name in shipped() {
        let o = run(&["check", name]);
        assert_eq!(code(&o), 0, "{name}");
        assert!(stdout(&o).contains(&format!("{name} (")), "{name}");
    }
}

#[test]
fn corrupted_bundles_exit_1_naming_the_identity() {
    for (file, want) in [
        ("corrupted_nil2.json", "assoc"),
        ("corrupted_dend.json", "2.1.5-1"),
        ("corrupted_quadri.json", "3.4.2-2"),
    ] {
        let f = fixture(file);
        let o = run(&["--bundle", f.to_str().unwrap(), "check", "--json"]);
        assert_eq!(code(&o), 1, "{file}");
        let doc = json(&o);
        assert_eq!(doc["ok"], false);
        assert!(failed_ids(&doc).iter().any(|id| id == want), "{file}: {:?}", failed_ids(&doc));
        let v = &doc["objects"][0]["violations"][0];
        assert_eq!(v["witness"].as_array().unwrap().len(), 3);
        assert!(!v["discrepancy"].as_array().unwrap().is_empty());
        let text = run(&["--bundle", f.to_str().unwrap(), "check"]);
        assert_eq!(code(&text), 1);
        assert!(stdout(&text).contains(&format!("violated {want} at [")), "{}", stdout(&text));
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(code(&run(&["check", "no_such_object"])), 2);
    assert_eq!(code(&run(&["--bundle", "/nonexistent/bundle.json", "check"])), 2);
    let dir = scratch("bad");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"field\": \"R\"}").unwrap();
    assert_eq!(code(&run(&["--bundle", bad.to_str().unwrap(), "check"])), 2);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["--bundle", bad.to_str().unwrap(), "check"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["derive", "project", "nil2", "HorizDend"])), 2);
    assert_eq!(code(&run(&["derive", "canonical-solution", "nil2", "--variant", "Cor9"])), 2);
    assert_eq!(code(&run(&["classify", "nil2", "trunc3"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_deterministic() {
    let f = fixture("corrupted_quadri.json");
    let runs = [
        vec!["check", "--json"],
        vec!["--bundle", f.to_str().unwrap(), "check", "--json"],
        vec!["derive", "canonical-solution", "quadri_from_int3_pair", "--variant", "Cor4.2.10"],
        vec!["random-tensor", "--dim", "4", "--symmetry", "skew", "--seed", "7"],
    ];
    for args in runs {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
    let a = run(&["random-tensor", "--dim", "4", "--seed", "1"]);
    let b = run(&["random-tensor", "--dim", "4", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn rb_finer_matches_the_library() {
    let o = run(&["derive", "rb-finer", "nil2", "rb_nil2"]);
    assert_eq!(code(&o), 0);
    let b = bundle(&o);
    let d = b.algebra("nil2_rb_rb_nil2").unwrap();
    assert_eq!(d.level(), Level::Dend);
    assert_eq!(d, &rb_finer(&catalog::nil2(), &catalog::rb_nil2()).unwrap());
    assert_eq!(d, &catalog::dend_from_rb_nil2().unwrap());
}

#[test]
fn no_verify_skips_preconditions() {
    let f = fixture("maps.json");
    let f = f.to_str().unwrap();
    let o = run(&["--bundle", f, "derive", "rb-finer", "nil2", "id2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("violated 2.1.4"));
    let o = run(&["--bundle", f, "derive", "rb-finer", "nil2", "id2", "--no-verify"]);
    assert_eq!(code(&o), 0);
    assert!(!check_axioms(bundle(&o).algebra("nil2_rb_id2").unwrap()).is_ok());
    // the identity of a zero algebra is an invertible O-operator
    let o = run(&["--bundle", f, "derive", "compatible", "zero3", "regular", "id3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(bundle(&o).algebra("zero3_compatible_id3").unwrap().is_zero());
    assert_eq!(code(&run(&["derive", "compatible", "nil2", "regular", "rb_nil2"])), 1);
}

#[test]
fn canonical_solution_pipeline() {
    let dir = scratch("pipeline");
    let out = dir.join("out.json");
    let out_s = out.to_str().unwrap();
    let step = |args: &[&str]| {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        o
    };
    step(&["derive", "canonical-solution", "dend_from_rb_nil2", "--variant", "Cor2.2.8", "--out", out_s, "--name", "D"]);
    step(&["derive", "canonical-solution", "dend_from_int3", "--variant", "Cor3.3.8", "--out", out_s, "--name", "E"]);
    let c = run(&["--bundle", out_s, "check"]);
    assert_eq!(code(&c), 0, "{}", stdout(&c));
    let b = Bundle::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(check_aybe(b.algebra("D").unwrap(), b.tensor("D_r").unwrap()).unwrap().is_ok());

    let cls = json(&step(&["--bundle", out_s, "--json", "classify", "D", "D_form"]));
    assert_eq!(cls["connes_cocycle"], true);
    let cls = json(&step(&["--bundle", out_s, "--json", "classify", "E", "E_form"]));
    assert_eq!(cls["dend_2cocycle"], true);

    // dual product and Frobenius double from the skew solution
    step(&["--bundle", out_s, "derive", "dual-product", "D", "D_r", "--out", out_s, "--name", "Dstar"]);
    step(&["--bundle", out_s, "derive", "double-product", "D", "Dstar", "--out", out_s]);
    // finer structures from the canonical forms
    step(&["--bundle", out_s, "derive", "finer-from-form", "D", "D_form", "--out", out_s, "--name", "Dfine"]);
    step(&["--bundle", out_s, "derive", "finer-from-form", "E", "E_form", "--out", out_s, "--name", "Efine"]);
    step(&["--bundle", out_s, "derive", "project", "Efine", "HorizDend", "--out", out_s, "--name", "Eback"]);
    let b = Bundle::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(b.algebra("Dfine").unwrap().level(), Level::Dend);
    assert_eq!(b.algebra("Eback").unwrap(), b.algebra("E").unwrap());
    let c = run(&["--bundle", out_s, "check", "--json"]);
    assert_eq!(code(&c), 0, "{}", stdout(&c));
    assert!(json(&c)["objects"].as_array().unwrap().len() >= 10);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn lift_gives_a_solution_in_the_double() {
    let o = run(&["derive", "lift", "nil2", "regular", "rb_nil2", "--symmetry", "skew"]);
    assert_eq!(code(&o), 0);
    let b = bundle(&o);
    let (d, r) = (b.algebra("nil2_lift_rb_nil2").unwrap(), b.tensor("nil2_lift_rb_nil2_r").unwrap());
    assert_eq!(d.dim(), 4);
    assert!(r.is_skew());
    assert!(check_aybe(d, r).unwrap().is_ok());
    assert_eq!(code(&run(&["derive", "lift", "nil2", "regular", "rb_nil2", "--symmetry", "sym"])), 2);
    // the identity is not an O-operator of nil2, and the lifted tensor fails
    let f = fixture("maps.json");
    let o = run(&["--bundle", f.to_str().unwrap(), "derive", "lift", "nil2", "regular", "id2", "--symmetry", "skew"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn remaining_constructions() {
    let ok = |args: &[&str]| {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        bundle(&o)
    };
    let b = ok(&["derive", "project", "octo_from_int5_triple", "DepthQuadri"]);
    assert_eq!(b.algebra("octo_from_int5_triple_DepthQuadri").unwrap().level(), Level::Quadri);
    let b = ok(&["derive", "dual-bimodule", "trunc3"]);
    assert!(b.check("trunc3_regular_dual").unwrap().is_ok());
    let b = ok(&["derive", "semidirect", "trunc3", "dual_regular"]);
    assert_eq!(b.algebra("trunc3_x_dual_regular").unwrap().dim(), 6);
    let b = ok(&["derive", "restrict", "dend_from_int3", "regular", "--rule", "assoc-succ-prec"]);
    assert!(b.check("dend_from_int3_assoc-succ-prec_module").unwrap().is_ok());
    let b = ok(&["derive", "induce", "trunc3", "regular", "int3"]);
    assert_eq!(b.algebra("induced_int3").unwrap(), &catalog::dend_from_int3().unwrap());
    let b = ok(&["derive", "rb-pair", "trunc3", "int3", "int3"]);
    assert_eq!(b.algebra("trunc3_rb_int3_int3").unwrap(), &catalog::quadri_from_int3_pair().unwrap());
    let b = ok(&["derive", "rb-triple", "trunc5", "int5", "int5", "int5"]);
    assert_eq!(b.algebra("trunc5_rb_int5_int5_int5").unwrap(), &catalog::octo_from_int5_triple().unwrap());
    let b = ok(&["derive", "canonical-solution", "octo_from_quadri_double", "--variant", "Cor4.4.13"]);
    assert!(b.verify_all().unwrap().is_empty());
    let b = ok(&["random-form", "--dim", "3", "--symmetry", "sym", "--seed", "4"]);
    assert!(b.form("b").unwrap().is_symmetric());
}

#[test]
fn classify_the_zero_form() {
    let o = run(&["--json", "classify", "quadri_from_int3_pair", "zero"]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    for (k, v) in doc.as_object().unwrap() {
        if k != "nondegenerate" && k != "equations" {
            assert_eq!(v, &Value::Bool(true), "{k}");
        }
    }
    assert_eq!(doc["nondegenerate"], false);
    let text = stdout(&run(&["classify", "dend_from_int3", "zero"]));
    assert!(text.contains("dend_2cocycle: true"));
    assert!(!text.contains("quadri"));
}

#[test]
fn random_tensor_reports_the_equation() {
    let o = run(&["random-tensor", "--dim", "2", "--symmetry", "skew", "--seed", "3", "--algebra", "nil2"]);
    assert_eq!(code(&o), 0);
    let b = bundle(&o);
    assert!(b.tensor("r").unwrap().is_skew());
    assert!(String::from_utf8_lossy(&o.stderr).contains("equation"));
    assert_eq!(code(&run(&["random-tensor", "--dim", "2", "--symmetry", "wobbly"])), 2);
}

#[test]
fn catalog_commands_and_env_override() {
    let o = run(&["--json", "catalog", "list"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> =
        json(&o).as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect();
    for n in shipped() {
        assert!(names.iter().any(|m| m == n), "{n}");
    }
    assert_eq!(Bundle::parse(&stdout(&run(&["catalog", "show", "int3"]))).unwrap(), catalog::generate("int3").unwrap().bundle);

    let dir = scratch("env");
    assert_eq!(code(&run(&["catalog", "export", "--out", dir.to_str().unwrap()])), 0);
    assert_eq!(code(&run_env(&["check"], Some(&dir))), 0);
    std::fs::copy(fixture("corrupted_nil2.json"), dir.join("nil2.json")).unwrap();
    let o = run_env(&["check", "--json"], Some(&dir));
    assert_eq!(code(&o), 1);
    assert!(failed_ids(&json(&o)).contains(&"assoc".to_string()));
    // rb_nil2 ships its own copy of nil2, so it still passes
    assert_eq!(code(&run_env(&["check", "rb_nil2"], Some(&dir))), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
