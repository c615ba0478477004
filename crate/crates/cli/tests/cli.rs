use std::path::{Path, PathBuf};
use std::process::Command;

use quasihopf::linalg::Field;
use quasihopf::representations::ComoduleAlgebra;
use quasihopf_cli::commands::{self, canonical, load_structure, DecomposeArgs, Structure};
use quasihopf_cli::corpus_files::{corpus_files, MALFORMED, VIOLATIONS};
use quasihopf_cli::format::read_document;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn qhopf(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhopf"))
        .args(args)
        .env_remove("QHOPF_FIELD")
        .output()
        .expect("binary runs");
    (out.status.code().expect("exited"), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn load(path: &Path) -> Structure {
    let doc = read_document(path).unwrap();
    let ctx = doc.ctx(None).unwrap();
    load_structure(&doc, ctx, None).unwrap()
}

#[test]
fn checked_in_corpus_matches_the_generator() {
    let expected = corpus_files();
    for (rel, contents) in &expected {
        let on_disk = std::fs::read_to_string(corpus(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"));
        assert_eq!(&on_disk, contents, "{rel} is stale; rerun the write_corpus example");
    }
    let mut count = 0;
    for sub in ["hopf", "module_algebras", "morphisms", "fixtures"] {
        count += std::fs::read_dir(corpus(sub)).unwrap().count();
    }
    assert_eq!(count, expected.len(), "corpus/ holds files the generator does not produce");
}

#[test]
fn exit_codes_on_the_fixture_triple() {
    assert_eq!(qhopf(&["verify", corpus("hopf/h2.qha").to_str().unwrap()]).0, 0);
    for f in VIOLATIONS {
        let (code, out) = qhopf(&["verify", corpus(f.path).to_str().unwrap()]);
        assert_eq!(code, 1, "{}", f.path);
        assert!(out.contains(&format!("[FAIL] {}", f.axiom)), "{}:\n{out}", f.path);
    }
    for f in MALFORMED {
        assert_eq!(qhopf(&["verify", corpus(f).to_str().unwrap()]).0, 2, "{f}");
    }
    assert_eq!(qhopf(&["verify", "/nonexistent/h.qha"]).0, 2);
    assert_eq!(qhopf(&["frobnicate"]).0, 2);
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let f = corpus("fixtures/h2_pentagon.qha");
        let (code, _) = qhopf(&["verify", f.to_str().unwrap(), "--report", path.to_str().unwrap()]);
        assert_eq!(code, 1);
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let report: serde_json::Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(report["status"], "fail");
    assert!(report.get("timings_ms").is_none());
    let failed: Vec<_> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["result"] == "fail")
        .map(|c| c["axiom"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"(q3)"));
}

#[test]
fn status_is_pass_iff_every_check_passes() {
    for rel in ["hopf/sweedler.qha", "fixtures/h2_alpha.qha", "fixtures/kz2_index_out_of_range.qha"] {
        let report = commands::verify(&corpus(rel), None, None);
        let json = report.to_json(false);
        let all_pass = json["checks"].as_array().unwrap().iter().all(|c| c["result"] == "pass");
        assert_eq!(json["status"] == "pass", all_pass && json.get("error").is_none(), "{rel}");
    }
}

#[test]
fn field_override_and_environment() {
    let h2 = corpus("hopf/h2.qha");
    let h2 = h2.to_str().unwrap();
    let (code, out) = qhopf(&["verify", h2, "--field", "gf:7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("gf:7"));
    let out = Command::new(env!("CARGO_BIN_EXE_qhopf"))
        .args(["verify", h2])
        .env("QHOPF_FIELD", "gf:5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gf:5"));
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_qhopf"))
        .args(["verify", h2, "--field", "rational"])
        .env("QHOPF_FIELD", "gf:5")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("rational"));
    // 1/2 has no image in GF(2)
    assert_eq!(qhopf(&["verify", h2, "--field", "gf:2"]).0, 2);
    assert_eq!(qhopf(&["verify", h2, "--field", "gf:6"]).0, 2);
}

#[test]
fn written_files_reverify_and_reencode() {
    let dir = tempfile::tempdir().unwrap();
    let smash = dir.path().join("smash");
    let dec = dir.path().join("dec");
    let a = corpus("module_algebras/h2_id.json");
    let h = corpus("hopf/h2.qha");
    assert_eq!(commands::smash(&a, &h, &smash, None).exit_code(), 0);
    let args = DecomposeArgs {
        b: smash.join("smash.json"),
        h: h.clone(),
        v: smash.join("j.json"),
        out: dec.clone(),
        expect: Some(a.clone()),
    };
    let report = commands::decompose(&args, None, false);
    assert_eq!(report.exit_code(), 0, "{}", report.human());
    assert_eq!(report.get_info("dim_A"), Some(&serde_json::json!(2)));
    for f in ["smash/smash.json", "smash/j.json", "dec/A.json", "dec/psi.json", "dec/theta.json"] {
        let path = dir.path().join(f);
        let r = commands::verify(&path, None, None);
        assert_eq!(r.exit_code(), 0, "{f}:\n{}", r.human());
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = read_document(&path).unwrap();
        let again = canonical(&doc, doc.ctx(None).unwrap()).unwrap().to_pretty();
        assert_eq!(again, text, "{f}");
    }
    let report = std::fs::read_to_string(dec.join("report.json")).unwrap();
    assert!(report.contains("\"status\": \"pass\""));
}

#[test]
fn smash_with_the_ground_field_is_h() {
    let dir = tempfile::tempdir().unwrap();
    let r = commands::smash(&corpus("module_algebras/kz2_k.json"), &corpus("hopf/kz2.qha"), dir.path(), None);
    assert_eq!(r.exit_code(), 0);
    let Structure::ComoduleAlgebra(b) = load(&dir.path().join("smash.json")) else {
        panic!("smash.json is a comodule algebra");
    };
    let Structure::QuasiHopf(h) = load(&corpus("hopf/kz2.qha")) else {
        panic!("kz2.qha is a quasi-Hopf algebra");
    };
    let regular = ComoduleAlgebra::regular(h);
    assert_eq!(b.coaction(), regular.coaction());
    assert_eq!(b.phi_rho(), regular.phi_rho());
    assert_eq!(b.algebra().mult_matrix(), regular.algebra().mult_matrix());
    assert_eq!(b.algebra().unit(), regular.algebra().unit());
}

#[test]
fn unverified_inputs_stop_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let r = commands::smash(&corpus("module_algebras/h2_id.json"), &corpus("fixtures/h2_alpha.qha"), &out, None);
    assert_eq!(r.exit_code(), 1);
    assert!(!out.exists());
    // the embedded H no longer matches -H
    let r = commands::smash(&corpus("module_algebras/kz2_id.json"), &corpus("hopf/h2.qha"), &out, None);
    assert_eq!(r.exit_code(), 2);
    assert!(!out.exists());
}

#[test]
fn decompose_regular_and_broken_v() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["k", "kz2", "kz4", "sweedler", "h2"] {
        let args = DecomposeArgs {
            b: corpus(&format!("hopf/{name}.qha")),
            h: corpus(&format!("hopf/{name}.qha")),
            v: corpus(&format!("morphisms/{name}_id.json")),
            out: dir.path().join(name),
            expect: None,
        };
        let r = commands::decompose(&args, None, false);
        assert_eq!(r.exit_code(), 0, "{name}:\n{}", r.human());
        assert_eq!(r.get_info("dim_A"), Some(&serde_json::json!(1)));
    }
    let args = DecomposeArgs {
        b: corpus("hopf/h2.qha"),
        h: corpus("hopf/h2.qha"),
        v: corpus("fixtures/h2_counit_v.json"),
        out: dir.path().join("bad"),
        expect: None,
    };
    let r = commands::decompose(&args, None, false);
    assert_eq!(r.exit_code(), 1);
    assert!(r.failed_axioms().contains(&"(phi-rho-morphism)".to_string()));
}

#[test]
fn roundtrip_over_both_fields() {
    for field in [None, Some(Field::Prime(7))] {
        for (a, h) in [("kz2_k", "kz2"), ("h2_id", "h2"), ("sweedler_id", "sweedler")] {
            let r = commands::roundtrip(&corpus(&format!("module_algebras/{a}.json")), &corpus(&format!("hopf/{h}.qha")), field);
            assert_eq!(r.exit_code(), 0, "{a}:\n{}", r.human());
            assert!(r.get_info("iso").is_some());
        }
    }
    let (code, out) = qhopf(&[
        "roundtrip",
        "-a",
        corpus("module_algebras/sweedler_id.json").to_str().unwrap(),
        "-H",
        corpus("hopf/sweedler.qha").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["info"]["dim_A"], 4);
}
