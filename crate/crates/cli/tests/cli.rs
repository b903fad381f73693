use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dgc_core::io;
use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn dgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgc")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = dgc(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ok_text(args: &[&str]) -> String {
    let out = dgc(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, io::render(v)).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn koszul_two_variables() {
    let v = ok_json(&["koszul", "--vars", "x,y", "--ring", "Q"]);
    assert_eq!(v["schema"], "complex.v1");
    assert_eq!(v["differentials"]["1"], serde_json::json!([["x", "y"]]));
    assert_eq!(v["differentials"]["2"], serde_json::json!([["-y"], ["x"]]));
}

#[test]
fn koszul_three_variables_over_fp() {
    let v = ok_json(&["koszul", "--vars", "x,y,z", "--ring", "Fp", "--prime", "7"]);
    assert_eq!(v["prime"], 7);
    assert_eq!(v["ranks"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["differentials"]["3"], serde_json::json!([["z"], ["6*y"], ["x"]]));
}

#[test]
fn ext_table_over_exterior_algebra() {
    let v = ok_json(&["ext", "--algebra", &data("U.json"), "--module", &data("F.json"), "--cap", "6"]);
    let dims: Vec<u64> = (0..6).map(|i| v["ext"][i.to_string()].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1, 0, 1, 0]);
    assert_eq!(v["certified_through"], 5);
    let t = ok_text(&["ext", "--algebra", &data("U.json"), "--module", "residue", "--cap", "6", "--format", "text"]);
    assert!(t.starts_with("1,0,1,0,1,0\n"));
}

#[test]
fn moduli_two_step() {
    let v = ok_json(&["moduli", "--algebra", &data("U.json"), "--dims", "1,1"]);
    assert_eq!(v["constraints"], serde_json::json!(["x0*x1"]));
    assert_eq!(v["unknowns"], serde_json::json!(["x0", "x1"]));
    let v = ok_json(&["moduli", "--algebra", &data("U.json"), "--dims", "1,1", "--point", &data("W1_point_10.json")]);
    assert_eq!(v["tangent"]["yext_dim"], 0);
}

#[test]
fn yext_against_ext() {
    for (pt, want) in [("W1_point_10.json", 0), ("W1_point_00.json", 2)] {
        let v = ok_json(&["yext", "--algebra", &data("U.json"), "--dims", "1,1", "--point", &data(pt), "--cap", "5"]);
        assert_eq!(v["yext_dim"], want);
        assert_eq!(v["ext1"], want);
    }
}

#[test]
fn structured_resolutions() {
    let v = ok_json(&["hb", "--vars", "x,y", "--matrix", r#"[["x","0"],["y","x"],["0","y"]]"#]);
    assert_eq!(v["row"], serde_json::json!(["y^2", "-x*y", "x^2"]));
    assert_eq!(v["products"], serde_json::json!(["e1*e2 = y*f1", "e1*e3 = -x*f1 + y*f2", "e2*e3 = -x*f2"]));
    let m = r#"[["0","z","-y"],["-z","0","x"],["y","-x","0"]]"#;
    let v = ok_json(&["be3", "--matrix", m]);
    assert_eq!(v["row"], serde_json::json!(["x", "y", "z"]));
    let a = ok_json(&["be3", "--matrix", m, "--sign-flag", "a"]);
    assert_eq!(a["row"], serde_json::json!(["-x", "-y", "-z"]));
    let p = ok_json(&["pfaffian", "--family", "5"]);
    assert_eq!(p["values"], serde_json::json!(["y^2", "x*z", "x*y + z^2", "y*z", "x^2"]));
}

#[test]
fn verification_reports() {
    let dir = tempfile::tempdir().unwrap();
    let v = ok_json(&["verify-dgm", "--input", &data("G.json")]);
    assert_eq!(v["ok"], true);
    // break the unit of U
    let mut u: Value = serde_json::from_str(&std::fs::read_to_string(data("U.json")).unwrap()).unwrap();
    u["products"]["0,1"] = serde_json::json!([["2"]]);
    let bad = write(dir.path(), "bad.json", &u);
    let out = dgc(&["verify-dga", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], false);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "axiom");
}

#[test]
fn complex_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let k = ok_json(&["koszul", "--vars", "x", "--ring", "Fp", "--prime", "5"]);
    let kp = write(dir.path(), "k.json", &k);
    let h = ok_json(&["hom", "--source", &kp, "--target", &kp]);
    assert_eq!(h["ranks"], serde_json::json!([1, 2, 1]));
    let t = ok_json(&["tensor", "--left", &kp, "--right", &kp]);
    assert_eq!(t["ranks"], serde_json::json!([1, 2, 1]));
    let s = ok_json(&["suspend", "--input", &kp, "--shift", "-1"]);
    assert_eq!(s["degrees"]["lo"], -1);
    let f = ok_json(&["koszul", "--elements", "1", "--ring", "Fp", "--prime", "5"]);
    let fp = write(dir.path(), "f.json", &f);
    let hom = ok_json(&["homology", "--input", &fp]);
    assert_eq!(hom["dims"], serde_json::json!({"0": 0, "1": 0}));
    let tr = ok_json(&["truncate", "--input", &fp, "--degree", "0"]);
    assert_eq!(tr["quasi_isomorphism"], true);
    let tp = write(dir.path(), "t.json", &tr);
    assert_eq!(ok_json(&["quasiiso", "--map", &tp])["quasi_isomorphism"], true);
}

#[test]
fn null_homotopy_solve_and_check() {
    let dir = tempfile::tempdir().unwrap();
    // the identity of the acyclic complex F --1--> F is null-homotopic
    let f = ok_json(&["koszul", "--elements", "1"]);
    let c = io::complex_from_json(&f).unwrap();
    let id = io::chainmap_to_json(&dgc_core::complex::ChainMap::identity(&c));
    let idp = write(dir.path(), "id.json", &id);
    let v = ok_json(&["nullhomotopy", "--map", &idp]);
    assert_eq!(v["null_homotopic"], true);
    let sp = write(dir.path(), "s.json", &v["map"]);
    assert_eq!(ok_json(&["nullhomotopy", "--map", &idp, "--homotopy", &sp])["holds"], true);
    let zero = io::chainmap_to_json(&dgc_core::complex::ChainMap::zero(&c, &c, 1));
    let zp = write(dir.path(), "z.json", &zero);
    assert_eq!(dgc(&["nullhomotopy", "--map", &idp, "--homotopy", &zp]).status.code(), Some(2));
}

#[test]
fn dg_module_commands() {
    let dir = tempfile::tempdir().unwrap();
    let u = data("U.json");
    let k = ok_json(&["koszul", "--elements", "0"]);
    let kp = write(dir.path(), "k.json", &k);
    let b = ok_json(&["basechange", "--algebra", &u, "--input", &kp]);
    assert_eq!(b["schema"], "dgmodule.v1");
    let h = ok_json(&["dghom", "--algebra", &u, "--module", "regular", "--target", &data("F.json")]);
    assert_eq!(h["complex"]["ranks"].as_array().unwrap().iter().map(|r| r.as_u64().unwrap()).sum::<u64>(), 1);
    let t = ok_json(&["dgtensor", "--module", &data("F.json"), "--target", &data("F.json")]);
    assert_eq!(t["schema"], "dgmodule.v1");
    let s = ok_json(&["semifree", "--algebra", &u, "--module", "residue", "--cap", "4"]);
    let degs: Vec<i64> = s["generators"].as_array().unwrap().iter().map(|g| g["degree"].as_i64().unwrap()).collect();
    assert_eq!(degs, [0, 2, 4]);
    let sp = write(dir.path(), "s.json", &s);
    assert_eq!(ok_json(&["verify-dgm", "--input", &sp])["ok"], true);
    let sd = ok_json(&["semidualizing", "--algebra", &data("dual_numbers.json"), "--module", "regular"]);
    assert_eq!(sd["semidualizing"], true);
    assert_eq!(sd["length_bound"]["mu0"], 1);
}

#[test]
fn act_and_tangent() {
    let u = data("U.json");
    let v = ok_json(&[
        "act",
        "--algebra",
        &u,
        "--dims",
        "1,1",
        "--point",
        &data("W1_point_10.json"),
        "--alpha",
        &data("W1_alpha.json"),
    ]);
    assert_eq!(v["values"]["x0"], "3/2");
    let t = ok_json(&["tangent", "--algebra", &u, "--dims", "1,1", "--point", &data("W1_point_10.json")]);
    assert_eq!(t["tangent_dim"], 1);
    assert_eq!(t["dual_numbers_agree"], true);
}

/// Every emitted document with a reader reads back to the same bytes.
#[test]
fn round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let u = data("U.json");
    let k = ok_json(&["koszul", "--vars", "x,y,z"]);
    assert_eq!(io::render(&io::complex_to_json(&io::complex_from_json(&k).unwrap())), io::render(&k));
    let hb = ok_json(&["hb", "--vars", "x,y", "--matrix", r#"[["x","0"],["y","x"],["0","y"]]"#]);
    let alg = io::dgalgebra_data_from_json(&hb["algebra"]).unwrap();
    assert_eq!(io::dgalgebra_to_json(&alg), hb["algebra"]);
    let s = ok_json(&["semifree", "--algebra", &u, "--module", "residue", "--cap", "3"]);
    let m = io::dgmodule_data_from_json(&s["module"]).unwrap();
    assert_eq!(io::dgmodule_to_json(&m), s["module"]);
    let f = io::chainmap_from_json(&s["map"]).unwrap();
    assert_eq!(io::chainmap_to_json(&f), s["map"]);
    let e = ok_json(&["ext", "--algebra", &u, "--module", "residue", "--cap", "4"]);
    assert_eq!(io::ext_to_json(&io::ext_from_json(&e).unwrap()), e);
    let p = ok_json(&[
        "act",
        "--algebra",
        &u,
        "--dims",
        "1,1",
        "--point",
        &data("W1_point_10.json"),
        "--alpha",
        &data("W1_alpha.json"),
    ]);
    let pp = write(dir.path(), "p.json", &p);
    let again = ok_json(&["act", "--algebra", &u, "--dims", "1,1", "--point", &pp, "--alpha", &data("W1_alpha.json")]);
    assert_eq!(again["values"]["x0"], "9/4");
    // CLI outputs are accepted as inputs by the CLI itself
    let hp = write(dir.path(), "hb.json", &hb);
    assert_eq!(ok_json(&["verify-dga", "--input", &hp])["ok"], true);
    for name in ["U.json", "F.json", "G.json", "dual_numbers.json", "W1_point_10.json", "W1_alpha.json"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let v = io::parse_json(&text).unwrap();
        let back = match io::schema_of(&v).unwrap() {
            "dgalgebra.v1" => io::dgalgebra_to_json(&io::dgalgebra_data_from_json(&v).unwrap()),
            "dgmodule.v1" => io::dgmodule_to_json(&io::dgmodule_data_from_json(&v).unwrap()),
            _ => v.clone(),
        };
        assert_eq!(io::render(&back), text, "{name}");
    }
}

#[test]
fn deterministic_output() {
    let runs: Vec<Vec<u8>> = (0..2).map(|_| dgc(&["be3", "--family", "5"]).stdout).collect();
    assert_eq!(runs[0], runs[1]);
    let a = dgc(&["semifree", "--algebra", &data("U.json"), "--module", "residue", "--cap", "5"]).stdout;
    let b = dgc(&["semifree", "--algebra", &data("U.json"), "--module", "residue", "--cap", "5"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(dgc(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(dgc(&[]).status.code(), Some(64));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = dgc(&["homology", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
    std::fs::write(&bad, r#"{"schema":"complex.v2"}"#).unwrap();
    assert_eq!(dgc(&["homology", "--input", bad.to_str().unwrap()]).status.code(), Some(65));
    // d∘d ≠ 0 is a mathematical precondition failure
    let nc = serde_json::json!({
        "schema": "complex.v1", "ring": "Q", "variables": ["x"],
        "degrees": {"lo": 0, "hi": 2}, "ranks": [1, 1, 1],
        "differentials": {"1": [["x"]], "2": [["x"]]}
    });
    let p = write(dir.path(), "nc.json", &nc);
    assert_eq!(dgc(&["homology", "--input", &p]).status.code(), Some(2));
    // polynomial entries: homology needs a field
    let k = ok_json(&["koszul", "--vars", "x"]);
    let kp = write(dir.path(), "k.json", &k);
    assert_eq!(dgc(&["homology", "--input", &kp]).status.code(), Some(2));
    assert_eq!(dgc(&["koszul", "--vars", "x", "--ring", "Fp", "--prime", "9"]).status.code(), Some(2));
    assert_eq!(dgc(&["be3", "--family", "4"]).status.code(), Some(2));
    assert_eq!(dgc(&["ext", "--module", "residue"]).status.code(), Some(2));
    assert_eq!(dgc(&["homology", "--input", "/nonexistent.json"]).status.code(), Some(66));
    assert_eq!(dgc(&["--help"]).status.code(), Some(0));
}
