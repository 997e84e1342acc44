use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use steiner_cli::run;
use tempfile::TempDir;

const SIX_LINES: &str = r#"[["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"],["1","2","3"],["1","4","9"]]"#;

fn steiner(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("steiner").chain(args.iter().copied()));
    (out.code, out.stdout)
}

fn report(args: &[&str]) -> Value {
    let (code, out) = steiner(args);
    assert_eq!(code, 0, "{args:?} -> {out}");
    serde_json::from_str(&out).unwrap()
}

fn save(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn make(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let (code, out) = steiner(&[&["make"], args].concat());
    assert_eq!(code, 0, "{out}");
    save(dir, name, &out)
}

#[test]
fn schwarzenberger_is_infinite() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "s.json", &["schwarzenberger", "--n", "2", "--k", "3"]);
    let r = report(&["unstable", s(&f)]);
    assert_eq!(r["verdict"], "Infinite");
    assert_eq!(r["classification"], "Schwarzenberger");
    assert_eq!(r["seed"], 0);
    assert_eq!(report(&["invariant", s(&f)])["w"], "infinite");
}

#[test]
fn six_lines_have_invariant_six() {
    let dir = TempDir::new().unwrap();
    let lines = save(&dir, "six.json", SIX_LINES);
    let f = make(&dir, "log.json", &["logarithmic", "--hyperplanes", s(&lines)]);
    assert_eq!(report(&["invariant", s(&f)])["w"], 6);
    let r = report(&["unstable", s(&f), "--seed", "7"]);
    assert_eq!(r["length"], 6);
    assert_eq!(r["classification"], "Logarithmic");
    assert_eq!(r["seed"], 7);
    let ys: Vec<Value> = r["points"].as_array().unwrap().iter().map(|p| p["y"].clone()).collect();
    assert_eq!(ys[0], json!(["0", "0", "1"]));
    assert_eq!(ys[5], json!(["1", "4", "9"]));
    assert!(r["points"].as_array().unwrap().iter().all(|p| p["mult"] == 1));
    assert_eq!(report(&["segre", s(&f)])["projected"].as_array().unwrap().len(), 6);
}

#[test]
fn conic_membership() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "s.json", &["schwarzenberger", "--n", "2", "--k", "2"]);
    let (code, out) = steiner(&["member", s(&f), "--hyperplane", "1,1,0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with(r#"{"member":false,"h0":0"#), "{out}");
    let r = report(&["member", s(&f), "--hyperplane", "1,-2,4"]);
    assert_eq!(r["member"], true);
    assert_eq!(r["h0"], 1);
}

#[test]
fn elementary_transform_and_iso() {
    let dir = TempDir::new().unwrap();
    let big = make(&dir, "s23.json", &["schwarzenberger", "--n", "2", "--k", "3"]);
    let small = make(&dir, "s22.json", &["schwarzenberger", "--n", "2", "--k", "2"]);
    let (code, out) = steiner(&["elm", s(&big), "--hyperplane", "1,0,0"]);
    assert_eq!(code, 0);
    let e = save(&dir, "e.json", &out);
    assert_eq!(report(&["iso", s(&e), s(&small)])["verdict"], "Iso");
    assert_eq!(report(&["iso", s(&big), s(&big)])["verdict"], "Iso");
    let (code, out) = steiner(&["elm", s(&big), "--hyperplane", "1,1,0"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn gale_and_stabilizer() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "s.json", &["schwarzenberger", "--n", "2", "--k", "2"]);
    let (_, out) = steiner(&["gale", s(&f)]);
    let g = save(&dir, "g.json", &out);
    assert!(out.starts_with(r#"{"n":1,"k":3,"dims":[4,3,2]"#));
    assert_eq!(report(&["classify", s(&g)])["classification"], "Schwarzenberger");
    let st = report(&["stab", s(&f)]);
    assert_eq!(st["dimension"], 3);
    assert_eq!(st["kind"], "SL2");
    let r = make(&dir, "r.json", &["random", "--n", "2", "--k", "3", "--seed", "1"]);
    assert_eq!(report(&["stab", s(&r)])["kind"], "Trivial");
}

#[test]
fn small_reports() {
    let t = report(&["tomthumb", "--dims", "4,2,3"]);
    assert_eq!(t["holds"], true);
    assert_eq!(t["paths"], 3);
    let w = report(&["weights", "--dims", "5,3,3", "--scale", "1/2"]);
    assert_eq!(w["weights"], json!([[2, 1, 0, -1, -2], [-1, 0, 1], [-1, 0, 1]]));
    let (code, _) = steiner(&["weights", "--dims", "4,2,3", "--scale", "1/2"]);
    assert_eq!(code, 2);
    assert_eq!(report(&["modulidim", "--n", "2", "--k", "3", "--i", "6"])["dimension"], 12);
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "s.json", &["schwarzenberger", "--n", "2", "--k", "3"]);
    for t in 0..3 {
        assert_eq!(report(&["sections", s(&f), "--t", &t.to_string()])["dim"], 0);
    }
    assert!(report(&["sections", s(&f), "--t", "3"])["dim"].as_u64().unwrap() > 0);
}

#[test]
fn degenerate_and_malformed_inputs() {
    let dir = TempDir::new().unwrap();
    let (code, out) = steiner(&["make", "lem1", "--dims", "5,3,3", "--beta", "0,0"]);
    assert_eq!(code, 0);
    let l = save(&dir, "l.json", &out);
    assert_eq!(report(&["hyperdet", s(&l)])["nonzero"], false);
    let (code, out) = steiner(&["unstable", s(&l)]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], "DegenerateTensor");
    let c = report(&["check", s(&l)]);
    assert_eq!((c["valid"].clone(), c["minors_nondegenerate"].clone()), (json!(false), json!(false)));

    let bad = save(
        &dir,
        "bad.json",
        r#"{"dims":[3,2,2],"entries":[[["1/0","0"],["0","0"]],[["0","1"],["1","0"]],[["0","0"],["0","1"]]]}"#,
    );
    assert_eq!(steiner(&["check", s(&bad)]).0, 1);
    let shape = save(&dir, "shape.json", r#"{"dims":[3,2,2],"entries":[[["1","0"]]]}"#);
    assert_eq!(steiner(&["check", s(&shape)]).0, 1);
    let fmt = save(&dir, "fmt.json", r#"{"dims":[2,2,2],"entries":[]}"#);
    assert_eq!(steiner(&["check", s(&fmt)]).0, 2);
    assert_eq!(steiner(&["check", "/nonexistent/file.json"]).0, 1);
    assert_eq!(steiner(&["bogus"]).0, 1);
    assert_eq!(steiner(&["check", s(&bad), "--field", "fp:7"]).0, 1);

    let lines = save(&dir, "dep.json", r#"[["1","0","0"],["0","1","0"],["1","1","0"],["0","0","1"]]"#);
    let (code, out) = steiner(&["make", "logarithmic", "--hyperplanes", s(&lines)]);
    assert_eq!(code, 2);
    assert!(out.contains("NotNormalCrossing"));
}

#[test]
fn modular_field() {
    let dir = TempDir::new().unwrap();
    let lines = save(&dir, "six.json", SIX_LINES);
    let f = make(&dir, "log.json", &["logarithmic", "--hyperplanes", s(&lines)]);
    let r = report(&["invariant", s(&f), "--field", "fp:1000000007"]);
    assert_eq!(r["w"], 6);
    assert_eq!(r["field"], "fp:1000000007");
    // 32003 divides the certificate of this tensor; the rational check overrules it.
    let t = save(
        &dir,
        "t.json",
        r#"{"dims":[3,2,2],"entries":[[["1","0"],["0","0"]],[["0","32003"],["1","0"]],[["0","0"],["0","1"]]]}"#,
    );
    let q = report(&["hyperdet", s(&t)]);
    let p = report(&["hyperdet", s(&t), "--field", "fp:32003"]);
    assert_eq!(q["nonzero"], p["nonzero"]);
    if p["certificate"] == "0" {
        assert_eq!(p["reverified_over_rational"], true);
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = make(&dir, "r.json", &["random", "--n", "2", "--k", "3", "--seed", "3"]);
    let again = make(&dir, "r2.json", &["random", "--n", "2", "--k", "3", "--seed", "3"]);
    assert_eq!(std::fs::read(&f).unwrap(), std::fs::read(&again).unwrap());
    let a = steiner(&["unstable", s(&f), "--seed", "5"]);
    let b = steiner(&["unstable", s(&f), "--seed", "5"]);
    assert_eq!(a, b);
    let text = std::fs::read_to_string(&f).unwrap();
    let copy = make(&dir, "copy.json", &["identity", "--n", "1", "--k", "2"]);
    let (_, reread) = steiner(&["gale", s(&copy)]);
    let (_, twice) = steiner(&["gale", s(&save(&dir, "g.json", &reread))]);
    assert_eq!(twice, std::fs::read_to_string(&copy).unwrap());
    assert!(text.ends_with("]}\n"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_steiner");
    let ok = Command::new(bin).args(["modulidim", "--n", "2", "--k", "3", "--i", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "{\"dimension\":12,\"field\":\"rational\",\"seed\":0}\n");
    let bad = Command::new(bin).args(["check", "/nonexistent.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
