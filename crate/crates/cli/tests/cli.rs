use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mvduality::algebra::FiniteMVAlgebra;
use mvduality::geometry::{poly_equal, Point, Polyhedron, Simplex};
use mvduality::json::Json;
use mvduality::mcnaughton::{PlFunction, ZMap};
use mvduality::rational::{self, rat};
use serde_json::{json, Value};
use tempfile::TempDir;

fn mvdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvdual")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = mvdual(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn doc(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    mvdual(args).status.code().unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, v.to_string()).unwrap();
    format!("@{}", path.display())
}

#[test]
fn variety_example() {
    let text = ok(&["variety", "--arity", "1", "--rel", "x0(+)x0=1"]);
    let p = Polyhedron::from_json_str(&text).unwrap();
    let expected = Simplex::new(vec![Point::from_ratios(&[(1, 2)]), Point::from_ratios(&[(1, 1)])]).unwrap();
    assert!(poly_equal(&p, &Polyhedron::new(1, vec![expected]).unwrap()).unwrap());
}

#[test]
fn tautologies() {
    assert_eq!(doc(&["taut", "~x0 (+) x0"]), json!("TAUTOLOGY"));
    assert_eq!(ok(&["taut", "~x0 (+) x0", "--format", "text"]), "TAUTOLOGY\n");
    assert_eq!(doc(&["taut", "x0 \\/ ~x0"]), json!("NOT A TAUTOLOGY"));
    assert_eq!(doc(&["equiv", "x0 & x1", "~(~x0 (+) ~x1)"])["equivalent"], json!(true));
    assert_eq!(doc(&["equiv", "x0", "x0 & x0"])["equivalent"], json!(false));
}

#[test]
fn tensor_spectrum_example() {
    let d = doc(&["tensor-spectrum", "--chain", "2", "--chain", "2"]);
    let points = d["spectrum"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    let coords = points[0].as_array().unwrap();
    assert_eq!(coords.len(), 9);
    let values: BTreeSet<_> = coords.iter().map(|c| rational::parse(c.as_str().unwrap()).unwrap()).collect();
    assert_eq!(values, BTreeSet::from([rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)]));
    assert_eq!(d["injective"], json!(true));
}

#[test]
fn terms() {
    let d = doc(&["parse", "x0 -> x1 & ~x2"]);
    assert_eq!(d["arity"], json!(3));
    assert_eq!(d["core"], json!("~x0 (+) ~(~x1 (+) ~~x2)"));
    assert_eq!(doc(&["eval", "x0 (+) x1", "--at", "1/2,1/3"]), json!("5/6"));
    assert_eq!(code(&["eval", "x1", "--at", "1/2"]), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["parse", "x0 $"]), 2);
    assert_eq!(code(&["eval", "x0", "--at", "one"]), 2);
    assert_eq!(code(&["variety"]), 2);
    assert_eq!(code(&["check-hom", "{\"source\":"]), 2);
    assert_eq!(code(&["check-hom", "@/nonexistent/hom.json"]), 2);
    assert_eq!(code(&["tensor-spectrum", "--chain", "2"]), 2);
    let ill = r#"{"source":{"arity":1,"relations":[["x0","~x0"]]},"target":{"arity":1,"relations":[]},"images":["x0"]}"#;
    assert_eq!(doc(&["check-hom", ill])["well_defined"], json!(false));
    let out = mvdual(&["dual-hom", ill]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not well defined"));
}

#[test]
fn malformed_json_reports_location() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"dim\": 1,\n  \"simplices\": [\n").unwrap();
    let out = mvdual(&["germ-in-poly", "--poly", &format!("@{}", path.display()), "--germ", "{}"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn functions_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let compiled = doc(&["compile", "(x0 (+) x0) /\\ ~x0"]);
    let f = PlFunction::from_json(&compiled).unwrap();
    assert_eq!(f.to_json(), compiled);
    let file = write(dir.path(), "f.json", &compiled);
    assert_eq!(doc(&["pl-equal", &file, "(x0 (+) x0) /\\ ~x0"])["equal"], json!(true));
    assert_eq!(doc(&["pl-equal", &file, "x0"])["equal"], json!(false));
}

#[test]
fn output_file_and_determinism() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("out.json");
    let args = ["compile", "x0 & x1 \\/ ~x0", "--out", path.to_str().unwrap()];
    assert_eq!(ok(&args), "");
    let first = fs::read(&path).unwrap();
    ok(&args);
    assert_eq!(fs::read(&path).unwrap(), first);
    assert_eq!(ok(&["spectrum", "--chain", "3", "--chain", "2"]), ok(&["spectrum", "--chain", "3", "--chain", "2"]));
}

#[test]
fn ideals_and_radicals() {
    assert_eq!(doc(&["in-ideal", "--arity", "1", "--rel", "x0 = ~x0", "x0 (+) x0 = 1"])["in_ideal"], json!(true));
    assert_eq!(doc(&["in-ideal", "--arity", "1", "x0 = ~x0"])["in_ideal"], json!(false));
    let a = r#"{"arity":1,"relations":[["x0","~x0"]]}"#;
    let b = r#"{"arity":1,"relations":[["x0 (+) x0","1"],["~x0 (+) ~x0","1"]]}"#;
    assert_eq!(doc(&["rad-eq", a, b])["radical_equal"], json!(true));
    assert_eq!(doc(&["rad-eq", a, r#"{"arity":1,"relations":[]}"#])["radical_equal"], json!(false));
}

#[test]
fn homomorphisms() {
    let dir = TempDir::new().unwrap();
    let hom = json!({
        "source": {"arity": 2, "relations": []},
        "target": {"arity": 3, "relations": [["x0", "x1"]]},
        "images": ["x0 (+) x1", "~x2"],
    });
    let file = write(dir.path(), "hom.json", &hom);
    assert_eq!(doc(&["check-hom", &file])["well_defined"], json!(true));
    let dual = ZMap::from_json(&doc(&["dual-hom", &file])).unwrap();
    assert_eq!((dual.source_dim(), dual.target_dim()), (3, 2));
    assert_eq!(dual.apply(&Point::from_ratios(&[(1, 4), (1, 4), (1, 3)])).unwrap(), Point::from_ratios(&[(1, 2), (2, 3)]));

    let fz = doc(&["factor", &file, "--hom", "--select", "1"]);
    assert_eq!(fz["coords"], json!([2]));
    assert_eq!(fz["verified"], json!(true));
    let dual_file = write(dir.path(), "dual.json", &dual.to_json());
    let all = doc(&["factor", &dual_file]);
    assert_eq!(all["coords"], json!([0, 1, 2]));
    assert_eq!(all["verified"], json!(true));
    assert_eq!(code(&["factor", &dual_file, "--select", "5"]), 1);
}

#[test]
fn finite_algebras() {
    let dir = TempDir::new().unwrap();
    assert_eq!(doc(&["spectrum", "--chain", "1", "--chain", "1"])["points"].as_array().unwrap().len(), 2);
    let cop = doc(&["coproduct-spectrum", "--chain", "2", "--chain", "2"]);
    assert_eq!(cop["labels"][0], json!("A:(0)"));
    let cop_file = write(dir.path(), "cop.json", &cop);
    let alg = FiniteMVAlgebra::from_json(&doc(&["algebra-of-spectrum", &cop_file])).unwrap();
    assert_eq!(alg.len(), 3);
    let ts = doc(&["tensor-spectrum", "--chain", "2", "--chain", "2"]);
    let file = write(dir.path(), "ts.json", &ts["spectrum"]);
    assert_eq!(FiniteMVAlgebra::from_json(&doc(&["algebra-of-spectrum", &file])).unwrap().len(), 5);

    let algebra = write(dir.path(), "c2.json", &doc(&["algebra-of-spectrum", &cop_file]));
    let good = "0,0,0,0,1/4,1/2,0,1/2,1";
    let check = doc(&["tensor-relations-check", "--chain", "2", "--chain", "2", "--point", good]);
    assert_eq!(check["relations_satisfied"], json!(true));
    assert_eq!(check["split"], json!([["0/1", "1/2", "1/1"], ["0/1", "1/2", "1/1"]]));
    let bad = "0,0,0,0,0,1/2,0,1/2,1";
    let check = doc(&["tensor-relations-check", "--chain", "2", "--algebra", &algebra, "--point", bad]);
    assert_eq!(check["relations_satisfied"], json!(false));
    assert_eq!(check["split"], Value::Null);
}

#[test]
fn tangents() {
    let dir = TempDir::new().unwrap();
    let germ = write(dir.path(), "g.json", &json!({"base": ["0", "0"], "coeffs": [["1", "1"], ["1", "0"]], "i0": 2}));
    let u = doc(&["tangent-extract", &germ, "--k", "2"]);
    assert_eq!(u["directions"], json!([["1/1", "1/1"], ["1/2", "-1/2"]]));
    assert_eq!(code(&["tangent-extract", &germ, "--k", "3"]), 1);

    let segment = write(dir.path(), "x.json", &json!({"dim": 2, "simplices": [[["0", "0"], ["1", "0"]]]}));
    assert_eq!(doc(&["germ-in-poly", "--poly", &segment, "--germ", &germ])["in_polyhedron"], json!(false));
    let flat = write(dir.path(), "flat.json", &json!({"base": ["0", "0"], "coeffs": [["1", "0"]], "i0": 1}));
    assert_eq!(doc(&["germ-in-poly", "--poly", &segment, "--germ", &flat])["in_polyhedron"], json!(true));

    let up = write(dir.path(), "u.json", &json!({"base": ["0", "0"], "directions": [["0", "1"]]}));
    let w = |face: Value, lambda: &str| json!({"S": [["0", "0"], ["0", "1/2"]], "F": face, "lambda": [lambda]});
    let good = write(dir.path(), "w.json", &w(json!([0]), "1/2"));
    let c = doc(&["outgoing-verify", "--poly", &segment, "--tangent", &up, "--witness", &good]);
    assert_eq!(c, json!({"chain_in_simplex": true, "chain_leaves_face": true, "same_trace": true, "outgoing": true}));
    let far = write(dir.path(), "w2.json", &w(json!([0]), "1"));
    let c = doc(&["outgoing-verify", "--poly", &segment, "--tangent", &up, "--witness", &far]);
    assert_eq!(c["chain_in_simplex"], json!(false));
    assert_eq!(c["outgoing"], json!(false));

    let c = doc(&["outgoing-check", "--poly", &segment, "--germ", &flat, "--k", "1", "--witness", &good]);
    assert_eq!(c["outgoing"], json!(false));
}

#[test]
fn falsification_is_seeded() {
    let args = ["poly-falsify", "--polys", "2", "--cases", "15", "--seed", "3"];
    let d = doc(&args);
    assert_eq!(d["cases"], json!(30));
    assert_eq!(d["counterexamples"], json!([]));
    assert_eq!(ok(&args), ok(&args));
    assert_eq!(code(&["poly-falsify", "--dim", "1"]), 2);
}
