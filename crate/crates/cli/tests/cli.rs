use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const EXAMPLE_POINTS: &str =
    r#"{"dimension":2,"points":[[-1,-1],[0,-1],[1,-1],[-1,0],[0,0],[1,0],[-1,1],[-1,2]]}"#;
const UNIFORM: &str = r#"{"uniform":true}"#;

fn dop(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dop")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn example(dir: &Path) {
    write(dir, "pts.json", EXAMPLE_POINTS);
    write(dir, "w.json", UNIFORM);
}

#[test]
fn staircase_prints_block_sizes() {
    let dir = TempDir::new().unwrap();
    example(dir.path());
    let out = dop(dir.path(), &["--out", "st.json", "staircase", "pts.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("r = (1, 2, 3, 2), |Λ| = 8"));
    assert_eq!(json(dir.path().join("st.json"))["indices"].as_array().unwrap().len(), 8);
}

#[test]
fn staircase_small_sets() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.json", r#"{"dimension":2,"points":[[0,0],[1,0],[0,1],[-1,0]]}"#);
    let out = dop(dir.path(), &["--out", "s.json", "staircase", "a.json"]);
    assert_eq!(code(&out), 0);
    let idx = json(dir.path().join("s.json"))["indices"].clone();
    assert_eq!(idx, serde_json::json!([[0, 0], [1, 0], [0, 1], [2, 0]]));

    write(dir.path(), "one.json", r#"{"dimension":3,"points":[["1/2",2,-7]]}"#);
    let out = dop(dir.path(), &["--out", "one.out.json", "staircase", "one.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(dir.path().join("one.out.json"))["indices"], serde_json::json!([[0, 0, 0]]));
}

#[test]
fn construct_prints_the_example_basis() {
    let dir = TempDir::new().unwrap();
    example(dir.path());
    let out = dop(dir.path(), &["--out", "b.json", "construct", "pts.json", "w.json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("P_1^1 = 3 + 12x + 22y"));
    assert!(text.contains("P_1^3 = -9x - 50y + 9x^2 - 12xy - 30y^2 + 12x^2y + 20y^3"));
}

#[test]
fn construct_orthonormal_sibling() {
    let dir = TempDir::new().unwrap();
    example(dir.path());
    let out = dop(dir.path(), &["--out", "b.json", "--orthonormal", "construct", "pts.json", "w.json"]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("b.orthonormal.json").exists());
}

#[test]
fn singular_signed_weights_exit_3() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "pts.json", r#"{"dimension":1,"points":[[0],[1]]}"#);
    write(dir.path(), "w.json", r#"{"values":[1,-1]}"#);
    let out = dop(dir.path(), &["construct", "pts.json", "w.json"]);
    assert_eq!(code(&out), 3);
}

fn constructed(dir: &Path) {
    example(dir);
    assert_eq!(code(&dop(dir, &["--out", "b.json", "construct", "pts.json", "w.json"])), 0);
}

#[test]
fn verify_passes_on_constructed_basis() {
    let dir = TempDir::new().unwrap();
    constructed(dir.path());
    let out = dop(dir.path(), &["--out", "rep.json", "verify", "b.json", "pts.json", "w.json"]);
    assert_eq!(code(&out), 0);
    let rep = json(dir.path().join("rep.json"));
    assert_eq!(rep["pass"], true);
    let names: Vec<&str> = rep["checks"].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(names, ["cd", "jacobi", "orthogonality", "rank", "three-term"]);
}

#[test]
fn verify_locates_a_corrupted_coefficient() {
    let dir = TempDir::new().unwrap();
    constructed(dir.path());
    let mut basis = json(dir.path().join("b.json"));
    // P_0^2 = -26 + x - 4y + 35x^2: change the constant term.
    let p = &mut basis["blocks"][2][0]["coeffs"];
    assert_eq!(p["(0,0)"], "-26");
    p["(0,0)"] = Value::from("-25");
    write(dir.path(), "bad.json", &serde_json::to_string(&basis).unwrap());
    let out = dop(dir.path(), &["--out", "rep.json", "--checks", "three-term", "verify", "bad.json", "pts.json", "w.json"]);
    assert_eq!(code(&out), 1);
    let rep = json(dir.path().join("rep.json"));
    assert_eq!(rep["pass"], false);
    let fail = &rep["checks"]["three-term"]["first_failure"];
    assert!(fail.is_object(), "report names a counterexample: {rep}");
    for key in ["k", "i", "point"] {
        assert!(!fail[key].is_null(), "missing {key} in {fail}");
    }
}

#[test]
fn verify_rank_only() {
    let dir = TempDir::new().unwrap();
    constructed(dir.path());
    let out = dop(dir.path(), &["--out", "rep.json", "--checks", "rank", "verify", "b.json", "pts.json", "w.json"]);
    assert_eq!(code(&out), 0);
    let rep = json(dir.path().join("rep.json"));
    let names: Vec<&String> = rep["checks"].as_object().unwrap().keys().collect();
    assert_eq!(names, ["rank"]);
}

#[test]
fn favard_round_trip_recovers_uniform_weights() {
    let dir = TempDir::new().unwrap();
    constructed(dir.path());
    assert_eq!(code(&dop(dir.path(), &["--out", "r.json", "recurrence", "b.json", "pts.json", "w.json"])), 0);
    assert_eq!(code(&dop(dir.path(), &["--out", "st.json", "staircase", "pts.json"])), 0);
    let out = dop(dir.path(), &["--out", "f.json", "favard", "r.json", "st.json", "--candidates", "pts.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let m = json(dir.path().join("f.measure.json"));
    let values = m["values"].as_array().unwrap();
    assert_eq!(values.len(), 8);
    assert!(values.iter().all(|v| *v == values[0]));
    assert!(dir.path().join("f.json").exists());
}

#[test]
fn favard_without_candidates_uses_the_lattice() {
    let dir = TempDir::new().unwrap();
    constructed(dir.path());
    dop(dir.path(), &["--out", "r.json", "recurrence", "b.json", "pts.json", "w.json"]);
    dop(dir.path(), &["--out", "st.json", "staircase", "pts.json"]);
    let out = dop(dir.path(), &["--out", "f.json", "--seed", "7", "favard", "r.json", "st.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn favard_rank_deficient_exit_4() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "r.json",
        r#"{"d":1,"r":[1,1],"blocks":{"A":[[[[0]]]],"B":[[[[0]]],[[[0]]]],"C":[[[]],[[[1]]]]}}"#,
    );
    write(dir.path(), "st.json", r#"{"order":"grevlex","indices":[[0],[1]]}"#);
    let out = dop(dir.path(), &["--out", "f.json", "favard", "r.json", "st.json"]);
    assert_eq!(code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
}

fn family_verifies(spec: &str, polys: usize) {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "spec.json", spec);
    let out = dop(dir.path(), &["--out", "fb.json", "family", "spec.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let basis = json(dir.path().join("fb.json"));
    let count: usize = basis["blocks"].as_array().unwrap().iter().map(|b| b.as_array().unwrap().len()).sum();
    assert_eq!(count, polys);
    let out = dop(dir.path(), &["--out", "rep.json", "verify", "fb.json", "fb.points.json", "fb.weights.json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn hahn_family_verifies() {
    family_verifies(r#"{"family":"hahn","a":0,"b":0,"N":3}"#, 4);
}

#[test]
fn triangle_family_verifies() {
    family_verifies(r#"{"family":"triangle","sigma":[0,0,0],"N":2}"#, 6);
}

#[test]
fn product_family_verifies() {
    family_verifies(
        r#"{"family":"product","x":{"family":"hahn","a":0,"b":0,"N":2},"y":{"family":"hahn","a":"1/2","b":"3/2","N":3}}"#,
        12,
    );
}

#[test]
fn product_family_recurrence_file() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "spec.json",
        r#"{"family":"product","x":{"family":"hahn","a":0,"b":0,"N":2},"y":{"family":"meixner","b":1,"c":"1/2","degree":2}}"#,
    );
    let out = dop(dir.path(), &["--out", "fb.json", "--truncation", "20", "family", "spec.json"]);
    assert_eq!(code(&out), 0);
    let rec = json(dir.path().join("fb.recurrence.json"));
    assert_eq!(rec["r"], serde_json::json!([1, 2, 3, 2, 1]));
    assert_eq!(json(dir.path().join("fb.points.json"))["points"].as_array().unwrap().len(), 3 * 21);
}

#[test]
fn invalid_family_parameter_exit_2() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "spec.json", r#"{"family":"hahn","a":-1,"b":0,"N":3}"#);
    assert_eq!(code(&dop(dir.path(), &["family", "spec.json"])), 2);
}

#[test]
fn malformed_input_exit_2() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "broken.json", "{");
    assert_eq!(code(&dop(dir.path(), &["staircase", "broken.json"])), 2);
    write(dir.path(), "dup.json", r#"{"dimension":1,"points":[[0],[0]]}"#);
    assert_eq!(code(&dop(dir.path(), &["staircase", "dup.json"])), 2);
    assert_eq!(code(&dop(dir.path(), &["staircase", "missing.json"])), 2);
}

#[test]
fn outputs_are_byte_deterministic() {
    let run = || {
        let dir = TempDir::new().unwrap();
        constructed(dir.path());
        dop(dir.path(), &["--out", "r.json", "recurrence", "b.json", "pts.json", "w.json"]);
        dop(dir.path(), &["--out", "st.json", "staircase", "pts.json"]);
        dop(dir.path(), &["--out", "f.json", "--seed", "3", "favard", "r.json", "st.json"]);
        ["b.json", "r.json", "f.json", "f.measure.json"].map(|f| fs::read(dir.path().join(f)).unwrap())
    };
    assert_eq!(run(), run());
}
