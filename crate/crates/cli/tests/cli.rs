use std::path::PathBuf;
use std::process::{Command, Output};

fn detpres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detpres"))
        .args(args)
        .env_remove("DETPRES_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn three_lines_degree_211() {
    let out = detpres(&["segre", "--dims", "1,1,1", "--multidegree", "2,1,1", "--split", "1,1,0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["dim_I2"], 33);
    assert_eq!(r["minor_count"], 36);
    assert_eq!(r["verdict"], "DET_PRESENTED");
    assert_eq!(r["omega"][0]["entries"][3][3], "y11");
}

#[test]
fn split_as_a_pair_of_classes() {
    let a = detpres(&["segre", "--dims", "1,1,1", "--multidegree", "2,1,1", "--split", "1,1,0"]);
    let b = detpres(&["segre", "--dims", "1,1,1", "--multidegree", "2,1,1", "--split", "1,1,0,1,0,1"]);
    assert_eq!(a.stdout, b.stdout);
    let bad = detpres(&["segre", "--dims", "1,1,1", "--multidegree", "2,1,1", "--split", "1,1,0,1,1,1"]);
    assert_eq!(code(&bad), 64);
}

#[test]
fn three_lines_degree_111() {
    let single = detpres(&["segre", "--dims", "1,1,1", "--multidegree", "1,1,1", "--splits", "all", "--format", "json"]);
    assert_eq!(code(&single), 1);
    let reports = json(&single);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["verdict"] == "NOT_BY_THIS_SPLIT" && r["minor_span_dim"] == 6));

    let pooled = detpres(&["segre", "--dims", "1,1,1", "--multidegree", "1,1,1", "--splits", "all", "--pool", "--format", "json"]);
    assert_eq!(code(&pooled), 0);
    let r = json(&pooled);
    assert_eq!(r["verdict"], "GENERATED_BY_MULTIPLE");
    assert_eq!(r["minor_span_dim"], 9);
}

#[test]
fn conic() {
    let out = detpres(&["segre", "--dims", "1", "--multidegree", "2", "--split", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["minor_count"], 1);
}

#[test]
fn hexagon() {
    let out = detpres(&["toric", "--points", &data("hexagon.json"), "--split", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["dim_I2"], 129);
    assert_eq!((r["omega"][0]["rows"].clone(), r["omega"][0]["cols"].clone()), (7.into(), 7.into()));

    let trivial = detpres(&["toric", "--points", &data("hexagon.json"), "--dilation", "1"]);
    assert_eq!(code(&trivial), 65);
    assert!(String::from_utf8_lossy(&trivial.stderr).contains("no nontrivial factorization"));
}

#[test]
fn toric_points_as_plain_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(&path, "[[0,0],[1,0],[0,1],[1,1]]").unwrap();
    let out = detpres(&["toric", "--points", path.to_str().unwrap(), "--dilation", "2", "--split", "1,1", "--level", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["certificate"]["ideal_equal"], true);

    std::fs::write(&path, "[[0,0],[1,1],[2,2]]").unwrap();
    let degenerate = detpres(&["toric", "--points", path.to_str().unwrap(), "--dilation", "2"]);
    assert_eq!(code(&degenerate), 65);
}

#[test]
fn grassmannian() {
    let out = detpres(&["presented", "--ring", &data("plucker.json"), "--split", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["variety"]["sections"], 20);
    assert_eq!(r["omega"][0]["entries"][1][4], "y5 + y11");
    assert_eq!(r["dim_I2"], 105);

    let o1 = detpres(&["presented", "--ring", &data("plucker.json"), "--degree", "1"]);
    assert_eq!(code(&o1), 1);
    assert!(String::from_utf8_lossy(&o1.stdout).contains("no nontrivial factorization"));

    let missing = detpres(&["presented", "--ring", &data("plucker.json")]);
    assert_eq!(code(&missing), 64);
}

#[test]
fn plane_veronese() {
    let out = detpres(&["presented", "--ring", &data("projective-plane.json"), "--split", "1", "--level", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["certificate"]["ideal_equal"], true);
    assert_eq!(r["dim_I2"], 6);
}

#[test]
fn text_and_json_agree() {
    let args = ["segre", "--dims", "1,1", "--multidegree", "2,1", "--split", "1,0"];
    let text = String::from_utf8(detpres(&args).stdout).unwrap();
    let r = json(&detpres(&[&args[..], &["--format", "json"]].concat()));
    assert!(text.contains(&format!("dim I2: {}", r["dim_I2"])));
    assert!(text.contains(&format!("minor span dim: {}", r["minor_span_dim"])));
    assert!(text.contains(&format!("verdict: {}", r["verdict"].as_str().unwrap())));
}

#[test]
fn reruns_are_identical() {
    let args = ["toric", "--points", &data("hexagon.json"), "--split", "1", "--format", "json"];
    assert_eq!(detpres(&args).stdout, detpres(&args).stdout);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = detpres(&["segre", "--dims", "1,1", "--multidegree", "1,1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["verdict"], "DET_PRESENTED");

    let unwritable = detpres(&["segre", "--dims", "1,1", "--multidegree", "1,1", "--out", "/nonexistent/dir/report"]);
    assert_eq!(code(&unwritable), 66);
    let unreadable = detpres(&["toric", "--points", "/nonexistent/points.json"]);
    assert_eq!(code(&unreadable), 66);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&detpres(&["segre", "--dims", "1,x", "--multidegree", "1,1"])), 64);
    assert_eq!(code(&detpres(&["segre", "--dims", "1"])), 64);
    assert_eq!(code(&detpres(&["segre", "--dims", "1", "--multidegree", "2", "--level", "3"])), 64);
    assert_eq!(code(&detpres(&["frobnicate"])), 64);
    assert_eq!(code(&detpres(&["segre", "--dims", "1", "--multidegree", "2", "--split", "1", "--splits", "all"])), 64);
}

#[test]
fn no_factorization() {
    let out = detpres(&["segre", "--dims", "2", "--multidegree", "1", "--splits", "all"]);
    assert_eq!(code(&out), 65);
}

#[test]
fn examples_pass() {
    let out = detpres(&["examples"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.contains("PASS")).count(), 5);
}

#[test]
fn examples_only_one_case() {
    let out = detpres(&["examples", "--only", "del-pezzo"]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.starts_with("del-pezzo"));
    assert_eq!(code(&detpres(&["examples", "--only", "no-such-case"])), 64);
}

#[test]
fn tampered_golden() {
    let dir = tempfile::tempdir().unwrap();
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden");
    for entry in std::fs::read_dir(&golden).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let target = dir.path().join("del-pezzo.json");
    let text = std::fs::read_to_string(&target).unwrap().replace("\"dim_I2\": 129", "\"dim_I2\": 128");
    std::fs::write(&target, text).unwrap();
    let out = detpres(&["examples", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let line = stdout.lines().find(|l| l.starts_with("del-pezzo")).unwrap();
    assert!(line.contains("FAIL"));
    assert!(stdout.contains("\"dim_I2\": 128"));
    assert_eq!(stdout.lines().filter(|l| l.contains("PASS")).count(), 4);
}

#[test]
fn small_sweep() {
    let out = detpres(&["sweep", "--max-factors", "3", "--max-dim", "1", "--max-degree", "2"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("dims,multidegree,hypothesis,best_split,dim_I2,span,verdict\n"));
    assert!(csv.lines().any(|l| l.starts_with("1 1,1 1,") && l.ends_with("DET_PRESENTED")));
    assert!(csv.lines().any(|l| l.starts_with("1 1 1,1 1 1,") && l.ends_with("GENERATED_BY_MULTIPLE")));
    assert_eq!(csv.lines().count(), 1 + 2 + 4 + 8);
}
