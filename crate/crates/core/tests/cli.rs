use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dqrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqrb")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.json", r#"{"entries":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#);
    let id = write(&dir, "id.json", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]");
    let out = dqrb(&["verify", s(&zero), "--weight", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("ROTA-BAXTER"));

    let out = dqrb(&["verify", s(&id), "--weight", "0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("witness: (e0, e0)"), "{}", stdout(&out));

    // identity is Rota–Baxter of weight −1
    assert_eq!(code(&dqrb(&["verify", s(&id), "--weight", "-1"])), 0);
}

#[test]
fn verify_weighted_row_instance_is_rejected_by_the_defect() {
    // first row (−1, 2, 3, 4) at weight 1: R(e1)R(e1) = 4·e0 while the
    // remaining terms give 8·e0, a defect of −4·e0 at (e1, e1)
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"[["-1","2","3","4"],[0,0,0,0],[0,0,0,0],[0,0,0,0]]"#);
    let out = dqrb(&["verify", s(&m), "--weight", "1", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rota_baxter"], false);
    assert_eq!(v["witness"]["i"], 1);
    assert_eq!(v["witness"]["j"], 1);
    assert_eq!(v["witness"]["defect"]["coords"][0], "-4");
}

#[test]
fn malformed_input_is_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "[[1,2],[3,4]]");
    assert_eq!(code(&dqrb(&["verify", s(&bad)])), 2);
    let zero = write(&dir, "zero.json", "[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]");
    assert_eq!(code(&dqrb(&["verify", s(&zero), "--weight", "sym"])), 2);
    assert_eq!(code(&dqrb(&["verify", s(&zero), "--weight", "1/0"])), 2);
    assert_eq!(code(&dqrb(&["generate", "--weight", "x"])), 2);
    assert_eq!(code(&dqrb(&["reduce", "/nonexistent/system.txt"])), 2);
    assert_eq!(code(&dqrb(&["reduce", s(&zero), "--order", "deglex"])), 2);
    assert_eq!(code(&dqrb(&["frobnicate"])), 2);
}

#[test]
fn classify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let block = write(&dir, "b.json", r#"[[0,0,0,0],[0,0,1,"1/2"],[0,0,-2,-1],[0,0,4,2]]"#);
    let out = dqrb(&["classify", s(&block), "--weight", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("W0_BlockFamily(d=1, e=2, f=4)"));

    let id = write(&dir, "id.json", "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]");
    assert_eq!(code(&dqrb(&["classify", s(&id)])), 1);

    let a34 = write(&dir, "a34.json", "[[0,0,0,0],[0,0,0,0],[0,0,0,1],[0,0,0,0]]");
    let out = dqrb(&["classify", s(&a34), "--format", "json"]);
    assert_eq!(code(&out), 4);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "outside_known_families");
}

#[test]
fn generate_systems() {
    let out = dqrb(&["generate", "--weight", "sym"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 64);
    assert_eq!(lines[0], "(0,0,e0): a11^2 + a11*l + 2*a12*a21 + 2*a13*a31 + 2*a14*a41");

    let zero = stdout(&dqrb(&["generate", "--weight", "0"]));
    assert!(!zero.lines().filter(|l| !l.starts_with('#')).any(|l| l.contains('l')));

    let fixed = stdout(&dqrb(&["generate", "--weight", "3/2"]));
    assert!(fixed.contains("(0,1,e1): a22^2 + a23*a32 + a24*a42 + 3/2*a22\n"));
}

#[test]
fn reduce_round_trips_through_json() {
    let dir = TempDir::new().unwrap();
    let sys = dir.path().join("w0.json");
    assert_eq!(code(&dqrb(&["generate", "--weight", "0", "--format", "json", "--out", s(&sys)])), 0);
    let basis = dir.path().join("basis.json");
    assert_eq!(code(&dqrb(&["reduce", s(&sys), "--format", "json", "--out", s(&basis)])), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&basis).unwrap()).unwrap();
    assert!(v["order"].as_str().unwrap().starts_with("grevlex(a11>a12>"));
    assert_eq!(v["polys"].as_array().unwrap().len(), 64);
    // a basis reduces to itself
    let again = dqrb(&["reduce", s(&basis), "--format", "json"]);
    assert_eq!(code(&again), 0);
    let w: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v["polys"], w["polys"]);
}

#[test]
fn reduce_small_and_empty() {
    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.txt", "a11\n");
    let out = dqrb(&["reduce", s(&one)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("g1: a11\n"));

    let empty = write(&dir, "empty.txt", "# nothing here\n\n");
    assert_eq!(code(&dqrb(&["reduce", s(&empty)])), 2);

    let broken = write(&dir, "broken.txt", "p1: a11 + \np2: a11*b7\n");
    let out = dqrb(&["reduce", s(&broken)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1") && err.contains("line 2"), "{err}");
}

#[test]
fn reduce_limits_exit_3() {
    let dir = TempDir::new().unwrap();
    let sys = dir.path().join("w0.txt");
    dqrb(&["generate", "--weight", "0", "--out", s(&sys)]);
    let out = dqrb(&["reduce", s(&sys), "--max-pairs", "3"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8(out.stderr).unwrap().contains("pairs created"));
    assert_eq!(code(&dqrb(&["reduce", s(&sys), "--max-degree", "2"])), 3);
}

#[test]
fn audit_reports() {
    let out = dqrb(&["audit", "--weight", "0", "--grid", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("zero_operator: 1"));

    let out = dqrb(&["audit", "--weight", "1", "--grid", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["solutions"], 2);
    assert_eq!(v["zero_operator"]["matches_weighted_row_form"], false);
    assert_eq!(code(&dqrb(&["audit", "--grid", ""])), 2);
}

#[test]
fn selftest_passes_and_detects_a_corrupted_table() {
    let a = dqrb(&["selftest"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let b = dqrb(&["selftest"]);
    assert_eq!(a.stdout, b.stdout);

    let mut table = dualquat_rb::StructureTable::dual_quaternion();
    table.set(1, 1, 0, dualquat_rb::Scalar::one());
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "table.json", &serde_json::to_string(&table).unwrap());
    let out = dqrb(&["selftest", "--table", s(&path)]);
    assert_ne!(code(&out), 0);
    assert!(stdout(&out).contains("FAIL   mandatory algebra axioms"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["generate", "--weight", "sym"][..], &["generate", "--weight", "0", "--format", "json"][..]] {
        assert_eq!(dqrb(args).stdout, dqrb(args).stdout);
    }
}
