use std::path::Path;
use std::process::{Command, Output};

fn vsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsplit")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Convex K5 planarized into `dir/k5.tdraw`.
fn k5(dir: &Path) -> std::path::PathBuf {
    let g = dir.join("k5.gdraw");
    let t = dir.join("k5.tdraw");
    let o = vsplit(&["--seed", "3", "gen-random", "--kind", "random-convex", "--n", "5", "--geometric", "--output", p(&g)]);
    assert_eq!(code(&o), 0);
    let o = vsplit(&["planarize", "--input", p(&g), "--output", p(&t)]);
    assert_eq!(code(&o), 0);
    t
}

#[test]
fn planarize_reports_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k5.gdraw");
    vsplit(&["gen-random", "--kind", "random-convex", "--n", "5", "--geometric", "--output", p(&g)]);
    let o = vsplit(&["--json", "planarize", "--input", p(&g)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["crossings"], 5);
    assert_eq!(v["faces"], 12);
}

#[test]
fn decision_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let t = k5(dir.path());
    assert_eq!(code(&vsplit(&["oracle", "--problem", "split", "--input", p(&t), "--k", "1"])), 0);
    assert_eq!(code(&vsplit(&["oracle", "--problem", "split", "--input", p(&t), "--k", "0"])), 1);
    assert_eq!(code(&vsplit(&["delete-set", "--input", p(&t), "--k", "2"])), 0);
    assert_eq!(code(&vsplit(&["delete-set", "--input", p(&t), "--k", "1"])), 1);
    assert_eq!(code(&vsplit(&["oracle", "--problem", "evd", "--input", p(&t), "--k", "1"])), 1);
    assert_eq!(code(&vsplit(&["validate", "--input", p(&t)])), 0);
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.tdraw");
    assert_eq!(code(&vsplit(&["delete-set", "--input", p(&missing), "--k", "1"])), 2);
    let t = k5(dir.path());
    assert_eq!(code(&vsplit(&["delete-set", "--input", p(&t), "--k", "1", "--selector", "nope"])), 2);
    assert_eq!(code(&vsplit(&["split-one", "--input", p(&t), "--vertex", "0", "--k", "0"])), 2);
    assert_eq!(code(&vsplit(&["no-such-command"])), 2);
}

#[test]
fn broken_drawing_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("bad.tdraw");
    // vertex 2 is a crossing of degree 2
    std::fs::write(
        &t,
        "tdraw 1\nv 0 real\nv 1 real\nv 2 cross\nhe 0 twin=1 edge=0\nhe 1 twin=0 edge=0\nhe 2 twin=3 edge=1\nhe 3 twin=2 edge=1\nrot 0 0\nrot 2 1 2\nrot 1 3\ncross 2 edges=0,1\n",
    )
    .unwrap();
    let o = vsplit(&["validate", "--input", p(&t)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn split_one_report() {
    let dir = tempfile::tempdir().unwrap();
    let t = k5(dir.path());
    let out = dir.path().join("split.tdraw");
    let o = vsplit(&["split-one", "--input", p(&t), "--vertex", "0", "--k", "2", "--report", "json", "--output", p(&out)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["crossings"], 0);
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("tdraw 1"));
    let pruned = vsplit(&["split-one", "--input", p(&t), "--vertex", "0", "--k", "2", "--search", "pruned"]);
    assert_eq!(code(&pruned), 0);
    let o = vsplit(&["oracle", "--problem", "single", "--input", p(&t), "--vertex", "0", "--k", "2"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn ssre_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("r.ssre");
    let o = vsplit(&[
        "--seed", "5", "gen-random", "--kind", "random-ssre", "--n", "7", "--s", "1", "--extra", "4", "--k", "1",
        "--density", "2", "--output", p(&inst),
    ]);
    assert_eq!(code(&o), 0);
    let sol = dir.path().join("sol.tdraw");
    let a = vsplit(&["ssre", "--input", p(&inst), "--output", p(&sol)]);
    let b = vsplit(&["ssre", "--input", p(&inst), "--strategy", "reference"]);
    let c = vsplit(&["oracle", "--problem", "ssre", "--input", p(&inst)]);
    assert_eq!(code(&a), code(&c));
    assert_eq!(code(&b), code(&c));
    if code(&a) == 0 {
        let v = vsplit(&["validate", "--input", p(&sol)]);
        assert_eq!(code(&v), 0);
        let svg = dir.path().join("sol.svg");
        assert_eq!(code(&vsplit(&["export-svg", "--input", p(&inst), "--solve", "--output", p(&svg)])), 0);
        assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
    }
    let o = vsplit(&["--json", "ssre", "--input", p(&inst), "--trace-branches"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["trace"]["width"].is_number());
    assert!(v["branches"].is_array());
    let dump = dir.path().join("r.scd");
    let o = vsplit(&["validate", "--input", p(&inst), "--scd", "--dump", p(&dump)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(std::fs::read_to_string(&dump).unwrap().starts_with("scd 1"));
}

#[test]
fn generators_are_deterministic() {
    let a = vsplit(&["--seed", "9", "gen-random", "--kind", "random-perturbed", "--n", "6", "--density", "0.6"]);
    let b = vsplit(&["--seed", "9", "gen-random", "--kind", "random-perturbed", "--n", "6", "--density", "0.6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reductions_from_files() {
    let dir = tempfile::tempdir().unwrap();
    // convex K4, one crossing
    let k4 = dir.path().join("k4.tdraw");
    let o = vsplit(&["--seed", "1", "gen-random", "--kind", "random-convex", "--n", "4", "--density", "1", "--output", p(&k4)]);
    assert_eq!(code(&o), 0);
    let vc = dir.path().join("vc.tdraw");
    assert_eq!(code(&vsplit(&["gen-vc", "--input", p(&k4), "--output", p(&vc)])), 0);
    let o = vsplit(&["--json", "delete-set", "--input", p(&vc), "--minimize"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    // K4 has vertex cover number 3
    assert_eq!(v["size"], 3);

    let fc = dir.path().join("fc.ssre");
    let o = vsplit(&["gen-fc", "--input", p(&k4), "--k", "1", "--assume-unique", "--output", p(&fc)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    // no face of the convex K4 drawing meets all four vertices
    assert_eq!(code(&vsplit(&["oracle", "--problem", "facecover", "--input", p(&k4), "--k", "1"])), 1);
    assert_eq!(code(&vsplit(&["oracle", "--problem", "facecover", "--input", p(&k4), "--k", "2"])), 0);
    assert_eq!(code(&vsplit(&["ssre", "--input", p(&fc)])), 1);
    assert_eq!(code(&vsplit(&["ssre", "--input", p(&fc), "--k", "1"])), 0);
}

#[test]
fn frozen_oracle_fixtures() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let text = std::fs::read_to_string(dir.join("oracle.json")).unwrap();
    let fixtures = vsplit::oracle::read_fixtures(&text).unwrap();
    assert!(fixtures.len() >= 16);
    for f in fixtures {
        let mut args = vec!["--json"];
        args.extend(f.command.split_whitespace());
        let o = Command::new(env!("CARGO_BIN_EXE_vsplit")).args(&args).current_dir(&dir).output().unwrap();
        assert!(code(&o) <= 1, "{}: {}", f.command, String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["answer"], f.answer.as_str(), "{}", f.command);
        assert_eq!(v["witness-hash"], f.witness_hash.as_str(), "{}", f.command);
    }
}
