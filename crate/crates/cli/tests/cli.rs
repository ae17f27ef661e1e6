use std::path::Path;
use std::process::{Command, Output};

use kmfaces_cli::{selftest, RunConfig};

fn kmfaces(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmfaces"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        &["--gcm", "a2", "algebra"][..],
        &["--gcm", "a1", "inequalities"],
        &["--gcm", "a2", "irredundant"],
        &["--gcm", "a2", "member", "1,0", "0,1", "1,1"],
        &["--gcm", "a2", "--levi", "1", "face", "s0", "s0", "s1s0"],
    ] {
        let o = kmfaces(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn table_format_leads_with_a_summary() {
    let o = kmfaces(&["--gcm", "a2", "--format", "table", "algebra"]);
    assert_eq!(stdout(&o).lines().next(), Some("finite, dim h = 2, dim E = 6"));
    let o = kmfaces(&["--gcm", "affine_a1", "--format", "table", "algebra"]);
    assert_eq!(stdout(&o).lines().next(), Some("affine, dim h = 3, dim E = 8"));
    let o = kmfaces(&["--gcm", "affine_a1", "--format", "table", "inequalities"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with("complete up to l(v) <= 3"));
}

#[test]
fn starved_face_search_is_inconclusive() {
    let o = kmfaces(&["--gcm", "affine_a1", "--levi", "1", "--max-tests", "1", "face", "s0", "e", "s0"]);
    assert_eq!(code(&o), 2);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["report"]["verdict"], "budget_exhausted");
}

#[test]
fn usage_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"size": 2, "matrix": [[2, 1], [-1, 2]]}"#).unwrap();
    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{\"size\": 2,").unwrap();
    let asym = dir.path().join("asym.json");
    std::fs::write(&asym, r#"{"size": 3, "matrix": [[2,-1,-1],[-2,2,-1],[-1,-1,2]]}"#).unwrap();
    for args in [
        vec!["--gcm", bad.to_str().unwrap(), "algebra"],
        vec!["--gcm", garbled.to_str().unwrap(), "algebra"],
        vec!["--gcm", asym.to_str().unwrap(), "algebra"],
        vec!["--gcm", "no_such_algebra", "algebra"],
        vec!["algebra"],
        vec!["--gcm", "a2", "frobnicate"],
        vec!["--gcm", "a2", "--depth", "0", "algebra"],
        vec!["--gcm", "a2", "--levi", "7", "algebra"],
        vec!["--gcm", "a2", "member", "1,x", "0,1", "1,1"],
        vec!["--gcm", "a2", "member", "-1,0", "0,1", "0,0"],
        vec!["--gcm", "a2", "face", "s1", "e", "s1s1"],
        vec!["--gcm", "affine_a1", "irredundant"],
    ] {
        let o = kmfaces(&args);
        assert_eq!(code(&o), 3, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["--gcm", "affine_a1", "--levi", "1", "--seed", "11", "face", "s0", "e", "s0"];
    let a = kmfaces(&args);
    let b = kmfaces(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains('.'), "no floating point in reports");
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        gcm: Some("a2".into()),
        levi: Some("maximal:0".into()),
        height: Some(2),
        seed: 5,
        ..RunConfig::default()
    };
    let path = dir.path().join("run.json");
    std::fs::write(&path, cfg.to_json()).unwrap();
    let from_file = kmfaces(&["--config", path.to_str().unwrap(), "face", "s0", "e", "s0"]);
    let from_flags = kmfaces(&["--gcm", "a2", "--levi", "maximal:0", "--height", "2", "--seed", "5", "face", "s0", "e", "s0"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, from_flags.stdout);

    let out = dir.path().join("out.json");
    let o = kmfaces(&["--config", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "inequalities"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"count\": 12"));

    std::fs::write(&path, r#"{"gcm": "a2", "depht": 3}"#).unwrap();
    assert_eq!(code(&kmfaces(&["--config", path.to_str().unwrap(), "algebra"])), 3);
}

#[test]
fn bundled_goldens_reproduce() {
    let results = selftest::check_goldens(&RunConfig::default()).unwrap();
    assert_eq!(results.len(), 4);
    for r in results {
        assert!(r.diff.is_none(), "{}: {:?}", r.file, r.diff);
    }
}

#[test]
fn corrupted_golden_reports_a_diff() {
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/golden");
    for e in std::fs::read_dir(&src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    let target = dir.path().join("a1_inequalities.json");
    let text = std::fs::read_to_string(&target).unwrap().replace("\"count\": 3", "\"count\": 4");
    std::fs::write(&target, text).unwrap();
    let cfg = RunConfig {
        golden: Some(dir.path().to_path_buf()),
        ..RunConfig::default()
    };
    let results = selftest::check_goldens(&cfg).unwrap();
    let bad: Vec<_> = results.iter().filter(|r| r.diff.is_some()).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].file, "a1_inequalities.json");
    assert!(bad[0].diff.as_ref().unwrap().contains("count"));
}

#[test]
fn member_reports_agreement() {
    let o = kmfaces(&["--gcm", "a1", "member", "2", "3", "6"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["screen"]["satisfied"], false);
    assert_eq!(r["agreement"], "agree");
    let o = kmfaces(&["--gcm", "affine_a1", "member", "1,1", "2,0,1", "3,1,1"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["search"]["status"], "member");
    assert_eq!(r["agreement"], "agree");
    assert_eq!(code(&o), 0);
}

#[test]
fn selftest_exit_codes() {
    let o = kmfaces(&["--format", "table", "selftest"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 9);

    let dir = tempfile::tempdir().unwrap();
    let missing = kmfaces(&["--golden", dir.path().to_str().unwrap(), "selftest"]);
    assert_eq!(code(&missing), 3);
}

#[test]
fn spec_style_examples() {
    // sl2 (1, 1, 3): the (e, e, e) inequality fails and nothing is found.
    let o = kmfaces(&["--gcm", "a1", "member", "1", "1", "3"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let v = &r["screen"]["violations"][0]["inequality"];
    assert_eq!((&v["w1"], &v["w2"], &v["v"]), (&json_empty(), &json_empty(), &json_empty()));
    assert_eq!(r["search"]["status"], "not_up_to");
    assert_eq!(code(&o), 0);

    // (ρ, ρ, 2ρ − α_0) in A2.
    let o = kmfaces(&["--gcm", "a2", "member", "1,1", "1,1", "0,3"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["search"]["n"], 1);
    assert_eq!(r["screen"]["satisfied"], true);

    // sl2 (s, e, s) on the Borel.
    let o = kmfaces(&["--gcm", "a1", "face", "s0", "e", "s0"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["report"]["d_expected"], 2);
    assert_eq!(r["report"]["rank_found"], 2);

    // B2 with Δ(P) = {α_0}: n = 2 is not a face of the list.
    let o = kmfaces(&["--gcm", "b2", "--levi", "0", "face", "s1", "s1", "s0s1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("is 2, not 1"));
}

fn json_empty() -> serde_json::Value {
    serde_json::json!([])
}

#[test]
fn starved_selftest_is_inconclusive() {
    let o = kmfaces(&["--max-tests", "1", "--format", "table", "selftest"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    assert!(stdout(&o).contains("criterion 7 [affine face probe] INCONCLUSIVE"));
}
