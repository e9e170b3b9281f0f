use std::hash::{DefaultHasher, Hash, Hasher};
use std::path::PathBuf;
use std::process::{Command, Output};

fn grtor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grtor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn digest(bytes: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}

#[test]
fn check_d2_passes_with_exit_zero() {
    let o = grtor(&["bar", "check-d2", "--n-max", "6", "--r-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with("PASS")).count(), 18);
    assert!(!out.contains("FAIL"));
}

#[test]
fn tor_of_dual_abelianization() {
    let o = grtor(&["tor", "--functor", "dual(id)", "--r", "0", "--degrees", "0..3", "--ring", "z", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let groups = v["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 4);
    assert_eq!(groups[0]["free_rank"], 1);
    assert_eq!(groups[0]["torsion"].as_array().unwrap().len(), 0);
    assert_eq!(groups[1]["free_rank"], 0);
    assert_eq!(groups[1]["torsion"].as_array().unwrap().len(), 0);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = grtor(&["tor", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn engine_errors_exit_two() {
    let o = grtor(&["stable-h1", "--functor", "const(1)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = grtor(&["tor", "--functor", "id"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_verdict_exits_one() {
    let o = grtor(&["xi", "verify", "--x", "hom-zmod2", "--ring", "fp:2", "--max-rank", "1", "--random", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("(3) FAIL"), "{out}");
    assert!(out.contains("tau=(x1*x2) : 1 -> 2"), "{out}");
}

#[test]
fn suite_subset_passes() {
    let o = grtor(&["suite", "--only", "1,5,10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
}

#[test]
fn json_is_deterministic_across_runs_and_schedules() {
    let args = ["gcat", "random", "--cases", "40", "--seed", "7", "--json"];
    let mut digests = Vec::new();
    for (k, extra) in [None, None, Some("--sequential")].into_iter().enumerate() {
        let path = scratch(&format!("det{k}.json"));
        let mut a: Vec<&str> = args.to_vec();
        let p = path.to_str().unwrap().to_owned();
        a.push(&p);
        a.extend(extra);
        assert_eq!(grtor(&a).status.code(), Some(0));
        digests.push(digest(&std::fs::read(&path).unwrap()));
    }
    assert!(digests.windows(2).all(|w| w[0] == w[1]), "{digests:?}");
}

#[test]
fn manifest_and_csv_are_written() {
    let (m, c) = (scratch("run.manifest.json"), scratch("cells.csv"));
    let o = grtor(&[
        "bar",
        "check-d2",
        "--n-max",
        "3",
        "--r-max",
        "1",
        "--manifest",
        m.to_str().unwrap(),
        "--csv",
        c.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(&m).unwrap()).unwrap();
    assert_eq!(manifest["command"], "bar");
    assert_eq!(manifest["seed"], 0);
    assert!(manifest["wall_time_secs"].is_number());
    let csv = std::fs::read_to_string(&c).unwrap();
    assert_eq!(csv.lines().next(), Some("n,r,verdict,residue_terms"));
    assert_eq!(csv.lines().count(), 1 + 6);
}

#[test]
fn coend_reports_the_stabilization_witness() {
    let o = grtor(&["coend", "--left", "dual(id)", "--right", "id", "--n-min", "2", "--n-max", "4", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stable_at"], 3);
    assert_eq!(v["value"]["free_rank"], 1);
}
