use std::fs;
use std::path::Path;

use njordan::cli::run;

fn njordan(args: &[&str]) -> i32 {
    run(std::iter::once("njordan").chain(args.iter().copied()))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn replay_writes_a_stable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(njordan(&["replay", "--script", "thm2_2_n3", "--json", p(&a)]), 0);
    assert_eq!(njordan(&["replay", "--script", "thm2_2_n3", "--json", p(&b)]), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["final_identity"], "h(x*y*z) = H(x)*H(y)*H(z)");
}

#[test]
fn noncommutative_replay_trace_has_all_labels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let code = njordan(&["replay", "--script", "thm2_5_step1", "--json", p(&out)]);
    assert!(code == 0 || code == 1);
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    let labels: Vec<&str> = v["assertions"].as_array().unwrap().iter().map(|a| a["label"].as_str().unwrap()).collect();
    for l in ["(7)", "(8)", "(9)", "(10)", "(11)", "(12)", "(13)", "(14)", "(15)", "(17)", "(18)", "final"] {
        assert!(labels.contains(&l), "{l}");
    }
    assert_eq!(code, if v["passed"].as_bool().unwrap() { 0 } else { 1 });
}

#[test]
fn certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let args = ["consequence", "--n", "3", "--mode", "c", "--target", "h(x*y*z)=H(x)*H(y)*H(z)", "--cert", p(&cert)];
    assert_eq!(njordan(&args), 0);
    let text = fs::read_to_string(&cert).unwrap();
    assert_eq!(njordan(&["verify-cert", p(&cert)]), 0);

    let again = dir.path().join("again.json");
    let mut args2 = args;
    args2[8] = p(&again);
    assert_eq!(njordan(&args2), 0);
    assert_eq!(text, fs::read_to_string(&again).unwrap());

    let tampered = dir.path().join("tampered.json");
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["instances"][0]["coeff"] = "7/1".into();
    fs::write(&tampered, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(njordan(&["verify-cert", p(&tampered)]), 1);

    let truncated = dir.path().join("truncated.json");
    fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(njordan(&["verify-cert", p(&truncated)]), 2);
    assert_eq!(njordan(&["verify-cert", p(&dir.path().join("missing.json"))]), 2);
}

#[test]
fn not_in_span_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let cert = dir.path().join("c.json");
    let code = njordan(&[
        "consequence",
        "--n",
        "2",
        "--vars",
        "x,y,z",
        "--coeff-range",
        "2",
        "--target",
        "h(x*y)=H(x)*H(y)",
        "--cert",
        p(&cert),
        "--json",
        p(&report),
    ]);
    assert_eq!(code, 1);
    assert!(!cert.exists());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["result"], "NotInSpan");
}

#[test]
fn guards_and_usage() {
    assert_eq!(njordan(&["consequence", "--n", "2", "--coeff-range", "3", "--target", "h(x*y)=H(x)*H(y)"]), 2);
    assert_eq!(njordan(&["consequence", "--n", "2", "--field", "GF(4)", "--target", "h(x*y)=H(x)*H(y)"]), 2);
    assert_eq!(njordan(&["search", "--domain", "zm:11", "--n", "3"]), 2);
    assert_eq!(njordan(&["search", "--domain", "zm:5", "--n", "3", "--predicate", "bogus"]), 2);
    assert_eq!(njordan(&["norm", "--check", "contractive", "--m", "9"]), 2);
    assert_eq!(njordan(&["frobnicate"]), 2);
}

#[test]
fn search_with_expectations() {
    assert_eq!(njordan(&["search", "--domain", "zm:5^2", "--n", "3", "--expect-none"]), 0);
    assert_eq!(njordan(&["search", "--domain", "mat:2x2@2", "--n", "2", "--limit", "1", "--expect-none"]), 1);
    assert_eq!(njordan(&["--threads", "3", "search", "--domain", "mat:2x2@2", "--n", "2", "--limit", "1"]), 0);
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |out: &Path| {
        vec![
            "search",
            "--domain",
            "mat:2x2@2",
            "--n",
            "3",
            "--predicate",
            "njordan",
            "--samples",
            "200",
            "--seed",
            "4",
            "--json",
        ]
        .into_iter()
        .chain([p(out)])
        .map(String::from)
        .collect::<Vec<_>>()
    };
    for out in [&a, &b] {
        let v = args(out);
        assert_eq!(njordan(&v.iter().map(String::as_str).collect::<Vec<_>>()), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn examples_and_norm_reports() {
    let dir = tempfile::tempdir().unwrap();
    let ex = dir.path().join("ex.json");
    assert_eq!(njordan(&["examples", "--all", "--json", p(&ex)]), 0);
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&ex).unwrap()).unwrap();
    assert_eq!(v["nilpotent_algebra"]["nilpotency_index"], 4);
    let norm = dir.path().join("norm.json");
    assert_eq!(njordan(&["norm", "--m", "3", "--k", "3", "--maps", "200", "--json", p(&norm)]), 0);
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&norm).unwrap()).unwrap();
    assert_eq!(v["contractive"]["injected_rejected"], true);
    assert_eq!(v["seed"], 0);
}
