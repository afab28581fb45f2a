use std::process::{Command, Output};

use serde_json::Value;

fn weylchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylchar")).args(args).env_remove("WEYLCHAR_SEED").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = weylchar(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn char_reports_dimension_and_values() {
    let v = json(&["char", "--sig", "1,0,0,-1", "--u", "0.25,0,0,0"]);
    assert_eq!(v["dim"], "15");
    // Tr = |1 + i + 2|² − 1 = 9 on the adjoint representation
    assert_eq!(v["exact_trace"]["re"], "9");
    assert!((v["normalized"]["re"].as_f64().unwrap() - 0.6).abs() < 1e-12);
    let v = json(&["char", "--sig", "0,0", "--u", "0,0"]);
    assert_eq!(v["normalized"]["re"].as_f64(), Some(1.0));
}

#[test]
fn moments_examples() {
    let v = json(&["moments", "--sig", "1,0,0,0", "--r", "4"]);
    assert_eq!((v["m2"].as_str(), v["m4"].as_str(), v["equal"].as_bool()), (Some("1"), Some("1"), Some(true)));
    let v = json(&["moments", "--sig", "0,0,0,0", "--r", "4"]);
    assert_eq!((v["m2"].as_str(), v["m4"].as_str()), (Some("0"), Some("0")));
    let v = json(&["moments", "--sweep", "--dmax", "5"]);
    assert_eq!(v["pass"], true);
    assert!(v["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn ergodic_examples() {
    let v = json(&["ergodic", "--diagram", "car", "--lam", "1", "--mu", "1", "--u", "0.25,0", "--nmax", "6"]);
    let pts = v["report"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 6);
    assert_eq!(pts[1]["exact"][0], "7/15");
    assert!((v["report"]["limit"][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let errors: Vec<f64> = pts.iter().map(|p| p["error"].as_f64().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]));
    let v = json(&["ergodic", "--diagram", "car", "--lam", "", "--mu", "", "--u", "0.25,0", "--nmax", "4"]);
    for p in v["report"]["points"].as_array().unwrap() {
        assert_eq!(p["exact"][0], "1");
    }
}

#[test]
fn schur_weyl_and_poisson_examples() {
    assert_eq!(json(&["schur-weyl", "--n", "3", "--p", "1", "--q", "1"])["defect"], "1/64");
    let v = json(&["poisson", "--stirling", "4"]);
    assert_eq!(v["closed_exact"], "61/3");
    assert_eq!(v["report"]["passed"], true);
    let v = json(&["poisson", "--tv", "1", "--k", "100"]);
    assert!(v["bound"].as_f64().unwrap() < 0.09);
}

#[test]
fn hciz_monte_carlo_passes() {
    let v = json(&["hciz", "--d", "3", "--n", "2", "--samples", "100000", "--seed", "7"]);
    assert_eq!(v["within_3_sigma"], true);
    assert_eq!(v["monte_carlo"]["seed"], 7);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["hciz", "--d", "4", "--n", "2", "--samples", "5000", "--seed", "11"];
    let a = weylchar(&args);
    let b = weylchar(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = [
        "ergodic",
        "--diagram",
        "effros-shen",
        "--depth",
        "20",
        "--lam",
        "1",
        "--u",
        "0.5,0;0",
        "--level",
        "2",
        "--nmax",
        "8",
    ];
    let first = weylchar(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, weylchar(&args).stdout);
}

#[test]
fn seed_environment_overrides_flag() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_weylchar"));
        c.args(["hciz", "--d", "2", "--samples", "2000", "--seed", "1"]);
        match env {
            Some(s) => c.env("WEYLCHAR_SEED", s),
            None => c.env_remove("WEYLCHAR_SEED"),
        };
        c.output().unwrap()
    };
    let with_env: Value = serde_json::from_slice(&run(Some("99")).stdout).unwrap();
    assert_eq!(with_env["monte_carlo"]["seed"], 99);
    let plain: Value = serde_json::from_slice(&run(None).stdout).unwrap();
    assert_eq!(plain["monte_carlo"]["seed"], 1);
    assert_ne!(with_env["monte_carlo"]["estimate"], plain["monte_carlo"]["estimate"]);
    assert_eq!(run(Some("not-a-number")).status.code(), Some(2));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["char", "--sig", "2,1,0"], 0),
        (&["char", "--sig", "1,2"], 2),
        (&["char", "--sig", "1,x"], 2),
        (&["char", "--sig", "1,0", "--u", "0.5"], 2),
        (&["char", "--sig", "1,0", "--method", "magic"], 2),
        (&["char"], 2),
        (&["frobnicate"], 2),
        (&["moments", "--sig", "1,0,0", "--r", "3"], 2),
        (&["ergodic", "--diagram", "nope", "--lam", "1", "--mu", "1"], 2),
        (&["ergodic", "--diagram", "car", "--lam", "1", "--nmax", "13"], 3),
        (&["char", "--sig", "3,0,0,0,0,0,0,0,0", "--method", "weight-sum"], 3),
        (&["char", "--sig", "3,0,0,0,0,0,0,0,0", "--method", "weight-sum", "--gt-dim-max", "9"], 0),
        (&["hciz", "--d", "3", "--samples", "20000000"], 3),
        (&["hciz", "--d", "3", "--samples", "10"], 2),
        (&["schur-weyl", "--n", "16"], 3),
        (&["poisson", "--stirling", "4", "--terms", "2"], 2),
        (&["poisson", "--stirling", "1000", "--series-truncation", "100"], 3),
        (&["poisson", "--stirling", "4", "--tolerance=-1"], 1),
        (&["poisson"], 2),
        (&["branch", "--sig", "1,0,-1", "--split", "3"], 2),
        (&["branch", "--sig", "1,0,-1", "--tensor", "1,0,-1", "--max-dim", "10"], 3),
        (&["validate-diagram", "--preset", "uhf:2,3"], 0),
        (&["validate-diagram", "--preset", "uhf:0"], 1),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        let out = weylchar(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        // errors print nothing on stdout; a failed check still emits its report
        match code {
            1 => assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok(), "{args:?}"),
            2 | 3 => assert!(out.stdout.is_empty(), "{args:?} wrote to stdout on error"),
            _ => {}
        }
    }
}

#[test]
fn diagram_files_and_output_path() {
    let dir = std::env::temp_dir().join(format!("weylchar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("uhf.json");
    std::fs::write(&file, r#"{"name":"three","levels":[[1],[3],[9]],"multiplicities":[[[3]],[[3]]]}"#).unwrap();
    let v = json(&["validate-diagram", "--file", file.to_str().unwrap()]);
    assert_eq!(v["min_block_dims"], serde_json::json!([1, 3, 9]));
    let out = dir.join("out.json");
    let o = weylchar(&[
        "ergodic",
        "--diagram",
        file.to_str().unwrap(),
        "--lam",
        "1",
        "--u",
        "0.5,0,0",
        "--nmax",
        "2",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["diagram"], "three");
    std::fs::write(&file, r#"{"name":"bad","levels":[[1],[2]],"multiplicities":[[[3]]]}"#).unwrap();
    assert_eq!(weylchar(&["validate-diagram", "--file", file.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&file, "not json").unwrap();
    assert_eq!(weylchar(&["validate-diagram", "--file", file.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
