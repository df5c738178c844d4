use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn capacity_csv_table() {
    let out = run(&["capacity", "--w-max", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "w,F_w,C_1w,gap_to_log2phi");
    let rows: Vec<_> = lines[1..].iter().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(*rows[0], "1,2,1.00000000000,0.305758086369");
    assert_eq!(*rows[3], "4,8,0.750000000000,0.0557580863694");
    assert!(rows[9].starts_with("10,144,0.716992500144,"));
    let summary = lines.last().unwrap();
    assert!(summary.starts_with("# log2(phi) = 0.694241913631"));
    assert!(summary.contains("exactly"));
}

#[test]
fn capacity_small_and_bad_flags() {
    let out = run(&["capacity", "--w-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2,3,0.792481250361,"));

    assert_eq!(run(&["capacity", "--w-max", "0"]).status.code(), Some(2));
    assert_eq!(run(&["capacity"]).status.code(), Some(2));
    assert_eq!(
        run(&["capacity", "--w-max", "3", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn capacity_json_mirrors_reports() {
    let out = run(&["capacity", "--w-max", "60", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 60);
    assert_eq!(rows[59]["F_w"], "4052739537881");
    assert_eq!(rows[3]["C_1w"], 0.75);
    assert!(rows[59]["binet_residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["aas"]["lower"], 0.694241913631);
    assert_eq!(v["aas"]["resolved"], v["aas"]["lower"]);
}

#[test]
fn verify_passes_and_guards() {
    let out = run(&["verify", "--w", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 7);
    assert!(!text.contains("FAIL"));

    let out = run(&["verify", "--w", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], true);

    assert_eq!(run(&["verify", "--w", "20"]).status.code(), Some(2));
}

#[test]
fn roundtrip_reports() {
    let out = run(&["roundtrip", "--w", "4", "--exhaustive", "--mode", "binary"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("binary: 32 trials, 0 failures"));

    let out = run(&["roundtrip", "--w", "30", "--trials", "10000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("seed=7"));
    assert_eq!(text.matches("10000 trials, 0 failures").count(), 3);

    let out = run(&["roundtrip", "--w", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("messages=2"));

    assert_eq!(
        run(&["roundtrip", "--w", "9", "--exhaustive"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let a = run(&[
        "simulate", "--w", "12", "--blocks", "50", "--seed", "3", "--mode", "ternary",
    ]);
    let b = run(&[
        "simulate", "--w", "12", "--blocks", "50", "--seed", "3", "--mode", "ternary",
    ]);
    let c = run(&[
        "simulate", "--w", "12", "--blocks", "50", "--seed", "4", "--mode", "ternary",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let r1 = run(&[
        "roundtrip",
        "--w",
        "20",
        "--trials",
        "500",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    let r2 = run(&[
        "roundtrip",
        "--w",
        "20",
        "--trials",
        "500",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn stream_simulate_then_decode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stream.ndjson");
    let p = path.to_str().unwrap();
    let out = run(&[
        "simulate", "--w", "9", "--blocks", "40", "--seed", "11", "--period", "1e-9", "--delay",
        "5e-9", "--out", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    for key in ["block", "message", "word", "arrivals", "timestamps"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }

    let out = run(&["decode", "--w", "9", "--input", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("# blocks=40 failures=0\n"));

    // Arrival 4 can only come from slot 2 as a first pulse: not a codeword.
    std::fs::write(
        &path,
        "{\"block\":0,\"message\":1,\"word\":\"010000000\",\"arrivals\":[4]}\n",
    )
    .unwrap();
    let out = run(&["decode", "--w", "9", "--input", p]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("parity violation"));

    std::fs::write(&path, "not json\n").unwrap();
    assert_eq!(
        run(&["decode", "--w", "9", "--input", p]).status.code(),
        Some(2)
    );
}

#[test]
fn codebook_and_graph_exports() {
    let out = run(&["codebook", "--w", "2"]);
    assert_eq!(stdout(&out), "{\"w\":2,\"classes\":[[[]],[[0]],[[0,0]]]}\n");

    let out = run(&["codebook", "--w", "4", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("4,2,1001,\"0,2\""));

    let out = run(&["graph", "--w", "2", "--h", "1"]);
    assert_eq!(stdout(&out), "2 1 2 1\n0 1\n# 0: 0\n# 1: 1\n");

    let analytic = run(&["graph", "--w", "5"]);
    let oracle = run(&["graph", "--w", "5", "--oracle", "--mode", "ternary"]);
    assert_eq!(analytic.stdout, oracle.stdout);

    let out = run(&["graph", "--w", "4", "--h", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v[0]["edges"].as_array().unwrap().len(), 10);

    assert_eq!(
        run(&["graph", "--w", "4", "--h", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["codebook", "--w", "40"]).status.code(), Some(2));
}
