use std::process::{Command, Output};

fn giant_ld(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_giant-ld"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

fn header(text: &str) -> String {
    text.lines().next().unwrap_or_default().to_string()
}

#[test]
fn exact_small_examples() {
    let out = giant_ld(&["exact", "--event", "connected", "--n", "3", "--p", "0.5"]);
    assert!(out.status.success());
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0][5], "0.5");
    assert_eq!(rows[0][6], "0.5");

    let out = giant_ld(&["exact", "--event", "nocycles", "--n", "3", "--p", "0.5"]);
    assert_eq!(csv_rows(&stdout(&out))[0][5], "0.875");

    let out = giant_ld(&["exact", "--event", "allsmall", "--n", "40", "--r", "n", "--alpha", "2"]);
    assert_eq!(csv_rows(&stdout(&out))[0][5], "1");
}

#[test]
fn exact_float_and_size_limits() {
    let out = giant_ld(&["exact", "--event", "connected", "--n", "201", "--alpha", "2", "--arithmetic", "rational"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size limit"));

    let out = giant_ld(&["exact", "--event", "connected", "--n", "5001", "--alpha", "2", "--arithmetic", "float"]);
    assert_eq!(out.status.code(), Some(2));

    let out = giant_ld(&["exact", "--event", "nocycles", "--n", "300", "--alpha", "2"]);
    assert!(out.status.success());
    assert_eq!(csv_rows(&stdout(&out))[0][3], "float");
}

#[test]
fn macro_volume_law_sums_to_one() {
    let out = giant_ld(&["exact", "--event", "macrovolume", "--n", "20", "--r", "3", "--alpha", "2"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 21);
    let total: f64 = rows.iter().map(|r| r[5].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn rate_curve_shape() {
    let out = giant_ld(&["rate-curve"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(header(&text), "alpha,rho,phi,psi_active");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4 * 401);
    for row in rows.iter().filter(|r| r[0] == "2.4") {
        let rho: f64 = row[1].parse().unwrap();
        let active = row[3] == "true";
        assert_eq!(active, 2.4 * (1.0 - rho) > 1.0, "rho = {rho}");
    }
    // the minimum of each curve sits at the mean-field density
    for a in ["0.5", "1", "1.6", "2.4"] {
        let min = rows
            .iter()
            .filter(|r| r[0] == a)
            .map(|r| r[2].parse::<f64>().unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(min < 2e-5, "alpha {a}: {min}");
    }
}

#[test]
fn mean_field_values() {
    let out = giant_ld(&["mean-field", "--alpha", "1,2", "--format", "json"]);
    let text = stdout(&out);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["rho_star"], 0.0);
    assert!((lines[1]["rho_star"].as_f64().unwrap() - 0.796812).abs() < 1e-6);
    assert_eq!(lines[1]["saddle_theta_limit"], 1.25);
}

#[test]
fn saddle_runs() {
    let out = giant_ld(&["saddle", "--alpha", "0.5,2", "--r", "50,2000"]);
    assert!(out.status.success());
    assert_eq!(csv_rows(&stdout(&out)).len(), 4);
}

#[test]
fn sample_estimate_columns_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = giant_ld(&[
            "sample", "--n", "30,50", "--alpha", "1,2", "--event", "nocycles", "--samples", "3000", "--seed", "11",
            "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());
    assert_eq!(header(&ta), "n,alpha,event,p_hat,ci_low,ci_high,samples,seed");
    assert_eq!(csv_rows(&ta).len(), 4);
}

#[test]
fn sample_connected_matches_exact() {
    let out = giant_ld(&["sample", "--n", "30", "--alpha", "3", "--event", "connected", "--samples", "20000"]);
    let row = &csv_rows(&stdout(&out))[0];
    let (lo, hi): (f64, f64) = (row[4].parse().unwrap(), row[5].parse().unwrap());
    let exact = giant_ld(&["exact", "--event", "connected", "--n", "30", "--alpha", "3"]);
    let p: f64 = csv_rows(&stdout(&exact))[0][5].parse().unwrap();
    assert!(lo <= p && p <= hi, "{p} not in [{lo}, {hi}]");
}

#[test]
fn sample_other_modes() {
    let out = giant_ld(&["sample", "--mode", "giant", "--n", "2000", "--alpha", "2", "--samples", "50"]);
    let row = &csv_rows(&stdout(&out))[0];
    assert!((row[2].parse::<f64>().unwrap() - 0.7968).abs() < 0.03);

    let out = giant_ld(&["sample", "--mode", "histogram", "--n", "20", "--alpha", "2", "--r", "3", "--samples", "500"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 21);
    assert_eq!(rows.iter().map(|r| r[4].parse::<u64>().unwrap()).sum::<u64>(), 500);

    let out = giant_ld(&[
        "sample", "--mode", "uniqueness", "--n", "1000", "--alpha", "0.5", "--epsilon", "0.5", "--samples", "20",
    ]);
    assert_eq!(csv_rows(&stdout(&out))[0][3], "1");

    let out = giant_ld(&[
        "sample", "--mode", "rate-table", "--n", "60", "--alpha", "0.5", "--event", "connected", "--samples", "50",
    ]);
    let row = &csv_rows(&stdout(&out))[0];
    assert_eq!(row[10], "true");
    assert_eq!(row[3], "");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["sample", "--n", "10", "--alpha", "1"],
        vec!["exact", "--event", "allsmall", "--n", "5", "--p", "0.5"],
        vec!["exact", "--event", "allsmall", "--n", "5", "--r", "9", "--p", "0.5"],
        vec!["exact", "--event", "connected", "--n", "5", "--p", "3/2"],
        vec!["rate-curve", "--steps", "1"],
        vec!["verify", "--criterion", "12"],
        vec!["nonsense"],
    ] {
        assert_eq!(giant_ld(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn io_error_exits_3() {
    let out = giant_ld(&["mean-field", "--alpha", "2", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_selected_criteria() {
    let out = giant_ld(&["verify", "--quick", "--criterion", "1,6,10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 3);

    let out = giant_ld(&["verify", "--quick", "--criterion", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["passed"], true);
}
