use std::process::{Command, Output};

fn cotan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotan-rh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn c0_values_and_exit_codes() {
    let o = cotan(&["c0", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows[0][3].parse::<f64>().unwrap(), 0.0);

    let all = cotan(&["c0", "1", "3", "--method", "all"]);
    let rows = data_rows(&stdout(&all));
    assert!((rows[0][3].parse::<f64>().unwrap() - 0.192_450_089_729_875_2).abs() < 1e-15);

    assert_eq!(cotan(&["c0", "2", "4"]).status.code(), Some(2));
    assert_eq!(cotan(&["c0", "x", "4"]).status.code(), Some(2));
    assert_eq!(cotan(&["--precision", "extended", "c0", "1", "3"]).status.code(), Some(2));
}

#[test]
fn header_echoes_config_and_output_is_repeatable() {
    let a = stdout(&cotan(&["moments", "2", "--samples", "20000", "--seed", "5"]));
    let b = stdout(&cotan(&["moments", "2", "--samples", "20000", "--seed", "5"]));
    let c = stdout(&cotan(&["moments", "2", "--samples", "20000", "--seed", "6"]));
    assert_eq!(a, b);
    assert_ne!(a.lines().next(), c.lines().next());
    let mut lines = a.lines();
    assert!(lines.next().unwrap().starts_with("# cotan-rh v1 moments "));
    assert!(lines.next().unwrap().starts_with("# config {"));
    assert_eq!(lines.next().unwrap(), "moment,k,estimate,stderr,n_samples,seed,method,error_bound");
}

#[test]
fn ellipse_row_count_and_file_output() {
    let path = std::env::temp_dir().join(format!("cotan-ellipse-{}.csv", std::process::id()));
    let o = cotan(&["ellipse", "1021", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1020);
    assert!(rows.iter().all(|r| r[2] == "naive"));
}

#[test]
fn json_documents() {
    let o = cotan(&["dn", "1", "--kind", "optimal", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc["header"].as_str().unwrap().starts_with("# cotan-rh v1 dn "));
    let d2 = doc["result"][0]["d2"].as_f64().unwrap();
    assert!((d2 - 0.8582).abs() < 1e-3);
    assert_eq!(doc["config"]["command"]["kind"], "optimal");
}

#[test]
fn bench_records_every_method() {
    let o = cotan(&["bench", "1009", "10007", "--reps", "1"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["result"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["error_bound"].as_f64().unwrap() >= 0.0));
}

#[test]
fn quick_suite_passes() {
    let o = cotan(&["accept", "quick", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(data_rows(&text).iter().all(|r| r[6] == "true"));
}
