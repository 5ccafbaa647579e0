use std::process::Command;

fn uairy(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_uairy")).args(args).output().expect("run uairy")
}

#[test]
fn sweep_writes_csv() {
    let out = uairy(&["--nu", "50", "--m", "1", "--grid", "0.4,0.5+0.2i", "--digits", "40", "--sequential"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[0], "z_re");
    assert_eq!(header.len(), 12);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][10], "section3");
    let im: f64 = rows[1][1].parse().unwrap();
    assert!((im - 0.2).abs() < 1e-12);
    let ratio: f64 = rows[0][5].parse().unwrap();
    assert!(ratio >= 1.0);
}

#[test]
fn suite_prints_json_summary() {
    let out = uairy(&["--suite", "rational-identities"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "rational-identities");
    assert_eq!(v["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(uairy(&["--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(uairy(&["--grid", "0.1:0.2"]).status.code(), Some(2));
    assert_eq!(uairy(&["--mode", "sideways"]).status.code(), Some(2));
}

#[test]
fn module_errors_exit_with_three() {
    // z = 0 is outside the domain of the Liouville map
    let out = uairy(&["--grid", "0", "--digits", "30", "--m", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("z = 0"));
}
