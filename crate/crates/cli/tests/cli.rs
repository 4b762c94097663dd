use std::process::{Command, Output};

fn chainpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainpoly"))
        .args(args)
        .env_remove("CHAINPOLY_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = chainpoly(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn poly_vex4() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["poly", "vex(4)", "--format", "json", "--coeffs"])).unwrap();
    assert_eq!(v["U"], 5);
    assert_eq!(v["L"], 1);
    assert_eq!(v["tr"], 5);
    assert_eq!(v["T"], serde_json::json!(["1", "3", "5", "5"]));
}

#[test]
fn poly_primitive() {
    let rows = csv_rows(&stdout(&["poly", "E", "--format", "csv"]));
    assert_eq!(&rows[0][4..], ["1", "1", "1", "1.0", "1.0", "1.0"]);
}

#[test]
fn poly_koch3_roots() {
    let rows = csv_rows(&stdout(&["poly", "koch(3)", "--format", "csv"]));
    assert_eq!(&rows[0][4..7], ["106", "4", "424"]);
    assert_eq!(&rows[0][8..], ["1.189207", "2.130201"]);
}

#[test]
fn float_mode_prints_scientific_counts() {
    let rows = csv_rows(&stdout(&[
        "poly", "vex(4)", "--mode", "float", "--format", "csv",
    ]));
    assert_eq!(rows[0][3], "float");
    assert_eq!(rows[0][4], "5.000000e0");
    assert_eq!(rows[0][7], "1.495348");
}

#[test]
fn koch_rows() {
    let rows = csv_rows(&stdout(&["koch", "5", "--format", "csv"]));
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], ["0", "1", "1.0", "1.0", "1.0"]);
    assert_eq!(rows[1], ["1", "2", "1.0", "1.0", "1.0"]);
    assert_eq!(rows[2], ["2", "4", "1.189207", "1.0", "1.189207"]);
    assert_eq!(rows[5], ["5", "32", "2.558954", "2.035453", "5.208633"]);
}

#[test]
fn koch_header() {
    let out = stdout(&["koch", "1", "--format", "csv"]);
    assert_eq!(out.lines().next(), Some("s,n,rootU,rootL,rootT"));
}

#[test]
fn polytwin_rows() {
    let out = stdout(&["polytwin", "--koch", "2", "--format", "csv"]);
    assert_eq!(
        out.lines().next(),
        Some("s,m,lambda,tau,lambda_tau,lambda_bar,lambda_lambda_bar")
    );
    let rows = csv_rows(&out);
    assert_eq!(&rows[0][2..5], ["4.0", "2.0", "8.0"]);
    assert_eq!(&rows[2][2..5], ["3.534118", "2.449489", "8.656787"]);
    assert_eq!(rows[2][6], "12.242546");
    let single = csv_rows(&stdout(&["polytwin", "koch(2)", "--format", "csv"]));
    assert_eq!(single[0][0], "");
    assert_eq!(&single[0][1..], &rows[2][1..]);
}

#[test]
fn exact_and_float_tables_agree() {
    let a = stdout(&["koch", "9", "--mode", "exact"]);
    let b = stdout(&["koch", "9", "--mode", "float"]);
    assert_eq!(a, b);
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [
        vec!["koch", "10", "--format", "csv"],
        vec!["polytwin", "--koch", "10", "--format", "json"],
        vec!["poly", "twin(koch(4), 3)", "--coeffs"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut four = args.clone();
        four.extend(["--threads", "4"]);
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
        assert_eq!(stdout(&one), stdout(&one), "{args:?}");
    }
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_chainpoly"))
        .args(["koch", "3"])
        .env("CHAINPOLY_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_chainpoly"))
        .args(["koch", "3"])
        .env("CHAINPOLY_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_and_json_round_trip() {
    let csv = csv_rows(&stdout(&["polytwin", "--koch", "6", "--format", "csv"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["polytwin", "--koch", "6", "--format", "json"])).unwrap();
    let header = [
        "s",
        "m",
        "lambda",
        "tau",
        "lambda_tau",
        "lambda_bar",
        "lambda_lambda_bar",
    ];
    for (row, obj) in csv.iter().zip(json.as_array().unwrap()) {
        for (h, cell) in header.iter().zip(row) {
            let parsed: f64 = cell.parse().unwrap();
            assert_eq!(obj[*h].as_f64().unwrap(), parsed, "{h}");
            let reprinted = chainpoly_cli::format::round_down(parsed, 6);
            if cell.contains('.') {
                assert_eq!(&reprinted, cell);
            }
        }
    }
}

#[test]
fn digits_flag() {
    let rows = csv_rows(&stdout(&["koch", "3", "--digits", "3", "--format", "csv"]));
    assert_eq!(rows[3], ["3", "8", "1.791", "1.189", "2.13"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("chainpoly-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.csv");
    let out = chainpoly(&[
        "koch",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["koch", "4", "--format", "csv"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_counts() {
    assert_eq!(
        stdout(&["enumerate", "1"]),
        "E\ntotal 1 upward 1 downward 0\n"
    );
    let rows = csv_rows(&stdout(&["enumerate", "3", "--count", "--format", "csv"]));
    assert_eq!(rows[0], ["3", "6", "3", "3"]);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["enumerate", "7", "--count", "--format", "json"])).unwrap();
    assert_eq!(v["total"], 1806);
    let listed = csv_rows(&stdout(&["enumerate", "4", "--format", "csv"]));
    assert_eq!(listed.len(), 22);
    assert_eq!(listed.iter().filter(|r| r[1] == "true").count(), 11);
}

#[test]
fn realize_outputs() {
    let e = csv_rows(&stdout(&["realize", "E"]));
    assert_eq!(e.len(), 2);
    let v2 = csv_rows(&stdout(&["realize", "vex(2)", "--format", "csv"]));
    assert_eq!(v2.len(), 3);
    let y = |r: &Vec<String>| r[2].parse::<f64>().unwrap() / r[3].parse::<f64>().unwrap();
    assert!(y(&v2[1]) < (y(&v2[0]) + y(&v2[2])) / 2.0);
    let k3 = csv_rows(&stdout(&["realize", "koch(3)", "--format", "csv"]));
    assert_eq!(k3.len(), 9);
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&["realize", "koch(3)", "--format", "json"])).unwrap();
    assert_eq!(j.as_array().unwrap().len(), 9);
}

#[test]
fn verify_quick_passes_and_fault_is_caught() {
    let ok = chainpoly(&["verify", "quick"]);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stdout)
    );
    let bad = chainpoly(&["verify", "quick", "--inject-fault", "--format", "json"]);
    assert_eq!(bad.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(chainpoly(&["poly", "vex("]).status.code(), Some(2));
    assert_eq!(chainpoly(&["poly", "E v"]).status.code(), Some(2));
    assert_eq!(chainpoly(&["poly", "vex(0)"]).status.code(), Some(2));
    assert_eq!(chainpoly(&["nonsense"]).status.code(), Some(2));
    assert_eq!(chainpoly(&["koch", "30"]).status.code(), Some(3));
    assert_eq!(chainpoly(&["enumerate", "13"]).status.code(), Some(3));
    assert_eq!(chainpoly(&["realize", "vex(40)"]).status.code(), Some(3));
    assert_eq!(chainpoly(&["polytwin"]).status.code(), Some(2));
}
