use std::process::{Command, Output};

fn qverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qverify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passing_identity_exits_zero() {
    let o = qverify(&["verify", "quad", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS quad"));
}

#[test]
fn verify_unknown_id_exits_two() {
    let o = qverify(&["verify", "no-such-id"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-id"));
}

#[test]
fn verify_perturbed_exits_one_with_witness() {
    let o = qverify(&["verify", "quad", "--order", "12", "--perturb", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["passed"], false);
    assert!(v["witness"]["monomial"].as_str().unwrap().contains('x'));
}

#[test]
fn verify_order_guard_exits_two() {
    let o = qverify(&["verify", "quad", "--order", "400"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qverify(&["verify", "rr1", "--order", "60", "--max-order", "50"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_json_lines() {
    let o = qverify(&["verify", "all", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 30);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["elapsed_ms", "id", "order", "passed", "witness"]);
        assert_eq!(v["passed"], true);
        assert!(v["witness"].is_null());
        // Re-serializing the parsed object reproduces it.
        let again: serde_json::Value = serde_json::from_str(&v.to_string()).unwrap();
        assert_eq!(again, v);
    }
}

#[test]
fn verify_all_is_ordered_regardless_of_threads() {
    let ids = |threads: &str| -> Vec<String> {
        let o = Command::new(env!("CARGO_BIN_EXE_qverify"))
            .args(["verify", "all", "--json", "--order", "8"])
            .env("QVERIFY_THREADS", threads)
            .output()
            .unwrap();
        stdout(&o)
            .lines()
            .map(|l| {
                serde_json::from_str::<serde_json::Value>(l).unwrap()["id"]
                    .as_str()
                    .unwrap()
                    .to_string()
            })
            .collect()
    };
    assert_eq!(ids("1"), ids("4"));
}

#[test]
fn enum_avee_includes_exception() {
    let o = qverify(&["enum", "--set", "Avee", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "5~ 1"));
}

#[test]
fn enum_empty_size() {
    let o = qverify(&["enum", "--set", "A", "--n", "0"]);
    assert_eq!(stdout(&o), "\n");
    let o = qverify(&["enum", "--set", "A", "--n", "0", "--json"]);
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn enum_stats_columns() {
    let o = qverify(&["enum", "--set", "A", "--n", "5", "--stats"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "parts\tsize\tlength\tr2mod4\tr0mod4\tover");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows, ["5~\t5\t1\t0\t0\t1", "5\t5\t1\t0\t0\t0"]);
}

#[test]
fn enum_json_round_trips() {
    let o = qverify(&["enum", "--set", "Avee", "--n", "6", "--json", "--stats"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::from_str::<serde_json::Value>(&v.to_string()).unwrap(), v);
        assert!(v["parts"].is_array());
    }
}

#[test]
fn enum_bad_set_exits_two() {
    let o = qverify(&["enum", "--set", "B", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coeffs_csv_format() {
    let o = qverify(&["coeffs", "--series", "quad-lhs", "--order", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,x,y,coeff");
    assert!(lines.contains(&"1,1,0,1"));
    let mut rows: Vec<Vec<u32>> = lines[1..]
        .iter()
        .map(|l| l.split(',').take(3).map(|c| c.parse().unwrap()).collect())
        .collect();
    let before = rows.clone();
    rows.sort();
    assert_eq!(rows, before);
}

#[test]
fn coeffs_h_matches_library_eval() {
    let o = qverify(&["coeffs", "--series", "h:1,1,2,4", "--order", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let s = qverify::catalog::overpartition_sum(&[1, 1, 2, 4], 4).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), s.len());
    for t in terms {
        let exps: Vec<u32> = t["exponents"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_u64().unwrap() as u32)
            .collect();
        let m = qverify::Monomial::from_exponents(&exps).unwrap();
        assert_eq!(t["coeff"].as_str().unwrap(), s.coeff(&m).unwrap().to_string());
    }
}

#[test]
fn coeffs_unknown_series_exits_two() {
    let o = qverify(&["coeffs", "--series", "nope", "--order", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn custom_ideal_from_file() {
    let dir = std::env::temp_dir().join(format!("qverify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gap2.json");
    std::fs::write(
        &path,
        r#"{"blocks": [[], [{"value": 1, "overlined": false}], [{"value": 2, "overlined": false}]],
            "linking": [[0, 1, 2], [0, 1, 2], [0, 2]], "modulus": 2}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = qverify(&["enum", "--lpi-spec", p, "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let mut got: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    got.sort();
    assert_eq!(got, ["5 3 1", "6 3", "7 2", "8 1", "9"]);
    let o = qverify(&["coeffs", "--series", "f1", "--order", "4", "--lpi-spec", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("q,x,y1,y2,z,coeff"));
    std::fs::write(
        &path,
        r#"{"blocks": [[{"value": 1, "overlined": false}]], "linking": [[0]], "modulus": 2}"#,
    )
    .unwrap();
    let o = qverify(&["enum", "--lpi-spec", p, "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn list_prints_registry() {
    let o = qverify(&["list"]);
    let text = stdout(&o);
    for id in [
        "rr1",
        "andrews-gordon-4-4",
        "h-matrix",
        "thm51-d",
        "avee-split",
        "quad-lhs",
        "f7",
    ] {
        assert!(text.contains(id), "{id}");
    }
}

#[test]
fn missing_arguments_exit_two() {
    assert_eq!(qverify(&["coeffs", "--series", "quad-lhs"]).status.code(), Some(2));
    assert_eq!(qverify(&[]).status.code(), Some(2));
}
