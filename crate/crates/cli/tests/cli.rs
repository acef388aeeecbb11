use std::process::{Command, Output};

fn kappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa"))
        .args(args)
        .output()
        .expect("spawn kappa")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn genus_below_construction_floor_is_usage_error() {
    let o = kappa(&["verify", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("g >= 4"));
}

#[test]
fn unknown_flag_and_bad_values_are_usage_errors() {
    assert_eq!(kappa(&["sweep", "--nope"]).status.code(), Some(2));
    assert_eq!(kappa(&["sweep", "--genus", "9..5"]).status.code(), Some(2));
    assert_eq!(kappa(&["spectrum", "--genus", "9", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(kappa(&["matrix", "--genus", "9", "--rotation", "sideways"]).status.code(), Some(2));
    assert_eq!(kappa(&["charpoly"]).status.code(), Some(2));
}

#[test]
fn corrupted_closed_form_fails_and_names_the_check() {
    let o = kappa(&["verify", "--genus", "4", "--corrupt-expected", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out
        .lines()
        .any(|l| l.starts_with("AC1,char_poly_equals_closed_form,4,true,false")));
}

#[test]
fn sweep_csv_has_fixed_header_and_one_row_per_genus() {
    let o = kappa(&["sweep", "--genus", "5..40", "--format", "csv"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header[0], "genus");
    assert_eq!(header.len(), 29);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 36);
    for (i, r) in rows.iter().enumerate() {
        let g: u64 = r[col("genus")].parse().unwrap();
        assert_eq!(g, 5 + i as u64);
        let lo: f64 = r[col("kappa_lower_hi")].parse().unwrap();
        let hi: f64 = r[col("kappa_upper")].parse().unwrap();
        assert!(lo <= hi, "g = {g}");
        assert_eq!(&r[col("ellc_lower")], format!("1/{}", 2 * g - 1));
    }
    assert_eq!(&rows[4][col("ellc_lower")], "1/17");
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["sweep", "--genus", "4..12", "--format", "json"];
    let a = kappa(&args);
    let b = kappa(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let c = kappa(&with_out);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn sweep_json_round_trips_byte_identically() {
    let o = kappa(&["sweep", "--genus", "4..10", "--format", "json"]);
    let text = stdout(&o);
    let doc: kappa_core::report::SweepDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.rows.len(), 7);
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn unwritable_output_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let o = kappa(&["bounds", "--genus", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_accept_small_genus() {
    let o = kappa(&["bounds", "--genus", "2..4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert!(results[0]["dil_lower"].is_null());
    assert!(results[2]["kappa_upper"].as_f64().unwrap() > 0.0);
}

#[test]
fn self_loop_and_mixing_reports() {
    let o = kappa(&["digraph", "--genus", "9", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["self_loops"].as_object().unwrap().len(), 1);
    assert_eq!(r["self_loops"]["a1"], "1");
    assert_eq!(r["strongly_connected"], true);
    assert_eq!(r["period"], 1);

    let o = kappa(&["mixing", "--genus", "4..8", "--format", "csv"]);
    let out = stdout(&o);
    for line in out.lines().skip(1) {
        assert!(line.ends_with(",true,true"), "{line}");
    }
}

#[test]
fn spectrum_text_edge_list_and_matrix_formats_run() {
    for cmd in ["matrix", "charpoly", "spectrum", "digraph"] {
        for fmt in ["text", "csv", "json"] {
            let o = kappa(&[cmd, "--genus", "6", "--format", fmt]);
            assert!(o.status.success(), "{cmd} {fmt}");
            assert!(!o.stdout.is_empty());
        }
    }
}

