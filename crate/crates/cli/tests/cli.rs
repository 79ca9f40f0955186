use std::collections::BTreeMap;
use std::process::{Command, Output};

use schubert_core::f4pipeline::{ProductFact, PIERI_X1, PIERI_X4};

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = schubert(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

type Table = BTreeMap<(String, String), BTreeMap<String, i64>>;

fn table_from_json(text: &str) -> Table {
    let rows: serde_json::Value = serde_json::from_str(text).unwrap();
    rows.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let product = r["product"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| (t["class"].as_str().unwrap().to_string(), t["coeff"].as_i64().unwrap()))
                .collect();
            ((r["lhs"].as_str().unwrap().to_string(), r["rhs"].as_str().unwrap().to_string()), product)
        })
        .collect()
}

fn table_from_fixture(text: &str) -> Table {
    ProductFact::parse_all(text)
        .unwrap()
        .into_iter()
        .map(|f| ((f.left, f.right), f.product.into_iter().map(|(c, l)| (l, c)).collect()))
        .collect()
}

#[test]
fn roots_of_f4() {
    let out = stdout(&["roots", "--type", "F4"]);
    assert!(out.ends_with("24 positive roots\n"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&["roots", "--type", "F4", "--format", "json"])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 24);
    assert_eq!(json[23], serde_json::json!([2, 3, 4, 2]));
}

#[test]
fn weyl_data() {
    assert_eq!(stdout(&["weyl", "order", "--type", "F4"]), "1152\n");
    assert_eq!(stdout(&["weyl", "order", "--type", "G2"]), "12\n");
    assert!(stdout(&["weyl", "longest", "--type", "F4"]).ends_with("(length 24)\n"));
    assert_eq!(stdout(&["weyl", "cosets", "--type", "F4", "--theta", "1,2,3"]).lines().count(), 24);
    assert_eq!(stdout(&["weyl", "cosets", "--type", "B3", "--theta", "-"]).lines().count(), 48);
}

#[test]
fn hasse_dot_has_every_coset() {
    let dot = stdout(&["hasse", "--type", "F4", "--theta", "2,3,4", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("->")).count(), 24);
    let flipped = stdout(&["hasse", "--type", "F4", "--theta", "2,3,4", "--format", "dot", "--by-codim"]);
    assert_ne!(dot, flipped);
    let json: serde_json::Value = serde_json::from_str(&stdout(&["hasse", "--theta", "1,2,3", "--format", "json"])).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 24);
}

#[test]
fn chow_tables_match_fixtures() {
    for (theta, fixture) in [("2,3,4", PIERI_X1), ("1,2,3", PIERI_X4)] {
        let mut got = table_from_json(&stdout(&["chow", "table", "--type", "F4", "--theta", theta, "--format", "json"]));
        // The fixtures omit the trivial product with the unit.
        got.retain(|(_, rhs), _| rhs != "1");
        assert_eq!(got, table_from_fixture(fixture), "theta {theta}");
    }
}

#[test]
fn chow_products_and_lifts() {
    assert_eq!(stdout(&["chow", "mult", "--theta", "2,3,4", "h1^4", "h1^4"]), "8*h1^8 + 6*h2^8\n");
    assert_eq!(stdout(&["chow", "mult", "--theta", "1,2,3", "g1^4", "g1^4"]), "4*g1^8 + 3*g2^8\n");
    let lift = stdout(&["chow", "giambelli-lift", "--type", "A2", "--theta", "-", "s1"]);
    assert!(!lift.trim().is_empty());
    let basis = stdout(&["chow", "basis", "--type", "F4", "--theta", "2,3,4", "--codim", "4"]);
    assert_eq!(basis.lines().count(), 2);
}

#[test]
fn correspondence_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("schubert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let delta = dir.join("delta.json");
    std::fs::write(&delta, stdout(&["corr", "diagonal", "--type", "B2", "--theta", "1"])).unwrap();
    let delta = delta.to_str().unwrap();
    let composed = stdout(&["corr", "compose", delta, delta]);
    assert_eq!(composed, std::fs::read_to_string(delta).unwrap());
    assert_eq!(stdout(&["corr", "transpose", delta]), composed);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["roots", "--type", "Q7"][..],
        &["weyl", "cosets", "--type", "F4", "--theta", "5"],
        &["weyl", "cosets", "--type", "F4", "--theta", "x"],
        &["corr", "transpose", "/nonexistent/file.json"],
        &["chow", "mult", "--theta", "2,3,4", "h9^9", "1"],
        &["verify", "f4", "--eps", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(schubert(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_f4_passes_deterministically() {
    let dir = std::env::temp_dir().join(format!("schubert-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let first = schubert(&["verify", "f4", "--eps", "both", "--jobs", "4", "--report", report.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.ends_with("14/14 checks passed\n"), "{text}");
    let second = stdout(&["verify", "f4", "--eps", "both", "--format", "json"]);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), second);
    assert_eq!(stdout(&["verify", "f4", "--eps", "-1"]).lines().last(), Some("10/10 checks passed"));
    std::fs::remove_dir_all(&dir).unwrap();
}
