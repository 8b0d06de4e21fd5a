use std::path::PathBuf;
use std::process::Command;

use netsale::graph::{emit_network, fixtures, parse_network_auto, GraphFormat};
use netsale::report::{ContractOut, Envelope, InterventionsOut, OracleOut};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = netsale::cli::run(
        std::iter::once("netsale").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn solve_p4() {
    let p4 = data("p4.json");
    let v = json(&["solve", "--graph", &p4, "--z0", "0.1", "--gamma", "1"]);
    assert_eq!(v["target"], serde_json::json!([1, 3]));
    assert!((v["z"].as_f64().unwrap() - 1.314214).abs() < 1e-6);
    assert_eq!(v["params"], serde_json::json!({"z0": 0.1, "gamma": 1.0}));
    assert_eq!(v["command"], "solve");
}

#[test]
fn defaults_are_echoed() {
    let v = json(&["solve", "--graph", &data("star4.json")]);
    assert_eq!(v["params"], serde_json::json!({"z0": 0.1, "gamma": 1.0}));
    assert_eq!(v["target"], serde_json::json!([2, 3, 4]));
}

#[test]
fn oracle_k3_matches() {
    let v = json(&["oracle", "--graph", &data("k3.json"), "--z0", "0.1", "--gamma", "1"]);
    assert_eq!(v["matches_theorem1"], true);
    assert_eq!(v["scanned"], 8);
}

#[test]
fn efficient_c6() {
    let v = json(&["efficient", "--graph", &data("c6.json"), "--z0", "0.1", "--gamma", "1"]);
    let expected = 2f64.sqrt() - 0.1 / 3.0;
    assert!((v["z_star"].as_f64().unwrap() - expected).abs() < 1e-8);
    assert!((v["z_star"].as_f64().unwrap() - 1.380880).abs() < 1e-6);
    assert_eq!(v["clique_union"], false);
    assert!(v["limits"]["z_star"].is_f64());
}

#[test]
fn mis_welfare_and_pareto_documents() {
    let p4 = data("p4.json");
    let mis = json(&["mis", "--graph", &p4]);
    assert_eq!(mis["sets"], serde_json::json!([[1, 3], [1, 4], [2, 4]]));
    assert_eq!(mis["alpha"], 2);
    let capped = json(&["mis", "--graph", &p4, "--cap", "2"]);
    assert_eq!(capped["truncated"], true);

    let w = json(&["welfare", "--graph", &p4]);
    assert_eq!(w["target"], serde_json::json!([1, 3]));
    assert_eq!(w["k_vector"], serde_json::json!([2, 1]));
    assert!((w["consumer_surplus"].as_f64().unwrap() + 21.073618).abs() < 1e-6);
    assert_eq!(w["per_node"].as_array().unwrap().len(), 4);

    let cp = json(&["pareto", "--graph", &data("core_periphery.txt")]);
    assert_eq!(cp["core_periphery"], true);
    assert_eq!(cp["core"], serde_json::json!([1, 2]));
    assert_eq!(cp["periphery"], serde_json::json!([3, 4, 5]));
    assert_eq!(cp["exhaustive_efficient"], true);
    let p = json(&["pareto", "--graph", &p4]);
    assert_eq!(p["core_periphery"], false);
}

#[test]
fn intervene_ranks_and_round_trips() {
    let (code, out, _) = run(&["intervene", "--graph", &data("k3.json"), "--cap", "2"]);
    assert_eq!(code, 0);
    let doc: Envelope<InterventionsOut> = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.body.interventions.len(), 2);
    assert_eq!(doc.body.interventions[0].kind, "remove-link");
    assert_eq!(doc.body.interventions[0].edge, Some([1, 2]));
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", out);
}

#[test]
fn contract_and_oracle_json_round_trip() {
    for cmd in ["solve", "oracle"] {
        let (code, out, _) = run(&[cmd, "--graph", &data("c6.json")]);
        assert_eq!(code, 0);
        let again = if cmd == "solve" {
            let doc: Envelope<ContractOut> = serde_json::from_str(&out).unwrap();
            serde_json::to_string_pretty(&doc).unwrap()
        } else {
            let doc: Envelope<OracleOut> = serde_json::from_str(&out).unwrap();
            serde_json::to_string_pretty(&doc).unwrap()
        };
        assert_eq!(again + "\n", out);
    }
}

#[test]
fn emitted_graphs_re_parse() {
    let g = fixtures::gnp(20, 0.3, 4);
    for format in [GraphFormat::EdgeList, GraphFormat::Json] {
        assert_eq!(parse_network_auto(&emit_network(&g, format)).unwrap(), g);
    }
}

#[test]
fn same_seed_same_bytes() {
    let p4 = data("p4.json");
    let args = ["simulate", "--graph", p4.as_str(), "--seed", "11", "--samples", "20000"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let other = run(&["simulate", "--graph", &p4, "--seed", "12", "--samples", "20000"]);
    assert_ne!(a.1, other.1);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["samples"], 20000);
    assert!(v["normal_method"].as_str().unwrap().contains("ziggurat"));
}

#[test]
fn text_format_is_a_table() {
    let (code, out, _) = run(&["welfare", "--graph", &data("p4.json"), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("command"));
    assert!(out.contains("\nper_node\nnode       utility\n   1         -10.0\n"), "{out}");
}

#[test]
fn exit_codes() {
    let p4 = data("p4.json");
    assert_eq!(run(&["solve", "--graph", &p4, "--z0", "-1"]).0, 1);
    assert_eq!(run(&["simulate", "--graph", &p4, "--samples", "0"]).0, 1);
    assert_eq!(run(&["oracle", "--graph", &p4, "--cap", "3"]).0, 2);
    assert_eq!(run(&["solve"]).0, 1);
    let (code, out, err) = run(&["solve", "--graph", &data("missing.json")]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.starts_with("netsale: "));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join(format!("netsale-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "n 3\n1 2\n2 2\n").unwrap();
    let (code, _, err) = run(&["solve", "--graph", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_respects_thread_setting() {
    let bin = env!("CARGO_BIN_EXE_netsale");
    let args = ["simulate", "--graph", &data("c6.json"), "--samples", "30000", "--seed", "5"];
    let one = Command::new(bin).args(args).env("NETSALE_THREADS", "1").output().unwrap();
    let four = Command::new(bin).args(args).env("NETSALE_THREADS", "4").output().unwrap();
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    let bad = Command::new(bin).args(args).env("NETSALE_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage: netsale"));
}
