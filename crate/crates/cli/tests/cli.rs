use std::process::{Command, Output};

use serde_json::Value;

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .env_remove("DUNKL_THREADS")
        .output()
        .expect("spawn dunkl")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = dunkl(args);
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: stdout {:?}, stderr {:?}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (code, json)
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn commutativity_on_a2() {
    let (code, r) = report(&["verify", "commutativity", "--system", "A2", "--degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["residuals_zero"], true);
    assert_eq!(r["summary"]["monomials_checked"], 28);
    assert_eq!(r["suite"], "verify commutativity");
    assert!(r["cases"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass" && c.get("witness").is_none()));
}

#[test]
fn commutativity_with_numeric_kappa() {
    let (code, r) = report(&[
        "verify",
        "commutativity",
        "--system",
        "B2",
        "--degree",
        "4",
        "--kappa",
        "short=1/2",
        "--kappa",
        "long=-3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        r["summary"]["kappa"]["symbols"].as_array().unwrap().len(),
        0
    );
    assert_eq!(r["summary"]["monomials_checked"], 15);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["group", "info", "--system", "Q7"],
        vec!["verify", "commutativity", "--kappa", "k5=1"],
        vec!["verify", "commutativity", "--kappa", "k0=abc"],
        vec!["curvature", "--system", "B2", "--connection", "poly:r^2"],
        vec!["curvature", "--system", "I2(5)", "--connection", "coth"],
        vec!["curvature", "--connection", "sideways"],
        vec!["qcalc", "delta", "--element", "99"],
        vec!["frobnicate"],
    ] {
        let out = dunkl(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(["group", "info"])
        .env("DUNKL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_info_on_b3() {
    let (code, r) = report(&["group", "info", "--system", "B3"]);
    assert_eq!(code, 0);
    let s = &r["summary"];
    assert_eq!(s["order"], 48);
    assert_eq!(s["reflections"], 9);
    let sizes: usize = s["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap() as usize)
        .sum();
    assert_eq!(sizes, 48);
    assert_eq!(s["rotations"]["proper_by_order"]["3"], 8);
    assert_eq!(s["rotations"]["proper_by_order"]["4"], 6);
}

#[test]
fn order_cap_is_enforced() {
    let out = dunkl(&["group", "info", "--system", "B3", "--order-cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn custom_root_systems() {
    let dir = std::env::temp_dir().join(format!("dunkl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("b2.json");
    std::fs::write(
        &good,
        "[[1,0],[-1,0],[0,1],[0,-1],[1,1],[-1,-1],[1,-1],[-1,1]]",
    )
    .unwrap();
    let (code, r) = report(&["rootsys", "validate", "--roots", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["roots"], 8);
    assert_eq!(r["summary"]["orbits"].as_array().unwrap().len(), 2);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "[[1,0],[-1,0],[1,1],[-1,-1]]").unwrap();
    let (code, r) = report(&["rootsys", "validate", "--roots", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    let case = &r["cases"][0];
    assert_eq!(case["status"], "fail");
    assert!(case["witness"].as_str().unwrap().contains("reflections"));

    let ragged = dir.join("ragged.json");
    std::fs::write(&ragged, "[[1,0],[1]]").unwrap();
    assert_eq!(
        dunkl(&["rootsys", "validate", "--roots", ragged.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn curvature_reports() {
    let (code, r) = report(&["curvature", "--system", "B2", "--connection", "standard"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["zero"], true);

    let (code, r) = report(&["curvature", "--system", "B2", "--connection", "coth"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["zero"], false);
    assert_eq!(r["summary"]["constant"], true);
    let rots = r["summary"]["proper_rotations"].as_array().unwrap();
    assert_eq!(rots.len(), 2);
    let mut values: Vec<&str> = rots
        .iter()
        .map(|x| x["components"][0]["numerator"].as_str().unwrap())
        .collect();
    values.sort_unstable();
    assert_eq!(values, ["-2*k0*k1", "2*k0*k1"]);

    let (code, r) = report(&["curvature", "--system", "B2", "--connection", "poly:r"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["zero"], false);
    assert_eq!(r["summary"]["constant"], false);
}

#[test]
fn qcalc_delta_of_identity_is_symmetric() {
    let (code, r) = report(&["qcalc", "delta", "--system", "A2", "--element", "0"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = r["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["qcalc/closed-form", "qcalc/symmetric"]);
    assert!(!r["summary"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn leibniz_suite() {
    let (code, r) = report(&[
        "verify",
        "leibniz",
        "--system",
        "B2",
        "--pairs",
        "6",
        "--sequential",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["cases"].as_array().unwrap().len(), 9);
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "verify",
        "leibniz",
        "--system",
        "A2",
        "--pairs",
        "4",
        "--threads",
        "2",
    ];
    let (_, a) = report(&args);
    let (_, b) = report(&args);
    assert_eq!(without_timings(a.clone()), without_timings(b));
    let keys: Vec<&String> = a.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 6);
    let text = String::from_utf8(dunkl(&args).stdout).unwrap();
    let order: Vec<usize> = [
        "tool_version",
        "system",
        "suite",
        "cases",
        "summary",
        "timings",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn json_file_output() {
    let path = std::env::temp_dir().join(format!("dunkl-report-{}.json", std::process::id()));
    let out = dunkl(&[
        "group",
        "info",
        "--system",
        "G2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["summary"]["order"], 12);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn suite_all_passes() {
    let (code, r) = report(&["suite", "all", "--json", "-"]);
    assert_eq!(code, 0, "{}", r["cases"]);
    assert_eq!(r["system"], "catalog");
    assert_eq!(r["summary"]["failed"], 0);
    let systems: Vec<&str> = r["summary"]["systems"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(systems, ["A1", "A2", "A3", "B2", "B3", "G2", "I2(5)"]);
}
