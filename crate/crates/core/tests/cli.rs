use std::path::Path;
use std::process::{Command, Output};

fn qchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const C3: &str = "Y[1,4] Y[2,1] Y[3,-2]";

#[test]
fn plain_c3_exits_with_failure() {
    let o = qchar(&[
        "run",
        "--algebra",
        "C3",
        "--highest",
        C3,
        "--mode",
        "plain",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "failed");
    assert_eq!(v["failure"]["weight"], serde_json::json!([1, 0, 1]));
    assert_eq!(
        v["failure"]["offenders"][0]["monomial"],
        "Y[1,2] Y[2,-1] Y[2,3]^-1 Y[3,2]"
    );
}

#[test]
fn modified_c3_completes() {
    let o = qchar(&[
        "run",
        "--algebra",
        "C3",
        "--highest",
        C3,
        "--mode",
        "modified",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["character"]["total"], 896);
    assert_eq!(v["injections"][0]["injected"], "Y[2,-1] Y[2,1]");
    assert_eq!(v["injections"][0]["raising"], "A[2,2]");
}

#[test]
fn a2_default_run_and_stable_json() {
    let args = [
        "run",
        "--algebra",
        "A2",
        "--highest",
        "Y[1,2] Y[2,-1]",
        "--format",
        "json",
        "--trace",
    ];
    let a = qchar(&args);
    let b = qchar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["character"]["term_count"], 8);
    assert!(v["trace"].as_array().unwrap().len() >= 3);
    let text = qchar(&["run", "--algebra", "A2", "--highest", "Y[1,2] Y[2,-1]"]);
    assert!(stdout(&text).contains("total    8"));
}

#[test]
fn tableaux_subcommand() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/c2_shape_2_2.tab");
    let o = qchar(&[
        "tableaux",
        "--algebra",
        "C2",
        "--highest",
        "Y[2,-1] Y[2,1]",
        "--shape",
        "2,2",
        "--candidates",
        data.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match: 25 tableaux"));

    let o = qchar(&[
        "tableaux",
        "--algebra",
        "A2",
        "--highest",
        "Y[1,2] Y[2,-1]",
        "--shape",
        "2,1",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = qchar(&[
        "tableaux",
        "--algebra",
        "A2",
        "--highest",
        "Y[1,2] Y[2,-1]",
        "--shape",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(5));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matched"], false);
    assert!(!v["discrepancies"].as_array().unwrap().is_empty());

    let o = qchar(&[
        "tableaux",
        "--algebra",
        "D4",
        "--highest",
        "Y[1,0]",
        "--shape",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes_for_usage_and_limits() {
    assert_eq!(
        qchar(&["run", "--algebra", "C1", "--highest", "Y[1,0]"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        qchar(&["run", "--algebra", "A2", "--highest", "Y[1,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        qchar(&["run", "--algebra", "A2", "--highest", "Y[1,0]^-1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(qchar(&["run", "--algebra", "A2"]).status.code(), Some(1));
    assert_eq!(
        qchar(&[
            "run",
            "--algebra",
            "A2",
            "--highest",
            "Y[1,0]",
            "--max-terms",
            "0"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        qchar(&[
            "run",
            "--algebra",
            "A2",
            "--highest",
            "Y[1,2] Y[2,-1]",
            "--max-height",
            "1"
        ])
        .status
        .code(),
        Some(4)
    );
    assert_eq!(
        qchar(&[
            "run",
            "--algebra",
            "C3",
            "--highest",
            C3,
            "--mode",
            "modified",
            "--max-injections",
            "1",
            "--max-terms",
            "50"
        ])
        .status
        .code(),
        Some(4)
    );
    assert_eq!(qchar(&["--help"]).status.code(), Some(0));
}
