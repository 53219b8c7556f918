use super::*;

struct Outcome {
    code: Option<i32>,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], max_terms: Option<&str>) -> Outcome {
    let argv = std::iter::once("rct-hyper").chain(args.iter().copied());
    match Cli::try_parse_from(argv) {
        Err(e) => Outcome {
            code: Some(e.exit_code()),
            stdout: String::new(),
            stderr: e.to_string(),
        },
        Ok(cli) => {
            let mut buf = Vec::new();
            let (code, stderr) = match execute(cli, max_terms, &mut buf) {
                Ok(()) => (0, String::new()),
                Err(f) => {
                    let code = f.code();
                    let (Failure::Usage(m) | Failure::Contract(m)) = f;
                    (code, m)
                }
            };
            Outcome {
                code: Some(i32::from(code)),
                stdout: String::from_utf8(buf).unwrap(),
                stderr,
            }
        }
    }
}

fn run(args: &[&str]) -> Outcome {
    invoke(args, None)
}

fn stdout(o: &Outcome) -> String {
    o.stdout.clone()
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {line}"))
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "--a", "1", "--b", "1", "--c", "2", "--x", "0.5"]);
    assert_eq!(o.code, Some(0));
    let v: f64 = field(&stdout(&o), "value").parse().unwrap();
    assert!((v - 1.386_294_361_119_890_6).abs() < 1e-14);
    assert_eq!(field(&stdout(&o), "method"), "direct_series");

    let o = run(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "0"]);
    assert_eq!(o.code, Some(0));
    assert_eq!(field(&stdout(&o), "value").parse::<f64>().unwrap(), 1.0);

    let o = run(&["eval", "--a", "1", "--b", "1", "--c", "2", "--x", "1.5"]);
    assert_eq!(o.code, Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn eval_json_and_csv() {
    let o = run(&[
        "eval", "--a", "1", "--b", "1", "--c", "2", "--x", "0.5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["method"], "direct_series");
    let o = run(&[
        "eval", "--a", "1", "--b", "1", "--c", "2", "--x", "0.5", "--format", "csv",
    ]);
    assert!(stdout(&o).starts_with("value,abs_err_estimate,method\n"));
}

#[test]
fn term_cap_from_environment() {
    let cap = |v: &str| {
        invoke(
            &["eval", "--a", "1", "--b", "1", "--c", "2", "--x", "0.7"],
            Some(v),
        )
        .code
    };
    assert_eq!(cap("5"), Some(1));
    assert_eq!(cap("100000"), Some(0));
    assert_eq!(cap("lots"), Some(2));
}

#[test]
fn verify_examples() {
    for (name, n, limit) in [
        ("rct1", "99", 1e-10),
        ("rct2", "99", 1e-10),
        ("landen1", "99", 1e-10),
        ("landen2", "99", 1e-10),
        ("drct", "50", 1e-9),
    ] {
        let o = run(&["verify", "--name", name, "--n", n]);
        assert_eq!(o.code, Some(0), "{name}");
        let res: f64 = field(&stdout(&o), "max_residual").parse().unwrap();
        assert!(res <= limit, "{name}: {res}");
    }
    assert_eq!(run(&["verify", "--name", "nope"]).code, Some(2));
    assert_eq!(run(&["verify", "--name", "rct1", "--n", "1"]).code, Some(2));
}

#[test]
fn classify_examples() {
    let regions = |a: &str, b: &str| {
        let o = run(&["classify", "--a", a, "--b", b]);
        assert_eq!(o.code, Some(0));
        let s = stdout(&o);
        (
            field(&s, "regions").to_string(),
            field(&s, "equality_point").to_string(),
        )
    };
    assert_eq!(regions("0.2", "0.2"), ("D1,D5".into(), "false".into()));
    let (r, eq) = regions("0.3333333333333333", "0.6666666666666666");
    assert!(r.contains("D1") && r.contains("D3"));
    assert_eq!(eq, "true");
    assert_eq!(regions("1", "1").0, "D3,D6");
    assert_eq!(run(&["classify", "--a", "0", "--b", "1"]).code, Some(2));
    assert_eq!(run(&["classify", "--a", "1", "--b", "-1"]).code, Some(2));
}

#[test]
fn classify_eps_widens() {
    // ab - (2/9)(a + b) is a hair above zero here
    let o = run(&[
        "classify",
        "--a",
        "0.46",
        "--b",
        "0.4299107476635513",
        "--eps",
        "1e-5",
    ]);
    let plain = run(&["classify", "--a", "0.46", "--b", "0.4299107476635513"]);
    assert_eq!(field(&stdout(&plain), "regions"), "D2");
    let r = field(&stdout(&o), "regions").to_string();
    assert!(r.contains("D1") && r.contains("D2"), "{r}");
}

#[test]
fn turning_point_examples() {
    let o = run(&[
        "turning-point",
        "--a",
        "0.5237",
        "--b",
        "0.3891",
        "--which",
        "f",
    ]);
    assert_eq!(o.code, Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "kind"), "max");
    let r0: f64 = field(&s, "r0").parse().unwrap();
    assert!(r0 > 0.0 && r0 < 1.0);

    let o = run(&["turning-point", "--a", "0.2584", "--b", "1.5064"]);
    assert_eq!(field(&stdout(&o), "kind"), "min");

    let o = run(&["turning-point", "--a", "0.2", "--b", "0.2", "--which", "f"]);
    assert_eq!(o.code, Some(1));
    assert!(o.stderr.contains("no turning point"));

    assert_eq!(
        run(&["turning-point", "--a", "0.2", "--b", "0.2", "--which", "h"]).code,
        Some(2)
    );
}

#[test]
fn turning_point_absent_for_monotone_d2_and_d4_points() {
    assert_eq!(
        run(&["turning-point", "--a", "0.46", "--b", "0.46"]).code,
        Some(1)
    );
    assert_eq!(
        run(&["turning-point", "--a", "0.1", "--b", "3"]).code,
        Some(1)
    );
}

fn scan_rows(out: &str) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "a",
            "b",
            "regions",
            "claim",
            "holds",
            "worst_r",
            "worst_margin",
            "n_samples"
        ]
    );
    r.records().map(|x| x.unwrap()).collect()
}

#[test]
fn scan_flags_disagreement_outside_claimed_regions() {
    let args = [
        "scan", "--claim", "T2.1", "--a", "0.05:1.0", "--b", "0.05:1.0", "--na", "20", "--nb",
        "20", "--nr", "200",
    ];
    let o = run(&args);
    let rows = scan_rows(&stdout(&o));
    assert_eq!(rows.len(), 400);
    let mut d2_d4_consistent = 0;
    for row in &rows {
        let regions = &row[2];
        if regions.contains("D1") || regions.contains("D3") {
            assert_eq!(&row[4], "true", "{row:?}");
        } else if &row[4] == "false" {
            d2_d4_consistent += 1;
        }
    }
    // Most D2/D4 points in this box are monotone, so the run reports
    // disagreement with the "neither holds" claim.
    assert!(d2_d4_consistent >= 1);
    assert_eq!(o.code, Some(1));

    let again = run(&args);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn scan_holds_on_claimed_region() {
    let o = run(&[
        "scan",
        "--claim",
        "T2.4",
        "--a",
        "0.05:0.95",
        "--b",
        "0.05:0.95",
        "--na",
        "8",
        "--nb",
        "8",
        "--nr",
        "100",
    ]);
    assert_eq!(o.code, Some(0));
    let rows = scan_rows(&stdout(&o));
    assert!(rows.iter().any(|r| r[2].contains("D5")));
    for row in rows.iter().filter(|r| r[2].contains("D5")) {
        assert_eq!(&row[4], "true");
    }
}

#[test]
fn scan_degenerate_range_and_json() {
    let o = run(&[
        "scan", "--claim", "T2.1", "--a", "0.5:0.5", "--b", "0.1:1", "--na", "7", "--nb", "3",
        "--nr", "20",
    ]);
    assert_eq!(o.code, Some(0));
    let rows = scan_rows(&stdout(&o));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| &r[0] == "5.0000000000000000e-1"));

    let o = run(&[
        "scan", "--claim", "T2.1", "--a", "0.2:0.2", "--b", "0.2:1", "--nb", "2", "--nr", "20",
        "--format", "json",
    ]);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["claim"], "T2.1");
}

#[test]
fn scan_rejects_bad_flags() {
    for args in [
        vec!["scan", "--claim", "T2.1", "--a", "1:0.5", "--b", "0.1:1"],
        vec!["scan", "--claim", "T2.1", "--a", "0:1", "--b", "0.1:1"],
        vec!["scan", "--claim", "T2.1", "--a", "0.1-1", "--b", "0.1:1"],
        vec!["scan", "--claim", "T7", "--a", "0.1:1", "--b", "0.1:1"],
        vec![
            "scan", "--claim", "T2.1", "--a", "0.1:1", "--b", "0.1:1", "--na", "2000", "--nb",
            "2000",
        ],
    ] {
        assert_eq!(run(&args).code, Some(2), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let p = path.to_str().unwrap();
    let o = run(&[
        "scan", "--claim", "T2.2", "--a", "0.1:0.2", "--b", "0.1:0.2", "--na", "2", "--nb", "2",
        "--nr", "20", "--out", p,
    ]);
    assert_eq!(o.code, Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(scan_rows(&text).len(), 4);
    assert!(!text.contains('\r'));
}
