use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use isobelief::json::{mass_to_json, parse_mass, parse_mass_stream};
use isobelief::mass::Tolerances;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_isobelief"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn numbers(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
    }
}

#[test]
fn decompose_tau_of_e4() {
    let out = stdout(&run(&[
        "decompose",
        "--form",
        "tau",
        fixture("e4.json").to_str().unwrap(),
    ]));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["form"], "tau");
    assert_close(&numbers(&doc["poss"]), &[1.0, 0.95, 0.65], 1e-12);
    let c = &doc["commitment"];
    let got: Vec<f64> = ["3", "5", "6", "7"].iter().map(|k| c[k].as_f64().unwrap()).collect();
    assert_close(&got, &[1.0, 0.3333, -1.0, 0.6923], 1e-3);
}

#[test]
fn fuse_hprod_gives_the_table_row() {
    let out = stdout(&run(&[
        "fuse",
        "--rule",
        "hprod",
        fixture("e6_m1.json").to_str().unwrap(),
        fixture("e6_m2.json").to_str().unwrap(),
    ]));
    let m = parse_mass(&out).unwrap();
    assert_close(
        m.masses(),
        &[0.0984, 0.1547, 0.1131, 0.1919, 0.0803, 0.2445, 0.0293, 0.0879],
        5e-4,
    );
}

#[test]
fn random_pair_through_ccr_matches_convolution() {
    let pair = stdout(&run(&["random", "--seed", "7", "--n", "3", "--count", "2"]));
    let fused = stdout(&run_with_stdin(&["fuse", "--rule", "ccr"], pair.as_bytes()));
    let ms = parse_mass_stream(&pair, Tolerances::default()).unwrap();
    assert_eq!(ms.len(), 2);
    let (a, b) = (ms[0].masses(), ms[1].masses());
    let mut want = vec![0.0; a.len()];
    for i in 0..a.len() {
        for j in 0..b.len() {
            want[i & j] += a[i] * b[j];
        }
    }
    assert_close(parse_mass(&fused).unwrap().masses(), &want, 1e-12);
}

#[test]
fn random_is_seed_deterministic_and_reparses() {
    let args = [
        "random",
        "--seed",
        "3",
        "--n",
        "4",
        "--count",
        "5",
        "--kind",
        "nondogmatic",
    ];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    let ms = parse_mass_stream(&a, Tolerances::default()).unwrap();
    let again: String = ms.iter().map(|m| mass_to_json(m) + "\n").collect();
    assert_eq!(a, again);
}

#[test]
fn fusion_table_has_every_rule() {
    let out = stdout(&run(&[
        "fuse",
        "--table",
        fixture("e6_m1.json").to_str().unwrap(),
        fixture("e6_m2.json").to_str().unwrap(),
    ]));
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "rule,m0,m1,m2,m3,m4,m5,m6,m7");
    assert_eq!(rows.len(), 9);
    assert!(rows[1].starts_with("ccr,0.278000,0.227200"));
}

#[test]
fn normalize_removes_the_conflict() {
    let out = stdout(&run(&[
        "fuse",
        "--rule",
        "ccr",
        "--normalize",
        fixture("e6_m1.json").to_str().unwrap(),
        fixture("e6_m2.json").to_str().unwrap(),
    ]));
    let m = parse_mass(&out).unwrap();
    assert_eq!(m.empty_mass(), 0.0);
    assert!((m.masses()[1] - 0.2272 / 0.722).abs() < 1e-9);
}

#[test]
fn decompositions_reconstruct_the_input() {
    let input = fixture("e6_m1.json");
    let original = parse_mass(&std::fs::read_to_string(&input).unwrap()).unwrap();
    for form in ["tau", "zeta", "sigma", "v", "t"] {
        let doc = stdout(&run(&["decompose", "--form", form, input.to_str().unwrap()]));
        let back = stdout(&run_with_stdin(&["reconstruct"], doc.as_bytes()));
        let m = parse_mass(&back).unwrap();
        assert!(m.max_abs_diff(&original) < 1e-9, "{form}: {back}");
    }
}

#[test]
fn measure_reports_each_input() {
    let out = stdout(&run(&[
        "measure",
        fixture("e5_m5.json").to_str().unwrap(),
        fixture("e5_m7.json").to_str().unwrap(),
    ]));
    let reports: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 2);
    assert!((reports[0]["yager"].as_f64().unwrap() - 0.7).abs() < 1e-12);
    assert!((reports[0]["commitment_spec"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((reports[1]["commitment_spec"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    assert!(reports[1]["entropy_bits"].as_f64().is_some());
}

#[test]
fn undefined_commitment_specificity_is_printed() {
    let certain = r#"{"n":2,"order":"binary-lsb-w1","masses":[0,1,0,0]}"#;
    let out = stdout(&run_with_stdin(&["measure"], certain.as_bytes()));
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["commitment_spec"], "undefined");
}

#[test]
fn pignistic_network_gives_betp() {
    let e4 = fixture("e4.json");
    let revised = parse_mass(&stdout(&run(&["ben", e4.to_str().unwrap()]))).unwrap();
    let p: Value = serde_json::from_str(&stdout(&run(&["transform", "--kind", "betp", e4.to_str().unwrap()]))).unwrap();
    let bp = numbers(&p["probs"]);
    for (i, x) in bp.iter().enumerate() {
        assert!((revised.masses()[1 << i] - x).abs() < 1e-12);
    }
}

#[test]
fn explicit_network_file() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    std::fs::write(&net, r#"{"n":2,"tau":{"3":0.5},"xi":{"3>1":1.0,"3>2":0.0}}"#).unwrap();
    let m = r#"{"n":2,"order":"binary-lsb-w1","masses":[0,0,0,1]}"#;
    let out = stdout(&run_with_stdin(&["ben", "--net", net.to_str().unwrap()], m.as_bytes()));
    assert_close(parse_mass(&out).unwrap().masses(), &[0.0, 0.5, 0.0, 0.5], 1e-12);
}

#[test]
fn transform_emits_set_functions() {
    let out = stdout(&run(&[
        "transform",
        "--kind",
        "pl",
        fixture("e4.json").to_str().unwrap(),
    ]));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["kind"], "pl");
    assert_close(
        &numbers(&doc["values"]),
        &[0.0, 0.6, 0.6, 1.0, 0.5, 0.8, 0.7, 1.0],
        1e-12,
    );
}

#[test]
fn sweeps_report_validity() {
    let e4 = fixture("e4.json");
    let tau = stdout(&run(&[
        "sweep",
        "--base",
        "iso_tau",
        "--target",
        "7",
        "--steps",
        "41",
        e4.to_str().unwrap(),
    ]));
    let rows: Vec<&str> = tau.lines().collect();
    assert_eq!(rows[0], "param,m0,m1,m2,m3,m4,m5,m6,m7,valid");
    assert_eq!(rows.len(), 42);
    assert!(rows[1..].iter().all(|r| r.ends_with(",true")));
    assert!(rows[1].starts_with("-1.000000,") && rows[41].starts_with("1.000000,"));

    let sigma = stdout(&run(&[
        "sweep",
        "--base",
        "sigma",
        "--target",
        "3",
        e4.to_str().unwrap(),
    ]));
    assert!(sigma.lines().skip(1).any(|r| r.ends_with(",false")));

    let t = stdout(&run(&[
        "sweep",
        "--base",
        "t",
        "--target",
        "3",
        "--lo",
        "-0.5",
        "--hi",
        "0.5",
        "--steps",
        "5",
        e4.to_str().unwrap(),
    ]));
    assert_eq!(t.lines().count(), 6);
}

#[test]
fn tables_match_the_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&run(&[
        "tables",
        "--fixtures",
        "fixtures",
        "--out",
        dir.path().to_str().unwrap(),
    ]));
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    let mut names: Vec<_> = std::fs::read_dir(&golden)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 7);
    for name in names {
        let want = std::fs::read(golden.join(&name)).unwrap();
        let got = std::fs::read(dir.path().join(&name)).unwrap();
        assert!(got == want, "{name:?} differs from its golden file");
    }
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = run(&["random", "--seed", "1", "-o", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    parse_mass(&std::fs::read_to_string(path).unwrap()).unwrap();
}

#[test]
fn model_errors_exit_with_one() {
    let bad_sum = r#"{"n":1,"order":"binary-lsb-w1","masses":[0.2,0.2]}"#;
    let o = run_with_stdin(&["measure"], bad_sum.as_bytes());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sum"));

    let dogmatic = fixture("e5_m1.json");
    assert_eq!(
        run(&["decompose", "--form", "sigma", dogmatic.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["fuse", "--rule", "ccr", dogmatic.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let sweep = run(&[
        "sweep",
        "--base",
        "iso_tau",
        "--target",
        "1",
        fixture("e4.json").to_str().unwrap(),
    ]);
    assert_eq!(sweep.status.code(), Some(1));
}

#[test]
fn relaxed_sum_tolerance_accepts_printed_values() {
    let printed = r#"{"n":3,"order":"binary-lsb-w1","masses":[0,0,0.4333,0.2333,0,0,0.2333,0.1]}"#;
    let args = ["transform", "--kind", "betp"];
    assert_eq!(run_with_stdin(&args, printed.as_bytes()).status.code(), Some(1));
    let relaxed = ["--sum-tol", "1e-3", "transform", "--kind", "betp"];
    let p: Value = serde_json::from_str(&stdout(&run_with_stdin(&relaxed, printed.as_bytes()))).unwrap();
    assert_close(&numbers(&p["probs"]), &[0.15, 0.7, 0.15], 1e-3);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run_with_stdin(&["measure"], b"{not json").status.code(), Some(2));
    let wrong_order = r#"{"n":1,"order":"msb","masses":[0,1]}"#;
    assert_eq!(
        run_with_stdin(&["measure"], wrong_order.as_bytes()).status.code(),
        Some(2)
    );
    assert_eq!(run(&["measure", "/nonexistent/input.json"]).status.code(), Some(2));
    assert_eq!(run(&["fuse", "--rule", "nope"]).status.code(), Some(2));
    assert_eq!(
        run_with_stdin(&["reconstruct"], br#"{"n":2,"kind":"w","values":{}}"#)
            .status
            .code(),
        Some(2)
    );
}
