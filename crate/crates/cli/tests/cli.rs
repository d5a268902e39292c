use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};
use vdecomp_cli::cache::{Cache, CACHE_VERSION};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vdecomp").chain(args.iter().copied());
    let code = vdecomp_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn validate(schema_name: &str, instance: &Value) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema");
    let load = |name: &str| -> Value { serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap() };
    let common = load("common.schema.json");
    let registry = jsonschema::Registry::new()
        .add(common["$id"].as_str().unwrap(), common.clone())
        .unwrap()
        .prepare()
        .unwrap();
    let schema = load(schema_name);
    let validator = jsonschema::options().with_registry(&registry).build(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn enumerate_counts() {
    for (n, r, expected) in [("1", "2", 2), ("0", "1", 1), ("2", "2", 5)] {
        let v = run_json(&["enumerate", "--n", n, "--r", r]);
        assert_eq!(v["counts"]["multipartitions"], json!(expected), "n={n} r={r}");
        validate("enumerate.schema.json", &v);
    }
}

#[test]
fn enumerate_lists_tableau_counts() {
    let v = run_json(&["enumerate", "--n", "2", "--r", "2"]);
    let standard: Vec<u64> = v["multipartitions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["standard"].as_u64().unwrap())
        .collect();
    assert_eq!(standard, [1, 1, 2, 1, 1]);
    assert_eq!(v["counts"]["compositions"], json!(10));
}

#[test]
fn vdecomp_examples() {
    let v = run_json(&["vdecomp", "--n", "1", "--r", "2", "--Qhat", "0,2", "--p", "2"]);
    assert_eq!(v["matrix"], json!([[[1], [0, 1]], [[], [1]]]));
    assert_eq!(v["labels"], json!(["1|", "|1"]));
    validate("vdecomp.schema.json", &v);

    let v = run_json(&["vdecomp", "--n", "2", "--r", "1", "--qhat", "1", "--p", "2"]);
    assert_eq!(v["labels"], json!(["2", "1,1"]));
    assert_eq!(v["matrix"][0][1], json!([0, 1]));
}

#[test]
fn semisimple_parameters_give_the_identity() {
    let v = run_json(&["vdecomp", "--n", "2", "--r", "2", "--p", "5", "--Qhat", "1,2"]);
    let m = v["matrix"].as_array().unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(entry, &if i == j { json!([1]) } else { json!([]) });
        }
    }
}

#[test]
fn x_adic_system_runs() {
    let v = run_json(&["vdecomp", "--n", "2", "--r", "2", "--system", "x-adic"]);
    validate("vdecomp.schema.json", &v);
    assert_eq!(v["system"]["system"], json!("x-adic"));
    let v = run_json(&["vdecomp", "--n", "1", "--r", "2", "--system", "x-adic", "--e", "3", "--Qhat", "1;0,1"]);
    assert_eq!(v["matrix"], json!([[[1], []], [[], [1]]]));
}

#[test]
fn other_artifacts_validate() {
    let args = ["--n", "2", "--r", "2", "--Qhat", "0,2"];
    let with = |cmd: &'static str| -> Vec<&'static str> { std::iter::once(cmd).chain(args).collect() };
    validate("gram.schema.json", &run_json(&with("gram")));
    validate("decomp.schema.json", &run_json(&with("decomp")));
    let mut verify = with("verify-product");
    verify.extend(["--p-split", "1,1"]);
    validate("verify-product.schema.json", &run_json(&verify));
}

#[test]
fn decomp_is_the_v_decomp_at_one() {
    let d = run_json(&["decomp", "--n", "3", "--r", "2", "--Qhat", "0,2"]);
    let v = run_json(&["vdecomp", "--n", "3", "--r", "2", "--Qhat", "0,2"]);
    let d = d["matrix"].as_array().unwrap();
    for (drow, vrow) in d.iter().zip(v["matrix"].as_array().unwrap()) {
        for (x, p) in drow.as_array().unwrap().iter().zip(vrow.as_array().unwrap()) {
            let sum: u64 = p.as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
            assert_eq!(x.as_u64().unwrap(), sum);
        }
    }
}

#[test]
fn gram_for_one_shape() {
    let v = run_json(&["gram", "--n", "2", "--r", "1", "--lambda", "2"]);
    let grams = v["grams"].as_array().unwrap();
    assert_eq!(grams.len(), 1);
    assert_eq!(grams[0]["lambda"], json!("2"));
    let omega = grams[0]["blocks"].as_array().unwrap().iter().find(|b| b["weight"] == json!("1,1")).unwrap();
    assert_eq!(omega["gram"], grams[0]["specht_gram"]);
    assert_eq!(omega["profile"], json!([1]));
}

#[test]
fn csv_and_latex_outputs() {
    let (code, csv, _) = run(&["vdecomp", "--n", "2", "--r", "1", "--output", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv, "lambda,2,\"1,1\"\n2,1,v\n\"1,1\",0,1\n");
    let (code, tex, _) = run(&["vdecomp", "--n", "2", "--r", "2", "--Qhat", "0,2", "--output", "latex"]);
    assert_eq!(code, 0);
    assert!(tex.starts_with("\\documentclass{article}"));
    assert_eq!(tex.matches("\\begin{").count(), tex.matches("\\end{").count());
    assert!(tex.contains("$v$"));
}

#[test]
fn verify_product_exit_status() {
    let (code, out, _) = run(&["verify-product", "--n", "2", "--r", "2", "--Qhat", "0,2", "--p-split", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["schur_fail"], json!(0));
    let (code, _, _) = run(&["verify-product", "--n", "2", "--r", "2", "--Qhat", "0,2", "--p-split", "1,1"]);
    assert_eq!(code, 0);
}

#[test]
fn schur_check_passes() {
    let v = run_json(&["schur-check", "--n", "3", "--r", "2", "--Qhat", "0,3", "--p", "3"]);
    assert_eq!(v["pass"], json!(true));
    let (code, _, err) = run(&["schur-check", "--n", "2", "--r", "2", "--m", "1,1"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["vdecomp", "--r", "2"][..],
        &["vdecomp", "--n", "2", "--r", "3", "--Qhat", "0,2"],
        &["vdecomp", "--n", "2", "--r", "2", "--m", "1"],
        &["verify-product", "--n", "2", "--r", "2"],
        &["verify-product", "--n", "2", "--r", "2", "--p-split", "1,2"],
        &["vdecomp", "--n", "2", "--e", "3"],
        &["vdecomp", "--n", "2", "--output", "pdf"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 1, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("vdecomp"));
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let base = ["vdecomp", "--n", "3", "--r", "2", "--Qhat", "0,2"];
    let cached: Vec<&str> = base.iter().copied().chain(["--cache-dir", d]).collect();
    let (_, plain, _) = run(&base);
    let (_, first, _) = run(&cached);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let (_, second, _) = run(&cached);
    assert_eq!(plain, first);
    assert_eq!(plain, second);
}

#[test]
fn stale_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["vdecomp", "--n", "2", "--r", "2", "--Qhat", "0,2", "--cache-dir", d];
    let (_, first, _) = run(&args);
    let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let key = path.file_stem().unwrap().to_str().unwrap().to_string();
    let payload = Cache::new(dir.path()).get(&key).unwrap().unwrap();
    Cache::with_version(dir.path(), CACHE_VERSION + 7).put(&key, &payload).unwrap();
    let (code, second, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    assert!(Cache::new(dir.path()).get(&key).unwrap().is_some());
}

#[test]
fn corrupted_cache_is_an_integrity_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["verify-product", "--n", "2", "--r", "2", "--Qhat", "0,2", "--p-split", "1,1", "--cache-dir", d];
    assert_eq!(run(&args).0, 0);
    let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&path).unwrap();
    let mut entry: Value = serde_json::from_str(&text).unwrap();
    let payload = entry["payload"].as_str().unwrap().replacen("\\\"1\\\"", "\\\"5\\\"", 1);
    let payload = if payload == entry["payload"].as_str().unwrap() {
        payload.replacen('1', "5", 1)
    } else {
        payload
    };
    entry["payload"] = Value::String(payload);
    fs::write(&path, entry.to_string()).unwrap();
    let (code, out, err) = run(&args);
    assert_eq!(code, 3, "{err}");
    assert!(out.is_empty());
    assert!(err.contains("integrity"));

    let mut no_cache: Vec<&str> = args.to_vec();
    no_cache.push("--no-cache");
    assert_eq!(run(&no_cache).0, 0);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_vdecomp");
    let ok = Command::new(bin).args(["enumerate", "--n", "1", "--r", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["counts"]["multipartitions"], json!(2));
    let bad = Command::new(bin).args(["vdecomp"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let io = Command::new(bin)
        .args(["vdecomp", "--n", "1", "--r", "2", "--cache-dir"])
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert_eq!(io.status.code(), Some(3));
}
