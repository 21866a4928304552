use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgk"))
        .args(args)
        .env_remove("MGK_DEFAULT_K")
        .output()
        .expect("binary runs")
}

fn mgk_env(args: &[&str], k: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgk"))
        .args(args)
        .env("MGK_DEFAULT_K", k)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Checks the subset of JSON Schema used by the shipped schemas.
fn validate(root: &Value, s: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").ok_or(format!("unsupported $ref {r}"))?;
        return validate(root, &root["$defs"][name], v, path);
    }
    if let Some(alts) = s.get("oneOf").and_then(Value::as_array) {
        let n = alts.iter().filter(|a| validate(root, a, v, path).is_ok()).count();
        if n != 1 {
            return Err(format!("{path}: {n} oneOf branches match"));
        }
    }
    if let Some(t) = s.get("type") {
        let types: Vec<&str> = match t {
            Value::String(x) => vec![x.as_str()],
            Value::Array(xs) => xs.iter().filter_map(Value::as_str).collect(),
            _ => return Err("bad type keyword".into()),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            "number" => v.is_number(),
            "integer" => v.is_u64() || v.is_i64(),
            _ => false,
        });
        if !ok {
            return Err(format!("{path}: expected {types:?}, got {v}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if let Some(x) = v.as_f64() {
        let bound = |k: &str| s.get(k).and_then(Value::as_f64);
        if bound("minimum").is_some_and(|m| x < m)
            || bound("maximum").is_some_and(|m| x > m)
            || bound("exclusiveMinimum").is_some_and(|m| x <= m)
            || bound("exclusiveMaximum").is_some_and(|m| x >= m)
        {
            return Err(format!("{path}: {x} out of range"));
        }
    }
    if let (Some(p), Some(x)) = (s.get("pattern").and_then(Value::as_str), v.as_str()) {
        // only the exact-rational pattern is used
        assert_eq!(p, "^-?[0-9]+(/[0-9]+)?$");
        let body = x.strip_prefix('-').unwrap_or(x);
        let mut parts = body.split('/');
        let digits = |s: Option<&str>| s.is_some_and(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()));
        let ok = digits(parts.next()) && parts.clone().count() <= 1 && parts.next().map_or(true, |d| digits(Some(d)));
        if !ok {
            return Err(format!("{path}: '{x}' is not a rational"));
        }
    }
    if let Some(a) = v.as_array() {
        let len = a.len() as u64;
        if s.get("minItems").and_then(Value::as_u64).is_some_and(|m| len < m)
            || s.get("maxItems").and_then(Value::as_u64).is_some_and(|m| len > m)
        {
            return Err(format!("{path}: wrong length {len}"));
        }
        if let Some(items) = s.get("items") {
            for (i, x) in a.iter().enumerate() {
                validate(root, items, x, &format!("{path}[{i}]"))?;
            }
        }
    }
    if let Some(o) = v.as_object() {
        for k in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            let k = k.as_str().unwrap();
            if !o.contains_key(k) {
                return Err(format!("{path}: missing '{k}'"));
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, x) in o {
            match props.and_then(|p| p.get(k)) {
                Some(ps) => validate(root, ps, x, &format!("{path}.{k}"))?,
                None => match s.get("additionalProperties") {
                    Some(Value::Bool(false)) => return Err(format!("{path}: unexpected '{k}'")),
                    Some(ap @ Value::Object(_)) => validate(root, ap, x, &format!("{path}.{k}"))?,
                    _ => {}
                },
            }
        }
    }
    Ok(())
}

fn assert_schema(name: &str, v: &Value) {
    let s = schema(name);
    if let Err(e) = validate(&s, &s, v, "$") {
        panic!("{name}: {e}\n{v:#}");
    }
}

#[test]
fn validator_rejects_bad_documents() {
    let s = schema("eval_result.schema.json");
    let good = serde_json::json!({
        "n": 1, "z": [1.0, 0.0], "method": "stirling", "value": 0.0,
        "error_bound": 0.0, "terms_used": 1, "converged": true
    });
    assert!(validate(&s, &s, &good, "$").is_ok());
    let mut bad = good.clone();
    bad["method"] = "guess".into();
    assert!(validate(&s, &s, &bad, "$").is_err());
    let mut bad = good.clone();
    bad.as_object_mut().unwrap().remove("error_bound");
    assert!(validate(&s, &s, &bad, "$").is_err());
    let mut bad = good;
    bad["value"] = serde_json::json!([1.0]);
    assert!(validate(&s, &s, &bad, "$").is_err());
}

#[test]
fn eval_stirling_example() {
    let v = json_of(&mgk(&["eval", "--n", "2", "--z", "4", "--method", "stirling"]));
    assert_schema("eval_result.schema.json", &v);
    assert!((v["value"].as_f64().unwrap() - 2.484_906_649_8).abs() < 1e-9);
    assert!((v["value"].as_f64().unwrap() - 12f64.ln()).abs() < 1e-12);
    assert_eq!(v["method"], "stirling");
}

#[test]
fn eval_methods_agree() {
    let get = |m: &str| json_of(&mgk(&["eval", "--n", "3", "--z", "2.5", "--method", m]))["value"].as_f64().unwrap();
    let w = get("weierstrass");
    for m in ["auto", "em"] {
        assert!((get(m) - w).abs() < 1e-9, "{m}");
    }
}

#[test]
fn eval_complex_and_negative() {
    let v = json_of(&mgk(&["eval", "--n", "2", "--z", "1,2"]));
    assert_schema("eval_result.schema.json", &v);
    assert_eq!(v["value"].as_array().unwrap().len(), 2);
    let v = json_of(&mgk(&["eval", "--n", "1", "--z", "-2.5"]));
    // |Γ(-1.5)| = 4√π/3
    let expected = (4.0 * std::f64::consts::PI.sqrt() / 3.0).ln();
    assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-10);
}

#[test]
fn eval_text_format() {
    let o = mgk(&["eval", "--n", "1", "--z", "4", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("value = 3.178053830347"));
    assert!(s.contains("error_bound = "));
}

#[test]
fn domain_errors_exit_2() {
    assert_eq!(code(&mgk(&["eval", "--n", "2", "--z", "-1"])), 2);
    assert_eq!(code(&mgk(&["eval", "--n", "0", "--z", "1"])), 2);
    assert_eq!(code(&mgk(&["qeval", "--n", "1", "--z", "1", "--q", "1.5"])), 2);
    assert_eq!(code(&mgk(&["qeval", "--n", "1", "--z", "-2", "--q", "0.5", "--method", "moak"])), 2);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["bogus"][..],
        &["eval", "--z", "1"],
        &["eval", "--n", "2", "--z", "x"],
        &["eval", "--n", "2", "--z", "1", "--frobnicate"],
        &["eval", "--n", "2", "--z", "1", "--method", "stirling", "--m", "3"],
        &["eval", "--n", "2", "--z", "1", "--method", "em", "--K", "10"],
        &["eval", "--n", "2", "--z", "1", "--format", "csv"],
        &["qeval", "--n", "2", "--z", "1", "--q", "0.5", "--method", "moak"],
        &["qeval", "--n", "1", "--z", "1", "--q", "0.5", "--m", "3"],
        &["coeffs", "--n", "2", "--format", "csv"],
        &["coeffs", "--n", "2", "--form", "weierstrass", "--r-max", "3"],
        &["sweep", "--n", "1", "--z", "1", "--q-seq", "2^k:1..3"],
        &["xcheck", "--n-max", "0", "--grid", "1"],
    ] {
        let o = mgk(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(code(&mgk(&["--help"])), 0);
}

#[test]
fn not_converged_exit_3() {
    let o = mgk(&["qeval", "--n", "1", "--z", "0.5", "--q", "0.999999999"]);
    assert_eq!(code(&o), 3);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_schema("eval_result.schema.json", &v);
    assert_eq!(v["converged"], false);
}

#[test]
fn qeval_methods_agree() {
    let get = |extra: &[&str]| {
        let mut a = vec!["qeval", "--n", "1", "--z", "1.5", "--q", "0.7"];
        a.extend_from_slice(extra);
        let v = json_of(&mgk(&a));
        assert_schema("eval_result.schema.json", &v);
        v["value"].as_f64().unwrap()
    };
    let p = get(&[]);
    assert!((get(&["--method", "em"]) - p).abs() < 1e-9);
    assert!((get(&["--method", "moak"]) - p).abs() < 1e-9);
    assert!((get(&["--K", "5000"]) - p).abs() < 1e-9);
    let v = json_of(&mgk(&["qeval", "--n", "2", "--z", "1,0.5", "--q", "0.5"]));
    assert_schema("eval_result.schema.json", &v);
}

#[test]
fn xcheck_example() {
    let v = json_of(&mgk(&["xcheck", "--n-max", "3", "--grid", "0.5,2.5"]));
    assert_schema("residual_matrix.schema.json", &v);
    let pts = v["points"].as_array().unwrap();
    // input order: n outer, grid inner
    let order: Vec<(u64, f64)> =
        pts.iter().map(|p| (p["n"].as_u64().unwrap(), p["z"].as_f64().unwrap())).collect();
    assert_eq!(order, vec![(1, 0.5), (1, 2.5), (2, 0.5), (2, 2.5), (3, 0.5), (3, 2.5)]);
    for p in pts {
        let r = p["residuals"].as_array().unwrap();
        for (i, row) in r.iter().enumerate() {
            for (j, x) in row.as_array().unwrap().iter().enumerate() {
                let x = x.as_f64().unwrap();
                if i == j {
                    assert_eq!(x, 0.0);
                } else {
                    assert!(x < 1e-6, "{p}");
                }
            }
        }
        assert_eq!(p["within_budget"], true);
    }
}

#[test]
fn xcheck_csv_includes_stirling_far_out() {
    let o = mgk(&["xcheck", "--n-max", "2", "--grid", "1,6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "n,z,method_a,method_b,residual,error_bound_a,error_bound_b,budget");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    // one pair at z = 1, three pairs at z = 6, for each n
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().any(|r| r[3] == "stirling"));
    for r in &rows {
        assert!(r[4].parse::<f64>().unwrap() <= r[7].parse::<f64>().unwrap());
    }
}

#[test]
fn default_k_from_environment() {
    let args = ["eval", "--n", "2", "--z", "1.5", "--method", "weierstrass"];
    let v = json_of(&mgk_env(&args, "2000"));
    assert_eq!(v["terms_used"], 2000);
    let full = json_of(&mgk(&args));
    assert!((v["value"].as_f64().unwrap() - full["value"].as_f64().unwrap()).abs() < 1e-8);
    assert_eq!(code(&mgk_env(&args, "many")), 1);
    let v = json_of(&mgk_env(&["qeval", "--n", "1", "--z", "1", "--q", "0.5"], "300"));
    assert_eq!(v["terms_used"], 300);
}

#[test]
fn sweep_csv_and_json() {
    let o = mgk(&["sweep", "--n", "2", "--z", "0.5", "--q-seq", "1-10^-k:1..3"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "q,delta,error_bound,terms_used,method,converged");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 3);
    let q: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(q.windows(2).all(|w| w[0] < w[1]));
    let d: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]));
    let v = json_of(&mgk(&["sweep", "--n", "1", "--z", "1.5", "--q-seq", "0.5,0.9", "--format", "json"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["classical_error_bound"].is_number());
}

#[test]
fn coeffs_example() {
    let v = json_of(&mgk(&["coeffs", "--n", "3", "--form", "stirling"]));
    assert_schema("coeff_bundle.schema.json", &v);
    assert_eq!(v["text"]["log_coeff"], "z^3/6 - z^2/4 + 1/24");
    assert_eq!(v["bundle"]["log_coeff"], serde_json::json!(["1/24", "0/1", "-1/4", "1/6"]));
    let o = mgk(&["coeffs", "--n", "3", "--format", "text"]);
    assert!(stdout(&o).starts_with("log_coeff: z^3/6 - z^2/4 + 1/24\n"));
    let v = json_of(&mgk(&["coeffs", "--n", "2", "--form", "weierstrass"]));
    assert_eq!(v["text"]["phi_n"]["-1"], "z^2/2");
    assert_eq!(v["text"]["phi_n"]["0"], "-z");
    assert_eq!(v["error_bound"], 0.0);
}

#[test]
fn zeta_table_rows() {
    let v = json_of(&mgk(&["zeta-table", "--j-max", "4"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (j, r) in rows.iter().enumerate() {
        assert_eq!(r["j"], j);
        assert!(r["error_bound"].as_f64().unwrap() < 1e-12);
    }
    assert!((rows[0]["value"].as_f64().unwrap() + 0.918_938_533_204_672_8).abs() < 1e-14);
    let o = mgk(&["zeta-table", "--j-max", "2", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "j,value,error_bound,terms_used,converged");
}

#[test]
fn props_report() {
    let v = json_of(&mgk(&["props", "--n", "3"]));
    assert_eq!(v["holds"], true);
    assert!(v["error_bound"].is_number());
    assert_eq!(v["report"]["grid"].as_array().unwrap().len(), 5);
}

#[test]
fn out_path_writes_file() {
    let dir = std::env::temp_dir().join(format!("mgk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeta.csv");
    let o = mgk(&["zeta-table", "--j-max", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&path).unwrap();
    assert_eq!(s.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["xcheck", "--n-max", "4", "--grid", "0.25,1,2.5,5,9.5", "--K", "20000"];
    let a = mgk(&args);
    let b = mgk(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
