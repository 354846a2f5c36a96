use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use foliation_cli::commands::COMMANDS;
use foliation_cli::parse_document;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn foliate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foliate")).args(args).output().unwrap()
}

fn foliate_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_foliate"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn structured(cmd: &str, file: &str, extra: &[&str]) -> (Value, i32) {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap(), "--format", "structured"];
    args.extend_from_slice(extra);
    let out = foliate(&args);
    (json(&out), out.status.code().unwrap())
}

/// Every object with a `completeness` key is a claim with a valid tag,
/// and every `dim*` or `kernel_dim` entry is a claim.
fn check_tags(v: &Value, path: &str) {
    match v {
        Value::Object(m) => {
            if let Some(c) = m.get("completeness") {
                let c = c.as_str().unwrap();
                assert!(c == "exact" || (c.starts_with("truncated(") && c.ends_with(')')), "{path}: {c}");
            }
            for (k, x) in m {
                if (k.starts_with("dim") || k.ends_with("_dim")) && !k.starts_with("dim_x") {
                    assert!(x.get("completeness").is_some(), "{path}.{k} lacks a completeness tag");
                }
                check_tags(x, &format!("{path}.{k}"));
            }
        }
        Value::Array(xs) => xs.iter().enumerate().for_each(|(i, x)| check_tags(x, &format!("{path}[{i}]"))),
        _ => {}
    }
}

#[test]
fn pencil_cln_check() {
    let (v, code) = structured("cln-check", "pencil.fol", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["cln_regular"], true);
    assert_eq!(v["degree"]["coefficient_degree"], 1);
    assert_eq!(v["degree"]["normal_bundle_twist"], 2);
    assert_eq!(v["degree"]["foliation_degree"], 0);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 1);
    assert_eq!(table[0]["n"], 1);
    assert_eq!(table[0]["dim_exn"]["value"], 0);
}

#[test]
fn figueira_example() {
    let out = foliate(&["figueira", "5", "1", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: ExtendsUnobstructed"));
    let out = foliate(&["figueira", "3", "1", "3", "--format", "structured"]);
    assert_eq!(json(&out)["verdict"], "NoConclusion");
}

#[test]
fn contact_form_is_not_integrable() {
    let (v, code) = structured("check-integrability", "contact.fol", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failure");
    assert_eq!(v["integrable"], false);
    let comps = v["nonzero_components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["index"], "dx^dy^dz");
    assert_eq!(comps[0]["coefficient"], "1");
}

#[test]
fn rational_coefficients_survive() {
    let (v, code) = structured("check-integrability", "rational.fol", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["form"], "(1/3*x0^2*x1)*dx0 + (-1/3*x0^3)*dx1");
}

#[test]
fn malformed_exponent() {
    let out = foliate(&["check-integrability", fixture("bad_exponent.fol").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4") && err.contains("`2a`"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(foliate(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(foliate(&["figueira", "5", "1"]).status.code(), Some(2));
    assert_eq!(foliate(&["figueira", "5", "x", "3"]).status.code(), Some(2));
    let pencil = fixture("pencil.fol");
    let p = pencil.to_str().unwrap();
    assert_eq!(foliate(&["rigidity", p, "--mode", "prime-field:1000003"]).status.code(), Some(2));
    assert_eq!(foliate(&["ex-n", p, "--mode", "prime-field:12"]).status.code(), Some(2));
    assert_eq!(foliate(&["kupka-test", p]).status.code(), Some(2));
    assert_eq!(foliate(&["kupka-test", p, "--point", "1,0"]).status.code(), Some(2));
    assert_eq!(foliate(&["cone", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn semantic_errors_exit_one() {
    // non-projective input to a projective command
    let out = foliate(&["cln-check", fixture("contact.fol").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("mode projective"));
}

#[test]
fn obstructed_driver_exits_one_with_certificate() {
    let (v, code) = structured("extend-driver", "obstructed.fol", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failure");
    let step = &v["steps"][0];
    assert_eq!(step["order"], 2);
    assert_eq!(step["obstructed"], true);
    let cert = &v["certificate"];
    assert_eq!(cert["verified"], true);
    assert_eq!((cert["rows"].as_u64(), cert["cols"].as_u64()), (Some(40), Some(9)));
    assert_eq!(v["is_cone"], Value::Null);

    // independent re-check of y A = 0 and y b = 1 from the emitted JSON
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    let q = |s: &Value| s.as_str().unwrap().parse::<BigRational>().unwrap();
    let rows = cert["rows"].as_u64().unwrap() as usize;
    let cols = cert["cols"].as_u64().unwrap() as usize;
    let mut y = vec![BigRational::zero(); rows];
    for e in cert["certificate"].as_array().unwrap() {
        y[e[0].as_u64().unwrap() as usize] = q(&e[1]);
    }
    let mut ya = vec![BigRational::zero(); cols];
    for e in cert["matrix"].as_array().unwrap() {
        ya[e[1].as_u64().unwrap() as usize] += &y[e[0].as_u64().unwrap() as usize] * q(&e[2]);
    }
    let yb: BigRational = cert["rhs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| &y[e[0].as_u64().unwrap() as usize] * q(&e[1]))
        .sum();
    assert!(ya.iter().all(Zero::is_zero));
    assert!(yb.is_one());
}

#[test]
fn pencil_driver_reaches_cone() {
    let (v, code) = structured("extend-driver", "pencil.fol", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["stabilized"], true);
    assert_eq!(v["polynomial_extension"], true);
    assert_eq!(v["is_cone"], true);
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn fermat_differential() {
    let (v, _) = structured("ex-space", "fermat_df.fol", &["--degree-bound", "3"]);
    let dims: Vec<u64> = v["table"].as_array().unwrap().iter().map(|r| r["dim_ex"]["value"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 3, 3, 1]);
    assert_eq!(v["total_dim_ex"]["completeness"], "truncated(3)");
    let (v, _) = structured("ex-n", "fermat_df.fol", &["--max-order", "2"]);
    let dims: Vec<u64> = v["table"].as_array().unwrap().iter().map(|r| r["dim_exn"]["value"].as_u64().unwrap()).collect();
    assert_eq!(dims, [3, 3]);
}

#[test]
fn kupka_rigidity_and_points() {
    let (v, code) = structured("rigidity", "kupka.fol", &["--degree-bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "rigid_up_to");
    let (v, _) = structured("kupka-test", "kupka.fol", &["--point", "0,0"]);
    assert_eq!(v["class"], "Kupka");
    let (v, _) = structured("kupka-test", "kupka.fol", &["--point", "1/2,-3"]);
    assert_eq!(v["class"], "Regular");
}

#[test]
fn logfol_commands() {
    let (v, code) = structured("logfol-verify", "three_lines_log.fol", &["--degree-bound", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["genericity"]["passed"], true);
    let (v, code) = structured("logfol-build", "quadric_pair_log.fol", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["integrable"], true);
    assert_eq!(v["degree"]["coefficient_degree"], 3);
    // the emitted document is itself a valid input
    let doc = parse_document(v["document"].as_str().unwrap()).unwrap();
    assert!(doc.form.is_some() && doc.logspec.is_some());
    let out = foliate_stdin(&["check-integrability", "-"], v["document"].as_str().unwrap());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn equal_residues_fail_verification() {
    let text = "version 1\nvars x0 x1 x2\nmode projective\nlogspec\n  factor x0 residue 1\n  factor x1 residue 1\n  factor x0 + x1 + x2 residue -2\nend\n";
    let out = foliate_stdin(&["logfol-verify", "--format", "structured", "--degree-bound", "2"], text);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verified"], false);
    assert_eq!(v["genericity"]["distinct_residues"], false);
}

#[test]
fn cohomology_values() {
    let out = foliate(&["cohomology", "2", "-3", "2", "--format", "structured"]);
    assert_eq!(json(&out)["dim"]["value"], "1");
    let out = foliate(&["cohomology", "3", "2", "0", "--hypersurface", "3", "--format", "structured"]);
    assert_eq!(json(&out)["dim"]["value"], "10");
}

#[test]
fn stdin_matches_file() {
    let text = std::fs::read_to_string(fixture("pencil.fol")).unwrap();
    let a = foliate_stdin(&["ex-n"], &text);
    let b = foliate(&["ex-n", fixture("pencil.fol").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
}

#[test]
fn reports_are_deterministic_and_tagged() {
    let runs: [(&str, &str, &[&str]); 10] = [
        ("check-integrability", "obstructed.fol", &[]),
        ("singular-ideal", "pencil.fol", &["--degree-bound", "2"]),
        ("persistent-ideal", "pencil.fol", &["--degree-bound", "2"]),
        ("persistent-ideal", "kupka.fol", &["--mode", "prime-field:1000003"]),
        ("persistent-ideal", "contact.fol", &["--degree-bound", "1"]),
        ("unfold-extend", "kupka.fol", &["--seed", "7"]),
        ("is-trivial", "obstructed.fol", &[]),
        ("cone", "obstructed.fol", &[]),
        ("ex-n", "pencil.fol", &["--mode", "prime-field:1000003"]),
        ("extend-driver", "obstructed.fol", &[]),
    ];
    for (cmd, file, extra) in runs {
        let (a, _) = structured(cmd, file, extra);
        let (b, _) = structured(cmd, file, extra);
        assert_eq!(a, b, "{cmd} {file}");
        check_tags(&a, cmd);
        assert_eq!(a["schema"], "foliate-report/v1");
        let path = fixture(file);
        let mut args = vec![cmd, path.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert_eq!(foliate(&args).stdout, foliate(&args).stdout);
    }
}

#[test]
fn every_command_is_listed() {
    let out = foliate(&["--list"]);
    let listed: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(str::to_string).collect();
    let known: Vec<&str> = COMMANDS.iter().map(|(n, _)| *n).collect();
    assert_eq!(listed, known);
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(doc) = parse_document(&text) else {
            assert!(path.ends_with("bad_exponent.fol"), "{}", path.display());
            continue;
        };
        let again = parse_document(&doc.to_text()).unwrap();
        assert_eq!(again, doc, "{}", path.display());
        assert_eq!(again.to_text(), doc.to_text());
    }
}

#[test]
fn book_documents_parse() {
    let book = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../book/src");
    let mut seen = 0;
    for name in ["command-line.md", "reference/document-format.md"] {
        let text = std::fs::read_to_string(book.join(name)).unwrap();
        for block in text.split("```text\n").skip(1) {
            let block = &block[..block.find("```").unwrap()];
            if block.starts_with("version 1") {
                let doc = parse_document(block).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(doc.omega().is_ok());
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 3);
}
