use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use chardeg::cli::{CertificateDocument, EXIT_INVALID_CERTIFICATE, EXIT_NOT_OCCURS, EXIT_OK, EXIT_UNKNOWN};

fn chardeg(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chardeg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gamma_text(k: usize, t: usize) -> String {
    stdout(&chardeg(&["gamma", &k.to_string(), &t.to_string()], ""))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn prism_is_refuted_and_four_cycle_occurs() {
    let o = chardeg(&["classify"], &gamma_text(3, 3));
    assert_eq!(code(&o), EXIT_NOT_OCCURS);
    let out = stdout(&o);
    assert!(out.contains("verdict: NotOccurs"), "{out}");
    assert!(out.contains("rule: all_admissible"), "{out}");

    let o = chardeg(&["classify", "-"], &gamma_text(2, 2));
    assert_eq!(code(&o), EXIT_OK);
    assert!(stdout(&o).contains("witness: DirectProduct"));
}

#[test]
fn missing_input_is_an_input_error() {
    assert_eq!(code(&chardeg(&["classify", "nosuchfile"], "")), 2);
    let o = chardeg(&["classify"], "v a\ne a b\n");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2: undeclared vertex b"));
    assert_eq!(code(&chardeg(&["classify", "--bogus"], "")), 1);
    assert_eq!(code(&chardeg(&[], "")), 1);
}

#[test]
fn exit_codes_follow_the_verdict() {
    for (k, t) in [(1, 1), (2, 2), (5, 1), (3, 2), (3, 3), (4, 4)] {
        let o = chardeg(&["classify", "--json"], &gamma_text(k, t));
        let doc = CertificateDocument::from_json(&stdout(&o)).unwrap();
        let expected = match doc.verdict.as_str() {
            "occurs" => EXIT_OK,
            "not_occurs" => EXIT_NOT_OCCURS,
            _ => EXIT_UNKNOWN,
        };
        assert_eq!(code(&o), expected, "Γ({k},{t})");
    }
    let o = chardeg(&["classify"], "v a\nv b\nv c\nv d\ne a b\ne c d\n");
    assert_eq!(code(&o), EXIT_UNKNOWN);
    assert!(stdout(&o).contains("reason: two complete components"));
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "g.txt", &gamma_text(4, 3));
    let cert = dir.path().join("g.json");
    let o = chardeg(&["classify", &graph, "--cert", cert.to_str().unwrap(), "--json"], "");
    assert_eq!(code(&o), EXIT_NOT_OCCURS);
    let doc = std::fs::read_to_string(&cert).unwrap();
    assert_eq!(doc, stdout(&o));

    let o = chardeg(&["verify", &graph, cert.to_str().unwrap()], "");
    assert_eq!(code(&o), EXIT_OK, "{}", stdout(&o));
    assert_eq!(stdout(&o), "valid not_occurs\n");
    assert_eq!(code(&chardeg(&["verify", cert.to_str().unwrap()], "")), EXIT_OK);

    let other = write(dir.path(), "other.txt", &gamma_text(3, 3));
    let o = chardeg(&["verify", &other, cert.to_str().unwrap()], "");
    assert_eq!(code(&o), EXIT_INVALID_CERTIFICATE);

    let mut value: serde_json::Value = serde_json::from_str(&doc).unwrap();
    let subsets = value["certificate"]["proofs"][0]["edge_subsets"].as_array_mut().unwrap();
    subsets.pop();
    let tampered = write(dir.path(), "bad.json", &value.to_string());
    let o = chardeg(&["verify", &graph, &tampered], "");
    assert_eq!(code(&o), EXIT_INVALID_CERTIFICATE);
    assert!(stdout(&o).starts_with("invalid: "));

    let garbage = write(dir.path(), "garbage.json", "{");
    assert_eq!(code(&chardeg(&["verify", &garbage], "")), 2);
}

#[test]
fn documents_are_byte_identical_across_runs() {
    let text = gamma_text(5, 4);
    let a = stdout(&chardeg(&["classify", "--json"], &text));
    let b = stdout(&chardeg(&["classify", "--json"], &text));
    assert_eq!(a, b);
    assert!(a.contains("\"format_version\": 1"));
}

#[test]
fn seeded_knowledge_base() {
    let dir = tempfile::tempdir().unwrap();
    let doc = stdout(&chardeg(&["classify", "--json"], &gamma_text(4, 4)));
    let seed = write(dir.path(), "seed.json", &format!("[{doc}]"));
    let o = chardeg(&["--seed-kb", &seed, "classify", "--json"], &gamma_text(4, 4));
    assert_eq!(code(&o), EXIT_NOT_OCCURS);
    assert_eq!(stdout(&o), doc);

    let o = chardeg(&["classify", "--seed-kb", &seed], &gamma_text(5, 4));
    assert_eq!(code(&o), EXIT_NOT_OCCURS);

    let mut forged: serde_json::Value = serde_json::from_str(&doc).unwrap();
    forged["certificate"]["proofs"][1]["edge_subsets"].as_array_mut().unwrap().remove(0);
    let bad = write(dir.path(), "bad.json", &forged.to_string());
    let o = chardeg(&["--seed-kb", &bad, "classify"], &gamma_text(4, 4));
    assert_eq!(code(&o), 2);
}

#[test]
fn partition_command() {
    let dir = tempfile::tempdir().unwrap();
    let text = gamma_text(3, 3).replace("e a1 b1\n", "");
    let graph = write(dir.path(), "g.txt", &text);
    let o = chardeg(&["partition", &graph, "a1"], "");
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(
        stdout(&o),
        "base a1\nrho1 a1\nrho2 a2 a3\nrho3 b2 b3\nrho4 b1\nleft 3\nright 3\nviolations rho3_too_small(rho3=2) power_bound(left=3, right=3)\n"
    );
    assert_eq!(code(&chardeg(&["partition", &graph, "nope"], "")), 2);
}

#[test]
fn dot_export_is_stable() {
    let text = gamma_text(2, 2);
    let a = stdout(&chardeg(&["export-dot"], &text));
    let b = stdout(&chardeg(&["export-dot", "-"], &text));
    assert_eq!(a, b);
    assert_eq!(a.matches(" -- ").count(), 4);
}

#[test]
fn enumeration_reports() {
    let o = chardeg(&["enumerate", "3"], "");
    assert_eq!(code(&o), EXIT_OK);
    let out = stdout(&o);
    assert!(out.starts_with("order 3\nclasses 4\npalfy_passing 3\noccurs 3\nnot_occurs 0\nunknown 0\n"), "{out}");
    assert_eq!(out.lines().count(), 6 + 3);

    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.txt");
    let par = dir.path().join("par.txt");
    let o = chardeg(&["enumerate", "6", "--report", seq.to_str().unwrap()], "");
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout(&o).lines().count(), 6);
    chardeg(&["enumerate", "6", "--parallel", "--report", par.to_str().unwrap()], "");
    assert_eq!(std::fs::read(&seq).unwrap(), std::fs::read(&par).unwrap());
    assert_eq!(code(&chardeg(&["enumerate", "0"], "")), 2);
}

#[test]
fn engine_flags_are_accepted() {
    let text = gamma_text(5, 4);
    for flags in [
        vec!["--narrow-sylow-edges"],
        vec!["--max-branches", "16"],
        vec!["--sylow-depth", "1"],
    ] {
        let mut args = flags.clone();
        args.push("classify");
        let o = chardeg(&args, &text);
        assert_eq!(code(&o), EXIT_NOT_OCCURS, "{flags:?}");
    }
    assert_eq!(code(&chardeg(&["--max-branches", "x", "classify"], &text)), 1);
}
