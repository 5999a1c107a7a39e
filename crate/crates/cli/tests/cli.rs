use std::io::Write;
use std::process::{Command, Stdio};

use gsw_cli::{run, RunError, EXIT_ERROR, EXIT_OK, EXIT_PARSE};
use serde_json::Value;

fn gsw(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gsw"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn koszul_complex_twists() {
    let t = run("ring R weights 2 3 5\nideal m = x0, x1, x2\nmodule Q = quotient m\nresolve Q\n").unwrap();
    assert!(t.text().starts_with("F0: 0\nF1: 2 3 5\nF2: 5 7 8\nF3: 10\n"), "{}", t.text());
}

#[test]
fn two_generator_betti_table_is_byte_exact() {
    let s = "ring S weights 1 2\n\
             module A = coker [[x1]] twists 1\n\
             module B = free 2\n\
             module M = sum A B\n\
             betti M\n\
             regularity M\n\
             ideal m = x0, x1\n\
             regularity m --koszul\n";
    let t = run(s).unwrap();
    assert_eq!(t.outputs[0].text, "   0 1\n1: 1 .\n2: 1 1\n");
    assert_eq!(
        t.outputs[1].text,
        "koszul regularity 2 (H^2 in degree -1)\nweighted regularity 1 (H^1 in degree 0)\n"
    );
    assert_eq!(t.outputs[2].json["regularity"]["koszul"]["value"], 1);
}

const HIRZEBRUCH: &str = "fan H rays [[1,0],[0,1],[-1,3],[0,-1]] cones [[0,1],[1,2],[2,3],[3,0]]\n\
                          ring R fan H\n\
                          ideal I = x0*x1\n\
                          module Q = quotient I\n\
                          module T = truncate Q at (2,3)\n";

#[test]
fn hirzebruch_truncation_session() {
    let t = run(&format!("{HIRZEBRUCH}betti T\ntoric check H T --assume-hypothesis\n")).unwrap();
    assert_eq!(
        t.outputs[0].text,
        "0: (0,0)^6\n1: (-3,1)^2\n1: (0,1)^3\n1: (1,0)^5\n2: (-2,1)^1\n2: (1,1)^3\n"
    );
    let check = &t.outputs[1];
    assert!(!check.violation);
    assert!(check.text.ends_with("containment holds\n"));
    assert_eq!(check.json["report"]["torsion_free"], true);
    assert_eq!(check.json["lemmas"].as_array().unwrap().len(), 2);
}

#[test]
fn hirzebruch_polytope_facets() {
    let t = run(&format!("{HIRZEBRUCH}toric polytope H --i 0\ntoric polytope H --i 1\n")).unwrap();
    for (i, out) in t.outputs.iter().enumerate() {
        let facets = out.json["polytope"]["facets"].as_array().unwrap();
        let normals: Vec<&Value> = facets.iter().map(|f| &f["normal"]).collect();
        assert_eq!(normals, [&serde_json::json!([1, 0]), &serde_json::json!([0, 1])]);
        for f in facets {
            assert_eq!(f["bound"], i as i64 + 1);
        }
    }
}

#[test]
fn presentation_dump_parses_back() {
    let base = "ring R weights 1 2 3\nideal I = x0^2*x1 - x1^2, x0*x2\nmodule M = truncate I at 4\n";
    let t = run(&format!("{base}dump M --presentation\nbetti M\n")).unwrap();
    let dumped = t.outputs[0].text.replace("module M", "module N");
    let again = run(&format!("{base}{dumped}betti N\n")).unwrap();
    assert_eq!(again.outputs[0].text, t.outputs[1].text);
}

#[test]
fn prime_field_sessions() {
    let q = run("ring R weights 1 1 1\nideal I = x0^2 + x1^2, x0*x1\nbetti I\n").unwrap();
    let p = run("ring R weights 1 1 1 field GF(32003)\nideal I = x0^2 + x1^2, x0*x1\nbetti I\n").unwrap();
    assert_eq!(q.outputs[0].text, p.outputs[0].text);
    assert_eq!(p.outputs[0].json["table"]["field"], "GF(32003)");
    // x0^2 + x1^2 = (x0 + x1)^2 in characteristic 2, which changes nothing
    // here, but 1/2 has no image there
    let bad = run("ring R weights 1 1 field GF(2)\nideal I = 1/2*x0\nbetti I\n").unwrap_err();
    assert!(matches!(bad, RunError::Compute(_)));
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("ring R weights 1 1\nideal I = x0^2 + x1\n", 2, 18, "inhomogeneous"),
        ("ring R weights 1 1\nbetti M\n", 2, 7, "not declared"),
        ("ideal I = x0\n", 1, 9, "no ring"),
        ("ring R weights 1 1\nideal I = x2\n", 2, 11, "unknown variable"),
        ("ring R weights 1 2\nmodule M = coker [[x0], [x1]] twists 0 0\n", 2, 26, "inhomogeneous"),
        ("ring R weights 1 1\nring R weights 1\n", 2, 17, "already declared"),
        ("ring R weights 1 1 field GF(4)\n", 1, 29, "not a supported prime"),
        ("ring R weights 1 1\nmodule M = free 0\ntruncate M\n", 3, 11, "--at"),
    ];
    for (src, line, col, msg) in cases {
        match run(src) {
            Err(RunError::Parse(e)) => {
                assert_eq!((e.pos.line, e.pos.col), (line, col), "{src}: {e}");
                assert!(e.message.contains(msg), "{src}: {e}");
            }
            other => panic!("{src}: expected a parse error, got {other:?}"),
        }
    }
}

#[test]
fn continuation_lines_and_comments() {
    let t = run("# weights\nring R weights 1 1 \\\n  field QQ\nideal I = x0, \\\n x1 # both variables\nbetti I\n").unwrap();
    assert_eq!(t.outputs[0].text, "   0 1\n1: 2 1\n");
}

#[test]
fn exit_codes() {
    let (c, out, _) = gsw(&["run", "-"], "ring R weights 1 1\nideal I = x0\nbetti I\n");
    assert_eq!(c, EXIT_OK);
    assert!(out.contains("1: 1"));
    let (c, _, err) = gsw(&["run", "-"], "ring R weights 1 1\nideal I = x0 +\n");
    assert_eq!(c, EXIT_PARSE);
    assert!(err.contains("line 2"));
    let (c, _, err) = gsw(&["run", "-"], "ring R weights 1 1\nmodule Z = free\nregularity Z\n");
    assert_eq!(c, EXIT_ERROR);
    assert!(err.contains("nonzero module"));
}

#[test]
fn json_session_output() {
    let (c, out, _) = gsw(
        &["run", "--json", "-"],
        "ring R weights 1 2\nideal m = x0, x1\nmodule Q = quotient m\nverify Q --theorem b\n",
    );
    assert_eq!(c, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["command"], "verify");
    assert_eq!(v[0]["theorem"], "b");
    assert_eq!(v[0]["holds"], true);
}

#[test]
fn fuzz_subcommand() {
    let (c, out, _) = gsw(&["fuzz", "--suite", "symonds", "--count", "10", "--json"], "");
    assert_eq!(c, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["outcomes"].as_array().unwrap().len(), 10);
    let (c, _, _) = gsw(&["fuzz", "--suite", "nope"], "");
    assert_eq!(c, EXIT_ERROR);
}

#[test]
fn sample_sessions_run() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../sessions");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let (c, out, err) = gsw(&["run", path.to_str().unwrap()], "");
        assert_eq!(c, EXIT_OK, "{}: {err}", path.display());
        assert!(!out.is_empty());
        n += 1;
    }
    assert!(n >= 3);
}
