use std::process::Command;

fn lmu(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lmu")).args(args).output().expect("lmu runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_named_term() {
    assert_eq!(lmu(&["check", "--term", "T"]), (0, "_|_ -> P\n".into(), String::new()));
    assert_eq!(lmu(&["check", "--term", "W"]).1, "P \\/ ~P\n");
    assert_eq!(lmu(&["check", "--term", "Wprime"]).1, "~P \\/ P\n");
}

#[test]
fn check_derivation_formats() {
    let (code, out, _) = lmu(&["check", "--term", "C1", "--derivation"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("[arrow-i] |- "), "{out}");
    assert_eq!(out.lines().count(), 8);
    let (_, out, _) = lmu(&["check", "--term", "C1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rule"], "arrow-i");
    assert_eq!(v["judgment"]["formula"], "(~P -> P) -> P");
}

#[test]
fn reduce_with_open_variables() {
    assert_eq!(lmu(&["reduce", "--term", "((T t) u)", "--open", "t,u"]), (0, "mu a. t\n".into(), String::new()));
    let (code, _, err) = lmu(&["reduce", "--term", "((T t) u)"]);
    assert_eq!(code, 1);
    assert!(err.contains("--open"), "{err}");
}

#[test]
fn reduce_trace_is_json_lines() {
    let (code, out, _) = lmu(&["reduce", "--term", "((T t) u)", "--open", "t,u", "--trace"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["rule"], "beta");
    let second: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(second["rule"], "mu-struct");
    assert_eq!(lines[2], "mu a. t");
}

#[test]
fn reduce_from_file() {
    let path = std::env::temp_dir().join(format!("lmu-cli-{}.lmu", std::process::id()));
    std::fs::write(&path, "# projection of a pair\n(<\\x:P. x, \\y:_|_. y> p1)\n").unwrap();
    let (code, out, _) = lmu(&["reduce", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!((code, out.as_str()), (0, "\\x:P. x\n"));
    assert_eq!(lmu(&["reduce", "/nonexistent/term.lmu"]).0, 64);
}

#[test]
fn graph_outputs() {
    let t = "(<(\\x:P. x a), b> p1)";
    let (code, out, _) = lmu(&["graph", "--term", t, "--open", "a,b"]);
    assert_eq!(code, 0);
    assert!(out.contains("nodes: 4") && out.contains("normal form: a"), "{out}");
    let (_, out, _) = lmu(&["graph", "--term", t, "--open", "a,b", "--dot"]);
    assert!(out.starts_with("digraph"), "{out}");
    let (_, out, _) = lmu(&["graph", "--term", t, "--open", "a,b", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    let (code, out, _) = lmu(&["graph", "--term", "(\\x. (x x) \\x. (x x))"]);
    assert_eq!(code, 0);
    assert!(out.contains("cyclic: true"), "{out}");
}

#[test]
fn probes() {
    let (code, out, _) = lmu(&["probe", "--law", "peirce", "--term", "C1"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: confirmed") && out.contains("m: 1"), "{out}");
    let (code, out, _) = lmu(&["probe", "--law", "lem", "--term", "W", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["law"], "tertium");
    assert_eq!(v["verdict"]["verdict"], "confirmed");
    assert_eq!(v["m"], 2);
    assert_eq!(v["traces"].as_array().unwrap().len(), 3);
    assert_eq!(lmu(&["probe", "--law", "efq", "--term", "\\z:_|_. mu a:P. z"]).0, 0);
    assert_eq!(lmu(&["probe", "--law", "efq", "--term", "C1"]).0, 1);
    assert_eq!(lmu(&["probe", "--law", "peirce", "--term", "C2", "--cap", "2"]).0, 2);
    assert_eq!(lmu(&["probe", "--law", "peirce", "--term", "C2", "--max-m", "1"]).0, 2);
    assert_eq!(lmu(&["probe", "--law", "excluded-middle", "--term", "W"]).0, 64);
}

#[test]
fn seeded_probes_are_reproducible() {
    let args = ["probe", "--law", "peirce", "--term", "C2", "--seed", "5", "--json"];
    let first = lmu(&args);
    assert_eq!(first, lmu(&args));
    assert!(first.1.contains("t6"), "{}", first.1);
}

#[test]
fn suite_and_corpus() {
    let (code, out, _) = lmu(&["suite", "--max-size", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("subject-reduction: checked"), "{out}");
    assert!(out.contains("negative control flagged: true"));
    let (code, out, _) = lmu(&["corpus", "--max-size", "3", "--target", "P -> P"]);
    assert_eq!(code, 0);
    assert_eq!(out, "2\tP -> P\t\\x1:P. x1\n");
    assert_eq!(lmu(&["corpus", "--target", "P ->"]).0, 1);
}

#[test]
fn usage_errors() {
    for args in [&["frobnicate"][..], &["check"], &["check", "--bogus"], &["probe", "--term", "C1"], &[]] {
        let (code, _, err) = lmu(args);
        assert_eq!(code, 64, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = lmu(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("probe"));
}

#[test]
fn parse_echo_and_errors() {
    assert_eq!(lmu(&["parse", "--term", "\\x:P->P. x"]).1, "\\x:(P -> P). x\n");
    let (code, _, err) = lmu(&["parse", "--term", "\\x. \\x. x"]);
    assert_eq!(code, 1);
    assert!(err.contains("1:6"), "{err}");
}
