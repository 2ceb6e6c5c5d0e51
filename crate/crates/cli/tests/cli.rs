use std::process::{Command, Output};

fn hardknots(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardknots"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = hardknots(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn parse_round_trips() {
    let o = hardknots(&["parse", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"]);
    assert!(o.status.success());
    let pd = stdout(&o);
    let again = hardknots(&["parse", pd.trim()]);
    assert_eq!(stdout(&again), pd);
}

#[test]
fn info_reports_schema_and_shape() {
    let v = json(&["info", "K4a1"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["crossings"], 4);
    assert_eq!(v["faces"], 6);
    assert_eq!(v["alternating"], true);
}

#[test]
fn output_is_deterministic() {
    let a = hardknots(&["--json", "classify", "h9a"]);
    let b = hardknots(&["--json", "--sequential", "classify", "h9a"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn h8_is_rigid_hard() {
    let v = json(&["classify", "h8"]);
    assert_eq!(v["is_hard"], true);
    assert_eq!(v["is_rigid"], true);
    assert_eq!(v["identified"]["name"], "T2");
}

#[test]
fn moves_lists_and_applies() {
    let kinked = "X[1,1,2,6] X[2,5,3,6] X[5,3,4,4]";
    let sites = json(&["moves", kinked, "--kinds", "r1-down"]);
    let n = sites.as_array().unwrap().len();
    assert!(n >= 1);
    let v = json(&["moves", kinked, "--kinds", "r1-down", "--apply", "0"]);
    assert_eq!(v["crossings"], 2);
    let bad = hardknots(&["moves", kinked, "--kinds", "r1-down", "--apply", "99"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn jones_of_trefoil() {
    let o = hardknots(&["jones", "K3a1"]);
    let text = stdout(&o);
    // Either chirality, depending on the catalog diagram.
    assert!(
        text.trim() == "A^-4 + A^-12 - A^-16" || text.trim() == "-A^16 + A^12 + A^4",
        "{text}"
    );
}

#[test]
fn enumerate_streams_json_lines() {
    let o = hardknots(&["enumerate", "3", "--filter", "prime", "--shadows"]);
    let lines: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert!(v["pd"].as_str().unwrap().starts_with("X["));
}

#[test]
fn survey_at_eight_finds_h8_only_among_unlinks() {
    let o = hardknots(&["--json", "survey", "8", "--only", "T2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let head: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(head["exhaustive"], true);
    assert_eq!(lines.count(), 1);
}

#[test]
fn index_of_hopf_link() {
    let v = json(&["index", "L2a1", "--max", "9"]);
    assert_eq!(v[0]["value"]["kind"], "exact");
    assert_eq!(v[0]["value"]["value"], 7);
    assert_eq!(v[0]["witness_confirmed"], true);
}

#[test]
fn constructions_emit_certificates() {
    let v = json(&["construct", "thm2", "K3a1"]);
    let c = &v["certificate"];
    assert_eq!(c["output_crossings"], 10);
    assert!(c["output_crossings"].as_u64() <= c["bound"].as_u64());
    assert_eq!(c["report"]["is_rigid"], true);

    let v = json(&["construct", "shaky", "K3a1"]);
    assert_eq!(v["certificate"]["report"]["is_shaky"], true);

    let v = json(&["construct", "trivial", "2"]);
    assert_eq!(v["certificate"]["output_crossings"], 8);
}

#[test]
fn gadget_cache_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gadgets.tsv");
    let o = hardknots(&[
        "construct",
        "gadgets",
        "7s",
        "h8",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    // The rediscovered cache is accepted as a gadget source.
    let v = json(&[
        "--gadgets",
        path.to_str().unwrap(),
        "construct",
        "thm2",
        "K3a1",
    ]);
    assert_eq!(v["certificate"]["report"]["is_hard"], true);
}

#[test]
fn extended_gadget_needs_the_flag() {
    let o = hardknots(&["construct", "gadgets", "h12"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.svg");
    let o = hardknots(&["render", "K4a1", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("under-gap").count(), 4 + 1);
}

#[test]
fn catalog_import_and_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("links.csv");
    std::fs::write(
        &good,
        "name,crossings,components,pd\nK3a1,3,1,\"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\"\n",
    )
    .unwrap();
    let o = hardknots(&["catalog", "import", good.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "name,crossings,components,pd\nK3a1,3,1,X[1,2\n").unwrap();
    let o = hardknots(&["catalog", "import", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagram_from_file_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.pd");
    std::fs::write(&path, "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\n").unwrap();
    let v = json(&["info", path.to_str().unwrap()]);
    assert_eq!(v["crossings"], 3);

    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_hardknots"))
        .args(["info", "--json", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["crossings"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hardknots(&["survey"]).status.code(), Some(2));
    assert_eq!(hardknots(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn big_surveys_need_extended() {
    let o = hardknots(&["survey", "13"]);
    assert_eq!(o.status.code(), Some(1));
}
