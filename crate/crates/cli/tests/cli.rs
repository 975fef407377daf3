use std::process::{Command, Output};

use conwaykit::conway::FiniteAlgebraTable;
use conwaykit::kauffman::JckAlgebra;
use conwaykit::poly::{parse_poly, LaurentPoly};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conwaykit")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn trefoil_jck_tilde() {
    let o = run(&["compute", "--braid", "s1^3", "--invariant", "jck-tilde"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let value = text.trim().strip_prefix("jck-tilde: ").unwrap();
    let vars = JckAlgebra::new().vars().clone();
    let got = parse_poly(value, &vars).unwrap();
    let want = parse_poly("-a^-4 - 2a^-2 + t^2 a^-2 + z(a^-3 + a^-5 + t a^-4)", &vars).unwrap();
    assert_eq!(got, want);
}

#[test]
fn unknot_homfly_is_one() {
    let o = run(&["compute", "--braid", "", "--strands", "1", "--invariant", "homfly"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "homfly: 1\n");
}

#[test]
fn several_invariants_one_block_each() {
    let o = run(&["compute", "--braid", "s1^2", "-i", "lk", "-i", "components", "-i", "writhe"]);
    assert_eq!(stdout(&o), "lk: 1\ncomponents: 2\nwrithe: 2\n");
}

#[test]
fn parse_error_exits_two_with_position() {
    let o = run(&["compute", "--braid", "s1^3 s2^"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte 8"), "{}", stderr(&o));
}

#[test]
fn unknown_invariant_exits_two() {
    let o = run(&["compute", "--braid", "s1", "-i", "no-such"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_supersig_parameters_are_rejected() {
    let o = run(&["compute", "--braid", "s1^3", "-i", "supersig", "--u", "1", "--v", "-1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn undefined_operation_exits_three() {
    let o = run(&["compute", "--braid", "s2 s1 s2^2 s1 s2", "-i", "supersig", "--u", "3", "--v", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
    assert!(stderr(&o).contains("operation | is undefined on ((-1/9, 2), (-1/27i, -1))"), "{}", stderr(&o));
}

#[test]
fn tree_dependence_exits_three() {
    let o = run(&["compute", "--braid", "s3 s2^-2 s3^-1 s2^-1 s3", "-i", "supersig", "--u", "3", "--v", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("depends on the resolving tree"));
}

#[test]
fn ambiguous_sign_exits_three() {
    // Tolerance wide enough that unit-size values cannot be told from zero.
    let o = run(&["compute", "--braid", "s1^2", "-i", "supersig", "--u", "1", "--v", "1", "--epsilon", "0.01"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("ambiguous"));
}

#[test]
fn supersig_value() {
    let o = run(&["compute", "--braid", "s1^3", "-i", "supersig", "--u", "1/2", "--v", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with(", -2)"), "{}", stdout(&o));
}

#[test]
fn json_round_trips_through_parsers() {
    let o = run(&["--json", "compute", "--braid", "s1 s2^-1 s1 s2^-1", "-i", "homfly", "-i", "kauffman", "-i", "lk"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = conwaykit::diagram::LinkDiagram::parse_text(v["diagram"].as_str().unwrap()).unwrap();
    let results = v["results"].as_array().unwrap();
    let h = LaurentPoly::from_json(&results[0]["poly"]).unwrap();
    assert_eq!(h, conwaykit::conway::homfly(&d));
    assert_eq!(results[0]["text"].as_str().unwrap(), h.to_string());
    let f = LaurentPoly::from_json(&results[1]["poly"]).unwrap();
    assert_eq!(results[1]["invariant"], "kauffman-f");
    assert_eq!(parse_poly(results[1]["text"].as_str().unwrap(), f.vars()).unwrap(), f);
    assert_eq!(results[2]["value"], 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "compute", "--entry", "8_8", "-i", "homfly", "-i", "q", "-i", "jck-tilde"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 mismatches, 0 errors\n"));
}

#[test]
fn census_summary_line() {
    let o = run(&["census", "--census-size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("size=3 count=9\n"));
    assert!(out.contains("alternative operations-only count=24"));
    let blocks = out.split("\n\n").filter(|b| b.starts_with("3\n")).count();
    assert_eq!(blocks, 9);
}

#[test]
fn census_out_of_range() {
    assert_eq!(run(&["census", "--census-size", "9"]).status.code(), Some(2));
}

#[test]
fn catalog_list_and_show() {
    let o = run(&["catalog", "list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("8_8 ")));
    let o = run(&["catalog", "show", "right_trefoil"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("braid: s1^3"));
    assert_eq!(run(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn axioms_on_files() {
    let dir = std::env::temp_dir().join(format!("conwaykit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, FiniteAlgebraTable::components_table(3).to_text()).unwrap();
    let o = run(&["axioms", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2\n2 2\n2 2\n1 1\n1 1\n1 2\n").unwrap();
    assert_eq!(run(&["axioms", bad.to_str().unwrap()]).status.code(), Some(1));
    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "2\n1 1\n").unwrap();
    let o = run(&["axioms", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn finite_algebra_from_file() {
    let dir = std::env::temp_dir().join(format!("conwaykit-fa-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let t = dir.join("three.txt");
    std::fs::write(&t, FiniteAlgebraTable::three_element().to_text()).unwrap();
    let o = run(&["compute", "--braid", "s1^3", "-i", "finite-algebra", "--table", t.to_str().unwrap()]);
    assert_eq!(stdout(&o), "finite-algebra: 2\n");
    std::fs::remove_dir_all(&dir).ok();
}
