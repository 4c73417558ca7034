use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knot-torsion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn parse_reports_abelianization() {
    let o = run(&["parse", "--pres", data("conway.pres").to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("alpha(a)\t1\n") && s.contains("alpha(b)\t1\n") && s.contains("alpha(c)\t-1\n"));
    assert!(s.contains("deficiency\t1"));

    let o = run(&["parse", "--pres", data("kinoshita_terasaka.pres").to_str().unwrap()]);
    let s = stdout(&o);
    assert!(s.contains("alpha(a)\t0\n") && s.contains("alpha(b)\t1\n") && s.contains("alpha(c)\t0\n"));
}

#[test]
fn malformed_presentation_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.pres");
    fs::write(&f, "gens: a b\nrel: ab\nrel: a1\n").unwrap();
    let o = run(&["parse", "--pres", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn degenerate_column_is_an_error() {
    let o = run(&[
        "torsion",
        "--pres",
        data("kinoshita_terasaka.pres").to_str().unwrap(),
        "--rep",
        data("kinoshita_terasaka.rep").to_str().unwrap(),
        "--column",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn torsion_of_shipped_representation() {
    let o = run(&[
        "torsion",
        "--pres",
        data("conway.pres").to_str().unwrap(),
        "--rep",
        data("conway.rep").to_str().unwrap(),
        "--lift",
        "both",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.starts_with("basis\td=2 plus\td=2 minus\n"), "{s}");
    assert!(s.contains("w^10\t124/53\t-5812/53\n"), "{s}");
    assert!(s.contains("w^2\t12\t-356\n"), "{s}");
}

#[test]
fn corrupted_representation_stops_the_table() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["conway.pres", "conway.rep", "kinoshita_terasaka.pres", "kinoshita_terasaka.rep"] {
        fs::copy(data(f), dir.path().join(f)).unwrap();
    }
    let rep = dir.path().join("conway.rep");
    let text = fs::read_to_string(&rep).unwrap();
    let unit = "0,0,0,0,0,0,0,0,0,0,1";
    let bad = text.replacen(
        &format!("gen b: {unit} {unit}"),
        &format!("gen b: {unit} 0,0,0,0,0,0,0,0,0,0,2"),
        1,
    );
    assert_ne!(bad, text);
    fs::write(&rep, bad).unwrap();
    let o = run(&["table", "--data", dir.path().to_str().unwrap(), "--dim", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("relator"), "{}", stderr(&o));
    assert!(!stdout(&o).contains("basis"));
}

#[test]
fn paper_table_subset() {
    let o = run(&["table", "--paper", "--dim", "2"]);
    let s = stdout(&o);
    assert!(s.contains("basis\tKT n=2\tC n=2"));
    assert!(s.contains("# KT vs C\tn=2\tplus\tequal"));
    assert!(s.contains("ascending scale 53"));
    assert!(!s.contains("n=4"));
    // printed columns are not the display coordinates themselves
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["table", "--paper", "--ascending", "--dim", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("\tPASS\t").count(), 4);
}

#[test]
fn solve_needs_a_meridian_for_conway() {
    let o = run(&["solve", "--pres", data("conway.pres").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--meridian"));
}

#[test]
fn solve_figure_eight_writes_a_checked_representation() {
    let dir = tempfile::tempdir().unwrap();
    let pres = data("figure_eight.pres");
    let o = run(&["solve", "--pres", pres.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("field x^2 - 4*x + 976"));
    let rep = dir.path().join("figure_eight.branch0.rep");
    let o = run(&["check-rep", "--pres", pres.to_str().unwrap(), "--rep", rep.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));

    let o = run(&["cohom", "--pres", pres.to_str().unwrap(), "--rep", rep.to_str().unwrap()]);
    assert!(stdout(&o).contains("h0=0 h1=0 h2=0"), "{}", stdout(&o));
}
