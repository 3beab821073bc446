use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn trisum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisum")).args(args).env("TRISUM_THREADS", "1").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn triangle_count() {
    let o = trisum(&["tr", &data("grid3x3.pts")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "tr = 8\n");
    let j: serde_json::Value = serde_json::from_slice(&trisum(&["--json", "tr", &data("grid3x3.pts")]).stdout).unwrap();
    assert_eq!(j["tr"], 8);
}

#[test]
fn inequality_verdicts_set_the_exit_code() {
    let o = trisum(&["check", "conj1", &data("simplex2.pts"), &data("simplex3.pts")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equality"), "{}", stdout(&o));
    let o = trisum(&["check", "strong", &data("unit_triangle.pts"), &data("simplex2.pts")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("9 >= 10 fails"));
}

#[test]
fn counterexample_threshold() {
    let o = trisum(&["counterexample", "--k", "145", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|T_B| = 580"));
    assert!(out.contains("sqrt(580) > 24"), "{out}");
    assert!(!out.contains("FAIL"));
    let o = trisum(&["counterexample", "--k", "144", "--verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sqrt(576) <= 24"));
}

#[test]
fn input_errors_exit_two_naming_the_fault() {
    let dir = std::env::temp_dir().join(format!("trisum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dup = dir.join("dup.pts");
    std::fs::write(&dup, "0 0\n1 1\n0 0\n").unwrap();
    let o = trisum(&["tr", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3: duplicate point"), "{}", stderr(&o));
    let o = trisum(&["visible", &data("grid3x3.pts"), "--point", "5;1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--point"));
    let o = trisum(&["campaign", "--config", &data("broken.campaign")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    assert_eq!(trisum(&["no-such-verb"]).status.code(), Some(2));
}

#[test]
fn mixed_verbs_round_trip_through_svg() {
    let dir = std::env::temp_dir().join(format!("trisum-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("m.svg");
    let o =
        trisum(&["mixed-triangle", &data("grid3x3.pts"), &data("unit_triangle.pts"), "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("mixed dim=2 |TA|=8 |TB|=1 m11=4 weight=17"), "{text}");
    assert!(std::fs::read_to_string(&svg).unwrap().contains("class=\"para\""));
    let stored = dir.join("m.mixed");
    std::fs::write(&stored, text.trim_end_matches("valid\n")).unwrap();
    let again = dir.join("again.svg");
    let o = trisum(&["svg", stored.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(&again).unwrap());
    let o = trisum(&["mixed-convex", &data("square.pts"), &data("square.pts")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m11=2"), "{}", stdout(&o));
}

#[test]
fn self_sum_of_a_tetrahedron() {
    let o = trisum(&["mixed-self", &data("tetrahedron.pts"), "--triangulation", &data("tetrahedron.simplices")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weight 8"));
    let o = trisum(&["mixed-self", &data("grid3x3.pts")]);
    assert!(stdout(&o).contains("weight=32"));
}

#[test]
fn path_and_bound_verbs() {
    let o = trisum(&["hvpath", &data("grid3x3.pts")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total 4"));
    let o = trisum(&["star", &data("grid3x3.pts"), &data("unit_triangle.pts")]);
    assert!(stdout(&o).contains("total 4, squared 16 >= |T_A| = 8"));
    let o = trisum(&["freiman", &data("grid3x3.pts")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("boundary-4n: 25 >= 25 equality"));
    let o = trisum(&["visible", &data("grid3x3.pts"), "--point", "5,1"]);
    assert_eq!(stdout(&o), "2 0\n2 1\n2 2\n");
    let o = trisum(&["stability", &data("grid3x3.pts"), "--eps", "1/2"]);
    assert!(stdout(&o).contains("not applicable"));
    let o = trisum(&["classify", &data("grid3x3.pts")]);
    assert!(stdout(&o).starts_with("SaturatedA"));
}

#[test]
fn campaign_report_is_reproducible() {
    let run = || trisum(&["campaign", "--config", &data("grid_equality.campaign")]);
    let (first, second) = (run(), run());
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);
    let out = stdout(&first);
    assert!(out.contains("RESULT status clean"));
    assert!(out.contains("RESULT check equalityClass"));
}
