use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-realize"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn pr() -> String {
    data("batyrev33.pr").display().to_string()
}

const RUN1: &str = "\
The criticality of the action is 3
The weights are [0,4,9,12]
The polytopes of fixed point components have [8,1,1,8] vertices
The map GX_0 --> GX_1 is a flip
The map GX_1 --> GX_2 is a flip
The variety is complete, is Q-factorial, is not smooth, is Fano
";

#[test]
fn realize_prints_the_report() {
    let o = run(&[
        "realize",
        "--pr",
        &pr(),
        "--A",
        "D1+2D6+D7",
        "--B",
        "D1+2D2+D7",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), RUN1);
}

#[test]
fn comma_divisors_and_fan_file_agree_with_relations() {
    let fan = data("batyrev33.fan").display().to_string();
    let o = run(&[
        "realize",
        "--fan",
        &fan,
        "--A",
        "1,0,0,0,0,2,1",
        "--B",
        "1,2,0,0,0,0,1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), RUN1);
}

#[test]
fn fano_realize_default_sign() {
    let o = run(&["fano-realize", "--pr", &pr(), "--H", "D1+D3-D5"]);
    assert!(o.status.success());
    assert!(stdout(&o)
        .starts_with("The criticality of the action is 4\nThe weights are [-12,-1,7,9,12]\n"));
}

#[test]
fn structured_output_is_deterministic() {
    let args = [
        "sharp-realize",
        "--pr",
        &pr(),
        "--A",
        "2,-1,0,5,0,0,0",
        "--B",
        "2,1,0,3,0,0,0",
        "--seed",
        "0",
        "--report",
        "structured",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s = stdout(&a);
    assert!(s.starts_with("realization v1\n"));
    assert!(s.contains("sharp true\n"));
    assert!(s.contains("action-report v1\n"));
}

#[test]
fn polytope_file_roundtrip_through_action_info() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("g1.poly");
    let poly_s = poly.display().to_string();
    let o = run(&[
        "realize",
        "--pr",
        &pr(),
        "--A",
        "D1+2D6+D7",
        "--B",
        "D1+2D2+D7",
        "--out",
        &poly_s,
    ]);
    assert!(o.status.success());
    let info = run(&["action-info", "--polytope", &poly_s]);
    assert!(info.status.success());
    assert_eq!(stdout(&info), RUN1);
    let q = run(&["quotients", "--polytope", &poly_s]);
    assert!(q.status.success());
}

#[test]
fn from_pr_writes_seven_rays() {
    let o = run(&["from-pr", &pr()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("rays 7\n"));
    assert_eq!(s, std::fs::read_to_string(data("batyrev33.fan")).unwrap());
}

#[test]
fn bundle_matches_stored_fan() {
    let p2 = data("p2.fan").display().to_string();
    let o = run(&["bundle", "--fan", &p2, "--twist", "0,0,0;0,0,1;0,0,1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(data("bundle53.fan")).unwrap()
    );
}

#[test]
fn describe_plane() {
    let o = run(&["describe", "--fan", &data("p2.fan").display().to_string()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("smooth true"));
    assert!(s.contains("fano true"));
    assert!(s.contains("class_group rank 1 torsion []"));
}

#[test]
fn chambers_of_batyrev() {
    let o = run(&["chambers", "--pr", &pr()]);
    assert!(o.status.success());
    let w = run(&[
        "wall-test",
        "--pr",
        &pr(),
        "--A",
        "D1+2D6+D7",
        "--B",
        "D1+2D2+D7",
    ]);
    assert!(w.status.success());
    assert!(stdout(&w).contains("wall false"));
}

#[test]
fn exit_codes() {
    let short = run(&["realize", "--pr", &pr(), "--A", "1,0,0", "--B", "D1+2D2+D7"]);
    assert_eq!(short.status.code(), Some(2));
    let garbage = run(&["realize", "--pr", &pr(), "--A", "D1+x", "--B", "D1"]);
    assert_eq!(garbage.status.code(), Some(2));
    let missing = run(&["describe", "--fan", "/nonexistent/x.fan"]);
    assert_eq!(missing.status.code(), Some(2));
    let not_big = run(&["realize", "--pr", &pr(), "--A", "D1", "--B", "D1+2D2+D7"]);
    assert_eq!(not_big.status.code(), Some(3));
    let unwritable = run(&[
        "realize",
        "--pr",
        &pr(),
        "--A",
        "D1+2D6+D7",
        "--B",
        "D1+2D2+D7",
        "--out",
        "/nonexistent/dir/x.poly",
    ]);
    assert_eq!(unwritable.status.code(), Some(4));
}
