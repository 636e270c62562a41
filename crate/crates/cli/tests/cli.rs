use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use tropical::cycles::TropicalCycle;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropical-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn tropical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropical")).args(args).env_remove("TROPICAL_THREADS").output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = tropical(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write_cycle(dir: &PathBuf, name: &str, c: &TropicalCycle) -> String {
    let p = dir.join(name);
    std::fs::write(&p, c.to_json()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn divisor_pipeline_through_files() {
    let dir = scratch("pipeline");
    let space = write_cycle(&dir, "r3.json", &TropicalCycle::whole_space(3));
    let surface = dir.join("surface.json");
    let curve = dir.join("curve.json");
    ok(&["divisor", &space, "--poly", "max(1,x,y,z,-x,-y,-z)", "-o", surface.to_str().unwrap()]);
    ok(&["divisor", surface.to_str().unwrap(), "--poly", "max(3x+4,x-y-z,y+z+3)", "-o", curve.to_str().unwrap()]);
    assert_eq!(ok(&["balance", curve.to_str().unwrap()]).trim(), "balanced");
    let summary: Value = serde_json::from_str(&ok(&["summary", curve.to_str().unwrap(), "--json"])).unwrap();
    assert_eq!(summary["dim"], 1);
    assert_eq!(summary["ambient_dim"], 3);
}

#[test]
fn documents_round_trip_bit_exact() {
    let dir = scratch("roundtrip");
    for args in [
        vec!["bergman", "--uniform", "2,4"],
        vec!["bergman", "--graphic", "K4", "--method", "normalfan"],
        vec!["m0n", "5"],
        vec!["psi", "6", "1,0,0,0,0,0"],
    ] {
        let text = ok(&args);
        let c = TropicalCycle::from_json(&text).unwrap();
        assert_eq!(c.to_json().trim(), text.trim(), "{args:?}");
        let p = write_cycle(&dir, "x.json", &c);
        assert_eq!(ok(&["balance", &p]).trim(), "balanced", "{args:?}");
    }
}

#[test]
fn line_self_intersection_both_methods() {
    let dir = scratch("line");
    let line = TropicalCycle::fan(2, &[vec![-1, 0], vec![0, -1], vec![1, 1]], &[vec![0], vec![1], vec![2]], &[], vec![1; 3])
        .unwrap();
    let p = write_cycle(&dir, "line.json", &line);
    let s = TropicalCycle::from_json(&ok(&["intersect", &p, &p])).unwrap();
    let d = TropicalCycle::from_json(&ok(&["intersect", &p, &p, "--method", "diagonal", "--threads", "2"])).unwrap();
    assert!(s.equivalent(&d));
    assert_eq!(s.weights(), &[1]);
    assert_eq!(s.dim(), 0);
}

#[test]
fn stdin_is_accepted() {
    let text = ok(&["bergman", "--uniform", "2,3"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropical"))
        .args(["summary", "-", "--json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["maximal_cells"], 3);
}

#[test]
fn moduli_commands() {
    assert_eq!(ok(&["m0n", "8", "--count"]).trim(), "10395");
    assert_eq!(ok(&["curve", "--n", "4", "--to-pruefer", "(1,3)"]).trim(), "(5,6,5,6)");
    assert_eq!(ok(&["curve", "--n", "4", "--from-pruefer", "5,6,5,6"]).trim(), "(1,3)");
    assert_eq!(ok(&["curve", "--from-metric", "0 0 0 1 1 0 0 1 1 0 1 1 1 1 0"]).trim(), "(1,2,3,4)");
    assert_eq!(ok(&["curve", "--n", "4", "--to-metric", "(1,2):3/2"]).trim(), "0 3/2 3/2 3/2 3/2 0");
    let psi: Value = serde_json::from_str(&ok(&["psi", "9", "3,2,0,0,0,1,0,0,0", "--curves", "--json"])).unwrap();
    assert_eq!(psi.as_array().unwrap().len(), 1);
    assert_eq!(psi[0]["weight"], 60);
    let local = ok(&["local-m0n", "--n", "6", "(1,2)"]);
    assert_eq!(TropicalCycle::from_json(&local).unwrap().cells().len(), 15);
}

#[test]
fn weight_space_skeleton_product() {
    let dir = scratch("weights");
    let rays = [vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]];
    let cones: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
    let x = TropicalCycle::fan(2, &rays, &cones, &[], vec![1; 6]).unwrap();
    let p = write_cycle(&dir, "six.json", &x);
    let ws: Value = serde_json::from_str(&ok(&["weight-space", &p, "--format", "json"])).unwrap();
    assert_eq!(ws["dimension"], 4);
    assert_eq!(ws["irreducible"], false);
    let skel: Value = serde_json::from_str(&ok(&["skeleton", &p, "0"])).unwrap();
    assert_eq!(skel["maximal_cells"].as_array().unwrap().len(), 1);
    let prod = TropicalCycle::from_json(&ok(&["product", &p, &p])).unwrap();
    assert_eq!(prod.ambient_dim(), 4);
    assert_eq!(prod.cells().len(), 36);
}

#[test]
fn failures_exit_nonzero() {
    let out = tropical(&["balance", "/nonexistent/cycle.json"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(!tropical(&["curve", "--from-metric", "0 1 1 1 1 5"]).status.success());
    assert!(!tropical(&["psi", "5", "3,0,0,0,0"]).status.success());
    assert!(!tropical(&["bergman", "--uniform", "5,3"]).status.success());
}

#[test]
fn bench_tables_render() {
    let text = ok(&["bench", "divisors", "--n", "2..3", "--k", "1", "--terms", "5"]);
    assert!(text.contains("n=2") && text.contains("n=3") && text.contains("k=1 l=5"));
    let t: Value = serde_json::from_str(&ok(&["bench", "intersect", "--n", "3", "--json"])).unwrap();
    assert_eq!(t["columns"].as_array().unwrap().len(), 2);
    let t: Value = serde_json::from_str(&ok(&["bench", "m0n", "--n", "5", "--json"])).unwrap();
    assert_eq!(t["rows"].as_array().unwrap().len(), 1);
}
