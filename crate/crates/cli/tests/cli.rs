use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn homloc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homloc")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn costs(o: &Output) -> Vec<String> {
    stdout(o)
        .split_whitespace()
        .filter_map(|t| t.strip_prefix("cost="))
        .map(String::from)
        .collect()
}

#[test]
fn generate_torus_writes_72_triangles_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    for stem in ["a", "b"] {
        let o = homloc(dir.path(), &["generate", "torus", "6", "6", "--seed", "9", "--out", stem]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(dir.path().join("a.complex.json")).unwrap();
    let (k, _) = homloc::io::complex_from_json(&text).unwrap();
    assert_eq!(k.simplices(2).len(), 72);
    for suffix in [".complex.json", ".cycle.json"] {
        let a = fs::read(dir.path().join(format!("a{suffix}"))).unwrap();
        let b = fs::read(dir.path().join(format!("b{suffix}"))).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let o = homloc(dir.path(), &["generate", "sphere", "3", "--out", "x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown family"));
    let o = homloc(dir.path(), &["generate", "torus", "2", "5", "--out", "x"]);
    assert_eq!(o.status.code(), Some(1));
    let o = homloc(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = homloc(dir.path(), &["solve", "missing"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_cycle_costs_zero() {
    let dir = tempfile::tempdir().unwrap();
    assert!(homloc(dir.path(), &["generate", "grid", "3", "3", "--out", "g"]).status.success());
    fs::write(dir.path().join("g.cycle.json"), r#"{"dim": 1, "simplices": []}"#).unwrap();
    let o = homloc(dir.path(), &["solve", "g", "--algo", "both"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(costs(&o), ["0", "0"]);
}

#[test]
fn brute_and_hasse_agree() {
    let dir = tempfile::tempdir().unwrap();
    let o = homloc(dir.path(), &["generate", "torus", "3", "3", "--seed", "4", "--mode", "homology-rep", "--out", "t"]);
    assert!(o.status.success());
    let brute = homloc(dir.path(), &["solve", "t.complex.json", "--algo", "brute"]);
    let hasse = homloc(dir.path(), &["solve", "t", "--algo", "hasse"]);
    assert!(brute.status.success() && hasse.status.success());
    assert_eq!(costs(&brute), ["3"]);
    assert_eq!(costs(&brute), costs(&hasse));
}

#[test]
fn mem_cap_reports_status_and_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    assert!(homloc(dir.path(), &["generate", "grid", "5", "5", "--seed", "1", "--out", "g"]).status.success());
    let o = homloc(dir.path(), &["solve", "g", "--algo", "conn", "--mem-cap-entries", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("status=memory_cap"));
    let o = homloc(dir.path(), &["solve", "g", "--algo", "brute"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("status=timeout"));
}

#[test]
fn verify_accepts_solver_output_and_names_failures() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(homloc(d, &["generate", "cylinder", "5", "3", "--seed", "2", "--mode", "homology-rep", "--out", "c"])
        .status
        .success());
    let o = homloc(d, &["solve", "c", "--algo", "both", "--out", "w.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = homloc(d, &["verify", "c", "w.json"]);
    assert!(o.status.success(), "{}", stderr(&o));

    let w = homloc::io::Witness::from_json(&fs::read_to_string(d.join("w.json")).unwrap()).unwrap();
    let mut broken = w.clone();
    broken.simplices.pop();
    fs::write(d.join("broken.json"), broken.to_json()).unwrap();
    let o = homloc(d, &["verify", "c", "broken.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a cycle"));

    let mut costly = w.clone();
    costly.cost += 1.0;
    fs::write(d.join("costly.json"), costly.to_json()).unwrap();
    let o = homloc(d, &["verify", "c", "costly.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cost mismatch"));

    // The empty cycle is a cycle but not in the class of a boundary circle.
    let empty = homloc::io::Witness { simplices: vec![], cost: 0.0, ..w };
    fs::write(d.join("empty.json"), empty.to_json()).unwrap();
    let o = homloc(d, &["verify", "c", "empty.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not homologous"));
}

#[test]
fn exported_decompositions_feed_back_into_solve() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = homloc(d, &["generate", "mspace", "4", "3", "1", "--seed", "5", "--export-graphs", "--out", "m"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["m.conn.gr", "m.conn.edges", "m.hasse.td", "m.hasse.td.map"] {
        assert!(d.join(f).exists(), "{f} missing");
    }
    let o = homloc(d, &["solve", "m", "--algo", "hasse", "--td-file", "m.hasse.td"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = homloc(d, &["solve", "m", "--algo", "conn", "--td-file", "m.hasse.td"]);
    assert_eq!(o.status.code(), Some(1));
    // A decomposition missing a bag is rejected.
    let td = fs::read_to_string(d.join("m.hasse.td")).unwrap();
    let cut: String = td.lines().filter(|l| !l.starts_with("b 1 ")).map(|l| format!("{l}\n")).collect();
    fs::write(d.join("cut.td"), cut).unwrap();
    fs::copy(d.join("m.hasse.td.map"), d.join("cut.td.map")).unwrap();
    let o = homloc(d, &["solve", "m", "--algo", "hasse", "--td-file", "cut.td"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_three_grids_two_algos() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(
        d.join("suite.json"),
        r#"{"instances": [{"family": "grid", "rows": 3, "cols": 3},
                          {"family": "grid", "rows": 3, "cols": 4},
                          {"family": "grid", "rows": 4, "cols": 4}],
            "seeds": [1], "algos": ["conn", "hasse"], "time_limit_s": 30, "jobs": 2}"#,
    )
    .unwrap();
    let o = homloc(d, &["bench", "suite.json", "--out", "out.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(d.join("out.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("instance,generator,params,seed,n_d,n_d1,tw_conn,tw_hasse,bags,algo,time_ms,entries_peak,cost,status")
    );
    let rows = homloc::bench::read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.cost == Some(0.0)));
}
