use std::fs;
use std::process::{Command, Output};

fn sierpinski(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sierpinski"))
        .args(args)
        .env_remove("SIERPINSKI_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gen_is_deterministic_and_complete() {
    let a = sierpinski(&["gen", "-n", "2", "-l", "3", "--format", "json"]);
    assert!(a.status.success(), "{}", stderr(&a));
    let b = sierpinski(&["gen", "-n", "2", "-l", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);
    let dot = stdout(&sierpinski(&["gen", "-n", "2", "-l", "3"]));
    assert!(dot.contains("\"01\" -- \"10\""), "{dot}");

    let dot = stdout(&sierpinski(&["gen", "-n", "2", "-l", "4", "--format", "dot"]));
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("--")).count(), 16);
    let k5: serde_json::Value = serde_json::from_slice(&sierpinski(&["gen", "-n", "1", "-l", "5", "--format", "json"]).stdout).unwrap();
    assert_eq!(k5["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(k5["edges"].as_array().unwrap().len(), 10);
}

#[test]
fn gen_refuses_oversized_output() {
    let o = sierpinski(&["gen", "-n", "9", "-l", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"));
    let o = sierpinski(&["gen", "-n", "9", "-l", "5", "--cap", "10000000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--unsafe"));
    // The environment variable moves the default itself.
    let o = Command::new(env!("CARGO_BIN_EXE_sierpinski"))
        .args(["gen", "-n", "3", "-l", "3"])
        .env("SIERPINSKI_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pack_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trees.json");
    let o = sierpinski(&["pack", "-n", "2", "-l", "3", "--u", "00,11,22", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("1 tree(s)"), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["trees"].as_array().unwrap().len(), 1);
    assert_eq!(v["mode"], "paper");

    let o = sierpinski(&["verify", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "edge: 1 tree(s), pass\nvertex: 1 tree(s), pass\n");

    // Two trees sharing an edge must be rejected.
    let mut broken = v.clone();
    let t0 = broken["trees"][0].clone();
    broken["trees"].as_array_mut().unwrap().push(t0);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&broken).unwrap()).unwrap();
    let o = sierpinski(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn pack_counts_match_closed_form() {
    for (n, l, k, want) in [(2, 4, 3, 2), (4, 5, 5, 2), (3, 6, 3, 4), (2, 4, 4, 2)] {
        let o = sierpinski(&[
            "pack", "-n", &n.to_string(), "-l", &l.to_string(), "-k", &k.to_string(), "--u-policy", "worst", "--mode",
            "minimal",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["trees"].as_array().unwrap().len(), want, "S({n},{l}) k={k}");
    }
}

#[test]
fn pack_random_is_reproducible_and_large_k_uses_paths() {
    let args = ["pack", "-n", "2", "-l", "3", "-k", "4", "--u-policy", "random", "--seed", "7"];
    let a = sierpinski(&args);
    let b = sierpinski(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["mode"], "hamiltonian");
    assert_eq!(v["trees"].as_array().unwrap().len(), 1);
    assert!(stderr(&a).contains("vertex: not claimed"));

    let o = sierpinski(&["pack", "-n", "2", "-l", "3", "-k", "4", "--u-policy", "random"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_on_small_complete_graphs() {
    let o = sierpinski(&["oracle", "--complete", "5", "-k", "3", "--flavor", "edge"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "3\n");
    let o = sierpinski(&["--jobs", "1", "oracle", "--complete", "6", "-k", "3", "--flavor", "vertex"]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn oracle_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = dir.path().join(name);
        let o = sierpinski(&[
            "oracle", "-n", "2", "-l", "4", "-k", "3", "--u-policy", "worst", "--flavor", "both", "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        runs.push(fs::read(&out).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    let csv = String::from_utf8(runs.remove(0)).unwrap();
    assert_eq!(
        csv,
        "S,flavor,value,complete,nodes,millis\n00 11 22,edge,2,true,20900,0\n00 11 22,vertex,2,true,4985,0\n"
    );
}

#[test]
fn oracle_caps_need_acknowledgement() {
    let o = sierpinski(&["oracle", "--complete", "5", "-k", "3", "--max-vertices", "40"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sierpinski(&["oracle", "-n", "3", "-l", "4", "-k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn props_rows_and_files() {
    let o = sierpinski(&["props", "-n", "3", "-l", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "t,l,N,E,density,C_exact,C_paper,diam_bfs\n3,3,27,39,0.111111111111,0.407407407407,1.88888888889,7\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let o = sierpinski(&["props", "-n", "3", "-l", "3", "--sweep", "--l-max", "4", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let props = fs::read_to_string(dir.path().join("props.csv")).unwrap();
    assert_eq!(props.lines().count(), 1 + 6);
    assert_eq!(
        fs::read_to_string(dir.path().join("degrees.csv")).unwrap(),
        "degree,count\n2,3\n3,24\n"
    );
    let entropy = fs::read_to_string(dir.path().join("entropy.csv")).unwrap();
    assert!(entropy.starts_with("n,l,k,rho_k\n"));
    assert_eq!(entropy.lines().count(), 1 + 3 + 3 * 2);
}

#[test]
fn hamdecomp_outputs_verify() {
    let o = sierpinski(&["hamdecomp", "--sierpinski", "-n", "2", "-l", "4"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("2 Hamiltonian paths, verified"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 16);

    let o = sierpinski(&["hamdecomp", "--complete", "7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["paths"].as_array().unwrap().len(), 3);
    assert_eq!(v["matching"].as_array().unwrap().len(), 3);

    let o = sierpinski(&["hamdecomp", "--complete", "6", "--pairs", "0-3,1-2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["paths"][0][0], 0);
    assert_eq!(v["paths"][0][5], 3);
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["pack", "-n", "2", "-l", "3", "--u", "00,11,33"][..],
        &["pack", "-n", "2", "-l", "3", "-k", "2", "--u-policy", "worst"],
        &["hamdecomp"],
        &["verify", "/nonexistent/trees.json"],
    ] {
        let o = sierpinski(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}
