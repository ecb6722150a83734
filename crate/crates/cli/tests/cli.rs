use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowerlab"))
        .args(args)
        .env_remove("FLOWERLAB_THREADS")
        .output()
        .expect("spawn flowerlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn pn_prints_p3() {
    let o = run(&["pn", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let fixture = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/p3.json")).unwrap();
    assert_eq!(stdout(&o), fixture);
    let text = run(&["pn", "--n", "3", "--format", "text"]);
    assert_eq!(stdout(&text), "-2*x1*x2*x3+x1^2+x2^2+x3^2-1\n");
}

#[test]
fn pn_ceiling() {
    let o = run(&["pn", "--n", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("ceiling 7"), "{}", stderr(&o));
    assert_eq!(run(&["pn", "--n", "8", "--max-n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["cn", "--n", "6"]).status.code(), Some(2));
    assert_eq!(run(&["pn", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn cn_is_square_of_pn() {
    let o = run(&["cn", "--n", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1^2-2*x1*x2+x2^2\n");
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--n", "4", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let checks = json_lines(&o);
    assert!(checks.len() >= 5);
    assert!(checks.iter().all(|c| c["holds"] == true));
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--composition", "2,1,2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["verify", "--worked-example"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["agreement"], true);
    assert_eq!(v["printedMatchesSolver"], false);
    let o = run(&["verify", "--radius"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["g0"], "16*r1^4*r2^4*r3^4");
    assert_eq!(v["printedComparison"].as_array().unwrap().len(), 5);
}

#[test]
fn soddy_gen_from_params_and_curvatures() {
    let o = run(&["soddy-gen", "--params", "1,2,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["cosines"], serde_json::json!(["-3/5", "-9/41", "-133/205"]));
    let o = run(&["soddy-gen", "--curvatures", "2,3,6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("23"));
    assert_eq!(run(&["soddy-gen", "--params", "1,2,x,5"]).status.code(), Some(2));
    assert_eq!(run(&["soddy-gen", "--params", "0,2,4,5"]).status.code(), Some(2));
}

#[test]
fn scan_csv_is_canonical_and_thread_independent() {
    let a = run(&["soddy-scan", "--bound", "4", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    let csv = stdout(&a);
    assert_eq!(csv.lines().count(), 1 + 256);
    let summary: serde_json::Value = serde_json::from_str(stderr(&a).trim()).unwrap();
    assert_eq!(summary["tuples"], 256);
    let b = Command::new(env!("CARGO_BIN_EXE_flowerlab"))
        .args(["--sequential", "soddy-scan", "--bound", "4", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(stdout(&b), csv);
    let c = Command::new(env!("CARGO_BIN_EXE_flowerlab"))
        .args(["soddy-scan", "--bound", "4", "--format", "csv"])
        .env("FLOWERLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&c), csv);
    let bad = Command::new(env!("CARGO_BIN_EXE_flowerlab"))
        .args(["pn", "--n", "3"])
        .env("FLOWERLAB_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn graham_and_inverse() {
    let o = run(&["graham", "--bound", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert!(rows.iter().all(|r| r["descartes"] == true));
    let o = run(&["graham", "--inverse", "1,2,4,5"]);
    assert_eq!(json_lines(&o)[0]["mOverX"], "6/13");
}

#[test]
fn pyth_lists_solutions() {
    let o = run(&["pyth", "--beta", "1", "--bound", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    let triples: Vec<_> = rows.iter().map(|r| (r["x"].as_u64().unwrap(), r["y"].as_u64().unwrap())).collect();
    assert_eq!(triples, vec![(3, 4), (4, 3)]);
    assert_eq!(run(&["pyth", "--beta", "4", "--bound", "5"]).status.code(), Some(2));
}

#[test]
fn flower_check_and_render() {
    let ok = run(&["flower", "check", "6", "69", "46", "23"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_lines(&ok)[0]["verdict"], "valid");
    let bad = run(&["flower", "check", "1", "1", "1", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json_lines(&bad)[0]["verdict"], "invalid");
    assert_eq!(run(&["flower", "check", "1", "a", "1", "1"]).status.code(), Some(2));
    let svg = run(&["flower", "render", "6", "69", "46", "23"]);
    assert_eq!(svg.status.code(), Some(0));
    assert!(stdout(&svg).starts_with("<svg"));
    assert_eq!(stdout(&svg), stdout(&run(&["flower", "render", "6", "69", "46", "23"])));
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("flowerlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p4.json");
    let o = run(&["--out", path.to_str().unwrap(), "pn", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let fixture = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/p4.json")).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), fixture);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["pn"]).status.code(), Some(2));
    assert_eq!(run(&["pn", "--n", "3", "--format", "csv"]).status.code(), Some(2));
}
