use std::path::Path;
use std::process::{Command, Output};

use tveg::export::read_tveg_json;

fn tveg(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tveg"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("TVEG_THREADS", n);
    }
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = tveg(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn full_pipeline_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let data = d.join("data");
    ok(&["gen", "--gauss8", "--dims", "12", "--steps", "8", "-o", s(&data)]);
    let manifest = data.join("manifest.json");
    assert!(manifest.exists());

    ok(&["eg", "--manifest", s(&manifest), "--range", "2:4", "--segmentation", "-o", s(&d.join("eg"))]);
    for t in 2..=4 {
        assert!(d.join(format!("eg/eg_{t:04}.json")).exists());
        assert!(d.join(format!("eg/seg_{t:04}.raw")).exists());
    }
    assert!(!d.join("eg/eg_0001.json").exists());

    let stdout = ok(&["tveg", "--manifest", s(&manifest), "-o", s(&d.join("out"))]);
    assert!(stdout.contains("tveg:"));
    let tv_path = d.join("out/tveg.json");
    let tv = read_tveg_json(&tv_path).unwrap();
    assert_eq!(tv.graphs.len(), 8);
    assert_eq!(tv.pairs.len(), 7);

    let ev = d.join("events.json");
    ok(&["events", "--tveg", s(&tv_path), "--window", "1:4", "-o", s(&ev)]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&ev).unwrap()).unwrap();
    for kind in ["merges", "splits", "deletions", "generations"] {
        for e in v[kind].as_array().unwrap() {
            let t = e["time"].as_u64().unwrap();
            assert!((1..=4).contains(&t));
        }
    }

    let tracks = d.join("tracks.json");
    ok(&["tracks", "--tveg", s(&tv_path), "--mode", "paths", "-o", s(&tracks)]);
    ok(&["tracks", "--tveg", s(&tv_path), "--mode", "components", "-o", s(&d.join("comp.json"))]);
    ok(&[
        "tracks", "--tveg", s(&tv_path), "--refine", "--manifest", s(&manifest), "--min-len", "2", "--collate", "-o",
        s(&d.join("refined.json")),
    ]);

    ok(&["query", "--tveg", s(&tv_path), "--longer", "3", "-o", s(&d.join("q1.json"))]);
    ok(&["query", "--tveg", s(&tv_path), "--region", "-1,-1,-1,1,1,1", "--window", "1:3"]);
    ok(&["query", "--tveg", s(&tv_path), "--window", "2:5"]);
    let req = d.join("req.json");
    std::fs::write(&req, r#"{"kind":"least-deviation","n":2}"#).unwrap();
    ok(&["query", "--tveg", s(&tv_path), "--request", s(&req)]);

    let vtk = d.join("tracks.vtk");
    ok(&["export", "--tveg", s(&tv_path), "--tracks", s(&tracks), "-o", s(&vtk)]);
    let text = std::fs::read_to_string(&vtk).unwrap();
    assert!(text.starts_with("# vtk DataFile Version"));
    assert!(text.contains("POINT_DATA"));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--gauss8", "--dims", "10", "--steps", "6", "-o", s(&d.join("data"))]);
    let m = d.join("data/manifest.json");
    let mut outs = Vec::new();
    for n in ["1", "3"] {
        let o = d.join(format!("out{n}"));
        let r = tveg(&["tveg", "--manifest", s(&m), "-o", s(&o)], Some(n));
        assert!(r.status.success());
        outs.push(std::fs::read(o.join("tveg.json")).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn errors_exit_nonzero_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let missing = tveg(&["events", "--tveg", s(&d.join("nope.json"))], None);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));

    ok(&["gen", "--gauss8", "--dims", "6", "--steps", "2", "-o", s(&d.join("one"))]);
    let mp = d.join("one/manifest.json");
    let mut m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&mp).unwrap()).unwrap();
    m["steps"].as_array_mut().unwrap().truncate(1);
    std::fs::write(&mp, m.to_string()).unwrap();
    let few = tveg(&["tveg", "--manifest", s(&d.join("one/manifest.json")), "-o", s(&d.join("o"))], None);
    assert_eq!(few.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&few.stderr).contains("at least 2"));

    let weights = tveg(&["tveg", "--manifest", "m.json", "--weights", "1,1,1,1", "-o", "x"], None);
    assert_eq!(weights.status.code(), Some(2));
    assert_eq!(tveg(&["bogus"], None).status.code(), Some(2));
}
