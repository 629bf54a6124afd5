use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use delsarte::cli::run;
use serde_json::Value;
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn delsarte(args: &[&str]) -> Out {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["delsarte"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(o: &Out) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const HAMMERSLEY: &str = "# base 2, s = 2, m = 2\n00 00\n10 10\n01 11\n11 01\n";

#[test]
fn kernel_spectrum() {
    let o = delsarte(&["--json", "scheme", "spectrum", "--kernel", "2,2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["exact"], true);
    assert_eq!(v["relations"], serde_json::json!(["1", "2", "inf"]));
    assert_eq!(v["p"][0][1], "-1/2");
    assert_eq!(v["multiplicities"], serde_json::json!([1, 1, 2]));
    for method in ["characters", "numeric"] {
        let o = delsarte(&["--json", "scheme", "spectrum", "kernel:2,2", "--method", method]);
        assert_eq!(o.code, 0, "{method}: {}", o.stderr);
        assert_eq!(json(&o)["p"][0][1], "-1/2", "{method}");
    }
    let auto = json(&delsarte(&["--json", "scheme", "spectrum", "oh:2,2,2"]));
    let tensor = json(&delsarte(&["--json", "scheme", "spectrum", "oh:2,2,2", "--method", "tensor"]));
    assert_eq!(auto["multiplicities"], tensor["multiplicities"]);
    assert_eq!(delsarte(&["scheme", "spectrum", "kernel:2,2", "--method", "tensor"]).code, 2);
}

#[test]
fn scheme_build_and_verify() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("h.json");
    let o = delsarte(&["scheme", "build", "oh:2,1,2", "--out", s(&file)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(delsarte(&["scheme", "verify", s(&file)]).code, 0);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["map"][0][1] = doc["map"][0][0].clone();
    let broken = write(&dir, "broken.json", &doc.to_string());
    let o = delsarte(&["scheme", "verify", s(&broken)]);
    assert_eq!(o.code, 1, "{}{}", o.stdout, o.stderr);
    assert_eq!(delsarte(&["scheme", "verify", s(&write(&dir, "junk.json", "{"))]).code, 2);
    let spec = format!("file:{}", s(&file));
    assert_eq!(delsarte(&["scheme", "spectrum", &spec]).code, 0);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(delsarte(&["scheme", "build", "kernel:0,2"]).code, 2);
    assert_eq!(delsarte(&["scheme", "build", "bogus:1"]).code, 2);
    assert_eq!(delsarte(&["no-such-command"]).code, 2);
    assert_eq!(delsarte(&["net", "check", "--v", "2", "--s", "2", "--m", "2", "--t", "0", "/nonexistent"]).code, 2);
    assert_eq!(delsarte(&["--help"]).code, 0);
}

#[test]
fn net_checks() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", HAMMERSLEY);
    let o = delsarte(&["net", "check", "--v", "2", "--s", "2", "--m", "2", "--t", "0", "--criterion", "all", s(&h)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.lines().count(), 3);
    let o = delsarte(&["--json", "net", "tvalue", "--v", "2", "--s", "2", "--m", "2", s(&h)]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["t"], 0);

    let bad = write(&dir, "bad.txt", "00 00\n00 00\n01 11\n11 01\n");
    let o = delsarte(&["--json", "net", "check", "--v", "2", "--s", "2", "--m", "2", "--t", "0", "--criterion", "all", s(&bad)]);
    assert_eq!(o.code, 1);
    let v = json(&o);
    let kinds: Vec<&str> = v.as_array().unwrap().iter().map(|x| x["witness"]["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["interval", "character", "shape"]);

    let mal = write(&dir, "mal.txt", "00 00\n\n0x 00\n");
    let o = delsarte(&["net", "check", "--v", "2", "--s", "2", "--m", "2", "--t", "0", s(&mal)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    let o = delsarte(&["net", "check", "--v", "2", "--s", "2", "--m", "2", "--t", "3", s(&h)]);
    assert_eq!(o.code, 2);
}

#[test]
fn lp_bounds() {
    let o = delsarte(&["--json", "lp", "bound", "--scheme", "oh:2,2,2", "--design-height", "2", "--minimize"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["optimum"], "4");
    assert_eq!(v["certified"], "4");
    let o = delsarte(&["--json", "lp", "bound", "--scheme", "oh:2,1,2", "--min-distance", "2", "--maximize"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["optimum"], "2");
    let o = delsarte(&["--json", "lp", "bound", "--scheme", "kernel:3,2", "--codes", "3"]);
    assert_eq!(json(&o)["optimum"], "4");
    assert_eq!(delsarte(&["lp", "bound", "--scheme", "kernel:2,2", "--codes", "nope"]).code, 2);
    let o = delsarte(&["lp", "bound", "--scheme", "schurian:5:(1 2 3 4 5);(2 5)(3 4)"]);
    assert_eq!(o.code, 2, "{}", o.stderr);
}

#[test]
fn design_and_code_checks() {
    let dir = TempDir::new().unwrap();
    let y = write(&dir, "y.txt", "00,00\n10,10\n01,11\n11,01\n");
    let o = delsarte(&["design", "check", "--scheme", "oh:2,2,2", "--design-height", "2", s(&y)]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let o = delsarte(&["code", "check", "--scheme", "oh:2,2,2", "--min-distance", "3", s(&y)]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let z = write(&dir, "z.txt", "00,00\n00,01\n");
    assert_eq!(delsarte(&["code", "check", "--scheme", "oh:2,2,2", "--min-distance", "2", s(&z)]).code, 1);
    assert_eq!(delsarte(&["design", "check", "--scheme", "oh:2,2,2", "--design-height", "1", s(&z)]).code, 1);
    let w = write(&dir, "w.txt", "00,00\n00,0\n");
    let o = delsarte(&["code", "check", "--scheme", "oh:2,2,2", "--min-distance", "2", s(&w)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
}

#[test]
fn sequence_ndjson() {
    let dir = TempDir::new().unwrap();
    let pts: String = ["000", "100", "010", "110", "001", "101"].iter().map(|p| format!("{p}\n")).collect();
    let f = write(&dir, "vdc.txt", &pts);
    let o = delsarte(&["--json", "seq", "check", "--v", "2", "--s", "1", "--n", "3", "--t", "0", "--m-max", "3", s(&f)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<Value> = o.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let count = |st: &str| lines.iter().filter(|l| l["status"] == st).count();
    assert_eq!(count("pass"), 3 + 1);
    assert_eq!(count("unchecked"), 2);
    assert_eq!(count("fail"), 0);
    let o = delsarte(&["seq", "check", "--v", "2", "--s", "1", "--n", "3", "--t", "0", "--m-max", "3", s(&f)]);
    assert!(o.stdout.contains("verified for all checked blocks"), "{}", o.stdout);
    let g = write(&dir, "const.txt", "000\n000\n");
    assert_eq!(delsarte(&["seq", "check", "--v", "2", "--s", "1", "--n", "3", "--t", "0", "--m-max", "1", s(&g)]).code, 1);
}

#[test]
fn morphisms_and_towers() {
    let o = delsarte(&["--json", "morphism", "j", "--source", "kernel:3,2", "--target", "kernel:2,2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["domain"], serde_json::json!(["0", "1", "2"]));
    assert_eq!(delsarte(&["morphism", "verify", "--source", "oh:2,2,2", "--target", "oh:2,1,2"]).code, 0);

    let o = delsarte(&["--json", "tower", "isolate", "--kind", "kernel", "--v", "2", "--depth", "6", "--j", "3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!((v["isolated_at"].as_u64(), v["multiplicity"].as_u64()), (Some(3), Some(4)));
    let o = delsarte(&["--json", "tower", "isolate", "--kind", "kernel", "--v", "2", "--depth", "5", "--j", "5"]);
    assert_eq!(json(&o)["isolated"], false);

    let dir = TempDir::new().unwrap();
    let d = write(&dir, "t.json", r#"{"kind":"ordered_hamming","params":{"s":2,"v":2},"depth":3}"#);
    let o = delsarte(&["--json", "tower", "j-chain", "--descriptor", s(&d)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o).as_array().unwrap().len(), 2);
    let bad = write(&dir, "bad.json", r#"{"kind":"custom","params":{},"depth":3}"#);
    assert_eq!(delsarte(&["tower", "build", "--descriptor", s(&bad)]).code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_delsarte");
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", HAMMERSLEY);
    let ok = Command::new(bin).args(["net", "check", "--v", "2", "--s", "2", "--m", "2", "--t", "0", s(&h)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["scheme", "build", "kernel:x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
