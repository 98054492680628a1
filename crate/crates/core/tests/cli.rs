use std::path::Path;
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use suzuki::genfile::GeneratorFile;
use suzuki::linalg::MatGroup;
use suzuki::szstd::Sz;
use suzuki::{Mat4, Slp};

fn suzuki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suzuki"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write_gens(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &p]);
    assert_eq!(code(&suzuki(&all)), 0);
    p
}

#[test]
fn gen_is_deterministic() {
    let a = suzuki(&["gen", "--m", "2", "--conjugate", "--seed", "7"]);
    let b = suzuki(&["gen", "--m", "2", "--conjugate", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = suzuki(&["gen", "--m", "2", "--conjugate", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn standard_generators_are_members() {
    let o = suzuki(&["gen", "--m", "1"]);
    let file = GeneratorFile::parse(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    let sz = Sz::new(1).unwrap();
    assert_eq!(file.m, 1);
    assert!(!file.gens.is_empty());
    assert!(file.gens.iter().all(|g| sz.is_member(g)));
}

#[test]
fn recognise_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_gens(dir.path(), "good.txt", &["--m", "2", "--conjugate", "--seed", "3"]);
    let o = suzuki(&["recognise", "--in", &good]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "yes");
    let o = suzuki(&["recognise", "--in", &good, "--standard"]);
    assert_eq!(code(&o), 1);

    let decoy = write_gens(dir.path(), "decoy.txt", &["--m", "1", "--decoy", "stabiliser"]);
    let o = suzuki(&["recognise", "--in", &decoy]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["verdict"], "no");
    assert_eq!(v["tag"], "reducible");
    assert!(v["ms"].is_number());
}

#[test]
fn membership_writes_a_verified_program() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write_gens(dir.path(), "gens.txt", &["--m", "2"]);
    let sz = Sz::new(2).unwrap();
    let f = sz.field();
    let g = sz.random_element(&mut ChaCha8Rng::seed_from_u64(5));
    let target = dir.path().join("target.txt");
    std::fs::write(&target, g.to_hex_line(f)).unwrap();
    let o = suzuki(&["membership", "--in", &gens, "--target", target.to_str().unwrap(), "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.trim_end().ends_with("# verified: true"));
    let slp = Slp::parse(&text).unwrap();
    assert_eq!(slp.evaluate(&MatGroup(f), &sz.generators()).unwrap(), g);

    let outside = Mat4::diag([suzuki::Gf(2), suzuki::Gf::ONE, suzuki::Gf::ONE, suzuki::Gf::ONE]);
    std::fs::write(&target, outside.to_hex_line(f)).unwrap();
    let o = suzuki(&["membership", "--in", &gens, "--target", target.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn conjugate_returns_a_conjugator() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_gens(dir.path(), "c.txt", &["--m", "2", "--conjugate", "--seed", "7"]);
    let o = suzuki(&["conjugate", "--in", &path, "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["found"], true);
    assert_eq!(v["verified"], true);
    let sz = Sz::new(2).unwrap();
    let f = sz.field();
    let g = Mat4::parse_hex_line(v["conjugator"].as_str().unwrap(), f).unwrap();
    let file = GeneratorFile::read(Path::new(&path)).unwrap();
    assert!(file.gens.iter().all(|x| sz.is_member(&x.conj(&g, f))));

    let decoy = write_gens(dir.path(), "d.txt", &["--m", "2", "--decoy", "hall-plus"]);
    let o = suzuki(&["conjugate", "--in", &decoy]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["tag"], "metabelian-trap");
}

#[test]
fn experiment_commands_emit_json() {
    let o = suzuki(&["check-conjecture", "--m", "2,3", "--trials", "40", "--seed", "4"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["total_instances"], 80);
    assert_eq!(v["fields"].as_array().unwrap().len(), 2);
    assert!(v["fields"][0]["max_degree"].as_u64().unwrap() <= 60);

    let o = suzuki(&["bench", "--m", "1", "--trials", "1"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert!(rows[0]["mean_ms"].is_number());
}

#[test]
fn selftest_passes() {
    let o = suzuki(&["selftest"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().all(|l| l.starts_with("pass")));
}

#[test]
fn usage_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.txt");
    assert_eq!(code(&suzuki(&["bogus"])), 3);
    assert_eq!(code(&suzuki(&["gen"])), 3);
    assert_eq!(code(&suzuki(&["gen", "--m", "0"])), 3);
    assert_eq!(code(&suzuki(&["gen", "--m", "1", "--decoy", "nope"])), 3);
    assert_eq!(code(&suzuki(&["recognise", "--in", missing.to_str().unwrap()])), 3);
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "SZ m=1 modulus=d\n").unwrap();
    assert_eq!(code(&suzuki(&["recognise", "--in", bad.to_str().unwrap()])), 3);
    let gens = write_gens(dir.path(), "g.txt", &["--m", "1"]);
    assert_eq!(code(&suzuki(&["conjugate", "--in", &gens, "--epsilon", "1.5"])), 3);
    assert_eq!(code(&suzuki(&["--help"])), 0);
    assert_eq!(code(&suzuki(&["--version"])), 0);
}
