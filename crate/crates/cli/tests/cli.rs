use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;
use ucp_core::field::rat;
use ucp_core::formats::{write_matrices, write_orthospace, write_states};
use ucp_core::instances::pauli_frames;
use ucp_core::jordan::{Algebra, JordanElement};
use ucp_core::orthospace::{make_boolean, make_mo2, single_entry_mutations, OrthoSpace};
use ucp_core::statespace::State;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn ucp(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ucp")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn space_file(dir: &TempDir, name: &str, space: &OrthoSpace) -> PathBuf {
    write(dir, name, &write_orthospace(space))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_boolean_passes() {
    let dir = TempDir::new().unwrap();
    let b3 = space_file(&dir, "b3.json", &make_boolean(3).unwrap());
    let r = ucp(&["verify", "--input", s(&b3), "--check", "os,uc1,uc2,mix"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("PASS UC2"));
    assert!(r.stdout.ends_with("result: PASS\n"));
}

#[test]
fn verify_mo2_uc2_fails_with_replayable_witness() {
    let dir = TempDir::new().unwrap();
    let mo2 = space_file(&dir, "mo2.json", &make_mo2());
    let r = ucp(&["verify", "--input", s(&mo2), "--check", "uc2", "--format", "json"]);
    assert_eq!(r.code, 1);
    let report = r.json();
    let uc2 = check(&report, "UC2");
    assert_eq!(uc2["passed"], false);
    let w = &uc2["witnesses"][0];
    assert_eq!(w["kind"], "uc");
    assert!(w["witness"].get("TwoConditionals").is_some());
    assert!(report["checks"].as_array().unwrap().iter().filter(|c| c["name"] != "UC2").all(|c| c["passed"] == true));

    let saved = write(&dir, "report.json", &r.stdout);
    let replay = ucp(&["verify", "--input", s(&mo2), "--replay", s(&saved), "--format", "json"]);
    assert_eq!(replay.code, 1);
    let rr = replay.json();
    assert!(rr["checks"].as_array().unwrap().iter().all(|c| c["detail"] == "violation reproduced"));

    let one = write(&dir, "w.json", &w.to_string());
    assert_eq!(ucp(&["verify", "--input", s(&mo2), "--replay", s(&one)]).code, 1);
}

#[test]
fn mutation_witness_replays_only_on_the_mutant() {
    let dir = TempDir::new().unwrap();
    let b3 = make_boolean(3).unwrap();
    let mutant = single_entry_mutations(&b3)[3].apply(&b3);
    let good = space_file(&dir, "b3.json", &b3);
    let bad = space_file(&dir, "bad.json", &mutant);
    let r = ucp(&["verify", "--input", s(&bad), "--format", "json"]);
    assert_eq!(r.code, 1);
    let saved = write(&dir, "report.json", &r.stdout);
    assert_eq!(ucp(&["verify", "--input", s(&bad), "--replay", s(&saved)]).code, 1);
    let on_good = ucp(&["verify", "--input", s(&good), "--replay", s(&saved)]);
    assert_eq!(on_good.code, 0, "{}", on_good.stdout);
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"n_events\": 3, ");
    let r = ucp(&["verify", "--input", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("input error"));
    assert_eq!(ucp(&["verify", "--input", "/nonexistent/file.json"]).code, 2);
    assert_eq!(ucp(&["verify"]).code, 2);
    let b3 = space_file(&dir, "b3.json", &make_boolean(3).unwrap());
    let states = write(&dir, "s.json", "[\"1\"]");
    assert_eq!(ucp(&["condition", "--input", s(&b3), "--states", s(&states), "--event", "1"]).code, 2);
}

#[test]
fn condition_qubit_pair() {
    let dir = TempDir::new().unwrap();
    let e = JordanElement::complex(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (0.0, 0.0)]]).unwrap();
    let f = JordanElement::complex(&[vec![(0.5, 0.0), (0.5, 0.0)], vec![(0.5, 0.0), (0.5, 0.0)]]).unwrap();
    let rho = JordanElement::identity(Algebra::Complex, 2).scale(0.5);
    let ps = write(&dir, "p.json", &write_matrices(&[e, f.clone()]));
    let st = write(&dir, "rho.json", &write_matrices(&[rho.clone()]));
    let r = ucp(&["condition", "--input", s(&ps), "--states", s(&st), "--format", "json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert!((v["data"]["probability_1"].as_f64().unwrap() - 0.5).abs() <= 1e-12);
    assert!((v["data"]["mass"].as_f64().unwrap() - 0.5).abs() <= 1e-12);

    let id = write(&dir, "id.json", &write_matrices(&[JordanElement::identity(Algebra::Complex, 2)]));
    let r = ucp(&["condition", "--input", s(&id), "--states", s(&st), "--format", "json"]);
    assert_eq!(r.code, 0);
    let echoed = ucp_core::formats::parse_matrices(&r.json()["data"]["conditional"].to_string()).unwrap();
    assert!(echoed[0].max_abs_diff(&rho) <= 1e-15);

    let down = JordanElement::complex(&[vec![(0.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (1.0, 0.0)]]).unwrap();
    let up = write(&dir, "up.json", &write_matrices(&[JordanElement::identity(Algebra::Complex, 2).sub(&down)]));
    let pure = write(&dir, "down.json", &write_matrices(&[down]));
    let r = ucp(&["condition", "--input", s(&up), "--states", s(&pure)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("conditioning undefined"));
}

#[test]
fn condition_boolean_classical() {
    let dir = TempDir::new().unwrap();
    let b3 = space_file(&dir, "b3.json", &make_boolean(3).unwrap());
    let mu = State::from_atom_weights(&[rat(1, 5), rat(3, 10), rat(1, 2)]);
    let st = write(&dir, "mu.json", &write_states(&[mu]));
    let r = ucp(&["condition", "--input", s(&b3), "--states", s(&st), "--event", "3", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    let values: Vec<&str> = v["data"]["conditional_values"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(&values[1..5], ["2/5", "3/5", "1", "0"]);
    assert_eq!(v["data"]["slice_dimension"], 0);

    let r = ucp(&["condition", "--input", s(&b3), "--states", s(&st), "--event", "7"]);
    assert!(r.stdout.contains("(0=0, a=1/5, b=3/10, a+b=1/2, c=1/2, a+c=7/10, b+c=4/5, 1=1)"), "{}", r.stdout);

    let point = write(&dir, "p.json", &write_states(&[State::from_atom_weights(&[rat(1, 1), rat(0, 1), rat(0, 1)])]));
    let r = ucp(&["condition", "--input", s(&b3), "--states", s(&point), "--event", "2"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("conditioning undefined"));
}

#[test]
fn synthesize_boolean_and_dump() {
    let dir = TempDir::new().unwrap();
    let b3 = space_file(&dir, "b3.json", &make_boolean(3).unwrap());
    let dump = dir.path().join("dump.json");
    let r = ucp(&["synthesize", "--input", s(&b3), "--dump", s(&dump), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["data"]["dim"], 3);
    assert_eq!(v["data"]["hull_equals_interval"], true);
    let d: ucp_core::synthesis::SyntheticDump = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(d.dim, 3);
    assert_eq!(d.ue.len(), 8);
}

#[test]
fn synthesize_mo2_blocks_on_uc2() {
    let dir = TempDir::new().unwrap();
    let mo2 = space_file(&dir, "mo2.json", &make_mo2());
    let r = ucp(&["synthesize", "--input", s(&mo2), "--format", "json"]);
    assert_eq!(r.code, 1);
    let v = r.json();
    let uc2 = check(&v, "UC2");
    assert!(uc2["detail"].as_str().unwrap().contains("not unique"));
    assert_eq!(uc2["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn synthesize_qubit_matches_jordan_product() {
    let dir = TempDir::new().unwrap();
    let ps: Vec<JordanElement> = pauli_frames().into_iter().flatten().collect();
    let rho = JordanElement::identity(Algebra::Complex, 2).scale(0.5);
    let p = write(&dir, "p.json", &write_matrices(&ps));
    let st = write(&dir, "d.json", &write_matrices(&[rho]));
    let r = ucp(&["synthesize", "--input", s(&p), "--states", s(&st), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["data"]["dim"], 4);
    for name in ["A1", "Ue", "product", "well-defined", "JB laws", "product oracle", "extreme points"] {
        assert_eq!(check(&v, name)["passed"], true, "{name}");
    }
}

#[test]
fn spectrum_examples() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", &write_matrices(&[JordanElement::diagonal(Algebra::Real, &[2.0, -1.0])]));
    let r = ucp(&["spectrum", "--input", s(&d), "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["data"]["eigenvalues_0"], json!([[-1.0, 1], [2.0, 1]]));

    let albert = write(&dir, "a.json", &write_matrices(&[JordanElement::diagonal(Algebra::Octonion, &[3.0, -1.0, 0.5])]));
    let r = ucp(&["spectrum", "--input", s(&albert), "--format", "json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["data"]["eigenvalues_0"].as_array().unwrap().len(), 3);
    assert_eq!(v["data"]["spectral_radius_0"], 3.0);

    let b2 = space_file(&dir, "b2.json", &make_boolean(2).unwrap());
    let obs = write(&dir, "o.json", "{\"support\": [[\"2\", 1], [\"-1\", 2]]}");
    let r = ucp(&["spectrum", "--input", s(&obs), "--space", s(&b2), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["data"]["spectral_radius"], "2");
    assert_eq!(ucp(&["spectrum", "--input", s(&obs)]).code, 2);
    let partial = write(&dir, "bad.json", "{\"support\": [[\"2\", 1]]}");
    assert_eq!(ucp(&["spectrum", "--input", s(&partial), "--space", s(&b2)]).code, 2);
}

#[test]
fn structured_output_is_deterministic_and_logs_overrides() {
    let dir = TempDir::new().unwrap();
    let b3 = space_file(&dir, "b3.json", &make_boolean(3).unwrap());
    let args = ["verify", "--input", s(&b3), "--check", "uc2,mix", "--seed", "7", "--samples", "20", "--tol", "1e-6", "--format", "json"];
    let a = ucp(&args);
    let b = ucp(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = a.json();
    assert_eq!(v["settings"]["overrides"], json!(["samples=20", "seed=7", "tol=1e-6"]));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "command", "data", "passed", "settings"]);
}
