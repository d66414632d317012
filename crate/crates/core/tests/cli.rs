use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn monres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monres"))
        .args(args)
        .env_remove("MONRES_FIELD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("monres-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn betti_on_hexagon() {
    let o = monres(&["betti", &data("hexagon.ideal")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("totals: 1 6 9 6 2\n"), "{}", stdout(&o));
    let o = monres(&["betti", "--via", "taylor", &data("hexagon.ideal")]);
    assert!(stdout(&o).starts_with("totals: 1 6 9 6 2\n"));
}

#[test]
fn betti_json_totals() {
    let o = monres(&["betti", "--json", &data("strict.ideal")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 4, 4, 1]));
}

#[test]
fn classify_strict_example() {
    let o = monres(&["classify", "--json", &data("strict.ideal")]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let verdict = |c: &str| {
        v["entries"].as_array().unwrap().iter().find(|e| e["class"] == c).unwrap()["verdict"].clone()
    };
    assert_eq!(verdict("rigid"), "yes");
    assert_eq!(verdict("betti-linear"), "yes");
    assert_eq!(verdict("scarf"), "no");
}

#[test]
fn verify_rejects_poset_construction_of_not_betti() {
    let o = monres(&["poset", "--json", &data("not_betti.ideal")]);
    assert!(o.status.success());
    let path = tmp("nb.json", &stdout(&o));
    let o = monres(&["verify", &path]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.starts_with("FAIL"), "{out}");
    assert!(out.contains("multidegree a*b*c*d"), "{out}");
}

#[test]
fn resolve_round_trips_through_verify() {
    for f in ["cbasis.ideal", "hexagon.ideal", "strict.ideal"] {
        let o = monres(&["resolve", "--json", &data(f)]);
        let text = stdout(&o);
        let path = tmp(&format!("{f}.json"), &text);
        let o = monres(&["verify", &path]);
        assert!(o.status.success(), "{f}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS (minimal: yes)"));
        let back = monres::io::read_resolution(&text).unwrap();
        assert_eq!(monres::io::write_resolution(&back), text.trim_end());
    }
}

#[test]
fn rlm_with_preimage() {
    let o = monres(&["rlm", &data("rlm.ideal"), "--preimage", "123:0=-2+3"]);
    let out = stdout(&o);
    assert!(out.contains("d_2 = [-c 0; b -b^2; 0 a]"), "{out}");
    assert!(out.contains("resolution: yes"));
    let o = monres(&["rlm", &data("rlm.ideal"), "--preimage", "123:0=-1+2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn random_is_reproducible() {
    let args = ["random", "--r", "5", "--n", "4", "--maxdeg", "3", "--seed", "11", "--count", "4"];
    let a = monres(&args);
    let b = monres(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 4);
    for line in stdout(&a).lines() {
        monres::io::parse_ideal(line).unwrap();
    }
}

#[test]
fn field_selection() {
    let o = monres(&["--char", "2", "betti", "-e", "vars x; gens x^3"]);
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_monres"))
        .args(["betti", &data("strict.ideal")])
        .env("MONRES_FIELD", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_monres"))
        .args(["--char", "3", "betti", &data("strict.ideal")])
        .env("MONRES_FIELD", "6")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(monres(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(monres(&["betti", "-e", "vars a; gens a*q"]).status.code(), Some(3));
    assert_eq!(monres(&["betti", "-e", "gens x*y x*y"]).status.code(), Some(4));
    assert!(monres(&["betti", "--minimize-gens", "-e", "gens x*y x*y x"]).status.success());
    assert_eq!(monres(&["verify", "/nonexistent/file.json"]).status.code(), Some(3));
}

#[test]
fn other_commands_run() {
    for cmd in ["lattice", "taylor", "minimize", "scarf", "approx", "poset"] {
        let o = monres(&[cmd, &data("cbasis.ideal")]);
        assert!(o.status.success(), "{cmd}");
        let o = monres(&[cmd, "--json", &data("cbasis.ideal")]);
        assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout).is_ok(), "{cmd}");
    }
    let o = monres(&["scarf", &data("strict.ideal")]);
    assert_eq!(stdout(&o), "∅ 1 2 3 4 12 14 23 34\n");
}
