use std::process::{Command, Output};

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../../../data/schema/result.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(json: &serde_json::Value) {
    let errors: Vec<String> = schema().iter_errors(json).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn fixture_spp_output() {
    let o = spectra(&["--fixture", "f2", "--format", "spp"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("((-1/4,2),1),((0,3),1),((0,2),2),"));
}

#[test]
fn morse_json() {
    let o = spectra(&["--germ", "x^2+y^2", "--vars", "x,y", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu"], 1);
    assert_eq!(v["spectral_pairs"], serde_json::json!([{ "alpha": "0", "w": 1, "m": 1 }]));
    assert_eq!(v["diagnostics"]["nondegenerate"], "true");
    assert_valid(&v);
}

#[test]
fn checked_fixtures_validate() {
    for f in ["f1", "f2", "f3"] {
        let o = spectra(&["--fixture", f, "--check"]);
        assert!(o.status.success(), "{f}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_valid(&v);
        assert_eq!(v["diagnostics"]["oracle"]["levels_agree"], true);
        assert_eq!(v["diagnostics"]["oracle"]["hodge_agree"], true);
        assert!(!stdout(&o).contains('.'), "{f}: decimal point in output");
    }
}

#[test]
fn json_round_trips_through_the_result_type() {
    let o = spectra(&["--fixture", "f2"]);
    let r: spectra::io::ComputationResult = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.mu, 31);
    assert_eq!(r.basis.len(), 31);
    assert_eq!(r.spectral_pairs.iter().map(|p| p.m).sum::<u64>(), 31);
}

#[test]
fn compressed_input_with_inferred_variables() {
    let o = spectra(&["-f", "x15+x6y4+x3y6+y12", "--format", "spp"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let f1 = spectra(&["--fixture", "f1", "--format", "spp"]);
    assert_eq!(stdout(&o), stdout(&f1));
}

#[test]
fn not_convenient_exits_3() {
    let o = spectra(&["--germ", "x^2*y+y^2", "--vars", "x,y"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not convenient: axis x"), "{}", stderr(&o));
}

#[test]
fn degenerate_exits_3() {
    let o = spectra(&["--germ", "(x+y)^2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("degenerate"), "{}", stderr(&o));
    let o = spectra(&["--germ", "(x+y)^2", "--no-nondegeneracy-check", "--format", "spp"]);
    assert!(o.status.success());
}

#[test]
fn parse_errors_exit_2() {
    for args in [&["--germ", "x^^2"][..], &["--germ", "x+q", "--vars", "x,y"], &["--germ", "3"]] {
        let o = spectra(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(spectra(&[]).status.code(), Some(2));
}

#[test]
fn oracle_ceiling_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(["--fixture", "f2", "--check"])
        .env("SPECTRA_ORACLE_CEILING", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("did not stabilize"), "{}", stderr(&o));
}

#[test]
fn table_and_out_file() {
    let dir = std::env::temp_dir().join(format!("spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f2.txt");
    let o = spectra(&["--fixture", "f2", "--format", "table", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("mu: 31"));
    assert!(text.contains("chi = 1/2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
