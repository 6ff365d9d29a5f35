use ellgen::cli::run;

fn ellgen(args: &str) -> ellgen::cli::Outcome {
    run(std::iter::once("ellgen").chain(args.split_whitespace()))
}

#[test]
fn k3_ahat_genus() {
    let out = ellgen("genus --catalog K3_type --cusp ahat --truncate 3");
    assert_eq!(out.code, 0);
    assert!(
        out.stdout
            .contains("series: 2·q^{-1/2} + 40·q^{1/2} - 124·q^{3/2} + 432·q^{5/2} + O(q^{7/2})"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("pole order: 1/2"));
}

#[test]
fn s4_rigidity() {
    let out = ellgen("rigidity --catalog S4_rotation --truncate 3");
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.contains("constant at all orders; equals 0"),
        "{}",
        out.stdout
    );
}

#[test]
fn corrupted_rigidity_exits_3() {
    assert_eq!(ellgen("rigidity --catalog S4_rotation_corrupted").code, 3);
}

#[test]
fn s4_verdict() {
    let out = ellgen("verdict --catalog S4_rotation --order 2 --r 0");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("rule: involution-codimension"));
    assert!(out.stdout.contains("predicted: pole order < 1/2"));
    assert!(out.stdout.contains("overall: consistent"));
}

#[test]
fn inconsistent_verdict_exits_3() {
    let out = ellgen("verdict --catalog K3_fake_action --order 2");
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("overall: INCONSISTENT"));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(ellgen("genus --catalog missing").code, 2);
    assert_eq!(ellgen("genus --catalog K3_type --truncate 0").code, 2);
    assert_eq!(ellgen("genus --catalog K3_type --input x.json").code, 2);
    assert_eq!(ellgen("rigidity --catalog K3_type").code, 2);
    let out = ellgen("validate --input /nonexistent/file.json");
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("parse_descriptor"));
}

#[test]
fn validate_file() {
    let dir = std::env::temp_dir().join(format!("ellgen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s4.json");
    std::fs::write(
        &path,
        ellgen::catalog::catalog_entry("S4_rotation")
            .unwrap()
            .source,
    )
    .unwrap();
    let out = run(["ellgen", "validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("valid: S4_rotation"));
    std::fs::write(&path, "{\"name\": 1}").unwrap();
    assert_eq!(
        run(["ellgen", "validate", "--input", path.to_str().unwrap()]).code,
        2
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic_and_json_parses() {
    for cmd in [
        "genus --catalog HP2_type --format json",
        "expand --catalog K3_type --format json",
        "local-data --catalog HP2_hp1_action --format json --truncate 2",
        "m-number --catalog HP2_type_action --order 4 --format json",
        "verdict --catalog HP2_type_action --order 4 --format json",
        "catalog --format json",
    ] {
        let a = ellgen(cmd);
        let b = ellgen(cmd);
        assert_eq!(a, b, "{cmd}");
        assert_eq!(a.code, 0, "{cmd}: {}", a.stderr);
        serde_json::from_str::<serde_json::Value>(&a.stdout).unwrap();
    }
}

#[test]
fn catalog_entry_json_round_trips_through_the_descriptor_schema() {
    let out = ellgen("catalog --catalog HP2_type_action");
    let d = ellgen::catalog::parse_descriptor(out.stdout.as_bytes()).unwrap();
    assert_eq!(ellgen::catalog::serialize_descriptor(&d), out.stdout);
}

#[test]
fn expand_reports_tm_anchor() {
    let out = ellgen("expand --catalog K3_type");
    assert!(out.stdout.contains("sign(M,TM): -256"));
    assert!(out.stdout.contains("q^1 coefficient = 2·sign(M,TM): yes"));
    let out = ellgen("expand --catalog K3_type --bundle TM --truncate 1");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("index series: -256"), "{}", out.stdout);
}

#[test]
fn verdict_json_has_rationals() {
    let out = ellgen("verdict --catalog S4_rotation --order 2 --format json");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let bound = &v["reports"][0]["routes"][0]["predicted_bound"];
    assert_eq!(bound["num"], 1);
    assert_eq!(bound["den"], 2);
}
