use std::path::Path;
use std::process::Command;

use z2cech::cli::manifest::{parse_manifest, AlgebraManifest, Manifest};
use z2cech::cli::{run_command, EXIT_INPUT, EXIT_OK};

const GOLDEN: &[(&str, &[&str])] = &[
    (
        "hp_field",
        &["hp", "--algebra", "builtin:field", "--cutoff", "6"],
    ),
    (
        "hp_field2",
        &["hp", "--algebra", "builtin:field2", "--cutoff", "6"],
    ),
    (
        "hp_points3",
        &["hp", "--algebra", "builtin:points3", "--cutoff", "5"],
    ),
    (
        "hp_mat2",
        &["hp", "--algebra", "builtin:mat2", "--cutoff", "4"],
    ),
    (
        "hh_dual",
        &["hh", "--algebra", "builtin:dual", "--cutoff", "4"],
    ),
    ("cech_circle3", &["cech", "--cover", "builtin:circle3"]),
    ("cech_sphere4", &["cech", "--cover", "builtin:sphere4"]),
    ("z2cech_circle3", &["z2cech", "--cover", "builtin:circle3"]),
    ("z2cech_sphere4", &["z2cech", "--cover", "builtin:sphere4"]),
    (
        "identities_dual",
        &["identities", "--algebra", "builtin:dual"],
    ),
    (
        "morita_field",
        &["morita", "--algebra", "builtin:field", "--n", "2"],
    ),
    ("hkr_3", &["hkr", "--n", "3"]),
    ("axioms", &["axioms"]),
    ("refine_circle", &["refine", "--job", "builtin:circle"]),
];

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn golden_reports() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in GOLDEN {
        let mut argv: Vec<&str> = args.to_vec();
        argv.extend(["--format", "json"]);
        let out = run_command(argv);
        assert_eq!(out.status, EXIT_OK, "{name}: {}", out.stderr);
        let expected = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(
            out.stdout, expected,
            "{name} drifted from its golden report"
        );
    }
}

#[test]
fn bundled_matrix_fixture() {
    let text = std::fs::read_to_string(fixture("matrix2.alg")).unwrap();
    let m = parse_manifest(&text).unwrap();
    assert_eq!(
        m,
        Manifest::Algebra(AlgebraManifest::from_algebra(
            &z2cech::algebra::matrix_algebra(2)
        ))
    );
    let from_file = run_command([
        "hp",
        "--algebra",
        &fixture("matrix2.alg"),
        "--format",
        "json",
    ]);
    let builtin = run_command(["hp", "--algebra", "builtin:mat2", "--format", "json"]);
    let results =
        |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["results"].clone();
    assert_eq!(results(&from_file.stdout), results(&builtin.stdout));
}

#[test]
fn user_cover_and_presheaf() {
    let out = run_command([
        "cech",
        "--cover",
        &fixture("interval.cover"),
        "--presheaf",
        &fixture("skyscraper.presheaf"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["ranks"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn user_space_and_kind_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("point.space");
    std::fs::write(&path, "kind: space\npoints: 1\nopens:\n  {}\n  {0}\n").unwrap();
    let out = run_command([
        "axioms",
        "--space",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status, EXIT_OK);
    let out = run_command(["cech", "--cover", path.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(
        out.stderr.contains("expected a cover manifest"),
        "{}",
        out.stderr
    );
}

#[test]
fn process_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_z2cech");
    let ok = Command::new(bin)
        .args([
            "morita",
            "--algebra",
            "builtin:field",
            "--n",
            "2",
            "--cutoff",
            "4",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("results.equal"));
    let bad = Command::new(bin)
        .args(["hp", "--cutoff", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run_command([
        "hkr",
        "--n",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["matched"], true);
}

#[test]
fn refine_that_is_not_a_refinement() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.txt");
    let text = "kind: job\ntask: refine\npoints: 2\nopens:\n  {}\n  {0}\n  {1}\n  {0,1}\ncoarse:\n  {0}\n  {1}\nfine:\n  {0,1}\nassignment: 0\n";
    std::fs::write(&path, text).unwrap();
    let out = run_command(["refine", "--job", path.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_INPUT);
    assert!(out.stderr.contains("not inside"), "{}", out.stderr);
}
