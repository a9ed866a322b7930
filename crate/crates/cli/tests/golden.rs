//! Golden-file tests: each command's stdout must match `tests/golden/<name>.json`
//! byte for byte. Regenerate with `UPDATE_GOLDEN=1 cargo test -p surfkit-cli --test golden`.

use std::fs;
use std::path::PathBuf;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("surfkit").chain(args.iter().copied());
    let code = surfkit_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn check(name: &str, args: &[&str], expected_code: i32) {
    let (code, out) = run(args);
    assert_eq!(code, expected_code, "{name}: exit code, output:\n{out}");
    let path = dir("golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, expected, "{name}: output differs from {}", path.display());
}

#[test]
fn hilbert() {
    check("hilbert_10", &["hilbert", "--max-degree", "10"], 0);
}

#[test]
fn validate() {
    check("validate_general", &["validate", "-i", &fixture("general.txt")], 0);
    check("validate_no_z0sq", &["validate", "-i", &fixture("no_z0sq.txt")], 2);
    check("validate_typo", &["validate", "-i", &fixture("typo.txt")], 2);
    check("validate_missing", &["validate", "-i", "does/not/exist.txt"], 2);
}

#[test]
fn normalize() {
    check("normalize_general", &["normalize", "-i", &fixture("general.txt")], 0);
    check("normalize_seed1", &["normalize", "-i", &fixture("seed1.txt")], 0);
}

#[test]
fn base_locus() {
    check("base_locus_diagonal", &["base-locus", "-i", &fixture("diagonal.txt")], 0);
    check("base_locus_seed1", &["base-locus", "-i", &fixture("seed1.txt")], 0);
}

#[test]
fn canonical_image() {
    check("canonical_image_cubic", &["canonical-image", "-i", &fixture("cubic.txt")], 0);
    check("canonical_image_general", &["canonical-image", "-i", &fixture("general.txt")], 0);
}

#[test]
fn map_degree() {
    check("map_degree_cubic", &["map-degree", "-i", &fixture("cubic.txt")], 0);
    check("map_degree_general", &["map-degree", "-i", &fixture("general.txt")], 0);
}

#[test]
fn smooth_scan() {
    check("smooth_scan_diagonal_7", &["smooth-scan", "-i", &fixture("diagonal.txt"), "-p", "7", "--no-timing"], 0);
    check(
        "smooth_scan_seed1_multi",
        &["smooth-scan", "-i", &fixture("seed1.txt"), "-p", "7,11,13", "--no-timing", "--jobs", "3"],
        0,
    );
    check("smooth_scan_bad_prime", &["smooth-scan", "-i", &fixture("diagonal.txt"), "-p", "9"], 2);
}

#[test]
fn jobs_do_not_change_output() {
    let scan =
        |jobs: &str| run(&["smooth-scan", "-i", &fixture("diagonal.txt"), "-p", "11", "--no-timing", "--jobs", jobs]);
    assert_eq!(scan("1"), scan("8"));
    let count = |jobs: &str| run(&["count-points", "-i", &fixture("seed1.txt"), "-p", "11", "--jobs", jobs]);
    assert_eq!(count("1"), count("5"));
}

#[test]
fn count_points() {
    check("count_points_diagonal_7", &["count-points", "-i", &fixture("diagonal.txt"), "-p", "7"], 0);
    check("count_points_seed1_7", &["count-points", "-i", &fixture("seed1.txt"), "-p", "7"], 0);
}

#[test]
fn rule_out_pencil() {
    check("rule_out_pencil_20_1", &["rule-out-pencil", "--samples", "20", "--seed", "1"], 0);
}

#[test]
fn splitting() {
    check("splitting_v1", &["splitting", "--case", "V1"], 0);
    check("splitting_v2", &["splitting", "--case", "V2"], 0);
    check("splitting_2-1-2", &["splitting", "--case", "2-1-2", "--seed", "3"], 0);
    check("splitting_unknown", &["splitting", "--case", "3-1"], 2);
}

#[test]
fn moduli_counts() {
    check("moduli_counts", &["moduli-counts"], 0);
}

#[test]
fn orbit() {
    check("orbit_generic_7", &["orbit", "-i", &fixture("vprime_generic.json"), "-p", "7"], 0);
    check("orbit_no_cube_root", &["orbit", "-i", &fixture("vprime_generic.json"), "-p", "11"], 2);
}

#[test]
fn random_surface() {
    check("random_surface_1", &["random-surface", "--seed", "1"], 0);
    check("random_surface_1_p7", &["random-surface", "--seed", "1", "-p", "7"], 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["smooth-scan", "-i", "x.txt"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
