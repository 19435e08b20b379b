use std::path::PathBuf;
use std::process::{Command, Output};

use finspace::format::{group_to_json, poset_from_json, poset_to_json};
use finspace::group::cyclic;
use finspace::homotopy::example_space_a;
use finspace::report::{CheckStatus, VerificationReport};
use finspace::FinitePoset;

fn finspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finspace"))
        .args(args)
        .env_remove("FINSPACE_BUDGET_AUT")
        .env_remove("FINSPACE_BUDGET_MAPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn homology_line_format() {
    let o = finspace(&["homology", "--group", "cyclic:3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "b0=1, b1=7, torsion=[]\n");
    let o = finspace(&["homology", "--group", "cyclic:3", "--mode", "sonly"]);
    assert_eq!(stdout(&o), "b0=1, b1=4, torsion=[]\n");
}

#[test]
fn build_emits_a_loadable_document() {
    let o = finspace(&["build", "--group", "dihedral:4", "--gens", "a,b", "--pointed"]);
    assert!(o.status.success());
    let p = poset_from_json(&stdout(&o)).unwrap();
    assert_eq!(p.len(), 193);
    // Fed back through --input it round-trips byte for byte.
    let path = temp_file("d4_pointed.json", &stdout(&o));
    let again = finspace(&["build", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn group_file_matches_builtin() {
    let path = temp_file("c3_group.json", &group_to_json(&cyclic(3).unwrap()));
    let a = finspace(&["homology", "--group-file", path.to_str().unwrap(), "--gens", "a"]);
    let b = finspace(&["homology", "--group", "cyclic:3", "--gens", "a"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn aut_reports_order_and_isomorphism() {
    let o = finspace(&["aut", "--group", "quaternion8", "--mode", "none"]);
    assert_eq!(stdout(&o), "order=8\nisomorphic_to_group=true\n");
    let o = finspace(&["aut", "--group", "cyclic:3", "--list"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('f')).count(), 3);
}

#[test]
fn selfmaps_of_the_five_point_space() {
    let path = temp_file("space_a.json", &poset_to_json(&example_space_a()));
    let o = finspace(&["selfmaps", "--input", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // The core is the four-point circle: its four homeomorphisms are separate
    // classes and every non-surjective map is homotopic to a constant.
    assert_eq!(stdout(&o), "maps=130 classes=5 equivalence_classes=4 group_order=4 element_orders=[1, 2, 2, 2]\n");
}

#[test]
fn core_of_the_five_point_space() {
    let path = temp_file("space_a_core.json", &poset_to_json(&example_space_a()));
    let o = finspace(&["core", "--input", path.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.starts_with("points=5 core_points=4 removed=1\n"), "{text}");
}

#[test]
fn complex_counts_of_a_chain() {
    let path = temp_file("chain3.json", &poset_to_json(&FinitePoset::chain(3)));
    let o = finspace(&["complex", "--input", path.to_str().unwrap()]);
    // Three points, three edges, one triangle.
    assert_eq!(stdout(&o), "dim0=3 dim1=3 dim2=1 euler=1\n");
}

#[test]
fn exit_codes() {
    let ok = finspace(&["verify", "homology.betti", "--group", "cyclic:3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).lines().count(), 1);
    let fail = finspace(&["verify-all", "--group", "cyclic:4", "--gens", "a^2"]);
    assert_eq!(fail.status.code(), Some(1));
    let usage = finspace(&["homology"]);
    assert_eq!(usage.status.code(), Some(2));
    let unknown = finspace(&["verify", "no.such.check", "--group", "cyclic:3"]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad_mode = finspace(&["homology", "--group", "cyclic:3", "--mode", "sandt:0"]);
    assert!(!bad_mode.status.success());
}

#[test]
fn search_budget_from_the_environment_becomes_a_failed_check() {
    let o = Command::new(env!("CARGO_BIN_EXE_finspace"))
        .args(["verify", "base.aut_realizes_group", "--group", "dihedral:4", "--json"])
        .env("FINSPACE_BUDGET_AUT", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let report: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &report.checks[0];
    assert_eq!(c.status, CheckStatus::Fail);
    assert!(c.witness.as_ref().unwrap()["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn every_failure_carries_a_witness() {
    let o = finspace(&["verify-all", "--group", "cyclic:4", "--gens", "a^2", "--json"]);
    let report: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.checks.len(), finspace_cli::verify::CHECKS.len());
    assert_eq!(report.checks[0].witness.as_ref().unwrap()["subgroup"], serde_json::json!(["e", "a^2"]));
    for c in &report.checks {
        if c.status == CheckStatus::Fail {
            assert!(c.witness.is_some(), "{}", c.name);
        }
    }
    assert_eq!(report.count(CheckStatus::Skipped), report.checks.len() - 1);
}

#[test]
fn skip_and_family_options() {
    let o = finspace(&["verify-all", "--group", "cyclic:2", "--skip", "homology.h1_injective", "--family", "1,4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("SKIP homology.h1_injective: not selected"));
    assert!(text.contains("n in [1, 4]"));
}
