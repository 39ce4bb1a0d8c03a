use std::path::{Path, PathBuf};

use pcsplab::cli::{load_structure, run, CommandResult, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use pcsplab::structure::generators::path;
use pcsplab::structure::{parse_structure, validate_structure};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn cli(args: &[&str]) -> CommandResult {
    run(std::iter::once("pcsplab").chain(args.iter().copied()))
}

fn reparses(text: &str) {
    let s = parse_structure(text).unwrap();
    validate_structure(&s).unwrap();
}

#[test]
fn count_golden() {
    let r = cli(&["poly", "count", &data("K3.st"), &data("K5.st"), "-n", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.report, "27480\n");
    assert_eq!(cli(&["poly", "count", "K3", "K5", "-n", "2"]), r);
}

#[test]
fn aip_rejects_uuu() {
    let r = cli(&["solve", "--template", "T", "H2", "--instance", &data("tripleUUU.st"), "--algo", "aip"]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE);
    assert!(r.report.starts_with("reject\ncertificate: "), "{}", r.report);
}

#[test]
fn aip_accepts_with_assignment() {
    let r = cli(&["solve", "--template", "T", "H2", "--instance", &data("tripleUUV.st"), "--algo", "aip"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.report, "accept\nassignment: 0 1\n");
}

#[test]
fn every_algorithm_agrees_on_a_planted_instance() {
    let inst = data("sat_instance.st");
    for algo in ["brute", "blp", "aip", "blp+aip"] {
        let r = cli(&["solve", "--template", "T", "H2", "--instance", &inst, "--algo", algo]);
        assert_eq!(r.exit_code, EXIT_OK, "{algo}: {}", r.report);
        assert!(r.report.starts_with("accept\n"));
    }
}

#[test]
fn sandwich_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let hom = dir.path().join("id.map");
    std::fs::write(&hom, "0 1\n").unwrap();
    let algo = format!("sandwich:H2:{}", hom.display());
    let r = cli(&["solve", "--template", "H2", "H2", "--instance", &data("tripleUUV.st"), "--algo", &algo]);
    assert_eq!(r.exit_code, EXIT_OK, "{}", r.report);
    let r = cli(&["solve", "--template", "H2", "H2", "--instance", &data("tripleUUU.st"), "--algo", &algo]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE, "{}", r.report);
}

#[test]
fn arcgraph_golden() {
    let r = cli(&["reduce", "arcgraph", &data("P2.st")]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.report, "structure arc-P2 {\n  domain 2;\n  relation E/2 = { (0, 1) };\n}\n");
    let s = parse_structure(&r.report).unwrap();
    assert!(s.same_shape(&path(1)));
}

#[test]
fn emitted_structures_reparse() {
    let gd = data("arc.gd");
    let tri = data("triangle.st");
    let sat = data("sat_instance.st");
    let runs: Vec<Vec<&str>> = vec![
        vec!["reduce", "gadget", &gd, &tri],
        vec!["reduce", "pppower", &gd, "C4"],
        vec!["reduce", "arcgraph", "C3u"],
        vec!["reduce", "arcgraph-right", "K3"],
        vec!["reduce", "k", "T", "H2", "-k", "2", &sat],
        vec!["free", "T", "H2", "--generator", "T"],
    ];
    for args in runs {
        let r = cli(&args);
        assert_eq!(r.exit_code, EXIT_OK, "{args:?}: {}", r.report);
        reparses(&r.report);
    }
}

#[test]
fn out_files() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("phi.st");
    let out_s = out.display().to_string();
    let r = cli(&["reduce", "gadget", &data("arc.gd"), &data("triangle.st"), "--out", &out_s]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.contains("wrote"));
    let s = load_structure(&out).unwrap();
    assert_eq!(s.domain_size(), 1);
    assert_eq!(s.relation(0).tuples().collect::<Vec<_>>(), vec![&[0, 0][..]]);
}

#[test]
fn gadget_output_feeds_back() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = dir.path().join("p3.st");
    let r = cli(&["reduce", "gadget", &data("arc.gd"), &data("P2.st"), "--out", &p3.display().to_string()]);
    assert_eq!(r.exit_code, EXIT_OK);
    let r = cli(&["reduce", "arcgraph", &p3.display().to_string()]);
    assert_eq!(r.exit_code, EXIT_OK);
    let s = parse_structure(&r.report).unwrap();
    assert!(s.same_shape(&path(2)));
}

#[test]
fn conditions() {
    let r = cli(&["poly", "condition", &data("wnu.mc"), "K3", "K6", "-n", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.starts_with("satisfied\nn = ["));
    let r = cli(&["poly", "condition", &data("wnu.mc"), "H2", "H3", "-n", "3"]);
    assert_eq!((r.exit_code, r.report.as_str()), (EXIT_NEGATIVE, "unsatisfied\n"));
    let r = cli(&["poly", "trivial", &data("wnu.mc")]);
    assert_eq!((r.exit_code, r.report.as_str()), (EXIT_NEGATIVE, "non-trivial\n"));
    let r = cli(&["poly", "trivial", &data("dummy.mc")]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert_eq!(r.report, "trivial\nf = projection 1\ng = projection 1\n");
    let r = cli(&["poly", "trivial", &data("swap.mc")]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE);
}

#[test]
fn enumeration_and_classification() {
    let r = cli(&["poly", "enum", "T", "H2", "-n", "1"]);
    assert_eq!(r.report, "[0 1]\n[1 0]\ncount: 2\n");
    let r = cli(&["poly", "enum", "T", "H2", "-n", "2", "--classify"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.contains("[0 1 1 1] symmetric=true"));
    assert!(r.report.ends_with("count: 6\n"));
}

#[test]
fn minion_homomorphisms() {
    let r = cli(&["poly", "minionhom", "T", "H2", "T", "H2", "-n", "2"]);
    assert_eq!(r.exit_code, EXIT_OK);
    // Pol(K3, K2) is empty, so nothing maps into it.
    let r = cli(&["poly", "minionhom", "K2", "K2", "K3", "K2", "-n", "1"]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE, "{}", r.report);
}

#[test]
fn k_reduction_violation() {
    let r = cli(&["reduce", "k", "T", "H2", "-k", "1", &data("tripleUUU.st")]);
    assert_eq!(r.exit_code, EXIT_NEGATIVE);
    assert!(r.report.starts_with("promise violation"));
}

#[test]
fn adjunction_checks() {
    let r = cli(&["check", "adjunction", &data("arc.gd"), "--random", "60", "--max-size", "3"]);
    assert_eq!((r.exit_code, r.report.as_str()), (EXIT_OK, "agreement: 60/60\n"));
    let r = cli(&["check", "arc-adjunction", "--random", "40", "--seed", "9"]);
    assert_eq!((r.exit_code, r.report.as_str()), (EXIT_OK, "agreement: 40/40\n"));
}

#[test]
fn deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.st").display().to_string();
    let b = dir.path().join("b.st").display().to_string();
    let sat = data("sat_instance.st");
    for seed in ["0", "3"] {
        let args = ["check", "adjunction", &data("arc.gd"), "--random", "30", "--seed", seed];
        assert_eq!(cli(&args), cli(&args));
    }
    cli(&["reduce", "k", "T", "T", "-k", "2", &sat, "--out", &a]);
    cli(&["reduce", "k", "T", "T", "-k", "2", &sat, "--out", &b]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r1 = cli(&["free", "T", "H2", "--generator", "T"]);
    assert_eq!(r1, cli(&["free", "T", "H2", "--generator", "T"]));
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&[]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["poly", "count", "K3"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["poly", "count", "nowhere.st", "K3", "-n", "1"]).exit_code, EXIT_USAGE);
    assert_eq!(cli(&["poly", "count", "K3", "T", "-n", "1"]).exit_code, EXIT_USAGE);
    let r = cli(&["solve", "--template", "T", "H2", "--instance", "T", "--algo", "magic"]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.report.contains("unknown algorithm"));
    // Not a template: H2 does not map to T.
    let r = cli(&["solve", "--template", "H2", "T", "--instance", "T"]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    let r = cli(&["reduce", "arcgraph", "T"]);
    assert_eq!(r.exit_code, EXIT_USAGE);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.st");
    std::fs::write(&bad, "structure X { domain 2; relation E/2 = { (0, 5) }; }\n").unwrap();
    let r = cli(&["reduce", "arcgraph", &bad.display().to_string()]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    std::fs::write(&bad, "structure X { domain 2;\n relation E/2 = { (0, 1) \n").unwrap();
    let r = cli(&["reduce", "arcgraph", &bad.display().to_string()]);
    assert_eq!(r.exit_code, EXIT_USAGE);
    assert!(r.report.contains(":2:") || r.report.contains(":3:"), "{}", r.report);
}

#[test]
fn budget_errors() {
    let r = cli(&["poly", "count", "K3", "K5", "-n", "9"]);
    assert_eq!(r.exit_code, EXIT_BUDGET, "{}", r.report);
    let r = cli(&["--budget", "power=5", "poly", "count", "K3", "K5", "-n", "2"]);
    assert_eq!(r.exit_code, EXIT_BUDGET, "{}", r.report);
    let r = cli(&["--budget", "nodes=3", "solve", "--template", "K3", "K3", "--instance", "C9u"]);
    assert_eq!(r.exit_code, EXIT_BUDGET, "{}", r.report);
    assert_eq!(cli(&["--budget", "bogus=1", "poly", "count", "K3", "K3", "-n", "1"]).exit_code, EXIT_USAGE);
}

#[test]
fn help_is_not_an_error() {
    let r = cli(&["--help"]);
    assert_eq!(r.exit_code, EXIT_OK);
    assert!(r.report.contains("Usage"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pcsplab");
    let out = std::process::Command::new(bin).args(["reduce", "arcgraph", "P2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    reparses(&String::from_utf8(out.stdout).unwrap());
    let out = std::process::Command::new(bin)
        .args(["solve", "--template", "T", "H2", "--instance", &data("tripleUUU.st"), "--algo", "aip"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_NEGATIVE));
    assert!(out.stdout.starts_with(b"reject\n"));
    let out = std::process::Command::new(bin).args(["poly", "count", "K3", "K5", "-n", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));
    let out = std::process::Command::new(bin)
        .env("PCSPLAB_BUDGET", "power=5")
        .args(["poly", "count", "K3", "K5", "-n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
}
