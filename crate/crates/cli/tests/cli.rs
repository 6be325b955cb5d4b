use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use zext_cli::config::{CarrierConfig, ConfigInt, RunConfig};

fn zext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zext")).args(args).output().expect("zext runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn docs_example() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/example.toml")
}

#[test]
fn docs_example_passes_and_round_trips() {
    let path = docs_example();
    let cfg = RunConfig::load(&path).unwrap();
    assert_eq!(cfg.construction.as_deref(), Some("warne"));
    assert_eq!(RunConfig::from_toml(&cfg.to_toml(), "round trip").unwrap(), cfg);

    let o = zext(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("custom | ") && l.contains(" | pass | ")), "{out}");
    assert!(out.contains("warne-branch-agreement"));
}

#[test]
fn exit_status_on_canned_configs() {
    let dir = tempfile::tempdir().unwrap();
    let fail = write_config(
        &dir,
        "fail.toml",
        "construction = \"zbr\"\ncarrier = \"semilattice2\"\nwindow = [0, 1]\n",
    );
    let o = zext(&["verify", "--config", &fail]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("custom | i-bisimple | fail | chain, 2 idempotents per level"));

    let inconclusive = write_config(
        &dir,
        "inconclusive.toml",
        "construction = \"zbr\"\ncarrier = \"int-group\"\ntopology = \"example-3.9\"\nwindow = [-1, 1]\ngbound = 1\n",
    );
    let o = zext(&["verify", "--config", &inconclusive, "--format", "machine"]);
    assert_eq!(code(&o), 2);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let joint = lines.iter().find(|v| v["check"] == "joint-continuity").unwrap();
    assert_eq!(joint["status"], "inconclusive");
    assert!(lines.iter().filter(|v| v["check"] != "joint-continuity").all(|v| v["status"] == "pass"));
}

#[test]
fn usage_errors_exit_above_two() {
    let o = zext(&["verify", "--construction", "warne", "--carrier", "semilattice2"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("group"));

    for args in [
        &["verify", "--no-such-flag"][..],
        &["verify", "--suite", "no-such-suite"],
        &["verify", "--suite", "all", "--construction", "zbr"],
        &["verify", "--construction", "zbr", "--carrier", "semilattice2", "--topology", "example-2.7"],
        &["verify", "--construction", "zbr", "--carrier", "c2", "--window", "2", "1"],
        &["verify", "--gbound", "99999999999999999999999999"],
        &["cayley", "--construction", "zbr", "--carrier", "int-group", "--window", "-20", "20", "--gbound", "5"],
    ] {
        assert_eq!(code(&zext(args)), 3, "{args:?}");
    }
    assert_eq!(code(&zext(&["--help"])), 0);
}

#[test]
fn config_parse_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(&dir, "bad.toml", "construction = \"zbr\"\ncarrier = \"c2\"\nwindow = [0, \"1e3\"]\n");
    let o = zext(&["verify", "--config", &bad]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("1e3"), "{err}");

    let huge = write_config(&dir, "huge.toml", "gbound = \"340282366920938463463374607431768211456\"\n");
    let err = String::from_utf8_lossy(&zext(&["verify", "--config", &huge]).stderr).to_string();
    assert!(err.contains("340282366920938463463374607431768211456 is outside the supported range"), "{err}");
}

#[test]
fn expected_discontinuity_suite_passes() {
    let o = zext(&["verify", "--suite", "example-3.7-inversion-discontinuity"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("inversion-continuity (expect failure) | pass | counterexample within schedule, as expected"), "{out}");
}

#[test]
fn cayley_windows() {
    let o = zext(&["cayley", "--window", "0", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 16);
    assert!(out.lines().any(|l| l == "0 1 0 1 0 0 -> 0 0 0"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("table.txt");
    let o = zext(&[
        "cayley",
        "--construction",
        "zbruck",
        "--carrier",
        "semilattice2",
        "--window",
        "0",
        "0",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let expected = "0 0 0 0 0 0 -> 0 0 0\n0 0 0 0 1 0 -> 0 1 0\n0 0 1 0 0 0 -> 0 1 0\n0 0 1 0 1 0 -> 0 1 0\n";
    assert_eq!(stdout(&o), expected);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), expected);

    let o = zext(&["cayley", "--window", "0", "1", "--max-products", "15"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-products"));
}

fn untimed(machine: &str) -> Vec<serde_json::Value> {
    machine
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["time_ms"] = 0.into();
            v
        })
        .collect()
}

#[test]
fn full_builtin_run_passes_and_is_deterministic() {
    let a = zext(&["verify", "--suite", "all", "--format", "machine"]);
    let b = zext(&["verify", "--format", "machine"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(code(&b), 0);
    let (a, b) = (untimed(&stdout(&a)), untimed(&stdout(&b)));
    assert!(a.len() > 50);
    assert_eq!(a, b);
}

fn arb_int() -> impl Strategy<Value = ConfigInt> {
    any::<i64>().prop_map(ConfigInt)
}

fn arb_config() -> impl Strategy<Value = RunConfig> {
    let name = prop::sample::select(vec!["zbr", "zbruck", "warne", "ext-bicyclic"]);
    let carrier = prop_oneof![
        prop::sample::select(vec!["c6", "semilattice2", "int-group"]).prop_map(|s| CarrierConfig::Named(s.into())),
        (prop::collection::vec(prop::collection::vec(arb_int(), 1..3), 1..3), arb_int())
            .prop_map(|(rows, unit)| CarrierConfig::Table { rows, unit }),
    ];
    (
        prop::option::of(name),
        prop::option::of(carrier),
        prop::option::of(prop::sample::select(vec!["identity", "scale(-3)", "table(0,1)"])),
        prop::option::of(prop::collection::vec([arb_int(), arb_int()], 0..4)),
        prop::option::of([arb_int(), arb_int()]),
        prop::option::of(arb_int()),
        prop::option::of(prop::sample::select(vec!["example-3.7", "coarsened"])),
        prop::option::of(arb_int()),
        prop::option::of(prop::sample::select(vec!["all", "oip-nmax"])),
        prop::option::of(arb_int()),
    )
        .prop_map(|(c, carrier, theta, u, window, gbound, topology, schedule, suite, max_products)| RunConfig {
            construction: c.map(String::from),
            carrier,
            theta: theta.map(String::from),
            u,
            window,
            gbound,
            topology: topology.map(String::from),
            schedule,
            suite: suite.map(String::from),
            max_products,
        })
}

proptest! {
    #[test]
    fn config_round_trips(cfg in arb_config()) {
        let text = cfg.to_toml();
        prop_assert_eq!(RunConfig::from_toml(&text, "generated").unwrap(), cfg);
    }
}
