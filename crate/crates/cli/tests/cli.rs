use std::path::Path;

use rikitake_cli::commands::couple::{self, CoupleConfig};
use rikitake_cli::commands::{cocycle, simulate, verify};
use rikitake_cli::presets::Figure;
use rikitake_cli::{run, table};
use rikitake_core::liebialg::q;
use rikitake_core::systems::catalog;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("rikitake").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.display().to_string()
}

#[test]
fn list_shows_every_id_and_anchor() {
    let (code, out, _) = cli(&["list"]);
    assert_eq!(code, 0);
    assert!(out.contains("case-ab-deformed"));
    for s in catalog() {
        assert!(out.contains(s.id) && out.contains(s.anchor), "{}", s.id);
    }
}

#[test]
fn figure_one_preset_writes_five_csvs_and_two_svgs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f1");
    let (code, _, err) = cli(&[
        "simulate",
        "--preset",
        "figure1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(names.iter().filter(|n| n.ends_with(".csv")).count(), 5);
    assert_eq!(names.iter().filter(|n| n.ends_with(".svg")).count(), 2);
    let svg = std::fs::read_to_string(out.join("figure1-xz.svg")).unwrap();
    for color in ["blue", "green", "black", "orange", "red"] {
        assert!(svg.contains(&format!(r#"stroke="{color}""#)), "{color}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("figure1-report.json")).unwrap())
            .unwrap();
    assert_eq!(report["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn every_preset_conserves_and_closes() {
    let dir = tempfile::tempdir().unwrap();
    for fig in Figure::all() {
        let report = simulate::simulate_preset(fig, dir.path()).unwrap();
        assert_eq!(report.runs.len(), 5);
        for r in &report.runs {
            assert!(r.max_drift < 1e-6, "{}: {}", r.label, r.max_drift);
            let c = r
                .closure
                .unwrap_or_else(|| panic!("{} does not close", r.label));
            assert!(c.distance < 1e-3, "{}: {c:?}", r.label);
        }
    }
}

#[test]
fn eta_zero_preset_equals_the_undeformed_run() {
    let dir = tempfile::tempdir().unwrap();
    simulate::simulate_preset(Figure::Book, dir.path()).unwrap();
    let cfg = write_config(
        dir.path(),
        "a.json",
        r#"{"system":"case-a","params":{"alpha":1},"initial_condition":[0.5,1,1],
            "integrator":{"method":"adaptive-45","t_end":50},"emit":{"svg":false}}"#,
    );
    let (code, _, err) = cli(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, book) = table::read(&dir.path().join("figure1_eta0.csv")).unwrap();
    let (_, plain) = table::read(&dir.path().join("case-a.csv")).unwrap();
    assert_eq!(book.len(), plain.len());
    for (a, b) in book.iter().zip(&plain) {
        assert_eq!(a[..4], b[..4]);
    }
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{"system":"case-a-heisenberg","params":{"eta":1},"initial_condition":[0.5,1,1],
        "integrator":{"method":"adaptive-45","t_end":10}}"#;
    let cfg = write_config(dir.path(), "h.json", json);
    let mut csvs = Vec::new();
    let mut reports = Vec::new();
    for run_dir in ["a", "b"] {
        let out = dir.path().join(run_dir);
        assert_eq!(
            cli(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]).0,
            0
        );
        csvs.push(std::fs::read(out.join("case-a-heisenberg.csv")).unwrap());
        reports.push(std::fs::read_to_string(out.join("case-a-heisenberg-report.json")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert_eq!(reports[0], reports[1]);
    let path = dir.path().join("a/case-a-heisenberg.csv");
    let (header, rows) = table::read(&path).unwrap();
    assert_eq!(header[..4], ["t", "x", "y", "z"]);
    let rewritten = dir.path().join("again.csv");
    table::write(&rewritten, &header, &rows).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&rewritten).unwrap()
    );
}

#[test]
fn invalid_config_exits_two_with_the_field_name() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cases = [
        (
            r#"{"system":"case-a","initial_condition":[0.5,1,1],"integrator":{"method":"adaptive-45","t_end":5},"colour":1}"#,
            "colour",
        ),
        (
            r#"{"system":"case-z","initial_condition":[0.5,1,1],"integrator":{"method":"adaptive-45","t_end":5}}"#,
            "system",
        ),
        (
            r#"{"system":"case-a","params":{"eta":1},"initial_condition":[0.5,1,1],"integrator":{"method":"adaptive-45","t_end":5}}"#,
            "params.eta",
        ),
        (
            r#"{"system":"case-ab-deformed","params":{"eta":0},"initial_condition":[0.5,1,1],"integrator":{"method":"adaptive-45","t_end":5}}"#,
            "params.eta",
        ),
        (
            r#"{"system":"case-a","initial_condition":[0.5,-1,1],"integrator":{"method":"adaptive-45","t_end":5}}"#,
            "initial_condition",
        ),
        (
            r#"{"system":"case-a","initial_condition":[0.5,1,1],"integrator":{"method":"rk4-fixed","t_end":5}}"#,
            "integrator",
        ),
    ];
    for (json, field) in cases {
        let cfg = write_config(dir.path(), "bad.json", json);
        let (code, _, err) = cli(&["simulate", "--config", &cfg, "--out", out]);
        assert_eq!(code, 2, "{json}");
        assert!(err.contains(field), "{err}");
    }
    assert_eq!(cli(&["simulate", "--preset", "figure9"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
}

#[test]
fn leaving_the_domain_mid_run_exits_three_with_a_truncated_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "m.json",
        r#"{"system":"case-a","initial_condition":[0.05,0,3],"integrator":{"method":"rk4-fixed","t_end":5,"h":0.5}}"#,
    );
    let (code, _, err) = cli(&[
        "simulate",
        "--config",
        &cfg,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("truncated"), "{err}");
    let (_, rows) = table::read(&dir.path().join("case-a.csv")).unwrap();
    assert!(rows.len() > 1 && rows.last().unwrap()[0] < 5.0);
}

#[test]
fn environment_overrides_the_config_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "ok.json",
        &format!(
            r#"{{"system":"case-a","initial_condition":[0.5,1,1],"integrator":{{"method":"adaptive-45","t_end":1}},"output_dir":"{}"}}"#,
            dir.path().join("from-config").display()
        ),
    );
    let env_dir = dir.path().join("from-env");
    std::env::set_var(rikitake_cli::config::OUT_ENV, &env_dir);
    let code = cli(&["simulate", "--config", &cfg]).0;
    std::env::remove_var(rikitake_cli::config::OUT_ENV);
    assert_eq!(code, 0);
    assert!(env_dir.join("case-a.csv").exists());
    assert!(!dir.path().join("from-config").exists());
}

#[test]
fn verify_all_passes_and_the_broken_fixture_fails() {
    let (code, out, err) = cli(&["verify"]);
    assert_eq!(code, 0, "{err}");
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pass"], true);
    let (code, _, err) = cli(&["verify", "broken-fixture"]);
    assert_eq!(code, 1);
    assert!(err.contains("jacobi_residual"), "{err}");
}

#[test]
fn verify_deformed_ab_checks_bihamiltonian_agreement() {
    let r = verify::verify("case-ab-deformed").unwrap();
    assert!(r.pass);
    assert_eq!(
        r.checks
            .iter()
            .filter(|c| c.property == "bihamiltonian_agreement")
            .count(),
        3
    );
}

#[test]
fn cocycle_reports() {
    let one = cocycle::cocycle(&q(1)).unwrap();
    let zero = cocycle::cocycle(&q(0)).unwrap();
    assert_ne!(one.nullspace_dim, zero.nullspace_dim);
    assert!(zero.book_survives && zero.closed);
    assert!(!one.book_survives);
    let (code, out, _) = cli(&["cocycle", "--beta", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("book cocommutator survives: yes"));
    assert_eq!(cli(&["cocycle", "--beta", "-1/2", "--json"]).0, 0);
    assert_eq!(cli(&["cocycle", "--beta", "one"]).0, 2);
}

#[test]
fn coupled_run_tracks_the_one_copy_flow() {
    let cfg = CoupleConfig::new(1, 1.0);
    let run = couple::run(&cfg).unwrap();
    assert!(
        run.max_cluster_deviation() < 1e-5,
        "{}",
        run.max_cluster_deviation()
    );
    let other = couple::other_lambda_on_grid(&cfg, &run).unwrap();
    let (mut cluster, mut internal) = (0.0_f64, 0.0_f64);
    for (a, b) in run.chart.iter().zip(&other) {
        for k in 0..3 {
            cluster = cluster.max((a[k] - b[k]).abs());
            internal = internal.max((a[k + 3] - b[k + 3]).abs());
        }
    }
    assert!(cluster < 1e-6, "{cluster}");
    assert!(internal > 1e-2, "{internal}");
}

#[test]
fn couple_command_writes_cluster_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = cli(&[
        "couple",
        "--lambda",
        "0",
        "--t-end",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (header, rows) = table::read(&dir.path().join("couple-lambda0.csv")).unwrap();
    assert_eq!(header.len(), 1 + 6 + 4 + 3 + 1);
    assert_eq!(
        header[header.len() - 4..],
        ["x+", "y+", "z+", "cluster_residual"]
    );
    assert!(rows.iter().all(|r| *r.last().unwrap() < 1e-8));
    assert_eq!(cli(&["couple", "--lambda", "2"]).0, 2);
    assert_eq!(cli(&["couple", "--ic", "1,2,3"]).0, 2);
}
