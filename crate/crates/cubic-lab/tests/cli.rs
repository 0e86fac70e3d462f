//! Interface contract of the command-line front end.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubic-lab"))
}

#[test]
fn dist_csv_has_contracted_header() {
    let out = bin()
        .args([
            "dist",
            "--Q",
            "500",
            "--vgrid",
            "0.5:3.0:0.1",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let comment = lines.next().unwrap();
    assert!(comment.starts_with("# version=cubic-lab/"));
    assert!(comment.contains("polya_convention="));
    assert_eq!(lines.next().unwrap(), "V,count,proportion");
    // proportions are nonincreasing down the rows
    let props: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(props.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn oracles_check_exits_zero() {
    let out = bin().args(["oracles", "--check"]).output().unwrap();
    assert!(
        out.status.success(),
        "oracle suite failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn structure_json_is_an_array_of_records() {
    let out = bin()
        .args([
            "structure",
            "--Q",
            "200",
            "--top",
            "0.5",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["meta"]["version"].is_string());
    let rows = doc["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        assert!(r["character"].is_string());
        assert!(r["ratio"].is_number());
        assert!(r["b"].as_u64().unwrap() >= 1);
    }
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.to_lowercase().contains("usage") || err.contains("unrecognized"));
}

#[test]
fn enumerate_matches_family_size() {
    let out = bin().args(["enumerate", "--Q", "100"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text.lines().skip(2).count();
    let fam = cubic_lab::characters::enumerate_cubic_primitive(100).unwrap();
    assert_eq!(rows, fam.len());
}

#[test]
fn config_file_provides_defaults() {
    let dir = std::env::temp_dir().join(format!("cubic-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("lab.conf");
    let out_path = dir.join("dist.csv");
    std::fs::write(
        &cfg,
        format!("format=csv\nseed=11\nout={}\n", out_path.display()),
    )
    .unwrap();
    let out = bin()
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "dist",
            "--Q",
            "50",
            "--vgrid",
            "0.5:1.0:0.5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("seed=11"));
    assert!(written.contains("V,count,proportion"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_config_exits_two() {
    let dir = std::env::temp_dir().join(format!("cubic-lab-badcfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.conf");
    std::fs::write(&cfg, "nonsense_key=1\n").unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "enumerate", "--Q", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_mode_gates_exit_code() {
    // the tails rates are monotone at these parameters, so --check passes
    let out = bin()
        .args(["tails", "--Q", "200", "--y", "5,11", "--check"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn threads_env_var_respected() {
    let out = bin()
        .env("CUBIC_LAB_THREADS", "2")
        .args(["msum", "--Q", "100"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
