//! Thin command-line front end over the library pipelines.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numeric check failure in
//! `--check` mode.

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::process::ExitCode;

use cubic_lab::characters::{all_characters, enumerate_cubic_primitive, ResidueGroup};
use cubic_lab::charsum::{msum_exact, polya_calibration, symmetric_harmonic_sum};
use cubic_lab::experiments::{
    dist_table, family_l_moment, parse_vgrid, structure_report, tail_event_rate, TailParams,
};
use cubic_lab::lfunctions::exceptional_screen;
use cubic_lab::oracles;
use cubic_lab::output::{fmt_f64, render_csv, render_json, Meta};
use cubic_lab::random_model::{exact_moment, mc_moment, ModelKind, RandomMultSpec};
use cubic_lab::Parity;

#[derive(Parser)]
#[command(name = "cubic-lab", version, about = "Cubic character sum workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Worker threads (default: CUBIC_LAB_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Plain key=value config file; CLI flags override it
    #[arg(long, global = true)]
    config: Option<String>,
    /// Output format
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Output path (stdout when absent)
    #[arg(long, global = true)]
    out: Option<String>,
    /// Master seed for randomized pipelines
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Fail (exit 3) when a numeric check misses its threshold
    #[arg(long, global = true)]
    check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the primitive cubic family up to Q
    Enumerate {
        #[arg(long = "Q", default_value_t = 500)]
        q_max: u64,
    },
    /// Character-sum maxima M(chi) over the family
    Msum {
        #[arg(long = "Q", default_value_t = 500)]
        q_max: u64,
    },
    /// Empirical tail distribution of M(chi)
    Dist {
        #[arg(long = "Q", default_value_t = 500)]
        q_max: u64,
        /// Grid start:stop:step
        #[arg(long, default_value = "0.5:3.0:0.1")]
        vgrid: String,
    },
    /// Rough-tail exceedance rates
    Tails {
        #[arg(long = "Q", default_value_t = 2000)]
        q_max: u64,
        /// Smoothness cutoffs, comma separated
        #[arg(long, default_value = "5,11,23")]
        y: String,
        #[arg(long, default_value_t = 1.0)]
        threshold: f64,
        /// Override Z (default Q^(21/40))
        #[arg(long)]
        z: Option<u64>,
        /// Override R (default 4Z)
        #[arg(long)]
        r: Option<u64>,
    },
    /// Structure diagnostics for the top of the family by M(chi)
    Structure {
        #[arg(long = "Q", default_value_t = 5000)]
        q_max: u64,
        #[arg(long, default_value_t = 0.05)]
        top: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Random-model moments: Monte Carlo vs exact products
    RandomMoments {
        #[arg(long, value_parser = ["x", "y"], default_value = "y")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long = "P", default_value_t = 10_000)]
        prime_cutoff: u64,
        #[arg(long, default_value_t = 10_000)]
        replicates: u64,
        /// Modulus of the twist character (primitive, maximal order)
        #[arg(long, default_value_t = 3)]
        psi_mod: u64,
        /// Also compute the family mean of |L(1, chi conj(psi))|^{2r} up to
        /// this conductor bound
        #[arg(long = "family-Q")]
        family_q: Option<u64>,
    },
    /// Run the brute-force oracle suite
    Oracles {},
    /// Large-sieve ratio statistics (classical and cubic-family)
    SieveCheck {
        #[arg(long = "Q", default_value_t = 100)]
        q_max: u64,
        #[arg(long = "M", default_value_t = 2000)]
        m_len: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long = "cubic-Q", default_value_t = 200)]
        cubic_q: u64,
        #[arg(long = "cubic-M", default_value_t = 50)]
        cubic_m: u64,
        #[arg(long = "cubic-trials", default_value_t = 50)]
        cubic_trials: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut global = cli.global.clone();
    if let Err(e) = apply_config(&mut global) {
        eprintln!("config error: {e}");
        return ExitCode::from(2);
    }
    let threads = global
        .threads
        .or_else(|| {
            std::env::var("CUBIC_LAB_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    if threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli.command, &global) {
        Ok(check_ok) => {
            if global.check && !check_ok {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Plain key=value file; recognized keys mirror the global flags.
fn apply_config(global: &mut Global) -> Result<(), String> {
    let Some(path) = &global.config else {
        return Ok(());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(format!("{path}:{}: expected key=value", lineno + 1));
        };
        let (k, v) = (k.trim(), v.trim());
        match k {
            "threads" => {
                if global.threads.is_none() {
                    global.threads = Some(v.parse().map_err(|_| format!("bad threads {v:?}"))?);
                }
            }
            "format" => {
                if global.format.is_none() {
                    if v != "csv" && v != "json" {
                        return Err(format!("bad format {v:?}"));
                    }
                    global.format = Some(v.to_string());
                }
            }
            "seed" => {
                if global.seed.is_none() {
                    global.seed = Some(v.parse().map_err(|_| format!("bad seed {v:?}"))?);
                }
            }
            "out" => {
                if global.out.is_none() {
                    global.out = Some(v.to_string());
                }
            }
            other => return Err(format!("unknown config key {other:?}")),
        }
    }
    Ok(())
}

fn emit(global: &Global, text: &str) -> cubic_lab::Result<()> {
    match &global.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| cubic_lab::Error::Domain(format!("{path}: {e}")))?;
            f.write_all(text.as_bytes())
                .map_err(|e| cubic_lab::Error::Domain(format!("{path}: {e}")))?;
        }
        None => {
            print!("{text}");
        }
    }
    Ok(())
}

fn want_json(global: &Global) -> bool {
    global.format.as_deref() == Some("json")
}

fn run(cmd: &Command, global: &Global) -> cubic_lab::Result<bool> {
    match cmd {
        Command::Enumerate { q_max } => {
            let family = enumerate_cubic_primitive(*q_max)?;
            let meta = Meta::new(global.seed).with_param("Q", q_max);
            if want_json(global) {
                let rows: Vec<_> = family
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "character": c.id(),
                            "conductor": c.modulus(),
                            "order": c.order(),
                            "parity": format!("{:?}", c.parity()),
                            "primitive": c.is_primitive(),
                        })
                    })
                    .collect();
                emit(global, &render_json(&meta, &rows))?;
            } else {
                let rows: Vec<Vec<String>> = family
                    .iter()
                    .map(|c| {
                        vec![
                            c.id(),
                            c.modulus().to_string(),
                            c.order().to_string(),
                            format!("{:?}", c.parity()),
                            c.is_primitive().to_string(),
                        ]
                    })
                    .collect();
                emit(
                    global,
                    &render_csv(
                        &meta,
                        &["character", "conductor", "order", "parity", "primitive"],
                        &rows,
                    ),
                )?;
            }
            Ok(true)
        }
        Command::Msum { q_max } => {
            let family = enumerate_cubic_primitive(*q_max)?;
            let profiles: Vec<_> = family
                .iter()
                .map(msum_exact)
                .collect::<cubic_lab::Result<_>>()?;
            let meta = Meta::new(global.seed).with_param("Q", q_max);
            if want_json(global) {
                emit(global, &render_json(&meta, &profiles))?;
            } else {
                let rows: Vec<Vec<String>> = profiles
                    .iter()
                    .map(|p| {
                        vec![
                            p.id.clone(),
                            p.conductor.to_string(),
                            fmt_f64(p.m),
                            p.n_max.to_string(),
                            fmt_f64(p.alpha),
                        ]
                    })
                    .collect();
                emit(
                    global,
                    &render_csv(
                        &meta,
                        &["character", "conductor", "M", "N_max", "alpha"],
                        &rows,
                    ),
                )?;
            }
            Ok(true)
        }
        Command::Dist { q_max, vgrid } => {
            let grid = parse_vgrid(vgrid)?;
            let table = dist_table(*q_max, &grid)?;
            let meta = Meta::new(global.seed)
                .with_param("Q", q_max)
                .with_param("vgrid", vgrid)
                .with_param("family_size", table.family_size);
            if want_json(global) {
                emit(global, &render_json(&meta, &table))?;
            } else {
                let rows: Vec<Vec<String>> = table
                    .rows
                    .iter()
                    .map(|r| vec![fmt_f64(r.v), r.count.to_string(), fmt_f64(r.proportion)])
                    .collect();
                emit(
                    global,
                    &render_csv(&meta, &["V", "count", "proportion"], &rows),
                )?;
            }
            Ok(true)
        }
        Command::Tails {
            q_max,
            y,
            threshold,
            z,
            r,
        } => {
            let ys: Vec<f64> = y
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| cubic_lab::Error::Domain(format!("bad y value {s:?}")))
                })
                .collect::<cubic_lab::Result<_>>()?;
            let params = TailParams { z: *z, r: *r };
            let mut reports = Vec::new();
            for &yv in &ys {
                reports.push(tail_event_rate(*q_max, yv, *threshold, params, None)?);
            }
            let meta = Meta::new(global.seed)
                .with_param("Q", q_max)
                .with_param("threshold", threshold);
            // the rates should be nonincreasing in y; surfaced for --check
            let monotone = reports.windows(2).all(|w| w[0].rate >= w[1].rate);
            if want_json(global) {
                emit(global, &render_json(&meta, &reports))?;
            } else {
                let rows: Vec<Vec<String>> = reports
                    .iter()
                    .map(|t| {
                        vec![
                            fmt_f64(t.y),
                            t.z.to_string(),
                            t.r.to_string(),
                            t.family_size.to_string(),
                            t.exceed_count.to_string(),
                            fmt_f64(t.rate),
                            fmt_f64(t.max_statistic),
                        ]
                    })
                    .collect();
                emit(
                    global,
                    &render_csv(
                        &meta,
                        &["y", "Z", "R", "family", "exceed", "rate", "max_stat"],
                        &rows,
                    ),
                )?;
            }
            Ok(monotone)
        }
        Command::Structure {
            q_max,
            top,
            epsilon,
        } => {
            let rep = structure_report(*q_max, *top, *epsilon)?;
            let meta = Meta::new(global.seed)
                .with_param("Q", q_max)
                .with_param("top", top)
                .with_param("epsilon", epsilon)
                .with_clamp("y>=100")
                .with_clamp("B in [2, 1e6]");
            let mut ok = true;
            for r in &rep.records {
                ok &= r.b <= r.b_cap && r.ratio.is_finite();
            }
            if want_json(global) {
                emit(global, &render_json(&meta, &rep.records))?;
            } else {
                let rows: Vec<Vec<String>> = rep
                    .records
                    .iter()
                    .map(|r| {
                        vec![
                            r.character.clone(),
                            r.conductor.to_string(),
                            fmt_f64(r.m_value),
                            r.n_max.to_string(),
                            fmt_f64(r.alpha),
                            r.a.to_string(),
                            r.b.to_string(),
                            r.b_cap.to_string(),
                            fmt_f64(r.y),
                            r.xi.clone(),
                            r.xi_conductor.to_string(),
                            r.xi_is_odd.to_string(),
                            fmt_f64(r.t),
                            fmt_f64(r.fit_value),
                            r.m_divides_b.to_string(),
                            fmt_f64(r.lvalue_abs),
                            fmt_f64(r.ratio),
                            r.y_clamped.to_string(),
                            r.b_cap_clamped.to_string(),
                            r.degenerate_v.to_string(),
                        ]
                    })
                    .collect();
                emit(
                    global,
                    &render_csv(
                        &meta,
                        &[
                            "character",
                            "conductor",
                            "M",
                            "N_max",
                            "alpha",
                            "a",
                            "b",
                            "B",
                            "y",
                            "xi",
                            "xi_conductor",
                            "xi_odd",
                            "t",
                            "fit_value",
                            "m_divides_b",
                            "lvalue_abs",
                            "ratio",
                            "y_clamped",
                            "B_clamped",
                            "degenerate_V",
                        ],
                        &rows,
                    ),
                )?;
            }
            Ok(ok)
        }
        Command::RandomMoments {
            kind,
            r,
            prime_cutoff,
            replicates,
            psi_mod,
            family_q,
        } => {
            let kind = if kind == "x" {
                ModelKind::X
            } else {
                ModelKind::Y
            };
            let group = ResidueGroup::new(*psi_mod)?;
            let psi = all_characters(&group)
                .into_iter()
                .filter(|c| c.is_primitive() || c.modulus() == 1)
                .max_by_key(|c| (c.parity() == Parity::Odd, c.order()))
                .ok_or_else(|| {
                    cubic_lab::Error::Domain(format!("no primitive character mod {psi_mod}"))
                })?;
            let screen = exceptional_screen(*psi_mod)?;
            let spec = RandomMultSpec {
                kind,
                prime_cutoff: *prime_cutoff,
            };
            let seed = global.seed.unwrap_or(1);
            let exact = exact_moment(spec, &psi, *r, *prime_cutoff)?;
            let mc = mc_moment(spec, &psi, *r as f64, *replicates, seed)?;
            let family = match family_q {
                Some(q) => Some(family_l_moment(*q, &psi, *r as f64)?),
                None => None,
            };
            let within = (mc.estimate - exact.estimate).abs() <= 3.0 * mc.stderr;
            let mut meta = Meta::new(Some(seed))
                .with_param("kind", format!("{kind:?}"))
                .with_param("r", r)
                .with_param("P", prime_cutoff)
                .with_param("replicates", replicates)
                .with_param("psi", psi.id())
                .with_param("psi_mod_flagged", screen.is_flagged);
            if let Some(f) = &family {
                meta = meta.with_param("family_Q", f.q_max);
            }
            if want_json(global) {
                emit(
                    global,
                    &render_json(
                        &meta,
                        &serde_json::json!({
                            "exact": exact,
                            "monte_carlo": mc,
                            "family": family,
                        }),
                    ),
                )?;
            } else {
                let mut rows = vec![
                    vec![
                        "exact-product".to_string(),
                        fmt_f64(exact.estimate),
                        fmt_f64(exact.log_estimate),
                        "0".to_string(),
                        "0".to_string(),
                    ],
                    vec![
                        "monte-carlo".to_string(),
                        fmt_f64(mc.estimate),
                        fmt_f64(mc.log_estimate),
                        fmt_f64(mc.stderr),
                        mc.replicates.to_string(),
                    ],
                ];
                if let Some(f) = &family {
                    rows.push(vec![
                        "family-mean".to_string(),
                        fmt_f64(f.value),
                        fmt_f64(f.value.ln()),
                        "0".to_string(),
                        f.family_size.to_string(),
                    ]);
                }
                emit(
                    global,
                    &render_csv(
                        &meta,
                        &["method", "estimate", "log_estimate", "stderr", "replicates"],
                        &rows,
                    ),
                )?;
            }
            Ok(within)
        }
        Command::Oracles {} => {
            let mut all_ok = true;
            let mut lines: Vec<(String, bool, String)> = Vec::new();
            let mut check = |name: &str, ok: bool, detail: String| {
                lines.push((name.to_string(), ok, detail));
            };

            check(
                "d_k spot values",
                oracles::d_k(6, 2) == 4 && oracles::d_k(4, 3) == 6,
                "d_2(6)=4 d_3(4)=6".into(),
            );

            let mut cube_ok = true;
            for n in 1..=200u64 {
                for m in 1..=200u64 {
                    if oracles::is_cube_pair(n, m) != oracles::is_cube_pair_by_cube_root(n, m) {
                        cube_ok = false;
                    }
                }
            }
            check(
                "cube-pair exponent test vs cube root",
                cube_ok,
                "n,m <= 200".into(),
            );

            let mut orth_ok = true;
            for n in 1..=50u64 {
                for m in 1..=50u64 {
                    let (c0, c1, c2, total) = oracles::x_pair_expectation_counts(n, m);
                    let expect_one = oracles::is_cube_pair(n, m);
                    let is_one = c0 == total && c1 == 0 && c2 == 0;
                    let is_zero = c0 == c1 && c1 == c2;
                    if expect_one != is_one || (!expect_one && !is_zero) {
                        orth_ok = false;
                    }
                }
            }
            check(
                "random-model orthogonality",
                orth_ok,
                "exhaustive n,m <= 50".into(),
            );

            let mut div_ok = true;
            for (k, p) in [(1u32, 3u64), (2, 5), (2, 7)] {
                let c =
                    cubic_lab::random_model::x_moment_vs_divisor_sum(k, 1.0, 10u128.pow(24), p)?;
                if c.rel_diff >= 1e-8 {
                    div_ok = false;
                }
            }
            check(
                "divisor-sum identity",
                div_ok,
                "(k,P) in {(1,3),(2,5),(2,7)}".into(),
            );

            let rep = oracles::prime_tuple_cube_sum(1, 5.0, 50)?;
            check(
                "prime-tuple bound (exponent l)",
                rep.within_ell,
                format!(
                    "value={} bracket={}",
                    fmt_f64(rep.value),
                    fmt_f64(rep.bracket)
                ),
            );

            let fam = enumerate_cubic_primitive(200)?;
            let mut gauss_ok = true;
            for chi in &fam {
                let tau = cubic_lab::characters::gauss_sum(chi)?;
                let q = chi.modulus() as f64;
                if (tau.norm() - q.sqrt()).abs() > 1e-9 * q.sqrt() {
                    gauss_ok = false;
                }
            }
            check(
                "gauss sums |tau| = sqrt(q)",
                gauss_ok,
                format!("family size {}", fam.len()),
            );

            let mut vanish_ok = true;
            for chi in fam.iter().take(6) {
                if !symmetric_harmonic_sum(chi, 1000).is_zero() {
                    vanish_ok = false;
                }
            }
            check("even-character vanishing", vanish_ok, "Z = 1000".into());

            let cal = polya_calibration();
            check(
                "fourier-expansion convention calibration",
                cal.max_residual_conjugated.min(cal.max_residual_direct) < 2.0,
                format!(
                    "chosen={:?} residuals conj={} direct={}",
                    cal.chosen,
                    fmt_f64(cal.max_residual_conjugated),
                    fmt_f64(cal.max_residual_direct)
                ),
            );

            let mut text = String::new();
            for (name, ok, detail) in &lines {
                all_ok &= ok;
                text.push_str(&format!(
                    "{} {name} ({detail})\n",
                    if *ok { "PASS" } else { "FAIL" }
                ));
            }
            text.push_str(&format!(
                "oracle suite: {}/{} passed\n",
                lines.iter().filter(|(_, ok, _)| *ok).count(),
                lines.len()
            ));
            emit(global, &text)?;
            Ok(all_ok)
        }
        Command::SieveCheck {
            q_max,
            m_len,
            trials,
            cubic_q,
            cubic_m,
            cubic_trials,
        } => {
            let seed = global.seed.unwrap_or(1);
            let classical = oracles::large_sieve_ratio(*q_max, *m_len, seed, *trials)?;
            let cubic = oracles::cubic_family_sieve_check(*cubic_q, *cubic_m, seed, *cubic_trials)?;
            let meta = Meta::new(Some(seed))
                .with_param("Q", q_max)
                .with_param("M", m_len)
                .with_param("trials", trials)
                .with_param("cubic_Q", cubic_q)
                .with_param("cubic_M", cubic_m);
            let ok = classical.max_ratio <= 3.0 && cubic.max_ratio <= 1.0;
            if want_json(global) {
                emit(
                    global,
                    &render_json(
                        &meta,
                        &serde_json::json!({
                            "classical": classical,
                            "cubic": cubic,
                        }),
                    ),
                )?;
            } else {
                let rows = vec![
                    vec![
                        "classical".to_string(),
                        fmt_f64(classical.max_ratio),
                        fmt_f64(classical.mean_ratio),
                        classical.trials.to_string(),
                    ],
                    vec![
                        "cubic-family".to_string(),
                        fmt_f64(cubic.max_ratio),
                        String::new(),
                        cubic.trials.to_string(),
                    ],
                ];
                emit(
                    global,
                    &render_csv(
                        &meta,
                        &["family", "max_ratio", "mean_ratio", "trials"],
                        &rows,
                    ),
                )?;
            }
            Ok(ok)
        }
    }
}
