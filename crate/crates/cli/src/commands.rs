use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use korovkin_core::report::ReportTable;
use serde_json::{json, Value};

use crate::config::{phase_name, RunConfig};
use crate::criteria::{self, Verdict};
use crate::output::{write_csv, write_manifest, write_svg};
use crate::tables::{self, Example};

/// Writes a table (and its plot when enabled) and returns the manifest entry.
pub fn emit(table: &ReportTable, cfg: &RunConfig, runtime_s: f64) -> Result<Value> {
    let csv = write_csv(table, &cfg.out_dir)?;
    let svg = if cfg.emit_svg {
        Some(write_svg(table, &cfg.out_dir)?.display().to_string())
    } else {
        None
    };
    Ok(json!({
        "kind": "table",
        "name": table.name(),
        "file": csv.display().to_string(),
        "svg": svg,
        "rows": table.rows().len(),
        "runtime_s": runtime_s,
    }))
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed().as_secs_f64()))
}

fn report(table: &ReportTable, cfg: &RunConfig, runtime_s: f64) -> Result<()> {
    let entry = emit(table, cfg, runtime_s)?;
    print!("{}", crate::output::csv_string(table)?);
    eprintln!("wrote {} ({runtime_s:.1}s)", entry["file"].as_str().unwrap_or_default());
    Ok(())
}

pub fn nu_table(example: Example, n_list: &[usize], window_m: usize, cfg: &RunConfig) -> Result<()> {
    let (t, s) = timed(|| tables::nu_table(example, n_list, cfg, tables::frequency_window(window_m)))?;
    report(&t, cfg, s)
}

pub fn xi_table(n_list: &[usize], cfg: &RunConfig) -> Result<()> {
    let (t, s) = timed(|| tables::xi_table(n_list, cfg))?;
    report(&t, cfg, s)
}

pub fn kn_table(n_list: &[usize], p_list: &[f64], cfg: &RunConfig) -> Result<()> {
    let (t, s) = timed(|| {
        let v = tables::kn_values(n_list, p_list, cfg)?;
        tables::kn_table(&v, cfg)
    })?;
    report(&t, cfg, s)
}

pub fn kantorovich_suite(n_list: &[usize], cfg: &RunConfig) -> Result<bool> {
    let (t, s) = timed(|| tables::kantorovich_table(n_list, cfg))?;
    report(&t, cfg, s)?;
    let verdicts = [criteria::criterion_9(cfg), criteria::criterion_10(cfg)];
    Ok(print_verdicts(&verdicts))
}

pub fn grunwald_suite(cfg: &RunConfig) -> Result<bool> {
    let (suite, s) = timed(|| tables::grunwald_suite(cfg))?;
    report(&suite.table, cfg, s)?;
    report(&suite.test_set, cfg, 0.0)?;
    eprintln!("empirical c1 = {:.6}", suite.c1.c1);
    let verdicts = [criteria::criterion_1(), criteria::criterion_11(&suite.c1.norms)];
    Ok(print_verdicts(&verdicts))
}

fn print_verdicts(v: &[Verdict]) -> bool {
    for x in v {
        eprintln!("{}", x.line());
    }
    v.iter().all(|x| x.passed)
}

fn config_entry(cfg: &RunConfig) -> Value {
    json!({
        "kind": "config",
        "grid_step": cfg.grid_step,
        "quad_tol": cfg.quad_tol,
        "l_trunc": cfg.l_truncation.to_string(),
        "phase_mode": phase_name(cfg.convention.phase_mode),
        "forward_scale": cfg.convention.forward_scale,
        "inverse_scale": cfg.convention.inverse_scale,
        "svg": cfg.emit_svg,
    })
}

/// Every table plus every criterion. Returns whether all criteria passed.
pub fn reproduce_all(cfg: &RunConfig) -> Result<bool> {
    let mut manifest = vec![config_entry(cfg)];
    let mut verdicts = vec![criteria::criterion_1()];

    let (nu, s) = timed(|| criteria::nu_tables(cfg))?;
    manifest.push(emit(&nu.tent, cfg, s / 2.0)?);
    manifest.push(emit(&nu.cubic, cfg, s / 2.0)?);
    verdicts.push(criteria::criterion_2(&nu).plus_runtime(s));
    verdicts.push(criteria::criterion_3(&nu).plus_runtime(s));

    let (xi, s) = timed(|| criteria::xi_full_table(cfg))?;
    manifest.push(emit(&xi, cfg, s)?);
    verdicts.push(criteria::criterion_4(&xi).plus_runtime(s));

    verdicts.push(criteria::criterion_5());

    let (kn, s) = timed(|| criteria::kn_gaussian_values(cfg))?;
    manifest.push(emit(&tables::kn_table(&kn, cfg)?, cfg, s)?);
    let (v6, best) = criteria::criterion_6(&kn, cfg);
    verdicts.push(v6.plus_runtime(s));
    let variants: Vec<Value> = tables::convention_scan(&kn, cfg)
        .iter()
        .map(|v| {
            json!({
                "forward_scale": v.forward_scale,
                "inverse_scale": v.inverse_scale,
                "phase_mode": phase_name(v.phase),
                "p1_distance": v.p1_distance,
                "table_distance": v.table_distance,
            })
        })
        .collect();
    manifest.push(json!({
        "kind": "kn_convention",
        "best": best.map(|b| json!({
            "forward_scale": b.forward_scale,
            "inverse_scale": b.inverse_scale,
            "phase_mode": phase_name(b.phase),
            "p1_distance": b.p1_distance,
        })),
        "variants": variants,
    }));

    verdicts.push(criteria::criterion_7(cfg));
    verdicts.push(criteria::criterion_8(cfg));

    let (kt, s) = timed(|| tables::kantorovich_table(&tables::KANTOROVICH_ORDERS, cfg))?;
    manifest.push(emit(&kt, cfg, s)?);
    verdicts.push(criteria::criterion_9(cfg));
    verdicts.push(criteria::criterion_10(cfg));

    let (gs, s) = timed(|| tables::grunwald_suite(cfg))?;
    manifest.push(emit(&gs.table, cfg, s)?);
    manifest.push(emit(&gs.test_set, cfg, 0.0)?);
    manifest.push(json!({ "kind": "c1", "c1": gs.c1.c1, "norms": gs.c1.norms }));
    verdicts.push(criteria::criterion_11(&gs.c1.norms).plus_runtime(s));

    verdicts.sort_by_key(|v| v.id);
    manifest.extend(verdicts.iter().map(Verdict::to_json));
    let passed = verdicts.iter().filter(|v| v.passed).count();
    manifest.push(json!({ "kind": "summary", "passed": passed, "failed": verdicts.len() - passed }));
    let path: PathBuf = cfg.out_dir.join("manifest.jsonl");
    write_manifest(&manifest, &path)?;
    for v in &verdicts {
        println!("{}", v.line());
    }
    eprintln!("manifest written to {}", path.display());
    Ok(passed == verdicts.len())
}
