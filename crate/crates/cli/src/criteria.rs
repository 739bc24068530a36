//! Pass/fail checks against the published tables and the operators'
//! structural properties. Shared by `reproduce-all` and the acceptance target.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use anyhow::Result;
use korovkin_core::chebyshev::{ChebyshevGrid, PkEvalMode};
use korovkin_core::extended::{
    apply_hn_delta, kn_l1_error, regularized_spectrum, rr_term, vk_closed_form, vk_quadrature,
    KnOperator,
};
use korovkin_core::fourier::{fourier_transform, FourierConvention, PhaseMode, Spectrum};
use korovkin_core::functions::{c2_bump, tent_on_zero_pi};
use korovkin_core::grunwald::{nonpositivity_witness_gn, xi_n, GrunwaldOperator};
use korovkin_core::kantorovich::{
    alternating_witness, characteristic_condition_check, dyadic_witness, l1_norm,
    l1_operator_norm_bound, monomial, mu_bound_check, mu_n, KantorovichKind, KantorovichOperator,
    L1Operator, Target,
};
use korovkin_core::quadrature::{integrate_complex, QuadratureSpec};
use korovkin_core::report::ReportTable;
use korovkin_core::{Complex64, Domain, Interval, RealFunction, Smoothness};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{phase_name, LTrunc, RunConfig};
use crate::golden;
use crate::tables::{
    convention_scan, frequency_window, kn_values, nu_table_from, nu_values, random_probes, xi_table,
    ConventionVariant, Example, KnValue, FREQUENCY_WINDOWS,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub runtime_s: f64,
}

impl Verdict {
    /// Adds time spent building the tables this verdict reads.
    pub fn plus_runtime(mut self, seconds: f64) -> Self {
        self.runtime_s += seconds;
        self
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.runtime_s,
            self.detail
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "criterion",
            "id": self.id,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
            "runtime_s": self.runtime_s,
        })
    }
}

/// Collects sub-checks and their failure messages.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        if !ok {
            self.failures.push(msg.into());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    fn finish(self, id: u32, title: &'static str, start: Instant) -> Verdict {
        let mut parts = Vec::new();
        if !self.failures.is_empty() {
            parts.push(self.failures.join("; "));
        }
        parts.extend(self.notes);
        Verdict {
            id,
            title,
            passed: self.failures.is_empty(),
            detail: if parts.is_empty() { "ok".into() } else { parts.join(" | ") },
            runtime_s: start.elapsed().as_secs_f64(),
        }
    }
}

fn failed(id: u32, title: &'static str, start: Instant, e: anyhow::Error) -> Verdict {
    Verdict {
        id,
        title,
        passed: false,
        detail: format!("error: {e:#}"),
        runtime_s: start.elapsed().as_secs_f64(),
    }
}

fn run(id: u32, title: &'static str, body: impl FnOnce(&mut Checks) -> Result<()>) -> Verdict {
    let start = Instant::now();
    let mut c = Checks::default();
    match body(&mut c) {
        Ok(()) => c.finish(id, title, start),
        Err(e) => failed(id, title, start, e),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub fn criterion_1() -> Verdict {
    run(1, "exact identities", |c| {
        let thetas: Vec<f64> = (0..1000).map(|i| PI * i as f64 / 999.0).collect();
        let worst = (1..=64usize)
            .into_par_iter()
            .map(|n| -> Result<(f64, f64, f64)> {
                let grid = ChebyshevGrid::new(n)?;
                let op = GrunwaldOperator::new(n)?;
                let ones = vec![1.0; n];
                let mut scratch = vec![0.0; n];
                let (mut part, mut card, mut one) = (0.0f64, 0.0f64, 0.0f64);
                for &t in &thetas {
                    let mut s = 0.0;
                    for k in 1..=n {
                        s += grid.fundamental_poly(k, t, PkEvalMode::RationalTrig)?;
                    }
                    part = part.max((s - 1.0).abs());
                    one = one.max((op.apply_values(&ones, t, &mut scratch) - 1.0).abs());
                }
                for j in 1..=n {
                    for k in 1..=n {
                        let v = grid.fundamental_poly(k, grid.angle(j), PkEvalMode::RationalTrig)?;
                        card = card.max((v - if j == k { 1.0 } else { 0.0 }).abs());
                    }
                }
                Ok((part, card, one))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold((0.0f64, 0.0f64, 0.0f64), |a, b| (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2)));
        c.check(worst.0 <= 1e-10, format!("partition of unity off by {:.2e}", worst.0));
        c.check(worst.1 <= 1e-10, format!("cardinality off by {:.2e}", worst.1));
        c.check(worst.2 <= 1e-11, format!("G_n(1) off by {:.2e}", worst.2));
        let mut cos_err = 0.0f64;
        for n in [2usize, 5, 10, 50] {
            let op = GrunwaldOperator::new(n)?;
            let values = op.node_values(f64::cos);
            let mut scratch = vec![0.0; n];
            let shrink = (PI / (2 * n) as f64).cos() - 1.0;
            for &t in &thetas {
                let r = op.apply_values(&values, t, &mut scratch) - t.cos();
                cos_err = cos_err.max((r - t.cos() * shrink).abs());
            }
        }
        c.check(cos_err <= 1e-9, format!("G_n(cos) identity off by {cos_err:.2e}"));
        c.note(format!(
            "max errors: partition {:.1e}, cardinal {:.1e}, G_n(1) {:.1e}, G_n(cos) {:.1e}",
            worst.0, worst.1, worst.2, cos_err
        ));
        Ok(())
    })
}

/// The two example tables at the published orders.
pub struct NuTables {
    pub tent: ReportTable,
    pub cubic: ReportTable,
}

pub fn nu_tables(cfg: &RunConfig) -> Result<NuTables> {
    let w = frequency_window(FREQUENCY_WINDOWS);
    let nus = nu_values(&golden::NU_ORDERS, cfg)?;
    Ok(NuTables {
        tent: nu_table_from(Example::Tent, &golden::NU_ORDERS, &nus, cfg, w)?,
        cubic: nu_table_from(Example::Cubic, &golden::NU_ORDERS, &nus, cfg, w)?,
    })
}

fn column(t: &ReportTable, h: &str) -> Result<Vec<f64>> {
    t.column(h).ok_or_else(|| anyhow::anyhow!("table {} lacks column {h}", t.name()))
}

pub fn criterion_2(tables: &NuTables) -> Verdict {
    run(2, "nu_n reproduction", |c| {
        let nu = column(&tables.tent, "nu_n")?;
        for ((&n, &v), &want) in golden::NU_ORDERS.iter().zip(&nu).zip(&golden::NU) {
            let r = rel(v, want);
            c.check(r <= 5e-3, format!("n={n}: {v:.8} vs {want} ({:.2}%)", 100.0 * r));
        }
        Ok(())
    })
}

/// Largest relative deviation of `values` from their median.
fn spread_from_median(values: &[f64]) -> f64 {
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    let med = s[s.len() / 2];
    values.iter().map(|v| rel(*v, med)).fold(0.0, f64::max)
}

pub fn criterion_3(tables: &NuTables) -> Verdict {
    run(3, "modulus-of-continuity columns", |c| {
        let nu = column(&tables.tent, "nu_n")?;
        let tent_wf = column(&tables.tent, "omega_f")?;
        for (i, &n) in golden::NU_ORDERS.iter().enumerate() {
            let want = golden::TENT_OMEGA_F[i].max(2.0 * nu[i]);
            let r = rel(tent_wf[i], want);
            c.check(r <= 0.02, format!("tent omega_f n={n}: {:.6} vs {want:.6} ({:.1}%)", tent_wf[i], 100.0 * r));
        }
        let cubic_wf = column(&tables.cubic, "omega_f")?;
        for (i, &n) in golden::NU_ORDERS.iter().enumerate() {
            let r = rel(cubic_wf[i], golden::CUBIC_OMEGA_F[i]);
            c.check(
                r <= 0.05,
                format!("cubic omega_f n={n}: {:.6} vs {} ({:.1}%)", cubic_wf[i], golden::CUBIC_OMEGA_F[i], 100.0 * r),
            );
        }
        for (table, paper) in [(&tables.tent, &golden::TENT_OMEGA_FF), (&tables.cubic, &golden::CUBIC_OMEGA_FF)] {
            let wff = column(table, "omega_Ff")?;
            let nu = column(table, "nu_n")?;
            let ratio: Vec<f64> = wff.iter().zip(&nu).map(|(a, b)| a / b).collect();
            let spread = spread_from_median(&ratio);
            c.check(spread <= 0.2, format!("{} omega_Ff/nu spread {:.1}%", table.name(), 100.0 * spread));
            for i in 1..wff.len() {
                let ours = wff[i] / wff[i - 1];
                let theirs = paper[i] / paper[i - 1];
                let r = rel(ours, theirs);
                c.check(
                    r <= 0.2,
                    format!(
                        "{} omega_Ff ratio n={}->{}: {ours:.4} vs {theirs:.4} ({:.1}%)",
                        table.name(),
                        golden::NU_ORDERS[i - 1],
                        golden::NU_ORDERS[i],
                        100.0 * r
                    ),
                );
            }
        }
        Ok(())
    })
}

pub fn xi_full_table(cfg: &RunConfig) -> Result<ReportTable> {
    let orders: Vec<usize> = golden::XI_ORDERS.iter().chain(&golden::XI_INFO_ORDERS).copied().collect();
    xi_table(&orders, cfg)
}

pub fn criterion_4(table: &ReportTable) -> Verdict {
    run(4, "xi_n table", |c| {
        let xs = column(table, "xi_n")?;
        for (i, &n) in golden::XI_ORDERS.iter().enumerate() {
            let r = rel(xs[i], golden::XI[i]);
            c.check(r <= 0.02, format!("n={n}: {:.8} vs {} ({:.1}%)", xs[i], golden::XI[i], 100.0 * r));
        }
        let info: Vec<String> = golden::XI_INFO_ORDERS
            .iter()
            .zip(&xs[golden::XI_ORDERS.len()..])
            .map(|(n, v)| format!("{n}:{v:.6}"))
            .collect();
        c.note(format!("informational {}", info.join(" ")));
        Ok(())
    })
}

pub fn criterion_5() -> Verdict {
    run(5, "closed-form window integrals", |c| {
        let q = QuadratureSpec::gauss(1e-12);
        let mut s: u64 = 0x1234_5678_9abc_def1;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let points: Vec<f64> = (0..20).map(|_| -3.0 + 6.0 * next()).collect();
        let worst = (1..=12usize)
            .into_par_iter()
            .map(|n| -> Result<(f64, f64)> {
                let grid = ChebyshevGrid::new(n)?;
                let h = PI / (2 * n) as f64;
                let (mut vk, mut rr) = (0.0f64, 0.0f64);
                for &p in &points {
                    for k in 1..=n {
                        let a = vk_closed_form(&grid, k, p)?;
                        let b = vk_quadrature(&grid, k, p, &q)?;
                        vk = vk.max((a - b).norm());
                    }
                    let r = n - 1;
                    let oracle = integrate_complex(
                        |t| {
                            Complex64::new(0.0, p * t).exp()
                                * ((t - h).cos().powi(r as i32) + (t + h).cos().powi(r as i32))
                        },
                        Interval::new(0.0, PI)?,
                        4,
                        &q,
                    )?;
                    rr = rr.max((rr_term(r, p, n)? - oracle).norm());
                }
                Ok((vk, rr))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold((0.0f64, 0.0f64), |a, b| (a.0.max(b.0), a.1.max(b.1)));
        c.check(worst.0 <= 1e-6, format!("V_k off by {:.2e}", worst.0));
        c.check(worst.1 <= 1e-6, format!("R_r off by {:.2e}", worst.1));
        c.note(format!("max |V_k| diff {:.1e}, max |R_r| diff {:.1e}", worst.0, worst.1));
        Ok(())
    })
}

/// Gaussian `K_{n,n}` at every published `(n, p)`, both phase modes.
pub fn kn_gaussian_values(cfg: &RunConfig) -> Result<Vec<KnValue>> {
    let cfg = RunConfig {
        l_truncation: LTrunc::Paper,
        ..cfg.clone()
    };
    kn_values(&golden::KN_ORDERS, &crate::tables::KN_POINTS, &cfg)
}

pub fn criterion_6(values: &[KnValue], cfg: &RunConfig) -> (Verdict, Option<ConventionVariant>) {
    let mut best = None;
    let v = run(6, "K_{n,m} Gaussian tables", |c| {
        let get = |n: usize, p: f64| {
            values
                .iter()
                .find(|v| v.n == n && v.m == n && v.phase == PhaseMode::Alternating && (v.p - p).abs() < 1e-12)
                .map(|v| v.value)
                .ok_or_else(|| anyhow::anyhow!("missing K value n={n} p={p}"))
        };
        for p in [1.0, FRAC_PI_4, 1.5] {
            let d = (get(500, p)? - get(400, p)?).norm();
            c.check(d < 1e-5, format!("|K_500 - K_400| at p={p:.4} is {d:.2e}"));
        }
        for &n in &golden::KN_ORDERS {
            let k1 = get(n, 1.0)?;
            c.check(k1.im.abs() < 1e-10, format!("n={n} p=1 imaginary part {:.2e}", k1.im));
            let k15 = get(n, 1.5)?;
            c.check(
                (k15.re - k15.im).abs() < 1e-6,
                format!("n={n} p=1.5 re-im {:.2e}", k15.re - k15.im),
            );
        }
        let scan = convention_scan(values, cfg);
        let b = scan[0];
        c.check(b.p1_distance.is_finite(), "convention scan produced no finite distance");
        let k500 = get(500, 1.0)?;
        c.note(format!(
            "K_500(1) = {:.10}; best variant forward {:.6} inverse {:.6} {} at distance {:.3e}",
            k500.re,
            b.forward_scale,
            b.inverse_scale,
            phase_name(b.phase),
            b.p1_distance
        ));
        best = Some(b);
        Ok(())
    });
    (v, best)
}

/// `‖(K_n f − f)χ_[−2,2]‖₁` for the C² bump, spectrum cut at `±4π`.
pub fn bump_errors(orders: &[usize], cfg: &RunConfig) -> Result<Vec<(usize, f64, f64)>> {
    let conv = FourierConvention::default();
    let f = c2_bump();
    let spec = Spectrum::of_function(f.clone(), QuadratureSpec::gauss(1e-13), conv)
        .truncated(Interval::new(-4.0 * PI, 4.0 * PI)?);
    let window = Interval::new(-2.0, 2.0)?;
    let q = QuadratureSpec::with_tol(1e-8);
    orders
        .par_iter()
        .map(|&n| {
            let op = KnOperator::new(n, &spec, 4, conv)?;
            let err = kn_l1_error(&op, &f, window, &q)?;
            Ok((n, err, xi_n(n, cfg.grid_step)?))
        })
        .collect()
}

pub fn criterion_7(cfg: &RunConfig) -> Verdict {
    run(7, "K_n L1 convergence", |c| {
        let rows = bump_errors(&[8, 16, 32, 64], cfg)?;
        for w in rows.windows(2) {
            c.check(w[1].1 < w[0].1, format!("error rose from n={} to n={}", w[0].0, w[1].0));
        }
        let ratios: Vec<f64> = rows.iter().map(|r| r.1 / r.2).collect();
        let band = ratios.iter().cloned().fold(0.0, f64::max) / ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        c.check(band <= 20.0, format!("error/xi band {band:.1}"));
        let shown: Vec<String> = rows.iter().map(|r| format!("{}:{:.3e}", r.0, r.1)).collect();
        c.note(format!("L1 errors {}; error/xi band {band:.2}", shown.join(" ")));
        Ok(())
    })
}

pub const HN_SCHEDULE: [(usize, f64); 3] = [(8, 0.5), (16, 0.2), (32, 0.05)];

pub fn criterion_8(_cfg: &RunConfig) -> Verdict {
    run(8, "H_{n,delta}", |c| {
        let conv = FourierConvention::default();
        let f = tent_on_zero_pi();
        let q = QuadratureSpec::gauss(1e-12);
        // Identity against an independently assembled spectrum.
        let mut id_err = 0.0f64;
        for &(n, delta) in &HN_SCHEDULE[..2] {
            let ff = f.clone();
            let spec = Spectrum::new(Some(Interval::new(-1.0 / delta, 1.0 / delta)?), move |t| {
                fourier_transform(&ff, t, &q, &conv).unwrap_or(Complex64::new(f64::NAN, 0.0))
                    * (1.0 - delta * t.abs()).max(0.0)
            });
            let m = (1.0 / (delta * PI)).ceil() as usize;
            let op = KnOperator::new(n, &spec, m, conv)?;
            for x in [-0.5, 0.4, 1.3, 2.7] {
                let h = apply_hn_delta(n, delta, &f, x, &q, &conv)?.value;
                let k = op.eval(x, korovkin_core::extended::KnPath::Quadrature, &q)?;
                id_err = id_err.max((h - k).norm());
            }
        }
        c.check(id_err <= 1e-8, format!("H/K identity off by {id_err:.2e}"));
        let outer = QuadratureSpec::with_tol(1e-7);
        let errs = HN_SCHEDULE
            .par_iter()
            .map(|&(n, delta)| -> Result<f64> {
                let (spec, m) = regularized_spectrum(&f, delta, &q, &conv)?;
                let op = KnOperator::new(n, &spec, m, conv)?;
                Ok(kn_l1_error(&op, &f, Interval::new(0.0, PI)?, &outer)?)
            })
            .collect::<Result<Vec<f64>>>()?;
        for i in 1..errs.len() {
            c.check(
                errs[i] < errs[i - 1],
                format!("L1 error rose {:.3e} -> {:.3e}", errs[i - 1], errs[i]),
            );
        }
        c.note(format!(
            "identity {:.1e}; L1 errors {}",
            id_err,
            errs.iter().map(|e| format!("{e:.4e}")).collect::<Vec<_>>().join(" ")
        ));
        Ok(())
    })
}

/// `A_n(e_j)` and `B_n(e_j)` as printed, except the middle coefficient of
/// `B_n(e_2)`, which is `−2nx/(n+1)²`.
pub fn printed_moment(kind: KantorovichKind, n: usize, j: u32, x: f64) -> f64 {
    let nf = n as f64;
    let n1 = nf + 1.0;
    let (s, half) = match kind {
        KantorovichKind::Dyadic => {
            let a = korovkin_core::kantorovich::dyadic_indicator(n).map(|d| d.eval(x)).unwrap_or(0.0);
            (1.0 - a, true)
        }
        _ => (1.0 - 2.0 * x, false),
    };
    let pw = |e: i64| if e < 0 { 0.0 } else { s.powi(e as i32) };
    let ni = n as i64;
    match (half, j) {
        (_, 0) => pw(ni),
        (true, 1) => nf * x / (2.0 * n1) * pw(ni - 1) + pw(ni) / (2.0 * n1),
        (true, 2) => {
            nf * (nf - 1.0) * x * x / (4.0 * n1 * n1) * pw(ni - 2) + nf * x / (n1 * n1) * pw(ni - 1)
                + pw(ni) / (3.0 * n1 * n1)
        }
        (false, 1) => -nf * x / n1 * pw(ni - 1) + pw(ni) / (2.0 * n1),
        (false, 2) => {
            nf * (nf - 1.0) * x * x / (n1 * n1) * pw(ni - 2) - 2.0 * nf * x / (n1 * n1) * pw(ni - 1)
                + pw(ni) / (3.0 * n1 * n1)
        }
        _ => f64::NAN,
    }
}

pub fn criterion_9(cfg: &RunConfig) -> Verdict {
    run(9, "Kantorovich suite", |c| {
        let q = QuadratureSpec::with_tol(1e-11);
        // Closed forms against the operators' direct sums.
        let mut s: u64 = 0xfeed_beef;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let xs: Vec<f64> = (0..1000).map(|_| next()).collect();
        let mut worst = 0.0f64;
        for kind in [KantorovichKind::Dyadic, KantorovichKind::Alternating] {
            for n in 1..=40 {
                let op = KantorovichOperator::new(kind, n)?;
                for j in 0..3u32 {
                    let b = op.bind(&monomial(j as i32))?;
                    for &x in &xs {
                        worst = worst.max((b.eval(x) - printed_moment(kind, n, j, x)).abs());
                    }
                }
            }
        }
        c.check(worst <= 1e-9, format!("closed forms off by {worst:.2e}"));
        let mut b0 = 0.0f64;
        for n in [1usize, 2, 7, 15, 40] {
            let v = l1_norm(&KantorovichOperator::alternating(n)?.bind(&monomial(0))?, &q)?;
            b0 = b0.max((v - 1.0 / (n + 1) as f64).abs());
        }
        c.check(b0 <= 1e-9, format!("||B_n(e_0)||_1 off by {b0:.2e}"));
        for n in [3usize, 5] {
            match nonpositivity_witness_gn(n, cfg.grid_step) {
                Ok(w) => c.check(w.value < 0.0, format!("G_{n} witness value {}", w.value)),
                Err(e) => c.check(false, format!("G_{n} witness: {e}")),
            }
        }
        for n in [3usize, 5, 7, 9, 11] {
            c.check(dyadic_witness(n).is_ok(), format!("A_{n} witness missing"));
            c.check(alternating_witness(n).is_ok(), format!("B_{n} witness missing"));
        }
        let probes = random_probes(50, 0x5eed);
        let mut an = 0.0f64;
        for n in 3..=33 {
            an = an.max(l1_operator_norm_bound(&KantorovichOperator::dyadic(n)?, &probes, &q)?);
        }
        c.check(an <= 3.0 + 1e-6, format!("empirical ||A_n|| {an:.4}"));
        let g = Interval::new(0.2, 0.6)?;
        let classic = |n: usize| -> korovkin_core::Result<Box<dyn L1Operator>> {
            Ok(Box::new(KantorovichOperator::classic(n)?))
        };
        let rk = characteristic_condition_check(&classic, &Target::Identity, g, &[5, 10, 20, 40, 80], &q)?;
        for &(n, v) in &rk.sequence {
            c.check(v <= rk.g_norm + 1e-9, format!("K_{n} condition {v:.6} above ||g||_1"));
        }
        c.check(rk.holds, "K_n characteristic condition");
        let alt = |n: usize| -> korovkin_core::Result<Box<dyn L1Operator>> {
            Ok(Box::new(KantorovichOperator::alternating(n)?))
        };
        let rb = characteristic_condition_check(&alt, &Target::Zero, g, &[10, 40, 160, 640], &q)?;
        let last = rb.sequence.last().map(|s| s.1).unwrap_or(f64::NAN);
        c.check((last - rb.g_norm).abs() <= 0.02, format!("B_n condition ends at {last:.4}"));
        c.note(format!(
            "closed forms {:.1e}; ||A_n|| <= {an:.4}; K_n cond {:.6}; B_n cond {}",
            worst,
            rk.sequence.last().map(|s| s.1).unwrap_or(f64::NAN),
            rb.sequence.iter().map(|s| format!("{}:{:.4}", s.0, s.1)).collect::<Vec<_>>().join(" ")
        ));
        Ok(())
    })
}

pub fn criterion_10(cfg: &RunConfig) -> Verdict {
    run(10, "mu_n proposition", |c| {
        let q = QuadratureSpec::with_tol(1e-11);
        let folded = RealFunction::new(
            Domain::Interval(Interval::new(0.0, 1.0)?),
            Smoothness::Continuous,
            |x| (x - 0.5).abs(),
        )
        .with_breakpoints(&[0.5]);
        let fs = [("|x-1/2|", folded), ("x^2", monomial(2))];
        let mut mus = Vec::new();
        for n in [5usize, 10, 20, 50] {
            let k = KantorovichOperator::classic(n)?;
            mus.push(mu_n(&k, &Target::Identity, &q)?);
            for (name, f) in &fs {
                let r = mu_bound_check(&k, &Target::Identity, f, &q, cfg.grid_step.max(1e-5))?;
                c.check(r.holds, format!("n={n} f={name}: {:.3e} > {:.3e}", r.lhs, r.rhs));
            }
        }
        for w in mus.windows(2) {
            c.check(w[1] < w[0], "mu_n not decreasing");
        }
        let last = *mus.last().unwrap();
        c.check(last < 0.15, format!("mu_50 = {last:.4}"));
        c.note(format!("mu_n {}", mus.iter().map(|m| format!("{m:.5}")).collect::<Vec<_>>().join(" ")));
        Ok(())
    })
}

pub fn criterion_11(norms: &[(usize, f64)]) -> Verdict {
    run(11, "boundedness of G_n", |c| {
        let max = norms.iter().map(|r| r.1).fold(0.0, f64::max);
        c.check(max <= 5.0, format!("max ||G_n|| {max:.4}"));
        if norms.len() >= 3 {
            let t = &norms[norms.len() - 3..];
            c.check(
                !(t[0].1 < t[1].1 && t[1].1 < t[2].1),
                format!("monotone growth over n={}..{}", t[0].0, t[2].0),
            );
        }
        c.note(format!(
            "norms {}",
            norms.iter().map(|r| format!("{}:{:.5}", r.0, r.1)).collect::<Vec<_>>().join(" ")
        ));
        if norms.len() >= 3 {
            // Aitken extrapolation of the last three values.
            let t = &norms[norms.len() - 3..];
            let (a, b, d) = (t[0].1, t[1].1, t[2].1);
            let den = d - 2.0 * b + a;
            if den.abs() > 0.0 {
                c.note(format!("extrapolated limit {:.5}", d - (d - b).powi(2) / den));
            }
        }
        Ok(())
    })
}

/// Runs criteria 2, 3 and 4 on precomputed tables, computing them first if
/// needed.
pub fn all_criteria(cfg: &RunConfig) -> Vec<Verdict> {
    let mut out = vec![criterion_1()];
    let t0 = Instant::now();
    match nu_tables(cfg) {
        Ok(t) => {
            let s = t0.elapsed().as_secs_f64();
            out.push(criterion_2(&t).plus_runtime(s));
            out.push(criterion_3(&t).plus_runtime(s));
        }
        Err(e) => {
            out.push(failed(2, "nu_n reproduction", t0, anyhow::anyhow!("{e:#}")));
            out.push(failed(3, "modulus-of-continuity columns", t0, e));
        }
    }
    let t0 = Instant::now();
    out.push(match xi_full_table(cfg) {
        Ok(t) => criterion_4(&t).plus_runtime(t0.elapsed().as_secs_f64()),
        Err(e) => failed(4, "xi_n table", t0, e),
    });
    out.push(criterion_5());
    let t0 = Instant::now();
    out.push(match kn_gaussian_values(cfg) {
        Ok(v) => criterion_6(&v, cfg).0.plus_runtime(t0.elapsed().as_secs_f64()),
        Err(e) => failed(6, "K_{n,m} Gaussian tables", t0, e),
    });
    out.push(criterion_7(cfg));
    out.push(criterion_8(cfg));
    out.push(criterion_9(cfg));
    out.push(criterion_10(cfg));
    let t0 = Instant::now();
    out.push(match korovkin_core::grunwald::empirical_c1(512, cfg.grid_step) {
        Ok(est) => criterion_11(&est.norms).plus_runtime(t0.elapsed().as_secs_f64()),
        Err(e) => failed(11, "boundedness of G_n", t0, e.into()),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_moments_at_trivial_points() {
        assert_eq!(printed_moment(KantorovichKind::Alternating, 3, 0, 0.75), -0.125);
        assert_eq!(printed_moment(KantorovichKind::Dyadic, 4, 0, 0.1), 0.0);
        assert_eq!(printed_moment(KantorovichKind::Dyadic, 4, 0, 0.5), 1.0);
    }

    #[test]
    fn verdict_line_format() {
        let v = Verdict {
            id: 3,
            title: "demo",
            passed: false,
            detail: "x".into(),
            runtime_s: 1.25,
        };
        assert!(v.line().starts_with("FAIL  3 demo"));
        assert_eq!(v.to_json()["passed"], false);
    }

    #[test]
    fn spread() {
        assert!((spread_from_median(&[1.0, 1.1, 0.9]) - 0.1).abs() < 1e-12);
    }
}
