//! Table builders behind the subcommands. Rows are computed in parallel and
//! assembled in input order.

use std::f64::consts::{FRAC_PI_4, PI};
use std::str::FromStr;

use anyhow::{bail, Result};
use korovkin_core::extended::{resolve_truncation, KnOperator, KnPath, Truncation};
use korovkin_core::fourier::{fourier_transform, FourierConvention, PhaseMode};
use korovkin_core::functions::{cubic, cubic_compact, gaussian_spectrum, tent, tent_compact};
use korovkin_core::grunwald::{empirical_c1, rate_functionals, test_set_convergence_report, C1Estimate};
use korovkin_core::kantorovich::{
    characteristic_condition_check, l1_norm, l1_operator_norm_bound, monomial, mu_n, target_gap,
    KantorovichOperator, L1Operator, Target,
};
use korovkin_core::quadrature::{modulus_of_continuity, modulus_of_continuity_complex, QuadratureSpec};
use korovkin_core::report::{Cell, ReportTable};
use korovkin_core::{Complex64, Domain, Interval, RealFunction, Smoothness};
use rayon::prelude::*;

use crate::config::{phase_name, LTrunc, RunConfig};
use crate::golden;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    Tent,
    Cubic,
}

impl FromStr for Example {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tent" => Ok(Example::Tent),
            "cubic" | "cubic-spline-like" => Ok(Example::Cubic),
            other => Err(format!("unknown example `{other}`; expected `tent` or `cubic`")),
        }
    }
}

impl Example {
    pub fn name(self) -> &'static str {
        match self {
            Example::Tent => "tent",
            Example::Cubic => "cubic",
        }
    }

    fn functions(self) -> (RealFunction, RealFunction) {
        match self {
            Example::Tent => (tent(), tent_compact()),
            Example::Cubic => (cubic(), cubic_compact()),
        }
    }
}

/// Default frequency window for `ω(F(f), ·)`: `m = 4` windows on each side.
pub const FREQUENCY_WINDOWS: usize = 4;

pub fn frequency_window(m: usize) -> Interval {
    let r = (m + 1) as f64 * PI;
    Interval::new(-r, r).expect("window is nonempty")
}

fn collect<T: Send>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

/// `n, ν_n, ω(f, ν_n), ω(F(f), ν_n)` with `F(f)(x) = ∫_{−1}^{1} f(y) e^{−ixy} dy`.
pub fn nu_table(example: Example, n_list: &[usize], cfg: &RunConfig, window: Interval) -> Result<ReportTable> {
    nu_table_from(example, n_list, &nu_values(n_list, cfg)?, cfg, window)
}

pub fn nu_values(n_list: &[usize], cfg: &RunConfig) -> Result<Vec<f64>> {
    collect(
        n_list
            .par_iter()
            .map(|&n| Ok(korovkin_core::grunwald::nu_n(n, cfg.grid_step)?))
            .collect(),
    )
}

/// As [`nu_table`], reusing `nus[i] = ν_{n_list[i]}`.
pub fn nu_table_from(
    example: Example,
    n_list: &[usize],
    nus: &[f64],
    cfg: &RunConfig,
    window: Interval,
) -> Result<ReportTable> {
    if nus.len() != n_list.len() {
        bail!("{} orders but {} nu values", n_list.len(), nus.len());
    }
    let (f, f_compact) = example.functions();
    let q = QuadratureSpec::gauss(cfg.quad_tol);
    let conv = FourierConvention::default();
    let unit = Interval::new(-1.0, 1.0)?;
    let rows = collect(
        n_list
            .par_iter()
            .zip(nus.par_iter())
            .map(|(&n, &nu)| -> Result<Vec<Cell>> {
                let wf = modulus_of_continuity(|x| f.eval(x), nu, unit, cfg.grid_step)?;
                let wff = modulus_of_continuity_complex(
                    |x| fourier_transform(&f_compact, x, &q, &conv).unwrap_or(Complex64::new(f64::NAN, 0.0)),
                    nu,
                    window,
                    nu / 32.0,
                )?;
                Ok(vec![n.into(), nu.into(), wf.into(), wff.into()])
            })
            .collect(),
    )?;
    let mut t = ReportTable::new(
        &format!("nu_{}", example.name()),
        &[("n", ""), ("nu_n", ""), ("omega_f", ""), ("omega_Ff", "")],
    )?;
    for r in rows {
        t.push_row(r)?;
    }
    Ok(t)
}

pub fn xi_table(n_list: &[usize], cfg: &RunConfig) -> Result<ReportTable> {
    let rows = collect(
        n_list
            .par_iter()
            .map(|&n| Ok(korovkin_core::grunwald::xi_n(n, cfg.grid_step)?))
            .collect(),
    )?;
    let mut t = ReportTable::new("xi", &[("n", ""), ("xi_n", "rad")])?;
    for (&n, xi) in n_list.iter().zip(rows) {
        t.push_row(vec![n.into(), xi.into()])?;
    }
    Ok(t)
}

/// Default evaluation points of the `K_{n,m}` tables.
pub const KN_POINTS: [f64; 3] = [1.0, FRAC_PI_4, 1.5];

/// One `K_{n,m}(e^{−x²})(p)` value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnValue {
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub phase: PhaseMode,
    pub value: Complex64,
}

pub fn kn_truncation(t: LTrunc, n: usize, conv: FourierConvention) -> Result<usize> {
    Ok(match t {
        LTrunc::Paper => n,
        LTrunc::Fixed(m) => m,
        LTrunc::Auto => resolve_truncation(&gaussian_spectrum(conv.forward_scale), Truncation::Auto)?,
    })
}

/// Evaluates the Gaussian `K_{n,m}` at every `(n, p)` in both phase modes,
/// using `cfg`'s forward and inverse scales.
pub fn kn_values(n_list: &[usize], p_list: &[f64], cfg: &RunConfig) -> Result<Vec<KnValue>> {
    let q = QuadratureSpec::gauss(cfg.quad_tol);
    let jobs: Vec<(usize, PhaseMode)> = n_list
        .iter()
        .flat_map(|&n| [(n, cfg.convention.phase_mode), (n, other_phase(cfg.convention.phase_mode))])
        .collect();
    let blocks = collect(
        jobs.par_iter()
            .map(|&(n, phase)| -> Result<Vec<KnValue>> {
                let conv = cfg.convention.with_phase(phase);
                let m = kn_truncation(cfg.l_truncation, n, conv)?;
                let op = KnOperator::new(n, &gaussian_spectrum(conv.forward_scale), m, conv)?;
                p_list
                    .iter()
                    .map(|&p| {
                        Ok(KnValue {
                            n,
                            m,
                            p,
                            phase,
                            value: op.eval(p, KnPath::Quadrature, &q)?,
                        })
                    })
                    .collect()
            })
            .collect(),
    )?;
    Ok(blocks.into_iter().flatten().collect())
}

fn other_phase(p: PhaseMode) -> PhaseMode {
    match p {
        PhaseMode::Alternating => PhaseMode::Exact,
        PhaseMode::Exact => PhaseMode::Alternating,
    }
}

pub fn kn_table(values: &[KnValue], cfg: &RunConfig) -> Result<ReportTable> {
    let mut t = ReportTable::new(
        "kn_gaussian",
        &[
            ("n", ""),
            ("m", ""),
            ("p", ""),
            ("re", ""),
            ("im", ""),
            ("phase_mode", ""),
            ("forward_scale", ""),
            ("paper_distance", ""),
        ],
    )?;
    for v in values {
        let dist = golden::kn_reference(v.n, v.p)
            .map(|(re, im)| (v.value - Complex64::new(re, im)).norm())
            .unwrap_or(f64::NAN);
        t.push_row(vec![
            v.n.into(),
            v.m.into(),
            v.p.into(),
            v.value.re.into(),
            v.value.im.into(),
            phase_name(v.phase).into(),
            cfg.convention.forward_scale.into(),
            dist.into(),
        ])?;
    }
    Ok(t)
}

/// A forward/inverse scaling and phase choice, with its distance to the
/// published `p = 1` column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConventionVariant {
    pub forward_scale: f64,
    pub inverse_scale: f64,
    pub phase: PhaseMode,
    /// Max `|K − reference|` over the `p = 1` column.
    pub p1_distance: f64,
    /// Max `|K − reference|` over every published cell. Breaks ties.
    pub table_distance: f64,
}

/// Scans forward scales `{1, 1/√(2π), 1/(2π)}`, inverse scales
/// `{1/(2π), 1/√(2π), 1}` and both phase modes. `K` is linear in both scales,
/// so `values` (computed with `cfg`'s scales) is rescaled rather than
/// recomputed. Best match first.
pub fn convention_scan(values: &[KnValue], cfg: &RunConfig) -> Vec<ConventionVariant> {
    let s = (2.0 * PI).sqrt();
    let base = cfg.convention.forward_scale * cfg.convention.inverse_scale;
    let mut out = Vec::new();
    for forward_scale in [1.0, 1.0 / s, 1.0 / (2.0 * PI)] {
        for inverse_scale in [1.0 / (2.0 * PI), 1.0 / s, 1.0] {
            for phase in [PhaseMode::Alternating, PhaseMode::Exact] {
                let factor = forward_scale * inverse_scale / base;
                let (mut p1, mut all) = (0.0f64, 0.0f64);
                let (mut seen_p1, mut seen) = (false, false);
                for v in values.iter().filter(|v| v.phase == phase && v.m == v.n) {
                    if let Some((re, im)) = golden::kn_reference(v.n, v.p) {
                        let d = (v.value * factor - Complex64::new(re, im)).norm();
                        all = all.max(d);
                        seen = true;
                        if (v.p - 1.0).abs() < 1e-12 {
                            p1 = p1.max(d);
                            seen_p1 = true;
                        }
                    }
                }
                // A variant with nothing to compare is never a match.
                if !seen_p1 {
                    p1 = f64::INFINITY;
                }
                if !seen {
                    all = f64::INFINITY;
                }
                out.push(ConventionVariant {
                    forward_scale,
                    inverse_scale,
                    phase,
                    p1_distance: p1,
                    table_distance: all,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        a.p1_distance
            .total_cmp(&b.p1_distance)
            .then(a.table_distance.total_cmp(&b.table_distance))
    });
    out
}

/// Orders for the Kantorovich suite.
pub const KANTOROVICH_ORDERS: [usize; 4] = [5, 10, 20, 50];

/// `a + b cos(ωt) + c t²` with coefficients from a fixed xorshift stream.
pub fn random_probes(count: usize, seed: u64) -> Vec<RealFunction> {
    let mut s = seed.max(1);
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| {
            let (a, b, c, w) = (2.0 * next() - 1.0, 2.0 * next() - 1.0, 2.0 * next() - 1.0, 10.0 * next());
            RealFunction::new(
                Domain::Interval(Interval::new(0.0, 1.0).unwrap()),
                Smoothness::C2,
                move |t| a + b * (w * t).cos() + c * t * t,
            )
        })
        .collect()
}

pub fn kantorovich_table(n_list: &[usize], cfg: &RunConfig) -> Result<ReportTable> {
    let q = QuadratureSpec::with_tol(cfg.quad_tol);
    let probes = random_probes(50, 0x5eed);
    let g = Interval::new(0.2, 0.6)?;
    let rows = collect(
        n_list
            .par_iter()
            .map(|&n| -> Result<Vec<Cell>> {
                let k = KantorovichOperator::classic(n)?;
                let a = KantorovichOperator::dyadic(n)?;
                let b = KantorovichOperator::alternating(n)?;
                let mu = mu_n(&k, &Target::Identity, &q)?;
                let b0 = l1_norm(&b.bind(&monomial(0))?, &q)?;
                let an = l1_operator_norm_bound(&a, &probes, &q)?;
                let classic = |n: usize| -> korovkin_core::Result<Box<dyn L1Operator>> {
                    Ok(Box::new(KantorovichOperator::classic(n)?))
                };
                let alt = |n: usize| -> korovkin_core::Result<Box<dyn L1Operator>> {
                    Ok(Box::new(KantorovichOperator::alternating(n)?))
                };
                let ck = characteristic_condition_check(&classic, &Target::Identity, g, &[n], &q)?;
                let cb = characteristic_condition_check(&alt, &Target::Zero, g, &[n], &q)?;
                let ga = target_gap(&a, &monomial(2), &q)?;
                let gb = target_gap(&b, &monomial(2), &q)?;
                Ok(vec![
                    n.into(),
                    mu.into(),
                    b0.into(),
                    an.into(),
                    ck.sequence[0].1.into(),
                    cb.sequence[0].1.into(),
                    ga.into(),
                    gb.into(),
                ])
            })
            .collect(),
    )?;
    let mut t = ReportTable::new(
        "kantorovich",
        &[
            ("n", ""),
            ("mu_n", ""),
            ("bn_e0_l1", ""),
            ("an_norm_bound", ""),
            ("char_classic", ""),
            ("char_alternating", ""),
            ("an_gap_e2", ""),
            ("bn_gap_e2", ""),
        ],
    )?;
    for r in rows {
        t.push_row(r)?;
    }
    Ok(t)
}

/// Dyadic orders `2, 4, …, 512`.
pub fn dyadic_orders() -> Vec<usize> {
    (1..=9).map(|k| 1usize << k).collect()
}

pub struct GrunwaldSuite {
    pub table: ReportTable,
    pub test_set: ReportTable,
    pub c1: C1Estimate,
}

pub fn grunwald_suite(cfg: &RunConfig) -> Result<GrunwaldSuite> {
    let orders = dyadic_orders();
    let rows = collect(
        orders
            .par_iter()
            .map(|&n| Ok(rate_functionals(n, cfg.grid_step)?))
            .collect(),
    )?;
    let mut table = ReportTable::new(
        "grunwald",
        &[("n", ""), ("norm_gn", ""), ("nu_n", ""), ("xi_n", "rad")],
    )?;
    for r in &rows {
        table.push_row(vec![r.n.into(), r.lebesgue_sup.into(), r.nu.into(), r.xi.into()])?;
    }
    let c1 = C1Estimate {
        c1: rows.iter().map(|r| r.lebesgue_sup).fold(0.0, f64::max),
        norms: rows.iter().map(|r| (r.n, r.lebesgue_sup)).collect(),
    };
    let test_set = test_set_convergence_report(&[3, 5, 10, 20, 50, 100], cfg.grid_step)?;
    Ok(GrunwaldSuite { table, test_set, c1 })
}

/// `empirical_c1` with the same sweep as [`grunwald_suite`].
pub fn c1_estimate(cfg: &RunConfig) -> Result<C1Estimate> {
    Ok(empirical_c1(512, cfg.grid_step)?)
}

pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.parse() {
            Ok(v) => out.push(v),
            Err(e) => bail!("cannot parse `{part}`: {e}"),
        }
    }
    if out.is_empty() {
        bail!("empty list");
    }
    Ok(out)
}

/// Accepts decimals plus `pi`, `pi/k` and `k*pi`.
pub fn parse_point(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    if t == "pi" {
        return Ok(PI);
    }
    if let Some(d) = t.strip_prefix("pi/") {
        return Ok(PI / d.parse::<f64>()?);
    }
    if let Some(k) = t.strip_suffix("*pi") {
        return Ok(k.parse::<f64>()? * PI);
    }
    bail!("cannot parse point `{s}`")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list::<usize>("10, 22,57").unwrap(), vec![10, 22, 57]);
        assert!(parse_list::<usize>("").is_err());
        assert!(parse_list::<usize>("3,x").is_err());
        assert_eq!(parse_point("pi/4").unwrap(), FRAC_PI_4);
        assert_eq!(parse_point("1.5").unwrap(), 1.5);
        assert_eq!(parse_point("2*pi").unwrap(), 2.0 * PI);
        assert!(parse_point("tau").is_err());
        assert!("line".parse::<Example>().is_err());
    }

    #[test]
    fn scan_prefers_exact_scaling() {
        let cfg = RunConfig::default();
        // Synthetic values equal to the reference divided by 1/√(2π).
        let s = (2.0 * PI).sqrt();
        let values: Vec<KnValue> = golden::KN_ORDERS
            .iter()
            .zip(golden::KN_P1)
            .map(|(&n, v)| KnValue {
                n,
                m: n,
                p: 1.0,
                phase: PhaseMode::Alternating,
                value: Complex64::new(v * s, 0.0),
            })
            .collect();
        let best = convention_scan(&values, &cfg)[0];
        assert!(best.p1_distance < 1e-12);
        assert_eq!(best.phase, PhaseMode::Alternating);
        assert!((best.forward_scale * best.inverse_scale - 1.0 / (2.0 * PI * s)).abs() < 1e-15);
    }

    #[test]
    fn small_tables_have_expected_shape() {
        let cfg = RunConfig {
            grid_step: 1e-3,
            ..RunConfig::default()
        };
        let t = nu_table(Example::Tent, &[10], &cfg, frequency_window(FREQUENCY_WINDOWS)).unwrap();
        assert_eq!(t.rows().len(), 1);
        let nu = t.column("nu_n").unwrap()[0];
        let wf = t.column("omega_f").unwrap()[0];
        assert!((wf - 2.0 * nu).abs() < 1e-2);
        let x = xi_table(&[4, 8], &cfg).unwrap();
        let xs = x.column("xi_n").unwrap();
        assert!(xs[1] < xs[0]);
        let v = kn_values(&[12], &[1.0], &cfg).unwrap();
        assert_eq!(v.len(), 2);
        assert!((v[0].value - v[1].value).norm() < 1e-9);
        assert_eq!(kn_table(&v, &cfg).unwrap().rows().len(), 2);
    }
}
