//! Integration, sup-search and grid functionals on intervals.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::function::{split_at, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadMethod {
    #[default]
    AdaptiveSimpson,
    /// 32-point Gauss-Legendre panels, doubled until two passes agree.
    CompositeGauss,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub method: QuadMethod,
    pub max_refinement: usize,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            method: QuadMethod::AdaptiveSimpson,
            max_refinement: 48,
            abs_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn new(method: QuadMethod, max_refinement: usize, abs_tol: f64) -> Result<Self> {
        let q = QuadratureSpec {
            method,
            max_refinement,
            abs_tol,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureSpec {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn gauss(abs_tol: f64) -> Self {
        QuadratureSpec {
            method: QuadMethod::CompositeGauss,
            max_refinement: 12,
            abs_tol,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidArgument("abs_tol must be positive"));
        }
        if self.max_refinement == 0 {
            return Err(Error::InvalidArgument("max_refinement must be at least 1"));
        }
        Ok(())
    }
}

// Positive half of the 32-point Gauss-Legendre rule on [-1, 1].
#[allow(clippy::excessive_precision)]
const GL32_NODES: [f64; 16] = [
    0.048307665687738316235,
    0.14447196158279649349,
    0.23928736225213707454,
    0.33186860228212764978,
    0.42135127613063534536,
    0.50689990893222939002,
    0.58771575724076232904,
    0.66304426693021520098,
    0.73218211874028968039,
    0.79448379596794240696,
    0.84936761373256997013,
    0.89632115576605212397,
    0.93490607593773968917,
    0.96476225558750643077,
    0.9856115115452683354,
    0.99726386184948156354,
];
#[allow(clippy::excessive_precision)]
const GL32_WEIGHTS: [f64; 16] = [
    0.096540088514727800567,
    0.095638720079274859419,
    0.093844399080804565639,
    0.091173878695763884713,
    0.087652093004403811143,
    0.083311924226946755222,
    0.078193895787070306472,
    0.072345794108848506225,
    0.065822222776361846838,
    0.058684093478535547145,
    0.050998059262376176196,
    0.042835898022226680657,
    0.034273862913021433103,
    0.025392065309262059456,
    0.016274394730905670605,
    0.0070186100094700966004,
];

/// Nodes and weights of a composite 32-point Gauss-Legendre rule with
/// `panels` equal panels on `[lo, hi]`, in ascending node order.
pub fn gauss_legendre_nodes(lo: f64, hi: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let panels = panels.max(1);
    let h = (hi - lo) / panels as f64;
    let mut xs = Vec::with_capacity(32 * panels);
    let mut ws = Vec::with_capacity(32 * panels);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        for i in (0..16).rev() {
            xs.push(mid - half * GL32_NODES[i]);
            ws.push(half * GL32_WEIGHTS[i]);
        }
        for i in 0..16 {
            xs.push(mid + half * GL32_NODES[i]);
            ws.push(half * GL32_WEIGHTS[i]);
        }
    }
    (xs, ws)
}

fn checked(x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

fn checked_c(x: f64, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

fn gauss_pass<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64, panels: usize) -> Result<f64> {
    let h = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut s = 0.0;
        for i in 0..16 {
            let d = half * GL32_NODES[i];
            s += GL32_WEIGHTS[i] * (checked(mid - d, f(mid - d))? + checked(mid + d, f(mid + d))?);
        }
        total += s * half;
    }
    Ok(total)
}

fn gauss_pass_c<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    panels: usize,
) -> Result<Complex64> {
    let h = (hi - lo) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..16 {
            let d = half * GL32_NODES[i];
            s += (checked_c(mid - d, f(mid - d))? + checked_c(mid + d, f(mid + d))?)
                * GL32_WEIGHTS[i];
        }
        total += s * half;
    }
    Ok(total)
}

fn composite_gauss<F: FnMut(f64) -> f64>(
    f: &mut F,
    iv: Interval,
    min_panels: usize,
    q: &QuadratureSpec,
) -> Result<f64> {
    let mut panels = min_panels.max(1);
    let mut prev = gauss_pass(f, iv.lo(), iv.hi(), panels)?;
    let mut err = f64::INFINITY;
    for _ in 0..q.max_refinement {
        panels *= 2;
        let cur = gauss_pass(f, iv.lo(), iv.hi(), panels)?;
        err = (cur - prev).abs();
        prev = cur;
        if err <= q.abs_tol {
            return Ok(cur);
        }
    }
    Err(Error::ToleranceNotMet {
        estimate: prev,
        error: err,
    })
}

struct Simpson {
    tol_hit: bool,
    worst: f64,
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: FnMut(f64) -> f64>(
    f: &mut F,
    st: &mut Simpson,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = checked(lm, f(lm))?;
    let frm = checked(rm, f(rm))?;
    let h = b - a;
    let left = h / 12.0 * (fa + 4.0 * flm + fm);
    let right = h / 12.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    // Below this the difference is rounding noise.
    let noise = 4.0 * f64::EPSILON * h * (fa.abs() + 4.0 * fm.abs() + fb.abs());
    if diff.abs() <= 15.0 * tol.max(noise) {
        return Ok(left + right + diff / 15.0);
    }
    if depth == 0 || m <= a || m >= b {
        st.tol_hit = true;
        st.worst = st.worst.max(diff.abs() / 15.0);
        return Ok(left + right + diff / 15.0);
    }
    let l = simpson_rec(f, st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_rec(f, st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

fn adaptive_simpson<F: FnMut(f64) -> f64>(
    f: &mut F,
    iv: Interval,
    q: &QuadratureSpec,
) -> Result<f64> {
    // A few initial panels so that narrow features are not missed by the
    // first five samples.
    const START: usize = 8;
    let h = iv.len() / START as f64;
    let mut st = Simpson {
        tol_hit: false,
        worst: 0.0,
    };
    let mut total = 0.0;
    let mut fa = checked(iv.lo(), f(iv.lo()))?;
    for i in 0..START {
        let a = iv.lo() + i as f64 * h;
        let b = if i + 1 == START { iv.hi() } else { a + h };
        let m = 0.5 * (a + b);
        let fm = checked(m, f(m))?;
        let fb = checked(b, f(b))?;
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_rec(
            f,
            &mut st,
            a,
            b,
            fa,
            fm,
            fb,
            whole,
            q.abs_tol / START as f64,
            q.max_refinement,
        )?;
        fa = fb;
    }
    if st.tol_hit && st.worst * START as f64 > q.abs_tol {
        return Err(Error::ToleranceNotMet {
            estimate: total,
            error: st.worst,
        });
    }
    Ok(total)
}

/// ∫ f over `iv`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, iv: Interval, q: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    match q.method {
        QuadMethod::AdaptiveSimpson => adaptive_simpson(&mut f, iv, q),
        QuadMethod::CompositeGauss => composite_gauss(&mut f, iv, 1, q),
    }
}

/// Share of `abs_tol` for one of `count` pieces: half by length, half evenly,
/// so that tiny pieces never get a tolerance below rounding level.
pub fn piece_tolerance(abs_tol: f64, len: f64, total: f64, count: usize) -> f64 {
    0.5 * abs_tol * (len / total + 1.0 / count as f64)
}

/// ∫ f over `iv`, integrating separately between the given sorted points.
pub fn integrate_split<F: FnMut(f64) -> f64>(
    mut f: F,
    iv: Interval,
    breakpoints: &[f64],
    q: &QuadratureSpec,
) -> Result<f64> {
    q.validate()?;
    let mut total = 0.0;
    let pieces = split_at(iv, breakpoints);
    let count = pieces.len();
    for piece in pieces {
        let sub = QuadratureSpec {
            abs_tol: piece_tolerance(q.abs_tol, piece.len(), iv.len(), count),
            ..*q
        };
        total += integrate(&mut f, piece, &sub)?;
    }
    Ok(total)
}

/// ∫ f over `iv` by composite Gauss-Legendre starting from `min_panels`.
pub fn integrate_gauss<F: FnMut(f64) -> f64>(
    mut f: F,
    iv: Interval,
    min_panels: usize,
    q: &QuadratureSpec,
) -> Result<f64> {
    q.validate()?;
    composite_gauss(&mut f, iv, min_panels, q)
}

/// ∫ f over `iv` for complex integrands, by composite Gauss-Legendre.
/// `min_panels` lets callers account for oscillation; the panel count is
/// doubled until two passes agree within `q.abs_tol`.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    iv: Interval,
    min_panels: usize,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    q.validate()?;
    let mut panels = min_panels.max(1);
    let mut prev = gauss_pass_c(&mut f, iv.lo(), iv.hi(), panels)?;
    let mut err = f64::INFINITY;
    for _ in 0..q.max_refinement.min(16) {
        panels *= 2;
        let cur = gauss_pass_c(&mut f, iv.lo(), iv.hi(), panels)?;
        err = (cur - prev).norm();
        prev = cur;
        if err <= q.abs_tol {
            return Ok(cur);
        }
    }
    Err(Error::ToleranceNotMet {
        estimate: prev.norm(),
        error: err,
    })
}

/// Starting panel count for `e^{iωt}` over an interval of length `len`: one
/// 32-point panel per period, i.e. 32 nodes per period before the first
/// doubling.
pub fn oscillation_panels(omega: f64, len: f64) -> usize {
    let periods = omega.abs() * len / (2.0 * core::f64::consts::PI);
    (periods.ceil() as usize).max(1)
}

/// Uniform grid on `iv` whose spacing is at most `step`.
pub fn grid(iv: Interval, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return Err(Error::InvalidArgument("grid step must be positive"));
    }
    let cells = (iv.len() / step).ceil().max(1.0) as usize;
    let h = iv.len() / cells as f64;
    Ok((0..=cells)
        .map(|i| {
            if i == cells {
                iv.hi()
            } else {
                iv.lo() + i as f64 * h
            }
        })
        .collect())
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[a, b]` by golden-section search. Returns the best point seen.
pub fn golden_max<F: FnMut(f64) -> f64>(f: &mut F, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = checked(c, f(c))?;
    let mut fd = checked(d, f(d))?;
    for _ in 0..80 {
        if (b - a).abs() <= 1e-13 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = checked(c, f(c))?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = checked(d, f(d))?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}

/// Sup of `f` on `iv`: the leftmost maximizer over a uniform grid of spacing
/// at most `grid_step`, polished by golden-section search between its neighbours.
/// The returned value is never below the grid maximum.
pub fn sup_on_interval<F: FnMut(f64) -> f64>(
    mut f: F,
    iv: Interval,
    grid_step: f64,
) -> Result<(f64, f64)> {
    if !(grid_step > 0.0 && grid_step < iv.len()) {
        return Err(Error::InvalidArgument(
            "grid_step must lie in (0, interval length)",
        ));
    }
    let xs = grid(iv, grid_step)?;
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let v = checked(x, f(x))?;
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(xs.len() - 1)];
    let (gx, gv) = golden_max(&mut f, lo, hi)?;
    if gv > best_v {
        Ok((gx, gv))
    } else {
        Ok((xs[best], best_v))
    }
}

/// Largest value of `max - min` over every run of `w + 1` consecutive samples.
pub fn window_oscillation(values: &[f64], w: usize) -> f64 {
    if values.len() < 2 || w == 0 {
        return 0.0;
    }
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for (i, &v) in values.iter().enumerate() {
        while maxq.back().is_some_and(|&j| values[j] <= v) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&j| values[j] >= v) {
            minq.pop_back();
        }
        minq.push_back(i);
        while maxq.front().is_some_and(|&j| j + w < i) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&j| j + w < i) {
            minq.pop_front();
        }
        let spread = values[maxq[0]] - values[minq[0]];
        best = best.max(spread);
    }
    best
}

fn window_width(delta: f64, h: f64) -> usize {
    // The tiny slack keeps δ equal to a multiple of h from losing a step
    // to rounding.
    (delta / h * (1.0 + 1e-12)).floor() as usize
}

/// ω(f, δ) on `iv`, over grid pairs `x, y` with `|x − y| ≤ δ`.
pub fn modulus_of_continuity<F: FnMut(f64) -> f64>(
    mut f: F,
    delta: f64,
    iv: Interval,
    grid_step: f64,
) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    let xs = grid(iv, grid_step)?;
    let h = iv.len() / (xs.len() - 1) as f64;
    let mut values = Vec::with_capacity(xs.len());
    for &x in &xs {
        values.push(checked(x, f(x))?);
    }
    Ok(window_oscillation(&values, window_width(delta, h)))
}

/// ω(f, δ) for a complex-valued `f`, using the complex modulus `|f(x) − f(y)|`.
pub fn modulus_of_continuity_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    delta: f64,
    iv: Interval,
    grid_step: f64,
) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    let xs = grid(iv, grid_step)?;
    let h = iv.len() / (xs.len() - 1) as f64;
    let mut values = Vec::with_capacity(xs.len());
    for &x in &xs {
        values.push(checked_c(x, f(x))?);
    }
    let w = window_width(delta, h);
    let mut best = 0.0f64;
    for i in 0..values.len() {
        for j in (i + 1)..values.len().min(i + w + 1) {
            best = best.max((values[i] - values[j]).norm());
        }
    }
    Ok(best)
}

/// ‖f − g‖₁ on `iv`.
pub fn l1_distance<F, G>(mut f: F, mut g: G, iv: Interval, q: &QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    integrate(|x| (f(x) - g(x)).abs(), iv, q)
}

/// ‖f − g‖₁ on `iv`, integrating separately between the given points.
pub fn l1_distance_split<F, G>(
    mut f: F,
    mut g: G,
    iv: Interval,
    breakpoints: &[f64],
    q: &QuadratureSpec,
) -> Result<f64>
where
    F: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    integrate_split(|x| (f(x) - g(x)).abs(), iv, breakpoints, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    // erf(1) by its Maclaurin series, independent of the integrator.
    fn erf_series(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut term = x;
        let mut k = 0.0;
        loop {
            let t = term / (2.0 * k + 1.0);
            sum += t;
            if t.abs() < 1e-18 {
                break;
            }
            k += 1.0;
            term *= -x * x / k;
        }
        2.0 / PI.sqrt() * sum
    }

    #[test]
    fn integrates_sine() {
        let q = QuadratureSpec::with_tol(1e-12);
        let v = integrate(|x| x.sin(), iv(0.0, PI), &q).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let g = integrate(|x| x.sin(), iv(0.0, PI), &QuadratureSpec::gauss(1e-12)).unwrap();
        assert!((g - 2.0).abs() < 1e-10);
    }

    #[test]
    fn integrates_constant() {
        let v = integrate(|_| 1.0, iv(0.0, 1.0), &QuadratureSpec::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_gaussian_against_erf() {
        let oracle = PI.sqrt() * erf_series(1.0);
        assert!((oracle - 1.493_648_265_624_854).abs() < 1e-12);
        let v = integrate(|x| (-x * x).exp(), iv(-1.0, 1.0), &QuadratureSpec::with_tol(1e-10))
            .unwrap();
        assert!((v - oracle).abs() < 1e-8);
    }

    #[test]
    fn non_finite_is_reported() {
        let r = integrate(|x| 1.0 / x, iv(0.0, 1.0), &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn refinement_limit_reports_best_estimate() {
        let q = QuadratureSpec::new(QuadMethod::AdaptiveSimpson, 2, 1e-14).unwrap();
        let r = integrate(|x| (40.0 * x).sin().abs(), iv(0.0, 3.0), &q);
        match r {
            Err(Error::ToleranceNotMet { estimate, .. }) => assert!(estimate.is_finite()),
            other => panic!("expected tolerance failure, got {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(QuadMethod::CompositeGauss, 0, 1e-6).is_err());
        assert!(QuadratureSpec::new(QuadMethod::CompositeGauss, 3, 0.0).is_err());
    }

    #[test]
    fn split_integration_handles_jumps() {
        let f = |x: f64| if x < 0.3 { 1.0 } else { 0.0 };
        let v = integrate_split(f, iv(0.0, 1.0), &[0.3], &QuadratureSpec::default()).unwrap();
        assert!((v - 0.3).abs() < 1e-12);
    }

    #[test]
    fn complex_integration_of_exponential() {
        // ∫_0^π e^{2.5iθ} dθ = (e^{2.5iπ} − 1)/(2.5i)
        let p = 2.5;
        let v = integrate_complex(
            |t| Complex64::new(0.0, p * t).exp(),
            iv(0.0, PI),
            2,
            &QuadratureSpec::gauss(1e-13),
        )
        .unwrap();
        let exact = (Complex64::new(0.0, p * PI).exp() - 1.0) / Complex64::new(0.0, p);
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn sup_of_sine() {
        let (x, v) = sup_on_interval(|x| x.sin(), iv(0.0, PI), 1e-4).unwrap();
        assert!((x - PI / 2.0).abs() < 1e-8);
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn sup_of_constant_is_leftmost() {
        let (x, v) = sup_on_interval(|_| 2.5, iv(-1.0, 3.0), 1e-2).unwrap();
        assert_eq!(x, -1.0);
        assert_eq!(v, 2.5);
    }

    #[test]
    fn sup_of_parabola() {
        let (x, v) = sup_on_interval(|x| -(x - 0.3) * (x - 0.3), iv(0.0, 1.0), 1e-3).unwrap();
        assert!((x - 0.3).abs() < 1e-6);
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn sup_rejects_bad_step() {
        assert!(sup_on_interval(|x| x, iv(0.0, 1.0), 0.0).is_err());
        assert!(sup_on_interval(|x| x, iv(0.0, 1.0), 2.0).is_err());
    }

    #[test]
    fn modulus_examples() {
        let w = modulus_of_continuity(|x| x, 0.1, iv(0.0, 1.0), 1e-4).unwrap();
        assert!((w - 0.1).abs() < 2e-4);
        let c = modulus_of_continuity(|_| 4.0, 0.3, iv(0.0, 1.0), 1e-3).unwrap();
        assert_eq!(c, 0.0);
        assert!(modulus_of_continuity(|x| x, 0.0, iv(0.0, 1.0), 1e-3).is_err());
    }

    #[test]
    fn tent_modulus_is_twice_delta() {
        let tent = crate::functions::tent();
        let d = 0.223973;
        let w = modulus_of_continuity(|x| tent.eval(x), d, tent.interval(), 1e-4).unwrap();
        assert!((w - 2.0 * d).abs() / (2.0 * d) < 0.02);
    }

    #[test]
    fn complex_modulus_matches_real_on_real_data() {
        let f = |x: f64| (3.0 * x).sin();
        let a = modulus_of_continuity(f, 0.2, iv(0.0, 2.0), 1e-2).unwrap();
        let b = modulus_of_continuity_complex(|x| Complex64::new(f(x), 0.0), 0.2, iv(0.0, 2.0), 1e-2)
            .unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn l1_examples() {
        let q = QuadratureSpec::with_tol(1e-12);
        assert_eq!(l1_distance(|x| x, |x| x, iv(0.0, 1.0), &q).unwrap(), 0.0);
        assert!((l1_distance(|_| 1.0, |_| 0.0, iv(0.0, 1.0), &q).unwrap() - 1.0).abs() < 1e-14);
        let v = l1_distance_split(
            |x: f64| (1.0 - 2.0 * x).powi(7),
            |_| 0.0,
            iv(0.0, 1.0),
            &[0.5],
            &q,
        )
        .unwrap();
        assert!((v - 0.125).abs() < 1e-9);
    }

    fn brute_oscillation(values: &[f64], w: usize) -> f64 {
        let mut best = 0.0f64;
        for i in 0..values.len() {
            for j in i..values.len().min(i + w + 1) {
                best = best.max((values[i] - values[j]).abs());
            }
        }
        best
    }

    fn piecewise_linear(knots: &[f64]) -> impl Fn(f64) -> f64 + '_ {
        move |x: f64| {
            let m = knots.len() - 1;
            let t = (x.clamp(0.0, 1.0) * m as f64).min(m as f64 - 1e-12);
            let i = t.floor() as usize;
            let s = t - i as f64;
            knots[i] * (1.0 - s) + knots[i + 1] * s
        }
    }

    proptest! {
        #[test]
        fn sliding_window_matches_brute_force(
            values in prop::collection::vec(-5.0f64..5.0, 2..60),
            w in 1usize..12,
        ) {
            prop_assert_eq!(window_oscillation(&values, w), brute_oscillation(&values, w));
        }

        #[test]
        fn modulus_is_monotone_in_delta(
            knots in prop::collection::vec(-1.0f64..1.0, 3..12),
            d1 in 0.001f64..0.5,
            d2 in 0.001f64..0.5,
        ) {
            let f = piecewise_linear(&knots);
            let (a, b) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let wa = modulus_of_continuity(&f, a, iv(0.0, 1.0), 1e-3).unwrap();
            let wb = modulus_of_continuity(&f, b, iv(0.0, 1.0), 1e-3).unwrap();
            prop_assert!(wa <= wb);
        }

        #[test]
        fn modulus_subadditivity(
            knots in prop::collection::vec(-1.0f64..1.0, 3..12),
            d in 0.005f64..0.2,
            lambda in 0.1f64..6.0,
        ) {
            let f = piecewise_linear(&knots);
            let step = 1e-3;
            let w1 = modulus_of_continuity(&f, d, iv(0.0, 1.0), step).unwrap();
            let wl = modulus_of_continuity(&f, lambda * d, iv(0.0, 1.0), step).unwrap();
            let slope = knots.windows(2).map(|p| (p[1] - p[0]).abs()).fold(0.0, f64::max)
                * (knots.len() - 1) as f64;
            let slack = slope * step;
            prop_assert!(wl <= (1.0 + lambda.floor()) * w1 + 2.0 * (1.0 + lambda.floor()) * slack);
        }

        #[test]
        fn integrate_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..4.0) {
            let q = QuadratureSpec::with_tol(1e-10);
            let r = iv(0.0, 2.0);
            let f = |x: f64| (c * x).sin();
            let g = |x: f64| (x * x).exp();
            let lhs = integrate(|x| a * f(x) + b * g(x), r, &q).unwrap();
            let rhs = a * integrate(f, r, &q).unwrap() + b * integrate(g, r, &q).unwrap();
            prop_assert!((lhs - rhs).abs() <= 3.0 * q.abs_tol * (1.0 + a.abs() + b.abs()));
        }

        #[test]
        fn sup_dominates_grid(c in 0.5f64..20.0, s in 0.0f64..3.0) {
            let f = |x: f64| (c * x + s).sin() * x;
            let r = iv(0.0, 3.0);
            let step = 1e-2;
            let (_, v) = sup_on_interval(f, r, step).unwrap();
            for x in grid(r, step).unwrap() {
                prop_assert!(v >= f(x));
            }
        }
    }
}
